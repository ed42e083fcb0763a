"""Exact even-power series coefficients (generated by tools/derive_series.py).

Each table lists c_k for sum_k c_k * x**(2k).
"""

from fractions import Fraction as F

R_QA = (
    F("4/5"),
    F("-2/63"),
    F("793/56700"),
    F("-95771/11226600"),
    F("2199926317/367783416000"),
    F("-30014189203/6620101488000"),
    F("73167347665193/20257510553280000"),
    F("-11112069054005273/3730498481888640000"),
    F("967863546707724496747/384092123695254374400000"),
    F("-345651819870517544313023/159014139209835311001600000"),
    F("4959984705238627594642386257/2604651600257102394206208000000"),
    F("-15839662014107876241900488881/9376745760925568619142348800000"),
    F("741098581653614210362056595257767/489466128720314681919230607360000000"),
    F("-1693530949155935726878551664172561219/1237082452152767095490686016225280000000"),
    F("80247093459649183221901240096247349427421/64353029160986944307425486564039065600000000"),
)

R_CA = (
    F("8/25"),
    F("-104/1575"),
    F("4663/141750"),
    F("-148493/7016625"),
    F("14097839617/919458540000"),
    F("-98429761721/8275126860000"),
    F("488520769407743/50643776383200000"),
    F("-449650135158137/55717463539237500"),
    F("6634318000425458349187/960230309238135936000000"),
    F("-47871384555094195729819/7950706960491765550080000"),
    F("34652398576390877408580985787/6511629000642755985515520000000"),
    F("-139412156951434033982645153441/29302330502892401934819840000000"),
    F("750671004465886666388573804940941/174809331685826672114010931200000000"),
    F("-102709774845408498506300240651453429813/26288002108246300779177077844787200000000"),
    F("575848089196769887294631649537833197128851/160882572902467360768563716410097664000000000"),
)

GAP_QA = (
    F("0"),
    F("0"),
    F("1/36"),
    F("-7/324"),
    F("265/15552"),
    F("-325/23328"),
    F("39401/3359232"),
    F("-101783/10077696"),
    F("8562719/967458816"),
    F("-51361475/6530347008"),
    F("4431449143/626913312768"),
    F("-12060513575/1880739938304"),
    F("1587950451581/270826551115776"),
    F("-2192495275627/406239826673664"),
    F("97429174398515/19499511680335872"),
)

GAP_CA = (
    F("0"),
    F("0"),
    F("5/72"),
    F("-55/1296"),
    F("935/31104"),
    F("-4301/186624"),
    F("124729/6718464"),
    F("-623645/40310784"),
    F("25569445/1934917632"),
    F("-1201763915/104485552128"),
    F("12738697499/1253826625536"),
    F("-68325741131/7522959753216"),
    F("4441173173515/541653102231552"),
    F("-24255638101505/3249918613389312"),
    F("266812019116555/38999023360671744"),
)

SQ_LOWER = (
    F("0"),
    F("0"),
    F("1/45"),
    F("-13/945"),
    F("139/14175"),
    F("-3539/467775"),
    F("1305197/212837625"),
    F("-298381/58046625"),
    F("2156479211/488462349375"),
    F("-150542033209/38979295480125"),
    F("3149285683571/918797679174375"),
    F("-1365724997280817/443779279041223125"),
    F("2816360739905469067/1009597859818782609375"),
    F("-7719986267293918873/3028793579456347828125"),
    F("57563705304896428633/24550159137829403203125"),
)

SQ_UPPER = (
    F("0"),
    F("0"),
    F("1/30"),
    F("-1/63"),
    F("137/14175"),
    F("-23/3465"),
    F("3129421/638512875"),
    F("-1777/467775"),
    F("33096397/10854718875"),
    F("-384060797/152859982275"),
    F("67963534095059/32157918771103125"),
    F("-124644048937/68963368926375"),
    F("279151694940031787/178164328203314578125"),
    F("-3048308902056311/2218896395206115625"),
    F("1602410898159955537553/1317525207063511305234375"),
)

PM_PRODUCT = (
    F("0"),
    F("0"),
    F("11/90"),
    F("0"),
    F("4147/113400"),
    F("0"),
    F("194592257/10216206000"),
    F("0"),
    F("151577802983/12504636144000"),
    F("0"),
    F("70569210434563133/8232427205402400000"),
    F("0"),
    F("20070500676628011135077/3101484625363300176000000"),
    F("0"),
    F("41346673191482962830282199/8094874872198213459360000000"),
)

