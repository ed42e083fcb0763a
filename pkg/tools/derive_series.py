"""Regenerate ``src/nsmean/_coefficients.py`` from exact symbolic expansions.

Requires sympy (development only):

    python3 tools/derive_series.py > src/nsmean/_coefficients.py
"""

import sympy as sp

x = sp.symbols("x")
ORDER = 30  # keep terms through x**28

sixth = (1 + x**2) ** sp.Rational(1, 6)
ns = x / sp.asinh(x)  # M / A
ts = x / sp.atan(x)  # T / A
ps = x / sp.asin(x)  # P / A


def even_coeffs(expr, order=ORDER):
    poly = sp.series(expr, x, 0, order).removeO()
    coeffs = sp.Poly(poly, x).all_coeffs()[::-1]
    coeffs += [0] * (order - len(coeffs))
    assert all(c == 0 for c in coeffs[1::2]), "expected an even series"
    return [sp.Rational(c) for c in coeffs[0::2]]


def ratio(num, den, order=ORDER):
    n = sp.series(num, x, 0, order + 8).removeO()
    d = sp.series(den, x, 0, order + 8).removeO()
    return even_coeffs(n / d, order)


TABLES = {
    "R_QA": ratio(3 * (x - sixth * sp.asinh(x)), (sp.sqrt(1 + x**2) - 3 * sixth + 2) * sp.asinh(x)),
    "R_CA": ratio(6 * (x - sixth * sp.asinh(x)), (x**2 + 6 - 6 * sixth) * sp.asinh(x)),
    "GAP_QA": even_coeffs((sp.sqrt(1 + x**2) - 1) / 3 - (sixth - 1)),
    "GAP_CA": even_coeffs(x**2 / 6 - (sixth - 1)),
    "SQ_LOWER": even_coeffs(ns**2 - ts),
    "SQ_UPPER": even_coeffs((1 + ts**2) / 2 - ns**2),
    "PM_PRODUCT": even_coeffs(1 - ps * ns),
}

print('"""Exact even-power series coefficients (generated by tools/derive_series.py).')
print()
print("Each table lists c_k for sum_k c_k * x**(2k).")
print('"""')
print()
print("from fractions import Fraction as F")
print()
for name, coeffs in TABLES.items():
    print(f"{name} = (")
    for c in coeffs:
        print(f'    F("{c}"),')
    print(")")
    print()
