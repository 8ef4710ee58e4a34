"""Arbitrary-precision reference values frozen into the C++ unit tests.

Run with `python3 freeze_values.py`; the printed literals are pasted into
tests/*.cpp. Everything here is evaluated straight from the closed forms with
50-digit arithmetic and shares no code with the library.
"""
from mpmath import mp, mpf, exp, sqrt, cosh, sinh, pi, log, ellipe, matrix, eig

mp.dps = 50


def lam(n, ri, re):
    d = exp(-2 * n * re) - exp(-2 * n * ri)
    s = sqrt(d**2 + 4 * exp(-2 * n * (re - ri)))
    return (d - s) / 4, (d + s) / 4


def vec(n, ri, re):
    s = sqrt((exp(-2 * n * re) - exp(-2 * n * ri))**2 + 4 * exp(-2 * n * (re - ri)))
    a1 = exp(-2 * n * re) + exp(-2 * n * ri) + s
    a2 = exp(-2 * n * re) + exp(-2 * n * ri) - s
    b = -2 * exp(-n * (re - ri)) * (1 + exp(-2 * n * ri))
    return a1, a2, b


def norms(n, ri, re):
    a1, a2, b = vec(n, ri, re)
    ci, ce = cosh(n * ri), cosh(n * re)
    si, se = sinh(n * ri), sinh(n * re)
    Ei, Ee = exp(-n * ri), exp(-n * re)
    n1p = pi / n * (a1**2 * Ei * ci + 2 * a1 * b * Ee * ci + b**2 * Ee * ce)
    n1m = pi / n * (b**2 * Ei * si + 2 * a2 * b * Ee * si + a2**2 * Ee * se)
    n2p = pi / n * (a2**2 * Ei * ci + 2 * a2 * b * Ee * ci + b**2 * Ee * ce)
    n2m = pi / n * (b**2 * Ei * si + 2 * a1 * b * Ee * si + a1**2 * Ee * se)
    return n1p, n1m, n2p, n2m


def show(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


show("cosh1", cosh(1))
show("2sinh0.5", 2 * sinh(mpf("0.5")))
show("sinh0.5", sinh(mpf("0.5")))
show("metric(0.5,pi/2)", sqrt(sinh(mpf("0.5"))**2 + 1))
show("sinh1", sinh(1))
for n in range(0, 7):
    show(f"alpha_{n}(0.5)", 1 / (2 * exp(2 * n * mpf("0.5"))))
show("beta_1(0.5)", (-exp(1) + exp(-1)) / 2)
ri, re = mpf("0.5"), mpf("0.8")
for n in (1, 2, 3, 4, 10, 50):
    l1, l2 = lam(n, ri, re)
    show(f"thin lambda1_{n}", l1)
    show(f"thin lambda2_{n}", l2)
for n in (1, 10, 50):
    a1, a2, b = vec(n, ri, re)
    show(f"thin a1_{n}", a1)
    show(f"thin a2_{n}", a2)
    show(f"thin b_{n}", b)
    for k, v in zip(("1p", "1m", "2p", "2m"), norms(n, ri, re)):
        show(f"thin norm{k}_{n}", v)
show("A11(n=1)", -exp(-1) / 2)
ti, te = mpf("0.2"), mpf("1.0")
for n in (1, 10, 50):
    l1, l2 = lam(n, ti, te)
    show(f"thick lambda1_{n}", l1)
    show(f"thick lambda2_{n}", l2)
    a1, a2, b = vec(n, ti, te)
    show(f"thick a2_{n}", a2)
    for k, v in zip(("1p", "1m", "2p", "2m"), norms(n, ti, te)):
        show(f"thick norm{k}_{n}", v)
show("green cos weight (1.2,0,n=1)", -exp(mpf("-1.2")) / pi)
d = mpf("0.01")
z = 1j * d / (2 * (2 - 1j * d))
show("z(0.01).re", z.real)
show("z(0.01).im", z.imag)
# Perimeter of {rho = 0.5}, R = 1: 4 a E(e^2) with a = cosh, e = 1/cosh.
a = cosh(mpf("0.5"))
show("perimeter(0.5)", 4 * a * ellipe(1 / a**2))
show("disk r* thin (re=e^0.8, ri=e^0.5)", log(sqrt(exp(3 * re) / exp(ri))))
