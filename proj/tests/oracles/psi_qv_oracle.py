"""Checks the closed forms for the quadratic-variation exponent against
direct integration over the Levy density, and prints reference values.

psi_qv(-u) = -sigma^2 u + int (exp(-u x^2) - 1) F(dx),  Re u > 0.
"""
from mpmath import mp, mpf, mpc, gamma, hyperu, quad, exp, inf, sqrt, pi, besselk

mp.dps = 30


def I(kappa, nu, tau):
    return 2 ** (-kappa) * tau ** (-kappa / 2) * gamma(kappa) * hyperu(kappa / 2, mpf(1) / 2, nu ** 2 / (4 * tau))


def cgmy_closed(u, C, G, M, Y):
    def side(L):
        a = -(2 * u / Y + L ** 2 / (Y * (1 - Y))) * I(2 - Y, L, u)
        b = -2 * u * L / (Y * (1 - Y)) * I(3 - Y, L, u)
        c = L ** Y * gamma(2 - Y) / (Y * (1 - Y))
        return a + b + c
    return C * (side(M) + side(G))


def cgmy_direct(u, C, G, M, Y):
    f = lambda x, L: (exp(-u * x * x) - 1) * C * exp(-L * x) * x ** (-1 - Y)
    return quad(lambda x: f(x, M), [0, 0.1, 1, inf]) + quad(lambda x: f(x, G), [0, 0.1, 1, inf])


def kou_closed(u, s, lp, nup, lm, num):
    return -s ** 2 * u + lp * (nup * I(1, nup, u) - 1) + lm * (num * I(1, num, u) - 1)


def kou_direct(u, s, lp, nup, lm, num):
    f = lambda x, lam, nu: (exp(-u * x * x) - 1) * lam * nu * exp(-nu * x)
    return -s ** 2 * u + quad(lambda x: f(x, lp, nup), [0, 1, inf]) + quad(lambda x: f(x, lm, num), [0, 1, inf])


def merton_closed(u, lam, g, d):
    q = 1 + 2 * u * d * d
    return lam * (exp(-u * g * g / q) / sqrt(q) - 1)


def merton_direct(u, lam, g, d):
    f = lambda x: (exp(-u * x * x) - 1) * lam * exp(-(x - g) ** 2 / (2 * d * d)) / (d * sqrt(2 * pi))
    return quad(f, [-inf, g, inf])


def nig_direct(u, al, be, de):
    f = lambda x: (exp(-u * x * x) - 1) * de * al / pi * exp(be * x) * besselk(1, al * abs(x)) / abs(x)
    return quad(f, [-inf, -1, 0]) + quad(f, [0, 1, inf])


def nig_subordinated(u, al, be, de):
    g2 = al * al - be * be
    f = lambda s: ((1 + 2 * u * s) ** mpf(-0.5) * exp(-u * be * be * s * s / (1 + 2 * u * s)) - 1) * de / sqrt(2 * pi) * s ** mpf(-1.5) * exp(-g2 * s / 2)
    return quad(f, [0, 0.01, 1, inf])


cg = (mpf("0.3251"), mpf("3.7103"), mpf("18.4460"), mpf("0.6029"))
ko = (mpf("0.3"), mpf("0.5955"), mpf("16.6667"), mpf("3.3745"), mpf("10"))
for u in [mpc(5, 0), mpc(1, 1), mpc("0.3", "-2")]:
    a, b = cgmy_closed(u, *cg), cgmy_direct(u, *cg)
    print("CGMY", u, mp.nstr(a, 17), "rel", mp.nstr(abs(a - b) / abs(b), 3))
for u in [mpc(1, 1), mpc(40, 7)]:
    a, b = kou_closed(u, *ko), kou_direct(u, *ko)
    print("Kou", u, mp.nstr(a, 17), "rel", mp.nstr(abs(a - b) / abs(b), 3))
u = mpc(2, 0)
a, b = merton_closed(u, mpf("0.5"), mpf("-0.1"), mpf("0.2")), merton_direct(u, mpf("0.5"), mpf("-0.1"), mpf("0.2"))
print("Merton", u, mp.nstr(a, 17), "rel", mp.nstr(abs(a - b) / abs(b), 3))
u = mpc(3, -1)
a, b = nig_subordinated(u, mpf(15), mpf(-5), mpf("0.5")), nig_direct(u, mpf(15), mpf(-5), mpf("0.5"))
print("NIG", u, mp.nstr(a, 17), "rel", mp.nstr(abs(a - b) / abs(b), 3))
