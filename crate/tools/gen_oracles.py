#!/usr/bin/env python3
"""Regenerate the pinned high-precision fixtures under fixtures/.

Run from the repository root:  python3 tools/gen_oracles.py
Values are computed with mpmath at 50 digits and written with 17
significant digits.
"""
import csv
import random

import mpmath as mp

mp.mp.dps = 50


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, min_fixed=-1, max_fixed=-1) if x != 0 else "0"


def hyp(a, b, c, x):
    return mp.hyp2f1(a, b, c, x)


def specfun_cases():
    rng = random.Random(20240611)
    cases = []
    # documented anchors
    cases.append((mp.mpc(0.7, 0), mp.mpc(0, -1.2), mp.mpc(2.5, 0), mp.mpf(0)))
    cases.append((mp.mpf("0.5"), mp.mpf(3), mp.mpf(3), mp.mpf(-3)))
    cases.append((mp.mpf(1), mp.mpf(1), mp.mpf(2), mp.mpf(-1)))
    n, nu, lam = 1, mp.mpf("2.5"), mp.mpf(1)
    cases.append(((n - nu - 1j * lam) / 2, (n - nu + 1j * lam) / 2, mp.mpf(n), mp.mpf("-0.5")))
    # terminating sums: Jacobi polynomial parameters
    while len(cases) < 40:
        k = rng.randint(1, 12)
        n = rng.randint(1, 3)
        nu = n + rng.uniform(0.3, 4.7)
        x = -rng.uniform(0, 50) if rng.random() < 0.8 else rng.uniform(0, 0.9)
        cases.append((mp.mpf(-k), mp.mpf(k) + n - nu, mp.mpf(n), mp.mpf(x)))
    # Jacobi function parameters at real spectral parameter
    while len(cases) < 110:
        n = rng.randint(1, 3)
        nu = n + rng.uniform(0.3, 4.7)
        lam = rng.uniform(0, 40)
        x = -(10 ** rng.uniform(-3, mp.log10(50)))
        a = (n - nu - 1j * lam) / 2
        b = (n - nu + 1j * lam) / 2
        cases.append((mp.mpc(a), mp.mpc(b), mp.mpf(n), mp.mpf(x)))
    # Green-kernel parameters with argument 1/(1+x) in (0, 0.9]
    while len(cases) < 140:
        n = rng.randint(1, 2)
        nu = n + rng.uniform(0.3, 4.7)
        y = rng.uniform(abs(nu - n) + 0.5, 12)
        mu = 1j * y
        x = rng.uniform(0.12, 20)
        a = (n - 1j * mu + nu) / 2
        b = (n - 1j * mu - nu) / 2
        c = 1 - 1j * mu
        cases.append((mp.mpc(a), mp.mpc(b), mp.mpc(c), 1 / (1 + mp.mpf(x))))
    # generic complex parameters
    while len(cases) < 200:
        a = mp.mpc(rng.uniform(-4, 4), rng.uniform(-6, 6))
        b = mp.mpc(rng.uniform(-4, 4), rng.uniform(-6, 6))
        c = mp.mpc(rng.uniform(0.5, 5), rng.uniform(-3, 3))
        x = -rng.uniform(0, 50) if rng.random() < 0.75 else rng.uniform(0, 0.9)
        cases.append((a, b, c, mp.mpf(x)))
    return cases


def write_specfun(path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "x", "f_re", "f_im"])
        for a, b, c, x in specfun_cases():
            a, b, c = mp.mpc(a), mp.mpc(b), mp.mpc(c)
            f = hyp(a, b, c, x)
            f = mp.mpc(f)
            w.writerow([fmt(a.real), fmt(a.imag), fmt(b.real), fmt(b.imag), fmt(c.real),
                        fmt(c.imag), fmt(x), fmt(f.real), fmt(f.imag)])


# ---------------------------------------------------------------- kernels

def c_fun(n, nu, lam):
    lam = mp.mpc(lam)
    return (mp.power(2, n - nu - 1j * lam) * mp.gamma(n) * mp.gamma(1j * lam)
            / (mp.gamma((1j * lam + n - nu) / 2) * mp.gamma((1j * lam + n + nu) / 2)))


def weight(n, nu, lam):
    return 1 / abs(c_fun(n, nu, lam)) ** 2


def inner(z, w):
    return sum(a * mp.conj(b) for a, b in zip(z, w))


def cosh2_dist(z, w):
    return abs(1 - inner(z, w)) ** 2 / ((1 - inner(z, z).real) * (1 - inner(w, w).real))


def jacobi_poly(k, al, be, y):
    return mp.jacobi(k, al, be, y)


def atoms(n, nu):
    out = []
    j = 0
    while j <= (nu - n) / 2:
        tau = 2 * (nu - n - 2 * j) * mp.gamma(nu - j) / (mp.pi ** n * mp.gamma(nu - n - j + 1))
        out.append((j, tau))
        j += 1
    return out


def phi(n, nu, lam, x):
    return hyp((n - nu - 1j * lam) / 2, (n - nu + 1j * lam) / 2, n, -x)


def pref(n, nu):
    return mp.gamma(n) / (2 * mp.pi ** (n + 1) * mp.power(2, 2 * (nu - n)))


def heat(n, nu, t, z, w):
    ch2 = cosh2_dist(z, w)
    x = ch2 - 1
    disc = sum(tau * mp.exp(4 * j * (j + n - nu) * t) * jacobi_poly(j, n - 1, -nu, 2 * x + 1)
               for j, tau in atoms(n, nu))
    cont = mp.quad(lambda l: mp.exp(-t * l * l) * weight(n, nu, l) * phi(n, nu, l, x), [0, 4, 8, 12, mp.sqrt(160 / t)])
    # the Gaussian factor is below 1e-69 beyond the last node
    cont = pref(n, nu) * mp.exp(-t * (nu - n) ** 2) * cont
    return (1 - inner(z, w)) ** (-nu) * (disc + cont)


def density(n, nu, s, z, w):
    x = cosh2_dist(z, w) - 1
    lam = mp.sqrt(s)
    val = (mp.gamma(n) / (4 * mp.pi ** (n + 1) * mp.power(2, 2 * (nu - n))) * weight(n, nu, lam)
           / lam * phi(n, nu, lam, x))
    return (1 - inner(z, w)) ** (-nu) * val


def closed_wave(n, nu, t, z, w):
    ch = mp.sqrt(cosh2_dist(z, w))
    cn = (-1) ** (n - 1) * mp.gamma(n - mp.mpf(1) / 2) / (2 * mp.pi ** n)
    supp = mp.cosh(t) ** 2 / ch ** 2 - 1
    f = hyp(1 - n + nu, 1 - n - nu, mp.mpf(3) / 2 - n, (ch - mp.cosh(t)) / (2 * ch))
    return cn * (1 - inner(z, w)) ** (-nu) * ch ** (nu - n) * supp ** (-n + mp.mpf(1) / 2) * f


def green(n, nu, mu, z, w):
    ip = inner(z, w)
    X = (1 - inner(z, z).real) * (1 - inner(w, w).real) / abs(1 - ip) ** 2
    C = (mp.gamma((n - 1j * mu + nu) / 2) * mp.gamma((n - 1j * mu - nu) / 2)
         / (2 * mp.pi ** n * mp.gamma(1 - 1j * mu)))
    phase = ((1 - mp.conj(ip)) / (1 - ip)) ** (nu / 2)
    return C * phase * X ** (n - 1j * mu / 2) * hyp((n - 1j * mu + nu) / 2, (n - 1j * mu - nu) / 2, 1 - 1j * mu, X)


def poisson(n, nu, lam, z, om):
    ip = inner(z, om)
    return ((1 - inner(z, z).real) / abs(1 - ip) ** 2) ** ((1j * lam + n - nu) / 2) * (1 - ip) ** (-nu)


def bump(r2):
    R2 = mp.mpf("0.85") ** 2
    if r2 >= R2:
        return mp.mpf(0)
    return mp.exp(-r2 / (R2 - r2))


def fh_forward_bump(n, nu, lam, om):
    # n = 1: polar coordinates, integrand smooth in (r, theta)
    R = mp.mpf("0.85")

    def inner_theta(r):
        g = lambda th: poisson(n, nu, -lam, [r * mp.expj(th)], om)
        return mp.quad(g, [0, mp.pi / 2, mp.pi, 3 * mp.pi / 2, 2 * mp.pi])

    f = lambda r: bump(r * r) * (1 - r * r) ** (nu - n - 1) * r * inner_theta(r)
    return mp.quad(f, [0, R / 2, R])


def write_kernels(path):
    rows = []
    n, nu = 1, mp.mpf("2.5")
    rows.append(("density", n, nu, "s=1", [0], [mp.mpf("0.5")], density(n, nu, 1, [0], [mp.mpf("0.5")])))
    rows.append(("heat", n, nu, "t=0.5", [0], [mp.mpf("0.3")], heat(n, nu, mp.mpf("0.5"), [0], [mp.mpf("0.3")])))
    zz = [mp.mpc("0.2", "0.1")]
    ww = [mp.mpc("-0.3", "0.25")]
    rows.append(("heat", n, nu, "t=0.5", zz, ww, heat(n, nu, mp.mpf("0.5"), zz, ww)))
    rows.append(("closed_wave", n, nu, "t=1.5", [0], [mp.mpf("0.3")],
                 closed_wave(n, nu, mp.mpf("1.5"), [0], [mp.mpf("0.3")])))
    rows.append(("green", n, nu, "mu=5i", [0], [mp.mpf("0.4")], green(n, nu, 5j, [0], [mp.mpf("0.4")])))
    rows.append(("poisson", n, nu, "lambda=1", [mp.mpf("0.5")], [1], poisson(n, nu, 1, [mp.mpf("0.5")], [1])))
    rows.append(("c_function", n, nu, "lambda=1", [0], [0], c_fun(n, nu, 1)))
    rows.append(("fh_forward_bump", n, nu, "lambda=1", [0], [1], fh_forward_bump(n, nu, 1, [1])))
    n2, nu2 = 2, mp.mpf("3.7")
    z2 = [mp.mpc("0.1", "0.2"), mp.mpc("-0.15", "0.05")]
    w2 = [mp.mpc("0.3", "-0.1"), mp.mpc("0.05", "0.2")]
    rows.append(("heat", n2, nu2, "t=0.4", z2, w2, heat(n2, nu2, mp.mpf("0.4"), z2, w2)))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "n", "nu", "arg", "z", "w", "value_re", "value_im"])
        for kind, n_, nu_, arg, z, w_, val in rows:
            val = mp.mpc(val)
            zs = ";".join(f"{fmt(mp.mpc(c).real)}:{fmt(mp.mpc(c).imag)}" for c in z)
            ws = ";".join(f"{fmt(mp.mpc(c).real)}:{fmt(mp.mpc(c).imag)}" for c in w_)
            w.writerow([kind, n_, fmt(nu_), arg, zs, ws, fmt(val.real), fmt(val.imag)])


if __name__ == "__main__":
    write_specfun("fixtures/specfun_oracle.csv")
    write_kernels("fixtures/kernel_oracle.csv")
