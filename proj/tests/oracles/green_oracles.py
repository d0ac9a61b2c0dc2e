"""Reference values for the unit tests, from an independent scipy integrator.

Run: python3 tests/oracles/green_oracles.py
"""
import numpy as np
from scipy.integrate import solve_ivp
from mpmath import mp, findroot, tan, sqrt as msqrt

OMEGA = 0.5 + 1e-6j


def smoothstep(u):
    u = min(max(u, 0.0), 1.0)
    return u**3 * (10 + u * (-15 + 6 * u))


def harmonic(x):
    xc = min(max(x, -4.0), 4.0)
    return 0.5 * 0.25 * xc * xc


def linear(x):
    return 0.05 * min(max(x, -5.0), 5.0)


def smooth_mass(x):
    m = 1.0 + 0.5 * smoothstep((x - 0.5 + 1.0) / 2.0)
    u = (x + 0.5) / 1.0
    if abs(u) < 1:
        m += 0.3 * (1 - u * u) ** 3
    return m


CASES = {
    "harmonic": (lambda x: 1.0, harmonic, [-4.0, 4.0], (-5.0, 5.0)),
    "linear": (lambda x: 1.0, linear, [-5.0, 5.0], (-6.0, 6.0)),
    "variable_mass": (smooth_mass, lambda x: 0.0, [-1.5, -0.5, 0.5, 1.5], (-2.5, 2.5)),
}


def solve(mass, pot, bps, x_from, x_to, y0):
    def rhs(x, s):
        y = s[0] + 1j * s[1]
        p = s[2] + 1j * s[3]
        dy = mass(x) * p
        dp = -2.0 * (OMEGA - pot(x)) * y
        return [dy.real, dy.imag, dp.real, dp.imag]

    nodes = sorted(set([x_from, x_to] + [b for b in bps if min(x_from, x_to) < b < max(x_from, x_to)]))
    if x_to < x_from:
        nodes = nodes[::-1]
    s = np.array([y0[0].real, y0[0].imag, y0[1].real, y0[1].imag])
    for a, b in zip(nodes[:-1], nodes[1:]):
        r = solve_ivp(rhs, (a, b), s, method="DOP853", rtol=1e-13, atol=1e-15)
        s = r.y[:, -1]
    return s[0] + 1j * s[1], s[2] + 1j * s[3]


def green(case, x, xp):
    mass, pot, bps, (lo, hi) = CASES[case]
    ml, mr = mass(lo), mass(hi)
    kl = np.sqrt(2 * ml * (OMEGA - pot(lo)))
    kr = np.sqrt(2 * mr * (OMEGA - pot(hi)))
    y1 = lambda t: solve(mass, pot, bps, lo, t, (np.exp(-1j * kl * lo), -1j * kl / ml * np.exp(-1j * kl * lo)))
    y2 = lambda t: solve(mass, pot, bps, hi, t, (np.exp(1j * kr * hi), 1j * kr / mr * np.exp(1j * kr * hi)))
    a, b = min(x, xp), max(x, xp)
    ya, pa = y1(a)
    yb, pb = y2(b)
    y2a, p2a = y2(a)
    c = 1.0 / (ya * p2a - pa * y2a)
    return c * ya * yb


if __name__ == "__main__":
    pairs = [(1.0, -1.0), (-2.0, 3.0), (0.0, 0.0), (2.5, 2.5), (-3.0, -0.5)]
    for case in CASES:
        for x, xp in pairs:
            g = green(case, x, xp)
            print(f"{case:14s} ({x:5.2f},{xp:5.2f})  {g.real:.15e} {g.imag:.15e}")

    # Even bound state of v = -1 on [-1, 1], unit mass: k tan k = kappa.
    mp.dps = 30
    f = lambda e: msqrt(2 * (e + 1)) * tan(msqrt(2 * (e + 1))) - msqrt(-2 * e)
    print("square-well ground state", findroot(f, -0.6))
