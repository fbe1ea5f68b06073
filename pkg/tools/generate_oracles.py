"""Regenerate the frozen reference values in tests/oracle_values.py.

Deliberately does not import tunable_coupler: every value comes from
mpmath arithmetic or dense numpy scans written out here from the
governing equations.
"""
from __future__ import annotations

import mpmath as mp
import numpy as np

mp.mp.dps = 40

HBAR = mp.mpf("6.62607015e-34") / (2 * mp.pi)  # exact SI definition
E = mp.mpf("1.602176634e-19")
V = mp.mpf("1e8")
Z = mp.mpf(50)
L2 = mp.mpf("2.5e-3")
L3 = mp.mpf("4.5e-3")
CS = mp.mpf("100e-15")
IC = mp.mpf("5e-6")
ES = HBAR * IC / (2 * E)
W2 = mp.pi * V / (2 * L2)


def rhs(w, c):
    return 2 * Z * CS * w - 8 * E**2 * Z * ES / (HBAR**2 * w) * c


def bisect(f, lo, hi, n=200):
    flo = f(lo)
    for _ in range(n):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def omega3(c, l3=L3):
    top = mp.pi * V / l3
    d = top * mp.mpf("1e-9")
    return bisect(lambda w: mp.cot(w * l3 / V) - rhs(w, c), d, top - d)


def abs_cos_for(w3, l3=L3):
    return (2 * Z * CS * w3 - mp.cot(w3 * l3 / V)) * HBAR**2 * w3 / (8 * E**2 * Z * ES)


def n_crit(l3):
    return mp.pi * HBAR * (1 + l3 / L2) / (16 * E**2 * Z * mp.sin(mp.pi * l3 / (2 * L2)) ** 2)


# numpy float evaluation for the dense scans
hb, ee, v, z, l2, l3, cs = (float(x) for x in (HBAR, E, V, Z, L2, L3, CS))
es = float(ES)
w2 = float(W2)


def args(w, c):
    r = 2 * z * cs * w - 8 * ee**2 * z * es / (hb**2 * w) * c
    return w * l2 / v, w * l3 / v + np.arctan(r), r


def crossing(ws, g):
    """Linearly interpolated abscissas of sign changes of g sampled on ws."""
    s = np.sign(g)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return [ws[i] - g[i] * (ws[i + 1] - ws[i]) / (g[i + 1] - g[i]) for i in idx]


def phase_oracle(f3_ghz, n=1_000_000):
    w3 = 2 * np.pi * f3_ghz * 1e9
    c = float(abs_cos_for(mp.mpf(w3)))
    lo, hi = sorted((w3, w2))
    pad = (hi - lo) * 1e-9
    ws = np.linspace(lo + pad, hi - pad, n)
    a, b, _ = args(ws, c)
    wc = crossing(ws, np.sin(a + b))
    assert len(wc) == 1
    wc = wc[0]
    # tan(theta) = +-1 written without poles
    cc = np.cos(a) * np.cos(b)
    plus = crossing(ws, np.sin(a + b) - cc)
    minus = crossing(ws, np.sin(a + b) + cc)
    wp = [x for x in plus if x > wc]
    wm = [x for x in minus if x < wc]
    assert len(wp) == 1 and len(wm) == 1
    # second pass on a zoomed grid around each crossing for resolution
    def zoom(g_of, x0):
        h = (hi - lo) / n
        zs = np.linspace(x0 - 4 * h, x0 + 4 * h, 100_001)
        aa, bb, _ = args(zs, c)
        return crossing(zs, g_of(aa, bb))[0]
    wc = zoom(lambda aa, bb: np.sin(aa + bb), wc)
    wp = zoom(lambda aa, bb: np.sin(aa + bb) - np.cos(aa) * np.cos(bb), wp[0])
    wm = zoom(lambda aa, bb: np.sin(aa + bb) + np.cos(aa) * np.cos(bb), wm[0])
    return wc, wp - wm


def energy_oracle(f3_ghz, n=1_000_001):
    """Peak and FWHM of line + SQUID stored energy over input power."""
    w3 = 2 * np.pi * f3_ghz * 1e9
    c = float(abs_cos_for(mp.mpf(w3)))
    lo, hi = sorted((w3, w2))
    wc, kappa = phase_oracle(f3_ghz)
    ws = np.linspace(max(lo, wc - 4 * kappa), min(hi, wc + 4 * kappa), n)
    a, b, r = args(ws, c)
    d = np.cos(a) ** 2 * np.cos(b) ** 2 + np.sin(a + b) ** 2
    r2sq = np.cos(b) ** 2 / d
    r3sq = np.cos(a) ** 2 / d
    # flux at the junction relative to alpha3 is cos(arctan(rhs))
    junction = r3sq / (1 + r**2) * 4 * z * (cs + 4 * ee**2 * es * c / (hb**2 * ws**2))
    y = 2 / v * (r2sq * l2 + r3sq * l3) + junction
    i = int(np.argmax(y))
    half = y[i] / 2
    left = crossing(ws[: i + 1], y[: i + 1] - half)
    right = crossing(ws[i:], y[i:] - half)
    return ws[i], right[0] - left[-1], y[i]


if __name__ == "__main__":
    g = lambda w: float(w / (2 * mp.pi * 1e9))
    print("ES", mp.nstr(ES, 17))
    w10 = 2 * mp.pi * mp.mpf("1e10")
    for c in (1, 0):
        r = rhs(w10, c)
        print("rhs/l3eff @10GHz |cos|=%d" % c, mp.nstr(r, 17), mp.nstr(L3 + V / w10 * mp.atan(r), 17))
    print("f3(phi=0)", mp.nstr(g(omega3(1)), 17))
    print("f3(phi=pi)", mp.nstr(g(omega3(0)), 17))
    cw2 = abs_cos_for(W2)
    print("phi_ex for w2", mp.nstr(2 * mp.acos(cw2), 17), mp.nstr(mp.acos(cw2) / mp.pi, 17))
    # L3 cutoff: |cos| = 1 at omega2
    xcut = mp.pi - mp.acot(-(2 * Z * CS * W2 - 8 * E**2 * Z * ES / (HBAR**2 * W2)))
    xcut = bisect(lambda x: abs_cos_for(W2, l3=x) - 1, mp.mpf("4.5e-3"), mp.mpf("4.999e-3"))
    print("L3 cutoff", mp.nstr(xcut, 17))
    for l3v in ("2.5e-3", "4.5e-3"):
        print("ncrit", l3v, mp.nstr(n_crit(mp.mpf(l3v)), 17))
    for f3 in (9.0, 9.3, 9.6, 9.8, 9.9, 9.95, 9.99, 9.999):
        wc, k = phase_oracle(f3)
        print("phase", f3, repr(wc), repr(k))
    for f3 in (9.0, 9.9, 9.999):
        wp, k, ymax = energy_oracle(f3)
        print("energy", f3, repr(wp), repr(k), repr(ymax))
