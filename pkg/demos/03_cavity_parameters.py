"""Cavity frequency and linewidth as omega3 approaches omega2.

Two independent extractions are compared: the zero and +-pi/2 points of the
reflection phase, and the peak and FWHM of E/P.  The linewidth collapses
by orders of magnitude as omega3 -> omega2 while omega_c stays between
the two stub frequencies.
"""
# %%
import math

import numpy as np

import tunable_coupler as tc

GHZ = 2 * math.pi * 1e9
dev = tc.make_device()
targets = np.array([9.0, 9.2, 9.4, 9.6, 9.8, 9.9, 9.95, 9.99, 9.999, 10.0])
rows = tc.sweep_vs_boundary(dev, targets * GHZ)

print(f"{'f3 GHz':>8} {'fc phase':>12} {'kappa/2pi phase':>16} {'kappa/2pi energy':>17}  status")
for row in rows:
    if row.status != "ok":
        print(f"{row.omega3 / GHZ:8.3f} {'':>12} {'':>16} {'':>17}  {row.status}")
        continue
    print(
        f"{row.omega3 / GHZ:8.3f} {row.phase.omega_c / GHZ:12.6f} "
        f"{row.phase.kappa / (2 * math.pi):14.4e} Hz {row.energy.kappa / (2 * math.pi):15.4e} Hz  ok"
    )

# %% Large detuning: no capacitor separates cavity and line, so kappa
# reaches the GHz scale.
far = tc.extract_from_phase(dev, tc.flux_for_omega3(dev, 5.0 * GHZ))
print(f"omega3/2pi = 5 GHz: kappa/2pi = {far.kappa / GHZ:.3f} GHz")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    ok = [r for r in rows if r.status == "ok"]
    f3 = [r.omega3 / GHZ for r in ok]
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True)
    ax1.plot(f3, [r.phase.omega_c / GHZ for r in ok], "o-", label="phase")
    ax1.plot(f3, [r.energy.omega_c / GHZ for r in ok], "x", label="energy")
    ax1.set_ylabel("omega_c/2pi (GHz)")
    ax2.semilogy(f3, [r.phase.kappa / GHZ for r in ok], "o-")
    ax2.semilogy(f3, [r.energy.kappa / GHZ for r in ok], "x")
    ax2.set_ylabel("kappa/2pi (GHz)")
    ax2.set_xlabel("omega3/2pi (GHz)")
    ax1.legend()
    plt.show()
