"""How many photons the decoupled cavity holds before the SQUID turns nonlinear.

When omega3 = omega2 the cavity mode has a node at the branch point and
its flux at the SQUID grows with L3.  A longer Port 3 therefore puts less
junction flux per photon, raising N_crit, until omega3 can no longer be
tuned down to omega2.
"""
# %%
import math

import numpy as np

import tunable_coupler as tc

dev = tc.make_device()
cutoff = tc.max_tunable_l3(dev, 4.5e-3, 5.0e-3)
print(f"omega3 can reach omega2 only for L3 <= {cutoff * 1e3:.4f} mm")

l3 = np.linspace(2.0e-3, 4.9e-3, 30)
for x in l3[::5]:
    r = tc.critical_photon_number(dev, float(x))
    print(f"L3 = {x * 1e3:5.2f} mm  N_crit = {r.n_crit:10.2f}  tunable = {r.tunable_to_omega2}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    n = [tc.critical_photon_number(dev, float(x)).n_crit for x in l3]
    fig, ax = plt.subplots()
    ax.semilogy(l3 * 1e3, n)
    ax.axvline(cutoff * 1e3, ls="--", color="k")
    ax.set_xlabel("L3 (mm)")
    ax.set_ylabel("N_crit")
    plt.show()
