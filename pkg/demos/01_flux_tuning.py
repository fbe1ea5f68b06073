"""Tuning the stub resonance with external flux.

The SQUID at the end of Port 3 acts as a flux-dependent load, so the
frequency omega3 at which Port 3 alone resonates can be pulled below
omega2 and back.  Run with ``python3 demos/01_flux_tuning.py``; a plot is
drawn if matplotlib is installed.
"""
# %%
import math

import numpy as np

import tunable_coupler as tc

dev = tc.make_device()
flux = np.linspace(0.0, 1.0, 201)
f3 = np.array([tc.omega3(dev, tc.BoundaryCondition.from_flux(x)) for x in flux]) / (2 * math.pi * 1e9)

lo, hi = tc.tunable_range(dev)
print(f"omega2/2pi        = {dev.omega2 / (2 * math.pi * 1e9):.4f} GHz")
print(f"omega3/2pi range  = {lo / (2 * math.pi * 1e9):.4f} .. {hi / (2 * math.pi * 1e9):.4f} GHz")

# %% Where does omega3 meet omega2?  The inverse map is closed form.
bc = tc.flux_for_omega3(dev, dev.omega2)
print(f"omega3 = omega2 at phi_ex = {bc.phi_ex:.4f} rad ({bc.flux_over_flux_quantum:.4f} flux quanta)")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots()
    ax.plot(flux, f3, label="omega3/2pi")
    ax.axhline(dev.omega2 / (2 * math.pi * 1e9), lw=0.8, color="k", label="omega2/2pi")
    ax.set_xlabel("flux / flux quantum")
    ax.set_ylabel("frequency (GHz)")
    ax.legend()
    plt.show()
