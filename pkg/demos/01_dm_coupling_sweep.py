"""How the antisymmetric (DM) coupling shapes correlation decay.

Two qubits start in the maximally entangled state (|00> + |11>)/sqrt(2) and
leak excitations into a thermal collective mode.  Sweeping the DM strength
d_z shows the central effect: a larger d_z slows the loss of entanglement,
and the non-Markovian bath keeps reviving both measures instead of letting
them decay monotonically.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from spinbath import (InitialState, ModelParams, choose_truncation,
                      concurrence_wootters, density_series, quantum_discord)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

state0 = InitialState.bell_like()
times = np.linspace(0.0, 10.0, 201)
dz_values = (0.0, 1.0, 2.0, 3.0)

fig, (ax_c, ax_d) = plt.subplots(1, 2, figsize=(11, 4), sharex=True)
print(f"{'d_z':>4} {'<concurrence>':>14} {'<discord>':>10}")
for d_z in dz_values:
    params = ModelParams(epsilon=0.5, j_coupling=2.0, j_z=1.0, d_z=d_z,
                         g_bath=1.0, g_sys_bath=1.0, temperature=2.0)
    trunc = choose_truncation(params, 1e-12)
    rhos = density_series(params, state0, times, trunc)
    conc = np.array([concurrence_wootters(rho) for rho in rhos])
    disc = np.array([quantum_discord(rho).discord for rho in rhos])
    ax_c.plot(times, conc, label=f"$d_z={d_z:g}$")
    ax_d.plot(times, disc, label=f"$d_z={d_z:g}$")
    print(f"{d_z:4g} {conc.mean():14.4f} {disc.mean():10.4f}")

ax_c.set_xlabel("t")
ax_c.set_ylabel("concurrence")
ax_d.set_xlabel("t")
ax_d.set_ylabel("quantum discord")
ax_c.legend()
ax_d.legend()
fig.suptitle("Correlation dynamics vs DM coupling (J=2, J_z=1, T=2, g0=g=1)")
fig.tight_layout()
target = OUT / "dm_coupling_sweep.png"
fig.savefig(target, dpi=150)
print(f"\nfigure written to {target}")
print("note the entanglement sudden death intervals at d_z=0 while the")
print("discord stays finite, and the partial revivals at later times.")
