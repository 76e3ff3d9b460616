#!/usr/bin/env python3
"""Noisy superdense coding, and the dephasing channel as a contrast case.

Superdense coding sends one of four Bell states through the channel; the
classical information the receiver can extract (the Kholevo quantity of the
four-state ensemble, equivalently the conditional mutual information given
the encoded letter) equals the channel's peak mutual entanglement.  Below
p ~ 0.189 that beats the one bit a bare qubit would carry.

The dephasing channel only ever applies phase errors, so it keeps 2 - H2(p)
bits of mutual entanglement and carries classical bits with no loss at all.
"""

import numpy as np

from vncap.qmat import DensityMatrix
from vncap.channel import run_channel
from vncap.depolarizing import (
    classical_use_channel_simulation,
    dephasing_kraus,
    dephasing_mutual,
    quantum_capacity,
    superdense_scenario,
    superdense_threshold,
)

print("noisy superdense coding")
print("p      S(Q':R|C)  chi       peak I_Q")
for p in (0.0, 0.05, 0.1, 0.189, 0.3, 0.5):
    report = superdense_scenario(p)
    print(
        f"{p:.3f}  {report.conditional_mutual:8.5f}  "
        f"{report.kholevo_chi:8.5f}  {quantum_capacity(p):8.5f}"
    )
print(f"break-even with a bare bit at p = {superdense_threshold():.6f}")

print()
print("dephasing channel at q = 1/2")
print("p      simulated I_Q   2 - H2(p)   classical mutual   classical loss")
rho = DensityMatrix(np.eye(2) / 2)
for p in (0.0, 0.1, 0.25, 0.5, 0.75, 1.0):
    t = run_channel(dephasing_kraus(p), rho)
    cl_mutual, cl_loss = classical_use_channel_simulation(dephasing_kraus(p), 0.5)
    print(
        f"{p:.2f}   {t.mutual_entanglement:10.6f}  {dephasing_mutual(p):10.6f}"
        f"  {cl_mutual:12.6f}  {cl_loss:13.2e}"
    )

print()
print("note p = 1 is a *deterministic* phase flip, hence as good as noiseless;")
print("classical bits ride the diagonal and never feel the phase errors.")
