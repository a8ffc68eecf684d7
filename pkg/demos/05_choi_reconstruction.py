"""Three routes to the Choi matrix and channel recovery from it.

* analytic: evaluate the channel on the |i><k| basis directly;
* linear: combine the channel outputs on the nine physical input states
  through the stored coefficient table;
* direct: prepare the maximally entangled two-qutrit state on six qubits,
  apply the channel to the system half, and tomograph both halves.
"""
import numpy as np

from qutritsim import channels as ch
from qutritsim import choi as cj
from qutritsim import decompositions as dc
from qutritsim import linalg as la
from qutritsim import tomography as tg

np.set_printoptions(precision=3, suppress=True, linewidth=140)

rep = ch.ChannelRep.analytic("wh")
omega_analytic = cj.analytic_choi(rep)
print("analytic Choi eigenvalues:",
      np.round(la.hermitian_eig(omega_analytic)[0], 6))

outs = [ch.apply_channel(rep, r) for r in cj.physical_basis()]
omega_linear = cj.choi_linear(outs)
print("linear route deviation:", np.abs(omega_linear - omega_analytic).max())

print("\ncoefficient table rederived from scratch, max deviation:",
      np.abs(cj.rederive_coefficients() - cj.COEFFICIENTS).max())

print("\ndirect route (exact mode):")
omega_direct = cj.choi_direct(dc.wh_channel_circuit(), shots=0, seed=0)
print("deviation:", np.abs(omega_direct - omega_analytic).max())

print("\ndirect route (one million shots):")
omega_shot = cj.choi_direct(dc.wh_channel_circuit(), shots=10 ** 6, seed=1)
print("Choi fidelity vs analytic:",
      cj.choi_fidelity(omega_analytic, omega_shot))

print("\nchannel recovery from the Choi matrix:")
rng = np.random.default_rng(0)
a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
rho = a @ a.conj().T
rho /= np.trace(rho)
rec = cj.channel_from_choi(omega_shot, rho)
print("recovered vs analytic output:", np.abs(rec - ch.wh_apply(rho)).max())

print("\npairwise fidelity sweep (reconstructed channel vs analytic):")
print(" pair     min      max      mean")
for (pa, pb) in ((1, 2), (4, 7), (5, 9)):
    lo, hi, mean = tg.channel_fidelity_sweep(omega_shot, ch.wh_apply, pa, pb, grid=51)
    print(f" ({pa},{pb})   {lo:.4f}   {hi:.4f}   {mean:.4f}")
