"""Ground states of the critical Ising chain.

Walks through the matrix-free Hamiltonian, the Lanczos and dense solvers,
the finite-size drift of the energy density toward -4/pi, and the binary
ground-state cache.
"""

import os
import tempfile

import numpy as np

from renyimi import (
    TfimModel,
    apply_hamiltonian,
    ground_state,
    load_ground_state,
    save_ground_state,
    translate,
)

print("=" * 70)
print("Matrix-free Hamiltonian action")
print("=" * 70)
L = 4
model = TfimModel(L)
psi = np.zeros(2**L, dtype=complex)
psi[0] = 1.0  # all spins up
hpsi = apply_hamiltonian(model, psi)
print(f"H|0000>: diagonal amplitude {hpsi[0].real:+.1f} (four aligned bonds),")
print(f"         plus {np.count_nonzero(hpsi) - 1} single-flip amplitudes of {hpsi[1].real:+.1f} each")

print()
print("=" * 70)
print("Lanczos vs dense eigensolver")
print("=" * 70)
for L in (6, 8, 10):
    dense = ground_state(TfimModel(L), method="dense")
    lanczos = ground_state(TfimModel(L), method="lanczos")
    overlap = abs(np.vdot(dense.state, lanczos.state))
    print(
        f"L={L:2d}: E0(dense)={dense.energy:+.10f}  "
        f"|dE|={abs(dense.energy - lanczos.energy):.2e}  1-|<d|l>|={1 - overlap:.2e}"
    )

print()
print("=" * 70)
print("Energy density vs the thermodynamic value -4/pi")
print("=" * 70)
for L in (8, 12, 16):
    res = ground_state(TfimModel(L), method="lanczos")
    e = res.energy / L
    print(f"L={L:2d}: E0/L = {e:+.6f}   deviation from -4/pi = {e + 4 / np.pi:+.2e}")

print()
print("=" * 70)
print("Translation invariance and the cache file")
print("=" * 70)
res = ground_state(TfimModel(10), method="lanczos")
shift_err = np.max(np.abs(translate(res.state, 3) - res.state))
print(f"L=10 ground state: residual {res.residual:.2e}, translation error {shift_err:.2e}")

with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "gs.bin")
    save_ground_state(path, res)
    loaded = load_ground_state(path)
    print(f"cache round-trip: {os.path.getsize(path)} bytes, "
          f"bit-identical = {np.array_equal(loaded.state, res.state)}")
