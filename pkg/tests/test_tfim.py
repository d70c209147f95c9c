import struct

import numpy as np
import pytest

from conftest import SEED, random_state
from renyimi import (
    TfimModel,
    apply_hamiltonian,
    ground_state,
    load_ground_state,
    save_ground_state,
    symmetrize_translation,
    translate,
)
from renyimi.tfim import dense_hamiltonian


def test_apply_h_on_all_zeros_L4():
    L = 4
    psi = np.zeros(2**L, dtype=complex)
    psi[0] = 1.0
    out = apply_hamiltonian(TfimModel(L), psi)
    expect = np.zeros(2**L, dtype=complex)
    expect[0] = -4.0  # four aligned bonds
    for j in range(L):
        expect[1 << j] = -1.0  # one transverse flip each
    assert np.max(np.abs(out - expect)) < 1e-15


def test_apply_h_linearity():
    rng = np.random.default_rng(SEED)
    m = TfimModel(6)
    u = random_state(6, rng)
    v = random_state(6, rng)
    a, b = 0.7 - 0.2j, -1.1 + 0.4j
    lhs = apply_hamiltonian(m, a * u + b * v)
    rhs = a * apply_hamiltonian(m, u) + b * apply_hamiltonian(m, v)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_plus_state_expectation():
    L = 4
    plus = np.full(2**L, 2.0 ** (-L / 2), dtype=complex)
    e = np.vdot(plus, apply_hamiltonian(TfimModel(L), plus)).real
    assert abs(e - (-4.0)) < 1e-12  # X terms saturate, ZZ terms vanish


def test_apply_h_length_mismatch():
    with pytest.raises(ValueError):
        apply_hamiltonian(TfimModel(4), np.zeros(8))


def test_dense_matches_matvec():
    m = TfimModel(5)
    h = dense_hamiltonian(m)
    rng = np.random.default_rng(SEED + 1)
    psi = random_state(5, rng)
    assert np.max(np.abs(h @ psi - apply_hamiltonian(m, psi))) < 1e-12


def test_L2_dense_energy():
    # single bond counted twice by the periodic sum: E0 = -2 sqrt(2)
    res = ground_state(TfimModel(2), method="dense")
    assert abs(res.energy - (-2.0 * np.sqrt(2.0))) < 1e-12


def test_lanczos_rejects_L2():
    with pytest.raises(ValueError):
        ground_state(TfimModel(2), method="lanczos")


def test_unknown_method_rejected():
    with pytest.raises(ValueError):
        ground_state(TfimModel(4), method="qmc")


@pytest.mark.parametrize("L", [8, 10])
def test_lanczos_agrees_with_dense(L):
    dense = ground_state(TfimModel(L), method="dense")
    lanc = ground_state(TfimModel(L), method="lanczos")
    assert abs(dense.energy - lanc.energy) < 1e-8
    assert 1.0 - abs(np.vdot(dense.state, lanc.state)) < 1e-6


def test_residual_bound_L12():
    res = ground_state(TfimModel(12), method="lanczos")
    assert res.residual <= 1e-8
    hpsi = apply_hamiltonian(TfimModel(12), res.state)
    assert np.linalg.norm(hpsi - res.energy * res.state) <= 1e-8


def test_energy_per_site_near_thermodynamic_value():
    # -4/pi is the known infinite-size value; generous finite-size band
    res = ground_state(TfimModel(16), method="lanczos")
    assert abs(res.energy / 16 - (-4.0 / np.pi)) < 2e-2


def test_ground_state_is_reproducible():
    a = ground_state(TfimModel(8), method="lanczos")
    b = ground_state(TfimModel(8), method="lanczos")
    assert a.energy == b.energy
    assert np.array_equal(a.state, b.state)


def test_phase_fix_largest_amplitude_real_positive():
    res = ground_state(TfimModel(6), method="dense")
    big = np.argmax(np.abs(res.state))
    assert res.state[big].imag == pytest.approx(0.0, abs=1e-14)
    assert res.state[big].real > 0


def test_translation_commutes_with_h():
    rng = np.random.default_rng(SEED + 2)
    m = TfimModel(5)
    psi = random_state(5, rng)
    lhs = apply_hamiltonian(m, translate(psi, 1))
    rhs = translate(apply_hamiltonian(m, psi), 1)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_ground_state_is_translation_invariant():
    res = ground_state(TfimModel(8), method="lanczos")
    assert np.max(np.abs(translate(res.state, 3) - res.state)) < 1e-12


def test_symmetrize_translation_fixed_point():
    res = ground_state(TfimModel(6), method="dense")
    again = symmetrize_translation(res.state)
    assert np.max(np.abs(again - res.state)) < 1e-13


def test_cache_roundtrip(tmp_path):
    res = ground_state(TfimModel(6), method="dense")
    path = tmp_path / "gs.bin"
    save_ground_state(path, res)
    loaded = load_ground_state(path)
    assert loaded.energy == res.energy
    assert np.array_equal(loaded.state, res.state)
    assert loaded.residual <= 1e-8


def test_cache_file_byte_layout(tmp_path):
    # magic, version u32, L u32, energy f64, then (re, im) f64 pairs, little-endian
    res = ground_state(TfimModel(3), method="dense")
    path = tmp_path / "gs.bin"
    save_ground_state(path, res)
    raw = path.read_bytes()
    assert raw[:4] == b"TFGS"
    version, L = struct.unpack("<II", raw[4:12])
    assert (version, L) == (1, 3)
    (energy,) = struct.unpack("<d", raw[12:20])
    assert energy == res.energy
    re0, im0 = struct.unpack("<dd", raw[20:36])
    assert complex(re0, im0) == res.state[0]
    assert len(raw) == 20 + 16 * 2**3


def test_cache_rejects_bad_magic(tmp_path):
    path = tmp_path / "gs.bin"
    path.write_bytes(b"NOPE" + b"\x00" * 32)
    with pytest.raises(ValueError):
        load_ground_state(path)


def test_cache_rejects_truncated_file(tmp_path):
    res = ground_state(TfimModel(4), method="dense")
    path = tmp_path / "gs.bin"
    save_ground_state(path, res)
    data = path.read_bytes()
    path.write_bytes(data[:-16])
    with pytest.raises(ValueError):
        load_ground_state(path)
