import numpy as np
import pytest

from qutritsim import channels as ch
from qutritsim import circuits as cc
from qutritsim import decompositions as dc
from qutritsim import encoding as enc
from qutritsim import linalg as la
from qutritsim import tomography as tg

from test_channels import rand_density


def test_settings_enumeration():
    s2 = tg.settings_for(2)
    assert len(s2) == 9
    assert s2[0] == "ZZ" and s2[1] == "ZX"
    assert len(tg.settings_for(4)) == 81


def test_prerotations_map_eigenbasis():
    # +1 eigenstates of X and Y land on |0>
    plus = np.array([1, 1]) / np.sqrt(2)
    plus_i = np.array([1, 1j]) / np.sqrt(2)
    for basis, state in (("X", plus), ("Y", plus_i)):
        frag = cc.Circuit(1, tg.prerotation_gates(basis))
        out = cc.simulate_state(frag, state)
        assert abs(abs(out[0]) - 1) < 1e-12, basis


def test_collect_identity_circuit():
    rec = tg.collect(cc.Circuit(2), shots=100, seed=5)
    assert len(rec.settings) == 9
    zz = rec.counts[rec.settings.index("ZZ")]
    assert zz.counts == {"00": 100}


def test_collect_bell_parity():
    c = cc.Circuit(2, [("h", (), (0,)), ("cnot", (), (0, 1))])
    rec = tg.collect(c, shots=20000, seed=3)
    xx = rec.counts[rec.settings.index("XX")]
    even = sum(v for b, v in xx.counts.items() if (b.count("1") % 2) == 0)
    assert even / 20000 > 0.99


def test_collect_deterministic_and_order_independent():
    c = cc.Circuit(2, [("h", (), (0,))])
    a = tg.collect(c, shots=500, seed=11)
    b = tg.collect(c, shots=500, seed=11)
    assert all(x.counts == y.counts for x, y in zip(a.counts, b.counts))


def test_reconstruct_exact_record():
    # exact-probability records invert exactly
    rng = np.random.default_rng(2)
    for i in (1, 4, 7, 9):
        c = dc.prep_basis_circuit(i)
        rec = tg.collect(c, shots=0, seed=0)
        rho = tg.reconstruct_2q(rec)
        psi = dc.basis_state_vector(i)
        want = np.outer(psi, psi.conj())
        assert np.abs(rho - want).max() < 1e-9, i
    # and on a mixed state from a noisy circuit; CNOT-only noise so the
    # measurement pre-rotations (one-qubit gates) stay exact
    c = cc.Circuit(2, [("u3", (0.7, 0.2, 1.1), (0,)), ("cnot", (), (0, 1))])
    noise = cc.NoiseConfig(p2=0.1)
    rec = tg.collect(c, shots=0, seed=0, noise=noise)
    rho = tg.reconstruct_2q(rec)
    psi0 = np.zeros((4, 4), dtype=complex); psi0[0, 0] = 1
    want = cc.simulate_density(c, psi0, noise)
    assert np.abs(rho - want).max() < 1e-9


def test_reconstruct_projects_to_physical():
    # hand-build a record whose linear inversion has a negative eigenvalue
    rec = tg.collect(dc.prep_basis_circuit(4), shots=64, seed=1)
    rho = tg.reconstruct_2q(rec)
    w, _ = la.hermitian_eig(rho)
    assert w[-1] >= -1e-12
    assert abs(np.trace(rho) - 1) < 1e-12


def test_reconstruct_2q_shot_noise_fidelity():
    psi = dc.basis_state_vector(6)
    target = np.outer(psi, psi.conj())
    c = dc.prep_basis_circuit(6)
    fids = []
    for seed in range(20):
        rec = tg.collect(c, shots=8192, seed=seed)
        rho = tg.reconstruct_2q(rec)
        fids.append(tg.fidelity(rho, target))
    assert min(fids) >= 0.97


def test_reconstruct_qutrit():
    rec = tg.collect(dc.prep_basis_circuit(3), shots=0, seed=0)
    rho3, leak = tg.reconstruct_qutrit(rec)
    assert np.abs(rho3 - np.diag([0, 0, 1.0])).max() < 1e-9
    assert abs(leak) < 1e-9


def test_reconstruct_qutrit_readout_leakage():
    noise = cc.NoiseConfig(readout_flip=0.05)
    rec = tg.collect(dc.prep_basis_circuit(1), shots=0, seed=0, noise=noise)
    _, leak = tg.reconstruct_qutrit(rec)
    assert 0.0 < leak < 0.02  # double flip onto |11> is ~flip^2


def test_reconstruct_channel_output_high_shots():
    circ = dc.ls_channel_circuit()
    full = cc.Circuit(4)
    full.extend(dc.prep_basis_circuit(1).remapped([2, 3], 4).gates)
    full.extend(circ.gates)
    rec = tg.collect(full, shots=10 ** 6, seed=42, measure_qubits=(2, 3))
    rho3, _ = tg.reconstruct_qutrit(rec)
    assert tg.fidelity(rho3, np.diag([0.5, 0.5, 0.0]).astype(complex)) >= 0.999


def test_incomplete_record_rejected():
    rec = tg.collect(cc.Circuit(2), shots=4, seed=0)
    rec.settings = rec.settings[:-1]
    rec.counts = rec.counts[:-1]
    with pytest.raises(ValueError):
        tg.reconstruct_2q(rec)


def test_fidelity_basic_values():
    rng = np.random.default_rng(3)
    rho = rand_density(rng)
    assert abs(tg.fidelity(rho, rho) - 1) < 1e-9
    p0 = np.diag([1.0, 0.0]).astype(complex)
    p1 = np.diag([0.0, 1.0]).astype(complex)
    assert tg.fidelity(p0, p1) < 1e-12
    plus = np.ones((2, 2)) / 2
    assert abs(tg.fidelity(p0, plus) - 0.5) < 1e-10


def test_fidelity_symmetry_and_pure_overlap():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = rand_density(rng), rand_density(rng)
        assert abs(tg.fidelity(a, b) - tg.fidelity(b, a)) < 1e-10
        u = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))[0]
        v, w = u[:, 0], u[:, 1] * 0.6 + u[:, 0] * 0.8
        w /= np.linalg.norm(w)
        pv, pw = np.outer(v, v.conj()), np.outer(w, w.conj())
        assert abs(tg.fidelity(pv, pw) - abs(v.conj() @ w) ** 2) < 1e-10


def test_fidelity_shape_error():
    with pytest.raises(la.ShapeError):
        tg.fidelity(np.eye(2) / 2, np.eye(3) / 3)


def test_error_shrinks_with_shots():
    psi = dc.basis_state_vector(7)
    target = np.outer(psi, psi.conj())
    c = dc.prep_basis_circuit(7)

    def mean_err(shots):
        errs = []
        for seed in range(8):
            rec = tg.collect(c, shots=shots, seed=seed)
            errs.append(1 - tg.fidelity(tg.reconstruct_2q(rec), target))
        return np.mean(errs)

    assert mean_err(4096) > mean_err(262144)


def test_channel_fidelity_sweep_self():
    omega = ch.choi_of(ch.ChannelRep.analytic("wh"))
    lo, hi, mean = tg.channel_fidelity_sweep(omega, ch.wh_apply, 1, 2, grid=11)
    assert min(lo, hi, mean) > 1 - 1e-9
    # swap symmetry of the statistics
    lo2, hi2, mean2 = tg.channel_fidelity_sweep(omega, ch.wh_apply, 2, 1, grid=11)
    assert abs(mean - mean2) < 1e-12


def test_record_json_roundtrip(tmp_path):
    rec = tg.collect(dc.prep_basis_circuit(6), shots=128, seed=9)
    p = tmp_path / "rec.json"
    tg.record_to_json_file(p, rec)
    back = tg.record_from_json_file(p)
    assert back.settings == rec.settings
    assert all(a.counts == b.counts for a, b in zip(back.counts, rec.counts))
    assert np.abs(tg.reconstruct_2q(back) - tg.reconstruct_2q(rec)).max() < 1e-12
