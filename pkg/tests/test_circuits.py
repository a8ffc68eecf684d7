import numpy as np
import pytest

from qutritsim import circuits as cc
from qutritsim import linalg as la


def test_gate_validation():
    with pytest.raises(ValueError):
        cc.Gate("u3", (0.1,), (0,))          # wrong param count
    with pytest.raises(ValueError):
        cc.Gate("cnot", (), (1, 1))          # duplicate qubits
    with pytest.raises(ValueError):
        cc.Gate("frobnicate", (), (0,))
    with pytest.raises(ValueError):
        cc.Circuit(2, [("x", (), (5,))])     # out of register


def test_gate_matrix_u3_quarter_rotation():
    g = cc.Gate("u3", (np.pi / 4, 0.0, 0.0), (0,))
    want = np.array([[np.cos(np.pi / 8), -np.sin(np.pi / 8)],
                     [np.sin(np.pi / 8), np.cos(np.pi / 8)]])
    assert np.abs(cc.gate_matrix(g) - want).max() < 1e-15


def test_gate_matrix_u1_u2_h():
    assert np.abs(cc.gate_matrix(cc.Gate("u1", (0.0,), (0,))) - np.eye(2)).max() == 0
    u1 = cc.gate_matrix(cc.Gate("u1", (0.7,), (0,)))
    assert np.abs(u1 - np.diag([1.0, np.exp(0.7j)])).max() < 1e-15
    u2 = cc.gate_matrix(cc.Gate("u2", (0.3, 0.4), (0,)))
    u3 = cc.gate_matrix(cc.Gate("u3", (np.pi / 2, 0.3, 0.4), (0,)))
    assert np.abs(u2 - u3).max() < 1e-15
    h = cc.gate_matrix(cc.Gate("h", (), (0,)))
    assert np.abs(h - np.array([[1, 1], [1, -1]]) / np.sqrt(2)).max() < 1e-15


def test_all_gate_matrices_unitary():
    rng = np.random.default_rng(0)
    for name in cc.GATE_ARITY:
        n_par, n_q = cc.GATE_ARITY[name]
        g = cc.Gate(name, tuple(rng.uniform(-np.pi, np.pi, n_par)), tuple(range(n_q)))
        assert la.is_unitary(cc.gate_matrix(g), 1e-12), name


def test_unitary_of_empty_and_involution():
    assert np.abs(cc.unitary_of(cc.Circuit(2)) - np.eye(4)).max() == 0
    c = cc.Circuit(1, [("h", (), (0,)), ("h", (), (0,))])
    assert np.abs(cc.unitary_of(c) - np.eye(2)).max() < 1e-12


def test_unitary_of_matches_kron_order():
    # x on qubit 0 of two: qubit 0 is the most significant bit
    c = cc.Circuit(2, [("x", (), (0,))])
    want = np.kron(np.array([[0, 1], [1, 0]]), np.eye(2))
    assert np.abs(cc.unitary_of(c) - want).max() < 1e-14
    # cnot(0->1) standard matrix
    c2 = cc.Circuit(2, [("cnot", (), (0, 1))])
    want2 = np.zeros((4, 4))
    for q0 in (0, 1):
        for q1 in (0, 1):
            i = 2 * q0 + q1
            j = 2 * q0 + (q1 ^ q0)
            want2[j, i] = 1
    assert np.abs(cc.unitary_of(c2) - want2).max() == 0


def test_cnot_reversal_identity():
    # (H x H) cnot01 (H x H) == cnot10
    c = cc.Circuit(2, [("h", (), (0,)), ("h", (), (1,)), ("cnot", (), (0, 1)),
                       ("h", (), (0,)), ("h", (), (1,))])
    assert np.abs(cc.unitary_of(c) - cc.unitary_of(cc.Circuit(2, [("cnot", (), (1, 0))]))).max() < 1e-12


def test_unitary_of_random_circuit_is_unitary():
    rng = np.random.default_rng(3)
    for n in (2, 3, 4):
        c = random_circuit(rng, n, depth=15)
        assert la.is_unitary(cc.unitary_of(c), 1e-10)


def random_circuit(rng, n, depth):
    c = cc.Circuit(n)
    for _ in range(depth):
        if n >= 2 and rng.uniform() < 0.4:
            q = rng.choice(n, size=2, replace=False)
            c.add("cnot", (), tuple(int(x) for x in q))
        else:
            name = rng.choice(["u1", "u2", "u3", "x", "y", "z", "h"])
            n_par = cc.GATE_ARITY[name][0]
            c.add(name, tuple(rng.uniform(-np.pi, np.pi, n_par)),
                  (int(rng.integers(n)),))
    return c


def test_simulate_state_basics():
    c = cc.Circuit(1, [("x", (), (0,))])
    out = cc.simulate_state(c, np.array([1.0, 0.0]))
    assert np.abs(out - np.array([0, 1])).max() < 1e-15
    bell_in = np.zeros(4); bell_in[0] = bell_in[2] = 1 / np.sqrt(2)  # (|00>+|10>)/sqrt2
    out = cc.simulate_state(cc.Circuit(2, [("cnot", (), (0, 1))]), bell_in)
    want = np.zeros(4); want[0] = want[3] = 1 / np.sqrt(2)
    assert np.abs(out - want).max() < 1e-12
    with pytest.raises(ValueError):
        cc.simulate_state(c, np.array([1.0, 1.0]))


def test_simulate_state_matches_unitary():
    rng = np.random.default_rng(5)
    for _ in range(5):
        c = random_circuit(rng, 3, 12)
        u = cc.unitary_of(c)
        psi = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi /= np.linalg.norm(psi)
        assert np.abs(cc.simulate_state(c, psi) - u @ psi).max() < 1e-10
        assert abs(np.linalg.norm(cc.simulate_state(c, psi)) - 1) < 1e-12


def test_simulate_density_noiseless_equals_conjugation():
    rng = np.random.default_rng(7)
    for _ in range(5):
        c = random_circuit(rng, 4, 12)
        u = cc.unitary_of(c)
        a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        rho = a @ a.conj().T
        rho /= np.trace(rho)
        got = cc.simulate_density(c, rho)
        assert np.abs(got - u @ rho @ u.conj().T).max() < 1e-10
        got0 = cc.simulate_density(c, rho, cc.NoiseConfig.zero())
        assert np.abs(got0 - got).max() < 1e-12


def test_noise_config_validation():
    with pytest.raises(ValueError):
        cc.NoiseConfig(p1=1.5)
    with pytest.raises(ValueError):
        cc.NoiseConfig(gamma=-0.1)


def test_full_depolarization():
    rho0 = np.diag([1.0, 0.0]).astype(complex)
    c = cc.Circuit(1, [("x", (), (0,))])
    out = cc.simulate_density(c, rho0, cc.NoiseConfig(p1=1.0))
    assert np.abs(out - np.eye(2) / 2).max() < 1e-12


def test_excite_then_fully_damp():
    # amplitude damping oracle: K0 = diag(1, sqrt(1-g)), K1 = |0><1| sqrt(g)
    rho0 = np.diag([1.0, 0.0]).astype(complex)
    c = cc.Circuit(1, [("x", (), (0,))])
    out = cc.simulate_density(c, rho0, cc.NoiseConfig(gamma=1.0))
    assert np.abs(out - rho0).max() < 1e-12
    # partial damping against hand Kraus evaluation
    g = 0.3
    out = cc.simulate_density(c, rho0, cc.NoiseConfig(gamma=g))
    k0 = np.array([[1, 0], [0, np.sqrt(1 - g)]])
    k1 = np.array([[0, np.sqrt(g)], [0, 0]])
    x = np.array([[0, 1], [1, 0]])
    want = k0 @ x @ rho0 @ x @ k0.T + k1 @ x @ rho0 @ x @ k1.T
    assert np.abs(out - want).max() < 1e-12


def test_noise_preserves_trace_and_psd():
    rng = np.random.default_rng(11)
    c = random_circuit(rng, 3, 10)
    rho = np.zeros((8, 8), dtype=complex); rho[0, 0] = 1
    out = cc.simulate_density(c, rho, cc.NoiseConfig(p1=0.03, p2=0.08, gamma=0.02))
    assert abs(np.trace(out) - 1) < 1e-10
    assert la.is_psd(out, 1e-9)


def test_purity_negative_noise_monotonicity():
    rng = np.random.default_rng(13)
    c = random_circuit(rng, 3, 10)
    rho = np.zeros((8, 8), dtype=complex); rho[0, 0] = 1
    purities = []
    for p in (0.0, 0.01, 0.05, 0.1):
        out = cc.simulate_density(c, rho, cc.NoiseConfig(p1=p, p2=p, gamma=p))
        purities.append(np.trace(out @ out).real)
    assert all(purities[i] >= purities[i + 1] - 1e-12 for i in range(3))


def test_sample_counts_deterministic_and_exact_cases():
    psi = np.array([1.0, 0.0])
    counts = cc.sample_counts(psi, 100, seed=1)
    assert counts.counts == {"0": 100}
    a = cc.sample_counts(np.ones(4) / 2, 1000, seed=42)
    b = cc.sample_counts(np.ones(4) / 2, 1000, seed=42)
    assert a.counts == b.counts
    c2 = cc.sample_counts(np.ones(4) / 2, 1000, seed=43)
    assert a.counts != c2.counts  # overwhelmingly likely


def test_sample_counts_frequencies():
    psi = np.array([1.0, 1.0]) / np.sqrt(2)
    counts = cc.sample_counts(psi, 10 ** 6, seed=7)
    assert abs(counts.counts["0"] / 10 ** 6 - 0.5) < 0.005
    counts = cc.sample_counts(np.array([1.0, 0.0]), 10 ** 6, seed=9, readout_flip=0.1)
    assert abs(counts.counts["1"] / 10 ** 6 - 0.1) < 0.005


def test_exact_counts():
    psi = np.array([1.0, 0.0, 1.0, 0.0]) / np.sqrt(2)
    ec = cc.exact_counts(psi)
    assert ec.shots == 0
    assert abs(ec.counts["00"] - 0.5) < 1e-12 and abs(ec.counts["10"] - 0.5) < 1e-12


def test_circuit_inverse():
    rng = np.random.default_rng(17)
    c = random_circuit(rng, 3, 14)
    u = cc.unitary_of(c)
    v = cc.unitary_of(c.inverse())
    assert np.abs(v @ u - np.eye(8)).max() < 1e-10


def test_circuit_remap_and_json_roundtrip():
    c = cc.Circuit(2, [("u3", (0.1, 0.2, 0.3), (0,)), ("cnot", (), (0, 1))])
    r = c.remapped([2, 3], n_qubits=4)
    assert r.gates[1].qubits == (2, 3)
    back = cc.circuit_from_json(cc.circuit_to_json(c))
    assert np.abs(cc.unitary_of(back) - cc.unitary_of(c)).max() == 0


def test_resource_error():
    with pytest.raises(cc.ResourceError):
        cc.unitary_of(cc.Circuit(7))
