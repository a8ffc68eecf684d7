import numpy as np
import pytest

from qutritsim import channels as ch
from qutritsim import circuits as cc
from qutritsim import decompositions as dc
from qutritsim import encoding as enc
from qutritsim import linalg as la

from test_channels import basis_states, rand_density


def test_embed_state():
    e0 = np.array([1.0, 0, 0])
    assert np.array_equal(enc.embed_state(e0), [1, 0, 0, 0])
    v = np.ones(3) / np.sqrt(3)
    out = enc.embed_state(v)
    assert np.abs(out - np.array([1, 1, 1, 0]) / np.sqrt(3)).max() < 1e-12
    e2 = np.array([0.0, 0, 1])
    assert np.argmax(np.abs(enc.embed_state(e2))) == 2
    with pytest.raises(ValueError):
        enc.embed_state(np.array([1.0, 1.0, 0.0]))


def test_embed_density():
    out = enc.embed_density(np.eye(3) / 3)
    assert np.abs(out - np.diag([1 / 3, 1 / 3, 1 / 3, 0])).max() < 1e-15
    rho4 = dc.basis_density(4)
    emb = enc.embed_density(rho4)
    assert abs(emb[0, 0] - 0.5) < 1e-12 and abs(emb[0, 1] - 0.5) < 1e-12
    assert np.abs(emb[3, :]).max() == 0 and np.abs(emb[:, 3]).max() == 0
    with pytest.raises(ValueError):
        enc.embed_density(np.diag([1.0, 1.0, 1.0]))


def test_embed_project_roundtrip():
    rng = np.random.default_rng(1)
    for _ in range(20):
        rho = rand_density(rng)
        back, leak = enc.project_qutrit(enc.embed_density(rho))
        assert np.abs(back - rho).max() < 1e-14
        assert leak == 0.0


def test_project_qutrit_mixture():
    rng = np.random.default_rng(2)
    rho = rand_density(rng)
    p11 = np.zeros((4, 4), dtype=complex)
    p11[3, 3] = 1.0
    mixed = 0.9 * enc.embed_density(rho) + 0.1 * p11
    out, leak = enc.project_qutrit(mixed)
    assert abs(leak - 0.1) < 1e-12
    assert np.abs(out - rho).max() < 1e-12


def test_project_qutrit_discards_coherences():
    # off-diagonal terms to |11> vanish entirely after projection
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 0.5
    rho[3, 3] = 0.5
    rho[0, 3] = rho[3, 0] = 0.5
    out, leak = enc.project_qutrit(rho)
    assert abs(leak - 0.5) < 1e-12
    assert np.abs(out - np.diag([1.0, 0, 0])).max() < 1e-12


def test_project_qutrit_degenerate():
    p11 = np.zeros((4, 4), dtype=complex)
    p11[3, 3] = 1.0
    with pytest.raises(enc.DegenerateProjectionError):
        enc.project_qutrit(p11)


def test_project_two_qutrits():
    rng = np.random.default_rng(3)
    a, b = rand_density(rng), rand_density(rng)
    rho16 = np.kron(enc.embed_density(a), enc.embed_density(b))
    out, leak = enc.project_two_qutrits(rho16)
    assert abs(leak) < 1e-12
    assert np.abs(out - np.kron(a, b)).max() < 1e-12


def test_project_qutrit_output_valid_density():
    rng = np.random.default_rng(4)
    for _ in range(20):
        r = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        rho = r @ r.conj().T
        rho /= np.trace(rho)
        out, leak = enc.project_qutrit(rho)
        assert abs(np.trace(out) - 1) < 1e-12
        assert la.is_psd(out, 1e-9)
        assert 0.0 <= leak <= 1.0


def test_embed_two_qutrit_unitary_structure():
    u9 = ch.ls_dilation_matrix()
    u16 = enc.embed_two_qutrit_unitary(u9)
    assert la.is_unitary(u16, 1e-12)
    # embedded block in place
    idx = [4 * a + b for a in range(3) for b in range(3)]
    assert np.abs(u16[np.ix_(idx, idx)] - u9).max() == 0
    # trivial action elsewhere
    for j in range(16):
        if j not in idx:
            col = np.zeros(16); col[j] = 1
            assert np.abs(u16[:, j] - col).max() == 0


def test_embedded_dilation_reproduces_channel():
    # run the lifted 9x9 dilation as a 16x16 conjugation and trace the
    # environment pair: must match the analytic spin-1 channel
    u16 = enc.embed_two_qutrit_unitary(ch.ls_dilation_matrix())
    env = np.zeros((4, 4), dtype=complex)
    env[0, 0] = 1.0
    rng = np.random.default_rng(5)
    for rho in basis_states() + [rand_density(rng) for _ in range(10)]:
        full = np.kron(enc.embed_density(rho), env)  # system pair first here
        out16 = u16 @ full @ u16.conj().T
        red = la.partial_trace(out16, [4, 4], [0])
        out3, leak = enc.project_qutrit(red)
        assert np.abs(out3 - ch.ls_apply(rho)).max() < 1e-10
        assert abs(leak) < 1e-12


def test_induced_channel_identity_circuit():
    rng = np.random.default_rng(6)
    chan = enc.induced_channel(cc.Circuit(4))
    for _ in range(5):
        rho = rand_density(rng)
        out, leak = chan(rho)
        assert np.abs(out - rho).max() < 1e-12
        assert leak == 0.0


def test_induced_channel_role_declaration():
    with pytest.raises(ValueError):
        enc.induced_channel(cc.Circuit(4), sys_qubits=(0, 1), env_qubits=(1, 2))
    # swapped roles work: put the system on wires (0, 1) instead
    c = dc.wh_channel_circuit()
    # move every gate: wires (0,1,2,3) -> (2,3,0,1), so the system pair sits first
    swapped = c.remapped([2, 3, 0, 1])
    chan = enc.induced_channel(swapped, sys_qubits=(0, 1), env_qubits=(2, 3))
    rho = dc.basis_density(1)
    out, leak = chan(rho)
    assert np.abs(out - ch.wh_apply(rho)).max() < 1e-9
    assert abs(leak) < 1e-10


def test_place_pairs_interleaved_wires():
    # interleaved placements go through the tensor-reordering path
    rng = np.random.default_rng(9)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    got = enc._place_pairs(a, b, (0, 2), (1, 3))
    # oracle: build from single-qubit factors of a 16x16 via explicit swap
    # of axes (a0,a1,b0,b1) -> wires (0,2,1,3)
    t = np.kron(a, b).reshape((2,) * 8)
    perm = [0, 2, 1, 3]
    inv = np.argsort(perm)
    want = t.transpose(list(inv) + [4 + p for p in inv]).reshape(16, 16)
    assert np.abs(got - want).max() == 0
    # sanity: reduced blocks recover the inputs for density-like factors
    rho_a = a @ a.conj().T
    rho_a /= np.trace(rho_a)
    rho_b = b @ b.conj().T
    rho_b /= np.trace(rho_b)
    full = enc._place_pairs(rho_a, rho_b, (1, 3), (0, 2))
    red_a = la.partial_trace(full, [2, 2, 2, 2], [1, 3])
    red_b = la.partial_trace(full, [2, 2, 2, 2], [0, 2])
    assert np.abs(red_a - rho_a).max() < 1e-12
    assert np.abs(red_b - rho_b).max() < 1e-12


def test_noiseless_paper_circuits_zero_leakage():
    for build in (dc.wh_channel_circuit, dc.ls_channel_circuit):
        chan = enc.induced_channel(build())
        for i in range(1, 10):
            _, leak = chan(dc.basis_density(i))
            assert abs(leak) < 1e-10
