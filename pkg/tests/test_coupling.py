import numpy as np
import pytest

from qutritsim import coupling as cp
from qutritsim import circuits as cc
from qutritsim import linalg as la

from test_circuits import random_circuit


def test_coupling_map_validation():
    with pytest.raises(ValueError):
        cp.CouplingMap(2, [(0, 0)])
    with pytest.raises(ValueError):
        cp.CouplingMap(2, [(0, 5)])
    m = cp.CouplingMap(3, [(0, 1), (1, 2)])
    assert m.has(0, 1) and not m.has(1, 0)
    assert m.neighbors(1) == {0, 2}


def test_presets():
    m5 = cp.preset_map("ibmqx4")
    assert m5.n_qubits == 5 and len(m5.edges) == 6
    m20 = cp.preset_map("tokyo")
    assert m20.n_qubits == 20
    assert all(m20.has(b, a) for a, b in m20.edges)  # bidirected
    m6 = cp.preset_map("tokyo-6q")
    assert m6.n_qubits == 6
    # the subregion stays connected
    seen = {0}
    frontier = [0]
    while frontier:
        q = frontier.pop()
        for nb in m6.neighbors(q):
            if nb not in seen:
                seen.add(nb)
                frontier.append(nb)
    assert seen == set(range(6))
    with pytest.raises(ValueError):
        cp.preset_map("nope")


def test_reverse_cnot_exact():
    frag = cp.reverse_cnot(0, 1)
    assert sum(1 for g in frag if g.name == "cnot") == 1
    assert sum(1 for g in frag if g.name == "h") == 4
    u = cc.unitary_of(cc.Circuit(2, frag))
    want = cc.unitary_of(cc.Circuit(2, [("cnot", (), (0, 1))]))
    assert np.abs(u - want).max() < 1e-12
    # truth table: |10> -> |11>
    psi = np.zeros(4); psi[2] = 1
    out = cc.simulate_state(cc.Circuit(2, frag), psi)
    want_psi = np.zeros(4); want_psi[3] = 1
    assert np.abs(out - want_psi).max() < 1e-12


def test_route_legal_passthrough():
    m = cp.preset_map("ibmqx4")
    c = cc.Circuit(5, [("cnot", (), (1, 0))])
    r = cp.route_circuit(c, m)
    assert [g.name for g in r.gates] == ["cnot"]
    assert cp.validate(r, m) == []


def test_route_direction_flip():
    m = cp.preset_map("ibmqx4")
    c = cc.Circuit(2, [("cnot", (), (0, 1))])  # only (1,0) exists
    r = cp.route_circuit(c, m)
    assert len(r.gates) == 5
    u = cc.unitary_of(r)
    want = np.kron(cc.unitary_of(c), np.eye(8))
    assert np.abs(u - want).max() < 1e-12
    assert cp.validate(r, m) == []


def test_route_relay_through_common_neighbour():
    m = cp.preset_map("ibmqx4")
    # qubits 0 and 3 are not adjacent; 2 is a common neighbour
    c = cc.Circuit(4, [("cnot", (), (0, 3))])
    r = cp.route_circuit(c, m)
    assert cp.validate(r, m) == []
    u = cc.unitary_of(r)
    want = np.kron(cc.unitary_of(c), np.eye(2))
    assert np.abs(u - want).max() < 1e-12


def test_route_no_route():
    m = cp.CouplingMap(4, [(0, 1), (2, 3)])
    with pytest.raises(cp.RoutingError):
        cp.route_circuit(cc.Circuit(4, [("cnot", (), (0, 3))]), m)


def test_route_random_circuits_preserve_unitary():
    m = cp.preset_map("ibmqx4")
    rng = np.random.default_rng(23)
    for _ in range(200):
        c = random_circuit(rng, 4, int(rng.integers(1, 21)))
        r = cp.route_circuit(c, m)
        assert cp.validate(r, m) == []
        u = cc.unitary_of(r)
        want = np.kron(cc.unitary_of(c), np.eye(2))
        assert la.equal_up_to_global_phase(u, want, 1e-9)


def test_validate_reports_violation():
    m = cp.preset_map("ibmqx4")
    c = cc.Circuit(5, [("cnot", (), (0, 1))])
    v = cp.validate(c, m)
    assert len(v) == 1 and "cnot(0, 1)" in v[0]


def test_placement():
    m = cp.preset_map("ibmqx4")
    c = cc.Circuit(2, [("cnot", (), (0, 1))])
    r = cp.route_circuit(c, m, placement={0: 3, 1: 4})
    assert cp.validate(r, m) == []
    with pytest.raises(cp.RoutingError):
        cp.route_circuit(c, m, placement={0: 1, 1: 1})


def test_map_json_roundtrip(tmp_path):
    m = cp.preset_map("ibmqx4")
    p = tmp_path / "map.json"
    p.write_text(__import__("json").dumps(m.to_json()))
    back = cp.load_map(str(p))
    assert back.edges == m.edges and back.n_qubits == m.n_qubits
