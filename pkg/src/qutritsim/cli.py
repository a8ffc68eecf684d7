"""Experiment driver: apply channels to the basis inputs, build Choi
matrices, sweep pairwise fidelities, and run the invariant suite.

All outputs are JSON or CSV, deterministic given (config, seed).  Exit
codes: 0 success, 1 verification failure, 2 configuration error, 3 routing
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import channels as ch
from . import choi as cj
from . import circuits as cc
from . import coupling as cp
from . import decompositions as dc
from . import encoding as enc
from . import linalg as la
from . import tomography as tg
from . import verify as vf

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_ROUTING = 3


class ConfigError(ValueError):
    pass


_ANALYTIC = {"ls": ch.ls_apply, "wh": ch.wh_apply, "id": lambda rho: rho.copy()}


def _channel_circuit(name, layout):
    if name == "ls":
        return dc.ls_channel_circuit(layout=layout)
    if name == "wh":
        return dc.wh_channel_circuit(layout=layout)
    if name == "id":
        c = cc.Circuit(4)
        return cp.route_circuit(c, layout) if layout is not None else c
    raise ConfigError(f"unknown channel {name!r}")


def _load_noise(spec) -> cc.NoiseConfig:
    if spec is None or spec == "zero":
        return cc.NoiseConfig.zero()
    try:
        with open(spec) as f:
            obj = json.load(f)
        return cc.NoiseConfig(**obj)
    except (OSError, TypeError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad noise spec {spec!r}: {exc}") from exc


def _load_coupling(spec):
    if spec is None:
        return None
    try:
        return cp.load_map(spec)
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad coupling spec {spec!r}: {exc}") from exc


def _merge_config(args) -> dict:
    cfg = {
        "channel": "ls", "method": "analytic", "choi_method": "analytic",
        "shots": 8192, "seed": 0, "noise": "zero", "coupling": None,
        "out": ".", "grid": 101, "choi_file": None,
    }
    if args.config:
        try:
            with open(args.config) as f:
                cfg.update(json.load(f))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"bad config file: {exc}") from exc
    for key in ("channel", "method", "choi_method", "shots", "seed", "noise",
                "coupling", "out", "grid", "choi_file"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if cfg["channel"] not in ("ls", "wh", "id"):
        raise ConfigError(f"unknown channel {cfg['channel']!r}")
    if cfg["method"] not in ("analytic", "circuit"):
        raise ConfigError(f"unknown method {cfg['method']!r}")
    if cfg["choi_method"] not in ("analytic", "linear", "direct"):
        raise ConfigError(f"unknown choi method {cfg['choi_method']!r}")
    if int(cfg["shots"]) < 0:
        raise ConfigError("shots must be >= 0")
    return cfg


def _write_json(path, obj):
    with open(path, "w") as f:
        json.dump(obj, f, sort_keys=True, indent=1)


def cmd_apply(cfg) -> str:
    """Write Phi(rho_i) for the nine basis inputs, with leakage values."""
    name = cfg["channel"]
    noise = _load_noise(cfg["noise"])
    layout = _load_coupling(cfg["coupling"])
    shots = int(cfg["shots"])
    seed = int(cfg["seed"])
    outputs = []
    if cfg["method"] == "analytic":
        for i in range(1, 10):
            out = _ANALYTIC[name](dc.basis_density(i))
            outputs.append({"input": i, "matrix": la.matrix_to_json(out), "leakage": 0.0})
    else:
        circuit = _channel_circuit(name, layout)
        n = circuit.n_qubits
        for i in range(1, 10):
            full = cc.Circuit(n)
            full.extend(dc.prep_basis_circuit(i).remapped([2, 3], n).gates)
            full.extend(circuit.gates)
            if shots == 0:
                rho0 = np.zeros((2 ** n, 2 ** n), dtype=complex)
                rho0[0, 0] = 1.0
                rho_full = cc.simulate_density(full, rho0, noise)
                red = la.partial_trace(rho_full, [2] * n, [2, 3])
                rho3, leak = enc.project_qutrit(red)
            else:
                rec = tg.collect(full, shots, seed + 100 * i, noise,
                                 measure_qubits=(2, 3))
                rho3, leak = tg.reconstruct_qutrit(rec)
            outputs.append({"input": i, "matrix": la.matrix_to_json(rho3),
                            "leakage": leak})
    os.makedirs(cfg["out"], exist_ok=True)
    path = os.path.join(cfg["out"], f"apply_{name}_{cfg['method']}.json")
    _write_json(path, {"channel": name, "method": cfg["method"],
                       "shots": shots, "seed": seed, "outputs": outputs})
    return path


def cmd_choi(cfg) -> str:
    """Write the Choi matrix, its fidelity against the analytic one, and its
    eigenvalues."""
    name = cfg["channel"]
    noise = _load_noise(cfg["noise"])
    layout = _load_coupling(cfg["coupling"])
    shots = int(cfg["shots"])
    seed = int(cfg["seed"])
    method = cfg["choi_method"]
    analytic = cj.analytic_choi(ch.ChannelRep.analytic(name))
    if method == "analytic":
        omega = analytic
    elif method == "linear":
        circuit = _channel_circuit(name, layout)
        n = circuit.n_qubits
        outs = []
        for i in range(1, 10):
            full = cc.Circuit(n)
            full.extend(dc.prep_basis_circuit(i).remapped([2, 3], n).gates)
            full.extend(circuit.gates)
            if shots == 0:
                rho0 = np.zeros((2 ** n, 2 ** n), dtype=complex)
                rho0[0, 0] = 1.0
                red = la.partial_trace(cc.simulate_density(full, rho0, noise),
                                       [2] * n, [2, 3])
                rho3, _ = enc.project_qutrit(red)
            else:
                rec = tg.collect(full, shots, seed + 100 * i, noise,
                                 measure_qubits=(2, 3))
                rho3, _ = tg.reconstruct_qutrit(rec)
            outs.append(rho3)
        omega = la.project_to_density(cj.choi_linear(outs))
    else:  # direct
        circuit = _channel_circuit(name, None)
        omega = cj.choi_direct(circuit, shots, seed, noise, layout)
    w, _ = la.hermitian_eig(omega)
    obj = cj.choi_to_json(omega)
    obj["channel"] = name
    obj["method"] = method
    obj["fidelity_vs_analytic"] = cj.choi_fidelity(analytic, omega)
    obj["eigenvalues"] = [float(x) for x in w]
    os.makedirs(cfg["out"], exist_ok=True)
    path = os.path.join(cfg["out"], f"choi_{name}_{method}.json")
    _write_json(path, obj)
    return path


def cmd_sweep(cfg) -> str:
    """36-row CSV over unordered distinct basis-state pairs, plus the overall
    Choi fidelity as a summary row."""
    name = cfg["channel"]
    if not cfg.get("choi_file"):
        raise ConfigError("sweep needs --choi-file (output of the choi command)")
    try:
        with open(cfg["choi_file"]) as f:
            omega = cj.choi_from_json(json.load(f))
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(f"bad choi file: {exc}") from exc
    reference = _ANALYTIC[name]
    grid = int(cfg["grid"])
    analytic = cj.analytic_choi(ch.ChannelRep.analytic(name))
    os.makedirs(cfg["out"], exist_ok=True)
    path = os.path.join(cfg["out"], f"sweep_{name}.csv")
    with open(path, "w", newline="") as f:
        wr = csv.writer(f)
        wr.writerow(["pair_a", "pair_b", "min", "max", "mean"])
        for a in range(1, 10):
            for b in range(a + 1, 10):
                lo, hi, mean = tg.channel_fidelity_sweep(omega, reference, a, b, grid)
                wr.writerow([a, b, f"{lo:.10f}", f"{hi:.10f}", f"{mean:.10f}"])
        overall = cj.choi_fidelity(analytic, omega)
        wr.writerow(["choi", "choi", f"{overall:.10f}", f"{overall:.10f}",
                     f"{overall:.10f}"])
    return path


def cmd_verify(cfg) -> int:
    coupling = _load_coupling(cfg["coupling"])
    results = vf.run_all(coupling)
    failed = 0
    for name, ok, detail in results:
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        if not ok:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} invariants passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qutritsim",
                                description="Qutrit channel experiments")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--channel", choices=["ls", "wh", "id"])
        sp.add_argument("--method", choices=["analytic", "circuit"])
        sp.add_argument("--choi-method", dest="choi_method",
                        choices=["analytic", "linear", "direct"])
        sp.add_argument("--shots", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--noise", help="noise JSON file or 'zero'")
        sp.add_argument("--coupling", help="preset name or coupling JSON file")
        sp.add_argument("--config", help="consolidated config JSON")
        sp.add_argument("--out", help="output directory")

    sp = sub.add_parser("apply", help="channel outputs on the nine basis inputs")
    common(sp)
    sp = sub.add_parser("choi", help="Choi matrix construction")
    common(sp)
    sp = sub.add_parser("sweep", help="pairwise fidelity sweep from a Choi file")
    common(sp)
    sp.add_argument("--choi-file", dest="choi_file", help="Choi JSON input")
    sp.add_argument("--grid", type=int, help="lambda grid size (default 101)")
    sp = sub.add_parser("verify", help="run the invariant suite")
    common(sp)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command == "apply":
            path = cmd_apply(cfg)
            print(path)
        elif args.command == "choi":
            path = cmd_choi(cfg)
            print(path)
        elif args.command == "sweep":
            path = cmd_sweep(cfg)
            print(path)
        elif args.command == "verify":
            return cmd_verify(cfg)
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except cp.RoutingError as exc:
        print(f"routing error: {exc}", file=sys.stderr)
        return EXIT_ROUTING


if __name__ == "__main__":
    sys.exit(main())
