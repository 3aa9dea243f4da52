"""
Command-line front end.

Every subcommand prints a report (text by default, ``--json`` for the
structured document) and exits 0 when all checks pass, 1 when a check
fails and 2 on invalid input.  Floats are printed with 12 significant
digits so output is byte-stable for fixed inputs.  The default seed comes
from the ``BLINDFANOUT_SEED`` environment variable (0 if unset).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import circuits, fanout, hamiltonian, pauli
from .errors import InvalidInputError, NotFoundError
from .evolution import ProtocolFunction, evolve, norm_drift
from .linalg import unitarity_residual
from .register import BasisLabel, basis_state, random_unitary

SEED_ENV = "BLINDFANOUT_SEED"
DIGITS = 12


@dataclass
class Report:
    command: str
    parameters: dict
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def check(self, name: str, value: float, tolerance: float) -> None:
        self.checks.append({"name": name, "value": value, "tolerance": tolerance, "pass": bool(value < tolerance)})

    def require(self, name: str, ok: bool) -> None:
        self.checks.append({"name": name, "value": bool(ok), "tolerance": None, "pass": bool(ok)})

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks)

    @property
    def tolerance(self):
        tols = [c["tolerance"] for c in self.checks if c["tolerance"] is not None]
        return max(tols) if tols else None

    def to_data(self) -> dict:
        return _clean({
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "checks": self.checks,
            "pass": self.passed,
            "tolerance": self.tolerance,
        })


def _num(x: float):
    if math.isnan(x) or math.isinf(x):
        return str(x)
    v = float(f"{x:.{DIGITS}g}")
    return 0.0 if v == 0 else v


def _clean(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return _num(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return [_num(v.real), _num(v.imag)]
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    return str(v)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.{DIGITS}g}"
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        re, im = v
        return f"{re:.{DIGITS}g}{im:+.{DIGITS}g}j"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(data: dict) -> str:
    lines = [f"command: {data['command']}", "parameters:"]
    lines += [f"  {k} = {_fmt(v)}" for k, v in data["parameters"].items()]
    lines.append("results:")
    for k, v in data["results"].items():
        if isinstance(v, list) and v and all(isinstance(r, (list, dict)) and not _is_pair(r) for r in v):
            lines.append(f"  {k}:")
            lines += [f"    {_fmt(r)}" for r in v]
        else:
            lines.append(f"  {k} = {_fmt(v)}")
    lines.append("checks:")
    for c in data["checks"]:
        bound = "" if c["tolerance"] is None else f" < {_fmt(c['tolerance'])}"
        lines.append(f"  [{'PASS' if c['pass'] else 'FAIL'}] {c['name']} = {_fmt(c['value'])}{bound}")
    lines.append(f"pass: {str(data['pass']).lower()}")
    return "\n".join(lines)


def _is_pair(r) -> bool:
    return isinstance(r, list) and len(r) == 2 and all(isinstance(x, float) for x in r)


# Subcommands.

def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def cmd_unitary(args) -> Report:
    a, b = _angle(args, args.alpha), _angle(args, args.beta)
    u = fanout.build_fanout_unitary(fanout.FanoutPhases(a, b))
    r = Report("unitary", {"alpha": a, "beta": b})
    r.results["U"] = u
    r.check("unitarity_residual", unitarity_residual(u), 1e-15)
    return r


def _params(args) -> hamiltonian.HamiltonianParams:
    return hamiltonian.HamiltonianParams(_angle(args, args.gamma), args.n, args.dt, args.hbar)


def cmd_hamiltonian(args) -> Report:
    p = _params(args)
    h = hamiltonian.synthesize_hamiltonian(p)
    agree = float(np.max(np.abs(hamiltonian.constructive_hamiltonian(p) - h)))
    r = Report("hamiltonian", {"gamma": p.gamma, "n": p.n_gap, "dt": p.dt, "hbar": p.hbar})
    r.results.update(
        alpha=p.alpha, beta=p.beta, H=h, H_100_011=complex(h[3, 4]), abs_H_100_011=abs(h[3, 4]),
        spectrum=hamiltonian.energies(p), gap_energy=p.gap_energy,
    )
    r.check("constructive_vs_closed_form", agree, 1e-12 * max(1.0, abs(p.gap_energy)))
    r.check("exponential_residual", hamiltonian.verify_exponential(p), 1e-10)
    return r


def cmd_pauli(args) -> Report:
    p = _params(args)
    rep = pauli.verify_eq7(p)
    table = rep.coefficient_table.to_data(only_nonzero=not args.all)
    r = Report("pauli", {"gamma": p.gamma, "n": p.n_gap, "dt": p.dt, "hbar": p.hbar, "all": args.all})
    r.results.update(convention=rep.convention, rows=len(table), coefficients=table)
    r.check("max_deviation_from_closed_form", rep.max_deviation, 1e-12)
    r.check("max_extraneous", rep.max_extraneous, 1e-12)
    return r


def _circuit_results(r: Report, c: circuits.Circuit) -> None:
    perm = circuits.circuit_permutation(c)
    r.results.update(
        circuit=[str(g) for g in c], length=len(c), ccnot_count=c.count("CCNOT"),
        document=circuits.circuit_to_data(c),
    )
    r.require("exact_match_U00", perm == circuits.swap_target())


def cmd_circuit(args) -> Report:
    r = Report("circuit", {"alphabet": args.alphabet, "max_gates": args.max_gates})
    try:
        res = circuits.search_circuit(circuits.swap_target(), args.alphabet, args.max_gates)
    except NotFoundError as exc:
        r.results["error"] = str(exc)
        r.require("found", False)
        return r
    r.results["explored_permutations"] = res.explored
    _circuit_results(r, res.circuit)
    r.require("odd_ccnot_count", res.circuit.count("CCNOT") % 2 == 1)
    return r


def cmd_verify_circuit(args) -> Report:
    path = Path(args.file)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    c = circuits.loads_circuit(text)
    r = Report("verify-circuit", {"file": str(args.file)})
    _circuit_results(r, c)
    return r


def cmd_evolve(args) -> Report:
    p = _params(args)
    f = ProtocolFunction(args.protocol, amplitude=args.amplitude, k=args.k, duty=args.duty)
    psi0 = basis_state(BasisLabel.parse(args.input))
    rep = evolve(p, f, psi0, args.steps)
    r = Report("evolve", {"gamma": p.gamma, "n": p.n_gap, "dt": p.dt, "hbar": p.hbar,
                          "protocol": f.describe(), "steps": args.steps, "input": args.input})
    r.results.update(psi_final=rep.psi_final, norm_drift=norm_drift(rep))
    r.check("residual_vs_U", rep.residual_vs_u, args.tol)
    return r


def cmd_fanout_check(args) -> Report:
    a, b = _angle(args, args.alpha), _angle(args, args.beta)
    if args.general:
        u = fanout.build_general_fanout(random_unitary(4, args.seed), random_unitary(4, args.seed + 1))
    else:
        u = fanout.build_fanout_unitary(fanout.FanoutPhases(a, b))
    sub = fanout.fanout_subspace_check(u, args.trials, args.seed)
    dup = [fanout.duplication_check(u, bit, args.trials, args.seed) for bit in (1, 0)]
    r = Report("fanout-check", {"alpha": a, "beta": b, "general": args.general,
                                "trials": args.trials, "seed": args.seed})
    r.results.update(max_leakage=sub.max_leakage, duplication_violations=[d.violations for d in dup])
    r.check("max_leakage", sub.max_leakage, 1e-10)
    for d in dup:
        r.require(f"duplication_bit_{d.input_bit}", d.passed)
    return r


def cmd_noclone(args) -> Report:
    norm = math.hypot(args.a, args.b)
    if norm == 0:
        raise InvalidInputError("a and b cannot both be zero")
    a, b = args.a / norm, args.b / norm
    al, be = _angle(args, args.alpha), _angle(args, args.beta)
    u = fanout.build_fanout_unitary(fanout.FanoutPhases(al, be))
    best = fanout.max_clone_fidelity(u, a, b, args.trials, args.seed)
    r = Report("noclone", {"a": a, "b": b, "alpha": al, "beta": be, "trials": args.trials, "seed": args.seed})
    r.results["max_per_qubit_fidelity"] = best
    r.check("max_per_qubit_fidelity", best, 1 - 1e-6)
    return r


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured report")
    common.add_argument("--degrees", action="store_true", help="angle flags are in degrees")

    ham = argparse.ArgumentParser(add_help=False)
    ham.add_argument("--gamma", type=float, required=True)
    ham.add_argument("--n", type=int, required=True)
    ham.add_argument("--dt", type=_positive_float, default=1.0)
    ham.add_argument("--hbar", type=_positive_float, default=1.0)

    parser = argparse.ArgumentParser(prog="blindfanout", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("unitary", parents=[common], help="print U(alpha, beta)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.set_defaults(func=cmd_unitary)

    p = sub.add_parser("hamiltonian", parents=[common, ham], help="synthesize H and check exp(-iH dt/hbar) = U")
    p.set_defaults(func=cmd_hamiltonian)

    p = sub.add_parser("pauli", parents=[common, ham], help="Pauli expansion of H")
    p.add_argument("--all", action="store_true", help="list all 64 coefficients")
    p.set_defaults(func=cmd_pauli)

    p = sub.add_parser("circuit", parents=[common], help="shortest gate circuit for U(0,0)")
    p.add_argument("--alphabet", choices=circuits.ALPHABETS, default="not+ccnot")
    p.add_argument("--max-gates", type=_positive_int, default=9)
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("verify-circuit", parents=[common], help="check a circuit file against U(0,0)")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_verify_circuit)

    p = sub.add_parser("evolve", parents=[common, ham], help="RK4 evolution under f(t) H")
    p.add_argument("--protocol", choices=["const", "constant", "sin", "sinusoidal", "square"], default="const")
    p.add_argument("--steps", type=int, default=10_000)
    p.add_argument("--input", default="100", help="initial basis state, e.g. 100")
    p.add_argument("--amplitude", type=float, default=0.5)
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--duty", type=float, default=0.5)
    p.add_argument("--tol", type=_positive_float, default=1e-8)
    p.set_defaults(func=cmd_evolve)

    seed = _default_seed()
    p = sub.add_parser("fanout-check", parents=[common], help="subspace and duplication checks")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--general", action="store_true", help="check a seeded random member of the general family")
    p.set_defaults(func=cmd_fanout_check)

    p = sub.add_parser("noclone", parents=[common], help="per-qubit fidelity with a superposed input")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.set_defaults(func=cmd_noclone)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data = report.to_data()
    print(json.dumps(data, indent=2) if args.json else render_text(data))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
