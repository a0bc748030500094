"""Command-line interface.

Five subcommands cover the library surface: `bound` (projection and
entropy limits), `boost` (the three-spin transformation), `cool`
(multi-round schedules), `compile` (pulse-sequence synthesis with
self-verification), and `spectrum` (readout prediction as CSV).

All numeric output is printed with 12 significant digits; state and plan
dumps are JSON at full float precision so a dumped artifact re-ingested
by a later command reproduces its reports bit for bit. Exit codes: 0
success, 2 bad input, 3 infeasible cooling target, 4 capacity guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .bounds import entropy_bound_kmax, max_projection
from .compiler import CircuitIR, compile_circuit, parse_circuit
from .cooling import boost_exact, plan_rounds, simulate_plan
from .errors import CapacityError, InfeasibleError
from .gates import PERMUTATION_KINDS, boost_circuit, circuit_permutation
from .operators import iz_operator
from .propagator import permutation_unitary, phase_pattern_equal, simulate_sequence
from .pulses import DurationModel
from .spectra import readout
from .states import (
    MAX_DENSE_SPINS,
    PopulationState,
    apply_permutation,
    capacity_limit,
    polarization,
    thermal_state,
)
from .system import SpinSystem, example_system


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


@dataclass
class RunConfig:
    """Validated inputs of one invocation."""

    subcommand: str
    system_path: str | None = None
    circuit_path: str | None = None
    state_path: str | None = None
    out_path: str | None = None
    spin: str | None = None
    mode: str = "approx"
    recycle: bool = False
    n: int | None = None
    eps0: float | None = None
    target_eps: float | None = None
    boosted: bool = False
    z_mode: str = "virtual"
    elide: bool = True
    bloch_siegert_deg: float = 0.0
    pulse90_s: float = 2e-3

    def load_system(self) -> SpinSystem:
        if self.system_path is None:
            return example_system()
        return SpinSystem.load(self.system_path)

    def resolve_spin(self, system: SpinSystem) -> int:
        if self.spin is None:
            return 0
        return system.spin_index(self.spin)


def _write_or_print(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(out_path).write_text(text)
        print(f"wrote {out_path}")


def cmd_bound(cfg: RunConfig) -> int:
    system = cfg.load_system()
    spin = cfg.resolve_spin(system)
    state = thermal_state(system.n)
    result = max_projection(state, iz_operator(system.n, spin))
    eps0 = system.epsilon0 if cfg.eps0 is None else cfg.eps0
    n_for_kmax = system.n if cfg.n is None else cfg.n
    kmax = entropy_bound_kmax(n_for_kmax, eps0)
    print(f"spin: {system.labels[spin]}")
    print(f"a_initial: {_fmt(result.a_initial)}")
    print(f"a_max: {_fmt(result.a_max)}")
    print(f"enhancement: {_fmt(result.enhancement)}")
    print(f"k_max(n={n_for_kmax}, eps0={_fmt(eps0)}): {_fmt(kmax)}")
    return 0


def cmd_boost(cfg: RunConfig) -> int:
    system = cfg.load_system()
    if system.n != 3:
        raise ValueError(f"the boost acts on exactly 3 spins, system has {system.n}")
    eps0 = system.epsilon0 if cfg.eps0 is None else cfg.eps0
    report = boost_exact(eps0)
    pre = thermal_state(3)
    post = apply_permutation(pre, circuit_permutation(boost_circuit(), 3))
    print("pre diag (deviation units): " + " ".join(_fmt(p) for p in pre.pops))
    print("post diag (deviation units): " + " ".join(_fmt(p) for p in post.pops))
    for state, name in ((pre, "pre"), (post, "post")):
        values = " ".join(
            f"{system.labels[j]}={_fmt(polarization(state, j))}" for j in range(3)
        )
        print(f"{name} relative polarization (thermal = 1): {values}")
    print(f"exact marginals at eps0={_fmt(eps0)}:")
    print(f"  eps_a: {_fmt(report.eps_a)}")
    print(f"  eps_b: {_fmt(report.eps_b)}")
    print(f"  eps_c: {_fmt(report.eps_c)}")
    print(f"  enhancement: {_fmt(report.enhancement)}")
    if cfg.out_path is not None:
        Path(cfg.out_path).write_text(json.dumps(post.to_dict()))
        print(f"wrote {cfg.out_path}")
    return 0


def cmd_cool(cfg: RunConfig) -> int:
    plan = plan_rounds(
        cfg.n, cfg.eps0, cfg.target_eps, recycle=cfg.recycle
    )
    for i, rnd in enumerate(plan.rounds, start=1):
        pools = " ".join(sorted({_fmt(v) for v in rnd.pool_eps}, reverse=True))
        print(f"round {i}: {len(rnd.triples)} boosts, input pools: {pools}")
    print(f"boost gates: {plan.boost_gate_count}")
    print(f"refocus gates: {plan.refocus_gate_count}")
    print(f"total gates: {plan.total_gate_count}")
    print(f"predicted best polarization: {_fmt(plan.predicted_best)}")
    result = simulate_plan(plan, mode=cfg.mode)
    spin, value = result.best()
    print(f"simulated best ({cfg.mode}): spin {plan.labels[spin]} at {_fmt(value)}")
    if result.discrepancy is not None:
        print(f"exact vs approx max difference: {_fmt(result.discrepancy)}")
    if cfg.out_path is not None:
        Path(cfg.out_path).write_text(json.dumps(plan.to_dict()))
        print(f"wrote {cfg.out_path}")
    return 0


def cmd_compile(cfg: RunConfig) -> int:
    system = cfg.load_system()
    if cfg.circuit_path is None:
        if system.n < 3:
            raise ValueError("the default boost circuit needs at least 3 spins")
        circuit = CircuitIR(n=system.n, gates=boost_circuit(0, 1, 2))
    else:
        circuit = parse_circuit(Path(cfg.circuit_path).read_text(), system)
    model = DurationModel(pulse90_s=cfg.pulse90_s)
    seq = compile_circuit(
        circuit,
        system,
        model,
        z_mode=cfg.z_mode,
        elide=cfg.elide,
        bloch_siegert_deg=cfg.bloch_siegert_deg,
    )
    print(f"events: {len(seq.events)}")
    print(f"pulses: {seq.pulse_count()}")
    print(f"total duration (s): {_fmt(seq.total_duration_s)}")
    print(f"coupling time (s): {_fmt(seq.coupling_duration_s())}")
    permutation_circuit = all(g.kind in PERMUTATION_KINDS for g in circuit.gates)
    if not permutation_circuit:
        print("verification: SKIPPED (circuit contains rotation gates)")
    elif system.n > capacity_limit(MAX_DENSE_SPINS):
        print("verification: SKIPPED (system too large to simulate densely)")
    else:
        target = permutation_unitary(circuit_permutation(circuit.gates, system.n))
        verdict = phase_pattern_equal(simulate_sequence(seq), target)
        print(f"verification: {'PASS' if verdict else 'FAIL'}")
    if cfg.out_path is not None:
        Path(cfg.out_path).write_text(seq.to_json())
        print(f"wrote {cfg.out_path}")
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    system = cfg.load_system()
    spin = cfg.resolve_spin(system)
    if cfg.state_path is not None:
        state = PopulationState.from_dict(json.loads(Path(cfg.state_path).read_text()))
    elif cfg.boosted:
        if system.n != 3:
            raise ValueError("--boosted applies the 3-spin boost; use a 3-spin system")
        state = apply_permutation(thermal_state(3), circuit_permutation(boost_circuit(), 3))
    else:
        state = thermal_state(system.n)
    spectrum = readout(state, system, spin)
    _write_or_print(spectrum.to_csv(), cfg.out_path)
    return 0


_HANDLERS = {
    "bound": cmd_bound,
    "boost": cmd_boost,
    "cool": cmd_cool,
    "compile": cmd_compile,
    "spectrum": cmd_spectrum,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coolspin",
        description="Polarization boosts, cooling schedules, pulse compilation, spectra.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_system(p):
        p.add_argument("--system", help="spin-system JSON file (default: bundled molecule)")

    p = sub.add_parser("bound", help="projection and entropy limits")
    add_system(p)
    p.add_argument("--spin", help="target spin label (default: first)")
    p.add_argument("--eps0", type=float, help="initial polarization override")
    p.add_argument("--n", type=float, help="ensemble size for the entropy bound")

    p = sub.add_parser("boost", help="one three-spin polarization boost")
    add_system(p)
    p.add_argument("--eps0", type=float, help="initial polarization override")
    p.add_argument("--out", help="write the post-boost state as JSON")

    p = sub.add_parser("cool", help="plan and simulate multi-round cooling")
    p.add_argument("--n", type=int, required=True, help="ensemble size")
    p.add_argument("--eps0", type=float, required=True, help="initial polarization")
    p.add_argument("--target-eps", type=float, required=True, help="goal polarization")
    p.add_argument("--recycle", action="store_true", help="reuse the second output spin")
    p.add_argument("--mode", choices=["exact", "approx", "both"], default="approx")
    p.add_argument("--out", help="write the plan as JSON")

    p = sub.add_parser("compile", help="lower a circuit to a pulse sequence")
    add_system(p)
    p.add_argument("--circuit", help="gate list file (default: the boost circuit)")
    p.add_argument("--z-mode", choices=["virtual", "pulsed"], default="virtual")
    p.add_argument("--no-elide", action="store_true", help="keep frame shifts in place")
    p.add_argument("--bloch-siegert-deg", type=float, default=0.0)
    p.add_argument("--pulse90-s", type=float, default=2e-3)
    p.add_argument("--out", help="write the sequence as JSON")

    p = sub.add_parser("spectrum", help="predict one spin's readout multiplet")
    add_system(p)
    p.add_argument("--spin", help="observed spin label (default: first)")
    p.add_argument("--state", help="population-state JSON (default: thermal)")
    p.add_argument("--boosted", action="store_true", help="read out the boosted state")
    p.add_argument("--out", help="write CSV here instead of stdout")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = {
        "system_path": getattr(args, "system", None),
        "circuit_path": getattr(args, "circuit", None),
        "state_path": getattr(args, "state", None),
        "out_path": getattr(args, "out", None),
        "spin": getattr(args, "spin", None),
        "mode": getattr(args, "mode", "approx"),
        "recycle": getattr(args, "recycle", False),
        "eps0": getattr(args, "eps0", None),
        "target_eps": getattr(args, "target_eps", None),
        "boosted": getattr(args, "boosted", False),
        "z_mode": getattr(args, "z_mode", "virtual"),
        "elide": not getattr(args, "no_elide", False),
        "bloch_siegert_deg": getattr(args, "bloch_siegert_deg", 0.0),
        "pulse90_s": getattr(args, "pulse90_s", 2e-3),
    }
    n = getattr(args, "n", None)
    if n is not None:
        n = int(n)
        if n < 1:
            raise ValueError(f"n must be a positive integer, got {n}")
    return RunConfig(subcommand=args.subcommand, n=n, **fields)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _HANDLERS[cfg.subcommand](cfg)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return 4
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
