"""Command-line front end.

Exit status: 0 on success, 1 when a yes/no verdict comes out "no"
(``monomial``, ``reach``, ``analyze-linear --verify``, ``orders --same``),
2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import FDSError
from .export import dependency_dot, phase_space_dot, state_label, stochastic_dot, trajectory_csv
from .generators import EXAMPLES, election_winner, gen_example
from .gf import upoly_factor, upoly_order
from .linear import (
    as_linear,
    enumerated_cycle_structure,
    linear_phase_space,
    min_poly,
    predict_affine_cycle_structure,
    predict_cycle_structure,
    verify_transient_trees,
)
from .monomial import loop_numbers
from .phase import enumerate_phase_space, reachable
from .specfile import SpecFile, format_spec, parse_spec, parse_tuple
from .stochastic import PFDS, stationary_distribution, stochastic_phase_space, simulate, transition_matrix
from .system import DEFAULT_BUDGET, System, decode, is_parallel
from .updorder import same_sds, update_graph_components


class CLIError(Exception):
    pass


def _load(args) -> SpecFile:
    if not args.spec:
        raise CLIError("--spec FILE is required")
    with open(args.spec, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def _mode(args, spec: SpecFile):
    if args.order:
        return parse_tuple(args.order)
    if args.mode == "parallel":
        return "parallel"
    if args.mode == "word":
        if is_parallel(spec.mode):
            raise CLIError("--mode word needs --order or a word mode in the model file")
        return spec.mode
    return spec.mode


def _label(c, p) -> str:
    return state_label(c, p)


def _config(text: str | None, spec: SpecFile, what: str):
    if text:
        return parse_tuple(text)
    if spec.init is None:
        raise CLIError(f"{what} configuration missing (give it on the command line or as 'init' in the model file)")
    return spec.init


def _stochastic(spec: SpecFile, mode):
    model = spec.build()
    if isinstance(model, System):
        return PFDS.from_system(model, mode)
    return model


# ---------------------------------------------------------------------------
# subcommands


def cmd_phase(args, out) -> int:
    spec = _load(args)
    if args.dependency:
        if spec.kind == "pfds":
            raise CLIError("dependency graph needs a deterministic spec")
        out.write(dependency_dot(spec.system(), spec.names))
        return 0
    if spec.kind != "system":
        sps = stochastic_phase_space(spec.build(), args.budget)
        if args.format == "dot":
            out.write(stochastic_dot(sps, budget=args.budget))
        else:
            for u, v, w in sps.edges:
                out.write(f"{_label(decode(u, spec.p, spec.n), spec.p)} -> {_label(decode(v, spec.p, spec.n), spec.p)} {w}\n")
        return 0
    ps = enumerate_phase_space(spec.system(), _mode(args, spec), args.budget)
    if args.format == "dot":
        out.write(phase_space_dot(ps, budget=args.budget))
        return 0
    fixed = [_label(ps.config(k), ps.p) for k in ps.fixed_point_indices()]
    out.write(f"states {ps.size}\n")
    out.write(f"fixed points {len(fixed)}: {' '.join(fixed)}\n")
    out.write("cycles (length count)\n")
    for length, count in sorted(ps.cycle_lengths().items()):
        out.write(f"{length} {count}\n")
    for cyc in ps.cycles:
        if len(cyc) > 1:
            out.write("cycle " + " -> ".join(_label(ps.config(k), ps.p) for k in cyc) + "\n")
    out.write(f"max transient {int(ps.transient.max())}\n")
    return 0


def cmd_analyze_linear(args, out) -> int:
    spec = _load(args)
    S = spec.system()
    A, b = as_linear(S)
    p = S.p
    out.write("A =\n" + "\n".join(" ".join(map(str, row)) for row in A.tolist()) + "\n")
    out.write("b = " + " ".join(map(str, b.tolist())) + "\n")
    mp = min_poly(A, p)
    out.write(f"minimal polynomial: {mp}\n")
    out.write("factors: " + ", ".join(f"({f})^{e}" for f, e in upoly_factor(mp)) + "\n")
    if mp.coefficient(0):
        out.write(f"order: {upoly_order(mp)}\n")
    affine = bool(b.any())
    cs = predict_affine_cycle_structure(A, b, p) if affine else predict_cycle_structure(A, p)
    out.write(f"invertible part dim {cs.invertible_dim}, nilpotent part dim {cs.nilpotent_dim}\n")
    out.write(cs.table() + "\n")
    if not args.verify:
        return 0
    enum = enumerated_cycle_structure(linear_phase_space(A, p, b if affine else None, args.budget))
    ok = enum == cs.cycles
    out.write(f"enumeration agrees: {'yes' if ok else 'no'}\n")
    if not affine:
        tc = verify_transient_trees(A, p, args.budget)
        out.write(f"transient trees isomorphic: {'yes' if tc.isomorphic else 'no'}\n")
        ok = ok and tc.isomorphic
    return 0 if ok else 1


def cmd_monomial(args, out) -> int:
    report = loop_numbers(_load(args).system())
    out.write(report.format() + "\n")
    return 0 if report.fixed_points_only else 1


def cmd_orders(args, out) -> int:
    spec = _load(args)
    Y = spec.system().undirected_graph()
    if args.same:
        sigma, tau = (parse_tuple(t) for t in args.same)
        same = same_sds(Y, sigma, tau)
        out.write(f"same SDS map: {'yes' if same else 'no'}\n")
        return 0 if same else 1
    summary = update_graph_components(Y)
    out.write(f"permutations {summary.permutation_count}\n")
    out.write(f"acyclic orientations {summary.acyclic_count}\n")
    out.write(f"update graph components {summary.component_count}\n")
    for comp, orient in zip(summary.components, summary.orientations):
        perms = " ".join("(" + ",".join(map(str, s)) + ")" for s in comp)
        out.write(f"[{orient}] {perms}\n")
    return 0


def cmd_markov(args, out) -> int:
    spec = _load(args)
    SS = _stochastic(spec, _mode(args, spec))
    p, n = spec.p, spec.n
    if args.format == "dot":
        out.write(stochastic_dot(stochastic_phase_space(SS, args.budget), budget=args.budget))
        return 0
    M = transition_matrix(SS, args.budget)
    lab = [_label(decode(k, p, n), p) for k in range(M.size)]
    if args.format == "csv":
        out.write("from,to,probability\n")
        for u, row in enumerate(M.rows):
            for v in sorted(row):
                out.write(f"{lab[u]},{lab[v]},{row[v]}\n")
        return 0
    out.write("transitions\n")
    for u, row in enumerate(M.rows):
        out.write(f"{lab[u]}: " + " ".join(f"{lab[v]}:{row[v]}" for v in sorted(row)) + "\n")
    out.write("recurrent classes\n")
    for cls in stationary_distribution(M):
        pi = " ".join(f"{lab[k]}:{cls.distribution[k]:.6g}" for k in cls.states)
        out.write(f"{{{' '.join(lab[k] for k in cls.states)}}} stationary {pi}\n")
    return 0


def cmd_simulate(args, out) -> int:
    spec = _load(args)
    c0 = _config(args.init, spec, "start")
    mode = _mode(args, spec)
    model = spec.build()
    traj = simulate(model, c0, args.steps, args.seed, mode=mode)
    if args.tally:
        final = tuple(int(v) for v in traj[-1])
        names = spec.names or tuple(f"x{i}" for i in range(1, spec.n + 1))
        out.write("final " + " ".join(f"{nm}={v}" for nm, v in zip(names, final)) + "\n")
        out.write(f"winner {election_winner(final)}\n")
        return 0
    if args.format == "csv":
        out.write(trajectory_csv(traj))
    else:
        for t, row in enumerate(traj.tolist()):
            out.write(f"{t} {_label(row, spec.p)}\n")
    return 0


def cmd_reach(args, out) -> int:
    spec = _load(args)
    c = _config(args.source, spec, "source")
    if not args.target:
        raise CLIError("--to is required")
    ok, k = reachable(spec.system(), _mode(args, spec), c, parse_tuple(args.target), args.budget)
    out.write(f"reachable in {k} steps\n" if ok else "not reachable\n")
    return 0 if ok else 1


def _param_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def cmd_gen(args, out) -> int:
    params = {}
    for item in args.param or []:
        if "=" not in item:
            raise CLIError(f"--param expects key=value, got {item!r}")
        k, v = item.split("=", 1)
        params[k.strip()] = _param_value(v.strip())
    if args.order:
        key = "mode" if args.name == "hopfield" else "order"
        params[key] = parse_tuple(args.order)
    if args.name == "traffic" and "decel" in params:
        params["decel"] = Fraction(str(params["decel"]))
    out.write(format_spec(gen_example(args.name, **params)))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="model file")
    common.add_argument("--mode", choices=("parallel", "word"), help="override the model file's update mode")
    common.add_argument("--order", help='update word, e.g. "(2,1,3,4)"; implies --mode word')
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of states to enumerate")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--steps", type=int, default=100)
    common.add_argument("--format", choices=("text", "dot", "csv"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="findyn", description="Finite dynamical systems over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase", parents=[common], help="enumerate the phase space")
    p.add_argument("--dependency", action="store_true", help="emit the dependency graph as DOT instead")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("analyze-linear", parents=[common], help="cycle structure of a linear or affine system")
    p.add_argument("--verify", action="store_true", help="compare against enumeration (exit 1 on mismatch)")
    p.set_defaults(func=cmd_analyze_linear)

    p = sub.add_parser("monomial", parents=[common], help="loop-number fixed-point test (exit 1 if cycles exist)")
    p.set_defaults(func=cmd_monomial)

    p = sub.add_parser("orders", parents=[common], help="update-order equivalence classes")
    p.add_argument("--same", nargs=2, metavar="WORD", help="test whether two permutations give the same map")
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("markov", parents=[common], help="transition matrix and stationary distributions")
    p.set_defaults(func=cmd_markov)

    p = sub.add_parser("simulate", parents=[common], help="seeded trajectory")
    p.add_argument("--init", help="start configuration, overrides the model file's init line")
    p.add_argument("--tally", action="store_true", help="print the final state and its majority value")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reach", parents=[common], help="configuration reachability (exit 1 if unreachable)")
    p.add_argument("--from", dest="source", help="start configuration (default: the model file's init line)")
    p.add_argument("--to", dest="target", help="target configuration")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("gen", parents=[common], help="write a built-in example spec")
    p.add_argument("name", choices=EXAMPLES)
    p.add_argument("--param", action="append", help="generator parameter key=value (JSON values)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                return args.func(args, fh)
        return args.func(args, sys.stdout)
    except (FDSError, CLIError, OSError, ValueError) as e:
        print(f"findyn: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
