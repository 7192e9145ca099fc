"""Command line entry point: ``hygreedy <subcommand> ...``; results go to stdout as JSON or CSV."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, analysis, generators, harness
from . import trajectory as tj
from .errors import ConfigurationError, HygreedyError, InputError
from .hypergraph import (
    LabeledFamily,
    check_main_conditions,
    format_family,
    format_hypergraph,
    read_family,
    read_vertex_set,
    write_family,
    write_hypergraph,
)


def _emit(obj, out: str | None = None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise ConfigurationError(f"cannot write {out}: {exc}") from None
    else:
        sys.stdout.write(text)


def _instance_spec(args) -> dict | None:
    if getattr(args, "instance_file", None):
        return {"file": args.instance_file}
    if getattr(args, "generator", None):
        spec = {"generator": args.generator}
        for key in ("N", "k", "n", "r", "M", "seed", "template", "template_file"):
            val = getattr(args, key, None)
            if val is not None:
                spec[key] = val
        return spec
    return None


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance-file", help="hypergraph file (hg1 text or JSON)")
    p.add_argument("--generator", choices=["kap", "sum_free", "triangle", "template", "random", "edgeless"])
    p.add_argument("--N", type=int, help="modulus / vertex count")
    p.add_argument("--k", type=int, help="progression length")
    p.add_argument("--n", type=int, help="ground set size for sum_free / triangle / template")
    p.add_argument("--r", type=int)
    p.add_argument("--M", type=int, help="edge count for random instances")
    p.add_argument("--seed", type=int, help="seed for random instances")
    p.add_argument("--template", help=f"named template: {', '.join(sorted(generators.TEMPLATES))}")
    p.add_argument("--template-file")


def _add_param_args(p: argparse.ArgumentParser) -> None:
    for key in harness.PARAM_KEYS:
        p.add_argument(f"--{key}", type=float)
    p.add_argument("--non-strict", action="store_true", help="allow constants outside the usual ordering")


def _template(args) -> generators.Template:
    if getattr(args, "template_file", None):
        t = generators.Template.read(args.template_file)
        if args.k is not None and args.k != t.k:
            raise InputError(f"template file declares k = {t.k}, not {args.k}")
        return t
    if getattr(args, "template", None) in generators.TEMPLATES:
        return generators.TEMPLATES[args.template]
    raise InputError("give --template-file or a known --template")


# -- subcommands ---------------------------------------------------------------


def _write_out(obj, out: str | None) -> None:
    if isinstance(obj, LabeledFamily):
        if out:
            write_family(obj, out)
        else:
            _emit(format_family(obj))
    elif out:
        write_hypergraph(obj, out)
    else:
        _emit(format_hypergraph(obj))


def cmd_gen(args) -> int:
    kind = {"sumfree": "sum_free"}.get(args.kind, args.kind)
    if kind in ("kap", "dcube", "random", "edgeless") and args.N is None:
        args.N = args.n
    if kind in ("sum_free", "triangle", "template", "cherries") and args.n is None:
        args.n = args.N
    if kind == "dcube":
        if args.N is None or args.d is None:
            raise InputError("dcube needs --N and --d")
        obj = generators.d_cube(args.N, args.d)
    elif kind == "kap" and args.multiplicity:
        obj = generators.k_ap(args.N, args.k, multiplicity=True)
    elif kind == "cherries":
        if args.n is None:
            raise InputError("cherries needs --n")
        obj = generators.template_copies(generators.TEMPLATES["cherry"], args.n)
    else:
        spec = _instance_spec(argparse.Namespace(**{**vars(args), "generator": kind, "instance_file": None}))
        obj = harness.build_instance(spec)
    _write_out(obj, args.out)
    return 0


def cmd_run(args) -> int:
    data = json.loads(Path(args.config).read_text()) if args.config else {}
    spec = _instance_spec(args)
    if spec is not None:
        data["instance"] = spec
    for key, attr in (("runs", "runs"), ("seed_base", "seed_base"), ("checkpoint_every", "checkpoint_every"),
                      ("max_steps", "max_steps"), ("min_q", "min_q"), ("out_dir", "out"), ("threads", "threads")):
        val = getattr(args, attr)
        if val is not None:
            data[key] = val
    for flag in ("monitor", "z_diagnostics", "to_i_max", "halt_on_violation"):
        if getattr(args, flag):
            data[flag] = True
    if args.non_strict:
        data["strict"] = False
    if args.families:
        data["families"] = args.families.split(",")
    overrides = dict(data.get("params", {}))
    for key in harness.PARAM_KEYS:
        val = getattr(args, key)
        if val is not None:
            overrides[key] = val
    data["params"] = overrides
    config = harness.ExperimentConfig.from_dict(data)
    summary = harness.cmd_run(config)
    _emit(summary)
    return 0


def cmd_traj(args) -> int:
    spec = _instance_spec(args)
    if spec is not None:
        H = harness.build_instance(spec)
        overrides = {k: getattr(args, k) for k in harness.PARAM_KEYS}
        params = harness.params_for(H, overrides, not args.non_strict)
        if params is None:
            raise InputError("the instance has nothing to track")
    else:
        need = ["r", "N", "D", "epsilon"]
        missing = [k for k in need if getattr(args, k) is None]
        if missing:
            raise InputError(f"traj needs an instance or {missing}")
        eps = args.epsilon
        delta = args.delta if args.delta is not None else eps / 10
        zeta = args.zeta if args.zeta is not None else delta / 10
        params = tj.TrajectoryParams(args.r, args.N, args.D, eps, delta, zeta, 0.0, 0.0, not args.non_strict)
        if args.alpha is None or args.beta is None:
            found = tj.search_alpha_beta(params, t_max=args.t_end)
            params = params.with_(alpha=args.alpha if args.alpha is not None else found.alpha,
                                  beta=args.beta if args.beta is not None else found.beta)
        else:
            params = params.with_(alpha=args.alpha, beta=args.beta)
    _emit(harness.cmd_trajectory(params, args.points, args.t_end, args.check_vareq), args.out)
    return 0


def cmd_gowers(args) -> int:
    if args.set_file:
        if args.n is None or args.d is None:
            raise InputError("gowers --set-file needs --n and --d")
        I = read_vertex_set(args.set_file)
        _emit({"n": args.n, "d": args.d, "size": len(set(I)), "norm": analysis.gowers_norm(I, args.n, args.d)})
        return 0
    if not args.ns or args.k is None or args.d is None:
        raise InputError("the experiment needs --ns, --k and --d (or give --set-file)")
    ns = [int(x) for x in args.ns.split(",")]
    _emit(harness.cmd_gowers_experiment(ns, args.k, args.d, args.runs, args.seed_base, args.zeta, args.threads),
          args.out)
    return 0


def cmd_count(args) -> int:
    G = read_family(args.family_file)
    if args.set_file:
        I = read_vertex_set(args.set_file)
        _emit(analysis.count_contained(G, I, p=args.p).to_dict())
        return 0
    spec = _instance_spec(args)
    if spec is None or args.steps is None:
        raise InputError("count needs --set-file, or an instance plus --steps")
    H = harness.build_instance(spec)
    params = None
    if args.zeta is not None:
        overrides = {k: getattr(args, k) for k in harness.PARAM_KEYS}
        params = harness.params_for(H, overrides, not args.non_strict)
    if G.uniformity is None:
        raise InputError("the counting family must be uniform")
    _emit(harness.cmd_count_experiment(H, G, args.steps, args.runs, args.seed_base, params, args.threads), args.out)
    return 0


def cmd_balance(args) -> int:
    t = _template(args)
    verdict = analysis.balance_check(t)
    agree, rows = analysis.degcond_predictor(t)
    out = verdict.to_dict()
    out["degcond"] = {"holds": agree, "rows": [
        {"a": r.a, "v_a": r.v_a, "lhs": str(r.lhs), "rhs": str(r.rhs), "holds": r.holds} for r in rows]}
    _emit(out)
    return 0


def cmd_turan(args) -> int:
    t = _template(args)
    power, log_power = analysis.turan_exponent(t, check=not args.no_check)
    _emit({"template": t.name, "k": t.k, "power": str(power), "log_power": str(log_power)})
    return 0


def cmd_check(args) -> int:
    if args.trace:
        report = harness.audit_trace(Path(args.trace).read_text())
        _emit(report)
        return 0 if report["ok"] else 1
    spec = _instance_spec(args)
    if spec is None:
        raise InputError("check needs --trace or an instance")
    H = harness.build_instance(spec)
    eps = args.epsilon if args.epsilon is not None else 1e-3
    _emit(check_main_conditions(H, eps).to_dict())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hygreedy", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hygreedy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated hypergraph or labeled family")
    p.add_argument("kind", choices=["kap", "sum_free", "sumfree", "triangle", "template", "random", "edgeless",
                                   "dcube", "cherries"])
    _add_instance_args(p)
    p.add_argument("--d", type=int)
    p.add_argument("--multiplicity", action="store_true", help="k-AP family with one labeled edge per (a, d)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run a seeded ensemble and write traces plus a summary")
    p.add_argument("--config", help="ExperimentConfig JSON; flags override it")
    _add_instance_args(p)
    _add_param_args(p)
    p.add_argument("--runs", type=int)
    p.add_argument("--seed-base", type=int)
    p.add_argument("--checkpoint-every", type=int)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--min-q", type=float, help="stop once q(t) would fall below this")
    p.add_argument("--to-i-max", action="store_true")
    p.add_argument("--monitor", action="store_true", help="evaluate the stopping conditions")
    p.add_argument("--families", help="comma-separated condition families to monitor")
    p.add_argument("--halt-on-violation", action="store_true")
    p.add_argument("--z-diagnostics", action="store_true")
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("traj", help="tabulate predicted trajectories")
    _add_instance_args(p)
    _add_param_args(p)
    p.add_argument("--D", type=float)
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--t-end", type=float)
    p.add_argument("--check-vareq", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_traj)

    p = sub.add_parser("gowers", help="U^d norm of a set, or the k-AP-free uniformity experiment")
    p.add_argument("--set-file")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--ns", help="comma-separated primes for the experiment")
    p.add_argument("--k", type=int)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--zeta", type=float, help="stop runs at i_max for this zeta (default: run to the end)")
    p.add_argument("--threads", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gowers)

    p = sub.add_parser("count", help="edges of a family inside a set, or the counting experiment")
    p.add_argument("--family-file", required=True)
    p.add_argument("--set-file")
    p.add_argument("--p", type=float)
    _add_instance_args(p)
    _add_param_args(p)
    p.add_argument("--steps", type=int)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_count)

    for name, func, help_ in (("balance", cmd_balance, "strict balance verdict"),
                              ("turan", cmd_turan, "Turán lower-bound exponents")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--template-file")
        p.add_argument("--template")
        p.add_argument("--k", type=int)
        if name == "turan":
            p.add_argument("--no-check", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="audit a saved trace, or report the hypotheses of an instance")
    p.add_argument("--trace")
    _add_instance_args(p)
    p.add_argument("--epsilon", type=float)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HygreedyError as exc:
        print(f"hygreedy: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, json.JSONDecodeError) as exc:
        print(f"hygreedy: {exc}", file=sys.stderr)
        return InputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
