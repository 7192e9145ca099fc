"""Seeded experiment ensembles and the reports they produce."""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from . import analysis, generators
from . import trajectory as tj
from .errors import ConfigurationError, HypothesisError, InputError, ResourceError
from .hypergraph import Hypergraph, LabeledFamily, read_family, read_hypergraph
from .process import RunTrace, init, run, step

PARAM_KEYS = ("epsilon", "delta", "zeta", "alpha", "beta")


def worker_count(jobs: int, requested: int | None = None) -> int:
    cap = os.environ.get("HYGREEDY_THREADS")
    n = requested or os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ConfigurationError(f"HYGREEDY_THREADS must be an integer, got {cap!r}") from None
    return max(1, min(n, jobs))


def ordered_map(fn: Callable[[int], Any], count: int, threads: int | None = None) -> list:
    """``[fn(0), ..., fn(count-1)]`` evaluated on a thread pool, gathered by index."""
    workers = worker_count(count, threads)
    if workers == 1:
        return [fn(k) for k in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def build_instance(spec: dict) -> Hypergraph:
    """Hypergraph from a generator spec such as ``{"generator": "kap", "N": 499, "k": 3}``."""
    spec = dict(spec)
    if "file" in spec:
        return read_hypergraph(spec["file"])
    kind = spec.pop("generator", None)

    def need(*keys):
        missing = [k for k in keys if k not in spec]
        if missing:
            raise ConfigurationError(f"generator {kind!r} needs {missing}")
        return [spec[k] for k in keys]

    if kind == "kap":
        N, k = need("N", "k")
        return generators.k_ap(int(N), int(k))
    if kind == "sum_free":
        (n,) = need("n")
        return generators.sum_free(int(n))
    if kind == "triangle":
        (n,) = need("n")
        return generators.triangle_process(int(n))
    if kind == "template":
        (n,) = need("n")
        if "template_file" in spec:
            t = generators.Template.read(spec["template_file"])
        else:
            (name,) = need("template")
            if name not in generators.TEMPLATES:
                raise ConfigurationError(f"unknown template {name!r}; known: {sorted(generators.TEMPLATES)}")
            t = generators.TEMPLATES[name]
        return generators.template_copies(t, int(n))
    if kind == "random":
        N, r, M = need("N", "r", "M")
        return generators.random_uniform(int(N), int(r), int(M), int(spec.get("seed", 0)))
    if kind == "edgeless":
        (N,) = need("N")
        return Hypergraph(int(N), [], uniformity=int(spec.get("r", 3)))
    raise ConfigurationError(f"unknown generator {kind!r}")


@dataclass
class ExperimentConfig:
    instance: dict
    seed_base: int = 0
    runs: int = 1
    checkpoint_every: int | None = None
    max_steps: int | None = None
    min_q: float | None = None
    to_i_max: bool = False
    params: dict = field(default_factory=dict)
    strict: bool = True
    monitor: bool = False
    families: list[str] | None = None
    halt_on_violation: bool = False
    z_diagnostics: bool = False
    out_dir: str | None = None
    formats: list[str] = field(default_factory=lambda: ["csv", "json"])
    threads: int | None = None

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigurationError("runs must be at least 1")
        if self.checkpoint_every is not None and self.checkpoint_every < 1:
            raise ConfigurationError("checkpoint_every must be at least 1")
        unknown = set(self.params) - set(PARAM_KEYS)
        if unknown:
            raise ConfigurationError(f"unknown parameter overrides {sorted(unknown)}")
        bad = set(self.formats) - {"csv", "json"}
        if bad:
            raise ConfigurationError(f"unknown output formats {sorted(bad)}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigurationError(f"unknown config keys {sorted(extra)}")
        if "instance" not in data:
            raise ConfigurationError("config needs an 'instance'")
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"config is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    def seed(self, index: int) -> int:
        return self.seed_base + index

    def to_dict(self) -> dict:
        return asdict(self)


def params_for(H: Hypergraph, overrides: dict, strict: bool = True) -> tj.TrajectoryParams | None:
    """Trajectory parameters for ``H`` (None when there is nothing to track)."""
    if len(H) == 0 or not H.is_uniform or H.r < 3:
        return None
    return tj.default_params(H, strict=strict, **{k: overrides.get(k) for k in PARAM_KEYS})


def step_budget(config: ExperimentConfig, params: tj.TrajectoryParams | None) -> int | None:
    limits = []
    if config.max_steps is not None:
        limits.append(config.max_steps)
    if params is not None and config.to_i_max:
        limits.append(params.i_max)
    if params is not None and config.min_q is not None:
        # largest t with q(t) >= min_q, converted to whole steps
        t_cut = math.log(1 / config.min_q) ** (1 / (params.r - 1))
        limits.append(math.floor(t_cut / params.time_scale + 1e-9))
    return min(limits) if limits else None


def header_line(params: tj.TrajectoryParams | None) -> str:
    body = params.to_json() if params is not None else "null"
    return f"hygreedy {__version__} params={body}"


def _quantiles(values: Sequence[float]) -> dict:
    arr = np.sort(np.asarray(values, dtype=float))
    if len(arr) == 0:
        return {}
    q = np.quantile(arr, [0.0, 0.25, 0.5, 0.75, 1.0])
    return {"min": float(q[0]), "q1": float(q[1]), "median": float(q[2]), "q3": float(q[3]),
            "max": float(q[4]), "mean": float(arr.mean())}


def run_ensemble(H: Hypergraph, config: ExperimentConfig,
                 params: tj.TrajectoryParams | None) -> list[RunTrace]:
    budget = step_budget(config, params)
    every = config.checkpoint_every
    if every is None:
        every = max(1, math.ceil(params.i_max / 50)) if params is not None and params.i_max > 0 else 1
    # build shared lookup tables once, before threads read them
    if H.n and len(H):
        H.incident(0)
    for s in range(2, H.max_edge_size):
        H.subset_index(s)

    def one(k: int) -> RunTrace:
        state = init(H, config.seed(k))
        return run(state, max_steps=budget, checkpoint_every=every, params=params,
                   monitor=config.monitor, families=config.families,
                   halt_on_violation=config.halt_on_violation, z_diagnostics=config.z_diagnostics)

    return ordered_map(one, config.runs, config.threads)


def summarize(H: Hypergraph, traces: list[RunTrace], params: tj.TrajectoryParams | None) -> dict:
    finals = [t.final_size for t in traces]
    by_step: dict[int, list] = {}
    for trace in traces:
        for c in trace.checkpoints:
            by_step.setdefault(c.i, []).append(c)
    rows = []
    for i in sorted(by_step):
        group = by_step[i]
        row = {"i": i, "runs": len(group), "open": _quantiles([c.open for c in group])}
        if params is not None:
            row["t"] = group[0].t
            row["Nq"] = group[0].Nq
        rows.append(row)
    out = {
        "version": __version__,
        "n": H.n,
        "edges": len(H),
        "runs": len(traces),
        "seeds": [t.seed for t in traces],
        "final_size": _quantiles(finals),
        "terminated": sum(t.terminal_size is not None for t in traces),
        "checkpoints": rows,
        "params": params.to_dict() if params is not None else None,
    }
    if params is not None:
        scale = H.n * (math.log(H.n) / params.d) ** (1 / (params.r - 1))
        out["prediction_scale"] = scale
        out["final_size_ratio"] = float(np.mean(finals)) / scale
        out["i_max"] = params.i_max
        violated = [t.stop_step is not None and t.stop_step < params.i_max for t in traces]
        out["violation_fraction"] = sum(violated) / len(traces)
    return out


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text)
    except OSError as exc:
        raise ConfigurationError(f"cannot write {path}: {exc}") from None


def cmd_run(config: ExperimentConfig, H: Hypergraph | None = None) -> dict:
    """Run the ensemble, write one trace CSV per run plus ``summary.json``, return the summary."""
    H = build_instance(config.instance) if H is None else H
    params = params_for(H, config.params, config.strict)
    if params is None and (config.monitor or config.z_diagnostics):
        raise ConfigurationError("monitors need a nonempty uniform hypergraph with r >= 3")
    traces = run_ensemble(H, config, params)
    summary = summarize(H, traces, params)
    if config.out_dir is not None:
        out = Path(config.out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ConfigurationError(f"cannot create {out}: {exc}") from None
        head = header_line(params)
        if "csv" in config.formats:
            for k, trace in enumerate(traces):
                _write(out / f"trace_{k:04d}.csv", trace.to_csv(head))
        if "json" in config.formats:
            _write(out / "summary.json", json.dumps({"header": head, **summary}, indent=2, sort_keys=True) + "\n")
    return summary


# -- trajectory tables -------------------------------------------------------


def trajectory_columns(r: int) -> list[str]:
    return (["t", "q"] + [f"s_{ell}" for ell in range(2, r + 1)]
            + [f"s{ell}p" for ell in range(2, r)] + [f"s{ell}m" for ell in range(2, r + 1)]
            + ["f_v"] + [f"f_{ell}" for ell in range(2, r + 1)])


def trajectory_table(params: tj.TrajectoryParams, grid: Sequence[float]) -> list[list[float]]:
    r = params.r
    rows = []
    for t in grid:
        t = float(t)
        row = [t, float(tj.q_of(params, t))]
        row += [float(tj.s_of(params, ell, t)) for ell in range(2, r + 1)]
        row += [tj.s_pm_of(params, ell, t, "+") for ell in range(2, r)]
        row += [tj.s_pm_of(params, ell, t, "-") for ell in range(2, r + 1)]
        row += [float(tj.f_of(params, "v", t)[0])] + [float(tj.f_of(params, ell, t)[0]) for ell in range(2, r + 1)]
        rows.append(row)
    return rows


def cmd_trajectory(params: tj.TrajectoryParams, points: int = 201, t_end: float | None = None,
                   check_vareq: bool = False) -> str:
    """CSV table of the predicted trajectories on a uniform grid, optionally with a variation report."""
    if points < 2:
        raise InputError("need at least two grid points")
    t_end = params.t_max if t_end is None else t_end
    grid = np.linspace(0.0, t_end, points)
    lines = [f"# {header_line(params)}", ",".join(trajectory_columns(params.r))]
    lines += [",".join(repr(x) for x in row) for row in trajectory_table(params, grid)]
    if check_vareq:
        report = tj.check_variation_equations(params, t_max=t_end)
        lines.append("# vareq " + json.dumps(report.to_dict(), sort_keys=True))
    return "\n".join(lines) + "\n"


# -- uniformity experiment -----------------------------------------------------


def cmd_gowers_experiment(ns: Sequence[int], k: int, d: int, runs: int, seed_base: int = 0,
                          zeta: float | None = None, threads: int | None = None,
                          budget: int = analysis.GOWERS_BUDGET) -> dict:
    """U^d norms of k-AP-free process outputs, per modulus.

    Runs stop at ``i_max`` for the given ``zeta``; without ``zeta`` they run to termination.
    """
    if 2 ** (d - 1) != k - 1:
        raise InputError(f"the uniformity statement needs 2^(d-1) = k-1; got k={k}, d={d}")
    if runs < 1:
        raise InputError("runs must be positive")
    for N in ns:
        if not generators.is_prime(N):
            raise InputError(f"N = {N} is not prime")
        if N ** (d + 1) * 2**d > budget:
            raise ResourceError(f"N = {N}: N^(d+1) 2^d exceeds the budget {budget}")
    report = {"k": k, "d": d, "runs": runs, "seed_base": seed_base, "zeta": zeta, "version": __version__, "by_n": {}}
    for N in ns:
        H = generators.k_ap(N, k)
        steps = None
        if zeta is not None:
            D = float(H.degrees().max())
            steps = math.floor(zeta * N * D ** (-1 / (k - 1)) * math.log(N) ** (1 / (k - 1)))
        for s in range(2, k):
            H.subset_index(s)

        def one(j: int):
            state = init(H, seed_base + j)
            while state.n_open and (steps is None or state.i < steps):
                step(state)
            I = state.independent
            return len(I), analysis.gowers_norm(I, N, d, budget), analysis.gowers_norm(I, N, 1, budget)

        results = ordered_map(one, runs, threads)
        sizes, norms, u1 = zip(*results)
        report["by_n"][str(N)] = {
            "steps": steps,
            "sizes": list(sizes),
            "norms": list(norms),
            "u1": list(u1),
            "norm": _quantiles(norms),
        }
    return report


# -- counting experiment -------------------------------------------------------


def cmd_count_experiment(H: Hypergraph, G: Hypergraph | LabeledFamily, i: int, runs: int, seed_base: int = 0,
                         params: tj.TrajectoryParams | None = None, threads: int | None = None,
                         degree_ratio_limit: float = 1.0, growth_threshold: float = 10.0) -> dict:
    """Ensemble statistics of the number of G-edges inside I(i) against ``|G| (i/N)^s``."""
    if G.n != H.n:
        raise InputError("the counting family must live on the process's vertex set")
    s = analysis.family_uniformity(G)
    if i < 0 or i > H.n:
        raise InputError("need 0 <= i <= N")
    bad = analysis.edges_containing_host_edge(G, H)
    if bad:
        raise HypothesisError(f"counting family edge {bad[0]} contains an edge of the host hypergraph")
    if params is not None and i > 0 and i >= params.i_max:
        raise HypothesisError(f"i = {i} is not below i_max = {params.i_max}")
    p = i / H.n
    gate = analysis.count_contained(G, [], p=p, growth_threshold=growth_threshold)
    if i > 0:
        if not gate.growth_ok:
            raise HypothesisError(f"|G| p^s = {gate.prediction:.4g} is below the growth threshold {growth_threshold}")
        for a, ratio in gate.degree_ratios.items():
            if ratio >= degree_ratio_limit:
                raise HypothesisError(f"Delta_{a}(G) / (p^{a} |G|) = {ratio:.4g} is not small")
    for sz in range(2, H.max_edge_size):
        H.subset_index(sz)

    def one(j: int) -> int:
        state = init(H, seed_base + j)
        while state.i < i and state.n_open:
            step(state)
        return analysis.count_contained(G, state.independent, p=p, degrees=False).count

    counts = np.asarray(ordered_map(one, runs, threads), dtype=float)
    mean = float(counts.mean())
    return {
        "i": i, "runs": runs, "seed_base": seed_base, "s": s, "size": len(G), "p": p,
        "mean": mean, "std": float(counts.std(ddof=1)) if runs > 1 else 0.0,
        "prediction": gate.prediction,
        "ratio": mean / gate.prediction if gate.prediction else None,
        "degree_ratios": {str(a): r for a, r in gate.degree_ratios.items()},
        "counts": counts.astype(int).tolist(),
        "version": __version__,
        "params": params.to_dict() if params is not None else None,
    }


def load_family(path: str | Path) -> LabeledFamily:
    return read_family(path)


# -- trace audit -------------------------------------------------------------


def audit_trace(text: str) -> dict:
    """Recheck the vertex-count band of a saved trace against its embedded parameters."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# hygreedy"):
        raise InputError("trace lacks the '# hygreedy <version> params=...' header")
    body = lines[0].split("params=", 1)[1]
    if body == "null":
        raise InputError("trace carries no trajectory parameters to audit against")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        params = tj.TrajectoryParams.from_json(body, strict=False)
    import csv

    reader = csv.DictReader(lines[1:])
    first_bad, checked = None, 0
    for row in reader:
        i = int(row["i"])
        t = float(tj.scaled_time(params, i))
        nq = params.n * float(tj.q_of(params, t))
        ok = abs(int(row["open"]) - nq) <= tj.points_band(params, t)
        checked += 1
        if not ok and first_bad is None:
            first_bad = i
    return {"checked": checked, "ok": first_bad is None, "first_violation": first_bad,
            "params": params.to_dict()}
