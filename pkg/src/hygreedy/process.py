"""Random greedy independent set process on a hypergraph.

Every live edge is the residual ``e \\ I`` of some original edge ``e``, so the
state keeps one ``alive`` flag and one current size per original edge; the
residual vertices are exactly the open vertices of ``e``.  Supersets of a
freshly shrunk residual are found through the hypergraph's subset index.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .errors import ConfigurationError, InputError, ProcessComplete
from .hypergraph import Hypergraph

OPEN, IN_SET, CLOSED, PAD = 0, 1, 2, 3


@dataclass
class StepRecord:
    i: int
    vertex: int
    closed: list[int]
    shrunk: dict[int, int]
    removed: dict[str, dict[int, int]]

    def to_json(self) -> str:
        return json.dumps({
            "i": self.i,
            "vertex": self.vertex,
            "closed": self.closed,
            "shrink": {str(k): v for k, v in self.shrunk.items()},
            "closure": {str(k): v for k, v in self.removed["closure"].items()},
            "domination": {str(k): v for k, v in self.removed["domination"].items()},
        }, sort_keys=True)


def _size_hist(sizes: np.ndarray) -> dict[int, int]:
    if len(sizes) == 0:
        return {}
    vals, counts = np.unique(sizes, return_counts=True)
    return {int(a): int(b) for a, b in zip(vals, counts)}


class ProcessState:
    """Mutable state (I(i), V(i), H(i)) plus created/destroyed degree trackers.

    ``dplus[v, l]`` / ``dminus[v, l]`` count l-edges containing ``v`` created /
    destroyed so far; they stop changing once ``v`` leaves the open set.
    """

    def __init__(self, H: Hypergraph, seed: int = 0):
        self.H = H
        self.seed = int(seed)
        self.n = n = H.n
        self.width = H.max_edge_size
        self.rng = np.random.default_rng(self.seed)
        self.i = 0
        self.independent: list[int] = []
        self.status = np.zeros(n + 1, dtype=np.int8)
        self.status[n] = PAD
        self.open_list = np.arange(n, dtype=np.int64)
        self.open_pos = np.arange(n + 1, dtype=np.int64)
        self.n_open = n
        self.alive = np.ones(len(H), dtype=bool)
        self.size = H.sizes.astype(np.int16)
        if not H.is_uniform:
            self._drop_dominated_originals()
        self.dplus = np.zeros((n + 1, self.width + 1), dtype=np.int64)
        self.dminus = np.zeros((n + 1, self.width + 1), dtype=np.int64)
        self.base = np.zeros((n + 1, self.width + 1), dtype=np.int64)
        live = np.flatnonzero(self.alive)
        self._credit(self.base, live, self.size[live])
        self.live_counts = np.bincount(self.size[live], minlength=self.width + 1).astype(np.int64)

    def _drop_dominated_originals(self) -> None:
        edges = {e: idx for idx, e in enumerate(self.H.edges)}
        for e, idx in edges.items():
            for s in range(2, len(e)):
                if any(sub in edges for sub in itertools.combinations(e, s)):
                    self.alive[idx] = False
                    break

    # -- helpers ---------------------------------------------------------

    def _members(self, eids: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        rows = self.H.padded()[eids]
        mask = self.status[rows] == OPEN
        return rows, mask

    def _credit(self, table: np.ndarray, eids: np.ndarray, ell) -> None:
        if len(eids) == 0:
            return
        rows, mask = self._members(eids)
        ell = np.asarray(ell, dtype=np.int64)
        if ell.ndim == 0:
            ell = np.full(len(eids), ell)
        ells = np.broadcast_to(ell[:, None], rows.shape)
        width = table.shape[1]
        flat = rows[mask] * width + ells[mask]
        table += np.bincount(flat, minlength=table.size).reshape(table.shape)

    def _close(self, u: int, status: int) -> None:
        pos = self.open_pos[u]
        last = self.open_list[self.n_open - 1]
        self.open_list[pos] = last
        self.open_pos[last] = pos
        self.open_list[self.n_open - 1] = u
        self.open_pos[u] = self.n_open - 1
        self.n_open -= 1
        self.status[u] = status

    # -- views -----------------------------------------------------------

    @property
    def open_vertices(self) -> np.ndarray:
        return np.sort(self.open_list[:self.n_open])

    @property
    def open_set(self) -> set[int]:
        return set(self.open_list[:self.n_open].tolist())

    @property
    def frozen(self) -> np.ndarray:
        return self.status[:self.n] != OPEN

    @property
    def rng_state(self) -> dict:
        return self.rng.bit_generator.state

    def degrees(self) -> np.ndarray:
        """Current ``d_l(v)`` table, valid on open vertices (shape ``(n, width+1)``)."""
        return (self.base + self.dplus - self.dminus)[:self.n]

    def live_edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.alive)

    def live_edges(self) -> set[frozenset]:
        ids = self.live_edge_ids()
        rows, mask = self._members(ids)
        return {frozenset(row[m].tolist()) for row, m in zip(rows, mask)}

    def live_size_counts(self) -> np.ndarray:
        return self.live_counts.copy()

    def _count(self, sizes: np.ndarray, sign: int) -> None:
        if len(sizes):
            self.live_counts += sign * np.bincount(sizes, minlength=self.width + 1)

    def is_independent(self) -> bool:
        I = set(self.independent)
        return not any(I.issuperset(e) for e in self.H.edges)


def init(H: Hypergraph, seed: int = 0) -> ProcessState:
    return ProcessState(H, seed)


def step(state: ProcessState, vertex: int | None = None) -> StepRecord:
    """Insert one vertex (uniformly random unless ``vertex`` is forced) and update H(i)."""
    if state.n_open == 0:
        raise ProcessComplete("no open vertices left")
    H = state.H
    status, alive, size = state.status, state.alive, state.size
    if vertex is None:
        v = int(state.open_list[state.rng.integers(state.n_open)])
    else:
        v = int(vertex)
        if not 0 <= v < state.n or status[v] != OPEN:
            raise InputError(f"vertex {v} is not open")
    P = H.padded()
    inc = H.incident(v)
    inc = inc[alive[inc]]
    pairs = inc[size[inc] == 2]
    rows = P[pairs]
    closed = np.unique(rows[(rows != v) & (status[rows] == OPEN)])

    # close C = {v} + partners before any edge bookkeeping
    state._close(v, IN_SET)
    state.independent.append(v)
    for u in closed.tolist():
        state._close(u, CLOSED)

    removed_closure = np.zeros(0, dtype=np.int64)
    if len(closed):
        gathered = np.concatenate([H.incident(u) for u in closed.tolist()])
        gathered = gathered[alive[gathered]]
        removed_closure = np.unique(gathered)
        alive[removed_closure] = False
        state._credit(state.dminus, removed_closure, size[removed_closure])
        state._count(size[removed_closure], -1)

    shrinking = inc[alive[inc]]
    old = size[shrinking].astype(np.int64)
    size[shrinking] = old - 1
    state._count(old, -1)
    state._count(old - 1, 1)
    state._credit(state.dplus, shrinking, old - 1)
    state._credit(state.dminus, shrinking, old)

    dominated = []
    new_sizes = size[shrinking]
    for s in np.unique(new_sizes).tolist():
        eids = shrinking[new_sizes == s]
        prow, mask = state._members(eids)
        residual = prow[mask].reshape(len(eids), s)
        owners, cands = H.subset_index(s).lookup(residual)
        keep = alive[cands] & (cands != eids[owners])
        dominated.append(cands[keep])
    removed_dom = np.unique(np.concatenate(dominated)) if dominated else np.zeros(0, dtype=np.int64)
    if len(removed_dom):
        alive[removed_dom] = False
        state._credit(state.dminus, removed_dom, size[removed_dom])
        state._count(size[removed_dom], -1)

    record = StepRecord(
        i=state.i,
        vertex=v,
        closed=closed.tolist(),
        shrunk=_size_hist(new_sizes),
        removed={"closure": _size_hist(size[removed_closure]), "domination": _size_hist(size[removed_dom])},
    )
    state.i += 1
    return record


def snapshot(state: ProcessState) -> dict:
    """Step, open count, per-size degree summaries over open vertices and live edge counts."""
    opened = state.open_list[:state.n_open]
    degs = state.degrees()[opened]
    summary = {}
    for ell in range(2, state.width + 1):
        col = degs[:, ell] if len(opened) else np.zeros(0)
        summary[ell] = {
            "mean": float(col.mean()) if len(col) else 0.0,
            "min": int(col.min()) if len(col) else 0,
            "max": int(col.max()) if len(col) else 0,
        }
    counts = state.live_size_counts()
    return {
        "i": state.i,
        "open": int(state.n_open),
        "degrees": summary,
        "live_edges": {ell: int(counts[ell]) for ell in range(2, state.width + 1)},
        "live_total": int(counts.sum()),
    }


def reference_transition(H: Hypergraph, I: Iterable[int]) -> tuple[set[int], set[frozenset]]:
    """Open set and live edge family after inserting ``I`` into H, recomputed from scratch."""
    I = [int(v) for v in I]
    Iset = set(I)
    if len(Iset) != len(I):
        raise InputError("I repeats a vertex")
    edges = [frozenset(e) for e in H.edges]
    if any(e <= Iset for e in edges):
        raise InputError("I contains an edge")
    blocked = set()
    for e in edges:
        rest = e - Iset
        if len(rest) == 1:
            blocked |= rest
    open_set = set(range(H.n)) - Iset - blocked
    residuals = {e - Iset for e in edges}
    residuals = {e for e in residuals if len(e) >= 2 and e <= open_set}
    live = {e for e in residuals if not any(f < e for f in residuals)}
    return open_set, live


def is_maximal(H: Hypergraph, I: Iterable[int]) -> bool:
    """True when every vertex outside I completes an edge together with I."""
    open_set, _ = reference_transition(H, I)
    return not open_set


def check_trackers(state: ProcessState) -> bool:
    """Live l-edge counts at open vertices equal base + d_l^+ - d_l^-."""
    recount = np.zeros_like(state.base)
    live = state.live_edge_ids()
    state._credit(recount, live, state.size[live])
    opened = state.open_list[:state.n_open]
    sizes = np.bincount(state.size[live], minlength=state.width + 1)
    return bool(np.array_equal(recount[opened], state.degrees()[opened])
                and np.array_equal(sizes, state.live_counts))


# -- runs -----------------------------------------------------------------


@dataclass
class Checkpoint:
    i: int
    t: float | None
    open: int
    Nq: float | None
    fv_bound: float | None
    mean_d: dict[int, float]
    max_d: dict[int, int]
    min_d: dict[int, int]
    live_edges: int
    stop_ok: bool | None = None
    z: dict | None = None


@dataclass
class RunTrace:
    seed: int
    r: int
    checkpoints: list[Checkpoint] = field(default_factory=list)
    terminal_size: int | None = None
    final_size: int = 0
    stop_step: int | None = None
    stop_witness: str | None = None
    independent: list[int] = field(default_factory=list)
    events: list[StepRecord] = field(default_factory=list)

    def header(self) -> list[str]:
        ells = range(2, self.r + 1)
        return (["i", "t", "open", "Nq", "fv_bound"]
                + [f"mean_d{ell}" for ell in ells]
                + [f"max_d{ell}" for ell in ells]
                + ["live_edges", "stop_ok"])

    def to_csv(self, preamble: str | None = None) -> str:
        buf = io.StringIO()
        if preamble:
            buf.write(f"# {preamble}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header())

        def fmt(x):
            if x is None:
                return ""
            if isinstance(x, (bool, np.bool_)):
                return "1" if x else "0"
            if isinstance(x, (float, np.floating)):
                return repr(float(x))
            return str(int(x))

        for c in self.checkpoints:
            ells = range(2, self.r + 1)
            row = [c.i, c.t, c.open, c.Nq, c.fv_bound]
            row += [c.mean_d.get(ell, 0.0) for ell in ells]
            row += [c.max_d.get(ell, 0) for ell in ells]
            row += [c.live_edges, c.stop_ok]
            w.writerow([fmt(x) for x in row])
        return buf.getvalue()


def _checkpoint(state, params, verdict, z) -> Checkpoint:
    snap = snapshot(state)
    t = Nq = fvb = None
    if params is not None:
        from . import trajectory as tj

        t = tj.scaled_time(params, state.i)
        Nq = params.n * float(tj.q_of(params, t))
        fvb = tj.points_band(params, t)
    degs = snap["degrees"]
    return Checkpoint(
        i=state.i,
        t=t,
        open=snap["open"],
        Nq=Nq,
        fv_bound=fvb,
        mean_d={ell: d["mean"] for ell, d in degs.items()},
        max_d={ell: d["max"] for ell, d in degs.items()},
        min_d={ell: d["min"] for ell, d in degs.items()},
        live_edges=snap["live_total"],
        stop_ok=None if verdict is None else verdict.ok,
        z=z,
    )


def run(
    state: ProcessState,
    max_steps: int | None = None,
    checkpoint_every: int = 1,
    params=None,
    monitor: bool = False,
    families: tuple[str, ...] | None = None,
    halt_on_violation: bool = False,
    z_diagnostics: bool = False,
    record_events: bool = False,
    on_checkpoint: Callable[[ProcessState], None] | None = None,
) -> RunTrace:
    """Step until termination or until ``max_steps`` further steps have been taken.

    With ``monitor=True`` the stopping conditions are evaluated at every
    checkpoint; the first failure is recorded and, if ``halt_on_violation``,
    ends the run.
    """
    if checkpoint_every < 1:
        raise ConfigurationError("checkpoint_every must be at least 1")
    if (monitor or z_diagnostics) and params is None:
        raise ConfigurationError("monitored runs need trajectory parameters")
    from . import trajectory as tj

    trace = RunTrace(seed=state.seed, r=state.width)
    start = state.i

    def take():
        verdict = z = None
        if monitor:
            verdict = tj.stop_check(params, state, families=families)
            if not verdict.ok and trace.stop_step is None:
                trace.stop_step = state.i
                trace.stop_witness = verdict.describe()
        if z_diagnostics:
            z = tj.z_diagnostics(params, state)
        trace.checkpoints.append(_checkpoint(state, params, verdict, z))
        if on_checkpoint is not None:
            on_checkpoint(state)
        return verdict

    verdict = take()
    while state.n_open > 0 and (max_steps is None or state.i - start < max_steps):
        if halt_on_violation and verdict is not None and not verdict.ok:
            break
        rec = step(state)
        if record_events:
            trace.events.append(rec)
        if (state.i - start) % checkpoint_every == 0 or state.n_open == 0:
            verdict = take()
    if trace.checkpoints[-1].i != state.i:
        take()
    trace.final_size = len(state.independent)
    trace.independent = list(state.independent)
    if state.n_open == 0:
        trace.terminal_size = len(state.independent)
    return trace
