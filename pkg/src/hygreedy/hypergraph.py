"""Static hypergraphs with exact degree, set-degree and codegree queries.

Edges are stored flat (CSR style) as sorted int32 vertex lists; uniform
hypergraphs additionally expose a 2-D ``(M, r)`` view.  All queries are exact
counts; subset lookups go through a sorted index of base-``n`` encoded keys.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

# encoded subset keys must stay below this to fit int64 arithmetic
_KEY_LIMIT = 2**62
# above this many vertex pairs codegree tallies switch from a dense bincount to np.unique
_DENSE_PAIR_LIMIT = 50_000_000


def _encode(rows: np.ndarray, n: int) -> np.ndarray:
    key = np.zeros(rows.shape[0], dtype=np.int64)
    for col in range(rows.shape[1]):
        key = key * n + rows[:, col].astype(np.int64)
    return key


def _keys_fit(n: int, s: int) -> bool:
    return max(n, 1) ** s < _KEY_LIMIT


class SubsetIndex:
    """Maps every ``s``-subset of every edge to the ids of the edges containing it.

    ``combos[j]`` is the position (in ``itertools.combinations(range(size), s)``
    order) of the subset inside its edge.  Falls back to a tuple-keyed dict when
    ``n**s`` does not fit into int64.
    """

    def __init__(self, hg: "Hypergraph", s: int):
        self.s = s
        self.n = hg.n
        self._dict: dict[tuple, list[int]] | None = None
        if not _keys_fit(hg.n, s):
            table: dict[tuple, list[int]] = defaultdict(list)
            for eid, e in enumerate(hg.edges):
                for sub in itertools.combinations(e, s):
                    table[sub].append(eid)
            self._dict = dict(table)
            return
        keys, ids, combos = [], [], []
        for size, eids in hg.size_classes():
            if size < s:
                continue
            rows = hg.rows_of(eids)
            for c, cols in enumerate(itertools.combinations(range(size), s)):
                keys.append(_encode(rows[:, list(cols)], hg.n))
                ids.append(eids)
                combos.append(np.full(len(eids), c, dtype=np.int16))
        if keys:
            allkeys = np.concatenate(keys)
            order = np.argsort(allkeys)
            self.keys = allkeys[order]
            self.edge_ids = np.concatenate(ids).astype(np.int32)[order]
            self.combos = np.concatenate(combos)[order]
        else:
            self.keys = np.zeros(0, dtype=np.int64)
            self.edge_ids = np.zeros(0, dtype=np.int32)
            self.combos = np.zeros(0, dtype=np.int16)

    def group_sizes(self) -> np.ndarray:
        """Multiplicity of every distinct covered subset."""
        if self._dict is not None:
            return np.array([len(v) for v in self._dict.values()], dtype=np.int64)
        if len(self.keys) == 0:
            return np.zeros(0, dtype=np.int64)
        _, counts = np.unique(self.keys, return_counts=True)
        return counts

    def groups(self):
        """Yield ``(group_len, positions)`` with positions of shape ``(G, group_len)``."""
        keys = self.keys
        if len(keys) == 0:
            return
        starts = np.flatnonzero(np.r_[True, keys[1:] != keys[:-1]])
        lens = np.diff(np.r_[starts, len(keys)])
        for g in np.unique(lens):
            sel = starts[lens == g]
            yield int(g), sel[:, None] + np.arange(g)

    def lookup(self, subsets: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(owner, edge_id)`` pairs: edge ``edge_id`` contains ``subsets[owner]``.

        ``subsets`` must be an ``(q, s)`` array of sorted vertex ids.
        """
        subsets = np.asarray(subsets)
        if len(subsets) == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        if self._dict is not None:
            owners, found = [], []
            for q, row in enumerate(map(tuple, subsets.tolist())):
                hits = self._dict.get(row, ())
                owners.extend([q] * len(hits))
                found.extend(hits)
            return np.asarray(owners, dtype=np.int64), np.asarray(found, dtype=np.int64)
        q = _encode(subsets, self.n)
        lo = np.searchsorted(self.keys, q, side="left")
        hi = np.searchsorted(self.keys, q, side="right")
        counts = hi - lo
        total = int(counts.sum())
        if total == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        owners = np.repeat(np.arange(len(q)), counts)
        offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        pos = np.repeat(lo, counts) + offsets
        return owners, self.edge_ids[pos].astype(np.int64)


class Hypergraph:
    """Immutable hypergraph on vertices ``0..n-1`` with pairwise distinct edges.

    ``edges`` may be an ``(M, r)`` integer array or any iterable of vertex
    sequences.  Each edge is stored sorted; repeated vertices, edges of size
    < 2, out-of-range ids and duplicate edges are rejected.
    """

    def __init__(self, n: int, edges, uniformity: int | None = None):
        n = int(n)
        if n < 0:
            raise InputError("vertex count must be nonnegative")
        self.n = n
        if isinstance(edges, np.ndarray) and edges.ndim == 2:
            arr = np.sort(edges.astype(np.int64, copy=False), axis=1)
            m, width = arr.shape
            sizes = np.full(m, width, dtype=np.int64)
            flat = arr.ravel()
            if m and width >= 2 and np.any(arr[:, 1:] == arr[:, :-1]):
                raise InputError("edge with a repeated vertex")
        else:
            rows = [sorted(int(x) for x in e) for e in edges]
            sizes = np.array([len(e) for e in rows], dtype=np.int64)
            flat = np.fromiter(itertools.chain.from_iterable(rows), dtype=np.int64, count=int(sizes.sum()))
            for e in rows:
                if any(a == b for a, b in zip(e, e[1:])):
                    raise InputError(f"edge {e} repeats a vertex")
        if len(sizes) and sizes.min() < 2:
            raise InputError("every edge needs at least 2 vertices")
        if len(flat) and (flat.min() < 0 or flat.max() >= n):
            raise InputError(f"vertex id out of range [0, {n})")
        if uniformity is not None:
            uniformity = int(uniformity)
            if len(sizes) and np.any(sizes != uniformity):
                raise InputError(f"declared uniformity {uniformity} but edge sizes differ")
        self.declared_uniformity = uniformity
        self._sizes = sizes
        self._ptr = np.zeros(len(sizes) + 1, dtype=np.int64)
        np.cumsum(sizes, out=self._ptr[1:])
        self._verts = flat.astype(np.int32)
        self._cache: dict = {}
        self._check_duplicates()

    # -- structure -----------------------------------------------------

    def _check_duplicates(self) -> None:
        for size, eids in self.size_classes():
            rows = self.rows_of(eids)
            if _keys_fit(self.n, size):
                keys = _encode(rows, self.n)
                if len(keys) > 1 and not np.all(keys[1:] > keys[:-1]):
                    if len(np.unique(keys)) != len(keys):
                        raise InputError("duplicate edge")
            elif len({tuple(r) for r in rows.tolist()}) != len(rows):
                raise InputError("duplicate edge")

    def __len__(self) -> int:
        return len(self._sizes)

    @property
    def num_edges(self) -> int:
        return len(self._sizes)

    @property
    def sizes(self) -> np.ndarray:
        return self._sizes

    @property
    def is_uniform(self) -> bool:
        return len(self._sizes) == 0 or bool(np.all(self._sizes == self._sizes[0]))

    @property
    def r(self) -> int | None:
        """Common edge size, or None for a non-uniform hypergraph."""
        if self.declared_uniformity is not None:
            return self.declared_uniformity
        if len(self._sizes) and self.is_uniform:
            return int(self._sizes[0])
        return None

    @property
    def max_edge_size(self) -> int:
        return int(self._sizes.max()) if len(self._sizes) else 0

    def edge(self, i: int) -> tuple[int, ...]:
        return tuple(self._verts[self._ptr[i]:self._ptr[i + 1]].tolist())

    @property
    def edges(self) -> list[tuple[int, ...]]:
        if "edges" not in self._cache:
            self._cache["edges"] = [self.edge(i) for i in range(len(self))]
        return self._cache["edges"]

    def __iter__(self):
        return iter(self.edges)

    def array(self) -> np.ndarray:
        """``(M, r)`` view of a uniform hypergraph."""
        r = self.r
        if r is None:
            raise InputError("hypergraph is not uniform")
        return self._verts.reshape(len(self), r)

    def padded(self) -> np.ndarray:
        """``(M, max size)`` array padded with the sentinel ``n``."""
        if "padded" not in self._cache:
            width = self.max_edge_size
            out = np.full((len(self), width), self.n, dtype=np.int32)
            for size, eids in self.size_classes():
                out[eids, :size] = self.rows_of(eids)
            self._cache["padded"] = out
        return self._cache["padded"]

    def size_classes(self) -> list[tuple[int, np.ndarray]]:
        if "classes" not in self._cache:
            if self.is_uniform and len(self):
                classes = [(int(self._sizes[0]), np.arange(len(self)))]
            else:
                classes = [(int(s), np.flatnonzero(self._sizes == s)) for s in np.unique(self._sizes)]
            self._cache["classes"] = classes
        return self._cache["classes"]

    def rows_of(self, eids: np.ndarray) -> np.ndarray:
        """Vertex rows of edges that all share one size."""
        if len(eids) == 0:
            return np.zeros((0, 0), dtype=np.int32)
        size = int(self._sizes[eids[0]])
        starts = self._ptr[eids]
        return self._verts[starts[:, None] + np.arange(size)]

    def _incidence(self) -> tuple[np.ndarray, np.ndarray]:
        if "incidence" not in self._cache:
            owner = np.repeat(np.arange(len(self), dtype=np.int32), self._sizes)
            order = np.argsort(self._verts, kind="stable")
            ptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(np.bincount(self._verts, minlength=self.n), out=ptr[1:])
            self._cache["incidence"] = (ptr, owner[order])
        return self._cache["incidence"]

    @property
    def vertex_ptr(self) -> np.ndarray:
        return self._incidence()[0]

    @property
    def vertex_edges(self) -> np.ndarray:
        return self._incidence()[1]

    def incident(self, v: int) -> np.ndarray:
        ptr, ids = self._incidence()
        return ids[ptr[v]:ptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.bincount(self._verts, minlength=self.n)

    def degree(self, v: int) -> int:
        ptr, _ = self._incidence()
        return int(ptr[v + 1] - ptr[v])

    def subset_index(self, s: int) -> SubsetIndex:
        key = ("subset", s)
        if key not in self._cache:
            self._cache[key] = SubsetIndex(self, s)
        return self._cache[key]

    def has_edge(self, vertices: Iterable[int]) -> bool:
        e = sorted(int(v) for v in vertices)
        if len(e) < 2:
            return False
        owners, ids = self.subset_index(len(e)).lookup(np.array([e]))
        return bool(np.any(self._sizes[ids] == len(e)))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={len(self)}, r={self.r})"


class LabeledFamily:
    """Edge list whose entries carry labels; distinct labels may share a vertex set."""

    def __init__(self, n: int, edges, labels: Sequence | None = None):
        self.n = int(n)
        if isinstance(edges, np.ndarray) and edges.ndim == 2:
            self._array = np.sort(edges.astype(np.int64, copy=False), axis=1)
            self._rows = None
            flat = self._array.ravel()
            if self._array.shape[1] >= 2 and np.any(self._array[:, 1:] == self._array[:, :-1]):
                raise InputError("labeled edge with a repeated vertex")
            m = len(self._array)
        else:
            rows = [tuple(sorted(int(x) for x in e)) for e in edges]
            for e in rows:
                if len(set(e)) != len(e):
                    raise InputError(f"labeled edge {e} repeats a vertex")
            sizes = {len(e) for e in rows}
            if len(sizes) == 1 and rows:
                self._array = np.array(rows, dtype=np.int64).reshape(len(rows), sizes.pop())
                self._rows = None
            else:
                self._array = None
                self._rows = rows
            flat = np.fromiter(itertools.chain.from_iterable(rows), dtype=np.int64)
            m = len(rows)
        if len(flat) and (flat.min() < 0 or flat.max() >= self.n):
            raise InputError(f"vertex id out of range [0, {self.n})")
        if labels is None:
            labels = list(range(m))
        if len(labels) != m:
            raise InputError("labels and edges differ in length")
        self.labels = labels

    def __len__(self) -> int:
        return len(self._array) if self._array is not None else len(self._rows)

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def uniformity(self) -> int | None:
        if self._array is not None:
            return self._array.shape[1]
        return None

    def array(self) -> np.ndarray:
        if self._array is None:
            raise InputError("labeled family is not uniform")
        return self._array

    @property
    def edges(self) -> list[tuple[int, ...]]:
        if self._rows is None:
            return [tuple(r) for r in self._array.tolist()]
        return self._rows

    def labeled_edges(self):
        return list(zip(self.labels, self.edges))

    def edge_sets(self) -> set[frozenset]:
        return {frozenset(e) for e in self.edges}

    def __repr__(self) -> str:
        return f"LabeledFamily(n={self.n}, m={len(self)}, s={self.uniformity})"


# -- queries --------------------------------------------------------------


def _check_vertices(H: Hypergraph, A: Iterable[int]) -> list[int]:
    A = sorted({int(v) for v in A})
    for v in A:
        if not 0 <= v < H.n:
            raise InputError(f"vertex {v} out of range [0, {H.n})")
    return A


def set_degree(H: Hypergraph, A: Iterable[int], b: int) -> int:
    """Number of edges of size ``b`` containing every vertex of ``A``."""
    A = _check_vertices(H, A)
    if not A:
        raise InputError("A must be nonempty")
    if b < len(A):
        return 0
    pivot = min(A, key=H.degree)
    inc = H.incident(pivot)
    inc = inc[H.sizes[inc] == b]
    if len(inc) == 0:
        return 0
    rows = H.padded()[inc]
    hit = np.ones(len(inc), dtype=bool)
    for v in A:
        hit &= np.any(rows == v, axis=1)
    return int(hit.sum())


def max_set_degree(H: Hypergraph, a: int) -> int:
    """Delta_a: largest number of edges sharing a common ``a``-set."""
    r = H.r
    if r is None:
        raise InputError("max_set_degree needs a uniform hypergraph")
    if not 2 <= a <= r - 1:
        raise InputError(f"a must lie in [2, {r - 1}]")
    counts = H.subset_index(a).group_sizes()
    return int(counts.max()) if len(counts) else 0


def codegree(H: Hypergraph, v: int, v2: int, a: int, a2: int, k: int) -> int:
    """Ordered pairs (e, e') with v in e\\e', v2 in e'\\e, |e|=a, |e'|=a2, |e & e'|=k."""
    _check_vertices(H, (v, v2))
    if v == v2:
        raise InputError("codegree needs two distinct vertices")
    if a < 2 or a2 < 2 or not 1 <= k < min(a, a2):
        raise InputError("need 2 <= a, a2 and 1 <= k < min(a, a2)")
    left = [set(H.edge(e)) for e in H.incident(v) if H.sizes[e] == a]
    right = [set(H.edge(e)) for e in H.incident(v2) if H.sizes[e] == a2]
    count = 0
    for e in left:
        if v2 in e:
            continue
        for f in right:
            if v not in f and len(e & f) == k:
                count += 1
    return count


def _tally_max(pair_keys: list[np.ndarray], n: int) -> int:
    if not pair_keys:
        return 0
    if n * n <= _DENSE_PAIR_LIMIT:
        counts = np.zeros(n * n, dtype=np.int64)
        for keys in pair_keys:
            counts += np.bincount(keys, minlength=n * n)
        return int(counts.max())
    _, c = np.unique(np.concatenate(pair_keys), return_counts=True)
    return int(c.max())


def _max_top_codegree(H: Hypergraph) -> int:
    r = H.r
    idx = H.subset_index(r - 1)
    if idx._dict is not None:
        tally: Counter = Counter()
        for members in idx._dict.values():
            for e, f in itertools.permutations(members, 2):
                (v,) = set(H.edge(e)) - set(H.edge(f))
                (w,) = set(H.edge(f)) - set(H.edge(e))
                tally[(v, w)] += 1
        return max(tally.values(), default=0)
    E = H.array()
    pair_keys = []
    for g, pos in idx.groups():
        if g < 2:
            continue
        eids = idx.edge_ids[pos]
        # combination c of range(r) with r-1 elements omits column r-1-c
        outside = E[eids, (r - 1) - idx.combos[pos]].astype(np.int64)
        for i, j in itertools.permutations(range(g), 2):
            pair_keys.append(outside[:, i] * H.n + outside[:, j])
    return _tally_max(pair_keys, H.n)


def max_r1_codegree(H: Hypergraph) -> int:
    """Gamma(H): maximum (r-1)-codegree over ordered pairs of distinct vertices."""
    r = H.r
    if r is None:
        raise InputError("max_r1_codegree needs a uniform hypergraph")
    if r < 3:
        raise InputError("the (r-1)-codegree is only defined here for r >= 3")
    return _max_top_codegree(H)


@dataclass
class ConditionReport:
    n: int
    r: int
    D: float
    regular: bool
    near_regular: bool
    degree_range: tuple[int, int]
    epsilon: float
    delta_values: dict[int, int]
    gamma: int
    degcond_satisfied: dict[int, bool]
    gamma_satisfied: bool
    density_ok: bool
    large_degree_ok: bool
    epsilon_sup: float

    @property
    def all_satisfied(self) -> bool:
        return (all(self.degcond_satisfied.values()) and self.gamma_satisfied
                and self.density_ok and self.large_degree_ok)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["degree_range"] = list(self.degree_range)
        out["delta_values"] = {str(k): v for k, v in self.delta_values.items()}
        out["degcond_satisfied"] = {str(k): v for k, v in self.degcond_satisfied.items()}
        out["all_satisfied"] = self.all_satisfied
        return out


def _epsilon_sup(N: int, r: int, D: float, deltas: dict[int, int], gamma: int) -> float:
    if D <= 1 or N <= 1:
        return 0.0
    logD = math.log(D)
    bounds = [math.log(D) / math.log(N), math.log(N) / logD - 1 / (r - 1)]
    for ell, value in deltas.items():
        if value > 0:
            bounds.append((r - ell) / (r - 1) - math.log(value) / logD)
    if gamma > 0:
        bounds.append(1 - math.log(gamma) / logD)
    return max(0.0, min(bounds))


def check_main_conditions(H: Hypergraph, epsilon: float) -> ConditionReport:
    """Evaluate the degree, codegree and density hypotheses of the lower-bound theorem."""
    r = H.r
    if r is None or len(H) == 0:
        raise InputError("check_main_conditions needs a nonempty uniform hypergraph")
    if epsilon <= 0:
        raise InputError("epsilon must be positive")
    degs = H.degrees()
    lo, hi = int(degs.min()), int(degs.max())
    regular = lo == hi
    D = float(hi) if regular else float(degs.mean())
    deltas = {ell: max_set_degree(H, ell) for ell in range(2, r)}
    gamma = _max_top_codegree(H) if r >= 2 else 0
    degcond = {ell: deltas[ell] < D ** ((r - ell) / (r - 1) - epsilon) for ell in deltas}
    return ConditionReport(
        n=H.n,
        r=r,
        D=D,
        regular=regular,
        near_regular=not regular,
        degree_range=(lo, hi),
        epsilon=epsilon,
        delta_values=deltas,
        gamma=gamma,
        degcond_satisfied=degcond,
        gamma_satisfied=gamma < D ** (1 - epsilon),
        density_ok=H.n >= D ** (1 / (r - 1) + epsilon),
        large_degree_ok=D > H.n ** epsilon,
        epsilon_sup=_epsilon_sup(H.n, r, D, deltas, gamma),
    )


def shadow(F: Hypergraph | LabeledFamily, x: int) -> LabeledFamily:
    """All ``x``-subsets of edges of ``F``, one labeled edge per (parent label, subset)."""
    x = int(x)
    if x < 1:
        raise InputError("shadow level must be at least 1")
    if isinstance(F, Hypergraph):
        labels = list(range(len(F)))
        top = F.max_edge_size
    else:
        labels = list(F.labels)
        top = max((len(e) for e in F.edges), default=0)
    if x > top:
        raise InputError(f"shadow level {x} exceeds the largest edge size {top}")
    edges, out_labels = [], []
    for label, e in zip(labels, F.edges):
        for sub in itertools.combinations(e, x):
            edges.append(sub)
            out_labels.append((label, sub))
    if not edges:
        return LabeledFamily(F.n, np.zeros((0, x), dtype=np.int64), [])
    return LabeledFamily(F.n, np.array(edges, dtype=np.int64), out_labels)


# -- file formats ---------------------------------------------------------


def format_hypergraph(H: Hypergraph) -> str:
    r = H.r if (H.r is not None and (len(H) or H.declared_uniformity)) else 0
    lines = [f"hg1 {H.n} {len(H)} {r}"]
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        r = doc.get("uniformity") or None
        return Hypergraph(doc["n"], [list(e) for e in doc["edges"]], r)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty hypergraph file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "hg1":
        raise InputError("hypergraph header must read 'hg1 <N> <M> <r|0>'")
    n, m, r = (int(x) for x in head[1:])
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for ln in body:
        e = [int(x) for x in ln.split()]
        if any(b <= a for a, b in zip(e, e[1:])):
            raise InputError(f"edge line not strictly increasing: {ln!r}")
        edges.append(e)
    return Hypergraph(n, edges, r or None)


def hypergraph_to_json(H: Hypergraph) -> str:
    return json.dumps({"n": H.n, "uniformity": H.r or 0, "edges": [list(e) for e in H.edges]})


def read_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def write_hypergraph(H: Hypergraph, path: str | Path) -> None:
    Path(path).write_text(format_hypergraph(H))


def format_family(F: LabeledFamily) -> str:
    """``lf1 <N> <M> <s|0>`` header, then ``label : v1 v2 ...`` per labeled edge."""
    s = F.uniformity or 0
    lines = [f"lf1 {F.n} {len(F)} {s}"]
    for label, e in zip(F.labels, F.edges):
        if isinstance(label, (tuple, list, np.ndarray)):
            label = ",".join(str(int(x)) if not isinstance(x, tuple) else "/".join(map(str, x)) for x in label)
        lines.append(f"{label} : {' '.join(map(str, e))}")
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> LabeledFamily:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split() if lines else []
    if head and head[0] == "hg1":
        H = parse_hypergraph(text)
        return LabeledFamily(H.n, H.edges if len(H) else np.zeros((0, 2), dtype=np.int64))
    if len(head) != 4 or head[0] != "lf1":
        raise InputError("family header must read 'lf1 <N> <M> <s|0>' (or an hg1 hypergraph)")
    n, m = int(head[1]), int(head[2])
    labels, edges = [], []
    for ln in lines[1:]:
        label, _, verts = ln.partition(":")
        labels.append(label.strip())
        edges.append([int(x) for x in verts.split()])
    if len(edges) != m:
        raise InputError(f"header announces {m} labeled edges, found {len(edges)}")
    return LabeledFamily(n, edges, labels)


def read_family(path: str | Path) -> LabeledFamily:
    return parse_family(Path(path).read_text())


def write_family(F: LabeledFamily, path: str | Path) -> None:
    Path(path).write_text(format_family(F))


def read_vertex_set(path: str | Path) -> list[int]:
    return [int(ln) for ln in Path(path).read_text().split()]


def write_vertex_set(vertices: Iterable[int], path: str | Path) -> None:
    Path(path).write_text("".join(f"{int(v)}\n" for v in vertices))
