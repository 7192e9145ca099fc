"""Constructors for the hypergraph families the process is run on or counted against."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError
from .hypergraph import Hypergraph, LabeledFamily, _encode, _keys_fit

__all__ = [
    "LabeledFamily",
    "Template",
    "TEMPLATES",
    "template_copies",
    "k_ap",
    "sum_free",
    "d_cube",
    "random_uniform",
    "triangle_process",
    "is_prime",
    "colex_rank",
]


@dataclass(frozen=True)
class Template:
    """A small k-uniform (hyper)graph on vertices ``0..v-1``; graphs have ``k = 2``."""

    v: int
    edges: tuple[tuple[int, ...], ...]
    k: int = 2
    name: str = ""

    def __post_init__(self):
        edges = tuple(sorted({tuple(sorted(e)) for e in self.edges}))
        if len(edges) != len(self.edges):
            raise InputError("template has repeated edges")
        for e in edges:
            if len(e) != self.k or len(set(e)) != self.k:
                raise InputError(f"template edge {e} is not a {self.k}-set")
            if min(e) < 0 or max(e) >= self.v:
                raise InputError(f"template edge {e} leaves [0, {self.v})")
        object.__setattr__(self, "edges", edges)

    @property
    def e(self) -> int:
        return len(self.edges)

    def induced_edges(self, W) -> int:
        W = set(W)
        return sum(1 for e in self.edges if W.issuperset(e))

    @classmethod
    def parse(cls, text: str, name: str = "") -> "Template":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split() if lines else []
        if len(head) != 4 or head[0] != "tmpl":
            raise InputError("template header must read 'tmpl <v> <e> <k>'")
        v, e, k = (int(x) for x in head[1:])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
        if len(edges) != e:
            raise InputError(f"template header announces {e} edges, found {len(edges)}")
        return cls(v, tuple(edges), k, name)

    @classmethod
    def read(cls, path: str | Path) -> "Template":
        return cls.parse(Path(path).read_text(), Path(path).stem)

    def format(self) -> str:
        body = "\n".join(" ".join(map(str, e)) for e in self.edges)
        return f"tmpl {self.v} {self.e} {self.k}\n{body}\n"


def _complete(v: int, k: int = 2) -> tuple:
    return tuple(itertools.combinations(range(v), k))


def _cycle(v: int) -> tuple:
    return tuple((i, (i + 1) % v) for i in range(v))


TEMPLATES: dict[str, Template] = {
    "K3": Template(3, _complete(3), 2, "K3"),
    "K4": Template(4, _complete(4), 2, "K4"),
    "K5": Template(5, _complete(5), 2, "K5"),
    "C4": Template(4, _cycle(4), 2, "C4"),
    "C5": Template(5, _cycle(5), 2, "C5"),
    "C6": Template(6, _cycle(6), 2, "C6"),
    "diamond": Template(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3)), 2, "diamond"),
    "cherry": Template(3, ((0, 1), (0, 2)), 2, "cherry"),
    "K4_3": Template(4, _complete(4, 3), 3, "K4_3"),
    # complete 3-partite 3-uniform hypergraph with parts {0,1}, {2,3}, {4,5}
    "K222_3": Template(6, tuple(itertools.product((0, 1), (2, 3), (4, 5))), 3, "K222_3"),
}


def colex_rank(subsets: np.ndarray) -> np.ndarray:
    """Colexicographic rank of sorted k-subsets (rows) of the nonnegative integers."""
    subsets = np.asarray(subsets, dtype=np.int64)
    rank = np.zeros(len(subsets), dtype=np.int64)
    for i in range(subsets.shape[1]):
        c = subsets[:, i]
        # C(c, i+1) computed exactly in int64 for the small sizes used here
        term = np.ones_like(c)
        for j in range(i + 1):
            term = term * (c - j) // (j + 1)
        rank += np.where(c >= i + 1, term, 0)
    return rank


def _distinct_images(t: Template) -> list[tuple[tuple[int, ...], ...]]:
    """One labelled copy of ``t`` on ``range(t.v)`` per coset of its automorphism group."""
    seen = {}
    for perm in itertools.permutations(range(t.v)):
        image = tuple(sorted(tuple(sorted(perm[x] for x in e)) for e in t.edges))
        seen.setdefault(image, None)
    return list(seen)


def template_copies(template: Template, n: int) -> Hypergraph:
    """Hypergraph whose vertices are the k-subsets of [n] (colex ranks) and edges are copies of ``template``."""
    t = template
    if t.e < 2:
        raise InputError("template needs at least 2 edges")
    if n < t.v:
        raise InputError(f"n = {n} is smaller than the template's {t.v} vertices")
    N = math.comb(n, t.k)
    spots = np.array(list(itertools.combinations(range(n), t.v)), dtype=np.int64)
    blocks = []
    for image in _distinct_images(t):
        cols = [colex_rank(spots[:, list(e)]) for e in image]
        blocks.append(np.sort(np.stack(cols, axis=1), axis=1))
    edges = np.concatenate(blocks)
    used = {x for e in t.edges for x in e}
    if len(used) < t.v:
        # isolated template vertices: distinct spots can yield the same copy
        if _keys_fit(N, t.e):
            _, keep = np.unique(_encode(edges, N), return_index=True)
            edges = edges[np.sort(keep)]
        else:
            edges = np.array(sorted({tuple(e) for e in edges.tolist()}), dtype=np.int64)
    return Hypergraph(N, edges, uniformity=t.e)


def triangle_process(n: int) -> Hypergraph:
    return template_copies(TEMPLATES["K3"], n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % p for p in range(3, math.isqrt(n) + 1, 2))


def k_ap(N: int, k: int, multiplicity: bool = False) -> Hypergraph | LabeledFamily:
    """All k-term arithmetic progressions of Z_N as a k-uniform hypergraph.

    With ``multiplicity=True`` every (start, difference) pair with nonzero
    difference becomes its own labeled edge instead.
    """
    if not is_prime(N):
        raise InputError(f"N = {N} is not prime")
    if not 3 <= k < N:
        raise InputError("need N > k >= 3")
    steps = np.arange(k, dtype=np.int64)
    if multiplicity:
        a, d = np.meshgrid(np.arange(N), np.arange(1, N), indexing="ij")
        a, d = a.ravel(), d.ravel()
        rows = (a[:, None] + d[:, None] * steps) % N
        return LabeledFamily(N, rows, np.stack([a, d], axis=1))
    # (a, d) and (a + (k-1)d, -d) give the same set, so half the differences suffice
    a, d = np.meshgrid(np.arange(N, dtype=np.int64), np.arange(1, (N - 1) // 2 + 1, dtype=np.int64), indexing="ij")
    rows = np.sort((a.ravel()[:, None] + d.ravel()[:, None] * steps) % N, axis=1)
    del a, d
    if _keys_fit(N, k):
        keys = np.unique(_encode(rows, N))
        out = np.empty((len(keys), k), dtype=np.int64)
        for col in range(k - 1, -1, -1):
            out[:, col] = keys % N
            keys //= N
    else:
        out = np.unique(rows, axis=0)
    return Hypergraph(N, out, uniformity=k)


def sum_free(n: int) -> Hypergraph:
    """3-sets {a, b, c} of distinct residues mod n with a + b = c for some labelling."""
    if n < 5:
        raise InputError("sum_free needs n >= 5")
    found = set()
    for a in range(n):
        for b in range(a + 1, n):
            c = (a + b) % n
            if c != a and c != b:
                found.add(tuple(sorted((a, b, c))))
    return Hypergraph(n, sorted(found), uniformity=3)


def _omega(d: int, values) -> np.ndarray:
    return np.array(list(itertools.product(values, repeat=d)), dtype=np.int64)


def no_coincidence_mask(h: np.ndarray, N: int) -> np.ndarray:
    """True for rows h of Z_N^d whose 3^d signed sums over {-1,0,1}^d are distinct."""
    h = np.atleast_2d(h)
    vals = np.sort((h @ _omega(h.shape[1], (-1, 0, 1)).T) % N, axis=1)
    return np.all(vals[:, 1:] != vals[:, :-1], axis=1)


def d_cube(N: int, d: int) -> LabeledFamily:
    """Labeled d-cubes {x + w.h : w in {0,1}^d} over every x and every coincidence-free h."""
    if not is_prime(N):
        raise InputError(f"N = {N} is not prime")
    if d < 1:
        raise InputError("d must be at least 1")
    if 3**d > N:
        raise InputError(f"3^{d} = {3**d} > N = {N}: no h in Z_N^{d} can avoid coincidences")
    H = _omega(d, (0, 1)) if d else None
    hs = np.array(list(itertools.product(range(N), repeat=d)), dtype=np.int64)
    hs = hs[no_coincidence_mask(hs, N)]
    offsets = (hs @ H.T) % N  # (numh, 2^d)
    x = np.arange(N, dtype=np.int64)
    edges = (x[:, None, None] + offsets[None, :, :]) % N  # (N, numh, 2^d)
    edges = np.sort(edges.reshape(-1, 2**d), axis=1)
    labels = np.concatenate(
        [np.repeat(x, len(hs))[:, None], np.tile(hs, (N, 1))], axis=1
    )
    return LabeledFamily(N, edges, labels)


def random_uniform(N: int, r: int, M: int, seed: int) -> Hypergraph:
    """``M`` distinct uniformly random ``r``-subsets of ``range(N)``."""
    total = math.comb(N, r)
    if r < 2 or M < 0 or M > total:
        raise InputError(f"cannot draw {M} distinct {r}-subsets of {N} vertices")
    rng = np.random.default_rng(seed)
    if 2 * M >= total:
        every = list(itertools.combinations(range(N), r))
        pick = np.sort(rng.choice(total, size=M, replace=False))
        return Hypergraph(N, [every[i] for i in pick], uniformity=r)
    chosen: set[tuple[int, ...]] = set()
    order = []
    while len(chosen) < M:
        e = tuple(sorted(rng.choice(N, size=r, replace=False).tolist()))
        if e not in chosen:
            chosen.add(e)
            order.append(e)
    return Hypergraph(N, order, uniformity=r)
