"""Statistics of the sets the process produces, and combinatorial facts about templates."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import HypothesisError, InputError, ResourceError
from .generators import Template
from .hypergraph import Hypergraph, LabeledFamily

GOWERS_BUDGET = 2**32


def _as_set(I: Iterable[int], N: int) -> np.ndarray:
    I = np.unique(np.asarray(list(I), dtype=np.int64))
    if len(I) and (I[0] < 0 or I[-1] >= N):
        raise InputError(f"set elements must lie in [0, {N})")
    return I


def gowers_norm(I: Iterable[int], N: int, d: int, budget: int = GOWERS_BUDGET) -> float:
    """``U^d`` norm of ``(N/|I|) 1_I - 1`` on Z_N, summed directly over all (x, h).

    Each cube term is ``a^m (-1)^(2^d - m)`` where ``m`` is the number of cube
    points in I and ``a = N/|I| - 1``, so the sum is tallied as an integer
    histogram of ``m`` and combined exactly in rational arithmetic.
    """
    if N < 1 or d < 1:
        raise InputError("need N >= 1 and d >= 1")
    I = _as_set(I, N)
    if len(I) == 0:
        raise InputError("the balanced indicator of an empty set is undefined")
    work = N ** (d + 1) * 2**d
    if work > budget:
        raise ResourceError(f"N^(d+1) 2^d = {work} exceeds the budget {budget}")
    member = np.zeros(N, dtype=np.int64)
    member[I] = 1
    x = np.arange(N, dtype=np.int64)[:, None]
    last = np.arange(N, dtype=np.int64)[None, :]
    corners = np.array(list(itertools.product((0, 1), repeat=d - 1)), dtype=np.int64).reshape(2 ** (d - 1), d - 1)
    hist = np.zeros(2**d + 1, dtype=np.int64)
    for head in itertools.product(range(N), repeat=d - 1):
        offsets = (corners @ np.array(head, dtype=np.int64).reshape(d - 1)) % N
        m = np.zeros((N, N), dtype=np.int64)
        for o in offsets.tolist():
            base = (x + o) % N
            m += member[base]
            m += member[(base + last) % N]
        hist += np.bincount(m.ravel(), minlength=2**d + 1)
    a = Fraction(N, len(I)) - 1
    top = 2**d
    total = sum(int(c) * a**m * (-1) ** (top - m) for m, c in enumerate(hist.tolist()) if c)
    mean = abs(Fraction(total) / N ** (d + 1))
    return float(mean) ** (1.0 / top)


@dataclass
class Profile:
    counts: np.ndarray
    prediction: np.ndarray
    p: float

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _family_rows(F: Hypergraph | LabeledFamily) -> list[np.ndarray]:
    arr = F.array() if (isinstance(F, Hypergraph) and F.is_uniform) or (
        isinstance(F, LabeledFamily) and F.uniformity is not None) else None
    if arr is not None:
        return [arr]
    return [np.array(e, dtype=np.int64)[None, :] for e in F.edges]


def intersection_profile(F: Hypergraph | LabeledFamily, I: Iterable[int], d: int | None = None) -> Profile:
    """Histogram of labeled edges by ``|e & I|`` and its prediction ``scale * C(s, x) * p^x``.

    ``scale`` is ``N^(d+1)`` when ``d`` is given (the d-cube normalisation) and ``|F|`` otherwise.
    """
    N = F.n
    I = _as_set(I, N)
    member = np.zeros(N, dtype=np.int64)
    member[I] = 1
    width = max((len(e) for e in F.edges), default=0)
    counts = np.zeros(width + 1, dtype=np.int64)
    for rows in _family_rows(F):
        counts += np.bincount(member[rows].sum(axis=1), minlength=width + 1)
    p = len(I) / N
    scale = N ** (d + 1) if d is not None else len(F)
    prediction = np.array([scale * math.comb(width, x) * p**x for x in range(width + 1)], dtype=float)
    return Profile(counts, prediction, p)


def max_a_degree(G: Hypergraph | LabeledFamily, a: int) -> int:
    """Largest number of (labeled) edges of G sharing a common a-set."""
    best = 0
    for rows in _family_rows(G):
        s = rows.shape[1]
        if a > s:
            continue
        subs = np.concatenate([rows[:, list(c)] for c in itertools.combinations(range(s), a)])
        _, counts = np.unique(subs, axis=0, return_counts=True)
        best = max(best, int(counts.max()))
    return best


@dataclass
class CountResult:
    count: int
    size: int
    s: int
    p: float
    prediction: float
    max_degrees: dict[int, int] = field(default_factory=dict)
    degree_ratios: dict[int, float] = field(default_factory=dict)
    growth_ok: bool = True

    @property
    def ratio(self) -> float:
        return self.count / self.prediction if self.prediction else math.nan

    def to_dict(self) -> dict:
        return {
            "count": self.count, "size": self.size, "s": self.s, "p": self.p,
            "prediction": self.prediction, "ratio": self.ratio,
            "max_degrees": {str(k): v for k, v in self.max_degrees.items()},
            "degree_ratios": {str(k): v for k, v in self.degree_ratios.items()},
            "growth_ok": self.growth_ok,
        }


def family_uniformity(G: Hypergraph | LabeledFamily) -> int:
    s = G.r if isinstance(G, Hypergraph) else G.uniformity
    if s is None:
        raise InputError("the counting family must be uniform")
    return s


def count_contained(G: Hypergraph | LabeledFamily, I: Iterable[int], p: float | None = None,
                    degrees: bool = True, growth_threshold: float = 10.0) -> CountResult:
    """Number of (labeled) edges of G inside I, with the prediction ``|G| p^s``."""
    s = family_uniformity(G)
    I = _as_set(I, G.n)
    member = np.zeros(G.n, dtype=bool)
    member[I] = True
    rows = G.array()
    count = int(np.all(member[rows], axis=1).sum()) if len(rows) else 0
    p = len(I) / G.n if p is None else float(p)
    pred = len(G) * p**s
    out = CountResult(count, len(G), s, p, pred, growth_ok=pred >= growth_threshold)
    if degrees:
        for a in range(1, s):
            top = max_a_degree(G, a)
            out.max_degrees[a] = top
            denom = p**a * len(G)
            out.degree_ratios[a] = top / denom if denom else math.inf
    return out


def edges_containing_host_edge(G: Hypergraph | LabeledFamily, H: Hypergraph) -> list[tuple[int, ...]]:
    """Edges of G that contain some edge of H (these break the counting hypothesis)."""
    host = {frozenset(e) for e in H.edges}
    sizes = sorted({len(e) for e in host})
    bad = []
    for e in G.edges:
        if any(frozenset(c) in host for k in sizes if k <= len(e) for c in itertools.combinations(e, k)):
            bad.append(tuple(e))
    return bad


@dataclass
class Frequency:
    hits: int
    runs: int
    prediction: float

    @property
    def frequency(self) -> float:
        return self.hits / self.runs

    @property
    def stderr(self) -> float:
        f = self.frequency
        return math.sqrt(f * (1 - f) / self.runs)


def containment_frequency(H: Hypergraph, S: Iterable[int], j: int, runs: int, seed: int = 0) -> Frequency:
    """Fraction of runs (seeds ``seed + k``) whose first ``j`` chosen vertices include all of S."""
    from .process import init, step

    S = {int(v) for v in S}
    if any(not 0 <= v < H.n for v in S):
        raise InputError("S leaves the vertex range")
    if any(S.issuperset(e) for e in H.edges):
        raise InputError("S contains an edge")
    if not 0 <= j <= H.n:
        raise InputError("need 0 <= j <= N")
    if runs < 1:
        raise InputError("runs must be positive")
    hits = 0
    for k in range(runs):
        state = init(H, seed + k)
        while state.i < j and state.n_open:
            step(state)
        hits += S.issubset(state.independent)
    return Frequency(hits, runs, (j / H.n) ** len(S))


# -- templates --------------------------------------------------------------


@dataclass
class BalanceVerdict:
    template: str
    k: int
    v_H: int
    e_H: int
    strictly_balanced: bool
    witness: tuple[int, ...] | None
    density_ratio: Fraction

    def to_dict(self) -> dict:
        return {
            "template": self.template, "k": self.k, "v_H": self.v_H, "e_H": self.e_H,
            "strictly_balanced": self.strictly_balanced,
            "witness": list(self.witness) if self.witness else None,
            "density_ratio": str(self.density_ratio),
        }


def balance_check(t: Template) -> BalanceVerdict:
    """Strict k-balance: every proper W with |W| > k has ``(e_W - 1)/(|W| - k)`` below the whole ratio."""
    if t.v <= t.k:
        raise InputError("strict balance needs more vertices than the edge size")
    if t.e < 2:
        raise InputError("strict balance needs at least two edges")
    whole = Fraction(t.e - 1, t.v - t.k)
    worst, witness = None, None
    for size in range(t.k + 1, t.v):
        for W in itertools.combinations(range(t.v), size):
            ratio = Fraction(t.induced_edges(W) - 1, size - t.k)
            if ratio >= whole and (worst is None or ratio > worst):
                worst, witness = ratio, W
    return BalanceVerdict(t.name, t.k, t.v, t.e, witness is None, witness, whole)


def min_span(t: Template, a: int) -> int:
    if not 1 <= a <= t.e:
        raise InputError(f"a must lie in [1, {t.e}]")
    return min(len(set().union(*combo)) for combo in itertools.combinations(t.edges, a))


def turan_exponent(t: Template, check: bool = True) -> tuple[Fraction, Fraction]:
    """Exponents (of n and of log n) in the Turán lower bound for a strictly balanced template."""
    if check and not balance_check(t).strictly_balanced:
        raise HypothesisError(f"template {t.name or '?'} is not strictly {t.k}-balanced")
    if t.v <= t.k or t.e < 2:
        raise InputError("need v_H > k and e_H >= 2")
    return Fraction(t.k) - Fraction(t.v - t.k, t.e - 1), Fraction(1, t.e - 1)


@dataclass
class DegcondRow:
    a: int
    v_a: int
    lhs: Fraction
    rhs: Fraction
    holds: bool
    codegree_exponent: int
    degree_exponent: Fraction


def degcond_predictor(t: Template) -> tuple[bool, list[DegcondRow]]:
    """Compare ``Delta_a`` of the copy hypergraph with ``D^((e-a)/(e-1))`` as powers of n."""
    rows = []
    for a in range(2, t.e):
        v_a = min_span(t, a)
        lhs = Fraction(v_a - t.k, t.v - t.k)
        rhs = Fraction(a - 1, t.e - 1)
        rows.append(DegcondRow(
            a, v_a, lhs, rhs, lhs > rhs, t.v - v_a, Fraction((t.v - t.k) * (t.e - a), t.e - 1)))
    return all(r.holds for r in rows), rows
