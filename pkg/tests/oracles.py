"""Slow, obviously-correct reference computations used to check the fast code paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def brute_max_set_degree(n, edges, a):
    edges = [frozenset(e) for e in edges]
    best = 0
    for A in itertools.combinations(range(n), a):
        A = set(A)
        best = max(best, sum(1 for e in edges if A <= e))
    return best


def brute_codegree(edges, v, v2, a, a2, k):
    edges = [frozenset(e) for e in edges]
    total = 0
    for e in edges:
        for f in edges:
            if (v in e and v not in f and v2 in f and v2 not in e
                    and len(e) == a and len(f) == a2 and len(e & f) == k):
                total += 1
    return total


def brute_gamma(n, edges, r):
    return max((brute_codegree(edges, v, w, r, r, r - 1)
                for v in range(n) for w in range(n) if v != w), default=0)


def brute_k_aps(N, k):
    found = set()
    for a in range(N):
        for d in range(1, N):
            found.add(frozenset((a + j * d) % N for j in range(k)))
    return found


def brute_template_copies(t_edges, v, n, k=2):
    """Edge sets (as frozensets of k-sets) of all copies of the template in K_n^(k)."""
    copies = set()
    for image in itertools.permutations(range(n), v):
        copies.add(frozenset(frozenset(image[x] for x in e) for e in t_edges))
    return copies


def open_and_live(n, edges, I):
    """Open vertices and minimal live residuals after inserting I, straight from the definitions."""
    I = set(I)
    blocked = {w for w in range(n) if w not in I
               and any(w in e and set(e) - {w} <= I for e in edges)}
    opened = set(range(n)) - I - blocked
    residuals = set()
    for e in edges:
        rest = frozenset(e) - I
        if len(rest) >= 2 and rest <= opened:
            residuals.add(rest)
    live = {e for e in residuals if not any(f < e for f in residuals)}
    return opened, live


def gowers_brute(I, N, d):
    # exact rationals: for d = 1 the sum cancels to 0 and the root would magnify float noise
    I = set(I)
    f = [(Fraction(N, len(I)) if x in I else 0) - 1 for x in range(N)]
    total = Fraction(0)
    for x in range(N):
        for h in itertools.product(range(N), repeat=d):
            prod = Fraction(1)
            for w in itertools.product((0, 1), repeat=d):
                prod *= f[(x + sum(a * b for a, b in zip(w, h))) % N]
            total += prod
    return float(abs(total / N ** (d + 1))) ** (1 / 2**d)


def trapezoid(f, a, b, steps):
    h = (b - a) / steps
    return h * (0.5 * f(a) + sum(f(a + j * h) for j in range(1, steps)) + 0.5 * f(b))


def comb(n, k):
    return math.comb(n, k)
