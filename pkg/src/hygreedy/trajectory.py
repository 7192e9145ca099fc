"""Predicted trajectories, error bands, crude thresholds and stopping-condition monitors.

Time is scaled as ``t = i * D^{1/(r-1)} / N`` and ``q(t) = exp(-t^{r-1})`` is the
predicted fraction of open vertices.  Logarithms are natural.
"""

from __future__ import annotations

import functools
import json
import math
import warnings
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np
from scipy import integrate

from .errors import ConfigurationError, InputError, ResourceError

Number = float | Fraction


@dataclass(frozen=True)
class TrajectoryParams:
    r: int
    n: int
    d: float
    epsilon: float
    delta: float
    zeta: float
    alpha: float = 0.0
    beta: float = 0.0
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.r < 3:
            raise ConfigurationError("trajectories are defined for r >= 3")
        if self.n < 2 or self.d <= 0:
            raise ConfigurationError("need n >= 2 and d > 0")
        if min(self.epsilon, self.delta, self.zeta) <= 0:
            raise ConfigurationError("epsilon, delta and zeta must be positive")
        if not self.ordering_ok:
            msg = (f"constants out of order: need zeta <= delta/10 <= epsilon/100, "
                   f"got zeta={self.zeta}, delta={self.delta}, epsilon={self.epsilon}")
            if self.strict:
                raise ConfigurationError(msg)
            warnings.warn(msg, stacklevel=3)

    @property
    def ordering_ok(self) -> bool:
        tol = 1e-12
        return self.zeta <= self.delta / 10 * (1 + tol) and self.delta / 10 <= self.epsilon / 100 * (1 + tol)

    @property
    def lam(self) -> float:
        return self.epsilon / (4 * self.r)

    @property
    def time_scale(self) -> float:
        return self.d ** (1 / (self.r - 1)) / self.n

    @property
    def i_max_real(self) -> float:
        return self.zeta * self.n * self.d ** (-1 / (self.r - 1)) * math.log(self.n) ** (1 / (self.r - 1))

    @property
    def i_max(self) -> int:
        return math.floor(self.i_max_real)

    @property
    def t_max(self) -> float:
        return self.zeta * math.log(self.n) ** (1 / (self.r - 1))

    def with_(self, **changes) -> "TrajectoryParams":
        # an out-of-order copy of out-of-order params was already warned about
        with warnings.catch_warnings():
            if not self.ordering_ok:
                warnings.simplefilter("ignore")
            return replace(self, **changes)

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("strict")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict, strict: bool = True) -> "TrajectoryParams":
        keys = ("r", "n", "d", "epsilon", "delta", "zeta", "alpha", "beta")
        missing = [k for k in keys[:6] if k not in data]
        if missing:
            raise ConfigurationError(f"params missing {missing}")
        return cls(
            r=int(data["r"]), n=int(data["n"]), d=float(data["d"]),
            epsilon=float(data["epsilon"]), delta=float(data["delta"]), zeta=float(data["zeta"]),
            alpha=float(data.get("alpha", 0.0)), beta=float(data.get("beta", 0.0)),
            strict=strict,
        )

    @classmethod
    def from_json(cls, text: str, strict: bool = True) -> "TrajectoryParams":
        return cls.from_dict(json.loads(text), strict)


# -- trajectories -----------------------------------------------------------


def scaled_time(p: TrajectoryParams, i):
    if np.any(np.asarray(i) < 0):
        raise InputError("step must be nonnegative")
    return i * p.time_scale


def q_of(p: TrajectoryParams, t):
    return np.exp(-np.power(t, p.r - 1))


def _check_ell(p: TrajectoryParams, ell: int, lo: int = 2, hi: int | None = None) -> None:
    hi = p.r if hi is None else hi
    if not lo <= ell <= hi:
        raise InputError(f"degree index {ell} outside [{lo}, {hi}]")


def s_of(p: TrajectoryParams, ell: int, t):
    """Predicted number of live ``ell``-edges at an open vertex."""
    _check_ell(p, ell)
    r = p.r
    return (math.comb(r - 1, ell - 1) * p.d ** ((ell - 1) / (r - 1))
            * np.power(t, r - ell) * q_of(p, t) ** (ell - 1))


def s_prime(p: TrajectoryParams, ell: int, t):
    """Right side of the degree ODE, ``D^{-1/(r-1)} (l s_{l+1} - (l-1) s_l s_2) / q``."""
    _check_ell(p, ell)
    up = ell * s_of(p, ell + 1, t) if ell < p.r else 0.0
    down = (ell - 1) * s_of(p, ell, t) * s_of(p, 2, t)
    return p.d ** (-1 / (p.r - 1)) * (up - down) / q_of(p, t)


def _integrand(p: TrajectoryParams, ell: int, sign: str):
    scale = p.d ** (-1 / (p.r - 1))
    if sign == "+":
        return lambda tau: scale * ell * s_of(p, ell + 1, tau) / q_of(p, tau)
    return lambda tau: scale * (ell - 1) * s_of(p, ell, tau) * s_of(p, 2, tau) / q_of(p, tau)


def _check_sign(p: TrajectoryParams, ell: int, sign: str) -> None:
    if sign == "+":
        _check_ell(p, ell, 2, p.r - 1)
    elif sign == "-":
        _check_ell(p, ell, 2, p.r)
    else:
        raise InputError(f"sign must be '+' or '-', not {sign!r}")


@functools.lru_cache(maxsize=4096)
def _s_pm_scalar(p: TrajectoryParams, ell: int, t: float, sign: str) -> float:
    if t == 0:
        return 0.0
    value, _ = integrate.quad(_integrand(p, ell, sign), 0.0, t, epsabs=0.0, epsrel=1e-11, limit=200)
    return float(value)


def s_pm_of(p: TrajectoryParams, ell: int, t, sign: str):
    """Cumulative predicted created (``'+'``) or destroyed (``'-'``) ``ell``-degree at time ``t``."""
    _check_sign(p, ell, sign)
    if np.ndim(t) == 0:
        return _s_pm_scalar(p, ell, float(t), sign)
    return np.array([_s_pm_scalar(p, ell, float(x), sign) for x in np.ravel(t)]).reshape(np.shape(t))


# -- error functions ------------------------------------------------------


def _f_parts(p: TrajectoryParams, which, t, scaled: bool) -> tuple:
    r = p.r
    if which == "v":
        m, j = 2, 2
    else:
        ell = int(which)
        _check_ell(p, ell)
        m, j = r - ell + 2, ell
    t = np.asarray(t, dtype=float)
    # q^j folds into the exponential: f = (1 + t^m) exp(alpha t + (beta - j) t^{r-1})
    poly = 1 + t**m
    dpoly = m * t ** (m - 1)
    expo = -j * t ** (r - 1) if scaled else p.alpha * t + (p.beta - j) * t ** (r - 1)
    g = np.exp(expo)
    dg = g * (p.alpha + (p.beta - j) * (r - 1) * t ** (r - 2))
    return poly * g, dpoly * g + poly * dg


def f_of(p: TrajectoryParams, which, t) -> tuple:
    """Error function ``f_v`` (``which='v'``) or ``f_l`` and its derivative at ``t``."""
    return _f_parts(p, which, t, scaled=False)


def points_band(p: TrajectoryParams, t) -> float:
    return p.n * p.d ** (-p.delta) * f_of(p, "v", t)[0]


def degree_band(p: TrajectoryParams, ell: int, t):
    return p.d ** ((ell - 1) / (p.r - 1) - p.delta) * f_of(p, ell, t)[0]


# -- crude thresholds -----------------------------------------------------


def setdegree_exponent(r: int, epsilon: Number, a: int, b: int) -> Number:
    """Exponent of D in the set-degree threshold; exact when ``epsilon`` is a Fraction."""
    if not 2 <= a < b <= r:
        raise InputError(f"need 2 <= a < b <= r, got a={a}, b={b}, r={r}")
    lam = epsilon / (4 * r)
    return Fraction(b - a, r - 1) - epsilon + 2 * (r - b) * lam


def codegree_exponent(r: int, epsilon: Number, a: int, a2: int, k: int) -> Number:
    if not (2 <= a <= r and 2 <= a2 <= r and 1 <= k < min(a, a2)):
        raise InputError(f"need 2 <= a, a' <= r and 1 <= k < min(a, a'), got {(a, a2, k)}")
    lam = epsilon / (4 * r)
    return Fraction(a + a2 - k - 2, r - 1) - epsilon + (2 * r - 2 * k - 2) * lam


def setdegree_threshold(p: TrajectoryParams, a: int, b: int) -> float:
    return p.d ** float(setdegree_exponent(p.r, p.epsilon, a, b))


def codegree_threshold(p: TrajectoryParams, a: int, a2: int, k: int) -> float:
    return 2**p.r * p.d ** float(codegree_exponent(p.r, p.epsilon, a, a2, k))


def thresholds(p: TrajectoryParams, a: int, b: int | None = None, a2: int | None = None, k: int | None = None) -> float:
    """``setdegree`` bound for ``(a, b)`` or codegree bound for ``(a, a2, k)``."""
    if b is not None and a2 is None and k is None:
        return setdegree_threshold(p, a, b)
    if b is None and a2 is not None and k is not None:
        return codegree_threshold(p, a, a2, k)
    raise InputError("pass either b, or both a2 and k")


# -- variation inequalities -------------------------------------------------


VAREQ_NAMES = ("vareq0", "vareq1", "vareq2", "vareq3", "vareq4", "vareq5")


@dataclass
class VareqReport:
    """Per-family minimum of ``lhs - rhs``, measured in units of ``exp(alpha t + beta t^{r-1})``."""

    alpha: float
    beta: float
    t_max: float
    points: int
    margins: dict[str, float]
    where: dict[str, tuple[float, int | None]]

    @property
    def ok(self) -> bool:
        return all(m > 0 for m in self.margins.values())

    @property
    def failing(self) -> list[str]:
        return [k for k, m in self.margins.items() if not m > 0]

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "beta": self.beta, "t_max": self.t_max, "points": self.points,
            "ok": self.ok, "margins": self.margins,
            "where": {k: {"t": t, "ell": ell} for k, (t, ell) in self.where.items()},
        }


def _vareq_margins(p: TrajectoryParams, t: np.ndarray) -> dict[str, list[tuple[np.ndarray, int | None]]]:
    r = p.r
    q = q_of(p, t)
    # every inequality is linear in the f's, so the shared factor exp(alpha t + beta t^{r-1})
    # is divided out; this keeps large alpha, beta from overflowing
    fv, dfv = _f_parts(p, "v", t, scaled=True)
    f = {ell: _f_parts(p, ell, t, scaled=True) for ell in range(2, r + 1)}
    C = math.comb
    out: dict[str, list] = {name: [] for name in VAREQ_NAMES}
    out["vareq0"].append((dfv - 3 * f[2][0], None))
    for ell in range(2, r + 1):
        val, der = f[ell]
        if ell <= r - 1:
            out["vareq1"].append((der - 5 * ell / q * f[ell + 1][0], ell))
            out["vareq2"].append((der - 2 * ell * C(r - 1, ell) * t ** (r - ell - 1) * q ** (ell - 2) * fv, ell))
        out["vareq3"].append((der - 7 * (ell - 1) * C(r - 1, ell - 1) * t ** (r - ell) * q ** (ell - 2) * f[2][0], ell))
        out["vareq4"].append((der - 6 * (ell - 1) * (r - 1) * t ** (r - 2) * val, ell))
        out["vareq5"].append((der - 3 * (ell - 1) * (r - 1) * C(r - 1, ell - 1)
                              * t ** (2 * r - ell - 2) * q ** (ell - 2) * fv, ell))
    return out


def check_variation_equations(p: TrajectoryParams, grid: np.ndarray | None = None, points: int = 10**4,
                              t_max: float | None = None) -> VareqReport:
    """Minimum slack of each variation inequality family over a uniform grid on ``[0, t_max]``."""
    if grid is None:
        grid = np.linspace(0.0, p.t_max if t_max is None else t_max, points)
    grid = np.asarray(grid, dtype=float)
    margins, where = {}, {}
    for name, rows in _vareq_margins(p, grid).items():
        best, best_t, best_ell = math.inf, None, None
        for values, ell in rows:
            idx = int(np.argmin(values))
            if values[idx] < best:
                best, best_t, best_ell = float(values[idx]), float(grid[idx]), ell
        margins[name] = best
        where[name] = (best_t, best_ell)
    return VareqReport(p.alpha, p.beta, float(grid[-1]), len(grid), margins, where)


def search_alpha_beta(p: TrajectoryParams, grid: np.ndarray | None = None, points: int = 10**4,
                      t_max: float | None = None, alpha_cap: int = 1000, beta_cap: int = 200) -> VareqReport:
    """Smallest integer alpha passing at t = 0, then the smallest beta passing on the grid.

    If no beta up to ``beta_cap`` works, alpha is increased and the beta scan restarts.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return _search(p, grid, points, t_max, alpha_cap, beta_cap)


def _search(p, grid, points, t_max, alpha_cap, beta_cap) -> VareqReport:
    origin = np.zeros(1)
    alpha = 0
    while alpha <= alpha_cap and not check_variation_equations(p.with_(alpha=alpha, beta=0.0), origin).ok:
        alpha += 1
    while alpha <= alpha_cap:
        for beta in range(beta_cap + 1):
            report = check_variation_equations(p.with_(alpha=float(alpha), beta=float(beta)), grid, points, t_max)
            if report.ok:
                return report
        alpha += 1
    raise ConfigurationError(f"no (alpha, beta) with alpha <= {alpha_cap}, beta <= {beta_cap} satisfies every inequality")


# -- stopping conditions ----------------------------------------------------


FAMILIES = ("points", "vertexdegree", "setdegree", "codegree")


@dataclass
class FamilyVerdict:
    ok: bool
    worst_slack: float
    witness: str | None = None


@dataclass
class StopReport:
    i: int
    t: float
    families: dict[str, FamilyVerdict]

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.families.values())

    def describe(self) -> str:
        bad = [f"{name}: {f.witness} (slack {f.worst_slack:.6g})" for name, f in self.families.items() if not f.ok]
        return "; ".join(bad) if bad else "ok"

    def to_dict(self) -> dict:
        return {"i": self.i, "t": self.t, "ok": self.ok,
                "families": {k: asdict(v) for k, v in self.families.items()}}


def _check_compatible(p: TrajectoryParams, state) -> None:
    if state.n != p.n or state.width != p.r:
        raise ConfigurationError(
            f"params (n={p.n}, r={p.r}) do not match the state (n={state.n}, r={state.width})")


def _points(p, state, t) -> FamilyVerdict:
    dev = abs(state.n_open - p.n * float(q_of(p, t)))
    slack = points_band(p, t) - dev
    witness = None if slack >= 0 else f"|V|={state.n_open}, Nq={p.n * float(q_of(p, t)):.6g}"
    return FamilyVerdict(slack >= 0, float(slack), witness)


def _tracked(p, state, t):
    """Yield (label, ell, per-open-vertex deviation, band) for every tracked d_l^+/- ."""
    opened = np.sort(state.open_list[:state.n_open])
    for ell in range(2, p.r + 1):
        band = float(degree_band(p, ell, t))
        for sign, table in (("+", state.dplus), ("-", state.dminus)):
            if sign == "+" and ell == p.r:
                continue
            target = s_pm_of(p, ell, float(t), sign)
            yield f"d{ell}{sign}", opened, table[opened, ell] - target, band


def _vertexdegree(p, state, t) -> FamilyVerdict:
    worst, witness = math.inf, None
    for label, opened, dev, band in _tracked(p, state, t):
        if len(opened) == 0:
            continue
        slack = band - np.abs(dev)
        idx = int(np.argmin(slack))
        if slack[idx] < worst:
            worst = float(slack[idx])
            witness = f"{label} at vertex {int(opened[idx])} off by {float(dev[idx]):.6g}"
    if worst == math.inf:
        worst = 0.0
    return FamilyVerdict(worst >= 0, worst, None if worst >= 0 else witness)


def _residual_rows(state, size: int) -> np.ndarray:
    eids = np.flatnonzero(state.alive & (state.size == size))
    rows, mask = state._members(eids)
    return rows[mask].reshape(len(eids), size)


def _setdegree(p, state) -> FamilyVerdict:
    import itertools

    worst, witness = math.inf, None
    for b in range(3, p.r + 1):
        rows = _residual_rows(state, b)
        for a in range(2, b):
            bound = setdegree_threshold(p, a, b)
            if len(rows) == 0:
                top, where = 0, None
            else:
                subsets = np.concatenate([rows[:, list(c)] for c in itertools.combinations(range(b), a)])
                vals, counts = np.unique(subsets, axis=0, return_counts=True)
                idx = int(np.argmax(counts))
                top = int(counts[idx])
                where = vals[idx]
            slack = bound - top
            if slack < worst:
                worst = slack
                witness = None if where is None else f"A={tuple(int(x) for x in where)} lies in {top} live {b}-edges"
    if worst == math.inf:
        worst = 0.0
    return FamilyVerdict(worst >= 0, float(worst), None if worst >= 0 else witness)


def codegree_maxima(state, budget: int = 5 * 10**6) -> dict[tuple[int, int, int], tuple[int, int, int]]:
    """For each live ``(a, a', k)``: the largest codegree ``c_{a,a'->k}(v, v')`` and a pair attaining it.

    Intersecting edge pairs are generated per shared vertex and kept only at
    their smallest common vertex, so each ordered pair counts once.
    """
    ids = state.live_edge_ids()
    n, width = state.n, state.width
    rows, mask = state._members(ids)
    R = np.where(mask, rows, n)
    sizes = mask.sum(axis=1)
    local, col = np.nonzero(mask)
    vert = R[local, col]
    order = np.argsort(vert, kind="stable")
    ev, vv = local[order], vert[order]
    _, starts, counts = np.unique(vv, return_index=True, return_counts=True)
    work = int((counts.astype(np.int64) ** 2).sum())
    if work > budget:
        raise ResourceError(f"codegree enumeration needs ~{work} pair visits, budget {budget}")
    if work == 0:
        return {}
    group = np.repeat(np.arange(len(counts)), counts)
    gs = counts[group]
    A = np.repeat(np.arange(len(ev)), gs)
    offset = np.arange(work) - np.repeat(np.cumsum(gs) - gs, gs)
    B = starts[group[A]] + offset
    e, f, w = ev[A], ev[B], vv[A]
    keep = e != f
    e, f, w = e[keep], f[keep], w[keep]
    Re, Rf = R[e], R[f]
    same = (Re[:, :, None] == Rf[:, None, :]) & (Re[:, :, None] != n)
    in_f = same.any(axis=2)
    first_common = np.where(in_f, Re, n + 1).min(axis=1)
    keep = first_common == w
    Re, Rf, same, in_f = Re[keep], Rf[keep], same[keep], in_f[keep]
    in_e = same.any(axis=1)
    a, a2 = sizes[e[keep]], sizes[f[keep]]
    k = in_f.sum(axis=1)
    only_e = ~in_f & (Re != n)
    only_f = ~in_e & (Rf != n)
    base = n + 1
    keys = []
    for x in range(width):
        for y in range(width):
            sel = only_e[:, x] & only_f[:, y]
            packed = (Re[sel, x] * base + Rf[sel, y])
            tag = (a[sel] * (width + 1) + a2[sel]) * (width + 1) + k[sel]
            keys.append(tag.astype(np.int64) * base * base + packed)
    vals, cnt = np.unique(np.concatenate(keys), return_counts=True)
    tags, pairs = vals // (base * base), vals % (base * base)
    out: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for tag in np.unique(tags).tolist():
        sel = np.flatnonzero(tags == tag)
        best = sel[int(np.argmax(cnt[sel]))]
        kk = tag % (width + 1)
        aa2 = (tag // (width + 1)) % (width + 1)
        aa = tag // (width + 1) ** 2
        v, v2 = divmod(int(pairs[best]), base)
        out[(int(aa), int(aa2), int(kk))] = (int(cnt[best]), v, v2)
    return out


def _codegree(p, state, budget: int) -> FamilyVerdict:
    worst, witness = math.inf, None
    for (a, a2, k), (c, v, v2) in codegree_maxima(state, budget).items():
        slack = codegree_threshold(p, a, a2, k) - c
        if slack < worst:
            worst, witness = slack, f"c_{{{a},{a2}->{k}}}({v},{v2}) = {c}"
    if worst == math.inf:
        worst = 0.0
    return FamilyVerdict(worst >= 0, float(worst), None if worst >= 0 else witness)


def stop_check(p: TrajectoryParams, state, families: Iterable[str] | None = None,
               codegree_budget: int = 5 * 10**6) -> StopReport:
    """Evaluate the selected stopping-condition families at the state's current step."""
    _check_compatible(p, state)
    families = FAMILIES if families is None else tuple(families)
    unknown = set(families) - set(FAMILIES)
    if unknown:
        raise ConfigurationError(f"unknown condition families {sorted(unknown)}")
    t = float(scaled_time(p, state.i))
    out = {}
    for name in families:
        if name == "points":
            out[name] = _points(p, state, t)
        elif name == "vertexdegree":
            out[name] = _vertexdegree(p, state, t)
        elif name == "setdegree":
            out[name] = _setdegree(p, state)
        else:
            out[name] = _codegree(p, state, codegree_budget)
    return StopReport(state.i, t, out)


def z_diagnostics(p: TrajectoryParams, state) -> dict[str, float]:
    """``Z_V`` and, for each tracked ``d_l^+/-``, the maximum of ``Z`` over open vertices."""
    _check_compatible(p, state)
    t = float(scaled_time(p, state.i))
    out = {"Z_V": state.n_open - p.n * float(q_of(p, t)) - float(points_band(p, t))}
    for label, opened, dev, band in _tracked(p, state, t):
        out["Z_" + label] = float(np.max(dev) - band) if len(opened) else -band
    return out


# -- defaults -----------------------------------------------------------------


def default_params(H, epsilon: float | None = None, delta: float | None = None, zeta: float | None = None,
                   alpha: float | None = None, beta: float | None = None, strict: bool = True,
                   points: int = 10**4) -> TrajectoryParams:
    """Parameters for ``H``: epsilon just below the largest admissible value, delta = eps/10, zeta = delta/10.

    Missing alpha/beta are found by the variation-inequality search on ``[0, t_max]``.
    """
    from .hypergraph import check_main_conditions

    report = check_main_conditions(H, 1e-3)
    if epsilon is None:
        epsilon = report.epsilon_sup - 0.01
        if epsilon <= 0:
            raise ConfigurationError(f"no admissible epsilon: largest is {report.epsilon_sup:.4g}")
    delta = epsilon / 10 if delta is None else delta
    zeta = delta / 10 if zeta is None else zeta
    p = TrajectoryParams(report.r, H.n, report.D, epsilon, delta, zeta, 0.0, 0.0, strict)
    if alpha is None or beta is None:
        found = search_alpha_beta(p, points=points)
        alpha = found.alpha if alpha is None else alpha
        beta = found.beta if beta is None else beta
    return p.with_(alpha=float(alpha), beta=float(beta))
