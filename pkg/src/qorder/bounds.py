"""Closed-form Q-index bounds and sweeps that check them on real graphs.

Each evaluator returns a plain number; the ``check_*`` helpers wrap a single
comparison in a :class:`BoundReport`, and the ``sweep_*`` functions run those
checks over enumerated classes or family grids.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterError
from .graph import Graph, is_connected
from .spectral import DEFAULT_TOL, GAP_TOL, q_index

FENG_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    bound_name: str
    inputs: dict
    bound_value: float
    observed_value: float
    holds: bool
    slack: float

    def to_json(self) -> dict:
        return {
            "bound": self.bound_name,
            "inputs": dict(self.inputs),
            "bound_value": self.bound_value,
            "observed": self.observed_value,
            "holds": self.holds,
            "slack": self.slack,
        }


def _upper(name: str, inputs: dict, bound: float, observed: float, tol: float) -> BoundReport:
    return BoundReport(name, inputs, bound, observed, observed <= bound + tol, bound - observed)


def _lower(name: str, inputs: dict, bound: float, observed: float, gap: float) -> BoundReport:
    """Strict lower bound: ``observed > bound`` by more than ``gap``."""
    return BoundReport(name, inputs, bound, observed, observed > bound + gap, observed - bound)


# --- evaluators ---------------------------------------------------------------

def entry_bound(q: float, d: int) -> float:
    """Upper bound ``sqrt(1 / (1 + (q - d)^2 / d))`` on the Perron entry of a
    vertex of degree ``d``; the bound is the vacuous 1 when ``q <= d``."""
    if d <= 0:
        raise ParameterError("entry bound needs a vertex of positive degree")
    if q <= d:
        return 1.0
    return math.sqrt(1.0 / (1.0 + (q - d) ** 2 / d))


def feng_terms(G: Graph) -> list[float]:
    """``d(u) + (sum of neighbour degrees) / d(u)`` for every vertex."""
    out = []
    for u in range(G.n):
        d = G.degrees[u]
        out.append(d + sum(G.degrees[v] for v in G.neighbors(u)) / d)
    return out


def feng_bound(G: Graph) -> float:
    if G.n < 2 or not is_connected(G):
        raise ParameterError("the degree-ratio bound needs a connected graph with an edge")
    return max(feng_terms(G))


def degree_bound_upper(m: int, s: int) -> float:
    """``s + 2``: an upper bound for every connected graph of size ``m`` with
    maximum degree at most ``s``, valid once ``s >= 2m/3`` and ``m >= 5``."""
    if m < 5:
        raise ParameterError(f"the degree bound needs m >= 5, got {m}")
    if 3 * s < 2 * m:
        raise ParameterError(f"the degree bound needs s >= 2m/3, got s={s}, m={m}")
    return float(s + 2)


def degree_bound_lower(s: int, m: int | None = None) -> float:
    """``s + 1``: a strict lower bound whenever ``s <= Delta(G) <= m - 1``."""
    if s < 1:
        raise ParameterError("s must be at least 1")
    if m is not None and s > m - 1:
        raise ParameterError(f"the lower degree bound needs s <= m-1, got s={s}, m={m}")
    return float(s + 1)


def gi_bracket(m: int, g: int) -> tuple[float, float]:
    """Open-below, closed-above interval holding ``q(G_i(m, g))`` for all ``i``."""
    if g < 3:
        raise ParameterError("girth must be at least 3")
    if m < g + 3:
        raise ParameterError(f"the bracket needs m >= g+3, got m={m}, g={g}")
    k = m - g
    return float(k + 2), k + 2 + 2 / (k + 1)


@dataclass(frozen=True)
class X0Bound:
    bound_value: float
    h1: Fraction
    h2: Fraction
    h3: Fraction

    @property
    def h_positive(self) -> bool:
        return self.h1 > 0 and self.h2 > 0 and self.h3 > 0


def x0_lower_bound(m: int, g: int, q: float) -> X0Bound:
    """Lower bound on ``x_0^2`` in ``G_i(m, g)`` at ``q = q(G_i)``, written as
    ``(h1 + h2) / (2 h3) + 1/2``.  ``h1, h2, h3`` are evaluated exactly at the
    rational value of the float ``q``."""
    from .exactpoly import named_poly

    if q <= max(9, m - g + 2):
        raise ParameterError(f"the x0 bound needs q > max(9, m-g+2) = {max(9, m - g + 2)}, got q={q}")
    t = Fraction(q)
    h1 = named_poly("h1").eval_at(t, m)
    h2 = named_poly("h2", g).eval_at(t, m)
    h3 = named_poly("h3", g).eval_at(t, m)
    if h3 == 0:
        raise ParameterError("h3 vanishes at q")
    value = (h1 + h2) / (2 * h3) + Fraction(1, 2)
    return X0Bound(float(value), h1, h2, h3)


# --- single checks ------------------------------------------------------------

def check_entry_bounds(G: Graph, tol: float = DEFAULT_TOL) -> list[BoundReport]:
    pp = q_index(G, tol)
    out = []
    for u in range(G.n):
        b = entry_bound(pp.q, G.degrees[u])
        out.append(_upper("entry", {"vertex": u, "degree": G.degrees[u]}, b, float(pp.x[u]), 1e-9))
    return out


def check_feng(G: Graph, tol: float = DEFAULT_TOL) -> BoundReport:
    q = q_index(G, tol).q
    return _upper("feng", {"n": G.n, "m": G.m}, feng_bound(G), q, FENG_TOL)


def is_regular(G: Graph) -> bool:
    return len(set(G.degrees)) == 1


def is_semiregular_bipartite(G: Graph) -> bool:
    """Bipartite with constant degree on each side."""
    if G.n == 0:
        return False
    side = [-1] * G.n
    side[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for v in G.neighbors(u):
            if side[v] < 0:
                side[v] = 1 - side[u]
                stack.append(v)
            elif side[v] == side[u]:
                return False
    degs = [{G.degrees[v] for v in range(G.n) if side[v] == s} for s in (0, 1)]
    return all(len(d) <= 1 for d in degs)


# --- sweeps -------------------------------------------------------------------

@dataclass
class SweepReport:
    name: str
    checked: int
    violations: list[BoundReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    min_slack: float | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "sweep": self.name,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
            "pass": self.passed,
            "min_slack": self.min_slack,
            "notes": list(self.notes),
        }


def _graphs_up_to(max_m: int, cap: int) -> Iterable[Graph]:
    from .enumeration import enumerate_graphs

    for m in range(1, max_m + 1):
        yield from enumerate_graphs(m, cap=cap)


def _record(rep: SweepReport, r: BoundReport) -> None:
    rep.checked += 1
    if rep.min_slack is None or r.slack < rep.min_slack:
        rep.min_slack = r.slack
    if not r.holds:
        rep.violations.append(r)


def sweep_entry(max_m: int = 9, *, cap: int = 12, tol: float = DEFAULT_TOL) -> SweepReport:
    rep = SweepReport("entry", 0)
    for G in _graphs_up_to(max_m, cap):
        for r in check_entry_bounds(G, tol):
            _record(rep, r)
    return rep


def sweep_feng(max_m: int = 9, *, cap: int = 12, tol: float = DEFAULT_TOL) -> SweepReport:
    """The bound holds everywhere; near-equality happens only on regular or
    semiregular bipartite graphs."""
    rep = SweepReport("feng", 0)
    for G in _graphs_up_to(max_m, cap):
        r = check_feng(G, tol)
        _record(rep, r)
        tight = abs(r.slack) <= 1e-7
        if tight != (is_regular(G) or is_semiregular_bipartite(G)):
            rep.violations.append(
                BoundReport("feng-equality", {"graph": G.edges}, r.bound_value, r.observed_value, False, r.slack)
            )
    return rep


def sweep_degree(m: int = 12, s: int = 8, *, cap: int = 12, tol: float = DEFAULT_TOL) -> SweepReport:
    """Both degree bounds on the connected graphs of size ``m``: ``q <= s+2``
    when ``Delta <= s``, and ``q > Delta + 1`` when ``Delta <= m-1``."""
    from .enumeration import ClassFilter, enumerate_graphs

    upper = degree_bound_upper(m, s)
    rep = SweepReport(f"degree(m={m},s={s})", 0)
    for G in enumerate_graphs(m, ClassFilter.any(max_degree=s), cap=cap):
        q = q_index(G, tol).q
        _record(rep, _upper("degree-upper", {"m": m, "s": s}, upper, q, 1e-9))
        if G.max_degree <= m - 1:
            low = degree_bound_lower(G.max_degree, m)
            _record(rep, _lower("degree-lower", {"m": m, "delta": G.max_degree}, low, q, GAP_TOL))
    return rep


def gi_grid(gs: Iterable[int] = range(4, 11), span: int = 14) -> list[tuple[int, int, int]]:
    """``(m, g, i)`` with ``max(2g-2, g+7) <= m <= g+span``."""
    out = []
    for g in gs:
        for m in range(max(2 * g - 2, g + 7), g + span + 1):
            for i in range(1, g // 2 + 1):
                out.append((m, g, i))
    return out


def sweep_gi_bracket(
    grid: Iterable[tuple[int, int, int]] | None = None, *, tol: float = DEFAULT_TOL
) -> SweepReport:
    from .families import FamilySpec, build

    grid = gi_grid() if grid is None else grid
    rep = SweepReport("gi-bracket", 0)
    for m, g, i in grid:
        G = build(FamilySpec.of("Gi", m=m, g=g, i=i)).graph
        q = q_index(G, tol).q
        lo, hi = gi_bracket(m, g)
        inputs = {"m": m, "g": g, "i": i}
        _record(rep, _lower("gi-lower", inputs, lo, q, GAP_TOL))
        _record(rep, _upper("gi-upper", inputs, hi, q, 1e-9))
        fb = feng_bound(G)
        r = BoundReport("gi-feng", inputs, hi, fb, abs(fb - hi) <= 1e-12, -abs(fb - hi))
        rep.checked += 1
        if not r.holds:
            rep.violations.append(r)
    return rep


def sweep_x0(
    grid: Iterable[tuple[int, int, int]] | None = None, *, tol: float = DEFAULT_TOL
) -> SweepReport:
    from .families import FamilySpec, build

    grid = gi_grid(range(4, 7)) if grid is None else grid
    rep = SweepReport("x0", 0)
    for m, g, i in grid:
        lg = build(FamilySpec.of("Gi", m=m, g=g, i=i))
        pp = q_index(lg.graph, tol)
        v0 = lg.labels["0"]
        x0 = float(pp.x[v0])
        rest = max(float(pp.x[u]) for u in range(lg.graph.n) if u != v0)
        b = x0_lower_bound(m, g, pp.q)
        inputs = {"m": m, "g": g, "i": i}
        _record(rep, _lower("x0-strict-max", inputs, rest, x0, GAP_TOL))
        _record(rep, _lower("x0-half", inputs, 0.5, x0 * x0, GAP_TOL))
        _record(rep, _upper("x0-eq3", inputs, x0 * x0, b.bound_value, 1e-9))
        if not b.h_positive:
            rep.violations.append(BoundReport("x0-h-positive", inputs, 0.0, float(min(b.h1, b.h2, b.h3)), False, 0.0))
    return rep


SWEEPS = {
    "entry": sweep_entry,
    "feng": sweep_feng,
    "degree": sweep_degree,
    "gi-bracket": sweep_gi_bracket,
    "x0": sweep_x0,
}


def run_sweep(name: str, **kwargs) -> SweepReport:
    if name not in SWEEPS:
        raise ParameterError(f"unknown sweep {name!r}; expected one of {', '.join(SWEEPS)}")
    return SWEEPS[name](**kwargs)
