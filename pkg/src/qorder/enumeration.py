"""Isomorph-free generation of connected graphs by size, ranking by Q-index,
and the brute-force verdicts for the ordering theorems.

Generation uses canonical augmentation.  A child with ``m`` edges is made
from a parent with ``m - 1`` edges by adding an edge between two existing
vertices or by hanging a new pendant vertex.  Every connected graph with at
least two edges has a *deletable* edge (a non-bridge, or an edge at a leaf,
whose removal together with the leaf keeps the graph connected).  Among the
deletable edges one is chosen canonically, ``e*``; a child is kept only when
``child - e*`` is isomorphic to the parent it came from.  Each isomorphism
class therefore has exactly one accepted parent class, and duplicates can only
arise among siblings, which are merged by certificate.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .canon import _Search, _twin_transpositions
from .errors import CapExceededError, HypothesisError, ParameterError
from .families import FamilySpec, build, identify
from .graph import Graph, emit_graph6, girth
from .spectral import DEFAULT_TOL, TIE_TOL, q_index

log = logging.getLogger(__name__)

DEFAULT_CAP = 12
HARD_CAP = 13
WARN_GAP = 1e-6


# --- class filters ------------------------------------------------------------

@dataclass(frozen=True)
class ClassFilter:
    """Which connected graphs of a given size to keep.

    ``girth_mode`` is ``"any"`` (trees included), ``"eq"`` or ``"ge"``; the
    last two need ``g >= 3`` and exclude trees.
    """

    girth_mode: str = "any"
    g: int | None = None
    max_degree: int | None = None

    def __post_init__(self) -> None:
        if self.girth_mode not in ("any", "eq", "ge"):
            raise ParameterError(f"unknown girth mode {self.girth_mode!r}")
        if self.girth_mode == "any":
            if self.g is not None:
                raise ParameterError("girth mode 'any' takes no girth value")
        elif self.g is None or self.g < 3:
            raise ParameterError("a girth constraint needs g >= 3")
        if self.max_degree is not None and self.max_degree < 1:
            raise ParameterError("maximum degree cap must be at least 1")

    @classmethod
    def any(cls, max_degree: int | None = None) -> ClassFilter:
        return cls("any", None, max_degree)

    @classmethod
    def equal(cls, g: int, max_degree: int | None = None) -> ClassFilter:
        return cls("eq", g, max_degree)

    @classmethod
    def at_least(cls, g: int, max_degree: int | None = None) -> ClassFilter:
        return cls("ge", g, max_degree)

    @classmethod
    def parse(cls, text: str, max_degree: int | None = None) -> ClassFilter:
        """``any``, ``=g`` (or a bare ``g``) and ``>=g``."""
        t = text.strip().replace(" ", "")
        if t in ("any", "all", "*"):
            return cls.any(max_degree)
        mo = re.fullmatch(r"(>=|=|==)?(\d+)", t)
        if not mo:
            raise ParameterError(f"cannot parse girth filter {text!r}")
        mode = "ge" if mo.group(1) == ">=" else "eq"
        return cls(mode, int(mo.group(2)), max_degree)

    def admits(self, G: Graph, gi: int | None = None) -> bool:
        if self.max_degree is not None and G.max_degree > self.max_degree:
            return False
        if self.girth_mode == "any":
            return True
        gi = girth(G) if gi is None else gi
        if gi is None:
            return False
        return gi == self.g if self.girth_mode == "eq" else gi >= self.g

    def __str__(self) -> str:
        base = {"any": "any", "eq": f"={self.g}", "ge": f">={self.g}"}[self.girth_mode]
        return base if self.max_degree is None else f"{base},maxdeg<={self.max_degree}"


# --- canonical augmentation ---------------------------------------------------

@dataclass(frozen=True)
class _Node:
    cert: bytes
    n: int
    adj: tuple[int, ...]


def _canon(adj: Sequence[int]) -> tuple[list[int], list[list[int]]]:
    adj = tuple(adj)
    if len(adj) <= 1:
        return list(range(len(adj))), []
    s = _Search(adj)
    s.run()
    return s.best_order, s.autos + _twin_transpositions(adj)


def _relabel(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    n = len(adj)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        a, b = adj[v], 0
        while a:
            low = a & -a
            b |= 1 << pos[low.bit_length() - 1]
            a ^= low
        out.append(b)
    return tuple(out)


def _adj_graph(adj: Sequence[int]) -> Graph:
    n = len(adj)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if adj[u] >> v & 1])


def _node(adj: Sequence[int]) -> _Node:
    order, _ = _canon(adj)
    cadj = _relabel(adj, order)
    return _Node(emit_graph6(_adj_graph(cadj)).encode("ascii"), len(cadj), cadj)


def _cert_of(adj: Sequence[int]) -> bytes:
    return _node(adj).cert


def _orbits(n: int, gens: list[list[int]]) -> list[int]:
    """Representative (smallest element) of each vertex's orbit."""
    rep = list(range(n))

    def find(v: int) -> int:
        while rep[v] != v:
            rep[v] = rep[rep[v]]
            v = rep[v]
        return v

    for gperm in gens:
        for v in range(n):
            a, b = find(v), find(gperm[v])
            if a != b:
                rep[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def _pair_orbit_reps(n: int, adj: Sequence[int], gens: list[list[int]]) -> list[tuple[int, int]]:
    """One non-adjacent pair from each orbit under the group generated by ``gens``."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not adj[u] >> v & 1]
    if not gens:
        return pairs
    seen: set[tuple[int, int]] = set()
    reps = []
    for p in pairs:
        if p in seen:
            continue
        reps.append(p)
        stack = [p]
        seen.add(p)
        while stack:
            a, b = stack.pop()
            for gperm in gens:
                c, d = gperm[a], gperm[b]
                img = (c, d) if c < d else (d, c)
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return reps


def _connected_without(adj: Sequence[int], u: int, v: int) -> bool:
    """Is ``v`` still reachable from ``u`` once the edge ``uv`` is removed?"""
    target = 1 << v
    seen = 1 << u
    frontier = adj[u] & ~target
    seen |= frontier
    while frontier:
        if seen & target:
            return True
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return bool(seen & target)


def _edge_keys(adj: Sequence[int]) -> tuple[list[int], dict[tuple[int, int], int]]:
    n = len(adj)
    deg = [a.bit_count() for a in adj]
    inv = []
    for v in range(n):
        a, s = adj[v], 0
        while a:
            low = a & -a
            s += deg[low.bit_length() - 1]
            a ^= low
        inv.append(deg[v] << 8 | s)
    keys = {}
    for u in range(n):
        a = adj[u] >> (u + 1)
        v = u + 1
        while a:
            if a & 1:
                lo, hi = (inv[u], inv[v]) if inv[u] < inv[v] else (inv[v], inv[u])
                keys[(u, v)] = (hi << 16 | lo) << 5 | (adj[u] & adj[v]).bit_count()
            a >>= 1
            v += 1
    return deg, keys


def _deletable(adj: Sequence[int], deg: list[int], u: int, v: int) -> bool:
    return deg[u] == 1 or deg[v] == 1 or _connected_without(adj, u, v)


def _remove_edge(adj: Sequence[int], deg: list[int], u: int, v: int) -> list[int]:
    out = list(adj)
    out[u] &= ~(1 << v)
    out[v] &= ~(1 << u)
    leaf = v if deg[v] == 1 else (u if deg[u] == 1 else None)
    if leaf is None:
        return out
    # drop the isolated leaf and close the gap in the numbering
    keep = [w for w in range(len(out)) if w != leaf]
    return list(_relabel(out, keep))


def _accept(child: list[int], added: tuple[int, int], parent_cert: bytes) -> _Node | None:
    deg, keys = _edge_keys(child)
    ke = keys[added]
    ties = []
    for e, k in keys.items():
        if k > ke:
            if _deletable(child, deg, *e):
                return None
        elif k == ke and (e == added or _deletable(child, deg, *e)):
            ties.append(e)
    order, gens = _canon(child)
    cadj = _relabel(child, order)
    node = _Node(emit_graph6(_adj_graph(cadj)).encode("ascii"), len(cadj), cadj)
    if len(ties) == 1:
        return node
    pos = [0] * len(child)
    for i, v in enumerate(order):
        pos[v] = i

    def cpos(e: tuple[int, int]) -> tuple[int, int]:
        a, b = pos[e[0]], pos[e[1]]
        return (a, b) if a < b else (b, a)

    best = min(ties, key=cpos)
    if best == added:
        return node
    for e in _edge_orbit(added, gens):
        if e == best:
            return node
    if _cert_of(_remove_edge(child, deg, *best)) == parent_cert:
        return node
    return None


def _edge_orbit(e: tuple[int, int], gens: list[list[int]]) -> set[tuple[int, int]]:
    orbit = {e}
    stack = [e]
    while stack:
        a, b = stack.pop()
        for gperm in gens:
            c, d = gperm[a], gperm[b]
            img = (c, d) if c < d else (d, c)
            if img not in orbit:
                orbit.add(img)
                stack.append(img)
    return orbit


def _children(parent: _Node, prune_g: int | None, max_degree: int | None) -> list[_Node]:
    n, adj = parent.n, parent.adj
    _, gens = _canon(adj)
    out: dict[bytes, _Node] = {}

    def consider(child: list[int], added: tuple[int, int]) -> None:
        if max_degree is not None and max(a.bit_count() for a in child) > max_degree:
            return
        node = _accept(child, added, parent.cert)
        if node is None or node.cert in out:
            return
        if prune_g is not None:
            gi = girth(_adj_graph(node.adj))
            if gi is not None and gi < prune_g:
                return
        out[node.cert] = node

    reps = sorted(set(_orbits(n, gens)))
    for u in reps:
        child = list(adj) + [1 << u]
        child[u] |= 1 << n
        consider(child, (u, n))
    for u, v in _pair_orbit_reps(n, adj, gens):
        child = list(adj)
        child[u] |= 1 << v
        child[v] |= 1 << u
        consider(child, (u, v))
    return list(out.values())


def _children_batch(args: tuple[list[_Node], int | None, int | None]) -> list[_Node]:
    parents, prune_g, max_degree = args
    out = []
    for p in parents:
        out.extend(_children(p, prune_g, max_degree))
    return out


class _Tree:
    """Levels of the augmentation tree for one pruning regime."""

    def __init__(self, prune_g: int | None, max_degree: int | None) -> None:
        self.prune_g = prune_g
        self.max_degree = max_degree
        k2 = _node([0b10, 0b01])
        self.levels: list[list[_Node]] = [[], [k2] if (max_degree is None or max_degree >= 1) else []]

    def level(self, m: int, jobs: int = 1) -> list[_Node]:
        while len(self.levels) <= m:
            parents = self.levels[-1]
            if jobs > 1 and len(parents) > 64:
                chunks = [parents[i::jobs] for i in range(jobs)]
                with ProcessPoolExecutor(max_workers=jobs) as pool:
                    parts = pool.map(
                        _children_batch, [(c, self.prune_g, self.max_degree) for c in chunks]
                    )
                    kids = [k for part in parts for k in part]
            else:
                kids = _children_batch((parents, self.prune_g, self.max_degree))
            kids.sort(key=lambda nd: nd.cert)
            for a, b in zip(kids, kids[1:]):
                if a.cert == b.cert:  # pragma: no cover - would mean a generation bug
                    raise RuntimeError("duplicate graph produced by augmentation")
            log.debug("level %d: %d graphs", len(self.levels), len(kids))
            self.levels.append(kids)
        return self.levels[m]


_TREES: dict[tuple[int | None, int | None], _Tree] = {}


def _tree(prune_g: int | None, max_degree: int | None) -> _Tree:
    key = (prune_g, max_degree)
    if key not in _TREES:
        _TREES[key] = _Tree(prune_g, max_degree)
    return _TREES[key]


def _check_cap(m: int, cap: int) -> None:
    if cap > HARD_CAP:
        raise CapExceededError(f"enumeration cap {cap} exceeds the hard cap {HARD_CAP}")
    if m < 1:
        raise ParameterError(f"size must be at least 1, got {m}")
    if m > cap:
        raise CapExceededError(f"m = {m} exceeds the enumeration cap {cap}")


def _nodes(m: int, f: ClassFilter, cap: int, jobs: int) -> Iterator[tuple[_Node, Graph, int | None]]:
    # checked here, not inside the generator, so errors surface at call time
    _check_cap(m, cap)
    return _admitted(m, f, jobs)


def _admitted(m: int, f: ClassFilter, jobs: int) -> Iterator[tuple[_Node, Graph, int | None]]:
    prune_g = None if f.girth_mode == "any" else f.g
    full = _TREES.get((None, None))
    if full is not None and len(full.levels) > m:
        nodes = full.levels[m]
    elif f.max_degree is not None and (prune_g, None) in _TREES and len(_TREES[(prune_g, None)].levels) > m:
        nodes = _TREES[(prune_g, None)].levels[m]
    else:
        nodes = _tree(prune_g, f.max_degree).level(m, jobs)
    for nd in nodes:
        G = _adj_graph(nd.adj)
        gi = girth(G)
        if f.admits(G, gi):
            yield nd, G, gi


def enumerate_graphs(
    m: int, f: ClassFilter | None = None, *, cap: int = DEFAULT_CAP, jobs: int = 1
) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs
    with ``m`` edges admitted by ``f``, sorted by certificate."""
    nodes = _nodes(m, f or ClassFilter.any(), cap, jobs)
    return (G for _, G, _ in nodes)


def enumerate_with_certificates(
    m: int, f: ClassFilter | None = None, *, cap: int = DEFAULT_CAP, jobs: int = 1
) -> Iterator[tuple[bytes, Graph, int | None]]:
    nodes = _nodes(m, f or ClassFilter.any(), cap, jobs)
    return ((nd.cert, G, gi) for nd, G, gi in nodes)


def count(m: int, f: ClassFilter | None = None, *, cap: int = DEFAULT_CAP, jobs: int = 1) -> int:
    return sum(1 for _ in _nodes(m, f or ClassFilter.any(), cap, jobs))


def clear_cache() -> None:
    _TREES.clear()
    _Q_CACHE.clear()


# --- ranking ------------------------------------------------------------------

# Q-index by (certificate, tolerance); certificates name isomorphism classes
_Q_CACHE: dict[tuple[bytes, float], float] = {}


@dataclass(frozen=True)
class RankRow:
    rank: int
    certificate: str
    graph6: str
    q: float
    family: str | None
    delta: int
    girth: int | None
    gap: float | None
    tied: bool = False


@dataclass
class RankTable:
    m: int
    filter: str
    rows: list[RankRow]
    class_size: int
    notes: list[str] = field(default_factory=list)

    @property
    def min_gap(self) -> float | None:
        gaps = [r.gap for r in self.rows if r.gap is not None]
        return min(gaps) if gaps else None

    @property
    def has_ties(self) -> bool:
        return any(r.tied for r in self.rows)


def _rank_rows(scored: list[tuple[float, bytes, Graph, int | None]], k: int, tie_tol: float) -> list[RankRow]:
    rows = []
    rank = 0
    for idx in range(min(k, len(scored))):
        q, cert, G, gi = scored[idx]
        prev_gap = scored[idx - 1][0] - q if idx else math.inf
        if prev_gap > tie_tol:
            rank = idx + 1
        gap = q - scored[idx + 1][0] if idx + 1 < len(scored) else None
        tied = prev_gap <= tie_tol or (gap is not None and gap <= tie_tol)
        spec = identify(G, cert)
        rows.append(
            RankRow(
                rank=rank,
                certificate=cert.decode("ascii"),
                graph6=emit_graph6(G),
                q=q,
                family=str(spec) if spec else None,
                delta=G.max_degree,
                girth=gi,
                gap=gap,
                tied=tied,
            )
        )
    return rows


def score_class(
    m: int, f: ClassFilter | None = None, *, cap: int = DEFAULT_CAP, tol: float = DEFAULT_TOL, jobs: int = 1
) -> list[tuple[float, bytes, Graph, int | None]]:
    """Every graph of the class with its Q-index, by decreasing ``q``
    (certificate order breaks exact float ties, so the order is reproducible)."""
    scored = []
    for c, G, gi in enumerate_with_certificates(m, f, cap=cap, jobs=jobs):
        key = (c, tol)
        if key not in _Q_CACHE:
            _Q_CACHE[key] = q_index(G, tol).q
        scored.append((_Q_CACHE[key], c, G, gi))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return scored


def rank_top_k(
    m: int,
    f: ClassFilter | None = None,
    k: int = 5,
    *,
    cap: int = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
    tie_tol: float = TIE_TOL,
    jobs: int = 1,
) -> RankTable:
    if k < 1:
        raise ParameterError("k must be at least 1")
    f = f or ClassFilter.any()
    scored = score_class(m, f, cap=cap, tol=tol, jobs=jobs)
    if not scored:
        raise ParameterError(f"no connected graph with {m} edges matches {f}")
    table = RankTable(m, str(f), _rank_rows(scored, k, tie_tol), len(scored))
    if k > len(scored):
        table.notes.append(f"class has only {len(scored)} graphs; all are listed")
    if table.has_ties:
        table.notes.append(f"rows marked tied differ by at most {tie_tol:g}")
    return table


# --- theorem verdicts ---------------------------------------------------------

THEOREM_IDS = (
    "thm-1.1",
    "thm-1.2",
    "thm-1.3",
    "thm-1.4",
    "lem-3.1",
    "lem-3.2",
    "lem-3.4",
    "lem-3.5",
    "cor-2.2",
    "cor-2.3",
    "cor-2.4",
)


@dataclass
class VerdictReport:
    theorem: str
    params: dict[str, int]
    expected: list[str]
    observed: list[str]
    passed: bool
    min_gap: float | None
    counts: dict[str, int] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        if self.min_gap is not None and self.min_gap < WARN_GAP:
            return "pass-with-warning"
        return "pass"

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "params": dict(self.params),
            "expected": list(self.expected),
            "observed": list(self.observed),
            "pass": self.passed,
            "status": self.status,
            "min_gap": self.min_gap,
            "counts": dict(self.counts),
            "notes": list(self.notes),
        }


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise HypothesisError(msg)


def _gi_chain(m: int, g: int) -> list[FamilySpec]:
    return [FamilySpec.of("Gi", m=m, g=g, i=i) for i in range(1, g // 2 + 1)]


def _girth_chain(m: int, g: int) -> list[FamilySpec]:
    gi = _gi_chain(m, g)
    return [FamilySpec.of("G0", m=m, g=g), gi[0], FamilySpec.of("Gv", m=m, g=g)] + gi[1:]


def _chain_verdict(
    tid: str,
    params: dict[str, int],
    expected: list[FamilySpec],
    m: int,
    f: ClassFilter,
    cap: int,
    tol: float,
    tie_tol: float,
    jobs: int,
) -> VerdictReport:
    scored = score_class(m, f, cap=cap, tol=tol, jobs=jobs)
    k = len(expected)
    exp_certs = [canonical_cert(s) for s in expected]
    top = scored[:k]
    observed = []
    for q, cert, G, _ in top:
        spec = identify(G, cert)
        observed.append(str(spec) if spec else emit_graph6(G))
    # strict chain among the top k, and strictly above everything else
    gaps = [scored[i][0] - scored[i + 1][0] for i in range(min(k, len(scored) - 1))]
    min_gap = min(gaps) if gaps else None
    matches = len(top) == k and all(c == e for (_, c, _, _), e in zip(top, exp_certs))
    passed = matches and (min_gap is None or min_gap > tie_tol)
    return VerdictReport(
        theorem=tid,
        params=params,
        expected=[str(s) for s in expected],
        observed=observed,
        passed=passed,
        min_gap=min_gap,
        counts={"graphs_enumerated": count(m, ClassFilter.any() if f.girth_mode == "any" else f, cap=cap), "graphs_in_class": len(scored)},
    )


def canonical_cert(spec: FamilySpec) -> bytes:
    G = build(spec).graph
    return _cert_of(G.adj)


def _family_chain_verdict(
    tid: str, params: dict[str, int], chain: list[FamilySpec], tol: float, tie_tol: float
) -> VerdictReport:
    qs = [q_index(build(s).graph, tol).q for s in chain]
    gaps = [a - b for a, b in zip(qs, qs[1:])]
    min_gap = min(gaps) if gaps else None
    order = sorted(range(len(chain)), key=lambda i: -qs[i])
    return VerdictReport(
        theorem=tid,
        params=params,
        expected=[str(s) for s in chain],
        observed=[str(chain[i]) for i in order],
        passed=all(gp > tie_tol for gp in gaps),
        min_gap=min_gap,
        counts={"graphs_enumerated": 0, "graphs_in_class": len(chain)},
    )


def verify_theorem(
    tid: str,
    params: dict[str, int] | None = None,
    *,
    cap: int = DEFAULT_CAP,
    tol: float = DEFAULT_TOL,
    tie_tol: float = TIE_TOL,
    jobs: int = 1,
) -> VerdictReport:
    """Check one ordering statement on concrete parameters.

    Parameters outside the statement's hypotheses raise
    :class:`~qorder.errors.HypothesisError`; sizes above the enumeration cap
    raise :class:`~qorder.errors.CapExceededError`.
    """
    p = dict(params or {})
    if tid not in THEOREM_IDS:
        raise ParameterError(f"unknown theorem id {tid!r}; expected one of {', '.join(THEOREM_IDS)}")

    def get(name: str) -> int:
        if name not in p:
            raise ParameterError(f"{tid} needs parameter {name}")
        return int(p[name])

    common = dict(cap=cap, tol=tol, tie_tol=tie_tol, jobs=jobs)
    if tid in ("thm-1.1", "thm-1.2"):
        m, g = get("m"), get("g")
        _need(m >= 3 * g >= 12, f"{tid} needs m >= 3g >= 12, got m={m}, g={g}")
        chain = _girth_chain(m, g)
        if tid == "thm-1.1":
            rep = _chain_verdict(tid, {"m": m, "g": g}, chain, m, ClassFilter.equal(g), **common)
            rep.notes.append("the printed chain reads '(G_3)' for 'q(G_3)'; the q-chain is checked")
        else:
            chain = chain + [FamilySpec.of("G0", m=m, g=g + 1)]
            rep = _chain_verdict(tid, {"m": m, "g": g}, chain, m, ClassFilter.at_least(g), **common)
        return rep
    if tid == "thm-1.3":
        m = get("m")
        _need(m >= 9, f"thm-1.3 needs m >= 9, got m={m}")
        chain = [
            FamilySpec.of("G0", m=m, g=3),
            FamilySpec.of("B1", m=m),
            FamilySpec.of("B2", m=m),
            FamilySpec.of("Gi", m=m, g=3, i=1),
            FamilySpec.of("Gv", m=m, g=3),
        ]
        return _chain_verdict(tid, {"m": m}, chain, m, ClassFilter.equal(3), **common)
    if tid == "thm-1.4":
        m = get("m")
        _need(m >= 9, f"thm-1.4 needs m >= 9, got m={m}")
        chain = theorem_1_4_chain(m)
        return _chain_verdict(tid, {"m": m}, chain, m, ClassFilter.any(), **common)
    if tid == "lem-3.1":
        m, g = get("m"), get("g")
        _need(g >= 4 and m >= g + 2, f"lem-3.1 needs g >= 4 and m >= g+2, got m={m}, g={g}")
        return _lemma_3_1(m, g, cap, jobs)
    if tid == "lem-3.2":
        m, g = get("m"), get("g")
        _need(g >= 4 and m >= g + 2, f"lem-3.2 needs g >= 4 and m >= g+2, got m={m}, g={g}")
        rep = _family_chain_verdict(tid, {"m": m, "g": g}, _gi_chain(m, g), tol, tie_tol)
        rep.notes.append("chain runs to i = floor(g/2)")
        return rep
    if tid == "lem-3.5":
        m, g = get("m"), get("g")
        _need(g >= 4 and m >= max(2 * g - 2, g + 7), f"lem-3.5 needs g >= 4 and m >= max(2g-2, g+7), got m={m}, g={g}")
        gi = _gi_chain(m, g)
        chain = [gi[0], FamilySpec.of("Gv", m=m, g=g), gi[1]]
        return _family_chain_verdict(tid, {"m": m, "g": g}, chain, tol, tie_tol)
    if tid == "lem-3.4":
        m, g = get("m"), get("g")
        _need(g >= 3 and m >= max(2 * g - 2, g + 7), f"lem-3.4 needs m >= max(2g-2, g+7), got m={m}, g={g}")
        return _lemma_3_4(m, g, tol, tie_tol)
    if tid == "cor-2.2":
        m, g = get("m"), get("g")
        _need(g >= 3 and m >= 3 * g - 3, f"cor-2.2 needs m >= 3g-3, got m={m}, g={g}")
        return _chain_verdict(
            tid, {"m": m, "g": g}, [FamilySpec.of("G0", m=m, g=g)], m, ClassFilter.at_least(g), **common
        )
    if tid == "cor-2.3":
        m, g, g2 = get("m"), get("g"), get("g2")
        _need(3 <= g < g2 and m >= 3 * g2 - 3, f"cor-2.3 needs 3 <= g < g2 and m >= 3*g2-3, got m={m}, g={g}, g2={g2}")
        return _corollary_2_3(m, g, g2, **common)
    if tid == "cor-2.4":
        m = get("m")
        _need(m >= 5, f"cor-2.4 needs m >= 5, got m={m}")
        return _corollary_2_4(m, **common)
    raise AssertionError(tid)  # pragma: no cover


def theorem_1_4_chain(m: int) -> list[FamilySpec]:
    return [
        FamilySpec.of("Star", m=m),
        FamilySpec.of("G0", m=m, g=3),
        FamilySpec.of("T1", m=m),
        FamilySpec.of("B1", m=m),
        FamilySpec.of("B2", m=m),
        FamilySpec.of("Gi", m=m, g=3, i=1),
        FamilySpec.of("Gv", m=m, g=3),
        FamilySpec.of("T2", m=m),
        FamilySpec.of("G0", m=m, g=4),
        FamilySpec.of("T3", m=m),
        FamilySpec.of("T4", m=m),
    ]


def _lemma_3_1(m: int, g: int, cap: int, jobs: int) -> VerdictReport:
    delta = m - g + 1
    f = ClassFilter.equal(g, max_degree=delta)
    found = {c: G for c, G, _ in enumerate_with_certificates(m, f, cap=cap, jobs=jobs) if G.max_degree == delta}
    expected = _gi_chain(m, g) + [FamilySpec.of("Gv", m=m, g=g)]
    exp = {canonical_cert(s): s for s in expected}
    observed = sorted(
        (str(identify(G, c)) if identify(G, c) else emit_graph6(G)) for c, G in found.items()
    )
    passed = set(found) == set(exp) and len(found) == g // 2 + 1
    return VerdictReport(
        theorem="lem-3.1",
        params={"m": m, "g": g},
        expected=sorted(str(s) for s in expected),
        observed=observed,
        passed=passed,
        min_gap=None,
        counts={"graphs_enumerated": count(m, ClassFilter.equal(g), cap=cap), "graphs_in_class": len(found)},
    )


def _lemma_3_4(m: int, g: int, tol: float, tie_tol: float) -> VerdictReport:
    from .bounds import x0_lower_bound

    observed, notes = [], []
    ok = True
    gaps = []
    for spec in _gi_chain(m, g):
        lg = build(spec)
        pp = q_index(lg.graph, tol)
        x = pp.x
        v0 = lg.labels["0"]
        others = max(float(x[u]) for u in range(lg.graph.n) if u != v0)
        x0 = float(x[v0])
        rep = x0_lower_bound(m, g, pp.q)
        strict = x0 - others > tie_tol
        half = x0 * x0 - 0.5 > tie_tol
        bound_ok = x0 * x0 >= rep.bound_value - tie_tol and rep.bound_value > 0.5
        hs = rep.h_positive
        ok &= strict and half and bound_ok and hs
        gaps += [x0 - others, x0 * x0 - 0.5]
        observed.append(
            f"{spec}: x0={x0:.12g} next={others:.12g} x0^2={x0 * x0:.12g} bound={rep.bound_value:.12g} h>0={hs}"
        )
    return VerdictReport(
        theorem="lem-3.4",
        params={"m": m, "g": g},
        expected=[f"{s}: x0 strictly maximal, x0^2 > 1/2" for s in _gi_chain(m, g)],
        observed=observed,
        passed=bool(ok),
        min_gap=min(gaps),
        counts={"graphs_enumerated": 0, "graphs_in_class": len(_gi_chain(m, g))},
        notes=notes,
    )


def _corollary_2_3(m: int, g: int, g2: int, *, cap: int, tol: float, tie_tol: float, jobs: int) -> VerdictReport:
    a = score_class(m, ClassFilter.equal(g), cap=cap, tol=tol, jobs=jobs)
    b = score_class(m, ClassFilter.equal(g2), cap=cap, tol=tol, jobs=jobs)
    if not a or not b:
        raise ParameterError("one of the girth classes is empty")
    gap = a[0][0] - b[0][0]
    return VerdictReport(
        theorem="cor-2.3",
        params={"m": m, "g": g, "g2": g2},
        expected=[f"max q over girth {g} > max q over girth {g2}"],
        observed=[f"{a[0][0]:.12g} vs {b[0][0]:.12g}"],
        passed=gap > tie_tol,
        min_gap=gap,
        counts={"graphs_enumerated": count(m, cap=cap), "graphs_in_class": len(a) + len(b)},
    )


def _corollary_2_4(m: int, *, cap: int, tol: float, tie_tol: float, jobs: int) -> VerdictReport:
    lo = math.ceil(2 * m / 3)
    scored = score_class(m, ClassFilter.any(max_degree=m - 1), cap=cap, tol=tol, jobs=jobs)
    by_delta: dict[int, list[float]] = {}
    for q, _, G, _ in scored:
        if lo <= G.max_degree <= m - 1:
            by_delta.setdefault(G.max_degree, []).append(q)
    levels = sorted(by_delta)
    gaps = []
    observed = []
    for d in levels:
        lower = [q for dd in levels if dd < d for q in by_delta[dd]]
        if lower:
            gaps.append(min(by_delta[d]) - max(lower))
        observed.append(f"delta={d}: q in [{min(by_delta[d]):.12g}, {max(by_delta[d]):.12g}]")
    min_gap = min(gaps) if gaps else None
    return VerdictReport(
        theorem="cor-2.4",
        params={"m": m},
        expected=[f"q strictly increases with the maximum degree on {lo} <= delta <= {m - 1}"],
        observed=observed,
        passed=all(gp > tie_tol for gp in gaps),
        min_gap=min_gap,
        counts={"graphs_enumerated": len(scored), "graphs_in_class": sum(len(v) for v in by_delta.values())},
    )
