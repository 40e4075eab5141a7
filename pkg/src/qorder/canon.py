"""Canonical labelling by partition refinement and individualization.

The canonical form of a graph is the lexicographically smallest upper-triangle
adjacency bit string over all discrete partitions reached by the
individualization-refinement search.  The search prunes siblings that are
equivalent under automorphisms already discovered and under twin
transpositions (two vertices with equal open or closed neighbourhoods), which
keeps graphs with many pendant vertices cheap.
"""

from __future__ import annotations

from .errors import ParameterError
from .graph import Graph, emit_graph6

DEFAULT_MAX_ORDER = 16


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    # Equitable refinement; new cells are ordered by neighbour count so the
    # result only depends on the input partition, never on vertex names.
    cells = [c for c in cells]
    i = 0
    while i < len(cells):
        mask = 0
        for v in cells[i]:
            mask |= 1 << v
        out = []
        split = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((adj[v] & mask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(cell)
            else:
                split = True
                out.extend(groups[k] for k in sorted(groups))
        if split:
            cells = out
            i = 0
        else:
            i += 1
    return cells


def _initial_cells(adj: tuple[int, ...]) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v, a in enumerate(adj):
        groups.setdefault(a.bit_count(), []).append(v)
    return [groups[k] for k in sorted(groups)]


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    n = len(order)
    code = 0
    for i in range(n - 1):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | (row >> order[j] & 1)
    return code


class _Search:
    __slots__ = ("adj", "n", "best_code", "best_order", "autos")

    def __init__(self, adj: tuple[int, ...]) -> None:
        self.adj = adj
        self.n = len(adj)
        self.best_code: int | None = None
        self.best_order: list[int] = []
        self.autos: list[list[int]] = []

    def run(self) -> None:
        self._visit(_initial_cells(self.adj), [])

    def _leaf(self, cells: list[list[int]]) -> None:
        order = [c[0] for c in cells]
        code = _code(self.adj, order)
        if self.best_code is None or code < self.best_code:
            self.best_code = code
            self.best_order = order
        elif code == self.best_code:
            gamma = [0] * self.n
            for a, b in zip(self.best_order, order):
                gamma[a] = b
            self.autos.append(gamma)

    def _visit(self, cells: list[list[int]], prefix: list[int]) -> None:
        cells = _refine(self.adj, cells)
        if len(cells) == self.n:
            self._leaf(cells)
            return
        t = next(k for k, c in enumerate(cells) if len(c) > 1)
        target = cells[t]
        tried: list[int] = []
        for v in target:
            if tried and self._equivalent(v, tried, prefix):
                continue
            tried.append(v)
            rest = [w for w in target if w != v]
            self._visit(cells[:t] + [[v], rest] + cells[t + 1 :], prefix + [v])

    def _equivalent(self, v: int, tried: list[int], prefix: list[int]) -> bool:
        adj = self.adj
        av = adj[v]
        for u in tried:
            au = adj[u]
            bu, bv = 1 << u, 1 << v
            if au & ~bv == av & ~bu:
                return True
        # orbit of v under stored automorphisms fixing the prefix pointwise
        gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        orbit = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        return any(u in orbit for u in tried)


def _twin_transpositions(adj: tuple[int, ...]) -> list[list[int]]:
    n = len(adj)
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            bu, bv = 1 << u, 1 << v
            if adj[u] & ~bv == adj[v] & ~bu:
                perm = list(range(n))
                perm[u], perm[v] = v, u
                out.append(perm)
    return out


def canonical_form(G: Graph, max_order: int = DEFAULT_MAX_ORDER) -> tuple[list[int], list[list[int]]]:
    """Canonical ``order`` together with automorphisms met during the search.

    The automorphisms (as vertex maps) generate a subgroup of ``Aut(G)``,
    often all of it; callers may only use them to merge equivalent choices.
    """
    if G.n > max_order:
        raise ParameterError(f"canonical labelling supports n <= {max_order}, got {G.n}")
    if G.n <= 1:
        return list(range(G.n)), []
    s = _Search(G.adj)
    s.run()
    return s.best_order, s.autos + _twin_transpositions(G.adj)


def canonical_labeling(G: Graph, max_order: int = DEFAULT_MAX_ORDER) -> list[int]:
    """Return ``order`` where ``order[i]`` is the vertex placed at canonical
    position ``i``."""
    return canonical_form(G, max_order)[0]


def canonical_graph(G: Graph, max_order: int = DEFAULT_MAX_ORDER) -> Graph:
    order = canonical_labeling(G, max_order)
    perm = [0] * G.n
    for i, v in enumerate(order):
        perm[v] = i
    return G.relabel(perm)


def canonical_certificate(G: Graph, max_order: int = DEFAULT_MAX_ORDER) -> bytes:
    """Bytes that are equal for two graphs exactly when they are isomorphic.

    The certificate is the graph6 encoding of the canonical relabelling, so
    sorting certificates orders graphs by vertex count first.
    """
    return emit_graph6(canonical_graph(G, max_order)).encode("ascii")


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m or sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_certificate(G) == canonical_certificate(H)
