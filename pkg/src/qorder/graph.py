"""Immutable simple graphs on dense integer vertices, plus graph6 I/O."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence

from .errors import Graph6Error, ParameterError

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are stored as a sorted tuple of pairs ``(u, v)`` with ``u < v``.
    Instances are immutable and hashable; equality is labelled equality
    (use :func:`qorder.canon.canonical_certificate` for isomorphism).
    """

    __slots__ = ("n", "edges", "degrees", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        seen: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            seen.add((u, v) if u < v else (v, u))
        norm = tuple(sorted(seen))
        adj = [0] * n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", norm)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "degrees", tuple(a.bit_count() for a in adj))
        object.__setattr__(self, "_hash", hash((n, norm)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbors(self, v: int) -> list[int]:
        a = self.adj[v]
        out = []
        while a:
            low = a & -a
            out.append(low.bit_length() - 1)
            a ^= low
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> Graph:
        """Return a copy with ``remove`` deleted and ``add`` inserted."""
        drop = {(min(e), max(e)) for e in remove}
        for e in drop:
            if not self.has_edge(*e):
                raise ParameterError(f"edge {e} is not in the graph")
        kept = [e for e in self.edges if e not in drop]
        new = [(min(e), max(e)) for e in add]
        for e in new:
            if self.has_edge(*e) and e not in drop:
                raise ParameterError(f"edge {e} already present")
        return Graph(self.n, kept + new)

    def add_vertex(self, attach_to: int) -> Graph:
        """New pendant vertex ``n`` joined to ``attach_to``."""
        return Graph(self.n + 1, self.edges + ((attach_to, self.n),))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def induced(self, keep: Sequence[int]) -> Graph:
        """Subgraph induced on ``keep``, renumbered in the given order."""
        index = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            ((index[u], index[v]) for u, v in self.edges if u in index and v in index),
        )

    def without_isolated(self) -> Graph:
        keep = [v for v in range(self.n) if self.degrees[v] > 0]
        if len(keep) == self.n:
            return self
        return self.induced(keep)


def make_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Normalize ``edge_list`` into a :class:`Graph`; duplicates are merged."""
    return Graph(n, edge_list)


def components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in G.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        raise ParameterError("connectivity is undefined for the empty graph")
    reached = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= G.adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~reached
        reached |= frontier
    return reached == (1 << G.n) - 1


def girth(G: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` for a forest.

    ``None`` is the acyclic value: it is not comparable with cycle lengths,
    so girth filters have to test for it explicitly.
    """
    if G.m + len(components(G)) == G.n:
        return None
    best = G.n + 1
    for root in range(G.n):
        dist = [-1] * G.n
        parent = [-1] * G.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in G.neighbors(u):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


# --- graph6 -----------------------------------------------------------------

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ParameterError(f"graph6 cannot encode n={n}")


def emit_graph6(G: Graph) -> str:
    """Header-free graph6 encoding of ``G``."""
    bits = []
    for j in range(1, G.n):
        row = G.adj[j]
        bits.extend((row >> i) & 1 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(G.n) + body


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header, surrounding
    whitespace ignored). Padding bits must be zero."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER) :]
    if not s:
        raise Graph6Error("empty graph6 input")
    data = []
    for ch in s:
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126")
        data.append(c - 63)
    if data[0] < 63:
        n, pos = data[0], 1
    elif len(data) >= 4 and data[1] < 63:
        n, pos = (data[1] << 12) | (data[2] << 6) | data[3], 4
        if n < 63:
            raise Graph6Error("non-minimal length header")
    elif len(data) >= 8 and data[1] == 63:
        n = 0
        for d in data[2:8]:
            n = (n << 6) | d
        pos = 8
        if n < 258048:
            raise Graph6Error("non-minimal length header")
    else:
        raise Graph6Error("truncated length header")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise Graph6Error("trailing garbage after graph6 data")
    value = 0
    for d in body:
        value = (value << 6) | d
    pad = need * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("non-zero padding bits")
    value >>= pad
    edges = []
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                edges.append((i, j))
            k -= 1
    return Graph(n, edges)
