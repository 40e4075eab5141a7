"""Equitable partitions and signless-Laplacian quotient matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import ParameterError
from .graph import Graph

if TYPE_CHECKING:
    from .exactpoly import ParamMatrix
    from .families import FamilySpec


@dataclass(frozen=True)
class Partition:
    cells: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    @classmethod
    def from_cells(cls, cells, names=None) -> Partition:
        cells = tuple(tuple(sorted(c)) for c in cells)
        if names is None:
            names = tuple(f"V{k + 1}" for k in range(len(cells)))
        if len(names) != len(cells):
            raise ParameterError("one name per cell required")
        return cls(cells, tuple(names))

    def to_json(self) -> dict[str, list[int]]:
        return {name: list(cell) for name, cell in zip(self.names, self.cells)}


def _validate(G: Graph, P: Partition) -> None:
    seen: set[int] = set()
    for cell in P.cells:
        if not cell:
            raise ParameterError("partition has an empty cell")
        for v in cell:
            if v in seen:
                raise ParameterError(f"vertex {v} appears in two cells")
            if not 0 <= v < G.n:
                raise ParameterError(f"vertex {v} is not a vertex of the graph")
            seen.add(v)
    if len(seen) != G.n:
        raise ParameterError("partition does not cover every vertex")


def _cell_masks(P: Partition) -> list[int]:
    masks = []
    for cell in P.cells:
        mk = 0
        for v in cell:
            mk |= 1 << v
        masks.append(mk)
    return masks


def is_equitable(G: Graph, P: Partition) -> bool:
    """Every vertex of a cell has the same number of neighbours in each cell
    (equal degree follows)."""
    _validate(G, P)
    masks = _cell_masks(P)
    for cell in P.cells:
        ref = [(G.adj[cell[0]] & mk).bit_count() for mk in masks]
        for v in cell[1:]:
            if [(G.adj[v] & mk).bit_count() for mk in masks] != ref:
                return False
    return True


def quotient_q_matrix(G: Graph, P: Partition) -> np.ndarray:
    """Integer quotient of ``Q(G)``: off-diagonal ``(i, j)`` counts neighbours
    in cell ``j``; the diagonal adds the common degree."""
    if not is_equitable(G, P):
        raise ParameterError("partition is not equitable")
    masks = _cell_masks(P)
    k = len(P.cells)
    M = np.zeros((k, k), dtype=np.int64)
    for i, cell in enumerate(P.cells):
        v = cell[0]
        for j, mk in enumerate(masks):
            M[i, j] = (G.adj[v] & mk).bit_count()
        M[i, i] += G.degrees[v]
    return M


def coarsest_equitable_partition(G: Graph) -> Partition:
    """Coarsest equitable refinement of the unit partition."""
    from .canon import _refine

    cells = _refine(G.adj, [list(range(G.n))]) if G.n else []
    return Partition.from_cells(cells)


# --- family partitions --------------------------------------------------------

def _family_cells(spec: FamilySpec, labels: dict[str, int], G: Graph):
    kind = spec.kind
    named = set(labels.values())

    def pendants_of(v: int) -> tuple[int, ...]:
        return tuple(u for u in G.neighbors(v) if G.degrees[u] == 1 and u not in named)

    L = labels
    if kind == "B2":
        return [
            ("V1", (L["1"], L["2"], L["w1"], L["w2"])),
            ("{0}", (L["0"],)),
            ("V2", pendants_of(L["0"])),
        ]
    if kind == "Gi" and spec["g"] == 3 and spec["i"] == 1:
        return [
            ("{0}", (L["0"],)),
            ("{1}", (L["1"],)),
            ("{2}", (L["2"],)),
            ("{w}", (L["w"],)),
            ("V3", pendants_of(L["0"])),
        ]
    if kind == "Gv" and spec["g"] == 3:
        return [
            ("{0}", (L["0"],)),
            ("{v}", (L["v"],)),
            ("{v1}", (L["v1"],)),
            ("V4", pendants_of(L["0"])),
            ("V5", (L["1"], L["2"])),
        ]
    if kind == "T2":
        u4 = L["u4"]
        return [
            ("{u3}", (L["u3"],)),
            ("{u4}", (u4,)),
            ("V6", tuple(u for u in G.neighbors(u4) if G.degrees[u] == 1)),
            ("V7", pendants_of(L["u3"])),
        ]
    if kind == "G0" and spec["g"] == 4:
        return [
            ("{0}", (L["0"],)),
            ("V8", (L["1"], L["3"])),
            ("{2}", (L["2"],)),
            ("V9", pendants_of(L["0"])),
        ]
    if kind == "Spider3":
        return [
            ("{center}", (L["center"],)),
            ("middles", (L["a1"], L["a2"], L["a3"])),
            ("ends", (L["b1"], L["b2"], L["b3"])),
            ("leaves", pendants_of(L["center"])),
        ]
    if kind == "H0":
        return [
            ("{0}", (L["0"],)),
            ("{1,3}", (L["1"], L["3"])),
            ("{2}", (L["2"],)),
            ("{v}", (L["v"],)),
            ("{v1}", (L["v1"],)),
            ("leaves", pendants_of(L["0"])),
        ]
    raise ParameterError(f"no equitable partition is defined for {spec}")


def has_family_partition(spec: FamilySpec) -> bool:
    k = spec.kind
    return (
        k in ("B2", "T2", "Spider3", "H0")
        or (k == "Gi" and spec["g"] == 3 and spec["i"] == 1)
        or (k == "Gv" and spec["g"] == 3)
        or (k == "G0" and spec["g"] == 4)
    )


def labeled_partition(spec: FamilySpec, G: Graph, labels: dict[str, int]) -> Partition:
    """Named partition of a family graph given its vertex labels, cells in
    matrix row order.  Cells that would be empty at small parameters (no
    anonymous pendants) are dropped."""
    cells = [(name, c) for name, c in _family_cells(spec, labels, G) if c]
    return Partition.from_cells([c for _, c in cells], [name for name, _ in cells])


def family_partition(spec: FamilySpec) -> Partition:
    """The named partition of the graph ``build(spec)``."""
    if not has_family_partition(spec):
        raise ParameterError(f"no equitable partition is defined for {spec}")
    from .families import build

    return build(spec).partition


def family_param_matrix(kind: str, grid: range | None = None) -> ParamMatrix:
    """Quotient matrix with entries ``a + b*m`` read off the actual family
    graphs: fitted from two sizes and checked on every size in ``grid``.

    ``kind`` is one of ``B2, G13, Gv3, T2, G04, Spider3, H0``; for the last
    two the parameter is the order ``n``.
    """
    from .exactpoly import ParamMatrix
    from .families import FamilySpec, build

    makers = {
        "B2": lambda t: FamilySpec.of("B2", m=t),
        "G13": lambda t: FamilySpec.of("Gi", m=t, g=3, i=1),
        "Gv3": lambda t: FamilySpec.of("Gv", m=t, g=3),
        "T2": lambda t: FamilySpec.of("T2", m=t),
        "G04": lambda t: FamilySpec.of("G0", m=t, g=4),
        "Spider3": lambda t: FamilySpec.of("Spider3", n=t),
        "H0": lambda t: FamilySpec.of("H0", n=t),
    }
    if kind not in makers:
        raise ParameterError(f"no quotient family {kind!r}")
    grid = grid if grid is not None else range(9, 17)
    ts = list(grid)
    if len(ts) < 2:
        raise ParameterError("need at least two sizes to fit a linear matrix")

    def numeric(t: int) -> np.ndarray:
        lg = build(makers[kind](t))
        return quotient_q_matrix(lg.graph, lg.partition)

    t0, t1 = ts[0], ts[1]
    A0, A1 = numeric(t0), numeric(t1)
    if A0.shape != A1.shape:
        raise ParameterError(f"{kind}: partition shape changes across the grid")
    slope = (A1 - A0) // (t1 - t0)
    if np.any(slope * (t1 - t0) != A1 - A0):
        raise ParameterError(f"{kind}: quotient entries are not integer-linear in the size")
    const = A0 - slope * t0
    entries = tuple(
        tuple((int(const[i, j]), int(slope[i, j])) for j in range(A0.shape[1]))
        for i in range(A0.shape[0])
    )
    pm = ParamMatrix(entries)
    for t in ts:
        if not np.array_equal(np.array(pm.at(t)), numeric(t)):
            raise ParameterError(f"{kind}: fitted matrix disagrees with the graph at size {t}")
    return pm
