"""Constructors and recognizers for the named extremal graphs.

Vertex numbering is fixed per kind: cycle vertices ``0..g-1`` first, then the
named extra vertices, then anonymous pendant vertices.  Tree kinds put the
hub first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .canon import canonical_certificate
from .errors import ParameterError
from .graph import Graph

# Parameters each kind takes, in text-form order.
KIND_PARAMS: dict[str, tuple[str, ...]] = {
    "Cycle": ("g",),
    "CyclePlus": ("g",),
    "Star": ("m",),
    "G0": ("m", "g"),
    "Gi": ("m", "g", "i"),
    "Gv": ("m", "g"),
    "B1": ("m",),
    "B2": ("m",),
    "T1": ("m",),
    "T2": ("m",),
    "T3": ("m",),
    "T4": ("m",),
    "Spider3": ("n",),
    "H0": ("n",),
}

# Order in which identify() tries kinds; earlier kinds win on coincidences
# such as H0(n) == Gv(n, 4).
IDENTIFY_ORDER = tuple(KIND_PARAMS)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, kind: str, **params: int) -> FamilySpec:
        if kind not in KIND_PARAMS:
            raise ParameterError(f"unknown family kind {kind!r}")
        names = KIND_PARAMS[kind]
        if set(params) != set(names):
            raise ParameterError(f"{kind} takes parameters {names}, got {tuple(params)}")
        return cls(kind, tuple((p, int(params[p])) for p in names))

    def __getitem__(self, name: str) -> int:
        return dict(self.params)[name]

    def __str__(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({inner})"

    @property
    def size(self) -> int:
        """Edge count of the realized graph."""
        p = dict(self.params)
        if self.kind == "Cycle":
            return p["g"]
        if self.kind == "CyclePlus":
            return p["g"] + 1
        if self.kind == "Spider3":
            return p["n"] - 1
        if self.kind == "H0":
            return p["n"]
        return p["m"]


_SPEC_RE = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*\((.*)\)\s*$")


def parse_spec(text: str) -> FamilySpec:
    """Parse the text form, e.g. ``"Gi(m=12,g=4,i=2)"``.  Positional values
    in parameter order are accepted too: ``"Gi(12,4,2)"``."""
    mo = _SPEC_RE.match(text)
    if not mo:
        raise ParameterError(f"cannot parse family spec {text!r}")
    kind, body = mo.group(1), mo.group(2).strip()
    if kind not in KIND_PARAMS:
        raise ParameterError(f"unknown family kind {kind!r}")
    names = KIND_PARAMS[kind]
    values: dict[str, int] = {}
    parts = [p.strip() for p in body.split(",")] if body else []
    try:
        for pos, part in enumerate(parts):
            if "=" in part:
                k, v = (s.strip() for s in part.split("=", 1))
            else:
                if pos >= len(names):
                    raise ParameterError(f"too many parameters in {text!r}")
                k, v = names[pos], part
            values[k] = int(v)
    except ValueError as exc:
        raise ParameterError(f"bad parameter value in {text!r}") from exc
    return FamilySpec.of(kind, **values)


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    spec: FamilySpec
    labels: dict[str, int] = field(hash=False, compare=False)
    partition: object | None = field(default=None, hash=False, compare=False)


def _need(cond: bool, spec_text: str, why: str) -> None:
    if not cond:
        raise ParameterError(f"{spec_text}: {why}")


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[str, int] = {}

    def vertex(self, label: str | None = None) -> int:
        v = self.n
        self.n += 1
        if label is not None:
            self.labels[label] = v
        return v

    def cycle(self, g: int) -> list[int]:
        vs = [self.vertex(str(k)) for k in range(g)]
        self.edges += [(vs[k], vs[(k + 1) % g]) for k in range(g)]
        return vs

    def pendants(self, at: int, count: int) -> list[int]:
        out = []
        for _ in range(count):
            p = self.vertex()
            self.edges.append((at, p))
            out.append(p)
        return out

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def graph(self) -> Graph:
        return Graph(self.n, self.edges)


def _check(spec: FamilySpec) -> None:
    p = dict(spec.params)
    s = str(spec)
    k = spec.kind
    if k in ("Cycle", "CyclePlus", "G0", "Gi", "Gv"):
        _need(p["g"] >= 3, s, "girth must be at least 3")
    if k == "Star":
        _need(p["m"] >= 1, s, "needs m >= 1")
    elif k == "G0":
        _need(p["m"] >= p["g"], s, "needs m >= g")
    elif k == "Gi":
        _need(1 <= p["i"] <= p["g"] // 2, s, "needs 1 <= i <= floor(g/2)")
        _need(p["m"] >= p["g"] + 1, s, "needs m >= g+1")
    elif k == "Gv":
        _need(p["m"] >= p["g"] + 2, s, "needs m >= g+2")
    elif k == "B1":
        _need(p["m"] >= 5, s, "needs m >= 5")
    elif k == "B2":
        _need(p["m"] >= 6, s, "needs m >= 6")
    elif k == "T1":
        _need(p["m"] >= 3, s, "needs m >= 3")
    elif k in ("T2", "T4"):
        _need(p["m"] >= 4, s, "needs m >= 4")
    elif k == "T3":
        _need(p["m"] >= 5, s, "needs m >= 5")
    elif k == "Spider3":
        _need(p["n"] >= 7, s, "needs n >= 7")
    elif k == "H0":
        _need(p["n"] >= 6, s, "needs n >= 6")


def build(spec: FamilySpec) -> LabeledGraph:
    """Realize ``spec`` as a labelled graph with its distinguished vertices."""
    _check(spec)
    p = dict(spec.params)
    b = _Builder()
    k = spec.kind
    if k == "Cycle":
        b.cycle(p["g"])
    elif k == "CyclePlus":
        c = b.cycle(p["g"])
        b.edge(c[0], b.vertex("w"))
    elif k == "Star":
        hub = b.vertex("0")
        b.pendants(hub, p["m"])
    elif k == "G0":
        c = b.cycle(p["g"])
        b.pendants(c[0], p["m"] - p["g"])
    elif k == "Gi":
        m, g, i = p["m"], p["g"], p["i"]
        c = b.cycle(g)
        b.edge(c[i], b.vertex("w"))
        b.pendants(c[0], m - g - 1)
    elif k == "Gv":
        m, g = p["m"], p["g"]
        c = b.cycle(g)
        v = b.vertex("v")
        v1 = b.vertex("v1")
        b.edge(c[0], v)
        b.edge(v, v1)
        b.pendants(c[0], m - g - 2)
    elif k == "B1":
        # triangles 0-1-2 and 0-1-3 share the edge 01; pendants hang on 0
        v0, v1, v2, v3 = (b.vertex(str(j)) for j in range(4))
        b.edges += [(v0, v1), (v0, v2), (v1, v2), (v0, v3), (v1, v3)]
        b.pendants(v0, p["m"] - 5)
    elif k == "B2":
        v0, v1, v2 = (b.vertex(str(j)) for j in range(3))
        w1, w2 = b.vertex("w1"), b.vertex("w2")
        b.edges += [(v0, v1), (v0, v2), (v1, v2), (v0, w1), (v0, w2), (w1, w2)]
        b.pendants(v0, p["m"] - 6)
    elif k == "T1":
        hub = b.vertex("center")
        u0, u1, u2 = b.vertex("u0"), b.vertex("u1"), b.vertex("u2")
        b.edges += [(hub, u0), (u0, u1), (hub, u2)]
        b.pendants(hub, p["m"] - 3)
    elif k == "T2":
        u3, u4 = b.vertex("u3"), b.vertex("u4")
        b.edge(u3, u4)
        b.pendants(u4, 2)
        b.pendants(u3, p["m"] - 3)
    elif k == "T3":
        hub = b.vertex("center")
        u5, u6 = b.vertex("u5"), b.vertex("u6")
        mid, u7 = b.vertex(), b.vertex("u7")
        b.edges += [(hub, u5), (u5, u6), (hub, mid), (mid, u7)]
        b.pendants(hub, p["m"] - 4)
    elif k == "T4":
        hub = b.vertex("center")
        u8 = b.vertex("u8")
        mid, u9, u10 = b.vertex(), b.vertex("u9"), b.vertex("u10")
        b.edges += [(hub, u8), (hub, mid), (mid, u9), (u9, u10)]
        b.pendants(hub, p["m"] - 4)
    elif k == "Spider3":
        hub = b.vertex("center")
        for leg in range(3):
            a = b.vertex(f"a{leg + 1}")
            z = b.vertex(f"b{leg + 1}")
            b.edges += [(hub, a), (a, z)]
        b.pendants(hub, p["n"] - 7)
    elif k == "H0":
        c = b.cycle(4)
        v = b.vertex("v")
        v1 = b.vertex("v1")
        b.edge(c[0], v)
        b.edge(v, v1)
        b.pendants(c[0], p["n"] - 6)
    else:  # pragma: no cover - guarded by FamilySpec.of
        raise ParameterError(f"unknown kind {k!r}")
    G = b.graph()
    from .partitions import has_family_partition, labeled_partition

    partition = labeled_partition(spec, G, b.labels) if has_family_partition(spec) else None
    return LabeledGraph(G, spec, dict(b.labels), partition)


def family_graph(text_or_spec: str | FamilySpec) -> Graph:
    spec = parse_spec(text_or_spec) if isinstance(text_or_spec, str) else text_or_spec
    return build(spec).graph


def specs_of_size(m: int) -> list[FamilySpec]:
    """Every valid spec whose realized graph has ``m`` edges, in identify order."""
    out: list[FamilySpec] = []
    for kind in IDENTIFY_ORDER:
        names = KIND_PARAMS[kind]
        candidates: list[dict[str, int]] = []
        if names == ("g",):
            g = m if kind == "Cycle" else m - 1
            candidates.append({"g": g})
        elif names == ("m",):
            candidates.append({"m": m})
        elif names == ("n",):
            candidates.append({"n": m + 1 if kind == "Spider3" else m})
        elif names == ("m", "g"):
            candidates += [{"m": m, "g": g} for g in range(3, m + 1)]
        elif names == ("m", "g", "i"):
            candidates += [
                {"m": m, "g": g, "i": i} for g in range(3, m + 1) for i in range(1, g // 2 + 1)
            ]
        for params in candidates:
            spec = FamilySpec.of(kind, **params)
            try:
                _check(spec)
            except ParameterError:
                continue
            out.append(spec)
    return out


_CATALOG: dict[int, list[tuple[bytes, FamilySpec]]] = {}


def _catalog(m: int) -> list[tuple[bytes, FamilySpec]]:
    if m not in _CATALOG:
        _CATALOG[m] = [(canonical_certificate(build(s).graph), s) for s in specs_of_size(m)]
    return _CATALOG[m]


def identify(G: Graph, certificate: bytes | None = None) -> FamilySpec | None:
    """Name ``G`` by the first matching kind in :data:`IDENTIFY_ORDER`."""
    if G.m == 0 or G.n > 16:
        return None
    cert = certificate if certificate is not None else canonical_certificate(G)
    for c, spec in _catalog(G.m):
        if c == cert:
            return spec
    return None
