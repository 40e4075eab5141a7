"""Signless Laplacian, Q-index with certified residual, and switch checks.

``q_index`` runs shifted power iteration from the all-ones vector.  Because
the matrices are tiny, the iteration is advanced by repeated squaring of the
shifted matrix (each squaring doubles the number of power steps), followed
by plain power steps until the residual certificate is met.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DisconnectedGraphError, ParameterError
from .graph import Graph, components, is_connected

DEFAULT_TOL = 1e-12
TIE_TOL = 1e-9
GAP_TOL = 1e-9
MAX_ITERATIONS = 10**6


def q_matrix(G: Graph) -> np.ndarray:
    Q = np.zeros((G.n, G.n))
    for u, v in G.edges:
        Q[u, v] = Q[v, u] = 1.0
    Q[np.diag_indices(G.n)] = G.degrees
    return Q


@dataclass(frozen=True)
class PerronPair:
    q: float
    x: np.ndarray
    residual: float

    def entry(self, u: int) -> float:
        return float(self.x[u])


def _disconnected(G: Graph) -> DisconnectedGraphError:
    comps = components(G)
    desc = ", ".join("{" + ",".join(map(str, c)) + "}" for c in comps)
    return DisconnectedGraphError(f"graph has {len(comps)} components: {desc}")


def q_index(G: Graph, tol: float = DEFAULT_TOL) -> PerronPair:
    """Largest eigenvalue of ``Q(G)`` and its positive unit eigenvector.

    The returned residual ``max |Qx - qx|`` is at most ``tol * max(Q)``.
    """
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    if G.n == 0 or not is_connected(G):
        raise _disconnected(G)
    if G.n == 1:
        return PerronPair(0.0, np.ones(1), 0.0)
    Q = q_matrix(G)
    return _perron(Q, tol * G.max_degree)


def _perron(Q: np.ndarray, bound: float) -> PerronPair:
    n = Q.shape[0]
    delta = float(Q.diagonal().max())
    # q >= delta + 1 and spec(Q) >= 0, so this shift keeps the Perron root
    # strictly dominant in modulus
    shift = 0.45 * (delta + 1.0)
    S = Q - shift * np.eye(n)
    ones = np.ones(n)

    def certify(v: np.ndarray) -> tuple[float, np.ndarray, float]:
        v = v / np.linalg.norm(v)
        Qv = Q @ v
        q = float(v @ Qv)
        return q, v, float(np.abs(Qv - q * v).max())

    P = S
    steps = 1
    q, v, res = certify(P @ ones)
    while res > bound and steps < MAX_ITERATIONS:
        P = P @ P
        P /= np.abs(P).max()
        steps *= 2
        q, v, res = certify(P @ ones)
        if steps >= 1 << 20:
            break
    # plain power steps polish the last digits lost to squaring round-off
    while res > bound and steps < MAX_ITERATIONS:
        for _ in range(16):
            v = S @ v
            v /= np.linalg.norm(v)
        steps += 16
        q, v, res = certify(v)
    if res > bound:
        raise ConvergenceError(f"residual {res:.3e} above {bound:.3e} after {steps} steps")
    if v.sum() < 0:
        v = -v
    return PerronPair(q, v, res)


def perron_entry(G: Graph, u: int, tol: float = DEFAULT_TOL) -> float:
    return q_index(G, tol).entry(u)


def jacobi_eigenvalues(A: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    ascending.  Kept free of LAPACK so it can serve as an independent check."""
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    scale = max(1.0, float(np.abs(A).max()))
    for _ in range(max_sweeps):
        off = math.sqrt(float((A**2).sum(where=~np.eye(n, dtype=bool))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = A[p, r]
                if abs(apr) < 1e-300:
                    continue
                diff = A[r, r] - A[p, p]
                if abs(apr) < 1e-18 * abs(diff):
                    # theta**2 would overflow; tan of the angle is apr/diff
                    t = apr / diff
                else:
                    theta = diff / (2.0 * apr)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                Ap = A[:, p].copy()
                Ar = A[:, r].copy()
                A[:, p] = c * Ap - s * Ar
                A[:, r] = s * Ap + c * Ar
                Ap = A[p, :].copy()
                Ar = A[r, :].copy()
                A[p, :] = c * Ap - s * Ar
                A[r, :] = s * Ap + c * Ar
    else:
        raise ConvergenceError("Jacobi sweeps did not converge")
    return np.sort(np.diag(A))


# --- Perron-vector switching lemmas -------------------------------------------

@dataclass(frozen=True)
class SwitchReport:
    hypothesis_holds: bool
    q_before: float
    q_after: float
    conclusion_holds: bool
    result: Graph

    @property
    def increase(self) -> float:
        return self.q_after - self.q_before


def _after(G: Graph, remove: Iterable[tuple[int, int]], add: Iterable[tuple[int, int]]) -> Graph:
    H = G.with_edges(add=add, remove=remove).without_isolated()
    if not is_connected(H):
        raise ParameterError("the switch disconnects the graph")
    return H


def check_rotation(
    G: Graph,
    u: int,
    v: int,
    W: Sequence[int],
    *,
    x: np.ndarray | None = None,
    tol: float = DEFAULT_TOL,
    tie_tol: float = TIE_TOL,
    gap_tol: float = GAP_TOL,
) -> SwitchReport:
    """Move the edges ``vw`` (``w`` in ``W``) to ``uw`` and compare Q-indices.

    A vertex left isolated by the move is dropped before the comparison, as
    its eigenvalue 0 never affects the Q-index.
    """
    if u == v:
        raise ParameterError("u and v must be distinct")
    if not W:
        raise ParameterError("W must be non-empty")
    if not is_connected(G):
        raise _disconnected(G)
    for w in W:
        if w == u:
            raise ParameterError("u cannot be in W")
        if not G.has_edge(v, w):
            raise ParameterError(f"{w} is not a neighbour of {v}")
        if G.has_edge(u, w):
            raise ParameterError(f"{w} is already a neighbour of {u}")
    H = _after(G, [(v, w) for w in W], [(u, w) for w in W])
    if x is None:
        pp = q_index(G, tol)
        q0, x = pp.q, pp.x
    else:
        q0 = q_index(G, tol).q
    q1 = q_index(H, tol).q
    return SwitchReport(
        hypothesis_holds=bool(x[u] >= x[v] - tie_tol),
        q_before=q0,
        q_after=q1,
        conclusion_holds=q1 > q0 + gap_tol,
        result=H,
    )


def check_quad_switch(
    G: Graph,
    a: int,
    b: int,
    c: int,
    d: int,
    *,
    tol: float = DEFAULT_TOL,
    tie_tol: float = TIE_TOL,
    gap_tol: float = GAP_TOL,
) -> SwitchReport:
    """Replace edges ``ab, cd`` by ``ad, bc``; the hypothesis is
    ``(x_a - x_c)(x_d - x_b) > tie_tol``."""
    if len({a, b, c, d}) != 4:
        raise ParameterError("a, b, c, d must be distinct")
    if not (G.has_edge(a, b) and G.has_edge(c, d)):
        raise ParameterError("ab and cd must be edges")
    if G.has_edge(a, d) or G.has_edge(b, c):
        raise ParameterError("ad and bc must be non-edges")
    if not is_connected(G):
        raise _disconnected(G)
    H = _after(G, [(a, b), (c, d)], [(a, d), (b, c)])
    pp = q_index(G, tol)
    x = pp.x
    q1 = q_index(H, tol).q
    return SwitchReport(
        hypothesis_holds=bool((x[a] - x[c]) * (x[d] - x[b]) > tie_tol),
        q_before=pp.q,
        q_after=q1,
        conclusion_holds=q1 > pp.q + gap_tol,
        result=H,
    )
