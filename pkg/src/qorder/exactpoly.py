"""Exact polynomials in ``x`` and ``m`` over the integers.

Everything here stays in the integer polynomial ring: characteristic
polynomials come from the division-free Berkowitz recurrence, rational
identities are checked after clearing denominators, and root isolation
evaluates signs with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import ParameterError

Number = int | Fraction


class BivarPoly:
    """Polynomial ``sum c[i, j] * x**i * m**j`` with integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int], int] | None = None) -> None:
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def const(cls, c: int) -> BivarPoly:
        return cls({(0, 0): c})

    @classmethod
    def from_x_coeffs(cls, coeffs: Sequence[int]) -> BivarPoly:
        """``coeffs[i]`` multiplies ``x**i``."""
        return cls({(i, 0): c for i, c in enumerate(coeffs)})

    @classmethod
    def lift(cls, value: BivarPoly | int) -> BivarPoly:
        return value if isinstance(value, BivarPoly) else cls.const(value)

    def __add__(self, other):
        other = BivarPoly.lift(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-BivarPoly.lift(other))

    def __rsub__(self, other):
        return BivarPoly.lift(other) - self

    def __mul__(self, other):
        other = BivarPoly.lift(other)
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = BivarPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    @property
    def degree_m(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def eval_at(self, x0: Number, m0: Number) -> Number:
        total: Number = 0
        for (i, j), c in self.coeffs.items():
            total += c * Fraction(x0) ** i * Fraction(m0) ** j
        return total if not isinstance(total, Fraction) or total.denominator != 1 else int(total)

    def substitute_m(self, m0: int) -> BivarPoly:
        """Replace ``m`` by the integer ``m0``; the result only involves ``x``."""
        out: dict[tuple[int, int], int] = {}
        for (i, j), c in self.coeffs.items():
            out[(i, 0)] = out.get((i, 0), 0) + c * m0**j
        return BivarPoly(out)

    def shift_m(self, offset: int) -> BivarPoly:
        """Replace ``m`` by ``m + offset``."""
        return self.compose_m(M + offset)

    def compose_m(self, repl: BivarPoly) -> BivarPoly:
        out = BivarPoly()
        for (i, j), c in self.coeffs.items():
            out = out + BivarPoly({(i, 0): c}) * repl**j
        return out

    def x_coeffs(self) -> list[int]:
        """Ascending ``x`` coefficients; only valid when ``m`` is absent."""
        if self.degree_m > 0:
            raise ParameterError("polynomial still depends on m")
        out = [0] * (self.degree_x + 1)
        for (i, _), c in self.coeffs.items():
            out[i] = c
        return out

    def divmod_x(self, divisor: BivarPoly) -> tuple[BivarPoly, BivarPoly]:
        """Division by a divisor that is monic in ``x`` with no ``m`` in its
        leading term."""
        lead = divisor.degree_x
        lc = [c for (i, j), c in divisor.coeffs.items() if i == lead]
        if lc != [1] or any(j for (i, j) in divisor.coeffs if i == lead):
            raise ParameterError("divisor must be monic in x")
        q = BivarPoly()
        r = BivarPoly(dict(self.coeffs))
        while not r.is_zero() and r.degree_x >= lead:
            d = r.degree_x
            top = BivarPoly({(d - lead, j): c for (i, j), c in r.coeffs.items() if i == d})
            q = q + top
            r = r - top * divisor
        return q, r

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree_x, -1, -1):
            coef_m = {j: c for (ii, j), c in self.coeffs.items() if ii == i}
            if not coef_m:
                continue
            terms.append((i, _m_poly_str(coef_m)))
        out = []
        for i, (sign, body, single) in terms:
            xpart = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if xpart:
                if body == "1":
                    piece = xpart
                elif single:
                    piece = f"{body}*{xpart}"
                else:
                    piece = f"({body})*{xpart}"
            else:
                piece = body if single else f"({body})"
            if not out:
                out.append(("-" if sign < 0 else "") + piece)
            else:
                out.append((" - " if sign < 0 else " + ") + piece)
        return "".join(out)

    __repr__ = __str__


def _m_poly_str(coef_m: dict[int, int]) -> tuple[int, str, bool]:
    """Render the ``m``-coefficient of one ``x`` power; returns (sign, text,
    is_single_term).  A lone negative term is rendered unsigned."""
    items = sorted(coef_m.items(), reverse=True)
    if len(items) == 1:
        j, c = items[0]
        sign = -1 if c < 0 else 1
        c = abs(c)
        if j == 0:
            return sign, str(c), True
        mpart = "m" if j == 1 else f"m^{j}"
        return sign, mpart if c == 1 else f"{c}*{mpart}", True
    sign = -1 if items[0][1] < 0 else 1
    parts = []
    for j, c in items:
        c *= sign
        mpart = "" if j == 0 else ("m" if j == 1 else f"m^{j}")
        mag = abs(c)
        body = mpart if (mag == 1 and mpart) else (f"{mag}*{mpart}" if mpart else str(mag))
        if not parts:
            parts.append(body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return sign, "".join(parts), False


X = BivarPoly({(1, 0): 1})
M = BivarPoly({(0, 1): 1})


# --- matrices with entries linear in m ----------------------------------------

@dataclass(frozen=True)
class ParamMatrix:
    """Square matrix whose entry ``(a, b)`` stands for ``a + b*m``."""

    entries: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self) -> None:
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise ParameterError("ParamMatrix must be square")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[tuple[int, int] | int]]) -> ParamMatrix:
        out = []
        for row in rows:
            out.append(tuple((e, 0) if isinstance(e, int) else (int(e[0]), int(e[1])) for e in row))
        return cls(tuple(out))

    @property
    def size(self) -> int:
        return len(self.entries)

    def at(self, m0: int) -> list[list[int]]:
        return [[a + b * m0 for a, b in row] for row in self.entries]

    def poly_entries(self) -> list[list[BivarPoly]]:
        return [[BivarPoly({(0, 0): a, (0, 1): b}) for a, b in row] for row in self.entries]


def _berkowitz(A: list[list[BivarPoly]]) -> list[BivarPoly]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(x I - A) = sum c_k x^(n-k)``,
    using ring operations only."""
    n = len(A)
    vec = [BivarPoly.const(1), -A[0][0]]
    for r in range(1, n):
        R = [A[r][j] for j in range(r)]       # row r, columns < r
        C = [A[i][r] for i in range(r)]       # column r, rows < r
        S = [row[:r] for row in A[:r]]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R C, -R S C, -R S^2 C, ...
        col = [BivarPoly.const(1), -a]
        w = C
        for _ in range(r):
            col.append(-sum((R[j] * w[j] for j in range(r)), BivarPoly()))
            w = [sum((S[i][j] * w[j] for j in range(r)), BivarPoly()) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = BivarPoly()
            for j in range(min(i, len(vec) - 1) + 1):
                if i - j < len(col):
                    acc = acc + col[i - j] * vec[j]
            new.append(acc)
        vec = new
    return vec


def charpoly(Mat: ParamMatrix | Sequence[Sequence[BivarPoly | int]]) -> BivarPoly:
    """``det(x I - M)`` exactly in ``x`` and ``m``."""
    if isinstance(Mat, ParamMatrix):
        A = Mat.poly_entries()
    else:
        A = [[BivarPoly.lift(e) for e in row] for row in Mat]
        if any(len(row) != len(A) for row in A):
            raise ParameterError("matrix must be square")
    n = len(A)
    if n == 0:
        return BivarPoly.const(1)
    coeffs = _berkowitz(A)
    out = BivarPoly()
    for k, c in enumerate(coeffs):
        out = out + c * BivarPoly({(n - k, 0): 1})
    return out


# --- polynomials named in the ordering proofs ----------------------------------

x, m = X, M


def _phi1() -> BivarPoly:
    # the size variable plays the role of the order n
    return x**3 - m * x**2 + (3 * m - 8) * x - m


def _phi2() -> BivarPoly:
    return (
        x**5
        - (m + 5) * x**4
        + (7 * m + 1) * x**3
        - (15 * m - 17) * x**2
        + (10 * m - 8) * x
        - 2 * m
    )


def _h1() -> BivarPoly:
    return x**6 - 17 * x**5 + 110 * x**4 - 378 * x**3 + 716 * x**2 - 720 * x + 312


def _h2(g: int) -> BivarPoly:
    return (x**4 - 10 * x**3 + 42 * x**2 - 84 * x + 72) * (x - (m - g + 2)) + 4 * (
        x**2 - 6 * x + 12
    ) * (x - 1) ** 2 * (x - g)


def _h3(g: int) -> BivarPoly:
    return (x**2 - 4 * x + 6) * (x**2 - 6 * x + 12) * (x**2 - 2 * x + m - g)


NAMED_POLYS = {
    "phi1": _phi1,
    "phi2": _phi2,
    "phiB2": lambda: x**3 - (m + 2) * x**2 + (3 * m - 3) * x - 8,
    "phiG13": lambda: (
        x**5 - (m + 5) * x**4 + (6 * m + 3) * x**3 - (9 * m - 1) * x**2 + (3 * m + 8) * x - 4
    ),
    "phiGv3": lambda: (
        x**5 - (m + 5) * x**4 + (6 * m + 4) * x**3 - (10 * m - 2) * x**2 + (3 * m + 12) * x - 4
    ),
    "phiT2": lambda: x**4 - (m + 3) * x**3 + (4 * m - 3) * x**2 - (m + 1) * x,
    "phiG04": lambda: x**4 - (m + 3) * x**3 + (4 * m - 2) * x**2 - 2 * m * x,
    "h1": _h1,
    "h2": _h2,
    "h3": _h3,
    "h": lambda: (13 - 3 * m) * x + m - 3,
}

_NEEDS_G = {"h2", "h3"}


def named_poly(name: str, g: int | None = None) -> BivarPoly:
    """Polynomial ``name`` as printed; ``h2`` and ``h3`` take the girth ``g``.

    For ``h1``, ``h2``, ``h3`` the variable ``x`` stands for ``q``.
    """
    if name not in NAMED_POLYS:
        raise ParameterError(f"unknown polynomial {name!r}")
    if name in _NEEDS_G:
        if g is None:
            raise ParameterError(f"{name} needs the girth g")
        return NAMED_POLYS[name](g)
    return NAMED_POLYS[name]()


# Quotient matrices as printed, rows in partition order.
PRINTED_MATRICES: dict[str, ParamMatrix] = {
    "B2": ParamMatrix.from_rows([[3, 1, 0], [4, (-2, 1), (-6, 1)], [0, 1, 1]]),
    "G13": ParamMatrix.from_rows(
        [
            [(-2, 1), 1, 1, 0, (-4, 1)],
            [1, 3, 1, 1, 0],
            [1, 1, 2, 0, 0],
            [0, 1, 0, 1, 0],
            [1, 0, 0, 0, 1],
        ]
    ),
    "Gv3": ParamMatrix.from_rows(
        [
            [(-2, 1), 1, 0, (-5, 1), 2],
            [1, 2, 1, 0, 0],
            [0, 1, 1, 0, 0],
            [1, 0, 0, 1, 0],
            [1, 0, 0, 0, 3],
        ]
    ),
    "T2": ParamMatrix.from_rows(
        [[(-2, 1), 1, 0, (-3, 1)], [1, 3, 2, 0], [0, 1, 1, 0], [1, 0, 0, 1]]
    ),
    "G04": ParamMatrix.from_rows(
        [[(-2, 1), 2, 0, (-4, 1)], [1, 2, 1, 0], [0, 2, 2, 0], [1, 0, 0, 1]]
    ),
}

# family quotient kind -> printed characteristic polynomial
QUOTIENT_POLYS = {
    "B2": "phiB2",
    "G13": "phiG13",
    "Gv3": "phiGv3",
    "T2": "phiT2",
    "G04": "phiG04",
    "Spider3": "phi1",
    "H0": "phi2",
}


# --- identities -----------------------------------------------------------------

def _eq2_numerator(k: BivarPoly) -> BivarPoly:
    """``2 (x-1) (x^2-3x+1) f(x)`` with ``k = m - g``, as a polynomial."""
    D = x**2 - 3 * x + 1
    return (x - k - 1) * (x - 1) * D - (k - 2) * D - 3 * (x - 1) ** 2


def identity_sides(name: str, polys: dict[str, BivarPoly] | None = None) -> list[tuple[BivarPoly, BivarPoly]]:
    """Pairs ``(lhs, rhs)`` that must agree for identity ``name``.

    ``polys`` overrides named polynomials, which is how mutation tests feed
    in a perturbed coefficient.
    """
    P = {k: named_poly(k) for k in NAMED_POLYS if k not in _NEEDS_G}
    if polys:
        P.update(polys)
    if name == "eq4":
        return [(P["phiG13"], P["phiB2"] * (x**2 - 3 * x) + (3 * m - 16) * x - 4)]
    if name == "eq5":
        return [(P["phiGv3"], P["phiG13"] + x * (x**2 - (m - 1) * x + 4))]
    if name == "eq6":
        q, r = P["phiT2"].divmod_x(x)
        if not r.is_zero():
            return [(r, BivarPoly())]
        return [(P["phiGv3"], (x - 2) * P["phiT2"] + q + P["h"])]
    if name == "eq7":
        return [(P["phiG04"], P["phiT2"] + x * (x + (1 - m)))]
    if name == "eq2-odd-g":
        # m plays the role of k = m - g; valid for every g >= 5 at once
        return [(_eq2_numerator(m), x * P["phi1"].shift_m(5))]
    if name == "eq2-g4":
        lhs = _eq2_numerator(m - 4) * (x**2 - 4 * x + 2)
        return [(lhs, x * (P["phi2"] + 2 * x - 2))]
    if name == "eq3":
        return [_eq3_sides(g) for g in range(3, 21)]
    if name in ("phi1-quotient", "phi2-quotient"):
        return _quotient_sides(name, P)
    raise ParameterError(f"unknown identity {name!r}")


def _eq3_sides(g: int) -> tuple[BivarPoly, BivarPoly]:
    # lower bound on x0^2 from the norm estimate, cleared of denominators:
    #   N/D with N = 1 - (g-2)*2/A - (1 + 1/B)*3/C,  D = 1 + (m-g-1)/B
    #   A = 2 + (x-2)^2, B = (x-1)^2, C = 3 + (x-3)^2
    A = 2 + (x - 2) ** 2
    B = (x - 1) ** 2
    C = 3 + (x - 3) ** 2
    num = A * B * C - 2 * (g - 2) * B * C - 3 * (B + 1) * A   # N * A*B*C
    den = (B + m - g - 1) * A * C                              # D * A*B*C
    h1, h2, h3 = _h1(), _h2(g), _h3(g)
    # num/den == (h1 + h2)/(2 h3) + 1/2  <=>  2 h3 num == (h1 + h2 + h3) den
    return (2 * h3 * num, (h1 + h2 + h3) * den)


def _quotient_sides(name: str, P: dict[str, BivarPoly]) -> list[tuple[BivarPoly, BivarPoly]]:
    from .families import FamilySpec, build
    from .partitions import family_param_matrix, quotient_q_matrix

    kind, poly = ("Spider3", "phi1") if name == "phi1-quotient" else ("H0", "phi2")
    # orders from here on have a non-empty pendant cell, which adds the factor x
    start = 8 if kind == "Spider3" else 7
    target = x * P[poly]
    pairs = [(charpoly(family_param_matrix(kind, range(start, 21))), target)]
    for n in range(start, 21):
        lg = build(FamilySpec.of(kind, n=n))
        Q = quotient_q_matrix(lg.graph, lg.partition)
        pairs.append((charpoly([[int(v) for v in row] for row in Q]), target.substitute_m(n)))
    return pairs


IDENTITIES = (
    "eq2-odd-g",
    "eq2-g4",
    "eq3",
    "eq4",
    "eq5",
    "eq6",
    "eq7",
    "phi1-quotient",
    "phi2-quotient",
)


def verify_identity(name: str, polys: dict[str, BivarPoly] | None = None) -> bool:
    """True iff every side pair of ``name`` is equal coefficientwise."""
    return all(lhs == rhs for lhs, rhs in identity_sides(name, polys))


# --- roots ----------------------------------------------------------------------

def _as_coeffs(p: BivarPoly | Sequence[int]) -> list[int]:
    return p.x_coeffs() if isinstance(p, BivarPoly) else [int(c) for c in p]


def _horner(coeffs: list[int], t: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def largest_root(
    p: BivarPoly | Sequence[int],
    bracket: tuple[Rational | float, Rational | float],
    tol: float = 1e-13,
) -> float:
    """Bisect to a root of the univariate ``p`` inside ``bracket``.

    Signs are evaluated exactly.  The caller guarantees that ``p`` has no
    root above the bracket, so the root found is the largest one whenever the
    bracket isolates it.
    """
    coeffs = _as_coeffs(p)
    lo, hi = Fraction(bracket[0]), Fraction(bracket[1])
    if lo > hi:
        raise ParameterError("empty bracket")
    s_lo, s_hi = _sign(_horner(coeffs, lo)), _sign(_horner(coeffs, hi))
    if s_hi == 0:
        return float(hi)
    if s_lo * s_hi >= 0:
        raise ParameterError("polynomial does not change sign on the bracket")
    return _bisect(coeffs, lo, hi, tol)


def _bisect(coeffs: list[int], lo: Fraction, hi: Fraction, tol: float) -> float:
    s_hi = _sign(_horner(coeffs, hi))
    tol_f = Fraction(tol)
    while hi - lo > tol_f:
        mid = (lo + hi) / 2
        s = _sign(_horner(coeffs, mid))
        if s == 0:
            return float(mid)
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return float((lo + hi) / 2)


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= f * c
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _sturm_chain(coeffs: list[int]) -> list[list[Fraction]]:
    p = [Fraction(c) for c in coeffs]
    while p and p[-1] == 0:
        p.pop()
    if len(p) < 2:
        raise ParameterError("need a polynomial of degree at least 1")
    chain = [p, [i * c for i, c in enumerate(p)][1:]]
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain: list[list[Fraction]], t: Fraction) -> int:
    signs = [s for s in (_sign(_horner(q, t)) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: BivarPoly | Sequence[int], lo: Rational | float, hi: Rational | float) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (Sturm's theorem, exact)."""
    chain = _sturm_chain(_as_coeffs(p))
    return _sign_changes(chain, Fraction(lo)) - _sign_changes(chain, Fraction(hi))


def largest_real_root(p: BivarPoly | Sequence[int], tol: float = 1e-13) -> float:
    """Largest real root of a univariate integer polynomial, isolated with a
    Sturm chain and refined by bisection, so no bracket is needed."""
    coeffs = _as_coeffs(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    chain = _sturm_chain(coeffs)
    lead = abs(Fraction(coeffs[-1]))
    hi = 1 + max(abs(Fraction(c)) / lead for c in coeffs[:-1])  # Cauchy bound
    lo = -hi
    if _sign_changes(chain, lo) - _sign_changes(chain, hi) == 0:
        raise ParameterError("polynomial has no real root")
    tol_f = Fraction(tol)
    while hi - lo > tol_f:
        mid = (lo + hi) / 2
        if _sign_changes(chain, mid) - _sign_changes(chain, hi) > 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
