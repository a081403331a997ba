"""Laurent polynomials on the torus, deformations, and degeneracy tests.

A LaurentPoly stores a map from integer exponent vectors to nonzero
coefficients.  Coefficients are either FqElem from one finite field or
exact Fractions (field None); insertion order of terms is preserved and
is the order the monomial table uses.

Derivatives here are logarithmic, t_i * d/dt_i: they act term-wise by
multiplying with the exponent, never leave the Laurent ring, and have
the same torus zero set as the plain partials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .budget import charge
from .errors import (BudgetExceeded, FaceMismatch, InputError, TableMismatch,
                     ZeroCoordinate)
from .ffield import FieldSpec, FqElem, discrete_table, embed, make_field
from .polytope import (Face, Polytope, face_contains, faces_not_containing_origin,
                       newton_polyhedron)

__all__ = [
    "LaurentPoly",
    "Deformation",
    "MonomialTable",
    "monomial_table",
    "evaluate",
    "log_derivative",
    "specialize",
    "face_restrict",
    "phi_map",
    "NondegeneracyVerdict",
    "check_nondegenerate",
    "critical_count",
    "default_search_depth",
]


def _coerce(c, field: FieldSpec | None):
    if field is None:
        if isinstance(c, FqElem):
            raise InputError("field element in a rational polynomial")
        return Fraction(c)
    if isinstance(c, FqElem):
        if c.field != field:
            raise InputError("coefficient from a different field")
        return c
    if isinstance(c, int):
        return field.from_int(c)
    raise InputError(f"cannot coerce {c!r} into {field!r}")


class LaurentPoly:
    """Sum of c_w * t^w over a finite set of integer exponent vectors."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n: int, terms: Iterable[tuple[Sequence[int], object]] = (),
                 field: FieldSpec | None = None):
        if n < 1:
            raise InputError("need at least one variable")
        self.n = n
        self.field = field
        collected: dict[tuple[int, ...], object] = {}
        for w, c in terms:
            w = tuple(int(x) for x in w)
            if len(w) != n:
                raise InputError(f"exponent {w} has wrong length")
            c = _coerce(c, field)
            if w in collected:
                c = collected[w] + c
            collected[w] = c
        self.terms = {w: c for w, c in collected.items() if c}

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.terms)

    def coefficient(self, w: Sequence[int]):
        w = tuple(int(x) for x in w)
        if w in self.terms:
            return self.terms[w]
        return Fraction(0) if self.field is None else self.field.zero()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, LaurentPoly) and self.n == other.n
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if self.n != other.n or self.field != other.field:
            raise InputError("mixed variable counts or coefficient fields")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        return LaurentPoly(self.n, list(self.terms.items()) + list(other.terms.items()),
                           self.field)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, [(w, -c) for w, c in self.terms.items()], self.field)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        out = []
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(w1, w2)), c1 * c2))
        return LaurentPoly(self.n, out, self.field)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly(self.n, [(w, v * _coerce(c, self.field))
                                    for w, v in self.terms.items()], self.field)

    def newton(self) -> Polytope:
        if not self.terms:
            raise InputError("zero polynomial has no Newton polytope")
        return newton_polyhedron(self.support)

    def __repr__(self) -> str:
        if not self.terms:
            return "LaurentPoly(0)"
        bits = [f"{c!r}*t^{w}" for w, c in self.terms.items()]
        return "LaurentPoly(" + " + ".join(bits) + ")"


def evaluate(f: LaurentPoly, t: Sequence):
    """f(t) with negative exponents via inverses; every t_i must be nonzero."""
    if len(t) != f.n:
        raise InputError(f"expected {f.n} coordinates, got {len(t)}")
    if not all(t):
        raise ZeroCoordinate("evaluation point has a zero coordinate")
    acc = Fraction(0) if f.field is None else f.field.zero()
    for w, c in f.terms.items():
        term = c
        for ti, wi in zip(t, w):
            if wi:
                term = term * ti ** wi
        acc = acc + term
    return acc


def log_derivative(f: LaurentPoly, i: int) -> LaurentPoly:
    """t_i * df/dt_i: multiplies each term by its i-th exponent (1-based axis)."""
    if not 1 <= i <= f.n:
        raise InputError(f"axis {i} out of range for {f.n} variables")
    return LaurentPoly(f.n, [(w, c * w[i - 1]) for w, c in f.terms.items()
                             if w[i - 1] % _char(f) != 0], f.field)


def _char(f: LaurentPoly) -> int:
    # Fraction coefficients behave as characteristic 0; any modulus works
    # for the "exponent vanishes in the field" filter as long as it never
    # triggers, so use a value larger than any exponent could reach.
    return f.field.p if f.field is not None else 1 << 62


@dataclass(frozen=True)
class Deformation:
    """F_x = base + x_1 g_1 + ... + x_m g_m.

    kind "subdiagram": every exponent of every direction lies strictly
    inside the base's Newton polytope.  kind "newton_preserving": they
    lie anywhere in the polytope.  Both are checked at construction.
    """

    base: LaurentPoly
    directions: tuple[LaurentPoly, ...]
    kind: str

    def __init__(self, base: LaurentPoly, directions: Iterable[LaurentPoly],
                 kind: str = "subdiagram"):
        if kind not in ("subdiagram", "newton_preserving"):
            raise InputError(f"unknown deformation kind {kind!r}")
        directions = tuple(directions)
        for g in directions:
            if g.n != base.n or g.field != base.field:
                raise InputError("deformation direction incompatible with base")
        P = base.newton()
        P._require_full_dim()
        for g in directions:
            for w in g.support:
                values = [(sum(a * x for a, x in zip(normal, w)) - c, c)
                          for normal, c in P.facets]
                if kind == "subdiagram":
                    if not all(v > 0 for v, _ in values):
                        raise InputError(
                            f"direction exponent {w} is not interior to the polytope")
                else:
                    if not all(v >= 0 for v, _ in values):
                        raise InputError(
                            f"direction exponent {w} lies outside the polytope")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "kind", kind)

    @property
    def m(self) -> int:
        return len(self.directions)


def specialize(D: Deformation, x: Sequence) -> LaurentPoly:
    """The member F_x of the family; specialize(D, 0) is the base."""
    if len(x) != D.m:
        raise InputError(f"expected {D.m} parameters, got {len(x)}")
    out = D.base
    for xk, g in zip(x, D.directions):
        out = out + g.scale(xk)
    return out


@dataclass(frozen=True)
class MonomialTable:
    """Ordered list of lattice points indexing the coefficient map.

    Order: the base's exponents first (insertion order), then each
    direction's new exponents, then the remaining lattice points of the
    Newton polytope, ascending.  N' = len(points) >= number of base terms.
    """

    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise TableMismatch("duplicate lattice point in table")

    def __len__(self) -> int:
        return len(self.points)

    def index(self, w: Sequence[int]) -> int:
        w = tuple(int(x) for x in w)
        try:
            return self.points.index(w)
        except ValueError:
            raise TableMismatch(f"lattice point {w} missing from table") from None


def _lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    lo = [min(g[i] for g in P.generators) for i in range(P.dim)]
    hi = [max(g[i] for g in P.generators) for i in range(P.dim)]
    out = []
    for pt in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if all(sum(a * x for a, x in zip(normal, pt)) >= c for normal, c in P.facets):
            out.append(pt)
    return out


def monomial_table(D: Deformation) -> MonomialTable:
    ordered: dict[tuple[int, ...], None] = {}
    for w in D.base.support:
        ordered[w] = None
    for g in D.directions:
        for w in g.support:
            ordered.setdefault(w, None)
    P = D.base.newton()
    for w in sorted(_lattice_points(P)):
        ordered.setdefault(w, None)
    return MonomialTable(tuple(ordered))


def face_restrict(f: LaurentPoly, sigma: Face) -> LaurentPoly:
    """Terms of f whose exponents lie on the face sigma of f's polytope."""
    support = set(f.support) | {(0,) * f.n}
    for normal, c in sigma.supporting:
        for w in support:
            if sum(a * x for a, x in zip(normal, w)) < c:
                raise FaceMismatch(
                    "supporting hyperplane cuts the support: not a face of this polytope")
    on_face = {w for w in support if face_contains(sigma, w)}
    if set(sigma.generators) - on_face:
        raise FaceMismatch("face has generators outside the support")
    return LaurentPoly(f.n, [(w, c) for w, c in f.terms.items() if face_contains(sigma, w)],
                       f.field)


def phi_map(D: Deformation, table: MonomialTable, tau, x: Sequence) -> tuple:
    """The parameter map (tau, x) -> (tau * y_j(x))_j.

    y_j(x) is the coefficient of monomial table.points[j] in F_x, an
    affine-linear function of x; table points the family never touches
    give zero entries.
    """
    if not tau:
        raise ZeroCoordinate("tau must be a unit")
    F = specialize(D, x)
    for w in F.support:
        if w not in table.points:
            raise TableMismatch(f"table does not cover support point {w}")
    return tuple(tau * F.coefficient(w) for w in table.points)


# --------------------------------------------------------------------------
# non-degeneracy and critical points

@dataclass(frozen=True)
class NondegeneracyVerdict:
    """Outcome of the face-by-face common-zero search.

    kind "degenerate_at": witness found; always conclusive.  kind
    "verified_up_to": no witness in any (F_{q^k}^*)^n for k <= checked_up_to;
    conclusive only when every face was settled by the vertex criterion
    rather than bounded enumeration.
    """

    kind: str
    conclusive: bool
    checked_up_to: int
    face: Face | None = None
    witness: tuple | None = None
    witness_degree: int | None = None

    @property
    def degenerate(self) -> bool:
        return self.kind == "degenerate_at"


def default_search_depth(q: int, n: int, cap: int = 10 ** 7) -> int:
    """Largest K >= 1 with (q^K - 1)^n <= cap."""
    K = 1
    while (q ** (K + 1) - 1) ** n <= cap:
        K += 1
    return K


def _require_field(f: LaurentPoly) -> FieldSpec:
    if f.field is None:
        raise InputError("this operation needs finite-field coefficients")
    return f.field


def _term_logs(f: LaurentPoly, ext: FieldSpec, table) -> tuple[list[int], list[tuple[int, ...]]]:
    """Discrete logs of f's coefficients embedded into ext, plus exponents."""
    logs, weights = [], []
    for w, c in f.terms.items():
        logs.append(table.log(embed(c, ext)))
        weights.append(w)
    return logs, weights


def _axis_systems(f: LaurentPoly, ext: FieldSpec, table):
    """Per-axis (logs, weights) of t_i d_i f over the extension, None for
    an identically zero derivative."""
    systems = []
    for i in range(1, f.n + 1):
        d = log_derivative(f, i)
        if not d:
            systems.append(None)
        else:
            systems.append(_term_logs(d, ext, table))
    return systems


def _search_common_zero(f: LaurentPoly, k: int, budget, *, count_all: bool):
    """Common zeros of all logarithmic derivatives of f on (F_{q^k}^*)^n.

    Returns (count, first_witness) where the witness is a tuple of
    FqElem in the degree-k extension.
    """
    base = _require_field(f)
    ext = base if k == 1 else make_field(base.p, base.m * k)
    Q = ext.q - 1
    npoints = Q ** f.n
    charge("torus search", npoints, budget)
    table = discrete_table(ext)
    systems = _axis_systems(f, ext, table)
    if all(s is None for s in systems):
        one = ext.one()
        pt = (one,) * f.n
        return npoints, pt
    live = [s for s in systems if s is not None]
    count = 0
    first = None
    for e in itertools.product(range(Q), repeat=f.n):
        for logs, weights in live:
            if table.sum_terms(logs, weights, e) is not None:
                break
        else:
            count += 1
            if first is None:
                first = tuple(table.elem(ei) for ei in e)
            if not count_all:
                return count, first
    return count, first


def check_nondegenerate(f: LaurentPoly, P: Polytope | None = None,
                        K: int | None = None, budget: int | None = None) -> NondegeneracyVerdict:
    """Search every face off the origin for degenerate critical points.

    Vertex faces are settled exactly: a monomial a*t^w has all its
    logarithmic derivatives vanish somewhere (in fact everywhere) iff
    every w_i is divisible by p.  Higher-dimensional faces are searched
    by brute force over (F_{q^k}^*)^n for k = 1..K, which can only ever
    certify failure; absence of a witness is reported as non-conclusive.
    """
    base = _require_field(f)
    if P is None:
        P = f.newton()
    else:
        mine = f.newton()
        if P.generators != mine.generators or P.facets != mine.facets:
            raise FaceMismatch("polytope does not match the support of f")
    if K is None:
        K = default_search_depth(base.q, f.n)
    if K < 1:
        raise InputError("search depth must be at least 1")
    all_conclusive = True
    for sigma in faces_not_containing_origin(P):
        f_sigma = face_restrict(f, sigma)
        if sigma.dim == 0:
            w = sigma.generators[0]
            if all(wi % base.p == 0 for wi in w):
                one = base.one()
                return NondegeneracyVerdict(
                    "degenerate_at", True, K, sigma, (one,) * f.n, 1)
            continue  # some exponent survives: monomial derivative never 0
        found = None
        for k in range(1, K + 1):
            _, witness = _search_common_zero(f_sigma, k, budget, count_all=False)
            if witness is not None:
                found = (witness, k)
                break
        if found is not None:
            return NondegeneracyVerdict(
                "degenerate_at", True, K, sigma, found[0], found[1])
        all_conclusive = False
    return NondegeneracyVerdict("verified_up_to", all_conclusive, K)


def critical_count(f: LaurentPoly, k: int = 1, budget: int | None = None) -> int:
    """Distinct points of (F_{q^k}^*)^n where every logarithmic
    derivative of f vanishes.  Counts points only; multiplicity is
    invisible here."""
    if k < 1:
        raise InputError("extension degree must be at least 1")
    count, _ = _search_common_zero(f, k, budget, count_all=True)
    return count
