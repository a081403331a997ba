"""Exact matrix-valued differential forms on the (t, x)-chart:
curvature, pole classification along t = 0, residue and Higgs
extraction, one-parameter assembly, and the flat-structure conditions.

Matrices of rational functions represent connection forms; everything
is decided exactly over the rationals.  Variable 0 is t, variables
1..m are the base coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (InputError, NotFlat, SingularMetric, VerificationError,
                     WrongRank)
from .mpoly import MPoly, RatFunc

__all__ = [
    "MatForm",
    "FTSTuple",
    "LogRestriction",
    "Rank1Restriction",
    "FTSReport",
    "MetricReport",
    "curvature",
    "poincare_rank",
    "log_restriction",
    "rank1_restriction",
    "assemble_nabla",
    "to_infinity_chart",
    "residue_at_infinity",
    "verify_fts",
    "verify_metric",
    "assembled_pairing_flat",
]

RMat = tuple  # tuple of tuples of RatFunc


def _entry(v, nvars: int) -> RatFunc:
    if isinstance(v, RatFunc):
        if v.nvars != nvars:
            raise InputError("entry has the wrong variable count")
        return v
    if isinstance(v, MPoly):
        if v.nvars != nvars:
            raise InputError("entry has the wrong variable count")
        return RatFunc(v)
    if isinstance(v, (int, Fraction, str)):
        return RatFunc.const(nvars, v)
    raise InputError(f"cannot use {type(v).__name__} as a matrix entry")


def _mat(rows, nvars: int, size: int | None = None) -> RMat:
    out = tuple(tuple(_entry(v, nvars) for v in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(r) != n for r in out):
        raise InputError("matrix must be square and nonempty")
    if size is not None and n != size:
        raise InputError(f"expected size {size}, got {n}")
    return out


def _zmat(size: int, nvars: int) -> RMat:
    z = RatFunc.const(nvars, 0)
    return tuple(tuple(z for _ in range(size)) for _ in range(size))


def _madd(a: RMat, b: RMat) -> RMat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _msub(a: RMat, b: RMat) -> RMat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mneg(a: RMat) -> RMat:
    return tuple(tuple(-x for x in row) for row in a)


def _mmul(a: RMat, b: RMat) -> RMat:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)),
                           RatFunc.const(row[0].nvars, 0))
                       for col in cols) for row in a)


def _mcomm(a: RMat, b: RMat) -> RMat:
    return _msub(_mmul(a, b), _mmul(b, a))


def _mtrans(a: RMat) -> RMat:
    return tuple(zip(*a))


def _mmap(fn, a: RMat) -> RMat:
    return tuple(tuple(fn(x) for x in row) for row in a)


def _mzero(a: RMat) -> bool:
    return all(x.is_zero for row in a for x in row)


def _meq(a: RMat, b: RMat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _mpartial(a: RMat, i: int) -> RMat:
    return _mmap(lambda x: x.partial(i), a)


class MatForm:
    """Matrix-valued differential form of degree 0, 1, or 2.

    Components are keyed by strictly increasing index tuples whose
    length is the degree: (0,) is the dt-part, (i,) the dx_i-part,
    (0, i) the dt^dx_i-part, and (i, j) with i < j the dx_i^dx_j-part.
    Zero components are dropped, so the stored set is canonical.
    """

    __slots__ = ("size", "nvars", "degree", "comps")

    def __init__(self, nvars: int, degree: int, comps: Mapping, size: int | None = None):
        if degree not in (0, 1, 2):
            raise InputError("form degree must be 0, 1, or 2")
        if nvars < 1:
            raise InputError("need at least the t variable")
        stored: dict[tuple[int, ...], RMat] = {}
        for key, rows in comps.items():
            k = tuple(int(v) for v in key)
            if len(k) != degree:
                raise InputError(f"component key {k} does not match degree {degree}")
            if any(not 0 <= v < nvars for v in k):
                raise InputError(f"component key {k} out of variable range")
            if any(k[a] >= k[a + 1] for a in range(len(k) - 1)):
                raise InputError(f"component key {k} must be strictly increasing")
            mat = _mat(rows, nvars, size)
            size = len(mat)
            if not _mzero(mat):
                stored[k] = mat
        if size is None:
            raise InputError("cannot infer matrix size from an empty form")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "comps", stored)

    def __setattr__(self, name, value):
        raise AttributeError("MatForm is immutable")

    def component(self, key) -> RMat:
        k = tuple(int(v) for v in key)
        return self.comps.get(k, _zmat(self.size, self.nvars))

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other):
        if not isinstance(other, MatForm):
            return NotImplemented
        if (self.nvars, self.degree, self.size) != (other.nvars, other.degree, other.size):
            return False
        keys = set(self.comps) | set(other.comps)
        return all(_meq(self.component(k), other.component(k)) for k in keys)

    def __repr__(self):
        return (f"MatForm(degree={self.degree}, size={self.size}, "
                f"components={sorted(self.comps)})")


def curvature(A: MatForm) -> MatForm:
    """dA + A^A for a degree-1 form, expanded exactly.

    The dt^dx_i component is d_t A_i - d_i A_t + [A_t, A_i]; the
    dx_i^dx_j component (i < j) is d_i A_j - d_j A_i + [A_i, A_j].
    """
    if A.degree != 1:
        raise InputError("curvature needs a degree-1 form")
    m = A.nvars - 1
    At = A.component((0,))
    comps = {}
    for i in range(1, m + 1):
        Ai = A.component((i,))
        comps[(0, i)] = _madd(_msub(_mpartial(Ai, 0), _mpartial(At, i)),
                              _mcomm(At, Ai))
    for i in range(1, m + 1):
        Ai = A.component((i,))
        for j in range(i + 1, m + 1):
            Aj = A.component((j,))
            comps[(i, j)] = _madd(_msub(_mpartial(Aj, i), _mpartial(Ai, j)),
                                  _mcomm(Ai, Aj))
    return MatForm(A.nvars, 2, comps, A.size)


def poincare_rank(A: MatForm) -> int:
    """Pole normalization along t = 0: the least m with t^m A_i and
    t^{m+1} A_t regular; -1 when the form is regular with no dt/t."""
    if A.degree != 1:
        raise InputError("rank classification needs a degree-1 form")
    p_x = 0
    for key, mat in A.comps.items():
        if key == (0,):
            continue
        for row in mat:
            for v in row:
                p_x = max(p_x, v.t_pole_order())
    p_t = 0
    for row in A.component((0,)):
        for v in row:
            p_t = max(p_t, v.t_pole_order())
    if p_x == 0 and p_t == 0:
        return -1
    return max(p_x, p_t - 1, 0)


@dataclass(frozen=True)
class LogRestriction:
    """Restriction data of a flat logarithmic form at t = 0."""

    restriction: tuple  # Omega_i(0, x), i = 1..m
    residue: RMat
    restriction_flat: bool
    residue_horizontal: bool


def log_restriction(A: MatForm) -> LogRestriction:
    """Restrict a flat form with a logarithmic pole: the x-connection at
    t = 0 plus the residue endomorphism, with both derived identities
    re-verified."""
    if not curvature(A).is_zero:
        raise NotFlat("curvature does not vanish")
    rank = poincare_rank(A)
    if rank > 0:
        raise WrongRank(f"pole has rank {rank}, need a logarithmic pole")
    m = A.nvars - 1
    omegas = tuple(_mmap(lambda v: v.eval_t0(), A.component((i,)))
                   for i in range(1, m + 1))
    residue = _mmap(lambda v: v.mul_t_power(1).eval_t0(), A.component((0,)))

    restr_ok = True
    for i in range(m):
        for j in range(i + 1, m):
            c = _madd(_msub(_mpartial(omegas[j], i + 1), _mpartial(omegas[i], j + 1)),
                      _mcomm(omegas[i], omegas[j]))
            restr_ok = restr_ok and _mzero(c)
    horiz_ok = all(
        _meq(_mpartial(residue, i + 1), _mcomm(residue, omegas[i]))
        for i in range(m))
    if not (restr_ok and horiz_ok):  # pragma: no cover - implied by flatness
        raise VerificationError("restriction identities fail on a flat form")
    return LogRestriction(omegas, residue, restr_ok, horiz_ok)


@dataclass(frozen=True)
class Rank1Restriction:
    """Higgs and residue data of a flat form with a rank-1 pole."""

    higgs: tuple  # Phi_i(0, x), i = 1..m
    r0: RMat
    higgs_squares_zero: bool
    higgs_commutes_r0: bool


def rank1_restriction(A: MatForm) -> Rank1Restriction:
    """Extract Phi = (t * dx-part)|_{t=0} and R_0 = (t^2 * dt-part)|_{t=0}
    from a flat form with a pole of rank exactly 1."""
    if not curvature(A).is_zero:
        raise NotFlat("curvature does not vanish")
    rank = poincare_rank(A)
    if rank != 1:
        raise WrongRank(f"pole has rank {rank}, need rank exactly 1")
    m = A.nvars - 1
    higgs = tuple(_mmap(lambda v: v.mul_t_power(1).eval_t0(), A.component((i,)))
                  for i in range(1, m + 1))
    r0 = _mmap(lambda v: v.mul_t_power(2).eval_t0(), A.component((0,)))

    squares = all(_mzero(_mcomm(higgs[i], higgs[j]))
                  for i in range(m) for j in range(i + 1, m))
    commutes = all(_mzero(_mcomm(r0, higgs[i])) for i in range(m))
    if not (squares and commutes):  # pragma: no cover - implied by flatness
        raise VerificationError("Higgs identities fail on a flat form")
    return Rank1Restriction(higgs, r0, squares, commutes)


class FTSTuple:
    """Flat-structure tuple (A, Phi, R_0, R_inf[, g]) over the base.

    A and Phi are lists of dx_i coefficient matrices; R_0, R_inf, and
    the optional symmetric pairing g are matrices of functions of x.
    Nothing may involve t.
    """

    __slots__ = ("size", "m", "A", "phi", "r0", "rinf", "g")

    def __init__(self, size: int, m: int, A: Sequence, phi: Sequence,
                 r0, rinf, g=None):
        if size < 1:
            raise InputError("size must be at least 1")
        if m < 1:
            raise InputError("need at least one base variable")
        nvars = m + 1
        if len(A) != m or len(phi) != m:
            raise InputError(f"need exactly {m} dx-components")
        A_m = tuple(_mat(mat, nvars, size) for mat in A)
        phi_m = tuple(_mat(mat, nvars, size) for mat in phi)
        r0_m = _mat(r0, nvars, size)
        rinf_m = _mat(rinf, nvars, size)
        g_m = _mat(g, nvars, size) if g is not None else None
        for mat in (*A_m, *phi_m, r0_m, rinf_m) + ((g_m,) if g_m else ()):
            for row in mat:
                for v in row:
                    if v.involves(0):
                        raise InputError("tuple entries must not involve t")
        if g_m is not None and not _meq(g_m, _mtrans(g_m)):
            raise InputError("pairing matrix must be symmetric")
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "A", A_m)
        object.__setattr__(self, "phi", phi_m)
        object.__setattr__(self, "r0", r0_m)
        object.__setattr__(self, "rinf", rinf_m)
        object.__setattr__(self, "g", g_m)

    def __setattr__(self, name, value):
        raise AttributeError("FTSTuple is immutable")

    @property
    def nvars(self) -> int:
        return self.m + 1


def assemble_nabla(T: FTSTuple) -> MatForm:
    """The one-parameter family A + Phi/t + (R_0/t - R_inf) dt/t."""
    comps = {}
    for i in range(T.m):
        comps[(i + 1,)] = _madd(T.A[i], _mmap(lambda v: v.mul_t_power(-1), T.phi[i]))
    comps[(0,)] = _msub(_mmap(lambda v: v.mul_t_power(-2), T.r0),
                        _mmap(lambda v: v.mul_t_power(-1), T.rinf))
    return MatForm(T.nvars, 1, comps, T.size)


def to_infinity_chart(A: MatForm) -> MatForm:
    """Rewrite in the s = 1/t chart; variable 0 becomes s.

    dt = -ds/s^2, so the new ds-part is -A_t(1/s)/s^2 and the dx-parts
    are substituted entrywise.
    """
    if A.degree != 1:
        raise InputError("chart change needs a degree-1 form")
    comps = {}
    for key, mat in A.comps.items():
        if key == (0,):
            comps[key] = _mmap(
                lambda v: -v.subs_t_inverse().mul_t_power(-2), mat)
        else:
            comps[key] = _mmap(lambda v: v.subs_t_inverse(), mat)
    return MatForm(A.nvars, 1, comps, A.size)


def residue_at_infinity(A: MatForm) -> RMat:
    """(s * ds-part)|_{s=0} of the s = 1/t chart of A; the pole there
    must be logarithmic."""
    B = to_infinity_chart(A)
    if poincare_rank(B) > 0:
        raise WrongRank("pole at infinity is not logarithmic")
    return _mmap(lambda v: v.mul_t_power(1).eval_t0(), B.component((0,)))


CONDITION_NAMES = (
    "base_connection_flat",
    "rinf_horizontal",
    "higgs_wedge_zero",
    "higgs_commutes_r0",
    "higgs_horizontal",
    "r0_transport",
)


@dataclass(frozen=True)
class FTSReport:
    """Per-condition verdicts plus the assembled-flatness verdict."""

    conditions: dict
    all_conditions_ok: bool
    assembled_flat: bool


def verify_fts(T: FTSTuple) -> FTSReport:
    """Check the six structure conditions one by one, and independently
    check flatness of the assembled one-parameter family.

    The two verdicts are equivalent by construction; computing them by
    disjoint code paths and comparing is the point of the exercise, and
    a divergence raises immediately.
    """
    m = T.m

    cond: dict[str, bool] = {}
    ok = True
    for i in range(m):
        for j in range(i + 1, m):
            c = _madd(_msub(_mpartial(T.A[j], i + 1), _mpartial(T.A[i], j + 1)),
                      _mcomm(T.A[i], T.A[j]))
            ok = ok and _mzero(c)
    cond["base_connection_flat"] = ok

    cond["rinf_horizontal"] = all(
        _mzero(_madd(_mpartial(T.rinf, i + 1), _mcomm(T.A[i], T.rinf)))
        for i in range(m))

    cond["higgs_wedge_zero"] = all(
        _mzero(_mcomm(T.phi[i], T.phi[j]))
        for i in range(m) for j in range(i + 1, m))

    cond["higgs_commutes_r0"] = all(
        _mzero(_mcomm(T.phi[i], T.r0)) for i in range(m))

    ok = True
    for i in range(m):
        for j in range(i + 1, m):
            c = _madd(_msub(_mpartial(T.phi[j], i + 1), _mpartial(T.phi[i], j + 1)),
                      _msub(_mcomm(T.A[i], T.phi[j]), _mcomm(T.A[j], T.phi[i])))
            ok = ok and _mzero(c)
    cond["higgs_horizontal"] = ok

    cond["r0_transport"] = all(
        _mzero(_msub(_madd(_madd(_mpartial(T.r0, i + 1), _mcomm(T.A[i], T.r0)),
                           T.phi[i]),
                     _mcomm(T.phi[i], T.rinf)))
        for i in range(m))

    all_ok = all(cond.values())
    flat = curvature(assemble_nabla(T)).is_zero
    if all_ok != flat:
        raise VerificationError(
            "six-condition verdict and assembled flatness disagree: "
            f"{cond} vs flat={flat}")
    return FTSReport(cond, all_ok, flat)


def _det(mat: RMat, nvars: int) -> RatFunc:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = RatFunc.const(nvars, 0)
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in mat[1:])
        term = mat[0][j] * _det(minor, nvars)
        total = total + term if j % 2 == 0 else total - term
    return total


@dataclass(frozen=True)
class MetricReport:
    higgs_self_adjoint: bool
    r0_self_adjoint: bool
    rinf_skew_adjoint: bool
    pairing_flat: bool

    @property
    def all_ok(self) -> bool:
        return (self.higgs_self_adjoint and self.r0_self_adjoint
                and self.rinf_skew_adjoint and self.pairing_flat)


def verify_metric(T: FTSTuple) -> MetricReport:
    """Adjointness of Phi, R_0, R_inf with respect to g, plus flatness
    of g under the base connection."""
    if T.g is None:
        raise InputError("tuple carries no pairing matrix")
    if _det(T.g, T.nvars).is_zero:
        raise SingularMetric("pairing matrix has zero determinant")
    g = T.g
    higgs_sa = all(_meq(_mmul(_mtrans(T.phi[i]), g), _mmul(g, T.phi[i]))
                   for i in range(T.m))
    r0_sa = _meq(_mmul(_mtrans(T.r0), g), _mmul(g, T.r0))
    rinf_sk = _meq(_mmul(_mtrans(T.rinf), g), _mneg(_mmul(g, T.rinf)))
    flat = all(_meq(_mpartial(g, i + 1),
                    _madd(_mmul(_mtrans(T.A[i]), g), _mmul(g, T.A[i])))
               for i in range(T.m))
    return MetricReport(higgs_sa, r0_sa, rinf_sk, flat)


def assembled_pairing_flat(T: FTSTuple) -> bool:
    """Flatness of the pairing <a(t), b(-t)> through g on the assembled
    family, decided on the full (t, x)-chart.

    Writing A' for the assembled form, the pairing is flat iff
    d_i g = A'_i(t)^T g + g A'_i(-t) for every i and
    A'_t(t)^T g = g A'_t(-t); this is the disjoint-path counterpart of
    the four identities in verify_metric.
    """
    if T.g is None:
        raise InputError("tuple carries no pairing matrix")
    A = assemble_nabla(T)
    g = T.g
    flip = lambda mat: _mmap(lambda v: v.flip_sign(0), mat)
    for i in range(1, T.m + 1):
        Ai = A.component((i,))
        lhs = _mpartial(g, i)
        rhs = _madd(_mmul(_mtrans(Ai), g), _mmul(g, flip(Ai)))
        if not _meq(lhs, rhs):
            return False
    At = A.component((0,))
    return _meq(_mmul(_mtrans(At), g), _mmul(g, flip(At)))
