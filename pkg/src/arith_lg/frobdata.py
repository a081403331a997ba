"""Frobenius eigenvalue data, purity and duality checks, L-functions,
and the monodromy filtration of a nilpotent operator.

The stalk at a parameter point carries power sums p_k = (-1)^n S_k of
Frobenius eigenvalues, where S_k is the degree-k exponential sum.  The
characteristic polynomial built from p_1..p_r (r = normalized volume of
the Newton polytope) is validated against p_{r+1}..p_{2r}, then checked
archimedeanly for purity of weight n and exactly for the duality that
pairs the eigenvalues of the character psi with those of its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy

from .cyclotomic import (CycloNum, CycloPoly, char_poly_from_power_sums,
                         embed_complex, linear_recurrence_reconstruct,
                         validate_power_sums)
from .errors import (InputError, NotNilpotent, RankMismatch, ToleranceExceeded,
                     VerificationError)
from .exactla import (Mat, identity, mat_mul, mat_vec, nullspace,
                      subspace_basis, subspace_contains, subspace_dim,
                      subspace_intersect, subspace_sum, to_fractions, transpose)
from .expsum import family_sum, tau_summed_trace
from .laurent import Deformation, check_nondegenerate, specialize
from .polytope import normalized_volume

__all__ = [
    "PURITY_TOL",
    "FrobeniusReport",
    "LFunctionReport",
    "Filtration",
    "stalk_power_sums",
    "frobenius_report",
    "family_l_function",
    "monodromy_filtration",
]

PURITY_TOL = 1e-6
DEFAULT_MAX_RANK = 12


def stalk_power_sums(D: Deformation, x: Sequence, tau, r: int, *,
                     psi_power: int = 1, partitions: int = 1,
                     budget: int | None = None) -> list[CycloNum]:
    """Power sums p_1..p_{2r} of the Frobenius eigenvalues at (tau, x).

    p_k = (-1)^n S_k with S_k the family sum over the degree-k extension;
    tau and x are base-field data, re-read in each extension.
    """
    if r < 1:
        raise InputError("rank must be at least 1")
    n = D.base.n
    sign = 1 if n % 2 == 0 else -1
    out = []
    for k in range(1, 2 * r + 1):
        S = family_sum(D, k, tau, x, psi_power=psi_power,
                       partitions=partitions, budget=budget)
        out.append(S * sign)
    return out


@dataclass(frozen=True)
class FrobeniusReport:
    """Eigenvalue data of Frobenius at one parameter point."""

    tau: object
    x: tuple
    q: int
    n: int
    rank: int
    weight: int
    char_poly: CycloPoly
    char_poly_inverse_character: CycloPoly
    power_sums: tuple
    consistency_ok: bool
    purity_max_rel_dev: float
    purity_ok: bool
    determinant_max_rel_dev: float
    determinant_ok: bool
    duality_ok: bool
    warnings: tuple[str, ...] = ()


def _all_root_moduli(P: CycloPoly) -> list[float]:
    """|root| over every complex embedding of the coefficient field."""
    out = []
    embeddings = range(1, P.p) if P.p > 2 else (1,)
    for a in embeddings:
        coeffs = [embed_complex(c, a) for c in reversed(P.coeffs)]
        for root in numpy.roots(coeffs):
            out.append(abs(root))
    return out


def _duality_transform(P: CycloPoly, qn: int) -> CycloPoly:
    """T^r * P(q^n / T), expanded exactly."""
    r = P.degree
    coeffs = [P.coefficient(r - j) * Fraction(qn) ** (r - j) for j in range(r + 1)]
    return CycloPoly(P.p, coeffs)


def _proportional(A: CycloPoly, B: CycloPoly) -> bool:
    """A = c * B for some nonzero constant c, checked exactly."""
    if A.degree != B.degree or A.is_zero != B.is_zero:
        return False
    if A.is_zero:
        return True
    c = None
    for i in range(A.degree + 1):
        a, b = A.coefficient(i), B.coefficient(i)
        if bool(a) != bool(b):
            return False
        if b:
            ratio = a / b
            if c is None:
                c = ratio
            elif ratio != c:
                return False
    return c is not None and bool(c)


def frobenius_report(D: Deformation, x: Sequence, tau, *, partitions: int = 1,
                     budget: int | None = None, max_rank: int = DEFAULT_MAX_RANK,
                     nondegeneracy_depth: int = 1, strict: bool = True,
                     tol: float = PURITY_TOL) -> FrobeniusReport:
    """Characteristic polynomial of Frobenius at (tau, x) with purity,
    determinant-norm, and duality verification.

    The rank is the normalized volume of the base polytope, never
    inferred from data; a failed validation of p_{r+1}..p_{2r} raises
    RankMismatch (carrying the partial report) since it signals a
    degenerate parameter or the wrong polytope.  strict=False returns
    the report with ok-flags lowered instead of raising.
    """
    base = D.base.field
    n = D.base.n
    q = base.q
    P_newton = D.base.newton()
    r = normalized_volume(P_newton)
    if r < 1:
        raise InputError("family has rank zero")
    if r > max_rank:
        raise InputError(f"rank {r} exceeds the budgeted maximum {max_rank}")

    warnings: list[str] = []
    Fx = specialize(D, tuple(x))
    if not Fx:
        warnings.append("specialized polynomial is zero: non-generic parameter")
    elif set(Fx.support) <= {(0,) * n}:
        warnings.append("specialized polynomial is constant: non-generic parameter")
    else:
        Fx_newton = Fx.newton()
        if Fx_newton.degenerate or Fx_newton.vertices != P_newton.vertices:
            warnings.append("Newton polytope collapsed at this parameter: "
                            "non-generic parameter")
        else:
            verdict = check_nondegenerate(Fx, K=nondegeneracy_depth, budget=budget)
            if verdict.degenerate:
                warnings.append(
                    f"degenerate face found at search depth {verdict.witness_degree}")

    ps = stalk_power_sums(D, x, tau, r, partitions=partitions, budget=budget)
    P = char_poly_from_power_sums(ps[:r], r)
    consistency_ok = validate_power_sums(P, ps)

    P_inv = P.conj_coeffs(base.p - 1)
    moduli = _all_root_moduli(P)
    target = q ** (n / 2)
    purity_dev = float(max(abs(m - target) / target for m in moduli)) if moduli else 0.0
    purity_ok = purity_dev < tol

    det_target = float(q) ** (n * r / 2)
    det_vals = []
    embeddings = range(1, base.p) if base.p > 2 else (1,)
    for a in embeddings:
        det_vals.append(abs(embed_complex(P.coefficient(0), a)))
    det_dev = max(abs(v - det_target) / det_target for v in det_vals)
    det_ok = det_dev < tol

    duality_ok = _proportional(_duality_transform(P, q ** n), P_inv)

    report = FrobeniusReport(
        tau=tau, x=tuple(x), q=q, n=n, rank=r, weight=n,
        char_poly=P, char_poly_inverse_character=P_inv,
        power_sums=tuple(ps), consistency_ok=consistency_ok,
        purity_max_rel_dev=purity_dev, purity_ok=purity_ok,
        determinant_max_rel_dev=det_dev, determinant_ok=det_ok,
        duality_ok=duality_ok, warnings=tuple(warnings))

    if strict:
        if not consistency_ok:
            raise RankMismatch(
                "higher power sums are inconsistent with a degree-"
                f"{r} characteristic polynomial", report=report)
        if not (purity_ok and det_ok):
            raise ToleranceExceeded(
                f"purity deviation {purity_dev:.3g}, determinant deviation "
                f"{det_dev:.3g} exceed {tol}", report=report)
        if not duality_ok:
            raise ToleranceExceeded(
                "duality transform is not proportional to the inverse-character "
                "polynomial", report=report)
    return report


@dataclass(frozen=True)
class LFunctionReport:
    """Rational L-function of the tau-family at a fixed deformation point."""

    numerator: CycloPoly
    denominator: CycloPoly
    minus_chi_c: int
    rank: int
    swan_bound_ok: bool
    stable: bool
    trace_sums: tuple
    warnings: tuple[str, ...] = ()


def family_l_function(D: Deformation, x: Sequence, Kmax: int | None = None, *,
                      partitions: int = 1, budget: int | None = None) -> LFunctionReport:
    """L-function of the tau-line from trace sums c_1..c_Kmax.

    c_k comes from the zero-count closed form (cross-checked by double
    enumeration when small); the rational function is reconstructed and
    the Euler-characteristic bound -chi_c = deg N - deg D <= r is the
    verdict.  The bound is asserted, not derived from local invariants:
    ramification data itself is out of reach here.
    """
    r = normalized_volume(D.base.newton())
    if Kmax is None:
        # 2(r+1) sums pin down a total-degree-r answer; two more let the
        # fit be re-derived at the two preceding orders, so the default
        # can actually report stable=True
        Kmax = 2 * (r + 2)
    if Kmax < 2 * (r + 1):
        raise InputError(f"need at least {2 * (r + 1)} trace sums for rank {r}")
    warnings: list[str] = []
    Fx = specialize(D, tuple(x))
    if not Fx or set(Fx.support) <= {(0,) * D.base.n}:
        warnings.append("specialized polynomial is constant or zero: "
                        "the tau-family is not lisse at this parameter")
    c = [tau_summed_trace(D, k, x, partitions=partitions, budget=budget)
         for k in range(1, Kmax + 1)]
    fit = linear_recurrence_reconstruct(c)
    minus_chi = fit.numerator.degree - fit.denominator.degree
    return LFunctionReport(
        numerator=fit.numerator, denominator=fit.denominator,
        minus_chi_c=minus_chi, rank=r, swan_bound_ok=minus_chi <= r,
        stable=fit.stable, trace_sums=tuple(c), warnings=tuple(warnings))


# --------------------------------------------------------------------------
# monodromy filtration

@dataclass(frozen=True)
class Filtration:
    """Increasing filtration 0 = M_{low-1} <= ... <= M_high = V by
    canonical rational subspace bases."""

    dim: int
    levels: tuple[tuple[int, Mat], ...]

    def level(self, k: int) -> Mat:
        basis = ()
        for kk, b in self.levels:
            if kk > k:
                break
            basis = b
        return basis

    @property
    def jumps(self) -> dict[int, int]:
        out = {}
        prev = 0
        for kk, b in self.levels:
            d = subspace_dim(b)
            if d != prev:
                out[kk] = d - prev
            prev = d
        return out

    def gr_dimension(self, k: int) -> int:
        return subspace_dim(self.level(k)) - subspace_dim(self.level(k - 1))


def monodromy_filtration(Nmat) -> Filtration:
    """The unique increasing filtration M with N M_k <= M_{k-2} and
    N^k inducing gr_k isomorphic to gr_{-k}, for nilpotent N.

    Built by the convolution formula M_k = sum over j >= 0 of
    ker(N^{k+j+1}) intersect im(N^j); both defining properties are then
    re-verified on the result.
    """
    N = to_fractions(Nmat)
    d = len(N)
    if d == 0 or any(len(row) != d for row in N):
        raise InputError("need a nonempty square matrix")
    powers = [identity(d)]
    for _ in range(d):
        powers.append(mat_mul(powers[-1], N))
    if any(any(row) for row in powers[d]):
        raise NotNilpotent(f"matrix is not nilpotent: N^{d} != 0")
    e = next(i for i in range(d + 1) if not any(any(row) for row in powers[i]))

    kernels = [subspace_basis(nullspace(powers[i])) for i in range(e + 1)]
    # image of the operator = column space, hence the transpose
    images = [subspace_basis(transpose(powers[i])) for i in range(e + 1)]

    def M(k: int) -> Mat:
        acc: Mat = ()
        for j in range(0, e + 1):
            ki = k + j + 1
            if ki <= 0:
                continue
            if ki > e:
                ki = e
            piece = subspace_intersect(kernels[ki], images[j])
            acc = subspace_sum(acc, piece)
        return acc

    levels = tuple((k, M(k)) for k in range(-e, e))
    filtration = Filtration(d, levels)

    # re-verify: increasing and exhaustive
    prev: Mat = ()
    for k, basis in levels:
        for v in prev:
            if not subspace_contains(basis, v):  # pragma: no cover
                raise VerificationError("filtration is not increasing")
        prev = basis
    if subspace_dim(levels[0][1]) != 0:  # pragma: no cover
        raise VerificationError("filtration does not start at zero")
    if subspace_dim(levels[-1][1]) != d:  # pragma: no cover
        raise VerificationError("filtration does not exhaust the space")
    # re-verify: N lowers by two
    for k, basis in levels:
        lower = filtration.level(k - 2)
        for v in basis:
            if not subspace_contains(lower, mat_vec(N, v)):  # pragma: no cover
                raise VerificationError("N does not lower the filtration by two")
    # re-verify: N^k induces gr_k ~ gr_{-k}
    for k in range(1, e):
        gk = filtration.gr_dimension(k)
        gmk = filtration.gr_dimension(-k)
        if gk != gmk:  # pragma: no cover
            raise VerificationError("graded pieces fail the symmetry")
        mk = filtration.level(k)
        mapped = subspace_basis([mat_vec(powers[k], v) for v in mk])
        below = filtration.level(-k - 1)
        induced = subspace_dim(subspace_sum(mapped, below)) - subspace_dim(below)
        if induced != gk:  # pragma: no cover
            raise VerificationError("N^k does not induce an isomorphism of gradeds")
    return filtration
