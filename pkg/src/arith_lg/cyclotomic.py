"""Exact arithmetic in the cyclotomic field Q(zeta_p).

A CycloNum is a vector of p - 1 rationals: the coordinates of the
element in the power basis 1, zeta, ..., zeta^{p-2}, with the relation
1 + zeta + ... + zeta^{p-1} = 0 used to eliminate zeta^{p-1}.  Values of
the additive character psi(a) = zeta^{Tr(a)} live here, as do
characteristic polynomials of Frobenius and reconstructed L-functions.

For p = 2 the field degenerates to Q and zeta = -1, so psi becomes the
sign character (-1)^{Tr(a)}; nothing special-cases on p = 2 beyond the
basis having length one.  Rational values are transparent across
different p: mixed-p arithmetic is allowed exactly when one side is
rational.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BadIndex, InputError, LengthTooShort, NotPrime, Unstable
from .ffield import FqElem, _is_prime, trace_to_prime

__all__ = [
    "CycloNum",
    "CycloPoly",
    "psi",
    "conj_sigma",
    "embed_complex",
    "all_embeddings",
    "char_poly_from_power_sums",
    "validate_power_sums",
    "RationalFunctionFit",
    "linear_recurrence_reconstruct",
]


class CycloNum:
    """An element of Q(zeta_p) in the power basis of length p - 1."""

    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Sequence[Fraction | int]):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if len(coords) != p - 1:
            raise InputError(f"expected {p - 1} coordinates, got {len(coords)}")
        self.p = p
        self.coords = tuple(Fraction(c) for c in coords)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CycloNum":
        return cls(p, (0,) * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CycloNum":
        return cls.from_rational(p, 1)

    @classmethod
    def from_rational(cls, p: int, r) -> "CycloNum":
        coords = [Fraction(0)] * (p - 1)
        coords[0] = Fraction(r)
        return cls(p, coords)

    @classmethod
    def zeta(cls, p: int, e: int) -> "CycloNum":
        """zeta_p^e, reduced to the canonical basis."""
        e %= p
        if e < p - 1:
            coords = [Fraction(0)] * (p - 1)
            coords[e] = Fraction(1)
            return cls(p, coords)
        return cls(p, (Fraction(-1),) * (p - 1))

    # -- coercion -----------------------------------------------------

    def _pair(self, other):
        """Lift self and other into one cyclotomic field, or None."""
        if isinstance(other, (int, Fraction)):
            return self, CycloNum.from_rational(self.p, other)
        if not isinstance(other, CycloNum):
            return None
        if other.p == self.p:
            return self, other
        if other.is_rational:
            return self, CycloNum.from_rational(self.p, other.rational_value())
        if self.is_rational:
            return CycloNum.from_rational(other.p, self.rational_value()), other
        raise InputError(f"mixed cyclotomic fields p={self.p} and p={other.p}")

    # -- predicates ---------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise InputError(f"{self!r} is not rational")
        return self.coords[0]

    def __bool__(self) -> bool:
        return any(self.coords)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum(a.p, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.p, tuple(-a for a in self.coords))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycloNum(a.p, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b - a

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        p = a.p
        acc = [Fraction(0)] * p  # coefficients in Q[zeta]/(zeta^p - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        acc[(i + j) % p] += x * y
        top = acc[p - 1]
        return CycloNum(p, tuple(acc[i] - top for i in range(p - 1)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the product of Galois conjugates."""
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 2:
            return CycloNum(2, (1 / self.coords[0],))
        numerator = CycloNum.one(self.p)
        for a in range(2, self.p):
            numerator = numerator * conj_sigma(self, a)
        norm = (self * numerator).rational_value()
        return CycloNum(self.p, tuple(c / norm for c in numerator.coords))

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inverse()

    # -- comparison ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.p != other.p:
            return (self.is_rational and other.is_rational
                    and self.coords[0] == other.coords[0])
        return self.coords == other.coords

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coords[0])
        return hash((self.p, self.coords))

    def __repr__(self) -> str:
        if self.is_rational:
            return f"CycloNum({self.p}, {self.coords[0]})"
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        return f"CycloNum({self.p}, {' + '.join(parts)})"


# --------------------------------------------------------------------------
# characters and Galois action

def psi(a: FqElem, power: int = 1) -> CycloNum:
    """Additive character value zeta_p^(power * Tr(a)).

    power = 1 is the standard character; power = -1 (equivalently p - 1)
    gives its inverse, used by the duality checks.
    """
    p = a.field.p
    if power % p == 0:
        raise BadIndex("character power must be a unit mod p")
    return CycloNum.zeta(p, power * trace_to_prime(a))


def conj_sigma(z: CycloNum, a: int) -> CycloNum:
    """Galois conjugation zeta -> zeta^a, a a unit mod p."""
    p = z.p
    if a % p == 0:
        raise BadIndex(f"{a} is not a unit mod {p}")
    acc = [Fraction(0)] * p
    for i, c in enumerate(z.coords):
        if c:
            acc[(a * i) % p] += c
    top = acc[p - 1]
    return CycloNum(p, tuple(acc[i] - top for i in range(p - 1)))


def embed_complex(z: CycloNum, a: int = 1) -> complex:
    """Complex embedding zeta -> exp(2*pi*i*a/p), a a unit mod p."""
    p = z.p
    if a % p == 0:
        raise BadIndex(f"{a} is not a unit mod {p}")
    acc = 0j
    for i, c in enumerate(z.coords):
        if c:
            acc += float(c) * cmath.exp(2j * cmath.pi * ((a * i) % p) / p)
    return acc


def all_embeddings(z: CycloNum) -> list[complex]:
    """Values of z under every complex embedding of Q(zeta_p)."""
    return [embed_complex(z, a) for a in range(1, z.p)]


# --------------------------------------------------------------------------
# polynomials over Q(zeta_p)

class CycloPoly:
    """Polynomial with CycloNum coefficients, low degree first."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        lifted = []
        for c in coeffs:
            if isinstance(c, CycloNum):
                if c.p == p:
                    lifted.append(c)
                elif c.is_rational:
                    lifted.append(CycloNum.from_rational(p, c.rational_value()))
                else:
                    raise InputError("coefficient from a different cyclotomic field")
            else:
                lifted.append(CycloNum.from_rational(p, c))
        while lifted and not lifted[-1]:
            lifted.pop()
        self.p = p
        self.coeffs = tuple(lifted)

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> CycloNum:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return CycloNum.zero(self.p)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CycloPoly) and self.p == other.p
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __add__(self, other: "CycloPoly") -> "CycloPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return CycloPoly(self.p, [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __sub__(self, other: "CycloPoly") -> "CycloPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return CycloPoly(self.p, [self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def __mul__(self, other: "CycloPoly") -> "CycloPoly":
        if self.is_zero or other.is_zero:
            return CycloPoly(self.p, [])
        out = [CycloNum.zero(self.p) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return CycloPoly(self.p, out)

    def scale(self, c) -> "CycloPoly":
        return CycloPoly(self.p, [x * c for x in self.coeffs])

    def conj_coeffs(self, a: int) -> "CycloPoly":
        return CycloPoly(self.p, [conj_sigma(x, a) for x in self.coeffs])

    def reversed_poly(self) -> "CycloPoly":
        """T^deg * P(1/T); monic whenever P(0) = 1."""
        return CycloPoly(self.p, list(reversed(self.coeffs)))

    def derivative(self) -> "CycloPoly":
        return CycloPoly(self.p, [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def monic(self) -> "CycloPoly":
        if self.is_zero:
            return self
        return self.scale(self.coeffs[-1].inverse())

    def divmod(self, other: "CycloPoly") -> tuple["CycloPoly", "CycloPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = other.coeffs[-1].inverse()
        rem = list(self.coeffs)
        quo = [CycloNum.zero(self.p)] * max(len(rem) - other.degree, 0)
        while len(rem) - 1 >= other.degree and rem:
            if not rem[-1]:
                rem.pop()
                continue
            c = rem[-1] * inv_lead
            shift = len(rem) - 1 - other.degree
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            rem.pop()
        return CycloPoly(self.p, quo), CycloPoly(self.p, rem)

    def gcd(self, other: "CycloPoly") -> "CycloPoly":
        a, b = self, other
        while not b.is_zero:
            _, r = a.divmod(b)
            a, b = b, r
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "CycloPoly":
        if self.degree <= 0:
            return self.monic() if not self.is_zero else self
        g = self.gcd(self.derivative())
        q, r = self.divmod(g)
        if not r.is_zero:  # pragma: no cover
            raise InputError("squarefree decomposition failed")
        return q.monic()

    def __call__(self, x: CycloNum) -> CycloNum:
        acc = CycloNum.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if self.is_zero:
            return "CycloPoly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"({c!r})*T^{i}" if i else f"({c!r})")
        return "CycloPoly(" + " + ".join(parts) + ")"


# --------------------------------------------------------------------------
# Newton identities

def char_poly_from_power_sums(ps: Sequence[CycloNum], r: int | None = None) -> CycloPoly:
    """Monic degree-r polynomial whose root power sums are ps[0..r-1].

    Newton's identities only ever divide by the integers 1..r, so the
    computation is exact over Q(zeta_p).
    """
    if r is None:
        r = len(ps)
    if r < 1:
        raise InputError("rank must be >= 1")
    if len(ps) < r:
        raise LengthTooShort(f"need {r} power sums, got {len(ps)}")
    p = ps[0].p
    e = [CycloNum.one(p)]
    for k in range(1, r + 1):
        acc = CycloNum.zero(p)
        for i in range(1, k + 1):
            term = e[k - i] * ps[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / k)
    # P(T) = T^r - e1 T^{r-1} + e2 T^{r-2} - ... + (-1)^r e_r
    coeffs = [CycloNum.zero(p)] * (r + 1)
    for i in range(r + 1):
        coeffs[r - i] = e[i] if i % 2 == 0 else -e[i]
    return CycloPoly(p, coeffs)


def validate_power_sums(poly: CycloPoly, ps: Sequence[CycloNum]) -> bool:
    """Do all given power sums match the monic polynomial's roots?

    The first deg(poly) sums are checked through Newton's identities and
    the rest through the linear recurrence the polynomial defines:
    p_k = sum_{i=1..r} (-1)^{i-1} e_i p_{k-i}  (+ (-1)^{k-1} k e_k for k <= r).
    """
    if not poly.is_monic:
        raise InputError("characteristic polynomial must be monic")
    r = poly.degree
    p = poly.p
    # coefficient of T^{r-i} is (-1)^i e_i
    e = [poly.coefficient(r - i) if i % 2 == 0 else -poly.coefficient(r - i)
         for i in range(r + 1)]
    for k in range(1, len(ps) + 1):
        acc = CycloNum.zero(p)
        for i in range(1, min(k - 1, r) + 1):
            term = e[i] * ps[k - i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        if k <= r:
            acc = acc + e[k] * (k if k % 2 == 1 else -k)
        if ps[k - 1] != acc:
            return False
    return True


# --------------------------------------------------------------------------
# rational function reconstruction from trace sums

@dataclass(frozen=True)
class RationalFunctionFit:
    """L(T) = numerator/denominator with N(0) = D(0) = 1, plus whether
    the same fit was already found at the two preceding truncation
    orders."""

    numerator: CycloPoly
    denominator: CycloPoly
    stable: bool


def _exp_series(c: list[CycloNum], p: int) -> list[CycloNum]:
    """Coefficients of exp(sum c_k T^k / k) through order len(c)."""
    K = len(c)
    ell = [CycloNum.one(p)]
    for n in range(1, K + 1):
        acc = CycloNum.zero(p)
        for k in range(1, n + 1):
            acc = acc + c[k - 1] * ell[n - k]
        ell.append(acc / n)
    return ell


def _solve_in_field(rows: list[list[CycloNum]], rhs: list[CycloNum],
                    p: int) -> list[CycloNum] | None:
    """Any exact solution of rows * x = rhs, or None if inconsistent.

    Free variables are set to zero; plain Gaussian elimination since the
    scalars form a field.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    mat = [list(row) + [b] for row, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        sel = None
        for r in range(row, nrows):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = mat[row][col].inverse()
        mat[row] = [v * inv for v in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
        if row == nrows:
            break
    for r in range(row, nrows):
        if mat[r][ncols]:
            return None
    x = [CycloNum.zero(p)] * ncols
    for r, c in pivots:
        x[c] = mat[r][ncols]
    return x


def _pade_at_order(ell: list[CycloNum], K: int, p: int):
    """Minimal-total-degree (N, D), N(0)=D(0)=1, with series match to
    order K; None when nothing of total degree <= (K-2)/2 matches."""
    zero = CycloNum.zero(p)
    for d in range(0, (K - 2) // 2 + 1):
        for d_den in range(0, d + 1):
            d_num = d - d_den
            rows = []
            rhs = []
            for n in range(d_num + 1, K + 1):
                rows.append([ell[n - j] if n - j >= 0 else zero
                             for j in range(1, d_den + 1)])
                rhs.append(-ell[n])
            if d_den > 0:
                sol = _solve_in_field(rows, rhs, p)
                if sol is None:
                    continue
                den = [CycloNum.one(p)] + sol
            else:
                if any(rhs):
                    continue
                den = [CycloNum.one(p)]
            den_poly = CycloPoly(p, den)
            # numerator = truncation of ell * D at degree d_num
            num = []
            for i in range(d_num + 1):
                acc = zero
                for j in range(0, min(i, d_den) + 1):
                    acc = acc + den_poly.coefficient(j) * ell[i - j]
                num.append(acc)
            return CycloPoly(p, num), den_poly
    return None


def _berlekamp_massey(seq: list[CycloNum], p: int) -> CycloPoly:
    """Monic characteristic polynomial of the minimal LFSR for seq."""
    one = CycloNum.one(p)
    zero = CycloNum.zero(p)
    C = [one]
    B = [one]
    L = 0
    m = 1
    b = one
    for n in range(len(seq)):
        d = seq[n]
        for i in range(1, min(L, len(C) - 1) + 1):
            d = d + C[i] * seq[n - i]
        if not d:
            m += 1
            continue
        T = list(C)
        coef = d / b
        while len(C) < len(B) + m:
            C.append(zero)
        for i in range(len(B)):
            C[i + m] = C[i + m] - coef * B[i]
        if 2 * L <= n:
            L = n + 1 - L
            B = T
            b = d
            m = 1
        else:
            m += 1
    conn = [C[i] if i < len(C) else zero for i in range(L + 1)]
    return CycloPoly(p, list(reversed(conn)))


def linear_recurrence_reconstruct(c: Sequence, Kmax: int | None = None) -> RationalFunctionFit:
    """Reconstruct L(T) = exp(sum_k c_k T^k / k) as a rational function.

    Finds the unique reduced N(T)/D(T) with N(0) = D(0) = 1 matching the
    series through order K = len(c), minimizing deg N + deg D.  A
    second, independent path fits a minimal linear recurrence directly
    to the c_k (Berlekamp-Massey); its characteristic polynomial must
    equal the squarefree part of rev(N) * rev(D), else Unstable.

    Raises Unstable when no rational function of total degree at most
    (K - 2) / 2 matches, i.e. the sequence is too short to commit to an
    answer.
    """
    values = list(c)
    if Kmax is not None:
        values = values[:Kmax]
    if len(values) < 2:
        raise LengthTooShort("need at least two trace sums")
    p = None
    for v in values:
        if isinstance(v, CycloNum) and not v.is_rational:
            p = v.p
            break
    if p is None:
        for v in values:
            if isinstance(v, CycloNum):
                p = v.p
                break
    if p is None:
        p = 2  # all-rational input: Q(zeta_2) = Q
    lifted = []
    for v in values:
        if isinstance(v, CycloNum):
            lifted.append(v if v.p == p else CycloNum.from_rational(p, v.rational_value()))
        else:
            lifted.append(CycloNum.from_rational(p, v))
    K = len(lifted)
    ell = _exp_series(lifted, p)
    fit = _pade_at_order(ell, K, p)
    if fit is None:
        raise Unstable(f"no rational function of total degree <= {(K - 2) // 2} "
                       f"matches {K} trace sums")
    num, den = fit
    # independent cross-check on the power-sum side
    char_bm = _berlekamp_massey(lifted, p)
    expected = (num.reversed_poly() * den.reversed_poly()).squarefree_part()
    if char_bm != expected:
        raise Unstable("series fit and direct recurrence fit disagree; "
                       "the sequence is too short or inconsistent")
    stable = False
    if K >= 4:
        prev1 = _pade_at_order(ell[:K], K - 1, p)
        prev2 = _pade_at_order(ell[:K - 1], K - 2, p)
        stable = (prev1 is not None and prev2 is not None
                  and prev1 == (num, den) and prev2 == (num, den))
    return RationalFunctionFit(num, den, stable)
