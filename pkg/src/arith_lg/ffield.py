"""Finite fields F_{p^m} with deterministic construction.

Conventions
-----------
* Elements are coefficient tuples of length m over F_p, low degree first,
  i.e. (c0, ..., c_{m-1}) represents c0 + c1*X + ... modulo the field's
  modulus polynomial.
* The canonical modulus for (p, m) is the first monic irreducible of
  degree m in the scan order "ascending integer encoding sum(c_i p^i)";
  equivalently coefficient vectors are compared highest degree first.
  For m = 1 the modulus is X (reduction sends X to 0) and arithmetic is
  plain modular arithmetic.
* Embeddings between extensions are chosen by explicit root-finding and
  kept coherent process-wide through a shared closure field, so
  composing embeddings along any tower agrees with the direct embedding.
* The multiplicative group is enumerated in generator-power order: the
  canonical generator g is the first element in coefficient-lex order
  whose multiplicative order is q - 1, and (F_q^*)^n is walked as an
  odometer over exponent vectors with the last axis fastest.  The order
  is part of the contract; partitioned consumers recombine exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .budget import charge, resolve_budget
from .errors import (
    BadIndex,
    DegreeZero,
    IncompatibleCharacteristic,
    InputError,
    NotAnExtension,
    NotPrime,
)

__all__ = [
    "FieldSpec",
    "FqElem",
    "make_field",
    "field_from_modulus",
    "trace_to_prime",
    "embed",
    "multiplicative_generator",
    "enumerate_torus",
    "torus_size",
    "discrete_table",
]


# --------------------------------------------------------------------------
# primality

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set covers n < 3.3e24."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# --------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (coefficient tuples, low degree first)

def _pnorm(c: Sequence[int]) -> tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pnorm(out)


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> tuple[int, ...]:
    """a mod f, f monic."""
    a = list(a)
    df = len(f) - 1
    while len(a) - 1 >= df and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - df
            for i in range(df):
                a[shift + i] = (a[shift + i] - lead * f[i]) % p
        a.pop()
    return _pnorm(a)


def _pmulmod(a, b, f, p) -> tuple[int, ...]:
    return _pmod(_pmul(a, b, p), f, p)


def _ppowmod(a, e: int, f, p) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int):
    """General division with invertible leading coefficient."""
    a = list(a)
    b = _pnorm(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(_pnorm(a)) - 1 >= db and _pnorm(a):
        a = list(_pnorm(a))
        if len(a) - 1 < db:
            break
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        q[shift] = coef
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - coef * b[i]) % p
    return _pnorm(q), _pnorm(a)


def _pextgcd(a, b, p):
    """Return (g, u, v) with u*a + v*b = g, g monic (or zero)."""
    r0, r1 = _pnorm(a), _pnorm(b)
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _pnorm([(x - y) % p for x, y in itertools.zip_longest(u0, _pmul(q, u1, p), fillvalue=0)])
        v0, v1 = v1, _pnorm([(x - y) % p for x, y in itertools.zip_longest(v0, _pmul(q, v1, p), fillvalue=0)])
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = tuple(c * inv % p for c in r0)
        u0 = tuple(c * inv % p for c in u0)
        v0 = tuple(c * inv % p for c in v0)
    return r0, u0, v0


def _pgcd(a, b, p):
    r0, r1 = _pnorm(a), _pnorm(b)
    while r1:
        _, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
    if r0:
        inv = pow(r0[-1], p - 2, p)
        r0 = tuple(c * inv % p for c in r0)
    return r0


def _x_pow_p_iter(p: int, k: int, f) -> tuple[int, ...]:
    """x^(p^k) mod f via k successive p-th powers."""
    r: tuple[int, ...] = (0, 1)
    for _ in range(k):
        r = _ppowmod(r, p, f, p)
    return r


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _minus_x(poly: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = list(poly) + [0] * max(0, 2 - len(poly))
    out[1] = (out[1] - 1) % p
    return _pnorm(out)


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree >= 1 over F_p."""
    m = len(f) - 1
    if m == 1:
        return True
    if _minus_x(_x_pow_p_iter(p, m, f), p):
        return False  # x^(p^m) != x mod f
    for ell in _prime_factors(m):
        if _pgcd(_minus_x(_x_pow_p_iter(p, m // ell, f), p), f, p) != (1,):
            return False
    return True


# --------------------------------------------------------------------------
# concrete field models

@dataclass(frozen=True)
class FieldSpec:
    """A concrete model of F_{p^m}: characteristic, degree, modulus.

    The modulus tuple has length m + 1, low degree first, and is monic.
    Use make_field / field_from_modulus instead of constructing directly.
    """

    p: int
    m: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def zero(self) -> "FqElem":
        return FqElem(self, (0,) * self.m)

    def one(self) -> "FqElem":
        return self.from_int(1)

    def from_int(self, k: int) -> "FqElem":
        coords = [0] * self.m
        coords[0] = k % self.p
        return FqElem(self, tuple(coords))

    def element(self, coords: Sequence[int]) -> "FqElem":
        if len(coords) != self.m:
            raise InputError(f"expected {self.m} coordinates, got {len(coords)}")
        return FqElem(self, tuple(c % self.p for c in coords))

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldSpec:
    """The canonical F_{p^m}: deterministic smallest irreducible modulus.

    The scan runs over monic degree-m polynomials in increasing integer
    encoding sum(c_i p^i), so for example make_field(3, 2) picks X^2 + 1
    and make_field(2, 3) picks X^3 + X + 1.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return FieldSpec(p, 1, (0, 1))
    for code in range(p ** m):
        coeffs = []
        c = code
        for _ in range(m):
            coeffs.append(c % p)
            c //= p
        candidate = tuple(coeffs) + (1,)
        if _is_irreducible(candidate, p):
            return FieldSpec(p, m, candidate)
    raise InputError("no irreducible polynomial found")  # pragma: no cover


def field_from_modulus(p: int, modulus: Sequence[int]) -> FieldSpec:
    """A field with an explicitly supplied monic irreducible modulus."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    mod = tuple(c % p for c in modulus)
    m = len(mod) - 1
    if m < 1:
        raise DegreeZero("modulus must have degree >= 1")
    if mod[-1] != 1:
        raise InputError("modulus must be monic")
    if m == 1:
        if mod != (0, 1):
            raise InputError("degree-1 modulus must be X (prime field convention)")
        return FieldSpec(p, 1, mod)
    if not _is_irreducible(mod, p):
        raise InputError("modulus is not irreducible")
    return FieldSpec(p, m, mod)


# --------------------------------------------------------------------------
# elements

class FqElem:
    """An element of a FieldSpec, as a fixed-length coefficient tuple."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords: tuple[int, ...]):
        self.field = field
        self.coords = coords

    def _check(self, other: "FqElem") -> None:
        if self.field != other.field:
            raise InputError(f"elements of different fields: {self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, FqElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coords))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.m == 1:
            return FqElem(f, (self.coords[0] * o.coords[0] % f.p,))
        prod = _pmulmod(self.coords, o.coords, f.modulus, f.p)
        return FqElem(f, tuple(prod) + (0,) * (f.m - len(prod)))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        f = self.field
        if f.m == 1:
            return FqElem(f, (pow(self.coords[0], f.p - 2, f.p),))
        g, u, _ = _pextgcd(self.coords, f.modulus, f.p)
        if g != (1,):  # pragma: no cover - modulus is irreducible
            raise InputError("element not invertible")
        return FqElem(f, tuple(u) + (0,) * (f.m - len(u)))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int) -> "FqElem":
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        if f.m == 1:
            return FqElem(f, (pow(self.coords[0], e, f.p),))
        r = _ppowmod(self.coords, e, f.modulus, f.p)
        return FqElem(f, tuple(r) + (0,) * (f.m - len(r)))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return isinstance(other, FqElem) and self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __repr__(self) -> str:
        return f"FqElem({self.field!r}, {list(self.coords)})"


# --------------------------------------------------------------------------
# trace

@lru_cache(maxsize=None)
def _basis_traces(field: FieldSpec) -> tuple[int, ...]:
    """Traces of the basis monomials X^j, j < m, as integers mod p."""
    out = []
    for j in range(field.m):
        basis = field.element(tuple(1 if i == j else 0 for i in range(field.m)))
        acc = field.zero()
        frob = basis
        for _ in range(field.m):
            acc = acc + frob
            frob = frob ** field.p
        if any(acc.coords[1:]):  # pragma: no cover - trace lands in F_p
            raise InputError("trace computation left the prime field")
        out.append(acc.coords[0])
    return tuple(out)


def trace_to_prime(a: FqElem) -> int:
    """Absolute trace Tr_{F_q/F_p}(a) as an integer in [0, p)."""
    field = a.field
    if field.m == 1:
        return a.coords[0]
    basis = _basis_traces(field)
    return sum(c * t for c, t in zip(a.coords, basis)) % field.p


# --------------------------------------------------------------------------
# embeddings, kept coherent via a per-characteristic closure field

def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


def _subfield_elements(target: FieldSpec, a: int, budget: int | None) -> list[FqElem]:
    """All elements of the subfield of order p^a inside the target.

    Computed as the kernel of Frobenius^a - id, an F_p-linear map, then
    enumerated as all F_p-combinations of the kernel basis.
    """
    p, m = target.p, target.m
    charge("subfield enumeration for embedding", p ** a, budget)
    # columns: (X^j)^(p^a) - X^j for each basis monomial
    cols = []
    for j in range(m):
        b = target.element(tuple(1 if i == j else 0 for i in range(m)))
        img = b ** (p ** a) - b
        cols.append(list(img.coords))
    # kernel of the m x m matrix over F_p by Gaussian elimination
    mat = [[cols[j][i] for j in range(m)] for i in range(m)]
    pivots: list[int] = []
    row = 0
    for col in range(m):
        sel = None
        for r in range(row, m):
            if mat[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = pow(mat[row][col], p - 2, p)
        mat[row] = [v * inv % p for v in mat[row]]
        for r in range(m):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(v - f * w) % p for v, w in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * m
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][fc] % p
        basis.append(vec)
    elems = []
    for combo in itertools.product(range(p), repeat=len(basis)):
        acc = [0] * m
        for c, vec in zip(combo, basis):
            if c:
                for i in range(m):
                    acc[i] = (acc[i] + c * vec[i]) % p
        elems.append(target.element(acc))
    return elems


def _roots_in(modulus: tuple[int, ...], source_degree: int, target: FieldSpec,
              budget: int | None) -> list[FqElem]:
    """All roots of the (degree source_degree, F_p-coefficient) modulus
    inside the target field."""
    roots = []
    for z in _subfield_elements(target, source_degree, budget):
        acc = target.zero()
        power = target.one()
        for c in modulus:
            if c:
                acc = acc + power * c
            power = power * z
        if not acc:
            roots.append(z)
    return roots


def _apply_hom(a: FqElem, image_powers: list[FqElem]) -> FqElem:
    """Apply the ring hom sending the source generator to image_powers[1]."""
    target_field = image_powers[0].field
    acc = target_field.zero()
    for c, pw in zip(a.coords, image_powers):
        if c:
            acc = acc + pw * c
    return acc


def _gen_powers(field_m: int, image: FqElem) -> list[FqElem]:
    out = [image.field.one()]
    for _ in range(field_m - 1):
        out.append(out[-1] * image)
    return out


class _EmbeddingRegistry:
    """Coherent embeddings for one characteristic.

    Every touched field gets a distinguished image of its generator in a
    shared closure field F_{p^L} (L = lcm of touched degrees).  The
    embedding source -> target picks the unique root of the source
    modulus whose closure image matches the source's distinguished
    image; composites along towers therefore agree with direct
    embeddings for the lifetime of the process.
    """

    def __init__(self, p: int):
        self.p = p
        self.closure: FieldSpec = make_field(p, 1)
        # (m, modulus) -> list of powers of the distinguished closure image
        self.images: dict[tuple[int, tuple[int, ...]], list[FqElem]] = {}
        # (source spec, target spec) -> powers of the embedding image
        self.embeddings: dict[tuple[FieldSpec, FieldSpec], list[FqElem]] = {}

    def _grow_closure(self, degree: int, budget: int | None) -> None:
        new_l = _lcm(self.closure.m, degree)
        if new_l == self.closure.m:
            return
        new_closure = make_field(self.p, new_l)
        transported: dict[tuple[int, tuple[int, ...]], list[FqElem]] = {}
        if self.images:
            old = self.closure
            roots = _roots_in(old.modulus, old.m, new_closure, budget)
            lift = _gen_powers(old.m, min(roots, key=lambda r: r.coords))
            for key, powers in self.images.items():
                img = _apply_hom(powers[1] if len(powers) > 1 else powers[0], lift)
                transported[key] = _gen_powers(key[0], img) if key[0] > 1 else [new_closure.one()]
        self.closure = new_closure
        self.images = transported

    def _touch(self, spec: FieldSpec, budget: int | None) -> list[FqElem]:
        key = (spec.m, spec.modulus)
        self._grow_closure(spec.m, budget)
        if key not in self.images:
            if spec.m == 1:
                self.images[key] = [self.closure.one()]
            else:
                roots = _roots_in(spec.modulus, spec.m, self.closure, budget)
                root = min(roots, key=lambda r: r.coords)
                self.images[key] = _gen_powers(spec.m, root)
        return self.images[key]

    def embedding_powers(self, source: FieldSpec, target: FieldSpec,
                         budget: int | None) -> list[FqElem]:
        key = (source, target)
        cached = self.embeddings.get(key)
        if cached is not None:
            return cached
        # grow once up front: touching the target after the source would
        # otherwise invalidate the source's image powers mid-lookup
        self._grow_closure(_lcm(source.m, target.m), budget)
        src_img = self._touch(source, budget)
        tgt_img = self._touch(target, budget)
        candidates = _roots_in(source.modulus, source.m, target, budget)
        chosen = None
        for root in candidates:
            if _apply_hom(root, tgt_img) == src_img[1]:
                chosen = root
                break
        if chosen is None:  # pragma: no cover - theory guarantees a match
            raise InputError("no coherent embedding root found")
        powers = _gen_powers(source.m, chosen)
        self.embeddings[key] = powers
        return powers


_REGISTRIES: dict[int, _EmbeddingRegistry] = {}


def embed(a: FqElem, target: FieldSpec, budget: int | None = None) -> FqElem:
    """Embed a into the target field (source degree must divide target's).

    Embeddings are ring homomorphisms, deterministic within a process,
    and coherent: for a tower F_{p^a} < F_{p^b} < F_{p^c}, embedding in
    two steps equals embedding directly.
    """
    source = a.field
    if source == target:
        return a
    if source.p != target.p:
        raise IncompatibleCharacteristic(
            f"cannot embed characteristic {source.p} into characteristic {target.p}")
    if target.m % source.m != 0:
        raise NotAnExtension(f"{target!r} is not an extension of {source!r}")
    if source.m == 1:
        coords = [0] * target.m
        coords[0] = a.coords[0]
        return target.element(coords)
    registry = _REGISTRIES.setdefault(source.p, _EmbeddingRegistry(source.p))
    powers = registry.embedding_powers(source, target, budget)
    return _apply_hom(a, powers)


# --------------------------------------------------------------------------
# multiplicative generator and torus enumeration

@lru_cache(maxsize=None)
def multiplicative_generator(field: FieldSpec) -> FqElem:
    """First element in coefficient-lex order generating F_q^*."""
    q = field.q
    factors = _prime_factors(q - 1)
    cofactors = [(q - 1) // ell for ell in factors]
    for coords in itertools.product(range(field.p), repeat=field.m):
        # lex order over (c0, c1, ...); skip zero
        if not any(coords):
            continue
        cand = field.element(coords)
        if all((cand ** cof) != 1 for cof in cofactors):
            return cand
    raise InputError("no generator found")  # pragma: no cover


def torus_size(field: FieldSpec, n: int) -> int:
    if n < 1:
        raise InputError(f"torus dimension must be >= 1, got {n}")
    return (field.q - 1) ** n


def enumerate_torus(field: FieldSpec, n: int, *, start: int = 0,
                    stop: int | None = None,
                    budget: int | None = None) -> Iterator[tuple[FqElem, ...]]:
    """Yield points of (F_q^*)^n in the canonical order.

    Point number L (0-based) is (g^{e_1}, ..., g^{e_n}) where
    (e_1, ..., e_n) are the base-(q-1) digits of L, last axis fastest.
    The [start, stop) window makes disjoint contiguous chunks that
    together reproduce the full stream exactly.
    """
    total = torus_size(field, n)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise BadIndex(f"window [{start}, {stop}) out of range for {total} points")
    charge("torus enumeration", stop - start, budget)
    q1 = field.q - 1
    g = multiplicative_generator(field)
    # decode the starting exponent vector
    exps = []
    rem = start
    for _ in range(n):
        exps.append(rem % q1)
        rem //= q1
    exps.reverse()
    point = [g ** e for e in exps]
    for _ in range(stop - start):
        yield tuple(point)
        # odometer step on the exponent vector, last axis fastest
        axis = n - 1
        while axis >= 0:
            exps[axis] += 1
            if exps[axis] < q1:
                point[axis] = point[axis] * g
                break
            exps[axis] = 0
            point[axis] = field.one()
            axis -= 1


# --------------------------------------------------------------------------
# discrete log / Zech tables for fast integer-only enumeration

class DiscreteTable:
    """Log-domain tables for one field: exp, log, Zech addition, traces.

    Elements are referenced by their discrete log e (g^e); zero is
    represented by None at API boundaries and -1 inside arrays.  These
    tables exist so enumeration-heavy sums can run on machine integers.
    """

    __slots__ = ("field", "q", "g", "exp_enc", "log_by_enc", "zech", "trace_by_exp")

    def __init__(self, field: FieldSpec, budget: int | None = None):
        charge("discrete log table construction", field.q, budget)
        self.field = field
        q = field.q
        self.q = q
        p, m = field.p, field.m
        g = multiplicative_generator(field)
        self.g = g
        exp_enc = [0] * (q - 1)
        log_by_enc = [-1] * q
        cur = field.one()
        weights = [p ** i for i in range(m)]
        for e in range(q - 1):
            enc = 0
            for c, w in zip(cur.coords, weights):
                enc += c * w
            exp_enc[e] = enc
            log_by_enc[enc] = e
            cur = cur * g
        self.exp_enc = exp_enc
        self.log_by_enc = log_by_enc
        # Zech logarithms: zech[e] = log(1 + g^e), -1 when 1 + g^e = 0
        zech = [0] * (q - 1)
        for e in range(q - 1):
            enc = exp_enc[e]
            c0 = enc % p
            enc1 = enc - c0 + (c0 + 1) % p
            zech[e] = log_by_enc[enc1]
        self.zech = zech
        # traces by exponent
        basis = _basis_traces(field) if m > 1 else (1,)
        trace_by_exp = [0] * (q - 1)
        for e in range(q - 1):
            rem = exp_enc[e]
            tr = 0
            for j in range(m):
                c = rem % p
                rem //= p
                if c:
                    tr += c * basis[j]
            trace_by_exp[e] = tr % p
        self.trace_by_exp = trace_by_exp

    def log(self, a: FqElem) -> int | None:
        """Discrete log of a field element, None for zero."""
        if a.field != self.field:
            raise InputError("element from a different field")
        p = self.field.p
        enc = 0
        w = 1
        for c in a.coords:
            enc += c * w
            w *= p
        e = self.log_by_enc[enc]
        return None if e == -1 else e

    def elem(self, e: int | None) -> FqElem:
        if e is None:
            return self.field.zero()
        enc = self.exp_enc[e % (self.q - 1)]
        coords = []
        p = self.field.p
        for _ in range(self.field.m):
            coords.append(enc % p)
            enc //= p
        return self.field.element(coords)

    def add_logs(self, e1: int | None, e2: int | None) -> int | None:
        """log(g^e1 + g^e2) with None meaning the zero element."""
        if e1 is None:
            return e2
        if e2 is None:
            return e1
        z = self.zech[(e2 - e1) % (self.q - 1)]
        if z == -1:
            return None
        return (e1 + z) % (self.q - 1)

    def sum_terms(self, logs: list[int], weights: list[tuple[int, ...]],
                  exps: list[int]) -> int | None:
        """log of sum_j g^(logs[j] + <weights[j], exps>), None if zero."""
        q1 = self.q - 1
        acc: int | None = None
        for lj, wj in zip(logs, weights):
            e = lj
            for w, x in zip(wj, exps):
                if w:
                    e += w * x
            acc = self.add_logs(acc, e % q1)
        return acc


@lru_cache(maxsize=None)
def discrete_table(field: FieldSpec) -> DiscreteTable:
    return DiscreteTable(field)
