"""Finite-precision evaluation of iota_q(z) = (q**z - 1)/(q - 1) and its
kernel, image, and valuation structure.

For q = 1 + (q-1) with v_p(q-1) = m0 >= 1, the evaluator computes q**z - 1
at precision m0 + n and exact-divides by q - 1 (which costs exactly m0
digits), so results carry the full requested n digits.  For parameters
outside 1 + pZ_p (p odd), q - 1 is a unit and only integer exponents are
accepted.

q = 1 is handled totally as the identity map (the continuity limit), a
documented special case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import check_precision_request
from .errors import DomainError, InvariantError, PrecisionError
from .padic_core import (
    INF,
    CosetDescriptor,
    PadicInt,
    as_qparameter,
    exact_div,
    int_valuation,
    mult_order,
)


class _InjectiveOnAll:
    """Marker: the level-n map collapses nothing -- it is injective on the
    whole parameter orbit (q is a root of unity at available precision)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INJECTIVE_ON_ALL"


INJECTIVE_ON_ALL = _InjectiveOnAll()


@dataclass(frozen=True)
class ImageDescription:
    """The image of the level-n map, as a disjoint union of cosets.

    covers_all means every residue mod p**n is hit; the cosets then reduce
    to the single full coset base 0, exponent 0.
    """

    prime: int
    modulus_exponent: int
    covers_all: bool
    cosets: tuple[CosetDescriptor, ...]

    def __post_init__(self):
        seen = []
        for c in self.cosets:
            if c.prime != self.prime:
                raise DomainError("coset prime differs from image prime")
            if c.exponent > self.modulus_exponent:
                raise DomainError("coset finer than the stated modulus")
            seen.append(c)
        for i in range(len(seen)):
            for j in range(i + 1, len(seen)):
                e = min(seen[i].exponent, seen[j].exponent)
                if (seen[i].base.lift() - seen[j].base.lift()) % self.prime**e == 0:
                    raise InvariantError(f"cosets {seen[i]} and {seen[j]} overlap")

    def count(self) -> int:
        """Number of residues mod p**modulus_exponent in the image."""
        n = self.modulus_exponent
        if self.covers_all:
            return self.prime**n
        return sum(self.prime ** (n - c.exponent) for c in self.cosets)

    def residues(self) -> list[int]:
        """Sorted image residues mod p**modulus_exponent."""
        n = self.modulus_exponent
        if self.covers_all:
            return list(range(self.prime**n))
        out: set[int] = set()
        for c in self.cosets:
            out.update(c.residues(n))
        return sorted(out)

    def contains(self, value: int) -> bool:
        if self.covers_all:
            return True
        return any(c.contains(value) for c in self.cosets)


def _exponent_residue(q, z, n: int) -> int:
    """Reduce the exponent z to a usable integer mod p**n."""
    p = q.prime
    if isinstance(z, int):
        return z % p**n
    if isinstance(z, PadicInt):
        if z.prime != p:
            raise DomainError(f"prime mismatch: q is {p}-adic, z is {z.prime}-adic")
        if z.precision < n:
            raise PrecisionError(f"z needs {n} digits for output precision {n}, has {z.precision}")
        return z.residue(n)
    raise DomainError("z must be an int or PadicInt")


def iota_eval(q, z, n: int) -> PadicInt:
    """iota_q(z) mod p**n.

    q in 1 + pZ_p: needs q mod p^(m0+n) and z mod p^n (z may be an exact
    integer or a PadicInt; rationals enter via from_rational).  q outside
    1 + pZ_p (p odd): integer z only, q - 1 is already a unit.
    q = 1 at full precision: the identity map.
    """
    q = as_qparameter(q)
    p = q.prime
    if n < 1:
        raise DomainError("output precision must be at least 1")
    check_precision_request(n)

    if q.m0 is INF:
        # q = 1 at every available digit: iota_1 = identity.  Sound at
        # precision n only if we have seen at least n digits of q.
        if q.precision < n:
            raise PrecisionError(f"q = 1 to only {q.precision} digits; need {n}")
        if isinstance(z, int):
            return PadicInt.from_int(z, p, n)
        if isinstance(z, PadicInt) and z.prime == p:
            if z.precision < n:
                raise PrecisionError(f"z has {z.precision} digits, need {n}")
            return z.truncate(n)
        raise DomainError("z must be an int or a matching PadicInt")

    if q.in_u1:
        m0 = q.m0
        need = m0 + n
        if q.precision < need:
            raise PrecisionError(f"iota at precision {n} needs q mod {p}^{need}, have {q.precision} digits")
        e = _exponent_residue(q, z, n)
        mod = p**need
        t = (pow(q.value.residue(need), e, mod) - 1) % mod
        num = PadicInt.from_int(t, p, need)
        den = q.value.truncate(need) - 1
        return exact_div(num, den)

    # p odd, q a unit outside 1 + pZ_p: q - 1 is a unit, exponents are integers.
    if not isinstance(z, int):
        raise DomainError("q is not in 1 + pZ_p: only integer exponents are defined here")
    if q.precision < n:
        raise PrecisionError(f"need q mod {p}^{n}, have {q.precision} digits")
    mod = p**n
    r = q.value.residue(n)
    t = (pow(r, z, mod) - 1) % mod
    return PadicInt.from_int(t * pow(r - 1, -1, mod), p, n)


def iota_valuation(q, z):
    """v_p(iota_q(z)) by the closed-form case split, without evaluating.

    Unit z with q in 1 + pZ_p, or z outside the o_p-divisible classes for
    other q, gives 0.  The remaining cases: v_p(z) (p odd, q in 1 + pZ_p,
    and p = 2 with q in 1 + 4Z_2); v_2(z) + l0 - 1 (p = 2, q in 3 + 4Z_2);
    v_p(z) + v_p(q**o_p - 1) (p odd, q outside 1 + pZ_p, o_p | z).
    INF means the value vanishes to every checkable digit.
    """
    q = as_qparameter(q)
    p = q.prime

    if q.in_u1:
        if isinstance(z, int):
            vz = int_valuation(z, p)
        elif isinstance(z, PadicInt):
            if z.prime != p:
                raise DomainError(f"prime mismatch: {p} vs {z.prime}")
            vz = z.valuation()
        else:
            raise DomainError("z must be an int or PadicInt")
        if p != 2 or q.in_u2:
            # covers units (vz = 0) and q = 1 at full precision alike
            return vz
        if q.m0 is INF:
            raise PrecisionError("cannot split 1 + 2Z_2 from 1 + 4Z_2 at one digit of q")
        # p = 2, q = 3 mod 4
        if vz == 0:
            return 0
        return vz + q.l0 - 1  # INF propagates through the addition

    # p odd, q outside 1 + pZ_p: integer z only (the o_p-coordinate of a
    # general p-adic exponent is not reified).
    if not isinstance(z, int):
        raise DomainError("q is not in 1 + pZ_p: only integer exponents are defined here")
    if z % q.o_p != 0:
        return 0
    m = q.order_valuation()
    v = int_valuation(z, p)
    return v + m  # either INF absorbs the sum


def kernel_order(q, n: int):
    """Number of distinct values of the level-n map (the size of the
    quotient on which it is injective), or INJECTIVE_ON_ALL when q is a
    root of unity at available precision (nothing ever collapses).

    For q in 1 + pZ_p with v_p(q-1) = m0 this is the multiplicative order
    of q mod p^(m0+n) -- hence the precision prerequisite q mod p^(m0+n);
    for other q it is the order of q mod p^n.
    """
    q = as_qparameter(q)
    p = q.prime
    if n < 1:
        raise DomainError("modulus exponent must be at least 1")

    if q.in_u1:
        m0 = q.m0
        if m0 is INF:
            # q = 1 at available precision: the identity map, p^n values.
            # For p = 2 one digit cannot exclude q = 3 mod 4, whose count
            # differs for n >= 2.
            if p == 2 and q.precision < 2 and n >= 2:
                raise PrecisionError("one digit of q cannot resolve the unit branch")
            return p**n
        if p == 2 and m0 == 1:
            if q.l0 is INF:
                # q = -1 at every available digit: injective on its orbit.
                return INJECTIVE_ON_ALL
            return mult_order(q.value, 1 + n)
        # p odd in 1+pZ_p, or p = 2 in 1+4Z_2: order mod p^(m0+n) is p^n.
        return p**n

    # p odd, q outside 1 + pZ_p
    if q.order_valuation() is INF:
        return INJECTIVE_ON_ALL
    return mult_order(q.value, n)


def image_description(q, n: int) -> ImageDescription:
    """The image of the level-n map as cosets, per the three-case structure:
    full ring; the 2^min(l0,n)-coset pair for p = 2, q = 3 mod 4; or the
    o_p cosets iota_q(z0) + p^min(m,n)Z for q outside 1 + pZ_p (p odd),
    with m = v_p(q**o_p - 1)."""
    q = as_qparameter(q)
    p = q.prime
    if n < 1:
        raise DomainError("modulus exponent must be at least 1")
    check_precision_request(n)

    def full() -> ImageDescription:
        zero = PadicInt.from_int(0, p, 1)
        return ImageDescription(p, n, True, (CosetDescriptor(zero, 0),))

    if q.in_u1:
        if q.m0 is INF:
            if p == 2 and q.precision < 2 and n >= 2:
                raise PrecisionError("one digit of q cannot resolve the unit branch")
            return full()
        if p != 2 or q.in_u2:
            return full()
        # p = 2, q = 3 mod 4: image is 2^e Z union 1 + 2^e Z at e = min(l0, n)
        l0 = q.l0
        if l0 is INF:
            # q = -1 at every available digit; the true l0 is at least the
            # precision, so e = n is certain once we have n digits.
            if q.precision < n:
                raise PrecisionError(f"q = -1 to {q.precision} digits cannot fix the image mod 2^{n}")
            e = n
        else:
            e = min(l0, n)
        if n == 1:
            # e = 1 and the pair {0}, {1} is everything mod 2
            return full()
        cosets = tuple(CosetDescriptor(PadicInt.from_int(b, p, e), e) for b in (0, 1))
        return ImageDescription(p, n, False, cosets)

    # p odd, q outside 1 + pZ_p: o_p cosets with spacing p^min(m, n); m >= 1
    # always, so e >= 1.
    m = q.order_valuation()
    if m is INF:
        if q.precision < n:
            raise PrecisionError(
                f"q is a root of unity to {q.precision} digits; need {n} to fix the image mod {p}^{n}"
            )
        e = n
    else:
        e = min(m, n)
    bases = [PadicInt.from_int(iota_eval(q, z0, e).residue(e), p, e) for z0 in range(q.o_p)]
    cosets = tuple(CosetDescriptor(b, e) for b in bases)
    # Thm 3.4: base residues pairwise incongruent mod p -- ImageDescription's
    # disjointness check enforces it at construction.
    return ImageDescription(p, n, False, cosets)


def cocycle_sum(q, n: int) -> PadicInt:
    """Sum of iota_q(z) over all z mod p**n, by direct summation of
    evaluated values (the closed form 0 / 2^(n-1) is a test, not the
    implementation)."""
    q = as_qparameter(q)
    p = q.prime
    if not q.in_u1:
        raise DomainError("cocycle sums are defined for q in 1 + pZ_p")
    check_precision_request(n)
    total = 0
    mod = p**n
    for z in range(mod):
        total += iota_eval(q, z, n).lift()
    return PadicInt.from_int(total, p, n)
