"""The parameter <-> fixed-point correspondence at p = 3.

For q = 4 or 7 (mod 9) the interpolation iota_q has, besides the trivial
fixed points 0 and 1, a single distinguished 3-adic fixed point z_q, and the
assignment q -> z_q is a homeomorphism onto (3Z_3 u (1+3Z_3)) minus {0, 1}.
This module computes both directions at finite precision:

  * solve_q_for_z / psi: given z, recover the unique q with iota_q(z) = z,
    one digit of q per lifting stage (three candidates, one survivor);
  * phi: given q, locate its rooted fixed point by scanning candidate
    valuations and then growing digits, or report that q is indistinguishable
    from one of the two exceptional parameters at the available precision;
  * exceptional_q: the two parameters whose only fixed points are 0 and 1,
    computed digit by digit and cached across calls;
  * F_map / G_map: the affine-renormalized versions of phi that are isometries
    of Z_3 in both branches.

Precision bookkeeping follows one rule everywhere: fixedness of a point with
v(z(z-1)) = v0 at level L depends only on q mod 3^(L-v0).  That is what makes
zero-padding q beyond its stated digits legitimate in the scans below, and it
is why phi loses exactly one digit (output z mod 3^(N-1) from q mod 3^N) while
psi needs v0 spare digits of z (input z mod 3^(P+v0) for output q mod 3^P).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .cocycle import iota_eval
from .config import check_precision_request, precision_cap
from .errors import DomainError, InvariantError, PrecisionError, ResourceError
from .fixed_points import _scan_valuation, is_fixed, propagate_rooted
from .padic_core import INF, PadicInt, QParameter, as_qparameter, int_valuation

BRANCHES = ("seven", "four")

# z = offset mod 3 on each branch; q = 1 + base*3 mod 9.
_BRANCH_OFFSET = {"seven": 0, "four": 1}
_BRANCH_BASE = {"seven": 2, "four": 1}


def _padded_q(q_int: int, level: int) -> QParameter:
    """The parameter with the given digits, zero-padded for a level test.

    iota at level L wants q mod 3^(L+1); digits of q beyond the ones that
    matter for the test at hand are padded with zeros, which is sound exactly
    when the caller's test is insensitive to them (see module docstring).
    """
    return QParameter(PadicInt.from_int(q_int, 3, level + 1))


def _fixes(q_int: int, z, level: int) -> bool:
    """Does the zero-padded parameter q_int fix z mod 3^level?"""
    return is_fixed(_padded_q(q_int, level), z, level)


@dataclass
class DigitSolverState:
    """Progress of the digit-by-digit solve for q given its fixed point.

    `target` is z reduced mod 3^n, `v0` = v(z(z-1)), `digits` the little-endian
    digits of q found so far (starting 1, then the branch digit).  After each
    stage, iota_q(z) = z mod 3^(k + v0 + 1) where k = len(digits) - 1; extend()
    maintains that invariant or raises InvariantError.
    """

    target: PadicInt
    v0: int
    digits: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.target.prime != 3:
            raise DomainError("the digit solver is specific to p = 3")
        if not self.digits:
            offset = self.target.residue(1)
            if offset not in (0, 1):
                raise DomainError("z must be 0 or 1 mod 3")
            branch = "seven" if offset == 0 else "four"
            self.digits = [1, _BRANCH_BASE[branch]]
        if self.digits[0] != 1 or self.digits[1] not in (1, 2):
            raise InvariantError(f"malformed parameter digits {self.digits[:2]}")

    @property
    def modulus_exponent(self) -> int:
        """How many digits of q are pinned down."""
        return len(self.digits)

    @property
    def verified_level(self) -> int:
        """The level at which the current digits have been checked to fix z."""
        return len(self.digits) - 1 + self.v0 + 1

    def q_value(self) -> int:
        return sum(d * 3**i for i, d in enumerate(self.digits))

    def q(self) -> PadicInt:
        return PadicInt(3, tuple(self.digits))

    def check_base(self) -> None:
        """Verify the stage-1 invariant for the branch digit alone.

        Every branch parameter fixes every admissible z at level v0 + 2, so a
        failure here is an internal inconsistency, not a bad input.
        """
        if not _fixes(self.q_value(), self.target, self.verified_level):
            raise InvariantError(
                f"branch start {self.digits} does not fix {self.target} mod 3^{self.verified_level}"
            )

    def extend(self) -> None:
        """Append the unique next digit keeping the target fixed one level up."""
        k = len(self.digits)
        level = k + self.v0 + 1
        base = self.q_value()
        good = [a for a in (0, 1, 2) if _fixes(base + a * 3**k, self.target, level)]
        if len(good) != 1:
            raise InvariantError(
                f"digit {k} of q for z = {self.target}: {len(good)} candidates {good} "
                f"pass at level {level}; expected exactly one"
            )
        self.digits.append(good[0])


def solve_q_for_z(z, n: int) -> PadicInt:
    """The unique q = 4 or 7 mod 9 with iota_q(z) = z mod 3^n, as q mod 3^(n-v0).

    z (int or 3-adic) must satisfy 1 <= v0 <= n-2 for v0 = v(z(z-1)) and be
    known mod 3^n.  The first digit of q is forced by the branch law (z in 3Z
    gives q = 7, z in 1+3Z gives q = 4 mod 9); each later digit is found by
    testing the three candidates with one evaluation each.
    """
    check_precision_request(n)
    if n < 3:
        raise DomainError("solving needs n >= 3 (v0 >= 1 and v0 <= n-2)")
    if isinstance(z, int):
        z = PadicInt.from_int(z, 3, n)
    elif isinstance(z, PadicInt):
        if z.prime != 3:
            raise DomainError("the correspondence is specific to p = 3")
        if z.precision < n:
            raise PrecisionError(f"z needs {n} digits, has {z.precision}")
        z = z.truncate(n)
    else:
        raise DomainError("z must be an int or PadicInt")

    v0 = (z * (z - 1)).valuation()
    if v0 is INF:
        raise DomainError(
            "z is 0 or 1 at every available digit; its parameter is exceptional_q's job"
        )
    if v0 == 0:
        raise DomainError("z = 2 mod 3 is never a fixed point of a branch parameter")
    if v0 > n - 2:
        raise DomainError(f"v(z(z-1)) = {v0} needs working precision n >= {v0 + 2}, got {n}")

    state = DigitSolverState(target=z, v0=v0)
    state.check_base()
    while state.modulus_exponent < n - v0:
        state.extend()
    return state.q()


def psi(z, out_precision: int) -> PadicInt:
    """The correspondence z -> q, as q mod 3^out_precision.

    z must lie in 3Z_3 u (1+3Z_3).  If z is 0 or 1 at every available digit
    the answer is the matching exceptional parameter; otherwise z must carry
    out_precision + v0 digits and the digit solver runs at level
    out_precision + v0.
    """
    P = out_precision
    if P < 1:
        raise DomainError("output precision must be at least 1")
    check_precision_request(P)

    if isinstance(z, int):
        v0 = int_valuation(z * (z - 1), 3)
        offset = z % 3
    elif isinstance(z, PadicInt):
        if z.prime != 3:
            raise DomainError("the correspondence is specific to p = 3")
        v0 = (z * (z - 1)).valuation()
        offset = z.residue(1)
    else:
        raise DomainError("z must be an int or PadicInt")

    if offset == 2:
        raise DomainError("z = 2 mod 3 is outside the correspondence's domain")
    if v0 is INF:
        branch = "seven" if offset == 0 else "four"
        return exceptional_q(branch, P)
    if v0 == 0:
        # offset is 0 or 1, so v(z(z-1)) >= 1 always; belt and braces.
        raise InvariantError(f"v(z(z-1)) = 0 with z = {offset} mod 3")
    if P == 1:
        return PadicInt.from_int(1, 3, 1)

    n = P + v0
    if isinstance(z, PadicInt) and z.precision < n:
        raise PrecisionError(
            f"psi at precision {P} needs z mod 3^{n} (v0 = {v0}); z has {z.precision} digits"
        )
    return solve_q_for_z(z if isinstance(z, int) else z.truncate(n), n)


# ---------------------------------------------------------------------------
# The exceptional parameters.
# ---------------------------------------------------------------------------

# Digits are grown on demand and shared across calls and threads; the lock
# makes the grow step single-writer and keeps reads consistent with it.
_EXC_LOCK = threading.Lock()
_EXC_DIGITS: dict[str, list[int]] = {
    "seven": [1, _BRANCH_BASE["seven"]],
    "four": [1, _BRANCH_BASE["four"]],
}


def exceptional_q(branch: str, digit_count: int) -> PadicInt:
    """The branch's exceptional parameter to digit_count digits.

    Exactly two branch parameters have no fixed points besides 0 and 1; they
    are the limits of psi at those two points.  The truncation with k+1 digits
    is characterised by fixing 0 + 3^k (branch seven) or 1 + 3^k (branch four)
    modulo 3^(2k+1), which pins each successive digit: of the three candidate
    extensions exactly one passes that test.  Each stage doubles the working
    modulus, so digit_count is limited by the precision cap.
    """
    if branch not in BRANCHES:
        raise DomainError(f"branch must be one of {BRANCHES}, got {branch!r}")
    if digit_count < 1:
        raise DomainError("digit_count must be at least 1")
    check_precision_request(digit_count)
    offset = _BRANCH_OFFSET[branch]
    with _EXC_LOCK:
        digits = _EXC_DIGITS[branch]
        if digit_count > len(digits):
            # Appending digit k tests fixedness at level 2k+1; refuse up front
            # rather than dying mid-climb.
            top_level = 2 * (digit_count - 1) + 1
            cap = precision_cap()
            if top_level > cap:
                raise ResourceError(
                    f"digit {digit_count} needs a fixedness test at level {top_level}, "
                    f"beyond the precision cap {cap} (QADIC_PRECISION_CAP)"
                )
        while len(digits) < digit_count:
            k = len(digits)
            level = 2 * k + 1
            target = offset + 3**k
            base = sum(d * 3**i for i, d in enumerate(digits))
            good = [a for a in (0, 1, 2) if _fixes(base + a * 3**k, target, level)]
            if len(good) != 1:
                raise InvariantError(
                    f"digit {k} of the {branch}-branch exceptional parameter: "
                    f"{len(good)} candidates {good} fix {target} mod 3^{level}"
                )
            digits.append(good[0])
        return PadicInt(3, tuple(digits[:digit_count]))


@dataclass(frozen=True)
class ExceptionalReport:
    """phi's honest answer when no rooted fixed point is within reach.

    Scanning valuations 1..agreement_depth-2 exhausts the input's precision
    without a hit, which happens if and only if q agrees with the branch's
    exceptional parameter mod 3^agreement_depth.  Whether q *is* that
    parameter is undecidable at finite precision, so no stronger claim is made.
    """

    branch: str
    agreement_depth: int

    def __str__(self):
        return (
            f"no rooted fixed point within precision; q agrees with the "
            f"{self.branch}-branch exceptional parameter mod 3^{self.agreement_depth}"
        )


def phi(q, in_precision: int):
    """The correspondence q -> z_q, as z mod 3^(in_precision - 1).

    q must be 4 or 7 mod 9 and known mod 3^in_precision.  The rooted fixed
    point is searched valuation by valuation: a point with v(z(z-1)) = v first
    becomes visible (and is determined mod 3^(v+2)) at level 2v+3, where only
    six candidates need testing; a hit is then extended one digit per level by
    propagate_rooted.  Both steps only ever depend on q mod 3^in_precision,
    the zero-padding beyond that being insensitive by the v0-shift rule.

    If every usable valuation (v <= in_precision - 3) comes up empty, q is
    indistinguishable from an exceptional parameter and an ExceptionalReport
    with agreement_depth = in_precision - 1 is returned instead.

    Deep searches test fixedness at levels up to 2*in_precision - 3, which
    must stay within the precision cap.
    """
    q = as_qparameter(q)
    if q.prime != 3:
        raise DomainError("the correspondence is specific to p = 3")
    branch = q.branch
    if branch not in BRANCHES:
        raise DomainError("q must be 4 or 7 mod 9 (known at least mod 9)")
    N = in_precision
    if N < 2:
        raise DomainError("need q mod 9 at least")
    check_precision_request(N)
    if q.precision < N:
        raise PrecisionError(f"q has {q.precision} digits, stated precision is {N}")

    offset = _BRANCH_OFFSET[branch]
    if N == 2:
        # One output digit, and the branch law already dictates it.
        return PadicInt.from_int(offset, 3, 1)

    q_int = q.value.residue(N)
    for v in range(1, N - 2):
        level = 2 * v + 3
        hits = _scan_valuation(_padded_q(q_int, level), level, v, offset)
        if len(hits) > 1:
            raise InvariantError(
                f"valuation-{v} scan at level {level} found {len(hits)} rooted "
                f"candidates {hits[:3]}; expected at most one"
            )
        if hits:
            z, v0 = hits[0], v
            # z is fixed mod 3^level and known mod 3^(level - v0 - 1); each
            # step appends one digit.  Stop once z carries N-1 digits.
            for lev in range(level, N + v0):
                c = propagate_rooted(_padded_q(q_int, lev + 1), z, lev)
                z += c * 3 ** (lev - v0 - 1)
            return PadicInt.from_int(z, 3, N - 1)
    return ExceptionalReport(branch=branch, agreement_depth=N - 1)


# ---------------------------------------------------------------------------
# The renormalized isometries.
# ---------------------------------------------------------------------------


def _affine_input(x, P: int) -> int:
    """Reduce the isometry argument to an integer mod 3^(P+1)."""
    if isinstance(x, int):
        return x % 3 ** (P + 1)
    if isinstance(x, PadicInt):
        if x.prime != 3:
            raise DomainError("the isometries live on Z_3")
        if x.precision < P + 1:
            raise PrecisionError(f"need x mod 3^{P + 1}, have {x.precision} digits")
        return x.residue(P + 1)
    raise DomainError("x must be an int or PadicInt")


def _isometry(x, P: int, branch: str):
    """Common core of F_map and G_map: conjugate phi by the affine charts."""
    if P < 1:
        raise DomainError("output precision must be at least 1")
    check_precision_request(P)
    offset = _BRANCH_OFFSET[branch]
    base = 4 if branch == "four" else 7
    x_int = _affine_input(x, P)
    # q = base + 9x is exact: two digits in, two digits up.
    q = QParameter(PadicInt.from_int(base + 9 * x_int, 3, P + 3))
    out = phi(q, P + 3)
    if isinstance(out, ExceptionalReport):
        # Agreement with the exceptional parameter mod 3^(P+2) forces
        # v(z - offset) >= P + 1, so the chart image is 0 mod 3^P exactly.
        return PadicInt.from_int(0, 3, P)
    # out = z mod 3^(P+2) with z = offset mod 3; the chart is (z - offset)/3.
    shifted = (out.residue(P + 2) - offset) // 3
    return PadicInt.from_int(shifted, 3, P + 1).truncate(P)


def F_map(x, out_precision: int) -> PadicInt:
    """(phi(4 + 9x) - 1)/3 mod 3^out_precision; needs x mod 3^(out_precision+1).

    An isometry of Z_3: v(F(x) - F(x')) = v(x - x').  At the one point where
    phi reports exceptional agreement the value is 0 to full output precision
    (provably so, from the agreement depth), making the map total.
    """
    return _isometry(x, out_precision, "four")


def G_map(x, out_precision: int) -> PadicInt:
    """phi(7 + 9x)/3 mod 3^out_precision; needs x mod 3^(out_precision+1).

    The seven-branch companion of F_map, an isometry with the same contract.
    """
    return _isometry(x, out_precision, "seven")
