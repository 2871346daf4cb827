"""The character-sum engine.

Central object: for c in F_q and a tuple (i0, i1, i2, i3) of residues mod d
summing to 0, the sum over the big field

    S_c = sum over x in F_{q^2} of chi(x^i0 * (x+1)^i1 * (x+c)^i2),

with chi the pinned order-d character (chi(g^m) = zeta_d^m) and chi(0) = 0.
A factor whose exponent is 0 mod d is absent: it contributes neither a
character value nor a vanishing condition.

The sweep is exact integer work done with numpy: per-code tables of
character exponents for x, x+1, x+c are combined mod d and bucketed with
bincount, giving the counts vector of the resulting element of Z[zeta_d].
No floating point exists anywhere in this module.

Closed forms wired in as self-checks (violations raise ContradictionError):
degenerate sums S_0 and S_1 are Jacobi-sum values (q or -1); the sum of
S_c over all c in F_q is q(q-3) or (q-1)^2 depending on the tuple; and an
extremal count N = #{c : S_c = 2q} obeys 4N <= 3q-9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyc import CycElt, mod_ideal_class
from .gf import ContradictionError, FieldCtx, FqElem

__all__ = [
    "ExponentTuple",
    "SumRecord",
    "sum_S",
    "quadratic_identity_check",
    "sum_over_c",
    "orbit",
    "admissible_values",
    "survey_N",
    "mod3_test",
    "iter_all_nonzero_tuples",
]


@dataclass(frozen=True)
class ExponentTuple:
    """A tuple (i0, i1, i2, i3) of residues mod d with i0+i1+i2+i3 = 0 mod d."""

    d: int
    i0: int
    i1: int
    i2: int
    i3: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        for name in ("i0", "i1", "i2", "i3"):
            object.__setattr__(self, name, getattr(self, name) % self.d)
        if (self.i0 + self.i1 + self.i2 + self.i3) % self.d != 0:
            raise ValueError("tuple entries must sum to 0 mod d")

    @classmethod
    def trivial(cls, d: int) -> "ExponentTuple":
        return cls(d, 0, 0, 0, 0)

    @classmethod
    def w_type(cls, d: int, i: int) -> "ExponentTuple":
        """(i, i, i, -3i): the diagonal family; i = 0 gives the trivial tuple."""
        return cls(d, i, i, i, -3 * i)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.i0, self.i1, self.i2, self.i3)

    @property
    def all_nonzero(self) -> bool:
        return all(i % self.d != 0 for i in self.entries)

    @property
    def is_w_type(self) -> bool:
        return self.i0 == self.i1 == self.i2

    def scale(self, k: int) -> "ExponentTuple":
        """The tuple k*(i0,i1,i2,i3); with gcd(k,d) = 1 this is the Galois
        action matching galois_apply(sum_S(c, t), k) = sum_S(c, t.scale(k))."""
        return ExponentTuple(self.d, k * self.i0, k * self.i1, k * self.i2, k * self.i3)


@dataclass(frozen=True)
class SumRecord:
    """One computed character sum S_{c, (i0,i1,i2,i3)}."""

    c: FqElem
    tuple: ExponentTuple
    value: CycElt
    as_integer: int | None

    @property
    def q(self) -> int:
        return self.c.ctx.q

    @property
    def hit_upper(self) -> bool:
        """Whether the sum attains the Weil upper bound 2q exactly."""
        return self.as_integer == 2 * self.q

    @property
    def hit_lower(self) -> bool:
        return self.as_integer == -2 * self.q

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "c": "0" if self.c.is_zero else self.c.dlog,
            "tuple": list(self.tuple.entries),
            "value": list(self.value.canon),
            "as_integer": self.as_integer,
            "is_real": self.value.is_real,
            "hit_upper": self.hit_upper,
            "hit_lower": self.hit_lower,
        }


# ----------------------------------------------------------------------------
# the sweep core
# ----------------------------------------------------------------------------


def _sweep_counts(ctx: FieldCtx, factors) -> np.ndarray:
    """Counts vector of sum over x of chi(prod (x + shift_j)^{e_j}).

    factors is a list of (e_j, shift_code_j); entries with e_j = 0 mod d are
    ignored entirely (absent factor).  Returns a length-d int64 array whose
    k-th entry counts the x with total character exponent k; x at which any
    present factor vanishes are excluded (chi(0) = 0).
    """
    d = ctx.d
    n2 = ctx.q * ctx.q
    tot = np.zeros(n2, dtype=np.int64)
    valid = np.ones(n2, dtype=bool)
    any_factor = False
    for e, shift in factors:
        e %= d
        if e == 0:
            continue
        any_factor = True
        if shift == 0:
            tab = ctx.chi_exp_table()
        elif shift == 1:
            tab = ctx.chi_exp_table_shift1()
        else:
            tab = ctx.chi_exp_table()[ctx.add_perm(shift)]
        valid &= tab >= 0
        tot += e * tab
    if not any_factor:
        # chi(1) summed over the whole field
        counts = np.zeros(d, dtype=np.int64)
        counts[0] = n2
        return counts
    return np.bincount(tot[valid] % d, minlength=d)


def sum_S(ctx: FieldCtx, c: FqElem, t: ExponentTuple) -> SumRecord:
    """S_{c, t} = sum over x in F_{q^2} of chi(x^i0 (x+1)^i1 (x+c)^i2).

    c must lie in the subfield F_q; t must belong to the same d = q+1.
    Degenerate c (0 and 1) are allowed — those are the Jacobi-sum cases.
    """
    if not isinstance(c, FqElem) or c.ctx is not ctx:
        raise ValueError("c must be an element of this field context")
    if not c.in_fq:
        raise ValueError("c must lie in the subfield F_q")
    if t.d != ctx.d:
        raise ValueError(f"tuple has d = {t.d}, field context has d = {ctx.d}")
    counts = _sweep_counts(ctx, [(t.i0, 0), (t.i1, 1), (t.i2, c.code)])
    value = CycElt(ctx.d, counts.tolist())
    return SumRecord(c=c, tuple=t, value=value, as_integer=value.as_integer)


# ----------------------------------------------------------------------------
# closed-form identities
# ----------------------------------------------------------------------------


def quadratic_identity_check(ctx: FieldCtx, order: int) -> dict:
    """Sum over x of chi(x(x+c)) for every c in F_q*, chi of the given order.

    The value must be q when the order exceeds 2 and -1 when the order is
    exactly 2.  Returns a report dict; any failing c is listed (and would
    indicate a bug, since the identity is unconditional).
    """
    d = ctx.d
    if order <= 1 or d % order != 0:
        raise ValueError(f"order must divide d = {d} and exceed 1")
    e = d // order
    expected = ctx.q if order > 2 else -1
    failed = []
    checked = 0
    for c in ctx.fq_elements():
        if c.is_zero:
            continue
        counts = _sweep_counts(ctx, [(e, 0), (e, c.code)])
        value = CycElt(d, counts.tolist())
        checked += 1
        if not value.equals_integer(expected):
            failed.append(c.code)
    return {
        "order": order,
        "expected": expected,
        "checked": checked,
        "passed": checked - len(failed),
        "failed": failed,
    }


def sum_over_c(ctx: FieldCtx, t: ExponentTuple) -> CycElt:
    """Sum of S_{c,t} over all c in F_q, for an all-nonzero tuple.

    The total is the integer q(q-3) when i0 + i1 != 0 mod d, and (q-1)^2
    when i0 + i1 = 0 mod d; a mismatch raises ContradictionError.
    """
    if not t.all_nonzero:
        raise ValueError("sum_over_c requires a tuple with all entries nonzero")
    total = CycElt.zero(ctx.d)
    for c in ctx.fq_elements():
        total = total + sum_S(ctx, c, t).value
    q = ctx.q
    expected = (q - 1) ** 2 if (t.i0 + t.i1) % ctx.d == 0 else q * (q - 3)
    if not total.equals_integer(expected):
        raise ContradictionError(
            f"sum over c of S_c = {total} but the closed form gives {expected}"
        )
    return total


# ----------------------------------------------------------------------------
# orbits and admissibility
# ----------------------------------------------------------------------------


def orbit(c: FqElem) -> set[FqElem]:
    """The fractional-linear orbit {c, 1/c, 1-c, 1-1/c, 1/(1-c), 1/(1-1/c)}.

    S_c is constant on this orbit for w-type tuples.  Size 6 generically;
    smaller when values coincide (c = 2 gives the 3-element case).
    """
    if not c.in_fq:
        raise ValueError("c must lie in F_q")
    if c.is_zero or c == 1:
        raise ValueError("orbit requires c outside {0, 1}")
    one = c.ctx.one
    cinv = c.inverse()
    return {
        c,
        cinv,
        one - c,
        one - cinv,
        (one - c).inverse(),
        (one - cinv).inverse(),
    }


def admissible_values(ctx: FieldCtx) -> list[FqElem]:
    """All c in F_q arising as c = b^2 with b outside F_q and c - 1 a square.

    Equivalently: c is a non-square of F_q and c - 1 is a nonzero square of
    F_q.  Ordered by ascending dlog (the deterministic scan order used by
    certificate searches).  For q = 1 mod 4 the count is exactly (q-1)/4.
    """
    out = []
    for c in ctx.fq_elements():
        if c.is_zero or c.is_square_in_fq():
            continue
        cm1 = c - 1
        if cm1.is_zero or not cm1.is_square_in_fq():
            continue
        out.append(c)
    out.sort(key=lambda c: c.dlog)
    return out


# ----------------------------------------------------------------------------
# extremal survey
# ----------------------------------------------------------------------------


def survey_N(ctx: FieldCtx, order: int):
    """Count c in F_q with sum over x of chi(x(x+1)(x+c)) equal to 2q.

    chi here has exact order `order` (a divisor of d exceeding 2), realized
    as the (d/order)-th power of the pinned base character.  Returns
    (N, hits, misses_sign): the count, the c attaining +2q, and the c
    attaining -2q, each list in ascending element-code order.  The bound
    4N <= 3q - 9 is asserted (ContradictionError on violation).
    """
    d = ctx.d
    if order <= 2 or d % order != 0:
        raise ValueError(f"order must divide d = {d} and exceed 2")
    e = d // order
    q = ctx.q
    hits, misses = [], []
    for c in ctx.fq_elements():
        counts = _sweep_counts(ctx, [(e, 0), (e, 1), (e, c.code)])
        value = CycElt(d, counts.tolist())
        if value.equals_integer(2 * q):
            hits.append(c)
        elif value.equals_integer(-2 * q):
            misses.append(c)
    N = len(hits)
    if 4 * N > 3 * q - 9:
        raise ContradictionError(f"N = {N} exceeds the certified bound (3q-9)/4 at q = {q}")
    return N, hits, misses


# ----------------------------------------------------------------------------
# the mod-3 obstruction
# ----------------------------------------------------------------------------


def mod3_test(ctx: FieldCtx, c: FqElem, t: ExponentTuple) -> bool:
    """Whether S_{c,t} = 1 mod 3*Z[zeta_d] — which forces S != 2q.

    Preconditions: q = 7 mod 12, c a primitive 6th root of unity in F_q
    (i.e. c = b^2 for b a primitive 12th root of unity), and t a w-type
    tuple with nonzero entries.  Under these hypotheses the congruence is
    a theorem; this function recomputes it from scratch.
    """
    if ctx.q % 12 != 7:
        raise ValueError("mod3_test requires q = 7 mod 12")
    if not c.in_fq or c.is_zero or c.multiplicative_order() != 6:
        raise ValueError("c must be a primitive 6th root of unity in F_q")
    if not (t.is_w_type and t.all_nonzero):
        raise ValueError("mod3_test requires a w-type tuple with nonzero entries")
    s = sum_S(ctx, c, t).value
    residue = mod_ideal_class(s, 3)
    return residue == (1,) + (0,) * (len(residue) - 1)


# ----------------------------------------------------------------------------
# tuple enumeration helpers
# ----------------------------------------------------------------------------


def iter_all_nonzero_tuples(d: int):
    """All tuples (i0,i1,i2,i3) of nonzero residues mod d summing to 0."""
    for i0 in range(1, d):
        for i1 in range(1, d):
            for i2 in range(1, d):
                i3 = (-(i0 + i1 + i2)) % d
                if i3 != 0:
                    yield ExponentTuple(d, i0, i1, i2, i3)
