"""Lines on the degree-d Fermat surface, the torus action, and exact
Neron-Severi inner products of character projections.

A line here is the one-parameter family

    [u:v] -> [u : v : au + bv : av + bu],   a in F_q, b outside F_q,
                                            a^2 + 1 = b^2,

inside the surface x0^d + x1^d + x2^d + x3^d = 0, d = q + 1.  The torus
T = mu_d^4 / (diagonal mu_d) acts coordinatewise; elements are normalized
to representatives [t0 : t1 : t2 : 1].

For a character lambda of T given by a tuple (i0,i1,i2,i3) summing to 0
mod d, the self-pairing of the lambda-projection of a line L satisfies

    d^3 <L_l, L_l> = 2 - d + sum over t in I_L of lambda^{-1}(t),

where I_L is the set of torus translates meeting L.  I_L decomposes into
4(d-1) elements with three coordinates 1 plus q^2 - q elements indexed by
gamma with trace(gamma) != 0, via a closed form.  Independently, the same
quantity equals -2q + S_{b^2, (i0,i1,i2)} with S the character sum of the
companion module.  Both routes are implemented in full and compared
exactly; no step is shared between them past the field tables.
"""

from __future__ import annotations

from fractions import Fraction

from .charsum import ExponentTuple, sum_S
from .cyc import CycElt
from .gf import ContradictionError, FieldCtx, FqElem, NonRationalError, frobenius, in_mu_d

__all__ = [
    "Line",
    "TorusElt",
    "IntersectionSet",
    "lines_for_c",
    "line_for_thm1",
    "build_intersections",
    "geometric_intersection_oracle",
    "w_tuples",
    "inner_product_direct",
    "inner_product_via_charsum",
    "direct_numerator",
    "charsum_numerator",
]


class Line:
    """The line L_{a,b}: [u:v] -> [u : v : au+bv : av+bu] on the surface.

    Requires a in F_q (necessarily nonzero), b outside F_q, a^2 + 1 = b^2.
    alpha = -b/a and beta = 1/a are the reparametrization constants used by
    the point construction.
    """

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: FieldCtx, a: FqElem, b: FqElem):
        if a.ctx is not ctx or b.ctx is not ctx:
            raise ValueError("line coordinates must belong to the given field context")
        if a.is_zero or not a.in_fq:
            raise ValueError("a must be a nonzero element of F_q")
        if b.in_fq:
            raise ValueError("b must lie outside F_q")
        if a * a + 1 != b * b:
            raise ValueError("line requires a^2 + 1 = b^2")
        self.ctx = ctx
        self.a = a
        self.b = b

    @property
    def alpha(self) -> FqElem:
        return -(self.b / self.a)

    @property
    def beta(self) -> FqElem:
        return self.a.inverse()

    @property
    def c(self) -> FqElem:
        """b^2, the admissible value this line witnesses."""
        return self.b * self.b

    def parametrize(self, u: FqElem, v: FqElem):
        """The surface point [u : v : au+bv : av+bu] as a coordinate 4-tuple."""
        a, b = self.a, self.b
        return (u, v, a * u + b * v, a * v + b * u)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.ctx is other.ctx and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((id(self.ctx), self.a.code, self.b.code))

    def __repr__(self):
        return f"Line(a={self.a}, b={self.b})"


def lines_for_c(ctx: FieldCtx, c: FqElem) -> list[Line]:
    """All lines with b^2 = c, ordered by (dlog a, dlog b).

    Empty exactly when c is not admissible (c must be an F_q non-square
    with c - 1 a nonzero square).
    """
    out = []
    if c.is_zero or not c.in_fq or c.is_square_in_fq():
        return out
    cm1 = c - 1
    if cm1.is_zero or not cm1.is_square_in_fq():
        return out
    # a ranges over the square roots of c - 1 in F_q, b over those of c.
    b0 = ctx.elem(int(ctx.exp[c.dlog // 2]))
    a_dlog_half = cm1.dlog // 2
    if (cm1.dlog // ctx.d) % 2 == 1:  # halving left mu_d: shift into F_q
        a_dlog_half = (cm1.dlog + (ctx.q * ctx.q - 1) // 2) % (ctx.q * ctx.q - 1)
    a0 = ctx.elem(int(ctx.exp[a_dlog_half]))
    if not a0.in_fq or a0 * a0 != cm1:
        raise ContradictionError("square root of c - 1 failed to land in F_q")
    for a in (a0, -a0):
        for b in (b0, -b0):
            out.append(Line(ctx, a, b))
    out.sort(key=lambda L: (L.a.dlog, L.b.dlog))
    return out


def line_for_thm1(ctx: FieldCtx) -> Line:
    """The pinned single-line generator witness for q = 7 mod 12.

    b is the smallest-code primitive 12th root of unity and a = b^2; then
    a is a primitive 6th root of unity and a^2 + 1 = b^2 holds identically
    (a^2 - a + 1 = 0).
    """
    if ctx.q % 12 != 7:
        raise ValueError("the single-line construction requires q = 7 mod 12")
    candidates = [
        x for x in ctx.elements() if not x.is_zero and x.multiplicative_order() == 12
    ]
    b = min(candidates, key=lambda x: x.code)
    return Line(ctx, b * b, b)


class TorusElt:
    """An element of T = mu_d^4 / mu_d in its normal form [t0 : t1 : t2 : 1]."""

    __slots__ = ("t0", "t1", "t2")

    def __init__(self, t0: FqElem, t1: FqElem, t2: FqElem):
        ctx = t0.ctx
        for t in (t0, t1, t2):
            if t.is_zero or not in_mu_d(ctx, t):
                raise ValueError("torus coordinates must be d-th roots of unity")
        self.t0 = t0
        self.t1 = t1
        self.t2 = t2

    @classmethod
    def identity(cls, ctx: FieldCtx) -> "TorusElt":
        return cls(ctx.one, ctx.one, ctx.one)

    @classmethod
    def from_quad(cls, t0: FqElem, t1: FqElem, t2: FqElem, t3: FqElem) -> "TorusElt":
        """Normalize an arbitrary representative [t0:t1:t2:t3] to t3 = 1."""
        inv = t3.inverse()
        return cls(t0 * inv, t1 * inv, t2 * inv)

    @property
    def coords(self):
        return (self.t0, self.t1, self.t2)

    @property
    def is_identity(self) -> bool:
        return self.t0 == 1 and self.t1 == 1 and self.t2 == 1

    @property
    def in_TE(self) -> bool:
        """Membership in the subgroup T_E: t0*t1*t2 = t3^3 = 1."""
        return self.t0 * self.t1 * self.t2 == 1

    def inverse(self) -> "TorusElt":
        return TorusElt(self.t0.inverse(), self.t1.inverse(), self.t2.inverse())

    def nu_exponents(self) -> tuple[int, int, int]:
        """(e0, e1, e2) with t_j = g_d^{e_j}; lambda(t) = zeta^{sum i_j e_j}."""
        ctx = self.t0.ctx
        q1 = ctx.q - 1
        out = []
        for t in self.coords:
            out.append(0 if t == 1 else (t.dlog // q1) % ctx.d)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, TorusElt):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((self.t0.code, self.t1.code, self.t2.code))

    def __repr__(self):
        return f"TorusElt({self.t0}, {self.t1}, {self.t2})"


class IntersectionSet:
    """The translates t with L meeting tL: I_L = three_entry + gamma-indexed.

    three_entry holds the 4(d-1) elements having a representative with
    exactly three coordinates 1; gamma_indexed maps each gamma in F_{q^2}
    with trace(gamma) != 0 to its translate t_gamma.  The union is
    repetition-free and omits the identity.
    """

    __slots__ = ("three_entry", "gamma_indexed", "_exps")

    def __init__(self, three_entry: list, gamma_indexed: dict):
        self.three_entry = three_entry
        self.gamma_indexed = gamma_indexed
        self._exps = None

    def __len__(self):
        return len(self.three_entry) + len(self.gamma_indexed)

    def all_elements(self):
        yield from self.three_entry
        yield from self.gamma_indexed.values()

    def exponent_triples(self) -> list[tuple[int, int, int]]:
        """nu-exponent triples of every element, cached for tuple sweeps."""
        if self._exps is None:
            self._exps = [t.nu_exponents() for t in self.all_elements()]
        return self._exps

    def lambda_inv_sum(self, t: ExponentTuple) -> CycElt:
        """Sum over I_L of lambda^{-1}(t) as an exact cyclotomic integer."""
        d = t.d
        counts = [0] * d
        i0, i1, i2 = t.i0, t.i1, t.i2
        for e0, e1, e2 in self.exponent_triples():
            counts[-(i0 * e0 + i1 * e1 + i2 * e2) % d] += 1
        return CycElt(d, counts)


def build_intersections(ctx: FieldCtx, L: Line) -> IntersectionSet:
    """Enumerate I_L by the closed form and verify its counting invariants.

    three_entry: for each nontrivial d-th root z, the four normalized
    representatives (z,1,1), (1,z,1), (1,1,z), (z^-1,z^-1,z^-1).
    gamma_indexed: for each gamma with trace(gamma) != 0, the inverse of
    [-gamma^(q-1) : 1 : -(a*gamma+b)^(q-1) : (a+b*gamma)^(q-1)].

    Raises ContradictionError if any element repeats, the identity shows
    up, or the cardinalities are off — all of which are proved impossible.
    """
    d = ctx.d
    one = ctx.one
    q1 = ctx.q - 1
    zroots = [ctx.elem(int(ctx.exp[q1 * m])) for m in range(1, d)]

    three_entry = []
    for z in zroots:
        zi = z.inverse()
        three_entry.append(TorusElt(z, one, one))
        three_entry.append(TorusElt(one, z, one))
        three_entry.append(TorusElt(one, one, z))
        three_entry.append(TorusElt(zi, zi, zi))

    a, b = L.a, L.b
    gamma_indexed = {}
    for gamma in ctx.elements():
        if gamma + frobenius(ctx, gamma) == 0:
            continue
        t_inv = TorusElt.from_quad(
            -(gamma**q1),
            one,
            -((a * gamma + b) ** q1),
            (a + b * gamma) ** q1,
        )
        gamma_indexed[gamma] = t_inv.inverse()

    iset = IntersectionSet(three_entry, gamma_indexed)
    q = ctx.q
    if len(three_entry) != 4 * (d - 1):
        raise ContradictionError("three-entry family has the wrong size")
    if len(gamma_indexed) != q * q - q:
        raise ContradictionError("gamma family has the wrong size")
    seen = set(iset.all_elements())
    if len(seen) != len(iset):
        raise ContradictionError("repetition inside I_L")
    if TorusElt.identity(ctx) in seen:
        raise ContradictionError("identity appeared in I_L")
    return iset


def geometric_intersection_oracle(ctx: FieldCtx, L: Line, t: TorusElt) -> int:
    """Count parameters [u:v] on L witnessing a point of (tL union t^-1 L).

    Scans all of P^1(F_{q^2}): the parametrized point P(u,v) lies on tL
    iff t^-1 P satisfies the two linear equations cutting out L (and
    symmetrically for t^-1 L).  Values: 0 (no meeting), 1 (one common
    point seen from both sides by the same parameter), 2 (a gamma-type
    meeting, witnessed by two parameters), and q^2 + 1 exactly for the
    identity (the self-intersection marker).
    """
    a, b = L.a, L.b

    def on_L(x0, x1, x2, x3) -> bool:
        return x2 == a * x0 + b * x1 and x3 == a * x1 + b * x0

    ti = t.inverse()

    def witnessed(u, v) -> bool:
        x0, x1, x2, x3 = L.parametrize(u, v)
        for s in (t, ti):
            if on_L(x0 * s.t0.inverse(), x1 * s.t1.inverse(), x2 * s.t2.inverse(), x3):
                return True
        return False

    count = 0
    one = ctx.one
    if witnessed(ctx.zero, one):
        count += 1
    for v in ctx.elements():
        if witnessed(one, v):
            count += 1
    return count


def w_tuples(d: int) -> list[ExponentTuple]:
    """The trivial tuple plus the diagonal family (i,i,i,-3i), 3i != 0 mod d.

    These index the characters whose projections span the relevant
    subspace; the count is d when 3 does not divide d, else d - 2.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    out = [ExponentTuple.trivial(d)]
    for i in range(1, d):
        if (3 * i) % d != 0:
            out.append(ExponentTuple.w_type(d, i))
    return out


# ----------------------------------------------------------------------------
# inner products, two ways
# ----------------------------------------------------------------------------


def direct_numerator(ctx: FieldCtx, L: Line, t: ExponentTuple) -> CycElt:
    """d^3 <L_l, L_l> as a cyclotomic integer, by full I_L enumeration."""
    iset = build_intersections(ctx, L)
    return iset.lambda_inv_sum(t) + (2 - ctx.d)


def charsum_numerator(ctx: FieldCtx, L: Line, t: ExponentTuple) -> CycElt:
    """d^3 <L_l, L_l> as a cyclotomic integer, via S_{b^2, (i0,i1,i2)}.

    Valid only for tuples with all entries nonzero.
    """
    if not t.all_nonzero:
        raise ValueError("the character-sum route requires a tuple with nonzero entries")
    record = sum_S(ctx, L.c, t)
    return record.value + (-2 * ctx.q)


def _as_fraction(numerator: CycElt, d: int) -> Fraction:
    n = numerator.as_integer
    if n is None:
        raise NonRationalError(
            f"inner-product numerator {numerator} is not a rational integer"
        )
    return Fraction(n, d**3)


def inner_product_direct(ctx: FieldCtx, L: Line, t: ExponentTuple) -> Fraction:
    """<L_l, L_l> = (2 - d + sum over I_L of lambda^-1) / d^3, exactly.

    Defined for every tuple: the trivial tuple gives 1/d.  Raises
    NonRationalError when the cyclotomic total is not a rational integer.
    """
    return _as_fraction(direct_numerator(ctx, L, t), ctx.d)


def inner_product_via_charsum(ctx: FieldCtx, L: Line, t: ExponentTuple) -> Fraction:
    """<L_l, L_l> = (-2q + S_{b^2, (i0,i1,i2)}) / d^3, exactly.

    Requires a tuple with all entries nonzero; raises NonRationalError
    when S is not a rational integer.
    """
    return _as_fraction(charsum_numerator(ctx, L, t), ctx.d)
