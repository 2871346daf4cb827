"""Arithmetic in the tower F_p < F_q < F_{q^2}, with q = p^k and d = q + 1.

The double extension F_{q^2} is realized as a single extension
F_p[w]/(modulus), where modulus is the lexicographically smallest monic
irreducible polynomial of degree 2k over F_p, coefficients compared
low-degree-first as integers in [0, p).  Elements are encoded as integer
codes in [0, p^{2k}): the base-p digits of the code are the coordinates
with respect to the power basis 1, w, ..., w^{2k-1}.  Code 0 is the zero
element, code 1 is the unit.

All multiplicative structure is table-driven.  A generator g of F_{q^2}^*
is fixed deterministically (the element of smallest code whose
multiplicative order is q^2 - 1) and two tables are built once per field:

    exp[m]  = code of g^m            for 0 <= m < q^2 - 1
    dlog[x] = m with g^m = x, or -1  for codes x (dlog[0] = -1)

In this encoding the subgroups in play are transparent: x = g^m lies in
the middle field F_q iff d | m, and x lies in mu_d (the d-th roots of
unity) iff (q-1) | m, since mu_d is generated by g_d := g^(q-1).

The order-d character chi on F_{q^2}^* is pinned by chi(g^m) = zeta_d^m,
i.e. chi(x) = nu(x^(q-1)) where nu maps the mu_d generator g_d to zeta_d.
chi is extended by chi(0) = 0; functions here signal the zero of the
target ring with the marker value None rather than an exponent.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "ContradictionError",
    "NonRationalError",
    "DescentError",
    "SIZE_CAP",
    "FieldCtx",
    "FqElem",
    "make_field",
    "frobenius",
    "in_mu_d",
    "chi_exp",
    "find_ab_pairs",
    "primitive_root_of_unity",
]

# Largest permitted q^2; bounds the exp/dlog table memory.
SIZE_CAP = 4_000_000


class ContradictionError(RuntimeError):
    """Exact arithmetic contradicted an identity that is guaranteed to hold.

    Raised when a computation violates a proved closed form or invariant
    (intersection multiset sizes, Weil bounds, certified-sum facts, ...).
    Always indicates a bug or a misused precondition, never bad luck.
    """


class NonRationalError(ContradictionError):
    """A cyclotomic total that was asked for as a rational is not rational."""


class DescentError(ContradictionError):
    """A traced point failed to descend to the base function field."""


# ----------------------------------------------------------------------------
# polynomial helpers over F_p (dense coefficient tuples, low degree first)
# ----------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _pp_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pp_mulmod(a, b, modulus, p):
    """Product of a and b reduced mod (monic) modulus, all over F_p."""
    if not a or not b:
        return ()
    n = len(modulus)  # degree of modulus; a, b have degree < n
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for deg in range(len(prod) - 1, n - 1, -1):
        top = prod[deg]
        if top:
            prod[deg] = 0
            for j, mj in enumerate(modulus):
                prod[deg - n + j] = (prod[deg - n + j] - top * mj) % p
    return _pp_trim(prod[:n])


def _pp_powmod(a, e, modulus, p):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, modulus, p)
        base = _pp_mulmod(base, base, modulus, p)
        e >>= 1
    return result


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # reduce a mod b
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            top = a[-1] * inv_lead % p
            if top:
                shift = len(a) - len(b)
                for j, bj in enumerate(b):
                    a[shift + j] = (a[shift + j] - top * bj) % p
            a.pop()
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return _pp_trim(a)


def _pp_is_irreducible(coeffs, p):
    """Monic polynomial irreducibility over F_p.

    coeffs lists the non-leading coefficients low-first; the leading
    coefficient 1 is implied.  Uses the derived-from-Frobenius criterion:
    f of degree n is irreducible iff x^(p^n) = x mod f and, for each prime
    r | n, gcd(x^(p^(n/r)) - x, f) = 1.
    """
    n = len(coeffs)
    modulus = tuple(coeffs)  # _pp_mulmod wants the non-leading part, monic implied

    def x_pow_p_iter(times):
        # x^(p^times) mod f by iterated p-th powering
        t = (0, 1)
        for _ in range(times):
            t = _pp_powmod(t, p, modulus, p)
        return t

    full = tuple(coeffs) + (1,)
    primes = set()
    m = n
    f = 2
    while f * f <= m:
        while m % f == 0:
            primes.add(f)
            m //= f
        f += 1
    if m > 1:
        primes.add(m)
    for r in sorted(primes):
        t = x_pow_p_iter(n // r)
        diff = list(t) + [0] * (2 - len(t))
        diff[1] = (diff[1] - 1) % p
        g = _pp_gcd(full, _pp_trim(diff), p)
        if len(g) != 1:
            return False
    t = x_pow_p_iter(n)
    diff = list(t) + [0] * (2 - len(t))
    diff[1] = (diff[1] - 1) % p
    return not _pp_trim(diff)


def _lex_smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Non-leading coefficients of the lex-least monic irreducible of degree n.

    Candidates are ordered by the tuple (c_0, c_1, ..., c_{n-1}) of
    non-leading coefficients, compared left to right.
    """
    for code in range(p**n):
        digits = []
        rest = code
        for _ in range(n):
            digits.append(rest % p)
            rest //= p
        digits.reverse()  # code counts up in (c_0, ..., c_{n-1}) lex order
        if _pp_is_irreducible(digits, p):
            return tuple(digits)
    raise ContradictionError("no irreducible polynomial found (impossible)")


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------------
# field context and elements
# ----------------------------------------------------------------------------


class FieldCtx:
    """Immutable context for F_{q^2} = F_p[w]/(modulus), q = p^k, d = q + 1.

    Construct with make_field; direct instantiation is internal.  All
    arrays are frozen after construction, so a context may be shared
    freely across threads and processes.
    """

    __slots__ = (
        "p",
        "k",
        "q",
        "d",
        "deg",
        "modulus",
        "g_code",
        "exp",
        "dlog",
        "_pows",
        "_digits",
        "_e_tab",
        "_e1_tab",
    )

    def __init__(self, p, k, modulus, g_code, exp, dlog):
        self.p = p
        self.k = k
        self.q = p**k
        self.d = self.q + 1
        self.deg = 2 * k
        self.modulus = modulus
        self.g_code = g_code
        self.exp = exp
        self.dlog = dlog
        self._pows = np.array([p**i for i in range(self.deg)], dtype=np.int64)
        self._digits = None
        self._e_tab = None
        self._e1_tab = None

    # -- element constructors ------------------------------------------------

    def elem(self, code: int) -> "FqElem":
        if not 0 <= code < self.q * self.q:
            raise ValueError(f"element code {code} out of range")
        return FqElem(self, code)

    def from_coeffs(self, coeffs) -> "FqElem":
        coeffs = list(coeffs)
        if len(coeffs) > self.deg:
            raise ValueError(f"at most {self.deg} coordinates expected")
        code = 0
        for i, c in enumerate(coeffs):
            code += (c % self.p) * self.p**i
        return FqElem(self, code)

    def from_int(self, a: int) -> "FqElem":
        """The image of the integer a under Z -> F_p < F_{q^2}."""
        return FqElem(self, a % self.p)

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 1)

    @property
    def gen(self) -> "FqElem":
        return FqElem(self, self.g_code)

    def mu_d_gen(self) -> "FqElem":
        """The pinned generator g_d = g^(q-1) of mu_d.

        The auxiliary character nu on mu_d maps g_d to zeta_d; the pinned
        chi satisfies chi(x) = nu(x^(q-1)), so chi itself sends g_d to
        zeta_d^(q-1), not to zeta_d.
        """
        return FqElem(self, int(self.exp[self.q - 1]))

    def elements(self):
        """All q^2 elements, by ascending code."""
        for code in range(self.q * self.q):
            yield FqElem(self, code)

    def fq_codes(self) -> list[int]:
        """Codes of the subfield F_q, ascending (0 first)."""
        codes = [0] + [int(self.exp[m]) for m in range(0, self.q * self.q - 1, self.d)]
        return sorted(codes)

    def fq_elements(self):
        for code in self.fq_codes():
            yield FqElem(self, code)

    # -- code-level arithmetic ----------------------------------------------

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.deg):
            out.append(code % self.p)
            code //= self.p
        return tuple(out)

    def add_codes(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        unit = 1
        for _ in range(self.deg):
            out += ((a + b) % p) * unit
            a //= p
            b //= p
            unit *= p
        return out

    def neg_code(self, a: int) -> int:
        p = self.p
        out = 0
        unit = 1
        for _ in range(self.deg):
            out += (-a % p) * unit
            a //= p
            unit *= p
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        n = self.q * self.q - 1
        return int(self.exp[(int(self.dlog[a]) + int(self.dlog[b])) % n])

    # -- vectorized sweep support -------------------------------------------

    def digit_matrix(self) -> np.ndarray:
        """Base-p digit decomposition of every code, shape (q^2, 2k)."""
        if self._digits is None:
            codes = np.arange(self.q * self.q, dtype=np.int64)
            digits = np.empty((self.q * self.q, self.deg), dtype=np.int16)
            for i in range(self.deg):
                digits[:, i] = (codes // self._pows[i]) % self.p
            digits.flags.writeable = False
            self._digits = digits
        return self._digits

    def add_perm(self, c_code: int) -> np.ndarray:
        """Permutation array P with P[x] = code of (x + c), for all codes x."""
        digits = self.digit_matrix()
        c_dig = np.array(self.decode(c_code), dtype=np.int64)
        shifted = (digits.astype(np.int64) + c_dig) % self.p
        return shifted @ self._pows

    def chi_exp_table(self) -> np.ndarray:
        """e(x) = dlog(x) mod d indexed by code, with -1 marking x = 0."""
        if self._e_tab is None:
            e = self.dlog % self.d
            e[0] = -1
            e.flags.writeable = False
            self._e_tab = e
        return self._e_tab

    def chi_exp_table_shift1(self) -> np.ndarray:
        """e(x + 1) indexed by code (cached; used by every c-sweep)."""
        if self._e1_tab is None:
            e1 = self.chi_exp_table()[self.add_perm(1)]
            e1.flags.writeable = False
            self._e1_tab = e1
        return self._e1_tab

    def __repr__(self):
        return f"FieldCtx(p={self.p}, k={self.k}, q={self.q})"


class FqElem:
    """An element of F_{q^2}, as (context, integer code).

    Supports field operators; multiplicative structure goes through the
    context dlog/exp tables, additive structure through base-p digits.
    """

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    # -- predicates ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.code == 0

    @property
    def dlog(self) -> int:
        if self.code == 0:
            raise ValueError("dlog(0) is undefined")
        return int(self.ctx.dlog[self.code])

    @property
    def in_fq(self) -> bool:
        """Membership in the middle field F_q (the fixed field of Frobenius)."""
        return self.code == 0 or self.dlog % self.ctx.d == 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.decode(self.code)

    def is_square_in_fq(self) -> bool:
        """For nonzero elements of F_q: quadratic-residue test inside F_q."""
        if self.code == 0 or not self.in_fq:
            raise ValueError("is_square_in_fq wants a nonzero element of F_q")
        return (self.dlog // self.ctx.d) % 2 == 0

    def multiplicative_order(self) -> int:
        if self.code == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.ctx.q * self.ctx.q - 1
        m = self.dlog
        from math import gcd

        return n // gcd(n, m)

    def frobenius(self) -> "FqElem":
        if self.code == 0:
            return self
        n = self.ctx.q * self.ctx.q - 1
        return FqElem(self.ctx, int(self.ctx.exp[self.dlog * self.ctx.q % n]))

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.add_codes(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg_code(self.code))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul_codes(self.code, other.code))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.code == 0:
            raise ZeroDivisionError("0 is not invertible")
        n = self.ctx.q * self.ctx.q - 1
        return FqElem(self.ctx, int(self.ctx.exp[(-self.dlog) % n]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if self.code == 0:
            if e < 0:
                raise ZeroDivisionError("0 is not invertible")
            return self.ctx.one if e == 0 else self
        n = self.ctx.q * self.ctx.q - 1
        return FqElem(self.ctx, int(self.ctx.exp[self.dlog * e % n]))

    # -- comparisons / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.from_int(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.ctx is other.ctx and self.code == other.code

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"FqElem({self.code} in {self.ctx!r})"

    def __str__(self):
        if self.ctx.k == 0 or self.ctx.deg == 0:
            return str(self.code)
        coeffs = self.coeffs
        if all(c == 0 for c in coeffs[1:]):
            return str(coeffs[0])
        terms = []
        for i, c in enumerate(coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}w" if c != 1 else "w")
            else:
                terms.append(f"{c}w^{i}" if c != 1 else f"w^{i}")
        return "+".join(terms) if terms else "0"


# ----------------------------------------------------------------------------
# public operations
# ----------------------------------------------------------------------------


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> FieldCtx:
    """Deterministically build the tower context for q = p^k.

    The same (p, k) always produces bit-identical tables: the modulus is
    the lex-least monic irreducible of degree 2k and the generator is the
    smallest-code element of full order q^2 - 1.
    """
    if not isinstance(p, int) or not isinstance(k, int):
        raise ValueError("p and k must be integers")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p < 5:
        raise ValueError(f"characteristic must be at least 5, got {p}")
    q = p**k
    if q * q > SIZE_CAP:
        raise ValueError(f"q^2 = {q * q} exceeds the size cap {SIZE_CAP}")

    n = 2 * k
    modulus = _lex_smallest_irreducible(p, n)

    order = q * q - 1
    cofactors = [order // r for r in _prime_factors(order)]

    def poly_of_code(code):
        out = []
        for _ in range(n):
            out.append(code % p)
            code //= p
        return _pp_trim(out)

    g_code = None
    for code in range(2, q * q):
        cand = poly_of_code(code)
        if all(_pp_powmod(cand, cf, modulus, p) != (1,) for cf in cofactors):
            g_code = code
            break
    if g_code is None:
        raise ContradictionError("no generator found (impossible for a field)")

    exp = np.zeros(order, dtype=np.int64)
    dlog = np.full(q * q, -1, dtype=np.int64)
    g_poly = poly_of_code(g_code)
    cur = (1,)
    pows = [p**i for i in range(n)]
    for m in range(order):
        code = 0
        for i, c in enumerate(cur):
            code += c * pows[i]
        exp[m] = code
        dlog[code] = m
        cur = _pp_mulmod(cur, g_poly, modulus, p)
    if cur != (1,):
        raise ContradictionError("generator order mismatch while building tables")
    exp.flags.writeable = False
    dlog.flags.writeable = False
    return FieldCtx(p, k, modulus, g_code, exp, dlog)


def frobenius(ctx: FieldCtx, x: FqElem) -> FqElem:
    """The q-power map pi(x) = x^q; an involution fixing F_q pointwise."""
    return x.frobenius()


def in_mu_d(ctx: FieldCtx, x: FqElem) -> bool:
    """Whether x^d = 1, equivalently pi(x) * x = 1; rejects x = 0."""
    if x.is_zero:
        raise ValueError("0 is not a root of unity")
    return x.dlog % (ctx.q - 1) == 0


def chi_exp(ctx: FieldCtx, x: FqElem, i: int = 1):
    """Exponent e with chi^i(x) = zeta_d^e, or None when x = 0.

    chi is the pinned order-d character chi(g^m) = zeta_d^m; the kernel of
    chi is exactly F_q^*.
    """
    if x.is_zero:
        return None
    return x.dlog * i % ctx.d


def find_ab_pairs(ctx: FieldCtx) -> list[tuple[FqElem, FqElem]]:
    """All pairs a in F_q, b in F_{q^2} \\ F_q with a^2 + 1 = b^2.

    Ordered by (dlog a, dlog b).  Such a pair exists exactly when
    c = a^2 + 1 is a nonsquare of F_q (then both square roots of c in
    F_{q^2} fall outside F_q), so the set {b^2} over all output pairs is
    the full set of admissible c values.
    """
    pairs = []
    for a in ctx.fq_elements():
        if a.is_zero:
            continue  # a = 0 forces b^2 = 1, b in F_q
        c = a * a + 1
        if c.is_zero or c.is_square_in_fq():
            continue
        # dlog(c) = d * odd since c is an F_q nonsquare, and d is even, so
        # halving the dlog gives a square root -- necessarily outside F_q.
        b = FqElem(ctx, int(ctx.exp[c.dlog // 2]))
        if (b * b) != c:
            raise ContradictionError("square root extraction failed")
        for bb in (b, -b):
            if bb.in_fq:
                raise ContradictionError("square root of a nonsquare landed in F_q")
            pairs.append((a, bb))
    pairs.sort(key=lambda ab: (ab[0].dlog, ab[1].dlog))
    return pairs


def primitive_root_of_unity(ctx: FieldCtx, m: int) -> FqElem:
    """The pinned m-th root of unity g^((q^2-1)/m); has exact order m."""
    order = ctx.q * ctx.q - 1
    if m < 1 or order % m != 0:
        raise ValueError(f"{m} does not divide q^2 - 1 = {order}")
    return FqElem(ctx, int(ctx.exp[order // m])) if m > 1 else ctx.one
