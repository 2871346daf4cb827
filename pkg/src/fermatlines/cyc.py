"""Exact arithmetic in the cyclotomic integer ring Z[zeta_d].

Character sums live here.  An element is carried in two forms at once:

    counts: length-d integer vector, entry j = coefficient of zeta_d^j in a
            group-ring representative (the multiset of accumulated terms);
    canon:  the remainder of sum_j counts[j] x^j modulo Phi_d(x) over Z,
            a length-phi(d) integer vector, low degree first.

canon is the unique representative in Z[x]/(Phi_d), so equality of CycElts
is equality of canon.  counts is kept because the Galois action (and in
particular complex conjugation) permutes indices, which is cheap and exact.

Everything is integer arithmetic; there is no numerical embedding anywhere.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = [
    "cyclotomic_poly",
    "CycElt",
    "accumulate",
    "equals_integer",
    "galois_apply",
    "is_real",
    "mod_ideal_class",
]


def _poly_divmod_exact(num: list[int], den: tuple[int, ...]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of integer polynomials, den monic, low-first."""
    num = list(num)
    dn = len(den) - 1
    if dn == 0:
        return num, []
    quot = [0] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j, dj in enumerate(den):
                num[i - dn + j] -= c * dj
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Phi_d(x) over Z, low degree first, via x^d - 1 = prod_{e|d} Phi_e."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d == 1:
        return (-1, 1)
    num = [-1] + [0] * (d - 1) + [1]  # x^d - 1
    for e in range(1, d):
        if d % e == 0:
            num, rem = _poly_divmod_exact(num, cyclotomic_poly(e))
            if rem:
                raise RuntimeError("cyclotomic division left a remainder")
    return tuple(num)


@lru_cache(maxsize=None)
def _phi(d: int) -> int:
    return len(cyclotomic_poly(d)) - 1


class CycElt:
    """An element of Z[zeta_d]; value semantics, hashable, immutable."""

    __slots__ = ("d", "counts", "canon")

    def __init__(self, d: int, counts):
        counts = tuple(int(c) for c in counts)
        if len(counts) != d:
            raise ValueError(f"counts must have length d = {d}")
        self.d = d
        self.counts = counts
        quot, rem = _poly_divmod_exact(list(counts), cyclotomic_poly(d))
        rem += [0] * (_phi(d) - len(rem))
        self.canon = tuple(rem)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, d: int) -> "CycElt":
        return cls(d, (0,) * d)

    @classmethod
    def from_int(cls, d: int, m: int) -> "CycElt":
        counts = [0] * d
        counts[0] = m
        return cls(d, counts)

    @classmethod
    def root_of_unity(cls, d: int, e: int) -> "CycElt":
        """zeta_d^e."""
        counts = [0] * d
        counts[e % d] += 1
        return cls(d, counts)

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "CycElt"):
        if not isinstance(other, CycElt):
            raise TypeError("expected a CycElt")
        if other.d != self.d:
            raise ValueError(f"mixed cyclotomic orders {self.d} and {other.d}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CycElt.from_int(self.d, other)
        self._check(other)
        return CycElt(self.d, [a + b for a, b in zip(self.counts, other.counts)])

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.d, [-a for a in self.counts])

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycElt.from_int(self.d, other)
        self._check(other)
        return CycElt(self.d, [a - b for a, b in zip(self.counts, other.counts)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycElt(self.d, [a * other for a in self.counts])
        self._check(other)
        out = [0] * self.d
        for i, a in enumerate(self.counts):
            if a:
                for j, b in enumerate(other.counts):
                    if b:
                        out[(i + j) % self.d] += a * b
        return CycElt(self.d, out)

    __rmul__ = __mul__

    # -- structure -----------------------------------------------------------

    def galois(self, u: int) -> "CycElt":
        """The automorphism zeta_d -> zeta_d^u; u must be a unit mod d."""
        from math import gcd

        if gcd(u, self.d) != 1:
            raise ValueError(f"{u} is not a unit mod {self.d}")
        out = [0] * self.d
        for j, a in enumerate(self.counts):
            out[u * j % self.d] += a
        return CycElt(self.d, out)

    @property
    def is_real(self) -> bool:
        return self.galois(self.d - 1) == self

    def equals_integer(self, m: int) -> bool:
        return all(c == 0 for c in self.canon[1:]) and self.canon[0] == m

    @property
    def as_integer(self):
        """The value as a plain integer, or None when it is not rational."""
        if all(c == 0 for c in self.canon[1:]):
            return self.canon[0]
        return None

    def mod_ideal(self, m: int) -> tuple[int, ...]:
        """canon reduced coefficientwise mod m (residues in [0, m))."""
        if m < 2:
            raise ValueError("modulus must be at least 2")
        return tuple(c % m for c in self.canon)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self.equals_integer(other)
        if not isinstance(other, CycElt):
            return NotImplemented
        return self.d == other.d and self.canon == other.canon

    def __hash__(self):
        return hash((self.d, self.canon))

    def __bool__(self):
        return any(self.canon)

    def __repr__(self):
        return f"CycElt(d={self.d}, canon={list(self.canon)})"

    def __str__(self):
        if self.as_integer is not None:
            return str(self.as_integer)
        terms = []
        for j, c in enumerate(self.canon):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                z = f"z^{j}" if j > 1 else "z"
                terms.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(terms).replace("+ -", "- ")


# ----------------------------------------------------------------------------
# module-level operations (thin wrappers with the contract signatures)
# ----------------------------------------------------------------------------


def accumulate(s: CycElt, e) -> CycElt:
    """Add one term zeta_d^e to s; e = None (the zero marker) adds nothing."""
    if e is None:
        return s
    counts = list(s.counts)
    counts[e % s.d] += 1
    return CycElt(s.d, counts)


def equals_integer(s: CycElt, m: int) -> bool:
    """Whether canon(s) is the constant polynomial m."""
    return s.equals_integer(m)


def galois_apply(s: CycElt, u: int) -> CycElt:
    """Apply zeta_d -> zeta_d^u (requires gcd(u, d) = 1)."""
    return s.galois(u)


def is_real(s: CycElt) -> bool:
    """Whether s is fixed by complex conjugation zeta_d -> zeta_d^(d-1)."""
    return s.is_real


def mod_ideal_class(s: CycElt, m: int) -> tuple[int, ...]:
    """canon(s) mod m; s = integer r mod m*Z[zeta_d] iff this is constant r."""
    return s.mod_ideal(m)
