"""Machine-checkable full-rank generation certificates.

A certificate records, for every w-type exponent tuple, a witness line whose
translated-line class has nonzero projection onto that character eigenspace.
The trivial character is witnessed by the constant inner product 1/d; a
nontrivial w-type tuple (i, i, i, -3i) is witnessed by any admissible c with
S_{c} != 2q.  When every tuple carries a witness, the family of mu_d
translates of the witness points rationally generates the full group — the
verdict FULL_RANK_CERTIFIED means exactly that this nonzero-projection
criterion holds for all tuples; the rank value itself comes from the rank
formula, not from an independent height computation.

Three certification strategies:

``certify_thm1``   q = 7 mod 12: the single line with b a primitive 12th
                   root of unity and a = b**2 covers everything, each
                   nontrivial tuple via the mod-3 obstruction S = 1 mod 3.
``certify_thm2``   q = 1 mod 4: one witness per Galois orbit of tuples,
                   found by scanning admissible c; the witness transfers to
                   the whole orbit because S of a scaled tuple is the Galois
                   image of S, and 2q is Galois-stable.
``certify_general``any q: brute-force scan of every tuple x admissible c;
                   NOT_CERTIFIED is a legitimate outcome (q = 11, 71).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .charsum import ExponentTuple, admissible_values, mod3_test, sum_S
from .cyc import CycElt
from .fermat import line_for_thm1, w_tuples
from .gf import ContradictionError, FieldCtx, FqElem

__all__ = [
    "Certificate",
    "certify",
    "certify_general",
    "certify_thm1",
    "certify_thm2",
    "expected_rank",
    "galois_orbits",
]

FULL_RANK_CERTIFIED = "FULL_RANK_CERTIFIED"
NOT_CERTIFIED = "NOT_CERTIFIED"


def expected_rank(q: int) -> int:
    """The rank formula: q for q = 1 mod 3, q - 2 for q = 2 mod 3."""
    if not isinstance(q, int) or q < 5:
        raise ValueError("q must be an integer prime power with p >= 5")
    p = q
    for cand in range(2, q):
        if cand * cand > q:
            break
        if q % cand == 0:
            p = cand
            break
    m = q
    while m % p == 0:
        m //= p
    if m != 1:
        raise ValueError("q must be a prime power")
    if p < 5:
        raise ValueError("the characteristic must be at least 5")
    r = q % 3
    if r == 0:
        raise ValueError("q divisible by 3 is impossible for p >= 5")
    return q if r == 1 else q - 2


def galois_orbits(d: int) -> list[list[int]]:
    """Orbits of the unit-group action i -> u*i on the indices of nontrivial
    w-type tuples; two indices are in the same orbit iff gcd(i, d) agree."""
    orbits: dict[int, list[int]] = {}
    for i in range(1, d):
        if (3 * i) % d == 0:
            continue
        orbits.setdefault(gcd(i, d), []).append(i)
    return [sorted(v) for _, v in sorted(orbits.items())]


@dataclass
class CoverageEntry:
    tuple: ExponentTuple
    c: FqElem | None
    s_value: CycElt | None
    nonzero: bool

    def to_json_dict(self) -> dict:
        return {
            "tuple": list(self.tuple.entries),
            "c": None if self.c is None else self.c.dlog,
            "S_canon": None if self.s_value is None else list(self.s_value.canon),
            "nonzero": self.nonzero,
        }


@dataclass
class Certificate:
    q: int
    expected_rank: int
    tuples: list[ExponentTuple]
    coverage: dict[ExponentTuple, CoverageEntry]
    verdict: str
    lines_used: int
    galois_orbits: list[list[int]] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "expected_rank": self.expected_rank,
            "verdict": self.verdict,
            "lines_used": self.lines_used,
            "coverage": [self.coverage[t].to_json_dict() for t in self.tuples],
            "orbits": self.galois_orbits,
        }


def _assemble(ctx: FieldCtx, coverage: dict) -> Certificate:
    tuples = w_tuples(ctx.d)
    all_nonzero = all(coverage[t].nonzero for t in tuples)
    used = {e.c.code for e in coverage.values() if e.c is not None and e.nonzero}
    return Certificate(
        q=ctx.q,
        expected_rank=expected_rank(ctx.q),
        tuples=tuples,
        coverage=coverage,
        verdict=FULL_RANK_CERTIFIED if all_nonzero else NOT_CERTIFIED,
        lines_used=len(used),
        galois_orbits=galois_orbits(ctx.d),
    )


def _trivial_entry(d: int) -> CoverageEntry:
    # the trivial character pairs to the constant 1/d on every translated
    # line class, which is nonzero; no S computation is involved
    return CoverageEntry(ExponentTuple.trivial(d), None, None, True)


def certify_thm1(ctx: FieldCtx) -> Certificate:
    """Single-line certificate for q = 7 mod 12 via the mod-3 obstruction."""
    if ctx.q % 12 != 7:
        raise ValueError("certify_thm1 requires q = 7 mod 12")
    L = line_for_thm1(ctx)
    c = L.c
    d = ctx.d
    coverage: dict[ExponentTuple, CoverageEntry] = {}
    coverage[ExponentTuple.trivial(d)] = _trivial_entry(d)
    two_q = CycElt.from_int(d, 2 * ctx.q)
    for t in w_tuples(d)[1:]:
        if not mod3_test(ctx, c, t):
            raise ContradictionError(
                f"mod-3 test failed for tuple {t.entries} at q={ctx.q}"
            )
        rec = sum_S(ctx, c, t)
        if rec.value == two_q:
            raise ContradictionError(
                "S = 2q despite passing the mod-3 test (2q = 2 mod 3 != 1)"
            )
        coverage[t] = CoverageEntry(t, c, rec.value, True)
    cert = _assemble(ctx, coverage)
    if cert.lines_used != 1:
        raise ContradictionError("theorem-1 certificate must use a single line")
    return cert


def certify_thm2(ctx: FieldCtx) -> Certificate:
    """Orbit-by-orbit certificate for q = 1 mod 4: one admissible witness c
    per Galois orbit of tuples, at most n-1 lines in total."""
    if ctx.q % 4 != 1:
        raise ValueError("certify_thm2 requires q = 1 mod 4")
    d = ctx.d
    admissible = admissible_values(ctx)
    two_q = CycElt.from_int(d, 2 * ctx.q)
    coverage: dict[ExponentTuple, CoverageEntry] = {}
    coverage[ExponentTuple.trivial(d)] = _trivial_entry(d)
    for orbit_members in galois_orbits(d):
        rep = ExponentTuple.w_type(d, orbit_members[0])
        witness = None
        for c in admissible:
            if sum_S(ctx, c, rep).value != two_q:
                witness = c
                break
        if witness is None:
            raise ContradictionError(
                f"no admissible c with S != 2q for orbit of i={orbit_members[0]}"
                f" at q={ctx.q}"
            )
        for i in orbit_members:
            t = ExponentTuple.w_type(d, i)
            rec = sum_S(ctx, witness, t)
            if rec.value == two_q:
                raise ContradictionError(
                    "Galois transfer failed: orbit member hit S = 2q"
                )
            coverage[t] = CoverageEntry(t, witness, rec.value, True)
    cert = _assemble(ctx, coverage)
    n = sum(1 for e in range(1, d + 1) if d % e == 0)
    if cert.lines_used > n - 1:
        raise ContradictionError("theorem-2 certificate exceeded n-1 lines")
    return cert


def certify_general(ctx: FieldCtx) -> Certificate:
    """Brute-force certificate attempt: every tuple against every admissible
    c.  NOT_CERTIFIED (an uncovered tuple) is a valid outcome, not an error."""
    d = ctx.d
    admissible = admissible_values(ctx)
    two_q = CycElt.from_int(d, 2 * ctx.q)
    coverage: dict[ExponentTuple, CoverageEntry] = {}
    coverage[ExponentTuple.trivial(d)] = _trivial_entry(d)
    for t in w_tuples(d)[1:]:
        entry = CoverageEntry(t, None, None, False)
        for c in admissible:
            rec = sum_S(ctx, c, t)
            if rec.value != two_q:
                entry = CoverageEntry(t, c, rec.value, True)
                break
        coverage[t] = entry
    return _assemble(ctx, coverage)


def certify(ctx: FieldCtx) -> Certificate:
    """Dispatch on q mod 12: 1 and 5 go to the orbit certificate, 7 to the
    single-line certificate, 11 to the brute-force scan (where NOT_CERTIFIED
    is possible — no theorem covers q = 11 mod 12)."""
    r = ctx.q % 12
    if r in (1, 5):
        return certify_thm2(ctx)
    if r == 7:
        return certify_thm1(ctx)
    if r == 11:
        return certify_general(ctx)
    raise ContradictionError(f"impossible residue q mod 12 = {r} for p >= 5")
