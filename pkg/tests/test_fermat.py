"""Line/torus/intersection tests: closed-form I_L enumeration against the
brute-force geometric oracle, the two inner-product routes against each
other, and the counting lemmas against their formula values."""

from fractions import Fraction

import pytest

from fermatlines.charsum import ExponentTuple
from fermatlines.cyc import CycElt
from fermatlines.fermat import (
    IntersectionSet,
    Line,
    TorusElt,
    build_intersections,
    charsum_numerator,
    direct_numerator,
    geometric_intersection_oracle,
    inner_product_direct,
    inner_product_via_charsum,
    line_for_thm1,
    lines_for_c,
    w_tuples,
)
from fermatlines.gf import NonRationalError, find_ab_pairs, frobenius, in_mu_d, make_field


def mu_d_elements(ctx):
    q1 = ctx.q - 1
    return [ctx.elem(int(ctx.exp[q1 * m])) for m in range(ctx.d)]


# ----------------------------------------------------------------------------
# lines
# ----------------------------------------------------------------------------


def test_line_validation():
    ctx = make_field(7)
    w = ctx.from_coeffs([0, 1])
    with pytest.raises(ValueError):
        Line(ctx, ctx.zero, 2 * w)  # a = 0
    with pytest.raises(ValueError):
        Line(ctx, w, 2 * w)  # a outside F_q
    with pytest.raises(ValueError):
        Line(ctx, ctx.elem(3), ctx.elem(2))  # b inside F_q
    with pytest.raises(ValueError):
        Line(ctx, ctx.elem(1), 2 * w)  # a^2 + 1 != b^2
    L = Line(ctx, ctx.elem(3), 2 * w)
    assert L.c == 3
    assert L.alpha == -(2 * w) / ctx.elem(3)
    assert L.beta == ctx.elem(3).inverse()


def test_lines_for_c_matches_pair_search():
    for p in [5, 7, 13]:
        ctx = make_field(p)
        pairs = find_ab_pairs(ctx)
        for code in range(p):
            c = ctx.elem(code)
            expected = sorted(
                ((a.code, b.code) for a, b in pairs if b * b == c),
            )
            got = sorted((L.a.code, L.b.code) for L in lines_for_c(ctx, c))
            assert got == expected, code


def test_lines_for_c_ordering_and_emptiness():
    ctx = make_field(13)
    ls = lines_for_c(ctx, ctx.elem(2))
    assert len(ls) == 4
    keys = [(L.a.dlog, L.b.dlog) for L in ls]
    assert keys == sorted(keys)
    assert lines_for_c(ctx, ctx.elem(3)) == []  # 3 = 4^2 is a square mod 13
    assert lines_for_c(ctx, ctx.zero) == []
    assert lines_for_c(ctx, ctx.one) == []


def test_line_for_thm1_q7_matches_example():
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    assert L.a == 3 and L.b.coeffs == (0, 2)  # a = b^2 = 3, b = 2w
    assert L.b.multiplicative_order() == 12
    with pytest.raises(ValueError):
        line_for_thm1(make_field(5))
    with pytest.raises(ValueError):
        line_for_thm1(make_field(13))


def test_line_for_thm1_q19():
    ctx = make_field(19)
    L = line_for_thm1(ctx)
    assert L.b.multiplicative_order() == 12
    assert L.a == L.b * L.b
    assert L.a * L.a + 1 == L.b * L.b


# ----------------------------------------------------------------------------
# torus elements
# ----------------------------------------------------------------------------


def test_torus_elt_validation_and_normalization():
    ctx = make_field(7)
    mu = mu_d_elements(ctx)
    z = mu[1]
    with pytest.raises(ValueError):
        TorusElt(ctx.elem(2), ctx.one, ctx.one)  # 2 is not a d-th root at q=7
    t = TorusElt.from_quad(z, z, z, z)
    assert t.is_identity
    t2 = TorusElt.from_quad(z * z, z, ctx.one, z)
    assert t2.coords == (z, ctx.one, z.inverse())


def test_torus_inverse_and_TE():
    ctx = make_field(7)
    mu = mu_d_elements(ctx)
    t = TorusElt(mu[1], mu[2], mu[5])
    ti = t.inverse()
    assert all((x * y) == 1 for x, y in zip(t.coords, ti.coords))
    assert TorusElt(mu[1], mu[2], mu[5]).in_TE  # 1+2+5 = 8 = 0 mod d
    assert not TorusElt(mu[1], mu[1], mu[1]).in_TE
    assert TorusElt.identity(ctx).in_TE


def test_nu_exponents():
    ctx = make_field(7)
    mu = mu_d_elements(ctx)
    t = TorusElt(mu[3], ctx.one, mu[7])
    assert t.nu_exponents() == (3, 0, 7)


# ----------------------------------------------------------------------------
# intersection enumeration
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 7, 13])
def test_build_intersections_counts(p):
    ctx = make_field(p)
    q, d = ctx.q, ctx.d
    for L in lines_for_c(ctx, find_ab_pairs(ctx)[0][1] ** 2)[:1]:
        iset = build_intersections(ctx, L)
        assert len(iset.three_entry) == 4 * (d - 1)
        assert len(iset.gamma_indexed) == q * q - q
        assert len(iset) == q * q + 3 * q
        elems = list(iset.all_elements())
        assert len(set(elems)) == len(elems)
        for t in elems:
            for coord in t.coords:
                assert in_mu_d(ctx, coord)


def test_excluded_gammas_are_trace_zero_line():
    # trace(gamma) = 0 exactly on the q multiples of b (F_q * b, plus 0).
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    iset = build_intersections(ctx, L)
    excluded = [
        g for g in ctx.elements() if g + frobenius(ctx, g) == 0
    ]
    assert len(excluded) == ctx.q
    assert set(excluded) == {beta * L.b for beta in ctx.fq_elements()}
    assert all(g not in iset.gamma_indexed for g in excluded)


def test_gamma_involution_pairs_with_inverse():
    # gamma -> -pi(gamma) flips t_gamma to its inverse.
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    iset = build_intersections(ctx, L)
    for gamma, t in iset.gamma_indexed.items():
        partner = -frobenius(ctx, gamma)
        assert iset.gamma_indexed[partner] == t.inverse()


# ----------------------------------------------------------------------------
# geometric oracle
# ----------------------------------------------------------------------------


def full_torus_classification(ctx, L):
    iset = build_intersections(ctx, L)
    three = set(iset.three_entry)
    gammas = set(iset.gamma_indexed.values())
    mu = mu_d_elements(ctx)
    for c0 in mu:
        for c1 in mu:
            for c2 in mu:
                t = TorusElt(c0, c1, c2)
                n = geometric_intersection_oracle(ctx, L, t)
                if t.is_identity:
                    expected = ctx.q**2 + 1
                elif t in three:
                    expected = 1
                elif t in gammas:
                    expected = 2
                else:
                    expected = 0
                assert n == expected, (t, n, expected)


def test_oracle_full_torus_q5():
    ctx = make_field(5)
    L = lines_for_c(ctx, ctx.elem(2))[0]
    full_torus_classification(ctx, L)


def test_oracle_spot_checks_q7():
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    iset = build_intersections(ctx, L)
    assert geometric_intersection_oracle(ctx, L, TorusElt.identity(ctx)) == 50
    assert geometric_intersection_oracle(ctx, L, iset.three_entry[0]) == 1
    some_gamma_t = next(iter(iset.gamma_indexed.values()))
    assert geometric_intersection_oracle(ctx, L, some_gamma_t) == 2


# ----------------------------------------------------------------------------
# w-tuples
# ----------------------------------------------------------------------------


@pytest.mark.parametrize(
    "d,count", [(6, 4), (8, 8), (12, 10), (14, 14), (18, 16)]
)
def test_w_tuples_counts(d, count):
    tuples = w_tuples(d)
    assert len(tuples) == count
    assert len(tuples) == (d if d % 3 else d - 2)
    assert tuples[0] == ExponentTuple.trivial(d)
    for t in tuples[1:]:
        assert t.is_w_type and t.all_nonzero
        assert t.entries[3] == (-3 * t.i0) % d
    assert len(set(tuples)) == len(tuples)


def test_w_tuples_d8_and_d12_membership():
    assert [t.i0 for t in w_tuples(8)] == [0, 1, 2, 3, 4, 5, 6, 7]
    assert [t.i0 for t in w_tuples(12)] == [0, 1, 2, 3, 5, 6, 7, 9, 10, 11]


# ----------------------------------------------------------------------------
# inner products
# ----------------------------------------------------------------------------


@pytest.mark.parametrize("p", [5, 7])
def test_trivial_inner_product_every_line(p):
    ctx = make_field(p)
    for a, b in find_ab_pairs(ctx):
        L = Line(ctx, a, b)
        assert inner_product_direct(ctx, L, ExponentTuple.trivial(ctx.d)) == Fraction(
            1, ctx.d
        )


def test_sum_of_minus_four():
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    iset = build_intersections(ctx, L)
    d = ctx.d
    partial = IntersectionSet(iset.three_entry, {})
    for t in w_tuples(d)[1:]:
        assert partial.lambda_inv_sum(t).equals_integer(-4)
    # also for non-w-type all-nonzero tuples
    assert partial.lambda_inv_sum(ExponentTuple(d, 1, 2, 3, 2)).equals_integer(-4)


def test_self_pairing_constant():
    # The 2 - d term: the numerator of the trivial character is
    # (2 - d) + |I_L| = d^2, giving 1/d after division by d^3.
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    assert direct_numerator(ctx, L, ExponentTuple.trivial(8)).as_integer == 64


@pytest.mark.parametrize("p", [5, 7, 13])
def test_dual_route_equality_all_lines_all_w_tuples(p):
    ctx = make_field(p)
    d = ctx.d
    nontrivial = w_tuples(d)[1:]
    for a, b in find_ab_pairs(ctx):
        L = Line(ctx, a, b)
        iset = build_intersections(ctx, L)
        for t in nontrivial:
            n_direct = iset.lambda_inv_sum(t) + (2 - d)
            n_charsum = charsum_numerator(ctx, L, t)
            assert n_direct == n_charsum, (p, L, t)


def test_dual_route_fraction_or_identical_error():
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    for t in w_tuples(8)[1:]:
        n = charsum_numerator(ctx, L, t).as_integer
        if n is None:
            with pytest.raises(NonRationalError):
                inner_product_direct(ctx, L, t)
            with pytest.raises(NonRationalError):
                inner_product_via_charsum(ctx, L, t)
        else:
            assert inner_product_direct(ctx, L, t) == inner_product_via_charsum(
                ctx, L, t
            ) == Fraction(n, 8**3)


def test_via_charsum_rejects_zero_entry():
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    with pytest.raises(ValueError):
        inner_product_via_charsum(ctx, L, ExponentTuple.trivial(8))
    with pytest.raises(ValueError):
        inner_product_via_charsum(ctx, L, ExponentTuple(8, 0, 1, 3, 4))


def test_nonzero_projection_iff_S_not_2q():
    # numerator = S - 2q, so the projection is nonzero iff S != 2q.
    ctx = make_field(7)
    L = line_for_thm1(ctx)
    from fermatlines.charsum import sum_S

    for t in w_tuples(8)[1:]:
        num = charsum_numerator(ctx, L, t)
        s = sum_S(ctx, L.c, t)
        assert bool(num) == (s.value != CycElt.from_int(8, 2 * ctx.q))
        assert bool(num)  # at the thm1 line every projection is nonzero
