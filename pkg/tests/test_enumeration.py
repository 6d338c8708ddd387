import random
from fractions import Fraction

import pytest

from toruscycles import (
    BivariatePolynomial,
    enumerate_aa,
    enumerate_aba,
    enumerate_bab,
    enumerate_bb,
)
from toruscycles.enumeration import (
    infinity_intersection_free,
    require_diagonal_bound_hypotheses,
    theoretical_bound,
)
from toruscycles.errors import (
    ConstantTermNonzero,
    DegenerateContinuum,
    LeadingCoefficientsVanish,
)
from toruscycles.inputs import cubic_six_candidates, vertical_ladder
from toruscycles.reporting import random_integral

from conftest import CUBIC_SIX_PAIRS, quadratic


# ------------------------------------------------------------
# vertical / horizontal loops
# ------------------------------------------------------------


def test_bb_quadratic_witness():
    (cand,) = enumerate_bb(quadratic(1, 2, -1))
    assert cand.exact_seam[0] == Fraction(1, 2)
    assert cand.levels == (0.25,)
    assert cand.passed_all_filters()


def test_bb_ladder_n5_all_filters_pass():
    cands = enumerate_bb(vertical_ladder(5))
    assert [c.exact_seam[0] for c in cands] == [Fraction(k, 5) for k in range(1, 5)]
    assert all(c.passed_all_filters() for c in cands)


def test_bb_no_roots_when_b_zero():
    assert enumerate_bb(quadratic(1, 0, 1)) == []


def test_bb_continuum_detected():
    with pytest.raises(DegenerateContinuum):
        enumerate_bb(BivariatePolynomial({(2, 0): 1}))  # H = x^2


def test_constant_term_rejected():
    H = BivariatePolynomial({(2, 0): 1, (2, 1): 2, (2, 2): -1, (0, 0): 1})
    with pytest.raises(ConstantTermNonzero):
        enumerate_bb(H)
    with pytest.raises(ConstantTermNonzero):
        enumerate_aba(H)


def test_aa_bb_transpose_symmetry():
    rng = random.Random(14)
    for _ in range(50):
        H = random_integral(rng.randint(2, 4), rng)
        try:
            aa = enumerate_aa(H)
            bbt = enumerate_bb(H.transpose())
        except DegenerateContinuum:
            continue
        assert len(aa) == len(bbt)
        for x, y in zip(aa, bbt):
            assert abs(x.seam[0] - y.seam[0]) <= 1e-12


def test_bb_candidate_levels_and_partners():
    cands = enumerate_bb(vertical_ladder(4))
    for k, cand in zip(range(1, 4), cands):
        (sp,) = cand.seam_points()
        assert sp.edge == "bottom"
        assert sp.partner().edge == "top"
        assert sp.partner().t == sp.t
        assert cand.levels[0] == pytest.approx(-((k / 4) ** 4))


def test_bb_multiple_root_flagged():
    # Vertical difference (x - 1/2)^2: one doubled candidate, non-simple.
    H = BivariatePolynomial(
        {(3, 0): 1, (3, 1): -1, (2, 1): 1, (1, 1): Fraction(-1, 4)}
    )
    # H(x,0)-H(x,1) = x^2 - x + 1/4 = (x - 1/2)^2
    diff = H.closing_difference("vertical")
    assert diff.coeffs == (Fraction(1, 4), Fraction(-1), Fraction(1))
    (cand,) = enumerate_bb(H)
    assert cand.multiplicity == 2
    assert not cand.filters["simple"]


# ------------------------------------------------------------
# diagonal loops
# ------------------------------------------------------------


def test_aba_fixture_reproduces_published_pairs():
    cands = enumerate_aba(cubic_six_candidates())
    assert len(cands) == 6
    for cand, (px, py) in zip(sorted(cands, key=lambda c: c.seam), CUBIC_SIX_PAIRS):
        assert abs(cand.seam[0] - px) <= 5e-3
        assert abs(cand.seam[1] - py) <= 5e-3
        assert cand.filters["closing"]
        assert cand.filters["transversal"]


def test_aba_xy_has_no_interior_solution():
    assert enumerate_aba(BivariatePolynomial({(2, 1): 1})) == []


def test_aba_negative_radicand_empty():
    # radicand b^4 - 8ab^2c + 4ac(a+c)^2 < 0 for (1, 1, 1): 1 - 8 + 16 = 9?
    # pick (2, 1, 1): 1 - 16 + 72 > 0; use (1, 2, 1): 16 - 32 + 16 = 0; use
    # (1, 1, 2): 1 - 16 + 72 = 57; use (-1, 1, 1): 1 + 8 - 4*0 = 9 > 0;
    # (1, 3, -1): 81 + 72 - 4*0 -> a+c = 0 makes the last term vanish: 153.
    # (3, 1, -2): 1 + 48 - 24*1 = 25. (1, 1, -3): 1 + 24 - 12*4 = -23 < 0.
    from toruscycles.quadratic import quadratic_aba_analyze

    a, b, c = 1, 1, -3
    assert quadratic_aba_analyze(a, b, c).radicand < 0
    assert enumerate_aba(quadratic(a, b, c)) == []


def test_bab_mirrors_aba_seam_points():
    aba = enumerate_aba(cubic_six_candidates())
    bab = enumerate_bab(cubic_six_candidates())
    assert len(bab) == len(aba)
    for x, y in zip(sorted(c.seam for c in aba), sorted(c.seam for c in bab)):
        assert abs(x[0] - y[0]) <= 1e-9 and abs(x[1] - y[1]) <= 1e-9
    assert all(c.cycle_type == "bab" for c in bab)
    # bab traversal starts on the horizontal seam
    assert bab[0].trace_start().edge == "bottom"


def test_closing_residuals_exact_for_rational_input():
    H = vertical_ladder(6)
    for cand in enumerate_bb(H):
        x0 = cand.exact_seam[0]
        assert H.evaluate(x0, 0) == H.evaluate(x0, 1)


def test_diagonal_candidate_closing_residuals_small():
    for cand in enumerate_aba(cubic_six_candidates()):
        assert cand.filters["closing"]


def test_bound_hypotheses_helper():
    with pytest.raises(LeadingCoefficientsVanish):
        require_diagonal_bound_hypotheses(BivariatePolynomial({(2, 1): 1}))
    require_diagonal_bound_hypotheses(cubic_six_candidates())


def test_infinity_check_fixture():
    assert infinity_intersection_free(cubic_six_candidates())


def test_theoretical_bounds():
    assert theoretical_bound("bb", 5) == 4
    assert theoretical_bound("aa", 1) == 0
    assert theoretical_bound("aba", 3) == 6
    assert theoretical_bound("bab", 2) == 2


def test_counts_never_exceed_bounds_on_random_inputs():
    # 500 seeded draws over degrees 2..6; single-loop counts stay below
    # n-1 and diagonal counts below n(n-1).
    rng = random.Random(77)
    for trial in range(500):
        n = rng.choice([2, 3, 4, 5, 6])
        H = random_integral(n, rng)
        try:
            assert len(enumerate_bb(H)) <= n - 1
            assert len(enumerate_aa(H)) <= n - 1
        except DegenerateContinuum:
            pass
        if trial % 4 == 0:  # diagonal elimination is the slow path
            try:
                assert len(enumerate_aba(H)) <= n * (n - 1)
            except DegenerateContinuum:
                pass


def test_distinct_levels_flagging():
    # Two vertical loops at mirrored roots share the level for an even
    # integral: H = (x-1/2)^2-ish construction with symmetric roots.
    # H(x,0) - H(x,1) = (x-1/4)(x-3/4) and H(x,0) = x^2 - x symmetric about
    # 1/2 makes the two levels coincide.
    H = BivariatePolynomial(
        {
            (2, 0): 1,
            (1, 0): -1,
            (3, 1): -1,
            (2, 1): 1,
            (1, 1): Fraction(-3, 16),
        }
    )
    # H(x,0)-H(x,1) = -(-x^2 + x - 3/16) = (x-1/4)(x-3/4); H(x,0) = x^2 - x
    # is symmetric about 1/2, so both candidates sit on the same level.
    diff = H.closing_difference("vertical")
    assert diff.coeffs == (Fraction(3, 16), Fraction(-1), Fraction(1))
    cands = enumerate_bb(H)
    assert len(cands) == 2
    assert [c.levels[0] for c in cands] == [pytest.approx(-3 / 16)] * 2
    assert all(not c.filters["distinct_levels"] for c in cands)
