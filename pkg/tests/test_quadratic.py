import random
from fractions import Fraction

import pytest

from toruscycles import BivariatePolynomial, enumerate_aba, enumerate_bb, verify_cycle
from toruscycles.errors import DegenerateDenominator
from toruscycles.polynomials import real_roots_in_open_interval
from toruscycles.quadratic import (
    cubic_discriminant_closed_form,
    quadratic_aba_analyze,
    quadratic_aba_region,
    quadratic_bb_conditions,
    radicand_cubic_in_c,
    sign_of_surd_difference,
)
from toruscycles.verification import level_edge_incidences

from conftest import quadratic, random_rational_triple


def bb_geometric_oracle(a, b, c) -> bool:
    """Trace-certified cycle whose level set keeps off every other edge."""
    H = quadratic(a, b, c)
    try:
        cands = enumerate_bb(H)
    except Exception:
        return False
    for cand in cands:
        if not (cand.filters["interior"] and cand.filters["transversal"]):
            continue
        if not verify_cycle(H, cand).ok:
            continue
        x0 = cand.exact_seam[0]
        if not level_edge_incidences(
            H, H.evaluate(x0, 0), exclude=[("bottom", x0), ("top", x0)]
        ):
            return True
    return False


# ------------------------------------------------------------
# vertical-loop conditions
# ------------------------------------------------------------


def test_witness_triple():
    d = quadratic_bb_conditions(1, 2, -1)
    assert d.exists and all(d.conditions.values())
    assert d.x0 == Fraction(1, 2)
    assert d.level == Fraction(1, 4)
    assert bb_geometric_oracle(1, 2, -1)


def test_b_zero_fails():
    d = quadratic_bb_conditions(1, 0, 1)
    assert not d.conditions["a"]
    assert not d.exists
    assert enumerate_bb(quadratic(1, 0, 1)) == []


def test_zero_triple_rejected():
    with pytest.raises(Exception):
        quadratic_bb_conditions(0, 0, 0)


def test_second_top_crossing_outside_means_cycle():
    # The second root of H(x,1) - k sits left of 0 here; the cycle is real.
    a, b, c = Fraction(-37, 10), Fraction(287, 125), Fraction(-751, 500)
    d = quadratic_bb_conditions(a, b, c)
    assert d.exists
    assert bb_geometric_oracle(a, b, c)


def test_both_right_edge_roots_inside_kills_cycle():
    # H(1,y) - k has both roots strictly inside (0,1): the level set meets
    # the right edge twice and the candidate never closes as a plain
    # vertical loop.
    a, b, c = Fraction(-869, 250), Fraction(127, 50), Fraction(-1229, 500)
    d = quadratic_bb_conditions(a, b, c)
    assert not d.conditions["d"]
    assert not d.exists
    assert not bb_geometric_oracle(a, b, c)


def test_conditions_match_oracle_on_random_triples():
    rng = random.Random(321)
    for _ in range(1500):
        a, b, c = random_rational_triple(rng)
        d = quadratic_bb_conditions(a, b, c)
        assert d.exists == bb_geometric_oracle(a, b, c), (a, b, c)


# ------------------------------------------------------------
# diagonal closed forms
# ------------------------------------------------------------


def test_radicand_equals_cubic_coefficientwise():
    # Interpolation over a grid large enough to pin every coefficient of
    # the bivariate expansion proves the identity symbolically.
    for a_num in range(-4, 5):
        for b_num in range(-4, 5):
            a, b = Fraction(a_num, 2), Fraction(b_num, 3)
            cubic = radicand_cubic_in_c(a, b)
            for c_num in range(-3, 4):
                c = Fraction(c_num, 2)
                direct = b**4 - 8 * a * b * b * c + 4 * a * c * (a + c) ** 2
                assert cubic.evaluate(c) == direct


def test_discriminant_formula_matches_resultant_discriminant():
    # disc(p) = ((-1)^(n(n-1)/2) / lc) * Res(p, p') for the cubic in c.
    rng = random.Random(8)
    for _ in range(40):
        a = Fraction(rng.randint(-9, 9))
        b = Fraction(rng.randint(-9, 9))
        if a == 0:
            continue
        p = radicand_cubic_in_c(a, b)
        dp = p.derivative()
        # Sylvester determinant via the univariate route: embed in x.
        from toruscycles.polynomials import BivariatePolynomial, resultant

        P = BivariatePolynomial({(i, 0): cf for i, cf in enumerate(p.coeffs)})
        DP = BivariatePolynomial({(i, 0): cf for i, cf in enumerate(dp.coeffs)})
        try:
            res = resultant(P, DP, "x")
        except Exception:
            continue
        # res is a constant polynomial up to positive scale; only the sign
        # is comparable.
        val = res.coeffs[0] if res.coeffs else Fraction(0)
        lc = p.leading_coefficient()
        disc_sign = (-1) ** 1 * val / lc  # n=3: (-1)^(3*2/2) = -1
        formula = cubic_discriminant_closed_form(a, b)
        assert (disc_sign > 0) == (formula > 0) and (disc_sign < 0) == (formula < 0)


def test_discriminant_zero_gives_repeated_root():
    # b = 2a zeroes the discriminant; the cubic factors with a double root.
    analysis = quadratic_aba_analyze(1, 2, Fraction(1, 3))
    assert analysis.cubic_discriminant == 0
    roots = real_roots_in_open_interval(analysis.radicand_cubic, -100, 100)
    assert sorted(r.multiplicity for r in roots) == [1, 2]
    assert any(r.refined_value == 1 and r.multiplicity == 2 for r in roots)


def test_closed_form_pairs_interior_case():
    # a=1, b=1 sits in the 0 < b < 2a clause; picking c inside the stated
    # band makes both solution pairs interior.
    a, b = Fraction(1), Fraction(1)
    cubic = radicand_cubic_in_c(a, b)
    (rho1,) = [r for r in real_roots_in_open_interval(cubic, -100, 0)]
    upper = float(-(a + b)) / 2 - (float(a * a + 2 * a * b + 5 * b * b) ** 0.5) / 2
    c = Fraction(int((float(rho1.refined_value) + upper) / 2 * 10**6), 10**6)
    analysis = quadratic_aba_analyze(a, b, c)
    assert analysis.radicand > 0
    assert analysis.pair_interior == [True, True]
    region = quadratic_aba_region(a, b, c)
    assert region.case == "2b" and region.exists
    # the general enumerator finds the same two pairs
    cands = enumerate_aba(quadratic(a, b, c))
    enum_pairs = sorted(cd.seam for cd in cands)
    closed = sorted(analysis.solution_pairs)
    assert len(enum_pairs) == 2
    for e, f in zip(enum_pairs, closed):
        assert abs(e[0] - f[0]) <= 1e-10 and abs(e[1] - f[1]) <= 1e-10


def test_degenerate_denominators_raise():
    with pytest.raises(DegenerateDenominator):
        quadratic_aba_analyze(1, 0, 2)
    with pytest.raises(DegenerateDenominator):
        quadratic_aba_analyze(3, 1, 3)
    with pytest.raises(DegenerateDenominator):
        quadratic_aba_region(1, 0, 2)


def test_region_case_1b_midpoint():
    # a=-1, b=-1/2 falls in the -(2/3)sqrt(2/3)|a| <= b < 0 clause; the c
    # band is ((-a-b+sqrt(D))/2, rho3].
    a, b = Fraction(-1), Fraction(-1, 2)
    cubic = radicand_cubic_in_c(a, b)
    roots = real_roots_in_open_interval(cubic, -100, 100)
    rho3 = float(roots[-1].refined_value)
    D = float(a * a + 2 * a * b + 5 * b * b)
    lower = (float(-a - b) + D**0.5) / 2
    c = Fraction(int((lower + rho3) / 2 * 10**6), 10**6)
    region = quadratic_aba_region(a, b, c)
    assert region.case == "1b" and region.exists
    assert quadratic_aba_analyze(a, b, c).exists_verdict


def test_region_no_clause():
    region = quadratic_aba_region(1, -2, Fraction(1, 3))
    assert region.case is None and not region.exists


def test_region_agrees_with_closed_forms():
    rng = random.Random(42)
    checked = 0
    for _ in range(10_000):
        a, b, c = random_rational_triple(rng, span=1000, den=250)
        if b == 0 or a == c:
            continue
        checked += 1
        analysis = quadratic_aba_analyze(a, b, c, with_roots=False)
        region = quadratic_aba_region(a, b, c)
        assert region.exists == analysis.exists_verdict, (a, b, c)
    assert checked > 9000


def test_surd_comparison_signs():
    assert sign_of_surd_difference(Fraction(3), 1, Fraction(4)) > 0  # 3 > 2
    assert sign_of_surd_difference(Fraction(2), 1, Fraction(4)) == 0
    assert sign_of_surd_difference(Fraction(1), 1, Fraction(4)) < 0
    assert sign_of_surd_difference(Fraction(-1), -1, Fraction(4)) > 0  # -1 > -2
    assert sign_of_surd_difference(Fraction(-2), -1, Fraction(4)) == 0
    assert sign_of_surd_difference(Fraction(-3), -1, Fraction(4)) < 0
