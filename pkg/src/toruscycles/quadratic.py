"""Closed-form analysis for quadratic first integrals H = a x^2 + b x y + c y^2.

Two analyzers live here:

  * `quadratic_bb_conditions` decides existence of the (unique) vertical-seam
    crossing cycle from four parameter conditions: the seam root -c/b must be
    interior, the top edge must carry no second crossing of the level, and
    the left/right edges must carry none at all.

  * `quadratic_aba_analyze` / `quadratic_aba_region` cover the diagonal
    cycles: the closing system collapses to closed-form solution pairs whose
    reality is governed by the radicand b^4 - 8ab^2c + 4ac(a+c)^2.  Viewed as
    a cubic in c that radicand has discriminant
    16 a^2 b^2 (2a-b)^2 (2a+b)^2 (8a^2 - 27b^2), and the region analyzer
    re-derives existence purely from parameter-space clauses phrased with the
    cubic's ordered roots.

All comparisons against quantities of the form (A + s*sqrt(R))/B and against
the cubic's k-th root are exact over the rationals; floats appear only in
the reported solution coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import DegenerateDenominator, InvariantViolation
from .polynomials import (
    Scalar,
    UnivariatePolynomial,
    real_roots_in_open_interval,
    squarefree_decomposition,
    sturm_sequence,
    _sturm_count_half_open,
    to_fraction,
)

# ------------------------------------------------------------
# Exact surd comparison helpers
# ------------------------------------------------------------


def sign_of_surd_difference(t: Fraction, s: int, radicand: Fraction) -> int:
    """Exact sign of t - s*sqrt(radicand) for radicand >= 0, s in {+1, -1}."""
    if radicand < 0:
        raise InvariantViolation("negative radicand in surd comparison")
    if s == 1:
        if t < 0:
            return -1
        if t == 0:
            return 0 if radicand == 0 else -1
        return _sign(t * t - radicand)
    if t > 0:
        return 1
    if t == 0:
        return 0 if radicand == 0 else 1
    return _sign(radicand - t * t)


def surd_ratio_vs(
    A: Fraction, s: int, radicand: Fraction, B: Fraction, bound: Fraction
) -> int:
    """Exact sign of (A + s*sqrt(radicand))/B - bound, B != 0."""
    if B == 0:
        raise DegenerateDenominator("zero denominator in closed-form solution")
    t = bound * B - A
    return -sign_of_surd_difference(t, s, radicand) * _sign(B)


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


# ------------------------------------------------------------
# Vertical-seam (bb) existence conditions
# ------------------------------------------------------------


@dataclass
class QuadraticBBDecision:
    """Outcome of the four-parameter test plus the closed-form witness."""

    exists: bool
    conditions: Dict[str, bool]
    x0: Optional[Fraction] = None
    level: Optional[Fraction] = None


def quadratic_bb_conditions(a: Scalar, b: Scalar, c: Scalar) -> QuadraticBBDecision:
    """Decide existence of the vertical crossing cycle for H = ax^2+bxy+cy^2.

    The cycle candidate sits at x0 = -c/b with level k = a c^2/b^2; it is a
    genuine crossing cycle exactly when the level set {H = k} meets the
    square's boundary nowhere except (x0, 0) and (x0, 1).  Edge by edge
    (all comparisons exact):

      a: b != 0, c != 0, bc < 0 and |b| > |c|    seam root -c/b interior
         (the bottom edge is then automatically clean: a x^2 = k has the
         roots +-x0 and -x0 is outside)
      b: P(0) * P(1) <= 0 for P(x) = H(x,1) - k   no second top-edge
         crossing strictly inside (0, 1)
      c: ac < 0 or ac > b^2                       no left-edge crossing
      d: Q(y) = H(1,y) - k has no root strictly inside (0, 1): either its
         discriminant b^4 - 4ab^2c + 4ac^3 is negative, or Q(0) Q(1) >= 0
         and the two roots do not both lie inside

    The boundary closures (<=, >=) admit level curves through glued
    corners, matching the open-interval reading of "no other crossing".
    """
    a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
    if a == b == c == 0:
        raise InvariantViolation("zero polynomial")
    cond: Dict[str, bool] = {}
    cond["a"] = b != 0 and c != 0 and b * c < 0 and b * b > c * c
    if b != 0:
        k = a * c * c / (b * b)
        p0 = c - k
        p1 = a + b + c - k
        cond["b"] = p0 * p1 <= 0
        q0 = a - k
        q1 = c + b + a - k
        disc = b * b - 4 * c * (a - k)  # discriminant of cy^2 + by + (a - k)
        if disc < 0:
            cond["d"] = True
        else:
            both_inside = (
                c != 0
                and q0 * c > 0
                and q1 * c > 0
                and 0 < -b / (2 * c) < 1
            )
            cond["d"] = q0 * q1 >= 0 and not both_inside
    else:
        cond["b"] = False
        cond["d"] = False
    cond["c"] = a * c < 0 or a * c > b * b
    exists = all(cond.values())
    if exists:
        x0 = -c / b
        return QuadraticBBDecision(True, cond, x0, a * c * c / (b * b))
    return QuadraticBBDecision(False, cond)


# ------------------------------------------------------------
# Diagonal (aba/bab) closed forms
# ------------------------------------------------------------


@dataclass
class QuadraticAbaAnalysis:
    """Closed-form bundle for the diagonal closing system of a quadratic.

    `radicand` is b^4 - 8ab^2c + 4ac(a+c)^2; its square root (when real)
    separates the two solution pairs.  `radicand_cubic` is the same quantity
    as a polynomial in c, `cubic_discriminant` its discriminant, and
    `cubic_roots` its ordered real roots (with multiplicity, as floats).
    Interiority of each solution pair is decided exactly.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    radicand: Fraction
    radical: Optional[float]
    radicand_cubic: UnivariatePolynomial
    cubic_discriminant: Fraction
    cubic_roots: List[float] = field(default_factory=list)
    solution_pairs: List[Tuple[float, float]] = field(default_factory=list)
    pair_interior: List[bool] = field(default_factory=list)
    degenerate: bool = False

    @property
    def exists_verdict(self) -> bool:
        """Real solutions with every pair strictly interior."""
        return (
            self.radicand >= 0
            and bool(self.pair_interior)
            and all(self.pair_interior)
        )


def radicand_cubic_in_c(a: Scalar, b: Scalar) -> UnivariatePolynomial:
    """The radicand as a cubic in c: 4a c^3 + 8a^2 c^2 + (4a^3-8ab^2) c + b^4."""
    a, b = to_fraction(a), to_fraction(b)
    return UnivariatePolynomial(
        [b**4, 4 * a**3 - 8 * a * b * b, 8 * a * a, 4 * a], "c"
    )


def cubic_discriminant_closed_form(a: Scalar, b: Scalar) -> Fraction:
    """16 a^2 b^2 (2a-b)^2 (2a+b)^2 (8a^2 - 27b^2)."""
    a, b = to_fraction(a), to_fraction(b)
    return (
        16
        * a**2
        * b**2
        * (2 * a - b) ** 2
        * (2 * a + b) ** 2
        * (8 * a * a - 27 * b * b)
    )


def quadratic_aba_analyze(
    a: Scalar, b: Scalar, c: Scalar, with_roots: bool = True
) -> QuadraticAbaAnalysis:
    """Evaluate the diagonal closed forms at (a, b, c).

    Raises DegenerateDenominator when b = 0 or a = c (the closed forms are
    undefined there; the general enumerator still applies).  When the
    radicand is zero the two pairs coincide and a single degenerate pair is
    reported.
    """
    a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
    if b == 0 or a == c:
        raise DegenerateDenominator("closed forms need b != 0 and a != c")
    R = b**4 - 8 * a * b * b * c + 4 * a * c * (a + c) ** 2
    cubic = radicand_cubic_in_c(a, b)
    delta = cubic_discriminant_closed_form(a, b)
    analysis = QuadraticAbaAnalysis(
        a=a,
        b=b,
        c=c,
        radicand=R,
        radical=math.sqrt(float(R)) if R >= 0 else None,
        radicand_cubic=cubic,
        cubic_discriminant=delta,
        degenerate=(R == 0),
    )
    if with_roots and not cubic.is_zero() and cubic.degree >= 1:
        bound = _cauchy_bound(cubic)
        roots = real_roots_in_open_interval(cubic, -bound, bound)
        expanded: List[float] = []
        for r in roots:
            expanded.extend([float(r.refined_value)] * r.multiplicity)
        analysis.cubic_roots = sorted(expanded)
    if R < 0:
        return analysis

    # Closed-form pairs: x = (A + s*sqrt(R))/B, y = (C - s*sqrt(R))/B.
    A = -b * b + 2 * c * (a + c)
    C = b * b - 2 * a * (a + c)
    B = 2 * b * (a - c)
    rad = analysis.radical or 0.0
    signs = (1,) if R == 0 else (1, -1)
    for s in signs:
        xf = (float(A) + s * rad) / float(B)
        yf = (float(C) - s * rad) / float(B)
        analysis.solution_pairs.append((xf, yf))
        interior = (
            surd_ratio_vs(A, s, R, B, Fraction(0)) > 0
            and surd_ratio_vs(A, s, R, B, Fraction(1)) < 0
            and surd_ratio_vs(C, -s, R, B, Fraction(0)) > 0
            and surd_ratio_vs(C, -s, R, B, Fraction(1)) < 0
        )
        analysis.pair_interior.append(interior)
    return analysis


def _cauchy_bound(p: UnivariatePolynomial) -> Fraction:
    lead = abs(p.leading_coefficient())
    m = max(abs(ci) for ci in p.coeffs[:-1]) if p.degree >= 1 else Fraction(0)
    return 1 + m / lead


# ------------------------------------------------------------
# Region clauses over the cubic's ordered roots
# ------------------------------------------------------------


@dataclass
class RegionVerdict:
    """Which existence clause (if any) the parameters satisfy."""

    case: Optional[str]
    exists: bool
    detail: str = ""


class _CubicRootRank:
    """Exact comparisons of a rational against the k-th real root (with
    multiplicity, ascending) of a rational-coefficient polynomial."""

    def __init__(self, p: UnivariatePolynomial):
        self.factors = [
            (f, m, sturm_sequence(f)) for f, m in squarefree_decomposition(p)
            if f.degree >= 1
        ]
        self.bound = _cauchy_bound(p) if p.degree >= 1 else Fraction(1)
        self.total = sum(
            m * self._distinct_count(f, seq) for f, m, seq in self.factors
        )

    def _distinct_count(self, f, seq) -> int:
        n = _sturm_count_half_open(seq, -self.bound, self.bound)
        return n

    def count_below(self, c: Fraction) -> int:
        """Roots (with multiplicity) strictly less than c."""
        total = 0
        for f, m, seq in self.factors:
            lo = min(-self.bound, c - 1)
            n = _sturm_count_half_open(seq, lo, c)
            if f.evaluate(c) == 0:
                n -= 1
            total += m * n
        return total

    def multiplicity_at(self, c: Fraction) -> int:
        return sum(m for f, m, _ in self.factors if f.evaluate(c) == 0)

    def compare(self, c: Fraction, k: int) -> Optional[int]:
        """sign(c - rho_k), or None when rho_k does not exist (k 1-based)."""
        if k > self.total:
            return None
        below = self.count_below(c)
        if below >= k:
            return 1
        at = self.multiplicity_at(c)
        if at and below < k <= below + at:
            return 0
        return -1


def quadratic_aba_region(a: Scalar, b: Scalar, c: Scalar) -> RegionVerdict:
    """Match (a, b, c) against the parameter-space existence clauses.

    Case 1 (a < 0):
      1a: 2a < b < -(2/3)sqrt(2/3)|a|   and  -(a+b)/2 + sqrt(D)/2 < c <= rho_1
      1b: -(2/3)sqrt(2/3)|a| <= b < 0   and  -(a+b)/2 + sqrt(D)/2 < c <= rho_3
      1c: 0 < b < -a/2                  and  rho_2 <= c < (-a^2-ab+b^2)/a
    Case 2 (a > 0):
      2a: -a/2 < b < 0                  and  (-a^2-ab+b^2)/a < c <= rho_2
      2b: 0 < b < 2a                    and  rho_1 <= c < -(a+b)/2 - sqrt(D)/2

    with D = a^2 + 2ab + 5b^2 and rho_k the k-th real root (ascending, with
    multiplicity) of the radicand cubic.  A clause referencing a missing
    rho_k is unsatisfied.  All comparisons are exact.
    """
    a, b, c = to_fraction(a), to_fraction(b), to_fraction(c)
    if b == 0 or a == c:
        raise DegenerateDenominator("region clauses need b != 0 and a != c")
    ranker = _CubicRootRank(radicand_cubic_in_c(a, b))
    D = a * a + 2 * a * b + 5 * b * b

    def cmp_c_rho(k: int) -> Optional[int]:
        return ranker.compare(c, k)

    if a < 0:
        # b < -(2/3)sqrt(2/3)|a|  <=>  b < 0 and 27 b^2 > 8 a^2
        b_below_minus_T = b < 0 and 27 * b * b > 8 * a * a
        b_in_minus_T_to_0 = b < 0 and 27 * b * b <= 8 * a * a
        if b > 2 * a and b_below_minus_T:
            lower_ok = sign_of_surd_difference(2 * c + a + b, 1, D) > 0
            r = cmp_c_rho(1)
            if lower_ok and r is not None and r <= 0:
                return RegionVerdict("1a", True)
            return RegionVerdict("1a", False, "b-range matched, c outside")
        if b_in_minus_T_to_0:
            lower_ok = sign_of_surd_difference(2 * c + a + b, 1, D) > 0
            r = cmp_c_rho(3)
            if lower_ok and r is not None and r <= 0:
                return RegionVerdict("1b", True)
            return RegionVerdict("1b", False, "b-range matched, c outside")
        if 0 < b < -a / 2:
            r = cmp_c_rho(2)
            upper = (-a * a - a * b + b * b) / a
            if r is not None and r >= 0 and c < upper:
                return RegionVerdict("1c", True)
            return RegionVerdict("1c", False, "b-range matched, c outside")
        return RegionVerdict(None, False, "no b-clause applies")
    if a > 0:
        if -a / 2 < b < 0:
            lower = (-a * a - a * b + b * b) / a
            r = cmp_c_rho(2)
            if c > lower and r is not None and r <= 0:
                return RegionVerdict("2a", True)
            return RegionVerdict("2a", False, "b-range matched, c outside")
        if 0 < b < 2 * a:
            upper_ok = sign_of_surd_difference(2 * c + a + b, -1, D) < 0
            r = cmp_c_rho(1)
            if upper_ok and r is not None and r >= 0:
                return RegionVerdict("2b", True)
            return RegionVerdict("2b", False, "b-range matched, c outside")
        return RegionVerdict(None, False, "no b-clause applies")
    return RegionVerdict(None, False, "a = 0: no case applies")
