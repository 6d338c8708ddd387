"""Closing-equation solvers for the four cycle types.

A crossing cycle forces equalities of the first integral between identified
boundary points:

  * vertical loop (type bb):   H(x0, 0) = H(x0, 1), one seam coordinate;
  * horizontal loop (type aa): H(0, y0) = H(1, y0);
  * diagonal loops (aba/bab):  H(0, y) = H(x, 1) and H(x, 0) = H(1, y),
    four seam points p1=(0,y), p2=(x,1), p3=(x,0), p4=(1,y).

For bb/aa the closing difference is univariate of degree <= n-1, which both
bounds the count and hands the roots to the isolator.  For the diagonal
system, adding the two polynomials cancels every degree-n term, so the pair
(P, P+Q) has degrees (n, n-1); eliminating x by a resultant bounds the count
by n(n-1) provided the homogenized pair shares no zero on the line at
infinity, which is checked on the actual top-degree forms.

Candidates are returned for every interior solution; filters (interiority,
closing residual, transversality, seam gradient, simplicity) record their
verdicts on the candidate instead of silently dropping it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    BoundViolation,
    CommonComponent,
    ConstantTermNonzero,
    DegenerateContinuum,
    InvariantViolation,
    LeadingCoefficientsVanish,
)
from .geometry import EdgePoint, transversality_check
from .polynomials import (
    BivariatePolynomial,
    UnivariatePolynomial,
    gcd as poly_gcd,
    real_roots_in_open_interval,
    resultant,
)

#: Residual threshold for accepting a back-substituted (x, y) pairing.
PAIRING_RESIDUAL = 1e-9

#: Residual threshold on the closing equalities in float mode.
CLOSING_RESIDUAL = 1e-10

#: Two candidates whose level sets coincide within this are flagged.
LEVEL_DISTINCTNESS = 1e-9


@dataclass
class CycleCandidate:
    """One solution of a closing system, with per-filter verdicts.

    `seam` holds the seam coordinates: (x0,) for bb, (y0,) for aa, and
    (x, y) for aba/bab where the four seam points are p1=(0,y), p2=(x,1),
    p3=(x,0), p4=(1,y).  `levels` is the tuple of level values of the
    cycle's interior arcs (one for bb/aa, two for the diagonal types).
    """

    cycle_type: str
    seam: Tuple[float, ...]
    levels: Tuple[float, ...]
    filters: Dict[str, bool] = field(default_factory=dict)
    multiplicity: int = 1
    boundary_ambiguous: bool = False
    exact_seam: Optional[Tuple[Fraction, ...]] = None
    verification: Optional[object] = None

    @property
    def level(self):
        return self.levels[0] if len(self.levels) == 1 else self.levels

    def passed_all_filters(self) -> bool:
        return all(self.filters.values())

    def seam_points(self) -> List[EdgePoint]:
        """Declared seam points, one representative per glued pair."""
        if self.cycle_type == "bb":
            return [EdgePoint("bottom", self._coord(0))]
        if self.cycle_type == "aa":
            return [EdgePoint("left", self._coord(0))]
        x, y = self._coord(0), self._coord(1)
        if self.cycle_type == "aba":
            return [EdgePoint("left", y), EdgePoint("top", x)]
        return [EdgePoint("bottom", x), EdgePoint("right", y)]

    def trace_start(self) -> EdgePoint:
        return self.seam_points()[0]

    def _coord(self, i: int):
        if self.exact_seam is not None:
            return self.exact_seam[i]
        return self.seam[i]


def theoretical_bound(cycle_type: str, degree: int) -> int:
    """Theorem bounds per type: n-1 for single loops, n(n-1) for diagonals."""
    if cycle_type in ("bb", "aa"):
        return max(degree - 1, 0)
    return degree * (degree - 1)


# ------------------------------------------------------------
# Vertical / horizontal loop enumeration
# ------------------------------------------------------------


def _require_zero_at_origin(H: BivariatePolynomial) -> None:
    if H.terms.get((0, 0), Fraction(0)) != 0:
        raise ConstantTermNonzero("enumeration requires H(0,0) = 0")


def _single_loop_enumerate(H: BivariatePolynomial, cycle_type: str) -> List[CycleCandidate]:
    _require_zero_at_origin(H)
    n = H.degree
    if n < 1:
        raise InvariantViolation("degree must be at least 1")
    direction = "vertical" if cycle_type == "bb" else "horizontal"
    diff = H.closing_difference(direction)
    if diff.is_zero():
        raise DegenerateContinuum(
            f"{direction} closing difference vanishes identically: "
            "continuum of periodic orbits"
        )
    roots = real_roots_in_open_interval(diff, 0, 1)
    grad_x, grad_y = H.gradient()
    out: List[CycleCandidate] = []
    for r in roots:
        t = r.refined_value
        edge = "bottom" if cycle_type == "bb" else "left"
        point = EdgePoint(edge, t)
        transversal = transversality_check(H, [point])[0]
        reps = (point.square_coords(), point.partner().square_coords())
        nondegenerate = all(
            grad_x.evaluate(*xy) != 0 or grad_y.evaluate(*xy) != 0 for xy in reps
        )
        if cycle_type == "bb":
            level = H.evaluate(t, 0)
        else:
            level = H.evaluate(0, t)
        closing = abs(
            diff.evaluate(t)
        )  # exact residual of the closing equality at the refined root
        out.append(
            CycleCandidate(
                cycle_type=cycle_type,
                seam=(float(t),),
                levels=(float(level),),
                filters={
                    "interior": not r.boundary_ambiguous,
                    "closing": float(closing) <= CLOSING_RESIDUAL,
                    "transversal": transversal,
                    "nondegenerate": nondegenerate,
                    "simple": r.multiplicity == 1,
                },
                multiplicity=r.multiplicity,
                boundary_ambiguous=r.boundary_ambiguous,
                exact_seam=(t,),
            )
        )
    _flag_distinct_levels(out)
    bound = theoretical_bound(cycle_type, n)
    if len(out) > bound:
        raise BoundViolation(
            f"{len(out)} {cycle_type} candidates exceed the bound {bound}"
        )
    return out


def enumerate_bb(H: BivariatePolynomial) -> List[CycleCandidate]:
    """Candidates for vertical loops: roots of H(x,0)-H(x,1) in (0,1).

    Raises DegenerateContinuum when the closing difference vanishes
    identically and ConstantTermNonzero when H(0,0) != 0.  At most n-1
    candidates can exist.
    """
    return _single_loop_enumerate(H, "bb")


def enumerate_aa(H: BivariatePolynomial) -> List[CycleCandidate]:
    """Candidates for horizontal loops: roots of H(0,y)-H(1,y) in (0,1)."""
    return _single_loop_enumerate(H, "aa")


# ------------------------------------------------------------
# Diagonal loop enumeration
# ------------------------------------------------------------


def closing_system(
    H: BivariatePolynomial,
) -> Tuple[BivariatePolynomial, BivariatePolynomial, BivariatePolynomial]:
    """The diagonal closing pair (P, Q) and the reduced partner P+Q.

    P(x,y) = H(0,y) - H(x,1) and Q(x,y) = H(x,0) - H(1,y); their sum drops
    all degree-n monomials, leaving total degree <= n-1.
    """
    left = H.restrict_to_edge("left")
    top = H.restrict_to_edge("top")
    bottom = H.restrict_to_edge("bottom")
    right = H.restrict_to_edge("right")
    P = _embed_y(left) - _embed_x(top)
    Q = _embed_x(bottom) - _embed_y(right)
    return P, Q, P + Q


def _embed_x(p: UnivariatePolynomial) -> BivariatePolynomial:
    return BivariatePolynomial({(d, 0): c for d, c in enumerate(p.coeffs)})


def _embed_y(p: UnivariatePolynomial) -> BivariatePolynomial:
    return BivariatePolynomial({(d, d): c for d, c in enumerate(p.coeffs)})


def require_diagonal_bound_hypotheses(H: BivariatePolynomial) -> None:
    """Check the count-bound hypotheses for the diagonal system.

    The n(n-1) bound needs the homogenized pair free of shared zeros at
    infinity; the cheap sufficient condition is that the x^n and y^n
    coefficients do not both vanish.  Raises LeadingCoefficientsVanish
    otherwise (the enumeration itself still runs without it, but the count
    is then uncertified).
    """
    n = H.degree
    corner = (H.terms.get((n, 0), Fraction(0)), H.terms.get((n, n), Fraction(0)))
    if corner == (0, 0):
        raise LeadingCoefficientsVanish(
            "x^n and y^n coefficients both vanish; the diagonal count bound "
            "is uncertified"
        )


def infinity_intersection_free(H: BivariatePolynomial) -> bool:
    """Whether the homogenized closing pair shares no zero at Z = 0.

    The top-degree forms of P and the reduced partner are binary forms in
    (X, Y); a shared projective zero exists iff their dehomogenizations in
    t = X/Y share a root (checked by gcd) or both vanish at (1:0) (checked
    by degree drop of the X-leading coefficient).
    """
    P, _, Qt = closing_system(H)
    if P.is_zero() or Qt.is_zero():
        return False
    fp = P.top_form()
    fq = Qt.top_form()
    drop_p = fp.degree < P.degree
    drop_q = fq.degree < Qt.degree
    if drop_p and drop_q:
        return False
    g = poly_gcd(fp, fq)
    return g.degree < 1


def enumerate_aba(H: BivariatePolynomial) -> List[CycleCandidate]:
    """Candidates for diagonal cycles from the system P = Q = 0.

    Solves the equivalent pair (P, P+Q), eliminating x by an exact Sylvester
    resultant, isolating the y-roots in (0,1), and back-substituting each
    y into both polynomials; an x-root of P(., y) is accepted when its
    residual in P+Q stays below PAIRING_RESIDUAL.  Every accepted pair is
    filtered for interiority, closing residuals, transversality at all four
    seam points, and pairwise-distinct level pairs.  At most n(n-1)
    candidates can exist when the count is certified.
    """
    _require_zero_at_origin(H)
    n = H.degree
    if n < 1:
        raise InvariantViolation("degree must be at least 1")
    P, Q, Qt = closing_system(H)
    if P.is_zero() or Qt.is_zero():
        raise CommonComponent("closing system degenerates to a continuum")

    res = resultant(P, Qt, "x")  # raises CommonComponent when identically zero
    if res.degree < 1:
        return []
    y_roots = real_roots_in_open_interval(res, 0, 1)
    if not y_roots:
        return []

    p_in_x = P.as_poly_in("x")
    qt_in_x = Qt.as_poly_in("x")
    out: List[CycleCandidate] = []
    for yr in y_roots:
        y_exact = yr.refined_value
        px = UnivariatePolynomial([c.evaluate(y_exact) for c in p_in_x], "x")
        qx = UnivariatePolynomial([c.evaluate(y_exact) for c in qt_in_x], "x")
        if px.is_zero() or qx.is_zero():
            raise CommonComponent("closing system has a one-dimensional fiber")
        for xr in real_roots_in_open_interval(px, 0, 1):
            x_exact = xr.refined_value
            residual = abs(qx.evaluate_float(float(x_exact)))
            if residual > PAIRING_RESIDUAL:
                continue
            out.append(
                _diagonal_candidate(
                    H,
                    "aba",
                    x_exact,
                    y_exact,
                    multiplicity=max(yr.multiplicity, xr.multiplicity),
                    boundary=yr.boundary_ambiguous or xr.boundary_ambiguous,
                )
            )
    out.sort(key=lambda c: c.seam)
    _flag_distinct_levels(out)
    bound = theoretical_bound("aba", n)
    if len(out) > bound:
        raise BoundViolation(f"{len(out)} aba candidates exceed the bound {bound}")
    return out


def enumerate_bab(H: BivariatePolynomial) -> List[CycleCandidate]:
    """Diagonal cycles read with the seam roles exchanged.

    Implemented by running the aba enumeration on H(y, x) and mapping the
    solutions back; the closing system is symmetric under that exchange, so
    the bab candidates occupy the same four glued seam points as the aba
    ones and are labeled by their traversal reading (vertical seam first).
    """
    transposed = enumerate_aba(H.transpose())
    out: List[CycleCandidate] = []
    for cand in transposed:
        xt, yt = cand.exact_seam  # solves the transposed system
        x, y = yt, xt
        out.append(
            _diagonal_candidate(
                H,
                "bab",
                x,
                y,
                multiplicity=cand.multiplicity,
                boundary=cand.boundary_ambiguous,
            )
        )
    out.sort(key=lambda c: c.seam)
    _flag_distinct_levels(out)
    return out


def _diagonal_candidate(
    H: BivariatePolynomial,
    cycle_type: str,
    x: Fraction,
    y: Fraction,
    multiplicity: int,
    boundary: bool,
) -> CycleCandidate:
    res1 = H.evaluate(0, y) - H.evaluate(x, 1)
    res2 = H.evaluate(x, 0) - H.evaluate(1, y)
    if cycle_type == "aba":
        levels = (float(H.evaluate(0, y)), float(H.evaluate(x, 0)))
    else:
        levels = (float(H.evaluate(x, 0)), float(H.evaluate(0, y)))
    transversal = all(
        transversality_check(H, [EdgePoint("left", y), EdgePoint("top", x)])
    )
    gx, gy = H.gradient()
    seams = [(Fraction(0), y), (x, Fraction(1)), (x, Fraction(0)), (Fraction(1), y)]
    nondegenerate = all(
        gx.evaluate(*s) != 0 or gy.evaluate(*s) != 0 for s in seams
    )
    interior = (0 < x < 1) and (0 < y < 1) and not boundary
    return CycleCandidate(
        cycle_type=cycle_type,
        seam=(float(x), float(y)),
        levels=levels,
        filters={
            "interior": interior,
            "closing": max(abs(float(res1)), abs(float(res2))) <= CLOSING_RESIDUAL,
            "transversal": transversal,
            "nondegenerate": nondegenerate,
            "simple": multiplicity == 1,
        },
        multiplicity=multiplicity,
        boundary_ambiguous=boundary,
        exact_seam=(x, y),
    )


def _flag_distinct_levels(candidates: Sequence[CycleCandidate]) -> None:
    """Mark candidates sharing their full level tuple with another one."""
    for i, c in enumerate(candidates):
        distinct = True
        for j, other in enumerate(candidates):
            if i == j:
                continue
            if all(
                abs(a - b) <= LEVEL_DISTINCTNESS
                for a, b in zip(c.levels, other.levels)
            ):
                distinct = False
                break
        c.filters["distinct_levels"] = distinct


ENUMERATORS = {
    "aa": enumerate_aa,
    "bb": enumerate_bb,
    "aba": enumerate_aba,
    "bab": enumerate_bab,
}
