"""Numerical certification of cycle candidates.

The tracer follows a level curve of H through the glued square: arc-length
predictor steps along the tangent direction of X = (-H_y, H_x), Newton
projection back onto the level set, edge events located by bisection on the
step length, and continuation from the glued partner point after each
crossing.  The level re-anchors to H at the entry representative of every
crossing (the diagonal cycle types legitimately run on two level values),
and the jump magnitude is recorded.

`verify_cycle` wraps a trace with the checks a certified cycle must pass:
closure, crossing word, sewing class at every crossing, a positive floor on
the gradient norm along the curve, bounded level drift, and no edge
incidences beyond the declared seam points.

`brute_force_cycle_scan` is the independent oracle used by the test suite:
dense sign scans of the closing equations plus bisection/Newton refinement,
sharing no code path with the resultant-based enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from .enumeration import CycleCandidate, closing_system
from .errors import (
    CornerPoint,
    GradientFloorHit,
    InvariantViolation,
    MaxCrossingsExceeded,
    StartOnCriticalPoint,
    TangencyEncountered,
    TraceError,
)
from .geometry import EdgePoint, FilippovClass, TorusPoint, classify_edge_point
from .polynomials import BivariatePolynomial

CLOSURE_TOL = 1e-6
LEVEL_DRIFT_TOL = 1e-8
GRAD_FLOOR = 1e-8
TANGENCY_TOL = 1e-10
CORNER_TOL = 1e-9
SEAM_MATCH_TOL = 1e-6

_EXPECTED_WORD = {"bb": "b", "aa": "a", "aba": "ba", "bab": "ab"}


class _FloatPoly:
    """Flat term list for fast float evaluation of a bivariate polynomial."""

    __slots__ = ("terms",)

    def __init__(self, p: BivariatePolynomial):
        self.terms = tuple((float(c), k - j, j) for (k, j), c in p.terms.items())

    def __call__(self, x: float, y: float) -> float:
        acc = 0.0
        for c, dx, dy in self.terms:
            acc += c * x**dx * y**dy
        return acc


@dataclass
class Crossing:
    """One seam-crossing event of a traced curve."""

    point: EdgePoint
    letter: str
    filippov: FilippovClass
    level_jump: float


@dataclass
class TracedCurve:
    """Polyline certificate of a level-curve trace on the torus."""

    segments: List[List[TorusPoint]]
    segment_levels: List[float]
    crossings: List[Crossing]
    level: float
    closed: bool
    word: str
    min_gradient_norm: float
    max_level_drift: float
    closure_error: float


@dataclass
class VerificationRecord:
    """Measured outcome of certifying one candidate."""

    ok: bool
    failure: Optional[str] = None
    closed: bool = False
    word: str = ""
    word_matches: bool = False
    all_sewing: bool = False
    seams_matched: bool = False
    min_gradient_norm: float = math.inf
    max_level_drift: float = math.inf
    closure_error: float = math.inf
    level_jumps: Tuple[float, ...] = ()
    detail: str = ""


def _inward_flux(H: BivariatePolynomial, fHx, fHy, point: EdgePoint) -> float:
    x, y = (float(v) for v in point.square_coords())
    if point.edge == "bottom":
        return fHx(x, y)
    if point.edge == "top":
        return -fHx(x, y)
    if point.edge == "left":
        return -fHy(x, y)
    return fHy(x, y)


def trace_level_curve(
    H: BivariatePolynomial,
    start: EdgePoint,
    max_crossings: int = 8,
    *,
    closure_tol: float = CLOSURE_TOL,
    level_drift_tol: float = LEVEL_DRIFT_TOL,
    grad_floor: float = GRAD_FLOOR,
    tangency_tol: float = TANGENCY_TOL,
    h_init: float = 1e-3,
    h_min: float = 1e-6,
    h_max: float = 1e-2,
    step_budget: int = 400_000,
) -> TracedCurve:
    """Follow the level curve of H from a seam point until it closes.

    The direction of travel is the Hamiltonian direction X = (-H_y, H_x),
    entering the square at whichever glued representative of `start` the
    field points inward.  Each edge hit is located to 1e-12, recorded with
    its Filippov class, and the trace continues from the glued partner.

    Stops on closure (within `closure_tol` of the start in the torus
    metric), on `max_crossings`, on a tangency (including corner hits), or
    when the gradient norm falls below `grad_floor`.
    """
    if start.is_corner(CORNER_TOL):
        raise CornerPoint("cannot trace from a glued corner")
    fH = _FloatPoly(H)
    fHx = _FloatPoly(H.partial_x())
    fHy = _FloatPoly(H.partial_y())

    entry = None
    fluxes = []
    for rep in (start, start.partner()):
        flux = _inward_flux(H, fHx, fHy, rep)
        fluxes.append(flux)
        if abs(flux) <= tangency_tol:
            raise TangencyEncountered(
                f"field tangent to the seam at the start ({rep.edge}, t={float(rep.t):.12g})"
            )
        if flux > 0 and entry is None:
            entry = rep
    if entry is None:
        raise TangencyEncountered(
            "seam is attracting at the start point (sliding); no crossing orbit"
        )

    x, y = (float(v) for v in entry.square_coords())
    gx0, gy0 = fHx(x, y), fHy(x, y)
    gnorm0 = math.hypot(gx0, gy0)
    if gnorm0 <= grad_floor:
        raise StartOnCriticalPoint("start lies on a critical point of H")

    level = fH(x, y)
    start_torus = start.torus_point()
    proj_tol = 1e-13 * (1.0 + abs(level))

    def project(px: float, py: float, lvl: float):
        """Newton-project onto {H = lvl}; None when it stalls."""
        for it in range(12):
            v = fH(px, py) - lvl
            if abs(v) <= proj_tol:
                return px, py, it
            gx, gy = fHx(px, py), fHy(px, py)
            g2 = gx * gx + gy * gy
            if g2 < (0.1 * grad_floor) ** 2:
                return None
            px -= v * gx / g2
            py -= v * gy / g2
        return None

    def tangent(px: float, py: float, ref: Optional[Tuple[float, float]]):
        """Unit direction of +-X at (px, py), aligned with `ref` if given."""
        tx, ty = -fHy(px, py), fHx(px, py)
        norm = math.hypot(tx, ty)
        if norm <= grad_floor:
            raise GradientFloorHit(
                f"gradient norm {norm:.3e} below floor at ({px:.6f}, {py:.6f})"
            )
        tx, ty = tx / norm, ty / norm
        if ref is not None and tx * ref[0] + ty * ref[1] < 0:
            tx, ty = -tx, -ty
        return tx, ty

    def inward_direction(point: EdgePoint) -> Tuple[float, float, int]:
        """Unit travel direction entering the square, plus its sign
        relative to the field X (crossing a non-sewing seam legitimately
        reverses the travel orientation along the level curve)."""
        px, py = (float(v) for v in point.square_coords())
        tx, ty = tangent(px, py, None)
        nx, ny = {"bottom": (0, 1), "top": (0, -1), "left": (1, 0), "right": (-1, 0)}[
            point.edge
        ]
        dot = tx * nx + ty * ny
        if abs(dot) <= tangency_tol:
            raise TangencyEncountered(
                f"level curve tangent to edge {point.edge} at t={float(point.t):.12g}"
            )
        return ((tx, ty, 1) if dot > 0 else (-tx, -ty, -1))

    # Segment points keep square-chart coordinates (closed square), so a
    # polyline endpoint on the top edge stays at y = 1 for export.
    segments: List[List[TorusPoint]] = [[TorusPoint(x, y)]]
    segment_levels = [level]
    crossings: List[Crossing] = []
    word = ""
    min_grad = gnorm0
    max_drift = 0.0
    first_level = level

    dx0, dy0, seg_sign = inward_direction(entry)
    direction = (dx0, dy0)
    cur = (x, y)
    h = h_init
    steps = 0

    def outside(p: Tuple[float, float]) -> bool:
        return p[0] < 0.0 or p[0] > 1.0 or p[1] < 0.0 or p[1] > 1.0

    def step_to(base, dirvec, hh, lvl):
        pred = (base[0] + hh * dirvec[0], base[1] + hh * dirvec[1])
        return project(pred[0], pred[1], lvl)

    while True:
        steps += 1
        if steps > step_budget:
            raise TraceError("step budget exhausted; curve did not close")
        res = None
        while h >= h_min:
            res = step_to(cur, direction, h, level)
            if res is not None:
                nx_, ny_, iters = res
                adv = (nx_ - cur[0]) * direction[0] + (ny_ - cur[1]) * direction[1]
                moved = math.hypot(nx_ - cur[0], ny_ - cur[1])
                # Guard against branch jumps and sharp turns: the corrected
                # point must move forward, stay near the predicted arc
                # length, and not turn faster than the step resolves.
                if adv > 0 and moved <= 2.0 * h:
                    tx, ty = -fHy(nx_, ny_), fHx(nx_, ny_)
                    tn = math.hypot(tx, ty)
                    if tn > 0:
                        cosang = seg_sign * (tx * direction[0] + ty * direction[1]) / tn
                        if cosang >= 0.95 or (h <= 4 * h_min and cosang > 0.0):
                            break
            h *= 0.5
            res = None
        if res is None:
            gx, gy = fHx(*cur), fHy(*cur)
            if math.hypot(gx, gy) < 10 * grad_floor:
                raise GradientFloorHit("corrector stalled near a critical point")
            raise TraceError(
                f"step rejected at ({cur[0]:.9g}, {cur[1]:.9g}) "
                f"after {len(crossings)} crossings (word {word!r})"
            )
        nxt = (res[0], res[1])
        iters = res[2]

        if outside(nxt):
            # Bisect the step length to land on the first edge contact.
            h_in, h_out = 0.0, h
            for _ in range(90):
                mid = 0.5 * (h_in + h_out)
                r = step_to(cur, direction, mid, level)
                if r is None:
                    h_out = mid
                    continue
                if outside((r[0], r[1])):
                    h_out = mid
                else:
                    h_in = mid
                if h_out - h_in < 1e-15:
                    break
            hit = step_to(cur, direction, h_in, level) or (cur[0], cur[1], 0)
            ex, ey = hit[0], hit[1]
            edge, t = _nearest_edge(ex, ey)
            if min(t, 1.0 - t) <= CORNER_TOL:
                raise TangencyEncountered("level curve runs into a glued corner")
            point = EdgePoint(edge, t)
            cls = classify_edge_point(H, point, tangency_tol)
            if cls is FilippovClass.TANGENCY:
                raise TangencyEncountered(
                    f"tangential seam contact at ({edge}, t={t:.12g})"
                )
            # Snap the recorded endpoint onto the edge exactly.
            sx, sy = (float(v) for v in point.square_coords())
            segments[-1].append(TorusPoint(sx, sy))

            partner = point.partner()
            px, py = (float(v) for v in partner.square_coords())
            new_level = fH(px, py)
            jump = abs(new_level - level)
            crossings.append(Crossing(point, point.letter, cls, jump))
            word += point.letter

            err = point.torus_point().distance(start_torus)
            if err <= closure_tol:
                return TracedCurve(
                    segments=segments,
                    segment_levels=segment_levels,
                    crossings=crossings,
                    level=first_level,
                    closed=True,
                    word=word,
                    min_gradient_norm=min_grad,
                    max_level_drift=max_drift,
                    closure_error=err,
                )
            if len(crossings) >= max_crossings:
                raise MaxCrossingsExceeded(
                    f"{len(crossings)} crossings without closure (word {word!r})"
                )
            level = new_level
            proj_tol = 1e-13 * (1.0 + abs(level))
            dxp, dyp, seg_sign = inward_direction(partner)
            direction = (dxp, dyp)
            cur = (px, py)
            segments.append([TorusPoint(px, py)])
            segment_levels.append(level)
            h = h_init
            continue

        # Interior step accepted.
        cur = nxt
        segments[-1].append(TorusPoint(cur[0], cur[1]))
        gx, gy = fHx(*cur), fHy(*cur)
        gnorm = math.hypot(gx, gy)
        if gnorm < min_grad:
            min_grad = gnorm
        if gnorm <= grad_floor:
            raise GradientFloorHit(
                f"gradient norm {gnorm:.3e} below floor along the curve"
            )
        drift = abs(fH(*cur) - level)
        if drift > max_drift:
            max_drift = drift
        direction = tangent(cur[0], cur[1], direction)
        if iters <= 2:
            h = min(h * 1.5, h_max)
        elif iters >= 6:
            h = max(h * 0.5, h_min)


def _nearest_edge(x: float, y: float) -> Tuple[str, float]:
    """Closest edge and along-edge coordinate for a near-boundary point."""
    cands = [
        ("left", x, y),
        ("right", 1.0 - x, y),
        ("bottom", y, x),
        ("top", 1.0 - y, x),
    ]
    edge, _, t = min(cands, key=lambda c: abs(c[1]))
    return edge, min(max(t, 0.0), 1.0)


def _cyclic_equivalent(w1: str, w2: str) -> bool:
    if len(w1) != len(w2):
        return False
    if not w1:
        return True
    doubled = w1 + w1
    return w2 in doubled or w2[::-1] in doubled


def verify_cycle(
    H: BivariatePolynomial,
    cand: CycleCandidate,
    *,
    closure_tol: float = CLOSURE_TOL,
    level_drift_tol: float = LEVEL_DRIFT_TOL,
    grad_floor: float = GRAD_FLOOR,
    tangency_tol: float = TANGENCY_TOL,
    seam_match_tol: float = SEAM_MATCH_TOL,
) -> VerificationRecord:
    """Certify one candidate by tracing its level curve.

    Checks, in order: the trace closes; the crossing word matches the
    candidate type up to cyclic rotation; every crossing is sewing; the
    gradient norm stays above `grad_floor`; per-segment level drift stays
    within `level_drift_tol`; and every crossing lands on a declared seam
    point (anything else is an extra edge incidence).
    """
    expected_word = _EXPECTED_WORD[cand.cycle_type]
    declared = []
    for sp in cand.seam_points():
        declared.append((sp.seam, float(sp.t)))
    try:
        trace = trace_level_curve(
            H,
            cand.trace_start(),
            max_crossings=len(expected_word) + 2,
            closure_tol=closure_tol,
            level_drift_tol=level_drift_tol,
            grad_floor=grad_floor,
            tangency_tol=tangency_tol,
        )
    except TangencyEncountered as exc:
        return VerificationRecord(False, failure="tangency", detail=str(exc))
    except GradientFloorHit as exc:
        return VerificationRecord(False, failure="gradient_floor", detail=str(exc))
    except StartOnCriticalPoint as exc:
        return VerificationRecord(False, failure="critical_start", detail=str(exc))
    except MaxCrossingsExceeded as exc:
        return VerificationRecord(
            False, failure="extra_edge_incidence", detail=str(exc)
        )
    except CornerPoint as exc:
        return VerificationRecord(False, failure="corner", detail=str(exc))
    except TraceError as exc:
        return VerificationRecord(False, failure="trace_error", detail=str(exc))

    word_matches = _cyclic_equivalent(trace.word, expected_word)
    all_sewing = all(c.filippov is FilippovClass.SEWING for c in trace.crossings)
    seams_matched = True
    for c in trace.crossings:
        hit = (c.point.seam, float(c.point.t))
        if not any(
            hit[0] == d[0] and abs(hit[1] - d[1]) <= seam_match_tol for d in declared
        ):
            seams_matched = False
    ok = (
        trace.closed
        and word_matches
        and all_sewing
        and seams_matched
        and trace.min_gradient_norm >= grad_floor
        and trace.max_level_drift <= level_drift_tol
        and trace.closure_error <= closure_tol
    )
    failure = None
    if not trace.closed:
        failure = "not_closed"
    elif not word_matches:
        failure = "word_mismatch"
    elif not seams_matched:
        failure = "extra_edge_incidence"
    elif not all_sewing:
        failure = "non_sewing_crossing"
    elif trace.max_level_drift > level_drift_tol:
        failure = "level_drift"
    elif trace.min_gradient_norm < grad_floor:
        failure = "gradient_floor"
    return VerificationRecord(
        ok=ok,
        failure=failure,
        closed=trace.closed,
        word=trace.word,
        word_matches=word_matches,
        all_sewing=all_sewing,
        seams_matched=seams_matched,
        min_gradient_norm=trace.min_gradient_norm,
        max_level_drift=trace.max_level_drift,
        closure_error=trace.closure_error,
        level_jumps=tuple(c.level_jump for c in trace.crossings),
        detail=trace.word,
    )


def level_edge_incidences(
    H: BivariatePolynomial,
    level,
    exclude: Sequence[Tuple[str, object]] = (),
    tol: float = 1e-9,
) -> List[Tuple[str, float]]:
    """Points where the level set {H = level} meets open edge interiors.

    Solves each edge restriction minus the level exactly (rational data) and
    returns every root strictly inside (0, 1), dropping roots within `tol`
    of an excluded (edge, t) seam declaration.  Edges on which the
    restriction is identically equal to the level are reported with t=nan
    (the level contains the whole edge).
    """
    from fractions import Fraction as _F

    from .polynomials import UnivariatePolynomial, real_roots_in_open_interval, to_fraction

    lvl = to_fraction(level) if not isinstance(level, float) else _F(level)
    out: List[Tuple[str, float]] = []
    for edge in ("bottom", "top", "left", "right"):
        rest = H.restrict_to_edge(edge) - UnivariatePolynomial([lvl])
        if rest.is_zero():
            out.append((edge, math.nan))
            continue
        if rest.degree < 1:
            continue
        for root in real_roots_in_open_interval(rest, 0, 1):
            t = float(root.refined_value)
            excluded = any(
                edge == e and abs(t - float(tv)) <= tol for e, tv in exclude
            )
            if not excluded:
                out.append((edge, t))
    return out


# ------------------------------------------------------------
# Independent brute-force oracle
# ------------------------------------------------------------


def _dense_coeffs(p: BivariatePolynomial) -> np.ndarray:
    """Dense float coefficient matrix C[i, j] for x^i y^j."""
    n = p.degree
    C = np.zeros((n + 1, n + 1))
    for (dx, dy), c in p.power_dict().items():
        C[dx, dy] = float(c)
    return C


#: Scan results this close to an edge are treated as boundary cases and
#: dropped, mirroring the isolator's boundary-ambiguity flag.
_SCAN_MARGIN = 1e-9


def _univariate_scan(coeffs: Sequence[float], samples: int) -> List[float]:
    """Sign-scan + bisection roots of a float-coefficient polynomial on (0,1)."""
    cs = np.asarray(coeffs, dtype=float)
    if cs.size == 0 or not np.any(cs):
        return []
    xs = np.linspace(0.0, 1.0, samples + 1)
    vals = npoly.polyval(xs, cs)
    roots = []
    sgn = np.sign(vals)
    for i in range(samples):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if sgn[i] == 0 and 0 < a < 1:
            roots.append(a)
            continue
        if sgn[i] * sgn[i + 1] < 0:
            for _ in range(80):
                m = 0.5 * (a + b)
                fm = npoly.polyval(m, cs)
                if fm == 0:
                    break
                if (fa > 0) != (fm > 0):
                    b, fb = m, fm
                else:
                    a, fa = m, fm
            roots.append(0.5 * (a + b))
    return [r for r in roots if _SCAN_MARGIN < r < 1.0 - _SCAN_MARGIN]


def brute_force_cycle_scan(
    H: BivariatePolynomial, grid: int = 512
) -> Dict[str, list]:
    """Grid sign-scan oracle for every closing system.

    Used by the test suite to cross-validate the resultant-based
    enumeration; shares no algebra with it.  Returns interior solutions of
    each closing equation refined by bisection (1-D) or Newton (2-D).
    """
    if grid < 64:
        raise InvariantViolation("grid must be at least 64")
    out: Dict[str, list] = {"aa": [], "bb": [], "aba": [], "bab": []}

    vert = H.closing_difference("vertical")
    if not vert.is_zero():
        out["bb"] = _univariate_scan(vert.float_coeffs(), grid * grid)
    horiz = H.closing_difference("horizontal")
    if not horiz.is_zero():
        out["aa"] = _univariate_scan(horiz.float_coeffs(), grid * grid)

    P, _, Qt = closing_system(H)
    if P.is_zero() or Qt.is_zero():
        return out
    CP = _dense_coeffs(P)
    CQ = _dense_coeffs(Qt)
    CPx, CPy = npoly.polyder(CP, axis=0), npoly.polyder(CP, axis=1)
    CQx, CQy = npoly.polyder(CQ, axis=0), npoly.polyder(CQ, axis=1)

    xs = np.linspace(0.0, 1.0, grid + 1)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    PV = npoly.polyval2d(X, Y, CP)
    QV = npoly.polyval2d(X, Y, CQ)
    sp = np.signbit(PV)
    sq = np.signbit(QV)
    mixed_p = (
        (sp[:-1, :-1] != sp[1:, :-1])
        | (sp[:-1, :-1] != sp[:-1, 1:])
        | (sp[:-1, :-1] != sp[1:, 1:])
    )
    mixed_q = (
        (sq[:-1, :-1] != sq[1:, :-1])
        | (sq[:-1, :-1] != sq[:-1, 1:])
        | (sq[:-1, :-1] != sq[1:, 1:])
    )
    cells = np.argwhere(mixed_p & mixed_q)

    found: List[Tuple[float, float]] = []
    step = 1.0 / grid
    for ci, cj in cells:
        x0 = xs[ci] + 0.5 * step
        y0 = xs[cj] + 0.5 * step
        sol = _newton2d(x0, y0, CP, CQ, CPx, CPy, CQx, CQy)
        if sol is None:
            continue
        if not (
            _SCAN_MARGIN < sol[0] < 1.0 - _SCAN_MARGIN
            and _SCAN_MARGIN < sol[1] < 1.0 - _SCAN_MARGIN
        ):
            continue
        if any(abs(sol[0] - f[0]) + abs(sol[1] - f[1]) < 1e-8 for f in found):
            continue
        found.append(sol)
    found.sort()
    out["aba"] = found
    out["bab"] = [(y, x) for (x, y) in found]
    return out


def _newton2d(x, y, CP, CQ, CPx, CPy, CQx, CQy) -> Optional[Tuple[float, float]]:
    for _ in range(60):
        f1 = npoly.polyval2d(x, y, CP)
        f2 = npoly.polyval2d(x, y, CQ)
        j11 = npoly.polyval2d(x, y, CPx)
        j12 = npoly.polyval2d(x, y, CPy)
        j21 = npoly.polyval2d(x, y, CQx)
        j22 = npoly.polyval2d(x, y, CQy)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-14:
            return None
        dx = (f1 * j22 - f2 * j12) / det
        dy = (j11 * f2 - j21 * f1) / det
        x -= dx
        y -= dy
        if abs(dx) + abs(dy) < 1e-14:
            break
        if abs(x) > 10 or abs(y) > 10:
            return None
    f1 = npoly.polyval2d(x, y, CP)
    f2 = npoly.polyval2d(x, y, CQ)
    if max(abs(f1), abs(f2)) > 1e-10:
        return None
    return (float(x), float(y))
