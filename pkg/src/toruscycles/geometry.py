"""Torus-as-glued-square geometry and Filippov classification.

The torus is the unit square with opposite edges identified.  The switching
set is the square's boundary; each boundary point pairs with its partner on
the opposite edge (same coordinate along the edge), and corners are
degenerate (all four glue to one point).

The vector field realization is fixed as X = (-H_y, H_x), so cycle geometry
depends only on the level sets of H.  Its seam-normal components are then

  * horizontal seam (bottom/top edges):  X . (0,1) = H_x
  * vertical seam (left/right edges):    X . (1,0) = -H_y

Classification attaches to the glued seam point, so a point and its partner
always classify identically (the sign table flips together with the side
swap when the normal is reversed).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .errors import CornerPoint, InvariantViolation
from .polynomials import BivariatePolynomial, to_fraction

#: |normal component| at or below this is a tangency in float mode.
TANGENCY_TOLERANCE = 1e-10

EDGES = ("bottom", "top", "left", "right")
_OPPOSITE = {"bottom": "top", "top": "bottom", "left": "right", "right": "left"}

#: Inward unit normals per edge.
INWARD_NORMAL = {
    "bottom": (0, 1),
    "top": (0, -1),
    "left": (1, 0),
    "right": (-1, 0),
}


@dataclass(frozen=True)
class TorusPoint:
    """Canonical representative in [0,1) x [0,1) after gluing."""

    x: float
    y: float

    @staticmethod
    def canonicalize(x: float, y: float) -> "TorusPoint":
        return TorusPoint(x % 1.0, y % 1.0)

    def distance(self, other: "TorusPoint") -> float:
        """Torus metric: shortest representative-to-representative distance."""
        dx = abs(self.x - other.x)
        dy = abs(self.y - other.y)
        dx = min(dx, 1.0 - dx)
        dy = min(dy, 1.0 - dy)
        return (dx * dx + dy * dy) ** 0.5


@dataclass(frozen=True)
class EdgePoint:
    """A point on one square edge, parameterized by t in [0,1] along it."""

    edge: str
    t: Union[Fraction, float]

    def __post_init__(self):
        if self.edge not in EDGES:
            raise InvariantViolation(f"unknown edge {self.edge!r}")

    def is_corner(self, tol: float = 0.0) -> bool:
        t = float(self.t)
        return t <= tol or t >= 1.0 - tol

    def partner(self) -> "EdgePoint":
        """The identified point on the opposite edge (same t)."""
        return EdgePoint(_OPPOSITE[self.edge], self.t)

    def square_coords(self) -> Tuple[Union[Fraction, float], Union[Fraction, float]]:
        """(x, y) of this representative inside the closed square."""
        zero, one = self._consts()
        if self.edge == "bottom":
            return (self.t, zero)
        if self.edge == "top":
            return (self.t, one)
        if self.edge == "left":
            return (zero, self.t)
        return (one, self.t)

    def torus_point(self) -> TorusPoint:
        x, y = self.square_coords()
        return TorusPoint.canonicalize(float(x), float(y))

    @property
    def seam(self) -> str:
        """'horizontal' for bottom/top, 'vertical' for left/right."""
        return "horizontal" if self.edge in ("bottom", "top") else "vertical"

    @property
    def letter(self) -> str:
        """Crossing letter: vertical seam crossings are 'a', horizontal 'b'."""
        return "b" if self.seam == "horizontal" else "a"

    def _consts(self):
        if isinstance(self.t, Fraction):
            return Fraction(0), Fraction(1)
        return 0.0, 1.0


class FilippovClass(enum.Enum):
    SEWING = "sewing"
    SLIDING = "sliding"
    ESCAPE = "escape"
    TANGENCY = "tangency"


def seam_flux(H: BivariatePolynomial, point: EdgePoint) -> Union[Fraction, float]:
    """Component of X = (-H_y, H_x) across the seam at one representative.

    Horizontal seam: X_y = H_x; vertical seam: X_x = -H_y.  Measured in the
    fixed direction (0,1) resp. (1,0), independent of which representative
    the point is.
    """
    x, y = point.square_coords()
    exact = isinstance(x, Fraction) or isinstance(y, Fraction)
    if point.seam == "horizontal":
        g = H.partial_x()
    else:
        g = -H.partial_y()
    if exact:
        return g.evaluate(to_fraction(x), to_fraction(y))
    return g.evaluate_float(float(x), float(y))


def classify_edge_point(
    H: BivariatePolynomial,
    point: EdgePoint,
    tangency_tol: float = TANGENCY_TOLERANCE,
) -> FilippovClass:
    """Filippov class of the glued seam point under X = (-H_y, H_x).

    With f0 the seam flux at the bottom/left representative and f1 at the
    top/right one: sewing when f0*f1 > 0, sliding when the flow pushes
    toward the seam from both sides (f0 < 0 < f1), escape for the reverse,
    tangency when either flux is zero (exactly, for rational t; within
    `tangency_tol` for float t).
    """
    if point.is_corner():
        raise CornerPoint(f"corner point on edge {point.edge}")
    low = point if point.edge in ("bottom", "left") else point.partner()
    high = low.partner()
    f0 = seam_flux(H, low)
    f1 = seam_flux(H, high)
    exact = isinstance(f0, Fraction) and isinstance(f1, Fraction)
    tol = 0 if exact else tangency_tol
    if abs(f0) <= tol or abs(f1) <= tol:
        return FilippovClass.TANGENCY
    if (f0 > 0) == (f1 > 0):
        return FilippovClass.SEWING
    if f0 < 0:
        return FilippovClass.SLIDING
    return FilippovClass.ESCAPE


def transversality_check(
    H: BivariatePolynomial,
    points: Sequence[EdgePoint],
    tangency_tol: float = TANGENCY_TOLERANCE,
) -> List[bool]:
    """Whether the field crosses the seam strictly at each point.

    True iff the seam flux is nonzero (beyond tolerance) both at the point
    and at its glued partner.
    """
    out = []
    for p in points:
        if p.is_corner():
            raise CornerPoint(f"corner point on edge {p.edge}")
        f0 = seam_flux(H, p)
        f1 = seam_flux(H, p.partner())
        exact = isinstance(f0, Fraction) and isinstance(f1, Fraction)
        tol = 0 if exact else tangency_tol
        out.append(abs(f0) > tol and abs(f1) > tol)
    return out


def field_at(H: BivariatePolynomial, x: float, y: float) -> Tuple[float, float]:
    """X = (-H_y, H_x) evaluated in floats."""
    return (-H.partial_y().evaluate_float(x, y), H.partial_x().evaluate_float(x, y))
