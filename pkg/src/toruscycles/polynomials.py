"""Exact polynomial arithmetic over the rationals.

Everything the cycle analysis needs algebraically lives here: bivariate
polynomials in the paper-style (k, j) indexing with monomial x^(k-j) y^j,
univariate polynomials with certified real-root isolation (Sturm sequences
plus bisection), square-free decomposition for multiplicities, homogenization,
and Sylvester resultants evaluated by fraction-free (Bareiss) elimination.

Coefficients are `fractions.Fraction` throughout.  Construction, counting and
elimination are exact; floating point only ever enters through optional float
refinement of already-isolated root brackets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import (
    CommonComponent,
    DegreeTooSmall,
    IdenticallyZero,
    InvariantViolation,
)

Scalar = Union[int, float, str, Fraction]

#: Default bracket width for refined roots (two orders below the acceptance
#: tolerances used downstream).
ROOT_REFINE_WIDTH = Fraction(1, 10**12)

#: Roots closer than this to an interval endpoint are reported but flagged
#: ambiguous instead of being silently counted in or out.
BOUNDARY_EPSILON = Fraction(1, 10**9)


def to_fraction(value: Scalar) -> Fraction:
    """Convert supported scalar inputs to an exact Fraction.

    Strings may be "p/q" or decimal literals; both convert exactly.  Floats
    convert via their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        return Fraction(value)
    raise InvariantViolation(f"unsupported scalar type: {type(value)!r}")


# ============================================================
# Univariate polynomials
# ============================================================


class UnivariatePolynomial:
    """Dense univariate polynomial, lowest-degree coefficient first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "variable")

    def __init__(self, coeffs: Iterable[Scalar], variable: str = "x"):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self.variable = variable

    # -- basic structure ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivariatePolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"UnivariatePolynomial(0, var={self.variable!r})"
        parts = [f"{c}*{self.variable}^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "UnivariatePolynomial(" + " + ".join(parts) + ")"

    # -- arithmetic ------------------------------------------------------

    def __neg__(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial([-c for c in self.coeffs], self.variable)

    def __add__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return UnivariatePolynomial(out, self.variable)

    def __sub__(self, other: "UnivariatePolynomial") -> "UnivariatePolynomial":
        return self + (-other)

    def __mul__(self, other) -> "UnivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            return UnivariatePolynomial([c * other for c in self.coeffs], self.variable)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UnivariatePolynomial(out, self.variable)

    __rmul__ = __mul__

    def divmod(self, other: "UnivariatePolynomial") -> Tuple["UnivariatePolynomial", "UnivariatePolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        div = other.coeffs
        dd = len(div) - 1
        lead = div[-1]
        quo = [Fraction(0)] * max(0, len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c / lead
            quo[i - dd] = q
            for k in range(dd + 1):
                rem[i - dd + k] -= q * div[k]
        return (
            UnivariatePolynomial(quo, self.variable),
            UnivariatePolynomial(rem[:dd] if dd else [], self.variable),
        )

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial(
            [c * i for i, c in enumerate(self.coeffs)][1:], self.variable
        )

    def evaluate(self, x: Scalar) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def float_coeffs(self) -> List[float]:
        return [float(c) for c in self.coeffs]

    def primitive_part(self) -> "UnivariatePolynomial":
        """Scale by a positive rational so coefficients are coprime integers."""
        if self.is_zero():
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        nums = [int(c * den) for c in self.coeffs]
        g = math.gcd(*nums)
        if g:
            nums = [n // g for n in nums]
        return UnivariatePolynomial(nums, self.variable)

    def monic(self) -> "UnivariatePolynomial":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return UnivariatePolynomial([c / lead for c in self.coeffs], self.variable)


def gcd(p: UnivariatePolynomial, q: UnivariatePolynomial) -> UnivariatePolynomial:
    """Monic polynomial gcd by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.primitive_part() if not r.is_zero() else r
    return a.monic() if not a.is_zero() else a


def squarefree_decomposition(p: UnivariatePolynomial) -> List[Tuple[UnivariatePolynomial, int]]:
    """Yun's algorithm: return [(factor, multiplicity)] with factors square-free.

    The product of factor^multiplicity reproduces p up to a constant.
    """
    if p.is_zero():
        raise IdenticallyZero("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = gcd(p, dp)
    if a.degree == 0:
        return [(p.monic(), 1)]
    out: List[Tuple[UnivariatePolynomial, int]] = []
    b, _ = p.divmod(a)
    c, _ = dp.divmod(a)
    d = c - b.derivative()
    i = 1
    while not (b.degree == 0):
        f = gcd(b, d)
        if f.degree > 0:
            out.append((f.monic(), i))
        b, _ = b.divmod(f)
        c, _ = d.divmod(f)
        d = c - b.derivative()
        i += 1
    return out


# ------------------------------------------------------------
# Sturm sequences and certified root isolation
# ------------------------------------------------------------


def sturm_sequence(p: UnivariatePolynomial) -> List[UnivariatePolynomial]:
    """Standard Sturm chain p, p', -rem(...), each primitive-normalized.

    Primitive normalization rescales by positive rationals only, which keeps
    sign counts intact while containing coefficient growth.
    """
    seq = [p.primitive_part(), p.derivative().primitive_part()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        _, r = seq[-2].divmod(seq[-1])
        if r.is_zero():
            break
        seq.append((-r).primitive_part())
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values: Sequence[Fraction]) -> int:
    nonzero = [v for v in values if v != 0]
    return sum(
        1 for a, b in zip(nonzero, nonzero[1:]) if (a > 0) != (b > 0)
    )


def _sturm_count_half_open(seq: Sequence[UnivariatePolynomial], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in (lo, hi] for a square-free polynomial."""
    va = _sign_changes([s.evaluate(lo) for s in seq])
    vb = _sign_changes([s.evaluate(hi) for s in seq])
    return va - vb


def count_real_roots_in(p: UnivariatePolynomial, lo: Scalar, hi: Scalar) -> int:
    """Distinct real roots of p in the open interval (lo, hi)."""
    if p.is_zero():
        raise IdenticallyZero("root count of the zero polynomial")
    lo = to_fraction(lo)
    hi = to_fraction(hi)
    if not lo < hi:
        raise InvariantViolation("need lo < hi")
    sf = _squarefree_part(p)
    seq = sturm_sequence(sf)
    n = _sturm_count_half_open(seq, lo, hi)
    if sf.evaluate(hi) == 0:
        n -= 1
    return n


def _squarefree_part(p: UnivariatePolynomial) -> UnivariatePolynomial:
    g = gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, _ = p.divmod(g)
    return q


@dataclass
class IsolatedRoot:
    """A certified real root: open bracket, refined value, multiplicity.

    The bracket of a root is disjoint from every other root's bracket.  A
    root whose bracket sits within BOUNDARY_EPSILON of an interval endpoint
    is flagged `boundary_ambiguous`; callers decide how to treat it.
    """

    bracket: Tuple[Fraction, Fraction]
    refined_value: Fraction
    multiplicity: int
    certified: bool = True
    boundary_ambiguous: bool = False

    @property
    def value(self) -> float:
        return float(self.refined_value)


def _bisect_root(
    sf: UnivariatePolynomial,
    lo: Fraction,
    hi: Fraction,
    width: Fraction,
) -> Tuple[Fraction, Fraction]:
    """Shrink a bracket with opposite endpoint signs around its single root.

    Plain sign bisection; if a midpoint is an exact rational root the bracket
    collapses around it immediately.
    """
    flo = sf.evaluate(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = sf.evaluate(mid)
        if fm == 0:
            half = width / 2
            return (mid - half, mid + half)
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return (lo, hi)


def real_roots_in_open_interval(
    p: UnivariatePolynomial,
    lo: Scalar,
    hi: Scalar,
    refine_width: Fraction = ROOT_REFINE_WIDTH,
    boundary_epsilon: Fraction = BOUNDARY_EPSILON,
) -> List[IsolatedRoot]:
    """Every real root of p in (lo, hi), isolated, refined and certified.

    Counting uses Sturm sequences on the square-free factors, so the
    returned list is provably complete.  Multiplicities come from the
    square-free decomposition.  Roots within `boundary_epsilon` of lo or hi
    are flagged ambiguous rather than dropped.
    """
    if p.is_zero():
        raise IdenticallyZero("cannot isolate roots of the zero polynomial")
    lo = to_fraction(lo)
    hi = to_fraction(hi)
    if not lo < hi:
        raise InvariantViolation("need lo < hi")
    if p.degree == 0:
        return []

    roots: List[Tuple[IsolatedRoot, UnivariatePolynomial]] = []
    for factor, mult in squarefree_decomposition(p):
        if factor.degree == 0:
            continue
        seq = sturm_sequence(factor)

        def count_open(a: Fraction, b: Fraction) -> int:
            n = _sturm_count_half_open(seq, a, b)
            if factor.evaluate(b) == 0:
                n -= 1
            return n

        def emit(bracket: Tuple[Fraction, Fraction], value: Fraction) -> None:
            roots.append(
                (
                    IsolatedRoot(
                        bracket,
                        value,
                        mult,
                        True,
                        _near_boundary(value, lo, hi, boundary_epsilon),
                    ),
                    factor,
                )
            )

        stack = [(lo, hi, count_open(lo, hi))]
        while stack:
            a, b, n = stack.pop()
            if n == 0:
                continue
            if n >= 2:
                mid = (a + b) / 2
                if factor.evaluate(mid) == 0:
                    half = min(refine_width, (b - a) / 4) / 2
                    emit((mid - half, mid + half), mid)
                stack.append((a, mid, count_open(a, mid)))
                stack.append((mid, b, count_open(mid, b)))
                continue
            # Exactly one root in the open interval.  Clean up endpoints that
            # are themselves roots (possible at lo, hi, or former midpoints)
            # without losing the interior root, then sign-bisect; the factor
            # is square-free, so the single root forces a sign change.
            while factor.evaluate(a) == 0:
                step = (b - a) / 4
                if count_open(a, a + step) == 0:
                    a = a + step
                else:
                    b = a + step
            while factor.evaluate(b) == 0:
                step = (b - a) / 4
                if count_open(b - step, b) == 0:
                    b = b - step
                else:
                    a = b - step
            blo, bhi = _bisect_root(factor, a, b, refine_width)
            value = (blo + bhi) / 2
            exact = _rational_root_in(factor, blo, bhi)
            if exact is not None:
                value = exact
            emit((blo, bhi), value)

    # Distinct roots must carry disjoint brackets.  Roots of coprime factors
    # closer than the refinement width are astronomically rare; flag instead
    # of chasing them to unbounded depth.
    roots.sort(key=lambda rf: rf[0].refined_value)
    for i in range(len(roots) - 1):
        ra, rb = roots[i][0], roots[i + 1][0]
        if ra.bracket[1] > rb.bracket[0]:
            ra.certified = False
            rb.certified = False
    return [r for r, _ in roots]


def _near_boundary(v: Fraction, lo: Fraction, hi: Fraction, eps: Fraction) -> bool:
    return (v - lo) <= eps or (hi - v) <= eps


def _rational_root_in(p: UnivariatePolynomial, lo: Fraction, hi: Fraction):
    """Exact rational root of p inside [lo, hi], if one exists.

    The denominator of a rational root of the primitive part divides the
    leading coefficient, so for a narrow bracket only a handful of
    candidates exist per divisor.
    """
    prim = p.primitive_part()
    if prim.is_zero() or prim.degree == 0:
        return None
    if lo <= 0 <= hi and prim.coeffs[0] == 0:
        return Fraction(0)
    den = int(prim.coeffs[-1])
    if abs(den) > 10**9:
        return None  # factoring the leading coefficient would cost too much
    for q in _divisors(abs(den)):
        lo_p = math.ceil(lo * q)
        hi_p = math.floor(hi * q)
        if hi_p - lo_p > 4:
            continue  # wide bracket; skip the scan, midpoint is fine
        for pnum in range(lo_p, hi_p + 1):
            cand = Fraction(pnum, q)
            if lo <= cand <= hi and prim.evaluate(cand) == 0:
                return cand
    return None


def _divisors(n: int) -> List[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ============================================================
# Bivariate polynomials, (k, j) indexing with monomial x^(k-j) y^j
# ============================================================


class BivariatePolynomial:
    """Coefficient table a[k, j] for sum a_{k,j} x^(k-j) y^j, 0 <= j <= k.

    `degree` is tight: some a[degree, j] is nonzero unless the polynomial is
    identically zero (then degree 0).  The constant term a[0, 0] is allowed
    and defaults to zero; enumeration modules insist it vanishes.
    """

    __slots__ = ("terms", "degree", "_float_terms")

    def __init__(self, terms: Mapping[Tuple[int, int], Scalar]):
        clean: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), v in terms.items():
            if not (0 <= j <= k):
                raise InvariantViolation(f"term index (k={k}, j={j}) violates 0 <= j <= k")
            fv = to_fraction(v)
            if fv != 0:
                clean[(k, j)] = fv
        self.terms = clean
        self.degree = max((k for (k, _) in clean), default=0)
        self._float_terms: Tuple[Tuple[float, int, int], ...] | None = None

    # -- construction helpers -------------------------------------------

    @staticmethod
    def zero() -> "BivariatePolynomial":
        return BivariatePolynomial({})

    @staticmethod
    def from_power_dict(powers: Mapping[Tuple[int, int], Scalar]) -> "BivariatePolynomial":
        """Build from {(x_power, y_power): coeff}."""
        return BivariatePolynomial({(dx + dy, dy): v for (dx, dy), v in powers.items()})

    def power_dict(self) -> Dict[Tuple[int, int], Fraction]:
        """Return {(x_power, y_power): coeff}."""
        return {(k - j, j): c for (k, j), c in self.terms.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "BivariatePolynomial(0)"
        bits = [
            f"{c}*x^{k - j}*y^{j}"
            for (k, j), c in sorted(self.terms.items())
        ]
        return "BivariatePolynomial(" + " + ".join(bits) + ")"

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.terms)
        for kj, c in other.terms.items():
            out[kj] = out.get(kj, Fraction(0)) + c
        return BivariatePolynomial(out)

    def __sub__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        return self + (-other)

    def __neg__(self) -> "BivariatePolynomial":
        return BivariatePolynomial({kj: -c for kj, c in self.terms.items()})

    def __mul__(self, other) -> "BivariatePolynomial":
        if isinstance(other, (int, Fraction)):
            return BivariatePolynomial({kj: c * other for kj, c in self.terms.items()})
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k1, j1), c1 in self.terms.items():
            for (k2, j2), c2 in other.terms.items():
                kj = (k1 + k2, j1 + j2)
                out[kj] = out.get(kj, Fraction(0)) + c1 * c2
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    # -- evaluation -------------------------------------------------------

    def evaluate(self, x: Scalar, y: Scalar) -> Fraction:
        x = to_fraction(x)
        y = to_fraction(y)
        acc = Fraction(0)
        for (k, j), c in self.terms.items():
            acc += c * x ** (k - j) * y**j
        return acc

    def evaluate_float(self, x: float, y: float) -> float:
        if self._float_terms is None:
            self._float_terms = tuple(
                (float(c), k - j, j) for (k, j), c in self.terms.items()
            )
        acc = 0.0
        for c, dx, dy in self._float_terms:
            acc += c * x**dx * y**dy
        return acc

    # -- calculus and restrictions -----------------------------------------

    def partial_x(self) -> "BivariatePolynomial":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), c in self.terms.items():
            if k - j >= 1:
                out[(k - 1, j)] = out.get((k - 1, j), Fraction(0)) + c * (k - j)
        return BivariatePolynomial(out)

    def partial_y(self) -> "BivariatePolynomial":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), c in self.terms.items():
            if j >= 1:
                out[(k - 1, j - 1)] = out.get((k - 1, j - 1), Fraction(0)) + c * j
        return BivariatePolynomial(out)

    def gradient(self) -> Tuple["BivariatePolynomial", "BivariatePolynomial"]:
        return self.partial_x(), self.partial_y()

    def transpose(self) -> "BivariatePolynomial":
        """Swap the roles of x and y: H(x, y) -> H(y, x)."""
        return BivariatePolynomial({(k, k - j): c for (k, j), c in self.terms.items()})

    def restrict_to_edge(self, edge: str) -> UnivariatePolynomial:
        """Restrict to one square edge: bottom y=0, top y=1, left x=0, right x=1."""
        if edge in ("bottom", "top"):
            yv = 0 if edge == "bottom" else 1
            out = [Fraction(0)] * (self.degree + 1)
            for (k, j), c in self.terms.items():
                if yv == 0 and j != 0:
                    continue
                out[k - j] += c * (1 if j == 0 else yv**j)
            return UnivariatePolynomial(out, "x")
        if edge in ("left", "right"):
            xv = 0 if edge == "left" else 1
            out = [Fraction(0)] * (self.degree + 1)
            for (k, j), c in self.terms.items():
                if xv == 0 and k - j != 0:
                    continue
                out[j] += c * (1 if k == j else xv ** (k - j))
            return UnivariatePolynomial(out, "y")
        raise InvariantViolation(f"unknown edge {edge!r}")

    def closing_difference(self, direction: str) -> UnivariatePolynomial:
        """Seam mismatch of H: vertical H(x,0)-H(x,1), horizontal H(0,y)-H(1,y).

        Either difference drops the top-degree edge terms, so the result has
        degree <= degree - 1; that cancellation is asserted.
        """
        if direction == "vertical":
            diff = self.restrict_to_edge("bottom") - self.restrict_to_edge("top")
        elif direction == "horizontal":
            diff = self.restrict_to_edge("left") - self.restrict_to_edge("right")
        else:
            raise InvariantViolation(f"unknown direction {direction!r}")
        if diff.degree >= self.degree and self.degree >= 1:
            raise InvariantViolation(
                "closing difference failed to cancel the top-degree term"
            )
        return diff

    # -- homogenization ----------------------------------------------------

    def homogenize(self, target_degree: int) -> Dict[Tuple[int, int, int], Fraction]:
        """Z^d * p(X/Z, Y/Z) as a table {(X_power, Y_power, Z_power): coeff}."""
        if target_degree < self.degree:
            raise DegreeTooSmall(
                f"target degree {target_degree} below polynomial degree {self.degree}"
            )
        out: Dict[Tuple[int, int, int], Fraction] = {}
        for (k, j), c in self.terms.items():
            out[(k - j, j, target_degree - k)] = c
        return out

    @staticmethod
    def dehomogenize(table: Mapping[Tuple[int, int, int], Scalar]) -> "BivariatePolynomial":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (dx, dy, _), c in table.items():
            kj = (dx + dy, dy)
            out[kj] = out.get(kj, Fraction(0)) + to_fraction(c)
        return BivariatePolynomial(out)

    def top_form(self) -> UnivariatePolynomial:
        """Top-degree part as a binary form, returned as coefficients of t=X/Y.

        The form sum c_d X^d Y^(n-d) maps to the polynomial sum c_d t^d plus
        the information whether (1:0) is a root (leading X^n coefficient zero),
        which callers recover from the degree drop.
        """
        n = self.degree
        out = [Fraction(0)] * (n + 1)
        for (k, j), c in self.terms.items():
            if k == n:
                out[k - j] += c
        return UnivariatePolynomial(out, "t")

    def as_poly_in(self, variable: str) -> List[UnivariatePolynomial]:
        """View as polynomial in `variable`; entry i is the coefficient of
        variable^i, itself a univariate polynomial in the other variable."""
        other = "y" if variable == "x" else "x"
        bucket: Dict[int, Dict[int, Fraction]] = {}
        for (k, j), c in self.terms.items():
            dx, dy = k - j, j
            main, sec = (dx, dy) if variable == "x" else (dy, dx)
            bucket.setdefault(main, {})[sec] = bucket.setdefault(main, {}).get(sec, Fraction(0)) + c
        if not bucket:
            return []
        top = max(bucket)
        out = []
        for i in range(top + 1):
            row = bucket.get(i, {})
            size = max(row, default=0) + 1
            cs = [Fraction(0)] * size
            for d, c in row.items():
                cs[d] = c
            out.append(UnivariatePolynomial(cs, other))
        while out and out[-1].is_zero():
            out.pop()
        return out


# ============================================================
# Sylvester resultant via fraction-free (Bareiss) elimination
# ============================================================
#
# The elimination runs over Z[t]: inputs are rescaled to integer
# coefficients (positive scaling leaves the root set untouched), matrix
# entries are plain int lists, and the Bareiss identity guarantees every
# division is exact in Z[t].


def _ipoly_trim(p: List[int]) -> List[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _ipoly_mul(a: List[int], b: List[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _ipoly_trim(out)


def _ipoly_sub(a: List[int], b: List[int]) -> List[int]:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _ipoly_trim(out)


def _ipoly_divexact(a: List[int], b: List[int]) -> List[int]:
    """Exact division in Z[t]; raises if the division leaves a remainder."""
    if not b:
        raise ZeroDivisionError("exact division by zero polynomial")
    if not a:
        return []
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    if len(rem) - 1 < db:
        raise ArithmeticError("inexact polynomial division (degree)")
    quo = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        if c % lead != 0:
            raise ArithmeticError("inexact polynomial division (leading term)")
        q = c // lead
        quo[i - db] = q
        for k2 in range(db + 1):
            rem[i - db + k2] -= q * b[k2]
    if any(rem):
        raise ArithmeticError("inexact polynomial division (remainder)")
    return _ipoly_trim(quo)


def _bareiss_determinant(matrix: List[List[List[int]]]) -> List[int]:
    """Determinant of a square matrix over Z[t] by fraction-free elimination."""
    n = len(matrix)
    if n == 0:
        return [1]
    m = [row[:] for row in matrix]
    sign = 1
    prev: List[int] = [1]
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((r for r in range(k + 1, n) if m[r][k]), None)
            if pivot is None:
                return []
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ipoly_sub(
                    _ipoly_mul(m[k][k], m[i][j]), _ipoly_mul(m[i][k], m[k][j])
                )
                m[i][j] = _ipoly_divexact(num, prev) if num else []
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = [-c for c in det]
    return det


def _integer_coeff_view(p: BivariatePolynomial, variable: str) -> List[List[int]]:
    """Coefficients of p in `variable` as integer lists, after clearing
    denominators with one positive global factor."""
    coeffs = p.as_poly_in(variable)
    dens = [c.denominator for u in coeffs for c in u.coeffs]
    scale = math.lcm(*dens) if dens else 1
    rows: List[List[int]] = []
    for u in coeffs:
        rows.append(_ipoly_trim([int(c * scale) for c in u.coeffs]))
    return rows


def resultant(
    p: BivariatePolynomial, q: BivariatePolynomial, eliminate: str
) -> UnivariatePolynomial:
    """Sylvester resultant of p and q with respect to `eliminate`.

    Returned up to a positive rational scale (inputs are rescaled to integer
    coefficients first), which preserves roots and the identically-zero test.
    Raises CommonComponent when the resultant vanishes identically.
    """
    if eliminate not in ("x", "y"):
        raise InvariantViolation(f"cannot eliminate {eliminate!r}")
    if p.is_zero() or q.is_zero():
        raise InvariantViolation("resultant of the zero polynomial")
    other = "y" if eliminate == "x" else "x"
    pc = _integer_coeff_view(p, eliminate)
    qc = _integer_coeff_view(q, eliminate)
    m = len(pc) - 1
    n = len(qc) - 1
    if m < 0 or n < 0:
        raise InvariantViolation("resultant of the zero polynomial")
    if m == 0 and n == 0:
        # Neither depends on the eliminated variable; conventional value 1,
        # callers handle this degenerate system themselves.
        return UnivariatePolynomial([1], other)
    if m == 0:
        det = pc[0]
        acc = [1]
        for _ in range(n):
            acc = _ipoly_mul(acc, det)
        out = acc
    elif n == 0:
        det = qc[0]
        acc = [1]
        for _ in range(m):
            acc = _ipoly_mul(acc, det)
        out = acc
    else:
        size = m + n
        rows: List[List[List[int]]] = []
        for r in range(n):
            row: List[List[int]] = [[] for _ in range(size)]
            for i, c in enumerate(pc):
                row[r + (m - i)] = c[:]
            rows.append(row)
        for r in range(m):
            row = [[] for _ in range(size)]
            for i, c in enumerate(qc):
                row[r + (n - i)] = c[:]
            rows.append(row)
        out = _bareiss_determinant(rows)
    res = UnivariatePolynomial(out, other)
    if res.is_zero():
        raise CommonComponent(
            "resultant vanished identically: curves share a component"
        )
    return res
