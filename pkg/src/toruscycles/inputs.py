"""Polynomial input files and built-in integrable families.

The on-disk format is JSON:

    {"degree": n,
     "terms": [{"k": int, "j": int, "value": "p/q" | "decimal" | number}, ...],
     "label": "optional name"}

with the monomial convention x^(k-j) y^j (so j counts the y-power and k the
total degree of the term).  Values given as strings parse exactly: "3/4" as
a rational, "-1.8538" as the exact decimal.  Bare JSON numbers are accepted
and converted through their exact binary value; prefer strings when
exactness matters.

A family file replaces "terms" with a generator clause:

    {"family": {"name": "vertical_ladder", "n": 6, "leading_sign": -1}}

`vertical_ladder(n)` is the degree-n integral a0*x^n + y*prod(x - i/n) whose
vertical closing difference factors as -prod(x - i/n), putting one vertical
loop candidate on every line x = k/n.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Dict, Tuple, Union

from .errors import ParseError
from .polynomials import BivariatePolynomial

#: Example fixture: the degree-3 integral whose diagonal closing system has
#: six interior solutions (x at 0.25, 0.33, ..., 0.65).
CUBIC_SIX_CANDIDATES = {
    (3, 0): "-1.853838675",
    (3, 1): "0.002642824354",
    (3, 2): "-0.5394212632",
    (2, 0): "2.500039387",
    (2, 1): "0.5370427213",
    (1, 0): "-1.071920970",
    (1, 1): "0.2912880768",
}


def cubic_six_candidates() -> BivariatePolynomial:
    """The shipped degree-3 fixture with six diagonal closing solutions."""
    return BivariatePolynomial(CUBIC_SIX_CANDIDATES)


def vertical_ladder(n: int, leading_sign: int = None) -> BivariatePolynomial:
    """Degree-n family a0 x^n + y prod_{i<n}(x - i/n) with a0 = +-1.

    The default sign a0 = (-1)^(n+1) follows the published family; note that
    its k=1 ladder line always carries a zero of the gradient (on the seam
    for n <= 3, interior otherwise), so that candidate never certifies.
    Passing leading_sign=(-1)^n flips the family into one whose n-1 vertical
    loops all certify.
    """
    if n < 1:
        raise ParseError("family degree must be >= 1")
    a0 = Fraction(leading_sign if leading_sign is not None else (-1) ** (n + 1))
    if a0 not in (1, -1):
        raise ParseError("leading_sign must be +1 or -1")
    terms: Dict[Tuple[int, int], Fraction] = {(n, 0): a0}
    prod = [Fraction(1)]
    for i in range(1, n):
        root = Fraction(i, n)
        nxt = [Fraction(0)] * (len(prod) + 1)
        for d, c in enumerate(prod):
            nxt[d] -= root * c
            nxt[d + 1] += c
        prod = nxt
    for d, c in enumerate(prod):
        terms[(d + 1, 1)] = terms.get((d + 1, 1), Fraction(0)) + c
    return BivariatePolynomial(terms)


FAMILIES = {"vertical_ladder": vertical_ladder}


def parse_scalar(value) -> Fraction:
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {value!r}: {exc}") from None
    if isinstance(value, bool):
        raise ParseError(f"bad coefficient {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    raise ParseError(f"bad coefficient {value!r}")


def load_polynomial(path: Union[str, Path]) -> Tuple[BivariatePolynomial, str]:
    """Read a polynomial or family file; returns (polynomial, label)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    return polynomial_from_document(doc, default_label=path.stem)


def polynomial_from_document(doc, default_label: str = "") -> Tuple[BivariatePolynomial, str]:
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    label = doc.get("label", default_label)
    if "family" in doc:
        fam = doc["family"]
        if not isinstance(fam, dict) or "name" not in fam or "n" not in fam:
            raise ParseError("family clause needs 'name' and 'n'")
        name = fam["name"]
        if name not in FAMILIES:
            raise ParseError(f"unknown family {name!r}")
        kwargs = {}
        if "leading_sign" in fam:
            kwargs["leading_sign"] = int(fam["leading_sign"])
        return FAMILIES[name](int(fam["n"]), **kwargs), label
    if "terms" not in doc:
        raise ParseError("document needs 'terms' or 'family'")
    terms: Dict[Tuple[int, int], Fraction] = {}
    for i, entry in enumerate(doc["terms"]):
        if not isinstance(entry, dict) or not {"k", "j", "value"} <= set(entry):
            raise ParseError(f"terms[{i}]: need keys k, j, value")
        k, j = int(entry["k"]), int(entry["j"])
        if not 0 <= j <= k:
            raise ParseError(f"terms[{i}]: need 0 <= j <= k, got k={k}, j={j}")
        key = (k, j)
        if key in terms:
            raise ParseError(f"terms[{i}]: duplicate index (k={k}, j={j})")
        terms[key] = parse_scalar(entry["value"])
    poly = BivariatePolynomial(terms)
    if "degree" in doc and int(doc["degree"]) != poly.degree:
        raise ParseError(
            f"declared degree {doc['degree']} but terms have degree {poly.degree}"
        )
    return poly, label


def polynomial_to_document(p: BivariatePolynomial, label: str = "") -> dict:
    """Canonical JSON document for a polynomial; round-trips exactly."""
    terms = [
        {"k": k, "j": j, "value": f"{c.numerator}/{c.denominator}"}
        for (k, j), c in sorted(p.terms.items())
    ]
    doc = {"degree": p.degree, "terms": terms}
    if label:
        doc["label"] = label
    return doc
