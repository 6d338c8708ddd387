"""Analysis reports: the machine-readable record of one full enumeration run.

`analyze` runs every enumerator on one first integral, optionally certifies
each candidate by tracing, evaluates the quadratic criteria when the degree
is two, and assembles a JSON-serializable report with stable field order.
Identical input, tolerances and seed produce byte-identical reports after
dropping the `meta` block (which carries timing only).

`stress_sweep` is the randomized bound harness: seeded integer-coefficient
integrals, per-trial enumeration counts, histograms, and a hard failure if
any count ever exceeds its theorem bound.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .enumeration import (
    CycleCandidate,
    enumerate_aa,
    enumerate_aba,
    enumerate_bab,
    enumerate_bb,
    infinity_intersection_free,
    theoretical_bound,
)
from .errors import (
    BoundViolation,
    DegenerateDenominator,
    CommonComponent,
    DegenerateContinuum,
    InvariantViolation,
    LeadingCoefficientsVanish,
)
from .inputs import cubic_six_candidates, polynomial_to_document
from .polynomials import BivariatePolynomial
from .quadratic import quadratic_aba_analyze, quadratic_aba_region, quadratic_bb_conditions
from .verification import (
    CLOSURE_TOL,
    GRAD_FLOOR,
    LEVEL_DRIFT_TOL,
    TANGENCY_TOL,
    VerificationRecord,
    verify_cycle,
)

SCHEMA = "toruscycles-report/1"


@dataclass
class AnalysisOptions:
    trace: bool = True
    mode: str = "exact"
    closure_tol: float = CLOSURE_TOL
    level_drift_tol: float = LEVEL_DRIFT_TOL
    grad_floor: float = GRAD_FLOOR
    tangency_tol: float = TANGENCY_TOL
    max_crossings: int = 8
    seed: int = 0


def _candidate_record(cand: CycleCandidate, record: Optional[VerificationRecord]) -> dict:
    out = {
        "seam": [float(v) for v in cand.seam],
        "levels": [float(v) for v in cand.levels],
        "multiplicity": cand.multiplicity,
        "boundary_ambiguous": cand.boundary_ambiguous,
        "tolerance_regime": "exact" if cand.exact_seam is not None else "float",
        "filters": dict(cand.filters),
    }
    if record is None:
        out["verification"] = None
    else:
        out["verification"] = {
            "ok": record.ok,
            "failure": record.failure,
            "closed": record.closed,
            "word": record.word,
            "all_sewing": record.all_sewing,
            "min_gradient_norm": _finite(record.min_gradient_norm),
            "max_level_drift": _finite(record.max_level_drift),
            "closure_error": _finite(record.closure_error),
            "level_jumps": [float(j) for j in record.level_jumps],
        }
    return out


def _finite(v: float):
    return float(v) if math.isfinite(v) else None


def _enumerate_section(H, cycle_type, enumerator, opts: AnalysisOptions) -> Tuple[dict, List[CycleCandidate]]:
    section: dict = {"theoretical_bound": theoretical_bound(cycle_type, H.degree)}
    try:
        candidates = enumerator(H)
    except DegenerateContinuum as exc:
        section.update(
            {"degenerate_continuum": True, "detail": str(exc), "count": None, "candidates": []}
        )
        return section, []
    except CommonComponent as exc:
        section.update(
            {"common_component": True, "detail": str(exc), "count": None, "candidates": []}
        )
        return section, []
    except LeadingCoefficientsVanish as exc:
        section.update(
            {"leading_coefficients_vanish": True, "detail": str(exc), "count": None, "candidates": []}
        )
        return section, []
    section["degenerate_continuum"] = False
    records: List[Optional[VerificationRecord]] = []
    for cand in candidates:
        rec = None
        if opts.trace:
            rec = verify_cycle(
                H,
                cand,
                closure_tol=opts.closure_tol,
                level_drift_tol=opts.level_drift_tol,
                grad_floor=opts.grad_floor,
                tangency_tol=opts.tangency_tol,
            )
            cand.filters["verified"] = rec.ok
            cand.verification = rec
        records.append(rec)
    section["count"] = len(candidates)
    if opts.trace:
        section["verified_count"] = sum(1 for r in records if r and r.ok)
    section["candidates"] = [
        _candidate_record(c, r) for c, r in zip(candidates, records)
    ]
    if len(candidates) > section["theoretical_bound"]:
        raise BoundViolation(
            f"{cycle_type}: {len(candidates)} candidates exceed bound "
            f"{section['theoretical_bound']}"
        )
    return section, candidates


def _quadratic_section(H: BivariatePolynomial, aba_cands: List[CycleCandidate]) -> dict:
    a = H.terms.get((2, 0), Fraction(0))
    b = H.terms.get((2, 1), Fraction(0))
    c = H.terms.get((2, 2), Fraction(0))
    bb = quadratic_bb_conditions(a, b, c)
    out: dict = {
        "coefficients": {"a": str(a), "b": str(b), "c": str(c)},
        "bb_conditions": dict(bb.conditions),
        "bb_exists": bb.exists,
    }
    if bb.exists:
        out["bb_witness"] = {"x0": float(bb.x0), "level": float(bb.level)}
    try:
        analysis = quadratic_aba_analyze(a, b, c)
        region = quadratic_aba_region(a, b, c)
        pairs = [[float(x), float(y)] for x, y in analysis.solution_pairs]
        out["aba_closed_form"] = {
            "radicand": float(analysis.radicand),
            "radical": analysis.radical,
            "cubic_coefficients": [str(cf) for cf in analysis.radicand_cubic.coeffs],
            "cubic_discriminant": float(analysis.cubic_discriminant),
            "cubic_roots": analysis.cubic_roots,
            "solution_pairs": pairs,
            "pair_interior": analysis.pair_interior,
            "degenerate": analysis.degenerate,
            "exists_verdict": analysis.exists_verdict,
        }
        out["aba_region"] = {"case": region.case, "exists": region.exists}
        interior_pairs = [
            p for p, ok in zip(pairs, analysis.pair_interior) if ok
        ]
        enum_pairs = sorted((c_.seam[0], c_.seam[1]) for c_ in aba_cands)
        closed_pairs = sorted((p[0], p[1]) for p in interior_pairs)
        agree = len(enum_pairs) == len(closed_pairs) and all(
            abs(e[0] - f[0]) <= 1e-10 and abs(e[1] - f[1]) <= 1e-10
            for e, f in zip(enum_pairs, closed_pairs)
        )
        out["aba_cross_check_consistent"] = agree
    except DegenerateDenominator as exc:
        out["aba_closed_form"] = {"unavailable": str(exc)}
    return out


def analyze(
    H: BivariatePolynomial,
    label: str = "",
    opts: Optional[AnalysisOptions] = None,
) -> Tuple[dict, Dict[str, List[CycleCandidate]]]:
    """Run every enumerator (plus verification) and build the report.

    Returns (report, candidates_by_type); the report is JSON-serializable
    with deterministic field order.
    """
    opts = opts or AnalysisOptions()
    t0 = time.time()
    doc = polynomial_to_document(H, label)
    digest = hashlib.sha256(
        json.dumps(doc, sort_keys=True).encode()
    ).hexdigest()
    report: dict = {
        "schema": SCHEMA,
        "label": label,
        "input_hash": digest,
        "degree": H.degree,
        "monomial_convention": "a[k,j] * x^(k-j) * y^j",
        "mode": opts.mode,
        "tolerances": {
            "closure": opts.closure_tol,
            "level_drift": opts.level_drift_tol,
            "grad_floor": opts.grad_floor,
            "tangency": opts.tangency_tol,
        },
        "polynomial": doc,
    }
    sections = {}
    by_type: Dict[str, List[CycleCandidate]] = {}
    for cycle_type, enumerator in (
        ("aa", enumerate_aa),
        ("bb", enumerate_bb),
        ("aba", enumerate_aba),
        ("bab", enumerate_bab),
    ):
        section, cands = _enumerate_section(H, cycle_type, enumerator, opts)
        if cycle_type == "aba" and section.get("count") is not None:
            section["infinity_intersection_free"] = infinity_intersection_free(H)
        sections[cycle_type] = section
        by_type[cycle_type] = cands
    report["types"] = sections
    if H.degree == 2:
        report["quadratic"] = _quadratic_section(H, by_type["aba"])
    report["meta"] = {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "runtime_seconds": round(time.time() - t0, 6),
    }
    return report, by_type


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, allow_nan=False) + "\n"


# ------------------------------------------------------------
# Randomized bound stress
# ------------------------------------------------------------


def random_integral(degree: int, rng: random.Random) -> BivariatePolynomial:
    """Random integer-coefficient integral with H(0,0)=0 and tight degree.

    Coefficients are drawn from [-9, 9]; the two corner coefficients of the
    top form are forced nonzero so the diagonal system stays nondegenerate
    at infinity (integer coefficients keep the exact elimination cheap).
    """
    terms: Dict[Tuple[int, int], int] = {}
    for k in range(1, degree + 1):
        for j in range(k + 1):
            terms[(k, j)] = rng.randint(-9, 9)
    while terms[(degree, 0)] == 0:
        terms[(degree, 0)] = rng.randint(-9, 9)
    while terms[(degree, degree)] == 0:
        terms[(degree, degree)] = rng.randint(-9, 9)
    return BivariatePolynomial(terms)


def stress_trial(degree: int, seed: int, index: int, inject_example: bool) -> dict:
    """Counts per type for one seeded trial; trial 0 can inject the cubic
    fixture at degree 3 (the sharpness witness)."""
    if inject_example and index == 0 and degree == 3:
        H = cubic_six_candidates()
        label = "injected-cubic-fixture"
    else:
        rng = random.Random(f"{seed}:{index}")
        H = random_integral(degree, rng)
        label = f"trial-{index}"
    counts: Dict[str, Optional[int]] = {}
    skips: Dict[str, str] = {}
    for cycle_type, enumerator in (
        ("aa", enumerate_aa),
        ("bb", enumerate_bb),
        ("aba", enumerate_aba),
        ("bab", enumerate_bab),
    ):
        try:
            counts[cycle_type] = len(enumerator(H))
        except (DegenerateContinuum, CommonComponent, LeadingCoefficientsVanish) as exc:
            counts[cycle_type] = None
            skips[cycle_type] = type(exc).__name__
    return {"index": index, "label": label, "counts": counts, "skips": skips}


def stress_sweep(
    degree: int,
    trials: int,
    seed: int,
    inject_example: bool = True,
    workers: int = 1,
) -> dict:
    """Run seeded random trials, aggregate histograms, assert the bounds.

    Hypothesis-violating trials (degenerate continua, shared components)
    are logged and excluded from the bound assertion.  A bound violation
    raises BoundViolation: the theorems preclude it, so it means a bug.
    """
    if not 1 <= degree <= 8:
        raise InvariantViolation("stress degree must be in [1, 8]")
    if trials < 1:
        raise InvariantViolation("need at least one trial")
    t0 = time.time()
    indices = list(range(trials))
    if workers > 1:
        import multiprocessing as mp

        with mp.Pool(workers) as pool:
            results = pool.starmap(
                stress_trial,
                [(degree, seed, i, inject_example) for i in indices],
                chunksize=max(1, trials // (workers * 8)),
            )
    else:
        results = [stress_trial(degree, seed, i, inject_example) for i in indices]
    results.sort(key=lambda r: r["index"])

    bounds = {t: theoretical_bound(t, degree) for t in ("aa", "bb", "aba", "bab")}
    histograms: Dict[str, Dict[int, int]] = {t: {} for t in bounds}
    max_counts = {t: 0 for t in bounds}
    excluded: Dict[str, int] = {t: 0 for t in bounds}
    argmax = {t: None for t in bounds}
    for r in results:
        for t, cnt in r["counts"].items():
            if cnt is None:
                excluded[t] += 1
                continue
            histograms[t][cnt] = histograms[t].get(cnt, 0) + 1
            if cnt > max_counts[t]:
                max_counts[t] = cnt
                argmax[t] = r["label"]
            if cnt > bounds[t]:
                raise BoundViolation(
                    f"{t} count {cnt} exceeds bound {bounds[t]} on {r['label']}"
                )
    return {
        "schema": "toruscycles-stress/1",
        "degree": degree,
        "trials": trials,
        "seed": seed,
        "bounds": bounds,
        "max_counts": max_counts,
        "max_count_witness": argmax,
        "histograms": {t: {str(k): v for k, v in sorted(h.items())} for t, h in histograms.items()},
        "excluded_trials": excluded,
        "runtime_seconds": round(time.time() - t0, 3),
    }
