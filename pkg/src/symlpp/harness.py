"""Verification pipelines: Monte Carlo vs exact law vs matrix-average formula.

Exact-vs-average comparisons use equality (both rational) or an absolute
tolerance; Monte Carlo enters only through z-scores against the exact value.
The two error models are never mixed in one verdict.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import ModelSpec, format_rational
from .lpp import mc_distribution
from .numerics import ExpCos, PolyPlus, SymbolSpec
from .rmt import (
    ClassFunctionSpec,
    antidiagonal_odd_prefactors,
    model_rmt_distribution,
    rmt_method,
    sp_average,
    u_average,
)
from .symfunc import exact_distribution, pointreflection_selfdual_sum

_MC_CHUNK = 4096


@dataclass
class ReportRow:
    l: int
    mc_estimate: float
    mc_stderr: float
    exact_value: Fraction | float
    second_value: Fraction | float | None
    abs_diff: Fraction | float | None
    z_score: float
    verdict: str

    def to_json_dict(self) -> dict:
        out: dict = {
            "l": self.l,
            "mc_estimate": self.mc_estimate,
            "mc_stderr": self.mc_stderr,
            "exact_value": (format_rational(self.exact_value)
                            if isinstance(self.exact_value, Fraction) else self.exact_value),
        }
        if self.second_value is not None:
            key = "second_value"
            out[key] = (format_rational(self.second_value)
                        if isinstance(self.second_value, Fraction) else self.second_value)
            out["abs_diff"] = (format_rational(self.abs_diff)
                               if isinstance(self.abs_diff, Fraction) else self.abs_diff)
        out["z_score"] = self.z_score
        out["verdict"] = self.verdict
        return out


@dataclass
class VerificationReport:
    model: dict
    second_kind: str
    rows: list[ReportRow]
    verdict: str
    notes: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json_dict(self) -> dict:
        return {
            "schema": 1,
            "model": self.model,
            "second_kind": self.second_kind,
            "rows": [r.to_json_dict() for r in self.rows],
            "verdict": self.verdict,
            "notes": self.notes,
        }


def _z_score(mc: float, exact: float, n_samples: int) -> float:
    if exact <= 0.0 or exact >= 1.0:
        return 0.0 if mc == exact else math.inf
    se = math.sqrt(exact * (1.0 - exact) / n_samples)
    return (mc - exact) / se


def _diff_ok(exact, second, tol: float) -> tuple[Fraction | float | None, bool]:
    if second is None:
        return None, True
    if isinstance(second, Fraction):
        diff = abs(exact - second)
        return diff, diff == 0
    diff = abs(float(exact) - second)
    return diff, diff <= tol


def verify_model(spec: ModelSpec, l_max: int, mc_samples: int, seed: int,
                 tol: float = 1e-9, z_max: float = 4.0, threads: int = 1,
                 quad_tol: float = 1e-12) -> VerificationReport:
    """Three-column check of Pr(L <= l) for l = 0..l_max.

    Columns: Monte Carlo with binomial standard errors, the exact bounded
    Schur-sum law, and the matrix-average formula.  The point-reflection model
    has no separate average; its exact column comes straight from self-dual
    path sums and the second column is the product of two independently
    computed square-lattice laws.
    """
    mc = mc_distribution(spec, l_max, mc_samples, seed, threads)
    point_reflection = spec.variant == "pointreflection"
    second_kind = "johansson-factorization" if point_reflection else rmt_method(spec)
    rows: list[ReportRow] = []
    for l in range(l_max + 1):
        if point_reflection:
            exact = pointreflection_selfdual_sum(spec.q, l)
            second = exact_distribution(spec, l)
        else:
            exact = exact_distribution(spec, l)
            second = model_rmt_distribution(spec, l, quad_tol)
        diff, diff_ok = _diff_ok(exact, second, tol)
        z = _z_score(mc.probs[l], float(exact), mc_samples)
        ok = diff_ok and abs(z) <= z_max
        rows.append(ReportRow(l, mc.probs[l], mc.stderr[l], exact, second, diff, z,
                              "PASS" if ok else "FAIL"))
    notes: dict = {}
    if spec.variant == "antidiagonal":
        notes["odd_bound_prefactor"] = _resolve_antidiagonal_prefactor(spec, l_max, tol, quad_tol)
    verdict = "PASS" if all(r.verdict == "PASS" for r in rows) else "FAIL"
    return VerificationReport(spec.to_json_dict(), second_kind, rows, verdict, notes)


def _resolve_antidiagonal_prefactor(spec: ModelSpec, l_max: int, tol: float,
                                    quad_tol: float) -> dict:
    """Try both candidate prefactors of the odd-bound formula against the exact law.

    The two candidates differ in the index pairing of the cross terms; they
    agree for n = 1.  Whichever reproduces the exact law at every odd bound is
    reported as 'resolved'; the mismatch of the other candidate is reported,
    not silently fixed.
    """
    candidates = antidiagonal_odd_prefactors(spec.q)
    symbol = SymbolSpec(tuple(PolyPlus(x, 1) for x in spec.q))
    matches = {name: True for name in candidates}
    worst = {name: Fraction(0) for name in candidates}
    odd_bounds = [l for l in range(l_max + 1) if l % 2 == 1] or [1]
    for l in odd_bounds:
        exact = exact_distribution(spec, l)
        average = sp_average(ClassFunctionSpec(symbol=symbol), l // 2, quad_tol)
        for name, pref in candidates.items():
            value = pref * average if isinstance(average, Fraction) else float(pref) * average
            diff, ok = _diff_ok(exact, value, tol)
            matches[name] = matches[name] and ok
            if float(diff) > float(worst[name]):
                worst[name] = diff
    return {
        "resolved": next((n for n in ("standard", "printed") if matches[n]), None),
        "matches": matches,
        "max_abs_diff": {n: float(worst[n]) for n in worst},
        "prefactors": {n: format_rational(v) for n, v in candidates.items()},
    }


# ---------------------------------------------------------------------------
# Continuum model: Poisson points in the unit square
# ---------------------------------------------------------------------------


def longest_increasing_chain(points) -> int:
    """Longest chain strictly increasing in both coordinates, by patience sorting.

    Points are sorted lexicographically by (x, -y); ties in x (measure zero
    for random input) therefore cannot stack in one chain.
    """
    pts = sorted(points, key=lambda p: (p[0], -p[1]))
    tails: list[float] = []
    for _, y in pts:
        idx = bisect_left(tails, y)
        if idx == len(tails):
            tails.append(y)
        else:
            tails[idx] = y
    return len(tails)


# Eight marked points whose longest strictly increasing chain has length 3,
# matching the worked unit-square illustration (four segments once the path
# is extended to the corners).
EIGHT_POINT_CONFIGURATION = (
    (0.10, 0.55), (0.20, 0.30), (0.30, 0.80), (0.40, 0.10),
    (0.50, 0.60), (0.65, 0.40), (0.80, 0.90), (0.90, 0.20),
)


def _poisson_chain_counts(lam: float, l_max: int, n_samples: int, seed: int) -> np.ndarray:
    counts = np.zeros(l_max + 2, dtype=np.int64)
    start = 0
    chunk_index = 0
    while start < n_samples:
        size = min(_MC_CHUNK, n_samples - start)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed,
                                                           spawn_key=(chunk_index,)))
        ns = rng.poisson(lam, size)
        for n in ns:
            chain = longest_increasing_chain(rng.random((n, 2))) if n else 0
            counts[min(chain, l_max + 1)] += 1
        start += size
        chunk_index += 1
    return counts


def toeplitz_bessel(cos_coefficient: float, l: int, tol: float = 1e-12) -> float:
    """l x l Toeplitz determinant of the exponential symbol exp(c cos theta)."""
    value = u_average(SymbolSpec((ExpCos(cos_coefficient),)), l, tol)
    return float(value)


def hammersley_check(lam: float, l_max: int, mc_samples: int, seed: int,
                     z_max: float = 4.0, tol: float = 1e-12) -> VerificationReport:
    """Poisson Monte Carlo against the Toeplitz evaluation of the chain law.

    The normalization of the determinant formula is resolved empirically: the
    four (prefactor, cosine coefficient) candidates built from {1, exp(-lam)}
    and {sqrt(lam), 2 sqrt(lam)} are scored by their worst z-score and the
    winner is reported; the displayed form of the formula (no prefactor,
    coefficient sqrt(lam)) is flagged when it loses.
    """
    if lam <= 0:
        raise ValueError("intensity must be positive")
    counts = _poisson_chain_counts(lam, l_max, mc_samples, seed)
    cumulative = np.cumsum(counts)[: l_max + 1]
    mc = {l: float(cumulative[l] / mc_samples) for l in range(l_max + 1)}
    stderr = {l: math.sqrt(mc[l] * (1 - mc[l]) / mc_samples) for l in mc}

    root = math.sqrt(lam)
    candidates = {
        "prefactor=exp(-lam), coefficient=2*sqrt(lam)": (math.exp(-lam), 2 * root),
        "prefactor=1, coefficient=2*sqrt(lam)": (1.0, 2 * root),
        "prefactor=exp(-lam), coefficient=sqrt(lam)": (math.exp(-lam), root),
        "prefactor=1, coefficient=sqrt(lam) (as displayed)": (1.0, root),
    }
    scores: dict[str, float] = {}
    tables: dict[str, list[float]] = {}
    for name, (pref, coeff) in candidates.items():
        table = [min(pref * toeplitz_bessel(coeff, l, tol), 1.0) for l in range(l_max + 1)]
        tables[name] = table
        worst = 0.0
        for l in range(l_max + 1):
            if 0.0 < table[l] < 1.0:
                se = math.sqrt(table[l] * (1 - table[l]) / mc_samples)
                worst = max(worst, abs(mc[l] - table[l]) / se)
            elif mc[l] != table[l]:
                worst = math.inf
        scores[name] = worst
    resolved = min(scores, key=lambda n: scores[n])
    displayed = "prefactor=1, coefficient=sqrt(lam) (as displayed)"

    rows: list[ReportRow] = []
    for l in range(l_max + 1):
        formula = tables[resolved][l]
        if 0.0 < formula < 1.0:
            se = math.sqrt(formula * (1 - formula) / mc_samples)
            z = (mc[l] - formula) / se
        else:
            z = 0.0 if mc[l] == formula else math.inf
        rows.append(ReportRow(l, mc[l], stderr[l], formula, None, None, z,
                              "PASS" if abs(z) <= z_max else "FAIL"))
    notes = {
        "resolved_normalization": resolved,
        "candidate_worst_z": scores,
        "displayed_form_matches": resolved == displayed,
    }
    verdict = "PASS" if all(r.verdict == "PASS" for r in rows) else "FAIL"
    return VerificationReport({"lambda": lam}, "toeplitz-bessel", rows, verdict, notes)
