import math
from fractions import Fraction as F

import pytest

from symlpp.core import ModelSpec
from symlpp.harness import (
    EIGHT_POINT_CONFIGURATION,
    hammersley_check,
    longest_increasing_chain,
    toeplitz_bessel,
    verify_model,
)


def test_verify_johansson_geometric_column():
    spec = ModelSpec("johansson", a=(F(1, 2),), b=(F(1, 2),))
    report = verify_model(spec, l_max=3, mc_samples=30_000, seed=2)
    assert report.verdict == "PASS"
    exact = [r.exact_value for r in report.rows]
    assert exact == [F(3, 4), F(15, 16), F(63, 64), F(255, 256)]
    assert [r.second_value for r in report.rows] == exact
    assert all(r.abs_diff == 0 for r in report.rows)
    assert all(abs(r.z_score) <= 4 for r in report.rows)


def test_verify_all_zero_parameters():
    spec = ModelSpec("diagonal", q=(F(0), F(0)), alpha=F(0))
    report = verify_model(spec, l_max=2, mc_samples=200, seed=0)
    assert report.verdict == "PASS"
    for row in report.rows:
        assert row.exact_value == 1
        assert row.second_value == 1
        assert row.mc_estimate == 1.0


def test_verify_doubly_symmetric_parity_rows():
    spec = ModelSpec("doublysymmetric", q=(F(1, 3),), alpha=F(1, 4))
    report = verify_model(spec, l_max=5, mc_samples=20_000, seed=4)
    assert report.verdict == "PASS"
    values = [r.exact_value for r in report.rows]
    assert values[0] == values[1] and values[2] == values[3] and values[4] == values[5]


def test_verify_pointreflection_factorization_column():
    spec = ModelSpec("pointreflection", q=(F(1, 3), F(1, 4)))
    report = verify_model(spec, l_max=4, mc_samples=20_000, seed=5)
    assert report.second_kind == "johansson-factorization"
    assert report.verdict == "PASS"
    for row in report.rows:
        assert isinstance(row.second_value, F)
        assert row.abs_diff == 0


def test_verify_antidiagonal_reports_prefactor_resolution():
    spec = ModelSpec("antidiagonal", q=(F(1, 2), F(1, 5)), beta=F(1, 3))
    report = verify_model(spec, l_max=4, mc_samples=20_000, seed=6)
    note = report.notes["odd_bound_prefactor"]
    assert note["resolved"] == "standard"
    assert note["matches"] == {"standard": True, "printed": False}
    assert note["max_abs_diff"]["printed"] > 0


def test_longest_increasing_chain():
    assert longest_increasing_chain([]) == 0
    assert longest_increasing_chain([(0.1, 0.9)]) == 1
    ascending = [(i / 10, i / 10) for i in range(1, 8)]
    assert longest_increasing_chain(ascending) == 7
    # equal x cannot stack inside one chain
    assert longest_increasing_chain([(0.5, 0.1), (0.5, 0.2), (0.5, 0.3)]) == 1
    descending = [(i / 10, 1 - i / 10) for i in range(1, 8)]
    assert longest_increasing_chain(descending) == 1


def test_eight_point_configuration_has_chain_three():
    assert longest_increasing_chain(EIGHT_POINT_CONFIGURATION) == 3
    # brute force over all subsets as an independent check
    pts = EIGHT_POINT_CONFIGURATION
    best = 0
    for mask in range(1 << len(pts)):
        chosen = sorted(pts[i] for i in range(len(pts)) if mask >> i & 1)
        if all(a[0] < b[0] and a[1] < b[1] for a, b in zip(chosen, chosen[1:])):
            best = max(best, len(chosen))
    assert best == 3


def test_toeplitz_bessel_small_intensity():
    # Pr(chain <= 0) = exp(-lam): the empty determinant leaves the prefactor
    lam = 0.3
    assert toeplitz_bessel(2 * math.sqrt(lam), 0) == 1.0
    value = math.exp(-lam) * toeplitz_bessel(2 * math.sqrt(lam), 1)
    # one-point squares always chain: Pr(<=1) = Pr(N<=1) + sum_{k>=2} ...
    assert 0 < value < 1


def test_hammersley_check_resolves_normalization():
    report = hammersley_check(2.0, 8, 20_000, seed=11)
    assert report.verdict == "PASS"
    assert report.notes["resolved_normalization"] == \
        "prefactor=exp(-lam), coefficient=2*sqrt(lam)"
    assert report.notes["displayed_form_matches"] is False
    # the resolved table starts at exp(-lam)
    assert report.rows[0].exact_value == pytest.approx(math.exp(-2.0), rel=1e-9)
    with pytest.raises(ValueError):
        hammersley_check(0.0, 4, 100, seed=1)


def test_report_serialization_shape():
    spec = ModelSpec("johansson", a=(F(1, 2),), b=(F(1, 2),))
    report = verify_model(spec, l_max=1, mc_samples=1000, seed=1)
    data = report.to_json_dict()
    assert data["schema"] == 1
    assert data["verdict"] in ("PASS", "FAIL")
    assert {"l", "mc_estimate", "mc_stderr", "exact_value", "second_value",
            "abs_diff", "z_score", "verdict"} <= set(data["rows"][0])
