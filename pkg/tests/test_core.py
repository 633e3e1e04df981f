import random
from fractions import Fraction as F
from math import comb

import pytest

from symlpp.core import (
    DistributionTable,
    IntMatrix,
    ModelSpec,
    Partition,
    alternating_sum,
    conjugate,
    format_rational,
    matrix_from_rows_top_to_bottom,
    parse_rational,
    partitions_in_box,
)


def test_partition_normalisation_and_validation():
    assert Partition((3, 2, 0, 0)).parts == (3, 2)
    assert Partition().parts == ()
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_conjugate_examples():
    assert conjugate(Partition()) == Partition()
    assert conjugate(Partition((1,))) == Partition((1,))
    # transpose the diagram of (4,2) by hand: columns have heights 2,2,1,1
    assert conjugate(Partition((4, 2))) == Partition((2, 2, 1, 1))


def test_conjugate_involution_on_box():
    for mu in partitions_in_box(5, 4):
        assert conjugate(conjugate(mu)) == mu


def test_alternating_sum_examples():
    assert alternating_sum(Partition()) == 0
    assert alternating_sum(Partition((3,))) == 3
    assert alternating_sum(Partition((4, 2))) == 2


def test_alternating_sum_of_conjugate_counts_odd_parts():
    for mu in partitions_in_box(6, 5):
        odd = sum(1 for p in mu.parts if p % 2 == 1)
        assert alternating_sum(conjugate(mu)) == odd


def test_partitions_in_box_examples():
    assert {p.parts for p in partitions_in_box(1, 1)} == {(), (1,)}
    assert {p.parts for p in partitions_in_box(0, 5)} == {()}
    six = {p.parts for p in partitions_in_box(2, 2)}
    assert six == {(), (1,), (2,), (1, 1), (2, 1), (2, 2)}


def test_partitions_in_box_counts_match_binomial():
    for max_part in range(9):
        for max_length in range(9):
            seen = list(partitions_in_box(max_part, max_length))
            assert len(seen) == comb(max_part + max_length, max_length)
            assert len({p.parts for p in seen}) == len(seen)
            for mu in seen:
                assert mu.length <= max_length
                assert (mu.parts[0] if mu.parts else 0) <= max_part


def test_rational_arithmetic_is_exact():
    rnd = random.Random(0)
    for _ in range(200):
        p = F(rnd.randint(-99, 99), rnd.randint(1, 99))
        r = F(rnd.randint(-99, 99), rnd.randint(1, 99))
        assert (p + r) - r == p
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-2") == F(-2)
    assert format_rational(F(15, 16)) == "15/16"
    assert format_rational(F(4, 2)) == "2"
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_int_matrix_indexing_is_bottom_up():
    X = IntMatrix(((1, 2), (3, 4)))  # bottom row (1,2), top row (3,4)
    assert X.entry(1, 1) == 1 and X.entry(1, 2) == 2
    assert X.entry(2, 1) == 3 and X.entry(2, 2) == 4
    assert X.rows_top_to_bottom() == [[3, 4], [1, 2]]
    # printing labels rows and puts the top row first
    text = str(X)
    assert text.splitlines()[0].startswith("i=2")
    assert matrix_from_rows_top_to_bottom([[3, 4], [1, 2]]) == X


def test_int_matrix_reflections():
    X = IntMatrix(((1, 2), (3, 4)))
    assert X.transpose() == IntMatrix(((1, 3), (2, 4)))
    assert X.anti_transpose() == IntMatrix(((4, 2), (3, 1)))
    assert X.rotate180() == IntMatrix(((4, 3), (2, 1)))
    assert X.transpose().transpose() == X
    assert X.anti_transpose().anti_transpose() == X
    with pytest.raises(ValueError):
        IntMatrix(((1, 2),)).anti_transpose()
    with pytest.raises(ValueError):
        IntMatrix(((-1,),))
    with pytest.raises(ValueError):
        IntMatrix(())


def test_model_spec_validation():
    ModelSpec("johansson", a=(F(1, 2),), b=(F(1, 3),))
    with pytest.raises(ValueError, match="square"):
        ModelSpec("johansson", a=(F(1, 2),), b=(F(1, 3), F(1, 4)))
    with pytest.raises(ValueError, match=r"a\[1\]"):
        ModelSpec("johansson", a=(F(1, 2), F(3, 2)), b=(F(1, 3), F(1, 4)))
    with pytest.raises(ValueError, match="alpha"):
        ModelSpec("diagonal", q=(F(1, 2),))
    with pytest.raises(ValueError, match="beta"):
        ModelSpec("diagonal", q=(F(1, 2),), alpha=F(0), beta=F(0))
    with pytest.raises(ValueError, match="variant"):
        ModelSpec("gamma", q=(F(1, 2),))
    spec = ModelSpec("doublysymmetric", q=(F(1, 2), F(1, 3)), alpha=F(1, 4))
    assert spec.matrix_shape == (4, 4)
    assert ModelSpec("bernoulli", a=(F(1, 2),), b=(F(1, 3), F(0))).matrix_shape == (1, 2)


def test_model_spec_json_round_trip():
    specs = [
        ModelSpec("johansson", a=(F(1, 2), F(0)), b=(F(1, 3), F(2, 5))),
        ModelSpec("bernoulli", a=(F(1, 2),), b=(F(1, 3), F(1, 4))),
        ModelSpec("antidiagonal", q=(F(1, 2),), beta=F(1, 3)),
        ModelSpec("diagonal", q=(F(1, 2), F(1, 5)), alpha=F(0)),
        ModelSpec("doublysymmetric", q=(F(1, 2),), alpha=F(1, 7)),
        ModelSpec("pointreflection", q=(F(1, 2), F(1, 3))),
    ]
    for spec in specs:
        assert ModelSpec.from_json_dict(spec.to_json_dict()) == spec
    with pytest.raises(ValueError, match="variant"):
        ModelSpec.from_json_dict({"q": ["1/2"]})
    with pytest.raises(ValueError, match="unknown fields"):
        ModelSpec.from_json_dict({"variant": "diagonal", "q": ["1/2"],
                                  "alpha": "0", "gamma": "1/2"})


def test_distribution_table_invariants():
    DistributionTable({0: F(1, 2), 1: F(3, 4)}, exact=True)
    with pytest.raises(ValueError):
        DistributionTable({0: F(3, 4), 1: F(1, 2)}, exact=True)
    with pytest.raises(ValueError):
        DistributionTable({0: F(3, 2)}, exact=True)
    with pytest.raises(ValueError):
        DistributionTable({0: 0.5}, exact=True)
    rows = DistributionTable({0: F(1, 2)}, exact=True).to_rows()
    assert rows == [{"l": 0, "p": "1/2", "approx": False}]
