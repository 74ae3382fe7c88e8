from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternmin.codes import (
    CodeSpec,
    DimensionError,
    WeightDistribution,
    ab_status,
    analyze_code,
    check_dimension,
    codeword,
    codeword_values,
    direct_weights,
    min_distance,
    three_weight_prediction,
    weight_distribution,
    weight_matrix,
    weight_via_walsh,
)
from ternmin.functions import compose, plateaued_seed, standard_indicator_quadratic
from ternmin.gf3 import TernaryVector
from ternmin.tables import FunctionTable, random_function, scalar_function
from ternmin.walsh import spectrum_of

# frozen from direct coordinate counting: (n, r, s, m) = (7, 3, 1, 2) composite
COMPOSITE_7312 = {
    0: 1, 981: 4, 1395: 120, 1404: 1218, 1413: 120, 1449: 1880, 1458: 12658,
    1467: 752, 1476: 420, 1485: 2400, 1494: 96, 1692: 10, 1701: 4,
}


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(1, 2), st.integers(0, 2**32 - 1))
def test_walsh_weights_match_counting(n, m, seed):
    F = random_function(n, m, np.random.default_rng(seed))
    assert np.array_equal(weight_matrix(F), direct_weights(F))


def test_weight_via_walsh_scalar():
    F = random_function(4, 2, np.random.default_rng(3))
    spec = spectrum_of(F)
    W = direct_weights(F)
    for mu, nu in [(0, 0), (0, 5), (4, 0), (8, 80), (TernaryVector.of(1, 1), TernaryVector.of(0, 1, 2, 0))]:
        mr = mu.rank if isinstance(mu, TernaryVector) else mu
        nr = nu.rank if isinstance(nu, TernaryVector) else nu
        assert weight_via_walsh(spec, mu, nu) == W[mr, nr]


def test_nonzero_origin_rejected():
    F = FunctionTable(2, 1, [1] * 9)
    with pytest.raises(ValueError):
        weight_matrix(F)


def test_codeword_values_and_support():
    f = scalar_function([(x % 3) * (x // 3) for x in range(9)])
    # c(1, 0) = (x_0 x_1) at x = 1..8
    assert list(codeword_values(f, 1, 0)) == [0, 0, 0, 1, 2, 0, 2, 1]
    c = codeword(f, 1, 0)
    assert c.length == 8 and c.weight == 4
    assert codeword(f, 1, 0).covered_by(codeword(f, 2, 0))
    # x_0 x_1 != 0 forces x_0 != 0, so c(1, 0) sits inside c(0, 1)
    assert codeword(f, 0, 1).mask == 0b11011011
    assert codeword(f, 1, 0).covered_by(codeword(f, 0, 1))
    assert not codeword(f, 0, 1).covered_by(codeword(f, 1, 0))


@pytest.mark.parametrize("n,s,m", [(5, 1, 2), (6, 0, 2), (6, 0, 3), (6, 2, 2), (7, 1, 2)])
def test_three_weight_tables(n, s, m):
    assert weight_distribution(plateaued_seed(n, s, m)) == three_weight_prediction(n, s, m)


def test_frozen_bent_distribution():
    # n = 6 field-multiplication bent, m = 2
    assert weight_distribution(plateaued_seed(6, 0, 2)) == {0: 1, 486: 728, 468: 8 * 261, 495: 8 * 468}


def test_composite_distribution():
    f, _, _, _ = standard_indicator_quadratic(7, 3)
    F = compose(f, plateaued_seed(7, 1, 1))
    dist = weight_distribution(F)
    assert dist == COMPOSITE_7312
    assert dist.total == 3**9
    assert (dist.w_min, dist.w_max) == (981, 1701)
    st_ = ab_status(dist, spectrum_of(F))
    assert not st_.satisfied
    assert st_.ratio == Fraction(981, 1701)
    assert (st_.spectral_max_two_re, st_.spectral_min_two_re) == (1431, -729)
    assert st_.spectral_violation


def test_ab_boundary_is_strict():
    # 3 * 2 == 2 * 3: ratio exactly 2/3 does not satisfy
    assert not ab_status(WeightDistribution({0: 1, 2: 1, 3: 1})).satisfied
    assert ab_status(WeightDistribution({0: 1, 3: 1, 4: 1})).satisfied


def test_dimension_check():
    F = plateaued_seed(6, 0, 2)
    assert check_dimension(F) == 8
    affine = scalar_function([(x % 3) for x in range(27)])
    with pytest.raises(DimensionError) as exc:
        check_dimension(affine)
    assert exc.value.mu == 1


def test_distribution_helpers():
    d = WeightDistribution.from_weights(np.array([0, 3, 3, 5]))
    assert d.as_pairs() == [[0, 1], [3, 2], [5, 1]]
    assert min_distance(d) == 3 and d.nonzero_weights == [3, 5]


def test_analysis_json_shape():
    a = analyze_code(plateaued_seed(6, 0, 2))
    j = a.to_json()
    assert j["schema"] == "cfa/1"
    assert (j["length"], j["dimension"], j["w_min"], j["w_max"]) == (728, 8, 468, 495)
    assert j["ab_satisfied"] is True
    assert CodeSpec(plateaued_seed(6, 0, 2)).dimension_claimed == 8


def test_analysis_deficient_dimension():
    a = analyze_code(scalar_function([(x % 3) for x in range(27)]))
    assert a.dimension is None
