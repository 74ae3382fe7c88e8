import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ternmin.functions import (
    CompositeSpec,
    ConstructionError,
    affine_components,
    classify,
    classify_row,
    compose,
    expected_indicator_quadratic_two_re,
    extend_with_dummy,
    indicator_plus_plateaued,
    indicator_plus_plateaued_bound,
    indicator_quadratic_violations,
    is_component_affine,
    make_field_mult_bent,
    make_indicator_quadratic,
    plateaued_seed,
    project,
    standard_indicator_quadratic,
    three_function_identity,
)
from ternmin.gf3 import SubspaceSpec, TernaryVector
from ternmin.tables import FunctionTable, TFTFormatError, random_function, read_tft, scalar_function, write_tft
from ternmin.walsh import norms, two_re, walsh_transform_values


class TestTFT:
    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**32 - 1))
    def test_round_trip(self, n, m, seed):
        F = random_function(n, m, np.random.default_rng(seed), zero_at_origin=False)
        buf = io.StringIO()
        write_tft(F, buf)
        assert read_tft(io.StringIO(buf.getvalue())) == F

    def test_layout(self):
        # F(x) = (x_0, 0): output coordinate 1 is written first
        F = FunctionTable.from_components([np.arange(3) % 3, np.zeros(3, dtype=int)])
        buf = io.StringIO()
        write_tft(F, buf)
        assert buf.getvalue() == "tft 1 1 2\n00\n01\n02\n"

    @pytest.mark.parametrize(
        "text",
        ["tft 2 1 1\n0\n1\n2\n", "tft 1 1 1\n0\n1\n", "tft 1 1 1\n0\n3\n1\n", "tft 1 1 2\n00\n1\n22\n", "tft 1 x 1\n"],
    )
    def test_parse_errors(self, text):
        with pytest.raises(TFTFormatError):
            read_tft(io.StringIO(text))

    def test_table_validation(self):
        with pytest.raises(ValueError):
            FunctionTable(2, 1, [0] * 8)
        with pytest.raises(ValueError):
            FunctionTable(1, 1, [0, 1, 3])


class TestFieldMultBent:
    @pytest.mark.parametrize("k,m", [(1, 1), (2, 1), (2, 2), (3, 3)])
    def test_regular_bent(self, k, m):
        F = make_field_mult_bent(k, m)
        assert (F.n, F.m) == (2 * k, m)
        c = classify(F)
        assert c.bent and c.vectorial_regular
        assert c.summary() == "vectorial regular bent"
        assert F.table[0] == 0

    def test_m_above_k_rejected(self):
        with pytest.raises(ConstructionError):
            make_field_mult_bent(2, 3)


class TestDummyExtension:
    def test_plateau_level_grows(self):
        G = extend_with_dummy(make_field_mult_bent(3, 1), 1)
        c = classify(G)
        assert c.uniform_s == 1 and c.vectorial_regular
        assert np.array_equal(G.table[:729], G.table[729:1458])

    def test_seed(self):
        c = classify(plateaued_seed(6, 2, 2))
        assert (c.uniform_s, c.vectorial_regular) == (2, True)
        with pytest.raises(ConstructionError):
            plateaued_seed(7, 0, 1)
        with pytest.raises(ConstructionError):
            extend_with_dummy(make_field_mult_bent(1, 1), 0)


class TestCompose:
    def test_coordinates(self):
        rng = np.random.default_rng(0)
        f = random_function(3, 1, rng)
        G = random_function(3, 2, rng)
        F = compose(f, G)
        assert F.m == 3
        assert project(F, [0]) == f
        assert project(F, [1, 2]) == G

    def test_errors(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ConstructionError):
            compose(random_function(3, 2, rng), random_function(3, 1, rng))
        with pytest.raises(ConstructionError):
            compose(random_function(3, 1, rng), random_function(4, 1, rng))


class TestIndicatorQuadratic:
    def test_standard_values(self):
        f, E, a, b = standard_indicator_quadratic(6, 2)
        assert f.table[0] == 0  # 1 + 0 + 2
        assert E.dim == 2 and a.rank == 1 and b.rank == 3
        # x = e_0 + e_1 lies in E: 1 + 1 + 2 = 1
        assert f.table[TernaryVector.of(1, 1, 0, 0, 0, 0).rank] == 1

    @pytest.mark.parametrize("n,r", [(5, 2), (6, 2), (6, 3), (7, 3), (7, 4)])
    def test_closed_form_spectrum(self, n, r):
        f, E, a, b = standard_indicator_quadratic(n, r)
        got = two_re(*walsh_transform_values(f.table))
        assert np.array_equal(got, expected_indicator_quadratic_two_re(E, a, b))

    def test_frozen_multiset_n6_r2(self):
        f, _, _, _ = standard_indicator_quadratic(6, 2)
        v, c = np.unique(two_re(*walsh_transform_values(f.table)), return_counts=True)
        assert dict(zip(v.tolist(), c.tolist())) == {-243: 2, -234: 5, -9: 160, 0: 160, 9: 400, 477: 2}

    def test_violations_named(self):
        E = SubspaceSpec.coordinate(5, [0])
        a = TernaryVector.of(1, 0, 0, 0, 0)
        b = TernaryVector.of(0, 1, 0, 0, 0)  # in the dual of E
        assert indicator_quadratic_violations(E, a, b) == ["b"]
        with pytest.raises(ConstructionError, match="b lie"):
            make_indicator_quadratic(E, a, b)

    def test_dependent_rejected(self):
        E = SubspaceSpec.coordinate(5, [0, 1])
        a = TernaryVector.of(1, 1, 0, 0, 0)
        with pytest.raises(ConstructionError, match="independent"):
            make_indicator_quadratic(E, a, a.scale(2))

    def test_codimension_rejected(self):
        with pytest.raises(ConstructionError, match="n - dim"):
            standard_indicator_quadratic(5, 3)
        with pytest.raises(ConstructionError):
            standard_indicator_quadratic(6, 1)

    def test_composite_spec(self):
        cs = CompositeSpec.standard(7, 3, 1, 2)
        assert cs.r == 3 and cs.problems() == []
        assert cs.F.m == 2


class TestClassification:
    def test_random_not_plateaued(self):
        F = random_function(4, 1, np.random.default_rng(5))
        c = classify(F)
        assert c.uniform_s is None and not c.vectorial_regular
        assert "not uniformly plateaued" in c.summary()

    def test_affine(self):
        F = scalar_function([(x % 3) for x in range(27)])
        assert is_component_affine(F, 1)
        assert affine_components(F) == [1, 2]
        assert classify(F).uniform_s == 3
        with pytest.raises(ValueError):
            is_component_affine(F, 0)

    def test_weakly_regular_not_regular(self):
        # negated bent: values -3^(n/2) w^j are not regular
        g = make_field_mult_bent(1, 1).table
        c = classify_row(walsh_transform_values((2 * g) % 3), 2)
        assert c.s == 0
        re, om = walsh_transform_values(g)
        c2 = classify_row((-re, -om), 2)
        assert c2.s == 0 and not c2.regular


class TestIdentities:
    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_nine_term_identity(self, seed):
        rng = np.random.default_rng(seed)
        phis = [rng.integers(0, 3, 81) for _ in range(3)]
        (lr, lo), (rr, ro) = three_function_identity(*phis)
        assert np.array_equal(lr, rr) and np.array_equal(lo, ro)

    @pytest.mark.parametrize("n,s,r", [(5, 1, 1), (6, 0, 2), (6, 2, 3), (7, 1, 4)])
    def test_plateaued_plus_indicator_bound(self, n, s, r):
        g = plateaued_seed(n, s, 1).table
        E = SubspaceSpec.coordinate(n, range(r))
        worst = int(norms(*walsh_transform_values(indicator_plus_plateaued(g, E))).max())
        assert worst <= indicator_plus_plateaued_bound(n, s, r)

    def test_bound_parity(self):
        with pytest.raises(ValueError):
            indicator_plus_plateaued_bound(5, 0, 1)
