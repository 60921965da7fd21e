"""Scalar set classification, modulus sets, rotation products, plane density."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitlab import (
    AngleSpec,
    Annulus,
    Arc,
    Circle,
    CircleProduct,
    EmptyScalarSetError,
    FinitePoints,
    Geometric,
    LogSpiral,
    ModulusSet,
    ScalarSet,
    Scaled,
    Sector,
    UndecidableDensityError,
    Union,
    classify,
    is_dense_in_plane,
    modulus_set,
    positive_ray,
    rotation_group_product,
)
from orbitlab import scalar_sets

IRR = AngleSpec.irrational(1.0, "one radian")


class TestModulusSet:
    def test_ring(self):
        ms = modulus_set(Annulus(1, 2))
        assert ms.intervals == ((1.0, 2.0),)
        assert not ms.unbounded

    def test_two_circles(self):
        ms = modulus_set(Union(Circle(1), Circle(3)))
        assert ms.intervals == ((1.0, 1.0), (3.0, 3.0))

    def test_spiral_closure_fills_all_radii(self):
        spiral = LogSpiral(2.0, IRR)
        ms = modulus_set(spiral)
        assert ms.intervals == ((0.0, math.inf),)
        assert ms.unbounded
        # oracle: sample the parameter line and confirm every dyadic radius is hit
        for k in range(-20, 21):
            radius = 2.0 ** k
            assert ms.contains(radius)
            assert abs(abs(spiral.point_at(float(k))) - radius) <= 1e-9 * radius
        for t in [x / 7 for x in range(-50, 51)]:
            assert ms.contains(abs(spiral.point_at(t)))

    def test_union_merges_componentwise(self):
        parts = [Annulus(1, 2), Circle(5), Geometric(0.5), Sector(3, 4, 0, 1)]
        for a in parts:
            for b in parts:
                assert modulus_set(Union(a, b)) == modulus_set(a).merge(modulus_set(b))

    def test_interval_merging_is_exact(self):
        ms = ModulusSet.canonical([(1.0, 2.0), (2.0, 3.0), (5.0, 6.0)])
        assert ms.intervals == ((1.0, 3.0), (5.0, 6.0))
        gap = ModulusSet.canonical([(1.0, 2.0), (2.0 + 1e-12, 3.0)])
        assert len(gap.intervals) == 2  # no tolerance merging

    def test_scaling(self):
        assert modulus_set(Scaled(5j, Circle(1))).intervals == ((5.0, 5.0),)


class TestClassify:
    @pytest.mark.parametrize(
        "scalar_set,hyper,somewhere",
        [
            (Circle(1), True, True),
            (Annulus(1, 2), True, False),
            (Union(Circle(1), Circle(3)), True, True),
            (positive_ray(), False, False),
            (Geometric(0.5), False, False),
            (Scaled(5j, Circle(1)), True, True),
            (LogSpiral(2.0, IRR), False, False),
            (Geometric(3.0), False, False),
            (FinitePoints([1.0, 2j, -3.0]), True, True),
        ],
    )
    def test_verdict_table(self, scalar_set, hyper, somewhere):
        res = classify(scalar_set)
        assert res.is_hypercyclic_scalar_set == hyper
        assert res.is_somewhere_hypercyclic_scalar_set == somewhere

    def test_verdict_formula_invariants(self):
        for s in [Circle(1), Annulus(1, 2), positive_ray(), Geometric(0.5)]:
            res = classify(s)
            assert res.is_hypercyclic_scalar_set == (
                res.nonempty_nonzero and res.bounded and res.bounded_away_zero
            )
            if res.is_somewhere_hypercyclic_scalar_set:
                assert res.is_hypercyclic_scalar_set

    def test_zero_is_stripped(self):
        with_zero = FinitePoints([0.0, 1.0, 1j])
        assert classify(with_zero) == classify(FinitePoints([1.0, 1j]))

    def test_empty_and_zero_only_raise(self):
        with pytest.raises(EmptyScalarSetError):
            classify(FinitePoints([]))
        with pytest.raises(EmptyScalarSetError):
            classify(FinitePoints([0.0]))
        with pytest.raises(EmptyScalarSetError):
            classify(Sector(0.0, 0.0, 0.0, 1.0))

    @settings(max_examples=60, deadline=None)
    @given(
        st.sampled_from(
            [
                Circle(1),
                Annulus(1, 2),
                Union(Circle(1), Circle(3)),
                Geometric(0.5),
                positive_ray(),
                FinitePoints([1.0, 2j]),
            ]
        ),
        st.complex_numbers(
            min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False
        ),
    )
    def test_dilation_invariance(self, s, c):
        base = classify(s)
        scaled = classify(Scaled(c, s))
        assert scaled.is_hypercyclic_scalar_set == base.is_hypercyclic_scalar_set
        assert (
            scaled.is_somewhere_hypercyclic_scalar_set
            == base.is_somewhere_hypercyclic_scalar_set
        )
        assert scaled.bounded == base.bounded
        assert scaled.bounded_away_zero == base.bounded_away_zero


class TestRotationGroupProduct:
    def test_sector_spread_by_its_own_width_fills_plane(self):
        theta = AngleSpec.rational_pi(1, 3)
        sector = Sector(0.0, math.inf, 0.0, theta.value)
        spread = rotation_group_product(sector, theta)
        assert is_dense_in_plane(spread)

    def test_wider_rational_rotation_leaves_gaps(self):
        theta = AngleSpec.rational_pi(1, 3)
        narrow = Sector(0.0, math.inf, 0.0, AngleSpec.rational_pi(1, 4).value)
        spread = rotation_group_product(narrow, theta)
        assert not is_dense_in_plane(spread)

    def test_circle_absorbs_any_rotation(self):
        assert rotation_group_product(Circle(1), IRR) == Circle(1)
        assert rotation_group_product(Circle(1), AngleSpec.rational_pi(1, 5)) == Circle(1)

    def test_fourth_roots_of_unity(self):
        got = rotation_group_product(FinitePoints([1.0]), AngleSpec.rational_pi(1, 2))
        assert isinstance(got, FinitePoints)
        pts = sorted(got.points, key=lambda z: (round(z.real, 9), round(z.imag, 9)))
        expected = sorted([1, 1j, -1, -1j], key=lambda z: (z.real, z.imag))
        assert all(abs(a - b) <= 1e-12 for a, b in zip(pts, expected))

    def test_group_orders(self):
        assert AngleSpec.rational_pi(1, 2).group_order() == 4
        assert AngleSpec.rational_pi(2, 3).group_order() == 3
        assert AngleSpec.rational_pi(0, 1).group_order() == 1
        assert IRR.group_order() is None

    def test_membership_matches_brute_force_rotation(self):
        theta = AngleSpec.rational_pi(2, 3)  # order 3
        base = Arc(1.5, 0.2, 0.9)
        product = rotation_group_product(base, theta)
        order = theta.group_order()
        rng = random.Random(42)
        pts = []
        for _ in range(10_000):
            r = rng.uniform(0.5, 2.5)
            a = rng.uniform(0.0, 2 * math.pi)
            pts.append(r * cmath.exp(1j * a))
        # seed points that genuinely lie on the rotated copies
        for k in range(order):
            for t in [0.0, 0.33, 1.0]:
                ang = 0.2 + t * 0.7 + k * theta.value
                pts.append(1.5 * cmath.exp(1j * ang))
        for z in pts:
            direct = product.contains(z, 1e-9)
            brute = any(
                base.contains(z * cmath.exp(-1j * k * theta.value), 1e-9)
                for k in range(order)
            )
            assert direct == brute


class TestDenseInPlane:
    def test_full_sector_is_the_plane(self):
        assert is_dense_in_plane(Sector(0.0, math.inf, 0.0, 2 * math.pi))

    def test_spiral_rotation_closure_is_dense(self):
        spread = rotation_group_product(LogSpiral(2.0, IRR), IRR)
        assert isinstance(spread, CircleProduct)
        assert is_dense_in_plane(spread)

    def test_two_circles_miss_radii(self):
        assert not is_dense_in_plane(Union(Circle(1), Circle(3)))

    def test_half_plane_union_covers(self):
        top = Sector(0.0, math.inf, 0.0, math.pi)
        bottom = Sector(0.0, math.inf, math.pi, 2 * math.pi)
        assert is_dense_in_plane(Union(top, bottom))

    def test_radial_gap_is_detected(self):
        inner = Sector(0.0, 1.0, 0.0, 2 * math.pi)
        outer = Sector(2.0, math.inf, 0.0, 2 * math.pi)
        assert not is_dense_in_plane(Union(inner, outer))
        touching = Union(inner, Sector(1.0, math.inf, 0.0, 2 * math.pi))
        assert is_dense_in_plane(touching)

    def test_nowhere_dense_variants_are_never_dense(self):
        assert not is_dense_in_plane(LogSpiral(2.0, IRR))
        assert not is_dense_in_plane(Geometric(0.5))
        assert not is_dense_in_plane(FinitePoints([1.0, 2.0]))
        assert not is_dense_in_plane(positive_ray())

    def test_dense_sets_pass_the_disk_oracle(self):
        dense_sets = [
            rotation_group_product(LogSpiral(2.0, IRR), IRR),
            Union(
                Sector(0.0, math.inf, 0.0, math.pi),
                Sector(0.0, math.inf, math.pi, 2 * math.pi),
            ),
        ]
        for s in dense_sets:
            assert is_dense_in_plane(s)
            for re in range(-10, 11, 5):
                for im in range(-10, 11, 5):
                    center = complex(re, im)
                    probe = center if center != 0 else complex(0.05, 0.0)
                    assert s.contains(probe, 1e-9)

    def test_unknown_variant_is_undecidable_not_guessed(self):
        class Mystery(ScalarSet):
            def contains(self, z, tol=1e-9):
                return False

        with pytest.raises(UndecidableDensityError):
            is_dense_in_plane(Mystery())


class TestResolvers:
    def test_ray_picks_exact_powers_of_two(self):
        got = scalar_sets.pick_modulus_at_least(positive_ray(), 10.3)
        assert got is not None
        re, im = got
        assert im == 0 and re == 2 ** 11

    def test_geometric_small_picks(self):
        got = scalar_sets.pick_modulus_at_most(Geometric(0.5), -7.5)
        re, im = got
        assert im == 0
        assert float(re) == 2.0 ** -8

    def test_bounded_sets_refuse_large_requests(self):
        assert scalar_sets.pick_modulus_at_least(Annulus(1, 2), 10.0) is None
        assert scalar_sets.pick_modulus_at_most(Annulus(1, 2), -10.0) is None

    def test_picked_values_are_members(self):
        for s in [Annulus(1, 4), Circle(2), Sector(0.5, 8.0, 0.3, 1.0), LogSpiral(2.0, IRR)]:
            got = scalar_sets.pick_modulus_at_least(s, 1.0)
            assert got is not None
            z = complex(float(got[0]), float(got[1]))
            assert s.contains(z, 1e-9)
            assert abs(z) >= 2.0 * (1 - 1e-12)


class TestJson:
    @pytest.mark.parametrize(
        "s",
        [
            FinitePoints([1.0, 2j]),
            Circle(1.5),
            Annulus(1, 2),
            Arc(2.0, 0.1, 0.7),
            Sector(0.0, math.inf, 0.0, 0.0),
            LogSpiral(2.0, IRR),
            LogSpiral(0.5, AngleSpec.rational_pi(3, 7)),
            Geometric(0.5),
            Union(Circle(1), Circle(3)),
            Scaled(5j, Circle(1)),
            CircleProduct(LogSpiral(2.0, IRR)),
        ],
    )
    def test_round_trip(self, s):
        assert scalar_sets.from_json(scalar_sets.to_json(s)) == s
