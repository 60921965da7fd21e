"""Exact shift actions, norm bounds, and the adjoint point-spectrum catalog."""

import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitlab import (
    BackwardShift,
    DirectSum,
    DomainMismatchError,
    ForwardShift,
    ScalarMultiple,
    ScalarOnC,
    SeqVector,
    WeightedBackward,
    WeightedForward,
    WeightSpec,
    adjoint_point_spectrum,
    apply,
    doubling_weights,
    power_apply,
    power_norm_bound,
)
from orbitlab import operators

e = lambda j: SeqVector.basis(j, "uni")  # noqa: E731
be = lambda j: SeqVector.basis(j, "bi")  # noqa: E731

B = BackwardShift()
F = ForwardShift()
BW = WeightedBackward(doubling_weights())
FW = WeightedForward(doubling_weights().inverse_shifted())


def random_vector(rng, domain="uni", size=6):
    lo = 0 if domain == "uni" else -8
    entries = [
        (rng.randrange(lo, 9), complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        for _ in range(size)
    ]
    return SeqVector.make(domain, entries)


class TestApply:
    def test_backward_kills_e0(self):
        assert apply(B, e(0)).is_zero

    def test_weighted_backward_on_e1(self):
        assert apply(BW, be(1)) == be(0).scale(2.0)

    def test_weighted_backward_weight_is_one_left_of_origin(self):
        assert apply(BW, be(0)) == be(-1)
        assert apply(BW, be(-3)) == be(-4)

    def test_backward_after_forward_is_identity(self):
        rng = random.Random(7)
        for _ in range(20):
            v = random_vector(rng)
            assert apply(B, apply(F, v)) == v

    def test_weighted_inverse_identity(self):
        rng = random.Random(8)
        for _ in range(20):
            v = random_vector(rng, "bi")
            assert apply(BW, apply(FW, v)) == v

    def test_domain_mismatch(self):
        with pytest.raises(DomainMismatchError):
            apply(B, be(0))
        with pytest.raises(DomainMismatchError):
            apply(BW, e(0))
        with pytest.raises(DomainMismatchError):
            apply(ScalarOnC(2.0), e(0))

    def test_direct_sum_acts_blockwise(self):
        op = DirectSum(ScalarOnC(2.0), B)
        got = apply(op, (1.0 + 0j, e(3)))
        assert got == (2.0 + 0j, e(2))

    @settings(max_examples=40, deadline=None)
    @given(
        st.sampled_from(["B", "F", "BW", "FW", "2B"]),
        st.integers(0, 10 ** 6),
        st.integers(0, 10 ** 6),
    )
    def test_linearity_exact(self, name, seed_u, seed_v):
        # scaling by dyadic reals commutes with the catalog weights exactly
        op = {"B": B, "F": F, "BW": BW, "FW": FW, "2B": ScalarMultiple(2.0, B)}[name]
        domain = "bi" if name in ("BW", "FW") else "uni"
        u = random_vector(random.Random(seed_u), domain)
        v = random_vector(random.Random(seed_v), domain)
        alpha, beta = 0.75, -2.5
        lhs = apply(op, u.scale(alpha).add(v.scale(beta)))
        rhs = apply(op, u).scale(alpha).add(apply(op, v).scale(beta))
        assert lhs == rhs


class TestPowerApply:
    def test_backward_power_on_basis(self):
        for n in range(8):
            for m in range(8):
                got = power_apply(B, n, e(m))
                assert got == (e(m - n) if n <= m else SeqVector.zero("uni"))

    def test_weighted_power_collects_weights(self):
        # hand iteration: weights at indices 3, 2, 1 are all 2
        w = doubling_weights()
        expected = w.weight(3) * w.weight(2) * w.weight(1)
        assert expected == 8
        assert power_apply(BW, 3, be(3)) == be(0).scale(8.0)

    def test_scalar_rotation_dilation_power(self):
        c = 2.0 * cmath.exp(-1j)
        got = power_apply(ScalarOnC(c), 5, 1.0 + 0j)
        want = 2.0 ** 5 * cmath.exp(-5j)
        assert abs(got - want) <= 1e-12 * abs(want)

    def test_negative_power_rejected(self):
        with pytest.raises(ValueError):
            power_apply(B, -1, e(0))


class TestPowerNormBound:
    def test_backward_shift_norm_one(self):
        assert power_norm_bound(B, 5) == 1.0

    def test_doubling_weights_bound_matches_brute_force(self):
        w = doubling_weights()
        for n in range(0, 11):
            assert power_norm_bound(BW, n) == 2.0 ** n
            brute = max(
                abs(math.prod(w.weight(i) for i in range(j - n + 1, j + 1)) or 1)
                for j in range(-30, 31)
            ) if n else 1.0
            assert power_norm_bound(BW, n) == brute

    def test_scalar_bound(self):
        assert power_norm_bound(ScalarOnC(-2.0 + 0j), 3) == 8.0

    def test_direct_sum_takes_max(self):
        op = DirectSum(ScalarOnC(3.0), B)
        assert power_norm_bound(op, 2) == 9.0

    def test_bound_dominates_action(self):
        rng = random.Random(9)
        ops = [(B, "uni"), (F, "uni"), (BW, "bi"), (FW, "bi"), (ScalarMultiple(2.0, B), "uni")]
        for op, domain in ops:
            for n in range(0, 21, 4):
                bound = power_norm_bound(op, n)
                for _ in range(5):
                    v = random_vector(rng, domain)
                    assert power_apply(op, n, v).norm() <= bound * v.norm() * (1 + 1e-9)

    def test_backward_orbit_nonincreasing(self):
        rng = random.Random(10)
        for _ in range(10):
            v = random_vector(rng)
            prev = v.norm()
            for _ in range(12):
                v = apply(B, v)
                cur = v.norm()
                assert cur <= prev * (1 + 1e-12)
                prev = cur


class TestAdjointPointSpectrum:
    def test_backward_shift_has_empty_answer(self):
        assert adjoint_point_spectrum(B) == frozenset()

    def test_scalar_conjugate(self):
        c = 2.0 * cmath.exp(-1j)
        assert adjoint_point_spectrum(ScalarOnC(c)) == frozenset({c.conjugate()})
        assert c.conjugate() == 2.0 * cmath.exp(1j)

    def test_direct_sum_with_rotation_block(self):
        theta = 0.7
        rot = ScalarOnC(cmath.exp(-1j * theta))
        rolewicz = ScalarMultiple(2.0, B)
        op = DirectSum(rot, rolewicz)
        assert adjoint_point_spectrum(op) == frozenset({cmath.exp(1j * theta)})

    def test_weighted_shift_is_unknown(self):
        assert adjoint_point_spectrum(BW) is None
        assert adjoint_point_spectrum(DirectSum(ScalarOnC(1.0), BW)) is None
        assert adjoint_point_spectrum(F) is None


class TestWeightSpec:
    def test_window_product(self):
        w = doubling_weights()
        assert w.window_product(1, 3) == 8
        assert w.window_product(-2, 0) == 1
        assert w.window_product(0, 1) == 2
        assert w.window_product(5, 4) == 1  # empty window

    def test_inverse_shifted_matches_reciprocal(self):
        w = doubling_weights()
        nu = w.inverse_shifted()
        for i in range(-5, 6):
            assert nu.weight(i) == 1 / w.weight(i + 1)

    def test_validation(self):
        with pytest.raises(ValueError):
            WeightSpec((1,), (1.0, 0.0))
        with pytest.raises(ValueError):
            WeightSpec((2, 1), (1.0, 2.0, 3.0))


class TestSerialization:
    def test_vector_round_trip(self):
        v = SeqVector.make("bi", [(-3, 1 + 2j), (4, -0.5j)])
        assert SeqVector.from_json(v.to_json()) == v

    def test_vector_csv(self):
        v = SeqVector.make("uni", [(0, 1.5 + 0j), (2, -1j)])
        rows = v.to_csv_rows()
        assert rows[0].startswith("0,1.5,")

    @pytest.mark.parametrize(
        "op",
        [
            B,
            F,
            BW,
            FW,
            ScalarOnC(2.0 * cmath.exp(-1j)),
            ScalarMultiple(2.0, BackwardShift()),
            DirectSum(ScalarOnC(1j), WeightedBackward(doubling_weights())),
        ],
    )
    def test_operator_round_trip(self, op):
        assert operators.operator_from_json(operators.operator_to_json(op)) == op

    def test_unilateral_rejects_negative_indices(self):
        with pytest.raises(ValueError):
            SeqVector.make("uni", [(-1, 1.0)])
