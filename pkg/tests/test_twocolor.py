"""Splits between two embracing classes via segment bisection."""

import pytest

from ccp.errors import GeneralPositionError, PreconditionError
from ccp.instance import make_instance, rescale_to_integers
from ccp.linalg import vadd, vscale
from ccp.paramspace import derive_constants
from ccp.rat import ZERO, rat
from ccp.twocolor import classify_midpoint, find_split, iteration_cap
from conftest import random_square_instance, random_two_color_pair

R = rat


def check_split(res, C1, C2, b, k):
    d = len(b)
    assert res.k == k
    assert len(res.indices1) == k
    assert len(res.indices2) == d - k
    assert all(0 <= i < d for i in res.indices1 + res.indices2)
    assert all(c >= 0 for c in res.coefficients1 + res.coefficients2)
    total = (ZERO,) * d
    for i, c in zip(res.indices1, res.coefficients1):
        total = vadd(total, vscale(c, C1[i]))
    for i, c in zip(res.indices2, res.coefficients2):
        total = vadd(total, vscale(c, C2[i]))
    assert total == tuple(b)
    assert res.iterations <= res.iteration_cap


class TestWorkedSplit:
    C1 = ((R(1), R(0)), (R(0), R(1)))
    C2 = ((R(2), R(1)), (R(1), R(2)))
    b = (R(1), R(1))

    def test_unique_split(self):
        res = find_split(self.C1, self.C2, self.b, 1)
        assert res.fast_path is True
        assert res.indices1 == (1,)
        assert res.indices2 == (0,)
        assert res.coefficients1 == (R(1, 2),)
        assert res.coefficients2 == (R(1, 2),)
        assert res.iteration_cap == 830
        check_split(res, self.C1, self.C2, self.b, 1)

    def test_cap_formula(self):
        # After rescaling, m = 2 and N = 2! * 2^2 = 8; with the default
        # cost exponent 12 the breakpoint bit bound is 7 + 101*4 = 411.
        scaled = rescale_to_integers(
            make_instance(2, self.b, (self.C1, self.C2))
        )
        consts = derive_constants(scaled)
        assert iteration_cap(consts) == 2 * 411 + 8

    def test_deterministic(self):
        a = find_split(self.C1, self.C2, self.b, 1)
        b = find_split(self.C1, self.C2, self.b, 1)
        assert a == b


class TestPreconditions:
    def test_dimension_one(self):
        with pytest.raises(PreconditionError, match="dimension at least 2"):
            find_split(((R(2),),), ((R(3),),), (R(1),), 1)

    def test_wrong_class_size(self):
        C1 = ((R(1), R(0)), (R(0), R(1)), (R(1), R(1)))
        C2 = ((R(2), R(1)), (R(1), R(2)))
        with pytest.raises(PreconditionError, match="exactly d points"):
            find_split(C1, C2, (R(1), R(1)), 1)

    def test_k_range(self):
        C1 = ((R(1), R(0)), (R(0), R(1)))
        C2 = ((R(2), R(1)), (R(1), R(2)))
        for k in (0, 2):
            with pytest.raises(PreconditionError, match="1 <= k <= d-1"):
                find_split(C1, C2, (R(1), R(1)), k)

    def test_non_embracing_class(self):
        C1 = ((R(1), R(0)), (R(0), R(-1)))
        C2 = ((R(2), R(1)), (R(1), R(2)))
        with pytest.raises(PreconditionError, match="class 1"):
            find_split(C1, C2, (R(1), R(1)), 1)

    def test_dim_mismatch(self):
        C1 = ((R(1), R(0)), (R(0), R(1), R(2)))
        C2 = ((R(2), R(1)), (R(1), R(2)))
        with pytest.raises(PreconditionError, match="dimension mismatch"):
            find_split(C1, C2, (R(1), R(1)), 1)


class TestClassify:
    def scaled_worked(self):
        inst = rescale_to_integers(
            make_instance(
                2,
                (R(1), R(1)),
                (
                    ((R(1), R(0)), (R(0), R(1))),
                    ((R(2), R(1)), (R(1), R(2))),
                ),
            )
        )
        return inst, derive_constants(inst)

    def test_vertex_supports(self):
        ground, consts = self.scaled_worked()
        assert classify_midpoint(ground, consts, (0, 1), 1).kind == "high"
        assert classify_midpoint(ground, consts, (2, 3), 1).kind == "low"
        v = classify_midpoint(ground, consts, (0, 2), 1)
        assert v.kind == "found"
        assert v.basis == (0, 2)

    def test_edge_support(self):
        ground, consts = self.scaled_worked()
        # {(1,0),(0,1),(2,1)} carries the bases {0,1} and {1,2} for
        # b = (2,2), with class-one counts 2 and 1.
        v = classify_midpoint(ground, consts, (0, 1, 2), 1)
        assert v.kind == "found"
        assert v.basis == (1, 2)
        assert v.counts == (2, 1)
        v2 = classify_midpoint(ground, consts, (0, 1, 2), 2)
        assert v2.basis == (0, 1)

    def test_oversized_support(self):
        ground, consts = self.scaled_worked()
        with pytest.raises(GeneralPositionError, match="expected d or d\\+1"):
            classify_midpoint(ground, consts, (0, 1, 2, 3), 1)

    def test_padding_leak(self, rng):
        inst = random_square_instance(rng, 3)
        consts = derive_constants(inst)
        with pytest.raises(GeneralPositionError, match="padding"):
            classify_midpoint(inst, consts, (0, 1, 6), 1)


class TestThreeDimensional:
    C1 = ((R(3), R(1), R(1)), (R(1), R(3), R(1)), (R(1), R(1), R(3)))
    C2 = ((R(4), R(1), R(2)), (R(1), R(4), R(2)), (R(2), R(1), R(4)))
    b = (R(1), R(1), R(1))

    @pytest.mark.parametrize("k", [1, 2])
    def test_fast_path(self, k):
        res = find_split(self.C1, self.C2, self.b, k)
        assert res.fast_path is True
        check_split(res, self.C1, self.C2, self.b, k)

    @pytest.mark.parametrize("k", [1, 2])
    def test_fallback_path(self, k):
        # Class one contains b itself, which violates the spanning
        # condition and forces the perturbation fallback.
        C1 = ((R(1), R(1), R(1)), (R(1), R(0), R(0)), (R(0), R(1), R(0)))
        C2 = ((R(2), R(0), R(0)), (R(0), R(2), R(0)), (R(0), R(0), R(2)))
        res = find_split(C1, C2, self.b, k, c_exponent=3)
        assert res.fast_path is False
        check_split(res, C1, C2, self.b, k)


class TestRandomPairs:
    @pytest.mark.parametrize("d", [2, 3])
    def test_all_k(self, rng, d):
        for _ in range(3):
            C1, C2, b = random_two_color_pair(rng, d)
            for k in range(1, d):
                res = find_split(C1, C2, b, k, c_exponent=3)
                check_split(res, C1, C2, b, k)
