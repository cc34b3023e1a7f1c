"""Instances, validation, and the general-position pipeline."""

import pytest

from ccp.errors import PreconditionError
from ccp.instance import (
    CcpInstance,
    ColorfulChoice,
    caratheodory_reduce,
    choice_is_certified,
    clear_denominators,
    coordinate_bound,
    find_P2_violation,
    is_square_colorful,
    make_instance,
    map_solution_back,
    modulus_bound,
    perturb_b,
    perturb_to_general_position,
    rescale_to_integers,
    satisfies_P1,
    satisfies_P2,
    sphere_replace,
    validate,
)
from ccp.localsearch import run_local_search
from ccp.lp import ray_embrace
from ccp.rat import rat

R = rat


def worked_instance():
    return CcpInstance(
        dim=2,
        colors=(
            ((R(1), R(0)), (R(0), R(1))),
            ((R(2), R(1)), (R(1), R(2))),
        ),
        b=(R(1), R(1)),
    )


class TestValidation:
    def test_valid(self):
        assert validate(worked_instance()) == []

    def test_zero_b(self):
        inst = CcpInstance(dim=1, colors=(((R(1),),),), b=(R(0),))
        assert "b is the zero vector" in validate(inst)

    def test_embrace_failures_are_one_based(self):
        inst = CcpInstance(
            dim=2,
            colors=(
                ((R(1), R(0)), (R(0), R(1))),
                ((R(-1), R(0)), (R(0), R(-1))),
            ),
            b=(R(1), R(1)),
        )
        assert validate(inst) == ["color 2 does not ray-embrace b"]

    def test_empty_color(self):
        inst = CcpInstance(dim=1, colors=((), ((R(1),),)), b=(R(1),))
        assert "color 1 is empty" in validate(inst)

    def test_square_shape(self):
        assert is_square_colorful(worked_instance())
        inst = CcpInstance(dim=2, colors=(((R(1), R(1)),),), b=(R(1), R(1)))
        assert not is_square_colorful(inst)


class TestChoiceCertificate:
    def test_good(self):
        choice = ColorfulChoice(
            point_indices=(0, 1), coefficients=(rat(1, 2), rat(1, 2))
        )
        assert choice_is_certified(worked_instance(), choice)

    def test_wrong_sum(self):
        choice = ColorfulChoice(point_indices=(0, 1), coefficients=(R(1), R(1)))
        assert not choice_is_certified(worked_instance(), choice)

    def test_negative_coefficient(self):
        choice = ColorfulChoice(
            point_indices=(0, 0), coefficients=(R(-1), R(1))
        )
        assert not choice_is_certified(worked_instance(), choice)

    def test_index_out_of_range(self):
        choice = ColorfulChoice(point_indices=(0, 5), coefficients=(R(0), R(0)))
        assert not choice_is_certified(worked_instance(), choice)


class TestPositionProperties:
    def test_worked_instance_has_both(self):
        inst = worked_instance()
        assert satisfies_P1(inst)
        assert satisfies_P2(inst)

    def test_p1_needs_integers(self):
        inst = make_instance(
            1, (rat(1, 2),), (((rat(1, 2),),),)
        )
        assert not satisfies_P1(inst)

    def test_p1_needs_square_colors(self):
        inst = make_instance(
            2,
            (1, 1),
            (((1, 0), (0, 1), (1, 1)), ((2, 1), (1, 2))),
        )
        assert not satisfies_P1(inst)

    def test_p2_violation_is_reported(self):
        # (2,2) spans b = (1,1) on its own: the 1-subset {2} violates P2.
        pts = [(R(1), R(0)), (R(0), R(1)), (R(2), R(2))]
        assert find_P2_violation(pts, (R(1), R(1))) == (2,)
        assert find_P2_violation(pts[:2], (R(1), R(1))) is None

    def test_p2_trivial_in_dimension_one(self):
        assert find_P2_violation([(R(5),)], (R(1),)) is None

    def test_p2_subset_limit(self):
        pts = [(R(i), R(1), R(0), R(0)) for i in range(10)]
        with pytest.raises(PreconditionError, match="exceeds the limit"):
            find_P2_violation(pts, (R(1),) * 4, subset_limit=5)


class TestBounds:
    def test_coordinate_bound(self):
        assert coordinate_bound(worked_instance()) == 2

    def test_modulus_bound(self):
        # d = 2, m = 2: N = 2! * 2^2 = 8.
        assert modulus_bound(worked_instance()) == 8

    def test_bound_includes_b(self):
        inst = make_instance(1, (9,), (((1,),),))
        assert coordinate_bound(inst) == 9

    def test_requires_integers(self):
        inst = make_instance(1, (1,), (((rat(1, 2),),),))
        with pytest.raises(AssertionError):
            coordinate_bound(inst)


class TestRescale:
    def test_worked_instance_b_is_lifted(self):
        # Points are integer already; ||b||_1 = 2 < 3 = ||(2,1)||_1, so b
        # doubles to (2,2).
        scaled = rescale_to_integers(worked_instance())
        assert scaled.b == (R(2), R(2))
        assert scaled.colors == worked_instance().colors

    def test_denominators_cleared_per_point(self):
        inst = make_instance(
            2,
            (rat(1, 3), R(1)),
            ((( rat(1, 2), rat(2, 3)), (R(1), R(0))),),
        )
        scaled = rescale_to_integers(inst)
        assert scaled.colors[0][0] == (R(3), R(4))
        assert scaled.colors[0][1] == (R(1), R(0))
        # b: lcm 3 gives (1,3) with l1 norm 4, then doubles so it is not
        # smaller than (3,4)'s norm 7.
        assert scaled.b == (R(2), R(6))

    def test_embrace_preserved(self, rng):
        from conftest import random_rational_instance

        inst = random_rational_instance(rng, 2, degenerate=False)
        scaled = rescale_to_integers(inst)
        for color in scaled.colors:
            assert ray_embrace(color, scaled.b) is not None


class TestSphereReplace:
    def test_axis_points(self):
        inst = make_instance(2, (1, 1), (((1, 0),),))
        out, origins = sphere_replace(inst, rat(1, 64))
        assert out.colors[0] == (
            (rat(65, 64), R(0)),
            (rat(63, 64), R(0)),
            (R(1), rat(1, 64)),
            (R(1), rat(-1, 64)),
        )
        assert origins == ((0, 0, 0, 0),)

    def test_origins_track_points(self):
        inst = make_instance(1, (1,), (((1,), (2,)),))
        out, origins = sphere_replace(inst, rat(1, 4))
        assert origins == ((0, 0, 1, 1),)
        assert out.colors[0] == (
            (rat(5, 4),),
            (rat(3, 4),),
            (rat(9, 4),),
            (rat(7, 4),),
        )


class TestPerturbB:
    def test_moment_offsets(self):
        inst = make_instance(2, (1, 1), (((1, 0),),))
        out = perturb_b(inst, rat(1, 64))
        assert out.b == (
            R(1) + rat(1, 4096),
            R(1) + rat(1, 16777216),
        )

    def test_dimension_one(self):
        inst = make_instance(1, (3,), (((1,),),))
        assert perturb_b(inst, rat(1, 2)).b == (rat(7, 2),)


class TestCaratheodoryReduce:
    def test_reduces_to_d_points(self):
        pts = [(R(1), R(0)), (R(0), R(1)), (R(1), R(1))]
        keep = caratheodory_reduce(pts, (R(2), R(2)))
        assert len(keep) == 2
        assert ray_embrace([pts[i] for i in keep], (R(2), R(2))) is not None

    def test_needs_spanning_points(self):
        pts = [(R(1), R(0)), (R(2), R(0))]
        with pytest.raises(PreconditionError):
            caratheodory_reduce(pts, (R(1), R(0)))


def test_clear_denominators():
    inst = make_instance(1, (rat(1, 2),), (((rat(1, 3),),),))
    out = clear_denominators(inst, 6)
    assert out.b == (R(3),)
    assert out.colors[0][0] == (R(2),)


class TestPipeline:
    def test_fast_path_identity(self):
        inst = worked_instance()
        ground, pmap = perturb_to_general_position(inst)
        assert pmap.fast_path
        assert ground == inst
        assert pmap.provenance == ((0, 1), (0, 1))

    def test_duplicate_point_takes_slow_path(self):
        inst = make_instance(
            2,
            (1, 1),
            (
                ((1, 0), (0, 1), (1, 0)),
                ((2, 1), (1, 2)),
            ),
        )
        ground, pmap = perturb_to_general_position(inst)
        assert not pmap.fast_path
        assert satisfies_P1(ground)
        assert satisfies_P2(ground)
        for color in ground.colors:
            assert len(color) == 2
        for ci, prov in enumerate(pmap.provenance):
            assert len(prov) == 2
            for original_index in prov:
                assert 0 <= original_index < len(inst.colors[ci])

    def test_oversized_color_takes_slow_path(self):
        # P1 requires exactly d points per color, so even a degenerate-free
        # instance with a 3-point color must go through the reduction.
        inst = make_instance(
            2,
            (1, 1),
            (
                ((1, 0), (0, 1), (3, 1)),
                ((2, 1), (1, 2)),
            ),
        )
        ground, pmap = perturb_to_general_position(inst)
        assert not pmap.fast_path
        for color in ground.colors:
            assert len(color) == 2
        assert satisfies_P1(ground) and satisfies_P2(ground)

    def test_b_parallel_point_takes_slow_path(self):
        inst = make_instance(
            2,
            (1, 1),
            (
                ((2, 2), (0, 1)),
                ((2, 1), (1, 2)),
            ),
        )
        ground, pmap = perturb_to_general_position(inst)
        assert not pmap.fast_path
        assert satisfies_P2(ground)

    def test_invalid_instance_rejected(self):
        inst = make_instance(2, (1, 1), (((1, 0), (0, 1)),))
        with pytest.raises(PreconditionError):
            perturb_to_general_position(inst)

    def test_map_back_recertifies(self):
        inst = make_instance(
            2,
            (1, 1),
            (
                ((1, 0), (0, 1), (1, 0)),
                ((2, 1), (1, 2)),
            ),
        )
        ground, pmap = perturb_to_general_position(inst)
        res = run_local_search(ground)
        back = map_solution_back(pmap, res.choice)
        assert choice_is_certified(inst, back)


class TestRandomizedPipeline:
    def test_random_rational_instances(self, rng):
        from conftest import random_rational_instance

        for _ in range(10):
            inst = random_rational_instance(rng, 2)
            ground, pmap = perturb_to_general_position(inst)
            assert satisfies_P1(ground)
            assert satisfies_P2(ground)
            res = run_local_search(ground)
            back = map_solution_back(pmap, res.choice)
            assert choice_is_certified(inst, back)
