"""Chain encodings: shape rules, verification, lifts, drops, flips.

The worked instance is small enough to follow on paper.  Starting from
the source chain, the reduced costs of basis {0,1} along mu = (1, t)
cross zero first at column 2 (r_2 and r_3 differ by eps-order terms),
which pins down the bottom flip exactly; the edge {0,1,2} then carries
the two feasible bases {0,1} and {1,2}, which pins down the top flip.
"""

import pytest

from ccp.encoding import (
    FaceEntry,
    SimplexEncoding,
    bottom_equality_tags,
    drop_simplex,
    encoding_from_obj,
    encoding_to_obj,
    entry_from_obj,
    entry_labels,
    entry_to_obj,
    facet_flip,
    is_feasible_ground_basis,
    lift_simplex,
    make_entry,
    relint_witnesses,
    tuple_shape_ok,
    verify_tuple,
)
from ccp.errors import TheoremViolationError
from ccp.instance import CcpInstance
from ccp.paramspace import derive_constants
from ccp.rat import ONE, ZERO, rat
from ccp.walk import standard_source

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


def setup_chain():
    inst = worked_instance()
    consts = derive_constants(inst)
    source = standard_source(inst, consts)
    return inst, consts, source


class TestEntries:
    def test_make_entry_sorts(self):
        e = make_entry((3, 1), (2,), (0,))
        assert e.S == (1, 3)
        assert e.free_coords(4) == (1, 3)

    def test_serialization_one_based(self):
        e = make_entry((0, 2), (1,), (0,))
        obj = entry_to_obj(e)
        assert obj == {"S": [1, 3], "I0": [2], "I1": [1]}
        assert entry_from_obj(obj) == e

    def test_encoding_roundtrip(self):
        enc = SimplexEncoding(
            entries=(
                make_entry((0, 1, 2), (), (0,)),
                make_entry((0, 1), (), (0,)),
            )
        )
        assert encoding_from_obj(encoding_to_obj(enc)) == enc


class TestShape:
    def test_source_shape(self):
        _, _, source = setup_chain()
        assert source.entries == (make_entry((0, 1), (1,), (0,)),)
        assert tuple_shape_ok(2, source)

    def test_top_entry_constraints(self):
        # Top I0 must be exactly {k, ..., d-1} and I1 a singleton.
        bad_i0 = SimplexEncoding(entries=(make_entry((0, 1), (), (0,)),))
        assert not tuple_shape_ok(2, bad_i0)
        bad_i1 = SimplexEncoding(entries=(make_entry((0, 1), (1,), ()),))
        assert not tuple_shape_ok(2, bad_i1)
        bad_s = SimplexEncoding(entries=(make_entry((0,), (1,), (0,)),))
        assert not tuple_shape_ok(2, bad_s)

    def test_level_bounds(self):
        assert not tuple_shape_ok(2, SimplexEncoding(entries=()))
        e = make_entry((0, 1), (), (0,))
        too_deep = SimplexEncoding(entries=(e, e, e))
        assert not tuple_shape_ok(2, too_deep)

    def test_step_must_be_single_tightening(self):
        top = make_entry((0, 1), (), (0,))
        two_moves = SimplexEncoding(
            entries=(make_entry((0, 1, 2), (1,), (0,)), top)
        )
        assert not tuple_shape_ok(2, two_moves)
        good = SimplexEncoding(
            entries=(make_entry((0, 1, 2), (), (0,)), top)
        )
        assert tuple_shape_ok(2, good)

    def test_coordinate_cannot_join_both_sides(self):
        top = make_entry((0, 1), (), (0,))
        overlap = SimplexEncoding(
            entries=(make_entry((0, 1), (0,), (0,)), top)
        )
        assert not tuple_shape_ok(2, overlap)


class TestVerify:
    def test_source_verifies(self):
        inst, consts, source = setup_chain()
        assert verify_tuple(inst, consts, source)

    def test_infeasible_basis_fails(self):
        inst, consts, _ = setup_chain()
        # {0, 2} = {(1,0), (2,1)} needs a negative weight for b.
        assert not is_feasible_ground_basis(inst, (0, 2))
        enc = SimplexEncoding(entries=(make_entry((0, 2), (1,), (0,)),))
        assert not verify_tuple(inst, consts, enc)

    def test_empty_region_fails(self):
        inst, consts, _ = setup_chain()
        # Basis {2,3} is feasible but loses to {0,1} at mu = (1, 0).
        assert is_feasible_ground_basis(inst, (2, 3))
        enc = SimplexEncoding(entries=(make_entry((2, 3), (1,), (0,)),))
        assert not verify_tuple(inst, consts, enc)

    def test_malformed_shape_fails(self):
        inst, consts, _ = setup_chain()
        enc = SimplexEncoding(entries=(make_entry((0, 1), (), (0,)),))
        assert not verify_tuple(inst, consts, enc)


class TestLiftDrop:
    def test_lift_frees_next_coordinate(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        assert lifted.entries == (
            make_entry((0, 1), (1,), (0,)),
            make_entry((0, 1), (), (0,)),
        )
        assert verify_tuple(inst, consts, lifted)

    def test_drop_inverts_lift(self):
        _, _, source = setup_chain()
        lifted = lift_simplex(source, 2)
        assert drop_simplex(lifted, 2) == source

    def test_drop_requires_prefix_shape(self):
        _, _, source = setup_chain()
        assert drop_simplex(source, 2) is None
        after_flip = SimplexEncoding(
            entries=(
                make_entry((0, 1, 2), (), (0,)),
                make_entry((0, 1), (), (0,)),
            )
        )
        assert drop_simplex(after_flip, 2) is None

    def test_lift_at_full_level_rejected(self):
        _, _, source = setup_chain()
        lifted = lift_simplex(source, 2)
        with pytest.raises(AssertionError):
            lift_simplex(lifted, 2)


class TestFlips:
    def test_bottom_flip_walks_to_the_crossing(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        flipped = facet_flip(inst, consts, lifted, 0)
        # Along mu = (1, t) the reduced cost of column 2 hits zero before
        # t reaches 1, so the segment's other endpoint grows the support.
        assert flipped.entries == (
            make_entry((0, 1, 2), (), (0,)),
            make_entry((0, 1), (), (0,)),
        )
        assert verify_tuple(inst, consts, flipped)

    def test_top_flip_crosses_the_edge(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        node = facet_flip(inst, consts, lifted, 0)
        flipped = facet_flip(inst, consts, node, 1)
        # The edge support {0,1,2} has exactly the feasible bases {0,1}
        # and {1,2}; flipping the top moves to the other one.
        assert flipped.entries == (
            make_entry((0, 1, 2), (), (0,)),
            make_entry((1, 2), (), (0,)),
        )
        assert verify_tuple(inst, consts, flipped)

    def test_flips_are_involutions(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        node = facet_flip(inst, consts, lifted, 0)
        for enc, pos in ((lifted, 0), (node, 0), (node, 1)):
            other = facet_flip(inst, consts, enc, pos)
            assert facet_flip(inst, consts, other, pos) == enc

    def test_flip_shares_the_facet(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        flipped = facet_flip(inst, consts, lifted, 0)
        assert flipped.entries[1] == lifted.entries[1]
        assert flipped.entries[0] != lifted.entries[0]

    def test_drop_shaped_top_cannot_flip(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        # The facet omitting the lifted top is the drop facet; asking for
        # a flip there is a caller error.
        with pytest.raises(TheoremViolationError):
            facet_flip(inst, consts, lifted, 1)

    def test_single_entry_chain_has_no_flips(self):
        inst, consts, source = setup_chain()
        with pytest.raises(AssertionError):
            facet_flip(inst, consts, source, 0)


class TestLabels:
    def test_source_label(self):
        _, consts, source = setup_chain()
        assert entry_labels(consts, source) == (0,)

    def test_mixed_chain_labels(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        assert entry_labels(consts, lifted) == (0, 0)
        node = facet_flip(inst, consts, lifted, 0)
        # Bottom support {0,1,2} leans color 0; top {0,1} is color 0.
        assert entry_labels(consts, node) == (0, 0)


class TestWitnesses:
    def test_source_witness_is_the_corner(self):
        inst, consts, source = setup_chain()
        assert relint_witnesses(inst, consts, source) == ((ONE, ZERO),)

    def test_witnesses_span_the_lifted_segment(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        w0, w1 = relint_witnesses(inst, consts, lifted)
        assert w0 == (ONE, ZERO)
        # The second witness rides mu_2 upward until the first constraint
        # bites; it must stay in the simplex and leave the bottom vertex.
        assert w1 != w0
        assert w1[0] + w1[1] == ONE
        assert w1[0] >= 0 and w1[1] > 0

    def test_witness_count_matches_level(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        node = facet_flip(inst, consts, lifted, 0)
        assert len(relint_witnesses(inst, consts, source)) == 1
        assert len(relint_witnesses(inst, consts, lifted)) == 2
        assert len(relint_witnesses(inst, consts, node)) == 2

    def test_bottom_tags_square(self):
        inst, consts, source = setup_chain()
        lifted = lift_simplex(source, 2)
        node = facet_flip(inst, consts, lifted, 0)
        tags = bottom_equality_tags(node, node.top.S)
        assert sorted(tags) == [("c1", 0), ("col", 2)]
