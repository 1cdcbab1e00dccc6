"""Tests for the symplectic polar space machinery.

The small spaces here are fully enumerable, so most checks are exhaustive
rather than sampled: the brute-force side is the oracle.
"""

import itertools
import random

import pytest

from polarmub import algebra, polar
from polarmub.errors import (
    DimensionMismatch,
    NotDisjoint,
    NotIsotropic,
    NotRankTwo,
    PointOnGenerator,
    ScaleExceeded,
    WrongRank,
)
from polarmub.polar import PolarSpace


W32 = PolarSpace(2, 2)
W33 = PolarSpace(3, 2)
W52 = PolarSpace(2, 3)


def is_isotropic(space, basis):
    return all(
        space.symp_form(u, v) == 0 for u, v in itertools.combinations(basis, 2)
    )


# -- points and the form


def test_point_counts():
    assert W32.num_points == 15
    assert W33.num_points == 40
    assert W52.num_points == 63
    assert PolarSpace(5, 2).num_points == 156


def test_symp_form_first_summand():
    e0 = (1, 0, 0, 0)
    e1 = (0, 1, 0, 0)
    assert W32.symp_form(e0, e1) == 1


def test_symp_form_alternating_and_bilinear():
    rng = random.Random(3)
    for _ in range(50):
        u = tuple(rng.randrange(3) for _ in range(4))
        v = tuple(rng.randrange(3) for _ in range(4))
        w = tuple(rng.randrange(3) for _ in range(4))
        assert W33.symp_form(u, u) == 0
        assert (W33.symp_form(u, v) + W33.symp_form(v, u)) % 3 == 0
        uv = tuple((a + b) % 3 for a, b in zip(u, v))
        assert W33.symp_form(uv, w) == (
            W33.symp_form(u, w) + W33.symp_form(v, w)
        ) % 3


def test_symp_form_derived_value():
    assert W33.symp_form((1, 1, 0, 1), (0, 1, 1, 0)) == 0


def test_symp_form_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        W32.symp_form((1, 0), (0, 1))


def test_form_matrix_is_nondegenerate():
    for space in (W32, W33):
        assert len(algebra.rref(space.form, space.field)) == space.dim


# -- generator catalog


def test_generator_counts():
    assert W32.num_generators == 15
    assert W33.num_generators == 40
    assert W52.num_generators == 135


def test_generators_are_maximal_isotropic_with_full_masks():
    for space in (W32, W33, W52):
        per_gen = (space.d**space.n - 1) // (space.d - 1)
        for g in space.generators:
            assert len(g.basis) == space.n
            assert is_isotropic(space, g.basis)
            assert bin(g.point_mask).count("1") == per_gen
            assert algebra.rref(g.basis, space.field) == g.basis


def test_generator_order_is_lexicographic():
    bases = [g.basis for g in W33.generators]
    assert bases == sorted(bases)


def test_scale_guard():
    with pytest.raises(ScaleExceeded):
        PolarSpace(2, 6).generators  # ~4.9M generators is over budget


def test_collinear_iff_form_vanishes():
    # Two distinct points lie on a common generator iff F(u, v) = 0.
    for space in (W32, W33):
        on_common = set()
        for g in space.generators:
            pts = space.point_indices(g.point_mask)
            for a, b in itertools.combinations(pts, 2):
                on_common.add((a, b))
        for i, j in itertools.combinations(range(space.num_points), 2):
            expected = space.symp_form(space.points[i], space.points[j]) == 0
            assert ((i, j) in on_common) == expected


# -- perp


def test_perp_of_whole_space_is_zero():
    whole = tuple(
        tuple(1 if i == j else 0 for j in range(4)) for i in range(4)
    )
    assert polar.perp(whole, W32) == ()


def test_perp_of_point_contains_point():
    for idx in range(W32.num_points):
        v = W32.points[idx]
        pp = polar.perp((v,), W32)
        assert len(pp) == 3
        assert algebra.row_space_contains(pp, v, W32.field)


def test_double_perp_is_identity_on_lines():
    rng = random.Random(17)
    for _ in range(20):
        g = W33.generators[rng.randrange(W33.num_generators)]
        assert polar.perp(polar.perp(g.basis, W33), W33) == g.basis


def test_perp_reverses_inclusion():
    for g in W52.generators[:10]:
        line = g.basis[:2]
        p_line = polar.perp(algebra.rref(line, W52.field), W52)
        p_gen = polar.perp(g.basis, W52)
        for row in p_gen:
            assert algebra.row_space_contains(p_line, row, W52.field)


# -- nearest generator, hyperplane bijection, generators through


def test_nearest_generator_exhaustive_w32():
    # For every line g and every point x off g, exactly one generator
    # contains x and meets g in an (N-2)-space; it is span(x, x^perp ∩ g).
    for g in W32.generators:
        off = [i for i in range(15) if not (g.point_mask >> i) & 1]
        assert len(off) == 12
        for idx in off:
            x = W32.point(idx)
            got = polar.nearest_generator(x, g, W32)
            candidates = [
                h
                for h in W32.generators
                if (h.point_mask >> idx) & 1
                and len(algebra.subspace_meet(h.basis, g.basis, W32.field))
                == W32.n - 1
            ]
            assert candidates == [got]


def test_nearest_generator_rejects_incident_point():
    g = W32.generators[0]
    idx = W32.point_indices(g.point_mask)[0]
    with pytest.raises(PointOnGenerator):
        polar.nearest_generator(W32.point(idx), g, W32)


def test_nearest_generator_meet_dimension_w52():
    g = W52.generators[0]
    for idx in range(W52.num_points):
        if (g.point_mask >> idx) & 1:
            continue
        got = polar.nearest_generator(W52.point(idx), g, W52)
        meet = algebra.subspace_meet(got.basis, g.basis, W52.field)
        assert len(meet) == 2  # a projective line
        break


def _disjoint_pair(space):
    gens = space.generators
    for g in gens:
        for h in gens:
            if h.gen_index > g.gen_index and not (g.point_mask & h.point_mask):
                return g, h
    raise AssertionError("no disjoint pair found")


def test_hyperplane_map_counts():
    for space, expect in ((W32, 3), (W33, 4), (W52, 7)):
        g, h = _disjoint_pair(space)
        mapping = polar.hyperplane_map(g, h, space)
        assert len(mapping) == expect
        assert len(set(mapping.values())) == expect
        for basis in mapping.values():
            assert len(basis) == space.n - 1


def test_hyperplane_map_requires_disjoint():
    g = W32.generators[0]
    with pytest.raises(NotDisjoint):
        polar.hyperplane_map(g, g, W32)


def test_generators_through_point():
    for space, expect in ((W32, 3), (W33, 4)):
        s = (space.points[0],)
        through = polar.generators_through(s, space)
        assert len(through) == expect
        for g in through:
            assert (g.point_mask >> space.point_index[space.points[0]]) & 1


def test_generators_through_isotropic_line_w52():
    line = W52.generators[0].basis[:2]
    through = polar.generators_through(algebra.rref(line, W52.field), W52)
    assert len(through) == 3


def test_generators_through_errors():
    with pytest.raises(WrongRank):
        polar.generators_through((W52.points[0],), W52)
    bad = algebra.rref(((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)), W52.field)
    assert W52.symp_form(bad[0], bad[1]) != 0
    with pytest.raises(NotIsotropic):
        polar.generators_through(bad, W52)


# -- transversals, reguli, antiregularity


def test_common_transversals_of_disjoint_pair():
    for space in (W32, W33):
        g, h = _disjoint_pair(space)
        trans = polar.common_transversals([g, h], space)
        assert len(trans) == space.d + 1
        for a, b in itertools.combinations(trans, 2):
            assert not (a.point_mask & b.point_mask)


def test_double_perp_back_to_pair_odd_order():
    g, h = _disjoint_pair(W33)
    inner = polar.common_transversals([g, h], W33)
    outer = polar.common_transversals(inner, W33)
    assert {t.gen_index for t in outer} == {g.gen_index, h.gen_index}


def test_double_perp_size_values():
    g, h = _disjoint_pair(W32)
    assert polar.double_perp_size(g, h, W32) == 3
    g, h = _disjoint_pair(W33)
    assert polar.double_perp_size(g, h, W33) == 2


def test_grid_meets_every_line_of_w32():
    # The 9 points of a (3x3)-grid meet every one of the 15 lines.
    g, h = _disjoint_pair(W32)
    regulus = polar.common_transversals([g, h], W32)
    grid_mask = 0
    for t in regulus:
        grid_mask |= t.point_mask
    assert bin(grid_mask).count("1") == 9
    for line in W32.generators:
        assert line.point_mask & grid_mask


def test_transversals_require_rank_two():
    with pytest.raises(NotRankTwo):
        polar.common_transversals([W52.generators[0]], W52)


def test_transversals_require_disjoint_input():
    g = W32.generators[0]
    meeting = next(
        h
        for h in W32.generators
        if h.gen_index != g.gen_index and h.point_mask & g.point_mask
    )
    with pytest.raises(NotDisjoint):
        polar.common_transversals([g, meeting], W32)


def test_gq_projection_property():
    # Unique line on x meeting X, for every non-incident point-line pair.
    for space in (W32, W33):
        for X in space.generators:
            for idx in range(space.num_points):
                if (X.point_mask >> idx) & 1:
                    continue
                on_x = [
                    g
                    for g in space.generators
                    if (g.point_mask >> idx) & 1 and g.point_mask & X.point_mask
                ]
                assert len(on_x) == 1


def test_symplectic_group_order():
    mats = polar.symplectic_group(W32)
    assert len(mats) == 720
    identity = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    assert identity in mats
