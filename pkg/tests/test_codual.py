from fractions import Fraction

import pytest

from coalg.coalgebra import zoo, zoo_members
from coalg.codual import (comodule_map_space, comodule_map_space_right,
                          counit_pairing_iso, left_codual, right_codual)
from coalg.comodule import (hom_coaction, regular_bicomodule, regular_left,
                            regular_right, validate_bicomodule)
from coalg.errors import UsageError
from coalg.linalg import coords_in_span, identity_matrix, qarray, tensors_equal, zeros
from tests.conftest import make_rational_matrix

Q = Fraction


def test_map_space_of_point_is_scalars():
    u = regular_left(zoo("trivial"))
    space = comodule_map_space(u, u)
    assert space.dim == 1
    assert tensors_equal(space.basis[0], qarray([1]))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_map_space_of_grouplike_is_diagonal_matrices(n):
    u = regular_left(zoo("grouplike", n))
    space = comodule_map_space(u, u)
    assert space.dim == n
    for s, v in enumerate(space.basis):
        expected = zeros((n, n))
        expected[s, s] = Q(1)
        assert tensors_equal(v.reshape(n, n), expected)


def test_map_space_of_primitive2_hand_solved():
    u = regular_left(zoo("primitive2"))
    space = comodule_map_space(u, u)
    assert space.dim == 2
    # echelon order: x -> g first, then the identity
    assert tensors_equal(space.basis[0], qarray([0, 1, 0, 0]))
    assert tensors_equal(space.basis[1], qarray([1, 0, 0, 1]))


def test_identity_always_lies_in_the_map_space():
    for c in zoo_members():
        u = regular_left(c)
        space = comodule_map_space(u, u)
        assert coords_in_span(space, identity_matrix(c.dim)) is not None, c.name


def test_matrix_outside_span_violates_the_defining_identity(rng):
    c = zoo("primitive2")
    reg = regular_bicomodule(c)
    space = comodule_map_space(reg.left, reg.left)
    rejected = 0
    for _ in range(10):
        phi = make_rational_matrix(rng, 2, 2)
        if coords_in_span(space, phi) is not None:
            continue
        rejected += 1
        lhs = hom_coaction("L2", phi, reg, reg)
        rhs = hom_coaction("R1", phi, reg, reg)
        assert not tensors_equal(lhs, rhs)
    assert rejected > 0


def test_right_map_space_of_regulars_matches_left_dimension():
    for c in zoo_members():
        left_dim = comodule_map_space(regular_left(c), regular_left(c)).dim
        right_dim = comodule_map_space_right(regular_right(c), regular_right(c)).dim
        assert left_dim == right_dim == c.dim, c.name


def test_map_space_base_mismatch():
    with pytest.raises(UsageError):
        comodule_map_space(regular_left(zoo("trivial")),
                           regular_left(zoo("primitive2")))


# -- coduals ------------------------------------------------------------------

def test_left_codual_dimensions():
    for name, param, expected in [("trivial", None, 1), ("primitive2", None, 2),
                                  ("matrix", 2, 4)]:
        c = zoo(name, param)
        cod = left_codual(regular_bicomodule(c))
        assert cod.dim == expected, name


def test_codual_induced_coactions_form_a_valid_bicomodule():
    for c in zoo_members():
        cod = left_codual(regular_bicomodule(c))
        assert validate_bicomodule(cod.as_bicomodule()) == [], c.name


def test_right_codual_of_regulars():
    for name, param in [("trivial", None), ("primitive2", None), ("matrix", 2)]:
        c = zoo(name, param)
        cod = right_codual(regular_bicomodule(c))
        assert cod.dim == c.dim
        assert validate_bicomodule(cod.as_bicomodule()) == []


def test_codual_dimension_equals_coalgebra_dimension():
    for c in zoo_members():
        assert left_codual(regular_bicomodule(c)).dim == c.dim, c.name


def test_counit_pairing_is_an_isomorphism_for_every_zoo_member():
    expected_dims = {"trivial": 1, "grouplike2": 2, "grouplike3": 3,
                     "grouplike4": 4, "matrix2": 4, "matrix3": 9,
                     "primitive2": 2}
    for c in zoo_members():
        rep = counit_pairing_iso(c)
        assert rep.dim_codual == expected_dims[c.name]
        assert rep.dim_dual == c.dim
        assert rep.invertible, c.name
        assert rep.intertwines_left and rep.intertwines_right, c.name
        assert rep.holds


def test_codual_of_codual_computes():
    # No identity is claimed between a carrier and its double codual;
    # this only pins down that the computation goes through.
    for c in (zoo("primitive2"), zoo("grouplike", 2)):
        once = left_codual(regular_bicomodule(c))
        twice = left_codual(once.as_bicomodule())
        assert twice.dim >= 0
        assert validate_bicomodule(twice.as_bicomodule()) == []
