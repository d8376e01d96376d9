from fractions import Fraction

import pytest

from coalg.coalgebra import zoo, zoo_members
from coalg.codual import comodule_map_space
from coalg.comodule import (Bicomodule, LeftComodule, RightComodule,
                            dual_bicomodule, dual_of_left, dual_of_right,
                            hom_coaction, hom_coaction_factored,
                            regular_bicomodule, regular_left, regular_right,
                            switch_bicomodule, tensor_bicomodule,
                            validate_bicomodule, validate_left, validate_right,
                            verify_quadruple)
from coalg.errors import DimensionError, InvalidStructureError, UsageError
from coalg.linalg import contract, identity_matrix, qarray, tensors_equal, zeros
from tests.conftest import make_rational_matrix

Q = Fraction


def test_regular_bicomodule_valid_for_every_zoo_member():
    for c in zoo_members():
        assert validate_bicomodule(regular_bicomodule(c)) == [], c.name


def test_regular_coactions_of_primitive2():
    reg = regular_bicomodule(zoo("primitive2"))
    expected_lc = zeros((2, 2, 2))
    expected_lc[0, 0, 0] = Q(1)  # g -> g (x) g
    expected_lc[1, 1, 0] = Q(1)  # x -> g (x) x
    expected_lc[1, 0, 1] = Q(1)  # x -> x (x) g
    assert tensors_equal(reg.lc, expected_lc)


def test_point_regular_is_one():
    reg = regular_bicomodule(zoo("trivial"))
    assert tensors_equal(reg.lc, qarray([[[1]]]))
    assert tensors_equal(reg.rc, qarray([[[1]]]))


def test_regular_compatibility_is_coassociativity():
    # Both sides of the commutation law reduce to the same reassociated
    # coproduct composite; check the three tensors agree.
    for c in zoo_members():
        reg = regular_bicomodule(c)
        compat_lhs = contract(reg.lc, reg.rc, [(1, 0)]).transpose((0, 2, 1, 3))
        compat_rhs = contract(reg.lc, reg.rc, [(0, 1)]).transpose((2, 0, 1, 3))
        coassoc = contract(c.omega, c.omega, [(2, 0)])  # [a, m, v, g]
        assert tensors_equal(compat_lhs, coassoc.transpose((0, 2, 1, 3)))
        assert tensors_equal(compat_rhs, coassoc.transpose((0, 2, 1, 3)))


def test_validation_refuses_invalid_base_coalgebra():
    from coalg.coalgebra import Coalgebra
    bad = Coalgebra("bad", 1, qarray([[[2]]]), qarray([1]))
    u = LeftComodule(bad, 1, qarray([[[1]]]))
    with pytest.raises(InvalidStructureError):
        validate_left(u)


# -- duals ------------------------------------------------------------------

def test_dual_of_point_regular():
    rc = dual_of_left(regular_left(zoo("trivial"))).rc
    assert tensors_equal(rc, qarray([[[1]]]))


def test_double_dual_is_identity_on_coefficients():
    u = regular_left(zoo("grouplike", 2))
    assert tensors_equal(dual_of_right(dual_of_left(u)).lc, u.lc)
    w = regular_right(zoo("primitive2"))
    assert tensors_equal(dual_of_left(dual_of_right(w)).rc, w.rc)


def test_dual_bicomodule_valid_for_every_zoo_member():
    for c in zoo_members():
        assert validate_bicomodule(dual_bicomodule(regular_bicomodule(c))) == [], c.name


def test_dual_bicomodule_of_primitive2_has_dim_two():
    dual = dual_bicomodule(regular_bicomodule(zoo("primitive2")))
    assert dual.dim == 2
    assert validate_bicomodule(dual) == []


# -- switch -----------------------------------------------------------------

def test_switch_bicomodule_valid_over_cocommutative_base():
    sw = switch_bicomodule(regular_left(zoo("primitive2")))
    assert validate_bicomodule(sw) == []
    assert tensors_equal(sw.rc, sw.lc)


def test_switch_of_regular_equals_regular_when_cocommutative():
    for name in ("trivial", "primitive2"):
        c = zoo(name)
        reg = regular_bicomodule(c)
        sw = switch_bicomodule(regular_left(c))
        assert tensors_equal(sw.rc, reg.rc)


def test_basis_swapped_right_coaction_violates_compatibility():
    c = zoo("grouplike", 2)
    reg = regular_bicomodule(c)
    swapped = reg.rc[[1, 0]].copy()  # precompose the right coaction with a swap
    mangled = Bicomodule(LeftComodule(c, 2, reg.lc.copy()),
                         RightComodule(c, 2, swapped))
    violations = validate_bicomodule(mangled)
    assert any(v.rule == "compatibility" for v in violations)


# -- tensor products ----------------------------------------------------------

def test_tensor_of_points_is_point():
    t = tensor_bicomodule(regular_left(zoo("trivial")), regular_right(zoo("trivial")))
    assert t.dim == 1
    assert validate_bicomodule(t) == []


@pytest.mark.parametrize("name,param", [("grouplike", 2), ("primitive2", None)])
def test_tensor_of_regulars_is_a_valid_bicomodule(name, param):
    c = zoo(name, param)
    t = tensor_bicomodule(regular_left(c), regular_right(c))
    assert t.dim == c.dim * c.dim
    assert validate_bicomodule(t) == []


def test_tensor_base_mismatch():
    with pytest.raises(UsageError):
        tensor_bicomodule(regular_left(zoo("trivial")),
                          regular_right(zoo("grouplike", 2)))


def test_zero_dimensional_carrier_is_accepted():
    c = zoo("primitive2")
    empty_left = LeftComodule(c, 0, zeros((0, 0, 2)))
    empty_right = RightComodule(c, 0, zeros((0, 0, 2)))
    assert validate_bicomodule(Bicomodule(empty_left, empty_right)) == []
    t = tensor_bicomodule(empty_left, regular_right(c))
    assert t.dim == 0


# -- Hom coactions ------------------------------------------------------------

def test_hom_coaction_of_identity_on_point():
    reg = regular_bicomodule(zoo("trivial"))
    out = hom_coaction("L2", identity_matrix(1), reg, reg)
    assert tensors_equal(out, qarray([[[1]]]))


def test_hom_coaction_r1_of_identity_is_the_coproduct():
    c = zoo("primitive2")
    reg = regular_bicomodule(c)
    out = hom_coaction("R1", identity_matrix(2), reg, reg)
    # the coproduct, read as a Hom(C, C (x) C) coefficient tensor
    assert tensors_equal(out, c.omega.transpose((2, 0, 1)))


def test_hom_coaction_routes_agree_on_random_maps(rng):
    for c in zoo_members():
        if c.dim > 4:
            continue
        reg = regular_bicomodule(c)
        for _ in range(5):
            phi = make_rational_matrix(rng, c.dim, c.dim)
            for which in ("L1", "R1", "L2", "R2"):
                direct = hom_coaction(which, phi, reg, reg)
                factored = hom_coaction_factored(which, phi, reg, reg)
                assert tensors_equal(direct, factored), (c.name, which)


def test_hom_coaction_shape_mismatch():
    reg = regular_bicomodule(zoo("primitive2"))
    with pytest.raises(DimensionError):
        hom_coaction("L1", zeros((3, 2)), reg, reg)
    with pytest.raises(UsageError):
        hom_coaction("L9", zeros((2, 2)), reg, reg)


def test_comodule_maps_tie_the_two_middle_coactions_together():
    # On solved comodule maps the second left coaction coincides with the
    # first right one; this is the defining identity of the solved space.
    c = zoo("primitive2")
    reg = regular_bicomodule(c)
    space = comodule_map_space(reg.left, reg.left)
    assert space.dim > 0
    for v in space.basis:
        phi = v.reshape(c.dim, c.dim)
        assert tensors_equal(hom_coaction("L2", phi, reg, reg),
                             hom_coaction("R1", phi, reg, reg))


# -- quadruple commutation ----------------------------------------------------

@pytest.mark.parametrize("name,param", [("trivial", None), ("primitive2", None),
                                        ("matrix", 2)])
def test_quadruple_structures_commute_on_regulars(name, param):
    c = zoo(name, param)
    reg = regular_bicomodule(c)
    assert verify_quadruple(reg, reg)


def test_quadruple_on_mixed_pair():
    c = zoo("primitive2")
    reg = regular_bicomodule(c)
    dual = dual_bicomodule(reg)
    assert verify_quadruple(reg, dual)
    assert verify_quadruple(dual, reg)
