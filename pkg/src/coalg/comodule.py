"""Left/right comodules and bicomodules in coefficient form.

Layout conventions (0-based, source index first):

  lc[k][i][a]   coefficient of c_a in the matrix element taking e_k to
                e_i, i.e. the left coaction sends e_k to
                sum_{i,a} lc[k][i][a] c_a (x) e_i
  rc[k][i][a]   likewise for the right coaction:
                e_k maps to sum_{i,a} rc[k][i][a] e_i (x) c_a

Hom(W, U) is realized as d_U x d_W matrices `phi` with phi[i][a] the
coefficient of u_i in the image of w_a (column a = image of w_a).
Coaction values on Hom carriers are laid out as (d_U, d_W, n) with the
coalgebra leg always last; flattening Hom indices is row-major (i, a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coalgebra import Coalgebra, Violation, ensure_valid
from .errors import DimensionError, UsageError
from .linalg import contract, identity_matrix, tensors_equal, zeros


@dataclass(eq=False)
class LeftComodule:
    over: Coalgebra
    dim: int
    lc: np.ndarray  # shape (dim, dim, over.dim)

    def __post_init__(self):
        _check_coaction_shape(self.lc, self.dim, self.over.dim, "left")

    def __eq__(self, other):
        if not isinstance(other, LeftComodule):
            return NotImplemented
        return (self.dim == other.dim and self.over == other.over
                and tensors_equal(self.lc, other.lc))


@dataclass(eq=False)
class RightComodule:
    over: Coalgebra
    dim: int
    rc: np.ndarray  # shape (dim, dim, over.dim)

    def __post_init__(self):
        _check_coaction_shape(self.rc, self.dim, self.over.dim, "right")

    def __eq__(self, other):
        if not isinstance(other, RightComodule):
            return NotImplemented
        return (self.dim == other.dim and self.over == other.over
                and tensors_equal(self.rc, other.rc))


@dataclass(eq=False)
class Bicomodule:
    left: LeftComodule
    right: RightComodule

    def __post_init__(self):
        if self.left.dim != self.right.dim:
            raise DimensionError(
                f"left carrier dimension {self.left.dim} differs from "
                f"right carrier dimension {self.right.dim}")
        if not self.left.over.same_structure(self.right.over):
            raise UsageError("left and right coactions live over different coalgebras")

    def __eq__(self, other):
        if not isinstance(other, Bicomodule):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    @property
    def over(self) -> Coalgebra:
        return self.left.over

    @property
    def dim(self) -> int:
        return self.left.dim

    @property
    def lc(self) -> np.ndarray:
        return self.left.lc

    @property
    def rc(self) -> np.ndarray:
        return self.right.rc


def _check_coaction_shape(t: np.ndarray, d: int, n: int, side: str):
    if d < 0:
        raise DimensionError(f"carrier dimension must be nonnegative, got {d}")
    if t.shape != (d, d, n):
        raise DimensionError(
            f"{side} coaction tensor has shape {t.shape}, expected {(d, d, n)}")


def _same_base(a, b, what: str):
    if not a.over.same_structure(b.over):
        raise UsageError(f"{what} requires the same base coalgebra on both sides")


# ---------------------------------------------------------------------------
# Validation.

def validate_left(u: LeftComodule) -> list[Violation]:
    """Coaction coassociativity-compatibility and counit law; empty = valid."""
    ensure_valid(u.over)
    out: list[Violation] = []
    # sum_a lc[k,i,a] omega[a,b,g]  vs  sum_m lc[k,m,b] lc[m,i,g], as [k,i,b,g]
    lhs = contract(u.lc, u.over.omega, [(2, 0)])
    rhs = contract(u.lc, u.lc, [(1, 0)]).transpose((0, 2, 1, 3))
    _mismatches("left-coaction", lhs, rhs, out)
    counit_side = contract(u.lc, u.over.counit, [(2, 0)])
    _mismatches("left-counit", counit_side, identity_matrix(u.dim), out)
    return out


def validate_right(u: RightComodule) -> list[Violation]:
    ensure_valid(u.over)
    out: list[Violation] = []
    # sum_a rc[k,i,a] omega[a,b,g]  vs  sum_m rc[m,i,b] rc[k,m,g], as [k,i,b,g]
    lhs = contract(u.rc, u.over.omega, [(2, 0)])
    rhs = contract(u.rc, u.rc, [(0, 1)]).transpose((2, 0, 1, 3))
    _mismatches("right-coaction", lhs, rhs, out)
    counit_side = contract(u.rc, u.over.counit, [(2, 0)])
    _mismatches("right-counit", counit_side, identity_matrix(u.dim), out)
    return out


def validate_bicomodule(u: Bicomodule) -> list[Violation]:
    """Both one-sided validations plus the coaction commutation law."""
    out = validate_left(u.left) + validate_right(u.right)
    # sum_i lc[k,i,a] rc[i,m,b]  vs  sum_j lc[j,m,a] rc[k,j,b], as [k,m,a,b]
    lhs = contract(u.lc, u.rc, [(1, 0)]).transpose((0, 2, 1, 3))
    rhs = contract(u.lc, u.rc, [(0, 1)]).transpose((2, 0, 1, 3))
    _mismatches("compatibility", lhs, rhs, out)
    return out


def _mismatches(rule: str, got: np.ndarray, want: np.ndarray, out: list):
    if np.array_equal(got, want):
        return
    for idx in np.argwhere(got != want):
        out.append(Violation(rule, tuple(int(i) for i in idx)))


# ---------------------------------------------------------------------------
# Constructions.

def regular_left(c: Coalgebra) -> LeftComodule:
    """The coalgebra coacting on itself: lc[a][g][b] = omega[a][b][g]."""
    return LeftComodule(c, c.dim, c.omega.transpose((0, 2, 1)).copy())


def regular_right(c: Coalgebra) -> RightComodule:
    """rc[a][b][g] = omega[a][b][g]."""
    return RightComodule(c, c.dim, c.omega.copy())


def regular_bicomodule(c: Coalgebra) -> Bicomodule:
    return Bicomodule(regular_left(c), regular_right(c))


def dual_of_left(u: LeftComodule) -> RightComodule:
    """Transpose coaction on the dual basis: rc'[k][m][a] = lc[m][k][a]."""
    return RightComodule(u.over, u.dim, u.lc.transpose((1, 0, 2)).copy())


def dual_of_right(u: RightComodule) -> LeftComodule:
    """lc'[k][m][a] = rc[m][k][a]."""
    return LeftComodule(u.over, u.dim, u.rc.transpose((1, 0, 2)).copy())


def dual_bicomodule(u: Bicomodule) -> Bicomodule:
    """Dual carrier with left leg from the right coaction and vice versa."""
    return Bicomodule(dual_of_right(u.right), dual_of_left(u.left))


def switch_right(u: LeftComodule) -> RightComodule:
    """Right coaction obtained by post-composing the left one with the swap."""
    return RightComodule(u.over, u.dim, u.lc.copy())


def switch_bicomodule(u: LeftComodule) -> Bicomodule:
    """(u, swapped u); a valid bicomodule whenever the base is cocommutative."""
    return Bicomodule(u, switch_right(u))


def _expand_first(t: np.ndarray, d_other: int, n: int) -> np.ndarray:
    """Coaction on the first factor of a product carrier, identity on the second.

    Product index (p, q) flattens to p * d_other + q.
    """
    d = t.shape[0]
    out = zeros((d * d_other, d * d_other, n))
    for idx in np.argwhere(t != 0) if t.size else ():
        k, i, a = (int(v) for v in idx)
        for q in range(d_other):
            out[k * d_other + q, i * d_other + q, a] = t[k, i, a]
    return out


def _expand_second(t: np.ndarray, d_first: int, n: int) -> np.ndarray:
    """Coaction on the second factor; first-factor index is the slow one."""
    d = t.shape[0]
    out = zeros((d_first * d, d_first * d, n))
    for idx in np.argwhere(t != 0) if t.size else ():
        k, i, a = (int(v) for v in idx)
        for p in range(d_first):
            out[p * d + k, p * d + i, a] = t[k, i, a]
    return out


def tensor_bicomodule(u: LeftComodule, w: RightComodule) -> Bicomodule:
    """Product carrier with the left coaction of `u` and right coaction of `w`.

    Carrier index (k_u, k_w) flattens to k_u * dim(w) + k_w.
    """
    _same_base(u, w, "tensor product")
    n = u.over.dim
    lc = _expand_first(u.lc, w.dim, n)
    rc = _expand_second(w.rc, u.dim, n)
    d = u.dim * w.dim
    return Bicomodule(LeftComodule(u.over, d, lc), RightComodule(w.over, d, rc))


# ---------------------------------------------------------------------------
# The four coactions on Hom(W, U).

HOM_COACTIONS = ("L1", "R1", "L2", "R2")


def hom_coaction(which: str, phi: np.ndarray, w: Bicomodule, u: Bicomodule) -> np.ndarray:
    """Apply one of the four Hom(W, U) coactions to the matrix `phi`.

    The value is returned as a (d_U, d_W, n) tensor: entry [i][a][g] is
    the coefficient of (basis matrix w_a -> u_i) (x) c_g. The four
    coactions, as composites:

      L1: (phi (x) id) after the right coaction of W   (left structure)
      R1: (id (x) phi) after the left coaction of W    (right structure)
      L2: left coaction of U after phi                 (left structure)
      R2: right coaction of U after phi                (right structure)
    """
    phi = np.asarray(phi, dtype=object)
    _same_base(w, u, "Hom coactions")
    if phi.shape != (u.dim, w.dim):
        raise DimensionError(
            f"map has shape {phi.shape}, expected {(u.dim, w.dim)}")
    if which == "L1":
        return contract(phi, w.rc, [(1, 1)])
    if which == "R1":
        return contract(phi, w.lc, [(1, 1)])
    if which == "L2":
        return contract(u.lc, phi, [(0, 0)]).transpose((0, 2, 1))
    if which == "R2":
        return contract(u.rc, phi, [(0, 0)]).transpose((0, 2, 1))
    raise UsageError(f"unknown Hom coaction {which!r}; expected one of {HOM_COACTIONS}")


def hom_comodule_structures(w: Bicomodule, u: Bicomodule):
    """Carrier-level coefficient tensors of the four Hom(W, U) coactions.

    Returns (lc1, rc1, lc2, rc2), each of shape (H, H, n) over the
    flattened Hom carrier H = d_U * d_W. Built the dual-and-product way:
    the *1 structures live on the dualized W factor, the *2 structures
    on the U factor.
    """
    _same_base(w, u, "Hom coactions")
    n = u.over.dim
    lc1 = _expand_second(dual_of_right(w.right).lc, u.dim, n)
    rc1 = _expand_second(dual_of_left(w.left).rc, u.dim, n)
    lc2 = _expand_first(u.lc, w.dim, n)
    rc2 = _expand_first(u.rc, w.dim, n)
    return lc1, rc1, lc2, rc2


def hom_coaction_factored(which: str, phi: np.ndarray, w: Bicomodule,
                          u: Bicomodule) -> np.ndarray:
    """Same values as `hom_coaction`, computed through the carrier-level
    structure tensors instead of the composite formulas. The two routes
    agreeing is a checked invariant of the package."""
    phi = np.asarray(phi, dtype=object)
    if phi.shape != (u.dim, w.dim):
        raise DimensionError(
            f"map has shape {phi.shape}, expected {(u.dim, w.dim)}")
    structures = dict(zip(HOM_COACTIONS, hom_comodule_structures(w, u)))
    if which not in structures:
        raise UsageError(f"unknown Hom coaction {which!r}; expected one of {HOM_COACTIONS}")
    applied = contract(phi.reshape(-1), structures[which], [(0, 0)])
    return applied.reshape(u.dim, w.dim, u.over.dim)


def _commute_same_side(s1: np.ndarray, s2: np.ndarray) -> bool:
    """Two coactions of the same handedness commute."""
    first = contract(s1, s2, [(1, 0)])
    second = contract(s2, s1, [(1, 0)]).transpose((0, 3, 2, 1))
    return tensors_equal(first, second)


def _commute_mixed(lc: np.ndarray, rc: np.ndarray) -> bool:
    """A left and a right coaction commute (the bicomodule condition)."""
    first = contract(lc, rc, [(1, 0)])
    second = contract(lc, rc, [(0, 1)]).transpose((2, 1, 0, 3))
    return tensors_equal(first, second)


def verify_quadruple(w: Bicomodule, u: Bicomodule) -> bool:
    """All four Hom(W, U) coactions are comodule structures and all six
    pairs of them commute; checked exactly on every basis matrix."""
    lc1, rc1, lc2, rc2 = hom_comodule_structures(w, u)
    c = u.over
    h = u.dim * w.dim
    if validate_left(LeftComodule(c, h, lc1)) or validate_left(LeftComodule(c, h, lc2)):
        return False
    if validate_right(RightComodule(c, h, rc1)) or validate_right(RightComodule(c, h, rc2)):
        return False
    return (_commute_same_side(lc1, lc2)
            and _commute_same_side(rc1, rc2)
            and _commute_mixed(lc1, rc1)
            and _commute_mixed(lc1, rc2)
            and _commute_mixed(lc2, rc1)
            and _commute_mixed(lc2, rc2))
