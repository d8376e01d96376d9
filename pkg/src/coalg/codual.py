"""Spaces of comodule maps and the codual bicomodules they carry.

A map X between carriers is stored target-major: X[i][a] is the
coefficient of target basis vector i in the image of source basis
vector a, and maps flatten row-major, position i * d_source + a.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coalgebra import Coalgebra, ensure_valid
from .comodule import (Bicomodule, LeftComodule, RightComodule, dual_bicomodule,
                       hom_coaction, regular_bicomodule, validate_bicomodule)
from .errors import InvalidStructureError, UsageError
from .linalg import (SolutionSpace, contract, coords_in_span, nullspace_basis,
                     rank, tensors_equal, zeros)


def comodule_map_space(w: LeftComodule, u: LeftComodule) -> SolutionSpace:
    """All maps phi with coaction_U(phi(x)) = (id (x) phi)(coaction_W(x)).

    Ambient dimension d_U * d_W over flattened phi; one constraint row per
    (source index a, target index i, coalgebra index alpha):

        sum_k phi[k][a] lc_U[k][i][alpha] - sum_b lc_W[a][b][alpha] phi[i][b] = 0
    """
    if not w.over.same_structure(u.over):
        raise UsageError("comodule map space requires the same base coalgebra")
    d_w, d_u, n = w.dim, u.dim, u.over.dim
    ambient = d_u * d_w
    rows = zeros((d_w * d_u * n, ambient))
    r = 0
    for a in range(d_w):
        for i in range(d_u):
            for alpha in range(n):
                row = rows[r]
                row[a::d_w] = row[a::d_w] + u.lc[:, i, alpha]
                row[i * d_w:(i + 1) * d_w] = row[i * d_w:(i + 1) * d_w] - w.lc[a, :, alpha]
                r += 1
    return nullspace_basis(rows)


def comodule_map_space_right(w: RightComodule, u: RightComodule) -> SolutionSpace:
    """Mirror of `comodule_map_space` for right coactions."""
    if not w.over.same_structure(u.over):
        raise UsageError("comodule map space requires the same base coalgebra")
    d_w, d_u, n = w.dim, u.dim, u.over.dim
    ambient = d_u * d_w
    rows = zeros((d_w * d_u * n, ambient))
    r = 0
    for a in range(d_w):
        for i in range(d_u):
            for alpha in range(n):
                row = rows[r]
                row[a::d_w] = row[a::d_w] + u.rc[:, i, alpha]
                row[i * d_w:(i + 1) * d_w] = row[i * d_w:(i + 1) * d_w] - w.rc[a, :, alpha]
                r += 1
    return nullspace_basis(rows)


@dataclass(eq=False)
class CodualSpace:
    """A solved codual: basis maps from the coalgebra into the carrier,
    together with the coactions they inherit, expressed in that basis."""

    side: str  # "left" or "right"
    source: Bicomodule
    space: SolutionSpace
    basis_maps: list  # each (d_U, n), target-major
    induced_lc: np.ndarray  # (dim, dim, n)
    induced_rc: np.ndarray  # (dim, dim, n)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def over(self) -> Coalgebra:
        return self.source.over

    def as_bicomodule(self) -> Bicomodule:
        c = self.over
        return Bicomodule(LeftComodule(c, self.dim, self.induced_lc),
                          RightComodule(c, self.dim, self.induced_rc))


def _induce(space: SolutionSpace, values: list) -> np.ndarray:
    """Re-express coaction values (each (d_U, n_source, n)) in the basis.

    Failure to close inside the span is an invariant violation, never a
    normal outcome, so it raises.
    """
    k = space.dim
    n = values[0].shape[2] if values else 0
    induced = zeros((k, k, n))
    for s, val in enumerate(values):
        for g in range(n):
            coeffs = coords_in_span(space, val[:, :, g])
            if coeffs is None:
                raise InvalidStructureError(
                    f"induced coaction of basis map {s} left the solved space "
                    f"at coalgebra index {g}")
            induced[s, :, g] = coeffs
    return induced


def left_codual(u: Bicomodule) -> CodualSpace:
    """Left-comodule maps from the coalgebra into `u`, as a bicomodule.

    The inherited left coaction of a basis map X is (X (x) id) after the
    coproduct; the inherited right coaction is the right coaction of the
    carrier after X. Both are re-expressed in the computed basis.
    """
    c = u.over
    ensure_valid(c)
    reg = regular_bicomodule(c)
    space = comodule_map_space(reg.left, u.left)
    basis_maps = [v.reshape(u.dim, c.dim) for v in space.basis]
    left_vals = [hom_coaction("L1", x, reg, u) for x in basis_maps]
    right_vals = [hom_coaction("R2", x, reg, u) for x in basis_maps]
    out = CodualSpace("left", u, space, basis_maps,
                      _induce(space, left_vals), _induce(space, right_vals))
    _check_codual(out)
    return out


def right_codual(u: Bicomodule) -> CodualSpace:
    """Right-comodule maps from the coalgebra into `u`; mirrored solver,
    inheriting the carrier's left coaction and the coproduct on the right."""
    c = u.over
    ensure_valid(c)
    reg = regular_bicomodule(c)
    space = comodule_map_space_right(reg.right, u.right)
    basis_maps = [v.reshape(u.dim, c.dim) for v in space.basis]
    left_vals = [hom_coaction("L2", x, reg, u) for x in basis_maps]
    right_vals = [hom_coaction("R1", x, reg, u) for x in basis_maps]
    out = CodualSpace("right", u, space, basis_maps,
                      _induce(space, left_vals), _induce(space, right_vals))
    _check_codual(out)
    return out


def _check_codual(cod: CodualSpace):
    violations = validate_bicomodule(cod.as_bicomodule())
    if violations:
        raise InvalidStructureError(
            f"induced {cod.side} codual coactions violate the bicomodule "
            f"axioms, first: {violations[0].rule} at {violations[0].index}",
            violations)


@dataclass
class CounitPairingReport:
    """Outcome of pairing the left codual of the regular bicomodule with
    the dual-basis bicomodule through composition with the counit."""

    dim_codual: int
    dim_dual: int
    invertible: bool
    intertwines_left: bool
    intertwines_right: bool

    @property
    def holds(self) -> bool:
        return (self.dim_codual == self.dim_dual and self.invertible
                and self.intertwines_left and self.intertwines_right)


def counit_pairing_iso(c: Coalgebra) -> CounitPairingReport:
    """Check that composing with the counit identifies the left codual of
    the regular bicomodule with the dual-basis bicomodule, as bicomodules."""
    ensure_valid(c)
    n = c.dim
    cod = left_codual(regular_bicomodule(c))
    dual = dual_bicomodule(regular_bicomodule(c))
    # Functional of each basis map: y[a] = sum_k counit[k] X[k][a].
    images = [contract(c.counit, x, [(0, 0)]) for x in cod.basis_maps]
    matrix = zeros((n, cod.dim))
    for s, y in enumerate(images):
        matrix[:, s] = y
    invertible = cod.dim == n and rank(matrix) == n

    ok_left = True
    ok_right = True
    for s, y in enumerate(images):
        lhs_l = contract(y, dual.lc, [(0, 0)])  # [m, g]
        rhs_l = zeros((n, n))
        lhs_r = contract(y, dual.rc, [(0, 0)])
        rhs_r = zeros((n, n))
        for t, yt in enumerate(images):
            for g in range(n):
                rhs_l[:, g] = rhs_l[:, g] + cod.induced_lc[s, t, g] * yt
                rhs_r[:, g] = rhs_r[:, g] + cod.induced_rc[s, t, g] * yt
        ok_left = ok_left and tensors_equal(lhs_l, rhs_l)
        ok_right = ok_right and tensors_equal(lhs_r, rhs_r)
    return CounitPairingReport(cod.dim, n, invertible, ok_left, ok_right)
