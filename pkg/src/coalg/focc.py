"""First order codifferential calculi and coderivations.

A differential on a carrier U is stored source-major: d[k][a] is the
coefficient of c_a in the image of e_k. Self-coderivations of the
coalgebra use the same layout (source index first) and flatten
row-major, position source * n + target.

Endomorphism matrices returned by `cartan_map` are target-major like
every other map in this package; `endo_to_coder_vector` reconciles the
two layouts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coalgebra import Coalgebra, ensure_valid, is_cocommutative
from .codual import CodualSpace, left_codual
from .comodule import (Bicomodule, LeftComodule, hom_coaction, regular_bicomodule,
                       switch_bicomodule, validate_bicomodule)
from .errors import InvalidStructureError, PreconditionError, UsageError
from .linalg import (SolutionSpace, contract, coords_in_span, in_span,
                     nullspace_basis, rank, tensors_equal, zeros)


@dataclass(eq=False)
class Focc:
    """A bicomodule carrier together with a coderivation into the coalgebra."""

    carrier: Bicomodule
    d: np.ndarray  # shape (carrier.dim, n)

    def __post_init__(self):
        expected = (self.carrier.dim, self.carrier.over.dim)
        if self.d.shape != expected:
            raise UsageError(
                f"differential has shape {self.d.shape}, expected {expected}")

    def __eq__(self, other):
        if not isinstance(other, Focc):
            return NotImplemented
        return self.carrier == other.carrier and tensors_equal(self.d, other.d)


def zero_focc(u: Bicomodule) -> Focc:
    return Focc(u, zeros((u.dim, u.over.dim)))


def focc_space(u: Bicomodule) -> SolutionSpace:
    """All differentials on `u` satisfying the co-Leibniz rule, exactly.

    Ambient dimension d_U * n over flattened d; one constraint row per
    (carrier index k, coalgebra indices beta, gamma):

        sum_a d[k][a] omega[a][b][g]
            - sum_i lc[k][i][b] d[i][g] - sum_i d[i][b] rc[k][i][g] = 0
    """
    violations = validate_bicomodule(u)
    if violations:
        raise InvalidStructureError(
            f"carrier fails {len(violations)} bicomodule check(s), first: "
            f"{violations[0].rule} at {violations[0].index}", violations)
    c = u.over
    d_u, n = u.dim, c.dim
    rows = zeros((d_u * n * n, d_u * n))
    r = 0
    for k in range(d_u):
        for b in range(n):
            for g in range(n):
                row = rows[r]
                row[k * n:(k + 1) * n] = row[k * n:(k + 1) * n] + c.omega[:, b, g]
                row[g::n] = row[g::n] - u.lc[k, :, b]
                row[b::n] = row[b::n] - u.rc[k, :, g]
                r += 1
    return nullspace_basis(rows)


def focc_from_basis(u: Bicomodule, space: SolutionSpace, index: int) -> Focc:
    return Focc(u, space.basis[index].reshape(u.dim, u.over.dim))


def coder_space(c: Coalgebra) -> SolutionSpace:
    """Self-coderivations of the coalgebra, solved from their own system.

    Matrices are source-major: Xi[a][b] is the coefficient of c_b in the
    image of c_a. The resulting space coincides with the differential
    space of the regular bicomodule under the obvious identification.
    """
    ensure_valid(c)
    n = c.dim
    rows = zeros((n * n * n, n * n))
    r = 0
    for a in range(n):
        for m in range(n):
            for v in range(n):
                row = rows[r]
                row[a * n:(a + 1) * n] = row[a * n:(a + 1) * n] + c.omega[:, m, v]
                row[v::n] = row[v::n] - c.omega[a, m, :]
                row[m::n] = row[m::n] - c.omega[a, :, v]
                r += 1
    return nullspace_basis(rows)


def coderivation_defect(f: Focc) -> np.ndarray:
    """Co-Leibniz defect of a differential, recomposed from the maps.

    Returns the (d_U, n, n) tensor of (coproduct after d) minus both
    one-sided compositions; identically zero exactly when `f.d` is a
    coderivation. Independent of the solver's row construction.
    """
    u = f.carrier
    om = u.over.omega
    lhs = contract(f.d, om, [(1, 0)])
    via_left = contract(u.lc, f.d, [(1, 0)])
    via_right = contract(u.rc, f.d, [(1, 0)]).transpose((0, 2, 1))
    return lhs - via_left - via_right


def is_coderivation(f: Focc) -> bool:
    return tensors_equal(coderivation_defect(f), zeros(coderivation_defect(f).shape))


def endo_to_coder_vector(xi: np.ndarray) -> np.ndarray:
    """Flatten a target-major endomorphism into coder-space layout."""
    return np.ascontiguousarray(xi.transpose()).reshape(-1)


def _locate_membership_failure(x: np.ndarray, u: Bicomodule) -> tuple:
    reg = regular_bicomodule(u.over)
    lhs = hom_coaction("L2", x, reg, u)
    rhs = hom_coaction("R1", x, reg, u)
    for idx in np.ndindex(lhs.shape):
        if lhs[idx] != rhs[idx]:
            return idx
    return ()


def cartan_map(x: np.ndarray, f: Focc, codual: Optional[CodualSpace] = None) -> np.ndarray:
    """Endomorphism of the coalgebra obtained by following a vector cofield
    with the differential: entry [b][a] = sum_k x[k][a] d[k][b].

    `x` must lie in the left codual of the carrier; anything else is a
    precondition violation reported at the first failing index.
    """
    x = np.asarray(x, dtype=object)
    if codual is None:
        codual = left_codual(f.carrier)
    if coords_in_span(codual.space, x) is None:
        idx = _locate_membership_failure(x, f.carrier)
        raise PreconditionError(
            "map is not a vector cofield: the left comodule-map law fails at "
            f"(target, source, coalgebra index) = {idx}")
    return contract(f.d, x, [(0, 0)])


@dataclass
class CartanLawVerdict:
    """Exact verdict for the two structural laws of the cofield action."""

    comodule_map_ok: bool
    co_leibniz_ok: bool
    first_violation: Optional[tuple] = None

    @property
    def holds(self) -> bool:
        return self.comodule_map_ok and self.co_leibniz_ok


def verify_cartan_comodule_law(u: Bicomodule, f: Focc, x: np.ndarray,
                               codual: Optional[CodualSpace] = None) -> CartanLawVerdict:
    """Check, with zero tolerance, that

      (a) sending cofields to endomorphisms intertwines the left coactions
          of the codual and of the endomorphism carrier, on every basis
          cofield; and
      (b) the deformed co-Leibniz identity for `x`: the coproduct composed
          with the endomorphism equals its one-sided version plus the
          differential applied through the right coaction of the carrier.
    """
    if not tensors_equal(u.lc, f.carrier.lc) or not tensors_equal(u.rc, f.carrier.rc):
        raise UsageError("differential is defined over a different bicomodule")
    if codual is None:
        codual = left_codual(u)
    c = u.over
    reg = regular_bicomodule(c)
    n = c.dim

    first_violation = None
    xis = [contract(f.d, bx, [(0, 0)]) for bx in codual.basis_maps]
    stacked = zeros((len(xis), n, n))
    for t, xi in enumerate(xis):
        stacked[t] = xi
    comodule_map_ok = True
    for s, xi in enumerate(xis):
        lhs = hom_coaction("L1", xi, reg, reg)
        rhs = contract(codual.induced_lc[s], stacked, [(0, 0)]).transpose((1, 2, 0))
        if not tensors_equal(lhs, rhs):
            comodule_map_ok = False
            for idx in np.ndindex(lhs.shape):
                if lhs[idx] != rhs[idx]:
                    first_violation = ("comodule-map", (s,) + idx)
                    break
            break

    xi = cartan_map(x, f, codual)
    lhs = contract(xi, c.omega, [(0, 0)])
    plain = contract(c.omega, xi, [(2, 1)])
    through_carrier = contract(contract(x, u.rc, [(0, 0)]), f.d, [(1, 0)])
    rhs = plain + through_carrier.transpose((0, 2, 1))
    co_leibniz_ok = tensors_equal(lhs, rhs)
    if not co_leibniz_ok and first_violation is None:
        for idx in np.ndindex(lhs.shape):
            if lhs[idx] != rhs[idx]:
                first_violation = ("co-leibniz", idx)
                break
    return CartanLawVerdict(comodule_map_ok, co_leibniz_ok, first_violation)


@dataclass
class SwitchVerdict:
    """Verdict that every basis cofield acts as a genuine coderivation."""

    dim_codual: int
    dim_coder: int
    memberships: list  # per basis cofield: coordinates in coder space, or None

    @property
    def holds(self) -> bool:
        return all(m is not None for m in self.memberships)


def verify_switch_coderivations(c: Coalgebra, u_left: LeftComodule,
                                f: Focc) -> SwitchVerdict:
    """Over a cocommutative coalgebra, with the carrier being `u_left`
    doubled by the switch, every vector cofield must act as an honest
    self-coderivation. Membership is certified by exact coordinates."""
    if not is_cocommutative(c):
        raise PreconditionError("hypothesis violated: coalgebra not cocommutative")
    switched = switch_bicomodule(u_left)
    if not tensors_equal(f.carrier.lc, switched.lc) or not tensors_equal(f.carrier.rc, switched.rc):
        raise UsageError("differential is not defined over the switched carrier")
    cod = left_codual(switched)
    coders = coder_space(c)
    memberships = [
        coords_in_span(coders, endo_to_coder_vector(cartan_map(x, f, cod)))
        for x in cod.basis_maps
    ]
    return SwitchVerdict(cod.dim, coders.dim, memberships)


@dataclass
class ProbeReport:
    """Descriptive comparison of the cofield action with the space of
    self-coderivations, for one supplied calculus. Reports evidence only."""

    dim_codual: int
    dim_coder: int
    rank: int
    kernel_dim: int
    injective: bool
    image_in_coder: bool
    coder_in_image: bool
    cocommutative: bool

    @property
    def surjective(self) -> bool:
        """Image coincides with the full space of self-coderivations."""
        return self.image_in_coder and self.coder_in_image

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    @property
    def summary(self) -> str:
        if self.bijective:
            return "bijective"
        if self.surjective and not self.injective:
            return "surjective-not-injective"
        if self.injective:
            return "injective-not-surjective"
        return "neither-injective-nor-surjective"


def kahler_probe(c: Coalgebra, u: Bicomodule, f: Focc) -> ProbeReport:
    """Measure how close the cofield action of one calculus comes to an
    isomorphism onto the self-coderivation space."""
    if not c.same_structure(u.over):
        raise UsageError("probe carrier lives over a different coalgebra")
    if not tensors_equal(u.lc, f.carrier.lc) or not tensors_equal(u.rc, f.carrier.rc):
        raise UsageError("differential is defined over a different bicomodule")
    cod = left_codual(u)
    coders = coder_space(c)
    images = [endo_to_coder_vector(cartan_map(x, f, cod)) for x in cod.basis_maps]
    if images:
        stacked = zeros((len(images), c.dim * c.dim))
        for s, v in enumerate(images):
            stacked[s] = v
        image_rank = rank(stacked)
    else:
        image_rank = 0
    image_in_coder = all(coords_in_span(coders, v) is not None for v in images)
    coder_in_image = all(in_span(images, b) is not None for b in coders.basis)
    return ProbeReport(
        dim_codual=cod.dim,
        dim_coder=coders.dim,
        rank=image_rank,
        kernel_dim=cod.dim - image_rank,
        injective=(cod.dim - image_rank) == 0,
        image_in_coder=image_in_coder,
        coder_in_image=coder_in_image,
        cocommutative=is_cocommutative(c),
    )
