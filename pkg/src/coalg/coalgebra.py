"""Coalgebras in structure-constant form, their dual algebras, and the zoo.

Coefficient conventions (0-based indices):

  omega[a][b][g]   coefficient of c_b (x) c_g in the coproduct of c_a
  counit[a]        counit value on the basis vector c_a

so the coproduct of c_a is sum_{b,g} omega[a][b][g] c_b (x) c_g.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DimensionError, InvalidStructureError, UsageError
from .linalg import QONE, QZERO, contract, identity_matrix, tensors_equal, zeros


class Violation(NamedTuple):
    """One failed axiom instance: which rule broke and at which index tuple."""

    rule: str
    index: tuple


@dataclass(eq=False)
class Coalgebra:
    name: str
    dim: int
    omega: np.ndarray  # shape (dim, dim, dim)
    counit: np.ndarray  # shape (dim,)

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionError(f"coalgebra dimension must be positive, got {self.dim}")
        if self.omega.shape != (self.dim, self.dim, self.dim):
            raise DimensionError(
                f"coproduct tensor has shape {self.omega.shape}, "
                f"expected {(self.dim, self.dim, self.dim)}")
        if self.counit.shape != (self.dim,):
            raise DimensionError(
                f"counit has shape {self.counit.shape}, expected {(self.dim,)}")

    def __eq__(self, other):
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (self.name == other.name and self.same_structure(other))

    def same_structure(self, other: "Coalgebra") -> bool:
        """Structural equality, ignoring the name."""
        return (self.dim == other.dim
                and tensors_equal(self.omega, other.omega)
                and tensors_equal(self.counit, other.counit))


@dataclass(eq=False)
class DualAlgebra:
    """Unital associative algebra on the dual basis {c^a}.

    mult[a][b][g] is the coefficient of c^g in the product c^a * c^b.
    """

    dim: int
    mult: np.ndarray  # shape (dim, dim, dim)
    unit: np.ndarray  # shape (dim,)


def _collect_mismatches(rule: str, got: np.ndarray, want: np.ndarray, out: list):
    if np.array_equal(got, want):
        return
    for idx in np.argwhere(got != want):
        out.append(Violation(rule, tuple(int(i) for i in idx)))


def validate_coalgebra(c: Coalgebra) -> list[Violation]:
    """Check coassociativity and both counit laws; empty report means valid."""
    out: list[Violation] = []
    n = c.dim
    # sum_b omega[a,b,g] omega[b,m,v]  vs  sum_b omega[a,m,b] omega[b,v,g],
    # both laid out as [a, m, v, g].
    lhs = contract(c.omega, c.omega, [(1, 0)]).transpose((0, 2, 3, 1))
    rhs = contract(c.omega, c.omega, [(2, 0)])
    _collect_mismatches("coassociativity", lhs, rhs, out)
    ident = identity_matrix(n)
    left_counit = contract(c.counit, c.omega, [(0, 1)])
    _collect_mismatches("counit-left", left_counit, ident, out)
    right_counit = contract(c.omega, c.counit, [(2, 0)])
    _collect_mismatches("counit-right", right_counit, ident, out)
    return out


def ensure_valid(c: Coalgebra):
    violations = validate_coalgebra(c)
    if violations:
        raise InvalidStructureError(
            f"coalgebra {c.name!r} fails {len(violations)} axiom check(s), "
            f"first: {violations[0].rule} at {violations[0].index}",
            violations)


def is_cocommutative(c: Coalgebra) -> bool:
    """True iff the coproduct equals its tensor-factor swap."""
    return tensors_equal(c.omega, c.omega.transpose((0, 2, 1)))


def dual_algebra(c: Coalgebra) -> DualAlgebra:
    """The dual basis algebra: mult[a][b][g] = omega[g][a][b], unit = counit."""
    ensure_valid(c)
    return DualAlgebra(c.dim, c.omega.transpose((1, 2, 0)).copy(), c.counit.copy())


def validate_algebra(a: DualAlgebra) -> list[Violation]:
    """Brute-force associativity over all basis triples plus both unit laws."""
    out: list[Violation] = []
    lhs = contract(a.mult, a.mult, [(2, 0)])
    rhs = contract(a.mult, a.mult, [(2, 1)]).transpose((2, 0, 1, 3))
    _collect_mismatches("associativity", lhs, rhs, out)
    ident = identity_matrix(a.dim)
    _collect_mismatches("unit-left", contract(a.unit, a.mult, [(0, 0)]), ident, out)
    _collect_mismatches("unit-right", contract(a.unit, a.mult, [(0, 1)]), ident, out)
    return out


def verify_dimodule(c: Coalgebra) -> bool:
    """Check the algebra/coaction compatibility package on the dual space.

    The dual space carries the dual coactions of the regular bicomodule
    together with its algebra structure. Verified exactly:

      * both coactions send the unit (the counit functional) to the
        identity-map tensor;
      * left multiplication intertwines the left coaction, and right
        multiplication intertwines the right coaction.
    """
    ensure_valid(c)
    om = c.omega
    mult = om.transpose((1, 2, 0))
    # Coactions on the dual of the regular bicomodule:
    #   left  coaction  lc_dual[k][m][g] = omega[m][k][g]
    #   right coaction  rc_dual[k][m][g] = omega[m][g][k]
    lc_dual = om.transpose((1, 0, 2))
    rc_dual = om.transpose((2, 0, 1))
    ident = identity_matrix(c.dim)

    unit_left = contract(c.counit, lc_dual, [(0, 0)])
    unit_right = contract(c.counit, rc_dual, [(0, 0)])
    if not (tensors_equal(unit_left, ident) and tensors_equal(unit_right, ident)):
        return False

    # coact(a*b) = (id (x) a*_) coact(b), laid out as [a, b, m, g]
    lhs_l = contract(mult, lc_dual, [(2, 0)])
    rhs_l = contract(lc_dual, mult, [(1, 1)]).transpose((2, 0, 3, 1))
    if not tensors_equal(lhs_l, rhs_l):
        return False

    # coact(a*b) = (_*b (x) id) coact(a), laid out as [a, b, m, g]
    lhs_r = contract(mult, rc_dual, [(2, 0)])
    rhs_r = contract(rc_dual, mult, [(1, 0)]).transpose((0, 2, 3, 1))
    return tensors_equal(lhs_r, rhs_r)


# ---------------------------------------------------------------------------
# Built-in examples.

def _zoo_trivial() -> Coalgebra:
    omega = zeros((1, 1, 1))
    omega[0, 0, 0] = QONE
    counit = zeros((1,))
    counit[0] = QONE
    return Coalgebra("trivial", 1, omega, counit)


def _zoo_grouplike(n: int) -> Coalgebra:
    omega = zeros((n, n, n))
    counit = zeros((n,))
    for a in range(n):
        omega[a, a, a] = QONE
        counit[a] = QONE
    return Coalgebra(f"grouplike{n}", n, omega, counit)


def _zoo_matrix(n: int) -> Coalgebra:
    """Matrix coalgebra on basis e_{ij}, row-major: e_11, e_12, ..., e_nn."""
    dim = n * n
    omega = zeros((dim, dim, dim))
    counit = zeros((dim,))
    pos = lambda i, j: i * n + j
    for i in range(n):
        for j in range(n):
            for k in range(n):
                omega[pos(i, j), pos(i, k), pos(k, j)] = QONE
        counit[pos(i, i)] = QONE
    return Coalgebra(f"matrix{n}", dim, omega, counit)


def _zoo_primitive2() -> Coalgebra:
    """Basis {g, x} with g grouplike and x primitive over g; g=0, x=1."""
    omega = zeros((2, 2, 2))
    omega[0, 0, 0] = QONE
    omega[1, 1, 0] = QONE
    omega[1, 0, 1] = QONE
    counit = zeros((2,))
    counit[0] = QONE
    return Coalgebra("primitive2", 2, omega, counit)


def zoo(name: str, parameter: Optional[int] = None) -> Coalgebra:
    """Return a named built-in coalgebra.

    Names: trivial, grouplike (parameter n >= 1), matrix (parameter
    n >= 1, dimension n^2), primitive2.
    """
    if name == "trivial":
        if parameter is not None:
            raise UsageError("zoo member 'trivial' takes no parameter")
        return _zoo_trivial()
    if name == "grouplike":
        if parameter is None or parameter < 1:
            raise UsageError("zoo member 'grouplike' needs a parameter n >= 1")
        return _zoo_grouplike(parameter)
    if name == "matrix":
        if parameter is None or parameter < 1:
            raise UsageError("zoo member 'matrix' needs a parameter n >= 1")
        return _zoo_matrix(parameter)
    if name == "primitive2":
        if parameter is not None:
            raise UsageError("zoo member 'primitive2' takes no parameter")
        return _zoo_primitive2()
    raise UsageError(
        f"unknown zoo member {name!r}; known: trivial, grouplike(n), "
        f"matrix(n), primitive2")


def zoo_members() -> list[Coalgebra]:
    """The canonical test corpus used by the verification suite."""
    return [
        zoo("trivial"),
        zoo("grouplike", 2),
        zoo("grouplike", 3),
        zoo("grouplike", 4),
        zoo("matrix", 2),
        zoo("matrix", 3),
        zoo("primitive2"),
    ]
