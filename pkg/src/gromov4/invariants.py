"""Scalar invariants of homology classes.

The quantities computed here drive every curve count in the package:

    k(A)      = (c1(A) + A.A)/2, the generic point budget of A;
    ell_g(A)  = c1(A) + g - 1, the point budget of a connected genus-g
                curve (half the index of the deformation problem);
    k'(A)     = k(A) + sum_E (m_E(A)^2 - m_E(A))/2, the budget corrected
                for multiply covered exceptional spheres, where
                m_E(A) = max(-A.E, 0);
    genus_embedded(A) = 1 + (K.A + A.A)/2, the adjunction genus, attained
                exactly by embedded connected curves.

The moduli dimension 2(c1(A)+g-1) + dim G_g adds the dimension of the
reparametrization group: 6 for spheres, 2 for tori, 0 above.

classify_negative settles which negative-square classes a generic almost
complex structure can represent by a somewhere-injective curve: the two
index constraints c1+g-1 >= 0 and c1+2(g-1) <= A.A < 0 admit a solution
only at (g, c1, A.A) = (0, 1, -1), i.e. for exceptional spheres.

reduce_multicovers strips the multiply covered exceptional components
from a class: B = A - sum over {E : A.E < -1} of m_E(A) E.  The resulting
B is a good class and k(B) = k'(A) whenever the stripped exceptional
classes are pairwise orthogonal and orthogonal to B; the function verifies
this and warns when the stored exceptional set breaks it.

The forward-cone predicates support the light cone positivity rule: when b2+ = 1,
two classes in the closed forward cone (square >= 0, area >= 0) pair
non-negatively, with a zero product only for proportional null classes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    NotInExceptionalSetError,
    ParityError,
    PreconditionError,
    ReductionConsistencyWarning,
)
from .lattice import HClass, ManifoldModel, b2_plus, c1, omega_area, pair
from .report import Check, Report

EXCEPTIONAL_SPHERE = "ExceptionalSphere"
NOT_REPRESENTABLE = "NotRepresentable"

_DIM_G = {0: 6, 1: 2}


def k(A: HClass) -> int:
    """Point budget k(A) = (c1(A) + A.A)/2."""
    total = c1(A) + pair(A, A)
    if total % 2 != 0:
        raise ParityError(f"c1 + square is odd for {A}; canonical class is malformed")
    return total // 2


def m_e(model: ManifoldModel, A: HClass, E: HClass) -> int:
    """Multiplicity m_E(A) = max(-A.E, 0) of the exceptional class E in A."""
    if E not in model.exceptional:
        raise NotInExceptionalSetError(f"{E} is not in the stored exceptional set")
    return max(-pair(A, E), 0)


def k_prime(model: ManifoldModel, A: HClass) -> int:
    """k(A) plus the multi-cover correction over the stored exceptional set."""
    extra = 0
    for E in model.exceptional:
        m = max(-pair(A, E), 0)
        extra += (m * m - m) // 2
    return k(A) + extra


def ell_g(A: HClass, g: int) -> int:
    """Point budget c1(A) + g - 1 of a connected genus-g curve in A."""
    if g < 0:
        raise PreconditionError("genus must be non-negative")
    return c1(A) + g - 1


def genus_embedded(A: HClass) -> int:
    """Adjunction genus 1 + (K.A + A.A)/2.

    May be negative; callers read a negative value as "not representable
    by an embedded connected curve".
    """
    total = pair(A.lattice.canonical_class(), A) + pair(A, A)
    if total % 2 != 0:
        raise ParityError(f"K.A + A.A is odd for {A}; canonical class is malformed")
    return 1 + total // 2


def moduli_dimension(A: HClass, g: int) -> int:
    """Dimension 2(c1(A)+g-1) + dim G_g of the parametrized moduli space."""
    return 2 * ell_g(A, g) + _DIM_G.get(g, 0)


def is_good_class(model: ManifoldModel, A: HClass) -> bool:
    """True when E.A >= -1 for every stored exceptional class E."""
    return all(pair(E, A) >= -1 for E in model.exceptional)


@dataclass(frozen=True)
class NegClassVerdict:
    """Outcome of classify_negative.

    kind is ExceptionalSphere or NotRepresentable; the witness triple
    (g, c1, square) exists exactly in the exceptional-sphere case, where
    the constraint arithmetic forces it to be (0, 1, -1).
    """

    kind: str
    witness: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind not in (EXCEPTIONAL_SPHERE, NOT_REPRESENTABLE):
            raise ValueError(f"bad verdict kind {self.kind!r}")
        if (self.kind == EXCEPTIONAL_SPHERE) != (self.witness == (0, 1, -1)):
            raise ValueError("exceptional-sphere verdicts carry witness (0, 1, -1)")

    @property
    def is_exceptional_sphere(self) -> bool:
        return self.kind == EXCEPTIONAL_SPHERE


def classify_negative(A: HClass) -> NegClassVerdict:
    """Decide whether a negative-square class is an exceptional sphere.

    For a somewhere-injective genus-g curve under generic data, both
    c1(A) + g - 1 >= 0 and c1(A) + 2(g-1) <= A.A must hold.  The scan over
    g is exhaustive below the bound implied by the second constraint.
    """
    sq = pair(A, A)
    if sq >= 0:
        raise PreconditionError(f"classify_negative needs A.A < 0, got {sq}")
    c = c1(A)
    g_max = max(0, 1 + (sq - c + 1) // 2)  # ceil of (A.A - c1)/2, plus 1
    for g in range(g_max + 1):
        if c + g - 1 >= 0 and c + 2 * (g - 1) <= sq:
            return NegClassVerdict(EXCEPTIONAL_SPHERE, (g, c, sq))
    return NegClassVerdict(NOT_REPRESENTABLE, None)


class ReduceResult(NamedTuple):
    good_part: HClass
    strips: tuple[tuple[HClass, int], ...]


def reduce_multicovers(model: ManifoldModel, A: HClass) -> ReduceResult:
    """Strip multiply covered exceptional spheres from A.

    Returns (B, strips) with B = A - sum m_E(A) E over the stored E with
    A.E < -1 and strips listing each stripped (E, m_E(A)).  Consistency
    (B good, k(B) = k'(A)) is verified; a warning is issued when the
    stored exceptional set is too entangled for it to hold.
    """
    strips = []
    B = A
    for E in model.exceptional:
        m = max(-pair(A, E), 0)
        if m >= 2:
            strips.append((E, m))
            B = B - m * E
    if not is_good_class(model, B) or k(B) != k_prime(model, A):
        warnings.warn(
            ReductionConsistencyWarning(
                f"reduction of {A} is inconsistent; stored exceptional classes "
                f"are not pairwise orthogonal and orthogonal to the remainder"
            )
        )
    return ReduceResult(B, tuple(strips))


def in_forward_cone(A: HClass, strict: bool = False) -> bool:
    """Membership in the (closed, or open when strict) forward cone."""
    sq = pair(A, A)
    w = omega_area(A)
    if strict:
        return sq > 0 and w > 0
    return sq >= 0 and w >= 0


def _proportional(A: HClass, B: HClass) -> bool:
    # Rational proportionality: all 2x2 minors of the coordinate pair vanish.
    u, v = A.coords, B.coords
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return True


def light_cone_pair_check(B1: HClass, B2: HClass) -> Report:
    """Check the light cone inequality on a pair of forward-cone classes.

    Requires b2+ = 1.  Asserts B1.B2 >= 0, and that a zero product happens
    only for rationally proportional null classes (or when one class is
    zero, which is proportional to everything).
    """
    B1._require_same_lattice(B2)
    if b2_plus(B1.lattice) != 1:
        raise PreconditionError(
            f"light cone check needs b2+ = 1, lattice {B1.lattice.name} has "
            f"{b2_plus(B1.lattice)}"
        )
    for X in (B1, B2):
        if not in_forward_cone(X):
            raise PreconditionError(f"{X} is not in the closed forward cone")
    prod = pair(B1, B2)
    checks = [
        Check(
            "nonnegative-product",
            prod >= 0,
            witness=(B1, B2),
            detail=f"B1.B2 = {prod}",
        )
    ]
    if prod == 0:
        degenerate = B1.is_zero or B2.is_zero
        both_null = pair(B1, B1) == 0 and pair(B2, B2) == 0
        ok = _proportional(B1, B2) and (degenerate or both_null)
        checks.append(
            Check(
                "zero-product-proportional-null",
                ok,
                witness=(B1, B2),
                detail="zero pairing must come from proportional null classes",
            )
        )
    return Report(tuple(checks))
