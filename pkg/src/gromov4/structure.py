"""Configurations, decompositions, and the counts assembled from them.

A Configuration is what a compactness argument hands back: a multiset of
(class, multiplicity, genus) components.  The two verify_* operations
check the numeric equality chains that make such a configuration count:
disjointness, multiplicity rules, the exceptional-sphere classification of
negative components, and the point-budget bookkeeping
sum_i ell_{g_i}(B_i) = k(A), respectively k'(A) = k(B) for the reduced
class B after stripping multiply covered exceptional spheres.

A Decomposition of A is a splitting A = B_1 + ... + B_l into pairwise
orthogonal, pairwise non-proportional parts of non-negative square, where
square-zero parts are grouped by ray (all candidate multiples of one
primitive class merge into a single part).  The total invariant is

    Gr(A) = sum over decompositions D of prod_i Gr0(B_i),

with Gr0 read from the model's gr0_table for square-positive parts and
from the torus weighting (gr_torus_class on the ray's labelled tori) for
square-zero parts.  Candidate parts are always explicit inputs; the
finiteness of relevant classes is a compactness statement with no
constructive bound, so nothing is inferred silently.

check_kmin_constraints flags violations of the constraints satisfied by
the invariants of a minimal manifold with b2+ > 1: (i) Gr(A) != 0 forces
k(A) = 0, (iii) |Gr(A)| = |Gr(K-A)|, and (iv) if K.K = 0, Gr(A) != 0
forces A.A = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidCandidateError, PreconditionError, UnknownGr0Error
from .invariants import (
    EXCEPTIONAL_SPHERE,
    classify_negative,
    ell_g,
    is_good_class,
    k,
    k_prime,
    m_e,
)
from .lattice import HClass, ManifoldModel, b2_plus, omega_area, pair
from .report import Check, Report
from .torus_series import gr_torus_class


@dataclass(frozen=True)
class Component:
    """A curve component: underlying class, covering multiplicity, genus."""

    cls: HClass
    mult: int = 1
    genus: int = 0

    def __post_init__(self) -> None:
        if self.mult < 1:
            raise ValueError("component multiplicity must be >= 1")
        if self.genus < 0:
            raise ValueError("component genus must be non-negative")


@dataclass(frozen=True)
class Configuration:
    """A nonempty multiset of components; the total class is recomputed."""

    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a configuration needs at least one component")
        lat = comps[0].cls.lattice
        for comp in comps[1:]:
            if comp.cls.lattice != lat:
                raise ValueError("configuration components must share one lattice")
        object.__setattr__(self, "components", comps)

    @property
    def total(self) -> HClass:
        acc = self.components[0].cls.lattice.zero()
        for comp in self.components:
            acc = acc + comp.mult * comp.cls
        return acc

    @classmethod
    def of(cls, items: Iterable) -> "Configuration":
        """Build from (cls, mult, genus) triples or ready Components."""
        comps = []
        for item in items:
            if isinstance(item, Component):
                comps.append(item)
            else:
                c, mult, genus = item
                comps.append(Component(c, mult, genus))
        return cls(tuple(comps))


def _pairwise_intersections(comps: Sequence[Component]) -> list[tuple[HClass, HClass, int]]:
    bad = []
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            p = pair(comps[i].cls, comps[j].cls)
            if p != 0:
                bad.append((comps[i].cls, comps[j].cls, p))
    return bad


def verify_good_configuration(
    model: ManifoldModel, cfg: Configuration, points: int
) -> Report:
    """Check the conditions under which a configuration is good.

    Conditions reported: "points" (the requested point count equals
    k(total)), "disjoint" (pairwise zero intersections), "multiplicity"
    (mult = 1 except for square-zero tori), "negative-exceptional" (every
    negative-square component class is an exceptional sphere),
    "budget-sum" (sum of ell_g(B_i, g_i) equals k(total)), and
    "cover-bound" (k(mult*B_i) >= ell_g(B_i, g_i) componentwise).
    """
    comps = cfg.components
    total = cfg.total
    kt = k(total)
    checks = []
    checks.append(
        Check("points", points == kt, (total,), f"points={points}, k(total)={kt}")
    )
    bad_pairs = _pairwise_intersections(comps)
    checks.append(
        Check(
            "disjoint",
            not bad_pairs,
            tuple(bad_pairs),
            "components must have pairwise zero intersection",
        )
    )
    bad_mult = tuple(
        comp.cls
        for comp in comps
        if comp.mult != 1 and not (comp.genus == 1 and pair(comp.cls, comp.cls) == 0)
    )
    checks.append(
        Check(
            "multiplicity",
            not bad_mult,
            bad_mult,
            "multiplicity > 1 is allowed only on square-zero tori",
        )
    )
    bad_neg = tuple(
        comp.cls
        for comp in comps
        if pair(comp.cls, comp.cls) < 0
        and classify_negative(comp.cls).kind != EXCEPTIONAL_SPHERE
    )
    checks.append(
        Check(
            "negative-exceptional",
            not bad_neg,
            bad_neg,
            "negative-square components must be exceptional spheres",
        )
    )
    budget = sum(ell_g(comp.cls, comp.genus) for comp in comps)
    checks.append(
        Check(
            "budget-sum",
            budget == kt,
            (total,),
            f"sum ell_g = {budget}, k(total) = {kt}",
        )
    )
    bad_cover = tuple(
        comp.cls
        for comp in comps
        if k(comp.mult * comp.cls) < ell_g(comp.cls, comp.genus)
    )
    checks.append(
        Check(
            "cover-bound",
            not bad_cover,
            bad_cover,
            "each component needs k(m B) >= ell_g(B)",
        )
    )
    return Report(tuple(checks))


def verify_kprime_configuration(
    model: ManifoldModel, cfg: Configuration, points: int | None = None
) -> Report:
    """Check a configuration against the corrected count k'.

    Components covering a stored exceptional class with multiplicity >= 2
    are the stripped part; the rest sums to the reduced class B.
    Conditions reported: "disjoint" (all components pairwise orthogonal,
    which covers both strip-strip and strip-remainder intersections),
    "strip-multiplicity" (each stripped cover equals m_E(total)),
    "good-part" (B is a good class), "kprime-equality" (k'(total) = k(B)),
    and "points" when a point count is supplied (it must equal k'(total)).
    """
    comps = cfg.components
    total = cfg.total
    stripped = tuple(
        comp for comp in comps if comp.cls in model.exceptional and comp.mult >= 2
    )
    rest = tuple(comp for comp in comps if comp not in stripped)
    B = total.lattice.zero()
    for comp in rest:
        B = B + comp.mult * comp.cls
    checks = []
    bad_pairs = _pairwise_intersections(comps)
    checks.append(
        Check(
            "disjoint",
            not bad_pairs,
            tuple(bad_pairs),
            "components must have pairwise zero intersection",
        )
    )
    bad_mult = tuple(
        (comp.cls, comp.mult, m_e(model, total, comp.cls))
        for comp in stripped
        if comp.mult != m_e(model, total, comp.cls)
    )
    checks.append(
        Check(
            "strip-multiplicity",
            not bad_mult,
            bad_mult,
            "each stripped exceptional cover must equal m_E(total)",
        )
    )
    checks.append(
        Check(
            "good-part",
            is_good_class(model, B),
            (B,),
            "the unstripped part must be a good class",
        )
    )
    kp = k_prime(model, total)
    checks.append(
        Check(
            "kprime-equality",
            kp == k(B),
            (total, B),
            f"k'(total) = {kp}, k(B) = {k(B)}",
        )
    )
    if points is not None:
        checks.append(
            Check("points", points == kp, (total,), f"points={points}, k'(total)={kp}")
        )
    return Report(tuple(checks))


@dataclass(frozen=True)
class Decomposition:
    """Pairwise orthogonal, non-proportional parts of non-negative square."""

    parts: tuple[HClass, ...]

    def __post_init__(self) -> None:
        parts = tuple(sorted(self.parts, key=lambda p: p.coords))
        if not parts:
            raise ValueError("a decomposition needs at least one part")
        object.__setattr__(self, "parts", parts)

    def total(self) -> HClass:
        acc = self.parts[0].lattice.zero()
        for p in self.parts:
            acc = acc + p
        return acc

    def satisfies_rules(self, A: HClass) -> bool:
        """Re-verify the decomposition conditions against the class A."""
        if self.total() != A:
            return False
        for i, p in enumerate(self.parts):
            if pair(p, p) < 0:
                return False
            for q in self.parts[i + 1 :]:
                if pair(p, q) != 0 or _proportional(p, q):
                    return False
        return True


def _proportional(A: HClass, B: HClass) -> bool:
    u, v = A.coords, B.coords
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if u[i] * v[j] - u[j] * v[i] != 0:
                return False
    return True


def enumerate_decompositions(
    model: ManifoldModel, A: HClass, candidates: Sequence[HClass]
) -> list[Decomposition]:
    """All decompositions of A generated by the candidate classes.

    The search runs over non-negative integer coefficient vectors on the
    candidates, exhaustively within the area bound omega(A); square-zero
    candidates on a common ray merge into a single part, square-positive
    candidates enter with coefficient at most 1 (a larger coefficient
    would duplicate a part, violating non-proportionality), and
    negative-square candidates can never appear in a valid assignment.
    On a minimal model with b2+ > 1, candidates with k != 0 are dropped
    up front: their Gr0 vanishes, so they cannot carry a count.
    """
    lat = A.lattice
    cands = []
    for cand in candidates:
        if cand.lattice != lat:
            raise InvalidCandidateError(f"candidate {cand} lives in another lattice")
        if omega_area(cand) <= 0:
            raise InvalidCandidateError(f"candidate {cand} must have positive area")
        if cand not in cands:
            cands.append(cand)
    if model.minimal and b2_plus(lat) > 1:
        cands = [cand for cand in cands if k(cand) == 0]
    cands.sort(key=lambda cand: cand.coords)
    found: dict[tuple, Decomposition] = {}

    def consider(assignment: list[tuple[HClass, int]]) -> None:
        parts: list[HClass] = []
        rays: dict[tuple[int, ...], HClass] = {}
        for cand, nn in assignment:
            sq = pair(cand, cand)
            if sq < 0:
                return
            if sq == 0:
                key = cand.primitive().coords
                rays[key] = rays.get(key, lat.zero()) + nn * cand
            elif nn == 1:
                parts.append(cand)
            else:
                return  # repeated square-positive part: proportional to itself
        parts.extend(rays.values())
        for i, p in enumerate(parts):
            for q in parts[i + 1 :]:
                if pair(p, q) != 0 or _proportional(p, q):
                    return
        dec = Decomposition(tuple(parts))
        found[tuple(p.coords for p in dec.parts)] = dec

    w_total = omega_area(A)

    def search(i: int, remaining: HClass, w_left: Fraction, picked: list) -> None:
        if i == len(cands):
            if picked and remaining.is_zero:
                consider(picked)
            return
        cand = cands[i]
        w = omega_area(cand)
        max_n = int(w_left // w) if w_left > 0 else 0
        rem = remaining
        for n in range(max_n + 1):
            search(i + 1, rem, w_left - n * w, picked + [(cand, n)] if n else picked)
            rem = rem - cand

    if w_total > 0:
        search(0, A, w_total, [])
    return [found[key] for key in sorted(found)]


def gromov_via_decompositions(
    model: ManifoldModel,
    A: HClass,
    candidates: Sequence[HClass] | None = None,
) -> int:
    """Gr(A) as the sum over decompositions of the product of part counts.

    Candidates default to the classes the model has count data for (the
    union of the gr0_table and torus_table keys).  Square-positive parts
    read gr0_table; square-zero parts read the torus weighting of their
    ray.  A part without data raises a structured error: a silent zero
    would fake a vanishing invariant.  Gr(0) = 1 by convention (the empty
    curve).
    """
    if candidates is None:
        candidates = sorted(
            set(model.gr0_table) | set(model.torus_table),
            key=lambda cand: cand.coords,
        )
    if A.is_zero:
        return 1
    decs = enumerate_decompositions(model, A, candidates)
    missing: list[HClass] = []
    total = 0
    for dec in decs:
        prod = 1
        for part in dec.parts:
            sq = pair(part, part)
            if sq > 0:
                value = model.gr0_table.get(part)
                if value is None:
                    missing.append(part)
                    continue
                prod *= value
            else:
                prim = part.primitive()
                entries = model.torus_table.get(prim)
                if entries is None:
                    missing.append(part)
                    continue
                prod *= gr_torus_class(entries, part.content())
        total += prod
    if missing:
        uniq = sorted(set(missing), key=lambda cand: cand.coords)
        raise UnknownGr0Error(uniq)
    return total


def check_kmin_constraints(model: ManifoldModel, table: dict) -> Report:
    """Flag invariant-table entries violating the minimal-manifold rules.

    Requires a minimal model with b2+ > 1.  Clause (i): k(A) != 0 with a
    nonzero count; clause (iii): |Gr(A)| != |Gr(K-A)| when both classes
    are present; clause (iv): K.K = 0 and a nonzero count on A.A != 0.
    """
    if not model.minimal or b2_plus(model.lattice) <= 1:
        raise PreconditionError("the constraints apply to minimal models with b2+ > 1")
    K = model.canonical_class()
    items = sorted(table.items(), key=lambda kv: kv[0].coords)
    wit_i = tuple(A for A, v in items if v != 0 and k(A) != 0)
    wit_iii = []
    for A, v in items:
        partner = K - A
        if partner in table and A.coords <= partner.coords:
            if abs(v) != abs(table[partner]):
                wit_iii.append((A, partner))
    if pair(K, K) == 0:
        wit_iv = tuple(A for A, v in items if v != 0 and pair(A, A) != 0)
        detail_iv = "K.K = 0 forces square zero on classes with nonzero count"
    else:
        wit_iv = ()
        detail_iv = "K.K != 0; clause not applicable"
    return Report(
        (
            Check("i", not wit_i, wit_i, "nonzero count needs k(A) = 0"),
            Check("iii", not wit_iii, tuple(wit_iii), "|Gr(A)| must equal |Gr(K-A)|"),
            Check("iv", not wit_iv, wit_iv, detail_iv),
        )
    )
