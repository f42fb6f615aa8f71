"""Integer homology lattices of closed symplectic 4-manifolds.

An IntersectionLattice fixes a basis of H_2(M; Z), the Gram matrix of the
intersection form Q, the coordinates of the canonical class K, and a
rational area functional omega.  Homology classes are integer coordinate
vectors tied to their lattice; the pairing A.B, the Chern number
c1(A) = -K.A and the area omega(A) are all evaluated exactly.

K is required to be characteristic mod 2, i.e. Q(e,e) = Q(K,e) (mod 2) on
every basis vector.  That congruence is what keeps the point count
k(A) = (c1(A) + A.A)/2 an integer for every class A.

b2+ (the positive index of inertia of Q) is found by symmetric congruence
reduction over the rationals; no floating point is involved anywhere.

A ManifoldModel bundles a lattice with the finite data the counting
formulas consume: the stored exceptional classes, a minimality flag, and
the three count tables (Gr0 values for square-positive classes, torus
labels for square-zero rays, connected rational-curve counts).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import (
    ClassParseError,
    LatticeMismatchError,
    UnknownPresetError,
)
from .torus_series import TorusLabel

_SYMBOL_RE = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")
_TERM_RE = re.compile(r"([+-]?)(\d*)\*?([A-Za-z_][A-Za-z_0-9]*)")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class IntersectionLattice:
    """Basis, intersection form, canonical class and area of H_2(M; Z)."""

    name: str
    basis: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    area: tuple[Fraction, ...]
    b2plus_override: int | None = None

    def __post_init__(self) -> None:
        basis = tuple(self.basis)
        if not basis:
            raise ValueError("lattice rank must be positive")
        for sym in basis:
            if not _SYMBOL_RE.match(sym):
                raise ValueError(f"bad basis symbol {sym!r}")
        if len(set(basis)) != len(basis):
            raise ValueError("basis symbols must be distinct")
        n = len(basis)
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError(f"gram matrix must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i][j] != gram[j][i]:
                    raise ValueError(f"gram matrix is not symmetric at ({i},{j})")
        canonical = tuple(int(x) for x in self.canonical)
        if len(canonical) != n:
            raise ValueError("canonical class has wrong length")
        # K characteristic mod 2 keeps every k(A) an integer.
        for i in range(n):
            k_dot_ei = sum(canonical[r] * gram[r][i] for r in range(n))
            if (gram[i][i] - k_dot_ei) % 2 != 0:
                raise ValueError(
                    f"canonical class is not characteristic mod 2 at basis vector {basis[i]}"
                )
        area = tuple(_as_fraction(x) for x in self.area)
        if len(area) != n:
            raise ValueError("area vector has wrong length")
        if self.b2plus_override is not None and self.b2plus_override < 0:
            raise ValueError("b2plus override must be non-negative")
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", canonical)
        object.__setattr__(self, "area", area)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def zero(self) -> "HClass":
        return HClass((0,) * self.rank, self)

    def basis_class(self, i: int) -> "HClass":
        coords = [0] * self.rank
        coords[i] = 1
        return HClass(tuple(coords), self)

    def class_from_coords(self, coords: Sequence[int]) -> "HClass":
        return HClass(tuple(int(c) for c in coords), self)

    def canonical_class(self) -> "HClass":
        return HClass(self.canonical, self)

    def parse(self, expr: str) -> "HClass":
        return parse_class(self, expr)

    def symbol_index(self, sym: str) -> int:
        try:
            return self.basis.index(sym)
        except ValueError:
            raise ClassParseError(
                f"unknown symbol {sym!r} (basis of {self.name}: {', '.join(self.basis)})"
            ) from None


@dataclass(frozen=True)
class HClass:
    """A homology class: integer coordinates in its lattice's basis."""

    coords: tuple[int, ...]
    lattice: IntersectionLattice

    def __post_init__(self) -> None:
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.lattice.rank:
            raise ValueError("coordinate vector has wrong length for this lattice")
        object.__setattr__(self, "coords", coords)

    def _require_same_lattice(self, other: "HClass") -> None:
        if self.lattice != other.lattice:
            raise LatticeMismatchError(
                f"classes live in different lattices "
                f"({self.lattice.name} vs {other.lattice.name})"
            )

    def __add__(self, other: "HClass") -> "HClass":
        self._require_same_lattice(other)
        return HClass(tuple(a + b for a, b in zip(self.coords, other.coords)), self.lattice)

    def __sub__(self, other: "HClass") -> "HClass":
        self._require_same_lattice(other)
        return HClass(tuple(a - b for a, b in zip(self.coords, other.coords)), self.lattice)

    def __neg__(self) -> "HClass":
        return HClass(tuple(-a for a in self.coords), self.lattice)

    def __mul__(self, n: int) -> "HClass":
        if not isinstance(n, int):
            return NotImplemented
        return HClass(tuple(n * a for a in self.coords), self.lattice)

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def dot(self, other: "HClass") -> int:
        return pair(self, other)

    @property
    def square(self) -> int:
        return pair(self, self)

    def content(self) -> int:
        """gcd of the coordinates (0 for the zero class)."""
        d = 0
        for c in self.coords:
            d = gcd(d, abs(c))
        return d

    def primitive(self) -> "HClass":
        """The primitive generator of this class's ray."""
        d = self.content()
        if d == 0:
            raise ValueError("the zero class spans no ray")
        return HClass(tuple(c // d for c in self.coords), self.lattice)

    def __str__(self) -> str:
        return format_class(self)

    def __repr__(self) -> str:
        return f"<{format_class(self)} in {self.lattice.name}>"


def pair(A: HClass, B: HClass) -> int:
    """Intersection number A.B."""
    A._require_same_lattice(B)
    g = A.lattice.gram
    total = 0
    for i, a in enumerate(A.coords):
        if a == 0:
            continue
        row = g[i]
        total += a * sum(row[j] * b for j, b in enumerate(B.coords) if b)
    return total


def c1(A: HClass) -> int:
    """First Chern number c1(A) = -K.A."""
    return -pair(A.lattice.canonical_class(), A)


def omega_area(A: HClass) -> Fraction:
    """Symplectic area omega(A), an exact rational."""
    return sum(
        (w * c for w, c in zip(A.lattice.area, A.coords)),
        start=Fraction(0),
    )


def _positive_index(gram: Sequence[Sequence[int]]) -> int:
    """Positive inertia index by symmetric congruence reduction over Q."""
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    positives = 0
    for i in range(n):
        if m[i][i] == 0:
            # Prefer swapping in a nonzero diagonal entry from below.
            for j in range(i + 1, n):
                if m[j][j] != 0:
                    m[i], m[j] = m[j], m[i]
                    for row in m:
                        row[i], row[j] = row[j], row[i]
                    break
        if m[i][i] == 0:
            # Hyperbolic-style block: e_i += e_j with m[i][j] != 0 puts
            # 2*m[i][j] on the diagonal.
            for j in range(i + 1, n):
                if m[i][j] != 0:
                    for col in range(n):
                        m[i][col] += m[j][col]
                    for row in m:
                        row[i] += row[j]
                    break
        d = m[i][i]
        if d == 0:
            continue
        if d > 0:
            positives += 1
        for j in range(i + 1, n):
            f = m[i][j] / d
            if f == 0:
                continue
            for col in range(n):
                m[j][col] -= f * m[i][col]
            for row in m:
                row[j] -= f * row[i]
    return positives


def b2_plus(lattice: IntersectionLattice) -> int:
    """Number of positive eigenvalues of the intersection form."""
    if lattice.b2plus_override is not None:
        return lattice.b2plus_override
    return _positive_index(lattice.gram)


def parse_class(lattice: IntersectionLattice, expr: str) -> HClass:
    """Parse a signed integer combination of basis symbols, e.g. "3L - E1"."""
    s = "".join(expr.split())
    if not s:
        raise ClassParseError("empty class expression")
    if s == "0":
        return lattice.zero()
    coords = [0] * lattice.rank
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None:
            raise ClassParseError(f"malformed term at {s[pos:]!r} in {expr!r}")
        sign, digits, sym = m.groups()
        if not first and sign == "":
            raise ClassParseError(f"missing +/- before {sym!r} in {expr!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        coords[lattice.symbol_index(sym)] += coeff
        pos = m.end()
        first = False
    return HClass(tuple(coords), lattice)


def format_class(A: HClass) -> str:
    """Canonical compact rendering; parse_class inverts it."""
    pieces = []
    for coeff, sym in zip(A.coords, A.lattice.basis):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = sym if mag == 1 else f"{mag}{sym}"
        pieces.append((sign, body))
    if not pieces:
        return "0"
    head_sign, head = pieces[0]
    out = (head_sign if head_sign == "-" else "") + head
    for sign, body in pieces[1:]:
        out += sign + body
    return out


@dataclass(frozen=True, eq=False)
class ManifoldModel:
    """A lattice plus the finite count data the invariants consume.

    exceptional stores the finitely many exceptional classes the model
    knows about; every operation quantifying over the exceptional set uses
    this stored set as its universe.  It can be extended with
    with_exceptional() when a computation needs more of them.

    torus_table maps a primitive square-zero class to the labelled tori on
    its ray.  An empty entry means "known: no tori", which is different
    from a missing entry ("unknown", an error when consulted).
    """

    lattice: IntersectionLattice
    exceptional: tuple[HClass, ...] = ()
    minimal: bool = False
    gr0_table: Mapping[HClass, int] = field(default_factory=dict)
    torus_table: Mapping[HClass, tuple[tuple[TorusLabel, int], ...]] = field(default_factory=dict)
    sphere_table: Mapping[HClass, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        exc = tuple(self.exceptional)
        for E in exc:
            self._check_owned(E, "exceptional class")
            if pair(E, E) != -1 or c1(E) != 1:
                raise ValueError(
                    f"exceptional class {E} must satisfy E.E = -1 and c1(E) = 1"
                )
        if len(set(exc)) != len(exc):
            raise ValueError("duplicate exceptional classes")
        if self.minimal and exc:
            raise ValueError("a minimal model cannot store exceptional classes")
        gr0 = {}
        for A, v in dict(self.gr0_table).items():
            self._check_table_key(A)
            gr0[A] = int(v)
        tori = {}
        for A, entries in dict(self.torus_table).items():
            self._check_table_key(A)
            if A.content() != 1:
                raise ValueError(f"torus table key {A} must be primitive")
            norm = []
            for label, cover in entries:
                if not isinstance(label, TorusLabel):
                    label = TorusLabel.parse(str(label))
                cover = int(cover)
                if cover < 1:
                    raise ValueError(f"torus cover multiplicity must be >= 1 on {A}")
                norm.append((label, cover))
            tori[A] = tuple(norm)
        spheres = {}
        for A, v in dict(self.sphere_table).items():
            self._check_table_key(A)
            v = int(v)
            if v < 0:
                raise ValueError(f"sphere count for {A} must be non-negative")
            spheres[A] = v
        object.__setattr__(self, "exceptional", exc)
        object.__setattr__(self, "gr0_table", gr0)
        object.__setattr__(self, "torus_table", tori)
        object.__setattr__(self, "sphere_table", spheres)

    def _check_owned(self, A: HClass, what: str) -> None:
        if A.lattice != self.lattice:
            raise ValueError(f"{what} {A} belongs to a different lattice")

    def _check_table_key(self, A: HClass) -> None:
        self._check_owned(A, "table key")
        if omega_area(A) <= 0:
            raise ValueError(f"table key {A} must have positive area")

    @property
    def name(self) -> str:
        return self.lattice.name

    def parse(self, expr: str) -> HClass:
        return parse_class(self.lattice, expr)

    def canonical_class(self) -> HClass:
        return self.lattice.canonical_class()

    def with_exceptional(self, *classes: HClass) -> "ManifoldModel":
        """A copy of the model whose stored exceptional set is extended."""
        if self.minimal:
            raise ValueError("a minimal model has no exceptional classes to extend")
        merged = list(self.exceptional)
        for E in classes:
            if E not in merged:
                merged.append(E)
        return replace(self, exceptional=tuple(merged))


# ---------------------------------------------------------------------------
# Presets: the running examples every worked number lives on.
#
# Area functionals are documented conventions, not topological data: they
# only normalize which classes count as "small" in enumerations.  The
# blowup presets use omega(L) = 3, omega(E_i) = 1 so that every class of a
# worked example has positive area; the other presets use the all-ones
# functional.
# ---------------------------------------------------------------------------

_PLUS0 = TorusLabel(1, 0)
_MINUS0 = TorusLabel(-1, 0)


def _cp2() -> ManifoldModel:
    lat = IntersectionLattice(
        name="cp2",
        basis=("L",),
        gram=((1,),),
        canonical=(-3,),
        area=(Fraction(1),),
    )
    L = lat.basis_class(0)
    # Degrees 1..3 through 2, 5 and 8 generic points: 1 line, 1 conic and
    # 12 rational cubics; the embedded count in degree 3 is the single
    # smooth cubic (a torus) through 9 points.
    return ManifoldModel(
        lattice=lat,
        exceptional=(),
        minimal=True,
        gr0_table={L: 1, 2 * L: 1, 3 * L: 1},
        torus_table={},
        sphere_table={L: 1, 2 * L: 1, 3 * L: 12},
    )


def _cp2_blowup(n: int) -> ManifoldModel:
    basis = ("L",) + tuple(f"E{i}" for i in range(1, n + 1))
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n + 1))
        for i in range(n + 1)
    )
    lat = IntersectionLattice(
        name=f"cp2_blowup({n})",
        basis=basis,
        gram=gram,
        canonical=(-3,) + (1,) * n,
        area=(Fraction(3),) + (Fraction(1),) * n,
    )
    L = lat.basis_class(0)
    Es = [lat.basis_class(i) for i in range(1, n + 1)]
    spheres = {L: 1, 2 * L: 1, 3 * L: 12}
    for E in Es:
        spheres[E] = 1
        spheres[L - E] = 1
    for i in range(len(Es)):
        for j in range(i + 1, len(Es)):
            spheres[L - Es[i] - Es[j]] = 1
    return ManifoldModel(
        lattice=lat,
        exceptional=tuple(Es),
        minimal=False,
        gr0_table={},
        torus_table={},
        sphere_table=spheres,
    )


def _s2xs2() -> ManifoldModel:
    lat = IntersectionLattice(
        name="s2xs2",
        basis=("A1", "A2"),
        gram=((0, 1), (1, 0)),
        canonical=(-2, -2),
        area=(Fraction(1), Fraction(1)),
    )
    A1 = lat.basis_class(0)
    A2 = lat.basis_class(1)
    return ManifoldModel(
        lattice=lat,
        exceptional=(),
        minimal=True,
        gr0_table={A1: 1, A2: 1, A1 + A2: 1},
        torus_table={},
        sphere_table={A1: 1, A2: 1, A1 + A2: 1},
    )


def _s2xt2() -> ManifoldModel:
    # S = [S^2 x pt] is the sphere fiber of the ruling, B = [pt x T^2].
    lat = IntersectionLattice(
        name="s2xt2",
        basis=("S", "B"),
        gram=((0, 1), (1, 0)),
        canonical=(0, -2),
        area=(Fraction(1), Fraction(1)),
    )
    S = lat.basis_class(0)
    B = lat.basis_class(1)
    # The two flat sections are the only tori on the ray of B; for any
    # compatible product structure their labels are (+,0).
    return ManifoldModel(
        lattice=lat,
        exceptional=(),
        minimal=True,
        gr0_table={},
        torus_table={B: ((_PLUS0, 1), (_PLUS0, 1))},
        sphere_table={S: 1},
    )


def _elliptic(n: int) -> ManifoldModel:
    # Rank-2 sublattice spanned by the fiber F and a section S of V(n):
    # F.F = 0, F.S = 1, S.S = -n, K = (n-2)F.  b2+ = 2n-1 is standard
    # Betti data for these surfaces and is supplied as an override because
    # the rank-2 sublattice alone cannot determine it.
    lat = IntersectionLattice(
        name=f"elliptic({n})",
        basis=("F", "S"),
        gram=((0, 1), (1, -n)),
        canonical=(n - 2, 0),
        area=(Fraction(1), Fraction(1)),
        b2plus_override=2 * n - 1,
    )
    F = lat.basis_class(0)
    S = lat.basis_class(1)
    if n == 1:
        tori = {F: ((_PLUS0, 1),)}
    elif n == 2:
        tori = {F: ()}
    else:
        tori = {F: tuple(((_MINUS0, 1) for _ in range(n - 2)))}
    return ManifoldModel(
        lattice=lat,
        exceptional=(S,) if n == 1 else (),
        minimal=n >= 2,
        gr0_table={},
        torus_table=tori,
        sphere_table={S: 1} if n == 1 else {},
    )


_BUILDERS = {
    "cp2": (_cp2, False),
    "cp2_blowup": (_cp2_blowup, True),
    "s2xs2": (_s2xs2, False),
    "s2xt2": (_s2xt2, False),
    "elliptic": (_elliptic, True),
}

PRESET_NAMES: tuple[str, ...] = (
    "cp2",
    "cp2_blowup(n)",
    "s2xs2",
    "s2xt2",
    "elliptic(n)",
)

_PRESET_FORM = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)\s*(?:\(\s*(\d+)\s*\))?$")


def preset(name: str, n: int | None = None) -> ManifoldModel:
    """Build a preset model; parametrized ones accept preset("elliptic", 3)
    or the inline form preset("elliptic(3)")."""
    m = _PRESET_FORM.match(name.strip())
    if m is None:
        raise UnknownPresetError(f"bad preset name {name!r}")
    base, inline = m.groups()
    if inline is not None:
        if n is not None and n != int(inline):
            raise UnknownPresetError(f"conflicting parameters for preset {name!r}")
        n = int(inline)
    entry = _BUILDERS.get(base)
    if entry is None:
        raise UnknownPresetError(
            f"unknown preset {base!r}; available: {', '.join(PRESET_NAMES)}"
        )
    builder, takes_n = entry
    if takes_n:
        if n is None:
            raise UnknownPresetError(f"preset {base!r} needs a parameter, e.g. {base}(2)")
        if n < 1:
            raise UnknownPresetError(f"preset {base!r} needs n >= 1")
        return builder(n)
    if n is not None:
        raise UnknownPresetError(f"preset {base!r} takes no parameter")
    return builder()
