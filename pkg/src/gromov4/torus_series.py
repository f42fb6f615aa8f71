"""Truncated integer power series and the torus weighting scheme.

A disjoint union of holomorphic tori contributes to a degree-k curve count
through a product of generating functions, one factor per torus.  Each torus
carries one of eight labels (sign, i), where the sign is the sign of the
determinant of the untwisted Cauchy-Riemann operator and i counts the
negative twisted determinants.  The label selects the series

    f(+,0) = 1/(1-t)          f(+,1) = 1 + t
    f(+,2) = (1+t)/(1+t^2)    f(+,3) = (1+t)(1-t^2)/(1+t^2)
    f(-,i) = 1/f(+,i)

and a torus lying in class m*B enters the product as f_label(t^m).  The
count in degree k is the t^k coefficient of the product.

Everything here is exact: series are integer coefficient vectors truncated
at a fixed order, and rational functions are expanded by series inversion
(which needs, and all eight f's have, constant term +-1).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

_LABEL_RE = re.compile(r"^([+-])([0-3])$")


@dataclass(frozen=True)
class TorusLabel:
    """One of the eight torus types (sign, i) with i in 0..3."""

    sign: int
    twists: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("torus label sign must be +1 or -1")
        if self.twists not in (0, 1, 2, 3):
            raise ValueError("torus label twist count must lie in 0..3")

    @classmethod
    def parse(cls, text: str) -> "TorusLabel":
        # "−" is the typographic minus; accept it alongside ASCII "-".
        m = _LABEL_RE.match(text.strip().replace("−", "-"))
        if m is None:
            raise ValueError(f"bad torus label {text!r}; expected +0, +1, ... or -3")
        return cls(1 if m.group(1) == "+" else -1, int(m.group(2)))

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + str(self.twists)


ALL_LABELS: tuple[TorusLabel, ...] = tuple(
    TorusLabel(sign, i) for sign in (1, -1) for i in range(4)
)


@dataclass(frozen=True)
class TruncSeries:
    """Integer power series truncated at a fixed order.

    coeffs stores c0..cN; the truncation order N is implicit in the length.
    Binary operations on mismatched orders truncate to the shorter one, and
    no operation ever reads past the stored coefficients.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least its constant coefficient")
        for c in self.coeffs:
            if not isinstance(c, int):
                raise ValueError("series coefficients must be integers")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, coeffs: Sequence[int], order: int) -> "TruncSeries":
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = list(coeffs[: order + 1])
        cs.extend([0] * (order + 1 - len(cs)))
        return cls(tuple(cs))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.from_poly([1], order)

    def coeff(self, k: int) -> int:
        if k < 0 or k > self.order:
            raise IndexError(f"coefficient {k} lies beyond truncation order {self.order}")
        return self.coeffs[k]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        return TruncSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n + 1)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = min(self.order, other.order)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncSeries(tuple(out))

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse in the truncated ring.

        Requires constant term +-1 so the inverse stays integral.
        """
        a0 = self.coeffs[0]
        if a0 not in (1, -1):
            raise ValueError(f"cannot invert series with constant term {a0}")
        out = [0] * (self.order + 1)
        out[0] = a0
        for n in range(1, self.order + 1):
            acc = 0
            for j in range(1, n + 1):
                if self.coeffs[j]:
                    acc += self.coeffs[j] * out[n - j]
            out[n] = -a0 * acc
        return TruncSeries(tuple(out))

    def substitute_power(self, m: int) -> "TruncSeries":
        """Map sum(ck t^k) to sum(ck t^(k*m)), same truncation order."""
        if m < 1:
            raise ValueError("substitution exponent must be >= 1")
        out = [0] * (self.order + 1)
        for j, c in enumerate(self.coeffs):
            if j * m > self.order:
                break
            out[j * m] = c
        return TruncSeries(tuple(out))


# Module-level operation aliases matching the documented surface.
def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def series_inverse(a: TruncSeries) -> TruncSeries:
    return a.inverse()


def substitute_power(a: TruncSeries, m: int) -> TruncSeries:
    return a.substitute_power(m)


def coeff(a: TruncSeries, k: int) -> int:
    return a.coeff(k)


@functools.lru_cache(maxsize=None)
def f_series(label: TorusLabel, order: int) -> TruncSeries:
    """Expansion of the generating function attached to a torus label."""
    if order < 0:
        raise ValueError("truncation order must be non-negative")
    one_plus_t = TruncSeries.from_poly([1, 1], order)
    if label.twists == 0:
        plus = TruncSeries.from_poly([1, -1], order).inverse()
    elif label.twists == 1:
        plus = one_plus_t
    elif label.twists == 2:
        plus = one_plus_t * TruncSeries.from_poly([1, 0, 1], order).inverse()
    else:
        plus = (
            one_plus_t
            * TruncSeries.from_poly([1, 0, -1], order)
            * TruncSeries.from_poly([1, 0, 1], order).inverse()
        )
    return plus if label.sign > 0 else plus.inverse()


def _normalize_tori(tori: Iterable) -> list[tuple[TorusLabel, int]]:
    out = []
    for entry in tori:
        if isinstance(entry, TorusLabel):
            out.append((entry, 1))
            continue
        label, m = entry
        if not isinstance(label, TorusLabel):
            label = TorusLabel.parse(str(label))
        m = int(m)
        if m < 1:
            raise ValueError("cover multiplicity must be >= 1")
        out.append((label, m))
    return out


def gr_torus_class(tori: Iterable, k: int) -> int:
    """Degree-k count of a list of tori, each given as a label or a
    (label, m) pair where the torus lies in m times the ray generator.

    The count is the t^k coefficient of the product over the listed tori of
    f_label(t^m).  An empty list counts 1 in degree 0 and 0 above.
    """
    if k < 0:
        raise ValueError("degree must be non-negative")
    acc = TruncSeries.one(k)
    for label, m in _normalize_tori(tori):
        acc = acc * f_series(label, k).substitute_power(m)
    return acc.coeff(k)
