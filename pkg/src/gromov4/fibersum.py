"""Fiber-class counts of elliptic surfaces via an additive piece ledger.

V(n) denotes the fiber sum of n copies of the rational elliptic surface;
its fiber class F has F.F = 0 and K = (n-2)F.  The signed count of
fiber-class tori obeys a cut-and-paste ledger: cutting along square-zero
torus boundaries splits the count into per-piece contributions (the
boundary circle bundle itself carries Euler characteristic 0 and
contributes nothing), so gluing pieces adds their fiber counts.

The shipped pieces and their signed fiber counts:

    D2xT2          1   (one boundary torus; the cap)
    V1             1   (closed rational elliptic surface)
    V1_minus_NF    0   (V(1) minus an open fiber neighborhood)
    N_minus_P     -1   (fiber annulus between two boundary tori)

Each extra fiber-sum copy inserts one N_minus_P piece, so the open piece
for V(n) carries 1-n, and capping with D2xT2 gives the closed count 2-n.
Doubling the cap reproduces the two-section count of the trivial torus
bundle: glue(D2xT2, D2xT2) = 2.

All other boundary-compatible classes of the open pieces have vanishing
counts (doubling V1_minus_NF yields the K3 surface, whose invariants all
vanish); pieces track that statement as a single boolean flag, which is
as fine-grained as the ledger ever needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import PreconditionError
from .lattice import HClass, ManifoldModel, preset
from .torus_series import gr_torus_class


@dataclass(frozen=True)
class Piece:
    """A (possibly bounded) piece with its signed fiber-class torus count."""

    name: str
    boundary_count: int
    fiber_gr: int
    notes: tuple[str, ...] = ()
    nonfiber_vanishes: bool = True

    def __post_init__(self) -> None:
        if self.boundary_count < 0:
            raise ValueError("boundary count must be non-negative")

    @property
    def closed(self) -> bool:
        return self.boundary_count == 0


def base_pieces() -> dict[str, Piece]:
    """The ledger's stock pieces, keyed by identifier."""
    return {
        "D2xT2": Piece(
            "D2xT2", 1, 1, ("D2xT2 cap: one boundary torus, fiber count 1",)
        ),
        "V1": Piece("V1", 0, 1, ("V1 closed: fiber count 1",)),
        "V1_minus_NF": Piece(
            "V1_minus_NF",
            1,
            0,
            ("V1 minus a fiber neighborhood: fiber count 0",),
        ),
        "N_minus_P": Piece(
            "N_minus_P",
            2,
            -1,
            ("fiber annulus N_minus_P: two boundary tori, fiber count -1",),
        ),
    }


def glue(a: Piece, b: Piece) -> Piece:
    """Glue two pieces along one boundary torus each; fiber counts add."""
    if a.boundary_count < 1 or b.boundary_count < 1:
        raise PreconditionError("glue needs a boundary torus on each piece")
    fiber = a.fiber_gr + b.fiber_gr
    note = f"glue {a.name} with {b.name}: fiber count {a.fiber_gr} + {b.fiber_gr} = {fiber}"
    return Piece(
        name=f"{a.name}+{b.name}",
        boundary_count=a.boundary_count + b.boundary_count - 2,
        fiber_gr=fiber,
        notes=a.notes + b.notes + (note,),
        nonfiber_vanishes=a.nonfiber_vanishes and b.nonfiber_vanishes,
    )


class EllipticFiberCount(NamedTuple):
    value: int
    trace: tuple[str, ...]


def gr_elliptic_fiber(n: int) -> EllipticFiberCount:
    """Signed fiber-class count of V(n), built by the inductive ledger.

    The open piece starts at V1_minus_NF (count 0), each further fiber-sum
    copy glues in one N_minus_P (count -1), and the D2xT2 cap closes the
    piece; the result is 2 - n.
    """
    if n < 1:
        raise PreconditionError("elliptic surfaces V(n) need n >= 1")
    stock = base_pieces()
    open_piece = stock["V1_minus_NF"]
    for _ in range(n - 1):
        open_piece = glue(open_piece, stock["N_minus_P"])
    closed = glue(open_piece, stock["D2xT2"])
    if not closed.closed:
        raise AssertionError("the capped piece must be closed")
    return EllipticFiberCount(closed.fiber_gr, closed.notes)


def fiber_gr_table(n: int, kmax: int | None = None) -> dict[HClass, int]:
    """Counts of fiber multiples kF on V(n), from the torus weighting.

    The default range covers the full nonzero row, k = 0 .. max(n-2, 1).
    """
    if n < 1:
        raise PreconditionError("elliptic surfaces V(n) need n >= 1")
    model: ManifoldModel = preset("elliptic", n)
    F = model.lattice.basis_class(0)
    labels = model.torus_table[F]
    if kmax is None:
        kmax = max(n - 2, 1)
    return {k * F: gr_torus_class(labels, k) for k in range(kmax + 1)}
