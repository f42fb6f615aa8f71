"""Lattice arithmetic, presets, class expression parsing."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gromov4 import (
    ClassParseError,
    IntersectionLattice,
    LatticeMismatchError,
    UnknownPresetError,
    b2_plus,
    c1,
    format_class,
    omega_area,
    pair,
    preset,
)


def test_cp2_pairing_and_c1():
    m = preset("cp2")
    L = m.parse("L")
    assert pair(L, L) == 1
    assert c1(L) == 3
    assert c1(3 * L) == 9
    assert omega_area(L) == 1


def test_blowup_canonical_and_areas():
    m = preset("cp2_blowup", 2)
    L, E1, E2 = (m.parse(s) for s in ("L", "E1", "E2"))
    assert pair(E1, E1) == -1
    assert pair(L, E1) == 0
    assert pair(E1, E2) == 0
    assert c1(E1) == 1
    assert c1(L - E1) == 2
    assert omega_area(L) == 3
    assert omega_area(E1) == 1
    assert omega_area(L - E1 - E2) == 1


def test_blowup9_fiber_class_has_zero_c1():
    m = preset("cp2_blowup", 9)
    F = m.parse("3L - E1 - E2 - E3 - E4 - E5 - E6 - E7 - E8 - E9")
    assert c1(F) == 0
    assert pair(F, F) == 0


def test_s2xs2_canonical():
    m = preset("s2xs2")
    A1, A2 = m.parse("A1"), m.parse("A2")
    assert pair(A1, A1) == 0 and pair(A2, A2) == 0 and pair(A1, A2) == 1
    K = m.canonical_class()
    assert pair(K, A1 + A2) == -4
    assert c1(A1 + A2) == 4


def test_s2xt2_base_and_fiber():
    m = preset("s2xt2")
    S, B = m.parse("S"), m.parse("B")
    assert pair(S, S) == 0 and pair(B, B) == 0 and pair(S, B) == 1
    assert c1(B) == 0
    assert c1(S) == 2
    assert m.torus_table[B] == ((m.torus_table[B][0][0], 1), (m.torus_table[B][0][0], 1))
    assert len(m.torus_table[B]) == 2
    assert all(str(lab) == "+0" and cover == 1 for lab, cover in m.torus_table[B])


def test_elliptic_presets():
    for n in (1, 2, 3, 6):
        m = preset("elliptic", n)
        F, S = m.parse("F"), m.parse("S")
        assert pair(F, F) == 0
        assert pair(F, S) == 1
        assert pair(S, S) == -n
        assert m.canonical_class() == (n - 2) * F
        assert c1(F) == 0
        assert b2_plus(m.lattice) == 2 * n - 1
        assert m.minimal is (n >= 2)
        assert (S in m.exceptional) is (n == 1)
    assert preset("elliptic", 1).torus_table[preset("elliptic", 1).parse("F")] != ()
    assert preset("elliptic", 2).torus_table[preset("elliptic", 2).parse("F")] == ()


def test_b2_plus_on_presets():
    assert b2_plus(preset("cp2").lattice) == 1
    assert b2_plus(preset("cp2_blowup", 3).lattice) == 1
    assert b2_plus(preset("s2xs2").lattice) == 1
    assert b2_plus(preset("s2xt2").lattice) == 1


def test_b2_plus_computed_without_override():
    lat = IntersectionLattice("h", ("a", "b"), ((0, 1), (1, 0)), (-2, -2), (1, 1))
    assert b2_plus(lat) == 1
    lat2 = IntersectionLattice(
        "d", ("a", "b", "c"), ((1, 0, 0), (0, 1, 0), (0, 0, -1)), (1, 1, 1), (1, 1, 1)
    )
    assert b2_plus(lat2) == 2


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)) for i in range(n)
    )


def _vecmul(m, v):
    n = len(v)
    return tuple(sum(m[i][j] * v[j] for j in range(n)) for i in range(n))


def test_b2_plus_invariant_under_unimodular_change():
    rng = random.Random(3)
    base = IntersectionLattice(
        "d", ("a", "b", "c"), ((1, 0, 0), (0, 1, 0), (0, 0, -1)), (1, 1, 1), (1, 1, 1)
    )
    n = base.rank
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for _ in range(25):
        m = ident
        minv = ident
        for _ in range(6):
            i, j = rng.sample(range(n), 2)
            cst = rng.randint(-2, 2)
            e = tuple(
                tuple((1 if r == s else 0) + (cst if (r, s) == (i, j) else 0) for s in range(n))
                for r in range(n)
            )
            einv = tuple(
                tuple((1 if r == s else 0) - (cst if (r, s) == (i, j) else 0) for s in range(n))
                for r in range(n)
            )
            m = _matmul(m, e)
            minv = _matmul(einv, minv)
        mt = tuple(tuple(m[j][i] for j in range(n)) for i in range(n))
        gram2 = _matmul(mt, _matmul(base.gram, m))
        k2 = _vecmul(minv, base.canonical)
        area2 = _vecmul(mt, tuple(base.area))
        lat2 = IntersectionLattice("d2", base.basis, gram2, k2, area2)
        assert b2_plus(lat2) == b2_plus(base)


def test_parse_examples():
    m = preset("cp2_blowup", 1)
    assert m.parse("L + 2E1").coords == (1, 2)
    assert m.parse("L+2E1").coords == (1, 2)
    assert m.parse(" -L ").coords == (-1, 0)
    assert m.parse("2*E1 - L").coords == (-1, 2)
    assert m.parse("0").coords == (0, 0)
    assert m.parse("0L").coords == (0, 0)


def test_parse_rejects_garbage():
    m = preset("cp2")
    for expr in ("3Q", "", "L L", "3", "L +", "+ +L", "L & L"):
        with pytest.raises(ClassParseError):
            m.parse(expr)


def test_format_class_layout():
    m = preset("cp2_blowup", 2)
    assert format_class(m.parse("3L - E1 - 2E2")) == "3L-E1-2E2"
    assert format_class(m.parse("-L + E2")) == "-L+E2"
    assert format_class(m.lattice.zero()) == "0"


@given(st.lists(st.integers(min_value=-40, max_value=40), min_size=3, max_size=3))
def test_format_parse_round_trip(coords):
    m = preset("cp2_blowup", 2)
    A = m.lattice.class_from_coords(coords)
    assert m.parse(format_class(A)).coords == tuple(coords)


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=2),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=2),
    st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=2),
)
def test_pairing_bilinear_symmetric(xs, ys, zs):
    lat = preset("s2xs2").lattice
    A, B, C = (lat.class_from_coords(v) for v in (xs, ys, zs))
    assert pair(A, B) == pair(B, A)
    assert pair(A + B, C) == pair(A, C) + pair(B, C)
    assert pair(3 * A - B, C) == 3 * pair(A, C) - pair(B, C)


@given(st.lists(st.integers(min_value=-15, max_value=15), min_size=2, max_size=2))
def test_characteristic_parity_makes_k_integral(coords):
    for name, n in (("cp2_blowup", 2), ("s2xs2", None), ("elliptic", 3)):
        m = preset(name, n) if n else preset(name)
        A = m.lattice.class_from_coords((coords * m.lattice.rank)[: m.lattice.rank])
        assert (pair(A, A) + pair(m.canonical_class(), A)) % 2 == 0


def test_hclass_arithmetic_and_content():
    m = preset("cp2_blowup", 2)
    A = m.parse("2L - 4E1 + 6E2")
    assert A.content() == 2
    assert A.primitive().coords == (1, -2, 3)
    assert (-A).coords == (-2, 4, -6)
    assert (A - A).is_zero
    assert m.lattice.zero().content() == 0
    with pytest.raises(ValueError):
        m.lattice.zero().primitive()
    other = preset("cp2").parse("L")
    with pytest.raises(LatticeMismatchError):
        pair(A, other)
    with pytest.raises(TypeError):
        Fraction(1, 2) * A


def test_lattice_validation():
    with pytest.raises(ValueError):
        IntersectionLattice("x", ("a",), ((1, 0),), (1,), (1,))
    with pytest.raises(ValueError):
        IntersectionLattice("x", ("a", "b"), ((1, 2), (3, 1)), (1, 1), (1, 1))
    with pytest.raises(ValueError):
        IntersectionLattice("x", ("a", "a"), ((1, 0), (0, 1)), (1, 1), (1, 1))
    with pytest.raises(ValueError):
        IntersectionLattice("x", ("a b",), ((1,),), (1,), (1,))
    # K = 0 on an odd lattice breaks the parity guarantee
    with pytest.raises(ValueError):
        IntersectionLattice("x", ("a",), ((1,),), (0,), (1,))


def test_preset_lookup_forms():
    assert preset("cp2_blowup(2)").lattice.rank == 3
    assert preset("elliptic(3)").name == preset("elliptic", 3).name
    with pytest.raises(UnknownPresetError):
        preset("nosuch")
    with pytest.raises(UnknownPresetError):
        preset("cp2_blowup")
    with pytest.raises(UnknownPresetError):
        preset("elliptic", 0)
    with pytest.raises(UnknownPresetError):
        preset("cp2", 5)


def test_model_exceptional_validation():
    m = preset("cp2_blowup", 2)
    with pytest.raises(ValueError):
        m.with_exceptional(m.parse("L"))
    twisted = m.with_exceptional(m.parse("L - E1 - E2"))
    assert m.parse("L - E1 - E2") in twisted.exceptional
