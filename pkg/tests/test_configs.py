import random
import warnings
from itertools import product

import pytest
from hypothesis import given

from hamvc.configs import (
    ConfigError,
    find_corner,
    find_fist,
    find_four_on_line,
    find_line_triple,
    find_pluck,
    find_rectangle,
    pigeonhole_slice,
    witness_from_config,
)
from hamvc.constructions import construct_band3, construct_u1, construct_u2, construct_u3, construct_ustar
from hamvc.core import HammingParams, PointSet, PreconditionError
from hamvc.shatter import validate_witness, vc_dimension

from conftest import point_sets

H241 = HammingParams(2, 4)
H232 = HammingParams(2, 3, 2)


def test_line_triple_example(h231):
    U = PointSet.from_points(h231, [(0, 0), (0, 1), (0, 2), (1, 2)])
    c = find_line_triple(U)
    assert c.roles == {"x": (0, 0), "y": (0, 1), "z": (0, 2), "u0": (1, 2)}
    w = witness_from_config(c, U)
    assert w.size == 2 and validate_witness(w, U)


def test_line_triple_none(h231):
    assert find_line_triple(construct_u1(4)) is None
    assert find_line_triple(PointSet.from_points(h231, [(0, 0), (0, 1), (0, 2)])) is None


def test_corner_examples(h231):
    c = find_corner(PointSet.from_points(h231, [(0, 1), (1, 0), (1, 1)]))
    assert c.hole == (0, 0)
    assert find_corner(construct_u1(4)) is None
    assert find_corner(construct_u1(5)) is None


def test_corner_missing_role_is_named(h231):
    U = PointSet.from_points(h231, [(0, 1), (1, 0), (1, 1)])
    with pytest.raises(ConfigError) as e:
        witness_from_config(find_corner(U), U)
    assert e.value.role == "u_x"


def test_corner_missing_u0():
    # two per line, but only the five named points: no room for u0
    p = HammingParams(2, 3)
    U = PointSet.from_points(p, [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0)])
    c = find_corner(U)
    with pytest.raises(ConfigError) as e:
        witness_from_config(c, U)
    assert e.value.role == "u0"


def test_fist_full_grid():
    U = PointSet.full(H241)
    c = find_fist(U)
    assert c.orientation == "vertical"
    assert [c[r] for r in ("x", "y", "z", "u3")] == [(0, 0), (0, 1), (0, 2), (0, 3)]
    assert c["u0"] == (1, 3)
    w = witness_from_config(c, U)
    assert w.size == 3 and validate_witness(w, U)


def test_fist_none():
    assert find_fist(construct_u2(5)) is None
    assert find_fist(PointSet.from_points(H241, [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1)])) is None


def test_rectangle_h49():
    p = HammingParams(4, 9)
    U = PointSet.from_points(p, [(1, 1, 3, 8), (1, 4, 3, 8), (1, 1, 6, 8), (1, 4, 6, 8)])
    r = find_rectangle(U)
    assert r.plane.free_coords == (1, 2)
    assert find_rectangle(PointSet.from_points(p, [(1, 1, 3, 8), (1, 4, 3, 8), (1, 1, 6, 8)])) is None


def test_rectangle_band3_q7():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert find_rectangle(construct_band3(3, 7)) is None


def test_four_on_line():
    col = PointSet.from_points(H241, [(2, v) for v in range(4)])
    c = find_four_on_line(col)
    assert c.lines[0].free_coord == 1 and c.lines[0].fixed == (2,)
    assert find_four_on_line(construct_u2(6)) is None


def test_pluck_example():
    U = PointSet.from_points(H232, [(0, 0), (1, 0), (0, 1), (1, 2), (2, 2)])
    c = find_pluck(U)
    assert c.orientation == "row"
    assert c.roles == {"x": (0, 0), "y": (1, 0), "u_x": (1, 2), "u_y": (0, 1), "u_xy": (2, 2)}
    w = witness_from_config(c, U)
    assert validate_witness(w, U)


def test_pluck_none():
    for q in range(3, 8):
        assert find_pluck(construct_ustar(q)) is None
    assert find_pluck(PointSet.from_points(H232, [(0, 0), (1, 0), (2, 0)])) is None


def test_precondition_errors(h231):
    U = PointSet.from_points(h231, [(0, 0)])
    with pytest.raises(PreconditionError):
        find_pluck(U)
    with pytest.raises(PreconditionError):
        find_corner(PointSet(HammingParams(3, 3)))
    with pytest.raises(PreconditionError):
        find_line_triple(PointSet(H232))
    with pytest.raises(PreconditionError):
        pigeonhole_slice(U, 1)


def test_pigeonhole_examples():
    p = HammingParams(3, 4)
    assert pigeonhole_slice(PointSet(p), 1) is None
    assert pigeonhole_slice(construct_u3(4), 11) is None
    assert pigeonhole_slice(construct_u3(4), 8) is not None
    rng = random.Random(1)
    U = PointSet.from_points(p, rng.sample(list(p.vertices()), 49))
    plane, S = pigeonhole_slice(U, 13)
    assert S.size >= 13 and S.params == HammingParams(2, 4)


def test_u3_plane_occupancy():
    # derived: max over all 3q planes of U3(4)
    U = construct_u3(4)
    best = max(
        sum(1 for x in U if all(x[j] == f[i] for i, j in enumerate(k for k in range(3) if k not in pair)))
        for pair in [(0, 1), (0, 2), (1, 2)]
        for f in product(range(4), repeat=1)
    )
    assert best == 8


@given(point_sets(params=HammingParams(2, 4, 1)))
def test_line_triple_forces_vc2(U):
    if find_line_triple(U):
        assert vc_dimension(U).dimension >= 2


@given(point_sets(params=HammingParams(2, 4, 1), min_size=7))
def test_fist_forces_vc3(U):
    if find_fist(U):
        assert vc_dimension(U, max_k=4).dimension == 3


@given(point_sets(params=HammingParams(2, 4, 2)))
def test_pluck_forces_vc2(U):
    if find_pluck(U):
        assert vc_dimension(U).dimension >= 2


@given(point_sets(params=HammingParams(2, 4, 1)))
def test_detectors_deterministic(U):
    for f in (find_line_triple, find_corner, find_fist, find_rectangle, find_four_on_line):
        assert f(U) == f(PointSet(U.params, U.members))


def _two_per_line(q, rng):
    """Each row and column holds exactly two points: union of two disagreeing permutations."""
    while True:
        s, t = rng.sample(range(q), q), rng.sample(range(q), q)
        if all(a != b for a, b in zip(s, t)):
            return PointSet.from_points(HammingParams(2, q), [(c, r) for r in range(q) for c in (s[r], t[r])])


def _eliminate_quadruples(U):
    """Strip closed 2x2 quadruples greedily; return the hole of the first open corner, or None."""
    left = set(U.points)
    while left:
        i, j = min(left)
        (j2,) = [b for a, b in left if a == i and b != j]
        (i2,) = [a for a, b in left if b == j and a != i]
        if (i2, j2) not in left:
            return (i2, j2)
        left -= {(i, j), (i, j2), (i2, j), (i2, j2)}
    return None


@pytest.mark.parametrize("q", [3, 4, 5, 6, 7, 8])
def test_quadruple_elimination_parity(q):
    rng = random.Random(q)
    for _ in range(40):
        U = _two_per_line(q, rng)
        hole = _eliminate_quadruples(U)
        assert (hole is None) == (find_corner(U) is None)
        if q % 2:
            # 2q = 4p + 2 points cannot split into quadruples
            assert hole is not None
            w = witness_from_config(find_corner(U), U)
            assert validate_witness(w, U)
        else:
            assert hole is not None or U.size % 4 == 0
    # for even q, U1 splits entirely into closed quadruples
    assert _eliminate_quadruples(construct_u1(6)) is None
