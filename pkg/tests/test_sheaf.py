"""Sheaf construction, coboundaries, link restriction and reorientation."""

import random
from fractions import Fraction

import pytest

from sheafcodes.algebra import GF, Matrix
from sheafcodes.poset import natural_weight, orient_cell_complex
from sheafcodes.shapes import cycle_graph, polygon_complex, simplex, simplex_boundary
from sheafcodes.sheaf import (
    Cochain, Sheaf, SheafError, apply_d, apply_reorient, constant_sheaf,
    d_matrix, extend_cochain, link_signs, reorient_isomorphism,
    restrict_cochain, sheaf_from_json, sheaf_to_json,
)


def oriented_constant(X, field, n=1):
    return constant_sheaf(X, field, n), orient_cell_complex(X)


def test_indicator_coboundary_on_triangle():
    X = simplex(2)
    S, signs = oriented_constant(X, GF(2))
    f = Cochain(S, 0, {(0,): (1,)})
    df = apply_d(S, signs, f)
    assert df.support() == {(0, 1), (0, 2)}


def test_dd_zero_constant_sheaves():
    rng = random.Random(3)
    for X in [simplex(2), polygon_complex(4), simplex_boundary(2)]:
        for field in [GF(2), GF(3), GF(2, 2)]:
            S, signs = oriented_constant(X, field, 2)
            for i in range(-1, X.d):
                D1 = d_matrix(S, signs, i)
                D2 = d_matrix(S, signs, i + 1)
                assert (D2 * D1).is_zero()
            # random cochain double-coboundary
            f = Cochain(S, 0, {x: (rng.randrange(field.q), rng.randrange(field.q))
                               for x in X.faces(0)})
            assert apply_d(S, signs, apply_d(S, signs, f)).is_zero()


def test_apply_d_matches_matrix_form():
    X = polygon_complex(5)
    F = GF(3)
    S, signs = oriented_constant(X, F)
    rng = random.Random(9)
    for _ in range(5):
        f = Cochain(S, 0, {x: (rng.randrange(3),) for x in X.faces(0)})
        df = apply_d(S, signs, f)
        D = d_matrix(S, signs, 0)
        assert D.apply(f.to_flat()) == df.to_flat()


def test_level_mismatch_rejected():
    X = simplex(2)
    S, _ = oriented_constant(X, GF(2))
    f = Cochain(S, 0, {(0,): (1,)})
    g = Cochain(S, 1, {(0, 1): (1,)})
    with pytest.raises(SheafError):
        _ = f + g


def test_norm_and_distance():
    X = cycle_graph(4)
    S, _ = oriented_constant(X, GF(2))
    w = natural_weight(X)
    f = Cochain(S, 0, {(0,): (1,), (1,): (1,)})
    g = Cochain(S, 0, {(1,): (1,)})
    h = Cochain(S, 0, {(2,): (1,)})
    assert f.norm(w) == Fraction(1, 2)
    assert (f - g).norm(w) == Fraction(1, 4)
    # triangle inequality
    assert (f - h).norm(w) <= (f - g).norm(w) + (g - h).norm(w)
    assert f.norm_uniform() == Fraction(1, 2)


def test_restrict_extend_round_trip():
    X = simplex(2)
    S, signs = oriented_constant(X, GF(2))
    z = (0,)
    Sz = S.link(z)
    f = Cochain(S, 1, {(0, 1): (1,), (1, 2): (1,)})
    fz = restrict_cochain(f, z, Sz)
    assert fz.level == 0
    assert fz.support() == {(0, 1)}
    back = extend_cochain(fz, S, z)
    assert back.level == 1 and back.support() == {(0, 1)}


def test_restrict_at_empty_is_identity():
    X = simplex(2)
    S, _ = oriented_constant(X, GF(2))
    f = Cochain(S, 1, {(0, 1): (1,)})
    fz = restrict_cochain(f, X.empty)
    assert fz.data == f.data and fz.level == 1


def test_link_commutation_identity():
    # (d_z g)^z = d(g^z) for cochains g on a link
    X = simplex_boundary(2)
    F = GF(3)
    S, signs = oriented_constant(X, F)
    rng = random.Random(17)
    for z in X.faces(0) + X.faces(1):
        Sz = S.link(z)
        lsigns = link_signs(signs, Sz.X)
        for lvl in range(0, Sz.X.d):
            for _ in range(3):
                g = Cochain(Sz, lvl, {x: (rng.randrange(3),)
                                      for x in Sz.X.faces(lvl)})
                lhs = extend_cochain(apply_d(Sz, lsigns, g), S, z)
                rhs = apply_d(S, signs, extend_cochain(g, S, z))
                assert lhs == rhs


def test_functoriality_violation_detected():
    X = simplex(2)
    F = GF(2)
    dims = {x: 1 for x in X.all_faces()}
    dims[X.empty] = 0
    res = {}
    I = Matrix.identity(F, 1)
    Z = Matrix.zero(F, 1, 1)
    for x in X.all_faces():
        for y in X.covers_up(x):
            res[x, y] = Matrix(F, 1, 0, []) if x == X.empty else I
    # break one path from a vertex to the triangle
    res[(0, 1), (0, 1, 2)] = Z
    with pytest.raises(SheafError, match="functoriality"):
        Sheaf(X, F, dims, res)


def test_reorient_identity_when_same():
    X = polygon_complex(4)
    S, signs = oriented_constant(X, GF(5))
    units = reorient_isomorphism(S, signs, signs)
    assert all(u == 1 for u in units.values())


def flipped_orientation(X, signs):
    "Second valid orientation: negate both endpoint signs of one edge and its cells."
    e = X.faces(1)[0]
    s2 = dict(signs)
    for v in X.covers_down(e):
        s2[v, e] = -s2[v, e]
    for c in X.covers_up(e):
        s2[e, c] = -s2[e, c]
    return s2


def test_reorient_intertwines():
    X = polygon_complex(4)
    F = GF(5)
    S, signs = oriented_constant(X, F)
    signs2 = flipped_orientation(X, signs)
    from sheafcodes.poset import validate_orientation
    ok, msg = validate_orientation(X, signs2)
    assert ok, msg
    units = reorient_isomorphism(S, signs, signs2)
    assert set(units.values()) <= {1, 4}  # +-1 in GF(5)
    assert any(u == 4 for u in units.values())
    rng = random.Random(23)
    for lvl in (0, 1):
        for _ in range(5):
            f = Cochain(S, lvl, {x: (rng.randrange(5),) for x in X.faces(lvl)})
            lhs = apply_reorient(apply_d(S, signs, f), units)
            rhs = apply_d(S, signs2, apply_reorient(f, units))
            assert lhs == rhs
            assert apply_reorient(f, units).norm(natural_weight(X)) == \
                f.norm(natural_weight(X))


def test_reorient_trivial_over_gf2():
    X = polygon_complex(4)
    S, signs = oriented_constant(X, GF(2))
    signs2 = flipped_orientation(X, signs)
    units = reorient_isomorphism(S, signs, signs2)
    assert all(u == 1 for u in units.values())


def test_sheaf_json_round_trip():
    X = simplex(2)
    F = GF(2)
    S, _ = oriented_constant(X, F)
    doc = sheaf_to_json(S)
    from sheafcodes.poset import poset_from_json, poset_to_json
    X2, _, _ = poset_from_json(poset_to_json(X))
    S2 = sheaf_from_json(X2, F, doc)
    assert sheaf_to_json(S2) == doc
