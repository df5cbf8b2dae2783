"""Local minimality certificates and the iterative correction decoder,
checked on cycles, polygons and the tetrahedron boundary: hand-built
violations, round-trip decoding, trace monotonicity, the queue variant's
equivalence with the full-scan variant, and the masking property."""

import csv
import io
import random
from fractions import Fraction

import pytest

from sheafcodes.algebra import GF
from sheafcodes.decoder import (
    CorrectionTrace, candidate_faces, correct_efficient, correct_simple,
    correction_norm_constant, decode_cocycle, decoding_radius,
    is_mock_minimal, mock_coefficient,
)
from sheafcodes.poset import counting_constants, natural_weight, \
    orient_cell_complex
from sheafcodes.shapes import cycle_graph, polygon_complex, simplex_boundary
from sheafcodes.sheaf import Cochain, apply_d, constant_sheaf


def setup(X, field, n=1, augmented=False):
    return constant_sheaf(X, field, n, augmented=augmented), \
        orient_cell_complex(X)


def indicator(sheaf, level, faces_on):
    return Cochain(sheaf, level,
                   {x: (1,) * sheaf.dims[x] for x in faces_on})


def random_cochain(sheaf, level, rng):
    q = sheaf.field.q
    data = {x: tuple(rng.randrange(q) for _ in range(sheaf.dims[x]))
            for x in sheaf.X.faces(level)}
    return Cochain(sheaf, level, data)


def test_zero_input_is_fixed_point():
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    h = Cochain(S, 1, {})
    for run in (correct_simple, correct_efficient):
        g, trace = run(S, signs, h, Fraction(0), w)
        assert g.is_zero() and len(trace) == 0


def test_zero_and_top_level_cochains_minimal():
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    ok, wit = is_mock_minimal(S, signs, Cochain(S, 1, {}), Fraction(0), w)
    assert ok and wit is None
    # minimality at a face of the cochain's own level is vacuous
    f = indicator(S, 1, [X.faces(1)[0]])
    ok, _ = is_mock_minimal(S, signs, f, Fraction(0), w,
                            faces=X.faces(1))
    assert ok


def test_single_vertex_violation_and_correction():
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    v = X.faces(0)[2]
    f = indicator(S, 0, [v])
    h = apply_d(S, signs, f)  # the two edges at v
    ok, wit = is_mock_minimal(S, signs, h, Fraction(0), w)
    assert not ok and wit[0] == v
    g, trace = correct_simple(S, signs, h, Fraction(0), w)
    assert (h + apply_d(S, signs, g)).is_zero()
    assert g == f  # the local solve recovers the flipped vertex exactly
    assert len(trace) == 1 and trace.steps[0][1] == v


def test_decode_roundtrip_single_error():
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    codeword = indicator(S, 0, X.faces(0))
    assert apply_d(S, signs, codeword).is_zero()
    for v in X.faces(0):
        corrupted = codeword + indicator(S, 0, [v])
        for eff in (False, True):
            out, in_Z, trace = decode_cocycle(S, signs, corrupted,
                                              Fraction(0), w, efficient=eff)
            assert in_Z and out == codeword
    # a clean cocycle passes through unchanged
    out, in_Z, trace = decode_cocycle(S, signs, codeword, Fraction(0), w)
    assert in_Z and out == codeword and len(trace) == 0


def test_decode_out_of_radius_is_flagged():
    # three consecutive flips put the coboundary on two far-apart edges,
    # which is already locally minimal but nonzero: the failure is reported
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    vs = X.faces(0)
    f = indicator(S, 0, vs[1:4])
    out, in_Z, trace = decode_cocycle(S, signs, f, Fraction(0), w)
    assert not in_Z and len(trace) == 0 and out == f


CASES = [
    (cycle_graph(6), GF(2), 1),
    (cycle_graph(5), GF(3), 1),
    (polygon_complex(4), GF(2), 1),
    (simplex_boundary(2), GF(2), 2),
    (simplex_boundary(2), GF(3), 2),
]


@pytest.mark.parametrize("X,F,level", CASES)
@pytest.mark.parametrize("q", [Fraction(0), Fraction(1, 2)])
def test_post_run_certificate_and_norm_drop(X, F, level, q):
    S, signs = setup(X, F)
    w = natural_weight(X)
    rng = random.Random(11)
    for _ in range(4):
        h = random_cochain(S, level, rng)
        g, trace = correct_simple(S, signs, h, q, w)
        final = h + apply_d(S, signs, g)
        ok, wit = is_mock_minimal(S, signs, final, q, w)
        assert ok, wit
        assert final.norm(w) <= h.norm(w)


@pytest.mark.parametrize("X,F,level", CASES)
def test_trace_is_monotone_with_slack(X, F, level):
    S, signs = setup(X, F)
    w = natural_weight(X)
    cc = counting_constants(X)
    q = Fraction(1, 3)
    rng = random.Random(5)
    h = random_cochain(S, level, rng)
    _, trace = correct_simple(S, signs, h, q, w)
    for _, u, dim_u, before, after in trace.steps:
        slack = mock_coefficient(cc, dim_u, level, X.d) * q * w[u]
        assert after + slack < before


@pytest.mark.parametrize("X,F,level", CASES)
def test_positive_q_iteration_and_output_bounds(X, F, level):
    S, signs = setup(X, F)
    w = natural_weight(X)
    cc = counting_constants(X)
    q = Fraction(1, 4)
    rng = random.Random(9)
    min_slack = min(mock_coefficient(cc, X.dim(u), level, X.d) * q * w[u]
                    for u in candidate_faces(X, level))
    C = correction_norm_constant(X, level - 1)
    for _ in range(3):
        h = random_cochain(S, level, rng)
        g, trace = correct_simple(S, signs, h, q, w)
        if h.norm(w) > 0:
            assert len(trace) < h.norm(w) / min_slack
        assert g.norm(w) <= C / q * h.norm(w)


@pytest.mark.parametrize("X,F,level", CASES)
@pytest.mark.parametrize("q", [Fraction(0), Fraction(1, 2)])
def test_efficient_equals_simple(X, F, level, q):
    S, signs = setup(X, F)
    w = natural_weight(X)
    rng = random.Random(3)
    for _ in range(4):
        h = random_cochain(S, level, rng)
        g1, t1 = correct_simple(S, signs, h, q, w)
        g2, t2 = correct_efficient(S, signs, h, q, w)
        assert g1 == g2
        assert t1.steps == t2.steps
        assert t2.pops >= len(t2.steps)


def test_masking_preserves_minimality():
    # zeroing out any subset of a cochain's values keeps it locally minimal
    # wherever the original was
    X = simplex_boundary(2)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    rng = random.Random(17)
    q = Fraction(1, 2)
    for _ in range(4):
        f = random_cochain(S, 2, rng)
        minimal_at = [u for u in candidate_faces(X, 2)
                      if is_mock_minimal(S, signs, f, q, w, faces=[u])[0]]
        for _ in range(3):
            kept = {x: v for x, v in f.data.items() if rng.random() < 0.5}
            g = Cochain(S, 2, kept)
            for u in minimal_at:
                ok, wit = is_mock_minimal(S, signs, g, q, w, faces=[u])
                assert ok, (u, wit)


def test_trace_csv_format():
    X = cycle_graph(6)
    S, signs = setup(X, GF(2))
    w = natural_weight(X)
    v = X.faces(0)[0]
    h = apply_d(S, signs, indicator(S, 0, [v]))
    _, trace = correct_simple(S, signs, h, Fraction(0), w)
    rows = list(csv.reader(io.StringIO(trace.to_csv())))
    assert rows[0] == ["step", "face", "dim", "norm-before", "norm-after"]
    assert len(rows) == 2
    step, face, dim, before, after = rows[1]
    assert step == "0" and dim == "0"
    assert Fraction(before) > Fraction(after)


def test_empty_trace_csv():
    t = CorrectionTrace()
    assert t.to_csv().strip() == "step,face,dim,norm-before,norm-after"


def test_decoding_radius_formula():
    r = decoding_radius(M=4, ccd=Fraction(1, 2), A=Fraction(1, 3),
                        B=Fraction(1, 2))
    assert r == Fraction(1, 4) * min(Fraction(1, 3), Fraction(1, 3))
    assert decoding_radius(2, Fraction(1), Fraction(10), Fraction(0)) == \
        Fraction(1, 2)
