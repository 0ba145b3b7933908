import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fnmetric.errors import EllipticElement, InvalidLength
from fnmetric.hyperbolic import (
    Mat2,
    acosh1p,
    collar_lower_bound,
    crossing_cosine,
    fixed_points,
    length_to_trace,
    pants_group,
    pants_half_lengths,
    pants_is_geometric,
    seam_distance,
    trace_to_length,
    axis_frame,
)

lengths = st.floats(0.05, 4.0)
cuffs = st.one_of(st.just(0.0), st.floats(1e-6, 3.0))


def hyperbolic(l, x, y):
    # a conjugate of diag(e^{l/2}, e^{-l/2}) by a unipotent-ish matrix
    g = Mat2(1.0, x, y, 1.0 + x * y)
    h = math.exp(l / 2)
    return g @ Mat2(h, 0.0, 0.0, 1 / h) @ g.inv()


def test_trace_examples():
    assert trace_to_length(2.0) == 0.0
    assert trace_to_length(2 * math.cosh(0.5)) == pytest.approx(1.0, rel=1e-14)
    assert trace_to_length(-3.0) == pytest.approx(2 * math.log(1.5 + math.sqrt(1.25)), rel=1e-14)
    assert trace_to_length(-3.0) == pytest.approx(1.924847, abs=1e-6)


def test_elliptic_rejected():
    with pytest.raises(EllipticElement):
        trace_to_length(1.5)


def test_parabolic_threshold():
    assert trace_to_length(2.0 + 5e-10) == 0.0
    assert trace_to_length(-2.0 - 5e-10) == 0.0
    assert trace_to_length(2.0 + 1e-6) > 0


def test_acosh1p_small():
    for e in (1e-4, 0.3, 5.0):
        assert acosh1p(e) == pytest.approx(math.acosh(1 + e), rel=1e-11)
    # where 1 + e rounds, the stable form keeps its digits: acosh(1+e) ~ sqrt(2e)
    for e in (1e-20, 1e-14):
        assert acosh1p(e) == pytest.approx(math.sqrt(2 * e), rel=1e-6)


@given(st.floats(1e-2, 30.0))
def test_length_trace_roundtrip(l):
    assert trace_to_length(length_to_trace(l)) == pytest.approx(l, rel=1e-9)


@given(lengths, st.floats(-2, 2), st.floats(-2, 2), st.sampled_from([1, 2, 3]))
def test_power_scales_length(l, x, y, k):
    m = hyperbolic(l, x, y)
    p = m
    for _ in range(k - 1):
        p = p @ m
    assert trace_to_length(p.trace()) == pytest.approx(k * trace_to_length(m.trace()), rel=1e-9)


@given(lengths, st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
def test_conjugation_invariance(l, x, y, u, v):
    m = hyperbolic(l, x, y)
    g = Mat2(1.0 + u * v, u, v, 1.0)
    assert trace_to_length(g.conj(m).trace()) == pytest.approx(trace_to_length(m.trace()), rel=1e-12, abs=1e-12)


def test_inverse_is_adjugate():
    m = Mat2(2.0, 3.0, 1.0, 2.0)
    assert m @ m.inv() == Mat2.identity()


def test_normalized_det():
    m = Mat2(2.0, 1.0, 1.0, 3.0).normalized()
    assert m.det() == pytest.approx(1.0, abs=1e-9)


def test_collar_examples():
    assert collar_lower_bound(1e-3) == pytest.approx(6.907755, abs=1e-6)
    assert collar_lower_bound(1.0) == 0.0
    with pytest.raises(InvalidLength):
        collar_lower_bound(0.0)
    with pytest.raises(InvalidLength):
        collar_lower_bound(-1.0)


@given(st.floats(1e-9, 0.999), st.floats(1e-9, 0.999))
def test_collar_decreasing(a, b):
    if a < b:
        assert collar_lower_bound(a) > collar_lower_bound(b)


def test_half_lengths_symmetric():
    a, b, c = pants_half_lengths(1.0, 1.0, 1.0)
    assert a == b == c


@given(st.floats(0.01, 3), st.floats(0.01, 3), st.floats(0.01, 3))
def test_half_lengths_relabeling(l1, l2, l3):
    import itertools

    base = pants_half_lengths(l1, l2, l3)
    ls = (l1, l2, l3)
    for perm in itertools.permutations(range(3)):
        out = pants_half_lengths(*(ls[i] for i in perm))
        for k, i in enumerate(perm):
            assert out[k] == pytest.approx(base[i], rel=1e-12)


def test_half_lengths_cusp_infinite():
    out = pants_half_lengths(0.0, 1.0, 1.0)
    assert math.isinf(out[1]) and math.isinf(out[2]) and math.isfinite(out[0])


@given(st.floats(0.05, 3), st.floats(0.05, 3), st.floats(0.05, 3))
def test_half_lengths_match_holonomy(l1, l2, l3):
    A, B, C = pants_group(l1, l2, l3)
    d = pants_half_lengths(l1, l2, l3)
    assert seam_distance(B, C) == pytest.approx(d[0], rel=1e-8)
    assert seam_distance(C, A) == pytest.approx(d[1], rel=1e-8)
    assert seam_distance(A, B) == pytest.approx(d[2], rel=1e-8)


@given(cuffs, cuffs, cuffs, st.sampled_from([0, 1, 2]))
def test_pants_group_contract(l1, l2, l3, k):
    A, B, C = pants_group(l1, l2, l3, diagonal=k)
    P = A @ B @ C
    # entries grow like 1/l next to a short diagonal cuff; rounding in the
    # product scales with the entry norms
    scale = 1.0
    for m in (A, B, C):
        scale *= max(map(abs, m))
    assert max(abs(P.a - 1), abs(P.b), abs(P.c), abs(P.d - 1)) < 1e-12 * scale
    for m, l in ((A, l1), (B, l2), (C, l3)):
        big = max(map(abs, m))
        assert abs(m.det() - 1) < 1e-12 * max(1.0, big * big)
        assert abs(abs(m.trace()) - length_to_trace(l)) < 1e-9 * max(length_to_trace(l), big)
    assert A.trace() > 0 and B.trace() > 0
    assert pants_is_geometric((A, B, C))


def test_single_pants_traces():
    A, B, C = pants_group(1.0, 1.0, 1.0)
    for m in (A, B, C):
        assert abs(m.trace()) == pytest.approx(2 * math.cosh(0.5), rel=1e-14)


def test_subnormal_cuff_rejected():
    with pytest.raises(InvalidLength):
        pants_group(0.0, 0.0, 1e-308)
    with pytest.raises(InvalidLength):
        pants_group(-1.0, 1.0, 1.0)


def test_fixed_points_diagonal():
    h = math.exp(0.5)
    rep, att = fixed_points(Mat2(h, 0.0, 0.0, 1 / h))
    assert rep == 0.0 and math.isinf(att)


def test_crossing_cosine_perpendicular():
    # the unit circle axis (-1 -> 1) crosses the imaginary axis at a right angle
    frame = axis_frame(Mat2(math.cosh(1), math.sinh(1), math.sinh(1), math.cosh(1)))
    m = Mat2(math.exp(0.5), 0.0, 0.0, math.exp(-0.5))
    assert crossing_cosine(frame, m) == pytest.approx(0.0, abs=1e-12)
