import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fnmetric.holonomy import (
    HolonomyRep,
    ShearTriple,
    adjacent_twists_from_rep,
    build_rep,
    build_sphere_rep,
    build_torus_rep,
    measure_adjacent_twists,
    measure_dual,
    read_fn_point,
    shear_boundary_length,
    shear_path_gaps,
    shear_to_rep,
)
from fnmetric.errors import FiniteOnly
from fnmetric.hyperbolic import Mat2, trace_to_length
from fnmetric.pants import (
    LadderSpec,
    describe_move,
    five_holed_sphere,
    four_holed_sphere,
    ladder_surface,
    make_point,
    one_holed_torus,
    twist_flow,
)

ls = st.floats(0.1, 3.0)
taus = st.floats(-2.0, 2.0)
holes = st.floats(0.0, 2.0)


def random_point(P, seed):
    rng = random.Random(seed)
    lengths = {c: rng.uniform(0.1, 2.5) if P.is_interior(c) else rng.choice([0.0, rng.uniform(0.1, 2.0)])
               for c in P.curves}
    return make_point(P, lengths, {c: rng.uniform(-2, 2) for c in P.interior_curves()})


@pytest.mark.parametrize("P", [one_holed_torus(), four_holed_sphere(), five_holed_sphere()])
@pytest.mark.parametrize("seed", range(20))
def test_length_gauge(P, seed):
    X = random_point(P, seed)
    rep = build_rep(P, X)
    assert rep.check() == []
    for c in P.curves:
        assert rep.length(c) == pytest.approx(X.length(c, P), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
def test_read_back(seed):
    P = five_holed_sphere()
    X = random_point(P, seed)
    Y = read_fn_point(build_rep(P, X))
    for c in P.interior_curves():
        assert Y.length(c, P) == pytest.approx(X.length(c, P), rel=1e-12)
        assert Y.twist(c, P) == pytest.approx(X.twist(c, P), abs=1e-10)


def test_torus_construction_contract():
    l = 2 * math.asinh(1)
    rep = build_torus_rep(0.0, l, 0.0)
    assert rep.trace("delta") == pytest.approx(-2.0, abs=1e-12)
    assert abs(rep.trace("alpha")) == pytest.approx(2 * math.cosh(math.asinh(1)), rel=1e-14)


@given(holes, ls, taus, st.floats(-2, 2), st.floats(-2, 2))
def test_conjugation_invariance(l0, l, tau, u, v):
    rep = build_torus_rep(l0, l, tau)
    g = Mat2(1.0 + u * v, u, v, 1.0)
    other = rep.conjugated(g)
    for w in ("alpha", "alpha'", "third", "delta"):
        assert other.length(w) == pytest.approx(rep.length(w), rel=1e-10, abs=1e-10)


@given(holes, ls, taus)
def test_full_twist_is_dehn_twist(l0, l, tau):
    # twisting by l maps alpha' to alpha * alpha' at the trace level
    a = build_torus_rep(l0, l, tau + l)
    b = build_torus_rep(l0, l, tau)
    assert a.trace("alpha'") == pytest.approx(b.trace("p0.0 t.alpha"), rel=1e-9)
    assert a.trace("alpha") == b.trace("alpha")
    ma = measure_dual(a, describe_move(a.surface, "alpha"))
    mb = measure_dual(b, describe_move(b.surface, "alpha"))
    assert ma.l_prime == pytest.approx(trace_to_length(b.trace("p0.0 t.alpha")), rel=1e-9)
    assert mb.l_prime == pytest.approx(trace_to_length(b.trace("alpha'")), rel=1e-12)


def test_twist_locality():
    P = four_holed_sphere()
    X = make_point(P, {"alpha": 1.2, "C1": 1, "C2": 0.5, "C3": 0.7, "C4": 0.0}, {"alpha": 0.3})
    a = build_rep(P, X, prefer=("alpha",))
    b = build_rep(P, twist_flow(X, "alpha", 0.9, P), prefer=("alpha",))
    # words on the root pants do not see the twist at all
    for w in ("alpha", "C1", "C4"):
        assert a.trace(w) == b.trace(w)
    for w in ("C2", "C3"):
        assert a.trace(w) == pytest.approx(b.trace(w), rel=1e-12)
    assert a.trace("p0.1 p1.1") != pytest.approx(b.trace("p0.1 p1.1"), rel=1e-3)


def test_zero_twist_dual():
    for rep in (build_torus_rep(1.0, 1.0, 0.0), build_sphere_rep(1, 0.5, 0.2, 0, 0.8, 0.0)):
        m = measure_dual(rep, describe_move(rep.surface, "alpha"))
        assert abs(m.tau_prime) < 1e-9


def test_twist_residual():
    rep = build_torus_rep(1.0, 1.0, 0.7)
    m = measure_dual(rep, describe_move(rep.surface, "alpha"))
    assert abs(m.residual) < 1e-10


@given(holes, ls, taus)
def test_root_finder_deterministic(l0, l, tau):
    a = measure_dual(build_torus_rep(l0, l, tau))
    b = measure_dual(build_torus_rep(l0, l, tau))
    assert a == b


def test_json_hex_roundtrip():
    rep = build_sphere_rep(1, 0.5, 0.2, 0, 0.8, 0.4)
    back = HolonomyRep.from_json(rep.to_json())
    assert back.generators == rep.generators
    assert back.words == rep.words
    for w in rep.words:
        assert back.trace(w) == rep.trace(w)


def test_build_rep_needs_finite():
    with pytest.raises(FiniteOnly):
        build_rep(ladder_surface(LadderSpec()), None)


@pytest.mark.parametrize("seed", range(5))
def test_adjacent_twist_independent_of_center(seed):
    P = five_holed_sphere()
    X = random_point(P, seed + 100)
    M = describe_move(P, "alpha")
    ref = measure_adjacent_twists(P, X, "alpha")["C1"]
    used = 0
    for cen in P.curves:
        rep = build_rep(P, X, prefer=("alpha",), center=cen)
        # far centers blow up entries (rep.check reports it); only
        # well-conditioned reps are expected to agree
        if rep.check():
            continue
        used += 1
        assert adjacent_twists_from_rep(rep, M)["C1"] == pytest.approx(ref, abs=1e-9)
    assert used >= 3


def test_adjacent_twist_unchanged_without_twist():
    P = five_holed_sphere()
    X = random_point(P, 7)
    a = measure_adjacent_twists(P, X, "alpha")
    b = measure_adjacent_twists(P, twist_flow(X, "alpha", 0.0, P), "alpha")
    assert a == b


# ---------------------------------------------------------------- shears

def test_shear_examples():
    assert shear_boundary_length(ShearTriple(1, 1, -2)) == 0
    assert shear_boundary_length(ShearTriple(1, 0.5, 0.5)) == 2
    assert shear_boundary_length(ShearTriple(0.4, 0.4, 0.4)) == pytest.approx(1.2, rel=1e-15)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_shear_boundary_trace(a, b, c):
    s = ShearTriple(a, b, c)
    rep = shear_to_rep(s)
    assert abs(rep.trace("boundary")) == pytest.approx(2 * math.cosh(shear_boundary_length(s) / 2), rel=1e-9)
    assert rep.check() == []


def test_shear_cusp_locus_parabolic():
    rep = shear_to_rep(ShearTriple(1, 1, -2))
    assert rep.trace("boundary") == pytest.approx(-2.0, abs=1e-12)
    assert rep.length("boundary") == 0.0


def test_shear_scan_gap_shrinks():
    a, b = ShearTriple(1, 0.5, -2.5), ShearTriple(1.2, 0.8, -1.0)
    gaps = [shear_path_gaps(a, b, n) for n in (10, 100, 1000)]
    for w in gaps[0]:
        assert gaps[1][w] < 0.2 * gaps[0][w]
        assert gaps[2][w] < 0.2 * gaps[1][w]
