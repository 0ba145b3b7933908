"""Closed-form coordinate changes under an elementary move.

Both moves return the length l' of the dual curve and its twist t'.  The
cosh-type formulas only fix |t'|; the sign follows the convention
sign(t') = -sign(t), which the holonomy oracle certifies for our gluing.
Twists near zero are evaluated through sinh^2(t'/2) written as a product,
so small twists keep full relative precision.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import InvalidLength
from .pants import (
    SPHERE,
    TORUS,
    FNPoint,
    PantsDecomposition,
    describe_move,
    elementary_move,
)

MIN_LENGTH = 1e-12


class DomainNarrowed(UserWarning):
    """An input length was clamped to MIN_LENGTH."""


@dataclass(frozen=True)
class MoveResult:
    l_prime: float
    tau_prime: float
    abs_only: bool = False


def _check(l, holes):
    if not l > 0:
        raise InvalidLength(f"core length must be positive, got {l!r}", l=l)
    for h in holes:
        if not h >= 0:
            raise InvalidLength(f"hole length must be nonnegative, got {h!r}", hole=h)
    if l < MIN_LENGTH:
        warnings.warn(f"length {l!r} clamped to {MIN_LENGTH}", DomainNarrowed, stacklevel=3)
        l = MIN_LENGTH
    return l


def torus_terms(l0: float, l: float, tau: float):
    """(sinh^2(l'/2), sinh^2(t'/2)) for the one-holed torus."""
    c0 = math.cosh(l0 / 2)
    sl2 = math.sinh(l / 2) ** 2
    k = math.cosh(l) + c0
    st2 = math.sinh(tau / 2) ** 2
    ch2 = 1.0 + st2
    s_lp = (k * st2 + c0 + 1.0) / (2.0 * sl2)
    den = ch2 * k + (c0 - 1.0) * sl2
    s_tp = sl2 * st2 * k / den
    return s_lp, s_tp


def torus_move(l0: float, l: float, tau: float, signed: bool = True) -> MoveResult:
    l = _check(l, (l0,))
    s_lp, s_tp = torus_terms(l0, l, tau)
    lp = 2.0 * math.asinh(math.sqrt(s_lp))
    mag = 2.0 * math.asinh(math.sqrt(s_tp))
    if not signed:
        return MoveResult(lp, mag, True)
    return MoveResult(lp, -math.copysign(mag, tau) if tau != 0 else 0.0)


def torus_twist_typeset(l0: float, l: float, tau: float) -> float:
    """A wrong |t'|: the ratio form with an altered denominator.

    Kept as a known-bad variant that the command-line self test must reject.
    """
    c0 = math.cosh(l0 / 2)
    ch2 = math.cosh(tau / 2) ** 2
    num = math.cosh(l / 2) ** 2 * (ch2 * (math.cosh(l) + c0) - 2 * math.sinh(l / 2) ** 2)
    den = ch2 * (math.cosh(l / 2) ** 2 + c0 ** 2) + math.sinh(l / 2) ** 2 * c0
    r = num / den
    return 2.0 * math.acosh(math.sqrt(r)) if r > 1 else 0.0


def sphere_ab(l1, l2, l3, l4, l):
    c1, c2, c3, c4 = (math.cosh(x / 2) for x in (l1, l2, l3, l4))
    cl = math.cosh(l / 2)
    a = c1 * c2 + c3 * c4 + cl * (c1 * c3 + c2 * c4)
    b = math.sqrt((cl * cl + 2 * c1 * c4 * cl + c1 * c1 + c4 * c4 - 1)
                  * (cl * cl + 2 * c2 * c3 * cl + c2 * c2 + c3 * c3 - 1))
    return a, b


def sphere_move(l1: float, l2: float, l3: float, l4: float, l: float, tau: float,
                signed: bool = True) -> MoveResult:
    """Holes follow the labeling where l1 pairs with l4 and l2 with l3 around
    the core, and the dual separates {1, 2} from {3, 4}."""
    l = _check(l, (l1, l2, l3, l4))
    c1, c2, c3, c4 = (math.cosh(x / 2) for x in (l1, l2, l3, l4))
    cl = math.cosh(l / 2)
    s2 = math.sinh(l / 2) ** 2
    a, b = sphere_ab(l1, l2, l3, l4, l)
    x = (a + math.cosh(tau) * b) / s2
    lp = 2.0 * math.acosh(x)
    s = x * x - 1.0
    e = s * cl - c1 * c4 - c2 * c3 - x * (c1 * c3 + c2 * c4)
    f = math.sqrt((c1 * c1 + c2 * c2 + 2 * c1 * c2 * x + s) * (c3 * c3 + c4 * c4 + 2 * c3 * c4 * x + s))
    # E^2 - F^2 = sinh^2(l'/2) sinh^2(tau) B^2 / sinh^2(l/2)
    s_tp = s * math.sinh(tau) ** 2 * b * b / (s2 * 2.0 * f * (e + f))
    mag = 2.0 * math.asinh(math.sqrt(s_tp))
    if not signed:
        return MoveResult(lp, mag, True)
    return MoveResult(lp, -math.copysign(mag, tau) if tau != 0 else 0.0)


def sphere_k(l1, l2, l3, l4, l, t):
    """(A + cosh(t) B) / (A + B): the growth factor of cosh(l'/2) under a twist t."""
    a, b = sphere_ab(l1, l2, l3, l4, l)
    return (a + math.cosh(t) * b) / (a + b)


def reverse_holes(holes):
    """Hole order for moving back from the dual curve."""
    l1, l2, l3, l4 = holes
    return l1, l4, l3, l2


def apply_move(P: PantsDecomposition, X: FNPoint, c: str) -> MoveResult:
    M = describe_move(P, c)
    l, tau = X.params(c, P)
    hl = [X.length(h, P) for h in M.neighborhood]
    if M.kind == TORUS:
        return torus_move(hl[0], l, tau)
    return sphere_move(*hl, l, tau)


def move_fn_point(X: FNPoint, P: PantsDecomposition, c: str, oracle: bool = True) -> FNPoint:
    """The point X in the coordinates of the moved decomposition.

    The new curve gets the closed-form (l', t').  Twists of interior
    curves bounding the moved subsurface have no closed form; they are
    measured on the holonomy model when ``oracle`` is set and otherwise
    reported in ``pending``.
    """
    P2, M = elementary_move(P, c)
    res = apply_move(P, X, c)
    base = {}
    for k in P2.curves:
        if k == M.new_curve:
            base[k] = (res.l_prime, res.tau_prime)
        else:
            base[k] = X.params(k, P)
    pending = {h for h in M.neighborhood if P.is_interior(h)}
    if oracle and pending and M.kind == SPHERE:
        from .holonomy import measure_adjacent_twists

        for h, tw in measure_adjacent_twists(P, X, c).items():
            base[h] = (base[h][0], tw)
            pending.discard(h)
    return FNPoint(base, {}, frozenset(pending))
