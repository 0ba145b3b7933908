"""Scalar hyperbolic geometry: traces, lengths, collars, pants trigonometry,
and the 2x2 matrix algebra used by the holonomy oracle."""
from __future__ import annotations

import math
from typing import NamedTuple

from . import kernels
from .errors import EllipticElement, InvalidLength

PARABOLIC_TOL = 1e-9


class Mat2(NamedTuple):
    a: float
    b: float
    c: float
    d: float

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(*kernels.mul(self, other))

    def inv(self) -> "Mat2":
        # adjugate: exact for unit determinant, and recomputing det from
        # the entries would reintroduce its cancellation error
        return Mat2(self.d, -self.b, -self.c, self.a)

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def trace(self) -> float:
        return self.a + self.d

    def normalized(self) -> "Mat2":
        det = self.det()
        if det <= 0:
            raise ValueError("determinant must be positive")
        k = 1.0 / math.sqrt(det)
        return Mat2(self.a * k, self.b * k, self.c * k, self.d * k)

    def conj(self, m: "Mat2") -> "Mat2":
        """self * m * self^-1"""
        return self @ m @ self.inv()

    @staticmethod
    def identity() -> "Mat2":
        return Mat2(1.0, 0.0, 0.0, 1.0)


def acosh1p(e: float) -> float:
    """acosh(1 + e) without cancellation for small e >= 0."""
    return math.log1p(e + math.sqrt(e * (2.0 + e)))


def trace_to_length(trace: float) -> float:
    t = abs(trace)
    if t < 2.0 - PARABOLIC_TOL:
        raise EllipticElement(f"|trace| = {t!r} < 2", trace=trace)
    if t - 2.0 <= PARABOLIC_TOL:
        return 0.0
    return 2.0 * acosh1p(0.5 * t - 1.0)


def length_to_trace(length: float) -> float:
    return 2.0 * math.cosh(0.5 * length)


def length_of(m: Mat2) -> float:
    return trace_to_length(m.trace())


def collar_lower_bound(l: float) -> float:
    if not l > 0:
        raise InvalidLength(f"length must be positive, got {l!r}", l=l)
    return abs(math.log(l))


def pants_half_lengths(l1: float, l2: float, l3: float) -> tuple[float, float, float]:
    """Distances between cuff pairs; entry i is the seam opposite cuff i.

    Uses the right-angled hexagon law of cosines with alternate sides
    l_i/2.  A seam ending in a cusp is infinite.
    """
    ls = (l1, l2, l3)
    for x in ls:
        if x < 0:
            raise InvalidLength(f"negative cuff length {x!r}")
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if ls[j] == 0 or ls[k] == 0:
            out.append(math.inf)
            continue
        num = math.cosh(ls[i] / 2) + math.cosh(ls[j] / 2) * math.cosh(ls[k] / 2)
        den = math.sinh(ls[j] / 2) * math.sinh(ls[k] / 2)
        out.append(math.acosh(num / den))
    return out[0], out[1], out[2]


def fixed_points(m: Mat2) -> tuple[float, float]:
    """(repelling, attracting) fixed points; a parabolic gives (p, p)."""
    a, b, c, d = m
    t = a + d
    if t < 0:
        a, b, c, d, t = -a, -b, -c, -d, -t
    disc = max((t - 2.0) * (t + 2.0), 0.0)
    if disc == 0.0:
        if c != 0:
            p = (a - d) / (2 * c)
        elif b != 0:
            p = math.inf
        else:
            raise ValueError("identity has no fixed point")
        return p, p
    q = kernels.axis_frame((a, b, c, d))
    att = q[0] / q[2] if q[2] != 0 else math.inf
    rep = q[1] / q[3] if q[3] != 0 else math.inf
    return rep, att


def mobius(m: Mat2, z: float) -> float:
    a, b, c, d = m
    if math.isinf(z):
        return a / c if c != 0 else math.inf
    den = c * z + d
    if den == 0:
        return math.inf
    return (a * z + b) / den


def axis_frame(m: Mat2) -> Mat2:
    return Mat2(*kernels.axis_frame(m))


def translation(dist: float) -> Mat2:
    return Mat2(*kernels.translate(dist))


ROTATION = Mat2(*kernels.ROT)


def foot_position(frame: Mat2, m: Mat2) -> float:
    """Signed position, along the axis of ``frame``, of the foot of the
    common perpendicular to the axis (or cusp) of ``m``."""
    return kernels.foot(frame, m)


def relative_endpoints(frame: Mat2, m: Mat2) -> tuple[float, float]:
    """Fixed points of m (repelling, attracting) seen in ``frame``."""
    n = frame.inv() @ m @ frame
    return fixed_points(n)


def crossing_cosine(frame: Mat2, m: Mat2) -> float:
    """cos of the angle from the oriented frame axis to the oriented axis of m.

    For disjoint axes the same cross-ratio returns +-cosh of the distance.
    """
    b1, b2 = relative_endpoints(frame, m)
    return (b1 + b2) / (b2 - b1)


def on_right(frame: Mat2, m: Mat2, tol: float = 0.0) -> bool:
    b1, b2 = relative_endpoints(frame, m)
    return b1 > -tol and b2 > -tol


def pants_is_geometric(triple) -> bool:
    """Every cuff sees the other two strictly on its right."""
    for k in range(3):
        if abs(triple[k].trace()) - 2.0 <= PARABOLIC_TOL:
            continue
        f = axis_frame(triple[k])
        for j in range(3):
            if j != k and not on_right(f, triple[j]):
                return False
    return True


def pants_group(l1: float, l2: float, l3: float, diagonal: int = 0) -> tuple[Mat2, Mat2, Mat2]:
    """Cuff elements with product I and traces 2cosh(l1/2), 2cosh(l2/2), and
    |tr| = 2cosh(l3/2); the pants lies to the right of every cuff.

    ``diagonal`` picks the cuff whose axis is 0-inf in the returned frame.
    """
    if min(l1, l2, l3) < 0:
        raise InvalidLength("cuff lengths must be nonnegative", lengths=[l1, l2, l3])
    A, B, C = kernels.pants_at(l1, l2, l3, diagonal)
    if not all(math.isfinite(x) for m in (A, B, C) for x in m):
        raise InvalidLength("cuff lengths out of the representable range", lengths=[l1, l2, l3])
    return Mat2(*A), Mat2(*B), Mat2(*C)


def seam_distance(m: Mat2, n: Mat2) -> float:
    """Distance between disjoint axes from the crossing cross-ratio."""
    x = abs(crossing_cosine(axis_frame(m), n))
    return math.acosh(x) if x > 1 else 0.0
