"""Pure-Python hot kernels.

Matrices are plain 4-tuples ``(a, b, c, d)`` of unit determinant.  The
compiled module ``_ckernels`` exports the same names with the same
semantics; ``fnmetric.kernels`` picks one at import.
"""
from math import cosh, exp, fabs, log, sinh, sqrt, acosh

BACKEND = "python"

__all__ = [
    "BACKEND", "ROT", "mul", "inv", "conj", "trace", "tlength", "pants", "pants_at",
    "axis_frame", "translate", "foot", "ref_frame", "glue", "torus_model",
    "sphere_model", "torus_lengths", "sphere_lengths", "recover_twist",
]


def mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def inv(m):
    a, b, c, d = m
    return (d, -b, -c, a)


def conj(g, m):
    return mul(mul(g, m), inv(g))


def trace(m):
    return m[0] + m[3]


def tlength(t):
    """2*acosh(|t|/2), stable near the parabolic limit."""
    x = fabs(t) * 0.5
    if x <= 1.0:
        return 0.0
    e = x - 1.0
    if e < 0.25:
        return 2.0 * log(1.0 + e + sqrt(e * (2.0 + e)))
    return 2.0 * acosh(x)


def _pants0(la, lb, lc):
    # la > 0: A diagonal, B solved from tr B and tr AB, C = (AB)^-1
    h = 0.5 * la
    e = exp(h)
    y = 2.0 * cosh(0.5 * lb)
    z = -2.0 * cosh(0.5 * lc)
    p = (z - y / e) / (2.0 * sinh(h))
    s = y - p
    w = 1.0 - p * s
    if w <= 0.0:
        raise ValueError("not a pants")
    r = -sqrt(w)
    q = -w / r
    A = (e, 0.0, 0.0, 1.0 / e)
    B = (p, q, r, s)
    C = inv(mul(A, B))
    return A, B, C


def pants(la, lb, lc):
    """Cuff elements (A, B, C) of a pair of pants, A*B*C = I.

    Each cuff translates with the pants on its right.  At least one
    length may be zero (cusp); the all-cusp pants uses a fixed model.
    """
    if la > 0.0:
        return _pants0(la, lb, lc)
    if lb > 0.0:
        x0, x1, x2 = _pants0(lb, lc, la)
        return _signs(x2, x0, x1)
    if lc > 0.0:
        x0, x1, x2 = _pants0(lc, la, lb)
        return _signs(x1, x2, x0)
    A = (1.0, 2.0, 0.0, 1.0)
    B = (1.0, 0.0, -2.0, 1.0)
    return A, B, inv(mul(A, B))


def pants_at(la, lb, lc, k):
    """Like pants, with the cuff of slot k on the diagonal when it is not a cusp.

    Entries grow like exp(distance to the diagonal axis), so callers put
    the cuff they measure near (or glue along) there.
    """
    if k == 1 and lb > 0.0:
        x0, x1, x2 = _pants0(lb, lc, la)
        return _signs(x2, x0, x1)
    if k == 2 and lc > 0.0:
        x0, x1, x2 = _pants0(lc, la, lb)
        return _signs(x1, x2, x0)
    return pants(la, lb, lc)


def _neg(m):
    return (-m[0], -m[1], -m[2], -m[3])


def _signs(A, B, C):
    # keep tr A, tr B > 0 so that gluing relations hold in SL(2, R)
    if A[0] + A[3] < 0.0:
        A, C = _neg(A), _neg(C)
    if B[0] + B[3] < 0.0:
        B, C = _neg(B), _neg(C)
    return A, B, C


def axis_frame(m):
    """Unit-determinant Q with Q(0) repelling, Q(inf) attracting."""
    a, b, c, d = m
    t = a + d
    if t < 0.0:
        a, b, c, d = -a, -b, -c, -d
        t = -t
    disc = (t - 2.0) * (t + 2.0)
    if disc <= 0.0:
        raise ValueError("not hyperbolic")
    lam = 0.5 * (t + sqrt(disc))
    mu = 1.0 / lam
    v = (b, lam - a) if fabs(b) + fabs(lam - a) >= fabs(lam - d) + fabs(c) else (lam - d, c)
    w = (b, mu - a) if fabs(b) + fabs(mu - a) >= fabs(mu - d) + fabs(c) else (mu - d, c)
    det = v[0] * w[1] - w[0] * v[1]
    if det < 0.0:
        w = (-w[0], -w[1])
        det = -det
    k = 1.0 / sqrt(det)
    return (v[0] * k, w[0] * k, v[1] * k, w[1] * k)


def translate(dist):
    h = exp(0.5 * dist)
    return (h, 0.0, 0.0, 1.0 / h)


ROT = (0.0, 1.0, -1.0, 0.0)


def foot(q, m):
    """Position along the axis of frame q of the perpendicular toward m."""
    n = mul(mul(inv(q), m), q)
    return 0.5 * log(fabs(n[1] / n[2]))


def ref_frame(cuff, nbr):
    q = axis_frame(cuff)
    return mul(q, translate(foot(q, nbr)))


def glue(fp, tau, fq):
    """Element carrying the q-pants onto the far side of the p-cuff."""
    return mul(mul(mul(fp, translate(tau)), ROT), inv(fq))


def torus_model(l0, l, tau):
    A, B, C = pants(l, l, l0)
    G = glue(ref_frame(A, B), tau, ref_frame(B, A))
    return A, G


def sphere_model(l1, l2, l3, l4, l, tau):
    p = pants(l, l1, l4)
    q0 = pants(l, l2, l3)
    G = glue(ref_frame(p[0], p[1]), tau, ref_frame(q0[0], q0[1]))
    q = (conj(G, q0[0]), conj(G, q0[1]), conj(G, q0[2]))
    return p, q


def torus_lengths(l0, l, tau):
    """(dual, third) lengths for the torus model: words G and G*A^-1."""
    A, G = torus_model(l0, l, tau)
    return tlength(trace(G)), tlength(trace(mul(G, inv(A))))


def sphere_lengths(l1, l2, l3, l4, l, tau):
    """(dual, third) lengths: words p1*q1 and p1*(p0 q1 p0^-1)."""
    p, q = sphere_model(l1, l2, l3, l4, l, tau)
    d = tlength(trace(mul(p[1], q[1])))
    t = tlength(trace(mul(p[1], conj(p[0], q[1]))))
    return d, t


def _lengths(kind, holes, l, u):
    if kind == 0:
        return torus_lengths(holes[0], l, u)
    return sphere_lengths(holes[0], holes[1], holes[2], holes[3], l, u)


def recover_twist(kind, holes, lp, target, third, width=1e-13):
    """Twist u of the model with core length lp whose dual has length target.

    kind 0 is the one-holed torus, 1 the four-holed sphere.  The dual
    length is even in u, so |u| comes from bisection; the sign and a
    final polish come from the third curve, whose length is not
    stationary at the root.  Returns (u, dual residual, third residual).
    """
    f0 = _lengths(kind, holes, lp, 0.0)[0] - target
    if f0 >= 0.0:
        u0 = 0.0
    else:
        lo = 0.0
        hi = 4.0 * (lp + 1.0)
        if _lengths(kind, holes, lp, hi)[0] - target < 0.0:
            raise ArithmeticError("bracket")
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if _lengths(kind, holes, lp, mid)[0] - target < 0.0:
                lo = mid
            else:
                hi = mid
        u0 = 0.5 * (lo + hi)
    if u0 > 0.0:
        tp = _lengths(kind, holes, lp, u0)[1]
        tm = _lengths(kind, holes, lp, -u0)[1]
        u = u0 if fabs(tp - third) <= fabs(tm - third) else -u0
        delta = 1e-6 * (1.0 + fabs(u))
        lo = u - delta
        hi = u + delta
        glo = _lengths(kind, holes, lp, lo)[1] - third
        ghi = _lengths(kind, holes, lp, hi)[1] - third
        if glo * ghi < 0.0:
            while hi - lo > width * (1.0 + fabs(u)) * 1e-2:
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                g = _lengths(kind, holes, lp, mid)[1] - third
                if (g < 0.0) == (glo < 0.0):
                    lo = mid
                    glo = g
                else:
                    hi = mid
            u = 0.5 * (lo + hi)
    else:
        u = 0.0
    d, t = _lengths(kind, holes, lp, u)
    return u, d - target, t - third
