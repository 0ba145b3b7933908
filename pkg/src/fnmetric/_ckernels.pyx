# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``.  Same names, same operation order, so
results agree bit for bit with the pure-Python module."""
from libc.math cimport cosh, exp, fabs, log, sinh, sqrt, acosh

BACKEND = "cython"

__all__ = [
    "BACKEND", "ROT", "mul", "inv", "conj", "trace", "tlength", "pants", "pants_at",
    "axis_frame", "translate", "foot", "ref_frame", "glue", "torus_model",
    "sphere_model", "torus_lengths", "sphere_lengths", "recover_twist",
]

ctypedef struct M2:
    double a, b, c, d


cdef inline M2 _m(double a, double b, double c, double d):
    cdef M2 r
    r.a = a
    r.b = b
    r.c = c
    r.d = d
    return r


cdef inline M2 _from(object m) except *:
    return _m(m[0], m[1], m[2], m[3])


cdef inline tuple _to(M2 m):
    return (m.a, m.b, m.c, m.d)


cdef inline M2 _mul(M2 m, M2 n):
    return _m(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
              m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d)


cdef inline M2 _inv(M2 m):
    return _m(m.d, -m.b, -m.c, m.a)


cdef inline M2 _conj(M2 g, M2 m):
    return _mul(_mul(g, m), _inv(g))


cdef inline M2 _neg(M2 m):
    return _m(-m.a, -m.b, -m.c, -m.d)


cdef inline double _trace(M2 m):
    return m.a + m.d


cdef double _tlength(double t):
    cdef double x = fabs(t) * 0.5
    cdef double e
    if x <= 1.0:
        return 0.0
    e = x - 1.0
    if e < 0.25:
        return 2.0 * log(1.0 + e + sqrt(e * (2.0 + e)))
    return 2.0 * acosh(x)


cdef int _pants0(double la, double lb, double lc, M2 *out) except -1:
    cdef double h = 0.5 * la
    cdef double e = exp(h)
    cdef double y = 2.0 * cosh(0.5 * lb)
    cdef double z = -2.0 * cosh(0.5 * lc)
    cdef double p = (z - y / e) / (2.0 * sinh(h))
    cdef double s = y - p
    cdef double w = 1.0 - p * s
    cdef double r, q
    if w <= 0.0:
        raise ValueError("not a pants")
    r = -sqrt(w)
    q = -w / r
    out[0] = _m(e, 0.0, 0.0, 1.0 / e)
    out[1] = _m(p, q, r, s)
    out[2] = _inv(_mul(out[0], out[1]))
    return 0


cdef void _signs(M2 *x):
    if x[0].a + x[0].d < 0.0:
        x[0] = _neg(x[0])
        x[2] = _neg(x[2])
    if x[1].a + x[1].d < 0.0:
        x[1] = _neg(x[1])
        x[2] = _neg(x[2])


cdef int _rot(double la, double lb, double lc, int k, M2 *out) except -1:
    cdef M2 t[3]
    if k == 1:
        _pants0(lb, lc, la, t)
        out[0], out[1], out[2] = t[2], t[0], t[1]
    else:
        _pants0(lc, la, lb, t)
        out[0], out[1], out[2] = t[1], t[2], t[0]
    _signs(out)
    return 0


cdef int _pants(double la, double lb, double lc, M2 *out) except -1:
    if la > 0.0:
        return _pants0(la, lb, lc, out)
    if lb > 0.0:
        return _rot(la, lb, lc, 1, out)
    if lc > 0.0:
        return _rot(la, lb, lc, 2, out)
    out[0] = _m(1.0, 2.0, 0.0, 1.0)
    out[1] = _m(1.0, 0.0, -2.0, 1.0)
    out[2] = _inv(_mul(out[0], out[1]))
    return 0


cdef int _axis_frame(M2 m, M2 *out) except -1:
    cdef double a = m.a, b = m.b, c = m.c, d = m.d
    cdef double t = a + d
    cdef double disc, lam, mu, v0, v1, w0, w1, det, k
    if t < 0.0:
        a, b, c, d = -a, -b, -c, -d
        t = -t
    disc = (t - 2.0) * (t + 2.0)
    if disc <= 0.0:
        raise ValueError("not hyperbolic")
    lam = 0.5 * (t + sqrt(disc))
    mu = 1.0 / lam
    if fabs(b) + fabs(lam - a) >= fabs(lam - d) + fabs(c):
        v0, v1 = b, lam - a
    else:
        v0, v1 = lam - d, c
    if fabs(b) + fabs(mu - a) >= fabs(mu - d) + fabs(c):
        w0, w1 = b, mu - a
    else:
        w0, w1 = mu - d, c
    det = v0 * w1 - w0 * v1
    if det < 0.0:
        w0, w1 = -w0, -w1
        det = -det
    k = 1.0 / sqrt(det)
    out[0] = _m(v0 * k, w0 * k, v1 * k, w1 * k)
    return 0


cdef inline M2 _translate(double dist):
    cdef double h = exp(0.5 * dist)
    return _m(h, 0.0, 0.0, 1.0 / h)


cdef M2 _ROT = _m(0.0, 1.0, -1.0, 0.0)
ROT = (0.0, 1.0, -1.0, 0.0)


cdef inline double _foot(M2 q, M2 m):
    cdef M2 n = _mul(_mul(_inv(q), m), q)
    return 0.5 * log(fabs(n.b / n.c))


cdef int _ref_frame(M2 cuff, M2 nbr, M2 *out) except -1:
    cdef M2 q
    _axis_frame(cuff, &q)
    out[0] = _mul(q, _translate(_foot(q, nbr)))
    return 0


cdef inline M2 _glue(M2 fp, double tau, M2 fq):
    return _mul(_mul(_mul(fp, _translate(tau)), _ROT), _inv(fq))


cdef int _torus_model(double l0, double l, double tau, M2 *A, M2 *G) except -1:
    cdef M2 p[3]
    cdef M2 fa, fb
    _pants(l, l, l0, p)
    _ref_frame(p[0], p[1], &fa)
    _ref_frame(p[1], p[0], &fb)
    A[0] = p[0]
    G[0] = _glue(fa, tau, fb)
    return 0


cdef int _sphere_model(double l1, double l2, double l3, double l4, double l, double tau,
                       M2 *p, M2 *q) except -1:
    cdef M2 q0[3]
    cdef M2 fp, fq, G
    _pants(l, l1, l4, p)
    _pants(l, l2, l3, q0)
    _ref_frame(p[0], p[1], &fp)
    _ref_frame(q0[0], q0[1], &fq)
    G = _glue(fp, tau, fq)
    q[0] = _conj(G, q0[0])
    q[1] = _conj(G, q0[1])
    q[2] = _conj(G, q0[2])
    return 0


cdef int _torus_lengths(double l0, double l, double tau, double *out) except -1:
    cdef M2 A, G
    _torus_model(l0, l, tau, &A, &G)
    out[0] = _tlength(_trace(G))
    out[1] = _tlength(_trace(_mul(G, _inv(A))))
    return 0


cdef int _sphere_lengths(double l1, double l2, double l3, double l4, double l, double tau,
                         double *out) except -1:
    cdef M2 p[3]
    cdef M2 q[3]
    _sphere_model(l1, l2, l3, l4, l, tau, p, q)
    out[0] = _tlength(_trace(_mul(p[1], q[1])))
    out[1] = _tlength(_trace(_mul(p[1], _conj(p[0], q[1]))))
    return 0


cdef int _lengths(int kind, double *h, double l, double u, double *out) except -1:
    if kind == 0:
        return _torus_lengths(h[0], l, u, out)
    return _sphere_lengths(h[0], h[1], h[2], h[3], l, u, out)


# ------------------------------------------------------------ python API

def mul(m, n):
    return _to(_mul(_from(m), _from(n)))


def inv(m):
    return _to(_inv(_from(m)))


def conj(g, m):
    return _to(_conj(_from(g), _from(m)))


def trace(m):
    return m[0] + m[3]


def tlength(double t):
    return _tlength(t)


def pants(double la, double lb, double lc):
    cdef M2 out[3]
    _pants(la, lb, lc, out)
    return _to(out[0]), _to(out[1]), _to(out[2])


def pants_at(double la, double lb, double lc, int k):
    cdef M2 out[3]
    if k == 1 and lb > 0.0:
        _rot(la, lb, lc, 1, out)
    elif k == 2 and lc > 0.0:
        _rot(la, lb, lc, 2, out)
    else:
        _pants(la, lb, lc, out)
    return _to(out[0]), _to(out[1]), _to(out[2])


def axis_frame(m):
    cdef M2 q
    _axis_frame(_from(m), &q)
    return _to(q)


def translate(double dist):
    return _to(_translate(dist))


def foot(q, m):
    return _foot(_from(q), _from(m))


def ref_frame(cuff, nbr):
    cdef M2 out
    _ref_frame(_from(cuff), _from(nbr), &out)
    return _to(out)


def glue(fp, double tau, fq):
    return _to(_glue(_from(fp), tau, _from(fq)))


def torus_model(double l0, double l, double tau):
    cdef M2 A, G
    _torus_model(l0, l, tau, &A, &G)
    return _to(A), _to(G)


def sphere_model(double l1, double l2, double l3, double l4, double l, double tau):
    cdef M2 p[3]
    cdef M2 q[3]
    _sphere_model(l1, l2, l3, l4, l, tau, p, q)
    return (_to(p[0]), _to(p[1]), _to(p[2])), (_to(q[0]), _to(q[1]), _to(q[2]))


def torus_lengths(double l0, double l, double tau):
    cdef double out[2]
    _torus_lengths(l0, l, tau, out)
    return out[0], out[1]


def sphere_lengths(double l1, double l2, double l3, double l4, double l, double tau):
    cdef double out[2]
    _sphere_lengths(l1, l2, l3, l4, l, tau, out)
    return out[0], out[1]


def recover_twist(int kind, holes, double lp, double target, double third, double width=1e-13):
    cdef double h[4]
    cdef double r[2]
    cdef double f0, lo, hi, mid, u0, u, tp, tm, delta, glo, ghi, g
    cdef int i
    for i in range(len(holes)):
        h[i] = holes[i]
    _lengths(kind, h, lp, 0.0, r)
    f0 = r[0] - target
    if f0 >= 0.0:
        u0 = 0.0
    else:
        lo = 0.0
        hi = 4.0 * (lp + 1.0)
        _lengths(kind, h, lp, hi, r)
        if r[0] - target < 0.0:
            raise ArithmeticError("bracket")
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            _lengths(kind, h, lp, mid, r)
            if r[0] - target < 0.0:
                lo = mid
            else:
                hi = mid
        u0 = 0.5 * (lo + hi)
    if u0 > 0.0:
        _lengths(kind, h, lp, u0, r)
        tp = r[1]
        _lengths(kind, h, lp, -u0, r)
        tm = r[1]
        u = u0 if fabs(tp - third) <= fabs(tm - third) else -u0
        delta = 1e-6 * (1.0 + fabs(u))
        lo = u - delta
        hi = u + delta
        _lengths(kind, h, lp, lo, r)
        glo = r[1] - third
        _lengths(kind, h, lp, hi, r)
        ghi = r[1] - third
        if glo * ghi < 0.0:
            while hi - lo > width * (1.0 + fabs(u)) * 1e-2:
                mid = 0.5 * (lo + hi)
                if mid == lo or mid == hi:
                    break
                _lengths(kind, h, lp, mid, r)
                g = r[1] - third
                if (g < 0.0) == (glo < 0.0):
                    lo = mid
                    glo = g
                else:
                    hi = mid
            u = 0.5 * (lo + hi)
    else:
        u = 0.0
    _lengths(kind, h, lp, u, r)
    return u, r[0] - target, r[1] - third
