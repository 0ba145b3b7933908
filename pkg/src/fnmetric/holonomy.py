"""Holonomy oracle.

A representation is assembled directly from Fenchel-Nielsen data: each
pants gets its cuff group from hexagon trigonometry, and pants are glued
along a spanning tree; every remaining interior curve gets a stable letter.
Lengths come from traces and twists from feet of common perpendiculars,
so nothing here uses the closed-form move formulas.

Gluing convention.  For an interior curve with slots (i, s) before (j, t)
the element carrying pants j next to pants i is

    G = F_i T(tau) R F_j^-1,

with F the unit-determinant frame of the cuff axis translated to the foot
of the seam toward the reference slot, T(d) = diag(e^{d/2}, e^{-d/2}) and
R the half turn about i.  The cuff of slot t then equals the inverse of
the cuff of slot s.  ``tau`` is the foot of pants j minus the foot of
pants i, measured along the direction of the cuff of slot s.

Fixed words.  Generators are ``p<k>.0``, ``p<k>.1`` (first two cuffs of
pants k, the third is the inverse of their product) and ``t.<curve>``
for stable letters.  On the one-holed torus (alpha, alpha, delta) the
letters p0.0, p0.1 and t.alpha play the roles of A, B and the dual G;
the boundary is the commutator of A and G^-1.  On the four-holed
sphere (alpha, C1, C4), (alpha, C2, C3) the dual is C1*C2.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import kernels
from .errors import (
    BadConfiguration,
    FiniteOnly,
    NotRealizable,
    TwistRecoveryFailed,
)
from .hyperbolic import (
    Mat2,
    axis_frame,
    foot_position,
    length_of,
    pants_group,
    trace_to_length,
)
from .pants import (
    SPHERE,
    TORUS,
    FNPoint,
    MoveDescriptor,
    PantsDecomposition,
    describe_move,
    elementary_move,
    four_holed_sphere,
    make_point,
    one_holed_torus,
)

Word = tuple  # of (generator, +1 | -1)

I2 = Mat2.identity()


def parse_word(text: str) -> Word:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def word_str(w: Word) -> str:
    return " ".join(g if e == 1 else g + "^-1" for g, e in w)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


@dataclass
class HolonomyRep:
    generators: dict
    words: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)
    tolerance: float = 1e-9
    surface: PantsDecomposition | None = None
    point: FNPoint | None = None
    conjugators: list = field(default_factory=list)
    stable: dict = field(default_factory=dict)

    def evaluate(self, w) -> Mat2:
        if isinstance(w, str):
            w = self.words[w] if w in self.words else parse_word(w)
        m = I2
        for g, e in w:
            x = self.generators[g]
            m = m @ (x if e == 1 else x.inv())
        return m

    def trace(self, w) -> float:
        return self.evaluate(w).trace()

    def length(self, w) -> float:
        return trace_to_length(self.trace(w))

    def triple(self, k: int) -> tuple[Mat2, Mat2, Mat2]:
        a = self.generators[f"p{k}.0"]
        b = self.generators[f"p{k}.1"]
        return a, b, (a @ b).inv()

    def element(self, k: int, s: int) -> Mat2:
        return self.triple(k)[s]

    def conjugated(self, g: Mat2) -> "HolonomyRep":
        gi = g.inv()
        gens = {n: g @ m @ gi for n, m in self.generators.items()}
        return HolonomyRep(gens, dict(self.words), list(self.relations), self.tolerance,
                           self.surface, self.point, [g @ c for c in self.conjugators],
                           dict(self.stable))

    def check(self) -> list[str]:
        bad = []
        for n, m in self.generators.items():
            if abs(m.det() - 1.0) > self.tolerance:
                bad.append(f"det({n}) = {m.det()!r}")
        for w, kind, value in self.relations:
            m = self.evaluate(w)
            if kind == "identity":
                err = max(abs(m.a - 1), abs(m.b), abs(m.c), abs(m.d - 1))
                scale = 1.0 + max(abs(x) for x in self.evaluate(w[: len(w) // 2] or ()))
                if err > self.tolerance * scale * scale:
                    bad.append(f"{word_str(w)} != I (err {err:.3g})")
            elif kind == "length":
                err = abs(abs(m.trace()) - 2 * math.cosh(value / 2))
                if err > self.tolerance * (1 + abs(m.trace())):
                    bad.append(f"|tr {word_str(w)}| off by {err:.3g}")
        return bad

    def as_dict(self) -> dict:
        return {
            "generators": {n: [float(x).hex() for x in m] for n, m in sorted(self.generators.items())},
            "words": {n: word_str(w) for n, w in sorted(self.words.items())},
            "tolerance": self.tolerance,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "HolonomyRep":
        d = json.loads(text)
        gens = {n: Mat2(*(float.fromhex(x) for x in v)) for n, v in d["generators"].items()}
        words = {n: parse_word(w) for n, w in d["words"].items()}
        return cls(gens, words, tolerance=d.get("tolerance", 1e-9))


def _slot_word(k: int, s: int) -> Word:
    if s == 0:
        return ((f"p{k}.0", 1),)
    if s == 1:
        return ((f"p{k}.1", 1),)
    return ((f"p{k}.1", -1), (f"p{k}.0", -1))


def _frame(local, P, i, s) -> Mat2:
    cuff = local[i][s]
    nbr = local[i][P.ref_slot(i, s)]
    return Mat2(*kernels.ref_frame(cuff, nbr))


def _spanning_tree(P: PantsDecomposition, order, root: int):
    """Tree edges in growth order as (curve, parent slot, child slot)."""
    seen = {root}
    edges = []
    grown = True
    while grown:
        grown = False
        for c in order:
            (i, s), (j, t) = P.slots[c]
            if i == j:
                continue
            if i in seen and j not in seen:
                edges.append((c, (i, s), (j, t)))
                seen.add(j)
            elif j in seen and i not in seen:
                edges.append((c, (j, t), (i, s)))
                seen.add(i)
            else:
                continue
            grown = True
    if len(seen) != len(P.pants):
        raise NotRealizable("decomposition is disconnected")
    return edges


def build_rep(P: PantsDecomposition, X: FNPoint, prefer=(), center=None) -> HolonomyRep:
    """Representation realizing X on P; curves in ``prefer`` go into the tree.

    The frame is centered on the axis of ``center`` (default: the first
    cuff of pants 0); each other pants is put in normal form along the
    cuff that attaches it to the tree.  Matrix entries grow with the
    distance from that axis, so measure near it.
    """
    if not P.finite:
        raise FiniteOnly("build_rep needs a finite decomposition")
    root, root_slot = P.slots[center][0] if center is not None else (0, 0)
    order = list(prefer) + [c for c in P.interior_curves() if c not in prefer]
    edges = _spanning_tree(P, order, root)
    diag = {root: root_slot}
    for _, _, (j, t) in edges:
        diag[j] = t
    local = []
    for k, p in enumerate(P.pants):
        ls = [X.length(c, P) for c in p]
        if max(ls) == 0 and len(P.pants) > 1:
            raise NotRealizable("pants with three cusps inside a larger surface")
        try:
            local.append(pants_group(*ls, diagonal=diag[k]))
        except ValueError as exc:
            raise NotRealizable(str(exc), lengths=ls) from None
    glue = {}
    for c in P.interior_curves():
        (i, s), (j, t) = P.slots[c]
        tau = X.twist(c, P)
        glue[c] = Mat2(*kernels.glue(_frame(local, P, i, s), tau, _frame(local, P, j, t)))
    conj = [None] * len(P.pants)
    conj[root] = I2
    tree = set()
    for c, (i, s), (j, t) in edges:
        if (i, s) == P.slots[c][0]:
            conj[j] = conj[i] @ glue[c]
        else:
            conj[j] = conj[i] @ glue[c].inv()
        tree.add(c)
    gens, stable, relations, words = {}, {}, [], {}
    for k, g in enumerate(conj):
        gi = g.inv()
        gens[f"p{k}.0"] = g @ local[k][0] @ gi
        gens[f"p{k}.1"] = g @ local[k][1] @ gi
    for c in P.interior_curves():
        (i, s), (j, t) = P.slots[c]
        w1, w2 = _slot_word(i, s), _slot_word(j, t)
        if c in tree:
            relations.append((w2 + w1, "identity", None))
        else:
            name = f"t.{c}"
            gens[name] = conj[i] @ glue[c] @ conj[j].inv()
            stable[c] = name
            relations.append((((name, 1),) + w2 + ((name, -1),) + w1, "identity", None))
    for c in P.curves:
        i, s = P.slots[c][0]
        words[c] = _slot_word(i, s)
        relations.append((words[c], "length", X.length(c, P)))
    return HolonomyRep(gens, words, relations, 1e-9, P, X, conj, stable)


def build_torus_rep(l0: float, l: float, tau: float) -> HolonomyRep:
    P = one_holed_torus()
    X = make_point(P, {"alpha": l, "delta": l0}, {"alpha": tau})
    rep = build_rep(P, X)
    rep.words["alpha'"] = (("t.alpha", 1),)
    rep.words["third"] = (("p0.0", 1), ("t.alpha", 1))
    return rep


def build_sphere_rep(l1, l2, l3, l4, l, tau) -> HolonomyRep:
    P = four_holed_sphere()
    X = make_point(P, {"alpha": l, "C1": l1, "C2": l2, "C3": l3, "C4": l4}, {"alpha": tau})
    rep = build_rep(P, X, prefer=("alpha",))
    rep.words["alpha'"] = (("p0.1", 1), ("p1.1", 1))
    return rep


# ------------------------------------------------------------- adjacency

def neighbor(rep: HolonomyRep, c: str, i: int, s: int):
    """The other slot of c and a conjugator K such that K * triple * K^-1 is
    the lift of that pants sitting across the cuff at (i, s)."""
    P = rep.surface
    a, b = P.slots[c]
    other = b if (i, s) == a else a
    name = rep.stable.get(c)
    if name is None:
        return other[0], other[1], I2
    S = rep.generators[name]
    return other[0], other[1], (S if (i, s) == a else S.inv())


def _conj_triple(K: Mat2, tri):
    Ki = K.inv()
    return tuple(K @ m @ Ki for m in tri)


def twist_between(T1, s1, r1, T2, r2) -> float:
    """Foot toward T2[r2] minus foot toward T1[r1] along the axis of T1[s1]."""
    q = axis_frame(T1[s1])
    return foot_position(q, T2[r2]) - foot_position(q, T1[r1])


def read_fn_point(rep: HolonomyRep) -> FNPoint:
    """Lengths from traces and twists from seam feet."""
    P = rep.surface
    base = {}
    for c in P.curves:
        l = rep.length(rep.words[c])
        if P.is_interior(c):
            (i, s), (j, t) = P.slots[c]
            _, _, K = neighbor(rep, c, i, s)
            T1 = rep.triple(i)
            T2 = _conj_triple(K, rep.triple(j))
            tw = twist_between(T1, s, P.ref_slot(i, s), T2, P.ref_slot(j, t))
            base[c] = (l, tw)
        else:
            base[c] = (l, None)
    return FNPoint(base)


# ------------------------------------------------------------ dual curves

@dataclass(frozen=True)
class DualMeasurement:
    l_prime: float
    tau_prime: float
    residual: float
    residual_third: float


def _sphere_parts(rep: HolonomyRep, M: MoveDescriptor):
    """(A, a, b, c, d, Kq) with p = (A, a, b) and the adjacent q = (A^-1, c, d)."""
    i, s, j, t = M.p, M.p_slot, M.q, M.q_slot
    Tp = rep.triple(i)
    _, _, K = neighbor(rep, M.curve, i, s)
    Tq = _conj_triple(K, rep.triple(j))
    return Tp[s], Tp[(s + 1) % 3], Tp[(s + 2) % 3], Tq[(t + 1) % 3], Tq[(t + 2) % 3], K


def dual_elements(rep: HolonomyRep, M: MoveDescriptor):
    """Group elements (alpha, alpha', third) for the move M."""
    if M.kind == TORUS:
        if (M.p_slot + 1) % 3 != M.q_slot:
            raise BadConfiguration("torus slots must be cyclically consecutive")
        A = rep.element(M.p, M.p_slot)
        G = rep.generators[rep.stable[M.curve]]
        return A, G, A @ G
    A, a, b, c, d, _ = _sphere_parts(rep, M)
    x = (a @ c).inv()
    third = a @ x @ a @ b @ a.inv() @ x.inv()
    return A, x, third


def measure_dual(rep: HolonomyRep, M: MoveDescriptor | None = None) -> DualMeasurement:
    """Length of the dual curve and its twist in the moved decomposition.

    The twist is found by rebuilding the subsurface around the dual with
    an unknown twist u and matching the length of the original curve,
    then fixing the sign with the third curve.
    """
    P, X = rep.surface, rep.point
    if M is None:
        M = describe_move(P, next(iter(P.interior_curves())))
    A, x, third = dual_elements(rep, M)
    l = length_of(A)
    lp = length_of(x)
    lt = length_of(third)
    holes = [X.length(h, P) for h in M.neighborhood]
    if M.kind == TORUS:
        kind, hs = 0, (holes[0],)
    else:
        l1, l2, l3, l4 = holes
        kind, hs = 1, (l1, l4, l3, l2)
    try:
        u, r1, r2 = kernels.recover_twist(kind, hs, lp, l, lt)
    except ArithmeticError:
        raise TwistRecoveryFailed("no sign change on the bracket", l_prime=lp, target=l) from None
    return DualMeasurement(lp, u, r1, r2)


def moved_triples(rep: HolonomyRep, M: MoveDescriptor):
    """Lifts of the two new pants (p', q') in slot order, sphere case."""
    A, a, b, c, d, _ = _sphere_parts(rep, M)
    x = (a @ c).inv()
    s, t = M.p_slot, M.q_slot
    pp = [None] * 3
    qq = [None] * 3
    pp[s], pp[(s + 1) % 3], pp[(s + 2) % 3] = x, a, c
    ci = c.inv()
    qq[t], qq[(t + 1) % 3], qq[(t + 2) % 3] = x.inv(), ci @ b @ c, d
    return tuple(pp), tuple(qq)


def measure_adjacent_twists(P: PantsDecomposition, X: FNPoint, c: str) -> dict:
    """Twists, in the moved decomposition, of interior curves bounding the
    four-holed sphere around c."""
    M = describe_move(P, c)
    if M.kind != SPHERE:
        return {}
    out = {}
    # one rep per hole, centered on it: opposite holes sit about 2 log(1/l)
    # apart when c is short, and matrices spanning that lose every digit
    for h in dict.fromkeys(M.neighborhood):
        if not P.is_interior(h):
            continue
        rep = build_rep(P, X, prefer=(c,), center=h)
        out.update(adjacent_twists_from_rep(rep, M, only=h))
    return out


def adjacent_twists_from_rep(rep: HolonomyRep, M: MoveDescriptor, only: str | None = None) -> dict:
    P = rep.surface
    P2, _ = elementary_move(P, M.curve)
    A, a, b, cc, d, Kq = _sphere_parts(rep, M)
    pp, qq = moved_triples(rep, M)
    # same pants as qq, conjugated by c so that b keeps its own matrix
    qb = _conj_triple(cc, qq)
    i, s, j, t = M.p, M.p_slot, M.q, M.q_slot
    # where each hole sat in P, which pants of P' now holds it, extra conjugator
    placed = {
        (i, (s + 1) % 3): (M.p, pp, I2),
        (i, (s + 2) % 3): (M.q, qb, I2),
        (j, (t + 1) % 3): (M.p, pp, Kq),
        (j, (t + 2) % 3): (M.q, qq, Kq),
    }
    inside = {i, j}
    out = {}
    for (k, r), (newk, tri, K0) in placed.items():
        h = P.pants[k][r]
        if not P.is_interior(h) or (only is not None and h != only):
            continue
        ok, orr, K = neighbor(rep, h, k, r)
        if ok in inside:
            continue
        outside = _conj_triple(K0 @ K, rep.triple(ok))
        news = [x for x in P2.slots[h] if x[0] == newk][0][1]
        first = P2.slots[h][0]
        if first[0] == newk:
            tw = twist_between(tri, news, P2.ref_slot(newk, news), outside, P2.ref_slot(ok, orr))
        else:
            tw = twist_between(outside, orr, P2.ref_slot(ok, orr), tri, P2.ref_slot(newk, news))
        out[h] = tw
    return out


# ---------------------------------------------------------------- shears

@dataclass(frozen=True)
class ShearTriple:
    s_a: float
    s_b: float
    s_c: float


def shear_boundary_length(s: ShearTriple) -> float:
    return abs(s.s_a + s.s_b + s.s_c)


def _to_std(p1, p2, p3) -> Mat2:
    # Mobius map sending p1 -> 0, p2 -> inf, p3 -> 1
    inf = math.inf
    if p1 == inf:
        return Mat2(0.0, p3 - p2, 1.0, -p2)
    if p2 == inf:
        return Mat2(1.0, -p1, 0.0, p3 - p1)
    if p3 == inf:
        return Mat2(1.0, -p1, 1.0, -p2)
    return Mat2(p3 - p2, -p1 * (p3 - p2), p3 - p1, -p2 * (p3 - p1))


def _three_point(src, dst) -> Mat2:
    m = _to_std(*dst).inv() @ _to_std(*src)
    return m.normalized()


def _apply(m: Mat2, z: float) -> float:
    if math.isinf(z):
        return m.a / m.c if m.c != 0 else math.inf
    den = m.c * z + m.d
    return (m.a * z + m.b) / den if den != 0 else math.inf


def _third_vertex(p, q, r, s) -> float:
    """Vertex t across edge (p, q) from r with shear s."""
    m = _three_point((p, q, r), (0.0, math.inf, -1.0))
    return _apply(m.inv(), math.exp(s))


def shear_to_rep(s: ShearTriple) -> HolonomyRep:
    """Holed torus glued from the ideal quadrilateral (inf, -1, 0, e^{s_c/2}).

    Shears enter with half weight so the boundary length equals
    |s_a + s_b + s_c|.  Generators g (dual to edge a) and h (dual to b).
    """
    x = math.exp(s.s_c / 2)
    y = _third_vertex(0.0, x, math.inf, s.s_a / 2)
    w = _third_vertex(x, math.inf, 0.0, s.s_b / 2)
    g = _three_point((math.inf, -1.0, 0.0), (x, 0.0, y))
    h = _three_point((-1.0, 0.0, math.inf), (math.inf, x, w))
    gens = {"g": g, "h": h}
    words = {
        "alpha": (("g", 1),),
        "alpha'": (("h", 1),),
        "boundary": (("g", 1), ("h", 1), ("g", -1), ("h", -1)),
    }
    rel = [(words["boundary"], "length", shear_boundary_length(s))]
    rep = HolonomyRep(gens, words, rel)
    for name in ("alpha", "alpha'"):
        if abs(rep.trace(name)) < 2.0 - 1e-9:
            raise NotRealizable(f"{name} is elliptic at {s}")
    return rep


def shear_path_gaps(start: ShearTriple, end: ShearTriple, steps: int,
                    words=("alpha", "alpha'", "boundary")) -> dict:
    """Largest jump, between consecutive samples of the straight path, in the
    length of each word.  Continuous length functions give gaps that shrink
    with the step."""
    prev = None
    gaps = dict.fromkeys(words, 0.0)
    for k in range(steps + 1):
        u = k / steps
        s = ShearTriple(*(a + u * (b - a) for a, b in zip(
            (start.s_a, start.s_b, start.s_c), (end.s_a, end.s_b, end.s_c))))
        rep = shear_to_rep(s)
        cur = {w: rep.length(w) for w in words}
        if prev is not None:
            for w in words:
                gaps[w] = max(gaps[w], abs(cur[w] - prev[w]))
        prev = cur
    return gaps
