"""Pants decompositions, Fenchel-Nielsen points and their sup-metric.

Curves are named by strings.  A decomposition is a list of pants, each a
triple of curve names in cyclic order; a name used by two slots is an
interior curve, by one slot a boundary (or a cusp when marked so).

Infinite surfaces come from a :class:`LadderSpec`: pants are produced on
demand by index and any finite window can be materialized.
"""
from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    DecompositionMismatch,
    FiniteOnly,
    IncomparablePoints,
    InvalidLength,
    NoTwistParameter,
    NotMovable,
    OverlappingNeighborhoods,
)

CurveId = str

TORUS = "TorusMove"
SPHERE = "SphereMove"


def dual_name(c: CurveId) -> CurveId:
    return c[:-1] if c.endswith("'") else c + "'"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    errors: tuple[str, ...]
    genus: int | None = None
    holes: int | None = None
    pants: int | None = None


@dataclass(frozen=True)
class PantsDecomposition:
    pants: tuple[tuple[CurveId, CurveId, CurveId], ...] = ()
    cusps: frozenset = frozenset()
    generator: "LadderSpec | None" = None

    def __post_init__(self):
        object.__setattr__(self, "pants", tuple(tuple(p) for p in self.pants))
        object.__setattr__(self, "cusps", frozenset(self.cusps))

    @property
    def finite(self) -> bool:
        return self.generator is None

    def _need_finite(self):
        if not self.finite:
            raise FiniteOnly("materialize a window first")

    @property
    def slots(self) -> dict[CurveId, list[tuple[int, int]]]:
        cached = self.__dict__.get("_slots")
        if cached is None:
            cached = {}
            for i, p in enumerate(self.pants):
                for s, c in enumerate(p):
                    cached.setdefault(c, []).append((i, s))
            object.__setattr__(self, "_slots", cached)
        return cached

    @property
    def curves(self) -> list[CurveId]:
        self._need_finite()
        return sorted(self.slots)

    def is_interior(self, c: CurveId) -> bool:
        if not self.finite:
            return self.generator.is_interior(c)
        return len(self.slots.get(c, ())) == 2

    def kind(self, c: CurveId) -> str:
        if not self.finite:
            return "interior" if self.generator.is_interior(c) else "boundary"
        n = len(self.slots.get(c, ()))
        if n == 2:
            return "interior"
        if n == 1:
            return "cusp" if c in self.cusps else "boundary"
        raise KeyError(c)

    def interior_curves(self) -> list[CurveId]:
        return [c for c in self.curves if self.is_interior(c)]

    def boundary_curves(self) -> list[CurveId]:
        return [c for c in self.curves if not self.is_interior(c)]

    def ref_slot(self, i: int, s: int) -> int:
        """Slot whose seam foot anchors the twist of slot s in pants i."""
        p = self.pants[i]
        for k in (1, 2):
            t = (s + k) % 3
            if p[t] == p[s]:
                return t
        return (s + 1) % 3

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    def as_dict(self) -> dict:
        if not self.finite:
            return {"pants": [], "curves": {}, "generator": self.generator.as_dict()}
        return {
            "pants": [list(p) for p in self.pants],
            "curves": {c: {"kind": self.kind(c)} for c in self.curves},
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "PantsDecomposition":
        if d.get("generator"):
            return ladder_surface(LadderSpec.from_dict(d["generator"]))
        cusps = [c for c, v in d.get("curves", {}).items() if v.get("kind") == "cusp"]
        return cls(tuple(tuple(p) for p in d["pants"]), frozenset(cusps))

    @classmethod
    def from_json(cls, text: str) -> "PantsDecomposition":
        return cls.from_dict(json.loads(text))

    def window(self, lo: int, hi: int) -> "PantsDecomposition":
        if self.finite:
            return self
        return self.generator.window(lo, hi)


def one_holed_torus(alpha="alpha", hole="delta", cusp=False) -> PantsDecomposition:
    return PantsDecomposition(((alpha, alpha, hole),), frozenset([hole]) if cusp else frozenset())


def four_holed_sphere(alpha="alpha", holes=("C1", "C2", "C3", "C4")) -> PantsDecomposition:
    c1, c2, c3, c4 = holes
    return PantsDecomposition(((alpha, c1, c4), (alpha, c2, c3)))


def five_holed_sphere() -> PantsDecomposition:
    """Default surface for the adjacent-twist experiments: C1 is interior."""
    return PantsDecomposition((("alpha", "C1", "C4"), ("alpha", "C2", "C3"), ("C1", "H5", "H6")))


def validate(P: PantsDecomposition, window: tuple[int, int] = (0, 4)) -> ValidationReport:
    if not P.finite:
        return validate(P.window(*window))
    errors = []
    for i, p in enumerate(P.pants):
        if len(p) != 3:
            errors.append(f"pants {i} has {len(p)} slots")
    for c, sl in sorted(P.slots.items()):
        if len(sl) > 2:
            errors.append(f"curve {c} used by {len(sl)} slots")
        if c in P.cusps and len(sl) != 1:
            errors.append(f"cusp {c} must have exactly one slot")
    for c in P.cusps:
        if c not in P.slots:
            errors.append(f"cusp {c} not present")
    if errors:
        return ValidationReport(False, tuple(errors))
    parent = list(range(len(P.pants)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, sl in P.slots.items():
        if len(sl) == 2:
            parent[find(sl[0][0])] = find(sl[1][0])
    if len({find(i) for i in range(len(P.pants))}) > 1:
        errors.append("decomposition is disconnected")
    n = sum(1 for sl in P.slots.values() if len(sl) == 1)
    twice_g = 2 - n + len(P.pants)
    if twice_g % 2 or twice_g < 0:
        errors.append("inconsistent Euler characteristic")
    return ValidationReport(not errors, tuple(errors), twice_g // 2, n, len(P.pants))


# ----------------------------------------------------------------- points

@dataclass(frozen=True)
class LadderBase:
    """Base point rule for ladder surfaces.

    alpha_i has length alpha0 * ratio**i; every other curve has length
    ``other``; all twists are ``twist``.
    """

    alpha0: float = 1.0
    ratio: float = 0.5
    other: float = 1.0
    twist: float = 0.0

    def __call__(self, c: CurveId, interior: bool):
        fam, idx = parse_ladder_curve(c)
        l = self.alpha0 * self.ratio ** idx if fam == "alpha" else self.other
        return (l, self.twist) if interior else (l, None)

    def as_dict(self):
        return {"rule": "ladder", "alpha0": self.alpha0, "ratio": self.ratio,
                "other": self.other, "twist": self.twist}


@dataclass(frozen=True)
class FNPoint:
    """Lengths and twists over a decomposition.

    ``base`` maps interior curves to (length, twist) and boundary curves to
    (length, None); for infinite surfaces it is a rule such as
    :class:`LadderBase`.  ``overrides`` holds the finitely many deviations:
    an optional replacement length and an additive twist shift.
    ``pending`` lists twists that still need an oracle measurement.
    """

    base: object
    overrides: Mapping = field(default_factory=dict)
    pending: frozenset = frozenset()

    def raw(self, c: CurveId, P: PantsDecomposition):
        if callable(self.base) and not isinstance(self.base, Mapping):
            return self.base(c, P.is_interior(c))
        v = self.base[c]
        return (v[0], v[1] if len(v) > 1 else None)

    def params(self, c: CurveId, P: PantsDecomposition):
        l, tw = self.raw(c, P)
        o = self.overrides.get(c)
        if o is not None:
            if o.get("length") is not None:
                l = o["length"]
            if tw is not None and o.get("shift"):
                tw = tw + o["shift"]
        return l, tw

    def length(self, c, P):
        return self.params(c, P)[0]

    def twist(self, c, P):
        return self.params(c, P)[1]

    def as_dict(self) -> dict:
        if isinstance(self.base, Mapping):
            base = {c: [v[0]] if v[1] is None else [v[0], v[1]] for c, v in self.base.items()}
        else:
            base = self.base.as_dict()
        out = {"base": base, "overrides": {c: dict(v) for c, v in self.overrides.items()}}
        if self.pending:
            out["pending"] = sorted(self.pending)
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping) -> "FNPoint":
        b = d["base"]
        if "rule" in b:
            base = LadderBase(b["alpha0"], b["ratio"], b["other"], b["twist"])
        else:
            base = {c: (v[0], v[1] if len(v) > 1 else None) for c, v in b.items()}
        return cls(base, {c: dict(v) for c, v in d.get("overrides", {}).items()},
                   frozenset(d.get("pending", ())))

    @classmethod
    def from_json(cls, text: str) -> "FNPoint":
        return cls.from_dict(json.loads(text))


def make_point(P: PantsDecomposition, lengths: Mapping, twists: Mapping | None = None) -> FNPoint:
    """Finite point from per-curve lengths and (interior) twists."""
    twists = twists or {}
    base = {}
    for c in P.curves:
        l = float(lengths[c])
        if P.is_interior(c):
            if not l > 0:
                raise InvalidLength(f"interior curve {c} needs positive length", curve=c)
            base[c] = (l, float(twists.get(c, 0.0)))
        else:
            if l < 0:
                raise InvalidLength(f"boundary curve {c} has negative length", curve=c)
            base[c] = (l, None)
    return FNPoint(base)


def _same_base(X: FNPoint, Y: FNPoint) -> bool:
    return X.base is Y.base or X.base == Y.base


def _curve_term(lx, tx, ly, ty, c) -> float:
    if (lx == 0) != (ly == 0):
        raise IncomparablePoints(f"curve {c}: cusp against positive length", curve=c)
    # ordered so the term is bitwise symmetric in X and Y
    d = 0.0 if lx == ly else math.log(max(lx, ly) / min(lx, ly))
    if tx is not None and ty is not None:
        d = max(d, abs(tx - ty))
    return d


def fn_distance(X: FNPoint, Y: FNPoint, P: PantsDecomposition) -> float:
    """sup over curves of max(|log l_X/l_Y|, |tau_X - tau_Y|)."""
    if P.finite:
        curves = P.curves
        for pt in (X, Y):
            if isinstance(pt.base, Mapping) and set(pt.base) != set(curves):
                raise DecompositionMismatch("point and decomposition disagree on curves")
        sup = 0.0
        for c in curves:
            sup = max(sup, _curve_term(*_split(X, Y, c, P), c))
        return sup
    if not _same_base(X, Y):
        raise DecompositionMismatch("infinite-type points must share a base")
    sup = 0.0
    for c in sorted(set(X.overrides) | set(Y.overrides)):
        sup = max(sup, _curve_term(*_split(X, Y, c, P), c))
    return sup


def _split(X, Y, c, P):
    lx, tx = X.params(c, P)
    ly, ty = Y.params(c, P)
    if tx is not None and ty is not None and _same_base(X, Y):
        # equal base twists cancel exactly, leaving the shift difference
        sx = X.overrides.get(c, {}).get("shift", 0.0)
        sy = Y.overrides.get(c, {}).get("shift", 0.0)
        tx, ty = sx, sy
    return lx, tx, ly, ty


def twist_flow(X: FNPoint, c: CurveId, t: float, P: PantsDecomposition) -> FNPoint:
    if not P.is_interior(c):
        raise NoTwistParameter(f"{c} is not an interior curve", curve=c)
    ov = {k: dict(v) for k, v in X.overrides.items()}
    e = ov.setdefault(c, {})
    e["shift"] = e.get("shift", 0.0) + t
    return FNPoint(X.base, ov, X.pending)


def with_length(X: FNPoint, c: CurveId, l: float) -> FNPoint:
    ov = {k: dict(v) for k, v in X.overrides.items()}
    ov.setdefault(c, {})["length"] = l
    return FNPoint(X.base, ov, X.pending)


def flatten(X: FNPoint, P: PantsDecomposition) -> FNPoint:
    """Finite point with overrides folded into the base."""
    P._need_finite()
    return FNPoint({c: X.params(c, P) for c in P.curves})


# ----------------------------------------------------------------- moves

@dataclass(frozen=True)
class MoveDescriptor:
    curve: CurveId
    new_curve: CurveId
    kind: str
    neighborhood: tuple[CurveId, ...]
    p: int
    q: int
    p_slot: int
    q_slot: int


def describe_move(P: PantsDecomposition, c: CurveId) -> MoveDescriptor:
    sl = P.slots.get(c, [])
    if len(sl) != 2:
        raise NotMovable(f"{c} is not an interior curve", curve=c)
    (i, s), (j, t) = sl
    if i == j:
        other = P.pants[i][3 - s - t]
        return MoveDescriptor(c, dual_name(c), TORUS, (other,), i, j, s, t)
    p, q = P.pants[i], P.pants[j]
    a, b = p[(s + 1) % 3], p[(s + 2) % 3]
    cc, d = q[(t + 1) % 3], q[(t + 2) % 3]
    return MoveDescriptor(c, dual_name(c), SPHERE, (a, cc, d, b), i, j, s, t)


def elementary_move(P: PantsDecomposition, c: CurveId) -> tuple[PantsDecomposition, MoveDescriptor]:
    """Replace c by its dual inside the torus or sphere it fills.

    For the sphere with p = (c, a, b), q = (c, cc, d) in cyclic order the
    new pants are (c', a, cc) at p's index and (c', b, d) at q's index.
    """
    if not P.finite:
        raise FiniteOnly("move on a materialized window")
    M = describe_move(P, c)
    pants = [list(x) for x in P.pants]
    if M.kind == TORUS:
        pants[M.p][M.p_slot] = M.new_curve
        pants[M.q][M.q_slot] = M.new_curve
    else:
        a, cc, d, b = M.neighborhood
        s, t = M.p_slot, M.q_slot
        pants[M.p][s], pants[M.p][(s + 1) % 3], pants[M.p][(s + 2) % 3] = M.new_curve, a, cc
        pants[M.q][t], pants[M.q][(t + 1) % 3], pants[M.q][(t + 2) % 3] = M.new_curve, b, d
    return PantsDecomposition(tuple(tuple(p) for p in pants), P.cusps), M


def isomorphic(P: PantsDecomposition, Q: PantsDecomposition) -> bool:
    """Graph isomorphism of the pants/curve incidence structures."""
    import networkx as nx

    def graph(D):
        g = nx.MultiGraph()
        for i, p in enumerate(D.pants):
            g.add_node(("p", i), kind="pants")
            for c in p:
                g.add_node(("c", c), kind=D.kind(c))
                g.add_edge(("p", i), ("c", c))
        return g

    nm = nx.algorithms.isomorphism.categorical_node_match("kind", None)
    return nx.is_isomorphic(graph(P), graph(Q), node_match=nm)


# ---------------------------------------------------------------- ladders

LADDER_FAMILIES = ("alpha", "J", "K", "u", "v", "w")


def ladder_curve(fam: str, i: int) -> CurveId:
    return f"{fam}[{i}]"


def parse_ladder_curve(c: CurveId) -> tuple[str, int]:
    fam, rest = c.split("[", 1)
    return fam, int(rest.rstrip("]'"))


_NEIGHBORHOODS = {"alpha": (0, 1), "J": (-1, 0), "K": (1, 2)}


@dataclass(frozen=True)
class LadderSpec:
    """Flute of four-holed spheres.

    Block i has pants a_i = (alpha_i, J_i, u_i), b_i = (alpha_i, v_i, K_i)
    and c_i = (K_i, J_{i+1}, w_i).  ``designated`` names the curve families
    whose members are moved; their neighborhoods must be disjoint.
    """

    designated: tuple[str, ...] = ("alpha",)

    def __post_init__(self):
        used = {}
        for fam in self.designated:
            if fam not in _NEIGHBORHOODS:
                raise OverlappingNeighborhoods(f"{fam} cannot be designated")
            for off in _NEIGHBORHOODS[fam]:
                slot = off % 3
                if slot in used:
                    raise OverlappingNeighborhoods(
                        f"neighborhoods of {fam} and {used[slot]} share pants", families=[fam, used[slot]])
                used[slot] = fam

    def block(self, i: int):
        al, J, K = ladder_curve("alpha", i), ladder_curve("J", i), ladder_curve("K", i)
        return (
            (al, J, ladder_curve("u", i)),
            (al, ladder_curve("v", i), K),
            (K, ladder_curve("J", i + 1), ladder_curve("w", i)),
        )

    def is_interior(self, c: CurveId) -> bool:
        fam, i = parse_ladder_curve(c)
        return fam in ("alpha", "K") or (fam == "J" and i >= 1)

    def window(self, lo: int, hi: int) -> PantsDecomposition:
        return self.window_pants(3 * lo, 3 * hi + 2)

    def window_pants(self, k0: int, k1: int) -> PantsDecomposition:
        out = []
        for k in range(k0, k1 + 1):
            out.append(_BLOCKS.get(self, k // 3)[k % 3])
        return PantsDecomposition(tuple(out))

    def as_dict(self):
        return {"type": "ladder", "designated": list(self.designated)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d.get("designated", ("alpha",))))


class _BlockCache:
    """Memoized block generator; many readers, one writer."""

    def __init__(self):
        self._lock = threading.Lock()
        self._store: dict = {}

    def get(self, spec: LadderSpec, i: int):
        key = (spec, i)
        hit = self._store.get(key)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._store.get(key)
            if hit is None:
                hit = spec.block(i)
                self._store[key] = hit
        return hit


_BLOCKS = _BlockCache()


def ladder_surface(spec: LadderSpec) -> PantsDecomposition:
    return PantsDecomposition((), frozenset(), spec)


def designated_curves(spec: LadderSpec, lo: int, hi: int) -> list[CurveId]:
    return [ladder_curve(f, i) for i in range(lo, hi + 1) for f in spec.designated]


def ladder_move_window(i: int) -> tuple[int, int]:
    """Pants range c_{i-1}, a_i, b_i, c_i around the neighborhood of alpha_i."""
    return max(3 * i - 1, 0), 3 * i + 2


def curves_in(points: Iterable[FNPoint]) -> set:
    out = set()
    for x in points:
        out |= set(x.overrides)
    return out
