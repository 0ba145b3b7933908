"""Seeded batteries: closed-form moves against the holonomy model, and the
metric axioms of the Fenchel-Nielsen distance."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import transforms
from .holonomy import build_sphere_rep, build_torus_rep, measure_dual
from .pants import describe_move, fn_distance, four_holed_sphere, make_point

L_RANGE = (0.1, 3.0)
TAU_RANGE = (-2.0, 2.0)
HOLE_RANGE = (0.0, 2.0)
REL_TOL = 1e-8


@dataclass
class Worst:
    err: float = 0.0
    case: dict = field(default_factory=dict)

    def update(self, err: float, case: dict):
        if err > self.err or math.isnan(err):
            self.err, self.case = err, case


@dataclass
class BatteryResult:
    samples: int
    seed: int
    max_errors: dict
    worst: dict
    axioms: dict

    @property
    def passed(self) -> bool:
        return (all(e <= REL_TOL for e in self.max_errors.values())
                and all(self.axioms.values()))

    def worst_case(self) -> tuple[str, float, dict]:
        k = max(self.max_errors, key=lambda n: self.max_errors[n])
        return k, self.max_errors[k], self.worst[k]


def rel(a: float, b: float) -> float:
    if a == b:
        return 0.0
    return abs(a - b) / abs(b) if b else math.inf


def sample_inputs(n: int, seed: int):
    """n cases alternating torus and sphere; deterministic in seed."""
    rng = random.Random(seed)
    out = []
    for k in range(n):
        l = rng.uniform(*L_RANGE)
        tau = rng.uniform(*TAU_RANGE)
        if k % 2 == 0:
            out.append({"kind": "torus", "l0": rng.uniform(*HOLE_RANGE), "l": l, "tau": tau})
        else:
            holes = [rng.uniform(*HOLE_RANGE) for _ in range(4)]
            out.append({"kind": "sphere", "holes": holes, "l": l, "tau": tau})
    return out


def closed_form(case: dict):
    if case["kind"] == "torus":
        return transforms.torus_move(case["l0"], case["l"], case["tau"])
    return transforms.sphere_move(*case["holes"], case["l"], case["tau"])


def oracle(case: dict):
    if case["kind"] == "torus":
        rep = build_torus_rep(case["l0"], case["l"], case["tau"])
    else:
        rep = build_sphere_rep(*case["holes"], case["l"], case["tau"])
    return measure_dual(rep, describe_move(rep.surface, "alpha"))


def compare(case: dict) -> tuple[float, float]:
    got = closed_form(case)
    ref = oracle(case)
    return rel(got.l_prime, ref.l_prime), rel(abs(got.tau_prime), abs(ref.tau_prime))


def metric_axioms(n: int, seed: int) -> dict:
    """Exact symmetry and triangle inequality on n random triples, for a
    finite surface and for perturbations of an infinite ladder."""
    from .pants import FNPoint, LadderBase, LadderSpec, ladder_curve, ladder_surface, twist_flow, with_length

    rng = random.Random(seed + 1)
    P = four_holed_sphere()
    sym = tri = True
    for _ in range(n):
        pts = []
        for _ in range(3):
            lengths = {c: math.exp(rng.uniform(-6, 1)) for c in P.curves}
            pts.append(make_point(P, lengths, {"alpha": rng.uniform(-4, 4)}))
        x, y, z = pts
        dxy, dyx = fn_distance(x, y, P), fn_distance(y, x, P)
        sym &= dxy == dyx
        tri &= fn_distance(x, z, P) <= dxy + fn_distance(y, z, P)
    Q = ladder_surface(LadderSpec())
    base = FNPoint(LadderBase(1.0, 0.5, 1.0, 0.0))
    isym = itri = True
    for _ in range(n):
        pts = []
        for _ in range(3):
            X = base
            for _ in range(3):
                c = ladder_curve(rng.choice(("alpha", "J", "K")), rng.randint(1, 30))
                X = twist_flow(X, c, rng.uniform(-3, 3), Q)
                X = with_length(X, c, X.length(c, Q) * math.exp(rng.uniform(-2, 2)))
            pts.append(X)
        x, y, z = pts
        dxy, dyx = fn_distance(x, y, Q), fn_distance(y, x, Q)
        isym &= dxy == dyx
        itri &= fn_distance(x, z, Q) <= dxy + fn_distance(y, z, Q)
    return {"symmetry": sym, "triangle": tri, "symmetry_infinite": isym, "triangle_infinite": itri}


def run_battery(samples: int = 1000, seed: int = 0, axioms: int | None = None) -> BatteryResult:
    cases = sample_inputs(samples, seed)
    worst = {"torus_l_prime": Worst(), "torus_tau_prime": Worst(),
             "sphere_l_prime": Worst(), "sphere_tau_prime": Worst()}
    for case in cases:
        el, et = compare(case)
        worst[case["kind"] + "_l_prime"].update(el, case)
        worst[case["kind"] + "_tau_prime"].update(et, case)
    ax = metric_axioms(samples if axioms is None else axioms, seed) if samples else {}
    return BatteryResult(samples, seed, {k: w.err for k, w in worst.items()},
                         {k: w.case for k, w in worst.items()}, ax)
