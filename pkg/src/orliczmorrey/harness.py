"""Empirical verification of the boundedness results on sampled functions.

Boundedness cannot be certified from finitely many samples, so it is
tested through the covariances the results rest on: the norm ratio of an
operator must stay put under grid refinement, under dilation of the input
and under extension of the test family.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional

import numpy as np

from .conditions import check_cianchi_frmax
from .operators import (OperatorSpec, bmo_norm, commutator_frac_maximal, commutator_riesz, default_radii,
                        fractional_maximal)
from .sampled import (Ball, BallFamily, GridFunction, char_ball, gaussian, geometric_radii,
                      grid_from_spec, log_bmo, luxemburg_norm, orlicz_morrey_norm, power_decay,
                      weak_luxemburg_norm)
from .young import YoungFunction, classify

GENERATORS = ("ball_indicators", "power_decay", "gaussian", "bmo_log")
STABILITY_RTOL = 0.10


class InvalidLadderError(ValueError):
    pass


# -- test families --------------------------------------------------------

@dataclass
class TestFamily:
    """Deterministic family of grid functions.

    ``ladder`` holds radii for ``ball_indicators``, exponents for
    ``power_decay`` and widths for ``gaussian``; ``bmo_log`` has one member.
    """

    __test__ = False  # keep pytest from collecting this class

    generator: str
    ladder: tuple
    grid: dict
    members: list = field(default_factory=list)

    @property
    def functions(self) -> List[GridFunction]:
        return [m[0] for m in self.members]

    @property
    def labels(self) -> List[str]:
        return [m[1] for m in self.members]

    def at_resolution(self, resolution) -> "TestFamily":
        grid = dict(self.grid, resolution=resolution)
        return make_test_family({"generator": self.generator, "ladder": list(self.ladder), "grid": grid})


def make_test_family(spec: dict) -> TestFamily:
    gen = spec.get("generator")
    if gen not in GENERATORS:
        raise ValueError(f"unknown family generator {gen!r}")
    ladder = tuple(float(v) for v in spec.get("ladder", [0.0] if gen == "bmo_log" else []))
    if not ladder:
        raise InvalidLadderError("family ladder is empty")
    grid_spec = dict(spec.get("grid", {}))
    base = grid_from_spec(grid_spec)
    members = []
    if gen == "ball_indicators":
        for r in ladder:
            members.append((char_ball(base, r), f"chi_B(0,{r:g})"))
    elif gen == "power_decay":
        for beta in ladder:
            members.append((power_decay(base, beta), f"|x|^-{beta:g}"))
    elif gen == "gaussian":
        for w in ladder:
            members.append((gaussian(base, w), f"gauss(width={w:g})"))
    else:
        members.append((log_bmo(base), "log|x|"))
    return TestFamily(gen, ladder, grid_spec, members)


# -- operator-norm ratios -------------------------------------------------

@dataclass
class RatioStats:
    labels: list
    ratios: list
    max_ratio: float
    resolution: tuple
    alt_ratios: list
    alt_max_ratio: Optional[float]
    alt_resolution: Optional[tuple]
    stable: bool
    spread: float  # max/min of the member ratios
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "ratios": [float(v) for v in self.ratios],
            "max_ratio": float(self.max_ratio),
            "resolution": list(self.resolution),
            "alt_ratios": [float(v) for v in self.alt_ratios],
            "alt_max_ratio": None if self.alt_max_ratio is None else float(self.alt_max_ratio),
            "alt_resolution": None if self.alt_resolution is None else list(self.alt_resolution),
            "stable": bool(self.stable),
            "spread": float(self.spread),
            "notes": list(self.notes),
        }


def _member_ratios(op: OperatorSpec, source, target, family: TestFamily, weak_target, balls):
    phi, w1 = source
    psi, w2 = target
    ratios, labels, notes = [], [], []
    for f, label in family.members:
        src = orlicz_morrey_norm(f, phi, w1, balls)
        if not src > 0:
            notes.append(f"{label}: zero source norm, skipped")
            continue
        tgt = orlicz_morrey_norm(op.apply(f), psi, w2, balls, weak=weak_target)
        ratios.append(tgt / src)
        labels.append(label)
    return ratios, labels, notes


def estimate_operator_norm_ratio(op: OperatorSpec, source, target, family: TestFamily,
                                 weak_target: bool = False, ball_family: Optional[BallFamily] = None,
                                 alt_resolution=None, stability_rtol: float = STABILITY_RTOL) -> RatioStats:
    """Per-member ratios ``||T f||_target / ||f||_source`` and their maximum.

    ``source`` and ``target`` are ``(YoungFunction, WeightSpec)`` pairs. The
    ball family is fixed in physical units (built from the first member's
    grid unless given) and reused at ``alt_resolution`` (default: double),
    where the family is regenerated to set the stability flag.
    """
    if not family.members:
        raise InvalidLadderError("empty family")
    balls = ball_family or BallFamily.for_grid(family.functions[0])
    ratios, labels, notes = _member_ratios(op, source, target, family, weak_target, balls)
    if not ratios:
        raise ValueError("every member has zero source norm")
    res = tuple(family.functions[0].shape)
    if alt_resolution is None:
        alt_resolution = [2 * s for s in res]
    alt = family.at_resolution(list(np.atleast_1d(alt_resolution)))
    alt_ratios, _, _ = _member_ratios(op, source, target, alt, weak_target, balls)
    mx = max(ratios)
    alt_mx = max(alt_ratios) if alt_ratios else None
    stable = alt_mx is not None and math.isfinite(mx) and abs(alt_mx - mx) <= stability_rtol * mx
    positive = [r for r in ratios if r > 0]
    spread = max(positive) / min(positive) if positive else math.inf
    return RatioStats(labels, ratios, mx, res, alt_ratios, alt_mx, tuple(alt.functions[0].shape),
                      bool(stable), spread, notes)


# -- local estimates ------------------------------------------------------

@dataclass
class LocalEstimate:
    lemma: str
    lhs: float
    rhs: float
    ratio: float
    ball: tuple


def _t_ladder(r, t_max, ratio=math.sqrt(2.0)):
    # radii t > 2r
    return geometric_radii(2.0 * r * ratio, max(t_max, 2.0 * r * ratio), ratio)


def _check_preconditions(lemma, phi, psi, alpha, n):
    if lemma == "commutator":
        for name, func in (("phi", phi), ("psi", psi)):
            idx = classify(func).indices
            if idx is None or not (1 < idx.a_index <= idx.b_index < math.inf):
                raise ValueError(f"precondition violated: indices of {name} must satisfy 1 < a <= b < inf")
        return
    strength = "strong" if lemma == "frmax_strong" else "weak"
    rep = check_cianchi_frmax(phi, psi, alpha, n, strength)
    if not rep.holds:
        raise ValueError(f"precondition violated: cianchi_frmax_{strength} is {rep.verdict}")


def local_rhs(f: GridFunction, phi: YoungFunction, psi: YoungFunction, ball: Ball, log_factor: bool,
              t_max: Optional[float] = None) -> float:
    """``Psi^{-1}(r^-n)^-1 sup_{t>2r} [1 + ln(t/r)] Psi^{-1}(t^-n) ||f||_{L^Phi(B(x,t))}``."""
    r, n = ball.radius, f.n
    t_max = 2.0 * f.diameter if t_max is None else t_max
    best = 0.0
    for t in _t_ladder(r, t_max):
        val = float(psi.inverse(t ** (-n))) * luxemburg_norm(f, phi, Ball(ball.center, t))
        if log_factor:
            val *= 1.0 + math.log(t / r)
        best = max(best, val)
    return best / float(psi.inverse(r ** (-n)))


def verify_local_estimate(lemma: str, f: GridFunction, b: Optional[GridFunction], phi: YoungFunction,
                          psi: YoungFunction, alpha: float, ball: Ball, radii=None, b_norm: Optional[float] = None,
                          check: bool = True, image: Optional[GridFunction] = None) -> LocalEstimate:
    """LHS / RHS of the local estimate for ``M_alpha`` (strong or weak) or
    for the commutator ``M_{b,alpha}`` (with the log factor and ``||b||_*``).

    ``image`` may carry a precomputed operator output for ``f``.
    """
    if lemma not in ("frmax_strong", "frmax_weak", "commutator"):
        raise ValueError(f"unknown lemma {lemma!r}")
    if lemma == "commutator" and b is None:
        raise ValueError("commutator mode needs b")
    if check:
        _check_preconditions(lemma, phi, psi, alpha, f.n)
    radii = default_radii(f) if radii is None else radii
    if image is None:
        image = (commutator_frac_maximal(f, b, alpha, radii) if lemma == "commutator"
                 else fractional_maximal(f, alpha, radii))
    norm = weak_luxemburg_norm if lemma == "frmax_weak" else luxemburg_norm
    lhs = norm(image, psi, ball)
    rhs = local_rhs(f, phi, psi, ball, log_factor=lemma == "commutator")
    if lemma == "commutator":
        rhs *= bmo_norm(b, BallFamily.for_grid(b)) if b_norm is None else b_norm
    if lhs == 0:
        ratio = 0.0
    else:
        ratio = lhs / rhs if rhs > 0 else math.inf
    return LocalEstimate(lemma, lhs, rhs, ratio, (ball.center, ball.radius))


def local_estimate_family(lemma, functions, b, phi, psi, alpha, balls, radii=None, check=True):
    """Ratios for every (member, ball) pair; returns ``(ratios, max/min)``."""
    if check:
        _check_preconditions(lemma, phi, psi, alpha, functions[0].n)
    b_norm = None
    if lemma == "commutator":
        b_norm = bmo_norm(b, BallFamily.for_grid(b))
    ratios = []
    for f in functions:
        rr = default_radii(f) if radii is None else radii
        image = (commutator_frac_maximal(f, b, alpha, rr) if lemma == "commutator"
                 else fractional_maximal(f, alpha, rr))
        for ball in balls:
            est = verify_local_estimate(lemma, f, b, phi, psi, alpha, ball, rr, b_norm, check=False, image=image)
            ratios.append(est.ratio)
    ratios = np.array(ratios)
    pos = ratios[ratios > 0]
    spread = float(pos.max() / pos.min()) if pos.size else math.inf
    return ratios, spread


# -- pointwise bridge -----------------------------------------------------

def bridge_ratios(f: GridFunction, b: GridFunction, alpha: float, radii=None) -> np.ndarray:
    """``M_{b,alpha} f / |b, I_alpha|(|f|)`` at every grid point (0 where both vanish)."""
    lhs = commutator_frac_maximal(f, b, alpha, radii).flat
    rhs = commutator_riesz(abs(f), b, alpha, "absolute").flat
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(lhs == 0, 0.0, lhs / rhs)
    return out


# -- baselines ------------------------------------------------------------

def load_baselines() -> dict:
    text = resources.files("orliczmorrey").joinpath("data/baselines.json").read_text()
    return json.loads(text)


__all__ = [
    "TestFamily", "make_test_family", "InvalidLadderError", "RatioStats", "estimate_operator_norm_ratio",
    "LocalEstimate", "verify_local_estimate", "local_estimate_family", "local_rhs", "bridge_ratios",
    "load_baselines", "STABILITY_RTOL",
]


# -- calibrated suites ----------------------------------------------------
# The frozen values in data/baselines.json come from ``calibrate()`` run on
# CALIBRATION_CONFIG; the same functions recompute them in the tests.

CALIBRATION_CONFIG = {
    "spanne": {"n": 1, "alpha": 0.25, "p": 2.0, "lam": 0.3,
               "grid": {"n": 1, "lower": -8.0, "upper": 8.0, "resolution": 256}, "alt_resolution": 512,
               "families": {"ball_indicators": [0.25, 0.5, 1.0], "power_decay": [0.1, 0.2, 0.3]}},
    "commutator": {"alpha": 0.25, "p": 2.0,
                   "grid": {"n": 1, "lower": -8.0, "upper": 8.0, "resolution": 256},
                   "indicator_radii": [0.5, 1.0, 2.0], "gaussian_widths": [0.5, 1.0, 2.0],
                   "ball_centers": [-1.0, 0.0, 2.0], "ball_radii": [0.25, 0.5, 1.0], "extra_ball": [0.5, 0.125]},
    "bridge": {"alpha": 0.5, "grid": {"n": 1, "lower": -1.0, "upper": 1.0, "resolution": 64}, "seeds": [0, 1, 2, 3, 4]},
    "bmo": {"resolutions": [128, 256, 512], "lower": -8.0, "upper": 8.0, "young_p": [2.0, 3.0],
            "nested_pairs": 50, "seed": 7},
}


def spanne_setup(cfg=None):
    from .sampled import Power
    from .young import power
    cfg = CALIBRATION_CONFIG["spanne"] if cfg is None else cfg
    n, a, p, lam = cfg["n"], cfg["alpha"], cfg["p"], cfg["lam"]
    q = 1.0 / (1.0 / p - a / n)
    mu = lam * q / p
    source = (power(p), Power((lam - n) / p))
    target = (power(q), Power((mu - n) / q))
    return OperatorSpec("frac_maximal", a), source, target


def spanne_suite(cfg=None) -> dict:
    cfg = CALIBRATION_CONFIG["spanne"] if cfg is None else cfg
    op, source, target = spanne_setup(cfg)
    out = {}
    for gen, ladder in cfg["families"].items():
        fam = make_test_family({"generator": gen, "ladder": ladder, "grid": cfg["grid"]})
        out[gen] = estimate_operator_norm_ratio(op, source, target, fam, alt_resolution=cfg["alt_resolution"])
    return out


def commutator_setup(cfg=None, resolution=None):
    cfg = CALIBRATION_CONFIG["commutator"] if cfg is None else cfg
    grid_spec = dict(cfg["grid"])
    if resolution is not None:
        grid_spec["resolution"] = resolution
    g = grid_from_spec(grid_spec)
    b = log_bmo(g)
    members = [char_ball(g, r) for r in cfg["indicator_radii"]] + [gaussian(g, w) for w in cfg["gaussian_widths"]]
    balls = [Ball((c,), r) for c in cfg["ball_centers"] for r in cfg["ball_radii"]]
    balls.append(Ball((cfg["extra_ball"][0],), cfg["extra_ball"][1]))
    return g, b, members, balls


def commutator_suite(cfg=None, resolution=None):
    from .young import power
    cfg = CALIBRATION_CONFIG["commutator"] if cfg is None else cfg
    _, b, members, balls = commutator_setup(cfg, resolution)
    a, p = cfg["alpha"], cfg["p"]
    q = 1.0 / (1.0 / p - a)
    return local_estimate_family("commutator", members, b, power(p), power(q), a, balls)


def bridge_pairs(cfg=None):
    cfg = CALIBRATION_CONFIG["bridge"] if cfg is None else cfg
    g = grid_from_spec(cfg["grid"])
    pairs = []
    for seed in cfg["seeds"]:
        rng = np.random.default_rng(seed)
        f = g.with_values(rng.standard_normal(g.shape))
        b = g.with_values(np.cumsum(rng.standard_normal(g.shape)) / 4.0)
        pairs.append((f, b))
    return pairs


def bridge_constant(cfg=None) -> float:
    cfg = CALIBRATION_CONFIG["bridge"] if cfg is None else cfg
    return float(max(bridge_ratios(f, b, cfg["alpha"]).max() for f, b in bridge_pairs(cfg)))


def _bmo_grid(cfg, res):
    return grid_from_spec({"n": 1, "lower": cfg["lower"], "upper": cfg["upper"], "resolution": res})


def bmo_suite(cfg=None) -> dict:
    """Measured ratios behind the John-Nirenberg, Orlicz-oscillation and
    nested-mean checks for ``b = log|x|``."""
    from .operators import ball_means, oscillation_norm, oscillations
    from .sampled import ball_norms
    from .young import power
    cfg = CALIBRATION_CONFIG["bmo"] if cfg is None else cfg
    out = {"bmo": [], "l2_over_bmo": [], "orlicz_over_bmo": {str(p): [] for p in cfg["young_p"]}}
    for res in cfg["resolutions"]:
        g = _bmo_grid(cfg, res)
        b = log_bmo(g)
        fam = BallFamily.for_grid(g)
        bmo = bmo_norm(b, fam)
        out["bmo"].append(bmo)
        out["l2_over_bmo"].append(oscillation_norm(b, fam, 2.0) / bmo)
        _, centers, radii = oscillations(b, fam, 1.0)
        means = ball_means(b, centers, radii)
        for p in cfg["young_p"]:
            phi = power(p)
            vals = []
            for c, r, m in zip(centers, radii, means):
                dev = b.with_values(b.values - m)
                vals.append(float(phi.inverse(r ** -1.0)) * float(ball_norms(dev, phi, c[None, :], np.array([r]))[0]))
            out["orlicz_over_bmo"][str(p)].append(max(vals) / bmo)
    g = _bmo_grid(cfg, cfg["resolutions"][1])
    b = log_bmo(g)
    bmo = bmo_norm(b, BallFamily.for_grid(g))
    rng = np.random.default_rng(cfg["seed"])
    h = float(g.h[0])
    centers = rng.uniform(-2.0, 2.0, cfg["nested_pairs"])
    r = h * 2.0 ** rng.uniform(1.0, 4.0, cfg["nested_pairs"])
    t = 2.0 * r * 2.0 ** rng.uniform(0.05, 4.0, cfg["nested_pairs"])
    mr = ball_means(b, centers[:, None], r)
    mt = ball_means(b, centers[:, None], t)
    out["nested_constants"] = (np.abs(mr - mt) / (bmo * np.log(t / r))).tolist()
    return out


def calibrate() -> dict:
    spanne = spanne_suite()
    _, spread = commutator_suite()
    bmo = bmo_suite()
    return {
        "config": CALIBRATION_CONFIG,
        "spanne_max_ratio": {k: v.max_ratio for k, v in spanne.items()},
        "commutator_spread": spread,
        "bridge_constant": bridge_constant(),
        "l2_over_bmo": [min(bmo["l2_over_bmo"]), max(bmo["l2_over_bmo"])],
        "orlicz_over_bmo": {k: [min(v), max(v)] for k, v in bmo["orlicz_over_bmo"].items()},
        "nested_constant": max(bmo["nested_constants"]),
    }


if __name__ == "__main__":  # pragma: no cover - one-off calibration
    import sys
    data = calibrate()
    path = sys.argv[1] if len(sys.argv) > 1 else "baselines.json"
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(json.dumps(data, indent=2, sort_keys=True))
