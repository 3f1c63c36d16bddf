"""Checkers for the sufficient conditions on (Phi, Psi) pairs and weight pairs.

Every condition quantifies over an unbounded range of radii. The checkers
evaluate it on a geometric lattice, extend the lattice twice and classify
the behaviour of the best constant:

* ``holds_with_constant``: the constant moves by less than ``holds_rtol``
  at the last extension;
* ``divergent``: the constant grows by at least ``diverge_factor`` from
  the first to the last lattice;
* ``no_witness_up_to_bound`` otherwise.

The inner essential bound over ``s in (t, inf)`` in the weight-pair
conditions is evaluated as an essential infimum of ``phi_1(s)/Phi^{-1}(s^-n)``
(the quantity ``1/||v_1||_{L_inf(t, inf)}`` of the supremal-operator
reduction).
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .quadrature import DivergentIntegralError, integral_from_zero
from .sampled import Reciprocal, WeightSpec, YoungInverse
from .young import YoungFunction, build_auxiliary, build_Q, conjugate, dominates_globally, inner_integrand

CONDITION_IDS = (
    "cianchi_frmax_weak", "cianchi_frmax_strong", "cianchi_pot_weak", "cianchi_pot_strong",
    "supremal_thm41", "pair_supremal", "pair_integral", "pair_supremal_log", "pair_integral_log",
)
HOLDS = "holds_with_constant"
NO_WITNESS = "no_witness_up_to_bound"
DIVERGENT = "divergent"


class PreconditionError(ValueError):
    """Inputs violate the stated precondition of a checker."""


@dataclass(frozen=True)
class Lattice:
    """Geometric radius lattice and the extension/verdict thresholds.

    The base lattice spans ``decades`` decades centred on 1; each extension
    multiplies the number of decades by ``extension`` (so both ends move
    outwards by the same factor in log scale).
    """

    decades: float = 8.0
    per_decade: int = 48
    extension: float = 4.0
    extensions: int = 2
    holds_rtol: float = 0.01
    diverge_factor: float = 10.0

    def grids(self):
        out = []
        d = self.decades
        for _ in range(self.extensions + 1):
            count = int(round(d * self.per_decade)) + 1
            out.append(10.0 ** np.linspace(-d / 2, d / 2, count))
            d *= self.extension
        return out


@dataclass
class ConditionReport:
    condition_id: str
    verdict: str
    constant: Optional[float] = None
    trace: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.condition_id not in CONDITION_IDS:
            raise ValueError(f"unknown condition {self.condition_id!r}")
        if self.verdict == HOLDS and (self.constant is None or not math.isfinite(self.constant)):
            raise ValueError("a holding condition needs a finite constant")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_dict(self) -> dict:
        return _jsonable(asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def classify_constants(constants, lattice: Lattice) -> str:
    c = [float(v) for v in constants]
    if any(not math.isfinite(v) for v in c):
        return DIVERGENT
    if c[0] > 0 and c[-1] >= lattice.diverge_factor * c[0]:
        return DIVERGENT
    # stability is judged on the last extension; earlier lattices may still
    # be resolving slowly decaying tails
    a, b = c[-2], c[-1]
    return HOLDS if abs(b - a) <= lattice.holds_rtol * max(abs(a), 1e-300) else NO_WITNESS


def _report(cid, constants, lattice, trace):
    verdict = classify_constants(constants, lattice)
    trace = dict(trace)
    trace.setdefault("constants", [float(c) for c in constants])
    trace.setdefault("ranges", [[float(g[0]), float(g[-1])] for g in lattice.grids()])
    trace.setdefault("truncation", "suprema, infima and integrals over (t, inf) are cut at the top of each range")
    return ConditionReport(cid, verdict, float(constants[-1]) if verdict == HOLDS else
                           (float(constants[-1]) if math.isfinite(constants[-1]) else None), trace)


def _w(weight, t):
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        return np.broadcast_to(np.asarray(weight(t), dtype=float), t.shape).copy()


# -- supremal operator ----------------------------------------------------

def supremal_operator(u, g, grid, t):
    """``(S_u g)(t) = max over grid samples s > t of u(s)|g(s)|`` (0 if none).

    ``g`` holds samples on ``grid``; ``t`` may be an array.
    """
    grid = np.asarray(grid, dtype=float)
    vals = _w(u, grid) * np.abs(np.asarray(g, dtype=float))
    # suffix maxima: suf[k] = max(vals[k:])
    suf = np.maximum.accumulate(vals[::-1])[::-1]
    suf = np.concatenate([suf, [0.0]])
    k = np.searchsorted(grid, np.asarray(t, dtype=float), side="right")
    out = suf[k]
    return out if np.ndim(out) else float(out)


def _strict_suffix(vals, op):
    # res[i] = op over vals[i+1:], last entry left as nan
    acc = op.accumulate(vals[::-1])[::-1]
    return np.concatenate([acc[1:], [np.nan]])


def check_supremal_thm41(u: WeightSpec, v1: WeightSpec, v2: WeightSpec,
                         lattice: Lattice = Lattice()) -> ConditionReport:
    """``sup_t v2(t) (S_u (1/||v1||_{L_inf(., inf)}))(t) < inf`` on the lattice."""
    constants, worst = [], []
    for t in lattice.grids():
        v1s = _w(v1, t)
        norm_v1 = _strict_suffix(np.abs(v1s), np.maximum)
        inner = norm_v1[:-1]
        if np.any(inner == 0) or np.any(~np.isfinite(inner)):
            bad = float(t[int(np.argmax((inner == 0) | ~np.isfinite(inner)))])
            raise PreconditionError(f"||v1||_L_inf(t, inf) is 0 or inf at t = {bad:g}")
        g = np.concatenate([1.0 / inner, [0.0]])
        su = _strict_suffix(_w(u, t) * g, np.maximum)
        expr = _w(v2, t)[:-2] * su[:-2]
        k = int(np.nanargmax(expr))
        constants.append(float(expr[k]))
        worst.append(float(t[k]))
    return _report("supremal_thm41", constants, lattice, {"argmax_t": worst})


def induced_triple(phi: YoungFunction, psi: YoungFunction, w1: WeightSpec, w2: WeightSpec, n: int):
    """Weights ``(u, v1, v2)`` through which the pair condition reduces to
    the supremal-operator condition."""
    u = YoungInverse(psi, -float(n))
    v1 = YoungInverse(phi, -float(n)) / w1
    v2 = Reciprocal(w2)
    return u, v1, v2


# -- weight-pair conditions ----------------------------------------------

def _inner_profile(phi, psi, w1, n, t):
    """``G(t) = Psi^{-1}(t^-n) * ess inf_{s > t} w1(s) / Phi^{-1}(s^-n)``."""
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        ratio = _w(w1, t) / np.asarray(phi.inverse(t ** (-float(n))), dtype=float)
        inf_after = _strict_suffix(ratio, np.minimum)
        return np.asarray(psi.inverse(t ** (-float(n))), dtype=float) * inf_after


def _pair_lhs(phi, psi, w1, n, t, kind, log_factor):
    g = _inner_profile(phi, psi, w1, n, t)[:-1]
    tt = t[:-1]
    lt = np.log(tt)
    if kind == "supremal":
        if log_factor:
            lhs = kernels.sup_log_weighted(lt, np.nan_to_num(g, nan=0.0))
        else:
            lhs = _strict_suffix(g, np.maximum)
        return tt[:-1], lhs[:-1]
    # integral over (r, t_max] in d(log t), trapezoid rule, accumulated from the top
    du = np.diff(lt)
    seg0 = 0.5 * (g[1:] + g[:-1]) * du
    h0 = np.concatenate([np.cumsum(seg0[::-1])[::-1], [0.0]])
    if not log_factor:
        return tt[:-1], h0[:-1]
    gl = g * (lt - lt[0])
    seg1 = 0.5 * (gl[1:] + gl[:-1]) * du
    h1 = np.concatenate([np.cumsum(seg1[::-1])[::-1], [0.0]])
    # int (1 + ln t - ln r) G = (1 - (ln r - ln t0)) H0 + H1, shifted by ln t0
    lhs = (1.0 - (lt - lt[0])) * h0 + h1
    return tt[:-1], lhs[:-1]


def _check_pair(cid, phi, psi, w1, w2, n, kind, log_factor, lattice):
    constants, worst = [], []
    for t in lattice.grids():
        r, lhs = _pair_lhs(phi, psi, w1, n, t, kind, log_factor)
        ratio = lhs / _w(w2, r)
        if np.any(np.isnan(ratio)):
            raise PreconditionError("weights must be positive and finite on the lattice")
        k = int(np.argmax(ratio))
        constants.append(float(ratio[k]))
        worst.append(float(r[k]))
    return _report(cid, constants, lattice, {"argmax_r": worst, "log_factor": log_factor})


def check_pair_supremal(phi, psi, w1, w2, n: int, log_factor: bool = False,
                        lattice: Lattice = Lattice()) -> ConditionReport:
    """``sup_{r<t} [1 + ln(t/r)] Psi^{-1}(t^-n) ess inf_{s>t} w1(s)/Phi^{-1}(s^-n) <= C w2(r)``."""
    cid = "pair_supremal_log" if log_factor else "pair_supremal"
    return _check_pair(cid, phi, psi, w1, w2, n, "supremal", log_factor, lattice)


def check_pair_integral(phi, psi, w1, w2, n: int, log_factor: bool = False,
                        lattice: Lattice = Lattice()) -> ConditionReport:
    """``int_r^inf [1 + ln(t/r)] ess inf_{s>t} (w1/Phi^{-1}(s^-n)) Psi^{-1}(t^-n) dt/t <= C w2(r)``."""
    cid = "pair_integral_log" if log_factor else "pair_integral"
    return _check_pair(cid, phi, psi, w1, w2, n, "integral", log_factor, lattice)


# -- Orlicz-pair (Cianchi) conditions -------------------------------------

def _integral_at_zero(func: YoungFunction, p: float):
    """Verdict for ``int_0^1 func(t) / t^{1 + p'} dt < inf``."""
    est = integral_from_zero(inner_integrand(func, p), 1.0)
    return {"status": est.status, "value": est.value, "partial_sums": list(est.partial_sums)}


def _domination(big, small, c_max):
    d = dominates_globally(big, small, c_max=c_max)
    return {"holds": d.holds, "c": d.c, "c_max": d.c_max, "worst_s": d.worst_s}


def _combine(cid, parts, c_max):
    trace = {"checks": parts, "c_max": c_max}
    if any(p.get("status") in ("divergent", "unresolved") for p in parts.values()):
        return ConditionReport(cid, DIVERGENT, None, trace)
    doms = [p for p in parts.values() if "holds" in p]
    if all(p["holds"] for p in doms):
        return ConditionReport(cid, HOLDS, max((p["c"] for p in doms), default=1.0), trace)
    return ConditionReport(cid, NO_WITNESS, None, trace)


def _auxiliary(func, p, which, parts, key):
    try:
        return build_auxiliary(func, p, which)
    except DivergentIntegralError as exc:
        parts[key] = {"status": "divergent", "error": str(exc)}
        return None


def check_cianchi_frmax(phi: YoungFunction, psi: YoungFunction, alpha: float, n: int,
                        strength: str = "strong", c_max: float = 1e6) -> ConditionReport:
    """weak: ``Phi`` dominates ``Q``; strong: ``int_0^1 Psi(t)/t^{1+n/(n-alpha)} < inf``
    and ``Phi`` dominates ``Psi_{n/alpha}``."""
    if not 0 <= alpha < n:
        raise PreconditionError("alpha out of range")
    parts = {}
    if strength == "weak":
        parts["phi_dominates_Q"] = _domination(phi, build_Q(psi, alpha, n), c_max)
        return _combine("cianchi_frmax_weak", parts, c_max)
    if strength != "strong":
        raise ValueError("strength must be 'weak' or 'strong'")
    p = math.inf if alpha == 0 else n / alpha
    parts["psi_integral"] = _integral_at_zero(psi, p)
    if parts["psi_integral"]["status"] == "converged":
        aux = _auxiliary(psi, p, "psi_p", parts, "psi_p")
        if aux is not None:
            parts["phi_dominates_psi_p"] = _domination(phi, aux, c_max)
    return _combine("cianchi_frmax_strong", parts, c_max)


def check_cianchi_potential(phi: YoungFunction, psi: YoungFunction, alpha: float, n: int,
                            strength: str = "strong", c_max: float = 1e6) -> ConditionReport:
    """weak: ``int_0^1 conj(Phi)(t)/t^{1+n/(n-alpha)} < inf`` and ``Phi_{n/alpha}``
    dominates ``Psi``; strong additionally needs the same integral of ``Psi``
    and ``Phi`` dominating ``Psi_{n/alpha}``."""
    if not 0 < alpha < n:
        raise PreconditionError("alpha out of range")
    if strength not in ("weak", "strong"):
        raise ValueError("strength must be 'weak' or 'strong'")
    p = n / alpha
    parts = {}
    phi_t = conjugate(phi)
    parts["conj_phi_integral"] = _integral_at_zero(phi_t, p)
    if strength == "strong":
        parts["psi_integral"] = _integral_at_zero(psi, p)
    if any(v["status"] != "converged" for v in parts.values()):
        return _combine(f"cianchi_pot_{strength}", parts, c_max)
    aux_phi = _auxiliary(phi, p, "phi_p", parts, "phi_p")
    if aux_phi is not None:
        parts["phi_p_dominates_psi"] = _domination(aux_phi, psi, c_max)
    if strength == "strong":
        aux_psi = _auxiliary(psi, p, "psi_p", parts, "psi_p")
        if aux_psi is not None:
            parts["phi_dominates_psi_p"] = _domination(phi, aux_psi, c_max)
    return _combine(f"cianchi_pot_{strength}", parts, c_max)


__all__ = [
    "CONDITION_IDS", "HOLDS", "NO_WITNESS", "DIVERGENT", "PreconditionError", "Lattice",
    "ConditionReport", "classify_constants", "supremal_operator", "check_supremal_thm41",
    "induced_triple", "check_pair_supremal", "check_pair_integral", "check_cianchi_frmax",
    "check_cianchi_potential",
]
