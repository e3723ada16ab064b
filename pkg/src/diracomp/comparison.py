"""Ordering checks between two attractive potentials sharing one sector.

Seven checks are implemented, numbered 1..7.  Each asserts: if certain
weighted cumulative integrals of V_b - V_a stay nonnegative on [0, inf),
then the nodeless-state energies order as E_a <= E_b.  The weights are

    1: 1                                  (line, no monotonicity needed)
    2: phi1_base and t * phi2_base        (line, monotone wells)
    3: r^(2|kd|)                          (d > 1, bounded wells)
    4: psi1_base r^|kd|, -psi2_base r^(|kd|+1)   (bounded + monotone)
    5: psi1_base r^|kd|, -psi2_base r^|kd|       (V = -f(r)/r wells)
    6: psi1_base r^|kd|, -psi2_base r^(|kd|+1)   (milder-than-1/r wells)
    7: same as 4, classes may be mixed per potential

"base" names the problem (a or b) whose solved or closed-form wave
functions enter the weights.  Corollary shortcuts replace the everywhere
check by a final-value test (one crossing), a value at the second
crossing (two crossings), or a nonincreasing-lobe test (many crossings).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .coulomb import CoulombGround, coulomb_ground
from .errors import ConfigError, QuadratureError
from .model import (KIND_BOUNDED, KIND_COULOMB_LIKE, KIND_SUB_COULOMB,
                    KIND_UNSUPPORTED, AngularSector, Classification, Geometry,
                    OneDim, Potential, Problem, classify, evaluate)
from .quadrature import (CumulativeCurve, DecayHint, cumulative_integral,
                         integrate_to_infinity, refine_root)
from .solver import ShootingConfig, WaveSolution, solve_ground


class WeightKind(Enum):
    UNIT = "unit"
    PHI1_BASE = "phi1_base"
    T_PHI2_BASE = "t_phi2_base"
    R2K = "r2k"
    PSI1_RK = "psi1_rk"
    NEG_PSI2_RK1 = "neg_psi2_rk1"
    NEG_PSI2_RK = "neg_psi2_rk"


THEOREM_WEIGHTS: dict[int, tuple[WeightKind, ...]] = {
    1: (WeightKind.UNIT,),
    2: (WeightKind.PHI1_BASE, WeightKind.T_PHI2_BASE),
    3: (WeightKind.R2K,),
    4: (WeightKind.PSI1_RK, WeightKind.NEG_PSI2_RK1),
    5: (WeightKind.PSI1_RK, WeightKind.NEG_PSI2_RK),
    6: (WeightKind.PSI1_RK, WeightKind.NEG_PSI2_RK1),
    7: (WeightKind.PSI1_RK, WeightKind.NEG_PSI2_RK1),
}

ONE_DIM_THEOREMS = (1, 2)
RADIAL_THEOREMS = (3, 4, 5, 6, 7)


@dataclass(frozen=True)
class ComparisonCase:
    """Two potentials compared in a common sector at a common mass."""

    mass: float
    geometry: Geometry
    potential_a: Potential
    potential_b: Potential
    base: str = "auto"

    def __post_init__(self):
        if self.base not in ("auto", "a", "b"):
            raise ConfigError("base must be 'auto', 'a', or 'b'")
        # constructing the problems validates mass/geometry/potential fit
        self.problem("a")
        self.problem("b")

    def problem(self, side: str) -> Problem:
        pot = self.potential_a if side == "a" else self.potential_b
        return Problem(self.mass, self.geometry, pot)

    @property
    def one_dim(self) -> bool:
        return isinstance(self.geometry, OneDim)

    def as_dict(self) -> dict:
        return {
            "mass": self.mass,
            "geometry": self.geometry.as_dict(),
            "potential_a": self.potential_a.as_dict(),
            "potential_b": self.potential_b.as_dict(),
            "base": self.base,
        }


@dataclass(frozen=True)
class Applicability:
    applicable: bool
    failed: tuple[str, ...]


@dataclass(frozen=True)
class OscStructure:
    """Difference of a matched cubic-phase pair: V_b - V_a =
    coeff * sin(z) / z^2 with z = cubic * r^3 + shift."""

    coeff: float
    cubic: float
    shift: float

    def boundaries(self, n: int) -> np.ndarray:
        """First n sign-change radii: z = k pi with k pi > shift."""
        k0 = math.floor(self.shift / math.pi) + 1
        ks = np.arange(k0, k0 + n, dtype=float)
        return ((ks * math.pi - self.shift) / self.cubic) ** (1.0 / 3.0)

    def z_of(self, r):
        return self.cubic * np.asarray(r, dtype=float) ** 3 + self.shift


@dataclass(frozen=True)
class CrossingSet:
    """Sign changes of V_b - V_a on (0, r_hi)."""

    points: tuple[float, ...]
    first_sign: int
    r_hi: float
    oscillatory: bool = False
    osc: OscStructure | None = None


@dataclass
class TheoremVerdict:
    theorem: int
    mode: str  # "theorem" or "corollary"
    applicable: bool
    failed_conditions: tuple[str, ...]
    base: str
    weights: tuple[WeightKind, ...]
    curves: tuple[CumulativeCurve, ...]
    curve_min: float | None
    condition_holds: bool | None
    tol_cond: float | None
    predicted: str
    measured: tuple[float, float] | None
    consistent: bool
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "mode": self.mode,
            "applicable": self.applicable,
            "failed_conditions": list(self.failed_conditions),
            "base": self.base,
            "weights": [w.value for w in self.weights],
            "condition_holds": self.condition_holds,
            "curve_min": self.curve_min,
            "tol_cond": self.tol_cond,
            "predicted": self.predicted,
            "measured": (None if self.measured is None else
                         {"E_a": self.measured[0], "E_b": self.measured[1]}),
            "consistent": self.consistent,
            "details": self.details,
        }


CorollaryVerdict = TheoremVerdict


# ---------------------------------------------------------------- gates

def _f_profile_ok(p: Potential, scale: float) -> bool:
    """-r V(r) nonincreasing on a sampled grid (1/r-class condition)."""
    rs = np.geomspace(1e-8 * scale, 80.0 * scale, 400)
    f = -rs * evaluate(p, rs)
    tol = 1e-9 * max(float(np.max(np.abs(f))), 1e-300)
    return bool(np.all(np.diff(f) <= tol))


def _class_gate_radial7(tag: str, p: Potential, cls: Classification,
                        kd: float) -> list[str]:
    fails: list[str] = []
    if cls.kind == KIND_BOUNDED:
        if not cls.monotone:
            fails.append(f"{tag}: bounded class requires a nondecreasing well")
    elif cls.kind == KIND_COULOMB_LIKE:
        if cls.f0 >= -kd:
            fails.append(f"{tag}: coupling f0 = {cls.f0:.6g} is supercritical")
        if not _f_profile_ok(p, cls.scale):
            fails.append(f"{tag}: -rV(r) is not nonincreasing")
    elif cls.kind == KIND_SUB_COULOMB:
        if not cls.monotone:
            fails.append(f"{tag}: singular class requires a nondecreasing well")
    else:
        fails.append(f"{tag}: unsupported potential class")
    return fails


def check_preconditions(case: ComparisonCase, theorem: int) -> Applicability:
    """Hypothesis gates for one check, evaluated numerically.

    Depth limits (checks 1 and 3) and the nondecreasing requirement are
    enforced on both potentials.  Nonpositivity and decay at infinity are
    already guaranteed by potential validation and classification.
    """
    if theorem not in THEOREM_WEIGHTS:
        raise ConfigError(f"theorem must be 1..7, got {theorem}")
    fails: list[str] = []
    cls_a = classify(case.potential_a)
    cls_b = classify(case.potential_b)
    m = case.mass
    pairs = (("a", case.potential_a, cls_a), ("b", case.potential_b, cls_b))

    for tag, _, cls in pairs:
        if cls.kind == KIND_UNSUPPORTED:
            fails.append(f"{tag}: unsupported potential class")
    if fails:
        return Applicability(False, tuple(fails))

    if theorem in ONE_DIM_THEOREMS:
        if not case.one_dim:
            return Applicability(False, ("geometry: line problems only",))
        for tag, _, cls in pairs:
            if cls.kind != KIND_BOUNDED:
                fails.append(f"{tag}: well must be bounded at the origin")
                continue
            if theorem == 1 and -cls.v0 > 2.0 * m:
                fails.append(f"{tag}: depth {-cls.v0:.6g} exceeds 2m = {2 * m}")
            if theorem == 2 and not cls.monotone:
                fails.append(f"{tag}: well must be nondecreasing")
        return Applicability(not fails, tuple(fails))

    if case.one_dim:
        return Applicability(False, ("geometry: radial problems only",))
    kd = case.problem("a").kd
    if kd >= 0.0:
        return Applicability(False, ("sector: nodeless state needs kappa < 0",))

    if theorem == 3:
        for tag, _, cls in pairs:
            if cls.kind != KIND_BOUNDED:
                fails.append(f"{tag}: well must be bounded at the origin")
            elif cls.v0 < -2.0 * m:
                fails.append(f"{tag}: depth {-cls.v0:.6g} exceeds 2m = {2 * m}")
    elif theorem == 4:
        for tag, _, cls in pairs:
            if cls.kind != KIND_BOUNDED:
                fails.append(f"{tag}: well must be bounded at the origin")
            elif not cls.monotone:
                fails.append(f"{tag}: well must be nondecreasing")
    elif theorem == 5:
        for tag, p, cls in pairs:
            if cls.kind != KIND_COULOMB_LIKE:
                fails.append(f"{tag}: well must behave like -f(r)/r")
            else:
                if cls.f0 >= -kd:
                    fails.append(f"{tag}: coupling f0 = {cls.f0:.6g} "
                                 "is supercritical")
                if not _f_profile_ok(p, cls.scale):
                    fails.append(f"{tag}: -rV(r) is not nonincreasing")
    elif theorem == 6:
        for tag, _, cls in pairs:
            if cls.kind != KIND_SUB_COULOMB:
                fails.append(f"{tag}: well must be singular but milder "
                             "than 1/r")
            elif not cls.monotone:
                fails.append(f"{tag}: well must be nondecreasing")
    else:  # theorem 7, classes may differ per potential
        for tag, p, cls in pairs:
            fails.extend(_class_gate_radial7(tag, p, cls, kd))

    return Applicability(not fails, tuple(fails))


# ---------------------------------------------------------------- crossings

def _matched_osc(case: ComparisonCase) -> OscStructure | None:
    """Detect pairs whose difference is exactly coeff*sin(z)/z^2."""
    fa, fb = case.potential_a.family, case.potential_b.family
    involved = {"osc_cubic", "rational_cubic"}
    if fa not in involved or fb not in involved:
        return None
    if fa != "osc_cubic" and fb != "osc_cubic":
        return None

    def shape(p: Potential):
        # (envelope strength, envelope offset, cubic coef, wiggle amp,
        #  phase cubic, phase shift)
        if p.family == "osc_cubic":
            a, o, c, v, pc, ps = p.params
            return a, o, c, v, pc, ps
        a, o, c = p.params
        return a, o, c, 0.0, c, o

    aa, oa, ca, va, pca, psa = shape(case.potential_a)
    ab, ob, cb, vb, pcb, psb = shape(case.potential_b)
    close = lambda x, y: math.isclose(x, y, rel_tol=1e-12, abs_tol=0.0)
    # matched means: same envelope, and every cubic phase equals the
    # envelope argument, so z is one shared variable
    if not (close(aa, ab) and close(oa, ob) and close(ca, cb)):
        return None
    for pc, ps, v in ((pca, psa, va), (pcb, psb, vb)):
        if v != 0.0 and not (close(pc, ca) and close(ps, oa)):
            return None
    coeff = aa * (va - vb)
    return OscStructure(coeff=coeff, cubic=ca, shift=oa)


def _interval_sign(dv: Callable, lo: float, hi: float) -> int:
    xs = np.geomspace(max(lo, hi * 1e-8), hi * 0.999999, 41) if lo == 0.0 \
        else np.linspace(lo + 1e-6 * (hi - lo), hi - 1e-6 * (hi - lo), 41)
    vals = dv(xs)
    pos = int(np.sum(vals > 0))
    neg = int(np.sum(vals < 0))
    if pos and not neg:
        return 1
    if neg and not pos:
        return -1
    if not pos and not neg:
        return 0
    return 1 if pos >= neg else -1


def crossings(case: ComparisonCase, r_hi: float | None = None) -> CrossingSet:
    """All sign changes of V_b - V_a on (0, r_hi), sorted, plus the sign
    on the first interval.

    For matched cubic-phase pairs the zeros are taken analytically (the
    generic probe grid cannot resolve infinitely many oscillations); the
    first few hundred boundaries are returned and ``oscillatory`` is set.
    """
    pa, pb = case.potential_a, case.potential_b
    dv = lambda r: evaluate(pb, r) - evaluate(pa, r)

    osc = _matched_osc(case)
    if osc is not None:
        if osc.coeff == 0.0:
            hi = r_hi or 60.0 * classify(pa).scale
            return CrossingSet((), 0, hi, False, None)
        pts = osc.boundaries(256)
        hi = r_hi or float(pts[-1])
        sign0 = _interval_sign(dv, 0.0, float(pts[0]))
        return CrossingSet(tuple(float(x) for x in pts[pts <= hi]),
                           sign0, hi, True, osc)

    scale = max(classify(pa).scale, classify(pb).scale)
    hi = r_hi or 60.0 * scale
    dense = "osc_cubic" in (pa.family, pb.family)
    for _ in range(4):
        n_log = 800 if dense else 400
        xs = np.unique(np.concatenate([
            np.geomspace(1e-7 * scale, hi, n_log),
            np.linspace(hi / 400, hi, 400),
        ]))
        vals = dv(xs)
        roots: list[float] = []
        last = None
        for i in range(xs.size):
            if vals[i] == 0.0 or not np.isfinite(vals[i]):
                continue
            if last is not None and np.sign(vals[i]) != np.sign(vals[last]):
                roots.append(refine_root(dv, float(xs[last]), float(xs[i])))
            last = i
        # accept hi only if the tail beyond the last root has settled
        tail_lo = roots[-1] if roots else hi / 2
        probes = dv(np.array([hi, 1.4 * hi, 1.9 * hi, 2.6 * hi]))
        probes = probes[np.isfinite(probes) & (probes != 0.0)]
        if probes.size == 0 or np.all(np.sign(probes) == np.sign(probes[0])):
            cleaned: list[float] = []
            for r in roots:
                if not cleaned or r - cleaned[-1] > 1e-9 * max(scale, r):
                    cleaned.append(r)
            sign0 = _interval_sign(dv, 0.0, cleaned[0] if cleaned else hi)
            return CrossingSet(tuple(cleaned), sign0, hi, False, None)
        hi *= 2.0
    raise QuadratureError("sign of V_b - V_a does not settle at large r")


# ---------------------------------------------------------------- context

@dataclass(frozen=True)
class _BaseWaves:
    f1: Callable
    f2: Callable
    horizon: float
    decay_rate: float
    exact: bool


class _CaseContext:
    """Shared lazily-computed state for one comparison case."""

    def __init__(self, case: ComparisonCase,
                 config: ShootingConfig | None = None):
        self.case = case
        self.config = config or ShootingConfig()
        self.cls = {"a": classify(case.potential_a),
                    "b": classify(case.potential_b)}
        self._solutions: dict[str, WaveSolution] = {}
        self._curves: dict[WeightKind, "_CurveInfo"] = {}
        self._crossings: CrossingSet | None = None
        self._base_waves: _BaseWaves | None = None

    def solution(self, side: str) -> WaveSolution:
        if side not in self._solutions:
            self._solutions[side] = solve_ground(self.case.problem(side),
                                                 self.config)
        return self._solutions[side]

    def has_energies(self) -> bool:
        return "a" in self._solutions and "b" in self._solutions

    def energies(self) -> tuple[float, float]:
        return self.solution("a").energy, self.solution("b").energy

    def exact_ground(self, side: str) -> CoulombGround | None:
        pot = (self.case.potential_a if side == "a" else self.case.potential_b)
        geo = self.case.geometry
        if (pot.family == "coulomb" and isinstance(geo, AngularSector)
                and geo.kappa == -1.0 and pot.param("v") < 1.0):
            return coulomb_ground(self.case.mass, pot.param("v"))
        return None

    def base_side(self) -> str:
        if self.case.base in ("a", "b"):
            return self.case.base
        if self.exact_ground("a") is not None:
            return "a"
        if self.exact_ground("b") is not None:
            return "b"
        return "a"

    def base_waves(self) -> _BaseWaves:
        if self._base_waves is None:
            side = self.base_side()
            exact = self.exact_ground(side)
            if exact is not None:
                rate = self.case.mass * exact.alpha
                self._base_waves = _BaseWaves(
                    exact.psi1, exact.psi2, horizon=40.0 / rate,
                    decay_rate=rate, exact=True)
            else:
                sol = self.solution(side)
                f1, f2 = sol.psi_functions()
                self._base_waves = _BaseWaves(
                    f1, f2, horizon=sol.r_max,
                    decay_rate=max(sol.kappa_decay, 1e-12), exact=False)
        return self._base_waves

    def crossings(self) -> CrossingSet:
        if self._crossings is None:
            self._crossings = crossings(self.case)
        return self._crossings

    def curve(self, kind: WeightKind) -> "_CurveInfo":
        if kind not in self._curves:
            self._curves[kind] = _build_curve(self, kind)
        return self._curves[kind]


# ---------------------------------------------------------------- curves

@dataclass(frozen=True)
class _CurveInfo:
    kind: WeightKind
    curve: CumulativeCurve
    min_eff: float
    final_eff: float
    final_err: float
    tail_resolved: bool
    tail_note: str
    osc_prefactor: float | None = None


def _weight_fn(ctx: _CaseContext, kind: WeightKind) -> Callable:
    if kind == WeightKind.UNIT:
        return lambda r: np.ones_like(np.asarray(r, dtype=float))
    if kind == WeightKind.R2K:
        k2 = 2.0 * abs(ctx.case.problem("a").kd)
        return lambda r: np.asarray(r, dtype=float) ** k2
    waves = ctx.base_waves()
    if kind == WeightKind.PHI1_BASE:
        return waves.f1
    if kind == WeightKind.T_PHI2_BASE:
        return lambda r: np.asarray(r, dtype=float) * waves.f2(r)
    u = abs(ctx.case.problem("a").kd)
    if kind == WeightKind.PSI1_RK:
        return lambda r: waves.f1(r) * np.asarray(r, dtype=float) ** u
    if kind == WeightKind.NEG_PSI2_RK1:
        return lambda r: -waves.f2(r) * np.asarray(r, dtype=float) ** (u + 1.0)
    if kind == WeightKind.NEG_PSI2_RK:
        return lambda r: -waves.f2(r) * np.asarray(r, dtype=float) ** u
    raise ConfigError(f"unknown weight kind {kind}")


def _integrand(ctx: _CaseContext, kind: WeightKind) -> Callable:
    pa, pb = ctx.case.potential_a, ctx.case.potential_b
    w = _weight_fn(ctx, kind)
    return lambda r: (evaluate(pb, r) - evaluate(pa, r)) * w(r)


def _half_wave_boundaries(pot: Potential, lo: float, hi: float
                          ) -> np.ndarray | None:
    """Radii where a cubic-phase oscillation crosses zero on (lo, hi].

    Quadrature panels split at these points see at most half a wave, so
    a fixed Gauss rule resolves the oscillation exactly instead of
    aliasing it.  None when the potential does not oscillate.
    """
    if pot.family != "osc_cubic" or pot.params[3] == 0.0:
        return None
    cub, shift = pot.params[4], pot.params[5]
    k0 = int(math.floor((cub * lo ** 3 + shift) / math.pi)) + 1
    k1 = int(math.floor((cub * hi ** 3 + shift) / math.pi))
    if k1 < k0:
        return None
    if k1 - k0 > 2_000_000:
        raise QuadratureError(
            "oscillation too fast to resolve over the requested range",
            float(k1 - k0), 0.0)
    ks = np.arange(k0, k1 + 1, dtype=float)
    return np.cbrt((ks * math.pi - shift) / cub)


def _with_half_wave_points(case: ComparisonCase, grid: np.ndarray
                           ) -> tuple[np.ndarray, bool]:
    """Union the grid with both potentials' half-wave boundaries."""
    pieces = [grid]
    for pot in (case.potential_a, case.potential_b):
        b = _half_wave_boundaries(pot, float(grid[0]), float(grid[-1]))
        if b is not None:
            pieces.append(b)
    if len(pieces) == 1:
        return grid, False
    return np.unique(np.concatenate(pieces)), True


def _gauss_panel_cumulative(f: Callable, grid: np.ndarray, n: int = 12
                            ) -> CumulativeCurve:
    """Fixed-order Gauss cumulative over many thin single-signed panels.

    Used for the oscillatory analytic-boundary path, where adaptive
    quadrature per panel would do thousands of times more work than the
    smooth half-wave integrands require.
    """
    x, wts = np.polynomial.legendre.leggauss(n)
    lo, hi = grid[:-1], grid[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    panels = half * (vals @ wts)
    out = np.concatenate(([0.0], np.cumsum(panels)))
    err = 1e-14 * float(np.sum(np.abs(panels))) + 1e-300
    return CumulativeCurve(grid=np.asarray(grid, dtype=float), values=out,
                           error=err, neval=int(nodes.size))


def _osc_curve(ctx: _CaseContext, kind: WeightKind, osc: OscStructure
               ) -> _CurveInfo:
    """Curve for matched cubic-phase pairs with the r^2 weight, built on
    the analytic lobe boundaries.  The substitution z = cubic r^3 + shift
    maps each weighted lobe to prefactor * integral of sin z / z^2."""
    pref = abs(osc.coeff) / (3.0 * osc.cubic)
    f = _integrand(ctx, kind)
    # horizon: one-lobe tail bound 2 pref / z^2 below half the condition
    # tolerance, which itself scales with the first lobe ~ 0.1 pref
    tol_half = max(0.5e-8 * pref, 1e-13)
    z_stop = math.sqrt(2.0 * pref / tol_half)
    n_lobes = int(min(max(math.ceil((z_stop - osc.shift) / math.pi), 8), 8000))
    bounds = osc.boundaries(n_lobes + 1)
    first = np.geomspace(bounds[0] * 1e-4, bounds[0], 12)
    grid = np.unique(np.concatenate(([0.0], first, bounds)))
    curve = _gauss_panel_cumulative(f, grid)
    z_end = float(osc.z_of(bounds[-1]))
    tail = 2.0 * pref / (z_end * z_end)
    resolved = tail <= 2.0 * tol_half
    note = "" if resolved else (
        f"lobe cap reached; tail variation bound {tail:.3g}")
    return _CurveInfo(kind, curve,
                      min_eff=curve.minimum - tail,
                      final_eff=curve.final,
                      final_err=curve.error + tail,
                      tail_resolved=resolved, tail_note=note,
                      osc_prefactor=pref)


def _tail_analysis(ctx: _CaseContext, f: Callable, horizon: float
                   ) -> tuple[int, float | None, str]:
    """Sign and absolute-area bound of the integrand beyond the horizon.

    Returns (sign, bound, note); bound None means the tail area could not
    be bounded (divergent or unresolved), which is fatal only for a
    negative tail.
    """
    probes = f(np.array([1.0, 1.3, 1.7, 2.2, 3.0]) * horizon)
    probes = probes[np.isfinite(probes)]
    nontrivial = probes[np.abs(probes) > 1e-300]
    if nontrivial.size == 0:
        return 0, 0.0, ""
    signs = np.sign(nontrivial)
    if not np.all(signs == signs[0]):
        return 0, None, "integrand sign unresolved beyond horizon"
    s = int(signs[0])
    try:
        res = integrate_to_infinity(lambda r: np.abs(f(r)), horizon,
                                    tol=1e-11, decay=DecayHint())
        return s, res.value + res.error, ""
    except QuadratureError:
        return s, None, "tail area bound unattainable"


def _build_curve(ctx: _CaseContext, kind: WeightKind) -> _CurveInfo:
    cross = ctx.crossings()
    if cross.osc is not None and kind == WeightKind.R2K \
            and abs(ctx.case.problem("a").kd) == 1.0:
        return _osc_curve(ctx, kind, cross.osc)

    f = _integrand(ctx, kind)
    scale = max(ctx.cls["a"].scale, ctx.cls["b"].scale)
    wave_weighted = kind not in (WeightKind.UNIT, WeightKind.R2K)
    if wave_weighted:
        horizon = ctx.base_waves().horizon
    else:
        horizon = max(60.0 * scale,
                      (1.5 * cross.points[-1] + 10.0 * scale)
                      if cross.points else 0.0)
    pts = [x for x in cross.points if x < horizon]
    grid = np.unique(np.concatenate([
        [0.0],
        np.geomspace(1e-6 * scale, horizon, 140),
        np.linspace(horizon / 100, horizon, 100),
        np.asarray(pts, dtype=float),
    ]))
    grid, has_osc = _with_half_wave_points(ctx.case, grid)
    if has_osc:
        curve = _gauss_panel_cumulative(f, grid)
    else:
        curve = cumulative_integral(f, grid, tol=1e-11,
                                    grade_origin=not ctx.case.one_dim)

    if wave_weighted:
        # base waves carry exp(-kappa r); at the horizon the remaining
        # variation is ~ exp(-35) of the curve scale
        rate = ctx.base_waves().decay_rate
        edge = float(np.max(np.abs(f(np.array([0.97, 0.99, 1.0]) * horizon))))
        tail = 3.0 * edge / rate
        return _CurveInfo(kind, curve, curve.minimum - tail, curve.final,
                          curve.error + tail, True, "")

    sign, bound, note = _tail_analysis(ctx, f, horizon)
    if sign >= 0 and bound is not None:
        # nondecreasing tail: the on-grid minimum is global
        return _CurveInfo(kind, curve, curve.minimum, curve.final,
                          curve.error, True, note)
    if sign > 0 and bound is None:
        # positive divergent tail raises the curve; minimum still global,
        # final value is a lower bound
        return _CurveInfo(kind, curve, curve.minimum, curve.final,
                          curve.error, True, note)
    if sign < 0 and bound is not None:
        return _CurveInfo(kind, curve,
                          min(curve.minimum, curve.final - bound),
                          curve.final - bound, curve.error + bound, True, "")
    return _CurveInfo(kind, curve, -math.inf, -math.inf, math.inf, False,
                      note or "negative tail unbounded")


def weighted_cumulative(case: ComparisonCase, kind: WeightKind,
                        grid=None, config: ShootingConfig | None = None
                        ) -> CumulativeCurve:
    """Cumulative integral of (V_b - V_a) times the requested weight.

    With no grid, a composite log+linear grid to an adaptive horizon is
    used (crossings inserted as grid points).  Wave-function weights use
    the base problem's solution, or the closed form when one exists.
    """
    ctx = _CaseContext(case, config)
    if grid is None:
        return ctx.curve(kind).curve
    f = _integrand(ctx, kind)
    grid = np.asarray(grid, dtype=float)
    return cumulative_integral(f, grid, tol=1e-11,
                               grade_origin=not case.one_dim)


# ---------------------------------------------------------------- verdicts

def _tol_cond(infos: tuple[_CurveInfo, ...]) -> float:
    top = 0.0
    for info in infos:
        top = max(top, float(np.max(np.abs(info.curve.values))))
    return max(1e-7 * top, 1e-12)


def _finish_verdict(ctx: _CaseContext, theorem: int, mode: str,
                    app: Applicability, infos: tuple[_CurveInfo, ...],
                    condition: bool | None, curve_min: float | None,
                    tol: float | None, details: dict) -> TheoremVerdict:
    measured = None
    if app.applicable or ctx.has_energies():
        ea, eb = ctx.energies()
        measured = (ea, eb)
    etol = 10.0 * ctx.config.energy_tol * max(1.0, ctx.case.mass)
    holds = bool(app.applicable and condition)
    consistent = not (holds and measured is not None
                      and measured[0] > measured[1] + etol)
    return TheoremVerdict(
        theorem=theorem, mode=mode,
        applicable=app.applicable, failed_conditions=app.failed,
        base=ctx.base_side() if app.applicable else ctx.case.base,
        weights=THEOREM_WEIGHTS[theorem],
        curves=tuple(i.curve for i in infos),
        curve_min=curve_min, condition_holds=condition if app.applicable
        else None,
        tol_cond=tol,
        predicted="E_a <= E_b" if holds else "inconclusive",
        measured=measured, consistent=consistent, details=details)


def check_theorem(case: ComparisonCase, theorem: int,
                  config: ShootingConfig | None = None,
                  _ctx: _CaseContext | None = None) -> TheoremVerdict:
    """Full-curve check: every weighted cumulative stays >= -tol_cond."""
    ctx = _ctx or _CaseContext(case, config)
    app = check_preconditions(case, theorem)
    if not app.applicable:
        return _finish_verdict(ctx, theorem, "theorem", app, (), None, None,
                               None, {})
    infos = tuple(ctx.curve(k) for k in THEOREM_WEIGHTS[theorem])
    tol = _tol_cond(infos)
    unresolved = [i.tail_note for i in infos if not i.tail_resolved]
    curve_min = min(i.min_eff for i in infos)
    condition = bool(curve_min >= -tol) and not unresolved
    details: dict = {
        "curve_final": [i.final_eff for i in infos],
        "tail_notes": [i.tail_note for i in infos if i.tail_note],
    }
    return _finish_verdict(ctx, theorem, "theorem", app, infos, condition,
                           curve_min, tol, details)


def _lobe_values(info: _CurveInfo, boundaries: tuple[float, ...],
                 horizon: float) -> list[float]:
    """Absolute weighted areas between consecutive sign changes, with the
    leading [0, r_1] lobe first and the post-last-crossing stretch last."""
    edges = [0.0, *boundaries, horizon]
    vals = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        vals.append(abs(info.curve.value_at(hi) - info.curve.value_at(lo)))
    return vals


def check_corollary(case: ComparisonCase, theorem: int,
                    config: ShootingConfig | None = None,
                    _ctx: _CaseContext | None = None) -> TheoremVerdict:
    """Shortcut check matched to the crossing count of V_b - V_a.

    0 crossings: the sign of the difference decides directly.  1 crossing:
    every curve's final value must be nonnegative.  2 crossings: every
    curve's value at the second crossing must be nonnegative.  3 or more
    (including matched oscillatory pairs): the absolute lobe areas of
    every curve, leading lobe included, must be nonincreasing.  All
    branches additionally require V_a <= V_b on the first interval.
    """
    ctx = _ctx or _CaseContext(case, config)
    app = check_preconditions(case, theorem)
    if not app.applicable:
        return _finish_verdict(ctx, theorem, "corollary", app, (), None,
                               None, None, {})
    cross = ctx.crossings()
    n = len(cross.points)
    details: dict = {"crossings": list(cross.points[:16]),
                     "n_crossings": ("oscillatory" if cross.oscillatory
                                     else n),
                     "first_sign": cross.first_sign}
    infos = tuple(ctx.curve(k) for k in THEOREM_WEIGHTS[theorem])
    tol = _tol_cond(infos)

    if n > 0 and cross.first_sign < 0:
        details["reason"] = "V_b < V_a on the first interval"
        return _finish_verdict(ctx, theorem, "corollary", app, infos, False,
                               min(i.min_eff for i in infos), tol, details)

    if cross.oscillatory or n >= 3:
        ok = True
        all_lobes: list[list[float]] = []
        for info in infos:
            if not info.tail_resolved:
                ok = False
                details.setdefault("reason", info.tail_note)
                continue
            bounds = cross.points if not cross.oscillatory else tuple(
                float(x) for x in
                cross.osc.boundaries(len(info.curve.grid))
                if x <= info.curve.grid[-1])
            lobes = _lobe_values(info, bounds, float(info.curve.grid[-1]))
            if info.osc_prefactor:
                lobes = [v / info.osc_prefactor for v in lobes]
            all_lobes.append(lobes)
            slack = max(1e-9 * max(lobes, default=0.0),
                        10.0 * info.curve.error)
            if any(b > a + slack for a, b in zip(lobes[:-1], lobes[1:])):
                ok = False
        details["lobe_areas"] = [ls[:12] for ls in all_lobes]
        condition = ok
        cmin = min(i.min_eff for i in infos)
    elif n == 2:
        x2 = cross.points[1]
        at_x2 = [float(i.curve.value_at(x2)) for i in infos]
        details["curve_at_x2"] = at_x2
        condition = all(v >= -tol for v in at_x2)
        cmin = min(at_x2)
    elif n == 1:
        finals = [i.final_eff for i in infos]
        details["curve_final"] = finals
        condition = all(i.tail_resolved for i in infos) and \
            all(v >= -tol for v in finals)
        cmin = min(finals)
    else:  # no crossings: pointwise ordering decides
        condition = cross.first_sign >= 0
        cmin = min(i.min_eff for i in infos)
        if not condition:
            details["reason"] = "V_b < V_a everywhere"
    return _finish_verdict(ctx, theorem, "corollary", app, infos, condition,
                           cmin, tol, details)


# ---------------------------------------------------------------- identity

def verify_identity(case: ComparisonCase,
                    sol_a: WaveSolution | None = None,
                    sol_b: WaveSolution | None = None,
                    config: ShootingConfig | None = None) -> float:
    """Relative residual of the two-problem energy-shift identity

        (E_b - E_a) Int S dr = Int (V_b - V_a) S dr,
        S = psi1_a psi1_b + psi2_a psi2_b,

    evaluated with per-panel Gauss rules on the union of both solution
    grids, refined by the analytic half-wave boundaries of any cubic
    phase member so the oscillation is resolved rather than aliased.
    Exact in the continuum; the returned residual measures solver +
    quadrature error.
    """
    if sol_a is None or sol_b is None:
        ctx = _CaseContext(case, config)
        sol_a = sol_a or ctx.solution("a")
        sol_b = sol_b or ctx.solution("b")
    lo = max(sol_a.r_min, sol_b.r_min)
    hi = min(sol_a.r_max, sol_b.r_max)
    grid = np.union1d(sol_a.r, sol_b.r)
    grid = grid[(grid >= lo) & (grid <= hi)]
    pieces = [grid]
    for pot in (case.potential_a, case.potential_b):
        if pot.family == "osc_cubic" and pot.params[3] != 0.0:
            cub, shift = pot.params[4], pot.params[5]
            k0 = int(math.floor((cub * lo ** 3 + shift) / math.pi)) + 1
            k1 = int(math.floor((cub * hi ** 3 + shift) / math.pi))
            if k1 >= k0:
                ks = np.arange(k0, k1 + 1, dtype=float)
                pieces.append(np.cbrt((ks * math.pi - shift) / cub))
    if len(pieces) > 1:
        grid = np.unique(np.concatenate(pieces))
    f1a, f2a = sol_a.psi_functions()
    f1b, f2b = sol_b.psi_functions()

    def overlap(r: np.ndarray) -> np.ndarray:
        return f1a(r) * f1b(r) + f2a(r) * f2b(r)

    def weighted(r: np.ndarray) -> np.ndarray:
        dv = evaluate(case.potential_b, r) - evaluate(case.potential_a, r)
        return dv * overlap(r)

    lhs = (sol_b.energy - sol_a.energy) \
        * _gauss_panel_cumulative(overlap, grid).final
    rhs = _gauss_panel_cumulative(weighted, grid).final
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-12)


# ---------------------------------------------------------------- report

@dataclass
class ComparisonReport:
    case: ComparisonCase
    crossing_set: CrossingSet
    verdicts: tuple[TheoremVerdict, ...]
    corollaries: tuple[TheoremVerdict, ...]
    energies: tuple[float, float]
    identity_residual: float
    solution_a: WaveSolution
    solution_b: WaveSolution

    @property
    def consistent(self) -> bool:
        return all(v.consistent for v in self.verdicts + self.corollaries)

    def as_dict(self) -> dict:
        return {
            "case": self.case.as_dict(),
            "crossings": list(self.crossing_set.points[:64]),
            "first_sign": self.crossing_set.first_sign,
            "oscillatory": self.crossing_set.oscillatory,
            "energies": {"E_a": self.energies[0], "E_b": self.energies[1]},
            "verdicts": [v.as_dict() for v in self.verdicts],
            "corollaries": [v.as_dict() for v in self.corollaries],
            "identity_residual": self.identity_residual,
            "consistent": self.consistent,
        }


def end_to_end(case: ComparisonCase, theorems=None,
               config: ShootingConfig | None = None) -> ComparisonReport:
    """Solve both problems, then run every requested check both ways
    (full curve and crossing-count shortcut) and the identity residual."""
    ctx = _CaseContext(case, config)
    which = tuple(theorems) if theorems else \
        (ONE_DIM_THEOREMS if case.one_dim else RADIAL_THEOREMS)
    sol_a = ctx.solution("a")
    sol_b = ctx.solution("b")
    verdicts = tuple(check_theorem(case, t, _ctx=ctx) for t in which)
    cors = tuple(check_corollary(case, t, _ctx=ctx) for t in which)
    resid = verify_identity(case, sol_a, sol_b)
    return ComparisonReport(case, ctx.crossings(), verdicts, cors,
                            (sol_a.energy, sol_b.energy), resid,
                            sol_a, sol_b)
