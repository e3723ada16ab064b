"""Problem layer: angular sectors, the potential catalog, classification.

Conventions used throughout the package: natural units (hbar = c = 1),
attractive potentials V(r) <= 0 defined on r >= 0, bound energies in the
open window (-m, m).  In one dimension potentials are read as even
functions of x through V(|x|).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError, UnsupportedPotentialError

# Kernel dispatch codes.  Shared with both propagation backends; order is
# frozen (the compiled extension switches on these integers).
CODE_EXPONENTIAL = 0
CODE_LASER_DRESSED = 1
CODE_WOODS_SAXON = 2
CODE_COULOMB = 3
CODE_YUKAWA = 4
CODE_HULTHEN = 5
CODE_SECH2 = 6
CODE_POWER_SINGULAR = 7
CODE_OSC_CUBIC = 8
CODE_RATIONAL_CUBIC = 9
CODE_TABULATED = 10

KIND_BOUNDED = "bounded"
KIND_COULOMB_LIKE = "coulomb_like"
KIND_SUB_COULOMB = "sub_coulomb"
KIND_UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class FamilyInfo:
    name: str
    code: int
    param_names: tuple[str, ...]
    kind: str
    description: str


FAMILIES: dict[str, FamilyInfo] = {
    f.name: f
    for f in (
        FamilyInfo("exponential", CODE_EXPONENTIAL, ("beta", "b"), KIND_BOUNDED,
                   "V(r) = -beta * exp(-b r)"),
        FamilyInfo("laser_dressed", CODE_LASER_DRESSED, ("alpha", "a"), KIND_BOUNDED,
                   "V(r) = -alpha / sqrt(r^2 + a^2)"),
        FamilyInfo("woods_saxon", CODE_WOODS_SAXON, ("v", "R", "a"), KIND_BOUNDED,
                   "V(r) = -v / (1 + exp((r - R)/a))"),
        FamilyInfo("coulomb", CODE_COULOMB, ("v",), KIND_COULOMB_LIKE,
                   "V(r) = -v / r"),
        FamilyInfo("yukawa", CODE_YUKAWA, ("v", "lam"), KIND_COULOMB_LIKE,
                   "V(r) = -v * exp(-lam r) / r"),
        FamilyInfo("hulthen", CODE_HULTHEN, ("v", "lam"), KIND_COULOMB_LIKE,
                   "V(r) = -v / (exp(lam r) - 1)"),
        FamilyInfo("sech2", CODE_SECH2, ("beta", "b"), KIND_BOUNDED,
                   "V(r) = -beta / cosh^2(b r)"),
        FamilyInfo("power_singular", CODE_POWER_SINGULAR, ("v", "q"), KIND_SUB_COULOMB,
                   "V(r) = -v / r^q with 0 < q < 1"),
        FamilyInfo("osc_cubic", CODE_OSC_CUBIC, ("alpha", "a", "u", "v", "kappa", "s"),
                   KIND_BOUNDED,
                   "V(r) = -alpha/(u r^3 + a) * (1 + v sin(z)/z), z = kappa r^3 + s"),
        FamilyInfo("rational_cubic", CODE_RATIONAL_CUBIC, ("beta", "b", "w"), KIND_BOUNDED,
                   "V(r) = -beta / (w r^3 + b)"),
        FamilyInfo("tabulated", CODE_TABULATED, (), KIND_BOUNDED,
                   "monotone cubic through (r_i, V_i), exponential tail beyond"),
    )
}


@dataclass(frozen=True)
class Potential:
    """A member of the potential catalog.

    ``params`` is positional in the order given by the family's
    ``param_names``.  Tabulated potentials carry knots and values instead;
    the PCHIP slopes and the fitted tail rate are derived on construction.
    """

    family: str
    params: tuple[float, ...] = ()
    table_r: tuple[float, ...] | None = None
    table_v: tuple[float, ...] | None = None
    # derived, populated in __post_init__ for tabulated potentials
    table_d: tuple[float, ...] | None = field(default=None, compare=False)
    table_rate: float = field(default=0.0, compare=False)

    def __post_init__(self):
        info = FAMILIES.get(self.family)
        if info is None:
            raise ConfigError(f"unknown potential family: {self.family!r}")
        if self.family == "tabulated":
            self._init_table()
            return
        if len(self.params) != len(info.param_names):
            raise ConfigError(
                f"{self.family} takes params {info.param_names}, "
                f"got {len(self.params)} values")
        # the leading parameter is the overall strength: zero is a valid
        # (free) potential, it just binds nothing.  Shape parameters sit in
        # denominators or exponents and must stay strictly positive, except
        # the oscillation amplitude of osc_cubic which may vanish.
        for idx, (name, value) in enumerate(zip(info.param_names,
                                                self.params)):
            zero_ok = idx == 0 or (self.family == "osc_cubic" and idx == 3)
            if not math.isfinite(value) or value < 0.0 or \
                    (value == 0.0 and not zero_ok):
                need = "nonnegative" if zero_ok else "positive"
                raise ConfigError(
                    f"{self.family}: parameter {name} must be {need}")
        if self.family == "power_singular":
            q = self.params[1]
            if not 0.0 < q < 1.0:
                raise ConfigError("power_singular requires 0 < q < 1")
        if self.family == "osc_cubic":
            v = self.params[3]
            if v >= 1.0:
                # keeps 1 + v sin(z)/z positive, hence V <= 0 everywhere
                raise ConfigError("osc_cubic requires v < 1")

    def _init_table(self):
        if self.table_r is None or self.table_v is None:
            raise ConfigError("tabulated potential needs table_r and table_v")
        r = np.asarray(self.table_r, dtype=float)
        v = np.asarray(self.table_v, dtype=float)
        if r.ndim != 1 or r.shape != v.shape or r.size < 3:
            raise ConfigError("tabulated potential needs >= 3 matching knots")
        if r[0] != 0.0 or np.any(np.diff(r) <= 0.0):
            raise ConfigError("tabulated knots must increase strictly from 0")
        if np.any(v > 0.0):
            raise ConfigError("tabulated potential must satisfy V <= 0")
        from scipy.interpolate import PchipInterpolator

        slopes = PchipInterpolator(r, v).derivative()(r)
        if v[-1] == 0.0:
            rate = 0.0
        elif abs(v[-1]) < abs(v[-2]):
            rate = math.log(v[-2] / v[-1]) / (r[-1] - r[-2])
        else:
            # growing tail; classify() reports the potential as unsupported
            rate = -1.0
        object.__setattr__(self, "table_d", tuple(float(s) for s in slopes))
        object.__setattr__(self, "table_rate", float(rate))

    @property
    def info(self) -> FamilyInfo:
        return FAMILIES[self.family]

    def param(self, name: str) -> float:
        return self.params[self.info.param_names.index(name)]

    def as_dict(self) -> dict:
        if self.family == "tabulated":
            return {"family": self.family,
                    "table_r": list(self.table_r), "table_v": list(self.table_v)}
        return {"family": self.family,
                "params": dict(zip(self.info.param_names, self.params))}


def make_potential(family: str, *args: float, **kwargs) -> Potential:
    """Build a catalog potential from positional or named parameters."""
    if family == "tabulated":
        return Potential("tabulated", (),
                         table_r=tuple(kwargs["table_r"]),
                         table_v=tuple(kwargs["table_v"]))
    info = FAMILIES.get(family)
    if info is None:
        raise ConfigError(f"unknown potential family: {family!r}")
    if args and kwargs:
        raise ConfigError("pass parameters positionally or by name, not both")
    if kwargs:
        try:
            args = tuple(float(kwargs.pop(name)) for name in info.param_names)
        except KeyError as exc:
            raise ConfigError(f"{family}: missing parameter {exc.args[0]}") from None
        if kwargs:
            raise ConfigError(f"{family}: unknown parameters {sorted(kwargs)}")
    return Potential(family, tuple(float(a) for a in args))


def _tab_value(p: Potential, r):
    r = np.asarray(r, dtype=float)
    x = np.asarray(p.table_r)
    y = np.asarray(p.table_v)
    d = np.asarray(p.table_d)
    out = np.empty_like(r)
    inside = r <= x[-1]
    if np.any(inside):
        i = np.clip(np.searchsorted(x, r[inside], side="right") - 1, 0, x.size - 2)
        h = x[i + 1] - x[i]
        t = (r[inside] - x[i]) / h
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        out[inside] = h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1]
    if np.any(~inside):
        rate = max(p.table_rate, 0.0)
        out[~inside] = y[-1] * np.exp(-rate * (r[~inside] - x[-1]))
    return out


def evaluate(p: Potential, r):
    """Evaluate V(r) for scalar or array r >= 0.

    Singular families (coulomb, yukawa, hulthen, power_singular) diverge to
    -inf at r = 0; callers sampling the origin must stay at r > 0.
    """
    scalar = np.isscalar(r) or (isinstance(r, np.ndarray) and r.ndim == 0)
    rr = np.asarray(r, dtype=float)
    fam = p.family
    with np.errstate(divide="ignore", over="ignore"):
        if fam == "exponential":
            beta, b = p.params
            out = -beta * np.exp(-b * rr)
        elif fam == "laser_dressed":
            alpha, a = p.params
            out = -alpha / np.sqrt(rr * rr + a * a)
        elif fam == "woods_saxon":
            v, big_r, a = p.params
            out = -v / (1.0 + np.exp(np.clip((rr - big_r) / a, -700.0, 700.0)))
        elif fam == "coulomb":
            (v,) = p.params
            out = -v / rr
        elif fam == "yukawa":
            v, lam = p.params
            out = -v * np.exp(-lam * rr) / rr
        elif fam == "hulthen":
            v, lam = p.params
            out = -v / np.expm1(np.clip(lam * rr, None, 700.0))
        elif fam == "sech2":
            beta, b = p.params
            out = -beta / np.cosh(np.clip(b * rr, None, 350.0)) ** 2
        elif fam == "power_singular":
            v, q = p.params
            out = -v * rr ** (-q)
        elif fam == "osc_cubic":
            alpha, a, u, v, kappa, s = p.params
            z = kappa * rr ** 3 + s
            out = -alpha / (u * rr ** 3 + a) * (1.0 + v * np.sin(z) / z)
        elif fam == "rational_cubic":
            beta, b, w = p.params
            out = -beta / (w * rr ** 3 + b)
        else:
            out = _tab_value(p, rr)
    return float(out) if scalar else out


def scale_length(p: Potential) -> float:
    """Characteristic length of the potential (used for grids and r_min)."""
    fam, prm = p.family, p.params
    if fam == "exponential":
        return 1.0 / prm[1]
    if fam == "laser_dressed":
        return prm[1]
    if fam == "woods_saxon":
        return prm[1] + 5.0 * prm[2]
    if fam in ("coulomb", "power_singular"):
        return 1.0
    if fam in ("yukawa", "hulthen"):
        return 1.0 / prm[1]
    if fam == "sech2":
        return 1.0 / prm[1]
    if fam == "osc_cubic":
        return (prm[1] / prm[2]) ** (1.0 / 3.0)
    if fam == "rational_cubic":
        return (prm[1] / prm[2]) ** (1.0 / 3.0)
    return p.table_r[-1] / 3.0


@dataclass(frozen=True)
class Classification:
    """Outcome of classify(): class tag plus the data the solver needs."""

    kind: str
    scale: float
    v0: float | None = None          # V(0) for bounded potentials
    f0: float | None = None          # lim r->0 of -r V(r) for coulomb_like
    power: tuple[float, float] | None = None  # (v, q) for sub_coulomb
    monotone: bool = False           # nondecreasing on (0, inf), sampled
    vanishes: bool = True            # V -> 0 at infinity, sampled

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "scale": self.scale,
               "monotone": self.monotone, "vanishes": self.vanishes}
        if self.v0 is not None:
            out["v0"] = self.v0
        if self.f0 is not None:
            out["f0"] = self.f0
        if self.power is not None:
            out["power"] = {"v": self.power[0], "q": self.power[1]}
        return out


def is_monotone_nondecreasing(p: Potential, n: int = 256) -> bool:
    """Sampled monotonicity of V on log-spaced points over (0, 60*scale]."""
    s = scale_length(p)
    r = np.geomspace(1e-6 * s, 60.0 * s, n)
    if p.family == "osc_cubic" and p.params[3] > 0.0:
        # log-spaced samples alias the r^3 phase.  A non-monotone dip can
        # only live in the early periods, where the modulation is still
        # strong against the envelope; sample those densely in phase.
        kap, shift = p.params[4], p.params[5]
        z = np.arange(shift, shift + 44.0 * math.pi, math.pi / 32.0)[1:]
        r = np.unique(np.concatenate([r, np.cbrt((z - shift) / kap)]))
    v = evaluate(p, r)
    vmax = float(np.max(np.abs(v))) or 1.0
    return bool(np.all(np.diff(v) >= -1e-12 * vmax))


def _vanishes_at_infinity(p: Potential) -> bool:
    s = scale_length(p)
    h = 40.0 * s
    mags = [abs(evaluate(p, f * h)) for f in (1.0, 2.0, 4.0, 8.0)]
    ref = abs(evaluate(p, s))
    nonincreasing = all(mags[i + 1] <= mags[i] * (1 + 1e-12) for i in range(3))
    return nonincreasing and mags[-1] <= 0.05 * ref + 1e-300


def classify(p: Potential) -> Classification:
    """Assign the potential to bounded / coulomb_like / sub_coulomb.

    A potential whose sampled tail does not vanish is reported with kind
    "unsupported" rather than raising; solver entry points then refuse it.
    """
    s = scale_length(p)
    monotone = is_monotone_nondecreasing(p)
    vanishes = _vanishes_at_infinity(p)
    kind = p.info.kind
    if not vanishes:
        return Classification(KIND_UNSUPPORTED, s, monotone=monotone, vanishes=False)
    if kind == KIND_BOUNDED:
        return Classification(kind, s, v0=float(evaluate(p, 0.0)),
                              monotone=monotone, vanishes=vanishes)
    if kind == KIND_COULOMB_LIKE:
        if p.family == "coulomb":
            f0 = p.params[0]
        elif p.family == "yukawa":
            f0 = p.params[0]
        else:  # hulthen: -v/(exp(lam r)-1) ~ -(v/lam)/r
            f0 = p.params[0] / p.params[1]
        return Classification(kind, s, f0=float(f0), monotone=monotone,
                              vanishes=vanishes)
    return Classification(KIND_SUB_COULOMB, s, power=(p.params[0], p.params[1]),
                          monotone=monotone, vanishes=vanishes)


@dataclass(frozen=True)
class OneDim:
    """Geometry tag for the problem on the full line with an even potential."""

    @property
    def label(self) -> str:
        return "one_dim"

    def as_dict(self) -> dict:
        return {"kind": "one_dim"}


@dataclass(frozen=True)
class AngularSector:
    """Angular sector of the radial problem in d >= 2 dimensions.

    j is stored exactly as the integer 2j; kappa = tau * (j + (d-2)/2) is
    then an exact half-integer.
    """

    d: int
    twoj: int
    tau: int

    def __post_init__(self):
        if self.d < 2:
            raise ConfigError("radial sectors need d >= 2 (use OneDim for d = 1)")
        if self.twoj < 1:
            raise ConfigError("j must be a positive half-integer (2j >= 1)")
        if self.tau not in (-1, 1):
            raise ConfigError("tau must be +1 or -1")
        if self.twoj + self.d - 2 == 0:
            raise ConfigError("sector has kappa = 0 and is unsupported")

    @classmethod
    def from_j(cls, d: int, j: float, tau: int) -> "AngularSector":
        twoj = round(2 * j)
        if abs(2 * j - twoj) > 1e-9:
            raise ConfigError(f"j = {j} is not a half-integer")
        return cls(d, twoj, tau)

    @property
    def j(self) -> float:
        return self.twoj / 2.0

    @property
    def kappa(self) -> float:
        return self.tau * (self.twoj + self.d - 2) / 2.0

    @property
    def label(self) -> str:
        return f"d={self.d} 2j={self.twoj} tau={self.tau:+d}"

    def as_dict(self) -> dict:
        return {"kind": "radial", "d": self.d, "j": self.j, "tau": self.tau,
                "kappa": self.kappa}


def kappa(sector: AngularSector) -> float:
    """Sector constant tau * (j + (d-2)/2) entering the radial system."""
    return sector.kappa


Geometry = OneDim | AngularSector


@dataclass(frozen=True)
class Problem:
    """A single bound-state problem: mass, geometry and potential."""

    mass: float
    geometry: Geometry
    potential: Potential

    def __post_init__(self):
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ConfigError("mass must be positive")
        if isinstance(self.geometry, OneDim):
            if self.potential.info.kind != KIND_BOUNDED:
                raise ConfigError(
                    "one-dimensional problems require a bounded potential")

    @property
    def one_dim(self) -> bool:
        return isinstance(self.geometry, OneDim)

    @property
    def kd(self) -> float:
        if self.one_dim:
            return 0.0
        return self.geometry.kappa

    def as_dict(self) -> dict:
        return {"mass": self.mass, "geometry": self.geometry.as_dict(),
                "potential": self.potential.as_dict()}
