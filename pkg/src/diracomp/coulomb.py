"""Closed-form nodeless bound state for the pure -alpha/r potential.

In the lowest radial sector (d = 3, j = 1/2, tau = -1, so kd = -1) the
state is, with gamma = sqrt(1 - alpha^2),

    E      = m gamma
    psi1/2 = +/- N_{+/-} (2 m alpha r)^gamma exp(-m alpha r)
    N_pm   = sqrt(m alpha (1 +/- gamma) / Gamma(2 gamma + 1))

normalized so that the integral of psi1^2 + psi2^2 over (0, inf) is 1.
The component ratio is constant: psi2/psi1 = -sqrt((1-gamma)/(1+gamma)).
Used as an independent accuracy reference for the shooting solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, SupercriticalCouplingError
from .model import AngularSector, Problem


@dataclass(frozen=True)
class CoulombGround:
    mass: float
    alpha: float
    gamma: float
    energy: float
    norm_plus: float
    norm_minus: float

    def psi1(self, r):
        x = 2.0 * self.mass * self.alpha * np.asarray(r, dtype=float)
        val = self.norm_plus * x ** self.gamma * np.exp(-0.5 * x)
        return float(val) if np.isscalar(r) else val

    def psi2(self, r):
        x = 2.0 * self.mass * self.alpha * np.asarray(r, dtype=float)
        val = -self.norm_minus * x ** self.gamma * np.exp(-0.5 * x)
        return float(val) if np.isscalar(r) else val

    @property
    def ratio(self) -> float:
        """psi2/psi1, independent of r."""
        return -math.sqrt((1.0 - self.gamma) / (1.0 + self.gamma))


def coulomb_ground(mass: float, alpha: float) -> CoulombGround:
    """Exact nodeless state for V = -alpha/r in the kd = -1 sector."""
    if mass <= 0.0:
        raise ConfigError("mass must be positive")
    if alpha <= 0.0:
        raise ConfigError("alpha must be positive")
    if alpha >= 1.0:
        raise SupercriticalCouplingError(
            f"alpha = {alpha} >= 1: no regular ground state")
    gamma = math.sqrt(1.0 - alpha * alpha)
    norm = mass * alpha / math.gamma(2.0 * gamma + 1.0)
    return CoulombGround(
        mass=mass, alpha=alpha, gamma=gamma, energy=mass * gamma,
        norm_plus=math.sqrt(norm * (1.0 + gamma)),
        norm_minus=math.sqrt(norm * (1.0 - gamma)))


def coulomb_ground_for(problem: Problem) -> CoulombGround:
    """Exact solution for a coulomb-family problem, if its sector admits one."""
    if problem.potential.family != "coulomb":
        raise ConfigError("exact solution exists only for the coulomb family")
    geo = problem.geometry
    if not isinstance(geo, AngularSector) or geo.kappa != -1.0:
        raise ConfigError("exact solution covers only the kd = -1 sector")
    return coulomb_ground(problem.mass, problem.potential.param("v"))
