"""Test-side numerical oracles shared across modules."""
from __future__ import annotations

import numpy as np


def reintegrate_norm(sol) -> float:
    """Norm of the wave via a test-side rule: Gauss-7 on each knot
    interval of the recorded grid, evaluated through the public
    interpolants (exact for the piecewise-cubic representation)."""
    f1, f2 = sol.psi_functions()
    x, w = np.polynomial.legendre.leggauss(7)
    h = np.diff(sol.r)
    pts = sol.r[:-1, None] + (x[None, :] + 1.0) * (0.5 * h[:, None])
    dens = f1(pts.ravel()) ** 2 + f2(pts.ravel()) ** 2
    total = float(np.sum((dens.reshape(pts.shape) @ w) * (0.5 * h)))
    if sol.problem.one_dim:
        total *= 2.0
    return total


def origin_slope(sol) -> tuple[float, int]:
    """Leading power of psi1 at the origin, fitted from the recorded head.

    Local log-log slopes between consecutive grid points follow
    p + b * r^g, where g is the class-predicted gap to the next series
    term: analytic wells and 1/r-type singularities continue in integer
    powers (g = 1), while a -v/r^q well feeds back through the lower
    component as r^(2(1-q)).  Extrapolating the slopes to r = 0 in the
    variable r^g removes the slowly decaying correction that a plain
    straight-line fit cannot resolve.  Returns (power, points used)."""
    pot = sol.problem.potential
    g = 2.0 * (1.0 - pot.params[1]) if pot.family == "power_singular" \
        else 1.0
    mask = sol.r <= 1e-3 * sol.classification.scale
    n = int(np.count_nonzero(mask))
    if n < 3:
        return float("nan"), n
    r, y = sol.r[mask], sol.psi1[mask]
    slopes = np.diff(np.log(y)) / np.diff(np.log(r))
    rho = np.sqrt(r[1:] * r[:-1])
    design = np.column_stack([np.ones(rho.size), rho ** g])
    coef, *_ = np.linalg.lstsq(design, slopes, rcond=None)
    return float(coef[0]), n


def l2_profile_error(sol, exact1, exact2) -> float:
    """L2 distance between the solved profile and closed-form components,
    integrated with Gauss-7 on each recorded knot interval."""
    f1, f2 = sol.psi_functions()
    x, w = np.polynomial.legendre.leggauss(7)
    h = np.diff(sol.r)
    pts = (sol.r[:-1, None] + (x[None, :] + 1.0) * (0.5 * h[:, None])).ravel()
    diff = (f1(pts) - exact1(pts)) ** 2 + (f2(pts) - exact2(pts)) ** 2
    total = float(np.sum((diff.reshape(-1, x.size) @ w) * (0.5 * h)))
    return float(np.sqrt(total))
