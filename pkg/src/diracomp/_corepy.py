"""Pure-Python propagation backend.

Mirrors the compiled extension step for step: Dormand-Prince RK45 with
embedded error control on the coupled first-order system, sup-norm
renormalization in flight (per-point log scales), online node counting,
and optional dense recording of the trajectory.

Kept dependency-light and scalar on purpose so the compiled kernel can be
validated against it point by point.
"""
from __future__ import annotations

import math

import numpy as np

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_STEP_UNDERFLOW = 2

_SAFETY = 0.9
_MIN_FAC = 0.2
_MAX_FAC = 6.0
_RENORM_HI = 1e100
_RENORM_LO = 1e-100


def _veval(code, p, r, tx, ty, td, trate):
    """Potential value; codes match model.CODE_*."""
    if code == 0:
        return -p[0] * math.exp(-p[1] * r)
    if code == 1:
        return -p[0] / math.sqrt(r * r + p[1] * p[1])
    if code == 2:
        x = (r - p[1]) / p[2]
        if x > 700.0:
            return 0.0
        return -p[0] / (1.0 + math.exp(x))
    if code == 3:
        return -p[0] / r
    if code == 4:
        return -p[0] * math.exp(-p[1] * r) / r
    if code == 5:
        x = p[1] * r
        if x > 700.0:
            return 0.0
        return -p[0] / math.expm1(x)
    if code == 6:
        x = p[1] * r
        if x > 350.0:
            return 0.0
        c = math.cosh(x)
        return -p[0] / (c * c)
    if code == 7:
        return -p[0] * r ** (-p[1])
    if code == 8:
        z = p[4] * r * r * r + p[5]
        return -p[0] / (p[2] * r * r * r + p[1]) * (1.0 + p[3] * math.sin(z) / z)
    if code == 9:
        return -p[0] / (p[2] * r * r * r + p[1])
    # tabulated: cubic Hermite inside the knots, exponential tail beyond
    n = len(tx)
    if r >= tx[n - 1]:
        rate = trate if trate > 0.0 else 0.0
        return ty[n - 1] * math.exp(-rate * (r - tx[n - 1]))
    if r <= tx[0]:
        return ty[0]
    lo, hi = 0, n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tx[mid] <= r:
            lo = mid
        else:
            hi = mid
    h = tx[lo + 1] - tx[lo]
    t = (r - tx[lo]) / h
    omt = 1.0 - t
    h00 = (1.0 + 2.0 * t) * omt * omt
    h10 = t * omt * omt
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    return (h00 * ty[lo] + h10 * h * td[lo]
            + h01 * ty[lo + 1] + h11 * h * td[lo + 1])


def _rhs(code, p, tx, ty, td, trate, one_dim, kd, m, e, r, y1, y2):
    v = _veval(code, p, r, tx, ty, td, trate)
    if one_dim:
        return -(e + m - v) * y2, (e - m - v) * y1
    return (m + e - v) * y2 - (kd / r) * y1, (m - e + v) * y1 + (kd / r) * y2


def propagate(code, params, kd, mass, energy, one_dim,
              r0, y10, y20, r1, rtol, max_steps, record,
              tab_x=None, tab_y=None, tab_d=None, tab_rate=0.0):
    """Propagate the system from r0 to r1 > r0.

    Returns (status, n1, n2, nsteps, r, y1, y2, f1, f2, logscale) with
    arrays holding the full trajectory when ``record`` else only the final
    point.  Stored y/f values are rescaled; the true solution at point i is
    y_i * exp(logscale_i) up to a global constant.
    """
    p = tuple(float(x) for x in params)
    tx = tuple(tab_x) if tab_x is not None else ()
    ty = tuple(tab_y) if tab_y is not None else ()
    td = tuple(tab_d) if tab_d is not None else ()

    r = float(r0)
    y1 = float(y10)
    y2 = float(y20)
    span = r1 - r
    logscale = 0.0
    n1 = n2 = 0
    sign1 = 0.0 if y1 == 0.0 else math.copysign(1.0, y1)
    sign2 = 0.0 if y2 == 0.0 else math.copysign(1.0, y2)

    f1, f2 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
                  r, y1, y2)

    if one_dim or r0 == 0.0:
        h = 1e-4 * span
    else:
        h = min(0.02 * r, 0.1 * span)
    h_floor = 1e-15 * span

    rs, y1s, y2s, f1s, f2s, ss = [], [], [], [], [], []
    if record:
        rs.append(r); y1s.append(y1); y2s.append(y2)
        f1s.append(f1); f2s.append(f2); ss.append(logscale)

    status = STATUS_MAX_STEPS
    steps = 0
    while steps < max_steps:
        steps += 1
        if r + h >= r1:
            h = r1 - r
        if h < h_floor:
            status = STATUS_STEP_UNDERFLOW
            break

        k11, k12 = f1, f2
        a = h * 0.2
        k21, k22 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, r + 0.2 * h, y1 + a * k11, y2 + a * k12)
        b1 = h * (3.0 / 40.0); b2 = h * (9.0 / 40.0)
        k31, k32 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, r + 0.3 * h,
                        y1 + b1 * k11 + b2 * k21, y2 + b1 * k12 + b2 * k22)
        c1 = h * (44.0 / 45.0); c2 = h * (-56.0 / 15.0); c3 = h * (32.0 / 9.0)
        k41, k42 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, r + 0.8 * h,
                        y1 + c1 * k11 + c2 * k21 + c3 * k31,
                        y2 + c1 * k12 + c2 * k22 + c3 * k32)
        d1 = h * (19372.0 / 6561.0); d2 = h * (-25360.0 / 2187.0)
        d3 = h * (64448.0 / 6561.0); d4 = h * (-212.0 / 729.0)
        k51, k52 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, r + (8.0 / 9.0) * h,
                        y1 + d1 * k11 + d2 * k21 + d3 * k31 + d4 * k41,
                        y2 + d1 * k12 + d2 * k22 + d3 * k32 + d4 * k42)
        e1 = h * (9017.0 / 3168.0); e2 = h * (-355.0 / 33.0)
        e3 = h * (46732.0 / 5247.0); e4 = h * (49.0 / 176.0)
        e5 = h * (-5103.0 / 18656.0)
        k61, k62 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, r + h,
                        y1 + e1 * k11 + e2 * k21 + e3 * k31 + e4 * k41 + e5 * k51,
                        y2 + e1 * k12 + e2 * k22 + e3 * k32 + e4 * k42 + e5 * k52)
        w1 = h * (35.0 / 384.0); w3 = h * (500.0 / 1113.0)
        w4 = h * (125.0 / 192.0); w5 = h * (-2187.0 / 6784.0)
        w6 = h * (11.0 / 84.0)
        y1n = y1 + w1 * k11 + w3 * k31 + w4 * k41 + w5 * k51 + w6 * k61
        y2n = y2 + w1 * k12 + w3 * k32 + w4 * k42 + w5 * k52 + w6 * k62
        rn = r + h
        k71, k72 = _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass,
                        energy, rn, y1n, y2n)

        q1 = h * (71.0 / 57600.0); q3 = h * (-71.0 / 16695.0)
        q4 = h * (71.0 / 1920.0); q5 = h * (-17253.0 / 339200.0)
        q6 = h * (22.0 / 525.0); q7 = h * (-1.0 / 40.0)
        err1 = q1 * k11 + q3 * k31 + q4 * k41 + q5 * k51 + q6 * k61 + q7 * k71
        err2 = q1 * k12 + q3 * k32 + q4 * k42 + q5 * k52 + q6 * k62 + q7 * k72

        w = max(abs(y1), abs(y2), abs(y1n), abs(y2n))
        errn = max(abs(err1), abs(err2)) / (rtol * w + 1e-300)

        if errn <= 1.0:
            r, y1, y2, f1, f2 = rn, y1n, y2n, k71, k72
            if y1 != 0.0:
                s = math.copysign(1.0, y1)
                if sign1 != 0.0 and s != sign1:
                    n1 += 1
                sign1 = s
            if y2 != 0.0:
                s = math.copysign(1.0, y2)
                if sign2 != 0.0 and s != sign2:
                    n2 += 1
                sign2 = s
            sup = max(abs(y1), abs(y2))
            if sup > _RENORM_HI or (0.0 < sup < _RENORM_LO):
                y1 /= sup; y2 /= sup; f1 /= sup; f2 /= sup
                logscale += math.log(sup)
            if record:
                rs.append(r); y1s.append(y1); y2s.append(y2)
                f1s.append(f1); f2s.append(f2); ss.append(logscale)
            if r >= r1:
                status = STATUS_OK
                break
            fac = _MAX_FAC if errn == 0.0 else min(
                _MAX_FAC, max(_MIN_FAC, _SAFETY * errn ** -0.2))
            h *= fac
        else:
            h *= max(0.1, min(1.0, _SAFETY * errn ** -0.25))

    if not record:
        rs = [r]; y1s = [y1]; y2s = [y2]; f1s = [f1]; f2s = [f2]
        ss = [logscale]
    return (status, n1, n2, steps,
            np.array(rs), np.array(y1s), np.array(y2s),
            np.array(f1s), np.array(f2s), np.array(ss))
