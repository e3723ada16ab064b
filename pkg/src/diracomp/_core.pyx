# cython: language_level=3, cdivision=True, boundscheck=False, wraparound=False
"""Compiled propagation backend; mirrors _corepy.py exactly."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cosh, copysign, exp, expm1, fabs, log, pow, sin, sqrt

cnp.import_array()

STATUS_OK = 0
STATUS_MAX_STEPS = 1
STATUS_STEP_UNDERFLOW = 2

DEF SAFETY = 0.9
DEF MIN_FAC = 0.2
DEF MAX_FAC = 6.0
DEF RENORM_HI = 1e100
DEF RENORM_LO = 1e-100


cdef inline double _veval(int code, double* p, double r,
                          double[::1] tx, double[::1] ty, double[::1] td,
                          double trate) noexcept:
    cdef double x, z, c, h, t, omt, h00, h10, h01, h11, rate
    cdef Py_ssize_t n, lo, hi, mid
    if code == 0:
        return -p[0] * exp(-p[1] * r)
    if code == 1:
        return -p[0] / sqrt(r * r + p[1] * p[1])
    if code == 2:
        x = (r - p[1]) / p[2]
        if x > 700.0:
            return 0.0
        return -p[0] / (1.0 + exp(x))
    if code == 3:
        return -p[0] / r
    if code == 4:
        return -p[0] * exp(-p[1] * r) / r
    if code == 5:
        x = p[1] * r
        if x > 700.0:
            return 0.0
        return -p[0] / expm1(x)
    if code == 6:
        x = p[1] * r
        if x > 350.0:
            return 0.0
        c = cosh(x)
        return -p[0] / (c * c)
    if code == 7:
        return -p[0] * pow(r, -p[1])
    if code == 8:
        z = p[4] * r * r * r + p[5]
        return -p[0] / (p[2] * r * r * r + p[1]) * (1.0 + p[3] * sin(z) / z)
    if code == 9:
        return -p[0] / (p[2] * r * r * r + p[1])
    n = tx.shape[0]
    if r >= tx[n - 1]:
        rate = trate if trate > 0.0 else 0.0
        return ty[n - 1] * exp(-rate * (r - tx[n - 1]))
    if r <= tx[0]:
        return ty[0]
    lo = 0
    hi = n - 1
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
    return h00 * ty[lo] + h10 * h * td[lo] + h01 * ty[lo + 1] + h11 * h * td[lo + 1]


cdef inline void _rhs(int code, double* p,
                      double[::1] tx, double[::1] ty, double[::1] td,
                      double trate, int one_dim, double kd, double m, double e,
                      double r, double y1, double y2,
                      double* f1, double* f2) noexcept:
    cdef double v = _veval(code, p, r, tx, ty, td, trate)
    if one_dim:
        f1[0] = -(e + m - v) * y2
        f2[0] = (e - m - v) * y1
    else:
        f1[0] = (m + e - v) * y2 - (kd / r) * y1
        f2[0] = (m - e + v) * y1 + (kd / r) * y2


def propagate(int code, params, double kd, double mass, double energy,
              int one_dim, double r0, double y10, double y20, double r1,
              double rtol, long max_steps, int record,
              tab_x=None, tab_y=None, tab_d=None, double tab_rate=0.0):
    """Same contract as _corepy.propagate."""
    cdef double p[8]
    cdef Py_ssize_t i
    for i in range(len(params)):
        p[i] = params[i]

    cdef double[::1] tx, ty, td
    if tab_x is not None:
        tx = np.ascontiguousarray(tab_x, dtype=np.float64)
        ty = np.ascontiguousarray(tab_y, dtype=np.float64)
        td = np.ascontiguousarray(tab_d, dtype=np.float64)
    else:
        tx = np.zeros(1)
        ty = np.zeros(1)
        td = np.zeros(1)

    cdef double r = r0, y1 = y10, y2 = y20
    cdef double span = r1 - r0
    cdef double logscale = 0.0
    cdef long n1 = 0, n2 = 0, steps = 0
    cdef double sign1 = 0.0, sign2 = 0.0
    if y1 != 0.0:
        sign1 = copysign(1.0, y1)
    if y2 != 0.0:
        sign2 = copysign(1.0, y2)

    cdef double f1, f2
    _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
         r, y1, y2, &f1, &f2)

    cdef double h
    if one_dim or r0 == 0.0:
        h = 1e-4 * span
    else:
        h = min(0.02 * r, 0.1 * span)
    cdef double h_floor = 1e-15 * span

    cdef Py_ssize_t cap = 4096 if record else 1
    cdef cnp.ndarray[cnp.float64_t, ndim=1] rs = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y1s = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y2s = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f1s = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f2s = np.empty(cap)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ss = np.empty(cap)
    cdef Py_ssize_t npts = 0
    if record:
        rs[0] = r; y1s[0] = y1; y2s[0] = y2
        f1s[0] = f1; f2s[0] = f2; ss[0] = logscale
        npts = 1

    cdef int status = STATUS_MAX_STEPS
    cdef double k11, k12, k21, k22, k31, k32, k41, k42, k51, k52, k61, k62
    cdef double k71, k72, y1n, y2n, rn, err1, err2, w, errn, fac, sup, s
    cdef double a, b1, b2, c1, c2, c3, d1, d2, d3, d4, e1, e2, e3, e4, e5
    cdef double w1, w3, w4, w5, w6, q1, q3, q4, q5, q6, q7

    while steps < max_steps:
        steps += 1
        if r + h >= r1:
            h = r1 - r
        if h < h_floor:
            status = STATUS_STEP_UNDERFLOW
            break

        k11 = f1; k12 = f2
        a = h * 0.2
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             r + 0.2 * h, y1 + a * k11, y2 + a * k12, &k21, &k22)
        b1 = h * (3.0 / 40.0); b2 = h * (9.0 / 40.0)
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             r + 0.3 * h, y1 + b1 * k11 + b2 * k21, y2 + b1 * k12 + b2 * k22,
             &k31, &k32)
        c1 = h * (44.0 / 45.0); c2 = h * (-56.0 / 15.0); c3 = h * (32.0 / 9.0)
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             r + 0.8 * h, y1 + c1 * k11 + c2 * k21 + c3 * k31,
             y2 + c1 * k12 + c2 * k22 + c3 * k32, &k41, &k42)
        d1 = h * (19372.0 / 6561.0); d2 = h * (-25360.0 / 2187.0)
        d3 = h * (64448.0 / 6561.0); d4 = h * (-212.0 / 729.0)
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             r + (8.0 / 9.0) * h,
             y1 + d1 * k11 + d2 * k21 + d3 * k31 + d4 * k41,
             y2 + d1 * k12 + d2 * k22 + d3 * k32 + d4 * k42, &k51, &k52)
        e1 = h * (9017.0 / 3168.0); e2 = h * (-355.0 / 33.0)
        e3 = h * (46732.0 / 5247.0); e4 = h * (49.0 / 176.0)
        e5 = h * (-5103.0 / 18656.0)
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             r + h,
             y1 + e1 * k11 + e2 * k21 + e3 * k31 + e4 * k41 + e5 * k51,
             y2 + e1 * k12 + e2 * k22 + e3 * k32 + e4 * k42 + e5 * k52,
             &k61, &k62)
        w1 = h * (35.0 / 384.0); w3 = h * (500.0 / 1113.0)
        w4 = h * (125.0 / 192.0); w5 = h * (-2187.0 / 6784.0)
        w6 = h * (11.0 / 84.0)
        y1n = y1 + w1 * k11 + w3 * k31 + w4 * k41 + w5 * k51 + w6 * k61
        y2n = y2 + w1 * k12 + w3 * k32 + w4 * k42 + w5 * k52 + w6 * k62
        rn = r + h
        _rhs(code, p, tx, ty, td, tab_rate, one_dim, kd, mass, energy,
             rn, y1n, y2n, &k71, &k72)

        q1 = h * (71.0 / 57600.0); q3 = h * (-71.0 / 16695.0)
        q4 = h * (71.0 / 1920.0); q5 = h * (-17253.0 / 339200.0)
        q6 = h * (22.0 / 525.0); q7 = h * (-1.0 / 40.0)
        err1 = q1 * k11 + q3 * k31 + q4 * k41 + q5 * k51 + q6 * k61 + q7 * k71
        err2 = q1 * k12 + q3 * k32 + q4 * k42 + q5 * k52 + q6 * k62 + q7 * k72

        w = max(max(fabs(y1), fabs(y2)), max(fabs(y1n), fabs(y2n)))
        errn = max(fabs(err1), fabs(err2)) / (rtol * w + 1e-300)

        if errn <= 1.0:
            r = rn; y1 = y1n; y2 = y2n; f1 = k71; f2 = k72
            if y1 != 0.0:
                s = copysign(1.0, y1)
                if sign1 != 0.0 and s != sign1:
                    n1 += 1
                sign1 = s
            if y2 != 0.0:
                s = copysign(1.0, y2)
                if sign2 != 0.0 and s != sign2:
                    n2 += 1
                sign2 = s
            sup = max(fabs(y1), fabs(y2))
            if sup > RENORM_HI or (0.0 < sup < RENORM_LO):
                y1 /= sup; y2 /= sup; f1 /= sup; f2 /= sup
                logscale += log(sup)
            if record:
                if npts == cap:
                    cap *= 2
                    rs = _grow(rs, cap); y1s = _grow(y1s, cap)
                    y2s = _grow(y2s, cap); f1s = _grow(f1s, cap)
                    f2s = _grow(f2s, cap); ss = _grow(ss, cap)
                rs[npts] = r; y1s[npts] = y1; y2s[npts] = y2
                f1s[npts] = f1; f2s[npts] = f2; ss[npts] = logscale
                npts += 1
            if r >= r1:
                status = STATUS_OK
                break
            if errn == 0.0:
                fac = MAX_FAC
            else:
                fac = SAFETY * pow(errn, -0.2)
                if fac > MAX_FAC:
                    fac = MAX_FAC
                elif fac < MIN_FAC:
                    fac = MIN_FAC
            h *= fac
        else:
            fac = SAFETY * pow(errn, -0.25)
            if fac > 1.0:
                fac = 1.0
            elif fac < 0.1:
                fac = 0.1
            h *= fac

    if not record:
        rs[0] = r; y1s[0] = y1; y2s[0] = y2
        f1s[0] = f1; f2s[0] = f2; ss[0] = logscale
        npts = 1
    return (status, n1, n2, steps,
            rs[:npts].copy(), y1s[:npts].copy(), y2s[:npts].copy(),
            f1s[:npts].copy(), f2s[:npts].copy(), ss[:npts].copy())


cdef cnp.ndarray[cnp.float64_t, ndim=1] _grow(
        cnp.ndarray[cnp.float64_t, ndim=1] arr, Py_ssize_t cap):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(cap)
    out[:arr.shape[0]] = arr
    return out
