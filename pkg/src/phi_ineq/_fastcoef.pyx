# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive Gauss-Kronrod core for the coefficient-family
integrals.  Mirrors the panel policy of phi_ineq.quadrature exactly
(same nodes, weights, error estimate, worst-panel bisection with
earliest-sequence tie-break), with the integrand families evaluated in C.
"""

from libc.math cimport fabs, pow, sqrt, isfinite
from libc.stdlib cimport free, malloc

from .errors import NonFiniteSample, ToleranceNotMet

cdef double EPS = 2.220446049250313e-16

cdef double[8] XGK
cdef double[8] WGK
cdef double[4] WG

XGK[0] = 0.991455371120812639206854697526329
XGK[1] = 0.949107912342758524526189684047851
XGK[2] = 0.864864423359769072789712788640926
XGK[3] = 0.741531185599394439863864773280788
XGK[4] = 0.586087235467691130294144838258730
XGK[5] = 0.405845151377397166906606412076961
XGK[6] = 0.207784955007898467600689403773245
XGK[7] = 0.0

WGK[0] = 0.022935322010529224963732008058970
WGK[1] = 0.063092092629978553290700663189204
WGK[2] = 0.104790010322250183839876322541518
WGK[3] = 0.140653259715525918745189590510238
WGK[4] = 0.169004726639267902826583426598550
WGK[5] = 0.190350578064785409913256402421014
WGK[6] = 0.204432940075298892414161999234649
WGK[7] = 0.209482141084727828012999174891714

WG[0] = 0.129484966168869693270611432679082
WG[1] = 0.279705391489276667901467771423780
WG[2] = 0.381830050505118944950369775488975
WG[3] = 0.417959183673469387755102040816327


cdef inline double phi_w(int kernel, double s, double t) noexcept nogil:
    if kernel == 1:
        return pow(t, s - 1.0)
    if kernel == 2:
        return 0.5 / (sqrt(t) * sqrt(1.0 - t))
    return 1.0


cdef inline double fam_f(int family, double t, double alpha, double lam,
                         int kernel, double s, double p) noexcept nogil:
    cdef double base
    if family == 4:
        return t * phi_w(kernel, s, t)
    base = fabs(t * (lam - pow(t, alpha)))
    if family == 0:
        return base
    if family == 1:
        return base * t * phi_w(kernel, s, t)
    if family == 2:
        return base * (1.0 - t) * phi_w(kernel, s, 1.0 - t)
    return pow(base, p)


cdef inline double eval_u(int family, double alpha, double lam, int kernel,
                          double s, double p, int mode, double kappa,
                          double anchor, double u) noexcept nogil:
    cdef double t, jac
    if mode == 0:
        return fam_f(family, u, alpha, lam, kernel, s, p)
    jac = kappa * pow(u, kappa - 1.0)
    if mode == 1:
        t = anchor + pow(u, kappa)
    else:
        t = anchor - pow(u, kappa)
    return fam_f(family, t, alpha, lam, kernel, s, p) * jac


cdef int gk15(int family, double alpha, double lam, int kernel, double s,
              double p, int mode, double kappa, double anchor,
              double a, double b, double* out_val, double* out_err) noexcept nogil:
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fv[15]
    cdef double resk, resg, resabs, resasc, reskh, err, dx, f1, f2
    cdef int j, k

    fv[0] = eval_u(family, alpha, lam, kernel, s, p, mode, kappa, anchor, c)
    if not isfinite(fv[0]):
        return 1
    resk = WGK[7] * fv[0]
    resg = WG[3] * fv[0]
    resabs = WGK[7] * fabs(fv[0])
    k = 1
    for j in range(7):
        dx = h * XGK[j]
        f1 = eval_u(family, alpha, lam, kernel, s, p, mode, kappa, anchor, c - dx)
        f2 = eval_u(family, alpha, lam, kernel, s, p, mode, kappa, anchor, c + dx)
        if not (isfinite(f1) and isfinite(f2)):
            return 1
        fv[k] = f1
        fv[k + 1] = f2
        resk += WGK[j] * (f1 + f2)
        resabs += WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += WG[j // 2] * (f1 + f2)
        k += 2
    reskh = 0.5 * resk
    resasc = WGK[7] * fabs(fv[0] - reskh)
    k = 1
    for j in range(7):
        resasc += WGK[j] * (fabs(fv[k] - reskh) + fabs(fv[k + 1] - reskh))
        k += 2
    out_val[0] = resk * h
    resabs *= fabs(h)
    resasc *= fabs(h)
    err = fabs((resk - resg) * h)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, pow(200.0 * err / resasc, 1.5))
    if err < 50.0 * EPS * resabs:
        err = 50.0 * EPS * resabs
    out_err[0] = err
    return 0


def integrate_segments(int family, double alpha, double lam, int kernel,
                       double s, double p, segs, double abs_tol,
                       double rel_tol, int max_subdivisions):
    """Globally adaptive integration over pre-planned segments.

    segs: sequence of (u_lo, u_hi, mode, kappa, anchor) tuples from
    phi_ineq.quadrature.build_segments.
    """
    cdef int n_segs = len(segs)
    cdef int cap = n_segs + max_subdivisions + 2
    cdef double* pa = <double*> malloc(cap * sizeof(double))
    cdef double* pb = <double*> malloc(cap * sizeof(double))
    cdef double* pval = <double*> malloc(cap * sizeof(double))
    cdef double* perr = <double*> malloc(cap * sizeof(double))
    cdef double* pkappa = <double*> malloc(cap * sizeof(double))
    cdef double* panchor = <double*> malloc(cap * sizeof(double))
    cdef int* pmode = <int*> malloc(cap * sizeof(int))
    cdef int* pseq = <int*> malloc(cap * sizeof(int))
    if not (pa and pb and pval and perr and pkappa and panchor and pmode and pseq):
        raise MemoryError()

    cdef int n = 0, seq = 0, n_bisect = 0, bad = 0
    cdef int i, worst, mode
    cdef double v = 0.0, e = 0.0, total, total_err, mid, kappa, anchor
    cdef double v1, e1, v2, e2, a, b

    try:
        for lo_hi in segs:
            a = lo_hi[0]
            b = lo_hi[1]
            mode = lo_hi[2]
            kappa = lo_hi[3]
            anchor = lo_hi[4]
            bad = gk15(family, alpha, lam, kernel, s, p, mode, kappa, anchor, a, b, &v, &e)
            if bad:
                raise NonFiniteSample("integrand returned a non-finite value")
            pa[n] = a
            pb[n] = b
            pval[n] = v
            perr[n] = e
            pmode[n] = mode
            pkappa[n] = kappa
            panchor[n] = anchor
            pseq[n] = seq
            n += 1
            seq += 1

        while True:
            total = 0.0
            total_err = 0.0
            for i in range(n):
                total += pval[i]
                total_err += perr[i]
            if total_err <= max(abs_tol, rel_tol * fabs(total)):
                return total
            if n_bisect >= max_subdivisions:
                raise ToleranceNotMet(
                    "needed more than %d subdivisions (error estimate %.3e, value %.6e)"
                    % (max_subdivisions, total_err, total),
                    value=total, err_estimate=total_err,
                )
            worst = 0
            for i in range(1, n):
                if perr[i] > perr[worst] or (perr[i] == perr[worst] and pseq[i] < pseq[worst]):
                    worst = i
            a = pa[worst]
            b = pb[worst]
            mode = pmode[worst]
            kappa = pkappa[worst]
            anchor = panchor[worst]
            mid = 0.5 * (a + b)
            bad = gk15(family, alpha, lam, kernel, s, p, mode, kappa, anchor, a, mid, &v1, &e1)
            if not bad:
                bad = gk15(family, alpha, lam, kernel, s, p, mode, kappa, anchor, mid, b, &v2, &e2)
            if bad:
                raise NonFiniteSample("integrand returned a non-finite value")
            pa[worst] = a
            pb[worst] = mid
            pval[worst] = v1
            perr[worst] = e1
            pseq[worst] = seq
            seq += 1
            pa[n] = mid
            pb[n] = b
            pval[n] = v2
            perr[n] = e2
            pmode[n] = mode
            pkappa[n] = kappa
            panchor[n] = anchor
            pseq[n] = seq
            n += 1
            seq += 1
            n_bisect += 1
    finally:
        free(pa)
        free(pb)
        free(pval)
        free(perr)
        free(pkappa)
        free(panchor)
        free(pmode)
        free(pseq)
