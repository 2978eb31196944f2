"""Terminant re-expansions of both remainders, their explicit residual
bounds, and Stokes-transition scanners.

Large first parameter.  With alpha0 = lambda - log(lambda) - 1 and
w = a*alpha0, the remainder of the truncated series re-expands as

    R_N(a, lambda) = e^{a alpha0} sqrt(2 pi/a)
                     * sum_{k<K} (a_{2k}/a^k) T_{N-k+1/2}(w)  +  R_{N,K},

and for 2 <= K <= N, |arg a| <= pi the residual obeys the certified bound

    |R_{N,K}| <= |sqrt(2 pi/a) e^{a alpha0} T_{N-K+1/2}(w)|
                 * (1+zeta(K)) Gamma(K) / ((2 pi)^{K+1} |a|^K)
               + (1+zeta(K)) Gamma(K) Gamma(N-K+1/2)
                 / ((2 pi)^{K+3/2} |a|^{N+1} alpha0^{N-K+1/2}).

Outside that sector (up to |arg a| < 2 pi) only the asymptotic order
e^{-|a| alpha0}/|a|^{K+1/2} (resp. e^{Re a * alpha0}/|a|^{K+1/2} past the
Stokes lines) is reported, flagged non-certified.

Diagonal case.  Splitting the series into even and odd half-powers
truncated at N and M, the combined remainder R_{N,M} re-expands through
four terminant sums with arguments +-2*pi*i*z:

    R_{N,M} =  e^{2 pi i z} sum_{k<K} (a_{2k}/z^k) T_{N-k}(2 pi i z)
             - e^{-2 pi i z} sum_{k<K} (a_{2k}/z^k) T_{N-k}(-2 pi i z)
             - e^{2 pi i z} sum_{l<L} (a_{2l}/z^l) T_{M-l+1/2}(2 pi i z)
             - e^{-2 pi i z} sum_{l<L} (a_{2l}/z^l) T_{M-l+1/2}(-2 pi i z)
             + R_{N,M,K,L},

with a four-piece certified bound for 2 <= K < N, 2 <= L <= M,
|arg z| <= pi/2 (see hyper_z) and order-estimates elsewhere.

The scanners sweep arg a across +-pi (resp. arg z across +-3 pi/2) at
optimal truncation and tabulate, per ray: the exact normalized remainder
from the connection-formula oracle, the terminant prediction, and the
error-function switching law

    T_{N-k+1/2}(a alpha0) ~ 1/2 +- 1/2 erf((theta -+ pi) sqrt(|a| alpha0/2)),
    (T_{N-k}(-2 pi i z) + T_{M-k+1/2}(-2 pi i z))/2
        ~ 1/2 + 1/2 erf((theta - 3 pi/2) sqrt(pi |z|)).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .coefficients import a_coeff_exact
from .errors import DomainError, SectorError
from .expansions import (
    eval_series_large_a,
    eval_series_z,
    prefactor_z,
    remainder_quadrature_large_a,
    singulant,
)
from .gammafn import incomplete_gamma_continued
from .precision import PrecisionContext, erf_complex, riemann_zeta
from .sheets import ArgComplex, Sector, as_polar
from .terminant import terminant

_LOG2E = 1.4426950408889634


@dataclass(frozen=True)
class HyperEvaluation:
    base_sum: object  # mpc, the truncated series
    terminant_layer: object  # mpc, the re-expanded remainder
    residual_bound: object  # mpf
    certified: bool  # True when a proven bound applies
    indices: tuple  # (N, M or None, K, L or None)
    sector: Sector


@dataclass(frozen=True)
class ScanRow:
    theta: object
    exact: object  # mpc, oracle-normalized remainder
    terminant: object  # mpc, re-expansion prediction
    erf: object  # mpc, switching-law prediction
    thm_bound: object  # mpf
    certified: bool


def _sqrt_two_pi_over(a: ArgComplex):
    """sqrt(2 pi / a) with the root continued along the path of a."""
    return mp.sqrt(2 * mp.pi) * a.power(mp.mpf(-1) / 2)


def hyper_large_a(a, lam, N: int, K: int, ctx: PrecisionContext) -> HyperEvaluation:
    """Truncated series plus terminant layer for the large-a remainder.

    The layer equals e^{a alpha0} sqrt(2 pi/a) sum_{k<K} (a_{2k}/a^k)
    T_{N-k+1/2}(a alpha0); the residual bound is certified for
    2 <= K <= N and |arg a| <= pi, otherwise the reported number is the
    asymptotic order scale, flagged certified=False.
    """
    if K > N:
        raise DomainError("the re-expansion needs K <= N")
    if K < 0 or N < 0:
        raise DomainError("indices must be non-negative")
    a = as_polar(a)
    with ctx.workprec():
        theta = a.theta
        if abs(theta) >= 2 * mp.pi:
            raise SectorError("the re-expansion is stated for |arg a| < 2 pi")
        alpha0 = singulant(lam)
        w = ArgComplex(a.modulus * alpha0, theta)
        base = eval_series_large_a(a, lam, N, ctx).partial_sum
        av = a.value
        emerge = mp.exp(av * alpha0) * _sqrt_two_pi_over(a)
        layer = mp.mpc(0)
        for k in range(K):
            layer += (
                a_coeff_exact(2 * k).to_mp(ctx)
                / av ** k
                * terminant(N - k + mp.mpf(1) / 2, w, ctx).value
            )
        layer *= emerge
        bound, certified = _thm5_bound(a, alpha0, N, K, ctx, emerge, w)
        return HyperEvaluation(
            +base, +layer, bound, certified, (N, None, K, None), a.sector
        )


def _thm5_bound(a: ArgComplex, alpha0, N, K, ctx, emerge, w):
    theta = abs(a.theta)
    r = a.modulus
    if 2 <= K <= N and theta <= mp.pi:
        zK = riemann_zeta(K, ctx) if K >= 2 else mp.mpf(2)
        t_edge = terminant(N - K + mp.mpf(1) / 2, w, ctx).value
        first = (
            abs(emerge * t_edge)
            * (1 + zK)
            * mp.gamma(K)
            / ((2 * mp.pi) ** (K + 1) * r ** K)
        )
        second = (
            (1 + zK)
            * mp.gamma(K)
            * mp.gamma(N - K + mp.mpf(1) / 2)
            / (
                (2 * mp.pi) ** (K + mp.mpf(3) / 2)
                * r ** (N + 1)
                * alpha0 ** (N - K + mp.mpf(1) / 2)
            )
        )
        return +(first + second), True
    # non-certified asymptotic scale
    if theta <= mp.pi:
        scale = mp.exp(-r * alpha0) / r ** (K + mp.mpf(1) / 2)
    else:
        scale = mp.exp(mp.re(a.value) * alpha0) / r ** (K + mp.mpf(1) / 2)
    return +scale, False


def hyper_z(z, N: int, M: int, K: int, L: int, ctx: PrecisionContext) -> HyperEvaluation:
    """Even/odd-split truncated diagonal series plus the four-sum terminant
    layer; certified residual bound for 2 <= K < N, 2 <= L <= M and
    |arg z| <= pi/2, order-estimate scale (certified=False) elsewhere."""
    if not (0 <= K < N and 0 <= L <= M):
        raise DomainError("the re-expansion needs 0 <= K < N and 0 <= L <= M")
    z = as_polar(z)
    with ctx.workprec():
        theta = z.theta
        if abs(theta) >= 3 * mp.pi:
            raise SectorError("the re-expansion is stated for |arg z| < 3 pi")
        zv = z.value
        base = _split_series_z(z, N, M, ctx)
        wp = ArgComplex(2 * mp.pi * z.modulus, theta + mp.pi / 2)  # 2 pi i z
        wm = ArgComplex(2 * mp.pi * z.modulus, theta - mp.pi / 2)  # -2 pi i z
        ep = mp.exp(2j * mp.pi * zv)
        em = mp.exp(-2j * mp.pi * zv)
        half = mp.mpf(1) / 2
        sum1 = sum3 = sum2 = sum4 = mp.mpc(0)
        for k in range(K):
            c = a_coeff_exact(2 * k).to_mp(ctx) / zv ** k
            sum1 += c * terminant(N - k, wp, ctx).value
            sum2 += c * terminant(N - k, wm, ctx).value
        for l in range(L):
            c = a_coeff_exact(2 * l).to_mp(ctx) / zv ** l
            sum3 += c * terminant(M - l + half, wp, ctx).value
            sum4 += c * terminant(M - l + half, wm, ctx).value
        layer = ep * sum1 - em * sum2 - ep * sum3 - em * sum4
        bound, certified = _thm6_bound(z, N, M, K, L, ctx, wp, wm, ep, em)
        return HyperEvaluation(
            +base, +layer, bound, certified, (N, M, K, L), z.sector
        )


def _split_series_z(z: ArgComplex, N: int, M: int, ctx):
    """sum_{n<N} a_{2n}/z^n + sum_{m<M} a_{2m+1}/z^{m+1/2} on z's sheet."""
    zv = z.value
    inv_sqrt = z.power(mp.mpf(-1) / 2)
    s = mp.mpc(0)
    for n in range(N):
        s += a_coeff_exact(2 * n).to_mp(ctx) / zv ** n
    t = inv_sqrt  # z^-(m+1/2) as the loop runs
    for m in range(M):
        s += a_coeff_exact(2 * m + 1).to_mp(ctx) * t
        t /= zv
    return s


def _thm6_bound(z: ArgComplex, N, M, K, L, ctx, wp, wm, ep, em):
    theta = abs(z.theta)
    r = z.modulus
    half = mp.mpf(1) / 2
    two_pi = 2 * mp.pi
    if 2 <= K < N and 2 <= L <= M and theta <= mp.pi / 2:
        zK, zL = riemann_zeta(K, ctx), riemann_zeta(L, ctx)
        tNK = abs(ep * terminant(N - K, wp, ctx).value) + abs(
            em * terminant(N - K, wm, ctx).value
        )
        tML = abs(ep * terminant(M - L + half, wp, ctx).value) + abs(
            em * terminant(M - L + half, wm, ctx).value
        )
        bound = (
            (2 * mp.sqrt(K) + 1) * tNK * zK * mp.gamma(K) / (two_pi ** (K + 1) * r ** K)
            + (6 * K + 2) * mp.gamma(N - K) * zK * mp.gamma(K) / (two_pi ** (N + 2) * r ** N)
            + (2 * mp.sqrt(L) + 1) * tML * zL * mp.gamma(L) / (two_pi ** (L + 1) * r ** L)
            + (6 * L + 2)
            * mp.gamma(M - L + half)
            * zL
            * mp.gamma(L)
            / (two_pi ** (M + mp.mpf(5) / 2) * r ** (M + half))
        )
        return +bound, True
    # Non-certified asymptotic order scales.  Equal K = L keeps the plain
    # e^{-2 pi |z|} decay through |arg z| <= 3 pi/2 and the one-sided
    # exponential beyond; unequal indices degrade one sector earlier.
    sgn = 1 if z.theta >= 0 else -1
    imz = mp.im(z.value)
    if theta <= mp.pi / 2 or (K == L and theta <= 3 * mp.pi / 2):
        decay = mp.exp(-two_pi * r)
    elif theta <= 3 * mp.pi / 2:
        decay = mp.exp(-two_pi * sgn * imz)  # e^{-+2 pi Im z} for +-arg z
    elif K == L:
        decay = mp.exp(two_pi * sgn * imz)
    else:
        scale = abs(mp.sin(two_pi * z.value)) / r ** K + abs(
            mp.cos(two_pi * z.value)
        ) / r ** L
        return +scale, False
    return +(decay * (1 / r ** K + 1 / r ** L)), False


def optimal_truncation_large_a(mod_a, lam) -> int:
    """N minimizing the large-a series: round(|a| * alpha0)."""
    with mp.workprec(80):
        return max(1, int(mp.nint(mp.mpf(mod_a) * singulant(lam))))


def optimal_truncation_z(mod_z) -> int:
    """N = M minimizing the diagonal series: round(2 pi |z|)."""
    with mp.workprec(80):
        return max(2, int(mp.nint(2 * mp.pi * mp.mpf(mod_z))))


def _oracle_remainder_large_a(a: ArgComplex, lam, N: int, ctx):
    """R_N(a) measured from the connection-formula oracle: the analytic
    continuation Gamma(a, lambda a)/(z^a e^-z) minus the truncated series.
    Independent of the terminant machinery under test."""
    alpha0 = singulant(lam)
    z = ArgComplex(a.modulus * lam, a.theta)
    av = a.value
    oracle = incomplete_gamma_continued(av, z, ctx)
    # z^a e^-z on the sheet of z = lambda a
    pref = mp.exp(av * z.log() - z.value)
    series = eval_series_large_a(a, lam, N, ctx).partial_sum
    return oracle.value / pref - series, oracle.abs_err / abs(pref)


def stokes_scan_large_a(mod_a, lam, theta_grid, N: int, K: int, ctx: PrecisionContext):
    """Sweep arg a across a Stokes line at fixed |a|; per ray, normalize the
    measured remainder and the terminant layer by the emerging-series
    prefactor e^{a alpha0} sqrt(2 pi/a) and tabulate the erf switching law.
    """
    rows = []
    with ctx.workprec():
        alpha0 = singulant(lam)
        half = mp.mpf(1) / 2
        for theta in theta_grid:
            theta = mp.mpf(theta)
            a = ArgComplex(mp.mpf(mod_a), theta)
            w = ArgComplex(a.modulus * alpha0, theta)
            emerge = mp.exp(a.value * alpha0) * _sqrt_two_pi_over(a)
            measured, _ = _oracle_remainder_large_a(a, lam, N, ctx)
            exact_col = measured / emerge
            term_col = mp.mpc(0)
            for k in range(K):
                term_col += (
                    a_coeff_exact(2 * k).to_mp(ctx)
                    / a.value ** k
                    * terminant(N - k + half, w, ctx).value
                )
            line = mp.pi if theta >= 0 else -mp.pi
            erf_col = half + half * mp.sign(line) * erf_complex(
                (theta - line) * mp.sqrt(a.modulus * alpha0 / 2), ctx
            )
            bound, certified = _thm5_bound(a, alpha0, N, K, ctx, emerge, w)
            # normalize the bound like the columns
            rows.append(
                ScanRow(theta, +exact_col, +term_col, +erf_col, +(bound / abs(emerge)), certified)
            )
    return rows


def stokes_scan_z(mod_z, theta_grid, N: int, M: int, K: int, ctx: PrecisionContext):
    """Sweep arg z across +-3 pi/2 at fixed |z|.  Columns are normalized by
    the emerging prefactor -2 e^{-+2 pi i z}; the terminant column is the
    average (T_{N-k}(-2 pi i z) + T_{M-k+1/2}(-2 pi i z))/2 summed against
    a_{2k}/z^k (mirrored below the axis)."""
    rows = []
    with ctx.workprec():
        half = mp.mpf(1) / 2
        for theta in theta_grid:
            theta = mp.mpf(theta)
            z = ArgComplex(mp.mpf(mod_z), theta)
            zv = z.value
            up = theta >= 0
            emerge = -2 * mp.exp((-2j if up else 2j) * mp.pi * zv)
            oracle = incomplete_gamma_continued(zv, z, ctx)
            series = _split_series_z(z, N, M, ctx)
            measured = oracle.value / prefactor_z(z, ctx) - series
            exact_col = measured / emerge
            wm = ArgComplex(2 * mp.pi * z.modulus, theta + (-half if up else half) * mp.pi)
            term_col = mp.mpc(0)
            for k in range(K):
                t_even = terminant(N - k, wm, ctx).value
                t_odd = terminant(M - k + half, wm, ctx).value
                pair = (t_even + t_odd) / 2 if up else (-t_even + t_odd) / 2
                term_col += a_coeff_exact(2 * k).to_mp(ctx) / zv ** k * pair
            line = 3 * mp.pi / 2 if up else -3 * mp.pi / 2
            erf_col = half + half * (1 if up else -1) * erf_complex(
                (theta - line) * mp.sqrt(mp.pi * z.modulus), ctx
            )
            bound, certified = _thm6_bound(
                z, N, M, K, K, ctx,
                ArgComplex(2 * mp.pi * z.modulus, theta + mp.pi / 2),
                ArgComplex(2 * mp.pi * z.modulus, theta - mp.pi / 2),
                mp.exp(2j * mp.pi * zv), mp.exp(-2j * mp.pi * zv),
            )
            rows.append(
                ScanRow(theta, +exact_col, +term_col, +erf_col, +(bound / abs(emerge)), certified)
            )
    return rows


def scan_rows_to_csv(rows) -> str:
    """Render scan rows in the fixed column order."""
    out = ["theta,exact_re,exact_im,terminant_re,terminant_im,erf_re,erf_im,thm_bound,certified"]
    for r in rows:
        out.append(
            ",".join(
                [
                    mp.nstr(r.theta, 17),
                    mp.nstr(mp.re(r.exact), 17),
                    mp.nstr(mp.im(r.exact), 17),
                    mp.nstr(mp.re(r.terminant), 17),
                    mp.nstr(mp.im(r.terminant), 17),
                    mp.nstr(mp.re(r.erf), 17),
                    mp.nstr(mp.im(r.erf), 17),
                    mp.nstr(r.thm_bound, 12),
                    "true" if r.certified else "false",
                ]
            )
        )
    return "\n".join(out) + "\n"
