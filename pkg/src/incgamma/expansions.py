"""Truncated asymptotic series for the incomplete gamma function, exact
remainders by resurgence quadrature, and certified remainder bounds.

Large first parameter (a -> infinity, z = lambda*a, fixed lambda > 1):

    Gamma(a, z) = z**a e**(-z) ( sum_{n<N} (-a)**n b_n(lambda)/(z-a)**(2n+1)
                                 + R_N(a, lambda) ),
    R_N = (-a)**N/(z-a)**(2N+1) * (lambda-1)**(2N+1)/sqrt(2 pi)
          * int_0^inf t**(N-1/2) e**(-alpha0 t) / ((1 + t/a) gstar(t)) dt,

with singulant alpha0 = lambda - log(lambda) - 1.  Remainder bounds, with
theta = arg a and term_N the first omitted term:

    |R_N| <= |term_N|                               |theta| <= pi/2
    |R_N| <= |csc theta| |term_N|                   pi/2 < |theta| < pi
    |R_N| <= sqrt(e (N + 3/2)) |term_N|             pi/2 < |theta| <= pi
    |R_N| <= csc(|theta|-phi*) sec(phi*)**(N+1) |term_N|
                                                    pi/2 < |theta| < 3 pi/2

where phi* minimizes csc(theta-phi)/cos(phi)**(N+1), the unique root of
(N+2) cos(theta - 2 phi*) = N cos(theta) in the stated bracket.

Diagonal case (both parameters equal, z -> infinity):

    Gamma(z, z) = sqrt(pi/2) z**(z-1/2) e**(-z) ( sum_{n<N} a_n/z**(n/2)
                                                  + R_N(z) ),   N >= 2,

with R_N given by a pair of resurgence integrals against gstar(+-i t).
Bounds come in a mod-4 family (two to four first omitted terms, |arg z| <=
pi), a four-term sector bound with factor 1 for |arg z| <= 5 pi/4 and
|csc(2 theta)| for 5 pi/4 < |arg z| < 3 pi/2, and two-sided enclosures on
the positive axis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .coefficients import a_coeff_exact, b_poly_recurrence, to_mpf
from .errors import DomainError, SectorError
from .gammafn import gstar_imag_axis, recip_gstar_positive_axis
from .precision import ApproxValue, PrecisionContext, integrate_semi_infinite
from .sheets import ArgComplex, Sector, as_polar

# Minimum allowed distance of a quadrature ray from the integrand pole.
_POLE_GUARD = 2.0 ** -8


class BoundRegime(enum.Enum):
    CSC = "csc"
    MEIJER = "meijer"
    NEAR_STOKES_EQ98 = "near-stokes-sqrt-n"
    CASEII_MOD4 = "mod4"
    CASEII_SECTOR = "sector-csc2theta"
    POSITIVE_REAL_INTERVAL = "positive-real-interval"


@dataclass(frozen=True)
class BoundInterval:
    """Two-sided enclosure lower < sign * R_N(z) < upper for z > 0."""

    lower: object
    upper: object
    sign: int  # R_N is enclosed after multiplication by this +-1

    @property
    def magnitude(self):
        """Largest |R_N| compatible with the enclosure."""
        return max(abs(self.lower), abs(self.upper))


@dataclass(frozen=True)
class SeriesEvaluation:
    partial_sum: object  # mpc
    N: int
    remainder_bound: object  # mpf or BoundInterval
    bound_regime: BoundRegime
    sector: Sector


def singulant(lam):
    """alpha0 = lambda - log(lambda) - 1, the exponential scale of the
    large-a remainders."""
    lam = to_mpf(lam)
    return lam - mp.log(lam) - 1


# ---------------------------------------------------------------------------
# Large first parameter.


def _check_lambda(lam):
    lam = to_mpf(lam)
    if not lam > 1:
        raise DomainError("the large-a series requires fixed real lambda > 1")
    return lam


def _term_large_a(a: ArgComplex, lam, n: int):
    """(-a)**n b_n(lambda) / (z-a)**(2n+1) with z - a = (lambda-1) a; the
    powers are all integer so no sheet issues arise."""
    b_n = b_poly_recurrence(n)[n](lam)
    av = a.value
    return (-1) ** n * b_n / ((lam - 1) ** (2 * n + 1) * av ** (n + 1))


def eval_series_large_a(a, lam, N: int, ctx: PrecisionContext) -> SeriesEvaluation:
    """Partial sum sum_{n<N} (-a)**n b_n(lambda)/(z-a)**(2n+1) with exact
    b_n, plus the best applicable remainder bound."""
    if N < 0:
        raise DomainError("N must be >= 0")
    a = as_polar(a)
    with ctx.workprec():
        lam = _check_lambda(lam)
        b_poly_recurrence(N)
        s = mp.mpc(0)
        for n in range(N):
            s += _term_large_a(a, lam, n)
        bound, regime = error_bound_large_a(a, lam, N, ctx)
        return SeriesEvaluation(+s, N, bound, regime, a.sector)


def remainder_quadrature_large_a(a, lam, N: int, ctx: PrecisionContext) -> ApproxValue:
    """R_N(a, lambda) by quadrature of the resurgence integral; the route is
    independent of the coefficient tables it is used to test."""
    if N < 0:
        raise DomainError("N must be >= 0")
    a = as_polar(a)
    with ctx.workprec():
        lam = _check_lambda(lam)
        theta = a.theta
        if abs(theta) >= mp.pi:
            raise SectorError(
                "the remainder integral needs |arg a| < pi; use the "
                "terminant re-expansion beyond"
            )
        if abs(mp.sin(theta)) < _POLE_GUARD and abs(theta) > mp.pi / 2:
            raise SectorError(
                "integration ray passes within 2^-8 of the 1 + t/a pole; "
                "use the terminant re-expansion near the Stokes lines"
            )
        alpha0 = singulant(lam)
        av = a.value
        half = mp.mpf(1) / 2

        def f(t):
            return (
                t ** (N - half)
                * mp.exp(-alpha0 * t)
                / (1 + t / av)
                * recip_gstar_positive_axis(t)
            )

        peak = (N + half) / alpha0
        out = integrate_semi_infinite(
            f,
            ctx,
            singularity_exponent=N - half,
            sqrt_series=True,
            splits=[peak / 2, peak, 3 * peak + 4, a.modulus],
        )
        # (-a)^N/(z-a)^{2N+1} * (lam-1)^{2N+1}/sqrt(2 pi), with z-a = (lam-1) a
        pref = (-1) ** N / (mp.sqrt(2 * mp.pi) * av ** (N + 1))
        return out.scaled(pref)


def solve_meijer_phi(theta, N: int, ctx: PrecisionContext):
    """The minimizing rotation phi* of the bound factor
    csc(theta - phi)/cos(phi)**(N+1): the unique root of
    (N+2) cos(theta - 2 phi) = N cos(theta) in

        (0, theta - pi/2)    for pi/2 < theta < pi,
        (theta - pi, pi/2)   for pi <= theta < 3 pi/2,

    mirrored for negative theta.  Solved by bisection to full precision.
    """
    with ctx.workprec():
        theta = mp.mpf(theta)
        t = abs(theta)
        if not (mp.pi / 2 < t < 3 * mp.pi / 2):
            raise DomainError("phi* is defined for pi/2 < |theta| < 3 pi/2")
        lo, hi = (t - mp.pi, mp.pi / 2) if t >= mp.pi else (mp.mpf(0), t - mp.pi / 2)
        g = lambda phi: (N + 2) * mp.cos(t - 2 * phi) - N * mp.cos(t)
        glo, ghi = g(lo), g(hi)
        if not glo < 0 < ghi:
            raise DomainError("bracket does not straddle the root")
        for _ in range(ctx.working_bits + 8):
            mid = (lo + hi) / 2
            if mid == lo or mid == hi:
                break
            if g(mid) < 0:
                lo = mid
            else:
                hi = mid
        phi = (lo + hi) / 2
        return +phi if theta > 0 else -phi


def error_bound_large_a(a, lam, N: int, ctx: PrecisionContext):
    """Smallest applicable remainder bound with its regime tag.

    All candidates scale the first omitted term; the Meijer-optimized
    rotation extends certification up to |arg a| < 3 pi/2, and the
    sqrt(e(N+3/2)) form stays realistic on the Stokes lines themselves.
    """
    a = as_polar(a)
    with ctx.workprec():
        lam = _check_lambda(lam)
        theta = abs(a.theta)
        if theta >= 3 * mp.pi / 2:
            raise SectorError(
                "no certified bound for |arg a| >= 3 pi/2; continue with the "
                "connection formulas"
            )
        term = abs(_term_large_a(a, lam, N))
        candidates = []
        if theta <= mp.pi / 2:
            candidates.append((term, BoundRegime.CSC))
        if mp.pi / 2 < theta < mp.pi:
            s = mp.sin(theta)
            if s > 0:
                candidates.append((term / s, BoundRegime.CSC))
        if mp.pi / 2 < theta <= mp.pi:
            candidates.append(
                (mp.sqrt(mp.e * (N + mp.mpf(3) / 2)) * term, BoundRegime.NEAR_STOKES_EQ98)
            )
        if mp.pi / 2 < theta < 3 * mp.pi / 2:
            phi = solve_meijer_phi(theta, N, ctx)
            factor = 1 / (mp.sin(theta - phi) * mp.cos(phi) ** (N + 1))
            candidates.append((factor * term, BoundRegime.MEIJER))
        bound, regime = min(candidates, key=lambda c: c[0])
        return +bound, regime


# ---------------------------------------------------------------------------
# Diagonal case.


def _abs_a(n: int, ctx: PrecisionContext):
    return abs(a_coeff_exact(n).to_mp(ctx))


def prefactor_z(z, ctx: PrecisionContext):
    """sqrt(pi/2) z**(z - 1/2) e**(-z) with the power on the sheet of z."""
    z = as_polar(z)
    with ctx.workprec():
        zv = z.value
        return +(mp.sqrt(mp.pi / 2) * mp.exp((zv - mp.mpf(1) / 2) * z.log() - zv))


def eval_series_z(z, N: int, ctx: PrecisionContext) -> SeriesEvaluation:
    """Partial sum sum_{n<N} a_n / z**(n/2), square root positive on the
    positive axis and continued along the sheet of z."""
    if N < 2:
        raise DomainError("the diagonal series needs N >= 2")
    z = as_polar(z)
    with ctx.workprec():
        if abs(z.theta) >= 3 * mp.pi / 2:
            raise SectorError("the diagonal series is certified in |arg z| < 3 pi/2")
        rsqrt = z.power(mp.mpf(-1) / 2)
        s = mp.mpc(0)
        p = mp.mpc(1)
        for n in range(N):
            s += a_coeff_exact(n).to_mp(ctx) * p
            p *= rsqrt
        bound, regime = error_bound_z(z, N, ctx)
        if mp.im(z.value) == 0 and abs(z.theta) < mp.mpf(2) ** -60:
            s = mp.mpc(+mp.re(s), 0)  # all a_n real, sqrt(z) real
        return SeriesEvaluation(+s, N, bound, regime, z.sector)


def remainder_quadrature_z(z, N: int, ctx: PrecisionContext) -> ApproxValue:
    """R_N(z) for N >= 2 by the paired resurgence integrals

        e^{-3 N pi i/4}/(2 pi i z^{N/2}) int t^{N/2-1} e^{-2 pi t}
            gstar(i t)/(1 - e^{-3 pi i/4} (t/z)^{1/2}) dt   -  (mirror),

    square roots positive on the positive axis and continued in z."""
    if N < 2:
        raise DomainError("the remainder integrals need N >= 2")
    z = as_polar(z)
    with ctx.workprec():
        theta = z.theta
        if abs(theta) >= 3 * mp.pi / 2:
            raise SectorError("remainder integrals hold for |arg z| < 3 pi/2")
        # denominators 1 - e^{-+3 pi i/4} (t/z)^{1/2}: the ray distance to the
        # pole is |sin psi| when cos psi > 0, psi = -+3 pi/4 - theta/2
        for sgn in (+1, -1):
            psi = -sgn * 3 * mp.pi / 4 - theta / 2
            if mp.cos(psi) > 0 and abs(mp.sin(psi)) < _POLE_GUARD:
                raise SectorError(
                    "integration ray passes within 2^-8 of a denominator "
                    "pole (arg z near a Stokes line +-3 pi/2)"
                )
        half = mp.mpf(1) / 2
        inv_sqrt_z = z.power(-half)

        def make(sign):
            rot = mp.expjpi(-sign * mp.mpf(3) / 4)

            def f(t):
                den = 1 - rot * mp.sqrt(t) * inv_sqrt_z
                return (
                    t ** (N * half - 1)
                    * mp.exp(-2 * mp.pi * t)
                    / den
                    * gstar_imag_axis(sign * t)
                )

            return f

        peak = (N * half - 1) / (2 * mp.pi) + half
        kw = dict(
            singularity_exponent=N * half - 3 * half,
            sqrt_series=True,
            splits=[peak / 2, peak, 3 * peak + 2, z.modulus],
        )
        plus = integrate_semi_infinite(make(+1), ctx, **kw)
        minus = integrate_semi_infinite(make(-1), ctx, **kw)
        zpow = z.power(-N * half)
        rot_n = mp.expjpi(-3 * mp.mpf(N) / 4) / (2j * mp.pi)
        value = zpow * (rot_n * plus.value + mp.conj(rot_n) * minus.value)
        err = abs(zpow) * (plus.abs_err + minus.abs_err)
        if mp.im(z.value) == 0 and abs(theta) < mp.mpf(2) ** -60:
            value = mp.mpc(+mp.re(value), 0)
        return ApproxValue(value, err)


def error_bound_z(z, N: int, ctx: PrecisionContext):
    """Smallest applicable diagonal-series bound with its regime tag.

    * |arg z| <= pi: mod-4 family over the first omitted terms
        N = 0 (mod 4): |a_N|, |a_{N+1}|, |a_{N+2}| over rising half-powers
        N = 1, 2 (mod 4): two terms
        N = 3 (mod 4): four terms
    * |arg z| <= 5 pi/4: four-term sum, factor 1
    * 5 pi/4 < |arg z| < 3 pi/2: four-term sum times |csc(2 theta)|
    * z > 0: a two-sided enclosure of (+-1) R_N (returned as the bound when
      it is the tightest statement available).
    """
    if N < 2:
        raise DomainError("bounds start at N = 2")
    z = as_polar(z)
    with ctx.workprec():
        theta = abs(z.theta)
        if theta >= 3 * mp.pi / 2:
            raise SectorError(
                "no certified bound for |arg z| >= 3 pi/2; route through the "
                "connection formulas"
            )
        r = z.modulus
        zp = lambda j: r ** (mp.mpf(j) / 2)
        A = lambda j: _abs_a(j, ctx)
        candidates = []
        if theta <= mp.pi:
            k = N % 4
            terms = {0: 3, 1: 2, 2: 2, 3: 4}[k]
            s = mp.mpf(0)
            for j in range(terms):
                s += A(N + j) / zp(N + j)
            candidates.append((s, BoundRegime.CASEII_MOD4))
        four = sum(A(N + j) / zp(N + j) for j in range(4))
        if theta <= 5 * mp.pi / 4:
            candidates.append((four, BoundRegime.CASEII_SECTOR))
        else:
            s2 = abs(mp.sin(2 * theta))
            if s2 > 0:
                candidates.append((four / s2, BoundRegime.CASEII_SECTOR))
        if mp.im(z.value) == 0 and theta < mp.mpf(2) ** -60:
            # on the positive axis the two-sided enclosure is the statement
            return _positive_axis_interval(r, N, ctx), BoundRegime.POSITIVE_REAL_INTERVAL
        bound, regime = min(candidates, key=lambda c: c[0])
        return +bound, regime


def _positive_axis_interval(r, N: int, ctx: PrecisionContext) -> BoundInterval:
    """Two-sided enclosures of the diagonal remainder on the positive axis:

        max(0, T0 - T2) < (-1)^{M+1} R_{4M}   < T0 + T1
                  -T1   < (-1)^{M+1} R_{4M+1} < T0
                     0  < (-1)^{M}   R_{4M+2} < T0 + T1
        max(0, T0-T1-T2)< (-1)^{M+1} R_{4M+3} < T0 - T1 + T3

    where T_j = |a_{N+j}| / r**((N+j)/2) (for the 4M+3 case T1 and T2 are
    the |a_{N+1}|, |a_{N+2}| terms and T3 = |a_{N+3}| term).
    """
    T = lambda j: _abs_a(N + j, ctx) / r ** (mp.mpf(N + j) / 2)
    k = N % 4
    M = N // 4
    if k == 0:
        return BoundInterval(max(mp.mpf(0), T(0) - T(2)), T(0) + T(1), (-1) ** (M + 1))
    if k == 1:
        return BoundInterval(-T(1), T(0), (-1) ** (M + 1))
    if k == 2:
        return BoundInterval(mp.mpf(0), T(0) + T(1), (-1) ** M)
    return BoundInterval(
        max(mp.mpf(0), T(0) - T(1) - T(2)), T(0) - T(1) + T(3), (-1) ** (M + 1)
    )
