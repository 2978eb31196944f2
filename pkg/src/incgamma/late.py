"""Late-coefficient asymptotics: inverse factorial series for b_n(lambda),
four expansions for the odd-index a_n, and the auxiliary Dirichlet series.

With alpha0 = lambda - log(lambda) - 1, the coefficients b_n(lambda) obey
the inverse factorial series

    b_n = Gamma(n+1/2) (lambda-1)^{2n+1} / (sqrt(2 pi alpha0) alpha0^n)
          * ( sum_{k<K} (-1)^k alpha0^k a_{2k} Gamma(n-k+1/2)/Gamma(n+1/2)
              + A_K ),
    |A_K| <= alpha0^K |a_{2K}| Gamma(n-K+1/2)/Gamma(n+1/2)
             + alpha0^{K+1} |a_{2K+2}| Gamma(n-K-1/2)/Gamma(n+1/2),

whose bound is smallest near K ~ (n - 1/2) * 2 pi / (alpha0 + 2 pi).

For the odd-index coefficients (branches 4n+1 and 4n+3, prefactors
(-1)^n / (sqrt(2) pi (2 pi)^{2n+1/2 or 2n+3/2})), four variants share the
same skeleton sum over k < K of

    (-1)^{ceil(k/2)+1 or floor(k/2)+1} a_{2k} (2 pi)^k Gamma(2n-k+c) * F_k

with c = 1/2 (branch 4n+1) or 3/2 (branch 4n+3):

    INV_FACTORIAL: F_k = 1,             certified bound available
    ZETA:          F_k = zeta(2n-k+c),  certified bound available
    DINGLE:        F_k = zeta(2n-k+c+1), heuristic (no proven bound)
    XI:            F_k = xi(2n-k+c),     heuristic (no proven bound)

where xi(r) = sum_m (1/2)_m / (m! (m+1)^r) = 1 + (1/2) 2^-r + (3/8) 3^-r
+ (5/16) 4^-r + ..., r > 1/2, also representable as
(2 pi)^r/Gamma(r) int_0^inf t^{r-1} e^{-2 pi t} (1 - e^{-2 pi t})^{-1/2} dt.

The certified bounds for the first two variants are

    (2 sqrt(K)+1)/(2 pi)^{2n+5/2 or 2n+7/2} (1+zeta(K)) Gamma(K)
        * Gamma(2n-K+c) [* zeta(2n-K+c) for the ZETA variant],   K >= 2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .coefficients import a_coeff_exact, to_mpf
from .errors import DomainError
from .expansions import singulant
from .precision import PrecisionContext, integrate_semi_infinite, zeta_real


class LateVariant(enum.Enum):
    INV_FACTORIAL = "inverse-factorial"
    ZETA = "zeta"
    DINGLE = "dingle"
    XI = "xi"


@dataclass(frozen=True)
class LateApprox:
    approx: object  # mpf
    bound: object  # mpf, or None for the heuristic variants
    K: int
    variant: LateVariant

    @property
    def heuristic(self) -> bool:
        return self.bound is None


def b_late_optimal_K(lam, n: int) -> int:
    """Truncation minimizing the inverse-factorial bound:
    K ~ (n - 1/2) 2 pi / (alpha0 + 2 pi), taken to the integer below and
    clamped into [1, n-1]."""
    if n < 2:
        raise DomainError("late approximations need n >= 2")
    with mp.workprec(80):
        alpha0 = singulant(lam)
        k = int(mp.floor((n - mp.mpf(1) / 2) * 2 * mp.pi / (alpha0 + 2 * mp.pi)))
    return min(max(k, 1), n - 1)


def b_late(lam, n: int, K: int, ctx: PrecisionContext) -> LateApprox:
    """Inverse factorial approximation of b_n(lambda) truncated at K, with
    its certified bound; valid for 1 <= K <= n-1."""
    if not 1 <= K <= n - 1:
        raise DomainError("b_late needs 1 <= K <= n-1")
    with ctx.workprec():
        lam = to_mpf(lam)
        if not lam > 1:
            raise DomainError("b_late needs lambda > 1")
        alpha0 = singulant(lam)
        half = mp.mpf(1) / 2
        gn = mp.gamma(n + half)
        pref = gn * (lam - 1) ** (2 * n + 1) / (mp.sqrt(2 * mp.pi * alpha0) * alpha0 ** n)
        s = mp.mpf(0)
        for k in range(K):
            s += (
                (-1) ** k
                * alpha0 ** k
                * a_coeff_exact(2 * k).to_mp(ctx)
                * mp.gamma(n - k + half)
                / gn
            )
        tail = (
            alpha0 ** K * abs(a_coeff_exact(2 * K).to_mp(ctx)) * mp.gamma(n - K + half)
            + alpha0 ** (K + 1)
            * abs(a_coeff_exact(2 * K + 2).to_mp(ctx))
            * mp.gamma(n - K - half)
        ) / gn
        return LateApprox(+mp.re(pref * s), +(pref * tail), K, LateVariant.INV_FACTORIAL)


def _branch_constant(branch: int):
    """Half-integer offset c and the sign pattern of the branch."""
    if branch == 1:
        return mp.mpf(1) / 2, lambda k: (-1) ** (math.ceil(k / 2) + 1)
    if branch == 3:
        return mp.mpf(3) / 2, lambda k: (-1) ** (math.floor(k / 2) + 1)
    raise DomainError("branch selects the index family 4n+1 (1) or 4n+3 (3)")


def a_late(n: int, branch: int, variant: LateVariant, K: int, ctx: PrecisionContext) -> LateApprox:
    """Approximation of a_{4n+branch} truncated at K with the chosen
    variant; certified bounds exist for INV_FACTORIAL and ZETA when K >= 2,
    the DINGLE and XI variants are heuristic (bound = None)."""
    if 4 * n + branch < 2:
        raise DomainError("indices below 2 have no integral representation")
    if not 1 <= K <= 2 * n:
        raise DomainError("a_late needs 1 <= K <= 2n")
    variant = LateVariant(variant)
    certified = variant in (LateVariant.INV_FACTORIAL, LateVariant.ZETA)
    if certified and K < 2:
        raise DomainError("the certified bounds need K >= 2")
    with ctx.workprec():
        c, sign = _branch_constant(branch)
        two_pi = 2 * mp.pi
        pref = mp.mpf(-1) ** n / (mp.sqrt(2) * mp.pi * two_pi ** (2 * n + c))
        s = mp.mpf(0)
        for k in range(K):
            term = sign(k) * a_coeff_exact(2 * k).to_mp(ctx) * two_pi ** k * mp.gamma(
                2 * n - k + c
            )
            if variant is LateVariant.ZETA:
                term *= zeta_real(2 * n - k + c, ctx)
            elif variant is LateVariant.DINGLE:
                term *= zeta_real(2 * n - k + c + 1, ctx)
            elif variant is LateVariant.XI:
                term *= xi_function(2 * n - k + c, ctx)
            s += term
        approx = +mp.re(pref * s)
        bound = None
        if certified:
            bound = (
                (2 * mp.sqrt(K) + 1)
                / two_pi ** (2 * n + c + 2)
                * (1 + zeta_real(K, ctx))
                * mp.gamma(K)
                * mp.gamma(2 * n - K + c)
            )
            if variant is LateVariant.ZETA:
                bound *= zeta_real(2 * n - K + c, ctx)
            bound = +bound
        return LateApprox(approx, bound, K, variant)


def xi_function(r, ctx: PrecisionContext):
    """xi(r) = sum_m (1/2)_m / (m! (m+1)^r) for r > 1/2.

    Terms are positive and decreasing.  For r large enough that the
    algebraic tail ~ m^-(r+1/2) underruns the working precision within a
    few thousand terms (every use at optimal truncation does), the series
    is summed directly and stops when the term drops below 2^-(prec+guard)
    of the partial sum, which the decreasing-term tail estimate certifies.

    Smaller r would need astronomically many terms, so there the sum is
    split at M = 40 and the exact tail is evaluated through the Mellin-type
    form  tail = 1/Gamma(r) * int_0^inf t^{r-1} e^{-t} G_M(e^{-t}) dt with
    G_M(x) = sum_{m>=M} (1/2)_m/m! x^m, the generating-function tail, which
    restores spectral convergence at any r > 1/2.
    """
    with ctx.workprec():
        r = mp.mpf(r)
        if not r > mp.mpf(1) / 2:
            raise DomainError("the Dirichlet series diverges for r <= 1/2")
        # terms ~ m^-(r+1/2); direct summation only if 2^-wb is reached early
        direct_limit = 20_000
        needed = mp.mpf(2) ** (ctx.working_bits / (float(r) + 0.5))
        tiny = mp.mpf(2) ** (-ctx.working_bits)
        if needed <= direct_limit:
            s = mp.mpf(0)
            poch = mp.mpf(1)  # (1/2)_m / m!
            m = 0
            while True:
                term = poch / (m + 1) ** r
                s += term
                if term < tiny * s and m > 2:
                    return +s
                poch *= (mp.mpf(1) / 2 + m) / (m + 1)
                m += 1
        return _xi_small_r(r, ctx)


def _xi_small_r(r, ctx: PrecisionContext, M: int = 40):
    """Head sum of M terms plus the Mellin-form tail integral."""
    guard = M + 32  # cancellation when G_M is formed as a difference
    with ctx.workprec(guard):
        half = mp.mpf(1) / 2
        coeffs = [mp.mpf(1)]
        for m in range(1, M):
            coeffs.append(coeffs[-1] * (half + (m - 1)) / m)
        head = mp.fsum(coeffs[m] / (m + 1) ** r for m in range(M))
        cM = coeffs[-1] * (half + (M - 1)) / M  # (1/2)_M / M!
        tiny = mp.mpf(2) ** (-(ctx.working_bits + guard))

        def gf_tail(x, one_minus_x):
            # sum_{m>=M} (1/2)_m/m! x^m
            if x < half:
                s = mp.mpf(0)
                c = cM * x ** M
                m = M
                while True:
                    s += c
                    if c < tiny * (s + 1):
                        return s
                    c *= x * (half + m) / (m + 1)
                    m += 1
            poly = mp.mpf(0)
            for c in reversed(coeffs):
                poly = poly * x + c
            return 1 / mp.sqrt(one_minus_x) - poly

        def f(t):
            # 1 - e^-t through expm1: e^-t rounds to 1 for tiny nodes
            return t ** (r - 1) * mp.exp(-t) * gf_tail(mp.exp(-t), -mp.expm1(-t))

        # t -> 0: gf_tail(e^-t) ~ t^(-1/2) series in sqrt(t)
        out = integrate_semi_infinite(
            f,
            ctx,
            singularity_exponent=r - mp.mpf(3) / 2,
            sqrt_series=True,
            splits=[1, r + 1],
            extra_bits=guard,
        )
        return +mp.re(head + out.value / mp.gamma(r))


def xi_function_integral(r, ctx: PrecisionContext):
    """Cross-check route: xi(r) = (2 pi)^r / Gamma(r)
    * int_0^inf t^{r-1} e^{-2 pi t} (1 - e^{-2 pi t})^{-1/2} dt, r > 1/2."""
    with ctx.workprec():
        r = mp.mpf(r)
        if not r > mp.mpf(1) / 2:
            raise DomainError("the integral form needs r > 1/2")

        def f(t):
            return t ** (r - 1) * mp.exp(-2 * mp.pi * t) / mp.sqrt(-mp.expm1(-2 * mp.pi * t))

        # endpoint: t^{r-1} * (2 pi t)^{-1/2} series in t
        peak = (r + 1) / (2 * mp.pi)
        out = integrate_semi_infinite(
            f,
            ctx,
            singularity_exponent=r - mp.mpf(3) / 2,
            sqrt_series=True,
            splits=[peak, 3 * peak + 2],
        )
        return +mp.re((2 * mp.pi) ** r / mp.gamma(r) * out.value)
