"""The scaled terminant function and its error-function smoothing.

For p > 0 the scaled terminant is

    T_p(w) = e^{pi i p} Gamma(p)/(2 pi i) * Gamma(1-p, w)
           = e^{pi i p} w^{1-p} e^{-w}/(2 pi i)
             * int_0^inf t^{p-1} e^{-t}/(w+t) dt,      |arg w| < pi,

continued to every sheet by

    T_p(w e^{2 pi i}) = e^{-2 pi i p} T_p(w) + 1.

Near optimal truncation (p ~ |w|) it is exponentially small for
|arg w| < pi, passes through 1/2 on the Stokes line arg w = pi, and settles
at 1 beyond: the smooth switching profile is

    T_p(w) ~ 1/2 + 1/2 erf( c(phi) sqrt(|w|/2) ),    phi = arg w,

where c(phi) solves c^2/2 = 1 + i(phi - pi) - e^{i(phi - pi)} on the branch
c(phi) = (phi-pi) + i(phi-pi)^2/6 - (phi-pi)^3/36 - i(phi-pi)^4/270 + ...

Two independent base-sheet evaluations are provided.  The fast primary
route exploits that every needed order is an integer or half-integer:
Gamma(1-p, w) follows from Gamma(1/2, w) = sqrt(pi) erfc(sqrt(w)) (or
Gamma(0, w) = E1(w) for integer p) by the exact downward recurrence
Gamma(a-1, w) = (Gamma(a, w) - w**(a-1) e**-w)/(a-1), run with guard bits
covering the known cancellation (about 2.9*|w| + p bits).  The slow route
integrates the definition directly over a ray rotated by +-pi/4 whenever
arg w approaches +-pi, which keeps the pole at t = -w at angular distance
>= pi/4 from the path; the rotation is an exact contour deformation, no
pole is crossed, and the evaluation stays valid on the Stokes lines
themselves.  The two agree to working precision and the tests hold them
against each other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError
from .precision import (
    ApproxValue,
    PrecisionContext,
    erf_complex,
    integrate_semi_infinite,
)
from .sheets import ArgComplex, as_polar


class TerminantRoute(enum.Enum):
    INTEGRAL = "integral"
    GAMMA_CONTINUED = "continued"
    ERF_SMOOTHED = "erf-smoothed"


@dataclass(frozen=True)
class TerminantValue:
    value: object  # mpc
    p: object  # mpf > 0
    w: ArgComplex  # total argument recorded losslessly
    route: TerminantRoute
    abs_err: object = None  # mpf when the integral route ran


@dataclass(frozen=True)
class StokesMultiplier:
    """The transition coordinate c(phi); c(pi) = 0."""

    c: object  # mpc
    phi: object  # mpf


def _c_target(phi):
    return 1 + mp.mpc(0, 1) * (phi - mp.pi) - mp.exp(mp.mpc(0, 1) * (phi - mp.pi))


def _c_seed(phi):
    d = phi - mp.pi
    return d + mp.mpc(0, 1) * d ** 2 / 6 - d ** 3 / 36 - mp.mpc(0, 1) * d ** 4 / 270


def c_of_phi(phi, ctx: PrecisionContext) -> StokesMultiplier:
    """Solve c^2/2 = 1 + i(phi-pi) - e^{i(phi-pi)} on the branch whose
    expansion near phi = pi starts (phi-pi) + i(phi-pi)^2/6 - ...

    Newton from the series seed; for |phi - pi| > 1 the solution is walked
    out from pi in steps of at most 1/2 so the branch never flips.
    """
    with ctx.workprec():
        phi = mp.mpf(phi)
        if abs(phi - mp.pi) < mp.mpf(2) ** (-ctx.working_bits // 2):
            return StokesMultiplier(mp.mpc(0), phi)
        steps = max(1, int(mp.ceil(abs(phi - mp.pi) / mp.mpf("0.5"))))
        c = None
        for k in range(1, steps + 1):
            ph = mp.pi + (phi - mp.pi) * mp.mpf(k) / steps
            c = _c_seed(ph) if c is None else c
            target = _c_target(ph)
            for _ in range(ctx.working_bits):
                step = (c * c / 2 - target) / c
                c = c - step
                if abs(step) < mp.mpf(2) ** (-ctx.working_bits + 4) * (1 + abs(c)):
                    break
        return StokesMultiplier(+c, phi)


def _terminant_recurrence(p, w: ArgComplex, ctx: PrecisionContext) -> ApproxValue:
    """Base-sheet T_p(w) for integer or half-integer p through the exact
    downward recurrence seeded at erfc / E1; None when p is neither."""
    frac = p - mp.floor(p)
    if frac not in (0, mp.mpf(1) / 2):
        return None
    r = w.modulus
    guard = int(2.9 * float(r)) + int(p) + 96
    with ctx.workprec(guard):
        logw = w.log()
        wv = w.value
        if frac:
            a = mp.mpf(1) / 2
            g = mp.sqrt(mp.pi) * mp.erfc(mp.exp(logw / 2))
            steps = int(p - a)
        else:
            a = mp.mpf(0)
            g = _e1_on_sheet(wv, logw, r)
            steps = int(p) - 1
        emw = mp.exp(-wv)
        for _ in range(steps):
            g = (g - mp.exp((a - 1) * logw) * emw) / (a - 1)
            a -= 1
        value = mp.expjpi(p) * mp.gamma(p) / (2j * mp.pi) * g
        err = abs(value) * mp.mpf(2) ** (8 - ctx.precision_bits) + mp.mpf(2) ** (
            -2 * ctx.precision_bits
        )
    return ApproxValue(+value, +err)


def _e1_on_sheet(wv, logw, r):
    """E1(w) = -euler - log(w) + sum_{k>=1} (-1)^{k+1} w^k/(k k!), with the
    log on the sheet of w; the series is entire, so only the log matters.
    mpmath's e1 is used off the negative axis, the guarded series on it."""
    if abs(mp.im(wv)) > mp.mpf(1) / 4 or mp.re(wv) > 0:
        return mp.e1(wv)
    s = mp.mpc(0)
    t = mp.mpc(1)
    k = 1
    tiny = mp.eps * mp.mpf(2) ** (-16)
    while True:
        t = t * wv / k
        term = (-1) ** (k + 1) * t / k
        s += term
        if k > 2 * r + 20 and abs(term) < tiny * (abs(s) + 1):
            return -mp.euler - logw + s
        k += 1


def _terminant_integral(p, w: ArgComplex, ctx: PrecisionContext) -> ApproxValue:
    """The defining integral on |arg w| <= pi, ray rotated by +-pi/4 near
    the Stokes lines."""
    theta = w.theta
    if theta > mp.pi / 2:
        beta_pi = mp.mpf(1) / 4
    elif theta < -mp.pi / 2:
        beta_pi = -mp.mpf(1) / 4
    else:
        beta_pi = mp.mpf(0)
    rot = mp.expjpi(beta_pi)
    wv = w.value
    if beta_pi:

        def f(u):
            t = u * rot
            return mp.exp((p - 1) * (mp.log(u) + mp.mpc(0, 1) * beta_pi * mp.pi) - t) / (
                wv + t
            ) * rot

    else:

        def f(t):
            return t ** (p - 1) * mp.exp(-t) / (wv + t)

    peak = max(p - 1, mp.mpf(1)) / mp.cos(beta_pi * mp.pi)
    near = w.modulus * mp.cos(mp.pi / 4)  # closest approach to the pole
    out = integrate_semi_infinite(
        f,
        ctx,
        singularity_exponent=p - 1,
        splits=sorted({peak / 2, peak, 3 * peak, near}),
        max_levels=ctx.quad_max_levels + 2,
        rel_tol=2.0 ** (-(ctx.precision_bits // 2)),
    )
    pref = mp.expjpi(p) * mp.exp((1 - p) * w.log() - wv) / (2j * mp.pi)
    return out.scaled(pref)


def terminant(p, w, ctx: PrecisionContext, method: str = "auto") -> TerminantValue:
    """T_p(w) for p > 0 on any sheet of w.

    The base sheet |arg w| <= pi is evaluated through the erfc/E1 downward
    recurrence when p is an integer or half-integer (every occurrence at
    optimal truncation is) and through the defining integral otherwise, or
    when ``method="integral"`` forces it.  Beyond the Stokes lines the value
    is assembled from the base sheet through T_p(w e^{2 pi i}) =
    e^{-2 pi i p} T_p(w) + 1, the monodromy the defining incomplete gamma
    function inherits from its connection formula.
    """
    w = as_polar(w)
    with ctx.workprec():
        p = mp.mpf(p)
        if not p > 0:
            raise DomainError("the terminant is implemented for p > 0")
        turns = int(mp.ceil((w.theta - mp.pi) / (2 * mp.pi)))
        base = ArgComplex(w.modulus, w.theta - 2 * mp.pi * turns)
        val = None
        if method in ("auto", "recurrence"):
            val = _terminant_recurrence(p, base, ctx)
            if val is None and method == "recurrence":
                raise DomainError("recurrence route needs integer or half-integer p")
        if val is None:
            val = _terminant_integral(p, base, ctx)
        value, err = val.value, val.abs_err
        if turns:
            rot = mp.exp(-2j * mp.pi * p)
            step = 1 if turns > 0 else -1
            for _ in range(abs(turns)):
                if step > 0:
                    value = rot * value + 1
                else:
                    value = (value - 1) / rot
            err = err * abs(rot) ** turns + abs(value) * mp.eps * 8
        route = (
            TerminantRoute.INTEGRAL
            if turns == 0 and abs(w.theta) < mp.pi
            else TerminantRoute.GAMMA_CONTINUED
        )
        return TerminantValue(+value, p, w, route, +err)


def terminant_smoothed(p, w, ctx: PrecisionContext) -> TerminantValue:
    """The leading error-function approximation of T_p(w) near optimal
    truncation (p ~ |w|).

    For phi = arg w >= 0 (valid up to phi < 3 pi):
        T_p(w) ~ 1/2 + 1/2 erf(c(phi) sqrt(|w|/2)).
    For phi < 0 (valid down to phi > -3 pi) the mirrored form is used:
        e^{-2 pi i p} T_p(w) ~ -1/2 + 1/2 erf(-conj(c(-phi)) sqrt(|w|/2)),
    with the same branch of c evaluated at -phi and conjugated.
    """
    w = as_polar(w)
    with ctx.workprec():
        p = mp.mpf(p)
        phi = w.theta
        if not (-3 * mp.pi < phi < 3 * mp.pi):
            raise DomainError("smoothing is stated for |arg w| < 3 pi")
        s = mp.sqrt(w.modulus / 2)
        if phi >= 0:
            c = c_of_phi(phi, ctx).c
            value = mp.mpf(1) / 2 + erf_complex(c * s, ctx) / 2
        else:
            c = mp.conj(c_of_phi(-phi, ctx).c)
            value = mp.exp(2j * mp.pi * p) * (-mp.mpf(1) / 2 + erf_complex(-c * s, ctx) / 2)
        return TerminantValue(+value, p, w, TerminantRoute.ERF_SMOOTHED)
