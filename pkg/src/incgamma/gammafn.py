"""Gamma, the scaled gamma function, and the incomplete gamma oracle.

The scaled gamma function

    gstar(z) = Gamma(z) / (sqrt(2*pi) * z**(z-1/2) * exp(-z)),   |arg z| < pi,

tends to 1 at infinity and is the function that resurges inside every
remainder integral in this package.  Off the principal sector it is reached
through the connection identities

    gstar(z) = 1/(1 - exp(+-2*pi*i*z)) * 1/gstar(z*exp(-+pi*i)),
    gstar(z) = -exp(+-2*pi*i*z) * gstar(z*exp(+-2*pi*i)).

The ground-truth value of the upper incomplete gamma function on the right
half-plane comes from the quadrature of

    Gamma(a, z) = z**a * Integral_{0}^{inf} exp(a*t - z*exp(t)) dt,  Re z > 0,

whose doubly-exponential decay makes the truncated integral cheap at any
precision.  For pi/2 <= |arg z| <= pi the principal value is computed from the
horizontal-ray integral exp(-z) * Integral_{0}^{inf} (z+s)**(a-1) exp(-s) ds
(the path re-enters the right half-plane), with a guard-digit power series
taking over on the negative real axis.  Sectors |arg z| > pi are reached with
the monodromy formula

    Gamma(a, z*exp(2*pi*i*m)) = exp(2*pi*i*m*a)*Gamma(a, z)
                                + (1 - exp(2*pi*i*m*a))*Gamma(a).
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, workprec

from .errors import DomainError, QuadratureError, SectorError
from .precision import ApproxValue, PrecisionContext, integrate_semi_infinite
from .sheets import ArgComplex, as_polar

_LOG2E = 1.4426950408889634  # bits of cancellation per unit of exp magnitude


def _is_nonpositive_integer(z, tol) -> bool:
    z = mp.mpc(z)
    n = mp.nint(mp.re(z))
    return n <= 0 and abs(z - n) < tol


def gamma_complex(z, ctx: PrecisionContext):
    """Gamma(z) for complex z away from the poles 0, -1, -2, ..."""
    with ctx.workprec():
        z = mp.mpc(z)
        if _is_nonpositive_integer(z, mp.mpf(2) ** (-ctx.working_bits // 2)):
            raise DomainError(f"gamma pole at z = {mp.nstr(mp.re(z), 8)}")
        return +mp.gamma(z)


@dataclass(frozen=True)
class ScaledGammaValue:
    """gstar(argument); real and positive on the positive real axis."""

    value: object  # mpc
    argument: object  # mpc


def _gstar_raw(z):
    """gstar at an mpc point with |arg z| < pi (no wrapping, no checks)."""
    return mp.gamma(z) / (mp.sqrt(2 * mp.pi) * z ** (z - mp.mpf(1) / 2) * mp.exp(-z))


def gamma_star(z, ctx: PrecisionContext) -> ScaledGammaValue:
    """gstar(z) on the principal sector |arg z| < pi, principal z**(z-1/2)."""
    with ctx.workprec():
        z = mp.mpc(z)
        if z == 0:
            raise DomainError("gstar is undefined at 0")
        if mp.im(z) == 0 and mp.re(z) < 0:
            raise SectorError(
                "gstar requires |arg z| < pi; use gamma_star_continued for "
                "other sheets"
            )
        v = _gstar_raw(z)
        if mp.im(z) == 0:
            v = mp.mpc(+mp.re(v), 0)
        return ScaledGammaValue(+v, z)


def reciprocal_gamma_star(z, ctx: PrecisionContext):
    """1/gstar(z) evaluated directly (not as a reciprocal of gamma_star)."""
    with ctx.workprec():
        z = mp.mpc(z)
        if z == 0 or (mp.im(z) == 0 and mp.re(z) < 0):
            raise SectorError("1/gstar requires |arg z| < pi, z != 0")
        return +(mp.sqrt(2 * mp.pi) * z ** (z - mp.mpf(1) / 2) * mp.exp(-z) / mp.gamma(z))


# Quadrature nodes repeat across the paired resurgence integrals and across
# grid sweeps sharing split points, so the axis kernels are memoized on
# (node, working precision).  Values are exact function values; the caches
# only ever grow with distinct nodes and are cleared when oversized.
_AXIS_CACHE_LIMIT = 400_000
_RECIP_GSTAR_CACHE: dict = {}
_GSTAR_IMAG_CACHE: dict = {}


def recip_gstar_positive_axis(t):
    """1/gstar(t) for real t > 0 at the ambient precision, memoized."""
    key = (t._mpf_, mp.prec)
    hit = _RECIP_GSTAR_CACHE.get(key)
    if hit is None:
        if len(_RECIP_GSTAR_CACHE) > _AXIS_CACHE_LIMIT:
            _RECIP_GSTAR_CACHE.clear()
        hit = mp.sqrt(2 * mp.pi) * t ** (t - mp.mpf(1) / 2) * mp.exp(-t) / mp.gamma(t)
        _RECIP_GSTAR_CACHE[key] = hit
    return hit


def gstar_imag_axis(t):
    """gstar(i*t) for real t (either sign) at the ambient precision,
    memoized through the reflection gstar(-i t) = conj(gstar(i t))."""
    flip = t < 0
    if flip:
        t = -t
    key = (t._mpf_, mp.prec)
    hit = _GSTAR_IMAG_CACHE.get(key)
    if hit is None:
        if len(_GSTAR_IMAG_CACHE) > _AXIS_CACHE_LIMIT:
            _GSTAR_IMAG_CACHE.clear()
        hit = _gstar_raw(mp.mpc(0, 1) * t)
        _GSTAR_IMAG_CACHE[key] = hit
    return mp.conj(hit) if flip else hit


def gamma_star_continued(z, half_turns: int, ctx: PrecisionContext):
    """gstar(z * exp(i*pi*half_turns)) continued from the principal sector.

    One half turn uses gstar(w*exp(+-i*pi)) = 1/((1 - exp(-+2*pi*i*w)) *
    gstar(w)); repeated application reaches any sheet.  Division blows up
    when exp(+-2*pi*i*w) = 1, i.e. at integer w, which is reported.
    """
    if half_turns == 0:
        return gamma_star(z, ctx).value
    with ctx.workprec():
        z = mp.mpc(z)
        if mp.isint(mp.re(z)) and mp.im(z) == 0:
            raise DomainError(
                "connection formula is singular at integer z (exp(2*pi*i*z) = 1)"
            )
        value = _gstar_raw(z)
        # Track the accumulated rotation w = z * exp(i*pi*k); only
        # exp(-+2*pi*i*w) is needed, and |w| never changes.
        step = 1 if half_turns > 0 else -1
        phase = mp.mpc(z)  # w after k steps, as a plane value with bookkeeping
        turns = mp.mpf(0)  # accumulated argument offset in units of pi
        for _ in range(abs(half_turns)):
            # exp(-+2*pi*i*w) where w = z*exp(i*pi*turns):
            w_plane = z * mp.expjpi(turns)
            value = 1 / ((1 - mp.exp(-step * 2j * mp.pi * w_plane)) * value)
            turns += step
        return +value


def _eq0_truncation(a, z, bits):
    """Cutoff T with |exp(a*t - z*exp(t))| below 2**-bits of the peak."""
    ra, rz = mp.re(a), mp.re(z)
    # log-magnitude g(t) = ra*t - rz*exp(t); peak at log(ra/rz) when positive
    t_peak = mp.log(ra / rz) if ra > rz else mp.mpf(0)
    g_peak = ra * t_peak - rz * mp.exp(t_peak)
    drop = bits * mp.log(2) + 64
    T = t_peak + 1
    while ra * T - rz * mp.exp(T) > g_peak - drop:
        T += max(1, T)
    return t_peak, T


def incomplete_gamma_oracle(a, z, ctx: PrecisionContext) -> ApproxValue:
    """Gamma(a, z) for Re z > 0 by quadrature of the defining integral.

    This is the ground truth every expansion in the package is tested
    against: Gamma(a,z) = z**a * int_0^inf exp(a*t - z*exp(t)) dt with the
    principal branch of z**a.
    """
    with ctx.workprec():
        a, z = mp.mpc(a), mp.mpc(z)
        if not mp.re(z) > 0:
            raise SectorError(
                "the defining integral needs Re z > 0; route through "
                "incomplete_gamma_principal / continue_incomplete_gamma"
            )
        t_peak, T = _eq0_truncation(a, z, ctx.working_bits)
        f = lambda t: mp.exp(a * t - z * mp.exp(t))
        pts = [mp.mpf(0)] + ([t_peak] if t_peak > 0 else []) + [T]
        za = z ** a
        # Im(z e^t) makes the tail oscillate with exponentially growing
        # frequency, which costs refinement levels; retry deeper on a stall.
        levels = ctx.quad_max_levels
        for attempt in range(3):
            value, est = mp.quad(f, pts, error=True, maxdegree=levels)
            out = za * value
            scale = abs(out) + mp.mpf(2) ** (-ctx.precision_bits)
            if 2 * abs(za) * est <= ctx.quad_rel_tol * scale:
                break
            levels += 2
        else:
            raise QuadratureError(
                "incomplete gamma quadrature stalled",
                best=ApproxValue(out, 2 * abs(za) * est),
                est_error=2 * abs(za) * est,
                levels=levels,
            )
        abs_err = 2 * abs(za) * est + abs(out) * mp.mpf(2) ** (4 - ctx.precision_bits)
        return ApproxValue(out, abs_err)


def _incomplete_gamma_ray(a, z: ArgComplex, ctx: PrecisionContext) -> ApproxValue:
    """Gamma(a,z) = exp(-z) * int_0^inf (z+s)**(a-1) exp(-s) ds.

    Valid whenever the horizontal path z + s avoids the origin (Im z != 0,
    or z on the positive axis); arg(z+s) then stays principal throughout.
    """
    with ctx.workprec():
        zv = z.value
        f = lambda s: mp.exp((a - 1) * mp.log(zv + s) - s)
        splits = []
        approach = -mp.re(zv)  # closest approach to the origin
        if approach > 0:
            splits += [approach / 2, approach, 2 * approach]
        bulk = abs(zv) + max(1, mp.re(a))
        splits.append(bulk)
        levels = ctx.quad_max_levels + 2
        # arg(z+s) sweeps from theta to 0, so the integrand oscillates and
        # cancels roughly exp(|Im a| * |theta|); raise the precision to match.
        boost = int(_LOG2E * abs(mp.im(mp.mpc(a))) * abs(z.theta)) + 64
        try:
            out = integrate_semi_infinite(
                f, ctx, splits=splits, max_levels=levels, extra_bits=boost
            )
        except QuadratureError:
            out = integrate_semi_infinite(
                f, ctx, splits=splits, max_levels=levels + 2,
                extra_bits=boost + 128,
            )
        return out.scaled(mp.exp(-zv))


def _incomplete_gamma_series(a, z: ArgComplex, ctx: PrecisionContext) -> ApproxValue:
    """Gamma(a,z) = Gamma(a) - z**a * sum_k (-z)**k / (k! (a+k)).

    The series is entire in z; z**a carries the sheet.  Terms grow to about
    exp(|z|), so the sum runs with ~1.5*|z| guard bits.  Non-positive integer
    a (pole of Gamma(a)) is rerouted through E1 and the downward recurrence
    Gamma(a-1, z) = (Gamma(a, z) - z**(a-1) exp(-z)) / (a - 1).
    """
    r = z.modulus
    extra = int(1.5 * float(r)) + 96
    with ctx.workprec(extra):
        a = mp.mpc(a)
        zv = z.value
        eps_tiny = mp.mpf(2) ** (-ctx.working_bits - extra + 16)
        if _is_nonpositive_integer(a, mp.mpf(2) ** (-ctx.working_bits // 2)):
            value = _upper_gamma_nonpositive_int(int(mp.nint(mp.re(a))), z)
        else:
            s = mp.mpc(0)
            term = mp.mpc(1)  # (-z)^k / k!
            k = 0
            while True:
                s += term / (a + k)
                term = term * (-zv) / (k + 1)
                k += 1
                if k > 2 * r + 20 and abs(term / (a + k)) < eps_tiny * (abs(s) + 1):
                    break
            value = mp.gamma(a) - z.power(a) * s
        err = abs(value) * mp.mpf(2) ** (-ctx.working_bits + 8)
    return ApproxValue(+value, +err)


def _upper_gamma_nonpositive_int(n: int, z: ArgComplex):
    """Gamma(n, z) for integer n <= 0 via E1 and the downward recurrence.

    E1(z) = -euler - log(z) + sum_{k>=1} (-1)**(k+1) z**k / (k k!), with
    log(z) on the sheet of z.  Runs at the ambient (already boosted)
    precision.
    """
    zv = z.value
    s = mp.mpc(0)
    t = mp.mpc(1)  # z^k / k!
    k = 1
    r = z.modulus
    eps_tiny = mp.eps * mp.mpf(2) ** (-16)
    while True:
        t = t * zv / k
        term = (-1) ** (k + 1) * t / k
        s += term
        if k > 2 * r + 20 and abs(term) < eps_tiny * (abs(s) + 1):
            break
        k += 1
    value = -mp.euler - z.log() + s  # Gamma(0, z)
    emz = mp.exp(-zv)
    logz = z.log()
    for m in range(0, n, -1):
        # Gamma(m-1, z) = (Gamma(m, z) - z**(m-1) exp(-z)) / (m - 1)
        value = (value - mp.exp((m - 1) * logz) * emz) / (m - 1)
    return value


def incomplete_gamma_principal(a, z, ctx: PrecisionContext) -> ApproxValue:
    """Principal-sheet Gamma(a, z) for |arg z| <= pi.

    Dispatch: defining integral on |arg z| < 0.45*pi, horizontal-ray
    integral up to the negative axis, guarded power series on and near it.
    """
    z = as_polar(z)
    with ctx.workprec():
        theta = z.theta
        if abs(theta) > mp.pi + mp.mpf(2) ** (-ctx.working_bits // 2):
            raise SectorError(
                "principal evaluation needs |arg z| <= pi; reduce through "
                "continue_incomplete_gamma"
            )
        a = mp.mpc(a)
        on_axis = abs(abs(theta) - mp.pi) < mp.mpf(2) ** (-60)
        thin = mp.re(z.value) < 0 and abs(mp.im(z.value)) < mp.mpf(1) / 2
        if abs(theta) < mp.mpf("0.25") * mp.pi:
            return incomplete_gamma_oracle(a, z.value, ctx)
        if on_axis or thin:
            return _incomplete_gamma_series(a, z, ctx)
        return _incomplete_gamma_ray(a, z, ctx)


def continue_incomplete_gamma(a, z, m: int, ctx: PrecisionContext):
    """Gamma(a, z*exp(2*pi*i*m)) from the principal value of Gamma(a, z).

    For a not a non-positive integer this is
    exp(2*pi*i*m*a) * Gamma(a,z) + (1 - exp(2*pi*i*m*a)) * Gamma(a);
    positive integer a makes the monodromy factor 1 and the value is
    unchanged, while at non-positive integer a the formula degenerates to
    the limit Gamma(a, z) - 2*pi*i*m*(-1)**n / n!  (n = -a).
    """
    base = incomplete_gamma_principal(a, z, ctx).value
    if m == 0:
        return base
    with ctx.workprec():
        a = mp.mpc(a)
        tol = mp.mpf(2) ** (-ctx.working_bits // 2)
        if abs(a - mp.nint(mp.re(a))) < tol and mp.isint(mp.nint(mp.re(a))):
            n = int(mp.nint(mp.re(a)))
            if n > 0:
                return base
            return +(base - 2j * mp.pi * m * mp.mpf(-1) ** (-n) / mp.factorial(-n))
        # |exp(2*pi*i*m*a)| = exp(-2*pi*m*Im a) can dwarf the result; boost.
        extra = int(2 * mp.pi * abs(m) * abs(mp.im(a)) * _LOG2E) + 64
        with workprec(ctx.working_bits + extra):
            rot = mp.exp(2j * mp.pi * m * a)
            return +(rot * base + (1 - rot) * mp.gamma(a))


def incomplete_gamma_continued(a, z, ctx: PrecisionContext) -> ApproxValue:
    """Gamma(a, z) on any sheet, reducing |arg z| > pi by whole turns."""
    z = as_polar(z)
    with ctx.workprec():
        if abs(z.theta) <= mp.pi:
            return incomplete_gamma_principal(a, z, ctx)
        m = int(mp.ceil((z.theta - mp.pi) / (2 * mp.pi)))
        base = ArgComplex(z.modulus, z.theta - 2 * mp.pi * m)
        base_val = incomplete_gamma_principal(a, base, ctx)
        value = continue_incomplete_gamma(a, base, m, ctx)
        rot_mag = mp.exp(-2 * mp.pi * m * mp.im(mp.mpc(a)))
        return ApproxValue(value, base_val.abs_err * rot_mag + abs(value) * mp.eps * 16)
