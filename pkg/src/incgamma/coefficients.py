"""Exact generation of the asymptotic-series coefficients by every route,
with mutual cross-validation.

Two coefficient families drive everything downstream.

The polynomials b_n(lambda) of the large-first-parameter series
(degree n, positive integer coefficients, b_0 = 1, b_1 = lambda,
b_2 = 2*lambda**2 + lambda, ...) are generated by

  * the derivative recurrence
        b_n = lambda*(1-lambda)*b'_{n-1} + (2n-1)*lambda*b_{n-1},
  * potential/Bell polynomial formulas for the series
        lambda*e^t - t - lambda = sum_j a_j t^{j+1},
        a_0 = lambda-1, a_j = lambda/(j+1)!,
  * an explicit double sum over Stirling numbers of the second kind,
  * a resurgence quadrature against 1/gstar (numerical route).

The numbers a_n of the diagonal series (a_0 = 1, a_1 = -sqrt(2/pi)/3,
a_2 = 1/12, ...) are exactly rational for even n and rational multiples of
sqrt(2/pi) for odd n.  The authoritative generator raises the power series

    g(t) = (1/2) t**2 / (e^t - t - 1) = (1 + u(t))**(-1),
    u(t) = sum_{j>=1} 2 t**j / (j+2)!,

to the power (n+1)/2 (a potential polynomial with rational exponent, via
the power-series power recurrence) and normalizes by n!/(2**(n/2)
Gamma(n/2+1)).  Validators: an explicit Stirling-number formula, a
quadratic recurrence in the spirit of Lagrange inversion of
s = sqrt(2*(e^t - t - 1)), and resurgence quadratures against
gstar(+-i t).

All exact arithmetic is over Fraction / int; tables are immutable once
generated and cached at module level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import mp

from .errors import DomainError, GeneratorConflictError
from .gammafn import gstar_imag_axis, recip_gstar_positive_axis
from .precision import ApproxValue, PrecisionContext, integrate_semi_infinite

# ---------------------------------------------------------------------------
# Stirling numbers of the second kind, exact, memoized.

def to_mpf(x):
    """mpf from int/float/mpf or an exact Fraction."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


_STIRLING2_ROWS: list[list[int]] = [[1]]


def stirling2(n: int, k: int) -> int:
    """S(n, k) by the triangular recurrence S(n,k) = k*S(n-1,k) + S(n-1,k-1)."""
    if n < 0 or k < 0:
        raise DomainError("stirling2 requires n, k >= 0")
    if k > n:
        return 0
    while len(_STIRLING2_ROWS) <= n:
        m = len(_STIRLING2_ROWS)
        prev = _STIRLING2_ROWS[m - 1]
        row = [0] * (m + 1)
        for j in range(1, m + 1):
            row[j] = j * (prev[j] if j < m else 0) + prev[j - 1]
        _STIRLING2_ROWS.append(row)
    return _STIRLING2_ROWS[n][k]


# ---------------------------------------------------------------------------
# Exact value containers.


@dataclass(frozen=True)
class IntPolynomial:
    """A polynomial with exact integer coefficients, index = power."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction x, mp-valued otherwise."""
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        d = tuple(k * c for k, c in enumerate(self.coefficients))[1:]
        return IntPolynomial(d if d else (0,))


@dataclass(frozen=True)
class ExactCoefficient:
    """An exact value rational * sqrt(2/pi)**s with s in {0, 1}."""

    rational: Fraction
    sqrt_two_over_pi_power: int

    def __post_init__(self):
        if self.sqrt_two_over_pi_power not in (0, 1):
            raise DomainError("sqrt(2/pi) exponent must be 0 or 1")

    def to_mp(self, ctx: PrecisionContext):
        with ctx.workprec():
            v = mp.mpf(self.rational.numerator) / self.rational.denominator
            if self.sqrt_two_over_pi_power:
                v *= mp.sqrt(2 / mp.pi)
            return +v

    def __abs__(self) -> "ExactCoefficient":
        return ExactCoefficient(abs(self.rational), self.sqrt_two_over_pi_power)


# ---------------------------------------------------------------------------
# Potential and Bell polynomial tables.


@dataclass(frozen=True)
class BellTable:
    """Partial Bell polynomials B[j][i] and potential polynomials A[i][j]
    of a fixed power series sum_j a_j t^j (for Bell: sum_j a_j t^{j+1})."""

    series: tuple  # (a_0, a_1, ..., a_nmax) as Fractions
    bell: tuple  # bell[j][i] = B_{j,i}
    potential: tuple  # potential[i][j] = A_{i,j}


def _series_for_kind(kind: str, n_max: int, lam=None) -> list[Fraction]:
    if kind == "for-b":
        if lam is None:
            raise DomainError("the b-series needs lambda")
        lam = Fraction(lam)
        if lam == 1:
            raise DomainError(
                "lambda = 1 makes the leading series coefficient vanish; "
                "use the a_n routes instead"
            )
        return [lam - 1] + [
            Fraction(lam, math.factorial(j + 1)) for j in range(1, n_max + 1)
        ]
    if kind == "for-a":
        return [Fraction(1)] + [
            Fraction(2, math.factorial(j + 2)) for j in range(1, n_max + 1)
        ]
    raise DomainError(f"unknown series kind {kind!r}")


def potential_polynomials(kind: str, n_max: int, lam=None) -> BellTable:
    """Tables B_{j,i} and A_{i,j} for the chosen base series, exact.

    Recurrences: B_{n,k} = sum_{j=1}^{n-k+1} a_j B_{n-j,k-1} with B_{0,0}=1,
    B_{j,0}=0 (j>=1); A_{k,n} = sum_{j=0}^{n} (a_j/a_0) A_{k-1,n-j} with
    A_{0,0}=1, A_{0,j}=0 (j>=1).  In particular B_{j,1} = a_j = a_0 A_{1,j}.
    """
    a = _series_for_kind(kind, n_max, lam)
    if a[0] == 0:
        raise DomainError("potential polynomials need a_0 != 0")
    bell = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    bell[0][0] = Fraction(1)
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s = Fraction(0)
            for j in range(1, n - k + 2):
                s += a[j] * bell[n - j][k - 1]
            bell[n][k] = s
    ratio = [aj / a[0] for aj in a]
    pot = [[Fraction(0)] * (n_max + 1) for _ in range(n_max + 1)]
    pot[0][0] = Fraction(1)
    for k in range(1, n_max + 1):
        for n in range(0, n_max + 1):
            s = Fraction(0)
            for j in range(0, n + 1):
                s += ratio[j] * pot[k - 1][n - j]
            pot[k][n] = s
    freeze = lambda rows: tuple(tuple(r) for r in rows)
    return BellTable(tuple(a), freeze(bell), freeze(pot))


def potential_comtet(table: BellTable, n: int, j: int) -> Fraction:
    """A_{rho,j} at negative integer parameter rho = -n-1 from the integer
    rows, by Comtet's interpolation

        A_{rho,j} = Gamma(-rho+j+1)/(j! Gamma(-rho))
                    * sum_i (-1)**i / (-rho+i) * C(j,i) * A_{i,j}.
    """
    pref = Fraction(math.factorial(n + j + 1), math.factorial(j) * math.factorial(n))
    s = Fraction(0)
    for i in range(j + 1):
        s += Fraction((-1) ** i * math.comb(j, i), n + 1 + i) * table.potential[i][j]
    return pref * s


def power_series_pow(series: Sequence[Fraction], rho: Fraction, n_max: int):
    """Coefficients of (sum_k series[k] t^k)**rho for rational rho,
    series[0] == 1, by the power recurrence
        j*c_j = sum_{k=1}^{j} ((rho+1)k - j) * series[k] * c_{j-k}.
    This is the rational-exponent potential polynomial row A_{rho, j}.
    """
    if series[0] != 1:
        raise DomainError("power recurrence needs constant term 1")
    rho = Fraction(rho)
    c = [Fraction(1)] + [Fraction(0)] * n_max
    for j in range(1, n_max + 1):
        s = Fraction(0)
        for k in range(1, j + 1):
            if series[k]:
                s += ((rho + 1) * k - j) * series[k] * c[j - k]
        c[j] = s / j
    return c


# ---------------------------------------------------------------------------
# b_n(lambda): four routes.

_B_POLYS: list[IntPolynomial] = [IntPolynomial((1,))]


def b_poly_recurrence(n_max: int) -> list[IntPolynomial]:
    """b_0..b_nmax as exact integer polynomials from
    b_n = lambda*(1-lambda)*b'_{n-1} + (2n-1)*lambda*b_{n-1}, b_0 = 1."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    while len(_B_POLYS) <= n_max:
        n = len(_B_POLYS)
        prev = _B_POLYS[n - 1].coefficients
        dprev = [k * c for k, c in enumerate(prev)][1:]
        new = [0] * (n + 1)
        for k, c in enumerate(dprev):  # lambda*(1-lambda) * b'
            new[k + 1] += c
            new[k + 2] -= c
        for k, c in enumerate(prev):  # (2n-1)*lambda * b
            new[k + 1] += (2 * n - 1) * c
        _B_POLYS.append(IntPolynomial(tuple(new)))
    return _B_POLYS[: n_max + 1]


def b_coeff_stirling(lam, n: int):
    """b_n(lambda) by the explicit Stirling-number double sum

        b_n = (-1)^n (2n+1)! sum_k (lambda-1)^{n-k} / ((n+k+1)(n-k)!)
              * sum_j (-1)^j lambda^j S(n+j, j) / ((k-j)! (n+j)!);

    exact for int/Fraction lambda, mp-valued for mp reals."""
    if n < 0:
        raise DomainError("n must be >= 0")
    exact = isinstance(lam, (int, Fraction))
    lam = Fraction(lam) if exact else mp.mpf(lam)
    one = Fraction(1) if exact else mp.mpf(1)
    total = 0 * one
    f = math.factorial
    for k in range(n + 1):
        inner = 0 * one
        for j in range(k + 1):
            q = Fraction((-1) ** j * stirling2(n + j, j), f(k - j) * f(n + j))
            inner += (q if exact else mp.mpf(q.numerator) / q.denominator) * lam ** j
        piece = (lam - 1) ** (n - k) * inner
        total += piece / ((n + k + 1) * f(n - k)) if not exact else Fraction(
            1, (n + k + 1) * f(n - k)
        ) * piece
    return (-1) ** n * f(2 * n + 1) * total


def b_from_potential(n: int, lam) -> Fraction:
    """b_n(lambda) assembled from integer-parameter potential polynomials:
    b_n = (2n+1)!/n! (lambda-1)^n sum_k (-1)^{n+k}/(n+k+1) C(n,k) A_{k,n}."""
    table = potential_polynomials("for-b", n, lam)
    lam = Fraction(lam)
    s = Fraction(0)
    for k in range(n + 1):
        s += Fraction((-1) ** (n + k) * math.comb(n, k), n + k + 1) * table.potential[k][n]
    return Fraction(math.factorial(2 * n + 1), math.factorial(n)) * (lam - 1) ** n * s


def b_from_bell(n: int, lam) -> Fraction:
    """b_n(lambda) from partial Bell polynomials:
    b_n = sum_k (-1)^{n+k} (lambda-1)^{n-k} (n+k)!/k! B_{n,k}."""
    table = potential_polynomials("for-b", n, lam)
    lam = Fraction(lam)
    s = Fraction(0)
    for k in range(n + 1):
        s += (
            (-1) ** (n + k)
            * (lam - 1) ** (n - k)
            * Fraction(math.factorial(n + k), math.factorial(k))
            * table.bell[n][k]
        )
    return s


# ---------------------------------------------------------------------------
# a_n: exact generator plus three validators.

_A_EXACT: dict[int, ExactCoefficient] = {}


def _gamma_exact_half(x2: int):
    """Gamma(x2/2) as (Fraction q, pi_half_power p) meaning q * pi**(p/2);
    x2 must be a positive integer (so the argument is a positive integer or
    half-integer)."""
    if x2 <= 0:
        raise DomainError("argument must be positive")
    if x2 % 2 == 0:
        return Fraction(math.factorial(x2 // 2 - 1)), 0
    m = (x2 - 1) // 2  # Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
    return Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m)), 1


def a_coeff_exact(n: int) -> ExactCoefficient:
    """a_n from the authoritative generator: the coefficient of t**n in
    g(t)**((n+1)/2), g = (1/2) t^2/(e^t - t - 1) = (1+u)^{-1}, normalized by
    n!/(2**(n/2) Gamma(n/2+1)).  Even n are rational; odd n carry sqrt(2/pi).
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if n in _A_EXACT:
        return _A_EXACT[n]
    u = _series_for_kind("for-a", n)
    coeff = power_series_pow(u, Fraction(-(n + 1), 2), n)[n]
    if n % 2 == 0:
        m = n // 2
        norm = Fraction(math.factorial(n), 2 ** m * math.factorial(m))
        out = ExactCoefficient(norm * coeff, 0)
    else:
        m = (n - 1) // 2
        # 1/(2^{n/2} Gamma(n/2+1)) = rat * sqrt(2/pi) / 2 with
        # Gamma(m+3/2) = (2m+2)! sqrt(pi) / (4^{m+1} (m+1)!)
        rat = Fraction(
            math.factorial(n) * 4 ** (m + 1) * math.factorial(m + 1),
            2 ** m * math.factorial(2 * m + 2),
        )
        out = ExactCoefficient(rat * coeff / 2, 1)
    _A_EXACT[n] = out
    return out


def a_coeffs_exact(n_max: int) -> list[ExactCoefficient]:
    return [a_coeff_exact(n) for n in range(n_max + 1)]


def inversion_coefficients(n_max: int) -> list[Fraction]:
    """Coefficients c_1..c_nmax of the inverse function t(s) of
    s = sqrt(2*(e^t - t - 1)) (positive branch), from the quadratic
    recurrence

        c_m = (2-m)/(3m+3) * c_{m-1} - (1/2) sum_{k=2}^{m-3} c_{k+1} c_{m-k}

    for m >= 4, with c_1 = 1, c_2 = -1/6, c_3 = 1/36.  The compact form of
    the recurrence collapses two boundary products into one at m = 3, so
    c_3 is seeded rather than generated.  Returned list is 1-indexed via a
    leading zero placeholder.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    c = [Fraction(0), Fraction(1), Fraction(-1, 6), Fraction(1, 36)]
    for m in range(4, n_max + 1):
        s = Fraction(2 - m, 3 * m + 3) * c[m - 1]
        acc = Fraction(0)
        for k in range(2, m - 2):
            acc += c[k + 1] * c[m - k]
        c.append(s - acc / 2)
    return c[: n_max + 1]


def a_coeffs_bm_recurrence(n_max: int, validate: bool = True) -> list[ExactCoefficient]:
    """a_n for n <= n_max from the inversion-coefficient recurrence and

        a_n = 2**(n/2+1) Gamma((n+3)/2) c_{n+1} / sqrt(pi).

    Exact: for odd n, Gamma((n+3)/2) is a factorial and 2**(n/2+1) carries
    sqrt(2); for even n the half-integer Gamma supplies the sqrt(pi).
    With ``validate`` the result is compared, coefficient by coefficient,
    against the authoritative generator and any exact mismatch raises
    :class:`GeneratorConflictError`.
    """
    c = inversion_coefficients(n_max + 1)
    out = []
    for n in range(n_max + 1):
        q, p = _gamma_exact_half(n + 3)  # Gamma((n+3)/2) = q * pi**(p/2)
        if n % 2 == 0:
            # 2^{n/2+1} rational; q carries sqrt(pi) which cancels 1/sqrt(pi)
            assert p == 1
            val = Fraction(2 ** (n // 2 + 1)) * q * c[n + 1]
            out.append(ExactCoefficient(val, 0))
        else:
            # 2^{n/2+1} = 2^{(n+1)/2} sqrt(2); 1/sqrt(pi) joins it as sqrt(2/pi)
            assert p == 0
            val = Fraction(2 ** ((n + 1) // 2)) * q * c[n + 1]
            out.append(ExactCoefficient(val, 1))
    if validate:
        for n, coeff in enumerate(out):
            ref = a_coeff_exact(n)
            if coeff != ref:
                raise GeneratorConflictError(
                    f"inversion-recurrence a_{n} = {coeff} disagrees with the "
                    f"series-power generator {ref}"
                )
    return out


def a_coeff_stirling(n: int) -> ExactCoefficient:
    """a_n by the explicit Stirling-number double sum

        a_n = sum_k 2**(n/2+k+1) Gamma((3n+3)/2) / (sqrt(pi) (n+2k+1) (n-k)!)
              * sum_j (-1)^j S(n+k+j, j) / ((k-j)! (n+k+j)!).
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    q, p = _gamma_exact_half(3 * n + 3)  # Gamma((3n+3)/2) = q * pi**(p/2)
    f = math.factorial
    total = Fraction(0)
    for k in range(n + 1):
        inner = Fraction(0)
        for j in range(k + 1):
            inner += Fraction((-1) ** j * stirling2(n + k + j, j), f(k - j) * f(n + k + j))
        if n % 2 == 0:
            pref = Fraction(2 ** (n // 2 + k + 1), (n + 2 * k + 1) * f(n - k))
        else:
            # 2^{n/2} = 2^{(n-1)/2} sqrt(2)
            pref = Fraction(2 ** ((n - 1) // 2 + k + 1), (n + 2 * k + 1) * f(n - k))
        total += pref * inner
    if n % 2 == 0:
        # q sqrt(pi) / sqrt(pi) rational
        assert p == 1
        return ExactCoefficient(q * total, 0)
    # q / sqrt(pi) joins the loose sqrt(2): q * sqrt(2/pi)
    assert p == 0
    return ExactCoefficient(q * total, 1)


# ---------------------------------------------------------------------------
# Resurgence quadratures (numerical validators).


def b_coeff_resurgence_integral(lam, n: int, ctx: PrecisionContext) -> ApproxValue:
    """b_n(lambda) = (lambda-1)**(2n+1)/sqrt(2 pi)
    * int_0^inf t**(n-1/2) exp(-t*(lambda - log lambda - 1)) / gstar(t) dt,
    for lambda > 1."""
    with ctx.workprec():
        lam = to_mpf(lam)
        if not lam > 1:
            raise DomainError("the resurgence integral needs lambda > 1")
        if n < 0:
            raise DomainError("n must be >= 0")
        alpha0 = lam - mp.log(lam) - 1
        half = mp.mpf(1) / 2

        def f(t):
            return t ** (n - half) * mp.exp(-alpha0 * t) * recip_gstar_positive_axis(t)

        peak = (n + half) / alpha0
        out = integrate_semi_infinite(
            f, ctx, singularity_exponent=n - half, splits=[peak, 4 * peak + 4]
        )
        return out.scaled((lam - 1) ** (2 * n + 1) / mp.sqrt(2 * mp.pi))


def a_coeff_resurgence_integral(n: int, ctx: PrecisionContext) -> ApproxValue:
    """a_n for n >= 2 from the contour-pair integrals

        a_n = e^{-3 n pi i/4}/(2 pi i) int_0^inf t^{n/2-1} e^{-2 pi t}
              gstar(i t) dt  -  (mirror with +3n pi i/4 and gstar(-i t)).
    """
    if n < 2:
        raise DomainError("the integral representation holds only for n >= 2")
    with ctx.workprec():
        half = mp.mpf(1) / 2

        def make(sign):
            def f(t):
                return (
                    t ** (n * half - 1)
                    * mp.exp(-2 * mp.pi * t)
                    * gstar_imag_axis(sign * t)
                )

            return f

        # gstar(+-i t) contributes t**(-1/2) times a sqrt(t)-series at 0.
        peak = (n * half - 1) / (2 * mp.pi) + half
        kw = dict(
            singularity_exponent=n * half - 3 * half,
            sqrt_series=True,
            splits=[peak, 4 * peak + 2],
        )
        plus = integrate_semi_infinite(make(+1), ctx, **kw)
        minus = integrate_semi_infinite(make(-1), ctx, **kw)
        # The mirror term carries -e^{+3n pi i/4}/(2 pi i) = +conj(rot).
        rot = mp.expjpi(-3 * mp.mpf(n) / 4) / (2j * mp.pi)
        value = rot * plus.value + mp.conj(rot) * minus.value
        return ApproxValue(value, plus.abs_err + minus.abs_err)




# ---------------------------------------------------------------------------
# JSON-facing export of exact coefficients.


def coefficient_record(n: int, ctx: PrecisionContext, *, kind: str, lam=None) -> dict:
    """One export record.  ``kind`` is "a" or "b".  Exact parts serialize as
    decimal strings so a re-import reproduces them bit for bit."""
    with ctx.workprec():
        if kind == "a":
            c = a_coeff_exact(n)
            return {
                "n": n,
                "lambda": None,
                "value": mp.nstr(
                    c.to_mp(ctx), int(ctx.precision_bits * 0.3010) + 2
                ),
                "exact": {
                    "num": str(c.rational.numerator),
                    "den": str(c.rational.denominator),
                    "s": c.sqrt_two_over_pi_power,
                },
            }
        if kind == "b":
            poly = b_poly_recurrence(n)[n]
            value = None
            lam_str = None
            if lam is not None:
                lam_frac = Fraction(lam)
                lam_str = str(lam_frac)
                value = str(poly(lam_frac))
            return {
                "n": n,
                "lambda": lam_str,
                "value": value,
                "exact": {"poly": [str(c) for c in poly.coefficients]},
            }
    raise DomainError(f"unknown coefficient kind {kind!r}")


def coefficient_from_record(record: dict):
    """Invert :func:`coefficient_record` back to the exact object."""
    exact = record["exact"]
    if "poly" in exact:
        return IntPolynomial(tuple(int(c) for c in exact["poly"]))
    return ExactCoefficient(
        Fraction(int(exact["num"]), int(exact["den"])), int(exact["s"])
    )
