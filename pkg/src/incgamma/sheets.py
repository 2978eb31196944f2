"""Arguments beyond the principal branch.

The evaluations in this package routinely live on sectors wider than
(-pi, pi]: series in half-powers z**(n/2), prefactors z**(z-1/2), and
terminant arguments all need the *total* argument of a complex point, not
its principal value.  :class:`ArgComplex` carries (modulus, total argument)
losslessly; :class:`Sector` is the bookkeeping pair (principal theta, sheet
index m) with total = theta + 2*pi*m.

Powers and logarithms computed here follow one convention everywhere:
w**s = exp(s * (log|w| + i*theta_total)), i.e. the branch is continued along
the path that accumulated the argument.
"""

from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp

from .errors import DomainError


@dataclass(frozen=True)
class Sector:
    """Principal argument theta in (-pi, pi] plus a sheet counter m."""

    theta: object  # mpf
    m: int = 0

    def total(self):
        return self.theta + 2 * mp.pi * self.m

    @classmethod
    def from_total(cls, theta_total) -> "Sector":
        theta_total = mp.mpf(theta_total)
        m = int(mp.ceil((theta_total - mp.pi) / (2 * mp.pi)))
        return cls(theta_total - 2 * mp.pi * m, m)


@dataclass(frozen=True)
class ArgComplex:
    """A nonzero complex point with explicit total argument.

    ``modulus`` > 0 and ``theta`` is the full accumulated argument (any real
    number).  The projection onto the plane is modulus * exp(i*theta); two
    ArgComplex with arguments differing by 2*pi project to the same point but
    are distinct sheet positions.
    """

    modulus: object  # mpf > 0
    theta: object  # mpf, total argument

    def __post_init__(self):
        if not (self.modulus > 0):
            raise DomainError("ArgComplex requires a positive modulus")

    @classmethod
    def from_value(cls, w, extra_turns: int = 0) -> "ArgComplex":
        """Principal-argument lift of a plain complex number, optionally
        shifted by whole turns."""
        w = mp.mpc(w)
        if w == 0:
            raise DomainError("cannot take the argument of 0")
        return cls(abs(w), mp.arg(w) + 2 * mp.pi * extra_turns)

    @classmethod
    def from_polar_pi(cls, modulus, theta_over_pi) -> "ArgComplex":
        """Construct from modulus and argument given in units of pi."""
        return cls(mp.mpf(modulus), mp.pi * mp.mpf(theta_over_pi))

    @property
    def value(self):
        """Projection onto the complex plane (an mpc)."""
        return self.modulus * mp.expjpi(self.theta / mp.pi)

    @property
    def sector(self) -> Sector:
        return Sector.from_total(self.theta)

    def log(self):
        """log on this sheet: log|w| + i*theta_total."""
        return mp.log(self.modulus) + mp.mpc(0, 1) * self.theta

    def power(self, s):
        """w**s continued along the path: exp(s * self.log())."""
        return mp.exp(mp.mpc(s) * self.log())

    def rotated(self, dtheta) -> "ArgComplex":
        return ArgComplex(self.modulus, self.theta + dtheta)

    def scaled(self, factor) -> "ArgComplex":
        """Multiply by a positive real factor (argument unchanged)."""
        factor = mp.mpf(factor)
        if not factor > 0:
            raise DomainError("scaling factor must be positive")
        return ArgComplex(self.modulus * factor, self.theta)

    def conjugate(self) -> "ArgComplex":
        return ArgComplex(self.modulus, -self.theta)


def as_polar(w) -> ArgComplex:
    """Coerce a complex number (principal argument) or ArgComplex."""
    if isinstance(w, ArgComplex):
        return w
    return ArgComplex.from_value(w)
