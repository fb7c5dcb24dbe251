"""Exact p-adic integer and scalar arithmetic at fixed finite precision.

Values are truncated residues mod p^N.  Absolute values and ball measures
are exact ``Fraction`` objects; no floats appear anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DivergentSeries,
    InvalidPrime,
    NotAUnit,
    NotPAdicInteger,
    PrecisionMismatch,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p} is not prime")
    return p


def rational_valuation(x: Fraction, p: int) -> int | None:
    """Exponent of p in x, or None for x = 0."""
    if x == 0:
        return None
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def abs_p(x, p: int) -> Fraction:
    """p-adic absolute value |x|_p = p^(-l) where p^l exactly divides x."""
    check_prime(p)
    x = Fraction(x)
    v = rational_valuation(x, p)
    if v is None:
        return Fraction(0)
    return Fraction(p) ** (-v)


@dataclass(frozen=True)
class PAdicInt:
    """Residue mod p^N standing for a p-adic integer known to N digits."""

    p: int
    precision: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.p**self.precision)

    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def valuation(self) -> int:
        """Largest l <= N with p^l | residue; saturates at N for residue 0."""
        if self.residue == 0:
            return self.precision
        v = 0
        r = self.residue
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    @property
    def valuation_saturated(self) -> bool:
        """True when the valuation reads ">= N" rather than an exact value."""
        return self.residue == 0

    def abs(self) -> Fraction:
        """|x|_p of the residue; 0 for the (saturated) zero residue."""
        if self.residue == 0:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation)

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def _check_compatible(self, other: "PAdicInt") -> None:
        if self.p != other.p or self.precision != other.precision:
            raise PrecisionMismatch(
                f"cannot combine mod {self.p}^{self.precision} with "
                f"mod {other.p}^{other.precision}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = PAdicInt(self.p, self.precision, other)
        self._check_compatible(other)
        return PAdicInt(self.p, self.precision, self.residue + other.residue)

    def __neg__(self):
        return PAdicInt(self.p, self.precision, -self.residue)

    def __sub__(self, other):
        if isinstance(other, int):
            other = PAdicInt(self.p, self.precision, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = PAdicInt(self.p, self.precision, other)
        self._check_compatible(other)
        return PAdicInt(self.p, self.precision, self.residue * other.residue)

    def invert(self) -> "PAdicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self.residue} is divisible by {self.p}")
        return PAdicInt(self.p, self.precision, pow(self.residue, -1, self.modulus))

    def reduce(self, l: int) -> int:
        """Image in Z/p^l Z, l <= N."""
        if l > self.precision:
            raise PrecisionMismatch(f"cannot reduce mod p^{l} at precision {self.precision}")
        return self.residue % self.p**l

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.precision, "residue": str(self.residue)}

    @classmethod
    def from_json(cls, obj: dict) -> "PAdicInt":
        return cls(int(obj["p"]), int(obj["N"]), int(obj["residue"]))

    def __repr__(self):
        return f"{self.residue} mod {self.p}^{self.precision}"


def padic_from_rational(x, p: int, N: int) -> PAdicInt:
    """Residue r with b*r = a mod p^N for x = a/b, b coprime to p."""
    check_prime(p)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPAdicInteger(f"{x} has |x|_{p} > 1")
    m = p**N
    r = x.numerator * pow(x.denominator, -1, m) % m
    return PAdicInt(p, N, r)


@dataclass(frozen=True)
class PAdicScalar:
    """Element of Q_p as p^exponent * unit, or zero.

    The unit part has valuation 0; |x|_p = p^(-exponent).  Zero is flagged
    by ``unit = None``.
    """

    p: int
    precision: int
    exponent: int
    unit_residue: int | None

    def __post_init__(self):
        check_prime(self.p)
        if self.unit_residue is not None:
            u = self.unit_residue % self.p**self.precision
            if u % self.p == 0:
                raise ValueError("unit part must have valuation 0")
            object.__setattr__(self, "unit_residue", u)

    @classmethod
    def zero(cls, p: int, N: int) -> "PAdicScalar":
        return cls(p, N, 0, None)

    @classmethod
    def from_rational(cls, x, p: int, N: int) -> "PAdicScalar":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, N)
        v = rational_valuation(x, p)
        unit = x / Fraction(p) ** v
        m = p**N
        u = unit.numerator * pow(unit.denominator, -1, m) % m
        return cls(p, N, v, u)

    @classmethod
    def from_padic_int(cls, x: PAdicInt) -> "PAdicScalar":
        if x.residue == 0:
            return cls.zero(x.p, x.precision)
        v = x.valuation
        return cls(x.p, x.precision, v, x.residue // x.p**v)

    @property
    def is_zero(self) -> bool:
        return self.unit_residue is None

    def abs(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.p) ** (-self.exponent)

    def unit_part(self) -> PAdicInt:
        if self.is_zero:
            raise NotAUnit("zero has no unit part")
        return PAdicInt(self.p, self.precision, self.unit_residue)

    def to_padic_int(self) -> PAdicInt:
        """Reduction to a residue mod p^N; requires exponent >= 0."""
        if self.is_zero:
            return PAdicInt(self.p, self.precision, 0)
        if self.exponent < 0:
            raise NotPAdicInteger(f"|x|_{self.p} = {self.abs()} > 1")
        return PAdicInt(
            self.p, self.precision, self.unit_residue * self.p**self.exponent
        )

    def _check_compatible(self, other: "PAdicScalar") -> None:
        if self.p != other.p or self.precision != other.precision:
            raise PrecisionMismatch("mismatched p or precision")

    def __mul__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check_compatible(other)
        if self.is_zero or other.is_zero:
            return PAdicScalar.zero(self.p, self.precision)
        return PAdicScalar(
            self.p,
            self.precision,
            self.exponent + other.exponent,
            self.unit_residue * other.unit_residue % self.p**self.precision,
        )

    def __neg__(self) -> "PAdicScalar":
        if self.is_zero:
            return self
        return PAdicScalar(
            self.p,
            self.precision,
            self.exponent,
            -self.unit_residue % self.p**self.precision,
        )

    def __add__(self, other: "PAdicScalar") -> "PAdicScalar":
        self._check_compatible(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = (self, other) if self.exponent <= other.exponent else (other, self)
        m = self.p**self.precision
        s = (lo.unit_residue + hi.unit_residue * self.p ** (hi.exponent - lo.exponent)) % m
        if s == 0:
            # cancellation below the working precision
            return PAdicScalar.zero(self.p, self.precision)
        v = 0
        while s % self.p == 0:
            s //= self.p
            v += 1
        return PAdicScalar(self.p, self.precision, lo.exponent + v, s)

    def __sub__(self, other: "PAdicScalar") -> "PAdicScalar":
        return self + (-other)

    def invert(self) -> "PAdicScalar":
        if self.is_zero:
            raise NotAUnit("cannot invert zero")
        return PAdicScalar(
            self.p,
            self.precision,
            -self.exponent,
            pow(self.unit_residue, -1, self.p**self.precision),
        )

    def __repr__(self):
        if self.is_zero:
            return f"0 (p={self.p})"
        return f"{self.p}^{self.exponent} * ({self.unit_residue} mod {self.p}^{self.precision})"


def geometric_sum(y: PAdicScalar, N: int | None = None) -> PAdicScalar:
    """Exact 1/(1-y) for |y|_p < 1, as the limit of the partial sums."""
    if N is None:
        N = y.precision
    if not y.is_zero and y.exponent <= 0:
        raise DivergentSeries(f"|y|_p = {y.abs()} >= 1")
    one = PAdicScalar.from_rational(1, y.p, N)
    if y.is_zero:
        return one
    denom = one - PAdicScalar(y.p, N, y.exponent, y.unit_residue)
    return denom.invert()


def ultrametric_sum(terms: list[PAdicScalar]) -> tuple[PAdicScalar, bool]:
    """Sum of the terms plus the check |sum|_p <= max |a_j|_p."""
    if not terms:
        raise ValueError("empty term list")
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    bound = max(t.abs() for t in terms)
    return total, total.abs() <= bound


def cauchy_product(a: list[PAdicScalar], b: list[PAdicScalar]) -> list[PAdicScalar]:
    """c_l = sum_{j<=l} a_j b_{l-j}, indexwise exact."""
    if not a or not b:
        raise ValueError("empty term list")
    p, N = a[0].p, a[0].precision
    out = []
    for l in range(len(a) + len(b) - 1):
        c = PAdicScalar.zero(p, N)
        for j in range(max(0, l - len(b) + 1), min(l + 1, len(a))):
            c = c + a[j] * b[l - j]
        out.append(c)
    return out


def haar_measure(l: int, p: int) -> Fraction:
    """|p^l Z_p| = p^(-l); l may be negative."""
    check_prime(p)
    return Fraction(p) ** (-l)


def haar_scale(a_abs: Fraction, m: Fraction) -> Fraction:
    """|aE| = |a|_p |E|."""
    return a_abs * m
