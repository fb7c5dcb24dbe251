"""Polynomials and power series over Z_p with Newton-style root lifting.

Three routes to a root are provided: the classical lift from a simple
root mod p, the relaxed variant needing only |f(x0)|_p < |f'(x0)|_p^2,
and an explicit contraction-mapping iteration.  All three agree where
their hypotheses overlap.  Internally the iterations run on plain
integers at a working modulus with headroom above the requested
precision, so dividing by f'(x) never loses requested digits.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DecayWitnessInvalid,
    HenselPreconditionFailed,
    KMismatch,
    PrecisionMismatch,
)
from .padic import PAdicInt, PAdicScalar, check_prime, rational_valuation


@dataclass(frozen=True)
class ZpPoly:
    """Polynomial with Z_p coefficients, constant term first.

    Exact integer coefficients are kept alongside the truncated view so
    lifting can run at a larger working modulus when it needs headroom.
    """

    p: int
    precision: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        cs = tuple(int(c) for c in self.coeffs)
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_rationals(cls, coeffs, p: int, N: int) -> "ZpPoly":
        """Accepts ints or fractions with denominator coprime to p."""
        m = p ** (N + 64)  # headroom; exact ints preferred where possible
        out = []
        for c in coeffs:
            c = Fraction(c)
            if c.denominator == 1:
                out.append(c.numerator)
            else:
                out.append(c.numerator * pow(c.denominator, -1, m) % m)
        return cls(p, N, tuple(out))

    @property
    def degree(self) -> int | None:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[i] % self.p**self.precision != 0:
                return i
        return None

    def coeff_views(self) -> tuple[PAdicInt, ...]:
        return tuple(PAdicInt(self.p, self.precision, c) for c in self.coeffs)

    def eval_int(self, x: int, modulus: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = (out * x + c) % modulus
        return out

    def derivative(self) -> "ZpPoly":
        return ZpPoly(
            self.p,
            self.precision,
            tuple(k * c for k, c in enumerate(self.coeffs))[1:] or (0,),
        )


def eval_and_derivative(f: ZpPoly, x: PAdicInt) -> tuple[PAdicInt, PAdicInt]:
    """Horner evaluation of f and its formal derivative at x, mod p^N."""
    if x.p != f.p or x.precision != f.precision:
        raise PrecisionMismatch("polynomial and point disagree on p or N")
    m = x.modulus
    fx = f.eval_int(x.residue, m)
    dfx = f.derivative().eval_int(x.residue, m)
    return PAdicInt(f.p, f.precision, fx), PAdicInt(f.p, f.precision, dfx)


@dataclass
class LiftTrace:
    """Newton iterates with the exact |f(x_j)|_p at each step."""

    iterates: list[PAdicInt] = field(default_factory=list)
    residual_abs: list[Fraction] = field(default_factory=list)

    def record(self, x: PAdicInt, fx_abs: Fraction) -> None:
        self.iterates.append(x)
        self.residual_abs.append(fx_abs)

    def residual_exponents(self, p: int) -> list[int | None]:
        """|f(x_j)|_p as p-exponents; None marks residual 0 at precision."""
        out = []
        for a in self.residual_abs:
            out.append(None if a == 0 else -rational_valuation(a, p))
        return out


def _int_valuation(a: int, p: int, cap: int) -> int:
    """v_p(a mod p^cap), saturating at cap."""
    a %= p**cap
    if a == 0:
        return cap
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def _abs_from_valuation(v: int, p: int, cap: int) -> Fraction:
    return Fraction(0) if v >= cap else Fraction(p) ** (-v)


def hensel_v1(f: ZpPoly, x0: PAdicInt, N: int | None = None) -> tuple[PAdicInt, LiftTrace]:
    """Lift a simple root mod p to a root mod p^N.

    Requires f(x0) = 0 mod p and |f'(x0)|_p = 1.  The returned root is
    congruent to x0 mod p and the trace obeys |f(x_j)|_p <= |f(x_{j-1})|_p^2.
    """
    p = f.p
    if N is None:
        N = f.precision
    m = p**N
    x = x0.residue % m
    if f.eval_int(x, p) % p != 0:
        raise HenselPreconditionFailed("f(x0) != 0 mod p", "f(x0) mod p")
    df = f.derivative()
    if df.eval_int(x, p) % p == 0:
        raise HenselPreconditionFailed("|f'(x0)|_p < 1", "f'(x0) unit")
    trace = LiftTrace()
    trace.record(
        PAdicInt(p, N, x), _abs_from_valuation(_int_valuation(f.eval_int(x, m), p, N), p, N)
    )
    for _ in range(N):
        fx = f.eval_int(x, m)
        if fx == 0:
            break
        x = (x - fx * pow(df.eval_int(x, m), -1, m)) % m
        trace.record(
            PAdicInt(p, N, x),
            _abs_from_valuation(_int_valuation(f.eval_int(x, m), p, N), p, N),
        )
    return PAdicInt(p, N, x), trace


def _v2_params(f: ZpPoly, x0_res: int, N: int) -> tuple[int, int, int]:
    """Validate the relaxed precondition; returns (k, working modulus exp, x)."""
    p = f.p
    probe = N + 1
    mp = p**probe
    k = _int_valuation(f.derivative().eval_int(x0_res % mp, mp), p, probe)
    v_f = _int_valuation(f.eval_int(x0_res % mp, mp), p, probe)
    if v_f <= 2 * k:
        raise HenselPreconditionFailed(
            f"|f(x0)|_p = p^-{v_f} is not < |f'(x0)|_p^2 = p^-{2 * k}",
            "|f(x0)| < |f'(x0)|^2",
        )
    return k, N + 2 * k + 2, x0_res


def hensel_v2(f: ZpPoly, x0: PAdicInt, N: int | None = None) -> tuple[PAdicInt, LiftTrace]:
    """Newton lifting under |f(x0)|_p < |f'(x0)|_p^2.

    The root satisfies f(root) = 0 mod p^N and |root - x0|_p < |f'(x0)|_p,
    and the trace obeys |f(x_j)|_p <= |f'(x0)|_p^-2 |f(x_{j-1})|_p^2.
    """
    p = f.p
    if N is None:
        N = f.precision
    k, work, x = _v2_params(f, x0.residue, N)
    mw = p**work
    df = f.derivative()
    trace = LiftTrace()
    if f.eval_int(x % p**N, p**N) % p**N == 0:
        return PAdicInt(p, N, x), trace
    trace.record(
        PAdicInt(p, N, x), _abs_from_valuation(_int_valuation(f.eval_int(x, mw), p, N), p, N)
    )
    for _ in range(N):
        fx = f.eval_int(x, mw)
        if fx % p**N == 0:
            break
        dfx = df.eval_int(x, mw)
        # divide both by p^k so the unit part can be inverted
        unit = dfx // p**k
        delta = (fx // p**k) * pow(unit, -1, mw) % mw
        x = (x - delta) % mw
        trace.record(
            PAdicInt(p, N, x),
            _abs_from_valuation(_int_valuation(f.eval_int(x, mw), p, N), p, N),
        )
    return PAdicInt(p, N, x), trace


def contraction_solve(f: ZpPoly, x0: PAdicInt, N: int | None = None) -> PAdicInt:
    """Unique fixed point of g(x) = x - f'(x0)^{-1} f(x + x0) on p^{k+1} Z_p.

    Same hypotheses as hensel_v2; per-step displacements contract by at
    least p^{-1}, which is verified on the computed orbit.
    """
    p = f.p
    if N is None:
        N = f.precision
    k, work, x0_res = _v2_params(f, x0.residue, N)
    mw = p**work
    dfx0 = f.derivative().eval_int(x0_res, mw)
    unit_inv = pow(dfx0 // p**k, -1, mw)

    def g(y: int) -> int:
        # x - f'(x0)^{-1} f(x + x0); f(x + x0) is divisible by p^k here
        return (y - (f.eval_int(y + x0_res, mw) // p**k) * unit_inv) % mw

    y = 0
    prev_step_v = None
    for _ in range(work + 1):
        y_next = g(y)
        if (y_next - y) % p**N == 0:
            y = y_next
            break
        step_v = _int_valuation(y_next - y, p, work)
        if prev_step_v is not None and step_v < prev_step_v + 1:
            raise AssertionError("contraction factor above 1/p on the orbit")
        prev_step_v = step_v
        y = y_next
    return PAdicInt(p, N, x0_res + y)


def local_scaling_check(
    f: ZpPoly,
    x0: PAdicInt,
    k: int,
    samples: int = 100,
    seed: int = 0,
) -> dict:
    """Verify |f(x)-f(y)|_p = p^-k |x-y|_p for x, y in x0 + p^{k+1} Z_p."""
    p = f.p
    N = f.precision
    probe = N + k + 1
    mp = p**probe
    actual_k = _int_valuation(f.derivative().eval_int(x0.residue, mp), p, probe)
    if actual_k != k:
        raise KMismatch(f"|f'(x0)|_p = p^-{actual_k}, expected p^-{k}")
    rng = random.Random(seed)
    work = N + k
    mw = p**work
    step = p ** (k + 1)
    violations = []
    checked = 0
    for _ in range(samples):
        x = (x0.residue + step * rng.randrange(p ** (work - k - 1))) % mw
        y = (x0.residue + step * rng.randrange(p ** (work - k - 1))) % mw
        v_xy = _int_valuation(x - y, p, work)
        if v_xy >= N:  # difference below resolution; equality untestable
            continue
        v_f = _int_valuation(f.eval_int(x, mw) - f.eval_int(y, mw), p, work)
        checked += 1
        if v_f != v_xy + k:
            violations.append((x % p**N, y % p**N, v_xy, v_f))
    return {"checked": checked, "violations": violations, "holds": not violations}


@dataclass(frozen=True)
class ZpSeries:
    """Power series sum a_j x^j with a decay witness.

    ``coeff`` maps j to an exact integer representative of a_j; ``decay``
    maps a precision m to an index J(m) past which v_p(a_j) >= m.
    """

    p: int
    precision: int
    coeff: object  # callable j -> int
    decay: object  # callable m -> int

    def witness_index(self, m: int) -> int:
        return int(self.decay(m))

    def validate_witness(self, N: int, window: int = 16) -> None:
        """Spot-check the decay witness through precision N."""
        j0 = self.witness_index(N)
        if any(self.witness_index(m) > j0 for m in range(N)):
            raise DecayWitnessInvalid("witness index not monotone")
        for j in range(j0, j0 + window):
            if _int_valuation(self.coeff(j), self.p, N + 1) < N:
                raise DecayWitnessInvalid(
                    f"coefficient {j} has valuation < {N} past J({N}) = {j0}"
                )

    def to_poly(self, N: int | None = None) -> ZpPoly:
        """Truncation at J(N); further terms vanish mod p^N by the witness."""
        if N is None:
            N = self.precision
        self.validate_witness(N)
        j0 = self.witness_index(N)
        return ZpPoly(self.p, self.precision, tuple(self.coeff(j) for j in range(j0)))

    @classmethod
    def from_poly(cls, f: ZpPoly) -> "ZpSeries":
        cs = f.coeffs
        return cls(
            f.p,
            f.precision,
            lambda j: cs[j] if j < len(cs) else 0,
            lambda m: len(cs),
        )


def series_eval(s: ZpSeries, x: PAdicInt, N: int | None = None) -> PAdicScalar:
    """Evaluate the series at x in Z_p, exact mod p^N."""
    if N is None:
        N = s.precision
    if x.p != s.p:
        raise PrecisionMismatch("series and point disagree on p")
    value = s.to_poly(N).eval_int(x.residue, s.p**N)
    return PAdicScalar.from_padic_int(PAdicInt(s.p, N, value))


def series_hensel_v2(s: ZpSeries, x0: PAdicInt, N: int | None = None):
    """Root lifting for series inputs via the witnessed truncation."""
    if N is None:
        N = s.precision
    return hensel_v2(s.to_poly(N), x0, N)


def roots_by_digit_search(f: ZpPoly, N: int, constraint=None) -> list[int]:
    """Independent oracle: grow roots digit by digit with no Newton step.

    Enumerates all residues mod p satisfying f = 0 mod p (and the optional
    constraint on the mod-p digit), then extends each candidate by every
    possible next digit, keeping those that kill one more power of p.
    """
    p = f.p
    level = [r for r in range(p) if f.eval_int(r, p) == 0 and (constraint is None or constraint(r))]
    for l in range(1, N):
        m = p ** (l + 1)
        level = [
            x + d * p**l
            for x in level
            for d in range(p)
            if f.eval_int(x + d * p**l, m) == 0
        ]
    return sorted(level)
