"""Finite-depth ultrametric Cantor products.

Points are digit words x = (x_1, ..., x_L) with x_j < n_j; the distance
between distinct points is t_l where l is the length of the common
prefix.  Closed balls are exactly the cylinders fixing a prefix, which
makes Hausdorff contents computable by an exact dynamic program over the
prefix tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .errors import (
    DepthInsufficient,
    GridMismatch,
    InvalidGauge,
    OverlappingCylinders,
    ScaleMismatch,
)


@dataclass(frozen=True)
class ProductSpec:
    """Factor sizes n_1..n_L and scales t_0 = 1 > t_1 > ... > t_L."""

    factors: tuple[int, ...]
    scales: tuple[Fraction, ...]

    def __post_init__(self):
        fs = tuple(int(n) for n in self.factors)
        ts = tuple(Fraction(t) for t in self.scales)
        object.__setattr__(self, "factors", fs)
        object.__setattr__(self, "scales", ts)
        if any(n < 2 for n in fs):
            raise ValueError("every factor must have >= 2 points")
        if len(ts) != len(fs) + 1 or ts[0] != 1:
            raise ValueError("need scales t_0 = 1 .. t_L")
        if any(ts[i] <= ts[i + 1] for i in range(len(ts) - 1)) or ts[-1] <= 0:
            raise ValueError("scales must be strictly decreasing and positive")

    @property
    def depth(self) -> int:
        return len(self.factors)

    def branching(self, k: int) -> int:
        """Number of children of a depth-k node (factor n_{k+1})."""
        return self.factors[k]

    def cumulative(self, k: int) -> int:
        """N_k = prod_{j<=k} n_j."""
        out = 1
        for n in self.factors[:k]:
            out *= n
        return out

    @classmethod
    def geometric(cls, factors, theta) -> "ProductSpec":
        theta = Fraction(theta)
        L = len(factors)
        return cls(tuple(factors), tuple(theta**l for l in range(L + 1)))

    @classmethod
    def reciprocal(cls, factors) -> "ProductSpec":
        """The canonical t_l = 1/N_l scales."""
        fs = tuple(factors)
        ts = []
        N = 1
        ts.append(Fraction(1))
        for n in fs:
            N *= n
            ts.append(Fraction(1, N))
        return cls(fs, tuple(ts))

    def is_reciprocal(self) -> bool:
        return all(self.scales[k] == Fraction(1, self.cumulative(k)) for k in range(self.depth + 1))

    def points(self):
        """All depth-L digit words, lexicographic."""
        from itertools import product as iproduct

        return iproduct(*[range(n) for n in self.factors])

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "scales": [str(t) for t in self.scales]}


@dataclass(frozen=True)
class Cylinder:
    """Digit prefix (x_1..x_k); the closed ball of radius t_k around any extension."""

    digits: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))

    @property
    def depth(self) -> int:
        return len(self.digits)

    def contains_prefix(self, other: "Cylinder") -> bool:
        return (
            other.depth >= self.depth and other.digits[: self.depth] == self.digits
        )


def validate_cylinder(c: Cylinder, spec: ProductSpec) -> None:
    if c.depth > spec.depth or any(
        not 0 <= d < spec.factors[i] for i, d in enumerate(c.digits)
    ):
        raise ValueError(f"cylinder {c.digits} invalid for spec {spec.factors}")


def match_length(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    l = 0
    for a, b in zip(x, y, strict=True):
        if a != b:
            break
        l += 1
    return l


def match_and_dist(x, y, spec: ProductSpec) -> tuple[int, Fraction]:
    """(l(x,y), d(x,y) = t_{l(x,y)}); d = 0 for equal words."""
    x, y = tuple(x), tuple(y)
    if len(x) != spec.depth or len(y) != spec.depth:
        raise ValueError("points must have full depth")
    l = match_length(x, y)
    if l == spec.depth:
        return l, Fraction(0)
    return l, spec.scales[l]


@dataclass(frozen=True)
class ProductMeasure:
    """Per-factor probability weights, exact rationals."""

    weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        ws = tuple(tuple(Fraction(w) for w in level) for level in self.weights)
        object.__setattr__(self, "weights", ws)
        for level in ws:
            if any(w < 0 for w in level) or sum(level) != 1:
                raise ValueError("each factor weight vector must be a probability vector")

    @classmethod
    def uniform(cls, spec: ProductSpec) -> "ProductMeasure":
        return cls(tuple(tuple(Fraction(1, n) for _ in range(n)) for n in spec.factors))


def ball_measure(B: Cylinder, mu: ProductMeasure) -> Fraction:
    """mu(B_k(x)) = prod_{j<=k} mu_j({x_j}); the whole space has mass 1."""
    out = Fraction(1)
    for j, d in enumerate(B.digits):
        out *= mu.weights[j][d]
    return out


@dataclass(frozen=True)
class Gauge:
    """Monotone gauge h on the scale grid; ``alpha`` marks h(t) = t^alpha."""

    table: tuple[tuple[Fraction, object], ...] | None = None
    alpha: object = None  # Fraction exponent when algebraic

    def value(self, t: Fraction):
        if self.alpha is not None:
            return _pow_exact_or_float(t, Fraction(self.alpha))
        for s, v in self.table:
            if s == t:
                return v
        raise InvalidGauge(f"gauge has no value at scale {t}")

    @classmethod
    def power(cls, alpha) -> "Gauge":
        return cls(alpha=Fraction(alpha))

    @classmethod
    def from_table(cls, pairs) -> "Gauge":
        table = tuple((Fraction(s), v) for s, v in pairs)
        ordered = sorted(table)
        if any(ordered[i][1] > ordered[i + 1][1] for i in range(len(ordered) - 1)):
            raise InvalidGauge("gauge must be monotone on the scale grid")
        return cls(table=table)


def _iroot(n: int, k: int) -> tuple[int, bool]:
    """Floor k-th root of n >= 0 plus exactness flag (Newton on integers)."""
    if n < 2:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


_EXACT_POW_CAP = 64


def _pow_exact_or_float(t: Fraction, alpha: Fraction):
    """t^alpha as an exact Fraction when possible, else a float."""
    if alpha.denominator == 1:
        return t**alpha.numerator
    if abs(alpha.numerator) > _EXACT_POW_CAP or alpha.denominator > _EXACT_POW_CAP:
        return float(t) ** float(alpha)
    base = t**alpha.numerator
    rn, okn = _iroot(base.numerator, alpha.denominator)
    rd, okd = _iroot(base.denominator, alpha.denominator)
    if okn and okd:
        return Fraction(rn, rd)
    return float(base) ** (1.0 / alpha.denominator)


def _check_antichain(target: list[Cylinder], spec: ProductSpec) -> None:
    for c in target:
        validate_cylinder(c, spec)
    for i, a in enumerate(target):
        for b in target[i + 1 :]:
            if a.contains_prefix(b) or b.contains_prefix(a):
                raise OverlappingCylinders(f"{a.digits} and {b.digits} are nested")


def _target_relation(prefix: tuple[int, ...], target: list[Cylinder]):
    """"disjoint", "inside" (prefix within a target cylinder), or "partial"."""
    node = Cylinder(prefix)
    inside = any(c.contains_prefix(node) for c in target)
    if inside:
        return "inside"
    if any(node.contains_prefix(c) for c in target):
        return "partial"
    return "disjoint"


def hausdorff_content(
    spec: ProductSpec,
    target: list[Cylinder],
    gauge: Gauge,
    delta: Fraction | None = None,
    closed_threshold: bool = False,
    measure: bool = False,
):
    """Exact infimum of sum h(diam B) over cylinder covers of the target.

    ``delta`` restricts covers to balls with diam < delta (or <= delta when
    ``closed_threshold``); None means unrestricted.  ``measure=True`` takes
    the finest admissible cover scale instead, i.e. the supremum of the
    delta-restricted contents realizable at this truncation depth.
    """
    _check_antichain(target, spec)
    if not target:
        return Fraction(0)
    L = spec.depth

    def allowed(k: int) -> bool:
        if measure:
            return k == L
        if delta is None:
            return True
        diam = spec.scales[k]
        return diam <= delta if closed_threshold else diam < delta

    def cost(prefix: tuple[int, ...], rel: str):
        k = len(prefix)
        options = []
        if allowed(k):
            options.append(gauge.value(spec.scales[k]))
        if k < L:
            total = 0
            for d in range(spec.branching(k)):
                child = prefix + (d,)
                crel = rel if rel == "inside" else _target_relation(child, target)
                if crel == "disjoint":
                    continue
                total = total + cost(child, crel)
            options.append(total)
        if not options:
            return inf
        return min(options)

    rel0 = _target_relation((), target)
    if rel0 == "disjoint":
        return Fraction(0)
    return cost((), rel0)


def hausdorff_measure(spec: ProductSpec, target: list[Cylinder], gauge: Gauge):
    """Depth-limited Hausdorff measure: content at the finest cover scale."""
    return hausdorff_content(spec, target, gauge, measure=True)


def whole_space(spec: ProductSpec) -> list[Cylinder]:
    return [Cylinder(())]


def dimension_estimate(spec: ProductSpec, tolerance: float = 1e-6) -> tuple[float, float]:
    """Bracket the critical exponent by bisection on min_k N_k t_k^alpha."""
    L = spec.depth

    def crosses(alpha: float) -> bool:
        # True while the finite-depth content stays >= 1
        best = min(
            spec.cumulative(k) * float(spec.scales[k]) ** alpha for k in range(1, L + 1)
        )
        return best >= 1.0

    lo, hi = 0.0, 1.0
    while crosses(hi):
        lo, hi = hi, hi * 2
        if hi > 1e6:
            raise DepthInsufficient("no upper bracket for the dimension")
    if not crosses(lo):
        raise DepthInsufficient("content below 1 at alpha = 0")
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if crosses(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def monotone_map_point(x, spec: ProductSpec) -> Fraction:
    """f(x) = sum_j x_j / N_j, defined for the t_l = 1/N_l scales."""
    if not spec.is_reciprocal():
        raise ScaleMismatch("monotone map needs t_l = 1/N_l scales")
    return sum(
        (Fraction(d, spec.cumulative(j + 1)) for j, d in enumerate(x)), Fraction(0)
    )


def monotone_map_cylinder(B: Cylinder, spec: ProductSpec) -> tuple[Fraction, Fraction]:
    """Image interval [f_k(x), f_k(x) + 1/N_k] of the cylinder."""
    if not spec.is_reciprocal():
        raise ScaleMismatch("monotone map needs t_l = 1/N_l scales")
    validate_cylinder(B, spec)
    lo = sum(
        (Fraction(d, spec.cumulative(j + 1)) for j, d in enumerate(B.digits)),
        Fraction(0),
    )
    return lo, lo + Fraction(1, spec.cumulative(B.depth))


def monotone_map_collides(x, y, spec: ProductSpec) -> bool:
    """f(x) = f(y) for distinct x < y iff y jumps by one digit and the
    tails are all-(n-1) against all-0."""
    x, y = tuple(x), tuple(y)
    if x == y:
        return True
    if x > y:
        x, y = y, x
    k = match_length(x, y)
    if y[k] != x[k] + 1:
        return False
    return all(x[l] == spec.factors[l] - 1 for l in range(k + 1, spec.depth)) and all(
        y[l] == 0 for l in range(k + 1, spec.depth)
    )


def gauge_transform(spec: ProductSpec, sigma) -> ProductSpec:
    """Replace t_l by sigma(t_l); sigma must be strictly increasing there."""
    new_scales = [Fraction(sigma(t)) for t in spec.scales]
    if new_scales[0] != 1:
        # renormalize so t_0 stays 1
        top = new_scales[0]
        new_scales = [t / top for t in new_scales]
    for i in range(len(new_scales) - 1):
        if new_scales[i] <= new_scales[i + 1]:
            raise InvalidGauge("sigma is not strictly increasing on the scales")
    return ProductSpec(spec.factors, tuple(new_scales))


def snowflake(spec: ProductSpec, a) -> ProductSpec:
    """The d -> d^a transform; scales dimension by 1/a."""
    a = Fraction(a)
    if a <= 0:
        raise InvalidGauge("snowflake exponent must be positive")
    return ProductSpec(spec.factors, tuple(t**a.numerator for t in spec.scales)) if (
        a.denominator == 1
    ) else ProductSpec(
        spec.factors, tuple(_pow_exact_or_float(t, a) for t in spec.scales)
    )


@dataclass(frozen=True)
class ProductJoin:
    """Two Cantor products glued under the max metric."""

    a: ProductSpec
    b: ProductSpec

    def dist(self, x: tuple, y: tuple) -> Fraction:
        da = match_and_dist(x[0], y[0], self.a)[1]
        db = match_and_dist(x[1], y[1], self.b)[1]
        return max(da, db)

    def rect_diam(self, ka: int, kb: int) -> Fraction:
        """Diameter of a product of depth-ka and depth-kb cylinders."""
        return max(self.a.scales[ka], self.b.scales[kb])

    def as_product_spec(self) -> ProductSpec:
        if self.a.scales != self.b.scales:
            raise GridMismatch("factors do not share a scale grid")
        return ProductSpec(
            tuple(na * nb for na, nb in zip(self.a.factors, self.b.factors, strict=True)),
            self.a.scales,
        )


def product_join(spec_a: ProductSpec, spec_b: ProductSpec) -> ProductJoin:
    return ProductJoin(spec_a, spec_b)


def measure_bound_check(
    join: ProductJoin,
    mu_a: ProductMeasure,
    mu_b: ProductMeasure,
    h_a: Gauge,
    h_b: Gauge,
    C_a=1,
    C_b=1,
) -> dict:
    """Check mu(A x B) <= C_a C_b h_a(diam) h_b(diam) on all cylinder pairs.

    Valid whenever the per-factor bounds mu_i(A_i) <= C_i h_i(diam A_i)
    hold, since both gauges are monotone and diam(A x B) dominates each
    factor diameter.
    """
    violations = []
    for ka in range(join.a.depth + 1):
        for kb in range(join.b.depth + 1):
            diam = join.rect_diam(ka, kb)
            bound = Fraction(C_a) * Fraction(C_b) * h_a.value(diam) * h_b.value(diam)
            for cyl_a in _cylinders_at(join.a, ka):
                ma = ball_measure(cyl_a, mu_a)
                for cyl_b in _cylinders_at(join.b, kb):
                    m = ma * ball_measure(cyl_b, mu_b)
                    if m > bound:
                        violations.append((cyl_a.digits, cyl_b.digits, m, bound))
    return {"holds": not violations, "violations": violations}


def _cylinders_at(spec: ProductSpec, k: int):
    from itertools import product as iproduct

    for digits in iproduct(*[range(n) for n in spec.factors[:k]]):
        yield Cylinder(digits)


def cylinders_at_depth(spec: ProductSpec, k: int) -> list[Cylinder]:
    return list(_cylinders_at(spec, k))
