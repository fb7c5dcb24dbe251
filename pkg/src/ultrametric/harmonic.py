"""Covering lemmas, maximal functions, and conditional expectation.

Everything runs on finite models with exact rational weights: the
ultrametric model is a weighted leaf tree over a ProductSpec (balls are
cylinders), the Euclidean model is a finite rational grid on the line
(balls are contiguous index ranges).  Weak-type inequalities hold with
constant 1 on trees and constant 2 on the grid, and both constants are
verified exactly rather than numerically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .cantor import Cylinder, ProductSpec
from .errors import (
    DegenerateMeasure,
    DegeneratePartition,
    ExponentOutOfRange,
    NotNonnegative,
)

# ---------------------------------------------------------------------------
# exact bounds on rational powers (needed for non-integer exponents)
# ---------------------------------------------------------------------------


def _iroot_floor(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k))) + 1
    while x**k > n:
        x -= 1
    return x


def pow_bounds(x: Fraction, p: Fraction, prec_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Rational lower/upper bounds on x^p for x >= 0, p > 0."""
    if x < 0:
        raise NotNonnegative("negative base")
    if x == 0:
        return Fraction(0), Fraction(0)
    p = Fraction(p)
    q = x**p.numerator
    k = p.denominator
    if k == 1:
        return q, q
    S = 1 << prec_bits
    n_lo = q.numerator * S**k // q.denominator
    r_lo = _iroot_floor(n_lo, k)
    n_hi = -((-q.numerator * S**k) // q.denominator)  # ceil
    r_hi = _iroot_floor(n_hi, k)
    if r_hi**k < n_hi:
        r_hi += 1
    return Fraction(r_lo, S), Fraction(r_hi, S)


# ---------------------------------------------------------------------------
# weighted trees and the uncentered maximal function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteUltraTree:
    """Leaf weights mu (all ball masses positive) and nu over a ProductSpec."""

    spec: ProductSpec
    mu: tuple[Fraction, ...]
    nu: tuple[Fraction, ...]

    def __post_init__(self):
        m = self.spec.cumulative(self.spec.depth)
        mu = tuple(Fraction(w) for w in self.mu)
        nu = tuple(Fraction(w) for w in self.nu)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        if len(mu) != m or len(nu) != m:
            raise ValueError(f"need {m} leaf weights")
        if any(w < 0 for w in mu) or any(w < 0 for w in nu):
            raise ValueError("weights must be nonnegative")
        if any(w == 0 for w in self._level_sums(mu)[-1]):
            raise DegenerateMeasure("a leaf has zero mu-mass")

    @property
    def leaves(self) -> int:
        return len(self.mu)

    def _level_sums(self, weights) -> list[list[Fraction]]:
        """Ball masses per depth, index = cylinder rank at that depth."""
        sums = [list(weights)]
        for k in range(self.spec.depth, 0, -1):
            n = self.spec.branching(k - 1)
            prev = sums[-1]
            sums.append(
                [sum(prev[i * n : (i + 1) * n], Fraction(0)) for i in range(len(prev) // n)]
            )
        sums.reverse()  # depth 0 first
        return sums

    def ball_mass(self, weights, depth: int, rank: int) -> Fraction:
        return self._level_sums(weights)[depth][rank]


def maximal_function(tree: FiniteUltraTree) -> list[Fraction]:
    """M(nu)(leaf) = max over ancestor cylinders of nu(B)/mu(B), exact."""
    mu_sums = tree._level_sums(tree.mu)
    nu_sums = tree._level_sums(tree.nu)
    L = tree.spec.depth
    sizes = [tree.spec.cumulative(L) // tree.spec.cumulative(k) for k in range(L + 1)]
    out = []
    for leaf in range(tree.leaves):
        best = Fraction(0)
        for k in range(L, -1, -1):
            r = leaf // sizes[k]
            ratio = nu_sums[k][r] / mu_sums[k][r]
            if ratio > best:
                best = ratio
        out.append(best)
    return out


def superlevel_cylinders(tree: FiniteUltraTree, t: Fraction) -> list[Cylinder]:
    """{M(nu) > t} as a disjoint union of maximal cylinders."""
    mu_sums = tree._level_sums(tree.mu)
    nu_sums = tree._level_sums(tree.nu)
    out: list[Cylinder] = []

    def rec(depth: int, rank: int, digits: tuple[int, ...]):
        if nu_sums[depth][rank] / mu_sums[depth][rank] > t:
            out.append(Cylinder(digits))
            return
        if depth == tree.spec.depth:
            return
        n = tree.spec.branching(depth)
        for d in range(n):
            rec(depth + 1, rank * n + d, digits + (d,))

    rec(0, 0, ())
    return out


def weak_type_verify(tree: FiniteUltraTree, t: Fraction, mode: str = "ultrametric") -> dict:
    """Check mu{M(nu) > t} <= C1 t^{-1} nu(X); C1 = 1 on trees, 2 on grids."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    if mode == "ultrametric":
        m = maximal_function(tree)
        lhs = sum((w for w, v in zip(tree.mu, m) if v > t), Fraction(0))
        rhs = Fraction(1) / t * sum(tree.nu, Fraction(0))
        return {"holds": lhs <= rhs, "lhs": lhs, "rhs": rhs, "C1": 1}
    raise ValueError(f"unknown mode {mode}")


def ratio_grid(tree: FiniteUltraTree) -> list[Fraction]:
    """All distinct values of M(nu); the thresholds worth testing."""
    return sorted(set(maximal_function(tree)))


# ---------------------------------------------------------------------------
# interval grid model on the line
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridMeasure:
    """Finite rational grid x_0 < ... < x_{m-1} with point masses."""

    points: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]
    nu: tuple[Fraction, ...]

    def __post_init__(self):
        pts = tuple(Fraction(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "mu", tuple(Fraction(w) for w in self.mu))
        object.__setattr__(self, "nu", tuple(Fraction(w) for w in self.nu))
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError("grid points must be strictly increasing")
        if any(w <= 0 for w in self.mu):
            raise DegenerateMeasure("mu must be strictly positive on the grid")


def grid_maximal(g: GridMeasure) -> list[Fraction]:
    """Uncentered maximal function over all subintervals of the grid."""
    m = len(g.points)
    mu_pref = [Fraction(0)]
    nu_pref = [Fraction(0)]
    for w, v in zip(g.mu, g.nu):
        mu_pref.append(mu_pref[-1] + w)
        nu_pref.append(nu_pref[-1] + v)
    out = []
    for i in range(m):
        best = Fraction(0)
        for a in range(i + 1):
            for b in range(i, m):
                ratio = (nu_pref[b + 1] - nu_pref[a]) / (mu_pref[b + 1] - mu_pref[a])
                if ratio > best:
                    best = ratio
        out.append(best)
    return out


def grid_weak_type(g: GridMeasure, t: Fraction, C1: Fraction = Fraction(2)) -> dict:
    t = Fraction(t)
    m = grid_maximal(g)
    lhs = sum((w for w, v in zip(g.mu, m) if v > t), Fraction(0))
    rhs = Fraction(C1) / t * sum(g.nu, Fraction(0))
    return {"holds": lhs <= rhs, "lhs": lhs, "rhs": rhs, "C1": Fraction(C1)}


def adversarial_grid() -> tuple[GridMeasure, Fraction]:
    """A stored family where C1 = 1 fails on the line but C1 = 2 holds.

    Three equal atoms with nu concentrated in the middle: every point sees
    the middle atom through some interval, so mu{M > t} = 1 for t just
    below 3/2 while t^{-1} nu(X) = 2/3 < 1.
    """
    g = GridMeasure(
        points=(Fraction(0), Fraction(1), Fraction(2)),
        mu=(Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)),
        nu=(Fraction(0), Fraction(1), Fraction(0)),
    )
    return g, Fraction(4, 3)


# ---------------------------------------------------------------------------
# covering lemmas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Rational interval with endpoint flags; default closed."""

    a: Fraction
    b: Fraction
    closed_left: bool = True
    closed_right: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a > self.b:
            raise ValueError("empty interval")

    def contains(self, x: Fraction) -> bool:
        if x < self.a or x > self.b:
            return False
        if x == self.a and not self.closed_left:
            return False
        if x == self.b and not self.closed_right:
            return False
        return True

    def right_key(self):
        return (self.b, self.closed_right)


def _sample_points(family: list[Interval]) -> list[Fraction]:
    """Endpoints and midpoints of consecutive endpoints; coverage is
    piecewise constant between these, so they decide all interval facts."""
    ends = sorted({iv.a for iv in family} | {iv.b for iv in family})
    pts = list(ends)
    for u, v in zip(ends, ends[1:]):
        pts.append((u + v) / 2)
    return sorted(pts)


def interval_multiplicity(family: list[Interval]) -> int:
    pts = _sample_points(family)
    return max((sum(1 for iv in family if iv.contains(x)) for x in pts), default=0)


def same_union(fam1: list[Interval], fam2: list[Interval]) -> bool:
    pts = _sample_points(fam1 + fam2)
    return all(
        any(iv.contains(x) for iv in fam1) == any(iv.contains(x) for iv in fam2)
        for x in pts
    )


def interval_reduce(family: list[Interval]) -> list[Interval]:
    """Subfamily with the same union and pointwise multiplicity <= 2.

    Greedy scan: at each still-uncovered sample point pick the interval
    reaching furthest right; a minimal subcover of the line overlaps at
    most twice at any point.
    """
    if not family:
        return []
    pts = _sample_points(family)
    chosen: list[Interval] = []
    for x in pts:
        if any(iv.contains(x) for iv in chosen):
            continue
        candidates = [iv for iv in family if iv.contains(x)]
        if not candidates:
            continue
        chosen.append(max(candidates, key=Interval.right_key))
    assert same_union(chosen, family)
    assert interval_multiplicity(chosen) <= 2
    return chosen


def ultra_ball_reduce(family: list[Cylinder]) -> list[Cylinder]:
    """Maximal-by-inclusion cylinders: same union, pairwise disjoint."""
    out = []
    for c in family:
        if not any(other is not c and other.contains_prefix(c) for other in family):
            if c not in out:
                out.append(c)
    return out


@dataclass(frozen=True)
class Ball:
    """Closed ball on the line: [center - radius, center + radius]."""

    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", Fraction(self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def intersects(self, other: "Ball") -> bool:
        return abs(self.center - other.center) <= self.radius + other.radius

    def within_dilate(self, other: "Ball", factor: int = 3) -> bool:
        return abs(self.center - other.center) + self.radius <= factor * other.radius


def vitali_select(family: list[Ball]) -> tuple[list[Ball], dict[int, int]]:
    """Greedy disjoint subfamily; every ball sits in a 3x dilate of its
    assigned selected ball of at least its radius.

    Ties are broken by (radius descending, input index ascending).
    """
    order = sorted(range(len(family)), key=lambda i: (-family[i].radius, i))
    selected: list[int] = []
    assignment: dict[int, int] = {}
    for i in order:
        hit = next((j for j in selected if family[i].intersects(family[j])), None)
        if hit is None:
            selected.append(i)
            assignment[i] = i
        else:
            assignment[i] = hit
    for i, j in assignment.items():
        assert family[j].radius >= family[i].radius or i == j
        assert family[i].within_dilate(family[j])
    return [family[j] for j in selected], assignment


# ---------------------------------------------------------------------------
# distribution functions and the L^p maximal bound
# ---------------------------------------------------------------------------


def distribution_identity(g: list[Fraction], mu: list[Fraction], p) -> dict:
    """int g^p dmu against the layer-cake integral over lambda's jumps.

    Exact for integer p; for fractional p both sides are bracketed by
    exact rational bounds at 2^-64 resolution and compared to 1e-12.
    """
    g = [Fraction(x) for x in g]
    mu = [Fraction(w) for w in mu]
    if any(x < 0 for x in g):
        raise NotNonnegative("g must be nonnegative")
    p = Fraction(p)
    if p <= 0:
        raise ExponentOutOfRange("p must be positive")

    values = sorted({x for x in g if x > 0})
    jumps = [Fraction(0)] + values

    def lam(t: Fraction) -> Fraction:
        return sum((w for x, w in zip(g, mu) if x > t), Fraction(0))

    if p.denominator == 1:
        lhs = sum((x**p.numerator * w for x, w in zip(g, mu)), Fraction(0))
        rhs = sum(
            lam(jumps[i]) * (jumps[i + 1] ** p.numerator - jumps[i] ** p.numerator)
            for i in range(len(jumps) - 1)
        )
        return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}
    lhs = sum(float(x) ** float(p) * float(w) for x, w in zip(g, mu))
    rhs = sum(
        float(lam(jumps[i])) * (float(jumps[i + 1]) ** float(p) - float(jumps[i]) ** float(p))
        for i in range(len(jumps) - 1)
    )
    return {"lhs": lhs, "rhs": rhs, "equal": abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))}


def pow_bounds_signed(x: Fraction, e: Fraction, prec_bits: int = 64):
    """x^e bounds for x > 0 and any rational e."""
    if e >= 0:
        return pow_bounds(x, e, prec_bits)
    lo, hi = pow_bounds(x, -e, prec_bits)
    return 1 / hi, 1 / lo


def lp_maximal_bound(
    f: list[Fraction], tree: FiniteUltraTree, p, a, C1: int = 1
) -> dict:
    """Verify int M(f)^p dmu <= p C1 (1-a)^{-1} (p-1)^{-1} a^{1-p} int |f|^p dmu.

    The comparison is exact: for fractional p both sides are bracketed by
    rational bounds, refined until the bracket decides the inequality.
    """
    p, a = Fraction(p), Fraction(a)
    if p <= 1:
        raise ExponentOutOfRange("need p > 1")
    if not 0 < a < 1:
        raise ExponentOutOfRange("need 0 < a < 1")
    f = [Fraction(x) for x in f]
    nu = tuple(abs(x) * w for x, w in zip(f, tree.mu))
    m = maximal_function(FiniteUltraTree(tree.spec, tree.mu, nu))

    for prec in (64, 128, 256, 512):
        c_lo, c_hi = (
            Fraction(p) * C1 / (1 - a) / (p - 1) * b
            for b in pow_bounds_signed(a, 1 - p, prec)
        )
        lhs_lo = sum(
            (pow_bounds_signed(v, p, prec)[0] * w for v, w in zip(m, tree.mu) if v > 0),
            Fraction(0),
        )
        lhs_hi = sum(
            (pow_bounds_signed(v, p, prec)[1] * w for v, w in zip(m, tree.mu) if v > 0),
            Fraction(0),
        )
        rhs_lo = c_lo * sum(
            (pow_bounds_signed(abs(x), p, prec)[0] * w for x, w in zip(f, tree.mu) if x != 0),
            Fraction(0),
        )
        rhs_hi = c_hi * sum(
            (pow_bounds_signed(abs(x), p, prec)[1] * w for x, w in zip(f, tree.mu) if x != 0),
            Fraction(0),
        )
        if lhs_hi <= rhs_lo:
            return {"holds": True, "lhs": float(lhs_hi), "rhs": float(rhs_lo)}
        if lhs_lo > rhs_hi:
            return {"holds": False, "lhs": float(lhs_lo), "rhs": float(rhs_hi)}
    raise ArithmeticError("power bracket did not resolve the comparison")


def lp_best_a(p, C1: int = 1, grid: int = 32) -> tuple[Fraction, Fraction]:
    """The grid point a = j/grid minimizing p C1 (1-a)^{-1} (p-1)^{-1} a^{1-p}.

    Returns (a, an upper bound on the constant there); comparisons between
    grid points use exact rational brackets.
    """
    p = Fraction(p)
    if p <= 1:
        raise ExponentOutOfRange("need p > 1")
    best = None
    for j in range(1, grid):
        a = Fraction(j, grid)
        lo, hi = (
            Fraction(p) * C1 / (1 - a) / (p - 1) * b
            for b in pow_bounds_signed(a, 1 - p, 128)
        )
        if best is None or hi < best[1]:
            best = (a, hi)
    return best


def sup_bound_check(f: list[Fraction], tree: FiniteUltraTree) -> bool:
    """sup M(f) <= max |f| (the L^infinity endpoint)."""
    f = [Fraction(x) for x in f]
    nu = tuple(abs(x) * w for x, w in zip(f, tree.mu))
    m = maximal_function(FiniteUltraTree(tree.spec, tree.mu, nu))
    return max(m) <= max(abs(x) for x in f)


# ---------------------------------------------------------------------------
# conditional expectation and the martingale maximal inequality
# ---------------------------------------------------------------------------

Partition = tuple[tuple[int, ...], ...]


def _validate_partition(P: Partition, size: int) -> None:
    seen = sorted(i for block in P for i in block)
    if seen != list(range(size)):
        raise ValueError("not a partition of the leaf set")


def cond_expectation(f: list[Fraction], P: Partition, mu: list[Fraction]) -> list[Fraction]:
    """Block-constant averages (1/mu(A)) int_A f dmu, exact."""
    f = [Fraction(x) for x in f]
    mu = [Fraction(w) for w in mu]
    _validate_partition(P, len(f))
    out = [Fraction(0)] * len(f)
    for block in P:
        mass = sum((mu[i] for i in block), Fraction(0))
        if mass == 0:
            raise DegeneratePartition(f"block {block} has zero mass")
        avg = sum((f[i] * mu[i] for i in block), Fraction(0)) / mass
        for i in block:
            out[i] = avg
    return out


@dataclass(frozen=True)
class Filtration:
    """Partitions coarse to fine: each block of P_j is a union of P_{j+1} blocks."""

    levels: tuple[Partition, ...]

    def __post_init__(self):
        lv = tuple(tuple(tuple(sorted(b)) for b in P) for P in self.levels)
        object.__setattr__(self, "levels", lv)
        for P, Q in zip(lv, lv[1:]):
            fine = {i: blk for blk in Q for i in blk}
            for block in P:
                sub = {fine[i] for i in block}
                if sorted(i for b in sub for i in b) != list(block):
                    raise ValueError("levels are not nested coarse-to-fine")

    @classmethod
    def dyadic(cls, spec: ProductSpec) -> "Filtration":
        """Cylinder partitions of a product space, depth 1..L."""
        m = spec.cumulative(spec.depth)
        levels = []
        for k in range(1, spec.depth + 1):
            width = m // spec.cumulative(k)
            levels.append(
                tuple(
                    tuple(range(i * width, (i + 1) * width))
                    for i in range(spec.cumulative(k))
                )
            )
        return cls(tuple(levels))


def martingale_maximal(
    f: list[Fraction], filtration: Filtration, mu: list[Fraction], t
) -> dict:
    """Doob's inequality mu{f_l^* > t} <= t^{-1} int_{A_l} |f| <= t^{-1} int |f|."""
    t = Fraction(t)
    if t <= 0:
        raise ValueError("t must be positive")
    f = [Fraction(x) for x in f]
    mu = [Fraction(w) for w in mu]
    star = [Fraction(0)] * len(f)
    levels = []
    reports = []
    total = sum((abs(x) * w for x, w in zip(f, mu)), Fraction(0))
    for P in filtration.levels:
        fj = cond_expectation(f, P, mu)
        star = [max(s, abs(v)) for s, v in zip(star, fj)]
        levels.append(list(star))
        A = [i for i, s in enumerate(star) if s > t]
        # A is a union of blocks of the current level
        blocks_ok = all(
            set(block) <= set(A) or not (set(block) & set(A)) for block in P
        )
        lhs = sum((mu[i] for i in A), Fraction(0))
        mid = sum((abs(f[i]) * mu[i] for i in A), Fraction(0)) / t
        reports.append(
            {
                "lhs": lhs,
                "restricted": mid,
                "rhs": total / t,
                "holds": lhs <= mid <= total / t,
                "superlevel_is_block_union": blocks_ok,
            }
        )
    return {"levels": levels, "doob": reports, "holds": all(r["holds"] for r in reports)}


def random_tree(
    spec: ProductSpec, rng: random.Random, max_weight: int = 8
) -> FiniteUltraTree:
    """Random positive mu and nonnegative nu, for randomized audits."""
    m = spec.cumulative(spec.depth)
    mu = tuple(Fraction(rng.randrange(1, max_weight + 1), rng.randrange(1, 4)) for _ in range(m))
    nu = tuple(Fraction(rng.randrange(0, max_weight + 1), rng.randrange(1, 4)) for _ in range(m))
    return FiniteUltraTree(spec, mu, nu)
