"""Exact point-line incidences, the Szemerédi-Trotter bound with constant 4,
and the two incidence configurations behind the product-set arguments."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .core_sets import FiniteSet, combine, to_rational
from .energy import rep_histogram
from .errors import DomainError, InvariantViolation, ResourceLimitError
from .exact_roots import iroot
from .report import ExactCheck

INCIDENCE_CAP = 10**7


@dataclass(frozen=True)
class Line:
    """``y = slope*x + intercept``, or the vertical line ``x = intercept`` when ``slope is None``."""
    slope: Fraction | None
    intercept: Fraction

    @classmethod
    def through(cls, slope, intercept):
        return cls(None if slope is None else to_rational(slope), to_rational(intercept))

    @property
    def vertical(self) -> bool:
        return self.slope is None

    def contains(self, pt) -> bool:
        x, y = pt
        if self.slope is None:
            return x == self.intercept
        return y == self.slope * x + self.intercept

    def _sort_key(self):
        return (self.slope is None, self.slope or 0, self.intercept)


def _q(v):
    return v if type(v) is Fraction else to_rational(v)


class PointSet:
    """Distinct points in first-seen order; equality ignores order."""
    __slots__ = ("points", "_set")

    def __init__(self, points=()):
        self.points = tuple(dict.fromkeys((_q(x), _q(y)) for x, y in points))
        self._set = None

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        if self._set is None:
            self._set = frozenset(self.points)
        if other._set is None:
            other._set = frozenset(other.points)
        return self._set == other._set

    def __repr__(self):
        return f"PointSet(<{len(self)} points>)"

    def columns(self) -> dict:
        """``{x: set of y}`` over the points."""
        cols = defaultdict(set)
        for x, y in self.points:
            cols[x].add(y)
        return cols


class ProductPointSet(PointSet):
    """The grid ``xs x ys``, kept factored; points are generated on demand."""
    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys):
        self.xs = tuple(dict.fromkeys(_q(x) for x in xs))
        self.ys = frozenset(_q(y) for y in ys)
        self._set = None

    @property
    def points(self):
        ys = sorted(self.ys)
        return tuple((x, y) for x in self.xs for y in ys)

    def __len__(self):
        return len(self.xs) * len(self.ys)

    def __iter__(self):
        return iter(self.points)

    def columns(self) -> dict:
        return dict.fromkeys(self.xs, self.ys) if self.ys else {}


class LineSet:
    __slots__ = ("lines",)

    def __init__(self, lines=()):
        ls = {ln if isinstance(ln, Line) else Line.through(*ln) for ln in lines}
        self.lines = tuple(sorted(ls, key=Line._sort_key))

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __eq__(self, other):
        return isinstance(other, LineSet) and self.lines == other.lines

    def __repr__(self):
        return f"LineSet(<{len(self)} lines>)"


def _lcm_den(values):
    d = 1
    for v in values:
        d = lcm(d, v.denominator)
    return d


def count_incidences(P: PointSet, L: LineSet, cap: int = INCIDENCE_CAP) -> int:
    """``#{(p, l) : p on l}`` by exact membership tests.

    Points are grouped by abscissa; every non-vertical line is tested at each
    distinct abscissa and vertical lines read their column size.  The cap
    bounds the number of membership tests, ``|L| * #abscissae``.  Coordinates
    are scaled to integers: ``x = X/dx``, ``y = Y/dy``.
    """
    if not len(P) or not len(L):
        return 0
    columns = P.columns()
    work = len(L) * len(columns)
    if work > cap:
        raise ResourceLimitError(f"incidence count needs {work} membership tests; cap is {cap}")
    dx = _lcm_den(columns)
    distinct_cols = {id(ys): ys for ys in columns.values()}.values()
    dy = _lcm_den(y for ys in distinct_cols for y in ys)
    scaled = {}
    cols = []
    for x, ys in columns.items():
        if id(ys) not in scaled:
            scaled[id(ys)] = {(y * dy).numerator for y in ys}
        cols.append(((x * dx).numerator, scaled[id(ys)]))
    total = 0
    for ln in L:
        if ln.slope is None:
            total += len(columns.get(ln.intercept, ()))
            continue
        # Y/dy = (a/b) X/dx + e/f  <=>  Y * (b dx f) = a f dy X + e b dx dy
        a, b = ln.slope.numerator, ln.slope.denominator
        e, f = ln.intercept.numerator, ln.intercept.denominator
        den = b * dx * f
        mul, add = a * f * dy, e * b * dx * dy
        for X, ys in cols:
            num = mul * X + add
            if num % den == 0 and num // den in ys:
                total += 1
    return total


def brute_force_incidences(P: PointSet, L: LineSet) -> int:
    """Reference count over all pairs; for tests only."""
    return sum(1 for p in P for ln in L if ln.contains(p))


def st_bound(p: int, l: int) -> int:
    """``floor(4 p^(2/3) l^(2/3) + 4p + l)``; an integer count obeys the bound iff it is ``<=`` this."""
    if p < 0 or l < 0:
        raise ValueError("sizes must be nonnegative")
    return iroot(64 * p * p * l * l, 3) + 4 * p + l


def st_bound_holds(count: int, p: int, l: int) -> bool:
    """Exact test of ``count <= 4 p^(2/3) l^(2/3) + 4p + l`` by cubing."""
    excess = count - 4 * p - l
    return excess <= 0 or excess**3 <= 64 * p * p * l * l


def affine_image(P: PointSet, L: LineSet, M, v):
    """Image of a configuration under ``z -> M z + v`` (``M`` invertible 2x2, rational)."""
    (a, b), (c, d) = [[to_rational(t) for t in row] for row in M]
    v1, v2 = (to_rational(t) for t in v)
    det = a * d - b * c
    if det == 0:
        raise DomainError("affine map must be invertible")
    pts = [(a * x + b * y + v1, c * x + d * y + v2) for x, y in P]
    # line n . z = k with n = (-m, 1) (or (1, 0) for x = k); new normal n M^{-1}
    ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
    lines = []
    for ln in L:
        if ln.slope is None:
            n1, n2, k = Fraction(1), Fraction(0), ln.intercept
        else:
            n1, n2, k = -ln.slope, Fraction(1), ln.intercept
        m1, m2 = n1 * ia + n2 * ic, n1 * ib + n2 * id_
        k2 = k + m1 * v1 + m2 * v2
        if m2 != 0:
            lines.append(Line(-m1 / m2, k2 / m2))
        else:
            lines.append(Line(None, k2 / m1))
    return PointSet(pts), LineSet(lines)


# -- configurations ------------------------------------------------------------

@dataclass
class IncidenceConfig:
    name: str
    points: PointSet
    lines: LineSet
    count: int
    floor: int
    bound: int
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.verdict for c in self.checks)

    def to_dict(self):
        return {"name": self.name, "points": len(self.points), "lines": len(self.lines),
                "count": self.count, "floor": self.floor, "st_bound_floor": self.bound,
                "checks": [c.to_dict() for c in self.checks]}


def _finish(name, P, L, floor, cap):
    count = count_incidences(P, L, cap)
    bound = st_bound(len(P), len(L))
    checks = [
        ExactCheck(f"{name}_incidence_floor", count >= floor, count, floor, ">="),
        ExactCheck(f"{name}_szemeredi_trotter", st_bound_holds(count, len(P), len(L)),
                   count, f"4*({len(P)}*{len(L)})^(2/3) + {4 * len(P) + len(L)}", "<="),
    ]
    cfg = IncidenceConfig(name, P, L, count, floor, bound, checks)
    if not cfg.passed:
        raise InvariantViolation(f"{name} incidence checks failed: count={count}, floor={floor}")
    return cfg


def elekes_config(A: FiniteSet, cap: int = INCIDENCE_CAP) -> IncidenceConfig:
    """Points ``(A+A) x AA`` and lines ``y = a(x - c)``; each line carries the ``|A|`` points ``(b+c, ab)``."""
    if not A:
        raise DomainError("A must be nonempty")
    if A.has_zero:
        raise DomainError("elekes configuration needs 0 not in A")
    S, Pr = combine(A, A, "sum"), combine(A, A, "prod")
    P = ProductPointSet(S, Pr)
    L = LineSet(Line(a, -a * c) for a in A for c in A)
    return _finish("elekes", P, L, len(A) * len(L), cap)


def dstar_config(Q: FiniteSet, R: FiniteSet, B: FiniteSet, A: FiniteSet, tau: int, t: int,
                 cap: int = INCIDENCE_CAP) -> IncidenceConfig:
    """Points ``Q x {x : r_{A-B}(x) >= tau}``, lines ``y = x/r - b`` (r in R, b in B).

    Requires ``A ⊆ {x : r_{Q/R}(x) >= t}``; then every popular difference
    ``x`` contributes at least ``t*tau`` incidences.
    """
    if not (Q and R and B and A):
        raise DomainError("Q, R, B, A must be nonempty")
    if R.has_zero:
        raise DomainError("0 must not lie in R")
    if tau < 1 or t < 1:
        raise DomainError("tau and t must be positive")
    cover = rep_histogram(Q, R, "quot")
    short = [a for a in A if cover[a] < t]
    if short:
        raise DomainError(f"A is not covered {t} times by Q/R (e.g. {short[0]})")
    hist = rep_histogram(A, B, "diff")
    popular = [x for x, c in hist.counts.items() if c >= tau]
    P = ProductPointSet(Q, popular)
    L = LineSet(Line(1 / r, -b) for r in R for b in B)
    return _finish("dstar", P, L, t * tau * len(popular), cap)


def random_config(n_points: int, n_lines: int, seed: int, grid: int = 8,
                  cap: int = INCIDENCE_CAP) -> IncidenceConfig:
    """Seeded points on ``[0, grid)^2`` and lines with small rational slopes."""
    from .families import SplitMix64
    rng = SplitMix64(seed)
    pts = [(rng.uniform(grid), rng.uniform(grid)) for _ in range(n_points)]
    lines = []
    for _ in range(n_lines):
        if rng.uniform(16) == 0:
            lines.append(Line(None, Fraction(rng.uniform(grid))))
        else:
            slope = Fraction(rng.uniform(2 * grid + 1) - grid, 1 + rng.uniform(3))
            lines.append(Line(slope, Fraction(rng.uniform(4 * grid) - 2 * grid)))
    P, L = PointSet(pts), LineSet(lines)
    return _finish("random", P, L, 0, cap)
