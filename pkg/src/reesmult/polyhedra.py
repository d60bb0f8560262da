"""Exact rational polyhedral kernel.

Cones, dual cones, polyhedra of the shape ``conv(points) + recession
cone``, irredundant facet systems, strict-interior threshold systems
over the integer lattice, and bounded lattice-point enumeration.

Everything runs on unbounded integers and :class:`fractions.Fraction`;
floats are rejected at the boundary.  Strictness of interior conditions
is the whole content of the formulas computed downstream, so no rounding
is tolerated anywhere.

All values are immutable and every operation is a pure function of its
inputs; concurrent use from multiple threads is safe.  Lattice-point
enumeration may partition its box across threads (``REESMULT_THREADS``)
but always returns the sequential, lexicographically sorted result.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .serialize import frac_str, parse_rational

IntVec = tuple

DEFAULT_POINT_GUARD = 10 ** 8
POINT_GUARD_ENV = "REESMULT_MAX_POINTS"
THREADS_ENV = "REESMULT_THREADS"

# Fourier-Motzkin dualization is exponential in rank; the artifact is
# desk-scale by design and refuses anything larger.
MAX_DUAL_RANK = 12


def as_fraction(value) -> Fraction:
    """Coerce to an exact rational.  Floats are refused, always."""
    if isinstance(value, float):
        raise DomainError("no floating point allowed: pass int, Fraction or 'p/q'")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"not an exact rational: {value!r}")


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def primitive(v) -> IntVec:
    """Divide an integer vector by the gcd of its entries, keeping direction."""
    vec = tuple(int(e) for e in v)
    g = math.gcd(*(abs(e) for e in vec)) if vec else 0
    if g == 0:
        raise DomainError("zero vector has no primitive form")
    if g == 1:
        return vec
    return tuple(e // g for e in vec)


def _unit(rank, i):
    return tuple(1 if j == i else 0 for j in range(rank))


def _neg(v):
    return tuple(-e for e in v)


def _ceil_div(a: int, b: int) -> int:
    # b > 0
    return -((-a) // b)


# ---------------------------------------------------------------------------
# Exact linear algebra (row reduction over Fraction).
# ---------------------------------------------------------------------------


def _rref(rows):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [[Fraction(e) for e in row] for row in rows]
    if not m:
        return m, []
    width = len(m[0])
    pivots = []
    r = 0
    for col in range(width):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = m[r][col]
        m[r] = [e / inv for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(rows) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def kernel_basis(rows, rank):
    """Primitive integer basis of {x : <r, x> = 0 for every row r}."""
    if not rows:
        return [_unit(rank, i) for i in range(rank)]
    m, pivots = _rref(rows)
    free = [c for c in range(rank) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * rank
        vec[f] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -m[i][f]
        scale = math.lcm(*(e.denominator for e in vec))
        ints = [int(e * scale) for e in vec]
        prim = primitive(ints)
        for e in prim:
            if e != 0:
                if e < 0:
                    prim = _neg(prim)
                break
        basis.append(prim)
    return basis


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination.
#
# A row (coeffs, rhs, strict) encodes <coeffs, x> >= rhs (or > rhs when
# strict), with a primitive integer coefficient vector and an exact
# rational right-hand side.  Growth is controlled by keeping only the
# strongest row per direction, which is sound both for projections and
# for infeasibility detection.  (History-based accelerations are NOT
# sound for infeasible systems: they can drop the combination a Farkas
# refutation needs.)
# ---------------------------------------------------------------------------


def _const_ok(rhs, strict: bool) -> bool:
    # constant row <0, x> >= rhs (or >)
    return rhs < 0 or (rhs == 0 and not strict)


def _stronger(a, b):
    """Of two (rhs, strict) bounds for the same direction, the binding one."""
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return a if a[1] else b


class _Infeasible(Exception):
    pass


def _push_row(out, coeffs, rhs, strict):
    """Normalize a row and merge it into the direction-keyed map."""
    g = math.gcd(*(abs(c) for c in coeffs))
    if g == 0:
        if not _const_ok(rhs, strict):
            raise _Infeasible
        return
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        rhs = Fraction(rhs, g)
    else:
        rhs = Fraction(rhs)
    old = out.get(coeffs)
    out[coeffs] = (rhs, strict) if old is None else _stronger((rhs, strict), old)


def _eliminate_var(rows, j):
    """One FM step on variable j.  Raises _Infeasible on a contradiction."""
    pos, neg, rest = [], [], []
    for r in rows:
        c = r[0][j]
        (pos if c > 0 else neg if c < 0 else rest).append(r)
    out = {}
    for coeffs, rhs, strict in rest:
        _push_row(out, coeffs, rhs, strict)
    for pc, pr, ps in pos:
        a = pc[j]
        for nc, nr, ns in neg:
            b = -nc[j]
            coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
            _push_row(out, coeffs, b * pr + a * nr, ps or ns)
    return [(c, rhs, strict) for c, (rhs, strict) in out.items()]


def _run_elimination(rows, eliminate):
    """Eliminate the given variable indices.  Returns rows or None (infeasible)."""
    try:
        merged = {}
        for coeffs, rhs, strict in rows:
            _push_row(merged, coeffs, rhs, strict)
        rows = [(c, rhs, strict) for c, (rhs, strict) in merged.items()]
        remaining = set(eliminate)
        while remaining:
            # cheapest variable first: minimize the pos*neg product
            best, best_cost = None, None
            for j in sorted(remaining):
                p = sum(1 for r in rows if r[0][j] > 0)
                n = sum(1 for r in rows if r[0][j] < 0)
                cost = p * n
                if best_cost is None or cost < best_cost:
                    best, best_cost = j, cost
            rows = _eliminate_var(rows, best)
            remaining.discard(best)
        return rows
    except _Infeasible:
        return None


def _rows_from_halfspaces(halfspaces, strict=False):
    return [(h.normal, h.threshold, strict) for h in halfspaces]


def _feasible(rows, rank) -> bool:
    return _run_elimination(rows, range(rank)) is not None


# ---------------------------------------------------------------------------
# Halfspaces, cones, polyhedra.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfSpace:
    """Closed halfspace {x : <normal, x> >= threshold}, primitive integer normal."""

    normal: IntVec
    threshold: Fraction

    def __post_init__(self):
        normal = tuple(int(e) for e in self.normal)
        threshold = as_fraction(self.threshold)
        g = math.gcd(*(abs(e) for e in normal)) if normal else 0
        if g == 0:
            raise DomainError("zero vector has no primitive form")
        if g > 1:
            normal = tuple(e // g for e in normal)
            threshold = threshold / g
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "threshold", threshold)

    def eval(self, point):
        return dot(self.normal, point)

    def holds(self, point, strict=False) -> bool:
        v = self.eval(point)
        return v > self.threshold if strict else v >= self.threshold

    def to_json(self):
        return {"normal": list(self.normal), "threshold": frac_str(self.threshold)}


def _sorted_facets(facets):
    return tuple(sorted(facets, key=lambda h: (h.normal, h.threshold)))


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone: generating rays, optional facet halfspaces.

    ``rays`` is a generating set; for non-pointed cones it contains both
    directions of each lineality generator.  ``facets`` (all thresholds 0)
    are an H-representation when present.
    """

    rank: int
    rays: tuple = ()
    facets: tuple = None

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be positive")
        rays = tuple(sorted({primitive(r) for r in self.rays}))
        for r in rays:
            if len(r) != self.rank:
                raise DomainError("ray length does not match rank")
        object.__setattr__(self, "rays", rays)
        if self.facets is not None:
            facets = _sorted_facets(self.facets)
            for h in facets:
                if h.threshold != 0:
                    raise DomainError("cone facets must have threshold 0")
                for r in rays:
                    if dot(h.normal, r) < 0:
                        raise DomainError("cone ray violates a declared facet")
            object.__setattr__(self, "facets", facets)

    @property
    def strongly_convex(self) -> bool:
        """True iff the cone contains no line (equivalently its dual is full-dim)."""
        if not self.rays:
            return True
        rows = [(r, 0, True) for r in self.rays]
        return _feasible(rows, self.rank)

    def contains(self, point) -> bool:
        if self.facets is None:
            raise DomainError("cone has no facet representation")
        return all(dot(h.normal, point) >= 0 for h in self.facets)

    def to_json(self):
        data = {"rank": self.rank, "rays": [list(r) for r in self.rays]}
        if self.facets is not None:
            data["facets"] = [h.to_json() for h in self.facets]
        return data


def orthant(rank: int) -> Cone:
    units = [_unit(rank, i) for i in range(rank)]
    return Cone(rank, tuple(units), tuple(HalfSpace(u, Fraction(0)) for u in units))


def _prune_homogeneous_normals(normals, rank):
    """Minimal subset of {<v,x> >= 0} inequalities describing the same cone."""
    kept = sorted(normals)
    i = 0
    while i < len(kept):
        v = kept[i]
        rows = [(u, 0, False) for u in kept if u != v]
        rows.append((_neg(v), 0, True))
        if _feasible(rows, rank):
            i += 1  # something violates v alone: keep it
        else:
            kept.pop(i)
    return kept


def homogeneous_rays(normals, rank):
    """Generators of {x : <a, x> >= 0 for a in normals}.

    Lineality directions are returned as +/- pairs; the pointed part's
    extreme rays come from kernels of (rank-1)-subsets of the constraints.
    """
    if not normals:
        units = [_unit(rank, i) for i in range(rank)]
        return tuple(sorted(units + [_neg(u) for u in units]))
    lineal = kernel_basis(normals, rank)
    constraints = list(normals) + [l for l in lineal] + [_neg(l) for l in lineal]
    rays = set()
    for l in lineal:
        rays.add(l)
        rays.add(_neg(l))
    if rank == 1:
        for cand in [(1,), (-1,)]:
            if all(dot(a, cand) >= 0 for a in constraints):
                rays.add(cand)
    else:
        for subset in itertools.combinations(range(len(constraints)), rank - 1):
            sub = [constraints[i] for i in subset]
            kern = kernel_basis(sub, rank)
            if len(kern) != 1:
                continue
            k = kern[0]
            if all(dot(a, k) >= 0 for a in constraints):
                rays.add(k)
            elif all(dot(a, k) <= 0 for a in constraints):
                rays.add(_neg(k))
    return tuple(sorted(rays))


def dual_cone(c: Cone) -> Cone:
    """Dual cone {m : <m, v> >= 0 for all v in c}, with rays and irredundant facets."""
    if c.rank > MAX_DUAL_RANK:
        raise ResourceLimitError(f"rank {c.rank} exceeds dualization guard {MAX_DUAL_RANK}")
    normals = sorted({primitive(r) for r in c.rays})
    kept = _prune_homogeneous_normals(normals, c.rank)
    rays = homogeneous_rays(kept, c.rank)
    facets = tuple(HalfSpace(n, Fraction(0)) for n in kept)
    return Cone(c.rank, rays, facets)


@dataclass(frozen=True)
class Polyhedron:
    """Rational polyhedron conv(vertices) + recession cone, in facet form.

    ``irredundant`` is set only by constructors that certify the facet
    list minimal (and the polyhedron full-dimensional).
    """

    rank: int
    facets: tuple
    vertices: tuple = None
    recession: Cone = None
    irredundant: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be positive")
        facets = _sorted_facets(self.facets)
        object.__setattr__(self, "facets", facets)
        if self.vertices is not None:
            verts = tuple(tuple(as_fraction(e) for e in v) for v in self.vertices)
            for v in verts:
                for h in facets:
                    if not h.holds(v):
                        raise DomainError("declared vertex violates a facet")
            object.__setattr__(self, "vertices", verts)
        if self.recession is not None:
            for r in self.recession.rays:
                for h in facets:
                    if dot(h.normal, r) < 0:
                        raise DomainError("recession ray violates a facet direction")

    def full_dimensional(self) -> bool:
        """True iff a rational interior point exists (all facets strictly satisfiable)."""
        rows = _rows_from_halfspaces(self.facets, strict=True)
        return _feasible(rows, self.rank)

    def to_json(self):
        data = {
            "rank": self.rank,
            "facets": [h.to_json() for h in self.facets],
        }
        if self.vertices is not None:
            data["vertices"] = [[frac_str(e) for e in v] for v in self.vertices]
        return data


def irredundant_facets(p: Polyhedron) -> Polyhedron:
    """Minimal facet list describing the same rational point set.

    Redundancy removal must precede strictification: strictifying a
    redundant inequality is unsound for interior computations.
    """
    if p.irredundant:
        return p
    if not p.full_dimensional():
        raise DomainError("interior undefined: not full-dimensional")
    kept = list(p.facets)
    i = 0
    while i < len(kept):
        h = kept[i]
        rows = _rows_from_halfspaces([g for g in kept if g is not h])
        # negate: <normal, x> < threshold
        rows.append((_neg(h.normal), -h.threshold, True))
        if _feasible(rows, p.rank):
            i += 1
        else:
            kept.pop(i)
    return Polyhedron(p.rank, tuple(kept), p.vertices, p.recession, irredundant=True)


def _facet_filter(halfspaces, points, rays, rank):
    """Keep exactly the facet-defining inequalities, given generators.

    For full-dimensional conv(points) + cone(rays), a valid inequality is
    a facet iff its contact set (active points and active rays) has
    affine dimension rank - 1.
    """
    kept = []
    for h in halfspaces:
        active_pts = [p for p in points if h.eval(p) == h.threshold]
        if not active_pts:
            continue
        active_rays = [r for r in rays if dot(h.normal, r) == 0]
        base = active_pts[0]
        vecs = [tuple(a - b for a, b in zip(p, base)) for p in active_pts[1:]]
        vecs.extend(active_rays)
        if matrix_rank(vecs) == rank - 1:
            kept.append(h)
    return _sorted_facets(kept)


def points_plus_cone(points, recession: Cone, rank: int) -> Polyhedron:
    """Facet description of conv(points) + recession, via FM elimination.

    The recession cone must be full-dimensional-compatible in the sense
    that it carries both rays and facets.  Points are integer vectors;
    all thresholds come out integral because every vertex of the sum is
    one of the generating points.
    """
    pts = sorted({tuple(int(e) for e in p) for p in points})
    if not pts:
        raise DomainError("no generating points")
    if recession.facets is None:
        raise DomainError("recession cone needs facets")
    s = len(pts)
    width = s + rank
    rows = []
    for i in range(s):
        rows.append((tuple(1 if j == i else 0 for j in range(width)), 0, False))
    ones = tuple(1 if j < s else 0 for j in range(width))
    rows.append((ones, 1, False))
    rows.append((_neg(ones), -1, False))
    for h in recession.facets:
        # <v, x - sum mu_i p_i> >= 0
        coeffs = tuple(
            -dot(h.normal, pts[j]) if j < s else h.normal[j - s] for j in range(width)
        )
        rows.append((coeffs, 0, False))
    out = _run_elimination(rows, range(s))
    if out is None:
        raise DomainError("internal: generator system infeasible")
    halfspaces = set()
    for coeffs, rhs, _ in out:
        xpart = coeffs[s:]
        if all(c == 0 for c in xpart):
            continue
        halfspaces.add(HalfSpace(xpart, rhs))
    facets = _facet_filter(sorted(halfspaces, key=lambda h: (h.normal, h.threshold)),
                           pts, recession.rays, rank)
    return Polyhedron(rank, facets, vertices=pts, recession=recession, irredundant=True)


def newton_from_points(points, rank: int) -> Polyhedron:
    """conv(points) + nonnegative orthant, with irredundant integer facets."""
    pts = list(points)
    if not pts:
        raise DomainError("zero ideal has no Newton polyhedron")
    for p in pts:
        if len(p) != rank:
            raise DomainError("point length does not match rank")
        if any(e < 0 for e in p):
            raise DomainError("Newton polyhedron points must be nonnegative")
    return points_plus_cone(pts, orthant(rank), rank)


def scale(p: Polyhedron, lam) -> Polyhedron:
    """lam * p for lam >= 0; lam = 0 yields the recession cone."""
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("scaling factor must be nonnegative")
    if lam == 0:
        facets = {HalfSpace(h.normal, Fraction(0)) for h in p.facets}
        return Polyhedron(
            p.rank,
            tuple(facets),
            vertices=((0,) * p.rank,),
            recession=p.recession,
            irredundant=False,
        )
    facets = tuple(HalfSpace(h.normal, h.threshold * lam) for h in p.facets)
    vertices = None
    if p.vertices is not None:
        vertices = tuple(tuple(e * lam for e in v) for v in p.vertices)
    return Polyhedron(p.rank, facets, vertices, p.recession, irredundant=p.irredundant)


# ---------------------------------------------------------------------------
# Threshold systems over the integer lattice.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdSystem:
    """Finite conjunction of <normal, m> >= t with integer t, over Z^rank.

    Constraints are canonicalized: primitive normals (thresholds adjusted
    by exact ceiling division, sound over the lattice), one constraint
    per normal (the strongest), sorted.  A constraint with zero normal
    and positive threshold marks the whole system infeasible.
    """

    rank: int
    constraints: tuple = ()
    infeasible: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError("rank must be positive")
        canon = {}
        infeasible = bool(self.infeasible)
        for normal, t in self.constraints:
            normal = tuple(int(e) for e in normal)
            if len(normal) != self.rank:
                raise DomainError("constraint length does not match rank")
            t = int(t)
            g = math.gcd(*(abs(e) for e in normal)) if normal else 0
            if g == 0:
                if t > 0:
                    infeasible = True
                continue
            if g > 1:
                normal = tuple(e // g for e in normal)
                t = _ceil_div(t, g)
            if normal not in canon or t > canon[normal]:
                canon[normal] = t
        object.__setattr__(self, "constraints", tuple(sorted(canon.items())))
        object.__setattr__(self, "infeasible", infeasible)

    def satisfies(self, m) -> bool:
        if self.infeasible:
            return False
        return all(dot(w, m) >= t for w, t in self.constraints)

    def substitute_last(self, k: int) -> "ThresholdSystem":
        """Fix the last coordinate to k; constraints drop to rank - 1."""
        if self.rank < 2:
            raise DomainError("cannot substitute in a rank-1 system")
        rows = tuple((w[:-1], t - w[-1] * k) for w, t in self.constraints)
        return ThresholdSystem(self.rank - 1, rows, self.infeasible)

    def normals(self):
        return tuple(w for w, _ in self.constraints)

    def to_json(self):
        data = {
            "rank": self.rank,
            "facets": [
                {"normal": list(w), "threshold": frac_str(t)} for w, t in self.constraints
            ],
        }
        if self.infeasible:
            data["infeasible"] = True
        return data


def strict_interior_system(p: Polyhedron) -> ThresholdSystem:
    """Integer points of the topological interior of a full-dimensional p.

    Per irredundant facet <w, x> >= c, the interior condition <w, m> > c
    over integers m is exactly <w, m> >= floor(c) + 1.
    """
    q = irredundant_facets(p)
    constraints = tuple((h.normal, math.floor(h.threshold) + 1) for h in q.facets)
    return ThresholdSystem(p.rank, constraints)


# ---------------------------------------------------------------------------
# Lattice-point enumeration.
# ---------------------------------------------------------------------------


def _point_guard(max_points):
    if max_points is not None:
        return int(max_points)
    env = os.environ.get(POINT_GUARD_ENV)
    if env:
        return int(env)
    return DEFAULT_POINT_GUARD


def _enumerate_box(constraints, bounds):
    rank = len(bounds)
    if not constraints:
        return [tuple(p) for p in itertools.product(*(range(lo, hi + 1) for lo, hi in bounds))]
    ncons = len(constraints)
    ws = [w for w, _ in constraints]
    ts = [t for _, t in constraints]
    smin = [[0] * (rank + 1) for _ in range(ncons)]
    smax = [[0] * (rank + 1) for _ in range(ncons)]
    for ci in range(ncons):
        w = ws[ci]
        for d in range(rank - 1, -1, -1):
            lo, hi = bounds[d]
            a, b = w[d] * lo, w[d] * hi
            smin[ci][d] = smin[ci][d + 1] + min(a, b)
            smax[ci][d] = smax[ci][d + 1] + max(a, b)
    out = []
    prefix = []

    def rec(depth, partials):
        certified = True
        for ci in range(ncons):
            p = partials[ci]
            if p + smax[ci][depth] < ts[ci]:
                return
            if p + smin[ci][depth] < ts[ci]:
                certified = False
        if certified:
            if depth == rank:
                out.append(tuple(prefix))
            else:
                head = tuple(prefix)
                for tail in itertools.product(
                    *(range(lo, hi + 1) for lo, hi in bounds[depth:])
                ):
                    out.append(head + tail)
            return
        lo, hi = bounds[depth]
        for v in range(lo, hi + 1):
            prefix.append(v)
            rec(depth + 1, [partials[ci] + ws[ci][depth] * v for ci in range(ncons)])
            prefix.pop()

    rec(0, [0] * ncons)
    return out


def lattice_points(system: ThresholdSystem, box, max_points=None):
    """All integer points of the system inside the box, sorted lexicographically.

    ``box`` is one (lo, hi) pair per coordinate.  The box volume guard
    (default 10**8, override via REESMULT_MAX_POINTS or ``max_points``)
    bounds the search space, not the output.
    """
    bounds = tuple((int(lo), int(hi)) for lo, hi in box)
    if len(bounds) != system.rank:
        raise DomainError("box length does not match system rank")
    for lo, hi in bounds:
        if lo > hi:
            raise DomainError("box lower bound exceeds upper bound")
    volume = math.prod(hi - lo + 1 for lo, hi in bounds)
    guard = _point_guard(max_points)
    if volume > guard:
        raise ResourceLimitError(f"box volume {volume} exceeds enumeration guard {guard}")
    if system.infeasible:
        return []
    threads = 1
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            threads = max(1, int(env))
        except ValueError:
            threads = 1
    lo0, hi0 = bounds[0]
    span = hi0 - lo0 + 1
    if threads > 1 and span >= 2:
        nchunks = min(threads, span)
        edges = [lo0 + (span * i) // nchunks for i in range(nchunks)] + [hi0 + 1]
        chunks = [
            ((edges[i], edges[i + 1] - 1),) + bounds[1:]
            for i in range(nchunks)
            if edges[i] <= edges[i + 1] - 1
        ]
        with ThreadPoolExecutor(max_workers=nchunks) as pool:
            parts = list(pool.map(lambda b: _enumerate_box(system.constraints, b), chunks))
        out = []
        for part in parts:
            out.extend(part)
        return out
    return _enumerate_box(system.constraints, bounds)


def cube(rank: int, lo: int, hi: int):
    return tuple((lo, hi) for _ in range(rank))
