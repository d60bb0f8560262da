"""Monomial ideals over a polynomial ring.

Newton polyhedra, powers, integral closure and normality, multiplier
ideals and multiplier modules (exact lattice conditions on the scaled
Newton polyhedron's interior), log canonical threshold, and jumping
numbers with their verification boxes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .polyhedra import (
    Polyhedron,
    ThresholdSystem,
    as_fraction,
    cube,
    lattice_points,
    newton_from_points,
    scale,
    strict_interior_system,
)
from .serialize import frac_str

OMEGA = "OMEGA"
RING = "RING"


@dataclass(frozen=True)
class MonomialIdeal:
    """Finitely many minimal monomial generators, identified by exponents.

    Generators are divisibility-minimal and sorted; the zero ideal is
    excluded.  The unit ideal (exponent zero) is representable but lies
    outside the usual positive-height hypotheses; callers that care
    check :attr:`is_unit`.
    """

    nvars: int
    generators: tuple

    def __post_init__(self):
        if self.nvars < 1:
            raise DomainError("need at least one variable")
        gens = tuple(sorted({tuple(int(e) for e in g) for g in self.generators}))
        if not gens:
            raise DomainError("zero ideal")
        for g in gens:
            if len(g) != self.nvars:
                raise DomainError("generator length does not match nvars")
            if any(e < 0 for e in g):
                raise DomainError("generator exponents must be nonnegative")
        for g in gens:
            for h in gens:
                if g != h and all(a <= b for a, b in zip(g, h)):
                    raise DomainError("generators not minimal; use minimalize()")
        object.__setattr__(self, "generators", gens)

    @property
    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.nvars,)

    def contains_exponent(self, m) -> bool:
        return any(all(e >= g for e, g in zip(m, gen)) for gen in self.generators)

    def max_entry(self) -> int:
        return max(e for g in self.generators for e in g)

    def to_json(self):
        return {"nvars": self.nvars, "generators": [list(g) for g in self.generators]}


def minimalize(gens, nvars=None) -> MonomialIdeal:
    """Drop divisible generators and build the ideal; idempotent."""
    gens = [tuple(int(e) for e in g) for g in gens]
    if not gens:
        raise DomainError("zero ideal")
    if nvars is None:
        nvars = len(gens[0])
    kept = []
    for g in sorted(set(gens)):
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept if h != g):
            kept = [h for h in kept if not all(a <= b for a, b in zip(g, h))]
            kept.append(g)
    return MonomialIdeal(nvars, tuple(kept))


@lru_cache(maxsize=None)
def newton(a: MonomialIdeal) -> Polyhedron:
    """Newton polyhedron conv(generators) + orthant, irredundant facets."""
    return newton_from_points(a.generators, a.nvars)


def newton_positive_facets(a: MonomialIdeal):
    """(normal, threshold) per Newton facet with positive integer threshold."""
    out = []
    for h in newton(a).facets:
        if h.threshold > 0:
            assert h.threshold.denominator == 1
            out.append((h.normal, int(h.threshold)))
    return out


def power(a: MonomialIdeal, k: int) -> MonomialIdeal:
    """k-th power: minimalized k-fold sums of generators."""
    if k < 1:
        raise DomainError("power exponent must be positive")
    if k == 1:
        return a
    sums = set()
    for combo in itertools.combinations_with_replacement(a.generators, k):
        sums.add(tuple(sum(es) for es in zip(*combo)))
    return minimalize(sums, a.nvars)


def integral_closure(a: MonomialIdeal) -> MonomialIdeal:
    """Minimal generators of the monomials in Newt(a); extensive, idempotent.

    Minimal lattice points of the Newton polyhedron have coordinates
    bounded by the per-coordinate maxima of the generators, so a finite
    box suffices.
    """
    bounds = tuple(
        (0, max(g[i] for g in a.generators)) for i in range(a.nvars)
    )
    system = ThresholdSystem(
        a.nvars,
        tuple((h.normal, int(h.threshold)) for h in newton(a).facets),
    )
    pts = lattice_points(system, bounds)
    return minimalize(pts, a.nvars)


def is_normal(a: MonomialIdeal, bound=None) -> bool:
    """All powers up to the bound integrally closed.

    For monomial ideals, closedness of the first nvars - 1 powers already
    implies normality, hence the default bound.
    """
    if bound is None:
        bound = max(a.nvars - 1, 1)
    for k in range(1, bound + 1):
        ak = power(a, k)
        if integral_closure(ak) != ak:
            return False
    return True


def first_non_closed_power(a: MonomialIdeal, bound=None):
    """Smallest k <= bound with a^k not integrally closed, or None."""
    if bound is None:
        bound = max(a.nvars - 1, 1)
    for k in range(1, bound + 1):
        ak = power(a, k)
        if integral_closure(ak) != ak:
            return k
    return None


@dataclass(frozen=True)
class MonomialModule:
    """Monomial submodule of omega_R (all exponents >= 1) or of R (>= 0),
    cut out by a threshold system over the exponent lattice."""

    nvars: int
    system: ThresholdSystem
    ambient: str

    def __post_init__(self):
        if self.ambient not in (OMEGA, RING):
            raise DomainError(f"unknown ambient {self.ambient!r}")
        if self.system.rank != self.nvars:
            raise DomainError("system rank does not match nvars")

    def points(self, box):
        return lattice_points(self.system, box)

    def is_full_ring(self) -> bool:
        """For RING ambient: the system is satisfied by the zero exponent.

        Sound because every constraint normal is nonnegative, so the
        monomial set is upward closed and contains 0 iff it is all of R.
        """
        if self.ambient != RING:
            raise DomainError("full-ring test only applies to RING ambient")
        return self.system.satisfies((0,) * self.nvars)

    def to_json(self):
        data = self.system.to_json()
        data["ambient"] = self.ambient
        return data


def omega_module(nvars: int) -> MonomialModule:
    """The canonical module omega_R = all exponents >= 1."""
    units = tuple(
        (tuple(1 if j == i else 0 for j in range(nvars)), 1) for i in range(nvars)
    )
    return MonomialModule(nvars, ThresholdSystem(nvars, units), OMEGA)


def full_ring_module(nvars: int) -> MonomialModule:
    units = tuple(
        (tuple(1 if j == i else 0 for j in range(nvars)), 0) for i in range(nvars)
    )
    return MonomialModule(nvars, ThresholdSystem(nvars, units), RING)


def multiplier_module(a: MonomialIdeal, lam) -> MonomialModule:
    """Monomials in the interior of lam * Newt(a); a submodule of omega_R.

    Concretely {m_i >= 1 for facet directions} together with
    <w_j, m> >= floor(lam * c_j) + 1 per Newton facet (w_j, c_j).
    """
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    return MonomialModule(a.nvars, strict_interior_system(scale(newton(a), lam)), OMEGA)


def multiplier_ideal(a: MonomialIdeal, lam) -> MonomialModule:
    """Multiplier ideal: m is in it iff m + (1,..,1) lies in the module version."""
    module = multiplier_module(a, lam)
    shifted = tuple(
        (w, t - sum(w)) for w, t in module.system.constraints
    )
    return MonomialModule(a.nvars, ThresholdSystem(a.nvars, shifted), RING)


def systems_equal(s1: ThresholdSystem, s2: ThresholdSystem, box) -> bool:
    """Set equality of two lattice systems: thresholdwise when the normal
    sets coincide, otherwise by enumeration inside the box."""
    if s1.rank != s2.rank:
        raise DomainError("mismatched rank")
    if not s1.infeasible and not s2.infeasible:
        d1, d2 = dict(s1.constraints), dict(s2.constraints)
        if set(d1) == set(d2):
            if all(d1[w] == d2[w] for w in d1):
                return True
    return lattice_points(s1, box) == lattice_points(s2, box)


def module_contains(big: MonomialModule, small: MonomialModule, box) -> bool:
    """True iff every lattice point of ``small`` inside the box lies in ``big``.

    When the constraint normal sets coincide, thresholdwise comparison
    certifies containment without enumeration (sufficient, not
    necessary, because of attainability gaps over the lattice); the
    enumeration fallback decides the rest within the box.
    """
    if big.nvars != small.nvars:
        raise DomainError("mismatched rank")
    if big.ambient != small.ambient:
        raise DomainError("mismatched ambient")
    if not big.system.infeasible and not small.system.infeasible:
        d_big, d_small = dict(big.system.constraints), dict(small.system.constraints)
        if set(d_big) == set(d_small) and all(d_big[w] <= d_small[w] for w in d_big):
            return True
    return all(big.system.satisfies(m) for m in small.points(box))


def default_box(a: MonomialIdeal, lam_max):
    """Verification box: covers the minimal generators of every module
    compared at exponents up to lam_max."""
    lam_max = as_fraction(lam_max)
    upper = a.max_entry() * (math.ceil(lam_max) + 2) + 2
    return cube(a.nvars, 0, upper)


def _coverage_upper(systems, nvars):
    """Per-coordinate bound containing all minimal points of the systems.

    Every system here has nonnegative normals, so its solution set is
    upward closed and determined by its minimal points.
    """
    upper = [1] * nvars
    for sys in systems:
        for w, t in sys.constraints:
            for i in range(nvars):
                if w[i] > 0:
                    slack = t - 1 - sum(w[j] for j in range(nvars) if j != i)
                    bound = _pos_ceil(slack, w[i]) + 1
                    if bound > upper[i]:
                        upper[i] = bound
    return upper


def _pos_ceil(a, b):
    if a <= 0:
        return 0
    return -((-a) // b)


@dataclass(frozen=True)
class JumpReport:
    """Jumping numbers of a within (0, lam_max], with the box used."""

    ideal: MonomialIdeal
    lam_max: Fraction
    jumps: tuple
    candidates: tuple
    box: tuple
    warnings: tuple

    def to_json(self):
        return {
            "ideal": self.ideal.to_json(),
            "lambdaMax": frac_str(self.lam_max),
            "jumps": [frac_str(j) for j in self.jumps],
            "candidates": [frac_str(c) for c in self.candidates],
            "box": [list(b) for b in self.box],
            "warnings": list(self.warnings),
        }


def jumping_numbers(a: MonomialIdeal, lam_max, box=None) -> JumpReport:
    """Values where the multiplier module strictly shrinks.

    Candidates are exactly t / c_j over the positive Newton facet
    thresholds c_j: between consecutive candidates every floor
    floor(lam * c_j) is constant, so the module is constant and the scan
    is complete, not heuristic.  The module and ideal versions share the
    same jumps (the diagonal shift is a bijection of lattice sets).
    """
    lam_max = as_fraction(lam_max)
    if lam_max <= 0:
        raise DomainError("lambda_max must be positive")
    if box is None:
        box = default_box(a, lam_max)
    thresholds = sorted({c for _, c in newton_positive_facets(a)})
    candidates = sorted(
        {
            Fraction(t, c)
            for c in thresholds
            for t in range(1, math.floor(lam_max * c) + 1)
        }
    )
    warnings = []
    if not candidates:
        return JumpReport(a, lam_max, (), (), box, ())
    if len(candidates) > 1:
        eps = min(b - c for b, c in zip(candidates[1:], candidates)) / 2
    else:
        eps = candidates[0] / 2
    jumps = []
    for cand in candidates:
        before = multiplier_module(a, cand - eps)
        at = multiplier_module(a, cand)
        need = _coverage_upper([before.system, at.system], a.nvars)
        if any(need[i] > box[i][1] for i in range(a.nvars)):
            warnings.append(
                f"box may be too small to witness a jump at {frac_str(cand)}"
            )
        if at.points(box) != before.points(box):
            jumps.append(cand)
    return JumpReport(a, lam_max, tuple(jumps), tuple(candidates), box, tuple(warnings))


def lct(a: MonomialIdeal) -> Fraction:
    """Log canonical threshold: smallest lam with multiplier ideal != R.

    Computed two ways, which must agree: the facet formula
    min <(1,..,1), w_j> / c_j, and the first candidate at which the zero
    exponent leaves the multiplier ideal.
    """
    if a.is_unit:
        raise DomainError("lct undefined for unit ideal")
    facets = newton_positive_facets(a)
    assert facets, "proper monomial ideal must have a positive Newton facet"
    formula = min(Fraction(sum(w), c) for w, c in facets)
    # cross-check by candidate scan (the multiplier-ideal set is upward
    # closed, so J = R iff it contains the zero exponent)
    candidates = sorted(
        {Fraction(t, c) for _, c in facets for t in range(1, math.floor(formula * c) + 1)}
    )
    first = None
    for cand in candidates:
        if not multiplier_ideal(a, cand).is_full_ring():
            first = cand
            break
    if first is None or first != formula:
        raise AssertionError(
            f"lct computations disagree: formula {formula}, scan {first}"
        )
    return formula
