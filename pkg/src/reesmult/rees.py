"""Toric cone models of Rees and extended Rees algebras of a normal
monomial ideal.

The extended Rees algebra R[at, t^-1] of a normal monomial ideal is the
semigroup algebra of a full-dimensional cone in rank n+1 (last
coordinate = t-degree); the Rees algebra adds the constraint k >= 0.
On these models the canonical module is the strict interior of the
cone, multiplier modules come from floor-threshold systems on the cone
facets, and the graded decomposition of both multiplier modules reduces
to an identity of integer threshold systems that this module verifies
level by level against the base-ring Newton computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError
from .ideals import (
    OMEGA,
    MonomialIdeal,
    MonomialModule,
    default_box,
    first_non_closed_power,
    module_contains,
    multiplier_module,
    newton_positive_facets,
    omega_module,
    power,
    systems_equal,
)
from .polyhedra import (
    Cone,
    HalfSpace,
    Polyhedron,
    ThresholdSystem,
    as_fraction,
    cube,
    dot,
    irredundant_facets,
    lattice_points,
    points_plus_cone,
    scale,
    strict_interior_system,
    homogeneous_rays,
)
from .serialize import frac_str

REES = "REES"
EXTENDED_REES = "EXTENDED_REES"


@dataclass(frozen=True)
class GradedToricAlgebra:
    """Cone model of a Rees-type algebra, graded by the last coordinate.

    ``cone`` is the H-representation of the dual cone (all thresholds 0,
    irredundant); ``rays`` are the primitive generators of the primal
    cone, i.e. exactly the facet normals, in matching order.
    """

    nvars: int
    kind: str
    cone: ThresholdSystem
    rays: tuple
    source: MonomialIdeal

    @property
    def ambient_rank(self) -> int:
        return self.nvars + 1

    def t_inverse(self):
        return (0,) * self.nvars + (-1,)

    def to_json(self):
        data = self.cone.to_json()
        data["kind"] = self.kind
        data["rays"] = [list(r) for r in self.rays]
        data["ideal"] = self.source.to_json()
        return data


@dataclass(frozen=True)
class GradedModuleSpec:
    """Graded monomial submodule over a Rees-type algebra."""

    ambient_rank: int
    system: ThresholdSystem
    description: str

    def to_json(self):
        data = self.system.to_json()
        data["description"] = self.description
        return data


@dataclass(frozen=True)
class PerLevel:
    k: int
    lhs_count: int
    rhs_count: int
    equal: bool
    witness: tuple | None

    def to_json(self):
        return {
            "k": self.k,
            "lhsCount": self.lhs_count,
            "rhsCount": self.rhs_count,
            "equal": self.equal,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass(frozen=True)
class VerificationReport:
    """Per-level comparison of two independently computed graded modules."""

    theorem: str
    subject: dict
    lam: Fraction
    k_range: tuple
    box: tuple
    per_k: tuple
    overall: bool
    details: dict

    def to_json(self):
        data = {
            "theorem": self.theorem,
            "lambda": frac_str(self.lam),
            "kRange": list(self.k_range),
            "box": [list(b) for b in self.box],
            "perK": [p.to_json() for p in self.per_k],
            "overall": self.overall,
            # strict interior conditions use floor(lambda*c) + 1 throughout
            "convention": "floor",
        }
        data.update(self.subject)
        for key, value in sorted(self.details.items()):
            data[key] = value
        return data


def _slice_box(a: MonomialIdeal):
    upper = a.max_entry() * 3 + 2
    return cube(a.nvars, 0, upper)


def _validate_slices(alg: GradedToricAlgebra):
    """Level-k lattice points must equal the exponents of a^k (k >= 1),
    the whole orthant for k <= 0."""
    a = alg.source
    box = _slice_box(a)
    lo = -2 if alg.kind == EXTENDED_REES else 0
    for k in range(lo, 4):
        got = lattice_points(alg.cone.substitute_last(k), box)
        if k <= 0:
            want = lattice_points(ThresholdSystem(a.nvars, ()), box)
        else:
            ak = power(a, k)
            want = [m for m in lattice_points(ThresholdSystem(a.nvars, ()), box)
                    if ak.contains_exponent(m)]
        if got != want:
            raise AssertionError(
                f"internal: level-{k} slice of the {alg.kind} cone of "
                f"{a.to_json()} does not match a^{k}"
            )


def _cone_rows(a: MonomialIdeal, extra_k_row: bool):
    n = a.nvars
    rows = [(tuple(1 if j == i else 0 for j in range(n)) + (0,), 0) for i in range(n)]
    for w, c in newton_positive_facets(a):
        rows.append((w + (-c,), 0))
    if extra_k_row:
        rows.append(((0,) * n + (1,), 0))
    return rows


def _build_algebra(a: MonomialIdeal, kind: str) -> GradedToricAlgebra:
    k = first_non_closed_power(a)
    if k is not None:
        raise DomainError(
            "extended Rees algebra is not toric: ideal not normal "
            f"(closure differs at power {k})"
        )
    rows = _cone_rows(a, extra_k_row=(kind == REES))
    poly = Polyhedron(
        a.nvars + 1,
        tuple(HalfSpace(w, Fraction(t)) for w, t in rows),
    )
    poly = irredundant_facets(poly)
    system = ThresholdSystem(a.nvars + 1, tuple((h.normal, 0) for h in poly.facets))
    rays = system.normals()
    alg = GradedToricAlgebra(a.nvars, kind, system, rays, a)
    _validate_slices(alg)
    return alg


@lru_cache(maxsize=None)
def extended_rees_cone(a: MonomialIdeal) -> GradedToricAlgebra:
    """Cone of R[at, t^-1]: {m >= 0} and <w_j, m> >= c_j k per Newton facet."""
    return _build_algebra(a, EXTENDED_REES)


@lru_cache(maxsize=None)
def rees_cone(a: MonomialIdeal) -> GradedToricAlgebra:
    """Cone of R[at]: the extended cone intersected with {k >= 0}."""
    return _build_algebra(a, REES)


def canonical_module(alg: GradedToricAlgebra) -> GradedModuleSpec:
    """Strict interior of the cone: every facet threshold raised 0 -> 1."""
    system = ThresholdSystem(
        alg.ambient_rank, tuple((w, 1) for w, _ in alg.cone.constraints)
    )
    tag = "OMEGA_T" if alg.kind == EXTENDED_REES else "OMEGA_S"
    return GradedModuleSpec(alg.ambient_rank, system, tag)


def principal_divisor_pairings(alg: GradedToricAlgebra, u) -> list:
    """Pairings <u, v_i> over the rays v_i; the divisor of the monomial x^u."""
    u = tuple(int(e) for e in u)
    if len(u) != alg.ambient_rank:
        raise DomainError("exponent length does not match ambient rank")
    pairings = [dot(u, v) for v in alg.rays]
    if any(p < 0 for p in pairings):
        raise DomainError("not a monomial of the algebra")
    return pairings


def multiplier_module_principal(alg: GradedToricAlgebra, u, lam) -> GradedModuleSpec:
    """Multiplier module of a principal monomial pair on the cone model.

    Per facet/ray i the lattice condition is <m, v_i> >= 1 + floor(lam * <u, v_i>).
    """
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    pairings = principal_divisor_pairings(alg, u)
    system = ThresholdSystem(
        alg.ambient_rank,
        tuple(
            (w, 1 + math.floor(lam * p))
            for (w, _), p in zip(alg.cone.constraints, pairings)
        ),
    )
    tail = "T" if alg.kind == EXTENDED_REES else "S"
    return GradedModuleSpec(alg.ambient_rank, system, f"MULT_{tail}({frac_str(lam)})")


@lru_cache(maxsize=None)
def _graded_newton(alg: GradedToricAlgebra, gens) -> Polyhedron:
    normals = alg.cone.normals()
    recession = Cone(
        alg.ambient_rank,
        homogeneous_rays(list(normals), alg.ambient_rank),
        tuple(HalfSpace(w, Fraction(0)) for w in normals),
    )
    return points_plus_cone(gens, recession, alg.ambient_rank)


def multiplier_module_general(alg: GradedToricAlgebra, gens, lam) -> GradedModuleSpec:
    """Multiplier module of the pair cut out by monomials ``gens`` on the
    cone model: strict interior of lam * (conv(gens) + cone)."""
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    gens = tuple(sorted({tuple(int(e) for e in g) for g in gens}))
    for g in gens:
        if len(g) != alg.ambient_rank:
            raise DomainError("generator length does not match ambient rank")
        if not alg.cone.satisfies(g):
            raise DomainError("generator outside cone")
    newt = _graded_newton(alg, gens)
    system = strict_interior_system(scale(newt, lam))
    tail = "T" if alg.kind == EXTENDED_REES else "S"
    return GradedModuleSpec(alg.ambient_rank, system, f"MULT_{tail}({frac_str(lam)})")


def graded_piece(module: GradedModuleSpec, k: int) -> MonomialModule:
    """Slice at t-degree k, as a monomial set over the base ring."""
    return MonomialModule(
        module.ambient_rank - 1, module.system.substitute_last(k), OMEGA
    )


def decomposition_rhs_T(a: MonomialIdeal, lam, k: int) -> MonomialModule:
    """Level-k term of the extended-Rees decomposition: the multiplier
    module at exponent k + lam, with omega_R when k + lam <= 0."""
    lam = as_fraction(lam)
    if k + lam > 0:
        return multiplier_module(a, k + lam)
    return omega_module(a.nvars)


def decomposition_rhs_S(a: MonomialIdeal, lam, n: int) -> MonomialModule:
    """Term at t-degree n+1 of the Rees decomposition (the sum starts at t^1)."""
    if n < 0:
        raise DomainError("decomposition index must be nonnegative")
    lam = as_fraction(lam)
    return multiplier_module(a, n + 1 + lam)


def graded_default_box(a: MonomialIdeal, lam, k_max: int):
    lam = as_fraction(lam)
    upper = a.max_entry() * (max(k_max, 0) + math.ceil(lam) + 2) + 2
    return cube(a.nvars, 0, upper)


def _first_mismatch(pts1, pts2):
    s1, s2 = set(pts1), set(pts2)
    diff = s1.symmetric_difference(s2)
    return min(diff) if diff else None


def verify_theoremB_T(a: MonomialIdeal, lam, k_range=(-3, 6), box=None) -> VerificationReport:
    """Graded decomposition of the extended-Rees multiplier module.

    LHS: level-k piece of the cone-model multiplier module of t^-1.
    RHS: the base-ring multiplier module at exponent k + lam.  The two
    routes share no code past the Newton facets, and the integer
    threshold identity c*k + floor(lam*c) + 1 = floor((k+lam)*c) + 1 is
    additionally checked symbolically per facet.
    """
    lam = as_fraction(lam)
    alg = extended_rees_cone(a)
    module = multiplier_module_principal(alg, alg.t_inverse(), lam)
    lo, hi = k_range
    if box is None:
        box = graded_default_box(a, lam, hi)
    per_k = []
    thresholds_identical = True
    for k in range(lo, hi + 1):
        lhs = graded_piece(module, k)
        rhs = decomposition_rhs_T(a, lam, k)
        pts_l = lhs.points(box)
        pts_r = rhs.points(box)
        equal = pts_l == pts_r
        per_k.append(PerLevel(k, len(pts_l), len(pts_r), equal, _first_mismatch(pts_l, pts_r)))
        lhs_t = dict(lhs.system.constraints)
        rhs_t = dict(rhs.system.constraints)
        for w in set(lhs_t) & set(rhs_t):
            if lhs_t[w] != rhs_t[w]:
                thresholds_identical = False
    overall = all(p.equal for p in per_k)
    return VerificationReport(
        theorem="B.2",
        subject={"ideal": a.to_json()},
        lam=lam,
        k_range=(lo, hi),
        box=box,
        per_k=tuple(per_k),
        overall=overall,
        details={"thresholdsIdentical": thresholds_identical},
    )


def rees_ideal_generators(a: MonomialIdeal):
    """Generators of a*S placed at t-degree 0 (they generate the same
    ideal; normality makes the degree-k pieces come out right)."""
    return tuple(g + (0,) for g in a.generators)


def verify_theoremB_S(a: MonomialIdeal, lam, n_range=(0, 5), box=None) -> VerificationReport:
    """Graded decomposition of the Rees multiplier module.

    Also asserts the t-degree-0 piece is empty: the decomposition starts
    at t^1.
    """
    lam = as_fraction(lam)
    alg = rees_cone(a)
    module = multiplier_module_general(alg, rees_ideal_generators(a), lam)
    lo, hi = n_range
    if lo < 0:
        raise DomainError("decomposition index must be nonnegative")
    if box is None:
        box = graded_default_box(a, lam, hi + 1)
    per_k = []
    for n in range(lo, hi + 1):
        lhs = graded_piece(module, n + 1)
        rhs = decomposition_rhs_S(a, lam, n)
        pts_l = lhs.points(box)
        pts_r = rhs.points(box)
        equal = pts_l == pts_r
        per_k.append(
            PerLevel(n + 1, len(pts_l), len(pts_r), equal, _first_mismatch(pts_l, pts_r))
        )
    degree_zero = graded_piece(module, 0).points(box)
    degree_zero_empty = not degree_zero
    overall = all(p.equal for p in per_k) and degree_zero_empty
    return VerificationReport(
        theorem="B.1",
        subject={"ideal": a.to_json()},
        lam=lam,
        k_range=(lo, hi),
        box=box,
        per_k=tuple(per_k),
        overall=overall,
        details={"degreeZeroEmpty": degree_zero_empty},
    )


def is_pair_rational(alg: GradedToricAlgebra, u, lam, box=None) -> bool:
    """Multiplier module of the principal pair equals the canonical module.

    Exact thresholdwise on the shared irredundant facet normals (they
    coincide by construction); the box is only consulted if they ever
    did not.
    """
    lam = as_fraction(lam)
    module = multiplier_module_principal(alg, u, lam)
    can = canonical_module(alg)
    if box is None:
        box = _pair_box(alg, lam)
    return systems_equal(module.system, can.system, box)


def _pair_box(alg: GradedToricAlgebra, lam, k_span=(-3, 6)):
    base = graded_default_box(alg.source, lam, k_span[1])
    return base + (k_span,)


def verify_theoremA(a: MonomialIdeal, lam, box=None) -> VerificationReport:
    """Pair-level rationality biconditional between the three models.

    The extended-Rees pair is rational iff the base pair and the Rees
    pair both are; all three sides are computed independently.
    """
    lam = as_fraction(lam)
    ext = extended_rees_cone(a)
    rees = rees_cone(a)
    if box is None:
        box = default_box(a, lam if lam > 0 else 1)
    rational_r = module_contains(multiplier_module(a, lam), omega_module(a.nvars), box)
    rational_t = is_pair_rational(ext, ext.t_inverse(), lam)
    s_module = multiplier_module_general(rees, rees_ideal_generators(a), lam)
    rational_s = systems_equal(
        s_module.system, canonical_module(rees).system, _pair_box(rees, lam)
    )
    biconditional = rational_t == (rational_r and rational_s)
    return VerificationReport(
        theorem="A",
        subject={"ideal": a.to_json()},
        lam=lam,
        k_range=(0, 0),
        box=box,
        per_k=(),
        overall=biconditional,
        details={
            "rationalR": rational_r,
            "rationalS": rational_s,
            "rationalT": rational_t,
            "biconditional": biconditional,
        },
    )
