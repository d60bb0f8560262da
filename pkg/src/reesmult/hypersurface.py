"""Local toric hypersurface model xy = s_1^{a_1} ... s_m^{a_m}.

Torus-invariant divisor data, the canonical divisor, section membership
for the floor-threshold twist of the canonical module, the regrading of
monomials into t-degrees, and the local verification that the section
conditions on the hypersurface side coincide, degree by degree, with
the simple-normal-crossing multiplier conditions on the base.

Normal form: the relation xy = f rewrites every monomial so that
min(x-degree, y-degree) = 0; monomials of the ring are enumerated
without double counting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DomainError
from .polyhedra import as_fraction
from .rees import PerLevel, VerificationReport


@dataclass(frozen=True)
class LocalHypersurfaceModel:
    """The ring k[x, y, s_1..s_n]/(xy - s_1^{a_1}...s_m^{a_m})."""

    n: int
    m: int
    exps: tuple

    def __post_init__(self):
        if not (1 <= self.m <= self.n):
            raise DomainError("need 1 <= m <= n")
        exps = tuple(int(e) for e in self.exps)
        if len(exps) != self.m or any(e < 1 for e in exps):
            raise DomainError("need m positive exponents")
        object.__setattr__(self, "exps", exps)

    def to_json(self):
        return {"n": self.n, "m": self.m, "exps": list(self.exps)}


@dataclass(frozen=True)
class LocalMonomial:
    """x^a y^b s^c in normal form (min(a, b) = 0, all exponents >= 0)."""

    a: int
    b: int
    c: tuple

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or min(self.a, self.b) != 0:
            raise DomainError("monomial not in normal form: need min(a, b) = 0")
        c = tuple(int(e) for e in self.c)
        if any(e < 0 for e in c):
            raise DomainError("negative s-exponent")
        object.__setattr__(self, "c", c)


def normal_form(model: LocalHypersurfaceModel, a: int, b: int, c) -> LocalMonomial:
    """Rewrite xy -> f until one of the x/y exponents vanishes."""
    t = min(a, b)
    c = list(int(e) for e in c)
    for i in range(model.m):
        c[i] += t * model.exps[i]
    return LocalMonomial(a - t, b - t, tuple(c))


@dataclass(frozen=True)
class DivisorData:
    """Rays/divisors of the model with canonical and x, y divisor coefficients."""

    labels: tuple
    canonical: tuple
    div_x: tuple
    div_y: tuple


def divisor_data(model: LocalHypersurfaceModel) -> DivisorData:
    """The 2m + (n - m) torus-invariant prime divisors.

    The canonical divisor has coefficient -1 on every ray; div(x) and
    div(y) are supported on the x-side resp. y-side rays with the f
    exponents as coefficients.
    """
    labels = (
        tuple(f"D_x,{i + 1}" for i in range(model.m))
        + tuple(f"D_y,{i + 1}" for i in range(model.m))
        + tuple(f"D_{i + 1}" for i in range(model.m, model.n))
    )
    count = 2 * model.m + (model.n - model.m)
    canonical = (-1,) * count
    div_x = tuple(model.exps) + (0,) * (count - model.m)
    div_y = (0,) * model.m + tuple(model.exps) + (0,) * (model.n - model.m)
    return DivisorData(labels, canonical, div_x, div_y)


def monomial_pairings(model: LocalHypersurfaceModel, mono: LocalMonomial):
    """Vanishing orders of the monomial along each ray, matching divisor_data."""
    ex = model.exps
    orders_x = tuple(mono.a * ex[i] + mono.c[i] for i in range(model.m))
    orders_y = tuple(mono.b * ex[i] + mono.c[i] for i in range(model.m))
    orders_s = tuple(mono.c[i] for i in range(model.m, model.n))
    return orders_x + orders_y + orders_s


def is_section(model: LocalHypersurfaceModel, mono: LocalMonomial, lam) -> bool:
    """Membership in the floor-threshold twist O(ceil(K - lam * div(y))).

    Conditions: a*a_i + c_i >= 1 and b*a_i + c_i >= 1 + floor(lam * a_i)
    for i <= m, and c_i >= 1 for i > m.
    """
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    for i in range(model.m):
        if mono.a * model.exps[i] + mono.c[i] < 1:
            return False
        if mono.b * model.exps[i] + mono.c[i] < 1 + math.floor(lam * model.exps[i]):
            return False
    for i in range(model.m, model.n):
        if mono.c[i] < 1:
            return False
    return True


def regrade(model: LocalHypersurfaceModel, mono: LocalMonomial):
    """Map x^a y^b s^c to (c', k): c'_i = c_i + a*a_i for i <= m, k = a - b.

    Injective on normal forms: a = max(k, 0) and b = max(-k, 0) are
    recoverable, hence c.
    """
    cprime = tuple(
        mono.c[i] + (mono.a * model.exps[i] if i < model.m else 0)
        for i in range(model.n)
    )
    return cprime, mono.a - mono.b


def snc_multiplier_section(model: LocalHypersurfaceModel, cprime, mu) -> bool:
    """Membership in the simple-normal-crossing multiplier condition at
    exponent mu: c'_i >= 1 + floor(mu * a_i) for i <= m and c'_i >= 1
    past m; for mu <= 0 only the canonical-module condition c' >= 1."""
    mu = as_fraction(mu)
    cprime = tuple(int(e) for e in cprime)
    if any(e < 0 for e in cprime):
        raise DomainError("negative exponent")
    if mu <= 0:
        return all(e >= 1 for e in cprime)
    for i in range(model.n):
        need = 1 + math.floor(mu * model.exps[i]) if i < model.m else 1
        if cprime[i] < need:
            return False
    return True


def verify_local_decomposition(
    model: LocalHypersurfaceModel,
    lam,
    box_deg: int = 6,
    box_c: int | None = None,
    k_range=(-4, 4),
) -> VerificationReport:
    """Per t-degree, sections of the hypersurface twist regrade onto
    exactly the SNC multiplier monomials at exponent k + lam.

    Monomials are enumerated in normal form with x, y degrees up to
    box_deg and s-exponents up to box_c.  A compared c' is restricted
    to those reachable from the box (recorded); degrees |k| > box_deg
    have no monomials at all and are reported inconclusive rather than
    silently passing.
    """
    lam = as_fraction(lam)
    if lam < 0:
        raise DomainError("lambda must be nonnegative")
    if box_c is None:
        box_c = max(model.exps) * box_deg + 2
    lo, hi = k_range
    per_k = []
    inconclusive = []
    for k in range(lo, hi + 1):
        if abs(k) > box_deg:
            inconclusive.append(k)
            continue
        a, b = max(k, 0), max(-k, 0)
        lhs = set()
        for c in itertools.product(range(box_c + 1), repeat=model.n):
            mono = LocalMonomial(a, b, c)
            if is_section(model, mono, lam):
                lhs.add(regrade(model, mono)[0])
        reach = [
            range(a * model.exps[i], a * model.exps[i] + box_c + 1)
            if i < model.m
            else range(box_c + 1)
            for i in range(model.n)
        ]
        rhs = set()
        for cprime in itertools.product(*reach):
            if snc_multiplier_section(model, cprime, k + lam):
                rhs.add(cprime)
        equal = lhs == rhs
        witness = min(lhs.symmetric_difference(rhs)) if not equal else None
        per_k.append(PerLevel(k, len(lhs), len(rhs), equal, witness))
    overall = all(p.equal for p in per_k)
    return VerificationReport(
        theorem="local",
        subject={"model": model.to_json()},
        lam=lam,
        k_range=(lo, hi),
        box=((0, box_deg), (0, box_c)),
        per_k=tuple(per_k),
        overall=overall,
        details={"inconclusive": inconclusive, "boxDeg": box_deg, "boxC": box_c},
    )
