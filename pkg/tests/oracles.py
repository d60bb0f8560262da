"""Independent oracles for the test suite.

Deliberately structured differently from the library: membership in
conv(points) + orthant is decided through dominance by small point
subsets (a point lies in the sum iff some convex combination of at most
rank points of the generating set is componentwise below it, obtained
by pushing any dominated point down to a boundary face), with exact
one- and two-parameter interval elimination.  Interior membership is a
strict rational comparison with no floor arithmetic anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def _pair_dominates(p, q, x) -> bool:
    """Some t in [0,1] with t*p + (1-t)*q <= x componentwise."""
    lo, hi = Fraction(0), Fraction(1)
    for pi, qi, xi in zip(p, q, x):
        a = Fraction(pi - qi)  # a*t <= xi - qi
        b = Fraction(xi) - qi
        if a > 0:
            hi = min(hi, b / a)
        elif a < 0:
            lo = max(lo, b / a)
        elif b < 0:
            return False
    return lo <= hi


def _triple_dominates(p, q, r, x) -> bool:
    """Some s, t >= 0 with s + t <= 1 and s*p + t*q + (1-s-t)*r <= x.

    Exact: eliminate t against every (lower, upper) bound pair, leaving
    a rational interval for s.
    """
    # rows a*s + b*t <= c
    rows = [
        (Fraction(pi - ri), Fraction(qi - ri), Fraction(xi) - ri)
        for pi, qi, ri, xi in zip(p, q, r, x)
    ]
    rows.append((Fraction(1), Fraction(1), Fraction(1)))   # s + t <= 1
    rows.append((Fraction(0), Fraction(-1), Fraction(0)))  # t >= 0
    s_lo, s_hi = Fraction(0), Fraction(1)
    uppers = [(a, b, c) for a, b, c in rows if b > 0]
    lowers = [(a, b, c) for a, b, c in rows if b < 0]
    for a, b, c in rows:
        if b == 0:
            if a > 0:
                s_hi = min(s_hi, c / a)
            elif a < 0:
                s_lo = max(s_lo, c / a)
            elif c < 0:
                return False
    for al, bl, cl in lowers:
        for au, bu, cu in uppers:
            # (cl - al*s)/bl <= (cu - au*s)/bu, bl < 0 < bu
            alpha = bl * au - bu * al
            beta = bl * cu - bu * cl
            if alpha > 0:
                s_lo = max(s_lo, beta / alpha)
            elif alpha < 0:
                s_hi = min(s_hi, beta / alpha)
            elif beta > 0:
                return False
    return s_lo <= s_hi


def in_hull_plus_orthant(x, points) -> bool:
    """x in conv(points) + R^n_{>=0}, exact, for rank <= 3.

    If some y in conv(points) is dominated by x, pushing y straight down
    lands on a boundary face of dimension < rank, so subsets of at most
    rank points suffice (singletons and pairs at rank 2, plus triples at
    rank 3).
    """
    rank = len(x)
    assert rank <= 3, "oracle only supports rank <= 3"
    for p in points:
        if all(Fraction(xi) >= pi for xi, pi in zip(x, p)):
            return True
    for p, q in itertools.combinations(points, 2):
        if _pair_dominates(p, q, x):
            return True
    if rank >= 3:
        for p, q, r in itertools.combinations(points, 3):
            if _triple_dominates(p, q, r, x):
                return True
    return False


def strict_interior_points(facets, box):
    """Integer box points with every facet inequality strict, compared
    with exact rationals (no floor arithmetic anywhere)."""
    out = []
    for m in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if all(
            sum(w * e for w, e in zip(normal, m)) > threshold
            for normal, threshold in facets
        ):
            out.append(m)
    return out


def box_points_satisfying(facets, box):
    """Integer box points satisfying every (normal, threshold) weakly."""
    out = []
    for m in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        if all(
            sum(w * e for w, e in zip(normal, m)) >= threshold
            for normal, threshold in facets
        ):
            out.append(m)
    return out
