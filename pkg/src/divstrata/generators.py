"""Standard divides: generic line arrangements and grids for x^p - y^q.

Arrangements of graphs ``x = f_k(y)`` are handled by a sweep in ``y``: the
left-to-right order of the curves changes by adjacent swaps at crossings, and
each bounded face sits in one gap between consecutive curves, between two
consecutive crossings at that gap.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

from .branches import (
    BranchSpec,
    GermSpec,
    PuiseuxCharacteristic,
    TruncatedSeries,
    parse_polynomial,
)
from .divide import MINUS, PLUS, Divide, DoublePoint, SignedRegion
from .errors import InputError, InvalidExponent


def _wiring_divide(order: list[int], events: list[tuple[int, int]], germ: GermSpec) -> Divide:
    """Divide from an initial left-to-right order and a sorted crossing list."""
    order = list(order)
    g = len(order)
    at_gap: list[list[tuple[int, int]]] = [[] for _ in range(g - 1)]  # (time, dp id)
    dps = []
    for t, (a, b) in enumerate(events):
        pa, pb = order.index(a), order.index(b)
        if abs(pa - pb) != 1:
            raise AssertionError(f"curves {a},{b} cross while not adjacent")
        s = min(pa, pb)
        order[s], order[s + 1] = order[s + 1], order[s]
        dps.append(DoublePoint(t + 1, (a, b)))
        at_gap[s].append((t, t + 1))

    faces = []  # (gap, t_start, t_end, closure)
    for s in range(g - 1):
        for (t0, d0), (t1, d1) in zip(at_gap[s], at_gap[s][1:]):
            closure = {d0, d1}
            for side in (s - 1, s + 1):
                if 0 <= side < g - 1:
                    closure.update(d for t, d in at_gap[side] if t0 < t < t1)
            faces.append((s, t0, t1, frozenset(closure)))

    # the two parity classes of gaps give the two signs; plus is the smaller
    # class, ties going to the class of gap 0
    even = sum(1 for f in faces if f[0] % 2 == 0)
    plus_parity = 0 if even <= len(faces) - even else 1
    regions = []
    for k, (s, t0, t1, closure) in enumerate(faces):
        nbrs = frozenset(
            m + 1
            for m, (s2, u0, u1, _) in enumerate(faces)
            if abs(s2 - s) == 1 and max(t0, u0) < min(t1, u1)
        )
        sign = PLUS if s % 2 == plus_parity else MINUS
        regions.append(SignedRegion(k + 1, sign, closure, nbrs))
    return Divide(tuple(dps), tuple(regions), germ)


def _line_germ(d: int) -> GermSpec:
    branches = tuple(
        BranchSpec(
            k,
            PuiseuxCharacteristic(1),
            (
                TruncatedSeries(((Fraction(1), Fraction(k)),)),
                TruncatedSeries(((Fraction(1), Fraction(1)),)),
            ),
            parse_polynomial(f"x - {k}*y"),
        )
        for k in range(1, d + 1)
    )
    M = tuple(tuple(None if i == j else 1 for j in range(d)) for i in range(d))
    return GermSpec(branches, M)


def generate_line_arrangement_divide(d: int) -> Divide:
    """Divide of an ordinary ``d``-fold point, morsified into ``d`` generic lines.

    Line ``k`` is ``x = k y - k^2``, tangent to the parabola ``4x = y^2``, so
    no three lines meet; lines ``k`` and ``l`` cross at ``(kl, k + l)``.
    """
    if not isinstance(d, int) or d < 2:
        raise InputError(f"need at least 2 lines, got {d!r}")
    pairs = [(k, l) for k in range(1, d + 1) for l in range(k + 1, d + 1)]
    events = sorted(pairs, key=lambda kl: (kl[0] + kl[1], kl[0] * kl[1]))
    # far below every crossing, larger slope means further left
    order = list(range(d, 0, -1))
    return _wiring_divide(order, events, _line_germ(d))


def _chebyshev(n: int, y):
    a, b = 1, y
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2 * y * b - a
    return b


def _grid_germ(p: int, q: int) -> GermSpec:
    g = gcd(p, q)
    if g == 1:
        lo, hi = sorted((p, q))
        x_par = TruncatedSeries(((Fraction(q), Fraction(1)),))
        y_par = TruncatedSeries(((Fraction(p), Fraction(1)),))
        branch = BranchSpec(
            1,
            PuiseuxCharacteristic(lo, (hi,)),
            (x_par, y_par),
            parse_polynomial(f"x^{p} - y^{q}"),
        )
        return GermSpec((branch,), ((None,),))
    c = (p // g) * (q // g)
    branches = tuple(BranchSpec(k, PuiseuxCharacteristic(1)) for k in range(1, g + 1))
    M = tuple(tuple(None if i == j else c for j in range(g)) for i in range(g))
    return GermSpec(branches, M)


def _chebyshev_grid(p: int, q: int, germ: GermSpec) -> Divide:
    """Divide of ``T_p(x) = T_q(y)`` for coprime ``p, q``.

    With ``x = cos(u/p)``, ``y = cos(v/q)`` the curve becomes the lines
    ``u = +-v mod 2 pi``; in units of pi, double points sit at integer points
    ``(a, b)`` with ``a = b mod 2`` and regions at those with ``a != b mod 2``.
    """
    interior = lambda a, b: 1 <= a <= p - 1 and 1 <= b <= q - 1
    cells = [(a, b) for a in range(1, p) for b in range(1, q)]
    dp_ids = {c: k + 1 for k, c in enumerate(c for c in cells if (c[0] - c[1]) % 2 == 0)}
    reg_cells = [c for c in cells if (c[0] - c[1]) % 2 == 1]
    reg_ids = {c: k + 1 for k, c in enumerate(reg_cells)}
    dps = tuple(DoublePoint(k, (1, 1)) for k in dp_ids.values())
    regions = []
    for a, b in reg_cells:
        closure = frozenset(
            dp_ids[c] for c in ((a - 1, b), (a + 1, b), (a, b - 1), (a, b + 1)) if interior(*c)
        )
        nbrs = frozenset(
            reg_ids[c]
            for c in ((a - 1, b - 1), (a - 1, b + 1), (a + 1, b - 1), (a + 1, b + 1))
            if interior(*c)
        )
        # cos(a pi) - cos(b pi) > 0 exactly when a is even and b odd
        sign = PLUS if a % 2 == 0 else MINUS
        regions.append(SignedRegion(reg_ids[(a, b)], sign, closure, nbrs))
    return Divide(dps, tuple(regions), germ)


def _graph_family(g: int, m: int, germ: GermSpec) -> Divide:
    """``g`` curves ``x = k T_m(y) + eps k^2``, each pair crossing ``m`` times."""
    eps = Fraction(1, 2 * g)
    events = []
    for k in range(1, g + 1):
        for l in range(k + 1, g + 1):
            # crossings solve T_m(y) = -eps (k + l), which lies in (-1, 1)
            c = float(-eps * (k + l))
            theta = math.acos(c)
            ys = sorted({math.cos((theta + 2 * math.pi * j) / m) for j in range(m)})
            if len(ys) != m:
                raise AssertionError("crossing heights collided")
            x = -eps * k * l
            events += [((y, x), (k, l)) for y in ys]
    events.sort()
    below = _chebyshev(m, -2)
    order = sorted(range(1, g + 1), key=lambda k: k * below + eps * k * k)
    return _wiring_divide(order, [e for _, e in events], germ)


def generate_grid_divide(p: int, q: int) -> Divide:
    """Divide for the germ ``x^p - y^q``.

    Coprime exponents use the Chebyshev curve ``T_p(x) = T_q(y)``.  When
    ``g = gcd(p, q) > 1`` and one reduced exponent is 1 the germ splits into
    ``g`` smooth branches, morsified as a family of graphs.  The remaining
    cases (several singular branches) are not supported.
    """
    for e in (p, q):
        if not isinstance(e, int) or isinstance(e, bool) or e < 2:
            raise InvalidExponent(f"grid exponents must be integers >= 2, got ({p!r}, {q!r})")
    germ = _grid_germ(p, q)
    g = gcd(p, q)
    if g == 1:
        return _chebyshev_grid(p, q, germ)
    pp, qq = p // g, q // g
    if min(pp, qq) > 1:
        raise InvalidExponent(
            f"x^{p} - y^{q} has {g} singular branches; only grids with a smooth branch family are generated"
        )
    return _graph_family(g, max(pp, qq), germ)
