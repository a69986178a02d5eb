"""Brute-force reference implementations, deliberately independent of the
package's algorithms (no Smith/Hermite forms, no recursion formulas)."""
from __future__ import annotations

from functools import reduce
from itertools import combinations, product
from math import gcd, prod


def det(M):
    """Laplace expansion; fine for the tiny matrices used here."""
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum(
        (-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
        for j in range(n)
        if M[0][j]
    )


def determinantal_divisors(A):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    m, n = len(A), len(A[0]) if A else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det([[A[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def invariant_factors(A):
    divs = determinantal_divisors(A)
    facts, prev = [], 1
    for d in divs:
        if d == 0:
            facts.append(0)
        else:
            facts.append(d // prev)
            prev = d
    return facts


def span_mod(gens, n, m=None):
    """All residues sum a_k g_k mod n by running over every coefficient tuple."""
    if not gens:
        return {tuple([0] * (m or 0))}
    m = len(gens[0])
    out = set()
    for coeffs in product(range(n), repeat=len(gens)):
        out.add(tuple(sum(c * g[j] for c, g in zip(coeffs, gens)) % n for j in range(m)))
    return out


def rank_q(rows):
    """Rank over Q by fraction-free elimination."""
    from fractions import Fraction

    M = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rk < len(M) and col < ncols:
        piv = next((i for i in range(rk, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][col] != 0:
                f = M[i][col] / M[rk][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        rk += 1
        col += 1
    return rk


def semigroup_gap_delta(generators):
    """Number of gaps of the numerical semigroup, found by marching until
    min(generators) consecutive members appear."""
    gens = sorted(generators)
    if gens[0] == 1:
        return 0
    member = [True]
    run, x = 0, 0
    while run < gens[0]:
        x += 1
        ok = any(x >= g and member[x - g] for g in gens)
        member.append(ok)
        run = run + 1 if ok else 0
    return member.count(False)


def milnor_formula_delta(beta0, betas):
    """Half of sum (beta_q - 1)(e_{q-1} - e_q): the branch conductor."""
    e, total = beta0, 0
    for b in betas:
        e2 = gcd(e, b)
        total += (b - 1) * (e - e2)
        e = e2
    return total // 2


def all_characteristics(max_beta0=6, max_conductor=200):
    """Every valid characteristic with beta0 <= max_beta0 and conductor bounded."""
    out = [(1, ())]
    for b0 in range(2, max_beta0 + 1):
        def rec(prefix, e, last, partial):
            if e == 1:
                out.append((b0, tuple(prefix)))
                return
            for b in range(last + 1, max_conductor + 2):
                e2 = gcd(e, b)
                if e2 == e:
                    continue
                # each new exponent raises the conductor by at least (b - 1)(e - e2)
                if partial + (b - 1) * (e - e2) > max_conductor:
                    break
                rec(prefix + [b], e2, b, partial + (b - 1) * (e - e2))
        rec([], b0, b0, 0)
    return out


def closed_form_multiplicity(n, length):
    """(n-1)(n-2)...(n-l+1).

    When the l block classes satisfy only the relation sum = 0, V/n is
    (Z/n)^l modulo the diagonal, and an element lies in a coarser subgroup
    exactly when two coordinates agree.  Tuples with distinct coordinates
    number n(n-1)...(n-l+1); dividing by the n diagonal shifts gives this.
    """
    return prod(n - k for k in range(1, length))


def brute_multiplicities(stratum_gens, coarsenings, n):
    """(V/n)° sizes from explicit residue sets.

    ``stratum_gens``: partition -> list of generator rows.
    ``coarsenings``: partition -> list of strictly coarser partitions.
    """
    sets = {p: span_mod(g, n) for p, g in stratum_gens.items()}
    zero = next(iter(sets.values()))
    zero = {tuple(0 for _ in next(iter(zero)))}
    out = {}
    for p, s in sets.items():
        covered = set(zero)
        for q in coarsenings[p]:
            covered |= sets[q]
        out[p] = len(s - covered)
    return out


def subgroup_elements(gens, n, m):
    return span_mod([list(g) for g in gens], n, m)


def kernel_image_brute(T_gens, phi, n, m):
    T = subgroup_elements(T_gens, n, m)
    image = {tuple(sum(a * b for a, b in zip(row, t)) % n for row in phi) for t in T}
    kernel = [t for t in T if all(sum(a * b for a, b in zip(row, t)) % n == 0 for row in phi)]
    return len(kernel), len(image), len(T)


def lcm(*xs):
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)
