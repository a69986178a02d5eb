"""Picard-Lefschetz transvections, the radical of the form, and the
symplectic quotient on which the monodromy acts faithfully enough to study."""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .divide import CycleLattice
from .errors import InputError, InvalidIndex, NotApplicable
from .lattice import IntMatrix, integer_kernel, inverse_unimodular, smith_normal_form

SIGNS = {"plus": 1, "minus": -1}


@dataclass(frozen=True)
class Transvection:
    cycle_index: int
    sign_convention: str
    matrix: IntMatrix


def _sign(sign: str) -> int:
    if sign not in SIGNS:
        raise InputError(f"sign convention must be 'plus' or 'minus', got {sign!r}")
    return SIGNS[sign]


def transvection_matrix(lat: CycleLattice, i: int, shear: int) -> IntMatrix:
    """Matrix of ``a -> a + shear <a, d_i> d_i`` on column coordinates."""
    n = lat.rank
    M = IntMatrix.identity(n).tolist()
    for k in range(n):
        M[i][k] += shear * lat.form[k, i]
    return IntMatrix(M, ncols=n)


def picard_lefschetz(lat: CycleLattice, i: int, sign: str = "plus") -> Transvection:
    if not isinstance(i, int) or not 0 <= i < lat.rank:
        raise InvalidIndex(f"basis index {i!r} out of range 0..{lat.rank - 1}")
    return Transvection(i, sign, transvection_matrix(lat, i, _sign(sign)))


def all_generators(lat: CycleLattice, sign: str = "plus") -> list[Transvection]:
    return [picard_lefschetz(lat, i, sign) for i in range(lat.rank)]


def radical(lat: CycleLattice) -> IntMatrix:
    """Saturated basis (rows) of ``{a : <a, d_j> = 0 for all j}``."""
    return integer_kernel(lat.form)


@dataclass(frozen=True)
class SymplecticQuotient:
    radical_basis: IntMatrix
    quotient_rank: int
    induced_form: IntMatrix
    induced_generators: tuple[IntMatrix, ...]
    change_of_basis: IntMatrix  # columns: radical basis first, then a complement
    sign_convention: str = "plus"

    def pfaffian_squared(self) -> int:
        return self.induced_form.det() if self.quotient_rank else 1

    def is_nondegenerate(self) -> bool:
        d = self.pfaffian_squared()
        return d > 0 and isqrt(d) ** 2 == d


def symplectic_quotient(lat: CycleLattice, sign: str = "plus") -> SymplecticQuotient:
    R = radical(lat)
    k, n = R.nrows, lat.rank
    if k:
        # U R^T V = [I; 0] for a saturated R, so U^-1 has R's span in its first k columns
        s = smith_normal_form(R.T)
        P, Pinv = inverse_unimodular(s.U), s.U
    else:
        P = Pinv = IntMatrix.identity(n)
    tail = list(range(k, n))
    form = (P.T @ lat.form @ P).submatrix(tail, tail)
    gens = tuple((Pinv @ t.matrix @ P).submatrix(tail, tail) for t in all_generators(lat, sign))
    return SymplecticQuotient(R, n - k, form, gens, P, sign)


# -- linear algebra over F_p ------------------------------------------------------


def _reduce(vec, basis, p):
    """Reduce ``vec`` against an echelon basis given as {pivot: row}."""
    v = [x % p for x in vec]
    for piv, row in basis.items():
        if v[piv]:
            f = v[piv]
            v = [(a - f * b) % p for a, b in zip(v, row)]
    return v


def _insert(vec, basis, p) -> bool:
    v = _reduce(vec, basis, p)
    piv = next((j for j, x in enumerate(v) if x), None)
    if piv is None:
        return False
    inv = pow(v[piv], -1, p)
    v = [(x * inv) % p for x in v]
    for q, row in list(basis.items()):
        if row[piv]:
            f = row[piv]
            basis[q] = [(a - f * b) % p for a, b in zip(row, v)]
    basis[piv] = v
    return True


def rank_mod_p(M: IntMatrix, p: int) -> int:
    basis: dict = {}
    for r in M.rows:
        _insert(r, basis, p)
    return len(basis)


def nullspace_mod_p(M: IntMatrix, p: int) -> list[list[int]]:
    """Basis of ``{x : M x = 0}`` over F_p."""
    n = M.ncols
    basis: dict = {}
    for r in M.rows:
        _insert(r, basis, p)
    free = [j for j in range(n) if j not in basis]
    out = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for piv, row in basis.items():
            x[piv] = (-row[f]) % p
        out.append(x)
    return out


def spin(vectors, gens: list[IntMatrix], p: int) -> int:
    """Dimension of the smallest subspace containing ``vectors`` and stable
    under ``gens``, over F_p.  Deterministic breadth-first closure."""
    basis: dict = {}
    queue = []
    for v in vectors:
        if _insert(v, basis, p):
            queue.append([x % p for x in v])
    while queue:
        v = queue.pop(0)
        for g in gens:
            w = [x % p for x in g.apply(v)]
            if _insert(w, basis, p):
                queue.append(w)
    return len(basis)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, isqrt(p) + 1))


@dataclass(frozen=True)
class PrimeEvidence:
    prime: int
    irreducible: bool
    criterion_rigorous: bool
    all_transvections: bool
    form_preserved: bool
    common_fixed_dim: int
    spin_dims: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "prime": self.prime,
            "irreducible": self.irreducible,
            "criterion_rigorous": self.criterion_rigorous,
            "all_generators_transvections": self.all_transvections,
            "form_preserved": self.form_preserved,
            "common_fixed_dim": self.common_fixed_dim,
            "spin_dims": list(self.spin_dims),
        }


@dataclass(frozen=True)
class SpEvidence:
    quotient_rank: int
    generators_used: tuple[int, ...]
    per_prime: tuple[PrimeEvidence, ...]

    def as_dict(self) -> dict:
        return {
            "quotient_rank": self.quotient_rank,
            "generators_used": list(self.generators_used),
            "per_prime": [e.as_dict() for e in self.per_prime],
            "claims": "checkable facts mod p only; Zariski density is not decided",
        }


def sp_fullness_evidence(sq: SymplecticQuotient, primes, generators=None) -> SpEvidence:
    """Irreducibility, transvection shape and form preservation mod each prime.

    For a group generated by transvections ``x -> x + c w(x, v) v``, a nonzero
    invariant subspace either contains some ``v`` (hence its orbit span) or
    lies in every fixed hyperplane.  So the group is irreducible iff the
    common fixed space is zero and each ``v`` spins to the whole space.
    """
    m = sq.quotient_rank
    if m < 2:
        raise NotApplicable(f"quotient of rank {m} has no symplectic group to test")
    idx = tuple(range(len(sq.induced_generators))) if generators is None else tuple(generators)
    for i in idx:
        if not 0 <= i < len(sq.induced_generators):
            raise InvalidIndex(f"generator index {i} out of range")
    gens = [sq.induced_generators[i] for i in idx]
    I = IntMatrix.identity(m)
    out = []
    for p in primes:
        if not isinstance(p, int) or p < 3 or not _is_prime(p):
            raise InputError(f"primes must be odd primes, got {p!r}")
        preserved = all((g.T @ sq.induced_form @ g - sq.induced_form).mod(p).is_zero() for g in gens)
        shears = [(g - I).mod(p) for g in gens]
        ranks = [rank_mod_p(s, p) for s in shears]
        transv = all(
            r == 1 and (s @ s).mod(p).is_zero() for r, s in zip(ranks, shears)
        )
        stacked = IntMatrix([row for s in shears for row in s.rows], ncols=m) if shears else IntMatrix((), ncols=m)
        fixed = len(nullspace_mod_p(stacked, p)) if shears else m
        active = [s for s, r in zip(shears, ranks) if r]
        spins = []
        for s in active:
            image = [list(row) for row in s.T.rows]  # columns of s span its image
            spins.append(spin(image, gens, p))
        irreducible = fixed == 0 and bool(active) and all(d == m for d in spins)
        out.append(
            PrimeEvidence(
                prime=p,
                irreducible=irreducible,
                criterion_rigorous=transv,
                all_transvections=transv,
                form_preserved=preserved,
                common_fixed_dim=fixed,
                spin_dims=tuple(spins),
            )
        )
    return SpEvidence(m, idx, tuple(out))
