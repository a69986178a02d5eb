"""Invariant classes c_I, partition strata and their multiplicities mod n.

Classes are stored in double-point coordinates: coefficient ``k`` belongs to
the double point with the k-th smallest id.  ``lattice_vector`` embeds them
in the full cycle lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .branches import GermSpec
from .divide import CycleLattice, Divide
from .errors import (
    BudgetExceeded,
    DivstrataError,
    EnumerationTooLarge,
    InconsistentDivide,
    InputError,
    InvalidModulus,
)
from .lattice import (
    DEFAULT_BUDGET,
    IntMatrix,
    integer_kernel,
    kernel_of_hom_on_subgroup,
    rank as lattice_rank,
    residue_codes,
    residue_image_order,
)
from .partitions import BranchPartition, enumerate_partitions, mobius

SIGN_SEARCH_LIMIT = 2**20


@dataclass(frozen=True)
class InvariantClass:
    subset: frozenset[int]
    coefficients: tuple[int, ...]
    height: int
    height_formula: int | None = None

    @property
    def support(self) -> frozenset[int]:
        """Positions (0-based, double-point order) with nonzero coefficient."""
        return frozenset(k for k, c in enumerate(self.coefficients) if c)

    def lattice_vector(self, lat: CycleLattice, dp_ids: Sequence[int]) -> tuple[int, ...]:
        where = lat.dot_indices()
        v = [0] * lat.rank
        for k, c in enumerate(self.coefficients):
            v[where[dp_ids[k]]] = c
        return tuple(v)

    def as_dict(self, dp_ids: Sequence[int]) -> dict:
        return {
            "subset": sorted(self.subset),
            "coefficients": {str(dp_ids[k]): c for k, c in enumerate(self.coefficients) if c},
            "height": self.height,
        }


@dataclass(frozen=True)
class ClassSystem:
    """The atomic classes c_1..c_r of a divide, with the data they came from."""

    classes: tuple[InvariantClass, ...]
    dp_ids: tuple[int, ...]
    germ: GermSpec | None

    @property
    def r(self) -> int:
        return len(self.classes)

    def __getitem__(self, i: int) -> InvariantClass:
        return self.classes[i - 1]


class _ParityUnion:
    """Union-find tracking eps_a = parity * eps_b."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.par = [1] * n

    def find(self, a):
        if self.parent[a] == a:
            return a, 1
        root, p = self.find(self.parent[a])
        self.parent[a] = root
        self.par[a] *= p
        return root, self.par[a]

    def union(self, a, b, rel) -> bool:
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return pa * pb == rel
        self.parent[rb] = ra
        self.par[rb] = pa * pb * rel
        return True


def atomic_classes(lat: CycleLattice, d: Divide, germ: GermSpec | None = None) -> ClassSystem:
    """Signed classes c_i supported on the double points where branch i meets
    another branch, each in the radical of the form, with opposite signs at
    shared double points.  Unique up to a global sign, fixed by making the
    first nonzero coefficient of c_1 positive."""
    germ = germ if germ is not None else d.germ
    r = germ.r if germ is not None else max((max(p.branches) for p in d.double_points), default=1)
    dps = d.double_points
    dp_ids = tuple(p.id for p in dps)
    mixed = [k for k, p in enumerate(dps) if not p.is_self_crossing]
    var = {k: v for v, k in enumerate(mixed)}
    nv = len(mixed)
    where = lat.dot_indices()
    J = lat.form

    # rows: for each branch i and basis element e, sum over j in J_i of J[e][j] s_ij eps_j = 0
    equations = []
    for i in range(1, r + 1):
        terms_by_row: dict[int, dict[int, int]] = {}
        for k in mixed:
            a, b = dps[k].branches
            if i not in (a, b):
                continue
            s = 1 if i == a else -1
            col = where[dps[k].id]
            for e in range(lat.rank):
                w = J[e, col]
                if w:
                    row = terms_by_row.setdefault(e, {})
                    row[var[k]] = row.get(var[k], 0) + w * s
        for row in terms_by_row.values():
            row = {v: c for v, c in row.items() if c}
            if row:
                equations.append(row)

    uf = _ParityUnion(nv)
    for row in equations:
        if len(row) == 1:
            raise InconsistentDivide("a class would need a zero coefficient at one of its double points")
        if len(row) == 2:
            (a, ca), (b, cb) = sorted(row.items())
            if abs(ca) != abs(cb):
                raise InconsistentDivide("sign constraints cannot be met with coefficients +-1")
            if not uf.union(a, b, -ca * cb // abs(ca * cb)):
                raise InconsistentDivide("opposite-sign constraints contradict each other")

    roots = sorted({uf.find(v)[0] for v in range(nv)})
    if len(roots) > 1 and 2 ** (len(roots) - 1) > SIGN_SEARCH_LIMIT:
        raise BudgetExceeded(f"{len(roots)} independent sign components exceed the search budget")

    def assemble(choice):
        rootsign = dict(zip(roots, choice))
        return [rootsign[uf.find(v)[0]] * uf.find(v)[1] for v in range(nv)]

    solutions = []
    for rest in product((1, -1), repeat=max(len(roots) - 1, 0)):
        eps = assemble((1, *rest)) if roots else []
        if all(sum(c * eps[v] for v, c in row.items()) == 0 for row in equations):
            solutions.append(eps)
    if not solutions:
        raise InconsistentDivide("no sign assignment puts every c_i in the radical")
    if len(solutions) > 1:
        raise InconsistentDivide(
            f"{len(solutions)} sign assignments up to global sign; the divide does not determine the classes"
        )
    eps = solutions[0]

    coeffs = [[0] * len(dps) for _ in range(r)]
    for k in mixed:
        a, b = dps[k].branches
        coeffs[a - 1][k] += eps[var[k]]
        coeffs[b - 1][k] -= eps[var[k]]
    lead = next((c for c in coeffs[0] if c), 1)
    if lead < 0:
        coeffs = [[-c for c in row] for row in coeffs]

    classes = tuple(
        InvariantClass(frozenset({i + 1}), tuple(row), sum(1 for c in row if c)) for i, row in enumerate(coeffs)
    )
    system = ClassSystem(classes, dp_ids, germ)
    _verify(system, lat)
    return system


def _verify(system: ClassSystem, lat: CycleLattice):
    for c in system.classes:
        v = c.lattice_vector(lat, system.dp_ids)
        if any(x for x in lat.form.apply(v)):
            raise InconsistentDivide(f"c_{min(c.subset)} is not in the radical")
    for k in range(len(system.dp_ids)):
        nz = [c.coefficients[k] for c in system.classes if c.coefficients[k]]
        if nz and (len(nz) != 2 or nz[0] != -nz[1]):
            raise InconsistentDivide(f"opposite-sign law fails at double point {system.dp_ids[k]}")
    if any(sum(col) for col in zip(*(c.coefficients for c in system.classes))):
        raise InconsistentDivide("the classes do not sum to zero")


def cross_intersection(germ: GermSpec, A, B) -> int:
    return sum(germ.C(i, j) for i in A for j in B)


def class_sum(cs: ClassSystem, subset) -> InvariantClass:
    I = frozenset(subset)
    if not I <= set(range(1, cs.r + 1)):
        raise InputError(f"subset {sorted(I)} is not inside 1..{cs.r}")
    m = len(cs.dp_ids)
    coeffs = tuple(sum(cs[i].coefficients[k] for i in I) for k in range(m))
    height = sum(1 for c in coeffs if c)
    formula = None
    if cs.germ is not None and cs.germ.is_complete():
        rest = set(range(1, cs.r + 1)) - I
        formula = cross_intersection(cs.germ, I, rest)
        if formula != height:
            raise InconsistentDivide(
                f"c_I for I = {sorted(I)} has {height} nonzero coefficients, expected {formula}"
            )
    return InvariantClass(I, coeffs, height, formula)


@dataclass(frozen=True)
class StratumRecord:
    partition: BranchPartition
    h: int
    h_ordered: int
    support: frozenset[int]
    V_gens: IntMatrix
    rank: int

    def as_dict(self, dp_ids: Sequence[int]) -> dict:
        return {
            "partition": str(self.partition),
            "blocks": self.partition.as_list(),
            "h": self.h,
            "h_ordered_pairs": self.h_ordered,
            "support": sorted(dp_ids[k] for k in self.support),
            "rank": self.rank,
            "V_gens": [list(r) for r in self.V_gens.rows],
        }


def stratum_record(cs: ClassSystem, p: BranchPartition) -> StratumRecord:
    if p.ground != frozenset(range(1, cs.r + 1)):
        raise InputError(f"partition {p} is not a partition of 1..{cs.r}")
    blocks = [class_sum(cs, b) for b in p.blocks]
    support = frozenset().union(*(c.support for c in blocks))
    h = len(support)
    if cs.germ is not None and cs.germ.is_complete():
        formula = sum(
            cross_intersection(cs.germ, p.blocks[a], p.blocks[b])
            for a in range(p.length)
            for b in range(a + 1, p.length)
        )
        if formula != h:
            raise InconsistentDivide(f"stratum {p}: support has {h} points, block pairs give {formula}")
    gens = IntMatrix((c.coefficients for c in blocks), ncols=len(cs.dp_ids))
    rk = lattice_rank(gens) if len(cs.dp_ids) else 0
    return StratumRecord(p, h, 2 * h, support, gens, rk)


def all_stratum_records(cs: ClassSystem) -> dict[BranchPartition, StratumRecord]:
    """Records for every partition, the trivial one included."""
    return {p: stratum_record(cs, p) for p in enumerate_partitions(cs.r, include_trivial=True)}


# -- multiplicities --------------------------------------------------------------


def _coarser(rec: StratumRecord, records) -> list[StratumRecord]:
    return sorted(
        (s for s in records.values() if rec.partition.strictly_refines(s.partition)),
        key=lambda s: (s.partition.length, s.partition.blocks),
    )


def quotient_is_faithful(rec: StratumRecord, n: int) -> bool:
    """Whether V/nV embeds in the ambient residues (image order n^rank)."""
    if rec.V_gens.ncols == 0:
        return True
    return residue_image_order(rec.V_gens, n) == n**rec.rank


def _codes(rec: StratumRecord, n: int, budget: int, cache: dict | None) -> frozenset[int]:
    if cache is None:
        return residue_codes(rec.V_gens, n, budget)
    key = (rec.partition, n)
    if key not in cache:
        cache[key] = residue_codes(rec.V_gens, n, budget)
    return cache[key]


def multiplicity_by_enumeration(
    rec, records, n: int, budget: int = DEFAULT_BUDGET, cache: dict | None = None
) -> int:
    """``cache`` maps (partition, n) to residue codes and may be shared across calls."""
    own = _codes(rec, n, budget, cache)
    covered = {0}
    for s in _coarser(rec, records):
        covered |= _codes(s, n, budget, cache)
    return len(own - covered)


def multiplicity_by_inclusion_exclusion(rec, records, n: int) -> int:
    """Moebius inversion of ``|V/n| = sum over coarsenings of |(V'/n)°|``."""
    up = [rec] + _coarser(rec, records)
    return sum(mobius(rec.partition, s.partition) * n**s.rank for s in up)


def stratum_multiplicity(
    rec: StratumRecord,
    records,
    n: int,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    cache: dict | None = None,
) -> int:
    """``|(V/n)°|``: elements of V/n not in the image of any strict coarsening.

    ``method`` is ``enumerate``, ``inclusion-exclusion`` or ``auto`` (both when
    possible, which must agree).  Inclusion-exclusion is only trusted when
    every group involved embeds faithfully in the residues.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {n!r}")
    if rec.partition.is_trivial():
        return 1
    ie_ok = all(quotient_is_faithful(s, n) for s in [rec] + _coarser(rec, records))
    if method == "inclusion-exclusion":
        if not ie_ok:
            raise DivstrataError(f"inclusion-exclusion not valid for {rec.partition} mod {n}")
        return multiplicity_by_inclusion_exclusion(rec, records, n)
    if method == "enumerate":
        return multiplicity_by_enumeration(rec, records, n, budget, cache)
    if method != "auto":
        raise InputError(f"unknown method {method!r}")
    ie = multiplicity_by_inclusion_exclusion(rec, records, n) if ie_ok else None
    try:
        en = multiplicity_by_enumeration(rec, records, n, budget, cache)
    except EnumerationTooLarge:
        if ie is None:
            raise BudgetExceeded(
                f"stratum {rec.partition} mod {n}: enumeration over budget and inclusion-exclusion not applicable"
            ) from None
        return ie
    if ie is not None and ie != en:
        raise DivstrataError(f"stratum {rec.partition} mod {n}: enumeration {en} != inclusion-exclusion {ie}")
    return en


def partition_sum_check(rec, records, mults: dict, n: int) -> tuple[int, int]:
    """(sum of multiplicities over coarsenings incl. self and trivial, n^rank)."""
    total = mults[rec.partition] + sum(mults[s.partition] for s in _coarser(rec, records))
    return total, n**rec.rank


def curve_component_count(rec: StratumRecord, n: int) -> int:
    """Irreducible components of a fiber over the open stratum: |V/nV|."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    return n**rec.rank


def covering_component_count(T_gens, phi, n: int) -> int:
    return kernel_of_hom_on_subgroup(T_gens, phi, n)[0]


def spectral_torus_generators(r: int) -> IntMatrix:
    """Generators e_i - e_{i+1} of the diagonal-quotient torus in (Z/n)^r."""
    if r < 1:
        raise InputError("r must be positive")
    return IntMatrix(([int(k == i) - int(k == i + 1) for k in range(r)] for i in range(r - 1)), ncols=r)


def radical_from_classes(cs: ClassSystem, lat: CycleLattice) -> IntMatrix:
    """Saturation of the span of the c_i inside the cycle lattice."""
    vecs = IntMatrix((c.lattice_vector(lat, cs.dp_ids) for c in cs.classes), ncols=lat.rank)
    # the saturation of a row lattice L is the kernel of the kernel
    return integer_kernel(integer_kernel(vecs))

