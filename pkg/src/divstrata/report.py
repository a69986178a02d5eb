"""Symbolic decomposition reports.

Nothing here computes a stalk dimension.  Every term names its intermediate
extension stalk by an ASCII placeholder and records where it came from:
partition, degrees, shift, twist and multiplicity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .branches import GermSpec, germ_invariants
from .divide import Divide, intersection_form, validate
from .errors import BudgetExceeded, ValidationFailed
from .lattice import DEFAULT_BUDGET
from .partitions import BranchPartition
from .strata import (
    ClassSystem,
    all_stratum_records,
    atomic_classes,
    partition_sum_check,
    stratum_multiplicity,
)

DEFAULT_TERM_BUDGET = 200_000


def _require_valid(germ: GermSpec, d: Divide):
    report = validate(d, germ)
    if not report.passed:
        raise ValidationFailed(f"divide failed validation: {report.summary()}", report)
    return report


def prepare(germ: GermSpec, d: Divide):
    """Validated divide, its form, classes and every stratum record."""
    d = d.with_germ(germ)
    _require_valid(germ, d)
    lat = intersection_form(d)
    cs = atomic_classes(lat, d, germ)
    return lat, cs, all_stratum_records(cs)


@dataclass(frozen=True)
class DecompositionTerm:
    kind: str
    partition: BranchPartition | None
    degree: int
    shift: int
    twist: int
    multiplicity: int
    h: int
    ic_placeholder: str
    lambda_invariant: bool

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "partition": None if self.partition is None else str(self.partition),
            "degree": self.degree,
            "shift": self.shift,
            "twist": self.twist,
            "multiplicity": self.multiplicity,
            "h": self.h,
            "ic_placeholder": self.ic_placeholder,
            "lambda_invariant": self.lambda_invariant,
        }


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    delta: int
    mu: int
    terms: tuple[DecompositionTerm, ...]
    strata: tuple[dict, ...]
    consistency: tuple[dict, ...]

    @property
    def consistent(self) -> bool:
        return all(c["ok"] for c in self.consistency)

    @property
    def main_terms(self):
        return tuple(t for t in self.terms if t.kind == "main")

    @property
    def stratum_terms(self):
        return tuple(t for t in self.terms if t.kind == "stratum")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "mu": self.mu,
            "consistent": self.consistent,
            "terms": [t.as_dict() for t in self.terms],
            "strata": list(self.strata),
            "consistency": list(self.consistency),
        }

    def to_text(self) -> str:
        lines = [f"decomposition mod n={self.n}  delta={self.delta}  mu={self.mu}"]
        lines.append("main terms:")
        for t in self.main_terms:
            lines.append(f"  [-{t.shift}]  {t.ic_placeholder}")
        if self.stratum_terms:
            lines.append("stratum terms:")
        for s in self.strata:
            if s["multiplicity"] == 0:
                continue
            lines.append(f"  partition {s['partition']}  h={s['h']}  multiplicity={s['multiplicity']}")
            for t in self.stratum_terms:
                if str(t.partition) == s["partition"]:
                    lines.append(f"    [-{t.shift}]({t.twist})  {t.ic_placeholder}")
        status = "ok" if self.consistent else "FAILED"
        lines.append(f"partition-sum identity: {status} at {len(self.consistency)} partitions")
        return "\n".join(lines) + "\n"


def multiplicities(records, n: int, budget: int = DEFAULT_BUDGET) -> dict[BranchPartition, int]:
    cache: dict = {}
    return {p: stratum_multiplicity(rec, records, n, budget=budget, cache=cache) for p, rec in records.items()}


def decompose(germ: GermSpec, d: Divide, n: int, budget: int = DEFAULT_BUDGET) -> DecompositionReport:
    inv = germ_invariants(germ)
    _, cs, records = prepare(germ, d)
    mults = multiplicities(records, n, budget)
    delta = inv.delta
    terms = [
        DecompositionTerm("main", None, i, i, 0, 1, 0, f"j!*(R^{i} f_n^sm)", True) for i in range(2 * delta + 1)
    ]
    strata, consistency = [], []
    for p, rec in records.items():
        if p.is_trivial():
            continue
        m = mults[p]
        strata.append(
            {
                "partition": str(p),
                "h": rec.h,
                "h_ordered_pairs": rec.h_ordered,
                "rank": rec.rank,
                "multiplicity": m,
            }
        )
        got, want = partition_sum_check(rec, records, mults, n)
        consistency.append({"partition": str(p), "sum": got, "expected": want, "ok": got == want})
        if m == 0:
            continue
        for ip in range(2 * (delta - rec.h) + 1):
            terms.append(
                DecompositionTerm(
                    "stratum",
                    p,
                    ip,
                    ip + 2 * rec.h,
                    -rec.h,
                    m,
                    rec.h,
                    f"j!*(F^{ip}[{p}])",
                    False,
                )
            )
    return DecompositionReport(n, delta, inv.mu, tuple(terms), tuple(strata), tuple(consistency))


# -- homology limit -----------------------------------------------------------------


def _tuples(bounds, total):
    """All tuples t with 0 <= t_k <= bounds[k] and sum t = total, lexicographic."""
    if not bounds:
        if total == 0:
            yield ()
        return
    head, rest = bounds[0], bounds[1:]
    cap = sum(rest)
    for a in range(max(0, total - cap), min(head, total) + 1):
        for tail in _tuples(rest, total - a):
            yield (a, *tail)


def _count_tuples(bounds, total):
    ways = {0: 1}
    for b in bounds:
        nxt: dict[int, int] = {}
        for s, w in ways.items():
            for a in range(b + 1):
                if s + a <= total:
                    nxt[s + a] = nxt.get(s + a, 0) + w
        ways = nxt
    return ways.get(total, 0)


def sub_germ_numbers(germ: GermSpec, block) -> tuple[int, int]:
    """(delta, mu) of the germ formed by the branches in ``block``."""
    bd = germ_invariants(germ).branch_deltas
    delta = sum(bd[i - 1] for i in block) + sum(germ.C(a, b) for a in block for b in block if a < b)
    return delta, 2 * delta - len(block) + 1


@dataclass(frozen=True)
class HomologyTermLimit:
    kind: str
    degree: int
    partition: BranchPartition | None = None
    i_prime: int | None = None
    i_double: int | None = None
    i_tuple: tuple[int, ...] = ()
    j_tuple: tuple[int, ...] = ()
    twist: int = 0
    h: int = 0
    index_set: dict | None = None
    placeholders: tuple[str, ...] = field(default=())
    lambda_invariant: bool = False

    def as_dict(self) -> dict:
        out = {"kind": self.kind, "degree": self.degree, "twist": self.twist, "placeholders": list(self.placeholders)}
        if self.kind == "main":
            out.update(i_prime=self.i_prime, lambda_invariant=self.lambda_invariant)
        else:
            out.update(
                partition=str(self.partition),
                h=self.h,
                i_double=self.i_double,
                i_tuple=list(self.i_tuple),
                j_tuple=list(self.j_tuple),
                index_set=self.index_set,
            )
        return out


def homology_limit_report(
    germ: GermSpec,
    d: Divide,
    max_degree: int | None = None,
    term_budget: int = DEFAULT_TERM_BUDGET,
) -> list[HomologyTermLimit]:
    """Per homological degree i, the main placeholders for i' = 0..i and, for
    each nontrivial partition with 2h <= i, one entry per block-degree split.

    Block bounds: i_k <= 2 delta_{I_k} (rank of the exterior algebra) and
    j_k <= 2 mu_{I_k}, which bounds the unknown 2 tau_{I_k} from above.
    """
    inv = germ_invariants(germ)
    _, cs, records = prepare(germ, d)
    top = 2 * inv.delta if max_degree is None else min(max_degree, 2 * inv.delta)
    blocks_info = {}
    strata = []
    for p, rec in records.items():
        if p.is_trivial():
            continue
        nums = [sub_germ_numbers(germ, b) for b in p.blocks]
        coarser = [str(s.partition) for s in records.values() if p.strictly_refines(s.partition)]
        blocks_info[p] = (
            [2 * dl for dl, _ in nums],
            [2 * m for _, m in nums],
            {"rank": rec.rank, "subtract_coarsenings": coarser},
        )
        strata.append((p, rec))

    budget_left = term_budget
    out: list[HomologyTermLimit] = []
    for i in range(top + 1):
        for ip in range(i + 1):
            out.append(
                HomologyTermLimit(
                    "main",
                    i,
                    i_prime=ip,
                    placeholders=(f"Im[H^(2tau-{i - ip})_0 j!* L^{ip}(F/Eperp)^v -> L^{ip}F^v]",),
                    lambda_invariant=True,
                )
            )
        budget_left -= i + 1
        for p, rec in strata:
            if 2 * rec.h > i:
                continue
            ib, jb, index_set = blocks_info[p]
            rest = i - 2 * rec.h
            count = sum(_count_tuples(ib, a) * _count_tuples(jb, rest - a) for a in range(rest + 1))
            budget_left -= count
            if budget_left < 0:
                raise BudgetExceeded(
                    f"limit report exceeds {term_budget} terms at degree {i}; lower --max-degree"
                )
            for idd in range(rest + 1):
                for it in _tuples(ib, idd):
                    for jt in _tuples(jb, rest - idd):
                        ph = tuple(
                            f"Im[H^(2tau_{{{','.join(map(str, b))}}}-{jk})_0 j!* L^{ik}(F_I/E_Iperp)^v -> L^{ik}F_I^v]"
                            for b, ik, jk in zip(p.blocks, it, jt)
                        )
                        out.append(
                            HomologyTermLimit(
                                "stratum",
                                i,
                                partition=p,
                                i_double=idd,
                                i_tuple=it,
                                j_tuple=jt,
                                twist=rec.h,
                                h=rec.h,
                                index_set=index_set,
                                placeholders=ph,
                            )
                        )
    return out


def classes_report(cs: ClassSystem) -> dict:
    return {
        "r": cs.r,
        "double_points": list(cs.dp_ids),
        "classes": [c.as_dict(cs.dp_ids) for c in cs.classes],
    }
