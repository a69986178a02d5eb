"""Divides: double points and signed regions of a real morsification.

A divide carries no geometry, only incidences: which branches meet at each
double point, which double points lie on the closure of each region, and
which regions of opposite sign share a boundary segment.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable

import networkx as nx

from .branches import GermSpec, germ_invariants
from .errors import InputError, ValidationFailed
from .lattice import IntMatrix

PLUS, MINUS = "plus", "minus"
SYMBOLS = {"plus": "⊕", "dot": "•", "minus": "⊖"}
DOT_SHAPES = {"plus": "doublecircle", "dot": "circle", "minus": "diamond"}


@dataclass(frozen=True)
class DoublePoint:
    id: int
    branches: tuple[int, int]

    def __post_init__(self):
        i, j = self.branches
        object.__setattr__(self, "branches", (min(i, j), max(i, j)))

    @property
    def is_self_crossing(self) -> bool:
        return self.branches[0] == self.branches[1]


@dataclass(frozen=True)
class SignedRegion:
    id: int
    sign: str
    closure_double_points: frozenset[int]
    segment_neighbors: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.sign not in (PLUS, MINUS):
            raise InputError(f"region {self.id}: sign must be 'plus' or 'minus'")
        object.__setattr__(self, "closure_double_points", frozenset(self.closure_double_points))
        object.__setattr__(self, "segment_neighbors", frozenset(self.segment_neighbors))


@dataclass(frozen=True)
class Divide:
    double_points: tuple[DoublePoint, ...]
    regions: tuple[SignedRegion, ...]
    germ: GermSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "double_points", tuple(sorted(self.double_points, key=lambda d: d.id)))
        object.__setattr__(self, "regions", tuple(sorted(self.regions, key=lambda r: r.id)))

    def with_germ(self, germ: GermSpec | None) -> "Divide":
        return replace(self, germ=germ)

    @property
    def plus_regions(self) -> tuple[SignedRegion, ...]:
        return tuple(r for r in self.regions if r.sign == PLUS)

    @property
    def minus_regions(self) -> tuple[SignedRegion, ...]:
        return tuple(r for r in self.regions if r.sign == MINUS)

    @property
    def mu_plus(self) -> int:
        return len(self.plus_regions)

    @property
    def mu_zero(self) -> int:
        return len(self.double_points)

    @property
    def mu_minus(self) -> int:
        return len(self.minus_regions)

    @property
    def mu(self) -> int:
        return self.mu_plus + self.mu_zero + self.mu_minus

    def counts(self) -> dict:
        return {"mu_plus": self.mu_plus, "mu_zero": self.mu_zero, "mu_minus": self.mu_minus, "mu": self.mu}

    def without_region(self, region_id: int) -> "Divide":
        keep = tuple(
            replace(r, segment_neighbors=r.segment_neighbors - {region_id})
            for r in self.regions
            if r.id != region_id
        )
        return replace(self, regions=keep)

    def to_json(self) -> dict:
        return {
            "double_points": [{"id": d.id, "branches": list(d.branches)} for d in self.double_points],
            "regions": [
                {
                    "id": r.id,
                    "sign": r.sign,
                    "closure_double_points": sorted(r.closure_double_points),
                    "segment_neighbors": sorted(r.segment_neighbors),
                }
                for r in self.regions
            ],
        }


# -- validation ---------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    counts: dict

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "counts": self.counts,
            "checks": [c.as_dict() for c in self.checks],
        }

    def summary(self) -> str:
        if self.passed:
            return f"divide valid ({len(self.checks)} checks)"
        return "; ".join(f"{c.name}: expected {c.expected}, got {c.actual}" for c in self.failures)


def _structural_checks(d: Divide, r: int | None) -> list[Check]:
    checks = []
    dp_ids = [p.id for p in d.double_points]
    reg_ids = [g.id for g in d.regions]
    checks.append(Check("unique double point ids", len(dp_ids), len(set(dp_ids))))
    checks.append(Check("unique region ids", len(reg_ids), len(set(reg_ids))))
    if r is not None:
        bad = sorted(p.id for p in d.double_points if not (1 <= p.branches[0] <= p.branches[1] <= r))
        checks.append(Check("double points on valid branches", [], bad))
    known = set(dp_ids)
    bad = sorted(g.id for g in d.regions if not g.closure_double_points <= known)
    checks.append(Check("closures reference known double points", [], bad))
    by_id = {g.id: g for g in d.regions}
    asym, same_sign = [], []
    for g in d.regions:
        for nb in sorted(g.segment_neighbors):
            other = by_id.get(nb)
            if other is None or g.id not in other.segment_neighbors:
                asym.append([g.id, nb])
            elif other.sign == g.sign:
                same_sign.append([g.id, nb])
    checks.append(Check("segment neighbors symmetric", [], asym))
    checks.append(Check("segment neighbors have opposite signs", [], same_sign))
    return checks


def validate(d: Divide, germ: GermSpec | None = None) -> ValidationReport:
    """Check the divide against its germ; never raises on a bad divide."""
    germ = germ if germ is not None else d.germ
    r = germ.r if germ is not None else None
    checks = _structural_checks(d, r)
    if germ is not None:
        inv = germ_invariants(germ)
        checks.append(Check("mu_zero = delta", inv.delta, d.mu_zero))
        checks.append(Check("mu_plus + mu_zero + mu_minus = mu", inv.mu, d.mu))
        pair_counts: dict[tuple[int, int], int] = {}
        for p in d.double_points:
            pair_counts[p.branches] = pair_counts.get(p.branches, 0) + 1
        for i in range(1, r + 1):
            checks.append(
                Check(f"self-crossings of branch {i} = delta_{i}", inv.branch_deltas[i - 1], pair_counts.get((i, i), 0))
            )
            for j in range(i + 1, r + 1):
                checks.append(
                    Check(f"double points shared by branches {i},{j} = C_{i}{j}", germ.C(i, j), pair_counts.get((i, j), 0))
                )
    return ValidationReport(tuple(checks), d.counts())


# -- intersection form --------------------------------------------------------------


@dataclass(frozen=True)
class BasisElement:
    kind: str  # "plus" | "dot" | "minus"
    id: int

    @property
    def label(self) -> str:
        return {"plus": "p", "dot": "d", "minus": "m"}[self.kind] + str(self.id)

    @property
    def symbol(self) -> str:
        return SYMBOLS[self.kind]


@dataclass(frozen=True)
class CycleLattice:
    basis: tuple[BasisElement, ...]
    form: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.basis)

    def index(self, kind: str, id: int) -> int:
        return self.basis.index(BasisElement(kind, id))

    def dot_indices(self) -> dict[int, int]:
        """Double point id -> basis position."""
        return {b.id: k for k, b in enumerate(self.basis) if b.kind == "dot"}

    def pairing(self, u, v) -> int:
        return sum(u[i] * self.form[i, j] * v[j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j])


def intersection_form(d: Divide, check: bool = True) -> CycleLattice:
    """Skew form on the distinguished basis (plus regions, double points,
    minus regions), with +1 on (plus, dot), (dot, minus) and (plus, minus)
    incidences and -1 on their transposes."""
    if check:
        report = validate(d)
        if not report.passed:
            raise ValidationFailed(f"divide failed validation: {report.summary()}", report)
    basis = (
        [BasisElement("plus", g.id) for g in d.plus_regions]
        + [BasisElement("dot", p.id) for p in d.double_points]
        + [BasisElement("minus", g.id) for g in d.minus_regions]
    )
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    J = [[0] * n for _ in range(n)]

    def put(a, b):
        J[pos[a]][pos[b]] = 1
        J[pos[b]][pos[a]] = -1

    for g in d.regions:
        me = BasisElement(g.sign, g.id)
        for dp in g.closure_double_points:
            dot = BasisElement("dot", dp)
            put(me, dot) if g.sign == PLUS else put(dot, me)
        if g.sign == PLUS:
            for nb in g.segment_neighbors:
                put(me, BasisElement(MINUS, nb))
    return CycleLattice(tuple(basis), IntMatrix(J, ncols=n))


# -- Dynkin diagrams ------------------------------------------------------------------


def dynkin_graph(lat: CycleLattice) -> nx.Graph:
    G = nx.Graph()
    for b in lat.basis:
        G.add_node(b.label, kind=b.kind, symbol=b.symbol)
    for i in range(lat.rank):
        for j in range(i + 1, lat.rank):
            w = lat.form[i, j]
            if w:
                G.add_edge(lat.basis[i].label, lat.basis[j].label, weight=w)
    return G


def same_dynkin(G: nx.Graph, H: nx.Graph) -> bool:
    """Isomorphism respecting the vertex kinds."""
    return nx.is_isomorphic(G, H, node_match=lambda a, b: a["kind"] == b["kind"])


def dynkin_to_dot(lat: CycleLattice) -> str:
    G = dynkin_graph(lat)
    lines = ["graph dynkin {"]
    for b in lat.basis:
        lines.append(f'  {b.label} [shape={DOT_SHAPES[b.kind]}, label="{b.label}"];')
    order = {b.label: k for k, b in enumerate(lat.basis)}
    edges = sorted((tuple(sorted((u, v), key=order.get)) for u, v in G.edges), key=lambda e: (order[e[0]], order[e[1]]))
    for u, v in edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dynkin_to_json(lat: CycleLattice) -> dict:
    order = {b.label: k for k, b in enumerate(lat.basis)}
    edges = []
    for i in range(lat.rank):
        for j in range(i + 1, lat.rank):
            if lat.form[i, j]:
                edges.append([lat.basis[i].label, lat.basis[j].label, lat.form[i, j]])
    return {
        "vertices": [{"id": b.label, "kind": b.kind} for b in lat.basis],
        "edges": sorted(edges, key=lambda e: (order[e[0]], order[e[1]])),
    }


# -- JSON input -----------------------------------------------------------------------


def divide_from_json(data: dict, germ: GermSpec | None = None) -> Divide:
    try:
        dps = tuple(DoublePoint(int(p["id"]), tuple(int(b) for b in p["branches"])) for p in data["double_points"])
        regs = tuple(
            SignedRegion(
                int(g["id"]),
                g["sign"],
                frozenset(int(x) for x in g.get("closure_double_points", [])),
                frozenset(int(x) for x in g.get("segment_neighbors", [])),
            )
            for g in data.get("regions", [])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed divide: {exc!r}") from None
    if any(len(p.branches) != 2 for p in dps):
        raise InputError("each double point needs exactly two branch ids")
    return Divide(dps, regs, germ)


def load_divide(path, germ: GermSpec | None = None) -> Divide:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read divide file {path}: {exc}") from None
    return divide_from_json(data, germ)


def relabel(d: Divide, dp_order: Iterable[int]) -> Divide:
    """Renumber double points 1..k in the given order of old ids."""
    mapping = {old: new for new, old in enumerate(dp_order, start=1)}
    dps = tuple(DoublePoint(mapping[p.id], p.branches) for p in d.double_points)
    regs = tuple(
        replace(g, closure_double_points=frozenset(mapping[x] for x in g.closure_double_points))
        for g in d.regions
    )
    return Divide(dps, regs, d.germ)
