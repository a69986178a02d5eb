"""Branches of a plane curve germ and the numerical invariants built from them."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from .errors import IncompleteGerm, InputError, InvalidCharacteristic, NeedsMoreTerms
from .lattice import lcm

Poly = Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class PuiseuxCharacteristic:
    beta0: int
    betas: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(int(b) for b in self.betas))
        b0 = self.beta0
        if not isinstance(b0, int) or b0 < 1:
            raise InvalidCharacteristic(f"beta0 must be a positive integer, got {b0!r}")
        prev, e = b0, b0
        for b in self.betas:
            if b <= prev:
                raise InvalidCharacteristic(
                    f"characteristic exponents must increase past beta0: {self.as_list()}"
                )
            nxt = gcd(e, b)
            if nxt == e:
                raise InvalidCharacteristic(
                    f"exponent {b} does not lower the gcd chain in {self.as_list()}"
                )
            prev, e = b, nxt
        if e != 1:
            raise InvalidCharacteristic(f"gcd chain of {self.as_list()} ends at {e}, not 1")

    @classmethod
    def from_list(cls, data: Sequence[int]) -> "PuiseuxCharacteristic":
        if not data:
            raise InvalidCharacteristic("empty characteristic")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in data):
            raise InvalidCharacteristic(f"characteristic must be integers: {data!r}")
        return cls(data[0], tuple(data[1:]))

    def as_list(self) -> list[int]:
        return [self.beta0, *self.betas]

    def gcd_chain(self) -> tuple[int, ...]:
        chain = [self.beta0]
        for b in self.betas:
            chain.append(gcd(chain[-1], b))
        return tuple(chain)


def semigroup_and_delta(ch: PuiseuxCharacteristic) -> tuple[tuple[int, ...], int]:
    """Minimal generators of the value semigroup and the delta invariant."""
    e = ch.gcd_chain()
    nq = [e[q - 1] // e[q] for q in range(1, len(e))]
    bars = [ch.beta0]
    if ch.betas:
        bars.append(ch.betas[0])
    for q in range(1, len(ch.betas)):
        bars.append(nq[q - 1] * bars[q] + ch.betas[q] - ch.betas[q - 1])
    conductor = sum((nq[q - 1] - 1) * bars[q] for q in range(1, len(bars))) - ch.beta0 + 1
    return tuple(bars), conductor // 2


def conductor(ch: PuiseuxCharacteristic) -> int:
    return 2 * semigroup_and_delta(ch)[1]


# -- truncated series ---------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """``sum c t^e`` known exactly below ``truncation_order`` (None = exact)."""

    terms: tuple[tuple[Fraction, Fraction], ...] = ()
    truncation_order: Fraction | None = None

    def __post_init__(self):
        terms = tuple((Fraction(e), Fraction(c)) for e, c in self.terms if c != 0)
        exps = [e for e, _ in terms]
        if any(e < 0 for e in exps):
            raise InputError("series exponents must be nonnegative")
        if any(a >= b for a, b in zip(exps, exps[1:])):
            raise InputError("series exponents must be strictly increasing")
        prec = None if self.truncation_order is None else Fraction(self.truncation_order)
        if prec is not None and exps and exps[-1] >= prec:
            raise InputError("series has a term at or above its truncation order")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "truncation_order", prec)

    @classmethod
    def from_json(cls, data, truncation=None) -> "TruncatedSeries":
        try:
            terms = sorted(
                (Fraction(en, ed), Fraction(num, den)) for num, den, en, ed in data
            )
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad series term list {data!r}: {exc}") from None
        prec = None if truncation is None else Fraction(*truncation)
        return cls(tuple(terms), prec)

    def to_json(self) -> list[list[int]]:
        return [
            [c.numerator, c.denominator, e.numerator, e.denominator] for e, c in self.terms
        ]

    @property
    def order(self) -> Fraction | None:
        return self.terms[0][0] if self.terms else None

    def denominators(self) -> list[int]:
        return [e.denominator for e, _ in self.terms]


class _Series:
    """Working representation: dict of exponent -> coeff plus precision."""

    __slots__ = ("c", "prec")

    def __init__(self, c, prec):
        self.c = {e: v for e, v in c.items() if v != 0 and (prec is None or e < prec)}
        self.prec = prec

    @classmethod
    def const(cls, k):
        return cls({Fraction(0): Fraction(k)}, None)

    def order(self):
        return min(self.c) if self.c else None

    def __add__(self, other):
        prec = _pmin(self.prec, other.prec)
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return _Series(out, prec)

    def __mul__(self, other):
        # (A + O(pa)) (B + O(pb)) = AB + A O(pb) + B O(pa) + O(pa + pb)
        oa, ob, pa, pb = self.order(), other.order(), self.prec, other.prec
        cands = []
        if pb is not None and oa is not None:
            cands.append(oa + pb)
        if pa is not None and ob is not None:
            cands.append(ob + pa)
        if pa is not None and pb is not None:
            cands.append(pa + pb)
        prec = min(cands) if cands else None
        out: dict[Fraction, Fraction] = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                if prec is None or e < prec:
                    out[e] = out.get(e, 0) + v1 * v2
        return _Series(out, prec)


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _power(s: _Series, k: int, cache: dict) -> _Series:
    if k not in cache:
        cache[k] = _power(s, k - 1, cache) * s
    return cache[k]


def evaluate_along(poly: Poly, x: TruncatedSeries, y: TruncatedSeries) -> tuple[dict, Fraction | None]:
    """Substitute the series into ``poly``; returns (terms, precision)."""
    sx = _Series(dict(x.terms), x.truncation_order)
    sy = _Series(dict(y.terms), y.truncation_order)
    px = {0: _Series.const(1)}
    py = {0: _Series.const(1)}
    total = _Series({}, None)
    for (a, b), coeff in sorted(poly.items()):
        term = _power(sx, a, px) * _power(sy, b, py) * _Series.const(coeff)
        total = total + term
    return total.c, total.prec


# -- polynomials ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*^()]))")


def parse_polynomial(text: str) -> dict[tuple[int, int], int]:
    """Parse an integer polynomial in ``x`` and ``y``.

    Grammar: sums and differences of products of powers of integers, ``x``,
    ``y`` and parenthesized subexpressions.  ``^`` and ``**`` both mean power;
    juxtaposition (``2xy``) means product.
    """
    src = text.replace("−", "-")
    tokens, pos = [], 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise InputError(f"unexpected character {src[pos:].strip()[:1]!r} in {text!r}")
        num, var, op = m.groups()
        tokens.append(("num", int(num)) if num else ("var", var) if var else ("op", op))
        pos = m.end()
    parser = _PolyParser(tokens, text)
    poly = parser.expr()
    if parser.i != len(tokens):
        raise InputError(f"trailing input in polynomial {text!r}")
    return {k: v for k, v in sorted(poly.items()) if v}


def _pmul(p, q):
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in p.items():
        for (a2, b2), c2 in q.items():
            k = (a + a2, b + b2)
            out[k] = out.get(k, 0) + c * c2
    return {k: v for k, v in out.items() if v}


def _padd(p, q, sign=1):
    out = dict(p)
    for k, v in q.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


class _PolyParser:
    def __init__(self, tokens, text):
        self.t, self.i, self.text = tokens, 0, text

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise InputError(f"unexpected end of polynomial {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok in (("op", "*"),):
                self.take()
                acc = _pmul(acc, self.power())
            elif tok[0] in ("num", "var") or tok == ("op", "("):
                acc = _pmul(acc, self.power())
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise InputError(f"exponent must be a nonnegative integer in {self.text!r}")
            out = {(0, 0): 1}
            for _ in range(val):
                out = _pmul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(0, 0): val} if val else {}
        if kind == "var":
            return {(1, 0): 1} if val == "x" else {(0, 1): 1}
        if val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise InputError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if val == "-":
            return _padd({}, self.power(), -1)
        raise InputError(f"unexpected {val!r} in polynomial {self.text!r}")


def format_polynomial(poly: Poly) -> str:
    if not poly:
        return "0"
    parts = []
    for (a, b), c in sorted(poly.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in (("x", a), ("y", b)) if e
        )
        mag = abs(c)
        body = mono if mono and mag == 1 else f"{mag}*{mono}" if mono else str(mag)
        parts.append(("-" if c < 0 else "+", body))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


# -- branches and germs -----------------------------------------------------------


@dataclass(frozen=True)
class BranchSpec:
    id: int
    characteristic: PuiseuxCharacteristic
    parametrization: tuple[TruncatedSeries, TruncatedSeries] | None = None
    implicit_poly: dict | None = field(default=None, compare=False)

    @property
    def delta(self) -> int:
        return semigroup_and_delta(self.characteristic)[1]

    def self_consistent(self) -> bool | None:
        """Whether the parametrization lies on the implicit curve (None if unknown)."""
        if self.parametrization is None or self.implicit_poly is None:
            return None
        terms, prec = evaluate_along(self.implicit_poly, *self.parametrization)
        return not terms

    def to_json(self) -> dict:
        out: dict = {"id": self.id, "characteristic": self.characteristic.as_list()}
        if self.parametrization is not None:
            x, y = self.parametrization
            par: dict = {"x": x.to_json(), "y": y.to_json()}
            trunc = {
                k: [s.truncation_order.numerator, s.truncation_order.denominator]
                for k, s in (("x", x), ("y", y))
                if s.truncation_order is not None
            }
            if trunc:
                par["truncation"] = trunc
            out["parametrization"] = par
        if self.implicit_poly is not None:
            out["polynomial"] = format_polynomial(self.implicit_poly)
        return out


def intersection_multiplicity(b1: BranchSpec, b2: BranchSpec) -> int:
    """``ord P2(x1(t), y1(t))`` in the uniformizing parameter of ``b1``.

    Rational exponents are cleared by the lcm of their denominators, so the
    result is always an integer.
    """
    if b1.parametrization is None:
        raise InputError(f"branch {b1.id} has no parametrization")
    if b2.implicit_poly is None:
        raise InputError(f"branch {b2.id} has no implicit polynomial")
    x, y = b1.parametrization
    terms, prec = evaluate_along(b2.implicit_poly, x, y)
    if not terms:
        if prec is None:
            raise InputError(f"branch {b1.id} lies on branch {b2.id}; no finite multiplicity")
        raise NeedsMoreTerms(
            f"P{b2.id} vanishes along branch {b1.id} to order >= {prec}; "
            f"extend the parametrization beyond order {prec}",
            required_order=prec,
        )
    order = min(terms)
    scale = lcm(*x.denominators(), *y.denominators())
    value = order * scale
    if value.denominator != 1:
        raise InputError("parametrization exponents do not share a common uniformizer")
    return int(value)


@dataclass(frozen=True)
class GermInvariants:
    r: int
    delta: int
    mu: int
    tau_hint: int | None
    branch_deltas: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "delta": self.delta,
            "mu": self.mu,
            "tau_hint": self.tau_hint,
            "branch_deltas": list(self.branch_deltas),
        }


@dataclass(frozen=True)
class GermSpec:
    """Branches plus the matrix of pairwise intersection numbers.

    ``intersection_matrix`` is an r x r tuple of tuples; the diagonal is
    ignored and off-diagonal ``None`` marks a missing entry.
    """

    branches: tuple[BranchSpec, ...]
    intersection_matrix: tuple[tuple[int | None, ...], ...] | None = None
    provenance: tuple[tuple[str | None, ...], ...] | None = None

    def __post_init__(self):
        branches = tuple(self.branches)
        if not branches:
            raise InputError("a germ needs at least one branch")
        ids = [b.id for b in branches]
        if sorted(ids) != list(range(1, len(ids) + 1)):
            raise InputError(f"branch ids must be 1..r, got {ids}")
        branches = tuple(sorted(branches, key=lambda b: b.id))
        object.__setattr__(self, "branches", branches)
        r = len(branches)
        M = self.intersection_matrix
        if M is not None:
            M = tuple(tuple(v for v in row) for row in M)
            if len(M) != r or any(len(row) != r for row in M):
                raise InputError(f"intersection matrix must be {r}x{r}")
            for i in range(r):
                for j in range(r):
                    if i == j:
                        continue
                    a, b = M[i][j], M[j][i]
                    if a is not None and (not isinstance(a, int) or isinstance(a, bool) or a < 1):
                        raise InputError(f"intersection number C[{i + 1}][{j + 1}] must be a positive integer")
                    if a != b:
                        raise InputError(f"intersection matrix not symmetric at ({i + 1},{j + 1})")
            object.__setattr__(self, "intersection_matrix", M)
            if self.provenance is None:
                prov = tuple(
                    tuple(None if i == j or M[i][j] is None else "given" for j in range(r))
                    for i in range(r)
                )
                object.__setattr__(self, "provenance", prov)

    @property
    def r(self) -> int:
        return len(self.branches)

    def C(self, i: int, j: int) -> int:
        """Intersection number of branches ``i`` and ``j`` (1-based)."""
        M = self.intersection_matrix
        if M is None or M[i - 1][j - 1] is None:
            raise IncompleteGerm(f"intersection number C[{i}][{j}] is missing")
        return M[i - 1][j - 1]

    def is_complete(self) -> bool:
        if self.r == 1:
            return True
        M = self.intersection_matrix
        return M is not None and all(
            M[i][j] is not None for i in range(self.r) for j in range(self.r) if i != j
        )

    def to_json(self) -> dict:
        out: dict = {"branches": [b.to_json() for b in self.branches]}
        if self.intersection_matrix is not None:
            out["intersection_matrix"] = [
                [0 if i == j else v for j, v in enumerate(row)]
                for i, row in enumerate(self.intersection_matrix)
            ]
        return out


def complete_intersection_matrix(g: GermSpec) -> GermSpec:
    """Fill missing entries from branch data where one side is parametrized
    and the other has an implicit equation.  Given entries are kept."""
    r = g.r
    M = [list(row) for row in g.intersection_matrix] if g.intersection_matrix else [[None] * r for _ in range(r)]
    P = [list(row) for row in g.provenance] if g.provenance else [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            if M[i][j] is not None:
                continue
            bi, bj = g.branches[i], g.branches[j]
            if bi.parametrization is not None and bj.implicit_poly is not None:
                v = intersection_multiplicity(bi, bj)
            elif bj.parametrization is not None and bi.implicit_poly is not None:
                v = intersection_multiplicity(bj, bi)
            else:
                continue
            M[i][j] = M[j][i] = v
            P[i][j] = P[j][i] = "computed"
    return GermSpec(g.branches, tuple(map(tuple, M)), tuple(map(tuple, P)))


def germ_invariants(g: GermSpec) -> GermInvariants:
    if not g.is_complete():
        raise IncompleteGerm("intersection matrix is missing or has gaps")
    r = g.r
    bd = tuple(b.delta for b in g.branches)
    delta = sum(bd) + sum(g.C(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1))
    mu = 2 * delta - r + 1
    # mu bounds tau from above; only offered when every branch has an equation
    tau = mu if all(b.implicit_poly is not None for b in g.branches) else None
    return GermInvariants(r, delta, mu, tau, bd)


# -- JSON input -------------------------------------------------------------------


def branch_from_json(data: dict) -> BranchSpec:
    if not isinstance(data, dict) or "id" not in data or "characteristic" not in data:
        raise InputError("each branch needs 'id' and 'characteristic'")
    ch = PuiseuxCharacteristic.from_list(data["characteristic"])
    par = data.get("parametrization")
    series = None
    if par is not None:
        trunc = par.get("truncation", {})
        series = (
            TruncatedSeries.from_json(par.get("x", []), trunc.get("x")),
            TruncatedSeries.from_json(par.get("y", []), trunc.get("y")),
        )
    poly = data.get("polynomial")
    return BranchSpec(
        id=int(data["id"]),
        characteristic=ch,
        parametrization=series,
        implicit_poly=parse_polynomial(poly) if poly is not None else None,
    )


def germ_from_json(data: dict) -> GermSpec:
    if not isinstance(data, dict) or "branches" not in data:
        raise InputError("germ file needs a 'branches' array")
    branches = tuple(branch_from_json(b) for b in data["branches"])
    M = data.get("intersection_matrix")
    if M is not None:
        M = tuple(
            tuple(None if i == j else v for j, v in enumerate(row)) for i, row in enumerate(M)
        )
    return GermSpec(branches, M)


def load_germ(path) -> GermSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read germ file {path}: {exc}") from None
    return germ_from_json(data)
