"""Set partitions of branch indices, ordered by refinement."""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .errors import BudgetExceeded, InputError

MAX_BRANCHES = 12


@dataclass(frozen=True, order=True)
class BranchPartition:
    """Blocks sorted internally and by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(not b for b in blocks):
            raise InputError("partition blocks must be nonempty")
        flat = [x for b in blocks for x in b]
        if len(flat) != len(set(flat)):
            raise InputError(f"partition blocks overlap: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "BranchPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def trivial(cls, r: int) -> "BranchPartition":
        return cls((tuple(range(1, r + 1)),))

    @classmethod
    def finest(cls, r: int) -> "BranchPartition":
        return cls(tuple((i,) for i in range(1, r + 1)))

    @classmethod
    def parse(cls, text: str) -> "BranchPartition":
        """Parse ``"1,2|3|4"``."""
        try:
            return cls(tuple(tuple(int(x) for x in blk.split(",")) for blk in text.split("|")))
        except ValueError:
            raise InputError(f"cannot parse partition {text!r}") from None

    @property
    def length(self) -> int:
        return len(self.blocks)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    def refines(self, other: "BranchPartition") -> bool:
        """True iff every block of ``other`` is a union of blocks of ``self``."""
        if self.ground != other.ground:
            return False
        owner = {x: k for k, b in enumerate(other.blocks) for x in b}
        return all(len({owner[x] for x in b}) == 1 for b in self.blocks)

    def strictly_refines(self, other: "BranchPartition") -> bool:
        return self != other and self.refines(other)

    def merge_counts(self, coarser: "BranchPartition") -> list[int]:
        """For each block of ``coarser``, how many blocks of ``self`` it contains."""
        return [sum(1 for b in self.blocks if set(b) <= set(c)) for c in coarser.blocks]

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def as_list(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def _restricted_growth(r: int):
    a = [0] * r
    def rec(i, m):
        if i == r:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))
    if r:
        yield from rec(1, 0)


def enumerate_partitions(r: int, include_trivial: bool = False) -> list[BranchPartition]:
    """All set partitions of ``{1..r}``, by length then lexicographically."""
    if not isinstance(r, int) or r < 1:
        raise InputError(f"need at least one branch, got {r!r}")
    if r > MAX_BRANCHES:
        raise BudgetExceeded(f"r = {r} branches exceeds the partition budget of {MAX_BRANCHES}")
    out = []
    for code in _restricted_growth(r):
        blocks: dict[int, list[int]] = {}
        for i, c in enumerate(code, start=1):
            blocks.setdefault(c, []).append(i)
        p = BranchPartition(tuple(tuple(b) for b in blocks.values()))
        if include_trivial or not p.is_trivial():
            out.append(p)
    return sorted(out, key=lambda p: (p.length, p.blocks))


def bell(r: int) -> int:
    row = [1]
    for _ in range(r):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def mobius(finer: BranchPartition, coarser: BranchPartition) -> int:
    """Moebius function of the refinement order, zero unless ``finer`` refines."""
    if not finer.refines(coarser):
        return 0
    out = 1
    for k in finer.merge_counts(coarser):
        out *= (-1) ** (k - 1) * factorial(k - 1)
    return out
