"""Exact integer matrices, Smith/Hermite normal forms and finite abelian groups.

All arithmetic is on Python ints, so nothing ever overflows.  Matrices are
immutable; every routine returns fresh objects.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, prod
from typing import Iterable, Sequence

from . import kernels
from .errors import EnumerationTooLarge, InvalidModulus, ShapeError

DEFAULT_BUDGET = 10**6


class IntMatrix:
    """Immutable dense integer matrix stored row-major as a tuple of tuples."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), ncols: int | None = None):
        data = tuple(tuple(int(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ShapeError("ragged rows")
            if ncols is not None and ncols != width:
                raise ShapeError(f"expected {ncols} columns, got {width}")
        else:
            width = 0 if ncols is None else ncols
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls(([0] * n for _ in range(m)), ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "IntMatrix":
        if not self.nrows:
            return IntMatrix(([] for _ in range(self.ncols)), ncols=0)
        return IntMatrix(zip(*self._rows), ncols=self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows
        return IntMatrix(
            ([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows),
            ncols=other.ncols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ShapeError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ShapeError("shape mismatch")
        return IntMatrix(
            ([a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)),
            ncols=self.ncols,
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + other.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(([k * a for a in r] for r in self._rows), ncols=self.ncols)

    def mod(self, n: int) -> "IntMatrix":
        return IntMatrix(([a % n for a in r] for r in self._rows), ncols=self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(([self._rows[i][j] for j in cols] for i in rows), ncols=len(cols))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if self.nrows != self.ncols:
            raise ShapeError("determinant of a non-square matrix")
        n = self.nrows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


def as_matrix(a, ncols: int | None = None) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix(a, ncols=ncols)


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(self.D[k, k] for k in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d != 0)


def _smallest_nonzero(D, cells):
    best = None
    for i, j in cells:
        a = D[i][j]
        if a and (best is None or abs(a) < best[0]):
            best = (abs(a), i, j)
    return best


def smith_normal_form(A) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the nonzero entry of least absolute value, ties going
    to the lowest (row, col), so the transforms are reproducible.
    """
    A = as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        if i != j:
            D[i], D[j] = D[j], D[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for M in (D, V):
                for r in M:
                    r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        cells = [(i, j) for i in range(t, m) for j in range(t, n)]
        best = _smallest_nonzero(D, cells)
        if best is None:
            break
        _, pi, pj = best
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // D[t][t]))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // D[t][t]))
            line = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
            if any(D[i][j] for i, j in line if (i, j) != (t, t)):
                _, pi, pj = _smallest_nonzero(D, line)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            p = D[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return SmithForm(IntMatrix(U, ncols=m), IntMatrix(D, ncols=n), IntMatrix(V, ncols=n))


def invariant_factors(A) -> tuple[int, ...]:
    return smith_normal_form(A).invariant_factors


def hermite_normal_form(A) -> IntMatrix:
    """Row-style Hermite normal form of the lattice spanned by the rows of ``A``.

    Zero rows are dropped, so two generator matrices span the same lattice iff
    their HNFs are equal.
    """
    A = as_matrix(A)
    m, n = A.shape
    rows = A.tolist()
    p = 0
    for col in range(n):
        if p == m:
            break
        while True:
            nz = [i for i in range(p, m) if rows[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(rows[i][col]), i))
            rows[p], rows[k] = rows[k], rows[p]
            clean = True
            for i in range(p + 1, m):
                if rows[i][col]:
                    q = rows[i][col] // rows[p][col]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[p])]
                    clean = clean and rows[i][col] == 0
            if clean:
                break
        if not rows[p][col]:
            continue
        if rows[p][col] < 0:
            rows[p] = [-a for a in rows[p]]
        for i in range(p):
            q = rows[i][col] // rows[p][col]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[p])]
        p += 1
    return IntMatrix(rows[:p], ncols=n)


def rank(A) -> int:
    return hermite_normal_form(A).nrows


def same_lattice(A, B) -> bool:
    return hermite_normal_form(A) == hermite_normal_form(B)


def is_saturated(A) -> bool:
    """True iff the row lattice equals its rational span intersected with Z^n."""
    return all(d in (0, 1) for d in invariant_factors(A))


def integer_kernel(A) -> IntMatrix:
    """Saturated basis (as rows, HNF-canonical) of ``{x in Z^n : A x = 0}``."""
    A = as_matrix(A)
    s = smith_normal_form(A)
    r = s.rank
    V = s.V
    basis = [V.col(j) for j in range(r, A.ncols)]
    return hermite_normal_form(IntMatrix(basis, ncols=A.ncols))


def _check_modulus(n: int):
    if not isinstance(n, int) or n < 2:
        raise InvalidModulus(f"modulus must be an integer >= 2, got {n!r}")


def subgroup_quotient_order(gens, n: int) -> int:
    """``|L / nL|`` for the lattice ``L`` spanned by the rows of ``gens``."""
    _check_modulus(n)
    gens = as_matrix(gens)
    if gens.nrows == 0:
        return 1
    return n ** smith_normal_form(gens).rank


def residue_image_order(gens, n: int) -> int:
    """Order of the image of the row lattice in ``(Z/n)^m``.

    Equals ``subgroup_quotient_order`` exactly when every nonzero invariant
    factor is prime to ``n``.
    """
    _check_modulus(n)
    gens = as_matrix(gens)
    if gens.nrows == 0:
        return 1
    return prod(n // gcd(n, d) for d in invariant_factors(gens) if d)


def _reduced_basis(gens: IntMatrix, n: int) -> list[list[int]]:
    return [[a % n for a in r] for r in hermite_normal_form(gens).rows]


def residue_codes(gens, n: int, budget: int = DEFAULT_BUDGET) -> frozenset[int]:
    """Distinct residues ``sum a_k g_k mod n``, each encoded as ``sum v_j n^j``."""
    _check_modulus(n)
    gens = as_matrix(gens)
    basis = _reduced_basis(gens, n) if gens.nrows else []
    size = n ** len(basis)
    if size > budget:
        raise EnumerationTooLarge(
            f"enumerating {n}^{len(basis)} = {size} residues exceeds budget {budget}"
        )
    return frozenset(kernels.residue_codes(basis, n, gens.ncols))


def encode_residue(v: Sequence[int], n: int) -> int:
    return sum((a % n) * n**j for j, a in enumerate(v))


def decode_residue(code: int, n: int, m: int) -> tuple[int, ...]:
    out = []
    for _ in range(m):
        code, a = divmod(code, n)
        out.append(a)
    return tuple(out)


def enumerate_quotient(gens, n: int, budget: int = DEFAULT_BUDGET) -> frozenset[tuple[int, ...]]:
    """The exact set of residue vectors ``{sum a_k g_k mod n}``."""
    gens = as_matrix(gens)
    m = gens.ncols
    return frozenset(decode_residue(c, n, m) for c in residue_codes(gens, n, budget))


def kernel_of_hom_on_subgroup(T_gens, phi, n: int) -> tuple[int, int]:
    """Kernel and image orders of ``phi`` restricted to ``<T_gens>`` mod ``n``.

    ``T_gens`` rows generate a subgroup of ``(Z/n)^m``; ``phi`` is a ``k x m``
    matrix acting on column vectors.  Returns ``(|ker|, |image|)``.
    """
    _check_modulus(n)
    T_gens = as_matrix(T_gens)
    phi = as_matrix(phi)
    if phi.ncols != T_gens.ncols:
        raise ShapeError(
            f"phi has {phi.ncols} columns but the subgroup lives in rank {T_gens.ncols}"
        )
    order = residue_image_order(T_gens, n)
    if T_gens.nrows == 0:
        return 1, 1
    images = IntMatrix((phi.apply(t) for t in T_gens.rows), ncols=phi.nrows)
    image = residue_image_order(images, n) if phi.nrows else 1
    return order // image, image


def lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), xs, 1)


def inverse_unimodular(A) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1."""
    A = as_matrix(A)
    n = A.nrows
    if A.ncols != n:
        raise ShapeError("inverse of a non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ShapeError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [row[n:] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ShapeError("matrix is not unimodular")
    return IntMatrix(([int(x) for x in row] for row in out), ncols=n)
