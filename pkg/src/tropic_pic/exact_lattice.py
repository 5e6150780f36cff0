"""Exact integer matrix algebra: Hermite/Smith normal forms, kernels,
lattices, membership, intersections and quotient group structure.

Everything here works over plain Python ints, which are arbitrary
precision, so no overflow is possible at any magnitude.  Matrices are
dense and immutable; all functions are pure.

Conventions
-----------
* HNF is column-style: ``hnf(m)`` returns ``(h, u)`` with ``h = m @ u``,
  ``u`` unimodular.  ``h`` is in canonical column echelon form: pivot
  rows strictly increase left to right, pivots are positive, the other
  entries in each pivot row are reduced into ``[0, pivot)``, and zero
  columns are pushed to the right.  Equal column spans give equal ``h``,
  so lattices compare by their canonical basis.
* SNF ``snf(m)`` returns ``(d, s, t)`` with ``d = s @ m @ t`` diagonal,
  nonnegative, and ``d1 | d2 | ...``.  The pivot chosen each round is a
  minimal-absolute-value nonzero entry, which keeps coefficient growth
  tame at the sizes we care about.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence


class LatticeError(ValueError):
    """Raised on precondition violations (dimension mismatch, non-sublattice)."""


# ---------------------------------------------------------------------------
# IntMatrix
# ---------------------------------------------------------------------------

class IntMatrix:
    """Immutable dense matrix of Python ints, row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        e = tuple(int(x) for x in entries)
        if len(e) != rows * cols:
            raise LatticeError(f"expected {rows * cols} entries, got {len(e)}")
        self.rows = rows
        self.cols = cols
        self._e = e

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        flat = []
        for r in rows:
            if len(r) != nc:
                raise LatticeError("ragged rows")
            flat.extend(r)
        return cls(nr, nc, flat)

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[int]], nrows: Optional[int] = None) -> "IntMatrix":
        nc = len(cols)
        nr = len(cols[0]) if nc else (nrows or 0)
        if nrows is not None and nc == 0:
            nr = nrows
        flat = [0] * (nr * nc)
        for j, c in enumerate(cols):
            if len(c) != nr:
                raise LatticeError("ragged columns")
            for i, x in enumerate(c):
                flat[i * nc + j] = x
        return cls(nr, nc, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls(n, n, flat)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._e[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self._e[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def col_list(self) -> list:
        return [[self._e[i * self.cols + j] for i in range(self.rows)]
                for j in range(self.cols)]

    # -- algebra -----------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise LatticeError("shape mismatch in product")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self._e, other._e
        flat = [0] * (n * m)
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for j in range(m):
                s = 0
                for t in range(k):
                    at = arow[t]
                    if at:
                        s += at * b[t * m + j]
                flat[i * m + j] = s
        return IntMatrix(n, m, flat)

    def mul_vec(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise LatticeError("vector length mismatch")
        out = []
        for i in range(self.rows):
            row = self._e[i * self.cols:(i + 1) * self.cols]
            out.append(sum(r * x for r, x in zip(row, v) if r))
        return tuple(out)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self._e[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)])

    def neg(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [-x for x in self._e])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise LatticeError("row mismatch in hstack")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, flat)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        flat = [self._e[i * self.cols + j] for i in row_idx for j in col_idx]
        return IntMatrix(len(row_idx), len(col_idx), flat)

    def is_zero(self) -> bool:
        return not any(self._e)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self._e == other._e)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        return f"IntMatrix({self.row_list()!r})"


# ---------------------------------------------------------------------------
# Determinant and rank (fraction-free)
# ---------------------------------------------------------------------------

def det(m: IntMatrix) -> int:
    """Exact determinant by the Bareiss fraction-free algorithm."""
    if m.rows != m.cols:
        raise LatticeError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.row_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: IntMatrix) -> int:
    """Rank over Q (equals rank over Z) via fraction-free elimination."""
    a = m.row_list()
    nr, nc = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nr:
            break
    return r


# ---------------------------------------------------------------------------
# Hermite normal form (column style)
# ---------------------------------------------------------------------------

def hnf(m: IntMatrix) -> tuple:
    """Column-style HNF: returns (h, u) with h = m @ u, u unimodular.

    The canonical form is deterministic, so two matrices have equal
    integer column spans iff their h parts agree (after dropping zero
    columns).
    """
    nr, nc = m.rows, m.cols
    cols = m.col_list()
    u = IntMatrix.identity(nc).col_list()

    def colop_sub(j, j0, q):
        cj, cj0 = cols[j], cols[j0]
        for i in range(nr):
            cj[i] -= q * cj0[i]
        uj, uj0 = u[j], u[j0]
        for i in range(nc):
            uj[i] -= q * uj0[i]

    r = 0
    pivots = []
    for i in range(nr):
        # Reduce row i across columns r.. to a single nonzero entry.
        while True:
            nz = [j for j in range(r, nc) if cols[j][i] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: (abs(cols[j][i]), j))
            p = cols[j0][i]
            for j in nz:
                if j == j0:
                    continue
                q = cols[j][i] // p
                if q:
                    colop_sub(j, j0, q)
        nz = [j for j in range(r, nc) if cols[j][i] != 0]
        if nz:
            j = nz[0]
            if j != r:
                cols[j], cols[r] = cols[r], cols[j]
                u[j], u[r] = u[r], u[j]
            if cols[r][i] < 0:
                cols[r] = [-x for x in cols[r]]
                u[r] = [-x for x in u[r]]
            pivots.append(i)
            r += 1
            if r == nc:
                break
    # Canonical reduction: entries of earlier columns in each pivot row
    # go into [0, pivot).
    for k, p in enumerate(pivots):
        piv = cols[k][p]
        for j in range(k):
            q = cols[j][p] // piv
            if q:
                colop_sub(j, k, q)
    h = IntMatrix.from_cols(cols, nrows=nr)
    return h, IntMatrix.from_cols(u, nrows=nc)


def _echelon_pivots(h: IntMatrix) -> list:
    """Pivot rows of a column-echelon matrix, one per nonzero column."""
    piv = []
    for j in range(h.cols):
        col = h.col(j)
        i = next((i for i, x in enumerate(col) if x != 0), None)
        if i is None:
            break
        piv.append(i)
    return piv


def _echelon_solve(h: IntMatrix, pivots: Sequence[int], v: Sequence[int]) -> Optional[list]:
    """Solve h @ y = v over Z for column-echelon h; None when unsolvable."""
    w = list(v)
    y = [0] * h.cols
    for k, p in enumerate(pivots):
        piv = h[p, k]
        if w[p] % piv != 0:
            return None
        y[k] = w[p] // piv
        if y[k]:
            col = h.col(k)
            c = y[k]
            for i in range(p, h.rows):
                if col[i]:
                    w[i] -= c * col[i]
    if any(w):
        return None
    return y


def solve_columns(m: IntMatrix, v: Sequence[int]) -> Optional[list]:
    """Integer solution x of m @ x = v in the original column coordinates."""
    if len(v) != m.rows:
        raise LatticeError("vector length mismatch")
    h, u = hnf(m)
    pivots = _echelon_pivots(h)
    y = _echelon_solve(h, pivots, v)
    if y is None:
        return None
    return list(u.mul_vec(y))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def snf(m: IntMatrix) -> tuple:
    """Smith normal form: (d, s, t) with d = s @ m @ t.

    d is diagonal with nonnegative entries and d1 | d2 | ...; s and t
    are unimodular.
    """
    nr, nc = m.rows, m.cols
    a = m.row_list()
    s = IntMatrix.identity(nr).row_list()
    # t is tracked by its columns: column ops on `a` mirror onto t_cols.
    t_cols = [[1 if i == j else 0 for i in range(nc)] for j in range(nc)]

    def row_sub(i, i0, q):
        ai, ai0 = a[i], a[i0]
        for j in range(nc):
            ai[j] -= q * ai0[j]
        si, si0 = s[i], s[i0]
        for j in range(nr):
            si[j] -= q * si0[j]

    def col_sub(j, j0, q):
        for i in range(nr):
            a[i][j] -= q * a[i][j0]
        cj, cj0 = t_cols[j], t_cols[j0]
        for i in range(nc):
            cj[i] -= q * cj0[i]

    def row_swap(i, i0):
        a[i], a[i0] = a[i0], a[i]
        s[i], s[i0] = s[i0], s[i]

    def col_swap(j, j0):
        for i in range(nr):
            a[i][j], a[i][j0] = a[i][j0], a[i][j]
        t_cols[j], t_cols[j0] = t_cols[j0], t_cols[j]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        s[i] = [-x for x in s[i]]

    k = 0
    nmin = min(nr, nc)
    while k < nmin:
        # Minimal-absolute-value nonzero pivot in the trailing block.
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            row_swap(k, bi)
        if bj != k:
            col_swap(k, bj)
        if a[k][k] < 0:
            row_neg(k)
        # Clear row and column k; each pass strictly shrinks |pivot| on
        # failure, so this terminates.
        while True:
            for i in range(k + 1, nr):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    row_sub(i, k, q)
                    if a[i][k] != 0:
                        row_swap(k, i)
                        if a[k][k] < 0:
                            row_neg(k)
            if any(a[i][k] != 0 for i in range(k + 1, nr)):
                continue
            for j in range(k + 1, nc):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    col_sub(j, k, q)
                    if a[k][j] != 0:
                        col_swap(k, j)
                        if a[k][k] < 0:
                            row_neg(k)
            if any(a[i][k] != 0 for i in range(k + 1, nr)):
                continue
            if any(a[k][j] != 0 for j in range(k + 1, nc)):
                continue
            break
        # Divisibility repair: pivot must divide the trailing block.
        fixed = True
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if a[i][j] % a[k][k] != 0:
                    row_sub(k, i, -1)  # add row i to row k
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            k += 1
    d = IntMatrix.from_rows(a)
    smat = IntMatrix.from_rows(s)
    tmat = IntMatrix.from_cols(t_cols, nrows=nc)
    return d, smat, tmat


def invariant_factors(m: IntMatrix) -> list:
    """Nonzero diagonal entries of the SNF, in divisibility order."""
    d, _, _ = snf(m)
    out = []
    for i in range(min(d.rows, d.cols)):
        if d[i, i] != 0:
            out.append(d[i, i])
    return out


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """Sublattice of Z^ambient_dim with a canonical HNF basis.

    ``basis`` has one column per generator; zero columns are dropped, so
    ``basis.cols`` is the rank.  Two lattices are equal iff their bases
    are equal.
    """

    ambient_dim: int
    basis: IntMatrix

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "Lattice":
        h, _ = hnf(m)
        r = len(_echelon_pivots(h))
        cols = [h.col(j) for j in range(r)]
        return cls(m.rows, IntMatrix.from_cols(cols, nrows=m.rows))

    @classmethod
    def from_generators(cls, ambient_dim: int, gens: Sequence[Sequence[int]]) -> "Lattice":
        return cls.from_matrix(IntMatrix.from_cols(list(gens), nrows=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, IntMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, IntMatrix.identity(ambient_dim))

    @property
    def rank(self) -> int:
        return self.basis.cols

    def __eq__(self, other) -> bool:
        return (isinstance(other, Lattice) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))


def kernel(m: IntMatrix) -> Lattice:
    """The saturated lattice {x in Z^cols : m @ x = 0}."""
    h, u = hnf(m)
    nonzero = len(_echelon_pivots(h))
    gens = [u.col(j) for j in range(nonzero, m.cols)]
    return Lattice.from_generators(m.cols, gens)


def lattice_member(lat: Lattice, v: Sequence[int]) -> tuple:
    """(True, witness) when v = basis @ witness over Z, else (False, None)."""
    if len(v) != lat.ambient_dim:
        raise LatticeError("vector length != ambient dimension")
    pivots = _echelon_pivots(lat.basis)
    y = _echelon_solve(lat.basis, pivots, v)
    if y is None:
        return False, None
    return True, y


def lattice_contains(big: Lattice, small: Lattice) -> bool:
    return all(lattice_member(big, small.basis.col(j))[0] for j in range(small.rank))


def lattice_intersect(a: Lattice, b: Lattice) -> Lattice:
    """Intersection, via the kernel of [basis_a | -basis_b]."""
    if a.ambient_dim != b.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    if a.rank == 0 or b.rank == 0:
        return Lattice.zero(a.ambient_dim)
    stacked = a.basis.hstack(b.basis.neg())
    ker = kernel(stacked)
    gens = []
    for j in range(ker.rank):
        coeffs = ker.basis.col(j)[:a.rank]
        gens.append(a.basis.mul_vec(coeffs))
    return Lattice.from_generators(a.ambient_dim, gens)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.ambient_dim != b.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    return Lattice.from_matrix(a.basis.hstack(b.basis))


def quotient(big: Lattice, small: Lattice) -> "AbGroup":
    """Structure of big/small as a finitely generated abelian group.

    Each generator of ``small`` is written in coordinates of ``big``'s
    basis (a LatticeError if that fails, i.e. small is not a sublattice),
    and the SNF of the coefficient matrix gives the invariant factors.
    """
    if big.ambient_dim != small.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    coeff_cols = []
    for j in range(small.rank):
        ok, w = lattice_member(big, small.basis.col(j))
        if not ok:
            raise LatticeError("quotient: second lattice is not contained in the first")
        coeff_cols.append(w)
    q = IntMatrix.from_cols(coeff_cols, nrows=big.rank)
    factors = invariant_factors(q)
    free_rank = big.rank - len(factors)
    torsion = [f for f in factors if f > 1]
    return AbGroup(free_rank, tuple(torsion))


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbGroup:
    """Z^free_rank + Z/d1 + ... with d1 | d2 | ..., each di >= 2."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise LatticeError("negative free rank")
        prev = None
        for d in self.torsion:
            if d < 2:
                raise LatticeError("invariant factors must be >= 2")
            if prev is not None and d % prev != 0:
                raise LatticeError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, n: int) -> "AbGroup":
        return cls(n, ())

    @classmethod
    def direct_sum(cls, *groups: "AbGroup") -> "AbGroup":
        """Canonical invariant-factor form of a direct sum."""
        free = sum(g.free_rank for g in groups)
        factors = [d for g in groups for d in g.torsion]
        if not factors:
            return cls(free, ())
        n = len(factors)
        diag = IntMatrix(n, n, [factors[i] if i == j else 0
                                for i in range(n) for j in range(n)])
        canon = [f for f in invariant_factors(diag) if f > 1]
        return cls(free, tuple(canon))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel(m: IntMatrix) -> AbGroup:
    """Structure of Z^rows / column-span(m)."""
    factors = invariant_factors(m)
    free_rank = m.rows - len(factors)
    torsion = tuple(f for f in factors if f > 1)
    return AbGroup(free_rank, torsion)


def gcd_of_maximal_minors(m: IntMatrix, r: int) -> int:
    """gcd of all r x r minors; brute force, for small test instances only."""
    g = 0
    for ri in combinations(range(m.rows), r):
        for ci in combinations(range(m.cols), r):
            d = det(m.submatrix(ri, ci))
            if d:
                g = _gcd(g, abs(d))
    return g


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
