"""Sparse integer matrices, Smith normal form and exact ranks.

Entries are Python ints, so nothing overflows.  Storage is one dict per
column (row index -> nonzero value), which is the natural layout for
boundary matrices and for column-reduction style elimination.
"""

from dataclasses import dataclass
from typing import List, Tuple

# 2**31 - 1.  Ranks over GF(p) match rational ranks unless the homology of the
# complex has p-torsion.
DEFAULT_PRIME = 2147483647


class IntegerMatrix:

    __slots__ = ("rows", "cols", "_cols")

    def __init__(self, rows, cols, columns=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        self.rows = int(rows)
        self.cols = int(cols)
        if columns is None:
            self._cols = [dict() for _ in range(self.cols)]
        else:
            if len(columns) != self.cols:
                raise ValueError("column count mismatch")
            self._cols = columns

    @classmethod
    def from_entries(cls, rows, cols, entries):
        M = cls(rows, cols)
        for r, c, v in entries:
            M[r, c] = M[r, c] + int(v)
        return M

    @classmethod
    def from_dense(cls, A):
        A = [list(row) for row in A]
        rows = len(A)
        cols = len(A[0]) if rows else 0
        M = cls(rows, cols)
        for i, row in enumerate(A):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                v = int(v)
                if v:
                    M._cols[j][i] = v
        return M

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def nnz(self):
        return sum(len(c) for c in self._cols)

    def _check(self, r, c):
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError((r, c))

    def __getitem__(self, rc):
        r, c = rc
        self._check(r, c)
        return self._cols[c].get(r, 0)

    def __setitem__(self, rc, v):
        r, c = rc
        self._check(r, c)
        v = int(v)
        if v:
            self._cols[c][r] = v
        else:
            self._cols[c].pop(r, None)

    def column(self, c):
        """Read-only view of column ``c`` as {row: value}."""
        return self._cols[c]

    def entries(self):
        for c, col in enumerate(self._cols):
            for r in sorted(col):
                yield r, c, col[r]

    def to_dense(self) -> List[List[int]]:
        A = [[0] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            A[r][c] = v
        return A

    def transpose(self):
        T = IntegerMatrix(self.cols, self.rows)
        for r, c, v in self.entries():
            T._cols[r][c] = v
        return T

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for col in other._cols:
            acc = {}
            for k, b in col.items():
                for r, a in self._cols[k].items():
                    acc[r] = acc.get(r, 0) + a * b
            out.append({r: v for r, v in acc.items() if v})
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self):
        return all(not c for c in self._cols)

    def submatrix(self, rows, cols):
        """Restrict to the given (sorted) row and column index lists."""
        rmap = {r: i for i, r in enumerate(rows)}
        out = []
        for c in cols:
            out.append({rmap[r]: v for r, v in self._cols[c].items() if r in rmap})
        return IntegerMatrix(len(rows), len(cols), out)

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V == D with D diagonal, divisors d1 | d2 | ... | dr."""

    divisors: Tuple[int, ...]
    U: IntegerMatrix
    V: IntegerMatrix
    D: IntegerMatrix

    @property
    def rank(self):
        return len(self.divisors)


def _snf_dense(D, U=None, V=None):
    # In-place on lists of lists.  U collects row operations, V column ones.
    m = len(D)
    n = len(D[0]) if m else 0

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] += q * row[src]
        rs, rd = D[src], D[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += q * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(len(us)):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):
        for row in D:
            if row[src]:
                row[dst] += q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    divisors = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in the pivot row/column
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        divisors.append(D[t][t])
        t += 1
    return divisors


def smith_normal_form(A: IntegerMatrix) -> SmithForm:
    """Dense Smith normal form with unimodular transforms.

    Intended for small matrices; for divisors only on large sparse
    matrices use :func:`elementary_divisors`.
    """
    m, n = A.shape
    D = A.to_dense()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    divisors = _snf_dense(D, U, V)
    return SmithForm(
        tuple(divisors),
        IntegerMatrix.from_dense(U) if m else IntegerMatrix(0, 0),
        IntegerMatrix.from_dense(V) if n else IntegerMatrix(0, 0),
        IntegerMatrix.from_dense(D) if m and n else IntegerMatrix(m, n),
    )


def elementary_divisors(A: IntegerMatrix) -> Tuple[int, ...]:
    """Nonzero Smith divisors of ``A`` (ascending, divisibility chain).

    Unit pivots are eliminated sparsely first; whatever is left over goes
    through the dense algorithm.
    """
    rows = {}
    for r, c, v in A.entries():
        rows.setdefault(r, {})[c] = v
    colrows = {}
    for r, row in rows.items():
        for c in row:
            colrows.setdefault(c, set()).add(r)

    ones = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda r: len(rows[r])):
            row = rows.get(r)
            if row is None:
                continue
            units = [c for c, v in row.items() if v in (1, -1)]
            if not units:
                continue
            c = min(units, key=lambda c: len(colrows[c]))
            s = row[c]
            for r2 in list(colrows[c]):
                if r2 == r:
                    continue
                row2 = rows[r2]
                q = row2[c] * s
                for cc, v in row.items():
                    nv = row2.get(cc, 0) - q * v
                    if nv:
                        if cc not in row2:
                            colrows[cc].add(r2)
                        row2[cc] = nv
                    elif cc in row2:
                        del row2[cc]
                        colrows[cc].discard(r2)
                if not row2:
                    del rows[r2]
            for cc in row:
                colrows[cc].discard(r)
            del rows[r]
            ones += 1
            progress = True

    rest = []
    if rows:
        cols = sorted({c for row in rows.values() for c in row})
        cidx = {c: j for j, c in enumerate(cols)}
        for row in rows.values():
            dense = [0] * len(cols)
            for c, v in row.items():
                dense[cidx[c]] = v
            rest.append(dense)
        rest = _snf_dense(rest)
    divs = [1] * ones + list(rest)
    return tuple(sorted(divs))


def rank_exact(A: IntegerMatrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    M = A.to_dense()
    m, n = A.shape
    rank = 0
    prev = 1
    for c in range(n):
        piv = None
        for r in range(rank, m):
            if M[r][c]:
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for r in range(rank + 1, m):
            a = M[r][c]
            row, prow = M[r], M[rank]
            for k in range(c + 1, n):
                row[k] = (p * row[k] - a * prow[k]) // prev
            row[c] = 0
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def rank_modp(A: IntegerMatrix, p: int = DEFAULT_PRIME, skip=None, pivots_out=None) -> int:
    """Rank over GF(p) by left-to-right column reduction.

    Each column is reduced against earlier pivot columns keyed by their
    largest row index.  Columns listed in ``skip`` are known to reduce to zero
    (clearing) and are not touched.  If ``pivots_out`` is a set, the pivot row
    of every independent column is added to it.
    """
    pivots = {}
    skip = skip or ()
    for j in range(A.cols):
        if j in skip:
            continue
        col = {}
        for r, v in A._cols[j].items():
            v %= p
            if v:
                col[r] = v
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                inv = pow(col[low], p - 2, p)
                if inv != 1:
                    col = {r: v * inv % p for r, v in col.items()}
                pivots[low] = col
                break
            f = col[low]
            for r, v in piv.items():
                nv = (col.get(r, 0) - f * v) % p
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
    if pivots_out is not None:
        pivots_out.update(pivots)
    return len(pivots)
