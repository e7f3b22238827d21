"""Exact linear algebra over the rationals.

Everything here works on sparse rows (``{column: value}`` dicts) internally.
Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined by cross-multiplication, and only the final reduced row-echelon
form is normalized to rationals.  Matrices are split into connected
components (columns linked through shared rows) before elimination, which
keeps the block-diagonal systems coming from weight-graded form spaces cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

SparseVec = Dict[int, Fraction]
VectorLike = Union[Sequence, Mapping[int, object]]


class DimensionMismatch(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _to_sparse(v: VectorLike) -> SparseVec:
    if isinstance(v, Mapping):
        return {int(j): _frac(x) for j, x in v.items() if x != 0}
    return {j: _frac(x) for j, x in enumerate(v) if x != 0}


class RatMatrix:
    """Immutable rational matrix with sparse row storage."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], object]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        data: Dict[int, SparseVec] = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols}")
            x = _frac(x)
            if x:
                data.setdefault(i, {})[j] = x
        self._data = data

    @classmethod
    def _from_rows(cls, rows: int, cols: int, data: Dict[int, SparseVec]) -> "RatMatrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._data = rows, cols, data
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        data = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            sr = _to_sparse(r)
            if sr:
                data[i] = sr
        return cls._from_rows(nrows, ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[VectorLike], nrows: int) -> "RatMatrix":
        data: Dict[int, SparseVec] = {}
        for j, col in enumerate(columns):
            if not isinstance(col, Mapping) and len(col) != nrows:
                raise DimensionMismatch(f"column {j} has length {len(col)}, expected {nrows}")
            for i, x in _to_sparse(col).items():
                if not 0 <= i < nrows:
                    raise DimensionMismatch(f"column {j} has an entry at row {i} >= {nrows}")
                data.setdefault(i, {})[j] = x
        return cls._from_rows(nrows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls._from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self._data.get(i, {}).get(j, Fraction(0))

    def sparse_rows(self) -> List[SparseVec]:
        return [dict(self._data[i]) for i in sorted(self._data)]

    def sparse_rows_indexed(self) -> Dict[int, SparseVec]:
        return self._data

    def to_lists(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, r in self._data.items():
            for j, x in r.items():
                out[i][j] = x
        return out

    def matvec(self, v: VectorLike) -> Tuple[Fraction, ...]:
        if not isinstance(v, Mapping) and len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        sv = _to_sparse(v)
        out = [Fraction(0)] * self.rows
        for i, r in self._data.items():
            out[i] = sum((x * sv[j] for j, x in r.items() if j in sv), Fraction(0))
        return tuple(out)

    def transpose(self) -> "RatMatrix":
        data: Dict[int, SparseVec] = {}
        for i, r in self._data.items():
            for j, x in r.items():
                data.setdefault(j, {})[i] = x
        return RatMatrix._from_rows(self.cols, self.rows, data)

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted((i, tuple(sorted(r.items()))) for i, r in self._data.items()))))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={sum(len(r) for r in self._data.values())})"


# ---------------------------------------------------------------------------
# elimination core


def _primitive_int_row(row: Mapping[int, Fraction]) -> Dict[int, int]:
    den = 1
    for x in row.values():
        den = lcm(den, x.denominator)
    out = {j: int(x * den) for j, x in row.items() if x}
    return _divide_content(out)


def _divide_content(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {j: x // g for j, x in row.items()}
    return row


def _components(rows: List[Dict[int, int]]) -> List[List[int]]:
    """Group row indices into blocks sharing no column with other blocks."""
    parent: Dict[int, int] = {}

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for row in rows:
        it = iter(row)
        first = next(it)
        parent.setdefault(first, first)
        r0 = find(first)
        for j in it:
            parent.setdefault(j, j)
            rj = find(j)
            if rj != r0:
                if rj < r0:
                    r0, rj = rj, r0
                parent[rj] = r0
    groups: Dict[int, List[int]] = {}
    for idx, row in enumerate(rows):
        groups.setdefault(find(next(iter(row))), []).append(idx)
    return [groups[k] for k in sorted(groups)]


def _gauss_jordan_block(rows: List[Dict[int, int]]) -> List[Tuple[int, Dict[int, int]]]:
    """Fraction-free Gauss-Jordan on one block; returns (pivot column, row) pairs."""
    columns = sorted({j for r in rows for j in r})
    pending = list(rows)
    done: List[Tuple[int, Dict[int, int]]] = []
    for c in columns:
        best = -1
        for idx, r in enumerate(pending):
            if c in r and (best < 0 or len(r) < len(pending[best])):
                best = idx
        if best < 0:
            continue
        piv = pending.pop(best)
        p = piv[c]

        def eliminate(r: Dict[int, int]) -> Dict[int, int]:
            m = r[c]
            g = gcd(p, m)
            a, b = p // g, m // g
            out = {j: a * x for j, x in r.items()}
            for j, x in piv.items():
                v = out.get(j, 0) - b * x
                if v:
                    out[j] = v
                else:
                    out.pop(j, None)
            return _divide_content(out)

        new_pending = []
        for r in pending:
            if c in r:
                r = eliminate(r)
                if not r:
                    continue
            new_pending.append(r)
        pending = new_pending
        done = [(pc, eliminate(r) if c in r else r) for pc, r in done]
        done.append((c, piv))
    return done


def _rref_sparse(rows: Iterable[Mapping[int, Fraction]]) -> List[Tuple[int, SparseVec]]:
    """Reduced row-echelon form: list of (pivot column, normalized row) sorted by pivot."""
    int_rows = [r for r in (_primitive_int_row(row) for row in rows) if r]
    if not int_rows:
        return []
    result: List[Tuple[int, SparseVec]] = []
    for block in _components(int_rows):
        for c, r in _gauss_jordan_block([int_rows[i] for i in block]):
            p = r[c]
            result.append((c, {j: Fraction(x, p) for j, x in r.items()}))
    result.sort(key=lambda t: t[0])
    return result


def _nullspace_sparse(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> List[SparseVec]:
    reduced = _rref_sparse(rows)
    pivots = {c for c, _ in reduced}
    by_free: Dict[int, SparseVec] = {}
    for j in range(ncols):
        if j not in pivots:
            by_free[j] = {j: Fraction(1)}
    for c, r in reduced:
        for j, x in r.items():
            if j != c:
                by_free[j][c] = -x
    return [r for _, r in _rref_sparse(by_free[j] for j in sorted(by_free))]


def _dense(v: SparseVec, n: int) -> Tuple[Fraction, ...]:
    out = [Fraction(0)] * n
    for j, x in v.items():
        out[j] = x
    return tuple(out)


# ---------------------------------------------------------------------------
# public operations


def rref(m: RatMatrix) -> Tuple[List[Tuple[Fraction, ...]], List[int]]:
    """Reduced row-echelon form as (nonzero rows, pivot columns)."""
    reduced = _rref_sparse(m.sparse_rows())
    return [_dense(r, m.cols) for _, r in reduced], [c for c, _ in reduced]


def rank(m: RatMatrix) -> int:
    return len(_rref_sparse(m.sparse_rows()))


def nullspace(m: RatMatrix) -> List[Tuple[Fraction, ...]]:
    """Kernel basis of ``m`` in reduced row-echelon form (empty if trivial)."""
    return [_dense(v, m.cols) for v in _nullspace_sparse(m.sparse_rows(), m.cols)]


def row_space_basis(vectors: Sequence[VectorLike], dim: Optional[int] = None) -> List[Tuple[Fraction, ...]]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    if dim is None:
        if not vectors:
            return []
        dim = len(vectors[0])
    sv = [_to_sparse(v) for v in vectors]
    for v in vectors:
        if not isinstance(v, Mapping) and len(v) != dim:
            raise DimensionMismatch("vectors of unequal length")
    return [_dense(r, dim) for _, r in _rref_sparse(sv)]


def solve_membership(span_cols: RatMatrix, target: VectorLike) -> Optional[Tuple[Fraction, ...]]:
    """Solve ``span_cols @ c == target``.

    Returns the echelon-canonical solution (free variables set to zero), or
    ``None`` when ``target`` is not in the column span.
    """
    if not isinstance(target, Mapping) and len(target) != span_cols.rows:
        raise DimensionMismatch(f"target of length {len(target)} for {span_cols.rows} rows")
    c = _solve_sparse(span_cols.sparse_rows_indexed(), span_cols.rows, span_cols.cols, _to_sparse(target))
    return None if c is None else _dense(c, span_cols.cols)


def _solve_sparse(rows: Dict[int, SparseVec], nrows: int, ncols: int, target: SparseVec) -> Optional[SparseVec]:
    aug = []
    for i in sorted(set(rows) | set(target)):
        r = dict(rows.get(i, {}))
        if i in target:
            r[ncols] = target[i]
        if r:
            aug.append(r)
    reduced = _rref_sparse(aug)
    sol: SparseVec = {}
    for c, r in reduced:
        if c == ncols:
            return None
        if ncols in r:
            sol[c] = r[ncols]
    return sol


def solve_in_span(columns: Sequence[SparseVec], dim: int, target: SparseVec) -> Optional[SparseVec]:
    """Sparse-column variant of :func:`solve_membership` used by the form modules."""
    rows: Dict[int, SparseVec] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            if x:
                rows.setdefault(i, {})[j] = _frac(x)
    return _solve_sparse(rows, dim, len(columns), {i: _frac(x) for i, x in target.items() if x})


def kernel_dimension(columns: Sequence[SparseVec]) -> int:
    """``cols - rank`` of the matrix whose columns are given sparsely."""
    rows: Dict[int, SparseVec] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows.setdefault(i, {})[j] = _frac(x)
    return len(columns) - len(_rref_sparse(rows.values()))


def kernel_of_columns(columns: Sequence[SparseVec]) -> List[SparseVec]:
    rows: Dict[int, SparseVec] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows.setdefault(i, {})[j] = _frac(x)
    return _nullspace_sparse(rows.values(), len(columns))


def intersect_sparse(a: Sequence[SparseVec], b: Sequence[SparseVec]) -> List[SparseVec]:
    """Canonical basis of span(a) ∩ span(b) for sparse vectors."""
    if not a or not b:
        return []
    cols = list(a) + [{i: -x for i, x in v.items()} for v in b]
    images = []
    for k in kernel_of_columns(cols):
        w: SparseVec = {}
        for j, s in k.items():
            if j < len(a):
                for i, x in a[j].items():
                    w[i] = w.get(i, Fraction(0)) + s * x
        w = {i: x for i, x in w.items() if x}
        if w:
            images.append(w)
    return [r for _, r in _rref_sparse(images)]


def subspace_intersection(a: Sequence[VectorLike], b: Sequence[VectorLike]) -> List[Tuple[Fraction, ...]]:
    """Canonical basis of span(a) ∩ span(b)."""
    lengths = {len(v) for v in list(a) + list(b) if not isinstance(v, Mapping)}
    if len(lengths) > 1:
        raise DimensionMismatch(f"vectors of lengths {sorted(lengths)}")
    if not a or not b:
        return []
    dim = lengths.pop() if lengths else 1 + max(max(v) for v in list(a) + list(b) if v)
    return [_dense(v, dim) for v in intersect_sparse([_to_sparse(v) for v in a], [_to_sparse(v) for v in b])]


def determinant(m: RatMatrix) -> Fraction:
    """Bareiss fraction-free determinant."""
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a: List[List[int]] = []
    for row in m.to_lists():
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        scale *= den
        a.append([int(x * den) for x in row])
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale
