"""Dense matrices and vectors over a single scalar kind.

The kernel is deliberately small: product, Kronecker product, determinant,
rank and nullity sequences.  Exact ("gq") data goes through fraction-free or
fraction-exact elimination; float ("cf64") data through partially pivoted LU.
Row and column labels are carried verbatim and never interpreted here.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import DimensionError, VariantError
from .scalars import CF64, GQ, close, coerce, one, zero


def _labels(labels, n, what):
    if labels is None:
        return None
    labels = tuple(int(x) for x in labels)
    if len(labels) != n:
        raise DimensionError(f"{what} has {len(labels)} labels for {n} entries")
    return labels


class DenseMatrix:
    """Immutable row-major matrix whose entries all share one scalar kind."""

    __slots__ = ("kind", "n_rows", "n_cols", "data", "row_labels", "col_labels")

    def __init__(self, kind, n_rows, n_cols, data, row_labels=None, col_labels=None):
        if n_rows < 1 or n_cols < 1:
            raise DimensionError("matrix dimensions must be positive")
        data = tuple(coerce(v, kind) for v in data)
        if len(data) != n_rows * n_cols:
            raise DimensionError(
                f"matrix data has {len(data)} entries, expected {n_rows}x{n_cols}"
            )
        self.kind = kind
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.data = data
        self.row_labels = _labels(row_labels, n_rows, "row_labels")
        self.col_labels = _labels(col_labels, n_cols, "col_labels")

    @classmethod
    def from_rows(cls, rows, kind, row_labels=None, col_labels=None):
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        if n_rows == 0:
            raise DimensionError("matrix needs at least one row")
        n_cols = len(rows[0])
        if any(len(r) != n_cols for r in rows):
            raise DimensionError("ragged rows")
        flat = [v for r in rows for v in r]
        return cls(kind, n_rows, n_cols, flat, row_labels, col_labels)

    @classmethod
    def identity(cls, n, kind):
        z, o = zero(kind), one(kind)
        data = [o if i == j else z for i in range(n) for j in range(n)]
        return cls(kind, n, n, data)

    @classmethod
    def zeros(cls, n_rows, n_cols, kind):
        return cls(kind, n_rows, n_cols, [zero(kind)] * (n_rows * n_cols))

    @property
    def is_square(self):
        return self.n_rows == self.n_cols

    def at(self, i, j):
        return self.data[i * self.n_cols + j]

    def to_rows(self):
        n = self.n_cols
        return [list(self.data[i * n:(i + 1) * n]) for i in range(self.n_rows)]

    def transpose(self):
        n, m = self.n_rows, self.n_cols
        data = [self.data[i * m + j] for j in range(m) for i in range(n)]
        return DenseMatrix(self.kind, m, n, data, self.col_labels, self.row_labels)

    def with_labels(self, row_labels, col_labels):
        return DenseMatrix(self.kind, self.n_rows, self.n_cols, self.data,
                           row_labels, col_labels)

    def __eq__(self, other):
        # Labels are metadata; equality is about values.
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return (self.kind == other.kind and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols and self.data == other.data)

    def __repr__(self):
        return f"DenseMatrix({self.kind}, {self.n_rows}x{self.n_cols})"


class DenseVector:
    """Immutable vector sharing the matrix conventions."""

    __slots__ = ("kind", "n", "data", "labels")

    def __init__(self, kind, n, data, labels=None):
        if n < 1:
            raise DimensionError("vector length must be positive")
        data = tuple(coerce(v, kind) for v in data)
        if len(data) != n:
            raise DimensionError(f"vector data has {len(data)} entries, expected {n}")
        self.kind = kind
        self.n = n
        self.data = data
        self.labels = _labels(labels, n, "labels")

    def __eq__(self, other):
        if not isinstance(other, DenseVector):
            return NotImplemented
        return self.kind == other.kind and self.n == other.n and self.data == other.data

    def __repr__(self):
        return f"DenseVector({self.kind}, n={self.n})"


def _require_same_kind(a, b):
    if a.kind != b.kind:
        raise VariantError(f"mixed scalar kinds: {a.kind} vs {b.kind}")


def mat_mul(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Standard matrix product; exact whenever both operands are exact."""
    _require_same_kind(a, b)
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.n_rows}x{a.n_cols} by {b.n_rows}x{b.n_cols}")
    n, k, m = a.n_rows, a.n_cols, b.n_cols
    z = zero(a.kind)
    ad, bd = a.data, b.data
    out = [z] * (n * m)
    for i in range(n):
        arow = i * k
        orow = i * m
        for t in range(k):
            ait = ad[arow + t]
            if not ait:
                continue
            brow = t * m
            for j in range(m):
                btj = bd[brow + j]
                if btj:
                    out[orow + j] = out[orow + j] + ait * btj
    return DenseMatrix(a.kind, n, m, out, a.row_labels, b.col_labels)


def mat_vec(a: DenseMatrix, v: DenseVector) -> DenseVector:
    _require_same_kind(a, v)
    if a.n_cols != v.n:
        raise DimensionError(f"cannot apply {a.n_rows}x{a.n_cols} to vector of length {v.n}")
    z = zero(a.kind)
    out = []
    for i in range(a.n_rows):
        acc = z
        row = i * a.n_cols
        for j in range(a.n_cols):
            aij = a.data[row + j]
            if aij and v.data[j]:
                acc = acc + aij * v.data[j]
        out.append(acc)
    return DenseVector(a.kind, a.n_rows, out, a.row_labels)


def mat_add(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    _require_same_kind(a, b)
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols):
        raise DimensionError("shape mismatch in addition")
    data = [x + y for x, y in zip(a.data, b.data)]
    return DenseMatrix(a.kind, a.n_rows, a.n_cols, data, a.row_labels, a.col_labels)


def mat_sub(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    _require_same_kind(a, b)
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols):
        raise DimensionError("shape mismatch in subtraction")
    data = [x - y for x, y in zip(a.data, b.data)]
    return DenseMatrix(a.kind, a.n_rows, a.n_cols, data, a.row_labels, a.col_labels)


def mat_scale(s, a: DenseMatrix) -> DenseMatrix:
    s = coerce(s, a.kind)
    return DenseMatrix(a.kind, a.n_rows, a.n_cols, [s * v for v in a.data],
                       a.row_labels, a.col_labels)


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product in first-factor-varies-fastest layout.

    Row index I = i1 + n1*i2 and column index J = j1 + m1*j2, so the entry at
    (I, J) is a[i1,j1] * b[i2,j2].  Under this layout ``kron`` agrees
    entrywise with stretching the pure tensor of its factors through the
    mixed-radix map; in particular kron(B, I_k) is block-diagonal
    diag(B, ..., B) while kron(I_k, B) interleaves B at stride k.
    """
    _require_same_kind(a, b)
    p, r = a.n_rows, a.n_cols
    q, s = b.n_rows, b.n_cols
    z = zero(a.kind)
    out = [z] * (p * q * r * s)
    ncols = r * s
    for i2 in range(q):
        for j2 in range(s):
            bij = b.data[i2 * s + j2]
            if not bij:
                continue
            for i1 in range(p):
                orow = (i1 + p * i2) * ncols
                arow = i1 * r
                for j1 in range(r):
                    aij = a.data[arow + j1]
                    if aij:
                        out[orow + j1 + r * j2] = aij * bij
    return DenseMatrix(a.kind, p * q, r * s, out)


def _det_bareiss(m: DenseMatrix):
    """Fraction-free Bareiss elimination; exact over Gaussian rationals."""
    n = m.n_rows
    rows = m.to_rows()
    z = zero(GQ)
    sign = 1
    prev = one(GQ)
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if rows[r][k]), None)
        if piv is None:
            return z
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            mik = rows[i][k]
            ri, rk = rows[i], rows[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - mik * rk[j]) / prev
            ri[k] = z
        prev = pk
    d = rows[n - 1][n - 1]
    return d if sign > 0 else -d


def _det_lu(m: DenseMatrix):
    """Partially pivoted LU determinant for float data."""
    n = m.n_rows
    rows = m.to_rows()
    det = complex(1.0)
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(rows[r][k]))
        if rows[piv][k] == 0:
            return 0j
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            det = -det
        pk = rows[k][k]
        det *= pk
        for i in range(k + 1, n):
            f = rows[i][k] / pk
            if f:
                ri, rk = rows[i], rows[k]
                for j in range(k + 1, n):
                    ri[j] -= f * rk[j]
    return det


def det(a: DenseMatrix):
    """Determinant; exact for 'gq' matrices."""
    if not a.is_square:
        raise DimensionError("determinant requires a square matrix")
    return _det_bareiss(a) if a.kind == GQ else _det_lu(a)


def _as_int_rows(a: DenseMatrix):
    """Rows of plain ints when every entry is a rational integer, else None."""
    rows = []
    row = []
    for idx, v in enumerate(a.data):
        if v.im or v.re.denominator != 1:
            return None
        if idx % a.n_cols == 0 and idx:
            rows.append(row)
            row = []
        row.append(v.re.numerator)
    rows.append(row)
    return rows


def _rank_int(rows, n_rows, n_cols) -> int:
    """Integer fraction-free elimination with per-row gcd reduction."""
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, n_rows):
            q = rows[i][c]
            if q:
                ri, rr = rows[i], rows[r]
                new = [ri[j] * p - q * rr[j] for j in range(n_cols)]
                g = 0
                for v in new:
                    g = gcd(g, v)
                if g > 1:
                    new = [v // g for v in new]
                rows[i] = new
        r += 1
        if r == n_rows:
            break
    return r


def _rank_exact(rows, n_rows, n_cols) -> int:
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, n_rows):
            if rows[i][c]:
                f = rows[i][c] / pv
                ri, rr = rows[i], rows[r]
                for j in range(c, n_cols):
                    ri[j] = ri[j] - f * rr[j]
        r += 1
        if r == n_rows:
            break
    return r


def rank(a: DenseMatrix) -> int:
    """Exact rank; only defined for 'gq' matrices."""
    if a.kind != GQ:
        raise VariantError("rank requires exact ('gq') entries")
    int_rows = _as_int_rows(a)
    if int_rows is not None:
        return _rank_int(int_rows, a.n_rows, a.n_cols)
    return _rank_exact(a.to_rows(), a.n_rows, a.n_cols)


def nullity_sequence(a: DenseMatrix, lam, k_max: int):
    """[nullity((a - lam*I)^k)] for k = 1..k_max; exact, 'gq' only."""
    if a.kind != GQ:
        raise VariantError("nullity_sequence requires exact ('gq') entries")
    if not a.is_square:
        raise DimensionError("nullity_sequence requires a square matrix")
    if k_max < 1:
        raise DimensionError("k_max must be at least 1")
    n = a.n_rows
    shift = mat_sub(a, mat_scale(coerce(lam, GQ), DenseMatrix.identity(n, GQ)))
    power = shift
    seq = []
    for k in range(k_max):
        seq.append(n - rank(power))
        if k + 1 < k_max:
            power = mat_mul(power, shift)
    return seq


def inverse(a: DenseMatrix) -> DenseMatrix:
    """Exact (gq) or partially pivoted (cf64) inverse via Gauss-Jordan."""
    if not a.is_square:
        raise DimensionError("inverse requires a square matrix")
    n = a.n_rows
    rows = a.to_rows()
    o, z = one(a.kind), zero(a.kind)
    aug = [rows[i] + [o if i == j else z for j in range(n)] for i in range(n)]
    for c in range(n):
        if a.kind == CF64:
            piv = max(range(c, n), key=lambda r: abs(aug[r][c]))
        else:
            piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None or not aug[piv][c]:
            raise DimensionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    data = [aug[i][n + j] for i in range(n) for j in range(n)]
    return DenseMatrix(a.kind, n, n, data, a.col_labels, a.row_labels)


def permutation_matrix(perm, kind=GQ) -> DenseMatrix:
    """Matrix U with U e_i = e_{perm[i]}."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DimensionError("perm must be a permutation of 0..n-1")
    z, o = zero(kind), one(kind)
    data = [z] * (n * n)
    for i, p in enumerate(perm):
        data[p * n + i] = o
    return DenseMatrix(kind, n, n, data)


def frobenius_norm_sq(a: DenseMatrix):
    """Sum of squared entry magnitudes; a Fraction for 'gq', a float for 'cf64'."""
    if a.kind == GQ:
        total = Fraction(0)
        for v in a.data:
            total += v.abs_sq()
        return total
    return sum(abs(v) ** 2 for v in a.data)


def entry_multiset(a: DenseMatrix):
    """Sorted tuple of entries ('gq' only), for rearrangement checks."""
    if a.kind != GQ:
        raise VariantError("entry_multiset requires exact ('gq') entries")
    return tuple(sorted(a.data, key=lambda v: (v.re, v.im)))


def matrices_close(a: DenseMatrix, b: DenseMatrix, rel_tol=1e-9, abs_tol=1e-12) -> bool:
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols) or a.kind != b.kind:
        return False
    if a.kind == GQ:
        return a.data == b.data
    return all(close(x, y, rel_tol, abs_tol) for x, y in zip(a.data, b.data))
