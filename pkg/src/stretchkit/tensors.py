"""Even-order square tensors over a finite index set and their convolution.

A tensor is a dense |A| x |A| array whose rows and columns are labelled by
the points of an index set A in canonical order.  The convolution product of
two tensors sums over all pairs of equivalent column/row indices of an index
map; when the map is injective it degenerates to the ordinary composed-index
matrix product.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import DimensionError, DomainError, VariantError
from .indexing import IndexMap, IndexSet
from .scalars import GQ, close, coerce, one, zero


class Tensor:
    """Element of Mat(A): dense entries T[i, j] for points i, j of A."""

    __slots__ = ("domain", "kind", "data")

    def __init__(self, domain: IndexSet, kind, data):
        data = tuple(coerce(v, kind) for v in data)
        n = len(domain)
        if len(data) != n * n:
            raise DimensionError(f"tensor needs {n * n} entries, got {len(data)}")
        self.domain = domain
        self.kind = kind
        self.data = data

    @classmethod
    def zeros(cls, domain, kind) -> "Tensor":
        n = len(domain)
        return cls(domain, kind, [zero(kind)] * (n * n))

    @classmethod
    def from_entries(cls, domain, kind, entries) -> "Tensor":
        """Build from {(row_point, col_point): value}; missing entries are zero."""
        n = len(domain)
        data = [zero(kind)] * (n * n)
        for (pi, pj), v in dict(entries).items():
            data[domain.position(pi) * n + domain.position(pj)] = coerce(v, kind)
        return cls(domain, kind, data)

    @classmethod
    def unit(cls, domain, pi, pj, kind=GQ) -> "Tensor":
        return cls.from_entries(domain, kind, {(tuple(pi), tuple(pj)): one(kind)})

    @property
    def size(self) -> int:
        return len(self.domain)

    def at(self, pi, pj):
        n = len(self.domain)
        return self.data[self.domain.position(pi) * n + self.domain.position(pj)]

    def at_pos(self, i: int, j: int):
        return self.data[i * len(self.domain) + j]

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.kind == other.kind and self.domain == other.domain
                and self.data == other.data)

    def __repr__(self):
        return f"Tensor({self.kind}, |A|={len(self.domain)})"


class TensorVector:
    """Element of C^A: one entry per point of A, in canonical order."""

    __slots__ = ("domain", "kind", "data")

    def __init__(self, domain: IndexSet, kind, data):
        data = tuple(coerce(v, kind) for v in data)
        if len(data) != len(domain):
            raise DimensionError(f"vector needs {len(domain)} entries, got {len(data)}")
        self.domain = domain
        self.kind = kind
        self.data = data

    @classmethod
    def zeros(cls, domain, kind) -> "TensorVector":
        return cls(domain, kind, [zero(kind)] * len(domain))

    @classmethod
    def from_entries(cls, domain, kind, entries) -> "TensorVector":
        data = [zero(kind)] * len(domain)
        for p, v in dict(entries).items():
            data[domain.position(p)] = coerce(v, kind)
        return cls(domain, kind, data)

    @classmethod
    def basis(cls, domain, point, kind=GQ) -> "TensorVector":
        return cls.from_entries(domain, kind, {tuple(point): one(kind)})

    def at(self, point):
        return self.data[self.domain.position(point)]

    def __eq__(self, other):
        if not isinstance(other, TensorVector):
            return NotImplemented
        return (self.kind == other.kind and self.domain == other.domain
                and self.data == other.data)

    def __repr__(self):
        return f"TensorVector({self.kind}, |A|={len(self.domain)})"


def _require_domain(fmap: IndexMap, obj):
    if fmap.domain != obj.domain:
        raise DomainError("index map and tensor live on different index sets")


def _require_compatible(a, b):
    if a.domain != b.domain:
        raise DomainError("operands live on different index sets")
    if a.kind != b.kind:
        raise VariantError(f"mixed scalar kinds: {a.kind} vs {b.kind}")


def pure_tensor(factors) -> Tensor:
    """Tensor of a list of square matrices on the rectangular set of their sizes.

    The entry at (i, j) is the product over slots s of factors[s][i_s, j_s].
    """
    factors = list(factors)
    if not factors:
        raise DomainError("pure_tensor needs at least one factor")
    kind = factors[0].kind
    for f in factors:
        if f.kind != kind:
            raise VariantError("pure_tensor factors must share one scalar kind")
        if not f.is_square:
            raise DimensionError("pure_tensor factors must be square")
    dims = tuple(f.n_rows for f in factors)
    domain = IndexSet.rectangular(dims)
    n = len(domain)
    data = [zero(kind)] * (n * n)
    points = domain.points
    for i, pi in enumerate(points):
        base = i * n
        for j, pj in enumerate(points):
            v = one(kind)
            for f, ci, cj in zip(factors, pi, pj):
                v = v * f.at(ci, cj)
                if not v:
                    break
            data[base + j] = v
    return Tensor(domain, kind, data)


def identity_tensor(domain: IndexSet, kind=GQ) -> Tensor:
    """Id[i, j] = 1 when i = j, else 0."""
    n = len(domain)
    z, o = zero(kind), one(kind)
    data = [z] * (n * n)
    for i in range(n):
        data[i * n + i] = o
    return Tensor(domain, kind, data)


def convolve(t1: Tensor, t2: Tensor, fmap: IndexMap) -> Tensor:
    """Convolution product: out[i, j] = sum over m ~ n of t1[i, m] * t2[n, j].

    The sum over equivalent pairs factorizes through classes, so the inner
    pair loop is replaced by class-indexed row sums of t2.
    """
    _require_compatible(t1, t2)
    _require_domain(fmap, t1)
    part = fmap.partition()
    n = t1.size
    cidx = part.class_of_position
    z = zero(t1.kind)
    # class_rows[c][j] = sum of t2[m, j] over points m in class c
    class_rows = [[z] * n for _ in range(len(part))]
    d2 = t2.data
    for m in range(n):
        row = class_rows[cidx[m]]
        base = m * n
        for j in range(n):
            v = d2[base + j]
            if v:
                row[j] = row[j] + v
    d1 = t1.data
    out = [z] * (n * n)
    for i in range(n):
        base = i * n
        for m in range(n):
            t1im = d1[base + m]
            if not t1im:
                continue
            row = class_rows[cidx[m]]
            for j in range(n):
                if row[j]:
                    out[base + j] = out[base + j] + t1im * row[j]
    return Tensor(t1.domain, t1.kind, out)


def star(t: Tensor) -> Tensor:
    """Adjoint: (star T)[i, j] = T[j, i]."""
    n = t.size
    data = [t.data[j * n + i] for i in range(n) for j in range(n)]
    return Tensor(t.domain, t.kind, data)


def act(t: Tensor, x: TensorVector, fmap: IndexMap) -> TensorVector:
    """Action on vectors: (T * x)[i] = sum over j ~ l of T[i, j] * x[l]."""
    _require_compatible(t, x)
    _require_domain(fmap, t)
    part = fmap.partition()
    n = t.size
    cidx = part.class_of_position
    z = zero(t.kind)
    class_sums = [z] * len(part)
    for l, v in enumerate(x.data):
        if v:
            class_sums[cidx[l]] = class_sums[cidx[l]] + v
    out = []
    for i in range(n):
        acc = z
        base = i * n
        for j in range(n):
            tij = t.data[base + j]
            if tij:
                s = class_sums[cidx[j]]
                if s:
                    acc = acc + tij * s
        out.append(acc)
    return TensorVector(t.domain, t.kind, out)


def average(t: Tensor, fmap: IndexMap, normalized: bool = True) -> Tensor:
    """Class averaging Id * (T * Id).

    Raw mode replaces each class-pair block of T by the block sum, exactly as
    the double convolution with Id produces.  Normalized mode uses the
    reweighted identity with 1/|class| on the diagonal, so each block becomes
    its mean; only this variant is a projection.
    """
    _require_domain(fmap, t)
    part = fmap.partition()
    n = t.size
    cidx = part.class_of_position
    z = zero(t.kind)
    n_cls = len(part)
    blocks = [[z] * n_cls for _ in range(n_cls)]
    for i in range(n):
        row = blocks[cidx[i]]
        base = i * n
        for j in range(n):
            v = t.data[base + j]
            if v:
                row[cidx[j]] = row[cidx[j]] + v
    if normalized:
        for ci in range(n_cls):
            for cj in range(n_cls):
                count = part.sizes[ci] * part.sizes[cj]
                v = blocks[ci][cj]
                if v and count > 1:
                    if t.kind == GQ:
                        blocks[ci][cj] = v * Fraction(1, count)
                    else:
                        blocks[ci][cj] = v / count
    data = [blocks[cidx[i]][cidx[j]] for i in range(n) for j in range(n)]
    return Tensor(t.domain, t.kind, data)


def tensors_close(a: Tensor, b: Tensor, rel_tol=1e-9, abs_tol=1e-12) -> bool:
    if a.domain != b.domain or a.kind != b.kind:
        return False
    if a.kind == GQ:
        return a.data == b.data
    return all(close(x, y, rel_tol, abs_tol) for x, y in zip(a.data, b.data))
