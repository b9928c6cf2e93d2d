"""Closed-form Jordan types for stretched products of Jordan blocks.

The closed forms cover a product of two cells in four cases depending on
which eigenvalues vanish, extend to arbitrary direct sums by distributing
over block pairs, and to n factors by folding pairwise.  Every closed form
is independently certifiable through an exact rank oracle (Weyr sequences of
nullities), which never trusts the formulas it checks.

When exactly one factor is nilpotent, the product's spectrum is forced to
{0}: the closed form emits nilpotent blocks even though the naive reading of
the two-cell case would suggest carrying the nonzero eigenvalue over.  The
oracle certifies this choice on every run.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce

from .errors import DimensionError, DomainError, VariantError
from .linalg import DenseMatrix, kron, mat_mul, mat_scale, mat_sub, rank
from .scalars import GQ, GaussianRational, coerce, gq, one, zero


def _exact_eig(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise VariantError(
        "Jordan eigenvalues must be exact; float/complex matching is unsound")


def _eig_key(e: GaussianRational):
    return (e.re, e.im)


class JordanSpec:
    """Multiset of Jordan blocks (size, eigenvalue) in canonical order.

    Blocks are sorted by eigenvalue (real part, then imaginary part) and by
    descending size within one eigenvalue, so multiset equality is plain
    sequence equality.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        canon = []
        for size, eig in blocks:
            size = int(size)
            if size < 1:
                raise DimensionError("Jordan block sizes must be positive")
            canon.append((size, _exact_eig(eig)))
        canon.sort(key=lambda b: (_eig_key(b[1]), -b[0]))
        self.blocks = tuple(canon)
        if not self.blocks:
            raise DimensionError("a Jordan spec needs at least one block")

    @classmethod
    def single(cls, size, eig) -> "JordanSpec":
        return cls([(size, eig)])

    @property
    def dimension(self) -> int:
        return sum(size for size, _ in self.blocks)

    def eigenvalues(self):
        return tuple(sorted({eig for _, eig in self.blocks}, key=_eig_key))

    def __eq__(self, other):
        if not isinstance(other, JordanSpec):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        inner = " + ".join(f"J{size}({eig})" for size, eig in self.blocks)
        return f"JordanSpec({inner})"


def jordan_block(size: int, eig, kind=GQ) -> DenseMatrix:
    """Upper bidiagonal cell: eigenvalue on the diagonal, ones above it."""
    if size < 1:
        raise DimensionError("Jordan block sizes must be positive")
    eig = _exact_eig(eig) if kind == GQ else coerce(eig, kind)
    z, o = zero(kind), one(kind)
    data = [[z] * size for _ in range(size)]
    for i in range(size):
        data[i][i] = eig
        if i + 1 < size:
            data[i][i + 1] = o
    return DenseMatrix.from_rows(data, kind)


def spec_matrix(spec: JordanSpec, kind=GQ) -> DenseMatrix:
    """Direct sum of the spec's blocks, in canonical order."""
    n = spec.dimension
    z = zero(kind)
    rows = [[z] * n for _ in range(n)]
    offset = 0
    for size, eig in spec.blocks:
        cell = jordan_block(size, eig, kind)
        for i in range(size):
            for j in range(size):
                v = cell.at(i, j)
                if v:
                    rows[offset + i][offset + j] = v
        offset += size
    return DenseMatrix.from_rows(rows, kind)


def jordan_pair(p: int, a, q: int, b) -> JordanSpec:
    """Jordan type of the stretched product of the cells J_p(a) and J_q(b)."""
    if p < 1 or q < 1:
        raise DimensionError("Jordan cell sizes must be positive")
    a = _exact_eig(a)
    b = _exact_eig(b)
    lo = min(p, q)
    z = gq(0)
    if a and b:
        ab = a * b
        blocks = [(p + q - 2 * k + 1, ab) for k in range(1, lo + 1)]
    elif a and not b:
        blocks = [(q, z)] * p
    elif b and not a:
        blocks = [(p, z)] * q
    else:
        blocks = []
        for k in range(1, lo):
            blocks.extend([(k, z), (k, z)])
        blocks.extend([(lo, z)] * (abs(p - q) + 1))
    return JordanSpec(blocks)


def jordan_product(s1: JordanSpec, s2: JordanSpec) -> JordanSpec:
    """Distribute over direct sums: resolve every block pair and merge."""
    blocks = []
    for p, a in s1.blocks:
        for q, b in s2.blocks:
            blocks.extend(jordan_pair(p, a, q, b).blocks)
    return JordanSpec(blocks)


def jordan_nfold(specs) -> JordanSpec:
    """Left fold of :func:`jordan_product`; the result is order-independent."""
    specs = list(specs)
    if not specs:
        raise DomainError("jordan_nfold needs at least one spec")
    return reduce(jordan_product, specs)


def explicit_pair_matrix(c: JordanSpec, d: JordanSpec) -> DenseMatrix:
    """Explicit stretched matrix of the product of two Jordan direct sums.

    Four sums of matrix units: eigenvalue products on the diagonal, the
    first factor's superdiagonals at offset +1, the second factor's at
    offset +M (M = dimension of the first sum), and their overlap at +M+1.
    """
    mu = [size for size, _ in c.blocks]
    a_eigs = [eig for _, eig in c.blocks]
    nu = [size for size, _ in d.blocks]
    b_eigs = [eig for _, eig in d.blocks]
    m_dim = sum(mu)
    n_dim = sum(nu)
    dim = m_dim * n_dim
    z = zero(GQ)
    o = one(GQ)
    data = [z] * (dim * dim)

    def add(r, col, v):
        data[r * dim + col] = data[r * dim + col] + v

    mu_start = [0]
    for size in mu:
        mu_start.append(mu_start[-1] + size)
    nu_start = [0]
    for size in nu:
        nu_start.append(nu_start[-1] + size)

    for u, a in enumerate(a_eigs):
        rows_u = range(mu_start[u], mu_start[u + 1])
        for v, b in enumerate(b_eigs):
            rows_v = range(nu_start[v], nu_start[v + 1])
            ab = a * b
            for i in rows_u:
                for j in rows_v:
                    if ab:
                        add(i + m_dim * j, i + m_dim * j, ab)
            for i in rows_u[:-1]:
                for j in rows_v:
                    if b:
                        add(i + m_dim * j, i + m_dim * j + 1, b)
            for i in rows_u:
                for j in rows_v[:-1]:
                    if a:
                        add(i + m_dim * j, i + m_dim * j + m_dim, a)
            for i in rows_u[:-1]:
                for j in rows_v[:-1]:
                    add(i + m_dim * j, i + m_dim * j + m_dim + 1, o)

    labels = tuple(range(dim))
    return DenseMatrix(GQ, dim, dim, data, row_labels=labels, col_labels=labels)


class JordanOracleResult:
    """Per-eigenvalue Weyr sequences and the block multisets they force."""

    __slots__ = ("eigen_data", "dimension")

    def __init__(self, eigen_data, dimension):
        # eigen_data: tuple of (eigenvalue, weyr tuple, block-size tuple desc)
        self.eigen_data = tuple(eigen_data)
        self.dimension = dimension

    def spec(self) -> JordanSpec:
        blocks = []
        for eig, _, sizes in self.eigen_data:
            blocks.extend((size, eig) for size in sizes)
        return JordanSpec(blocks)

    def weyr(self, eig):
        eig = _exact_eig(eig)
        for e, w, _ in self.eigen_data:
            if e == eig:
                return w
        raise DomainError(f"oracle was not run for eigenvalue {eig}")

    def __repr__(self):
        return f"JordanOracleResult(dim={self.dimension}, eigs={len(self.eigen_data)})"


def jordan_oracle(m: DenseMatrix, eigenvalues) -> JordanOracleResult:
    """Certify a Jordan structure from exact rank computations.

    For each candidate eigenvalue the Weyr sequence w_k = nullity((M - eig)^k)
    is computed to stabilization; its first differences count blocks of size
    at least k.  The supplied eigenvalue set must exhaust the spectrum, which
    is checked by dimension accounting.
    """
    if m.kind != GQ:
        raise VariantError("the Jordan oracle requires exact ('gq') matrices")
    if not m.is_square:
        raise DimensionError("the Jordan oracle requires a square matrix")
    n = m.n_rows
    eigs = sorted({_exact_eig(e) for e in eigenvalues}, key=_eig_key)
    eye = DenseMatrix.identity(n, GQ)
    eigen_data = []
    covered = 0
    for eig in eigs:
        shifted = mat_sub(m, mat_scale(eig, eye))
        weyr = []
        prev = 0
        power = shifted
        while True:
            nullity = n - rank(power)
            weyr.append(nullity)
            if nullity == prev or nullity == n or len(weyr) > n:
                break
            prev = nullity
            power = mat_mul(power, shifted)
        counts_geq = [weyr[i] - (weyr[i - 1] if i else 0) for i in range(len(weyr))]
        if any(counts_geq[i] < counts_geq[i + 1] for i in range(len(counts_geq) - 1)):
            raise DomainError("Weyr differences increased; not a nullity sequence")
        sizes = []
        for k in range(1, len(counts_geq) + 1):
            here = counts_geq[k - 1]
            nxt = counts_geq[k] if k < len(counts_geq) else 0
            sizes.extend([k] * (here - nxt))
        sizes.sort(reverse=True)
        covered += weyr[-1]
        if sizes:
            eigen_data.append((eig, tuple(weyr), tuple(sizes)))
    if covered != n:
        raise DomainError(
            f"eigenvalue set covers dimension {covered} of {n}; an eigenvalue is missing")
    return JordanOracleResult(eigen_data, n)


def nfold_product_matrix(specs) -> DenseMatrix:
    """Kronecker product (first factor fastest) of the specs' matrices."""
    mats = [spec_matrix(s, GQ) for s in specs]
    return reduce(kron, mats)


def nfold_eigenvalues(specs):
    """Every product of one eigenvalue per factor; exhausts the spectrum."""
    products = {gq(1)}
    for spec in specs:
        products = {p * e for p in products for e in spec.eigenvalues()}
    return sorted(products, key=_eig_key)
