"""Stretching maps: from tensors on an index set to labelled square matrices.

The stretched matrix of a tensor T under an index map F accumulates T[i, j]
into the cell (F(i), F(j)); rows and columns are labelled by the sorted
distinct values of F.  Injective maps give a pure rearrangement
(matricization); non-injective maps fold whole classes together, and the
class-averaging map is exactly the lost information.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DomainError
from .indexing import IndexMap, Permutation
from .linalg import (DenseMatrix, DenseVector, det, inverse, mat_mul,
                     permutation_matrix, rank)
from .scalars import CF64, GQ, close, gq, zero
from .tensors import Tensor, TensorVector, average


def stretch(t: Tensor, fmap: IndexMap) -> DenseMatrix:
    """Stretched matrix of ``t`` under ``fmap``, labelled by sorted map values."""
    if fmap.domain != t.domain:
        raise DomainError("index map and tensor live on different index sets")
    part = fmap.partition()
    n = t.size
    n_cls = len(part)
    cidx = part.class_of_position
    z = zero(t.kind)
    grid = [[z] * n_cls for _ in range(n_cls)]
    for i in range(n):
        row = grid[cidx[i]]
        base = i * n
        for j in range(n):
            v = t.data[base + j]
            if v:
                row[cidx[j]] = row[cidx[j]] + v
    flat = [v for row in grid for v in row]
    return DenseMatrix(t.kind, n_cls, n_cls, flat,
                       row_labels=part.values, col_labels=part.values)


def stretch_vector(x: TensorVector, fmap: IndexMap) -> DenseVector:
    """Stretched vector: the component at F(i) accumulates x over the class."""
    if fmap.domain != x.domain:
        raise DomainError("index map and vector live on different index sets")
    part = fmap.partition()
    cidx = part.class_of_position
    out = [zero(x.kind)] * len(part)
    for pos, v in enumerate(x.data):
        if v:
            out[cidx[pos]] = out[cidx[pos]] + v
    return DenseVector(x.kind, len(part), out, labels=part.values)


def kappa(t: Tensor, fmap: IndexMap):
    """Determinant of the stretched matrix; multiplicative for the convolution."""
    return det(stretch(t, fmap))


def permute_stretch(t: Tensor, fmap: IndexMap, sigma: Permutation) -> DenseMatrix:
    """Stretch through the permuted map p -> F(sigma(p))."""
    return stretch(t, fmap.compose(sigma))


@dataclass(frozen=True)
class SimilarityWitness:
    """Permutation conjugating the mixed-radix stretch into a given injective one.

    ``perm[i]`` is the rank (among sorted map values) of the point whose
    mixed-radix position is i; ``matrix`` is the permutation matrix U with
    U e_i = e_{perm[i]}.
    """

    perm: tuple
    matrix: DenseMatrix


def tp_similarity_witness(fmap: IndexMap) -> SimilarityWitness:
    """Witness that an injective map on a rectangular set is a relabelled reshape.

    After rank-relabelling the map values to 0..N-1, the stretched matrix of
    any tensor equals U * (mixed-radix stretch) * U^-1 for the returned U.
    """
    domain = fmap.domain
    if not domain.is_rectangular:
        raise DomainError("similarity witness requires a rectangular index set")
    if not fmap.is_injective():
        raise DomainError("similarity witness requires an injective index map")
    values = fmap.values()
    rank_of = {v: r for r, v in enumerate(sorted(values))}
    # Canonical domain order is mixed-radix order, so position(p) = F_TP(p).
    perm = tuple(rank_of[values[pos]] for pos in range(len(domain)))
    return SimilarityWitness(perm=perm, matrix=permutation_matrix(perm, GQ))


def check_tp_witness(fmap: IndexMap, witness: SimilarityWitness) -> bool:
    """Exhaustively verify the conjugation identity on all matrix-unit tensors."""
    domain = fmap.domain
    tp = IndexMap.mixed_radix(domain)
    u = witness.matrix
    u_inv = inverse(u)
    for pi in domain:
        for pj in domain:
            unit = Tensor.unit(domain, pi, pj, GQ)
            lhs = stretch(unit, fmap)
            rhs = mat_mul(mat_mul(u, stretch(unit, tp)), u_inv)
            if lhs.data != rhs.data:
                return False
    return True


def _entries_equal(kind, a, b):
    if kind == GQ:
        return a == b
    return all(close(x, y) for x, y in zip(a, b))


def verify_averaging_decomposition(t: Tensor, fmap: IndexMap) -> dict:
    """Check the decomposition of stretching through class averaging.

    Three clauses: (i) the normalized average stretches to the same matrix as
    the original tensor; (ii) stretching is injective on the span of
    class-pair indicator tensors (full rank); (iii) the raw average stretches
    to D * stretch(T) * D with D the diagonal of class sizes.
    """
    part = fmap.partition()
    base = stretch(t, fmap)

    averaged = stretch(average(t, fmap, normalized=True), fmap)
    projection_preserved = _entries_equal(t.kind, averaged.data, base.data)

    n_cls = len(part)
    rows = []
    for ci in range(n_cls):
        for cj in range(n_cls):
            indicator = Tensor.from_entries(
                t.domain, GQ,
                {(pi, pj): 1 for pi in part.classes[ci] for pj in part.classes[cj]})
            rows.append(list(stretch(indicator, fmap).data))
    indicator_rank = rank(DenseMatrix.from_rows(rows, GQ))

    d = DenseMatrix.from_rows(
        [[gq(part.sizes[i]) if i == j else gq(0) for j in range(n_cls)]
         for i in range(n_cls)], GQ)
    if t.kind == GQ:
        raw_expected = mat_mul(mat_mul(d, base), d)
    else:
        sizes = part.sizes
        raw_expected = DenseMatrix(
            CF64, n_cls, n_cls,
            [base.at(i, j) * sizes[i] * sizes[j]
             for i in range(n_cls) for j in range(n_cls)])
    raw_stretched = stretch(average(t, fmap, normalized=False), fmap)
    raw_conjugation = _entries_equal(t.kind, raw_stretched.data, raw_expected.data)

    passed = projection_preserved and indicator_rank == n_cls ** 2 and raw_conjugation
    return {
        "check": "averaging-decomposition",
        "passed": passed,
        "details": {
            "projection_preserved": projection_preserved,
            "indicator_rank": indicator_rank,
            "expected_rank": n_cls ** 2,
            "raw_conjugation": raw_conjugation,
        },
    }


def kernel_preservation_check(fmap: IndexMap, sigma: Permutation,
                              trials: int, seed: int = 0) -> dict:
    """Evidence that permuting slots preserves the kernel of the stretch.

    Samples random tensors built from within-class difference units (these
    span the kernel), then checks they still stretch to zero through the
    permuted map.  Injective maps have trivial kernel and pass vacuously.
    """
    composed = fmap.compose(sigma)  # validates sigma(A) inside A
    part = fmap.partition()
    pairs = [(ci, cj) for ci in range(len(part)) for cj in range(len(part))
             if part.sizes[ci] * part.sizes[cj] > 1]
    if not pairs:
        return {"check": "kernel-preservation", "passed": True,
                "details": {"trials": 0, "vacuous": True}}
    rng = random.Random(seed)
    zero_grid = tuple(zero(GQ) for _ in range(len(part) ** 2))
    failures = 0
    checked = 0
    for _ in range(trials):
        entries = {}
        for _ in range(rng.randint(1, 3)):
            ci, cj = pairs[rng.randrange(len(pairs))]
            block = [(pi, pj) for pi in part.classes[ci] for pj in part.classes[cj]]
            (p1, q1), (p2, q2) = rng.sample(block, 2)
            coeff = gq(rng.randint(-3, 3) or 1)
            entries[(p1, q1)] = entries.get((p1, q1), gq(0)) + coeff
            entries[(p2, q2)] = entries.get((p2, q2), gq(0)) - coeff
        t = Tensor.from_entries(fmap.domain, GQ, entries)
        if stretch(t, fmap).data != zero_grid:
            continue  # construction sanity; difference units always land here
        checked += 1
        if stretch(t, composed).data != zero_grid:
            failures += 1
    return {"check": "kernel-preservation", "passed": failures == 0,
            "details": {"trials": checked, "failures": failures, "vacuous": False}}
