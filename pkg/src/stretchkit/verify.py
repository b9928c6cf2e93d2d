"""Seeded verification suites behind the ``verify`` CLI command.

Each suite draws deterministic random instances and checks an algebraic
identity two-sided: both sides are computed along independent code paths
(e.g. a convolution followed by one stretch versus two stretches followed by
a matrix product).  Exact scalars make every check an equality, not a
tolerance.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import DomainError
from .indexing import IndexMap, IndexSet, Permutation
from .jordan import (JordanSpec, jordan_nfold, jordan_oracle, jordan_pair,
                     nfold_eigenvalues, nfold_product_matrix, spec_matrix)
from .linalg import (DenseMatrix, entry_multiset, frobenius_norm_sq, kron,
                     mat_mul, mat_vec)
from .scalars import GQ, GaussianRational, gq
from .stretching import (check_tp_witness, kernel_preservation_check,
                         permute_stretch, stretch, stretch_vector,
                         tp_similarity_witness, verify_averaging_decomposition)
from .tensors import (Tensor, TensorVector, act, average, convolve,
                      identity_tensor, pure_tensor, star)

SUITE_NAMES = ("homomorphism", "associativity", "adjoint", "kappa",
               "averaging", "permutation", "jordan", "tp-witness")


def rand_fraction(rng: random.Random, span: int = 2) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 1, 2)))


def rand_gq(rng: random.Random, span: int = 2) -> GaussianRational:
    im = rand_fraction(rng, span) if rng.random() < 0.3 else Fraction(0)
    return GaussianRational(rand_fraction(rng, span), im)


def rand_matrix(rng: random.Random, n: int, m: int | None = None) -> DenseMatrix:
    m = n if m is None else m
    return DenseMatrix(GQ, n, m, [rand_gq(rng) for _ in range(n * m)])


def rand_rect_set(rng: random.Random, max_arity: int = 3, max_dim: int = 3) -> IndexSet:
    arity = rng.randint(1, max_arity)
    return IndexSet.rectangular([rng.randint(1, max_dim) for _ in range(arity)])


def rand_map(rng: random.Random, domain: IndexSet) -> IndexMap:
    choice = rng.randrange(4)
    if choice == 0:
        return IndexMap.linear(domain, [rng.randint(-2, 2) for _ in range(domain.arity)])
    if choice == 1:
        return IndexMap.mixed_radix(domain)
    if choice == 2:
        return IndexMap.max_coord(domain)
    hi = max(1, len(domain) // 2)
    return IndexMap.from_table(domain, {p: rng.randint(-1, hi) for p in domain})


def rand_tensor(rng: random.Random, domain: IndexSet) -> Tensor:
    n = len(domain)
    return Tensor(domain, GQ, [rand_gq(rng) for _ in range(n * n)])


def rand_tensor_vector(rng: random.Random, domain: IndexSet) -> TensorVector:
    return TensorVector(domain, GQ, [rand_gq(rng) for _ in range(len(domain))])


def rand_injective_table(rng: random.Random, domain: IndexSet) -> IndexMap:
    values = rng.sample(range(-3 * len(domain), 3 * len(domain)), len(domain))
    return IndexMap.from_table(domain, dict(zip(domain.points, values)))


def rand_dims_preserving_perm(rng: random.Random, dims) -> Permutation:
    """Random slot permutation that keeps the dimension tuple fixed."""
    slots = list(range(1, len(dims) + 1))
    for _ in range(8):
        rng.shuffle(slots)
        if all(dims[s - 1] == dims[i] for i, s in enumerate(slots)):
            return Permutation(slots)
    return Permutation.identity(len(dims))


def _check(name: str, trials: int, failures: int, **extra) -> dict:
    details = {"trials": trials, "failures": failures}
    details.update(extra)
    return {"check": name, "passed": failures == 0, "details": details}


def suite_homomorphism(trials: int, seed: int):
    """Stretching turns convolution into matrix product, action into mat-vec."""
    rng = random.Random(seed)
    mat_fail = vec_fail = 0
    for _ in range(max(trials, 1)):
        domain = rand_rect_set(rng)
        fmap = rand_map(rng, domain)
        t1, t2 = rand_tensor(rng, domain), rand_tensor(rng, domain)
        lhs = stretch(convolve(t1, t2, fmap), fmap)
        rhs = mat_mul(stretch(t1, fmap), stretch(t2, fmap))
        if lhs != rhs:
            mat_fail += 1
        x = rand_tensor_vector(rng, domain)
        vl = stretch_vector(act(t1, x, fmap), fmap)
        vr = mat_vec(stretch(t1, fmap), stretch_vector(x, fmap))
        if vl != vr:
            vec_fail += 1
    n = max(trials, 1)
    return [_check("matrix-homomorphism", n, mat_fail),
            _check("vector-homomorphism", n, vec_fail)]


def suite_associativity(trials: int, seed: int):
    """Convolution is associative and interacts with Id by class sums."""
    rng = random.Random(seed)
    assoc_fail = id_fail = 0
    for _ in range(max(trials, 1)):
        domain = rand_rect_set(rng)
        fmap = rand_map(rng, domain)
        t1, t2, t3 = (rand_tensor(rng, domain) for _ in range(3))
        if convolve(convolve(t1, t2, fmap), t3, fmap) != \
                convolve(t1, convolve(t2, t3, fmap), fmap):
            assoc_fail += 1
        ident = identity_tensor(domain, GQ)
        part = fmap.partition()
        n = len(domain)
        right = convolve(t1, ident, fmap)
        left = convolve(ident, t1, fmap)
        ok = True
        for i, pi in enumerate(domain.points):
            for j, pj in enumerate(domain.points):
                row_sum = sum((t1.data[i * n + domain.position(m)]
                               for m in part.classes[part.class_of(pj)]), gq(0))
                col_sum = sum((t1.data[domain.position(m) * n + j]
                               for m in part.classes[part.class_of(pi)]), gq(0))
                if right.at_pos(i, j) != row_sum or left.at_pos(i, j) != col_sum:
                    ok = False
        if not ok:
            id_fail += 1
    n = max(trials, 1)
    return [_check("associativity", n, assoc_fail),
            _check("identity-formulas", n, id_fail)]


def suite_adjoint(trials: int, seed: int):
    """Transpose law, involution, and anti-automorphism on injective maps."""
    rng = random.Random(seed)
    transpose_fail = involution_fail = anti_fail = 0
    for _ in range(max(trials, 1)):
        domain = rand_rect_set(rng)
        fmap = rand_map(rng, domain)
        t1, t2 = rand_tensor(rng, domain), rand_tensor(rng, domain)
        lhs = stretch(convolve(t2, t1, fmap), fmap).transpose()
        rhs = stretch(convolve(star(t1), star(t2), fmap), fmap)
        if lhs != rhs:
            transpose_fail += 1
        if star(star(t1)) != t1:
            involution_fail += 1
        injective = IndexMap.mixed_radix(domain)
        if star(convolve(t1, t2, injective)) != \
                convolve(star(t2), star(t1), injective):
            anti_fail += 1
    n = max(trials, 1)
    return [_check("transpose-law", n, transpose_fail),
            _check("star-involution", n, involution_fail),
            _check("star-anti-automorphism", n, anti_fail)]


def suite_kappa(trials: int, seed: int):
    """Multiplicativity of the stretched determinant."""
    from .stretching import kappa
    rng = random.Random(seed)
    mult_fail = tp_fail = 0
    for _ in range(max(trials, 1)):
        domain = rand_rect_set(rng, max_arity=2, max_dim=3)
        fmap = rand_map(rng, domain)
        t1, t2 = rand_tensor(rng, domain), rand_tensor(rng, domain)
        if kappa(convolve(t1, t2, fmap), fmap) != kappa(t1, fmap) * kappa(t2, fmap):
            mult_fail += 1
        a, b = rand_matrix(rng, 2), rand_matrix(rng, 2)
        t = pure_tensor([a, b])
        tp = IndexMap.mixed_radix(t.domain)
        if kappa(convolve(pure_tensor([a, b]), pure_tensor([b, a]), tp), tp) != \
                kappa(pure_tensor([a, b]), tp) * kappa(pure_tensor([b, a]), tp):
            tp_fail += 1
    n = max(trials, 1)
    return [_check("kappa-multiplicativity", n, mult_fail),
            _check("kappa-tensor-product", n, tp_fail)]


def suite_averaging(trials: int, seed: int):
    """Averaging decomposition clauses plus idempotence and block constancy."""
    rng = random.Random(seed)
    decomposition_fail = idem_fail = block_fail = 0
    domain = IndexSet.rectangular((2, 2))
    maps = [IndexMap.linear(domain, (1, 1)), IndexMap.linear(domain, (1, -1)),
            IndexMap.max_coord(domain)]
    for i in range(max(trials, 1)):
        fmap = maps[i % len(maps)]
        extra_domain = rand_rect_set(rng)
        extra_map = rand_map(rng, extra_domain)
        for f, dom in ((fmap, domain), (extra_map, extra_domain)):
            t = rand_tensor(rng, dom)
            if not verify_averaging_decomposition(t, f)["passed"]:
                decomposition_fail += 1
            avg = average(t, f, normalized=True)
            if average(avg, f, normalized=True) != avg:
                idem_fail += 1
            part = f.partition()
            for ci, cls_i in enumerate(part.classes):
                for cj, cls_j in enumerate(part.classes):
                    vals = {avg.at(pi, pj) for pi in cls_i for pj in cls_j}
                    if len(vals) != 1:
                        block_fail += 1
    n = max(trials, 1)
    return [_check("decomposition-clauses", n, decomposition_fail),
            _check("idempotence", n, idem_fail),
            _check("block-constant", n, block_fail)]


def suite_permutation(trials: int, seed: int):
    """Composition law, isometry in the reshape setting, kernel preservation."""
    rng = random.Random(seed)
    comp_fail = iso_fail = kernel_fail = 0
    for i in range(max(trials, 1)):
        domain = rand_rect_set(rng)
        dims = domain.dims
        s1 = rand_dims_preserving_perm(rng, dims)
        s2 = rand_dims_preserving_perm(rng, dims)
        fmap = rand_map(rng, domain)
        twice = fmap.compose(s1).compose(s2)
        once = fmap.compose(s2.compose(s1))
        if not twice.pointwise_equal(once):
            comp_fail += 1
        t = rand_tensor(rng, domain)
        tp = IndexMap.mixed_radix(domain)
        plain = stretch(t, tp)
        permuted = permute_stretch(t, tp, s1)
        if frobenius_norm_sq(plain) != frobenius_norm_sq(permuted) or \
                entry_multiset(plain) != entry_multiset(permuted):
            iso_fail += 1
        sq_domain = IndexSet.rectangular((2, 2))
        sq_map = (IndexMap.linear(sq_domain, (1, 1)) if i % 2 == 0
                  else IndexMap.max_coord(sq_domain))
        report = kernel_preservation_check(sq_map, Permutation((2, 1)),
                                           trials=4, seed=rng.randrange(10 ** 6))
        if not report["passed"]:
            kernel_fail += 1
    n = max(trials, 1)
    return [_check("permutation-composition", n, comp_fail),
            _check("permutation-isometry", n, iso_fail),
            _check("kernel-preservation", n, kernel_fail)]


def _jordan_case_agrees(p, a, q, b) -> bool:
    closed = jordan_pair(p, a, q, b)
    product = kron(spec_matrix(JordanSpec.single(p, a)),
                   spec_matrix(JordanSpec.single(q, b)))
    oracle = jordan_oracle(product, [gq(a) * gq(b)])
    return closed == oracle.spec()


def rand_jordan_spec(rng: random.Random, max_dim: int = 4) -> JordanSpec:
    dim = rng.randint(1, max_dim)
    blocks = []
    while dim > 0:
        size = rng.randint(1, dim)
        blocks.append((size, gq(rng.randint(-2, 2))))
        dim -= size
    return JordanSpec(blocks)


def suite_jordan(trials: int, seed: int):
    """Closed forms versus the rank oracle; trials=0 runs the full 5x5 grid."""
    rng = random.Random(seed)
    pair_fail = nfold_fail = 0
    if trials == 0:
        cases = [(p, a, q, b)
                 for p in range(1, 6) for q in range(1, 6)
                 for a, b in ((2, 3), (2, 0), (0, 3), (0, 0))]
        for p, a, q, b in cases:
            if not _jordan_case_agrees(p, a, q, b):
                pair_fail += 1
        return [_check("pair-grid", len(cases), pair_fail, exhaustive=True)]
    for _ in range(trials):
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        a, b = rng.choice((0, 1, 2, -1)), rng.choice((0, 1, 3))
        if not _jordan_case_agrees(p, a, q, b):
            pair_fail += 1
    n_nfold = max(trials // 10, 1)
    for _ in range(n_nfold):
        specs = [rand_jordan_spec(rng, 2), rand_jordan_spec(rng, 2),
                 rand_jordan_spec(rng, 3)]
        closed = jordan_nfold(specs)
        oracle = jordan_oracle(nfold_product_matrix(specs), nfold_eigenvalues(specs))
        if closed != oracle.spec():
            nfold_fail += 1
    return [_check("pair-random", trials, pair_fail),
            _check("nfold-random", n_nfold, nfold_fail)]


def suite_tp_witness(trials: int, seed: int):
    """Random injective tables on rectangular sets are conjugated reshapes."""
    rng = random.Random(seed)
    failures = 0
    shapes = [(2, 2), (4,), (2, 3), (8,), (2, 2, 2), (3, 3), (16,), (4, 2, 2)]
    for i in range(max(trials, 1)):
        domain = IndexSet.rectangular(shapes[i % len(shapes)])
        fmap = rand_injective_table(rng, domain)
        witness = tp_similarity_witness(fmap)
        if not check_tp_witness(fmap, witness):
            failures += 1
    return [_check("tp-witness", max(trials, 1), failures)]


_SUITES = {
    "homomorphism": suite_homomorphism,
    "associativity": suite_associativity,
    "adjoint": suite_adjoint,
    "kappa": suite_kappa,
    "averaging": suite_averaging,
    "permutation": suite_permutation,
    "jordan": suite_jordan,
    "tp-witness": suite_tp_witness,
}


def run_suite(name: str, trials: int, seed: int) -> dict:
    """Run one suite; report pass/fail counts, deterministic in the seed."""
    if name not in _SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    checks = _SUITES[name](trials, seed)
    passed = sum(1 for c in checks if c["passed"])
    return {
        "suite": name,
        "trials": trials,
        "seed": seed,
        "checks": checks,
        "passed": passed,
        "failed": len(checks) - passed,
        "ok": passed == len(checks),
    }
