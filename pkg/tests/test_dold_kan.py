import random

from testutil import random_chain_complex, random_cochain_complex

from delmc import linalg
from delmc.dold_kan import (
    DenormalizedCosimplicial,
    DenormalizedSimplicial,
    normalize_cosimplicial,
    normalize_simplicial,
    shuffle_sign,
)
from delmc.rings import ArtinianLocal, PrimeField, Rationals
from delmc.simplicial import compose, delta, sigma

QQ = Rationals()
F3 = PrimeField(3)


def test_shuffle_sign_frozen():
    assert shuffle_sign([1], [2]) == 1
    assert shuffle_sign([2], [1]) == -1
    assert shuffle_sign([], [1, 2]) == 1
    assert shuffle_sign([2, 4], [1, 3]) == -1  # (2>1)+(4>1)+(4>3) = 3 inversions


def check_normalization_recovers(C, D, incl):
    """The projection onto the generator coordinates carries the honestly
    computed normalization back onto C isomorphically (field coefficients)."""
    R = C.ring
    transported = {}
    for n in range(D.top + 1):
        cols = []
        for v in incl[n]:
            # project to the (J = empty) coordinates
            proj = [R.zero()] * C.rank(n)
            for i, lab in enumerate(D.basis[n]):
                if lab[0] == () and not R.is_zero(v[i]):
                    proj[lab[2]] = R.add(proj[lab[2]], v[i])
            cols.append(proj)
        transported[n] = linalg.mat_from_cols(R, cols, nrows=C.rank(n))
        assert len(incl[n]) == C.rank(n)
        if C.rank(n):
            assert linalg.rank(R, transported[n]) == C.rank(n)
    return transported


def test_cosimplicial_denormalize_normalize_roundtrip():
    rng = random.Random(23)
    for ring in (QQ, F3):
        for _ in range(8):
            C = random_cochain_complex(ring, rng, length=3, max_rank=3)
            top = 4
            D = DenormalizedCosimplicial(C, top)
            M = D.module()
            M.verify()
            N, incl = normalize_cosimplicial(M)
            transported = check_normalization_recovers(C, D, incl)
            # the transported differential agrees with the original one
            for n in range(top):
                lhs = linalg.mat_mul(ring, C.diff(n), transported[n])
                rhs = linalg.mat_mul(ring, transported[n + 1], N.diff(n))
                assert linalg.mat_eq(ring, lhs, rhs)


def test_denormalized_operator_functoriality():
    rng = random.Random(5)
    C = random_cochain_complex(QQ, rng, length=2, max_rank=2)
    D = DenormalizedCosimplicial(C, 4)
    # X(beta2 o beta1) = X(beta2) X(beta1) on sampled monotone maps
    cases = [
        (delta(1, 3), delta(0, 4)),  # [2]->[3] then [3]->[4]
        (delta(2, 2), delta(2, 3)),
        (sigma(0, 2), delta(1, 4)),  # [3]->[2]? composition below checks shapes
    ]
    for b1, b2 in cases:
        n = len(b1) - 1
        mid = max(b1)
        N = max(b2)
        if mid > D.top or N > D.top or len(b2) - 1 != mid:
            continue
        M1 = D.operator_matrix(n, b1, mid)
        M2 = D.operator_matrix(mid, b2, N)
        MC = D.operator_matrix(n, compose(b2, b1), N)
        assert linalg.mat_eq(QQ, MC, linalg.mat_mul(QQ, M2, M1))


def test_cosimplicial_denormalize_over_artinian():
    A = ArtinianLocal(QQ, [("eps", 2)])
    e = A.generator("eps")
    from delmc.complexes import CochainComplex

    C = CochainComplex(A, {0: 1, 1: 1}, {0: [[e]]})
    C.validate()
    D = DenormalizedCosimplicial(C, 3)
    M = D.module()
    M.verify()
    N, incl = normalize_cosimplicial(M)
    assert N.rank(0) == 1 and N.rank(1) == 1 and N.rank(2) == 0
    # restricted differential is still multiplication by eps up to basis choice
    d0 = N.diff(0)
    assert A.eq(d0[0][0], e) or A.eq(d0[0][0], A.neg(e))


def test_simplicial_denormalize_normalize_roundtrip():
    rng = random.Random(31)
    for ring in (QQ, F3):
        for _ in range(8):
            C = random_chain_complex(ring, rng, length=3, max_rank=3)
            D = DenormalizedSimplicial(C, 4)
            M = D.module()
            M.verify()
            N, incl = normalize_simplicial(M)
            assert all(N.rank(n) == C.rank(n) for n in range(4))
            for n in range(1, 4):
                # transported differential matches
                R = ring
                cols = []
                for v in incl[n]:
                    proj = [R.zero()] * C.rank(n)
                    for i, lab in enumerate(D.basis[n]):
                        if lab[1] == n and not R.is_zero(v[i]):
                            proj[lab[2]] = R.add(proj[lab[2]], v[i])
                    cols.append(proj)
                Tn = linalg.mat_from_cols(R, cols, nrows=C.rank(n))
                cols = []
                for v in incl[n - 1]:
                    proj = [R.zero()] * C.rank(n - 1)
                    for i, lab in enumerate(D.basis[n - 1]):
                        if lab[1] == n - 1 and not R.is_zero(v[i]):
                            proj[lab[2]] = R.add(proj[lab[2]], v[i])
                    cols.append(proj)
                Tn1 = linalg.mat_from_cols(R, cols, nrows=C.rank(n - 1))
                lhs = linalg.mat_mul(R, C.diff(n), Tn)
                rhs = linalg.mat_mul(R, Tn1, N.diff(n))
                assert linalg.mat_eq(R, lhs, rhs)


def test_denormalized_concentrated_module():
    # C = field in cochain degree 1: D(C) has ranks 0,1,2,3,... and the
    # degeneracy conditions are nontrivial (the module is not concentrated)
    from delmc.complexes import CochainComplex

    C = CochainComplex(QQ, {0: 0, 1: 1}, {})
    D = DenormalizedCosimplicial(C, 3)
    assert [D.rank(n) for n in range(4)] == [0, 1, 2, 3]
    D.module().verify()
