import random
from fractions import Fraction
from itertools import product

from delmc import linalg
from delmc.rings import ArtinianLocal, PrimeField, Rationals

QQ = Rationals()
F2 = PrimeField(2)
F3 = PrimeField(3)


def brute_force_solutions(R, A, y, n):
    """Oracle: enumerate the full solution set over a finite ring."""
    sols = []
    for cand in product(R.elements(), repeat=n):
        if linalg.vec_eq(R, linalg.mat_vec(R, A, list(cand)), y):
            sols.append(tuple(cand))
    return set(sols)


def span_set(F, particular, kernel):
    """All particular-plus-kernel-combination vectors over a finite field."""
    out = set()
    for coeffs in product(F.elements(), repeat=len(kernel)):
        v = list(particular)
        for c, b in zip(coeffs, kernel):
            v = linalg.vec_add(F, v, linalg.vec_scal(F, c, b))
        out.add(tuple(v))
    return out


def test_solve_f2_frozen_example():
    # f = [[1,1],[0,0]] over F_2, y = (1,0)
    A = [[1, 1], [0, 0]]
    y = [1, 0]
    oracle = brute_force_solutions(F2, A, y, 2)
    assert oracle == {(1, 0), (0, 1)}
    x, kern = linalg.solve(F2, A, y)
    assert tuple(x) in oracle
    assert len(kern) == 1 and tuple(kern[0]) == (1, 1)
    assert span_set(F2, x, kern) == oracle


def test_solve_dual_numbers_frozen_example():
    # multiplication by eps on QQ[eps]/eps^2, y = eps: solution 1, kernel {eps}
    A = ArtinianLocal(QQ, [("eps", 2)])
    e = A.generator("eps")
    sol = linalg.solve_linear(A, [[e]], [e])
    assert sol is not None
    x, kern = sol
    # x - 1 must lie in the kernel of eps, i.e. be a multiple of eps
    diff = A.sub(x[0], A.one())
    assert QQ.is_zero(A.reduce(diff))
    assert A.is_zero(A.sub(A.mul(e, x[0]), e))
    assert len(kern) == 1 and A.eq(kern[0][0], e)
    # and eps * x = 1 has no solution
    assert linalg.solve_linear(A, [[e]], [A.one()]) is None


def test_solve_artinian_matches_enumeration():
    A = ArtinianLocal(F2, [("eps", 2)])
    e = A.generator("eps")
    rng = random.Random(7)
    elems = A.elements()
    for _ in range(20):
        M = [[elems[rng.randrange(4)] for _ in range(2)] for _ in range(2)]
        y = [elems[rng.randrange(4)] for _ in range(2)]
        oracle = brute_force_solutions(A, M, y, 2)
        sol = linalg.solve_linear(A, M, y)
        if sol is None:
            assert oracle == set()
        else:
            x, kern = sol
            got = set()
            for coeffs in product(F2.elements(), repeat=len(kern)):
                v = list(x)
                for c, b in zip(coeffs, kern):
                    if c:
                        v = linalg.vec_add(A, v, b)
                got.add(tuple(v))
            assert got == oracle


def test_rref_and_kernel_over_q():
    M = [
        [Fraction(1), Fraction(2), Fraction(1)],
        [Fraction(2), Fraction(4), Fraction(2)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]
    assert linalg.rank(QQ, M) == 2
    kern = linalg.kernel_basis(QQ, M)
    assert len(kern) == 1
    assert linalg.vec_is_zero(QQ, linalg.mat_vec(QQ, M, kern[0]))


def test_empty_shapes():
    assert linalg.kernel_basis(QQ, [], ncols=3) == [
        [Fraction(1), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
    assert linalg.rank(QQ, [], ncols=2) == 0
    sol = linalg.solve(QQ, [], [], ncols=2)
    assert sol is not None and sol[0] == [Fraction(0), Fraction(0)]


def test_restrict_matrix():
    # map (x,y,z) -> (x+y, y+z); restrict to the subspace spanned by (1,1,0) -> image coords
    M = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    dom = [[Fraction(1), Fraction(1), Fraction(0)]]
    cod = [[Fraction(2), Fraction(1)]]
    R = linalg.restrict_matrix(QQ, M, dom, cod)
    assert R == [[Fraction(1)]]


def test_homology_basis_and_dim():
    # 0 -> Q --0--> Q^2 --(sum)--> Q -> 0 at the middle spot
    d_out = [[Fraction(1), Fraction(1)]]
    d_in = [[Fraction(0)], [Fraction(0)]]
    h = linalg.homology(QQ, d_out, d_in, 2)
    assert h["dim"] == 1
    v = h["basis"][0]
    assert linalg.vec_is_zero(QQ, linalg.mat_vec(QQ, d_out, v))
