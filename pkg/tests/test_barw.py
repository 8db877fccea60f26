import random

import pytest
from testutil import random_chain_complex

from delmc.barw import (
    BisimplicialModule,
    ConstantSimplicialGroup,
    ConstantSimplicialGroupoid,
    FreeSimplicialRing,
    bar_v_face,
    bar_v_level,
    bar_v_sset,
    compare_diag_wbar_homology,
    constant_vertical_bisset,
    diag_module,
    discrete_groupoid,
    external_tensor,
    one_object_groupoid,
    phi_bar_element,
    shuffle_product,
    verify_phi_bar,
    verify_simplicial_groupoid,
    wbar_bisimplicial_level,
    wbar_bisimplicial_module,
    wbar_bisimplicial_sset,
    wbar_groupoid_level,
    wbar_groupoid_sset,
)
from delmc.complexes import ChainComplex
from delmc.dold_kan import DenormalizedSimplicial, normalize_simplicial
from delmc.errors import TruncationRefusal
from delmc.groups import cyclic, symmetric
from delmc.rings import PrimeField, Rationals
from delmc.simplicial import (
    group_category,
    nerve,
    normalized_chains,
    standard_simplex,
    tabulate,
)

QQ = Rationals()
F2 = PrimeField(2)


def circle_complex(R):
    """Rank one in degrees 0 and 1 with zero differential."""
    return ChainComplex(R, {0: 1, 1: 1}, {1: [[R.zero()]]})


def interval_complex(R):
    """Rank one in degrees 0 and 1 with an isomorphism differential."""
    return ChainComplex(R, {0: 1, 1: 1}, {1: [[R.one()]]})


# ---------------------------------------------------------------------------
# groupoids and the classifying space


def test_groupoid_fixtures_validate():
    one_object_groupoid(cyclic(2)).validate()
    one_object_groupoid(symmetric(3)).validate()
    discrete_groupoid(["a", "b"]).validate()
    verify_simplicial_groupoid(ConstantSimplicialGroupoid(one_object_groupoid(cyclic(2)), 3))


def test_wbar_groupoid_levels_and_identities():
    Gamma = ConstantSimplicialGroupoid(one_object_groupoid(cyclic(2)), 3)
    S = wbar_groupoid_sset(Gamma)
    assert [len(S.simplices(n)) for n in range(4)] == [1, 2, 4, 8]
    S.verify()

    disc = ConstantSimplicialGroupoid(discrete_groupoid(["a", "b"]), 3)
    T = wbar_groupoid_sset(disc)
    assert [len(T.simplices(n)) for n in range(4)] == [2, 2, 2, 2]
    T.verify()


def test_wbar_groupoid_classical_homology():
    """The one-object groupoid on Z/2 classifies the group: over F2 the
    first three homology ranks are all one, over the rationals the
    positive ones vanish."""
    Gamma = ConstantSimplicialGroupoid(one_object_groupoid(cyclic(2)), 3)
    S = wbar_groupoid_sset(Gamma)
    C2 = normalized_chains(S, F2, 3)
    assert [C2.homology(n) for n in range(3)] == [1, 1, 1]
    C0 = normalized_chains(S, QQ, 3)
    assert [C0.homology(n) for n in range(3)] == [1, 0, 0]


def test_wbar_groupoid_truncation_refusal():
    Gamma = ConstantSimplicialGroupoid(one_object_groupoid(cyclic(2)), 2)
    with pytest.raises(TruncationRefusal):
        wbar_groupoid_level(Gamma, 3)


# ---------------------------------------------------------------------------
# the product model and the comparison bijection


def test_bar_v_levels_and_identities():
    G = ConstantSimplicialGroup(cyclic(3), 3)
    S = bar_v_sset(G)
    assert [len(S.simplices(n)) for n in range(4)] == [1, 3, 9, 27]
    S.verify()


def test_phi_bar_cyclic_two():
    assert verify_phi_bar(cyclic(2), 3) == [1, 2, 4, 8]


def test_phi_bar_symmetric_three():
    assert verify_phi_bar(symmetric(3), 3) == [1, 6, 36, 216]


def test_phi_bar_twists_by_inverse_zeroth_face():
    """Frozen level-2 value in Z/4: (3, 2) lands on arrows (3, 2 - 3)."""
    G = ConstantSimplicialGroup(cyclic(4), 3)
    obs, hs = phi_bar_element(G, 2, (3, 2))
    assert obs == ("*", "*", "*")
    assert [h[1] for h in hs] == [3, (2 - 3) % 4]
    d0 = bar_v_face(G, 2, 0, (3, 2))
    assert d0 == ((2 - 3) % 4,)


# ---------------------------------------------------------------------------
# bisimplicial sets


def test_constant_vertical_wbar_recovers_base():
    """With identity vertical operators the classifying space of the
    bisimplicial set projects isomorphically onto the base via the last
    coordinate."""
    grp = cyclic(2)
    K = tabulate(nerve(group_category(grp.elements(), grp.mul, grp.id), 3), 3)
    X = constant_vertical_bisset(K, 3)
    X.verify()
    W = wbar_bisimplicial_sset(X)
    W.verify()
    for n in range(4):
        level = W.simplices(n)
        proj = [w[-1] for w in level]
        assert sorted(map(repr, proj)) == sorted(map(repr, K.simplices(n)))
        assert len(set(proj)) == len(level)
    for n in range(1, 4):
        for w in W.simplices(n):
            for i in range(n + 1):
                assert W.face(n, i, w)[-1] == K.face(n, i, w[-1])
    for n in range(3):
        for w in W.simplices(n):
            for i in range(n + 1):
                assert W.degen(n, i, w)[-1] == K.degen(n, i, w[-1])


def test_wbar_bisimplicial_truncation_refusal():
    grp = cyclic(2)
    K = tabulate(nerve(group_category(grp.elements(), grp.mul, grp.id), 2), 2)
    X = constant_vertical_bisset(K, 2)
    with pytest.raises(TruncationRefusal):
        wbar_bisimplicial_level(X, 3)


# ---------------------------------------------------------------------------
# bisimplicial modules


def torus_bimodule(R):
    D = DenormalizedSimplicial(circle_complex(R), 3).module()
    return external_tensor(D, D)


def test_external_tensor_verifies():
    X = torus_bimodule(QQ)
    X.verify()
    assert X.rank(0, 0) == 1
    assert X.rank(1, 1) == 4
    assert X.rank(3, 3) == 16


def test_external_tensor_corruption_is_caught():
    X = torus_bimodule(QQ)
    M = X.face_h[(1, 1, 0)]
    M[0][0] = QQ.add(M[0][0], QQ.one())
    with pytest.raises(ValueError):
        X.verify()


def test_torus_diag_and_wbar_homology():
    for R in (QQ, F2):
        X = torus_bimodule(R)
        assert compare_diag_wbar_homology(X, through=2) == [1, 2, 1]


def test_torus_wbar_ranks_match_total_complex_count():
    """The equalizer levels are free of the same ranks as the levelwise
    denormalization of the total complex: total ranks (1, 2, 1) give
    binomial-weighted sums 1, 3, 6, 10."""
    X = torus_bimodule(QQ)
    W = wbar_bisimplicial_module(X)
    assert [W.rank(n) for n in range(4)] == [1, 3, 6, 10]
    NW, _ = normalize_simplicial(W)
    assert [NW.rank(n) for n in range(4)] == [1, 2, 1, 0]


def test_acyclic_tensor_kills_homology():
    D1 = DenormalizedSimplicial(interval_complex(QQ), 3).module()
    D2 = DenormalizedSimplicial(circle_complex(QQ), 3).module()
    X = external_tensor(D1, D2)
    assert compare_diag_wbar_homology(X, through=2) == [0, 0, 0]


def test_random_diag_vs_wbar_homology():
    rng = random.Random(11)
    for _ in range(3):
        C1 = random_chain_complex(QQ, rng, length=3, max_rank=1)
        C2 = random_chain_complex(QQ, rng, length=3, max_rank=1)
        X = external_tensor(
            DenormalizedSimplicial(C1, 3).module(),
            DenormalizedSimplicial(C2, 3).module(),
        )
        compare_diag_wbar_homology(X, through=2)
    C1 = random_chain_complex(F2, rng, length=3, max_rank=2)
    C2 = random_chain_complex(F2, rng, length=3, max_rank=2)
    X = external_tensor(
        DenormalizedSimplicial(C1, 3).module(),
        DenormalizedSimplicial(C2, 3).module(),
    )
    compare_diag_wbar_homology(X, through=2)


def test_compare_refuses_shallow_truncation():
    X = torus_bimodule(QQ)
    with pytest.raises(TruncationRefusal):
        compare_diag_wbar_homology(X, through=3)


def test_diag_of_constant_vertical_is_base_module():
    """Sanity anchor for the diagonal: constant vertical direction gives
    back the horizontal module."""
    R = QQ
    Mh = DenormalizedSimplicial(circle_complex(R), 3).module()
    ranks = {(m, n): Mh.rank(m) for m in range(4) for n in range(4)}
    from delmc import linalg

    face_h = {
        (m, n, i): Mh.face[(m, i)] for m in range(1, 4) for n in range(4) for i in range(m + 1)
    }
    degen_h = {
        (m, n, i): Mh.degen[(m, i)] for m in range(3) for n in range(4) for i in range(m + 1)
    }
    face_v = {
        (m, n, i): linalg.identity(R, Mh.rank(m))
        for m in range(4)
        for n in range(1, 4)
        for i in range(n + 1)
    }
    degen_v = {
        (m, n, i): linalg.identity(R, Mh.rank(m))
        for m in range(4)
        for n in range(3)
        for i in range(n + 1)
    }
    X = BisimplicialModule(R, 3, ranks, face_h, degen_h, face_v, degen_v)
    X.verify()
    D = diag_module(X)
    for n in range(4):
        assert D.rank(n) == Mh.rank(n)
        if n >= 1:
            for i in range(n + 1):
                assert linalg.mat_eq(R, D.face[(n, i)], Mh.face[(n, i)])
    ND, _ = normalize_simplicial(D)
    assert [ND.homology(n) for n in range(3)] == [1, 1, 0]


# ---------------------------------------------------------------------------
# shuffle product


def shuffle_fixture():
    K = tabulate(standard_simplex(1), 3)
    S = FreeSimplicialRing(K, QQ)
    verts = list(K.simplices(0))
    degens = {K.degen(0, 0, v) for v in verts}
    edge = [x for x in K.simplices(1) if x not in degens][0]
    v0 = K.face(1, 1, edge)
    v1 = K.face(1, 0, edge)
    return K, S, edge, v0, v1


def test_shuffle_degree_zero_is_ring_product():
    K, S, edge, v0, v1 = shuffle_fixture()
    P0 = S.level(0)
    a = S.generator(0, v0)
    b = P0.add(S.generator(0, v1), P0.one())
    assert P0.eq(shuffle_product(S, 0, 0, a, b), P0.mul(a, b))


def test_shuffle_one_one_frozen_terms():
    K, S, edge, v0, v1 = shuffle_fixture()
    P2 = S.level(2)
    e = S.generator(1, edge)
    f = S.generator(1, K.degen(0, 0, v0))
    lhs = shuffle_product(S, 1, 1, e, f)
    expected = P2.sub(
        P2.mul(S.degen(1, 1, e), S.degen(1, 0, f)),
        P2.mul(S.degen(1, 0, e), S.degen(1, 1, f)),
    )
    assert P2.eq(lhs, expected)


def test_shuffle_graded_commutativity():
    K, S, edge, v0, v1 = shuffle_fixture()
    P1 = S.level(1)
    P2 = S.level(2)
    P3 = S.level(3)
    e = S.generator(1, edge)
    s0 = S.generator(1, K.degen(0, 0, v0))
    s1 = S.generator(1, K.degen(0, 0, v1))
    a = P1.add(e, P1.mul(s0, s0))
    b = P1.sub(P1.mul(e, s1), P1.from_int(3))
    assert P2.eq(shuffle_product(S, 1, 1, a, b), P2.neg(shuffle_product(S, 1, 1, b, a)))
    assert P2.is_zero(shuffle_product(S, 1, 1, a, a))
    two_cell = S.generator(2, K.simplices(2)[0])
    B = P2.add(P2.mul(two_cell, two_cell), two_cell)
    assert P3.eq(shuffle_product(S, 1, 2, a, B), shuffle_product(S, 2, 1, B, a))


def test_shuffle_associativity():
    K, S, edge, v0, v1 = shuffle_fixture()
    P1 = S.level(1)
    P3 = S.level(3)
    e = S.generator(1, edge)
    s0 = S.generator(1, K.degen(0, 0, v0))
    s1 = S.generator(1, K.degen(0, 0, v1))
    a = P1.sub(e, s0)
    b = P1.add(P1.mul(e, e), s1)
    c = P1.add(s0, P1.from_int(2))
    left = shuffle_product(S, 2, 1, shuffle_product(S, 1, 1, a, b), c)
    right = shuffle_product(S, 1, 2, a, shuffle_product(S, 1, 1, b, c))
    assert P3.eq(left, right)


def test_shuffle_leibniz():
    K, S, edge, v0, v1 = shuffle_fixture()
    P1 = S.level(1)
    e = S.generator(1, edge)
    s0 = S.generator(1, K.degen(0, 0, v0))
    s1 = S.generator(1, K.degen(0, 0, v1))
    a = P1.add(P1.mul(e, s1), e)
    b = P1.sub(P1.mul(e, e), s0)
    prod = shuffle_product(S, 1, 1, a, b)
    lhs = S.moore_boundary(2, prod)
    da = S.moore_boundary(1, a)
    db = S.moore_boundary(1, b)
    rhs = S.level(1).sub(
        shuffle_product(S, 0, 1, da, b),
        shuffle_product(S, 1, 0, a, db),
    )
    assert S.level(1).eq(lhs, rhs)

    prod21 = shuffle_product(S, 2, 1, shuffle_product(S, 1, 1, a, b), a)
    lhs3 = S.moore_boundary(3, prod21)
    ab = shuffle_product(S, 1, 1, a, b)
    dab = S.moore_boundary(2, ab)
    rhs3 = S.level(2).add(
        shuffle_product(S, 1, 1, dab, a),
        shuffle_product(S, 2, 0, ab, da),
    )
    assert S.level(2).eq(lhs3, rhs3)


def test_shuffle_of_normalized_is_normalized():
    K, S, edge, v0, v1 = shuffle_fixture()
    P1 = S.level(1)
    e = S.generator(1, edge)
    s0 = S.generator(1, K.degen(0, 0, v0))
    u = P1.sub(e, s0)
    u2 = P1.sub(P1.mul(e, e), P1.mul(s0, s0))
    assert S.is_normalized(1, u)
    assert S.is_normalized(1, u2)
    w = shuffle_product(S, 1, 1, u, u2)
    assert not S.level(2).is_zero(w)
    assert S.is_normalized(2, w)
