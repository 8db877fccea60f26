from delmc.rings import PrimeField, Rationals
from delmc.simplicial import (
    SmallCategory,
    circle_cycle,
    compose,
    delta,
    epi_mono_factor,
    graph_complex,
    group_category,
    identity_map,
    nerve,
    point,
    product_sset,
    sigma,
    standard_simplex,
    surjections,
    tabulate,
    wedge_of_circles,
)

QQ = Rationals()


def test_ordinal_maps():
    assert delta(1, 3) == (0, 2, 3)
    assert sigma(0, 2) == (0, 0, 1, 2)
    assert compose(delta(0, 2), sigma(1, 1)) == (1, 2, 2)
    mono, epi = epi_mono_factor((0, 2, 2, 3))
    assert mono == (0, 2, 3) and epi == (0, 1, 1, 2)
    assert compose(mono, epi) == (0, 2, 2, 3)
    assert len(surjections(4, 2)) == 6  # C(4,2)
    assert surjections(2, 2) == [identity_map(2)]


def test_standard_simplex():
    K = standard_simplex(2)
    K.verify(3)
    assert len(K.simplices(0)) == 3
    assert len(K.simplices(1)) == 3 + 3  # three edges, three degenerate vertices
    assert len(K.nondeg[2]) == 1
    tri = K.nd((0, 1, 2), 2)
    assert K.face(2, 0, tri) == ((1, 2), (0, 1))
    assert K.face(2, 2, tri) == ((0, 1), (0, 1))


def test_circle_and_graph():
    K = circle_cycle(3)
    K.verify(3)
    e0 = K.nd("e0", 1)
    assert K.face(1, 1, e0) == ("v0", (0,))
    assert K.face(1, 0, e0) == ("v1", (0,))
    W = wedge_of_circles(2)
    W.verify(3)
    assert len(W.nondeg[1]) == 2


def test_tabulate_and_product():
    K = tabulate(standard_simplex(1), 3)
    K.verify()
    P = product_sset(K, K, 3)
    P.verify()
    # nondegenerate 1-simplices of Delta^1 x Delta^1: 5 strict chains
    # in the 2x2 grid poset
    assert len(P.nondegenerate(1)) == 5
    assert len(P.nondegenerate(2)) == 2


def test_nerve_of_z2():
    F2 = PrimeField(2)
    cat = group_category([0, 1], lambda a, b: (a + b) % 2, 0)
    cat.validate()
    N = nerve(cat, 4)
    N.verify(3)
    # B(Z/2): one nondegenerate simplex per level (g, g, ..., g)
    for n in range(1, 5):
        assert len(N.nondeg[n]) == 1
    # d_1 of (g, g) composes to the identity, giving a degenerate edge
    top = N.nd(("ar", ("1", "1")) if ("ar", ("1", "1")) in N.nondeg[2] else N.nondeg[2][0], 2)
    mid = N.face(2, 1, top)
    assert mid[1] == (0, 0)  # degenerate point


def test_homology_of_spaces():
    from delmc.simplicial import normalized_chains

    for K, h0, h1 in [
        (circle_cycle(3), 1, 1),
        (wedge_of_circles(2), 1, 2),
        (standard_simplex(2), 1, 0),
        (point(), 1, 0),
    ]:
        C = normalized_chains(K, QQ, 2)
        C.validate()
        assert C.homology(0) == h0
        assert C.homology(1) == h1
