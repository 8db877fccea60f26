"""Exponential cosimplicial groups: denormalization ranks, shuffle
brackets, gauge axioms, and the dual-route comparison certificate."""

from fractions import Fraction

import pytest

from delmc.cogroup import (
    MC_EQUATIONS,
    mc_cgp,
    mc_verify_cgp,
    verify_cosimplicial_group,
)
from delmc.dgla import (
    DGLA,
    ExpNilpotent,
    NormalizationRefusal,
    gauge_act,
    mc_verify,
)
from delmc.errors import EnumerationRefusal, TruncationRefusal
from delmc.expgroup import (
    ExpGroupModel,
    PositiveDenormalization,
    TrivialGauge,
    coefficient_grid,
    exp_comparison_check,
    exp_cosimplicial_group,
    grid_vectors,
    mc_residual_match_symbolic,
    moduli_scaling_rule,
    verify_gauge_axioms,
)
from delmc.instances import (
    build_finite_scheme_dgla,
    build_window_dgla,
    two_term_bracket_dgla,
)
from delmc.rings import ArtinianLocal, Rationals

QQ = Rationals()


def eps_ring(e):
    return ArtinianLocal(QQ, [("e", e)])


def abelian_line():
    return DGLA(QQ, {1: 1}, {}, {}, name="abelian-line")


def mixed_dgla(R=None):
    """L0 = <q>, L1 = <x, z>, L2 = <y>; dq = x, dz = y; [q, x] = z,
    [x, x] = y, every other bracket zero.  The gauge exp(t q) acts by
    a x + b z -> (a - t) x + (b + t a - t^2/2) z and the MC locus is
    the parabola b = -a^2/2."""
    R = R if R is not None else QQ
    one, zero = R.one(), R.zero()
    diff = {0: [[one], [zero]], 1: [[zero, one]]}
    br01 = [[[zero, one], [zero, zero]]]
    br11 = [[[one], [zero]], [[zero], [zero]]]
    return DGLA(
        R, {0: 1, 1: 2, 2: 1}, diff, {(0, 1): br01, (1, 1): br11}, name="mixed"
    )


def test_positive_denormalization_ranks_and_labels():
    P = PositiveDenormalization(abelian_line(), 3)
    assert [P.rank(n) for n in range(4)] == [0, 1, 2, 3]
    assert P.labels(2) == [((1,), 1, 0), ((2,), 1, 0)]
    P2 = PositiveDenormalization(two_term_bracket_dgla(1), 3)
    assert [P2.rank(n) for n in range(4)] == [0, 1, 3, 6]
    assert P2.labels(2) == [((1,), 1, 0), ((2,), 1, 0), ((), 2, 0)]


def test_shuffle_bracket_level_two():
    P = PositiveDenormalization(two_term_bracket_dgla(1), 2)
    t = P.tables[2]
    zero3 = [Fraction(0)] * 3
    assert t[0][1] == [Fraction(0), Fraction(0), Fraction(-1)]
    assert t[1][0] == [Fraction(0), Fraction(0), Fraction(1)]
    assert t[0][0] == zero3 and t[1][1] == zero3
    assert t[2][0] == zero3 and t[2][1] == zero3 and t[2][2] == zero3
    assert t[0][2] == zero3 and t[1][2] == zero3


def test_level_lie_axioms_and_cbh():
    for L in (two_term_bracket_dgla(1), mixed_dgla()):
        P = PositiveDenormalization(L, 3)
        for n in range(4):
            if P.rank(n):
                P.level_lie(n).check_axioms()
    P = PositiveDenormalization(two_term_bracket_dgla(1), 2)
    e0 = [Fraction(1), Fraction(0), Fraction(0)]
    e1 = [Fraction(0), Fraction(1), Fraction(0)]
    assert P.cbh_level(2, e0, e1) == [
        Fraction(1),
        Fraction(1),
        Fraction(-1, 2),
    ]


def test_symbolic_residual_identity():
    for L in (
        abelian_line(),
        two_term_bracket_dgla(1),
        mixed_dgla(),
        mixed_dgla(eps_ring(3)),
    ):
        out = mc_residual_match_symbolic(L)
        assert out["match"]
    out = mc_residual_match_symbolic(two_term_bracket_dgla(1))
    res = out["residual"]
    assert len(res) == 1
    assert res[0] == {(2,): Fraction(1, 2)}


def test_gauge_axioms_exp_nilpotent():
    A = eps_ring(3)
    LA = mixed_dgla(A)
    gauge = ExpNilpotent(LA)
    samples = [[A.one()], [A.generator("e")], [A.from_int(2)]]
    assert verify_gauge_axioms(LA, gauge, samples)


def test_broken_gauge_derivative_is_caught():
    L = mixed_dgla()

    class BrokenGauge(ExpNilpotent):
        def D_vec(self, g):
            return self.L.d_vec(0, g)

    class ScaledGauge(ExpNilpotent):
        def D_vec(self, g):
            return [2 * c for c in ExpNilpotent.D_vec(self, g)]

    g = [Fraction(1)]
    # first-order derivative: no longer a crossed homomorphism
    gauge = BrokenGauge(L)
    with pytest.raises(ValueError):
        verify_gauge_axioms(L, gauge, [g])
    G = exp_cosimplicial_group(L, gauge, top=3)
    samples = {n: [G.identity(n)] for n in range(4)}
    samples[0] = samples[0] + [G.embed_gauge(g)]
    with pytest.raises(ValueError, match="not a homomorphism"):
        verify_cosimplicial_group(G, samples=samples)
    # doubled derivative: still a crossed homomorphism, but it fails its
    # Maurer-Cartan equation, which surfaces as a coface identity failure
    gauge2 = ScaledGauge(L)
    with pytest.raises(ValueError):
        verify_gauge_axioms(L, gauge2, [g])
    G2 = exp_cosimplicial_group(L, gauge2, top=3)
    samples2 = {n: [G2.identity(n)] for n in range(4)}
    samples2[0] = samples2[0] + [G2.embed_gauge(g)]
    with pytest.raises(ValueError, match="coface identity"):
        verify_cosimplicial_group(G2, samples=samples2)


def test_comparison_two_term_over_artinian():
    A = eps_ring(3)
    L = two_term_bracket_dgla(1, ring=A)
    gauge = TrivialGauge(L)
    grid = grid_vectors(A, 1, 1)
    report = exp_comparison_check(L, gauge, grid, [gauge.identity()], top=3)
    assert report["ok"]
    assert report["grid"]["size"] == 27
    # MC needs c^2 = 0, so c must be a multiple of e^2
    assert report["grid"]["mc_count"] == 3
    assert report["orbits"]["mode"] == "sampled"
    assert report["orbits"]["orbit_count"] == 3


def test_comparison_mixed_over_rationals():
    L = mixed_dgla()
    gauge = ExpNilpotent(L)
    grid = grid_vectors(QQ, 2, 2)
    gsamples = [[Fraction(1)], [Fraction(2)], [Fraction(-2)]]
    report = exp_comparison_check(L, gauge, grid, gsamples, top=3)
    assert report["ok"]
    assert report["grid"]["size"] == 25
    assert report["grid"]["mc_count"] == 3
    assert report["orbits"]["mode"] == "sampled"
    assert report["orbits"]["orbit_count"] == 1
    assert report["orbits"]["class_sizes"] == [3]
    to_g, from_g = report["to_group"], report["from_group"]
    x = [Fraction(2), Fraction(-2)]
    assert from_g(to_g(x)) == x


def test_comparison_mixed_over_artinian():
    A = eps_ring(3)
    L = mixed_dgla(A)
    gauge = ExpNilpotent(L)
    grid = grid_vectors(A, 2, 1)
    gsamples = [[A.one()], [A.generator("e")]]
    report = exp_comparison_check(L, gauge, grid, gsamples, top=3)
    assert report["ok"]
    assert report["grid"]["mc_count"] == 3
    assert report["orbits"]["orbit_count"] == 3


def test_comparison_moduli_instances_orbit_counts():
    """Finite-scheme rank 1 and window [1,2] with one letter each: every
    coordinate is Maurer-Cartan and gauge scaling leaves one orbit per
    unit-scaling class of the coefficient ring."""
    cases = [
        build_finite_scheme_dgla(1),
        build_window_dgla((1, 2), lambda w: 1),
    ]
    for moduli in cases:
        for e, expected in ((2, 3), (3, 4)):
            A = eps_ring(e)
            L = moduli.dgla_over(A)
            gauge = moduli.gauge_over(A)
            rule = moduli_scaling_rule(moduli, A)
            grid = [[c] for c in coefficient_grid(A, 1)]
            gsamples = [
                rule.gauge_of_unit(A.from_int(2)),
                rule.gauge_of_unit(A.add(A.one(), A.generator("e"))),
            ]
            report = exp_comparison_check(
                L, gauge, grid, gsamples, top=3, orbit_rule=rule
            )
            assert report["ok"]
            assert report["grid"]["mc_count"] == len(grid)
            assert report["orbits"]["mode"] == "normal-forms"
            assert report["orbits"]["orbit_count"] == expected


def test_unit_scaling_rule_connects():
    A = eps_ring(3)
    moduli = build_finite_scheme_dgla(1)
    L = moduli.dgla_over(A)
    gauge = moduli.gauge_over(A)
    rule = moduli_scaling_rule(moduli, A)
    q = QQ
    c = A.from_coeffs((q.from_int(2), q.one(), q.zero()))
    g, form = rule.connect([c])
    assert A.eq(form[0], A.one())
    assert gauge_act(L, gauge, g, [c]) == form
    c2 = A.from_coeffs((q.zero(), q.one(), q.one()))
    g2, form2 = rule.connect([c2])
    assert A.eq(form2[0], A.generator("e"))
    assert gauge_act(L, gauge, g2, [c2]) == form2


def test_refusals_and_truncation_guards():
    L = two_term_bracket_dgla(1)
    G = exp_cosimplicial_group(L, top=3)
    with pytest.raises(EnumerationRefusal):
        G.elements(1)
    try:
        mc_cgp(G)
    except EnumerationRefusal as err:
        assert tuple(err.equations) == MC_EQUATIONS
    else:
        raise AssertionError("expected an enumeration refusal")
    G1 = exp_cosimplicial_group(L, top=1)
    with pytest.raises(TruncationRefusal):
        mc_verify_cgp(G1, G1.embed_mc([Fraction(0)]))
    G2 = exp_cosimplicial_group(L, top=2)
    with pytest.raises(TruncationRefusal):
        G2.coface(2, 0, G2.identity(2))
    with pytest.raises(NormalizationRefusal):
        moduli_scaling_rule(build_finite_scheme_dgla(2), eps_ring(2))


def test_descriptor_and_gauge_tag_rejection():
    L = mixed_dgla()
    G = exp_cosimplicial_group(L, ExpNilpotent(L), top=2)
    d = G.descriptor()
    assert d["kind"] == "exponential-semidirect"
    assert d["positive_ranks"]["1"] == 2
    with pytest.raises(ValueError):
        G.mc_coordinates((G.P.embed_level_one([Fraction(0), Fraction(0)]), [Fraction(1)]))
