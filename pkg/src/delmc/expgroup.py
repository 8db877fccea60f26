"""Exponential cosimplicial groups of differential graded Lie algebras.

The strictly positive part of a DGLA denormalizes to a cosimplicial Lie
algebra: the levelwise bracket is the shuffle-signed transfer computed in
``dold_kan.bilinear_level_table``.  Each level is nilpotent (for the
truncations this package builds, every weight-5 bracket vanishes, and the
Campbell-Baker-Hausdorff helper verifies that before trusting its
truncation), so the levels exponentiate to groups.  Attaching a gauge
group as a semidirect factor, acting through its adjoint representation
blockwise on the denormalized labels, gives a cosimplicial group:

    level n      exp(positive denormalization at n) x gauge carrier
    sigma^i      (a, g) -> (sigma^i a, g)
    d^i, i > 0   (a, g) -> (d^i a, g)
    d^0          (a, g) -> (d^0 a * exp((d^2)^n D(g)), g)

where D is the gauge group's derivative map into level 1.  The
Maurer-Cartan elements of this group are exactly the Maurer-Cartan
elements of the Lie algebra (with identity gauge tag), the level-0 gauge
action matches ad_g - D, and the orbit groupoids agree.

``exp_comparison_check`` certifies all of that: levelwise Lie axioms,
cosimplicial group identities on mixed samples, gauge-group axioms, a
symbolic identity between the two Maurer-Cartan residuals over a
polynomial ring, elementwise agreement on coordinate grids, gauge
intertwining, and orbit decompositions (through unit-scaling normal
forms when available, else by sampled partition comparison).
"""

from fractions import Fraction
from itertools import product as iproduct

from . import dgla as dgla_mod
from . import linalg
from .cogroup import gauge_act_cgp, mc_verify_cgp, verify_cosimplicial_group
from .complexes import CochainComplex
from .dgla import (
    DGLA,
    NormalizationRefusal,
    cbh,
    gauge_act,
    mc_residual,
    mc_verify,
    require_char_zero,
)
from .dold_kan import DenormalizedCosimplicial
from .errors import EnumerationRefusal, TruncationRefusal
from .poly import PolyRing


def positive_part(L):
    """The strictly positive degrees of a DGLA as a cochain complex."""
    ranks = {m: L.rank(m) for m in L.degrees() if m >= 1}
    diffs = {m: L.d_matrix(m) for m in ranks}
    return CochainComplex(L.ring, ranks, diffs)


class PositiveDenormalization:
    """Denormalization of the positive part, with levelwise Lie structure.

    Level-n basis labels are (J, m, b) with J the set of coface indices
    applied to the b-th generator of degree m.  ``level_lie(n)`` wraps the
    shuffle-bracket table of level n as a one-level Lie algebra so the
    generic Campbell-Baker-Hausdorff helper applies.
    """

    def __init__(self, L, top):
        require_char_zero(L.ring)
        self.L = L
        self.ring = L.ring
        self.top = top
        self.complex = positive_part(L)
        self.denorm = DenormalizedCosimplicial(self.complex, top)
        self.carrier = self.denorm.module()
        self.tables = self.denorm.bilinear_level_table(self._pairing)
        self._lie = {}

    def _pairing(self, p, q, b1, b2):
        if self.L.rank(p + q) == 0:
            return None
        return self.L.bracket_table(p, q)[b1][b2]

    def rank(self, n):
        return self.denorm.rank(n)

    def labels(self, n):
        return self.denorm.basis[n]

    def index_of(self, n, label):
        return self.denorm.index[n][label]

    def level_lie(self, n):
        if n not in self._lie:
            self._lie[n] = DGLA(
                self.ring,
                {0: self.rank(n)},
                {},
                {(0, 0): self.tables[n]},
                name="denormalized-level-%d" % n,
            )
        return self._lie[n]

    def cbh_level(self, n, x, y):
        return cbh(self.level_lie(n), x, y)

    def coface_vec(self, n, i, a):
        if (n, i) not in self.carrier.coface:
            raise TruncationRefusal(
                "coface out of level %d exceeds truncation %d" % (n, self.top)
            )
        return linalg.mat_vec(self.ring, self.carrier.coface[(n, i)], a)

    def codeg_vec(self, n, i, a):
        return linalg.mat_vec(self.ring, self.carrier.codeg[(n, i)], a)

    def embed_level_one(self, x):
        v = linalg.zero_vec(self.ring, self.rank(1))
        for b, c in enumerate(x):
            v[self.index_of(1, ((), 1, b))] = c
        return v

    def normalized_slots(self, n):
        """Positions of the degree-n generators inside level n."""
        return [self.index_of(n, ((), n, b)) for b in range(self.L.rank(n))]

    def push_gauge_derivative(self, dg, n):
        """(d^2)^n applied to a level-1 vector: the 0th-coface correction."""
        v = self.embed_level_one(dg)
        for lev in range(1, n + 1):
            v = self.coface_vec(lev, 2, v)
        return v


class TrivialGauge:
    """One-element gauge group: trivial adjoint action, zero derivative."""

    kind = "trivial"

    def __init__(self, L):
        self.L = L

    def identity(self):
        return "1"

    def mul(self, g, h):
        return "1"

    def inv(self, g):
        return "1"

    def ad_matrix(self, g, n):
        return linalg.identity(self.L.ring, self.L.rank(n))

    def D_vec(self, g):
        return linalg.zero_vec(self.L.ring, self.L.rank(1))

    def elements(self):
        return ["1"]


def _gauge_eq(R, g, h):
    if isinstance(g, str) or isinstance(h, str):
        return g == h
    if g and isinstance(g[0], list):
        return linalg.mat_eq(R, g, h)
    return linalg.vec_eq(R, list(g), list(h))


def _gauge_key(R, g):
    if isinstance(g, str):
        return g
    if g and isinstance(g[0], list):
        return tuple(tuple(R.show(c) for c in row) for row in g)
    return tuple(R.show(c) for c in g)


class ExpGroupModel:
    """Cosimplicial group exp(positive denormalization) x gauge group.

    Elements at level n are pairs (a, g): a the logarithm coordinates in
    the level-n Lie algebra, g a gauge-group element.  Multiplication is
    (a, g)(b, h) = (a * ad_g(b), gh) with * the Campbell-Baker-Hausdorff
    product; operators fix g and act on a, except the 0th coface which
    also multiplies by the pushed-up gauge derivative exp((d^2)^n D(g)).
    Implements the cosimplicial-group duck interface of ``cogroup``.
    """

    kind = "exponential-semidirect"

    def __init__(self, L, gauge=None, top=3):
        require_char_zero(L.ring)
        self.L = L
        self.ring = L.ring
        self.top = top
        self.gauge = gauge if gauge is not None else TrivialGauge(L)
        self.P = PositiveDenormalization(L, top)
        self._ad_cache = {}

    def rank(self, n):
        return self.P.rank(n)

    def _ad(self, g, n):
        """Blockwise adjoint action of a gauge element on level n."""
        key = (_gauge_key(self.ring, g), n)
        if key in self._ad_cache:
            return self._ad_cache[key]
        R = self.ring
        labels = self.P.labels(n)
        M = linalg.zeros(R, len(labels), len(labels))
        admats = {}
        for col, (J, m, b) in enumerate(labels):
            if m not in admats:
                admats[m] = self.gauge.ad_matrix(g, m)
            A = admats[m]
            for b2 in range(self.L.rank(m)):
                c = A[b2][b]
                if not R.is_zero(c):
                    M[self.P.index_of(n, (J, m, b2))][col] = c
        self._ad_cache[key] = M
        return M

    def _apply_ad(self, g, n, a):
        return linalg.mat_vec(self.ring, self._ad(g, n), a)

    def identity(self, n):
        return (linalg.zero_vec(self.ring, self.rank(n)), self.gauge.identity())

    def mul(self, n, x, y):
        a, g = x
        b, h = y
        return (
            self.P.cbh_level(n, a, self._apply_ad(g, n, b)),
            self.gauge.mul(g, h),
        )

    def inv(self, n, x):
        a, g = x
        gi = self.gauge.inv(g)
        return (
            linalg.vec_neg(self.ring, self._apply_ad(gi, n, a)),
            gi,
        )

    def eq(self, n, x, y):
        return linalg.vec_eq(self.ring, x[0], y[0]) and _gauge_eq(
            self.ring, x[1], y[1]
        )

    def show(self, n, x):
        return (
            tuple(self.ring.show(c) for c in x[0]),
            _gauge_key(self.ring, x[1]),
        )

    def coface(self, n, i, x):
        a, g = x
        out = self.P.coface_vec(n, i, a)
        if i == 0:
            corr = self.P.push_gauge_derivative(self.gauge.D_vec(g), n)
            out = self.P.cbh_level(n + 1, out, corr)
        return (out, g)

    def codeg(self, n, i, x):
        a, g = x
        return (self.P.codeg_vec(n, i, a), g)

    def elements(self, n):
        raise EnumerationRefusal(
            "exponential levels are infinite over characteristic-0 coefficients"
        )

    def embed_gauge(self, g):
        """A gauge element as a level-0 element."""
        return (linalg.zero_vec(self.ring, self.rank(0)), g)

    def embed_mc(self, x):
        """A level-1 Lie coordinate vector as a group element with identity
        gauge tag; the Maurer-Cartan bijection."""
        return (self.P.embed_level_one(x), self.gauge.identity())

    def mc_coordinates(self, w):
        """Inverse of ``embed_mc``; requires an identity gauge tag."""
        a, g = w
        if not _gauge_eq(self.ring, g, self.gauge.identity()):
            raise ValueError("element carries a nontrivial gauge tag")
        return [a[s] for s in self.P.normalized_slots(1)]

    def descriptor(self):
        return {
            "version": 1,
            "kind": self.kind,
            "ring": self.ring.descriptor(),
            "top": self.top,
            "positive_ranks": {
                str(n): self.rank(n) for n in range(self.top + 1)
            },
            "gauge": getattr(
                self.gauge, "kind", self.gauge.__class__.__name__
            ),
        }


def exp_cosimplicial_group(L, gauge=None, top=3):
    """Build the exponential cosimplicial group of a DGLA with gauge."""
    return ExpGroupModel(L, gauge, top=top)


def mc_residual_match_symbolic(L, varname="w"):
    """Certify, as a polynomial identity in generic level-1 coordinates,
    that the group-side Maurer-Cartan defect equals the Lie-side residual
    embedded in the degree-2 generator slots.

    Returns {"match", "defect", "residual", "ring"}.
    """
    k1 = L.rank(1)
    P = PolyRing(L.ring, ["%s%d" % (varname, i) for i in range(k1)])
    LP = L.change_ring(P, P.constant)
    G = ExpGroupModel(LP, TrivialGauge(LP), top=2)
    gens = [P.gen(i) for i in range(k1)]
    w = G.embed_mc(gens)
    lhs = G.coface(1, 1, w)
    rhs = G.mul(2, G.coface(1, 2, w), G.coface(1, 0, w))
    defect = linalg.vec_sub(P, rhs[0], lhs[0])
    res = mc_residual(LP, gens)
    expected = linalg.zero_vec(P, G.rank(2))
    for b, slot in enumerate(G.P.normalized_slots(2)):
        expected[slot] = res[b]
    return {
        "match": linalg.vec_eq(P, defect, expected),
        "defect": defect,
        "residual": res,
        "ring": P,
    }


def verify_gauge_axioms(L, gauge, samples):
    """The four gauge-group axioms on sampled elements.

    (1) the adjoint action preserves the bracket, (2) the derivative map
    is a crossed homomorphism D(gh) = Dg + ad_g(Dh), (3) Dg satisfies the
    Maurer-Cartan equation, (4) the adjoint action twists the
    differential by [Dg, -].  Axioms 1 and 4 are checked on all basis
    vectors, 2 on all sample pairs, 3 on every sample.
    """
    R = L.ring
    require_char_zero(R)
    half = R.from_fraction(Fraction(1, 2))
    degs = L.degrees()
    for g in samples:
        Dg = gauge.D_vec(g)
        lhs = L.d_vec(1, Dg)
        rhs = linalg.vec_scal(R, half, L.bracket_vec(1, 1, Dg, Dg))
        if not linalg.vec_eq(R, lhs, rhs):
            raise ValueError("gauge derivative fails its Maurer-Cartan equation")
        ad = {n: gauge.ad_matrix(g, n) for n in degs}
        for p in degs:
            for q in degs:
                if L.rank(p + q) == 0:
                    continue
                adout = ad.get(p + q)
                for i in range(L.rank(p)):
                    x = L.basis_vec(p, i)
                    for j in range(L.rank(q)):
                        y = L.basis_vec(q, j)
                        lv = linalg.mat_vec(R, adout, L.bracket_vec(p, q, x, y))
                        rv = L.bracket_vec(
                            p,
                            q,
                            linalg.mat_vec(R, ad[p], x),
                            linalg.mat_vec(R, ad[q], y),
                        )
                        if not linalg.vec_eq(R, lv, rv):
                            raise ValueError(
                                "adjoint action does not preserve the bracket"
                            )
        for n in degs:
            if L.rank(n + 1) == 0:
                continue
            lhsM = linalg.mat_mul(R, L.d_matrix(n), ad[n], ncols=L.rank(n))
            twist = linalg.mat_mul(
                R, L.ad_matrix(1, n, Dg), ad[n], ncols=L.rank(n)
            )
            rhsM = linalg.mat_add(
                R,
                twist,
                linalg.mat_mul(R, ad[n + 1], L.d_matrix(n), ncols=L.rank(n)),
            )
            if not linalg.mat_eq(R, lhsM, rhsM):
                raise ValueError("adjoint action does not twist the differential")
    for g in samples:
        adg1 = gauge.ad_matrix(g, 1)
        for h in samples:
            lhs = gauge.D_vec(gauge.mul(g, h))
            rhs = linalg.vec_add(
                R, gauge.D_vec(g), linalg.mat_vec(R, adg1, gauge.D_vec(h))
            )
            if not linalg.vec_eq(R, lhs, rhs):
                raise ValueError("gauge derivative is not a crossed homomorphism")
    return True


# ---------------------------------------------------------------------------
# orbit normal forms


class UnitScalingRule:
    """Orbit bookkeeping for a rank-one Maurer-Cartan coordinate scaled by
    the unit group of the coefficient ring.

    ``gauge_of_unit(u)`` must return a gauge element whose action divides
    the coordinate by the unit u; the supported coefficient rings are the
    ones ``unit_scaling_orbits`` accepts (fields and one-generator chain
    rings).
    """

    def __init__(self, A, gauge_of_unit):
        self.A = A
        self.gauge_of_unit = gauge_of_unit
        self.forms = dgla_mod.unit_scaling_orbits(A)
        self.by_key = {}
        for f in self.forms:
            self.by_key[dgla_mod.classify_unit_scaling(A, f)] = f
        if len(self.by_key) != len(self.forms):
            raise ValueError("normal forms are not pairwise inequivalent")

    def classify(self, x):
        return dgla_mod.classify_unit_scaling(self.A, x[0])

    def connect(self, x):
        """(gauge element, normal form vector) moving x onto its form."""
        A = self.A
        key = self.classify(x)
        form = self.by_key[key]
        if key == ("zero",):
            u = A.one()
        else:
            u = dgla_mod._divide_exact(A, x[0], form)
            if u is None or not A.is_unit(u):
                raise ValueError("element is not a unit multiple of its form")
        return self.gauge_of_unit(u), [form]


def moduli_scaling_rule(moduli, A):
    """Unit-scaling orbit rule for an algebra-moduli instance with a
    rank-one level 1.

    Probes the size-one diagonal blocks of the instance's gauge group to
    find a scalar slot whose action on the coordinate is linear or
    inverse-linear in the scalar, then scales through that slot.
    """
    L = moduli.dgla_over(A)
    if L.rank(1) != 1:
        raise NormalizationRefusal(
            "unit-scaling normal forms need a rank-one level 1, got %d"
            % L.rank(1)
        )
    gauge = moduli.gauge_over(A)

    def block_gauge(i, v):
        g = gauge.identity()
        start = moduli.blocks[i][0]
        g[start][start] = v
        return g

    probes = [
        (A.from_int(2), A.from_int(3)),
    ]
    half = A.from_fraction(Fraction(1, 2))
    third = A.from_fraction(Fraction(1, 3))
    for i, (start, size) in enumerate(moduli.blocks):
        if size != 1:
            continue
        two, three = probes[0]
        l2 = gauge.ad_matrix(block_gauge(i, two), 1)[0][0]
        l3 = gauge.ad_matrix(block_gauge(i, three), 1)[0][0]
        if A.eq(l2, half) and A.eq(l3, third):
            return UnitScalingRule(A, lambda u, i=i: block_gauge(i, u))
        if A.eq(l2, two) and A.eq(l3, three):
            return UnitScalingRule(A, lambda u, i=i: block_gauge(i, A.inv(u)))
    raise NormalizationRefusal(
        "no scalar gauge block acts by unit scaling on the coordinate"
    )


# ---------------------------------------------------------------------------
# coordinate grids


def coefficient_grid(A, span=1):
    """All ring elements with integer coordinates in [-span, span]."""
    vals = range(-span, span + 1)
    kind = getattr(A, "kind", "")
    if kind == "rationals":
        return [A.from_int(t) for t in vals]
    if kind == "artinian-local":
        k = A.residue
        return [
            A.from_coeffs(tuple(k.from_int(t) for t in combo))
            for combo in iproduct(vals, repeat=A.dim)
        ]
    raise ValueError("no coordinate grid rule for ring kind %r" % (kind,))


def grid_vectors(A, k, span=1):
    """All length-k vectors over ``coefficient_grid(A, span)``."""
    cells = coefficient_grid(A, span)
    return [list(v) for v in iproduct(cells, repeat=k)]


# ---------------------------------------------------------------------------
# the comparison certificate


def _partition(n, edges):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(sorted(g)) for g in groups.values())


def exp_comparison_check(
    L,
    gauge,
    grid,
    gauge_samples,
    top=3,
    orbit_rule=None,
    sample_cap=5,
    intertwine_cap=16,
):
    """Certify that the exponential cosimplicial group of (L, gauge)
    reproduces the Maurer-Cartan theory of L itself.

    ``grid`` is a finite list of level-1 coordinate vectors and
    ``gauge_samples`` a finite list of gauge elements.  Checks, in order:
    levelwise Lie axioms of the shuffle bracket, gauge-group axioms on the
    samples, the cosimplicial group identities on mixed samples, the
    symbolic residual identity, elementwise agreement of the two
    Maurer-Cartan tests over the grid, intertwining of the two gauge
    actions, and the orbit decomposition (normal forms when
    ``orbit_rule`` is given, sampled partition comparison otherwise).

    Raises ValueError at the first failure; on success returns a report
    with the bijection callables under "to_group"/"from_group".
    """
    R = L.ring
    G = ExpGroupModel(L, gauge, top=top)
    for n in range(top + 1):
        if G.rank(n):
            G.P.level_lie(n).check_axioms()
    verify_gauge_axioms(L, gauge, list(gauge_samples))
    gid = gauge.identity()
    gs = [gid] + [g for g in gauge_samples if not _gauge_eq(R, g, gid)][:2]
    samples = {}
    for n in range(top + 1):
        k = G.rank(n)
        avecs = [linalg.zero_vec(R, k)]
        if k:
            avecs.append(linalg.basis_vec(R, k, 0))
            avecs.append([R.one()] * k)
        els = [(list(a), g) for g in gs for a in avecs]
        samples[n] = els[:sample_cap]
        if len(els) > sample_cap:
            samples[n] = samples[n] + [els[-1]]
    verify_cosimplicial_group(G, samples=samples)
    sym = mc_residual_match_symbolic(L)
    if not sym["match"]:
        raise ValueError("symbolic Maurer-Cartan defect mismatch")
    mc_list = []
    for x in grid:
        vd = mc_verify(L, x)
        vg = mc_verify_cgp(G, G.embed_mc(x))
        if vd != vg:
            raise ValueError("Maurer-Cartan tests disagree at %r" % (x,))
        if vd:
            mc_list.append(list(x))
    if not mc_list:
        raise ValueError("grid contains no Maurer-Cartan elements")
    for g in gs[1:]:
        tagged = (G.P.embed_level_one(mc_list[0]), g)
        if mc_verify_cgp(G, tagged):
            raise ValueError("gauge-tagged element passed the Maurer-Cartan test")
        break
    pairs = 0
    for g in gauge_samples:
        eg = G.embed_gauge(g)
        for x in mc_list[:intertwine_cap]:
            moved = gauge_act(L, gauge, g, x)
            if not mc_verify(L, moved):
                raise ValueError("gauge action left the Maurer-Cartan set")
            lhs = gauge_act_cgp(G, eg, G.embed_mc(x))
            if not G.eq(1, lhs, G.embed_mc(moved)):
                raise ValueError("the two gauge actions do not intertwine")
            pairs += 1
    if orbit_rule is not None:
        classes = {}
        for x in mc_list:
            g, form = orbit_rule.connect(x)
            moved = gauge_act(L, gauge, g, x)
            if not linalg.vec_eq(R, moved, form):
                raise ValueError("normal-form gauge fails on the Lie side")
            wg = gauge_act_cgp(G, G.embed_gauge(g), G.embed_mc(x))
            if not G.eq(1, wg, G.embed_mc(form)):
                raise ValueError("normal-form gauge fails on the group side")
            key = orbit_rule.classify(x)
            classes[key] = classes.get(key, 0) + 1
        orbit_report = {
            "mode": "normal-forms",
            "orbit_count": len(classes),
            "class_sizes": sorted(classes.values(), reverse=True),
        }
    else:
        def key_of(v):
            return tuple(R.show(c) for c in v)

        pos = {key_of(x): i for i, x in enumerate(mc_list)}
        edges_lie = []
        edges_grp = []
        for g in gauge_samples:
            eg = G.embed_gauge(g)
            for i, x in enumerate(mc_list):
                j = pos.get(key_of(gauge_act(L, gauge, g, x)))
                if j is not None:
                    edges_lie.append((i, j))
                wg = gauge_act_cgp(G, eg, G.embed_mc(x))
                j2 = pos.get(key_of(G.mc_coordinates(wg)))
                if j2 is not None:
                    edges_grp.append((i, j2))
        part_lie = _partition(len(mc_list), edges_lie)
        part_grp = _partition(len(mc_list), edges_grp)
        if part_lie != part_grp:
            raise ValueError("sampled orbit partitions disagree")
        orbit_report = {
            "mode": "sampled",
            "orbit_count": len(part_lie),
            "class_sizes": sorted((len(p) for p in part_lie), reverse=True),
        }
    return {
        "top": top,
        "identities": True,
        "symbolic": True,
        "grid": {"size": len(grid), "mc_count": len(mc_list)},
        "intertwined_pairs": pairs,
        "orbits": orbit_report,
        "to_group": G.embed_mc,
        "from_group": G.mc_coordinates,
        "group": G,
        "ok": True,
    }
