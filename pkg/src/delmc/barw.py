"""Bar constructions over finite simplicial groups, groupoids, and
bisimplicial data.

Three families of builders live here.  First, the classifying space of a
(truncated) simplicial groupoid: level n records a chain of objects, one
per level below n, joined by connecting arrows, with the face maps
composing adjacent arrows.  Second, the product variant for simplicial
groups whose level n is the bare product of the groups below level n;
every operator except the 0th face ignores the group structure, and an
explicit levelwise bijection onto the classifying space commutes with
all operators.  Third, the same classifying-space construction for
bisimplicial sets and bisimplicial modules, where level p is the subset
(or submodule) of the product of the antidiagonal cells where the 0th
vertical face of each cell matches the top horizontal face of the next;
its homology agrees with the homology of the diagonal in the range the
truncation supports.

The module also carries the shuffle product on a simplicial ring:
degeneracy spreads of the two factors multiplied with the shuffle sign,
a graded-commutative product compatible with the Moore boundary.
"""

from itertools import combinations, product as iproduct

from . import linalg
from .complexes import ChainComplex
from .dold_kan import (
    SimplicialModule,
    kernel_module_basis,
    normalize_simplicial,
    restrict_map,
    shuffle_sign,
)
from .errors import TruncationRefusal
from .poly import PolyRing
from .simplicial import TableSimplicialSet


# ---------------------------------------------------------------------------
# simplicial groups and groupoids (constant models)


class ConstantSimplicialGroup:
    """The constant simplicial object on a finite group."""

    def __init__(self, group, top):
        self.group = group
        self.top = top
        self.name = "constant-%s" % group.name

    def elements(self, n):
        return self.group.elements()

    def unit(self, n):
        return self.group.id

    def mul(self, n, a, b):
        return self.group.mul(a, b)

    def inv(self, n, a):
        return self.group.inv(a)

    def face(self, n, i, a):
        return a

    def degen(self, n, i, a):
        return a


class FiniteGroupoid:
    """Finite groupoid with arrows stored as (source, label, target).

    ``compose(f, g)`` requires target(f) == source(g) and returns the
    arrow from source(f) to target(g); ``identity(a)`` and ``inv(f)``
    complete the structure.
    """

    def __init__(self, objects, arrows, compose, identity, inv, name="groupoid"):
        self.objects = list(objects)
        self._arrows = list(arrows)
        self._compose = compose
        self._identity = identity
        self._inv = inv
        self.name = name

    def all_arrows(self):
        return list(self._arrows)

    def arrows(self, a, b):
        return [f for f in self._arrows if f[0] == a and f[2] == b]

    def arrows_from(self, a):
        return [f for f in self._arrows if f[0] == a]

    def compose(self, f, g):
        if f[2] != g[0]:
            raise ValueError("arrows are not composable")
        return self._compose(f, g)

    def identity(self, a):
        return self._identity(a)

    def inv(self, f):
        return self._inv(f)

    def validate(self):
        for f in self._arrows:
            ide = self.identity(f[0])
            if self.compose(ide, f) != f or self.compose(f, self.identity(f[2])) != f:
                raise ValueError("identity law fails at %r" % (f,))
            g = self.inv(f)
            if self.compose(f, g) != self.identity(f[0]):
                raise ValueError("inverse law fails at %r" % (f,))
            for g in self._arrows:
                if f[2] != g[0]:
                    continue
                fg = self.compose(f, g)
                if fg not in self._arrows:
                    raise ValueError("not closed under composition")
                for h in self._arrows:
                    if g[2] != h[0]:
                        continue
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                        raise ValueError("associativity fails")
        return True


def one_object_groupoid(group):
    obj = "*"

    def comp(f, g):
        return (obj, group.mul(f[1], g[1]), obj)

    return FiniteGroupoid(
        [obj],
        [(obj, g, obj) for g in group.elements()],
        comp,
        lambda a: (obj, group.id, obj),
        lambda f: (obj, group.inv(f[1]), obj),
        name="B(%s)" % group.name,
    )


def discrete_groupoid(objects):
    return FiniteGroupoid(
        list(objects),
        [(a, "id", a) for a in objects],
        lambda f, g: f,
        lambda a: (a, "id", a),
        lambda f: f,
        name="discrete",
    )


class ConstantSimplicialGroupoid:
    """The constant simplicial object on a finite groupoid."""

    def __init__(self, gpd, top):
        self.gpd = gpd
        self.top = top
        self.name = "constant-%s" % gpd.name

    def objects(self, n):
        return list(self.gpd.objects)

    def arrows(self, n, a, b):
        return self.gpd.arrows(a, b)

    def compose(self, n, f, g):
        return self.gpd.compose(f, g)

    def identity_arrow(self, n, a):
        return self.gpd.identity(a)

    def face_ob(self, n, i, a):
        return a

    def degen_ob(self, n, i, a):
        return a

    def face_ar(self, n, i, f):
        return f

    def degen_ar(self, n, i, f):
        return f


def verify_simplicial_groupoid(Gamma, top=None):
    """Operators must be functors levelwise: preserve sources, targets,
    identities, and composition."""
    top = Gamma.top if top is None else top
    for n in range(top + 1):
        ops = []
        if n >= 1:
            ops += [
                (
                    n - 1,
                    lambda a, i=i: Gamma.face_ob(n, i, a),
                    lambda f, i=i: Gamma.face_ar(n, i, f),
                )
                for i in range(n + 1)
            ]
        if n < top:
            ops += [
                (
                    n + 1,
                    lambda a, i=i: Gamma.degen_ob(n, i, a),
                    lambda f, i=i: Gamma.degen_ar(n, i, f),
                )
                for i in range(n + 1)
            ]
        for m, oob, oar in ops:
            for a in Gamma.objects(n):
                if oar(Gamma.identity_arrow(n, a)) != Gamma.identity_arrow(m, oob(a)):
                    raise ValueError("operator does not preserve identity arrows")
            for a in Gamma.objects(n):
                for b in Gamma.objects(n):
                    for f in Gamma.arrows(n, a, b):
                        if oar(f) not in Gamma.arrows(m, oob(a), oob(b)):
                            raise ValueError("operator does not preserve sources and targets")
                        for c in Gamma.objects(n):
                            for g in Gamma.arrows(n, b, c):
                                if oar(Gamma.compose(n, f, g)) != Gamma.compose(
                                    m, oar(f), oar(g)
                                ):
                                    raise ValueError("operator is not a functor")
    return True


# ---------------------------------------------------------------------------
# classifying space of a simplicial groupoid


def wbar_groupoid_level(Gamma, n):
    """Level n: (objects x_n..x_0, arrows g_j: face_0(x_{j+1}) -> x_j)."""
    if n > Gamma.top:
        raise TruncationRefusal("classifying space level %d exceeds truncation" % n)
    if n == 0:
        return [((a,), ()) for a in Gamma.objects(0)]
    out = []

    def extend(obs, gs):
        j = n - len(obs)
        if j < 0:
            out.append((tuple(obs), tuple(gs)))
            return
        prev = obs[-1]
        src = Gamma.face_ob(j + 1, 0, prev)
        for b in Gamma.objects(j):
            for g in Gamma.arrows(j, src, b):
                extend(obs + [b], gs + [g])

    for a in Gamma.objects(n):
        extend([a], [])
    return out


def wbar_groupoid_face(Gamma, n, i, w):
    obs, gs = w
    if i == 0:
        return (obs[1:], gs[1:])
    if i == n:
        new_obs = tuple(Gamma.face_ob(n - t, n - t, obs[t]) for t in range(n))
        new_gs = tuple(Gamma.face_ar(n - 1 - t, n - 1 - t, gs[t]) for t in range(n - 1))
        return (new_obs, new_gs)
    new_obs = tuple(Gamma.face_ob(n - t, i - t, obs[t]) for t in range(i)) + obs[i + 1 :]
    pre = tuple(Gamma.face_ar(n - 1 - t, i - 1 - t, gs[t]) for t in range(i - 1))
    mid = Gamma.compose(n - i - 1, Gamma.face_ar(n - i, 0, gs[i - 1]), gs[i])
    return (new_obs, pre + (mid,) + gs[i + 1 :])


def wbar_groupoid_degen(Gamma, n, i, w):
    obs, gs = w
    new_obs = (
        tuple(Gamma.degen_ob(n - t, i - t, obs[t]) for t in range(i + 1))
        + (obs[i],)
        + obs[i + 1 :]
    )
    new_gs = (
        tuple(Gamma.degen_ar(n - 1 - t, i - 1 - t, gs[t]) for t in range(i))
        + (Gamma.identity_arrow(n - i, obs[i]),)
        + gs[i:]
    )
    return (new_obs, new_gs)


def wbar_groupoid_sset(Gamma, top=None):
    top = Gamma.top if top is None else top
    levels = {n: wbar_groupoid_level(Gamma, n) for n in range(top + 1)}
    face_ops = {}
    degen_ops = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            face_ops[(n, i)] = {w: wbar_groupoid_face(Gamma, n, i, w) for w in levels[n]}
    for n in range(top):
        for i in range(n + 1):
            degen_ops[(n, i)] = {w: wbar_groupoid_degen(Gamma, n, i, w) for w in levels[n]}
    return TableSimplicialSet(levels, face_ops, degen_ops, top, name="Wbar-" + Gamma.name)


# ---------------------------------------------------------------------------
# the product variant and the comparison isomorphism


def bar_v_level(G, n):
    """Level n: bare tuples (g_{n-1}, ..., g_0), slot t drawn from level
    n-1-t of the simplicial group."""
    if n > G.top + 1:
        raise TruncationRefusal("product model level %d exceeds truncation" % n)
    pools = [G.elements(n - 1 - t) for t in range(n)]
    return [tuple(c) for c in iproduct(*pools)]


def bar_v_face(G, n, i, x):
    if i == 0:
        out = []
        d = x[0]
        for t in range(n - 1):
            d = G.face(n - 1 - t, 0, d)
            lev = n - 2 - t
            out.append(G.mul(lev, G.inv(lev, d), x[t + 1]))
        return tuple(out)
    pre = tuple(G.face(n - 1 - t, i - 1 - t, x[t]) for t in range(i - 1))
    return pre + x[i:]


def bar_v_degen(G, n, i, x):
    if i == 0:
        return (G.unit(n),) + x
    pre = tuple(G.degen(n - 1 - t, i - 1 - t, x[t]) for t in range(i))
    return pre + (x[i - 1],) + x[i:]


def bar_v_sset(G, top=None):
    top = G.top if top is None else top
    levels = {n: bar_v_level(G, n) for n in range(top + 1)}
    face_ops = {}
    degen_ops = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            face_ops[(n, i)] = {x: bar_v_face(G, n, i, x) for x in levels[n]}
    for n in range(top):
        for i in range(n + 1):
            degen_ops[(n, i)] = {x: bar_v_degen(G, n, i, x) for x in levels[n]}
    return TableSimplicialSet(levels, face_ops, degen_ops, top, name="Vbar-" + G.name)


def phi_bar_element(G, n, x):
    """The comparison map into the classifying space: top entry kept, every
    later entry twisted by the inverse 0th face of its predecessor."""
    obs = ("*",) * (n + 1)
    hs = []
    for t in range(n):
        if t == 0:
            h = x[0]
        else:
            lev = n - 1 - t
            h = G.mul(lev, G.inv(lev, G.face(lev + 1, 0, x[t - 1])), x[t])
        hs.append(("*", h, "*"))
    return (obs, tuple(hs))


def verify_phi_bar(group, top):
    """Exhaustive certificate for the constant simplicial group on a
    finite group: the comparison map is a levelwise bijection commuting
    with every face and degeneracy.  Returns level sizes."""
    G = ConstantSimplicialGroup(group, top)
    Gamma = ConstantSimplicialGroupoid(one_object_groupoid(group), top)
    sizes = []
    for n in range(top + 1):
        V = bar_v_level(G, n)
        W = wbar_groupoid_level(Gamma, n)
        imgs = [phi_bar_element(G, n, x) for x in V]
        if len(set(imgs)) != len(V) or set(imgs) != set(W):
            raise ValueError("comparison map is not a bijection at level %d" % n)
        sizes.append(len(V))
        for x in V:
            w = phi_bar_element(G, n, x)
            if n >= 1:
                for i in range(n + 1):
                    lhs = phi_bar_element(G, n - 1, bar_v_face(G, n, i, x))
                    rhs = wbar_groupoid_face(Gamma, n, i, w)
                    if lhs != rhs:
                        raise ValueError(
                            "comparison map misses face %d at level %d" % (i, n)
                        )
            if n < top:
                for i in range(n + 1):
                    lhs = phi_bar_element(G, n + 1, bar_v_degen(G, n, i, x))
                    rhs = wbar_groupoid_degen(Gamma, n, i, w)
                    if lhs != rhs:
                        raise ValueError(
                            "comparison map misses degeneracy %d at level %d" % (i, n)
                        )
    return sizes


# ---------------------------------------------------------------------------
# bisimplicial sets


class TableBisimplicialSet:
    """Explicit bisimplicial set on cells (m, n), both indices <= top.

    Operator dicts are keyed (m, n, i) by source cell; horizontal
    operators move the first index, vertical ones the second.
    """

    def __init__(self, top, levels, face_h, face_v, degen_h, degen_v, name="bisset"):
        self.top = top
        self.levels = {k: list(v) for k, v in levels.items()}
        self.face_h = face_h
        self.face_v = face_v
        self.degen_h = degen_h
        self.degen_v = degen_v
        self.name = name

    def simplices(self, m, n):
        return list(self.levels.get((m, n), []))

    def fh(self, m, n, i, x):
        return self.face_h[(m, n, i)][x]

    def fv(self, m, n, i, x):
        return self.face_v[(m, n, i)][x]

    def dh(self, m, n, i, x):
        return self.degen_h[(m, n, i)][x]

    def dv(self, m, n, i, x):
        return self.degen_v[(m, n, i)][x]

    def verify(self):
        for (m, n) in self.levels:
            for x in self.simplices(m, n):
                if m >= 2:
                    for j in range(1, m + 1):
                        for i in range(j):
                            if self.fh(m - 1, n, i, self.fh(m, n, j, x)) != self.fh(
                                m - 1, n, j - 1, self.fh(m, n, i, x)
                            ):
                                raise ValueError("horizontal face identity fails")
                if n >= 2:
                    for j in range(1, n + 1):
                        for i in range(j):
                            if self.fv(m, n - 1, i, self.fv(m, n, j, x)) != self.fv(
                                m, n - 1, j - 1, self.fv(m, n, i, x)
                            ):
                                raise ValueError("vertical face identity fails")
                if m >= 1 and n >= 1:
                    for i in range(m + 1):
                        for j in range(n + 1):
                            if self.fv(m - 1, n, j, self.fh(m, n, i, x)) != self.fh(
                                m, n - 1, i, self.fv(m, n, j, x)
                            ):
                                raise ValueError("face directions do not commute")
                if m >= 1 and n < self.top:
                    for i in range(m + 1):
                        for j in range(n + 1):
                            if self.dv(m - 1, n, j, self.fh(m, n, i, x)) != self.fh(
                                m, n + 1, i, self.dv(m, n, j, x)
                            ):
                                raise ValueError("mixed h-face v-degeneracy fails")
                if m < self.top and n < self.top:
                    for i in range(m + 1):
                        for j in range(n + 1):
                            if self.dv(m + 1, n, j, self.dh(m, n, i, x)) != self.dh(
                                m, n + 1, i, self.dv(m, n, j, x)
                            ):
                                raise ValueError("degeneracy directions do not commute")
        return True


def constant_vertical_bisset(K, top):
    """X with cell (m, n) = K_m and identity vertical operators."""
    levels = {}
    face_h = {}
    face_v = {}
    degen_h = {}
    degen_v = {}
    for m in range(top + 1):
        sims = list(K.simplices(m))
        for n in range(top + 1):
            levels[(m, n)] = sims
            if m >= 1:
                for i in range(m + 1):
                    face_h[(m, n, i)] = {x: K.face(m, i, x) for x in sims}
            if m < top:
                for i in range(m + 1):
                    degen_h[(m, n, i)] = {x: K.degen(m, i, x) for x in sims}
            if n >= 1:
                for i in range(n + 1):
                    face_v[(m, n, i)] = {x: x for x in sims}
            if n < top:
                for i in range(n + 1):
                    degen_v[(m, n, i)] = {x: x for x in sims}
    return TableBisimplicialSet(
        top, levels, face_h, face_v, degen_h, degen_v, name=K.name + "-const-v"
    )


def wbar_bisimplicial_level(X, p):
    """Tuples (x_0, ..., x_p), x_i in cell (i, p-i), with the 0th vertical
    face of each entry equal to the top horizontal face of the next."""
    if p > X.top:
        raise TruncationRefusal("level %d exceeds the bisimplicial truncation" % p)
    out = []
    for combo in iproduct(*[X.simplices(i, p - i) for i in range(p + 1)]):
        ok = True
        for i in range(p):
            if X.fv(i, p - i, 0, combo[i]) != X.fh(i + 1, p - i - 1, i + 1, combo[i + 1]):
                ok = False
                break
        if ok:
            out.append(tuple(combo))
    return out


def wbar_bisimplicial_face(X, p, i, w):
    out = []
    for j in range(p):
        if j < i:
            out.append(X.fv(j, p - j, i - j, w[j]))
        else:
            out.append(X.fh(j + 1, p - j - 1, i, w[j + 1]))
    return tuple(out)


def wbar_bisimplicial_degen(X, p, i, w):
    out = []
    for j in range(p + 2):
        if j <= i:
            out.append(X.dv(j, p - j, i - j, w[j]))
        else:
            out.append(X.dh(j - 1, p - j + 1, i, w[j - 1]))
    return tuple(out)


def wbar_bisimplicial_sset(X, top=None):
    top = X.top if top is None else top
    levels = {p: wbar_bisimplicial_level(X, p) for p in range(top + 1)}
    face_ops = {}
    degen_ops = {}
    for p in range(1, top + 1):
        for i in range(p + 1):
            face_ops[(p, i)] = {w: wbar_bisimplicial_face(X, p, i, w) for w in levels[p]}
    for p in range(top):
        for i in range(p + 1):
            degen_ops[(p, i)] = {w: wbar_bisimplicial_degen(X, p, i, w) for w in levels[p]}
    return TableSimplicialSet(levels, face_ops, degen_ops, top, name="Wbar-" + X.name)


# ---------------------------------------------------------------------------
# bisimplicial modules


class BisimplicialModule:
    """Free modules on cells (m, n) with matrix operators in each
    direction; horizontal operators move the first index."""

    def __init__(self, ring, top, ranks, face_h, degen_h, face_v, degen_v):
        self.ring = ring
        self.top = top
        self.ranks = dict(ranks)
        self.face_h = dict(face_h)
        self.degen_h = dict(degen_h)
        self.face_v = dict(face_v)
        self.degen_v = dict(degen_v)

    def rank(self, m, n):
        return self.ranks.get((m, n), 0)

    def row_module(self, n):
        """Horizontal simplicial module at fixed vertical level n."""
        return SimplicialModule(
            self.ring,
            self.top,
            {m: self.rank(m, n) for m in range(self.top + 1)},
            {(m, i): self.face_h[(m, n, i)] for m in range(1, self.top + 1) for i in range(m + 1)},
            {(m, i): self.degen_h[(m, n, i)] for m in range(self.top) for i in range(m + 1)},
        )

    def column_module(self, m):
        return SimplicialModule(
            self.ring,
            self.top,
            {n: self.rank(m, n) for n in range(self.top + 1)},
            {(n, i): self.face_v[(m, n, i)] for n in range(1, self.top + 1) for i in range(n + 1)},
            {(n, i): self.degen_v[(m, n, i)] for n in range(self.top) for i in range(n + 1)},
        )

    def verify(self):
        R = self.ring
        for k in range(self.top + 1):
            self.row_module(k).verify()
            self.column_module(k).verify()
        mm = linalg.mat_mul
        for m in range(1, self.top + 1):
            for n in range(1, self.top + 1):
                w = self.rank(m, n)
                for i in range(m + 1):
                    for j in range(n + 1):
                        lhs = mm(R, self.face_v[(m - 1, n, j)], self.face_h[(m, n, i)], ncols=w)
                        rhs = mm(R, self.face_h[(m, n - 1, i)], self.face_v[(m, n, j)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("face directions do not commute")
        for m in range(self.top):
            for n in range(self.top):
                w = self.rank(m, n)
                for i in range(m + 1):
                    for j in range(n + 1):
                        lhs = mm(R, self.degen_v[(m + 1, n, j)], self.degen_h[(m, n, i)], ncols=w)
                        rhs = mm(R, self.degen_h[(m, n + 1, i)], self.degen_v[(m, n, j)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("degeneracy directions do not commute")
        return True


def external_tensor(Mh, Mv):
    """Bisimplicial module with cell (m, n) = Mh_m tensor Mv_n."""
    if Mh.ring is not Mv.ring:
        raise ValueError("factors must share a coefficient ring")
    R = Mh.ring
    top = min(Mh.top, Mv.top)
    ranks = {}
    face_h = {}
    degen_h = {}
    face_v = {}
    degen_v = {}
    for m in range(top + 1):
        for n in range(top + 1):
            ranks[(m, n)] = Mh.rank(m) * Mv.rank(n)
            iv = linalg.identity(R, Mv.rank(n))
            ih = linalg.identity(R, Mh.rank(m))
            if m >= 1:
                for i in range(m + 1):
                    face_h[(m, n, i)] = linalg.kron(
                        R, Mh.face[(m, i)], iv, acols=Mh.rank(m), bcols=Mv.rank(n)
                    )
            if m < top:
                for i in range(m + 1):
                    degen_h[(m, n, i)] = linalg.kron(
                        R, Mh.degen[(m, i)], iv, acols=Mh.rank(m), bcols=Mv.rank(n)
                    )
            if n >= 1:
                for i in range(n + 1):
                    face_v[(m, n, i)] = linalg.kron(
                        R, ih, Mv.face[(n, i)], acols=Mh.rank(m), bcols=Mv.rank(n)
                    )
            if n < top:
                for i in range(n + 1):
                    degen_v[(m, n, i)] = linalg.kron(
                        R, ih, Mv.degen[(n, i)], acols=Mh.rank(m), bcols=Mv.rank(n)
                    )
    return BisimplicialModule(R, top, ranks, face_h, degen_h, face_v, degen_v)


def diag_module(X):
    """Diagonal simplicial module: level n is cell (n, n), operators are
    the horizontal then vertical operator of the same index."""
    R = X.ring
    top = X.top
    ranks = {n: X.rank(n, n) for n in range(top + 1)}
    face = {}
    degen = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            face[(n, i)] = linalg.mat_mul(
                R, X.face_v[(n - 1, n, i)], X.face_h[(n, n, i)], ncols=X.rank(n, n)
            )
    for n in range(top):
        for i in range(n + 1):
            degen[(n, i)] = linalg.mat_mul(
                R, X.degen_v[(n + 1, n, i)], X.degen_h[(n, n, i)], ncols=X.rank(n, n)
            )
    return SimplicialModule(R, top, ranks, face, degen)


def _product_layout(X, p):
    offs = []
    total = 0
    for i in range(p + 1):
        offs.append(total)
        total += X.rank(i, p - i)
    return offs, total


def _place_block(R, big, block, roff, coff):
    for r, row in enumerate(block):
        for c, val in enumerate(row):
            big[roff + r][coff + c] = R.add(big[roff + r][coff + c], val)


def wbar_bisimplicial_module(X):
    """Equalizer model of the classifying space of a bisimplicial module.

    Level p is the kernel of (x_i) -> (fv_0 x_i - fh_{i+1} x_{i+1}) inside
    the product of the antidiagonal cells; the operators of the product
    restrict to the kernels.
    """
    R = X.ring
    top = X.top
    incl = {}
    layouts = {}
    for p in range(top + 1):
        offs, total = _product_layout(X, p)
        layouts[p] = (offs, total)
        if p == 0:
            incl[0] = [linalg.basis_vec(R, total, i) for i in range(total)]
            continue
        t_offs, t_total = _product_layout(X, p - 1)
        C = linalg.zeros(R, t_total, total)
        for i in range(p):
            _place_block(R, C, X.face_v[(i, p - i, 0)], t_offs[i], offs[i])
            neg = linalg.mat_scal(
                R, R.from_int(-1), X.face_h[(i + 1, p - i - 1, i + 1)]
            )
            _place_block(R, C, neg, t_offs[i], offs[i + 1])
        incl[p] = kernel_module_basis(R, C, total)
    face = {}
    degen = {}
    for p in range(1, top + 1):
        offs, total = layouts[p]
        t_offs, t_total = layouts[p - 1]
        for i in range(p + 1):
            big = linalg.zeros(R, t_total, total)
            for j in range(p):
                if j < i:
                    _place_block(R, big, X.face_v[(j, p - j, i - j)], t_offs[j], offs[j])
                else:
                    _place_block(
                        R, big, X.face_h[(j + 1, p - j - 1, i)], t_offs[j], offs[j + 1]
                    )
            face[(p, i)] = restrict_map(R, big, incl[p], incl[p - 1])
    for p in range(top):
        offs, total = layouts[p]
        t_offs, t_total = layouts[p + 1]
        for i in range(p + 1):
            big = linalg.zeros(R, t_total, total)
            for j in range(p + 2):
                if j <= i:
                    _place_block(R, big, X.degen_v[(j, p - j, i - j)], t_offs[j], offs[j])
                else:
                    _place_block(
                        R, big, X.degen_h[(j - 1, p - j + 1, i)], t_offs[j], offs[j - 1]
                    )
            degen[(p, i)] = restrict_map(R, big, incl[p], incl[p + 1])
    ranks = {p: len(incl[p]) for p in range(top + 1)}
    return SimplicialModule(R, top, ranks, face, degen)


def compare_diag_wbar_homology(X, through=2):
    """Homology of the diagonal against homology of the classifying-space
    model, in degrees 0..through; returns the shared list of lengths."""
    if through + 1 > X.top:
        raise TruncationRefusal(
            "need truncation at least %d for homology through degree %d"
            % (through + 1, through)
        )
    D = diag_module(X)
    W = wbar_bisimplicial_module(X)
    D.verify()
    W.verify()
    ND, _ = normalize_simplicial(D)
    NW, _ = normalize_simplicial(W)
    out = []
    for n in range(through + 1):
        hd = ND.homology(n)
        hw = NW.homology(n)
        if hd != hw:
            raise ValueError(
                "homology mismatch in degree %d: diagonal %d, classifying %d"
                % (n, hd, hw)
            )
        out.append(hd)
    return out


# ---------------------------------------------------------------------------
# shuffle product on a simplicial ring


class FreeSimplicialRing:
    """Levelwise polynomial rings on the simplices of a finite simplicial
    set, with operators acting by variable substitution."""

    def __init__(self, K, base, top=None):
        self.K = K
        self.base = base
        self.top = K.top if top is None else top
        self._rings = {}
        self._index = {}
        for n in range(self.top + 1):
            sims = list(K.simplices(n))
            self._index[n] = {x: i for i, x in enumerate(sims)}
            self._rings[n] = PolyRing(base, ["x%d_%d" % (n, i) for i in range(len(sims))])

    def level(self, n):
        return self._rings[n]

    def generator(self, n, simplex):
        return self._rings[n].gen(self._index[n][simplex])

    def _substitute(self, f, src, tgt, var_map):
        P = self._rings[tgt]
        out = {}
        width = len(P.names)
        for expo, c in f.items():
            acc = [0] * width
            for pos, e in enumerate(expo):
                if e:
                    acc[var_map[pos]] += e
            key = tuple(acc)
            if key in out:
                out[key] = self.base.add(out[key], c)
            else:
                out[key] = c
        return P._norm(out)

    def face(self, n, i, f):
        sims = list(self.K.simplices(n))
        var_map = [self._index[n - 1][self.K.face(n, i, x)] for x in sims]
        return self._substitute(f, n, n - 1, var_map)

    def degen(self, n, i, f):
        sims = list(self.K.simplices(n))
        var_map = [self._index[n + 1][self.K.degen(n, i, x)] for x in sims]
        return self._substitute(f, n, n + 1, var_map)

    def moore_boundary(self, n, f):
        P = self._rings[n - 1]
        out = P.zero()
        sign = 1
        for i in range(n + 1):
            term = self.face(n, i, f)
            out = P.add(out, term if sign > 0 else P.neg(term))
            sign = -sign
        return out

    def is_normalized(self, n, f):
        for i in range(1, n + 1):
            if not self._rings[n - 1].is_zero(self.face(n, i, f)):
                return False
        return True


def shuffle_product(S, p, q, a, b):
    """Shuffle product of a level-p and a level-q element into level p+q:
    the sum over index splittings of the degeneracy spreads of the two
    factors, multiplied in the target ring with the shuffle sign."""
    P = S.level(p + q)
    if p == 0 and q == 0:
        return P.mul(a, b)
    total = P.zero()
    for I in combinations(range(p + q), p):
        J = [t for t in range(p + q) if t not in I]
        xa = a
        lev = p
        for idx in J:
            xa = S.degen(lev, idx, xa)
            lev += 1
        xb = b
        lev = q
        for idx in I:
            xb = S.degen(lev, idx, xb)
            lev += 1
        term = P.mul(xa, xb)
        if shuffle_sign(list(I), J) < 0:
            term = P.neg(term)
        total = P.add(total, term)
    return total
