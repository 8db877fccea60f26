"""Cosimplicial groups: Maurer-Cartan theory, gauge action, Deligne
groupoids, twisted cochain complexes, and the derived Maurer-Cartan
space of an abelian cosimplicial simplicial module computed by two
independent routes.

A cosimplicial group model carries levels 0..top and provides:

    identity(n); mul(n, x, y); inv(n, x); eq(n, x, y)
    coface(n, i, x): level n -> n+1 for 0 <= i <= n+1
    codeg(n, i, x):  level n -> n-1 for 0 <= i <= n-1
    elements(n): full list for finite carriers (else a refusal)
    show(n, x): hashable canonical key

A Maurer-Cartan element is w at level 1 with codeg(1,0,w) = 1 and
coface(1,1,w) = coface(1,2,w) * coface(1,0,w); level-0 elements act on
these by g . w = coface(0,1,g) * w * coface(0,0,g)^{-1} and orbits are
isomorphism classes.
"""

from itertools import product as iproduct

from . import linalg
from .complexes import BiComplex, ChainComplex
from .dold_kan import (
    CosimplicialModule,
    SimplicialModule,
    normalize_cosimplicial,
    normalize_simplicial,
    restrict_map,
)
from .errors import BudgetRefusal, EnumerationRefusal, TruncationRefusal
from .simplicial import (
    delta,
    identity_map,
    nondeg_simplices,
    normalized_chain_map,
    product_sset,
    product_vertex_map,
    sigma,
    standard_simplex,
)

MC_EQUATIONS = (
    "codeg(1, 0, w) = identity(0)",
    "coface(1, 1, w) = coface(1, 2, w) * coface(1, 0, w)",
)


# ---------------------------------------------------------------------------
# generic operations


def verify_cosimplicial_group(G, samples=None, cap=6):
    """Check group laws, homomorphism property of every operator, and the
    cosimplicial identities, on ``samples`` (dict level -> elements) or on
    capped element lists for finite carriers."""

    def sample(n):
        if samples is not None and n in samples:
            return list(samples[n])
        els = G.elements(n)
        return els if cap is None or len(els) <= cap else els[: cap]

    xs = {n: sample(n) for n in range(G.top + 1)}
    for n in range(G.top + 1):
        e = G.identity(n)
        for x in xs[n]:
            if not G.eq(n, G.mul(n, e, x), x) or not G.eq(n, G.mul(n, x, e), x):
                raise ValueError("identity law fails at level %d" % n)
            if not G.eq(n, G.mul(n, x, G.inv(n, x)), e):
                raise ValueError("inverse law fails at level %d" % n)
            for y in xs[n]:
                for z in xs[n]:
                    if not G.eq(
                        n,
                        G.mul(n, G.mul(n, x, y), z),
                        G.mul(n, x, G.mul(n, y, z)),
                    ):
                        raise ValueError("associativity fails at level %d" % n)
        ops = []
        if n + 1 <= G.top:
            ops += [(n + 1, lambda x, i=i: G.coface(n, i, x)) for i in range(n + 2)]
        if n >= 1:
            ops += [(n - 1, lambda x, i=i: G.codeg(n, i, x)) for i in range(n)]
        for tgt, op in ops:
            if not G.eq(tgt, op(e), G.identity(tgt)):
                raise ValueError("operator does not preserve the identity")
            for x in xs[n]:
                for y in xs[n]:
                    if not G.eq(tgt, op(G.mul(n, x, y)), G.mul(tgt, op(x), op(y))):
                        raise ValueError("operator is not a homomorphism")
    for n in range(G.top + 1):
        if n + 2 <= G.top:
            for j in range(n + 3):
                for i in range(j):
                    for x in xs[n]:
                        lhs = G.coface(n + 1, j, G.coface(n, i, x))
                        rhs = G.coface(n + 1, i, G.coface(n, j - 1, x))
                        if not G.eq(n + 2, lhs, rhs):
                            raise ValueError("coface identity fails")
        if n >= 2:
            for i in range(n - 1):
                for j in range(i, n - 1):
                    for x in xs[n]:
                        lhs = G.codeg(n - 1, j, G.codeg(n, i, x))
                        rhs = G.codeg(n - 1, i, G.codeg(n, j + 1, x))
                        if not G.eq(n - 2, lhs, rhs):
                            raise ValueError("codegeneracy identity fails")
        if n + 1 <= G.top:
            for j in range(n + 1):
                for i in range(n + 2):
                    for x in xs[n]:
                        lhs = G.codeg(n + 1, j, G.coface(n, i, x))
                        if i < j:
                            rhs = G.coface(n - 1, i, G.codeg(n, j - 1, x))
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = G.coface(n - 1, i - 1, G.codeg(n, j, x))
                        if not G.eq(n, lhs, rhs):
                            raise ValueError("mixed identity fails")
    return True


def mc_verify_cgp(G, w):
    """The two Maurer-Cartan conditions on a level-1 element."""
    if G.top < 2:
        raise TruncationRefusal("need levels up to 2 for the MC conditions")
    if not G.eq(0, G.codeg(1, 0, w), G.identity(0)):
        return False
    lhs = G.coface(1, 1, w)
    rhs = G.mul(2, G.coface(1, 2, w), G.coface(1, 0, w))
    return G.eq(2, lhs, rhs)


def mc_cgp(G):
    """All Maurer-Cartan elements of a finite-carrier model."""
    if G.top < 2:
        raise TruncationRefusal("need levels up to 2 for the MC conditions")
    try:
        els = G.elements(1)
    except EnumerationRefusal as e:
        raise EnumerationRefusal(str(e), equations=MC_EQUATIONS)
    return [w for w in els if mc_verify_cgp(G, w)]


def gauge_act_level(G, g, w, n):
    """Action of g at level 0 on the n-th family member w at level n+1:
    the constant family of g is pushed up with leading cofaces on both
    sides.  n = 0 is the action on Maurer-Cartan elements."""
    a = g
    for lev in range(n + 1):
        a = G.coface(lev, 1, a)
    b = g
    for lev in range(n):
        b = G.coface(lev, 1, b)
    b = G.coface(n, 0, b)
    return G.mul(n + 1, G.mul(n + 1, a, w), G.inv(n + 1, b))


def gauge_act_cgp(G, g, w):
    return gauge_act_level(G, g, w, 0)


def deligne_cgp(G):
    """Orbit decomposition of the MC set under the level-0 gauge group.

    Returns {"orbits": [{"representative", "size", "stabilizer_order"}],
    "group_order": N, "mc_count": M}.
    """
    mc = mc_cgp(G)
    try:
        group = G.elements(0)
    except EnumerationRefusal as e:
        raise EnumerationRefusal(str(e), equations=MC_EQUATIONS)
    keys = [G.show(1, w) for w in mc]
    pos = {k: i for i, k in enumerate(keys)}
    seen = [False] * len(mc)
    orbits = []
    for i, w in enumerate(mc):
        if seen[i]:
            continue
        orbit = set()
        stab = 0
        for g in group:
            moved = gauge_act_cgp(G, g, w)
            k = G.show(1, moved)
            if k not in pos:
                raise ValueError("gauge action left the MC set")
            orbit.add(k)
            if k == keys[i]:
                stab += 1
        for k in orbit:
            seen[pos[k]] = True
        orbits.append(
            {"representative": w, "size": len(orbit), "stabilizer_order": stab}
        )
    return {"orbits": orbits, "group_order": len(group), "mc_count": len(mc)}


def cohomology_cgp(G, w, i, coefficients=None):
    """Dimension of the i-th cohomology of the twisted tangent cochain
    complex (adjoint twist; see ``tangent_cgp``)."""
    if G.top < i + 1:
        raise TruncationRefusal("need levels up to %d" % (i + 1))
    M = tangent_cgp(G, w, coefficients)
    C, _ = normalize_cosimplicial(M)
    return C.cohomology(i)


def tangent_cgp(G, w, coefficients=None):
    """Tangent cosimplicial module at w.

    Levels are the tangent spaces of the group levels at the identity;
    codegeneracies and cofaces with index >= 1 are carried over, and the
    0-th coface is conjugated by the iterated 2nd coface of w.  Defined
    for carriers whose tangent spaces are matrix modules (abelian and
    matrix-group carriers)."""
    return G.tangent_module(w, coefficients)


# ---------------------------------------------------------------------------
# models


class ConstantCosimplicialGroup:
    """The same finite group at every level; all operators are the
    identity."""

    kind = "constant"

    def __init__(self, group, top):
        self.group = group
        self.top = top

    def identity(self, n):
        return self.group.id

    def mul(self, n, x, y):
        return self.group.mul(x, y)

    def inv(self, n, x):
        return self.group.inv(x)

    def eq(self, n, x, y):
        return x == y

    def coface(self, n, i, x):
        return x

    def codeg(self, n, i, x):
        return x

    def elements(self, n):
        return self.group.elements()

    def show(self, n, x):
        return x

    def tangent_module(self, w, coefficients=None):
        raise TypeError("constant carriers have no matrix tangent model")

    def descriptor(self):
        return {
            "kind": "constant",
            "truncation": self.top,
            "group": self.group.name,
            "order": self.group.order(),
        }


class AbelianCosimplicialGroup:
    """A cosimplicial module viewed as a cosimplicial group under
    addition."""

    kind = "abelian"

    def __init__(self, module):
        self.module = module
        self.ring = module.ring
        self.top = module.top

    def identity(self, n):
        return linalg.zero_vec(self.ring, self.module.rank(n))

    def mul(self, n, x, y):
        return linalg.vec_add(self.ring, x, y)

    def inv(self, n, x):
        return linalg.vec_neg(self.ring, x)

    def eq(self, n, x, y):
        return linalg.vec_eq(self.ring, x, y)

    def coface(self, n, i, x):
        return linalg.mat_vec(self.ring, self.module.coface[(n, i)], x)

    def codeg(self, n, i, x):
        return linalg.mat_vec(self.ring, self.module.codeg[(n, i)], x)

    def elements(self, n):
        if not self.ring.finite:
            raise EnumerationRefusal("carrier module is infinite")
        scalars = self.ring.elements()
        return [list(v) for v in iproduct(scalars, repeat=self.module.rank(n))]

    def show(self, n, x):
        return tuple(self.ring.show(c) for c in x)

    def tangent_module(self, w, coefficients=None):
        # conjugation is trivial, so the tangent module is the module itself
        return self.module

    def descriptor(self):
        return {
            "kind": "abelian",
            "truncation": self.top,
            "ring": self.ring.descriptor(),
            "ranks": {str(n): self.module.rank(n) for n in range(self.top + 1)},
        }


def invertible_matrices(A, r):
    """All of GL_r over a finite ring, as tuples of row tuples."""
    if not A.finite:
        raise EnumerationRefusal("matrix group over an infinite ring")
    out = []
    for entries in iproduct(A.elements(), repeat=r * r):
        M = [list(entries[i * r : (i + 1) * r]) for i in range(r)]
        if linalg.mat_inv(A, M) is not None:
            out.append(tuple(tuple(row) for row in M))
    return out


class LocalSystemCogroup:
    """Level n is the group of GL_r(A)-valued functions on the n-simplices
    of a finite simplicial set K; cofaces and codegeneracies precompose
    with the faces and degeneracies of K.  Maurer-Cartan elements are
    rank-r local systems on K and gauge is vertexwise change of basis."""

    kind = "local-system"

    def __init__(self, K, r, A, top):
        self.K = K
        self.r = r
        self.A = A
        self.top = top
        self.simplices = {n: list(K.simplices(n)) for n in range(top + 1)}
        self.pos = {
            n: {x: i for i, x in enumerate(self.simplices[n])}
            for n in range(top + 1)
        }
        self._gl = None

    def _unit_list(self):
        if self._gl is None:
            self._gl = invertible_matrices(self.A, self.r)
        return self._gl

    def identity(self, n):
        one = tuple(
            tuple(self.A.one() if i == j else self.A.zero() for j in range(self.r))
            for i in range(self.r)
        )
        return tuple(one for _ in self.simplices[n])

    def mul(self, n, x, y):
        out = []
        for M, N in zip(x, y):
            P = linalg.mat_mul(self.A, [list(row) for row in M], [list(row) for row in N])
            out.append(tuple(tuple(row) for row in P))
        return tuple(out)

    def inv(self, n, x):
        out = []
        for M in x:
            Minv = linalg.mat_inv(self.A, [list(row) for row in M])
            if Minv is None:
                raise ValueError("element is not invertible")
            out.append(tuple(tuple(row) for row in Minv))
        return tuple(out)

    def eq(self, n, x, y):
        for M, N in zip(x, y):
            for ra, rb in zip(M, N):
                for a, b in zip(ra, rb):
                    if not self.A.eq(a, b):
                        return False
        return True

    def coface(self, n, i, x):
        return tuple(
            x[self.pos[n][self.K.face(n + 1, i, s)]] for s in self.simplices[n + 1]
        )

    def codeg(self, n, i, x):
        return tuple(
            x[self.pos[n][self.K.degen(n - 1, i, s)]] for s in self.simplices[n - 1]
        )

    def elements(self, n):
        gl = self._unit_list()
        return [tuple(c) for c in iproduct(gl, repeat=len(self.simplices[n]))]

    def show(self, n, x):
        return tuple(
            tuple(tuple(self.A.show(a) for a in row) for row in M) for M in x
        )

    def _transport(self, w, n):
        """Iterated 2nd coface of w, landing at level n+1."""
        c = w
        for lev in range(1, n + 1):
            c = self.coface(lev, 2, c)
        return c

    def _twisted_module(self, w, rep):
        """Cosimplicial module of K_n-indexed matrix values, with the 0-th
        coface twisted by w through ``rep`` ("adjoint" or "standard")."""
        A = self.A
        if not A.is_field:
            raise TypeError("twisted modules require field coefficients")
        r = self.r
        blk = r * r if rep == "adjoint" else r
        ranks = {n: len(self.simplices[n]) * blk for n in range(self.top + 1)}

        def rebase(n, m, simplex_map, conj):
            """Matrix of a ↦ conj ∘ (a ∘ simplex_map): level n -> m."""
            M = linalg.zeros(A, ranks[m], ranks[n])
            for xi, x in enumerate(self.simplices[m]):
                src = self.pos[n][simplex_map(x)]
                if conj is None:
                    for t in range(blk):
                        M[xi * blk + t][src * blk + t] = A.one()
                    continue
                C = [list(row) for row in conj[xi]]
                if rep == "standard":
                    for a in range(r):
                        for g in range(r):
                            M[xi * blk + a][src * blk + g] = C[a][g]
                else:
                    Ci = linalg.mat_inv(A, C)
                    for a in range(r):
                        for b in range(r):
                            for g in range(r):
                                for dd in range(r):
                                    M[xi * blk + a * r + b][
                                        src * blk + g * r + dd
                                    ] = A.mul(C[a][g], Ci[dd][b])
            return M

        coface = {}
        codeg = {}
        for n in range(self.top):
            cn = self._transport(w, n)
            coface[(n, 0)] = rebase(
                n, n + 1, lambda x, n=n: self.K.face(n + 1, 0, x), cn
            )
            for i in range(1, n + 2):
                coface[(n, i)] = rebase(
                    n, n + 1, lambda x, n=n, i=i: self.K.face(n + 1, i, x), None
                )
        for n in range(1, self.top + 1):
            for i in range(n):
                codeg[(n, i)] = rebase(
                    n, n - 1, lambda x, n=n, i=i: self.K.degen(n - 1, i, x), None
                )
        return CosimplicialModule(A, self.top, ranks, coface, codeg)

    def tangent_module(self, w, coefficients=None):
        return self._twisted_module(w, "adjoint")

    def coefficient_module(self, w):
        """The cochain model of K with coefficients in the rank-r local
        system w (standard representation twist on the 0-th coface)."""
        return self._twisted_module(w, "standard")

    def descriptor(self):
        return {
            "kind": "local-system",
            "truncation": self.top,
            "rank": self.r,
            "ring": self.A.descriptor(),
            "simplices": {str(n): len(self.simplices[n]) for n in range(self.top + 1)},
        }


def local_system_cogroup(K, r, A, top=3):
    return LocalSystemCogroup(K, r, A, top)


def local_system_cohomology(G, w, i):
    """H^i of K with coefficients in the local system w (the standard
    representation; for the adjoint tangent complex use cohomology_cgp)."""
    if G.top < i + 1:
        raise TruncationRefusal("need levels up to %d" % (i + 1))
    M = G.coefficient_module(w)
    C, _ = normalize_cosimplicial(M)
    return C.cohomology(i)


# ---------------------------------------------------------------------------
# abelian cosimplicial simplicial modules and their derived MC space


class CosimplicialSimplicialModule:
    """Free modules A^n_m with commuting cosimplicial (n) and simplicial
    (m) structure.

    ranks[(n, m)]; coface[(n, i)][m] and codeg[(n, i)][m] act in the
    cosimplicial direction at simplicial level m; face[(n, m, i)] and
    degen[(n, m, i)] act in the simplicial direction at cosimplicial
    level n."""

    def __init__(self, ring, topc, tops, ranks, coface, codeg, face, degen):
        self.ring = ring
        self.topc = topc
        self.tops = tops
        self.ranks = dict(ranks)
        self.coface = coface
        self.codeg = codeg
        self.face = face
        self.degen = degen

    def rank(self, n, m):
        return self.ranks.get((n, m), 0)

    def cosimplicial_level(self, m):
        ranks = {n: self.rank(n, m) for n in range(self.topc + 1)}
        cf = {key: mats[m] for key, mats in self.coface.items()}
        sg = {key: mats[m] for key, mats in self.codeg.items()}
        return CosimplicialModule(self.ring, self.topc, ranks, cf, sg)

    def simplicial_level(self, n):
        ranks = {m: self.rank(n, m) for m in range(self.tops + 1)}
        fc = {
            (m, i): self.face[(n, m, i)]
            for (nn, m, i) in self.face
            if nn == n
        }
        dg = {
            (m, i): self.degen[(n, m, i)]
            for (nn, m, i) in self.degen
            if nn == n
        }
        return SimplicialModule(self.ring, self.tops, ranks, fc, dg)

    def verify(self):
        R = self.ring
        for m in range(self.tops + 1):
            self.cosimplicial_level(m).verify()
        for n in range(self.topc + 1):
            self.simplicial_level(n).verify()
        # commutation of the two directions, checked operator by operator
        for (n, i), mats in sorted(self.coface.items()):
            for m in range(1, self.tops + 1):
                for j in range(m + 1):
                    lhs = linalg.mat_mul(
                        R, mats[m - 1], self.face[(n, m, j)], ncols=self.rank(n, m)
                    )
                    rhs = linalg.mat_mul(
                        R, self.face[(n + 1, m, j)], mats[m], ncols=self.rank(n, m)
                    )
                    if not linalg.mat_eq(R, lhs, rhs):
                        raise ValueError("coface does not commute with face")
            for m in range(self.tops):
                for j in range(m + 1):
                    lhs = linalg.mat_mul(
                        R, mats[m + 1], self.degen[(n, m, j)], ncols=self.rank(n, m)
                    )
                    rhs = linalg.mat_mul(
                        R, self.degen[(n + 1, m, j)], mats[m], ncols=self.rank(n, m)
                    )
                    if not linalg.mat_eq(R, lhs, rhs):
                        raise ValueError("coface does not commute with degeneracy")
        for (n, i), mats in sorted(self.codeg.items()):
            for m in range(1, self.tops + 1):
                for j in range(m + 1):
                    lhs = linalg.mat_mul(
                        R, mats[m - 1], self.face[(n, m, j)], ncols=self.rank(n, m)
                    )
                    rhs = linalg.mat_mul(
                        R, self.face[(n - 1, m, j)], mats[m], ncols=self.rank(n, m)
                    )
                    if not linalg.mat_eq(R, lhs, rhs):
                        raise ValueError("codegeneracy does not commute with face")
            for m in range(self.tops):
                for j in range(m + 1):
                    lhs = linalg.mat_mul(
                        R, mats[m + 1], self.degen[(n, m, j)], ncols=self.rank(n, m)
                    )
                    rhs = linalg.mat_mul(
                        R, self.degen[(n - 1, m, j)], mats[m], ncols=self.rank(n, m)
                    )
                    if not linalg.mat_eq(R, lhs, rhs):
                        raise ValueError("codegeneracy does not commute with degeneracy")
        return True


def tensor_cosimplicial_simplicial(Mc, Ms):
    """External tensor of a cosimplicial and a simplicial module: the
    (n, m) level is the tensor product, cosimplicial operators act on the
    left factor and simplicial operators on the right."""
    R = Mc.ring
    ranks = {
        (n, m): Mc.rank(n) * Ms.rank(m)
        for n in range(Mc.top + 1)
        for m in range(Ms.top + 1)
    }
    coface = {}
    codeg = {}
    for (n, i), M in Mc.coface.items():
        coface[(n, i)] = {
            m: linalg.kron(R, M, linalg.identity(R, Ms.rank(m)), acols=Mc.rank(n))
            for m in range(Ms.top + 1)
        }
    for (n, i), M in Mc.codeg.items():
        codeg[(n, i)] = {
            m: linalg.kron(R, M, linalg.identity(R, Ms.rank(m)), acols=Mc.rank(n))
            for m in range(Ms.top + 1)
        }
    face = {}
    degen = {}
    for n in range(Mc.top + 1):
        eye = linalg.identity(R, Mc.rank(n))
        for (m, i), M in Ms.face.items():
            face[(n, m, i)] = linalg.kron(R, eye, M, bcols=Ms.rank(m))
        for (m, i), M in Ms.degen.items():
            degen[(n, m, i)] = linalg.kron(R, eye, M, bcols=Ms.rank(m))
    return CosimplicialSimplicialModule(
        R, Mc.top, Ms.top, ranks, coface, codeg, face, degen
    )


def direct_sum_cosimplicial_simplicial(A1, A2):
    """Levelwise direct sum, all operators block diagonal."""
    R = A1.ring
    if A1.topc != A2.topc or A1.tops != A2.tops:
        raise ValueError("summands must share truncations")

    def blockdiag(M1, M2, c1, c2):
        r1, r2 = len(M1), len(M2)
        out = linalg.zeros(R, r1 + r2, c1 + c2)
        for i in range(r1):
            for j in range(c1):
                out[i][j] = M1[i][j]
        for i in range(r2):
            for j in range(c2):
                out[r1 + i][c1 + j] = M2[i][j]
        return out

    ranks = {
        key: A1.ranks.get(key, 0) + A2.ranks.get(key, 0)
        for key in set(A1.ranks) | set(A2.ranks)
    }
    coface = {}
    codeg = {}
    for key in A1.coface:
        n = key[0]
        coface[key] = {
            m: blockdiag(
                A1.coface[key][m], A2.coface[key][m], A1.rank(n, m), A2.rank(n, m)
            )
            for m in A1.coface[key]
        }
    for key in A1.codeg:
        n = key[0]
        codeg[key] = {
            m: blockdiag(
                A1.codeg[key][m], A2.codeg[key][m], A1.rank(n, m), A2.rank(n, m)
            )
            for m in A1.codeg[key]
        }
    face = {
        key: blockdiag(
            A1.face[key], A2.face[key], A1.rank(key[0], key[1]), A2.rank(key[0], key[1])
        )
        for key in A1.face
    }
    degen = {
        key: blockdiag(
            A1.degen[key],
            A2.degen[key],
            A1.rank(key[0], key[1]),
            A2.rank(key[0], key[1]),
        )
        for key in A1.degen
    }
    return CosimplicialSimplicialModule(
        R, A1.topc, A1.tops, ranks, coface, codeg, face, degen
    )


def totalization_bicomplex(A):
    """Normalize the cosimplicial direction, then the simplicial one, and
    assemble the result as a bicomplex (chain degree a = simplicial,
    cochain degree b = cosimplicial)."""
    R = A.ring
    incl_c = {}
    dc = {}
    for m in range(A.tops + 1):
        Cm, inc = normalize_cosimplicial(A.cosimplicial_level(m))
        for b in range(A.topc + 1):
            incl_c[(b, m)] = inc[b]
            if b < A.topc:
                dc[(b, m)] = Cm.diff(b)
    incl_s = {}
    d_chain = {}
    d_cochain = {}
    ranks = {}
    for b in range(A.topc + 1):
        fc = {}
        dg = {}
        for m in range(1, A.tops + 1):
            for i in range(m + 1):
                fc[(m, i)] = restrict_map(
                    R, A.face[(b, m, i)], incl_c[(b, m)], incl_c[(b, m - 1)]
                )
        for m in range(A.tops):
            for i in range(m + 1):
                dg[(m, i)] = restrict_map(
                    R, A.degen[(b, m, i)], incl_c[(b, m)], incl_c[(b, m + 1)]
                )
        Sb = SimplicialModule(
            R, A.tops, {m: len(incl_c[(b, m)]) for m in range(A.tops + 1)}, fc, dg
        )
        Ch, inc_s = normalize_simplicial(Sb)
        for a in range(A.tops + 1):
            incl_s[(b, a)] = inc_s[a]
            ranks[(a, b)] = len(inc_s[a])
            if a >= 1:
                d_chain[(a, b)] = Ch.diff(a)
    for b in range(A.topc):
        for a in range(A.tops + 1):
            d_cochain[(a, b)] = restrict_map(
                R, dc[(b, a)], incl_s[(b, a)], incl_s[(b + 1, a)]
            )
    B = BiComplex(R, ranks, d_chain, d_cochain)
    B.validate()
    return B


def total_route_dims(A, nmax=2):
    """Dimensions from the totalization route: the MC space as cycles in
    total degree -1 of the full bicomplex, and the homotopy dimensions
    from the brutal cochain truncation at 1."""
    R = A.ring
    B = totalization_bicomplex(A)
    T_full = B.total_complex()
    z = T_full.rank(-1) - linalg.rank(R, T_full.diff(-1), T_full.rank(-1))
    T = B.drop_cochain_rows_below(1).total_complex()
    pi = {}
    for n in range(nmax + 1):
        m = n - 1
        dim_mid = T.rank(m)
        rk_out = linalg.rank(R, T.diff(m), dim_mid)
        rk_in = linalg.rank(R, T.diff(m + 1), T.rank(m + 1))
        pi[n] = dim_mid - rk_out - rk_in
    return {"mc": z, "pi": pi}


class AbelianDerivedMC:
    """Direct model of the derived Maurer-Cartan space of an abelian
    cosimplicial simplicial module.

    A k-simplex is a family (w_n), n <= topc-1, of chain maps from the
    normalized chains of the prism (n-simplex) x (k-simplex) to the Moore
    complex of A^{n+1}, subject to the face, degeneracy, and lowest-
    codegeneracy conditions of the derived MC space.  The whole family is
    one linear system; simplicial structure comes from precomposition in
    the prism factor."""

    def __init__(self, A, ktop, budget=8_000_000):
        self.A = A
        self.R = A.ring
        self.ktop = ktop
        self.ncap = A.topc - 1
        self.tops = A.tops
        self.budget = budget
        self.moore = {}
        for n in range(A.topc + 1):
            self.moore[n] = normalize_simplicial(A.simplicial_level(n))
        self.cf = {}
        for n in range(A.topc):
            for i in range(n + 2):
                self.cf[(n, i)] = {
                    d: restrict_map(
                        self.R,
                        A.coface[(n, i)][d],
                        self.moore[n][1][d],
                        self.moore[n + 1][1][d],
                    )
                    for d in range(self.tops + 1)
                }
        self.sg = {}
        for n in range(1, A.topc + 1):
            for i in range(n):
                self.sg[(n, i)] = {
                    d: restrict_map(
                        self.R,
                        A.codeg[(n, i)][d],
                        self.moore[n][1][d],
                        self.moore[n - 1][1][d],
                    )
                    for d in range(self.tops + 1)
                }
        self._grids = {}
        self._chain_maps = {}
        self._bases = {}
        self._boundary_images = {}

    # -- grids ---------------------------------------------------------

    def _ns(self, n, d):
        return self.moore[n][0].rank(d)

    _sset_cache = {}

    def _grid(self, n, k):
        """Prism simplicial set and its normalized chains.  Chains are kept
        one degree above the simplicial truncation: a chain map into a
        complex that vanishes above degree tops must still kill boundaries
        arriving from degree tops + 1.  The simplicial sets themselves are
        ring independent and shared across instances."""
        key = (n, k)
        if key not in self._grids:
            skey = (n, k, self.tops + 1)
            if skey not in AbelianDerivedMC._sset_cache:
                AbelianDerivedMC._sset_cache[skey] = product_sset(
                    standard_simplex(n), standard_simplex(k), self.tops + 1
                )
            K = AbelianDerivedMC._sset_cache[skey]
            from .simplicial import normalized_chains

            self._grids[key] = (K, normalized_chains(K, self.R, self.tops + 1))
        return self._grids[key]

    def _g(self, n, k, d):
        return self._grid(n, k)[1].rank(d)

    def _induced(self, tag, n, k, i):
        """Chain-map matrices for the prism maps: 'dl'/'sl' act on the
        n-factor, 'fk'/'gk' on the k-factor."""
        key = (tag, n, k, i)
        if key not in self._chain_maps:
            if tag == "dl":
                dom, cod = self._grid(n - 1, k)[0], self._grid(n, k)[0]
                act = product_vertex_map(delta(i, n), identity_map(k))
            elif tag == "sl":
                dom, cod = self._grid(n + 1, k)[0], self._grid(n, k)[0]
                act = product_vertex_map(sigma(i, n), identity_map(k))
            elif tag == "fk":
                dom, cod = self._grid(n, k - 1)[0], self._grid(n, k)[0]
                act = product_vertex_map(identity_map(n), delta(i, k))
            else:
                dom, cod = self._grid(n, k + 1)[0], self._grid(n, k)[0]
                act = product_vertex_map(identity_map(n), sigma(i, k))
            self._chain_maps[key] = normalized_chain_map(
                dom, cod, act, self.R, self.tops
            )
        return self._chain_maps[key]

    # -- the linear system ---------------------------------------------

    def layout(self, k):
        offs = {}
        total = 0
        for n in range(self.ncap + 1):
            for d in range(self.tops + 1):
                nr = self._ns(n + 1, d)
                nc = self._g(n, k, d)
                offs[(n, d)] = (total, nr, nc)
                total += nr * nc
        return offs, total

    def constraint_rows(self, k):
        R = self.R
        offs, total = self.layout(k)
        rows = []

        def new_row():
            return [R.zero()] * total

        def put(row, n, d, a, c, coeff):
            off, nr, nc = offs[(n, d)]
            idx = off + a * nc + c
            row[idx] = R.add(row[idx], coeff)

        est = 0
        for n in range(self.ncap + 1):
            for d in range(1, self.tops + 2):
                est += self._ns(n + 1, d - 1) * self._g(n, k, d)
        if est * total > self.budget:
            raise BudgetRefusal(
                "derived MC system of %d x %d entries exceeds the budget"
                % (est, total)
            )

        for n in range(self.ncap + 1):
            DA = self.moore[n + 1][0]
            Gch = self._grid(n, k)[1]
            for d in range(1, self.tops + 2):
                Dg = Gch.diff(d)
                DAm = DA.diff(d)
                for i in range(self._ns(n + 1, d - 1)):
                    for c in range(self._g(n, k, d)):
                        row = new_row()
                        for j in range(self._g(n, k, d - 1)):
                            if not R.is_zero(Dg[j][c]):
                                put(row, n, d - 1, i, j, Dg[j][c])
                        for a in range(self._ns(n + 1, d)):
                            if not R.is_zero(DAm[i][a]):
                                put(row, n, d, a, c, R.neg(DAm[i][a]))
                        rows.append(row)
        for n in range(self.ncap + 1):
            for d in range(self.tops + 1):
                S0 = self.sg[(n + 1, 0)][d]
                for i2 in range(self._ns(n, d)):
                    live = [a for a in range(self._ns(n + 1, d)) if not R.is_zero(S0[i2][a])]
                    if not live:
                        continue
                    for c in range(self._g(n, k, d)):
                        row = new_row()
                        for a in live:
                            put(row, n, d, a, c, S0[i2][a])
                        rows.append(row)
        for n in range(1, self.ncap + 1):
            for i in range(n + 1):
                Dl = self._induced("dl", n, k, i)
                for d in range(self.tops + 1):
                    Dld = Dl[d]
                    for a in range(self._ns(n + 1, d)):
                        for c in range(self._g(n - 1, k, d)):
                            row = new_row()
                            for j in range(self._g(n, k, d)):
                                if not R.is_zero(Dld[j][c]):
                                    put(row, n, d, a, j, Dld[j][c])
                            if i >= 1:
                                cf = self.cf[(n, i + 1)][d]
                                for b in range(self._ns(n, d)):
                                    if not R.is_zero(cf[a][b]):
                                        put(row, n - 1, d, b, c, R.neg(cf[a][b]))
                            else:
                                cf1 = self.cf[(n, 1)][d]
                                cf0 = self.cf[(n, 0)][d]
                                for b in range(self._ns(n, d)):
                                    if not R.is_zero(cf1[a][b]):
                                        put(row, n - 1, d, b, c, R.neg(cf1[a][b]))
                                    if not R.is_zero(cf0[a][b]):
                                        put(row, n - 1, d, b, c, cf0[a][b])
                            rows.append(row)
        for n in range(self.ncap):
            for i in range(n + 1):
                Sl = self._induced("sl", n, k, i)
                for d in range(self.tops + 1):
                    Sld = Sl[d]
                    sg = self.sg[(n + 2, i + 1)][d]
                    for a in range(self._ns(n + 1, d)):
                        for c in range(self._g(n + 1, k, d)):
                            row = new_row()
                            for j in range(self._g(n, k, d)):
                                if not R.is_zero(Sld[j][c]):
                                    put(row, n, d, a, j, Sld[j][c])
                            for b in range(self._ns(n + 2, d)):
                                if not R.is_zero(sg[a][b]):
                                    put(row, n + 1, d, b, c, R.neg(sg[a][b]))
                            rows.append(row)
        return rows, total

    def basis(self, k):
        if k not in self._bases:
            rows, total = self.constraint_rows(k)
            self._bases[k] = linalg.kernel_basis(self.R, rows, total)
            self._rows_cache = (k, rows, total)
        return self._bases[k]

    # -- simplicial structure ------------------------------------------

    def _transport(self, tag, k, j, vec, kto):
        """Precompose the family with a prism map in the k-factor."""
        R = self.R
        offs_src, _ = self.layout(k)
        offs_dst, total_dst = self.layout(kto)
        out = [R.zero()] * total_dst
        for n in range(self.ncap + 1):
            mats = self._induced(tag, n, k, j)
            for d in range(self.tops + 1):
                off, nr, nc = offs_src[(n, d)]
                offo, nro, nco = offs_dst[(n, d)]
                M = mats[d]
                cols = [[] for _ in range(nco)]
                for j2 in range(nc):
                    rowM = M[j2]
                    for cp in range(nco):
                        if not R.is_zero(rowM[cp]):
                            cols[cp].append((j2, rowM[cp]))
                for a in range(nr):
                    base = off + a * nc
                    baso = offo + a * nco
                    for cp in range(nco):
                        s = R.zero()
                        for j2, coeff in cols[cp]:
                            s = R.add(s, R.mul(vec[base + j2], coeff))
                        out[baso + cp] = s
        return out

    def face_vector(self, k, j, vec):
        return self._transport("fk", k, j, vec, k - 1)

    def degen_vector(self, k, j, vec):
        return self._transport("gk", k, j, vec, k + 1)

    def boundary_images(self, k):
        """Alternating face sums of the level-k solution basis, as vectors
        in the ambient level-(k-1) coordinate space."""
        if k not in self._boundary_images:
            R = self.R
            imgs = []
            for v in self.basis(k):
                w = None
                for j in range(k + 1):
                    fv = self.face_vector(k, j, v)
                    if j % 2 == 1:
                        fv = [R.neg(x) for x in fv]
                    w = fv if w is None else [R.add(a, b) for a, b in zip(w, fv)]
                imgs.append(w)
            self._boundary_images[k] = imgs
        return self._boundary_images[k]

    def mc_dim(self):
        return len(self.basis(0))

    def pi_dims(self, nmax, check=True):
        """Homotopy dimensions from the alternating-sum complex of the
        solution spaces.  With ``check``, face images are verified to stay
        inside the solution spaces and the boundary squares to zero."""
        R = self.R
        if check:
            for k in range(1, nmax + 2):
                below = self.basis(k - 1)
                _, tot = self.layout(k - 1)
                stacked = list(below)
                for v in self.basis(k):
                    for j in range(k + 1):
                        stacked.append(self.face_vector(k, j, v))
                if linalg.rank(R, stacked, tot) != len(below):
                    raise ValueError("face left the solution space")
            for k in range(2, nmax + 2):
                for w in self.boundary_images(k):
                    ww = None
                    for j in range(k):
                        fv = self.face_vector(k - 1, j, w)
                        if j % 2 == 1:
                            fv = [R.neg(x) for x in fv]
                        ww = fv if ww is None else [R.add(a, b) for a, b in zip(ww, fv)]
                    if any(not R.is_zero(x) for x in ww):
                        raise ValueError("boundary does not square to zero")
        pi = {}
        for n in range(nmax + 1):
            dim_v = len(self.basis(n))
            rk_out = 0
            if n >= 1:
                _, tot = self.layout(n - 1)
                rk_out = linalg.rank(R, self.boundary_images(n), tot)
            _, tot_n = self.layout(n)
            rk_in = linalg.rank(R, self.boundary_images(n + 1), tot_n)
            pi[n] = dim_v - rk_out - rk_in
        return pi

    def gauge_translation(self, k, gmaps):
        """Ambient translation vector of the abelian gauge action at
        simplicial level k: the n-th block is (leading cofaces of the
        constant family of g) minus (0-th coface after leading cofaces).
        ``gmaps`` is a chain map from the normalized chains of the
        k-simplex to the Moore complex of A^0, given per degree."""
        R = self.R
        offs, total = self.layout(k)
        out = [R.zero()] * total
        simplex_k = standard_simplex(k)
        for n in range(self.ncap + 1):
            up1 = {}
            up0 = {}
            for d in range(self.tops + 1):
                M = linalg.identity(R, self._ns(0, d))
                for lev in range(n + 1):
                    M = linalg.mat_mul(R, self.cf[(lev, 1)][d], M, ncols=self._ns(0, d))
                up1[d] = M
                M0 = linalg.identity(R, self._ns(0, d))
                for lev in range(n):
                    M0 = linalg.mat_mul(R, self.cf[(lev, 1)][d], M0, ncols=self._ns(0, d))
                up0[d] = linalg.mat_mul(R, self.cf[(n, 0)][d], M0, ncols=self._ns(0, d))
            proj = normalized_chain_map(
                self._grid(n, k)[0],
                simplex_k,
                lambda d, pair: pair[1],
                R,
                self.tops,
            )
            for d in range(self.tops + 1):
                off, nr, nc = offs[(n, d)]
                gm = gmaps.get(d)
                if gm is None:
                    continue
                block = linalg.mat_mul(
                    R,
                    linalg.mat_sub(R, up1[d], up0[d]),
                    linalg.mat_mul(R, gm, proj[d], ncols=nc),
                    ncols=nc,
                )
                for a in range(nr):
                    for c in range(nc):
                        out[off + a * nc + c] = block[a][c]
        return out


def mmc_abelian(A, nmax=2, budget=8_000_000):
    """Compare the two computations of the derived MC space of an abelian
    cosimplicial simplicial module: the direct model and the totalization
    of the doubly normalized bicomplex.  Raises on disagreement."""
    if nmax > A.topc - 2:
        raise TruncationRefusal(
            "homotopy comparison needs cosimplicial truncation >= n + 2"
        )
    route_total = total_route_dims(A, nmax)
    model = AbelianDerivedMC(A, nmax + 1, budget=budget)
    pi_direct = model.pi_dims(nmax)
    result = {
        "mc_direct": model.mc_dim(),
        "mc_total": route_total["mc"],
        "pi_direct": pi_direct,
        "pi_total": route_total["pi"],
    }
    if result["mc_direct"] != result["mc_total"]:
        raise ValueError("MC dimensions disagree: %r" % (result,))
    for n in range(nmax + 1):
        if pi_direct[n] != route_total["pi"][n]:
            raise ValueError("homotopy dimensions disagree: %r" % (result,))
    result["agree"] = True
    return result
