"""Finite simplicial sets.

Monotone maps between finite ordinals are tuples of images: a map
[m] -> [n] is a tuple of length m+1 with nondecreasing values in 0..n.
Composition, the elementary faces/degeneracies and epi-mono factorization
are all computed on these tuples.

Two carriers are provided with one duck interface (``simplices(n)``,
``face(n, i, x)``, ``degen(n, i, x)``):

* ``PresentedSimplicialSet`` -- finitely many nondegenerate simplices plus a
  face table on them.  A general simplex at level n is a pair
  ``(label, surjection)`` meaning the degeneracy of a nondegenerate simplex
  along a monotone surjection; operators act by composing the surjection and
  factoring, looking up the face table as needed.
* ``TableSimplicialSet`` -- explicit level sets and operator tables up to a
  truncation level; products and bar constructions land here.
"""

from itertools import combinations

# ---------------------------------------------------------------------------
# monotone maps between finite ordinals


def compose(f, g):
    """(f o g)(i) = f[g[i]]."""
    return tuple(f[x] for x in g)


def identity_map(n):
    return tuple(range(n + 1))


def delta(i, n):
    """Injection [n-1] -> [n] missing i."""
    return tuple(j if j < i else j + 1 for j in range(n))


def sigma(i, n):
    """Surjection [n+1] -> [n] hitting i twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def is_identity(f):
    return all(v == i for i, v in enumerate(f))


def is_monotone(f, n):
    return all(0 <= v <= n for v in f) and all(a <= b for a, b in zip(f, f[1:]))


def epi_mono_factor(f):
    """f = mono o epi with epi surjective onto [k], mono injective."""
    image = sorted(set(f))
    pos = {v: i for i, v in enumerate(image)}
    epi = tuple(pos[v] for v in f)
    mono = tuple(image)
    return mono, epi


def missing_of(mono, n):
    """Values in [n] not hit by an injection into [n]."""
    im = set(mono)
    return [v for v in range(n + 1) if v not in im]


def surjections(n, k):
    """All monotone surjections [n] ->> [k]."""
    if k > n or k < 0:
        return []
    out = []
    # determined by the set of positions 1..n where the value jumps by one
    for jumps in combinations(range(1, n + 1), k):
        val = 0
        f = [0]
        for i in range(1, n + 1):
            if i in jumps:
                val += 1
            f.append(val)
        out.append(tuple(f))
    return out


def injections(m, n):
    """All monotone injections [m] -> [n]."""
    return [tuple(c) for c in combinations(range(n + 1), m + 1)]


# ---------------------------------------------------------------------------


class PresentedSimplicialSet:
    """Simplicial set presented by nondegenerate simplices and a face table.

    ``nondeg``: dict level -> list of labels.
    ``face_table``: dict (level, label, i) -> simplex (label, surjection) one
    level down; required for every nondegenerate simplex of level >= 1.
    """

    def __init__(self, nondeg, face_table, name="sset"):
        self.nondeg = {k: list(v) for k, v in nondeg.items() if v}
        self.face_table = dict(face_table)
        self.name = name
        self.dim = max(self.nondeg) if self.nondeg else 0
        self._cache = {}

    def nd(self, label, level):
        return (label, identity_map(level))

    def level_of(self, simplex):
        return len(simplex[1]) - 1

    def is_nondegenerate(self, simplex):
        return is_identity(simplex[1])

    def simplices(self, n):
        out = []
        for k in sorted(self.nondeg):
            if k > n:
                break
            for srj in surjections(n, k):
                for y in self.nondeg[k]:
                    out.append((y, srj))
        return out

    def apply(self, n, simplex, op):
        """Act by the operator X(op) for a monotone op: [m] -> [n]."""
        y, srj = simplex
        key = (y, srj, op)
        if key in self._cache:
            return self._cache[key]
        comp = compose(srj, op)
        mono, epi = epi_mono_factor(comp)
        k = max(srj) if srj else 0
        if len(mono) == k + 1:
            res = (y, epi)
        else:
            m = max(missing_of(mono, k))
            sub = self.face_table[(k, y, m)]
            mono2 = tuple(v if v < m else v - 1 for v in mono)
            w = self.apply(k - 1, sub, mono2)
            res = self.apply(len(mono2) - 1, w, epi)
        self._cache[key] = res
        return res

    def face(self, n, i, simplex):
        return self.apply(n, simplex, delta(i, n))

    def degen(self, n, i, simplex):
        return self.apply(n, simplex, sigma(i, n))

    def verify(self, top):
        """Simplicial identities, checked exhaustively through level ``top``."""
        for n in range(top + 1):
            for x in self.simplices(n):
                if n >= 2:
                    for j in range(1, n + 1):
                        for i in range(j):
                            a = self.face(n - 1, i, self.face(n, j, x))
                            b = self.face(n - 1, j - 1, self.face(n, i, x))
                            if a != b:
                                raise ValueError("face identity fails at %r" % (x,))
                for i in range(n + 1):
                    for j in range(i, n + 1):
                        a = self.degen(n + 1, i, self.degen(n, j, x))
                        b = self.degen(n + 1, j + 1, self.degen(n, i, x))
                        if a != b:
                            raise ValueError("degeneracy identity fails at %r" % (x,))
                for i in range(n + 2):
                    for j in range(n + 1):
                        lhs = self.face(n + 1, i, self.degen(n, j, x))
                        if i < j:
                            rhs = self.degen(n - 1, j - 1, self.face(n, i, x))
                        elif i in (j, j + 1):
                            rhs = x
                        else:
                            rhs = self.degen(n - 1, j, self.face(n, i - 1, x))
                        if lhs != rhs:
                            raise ValueError("mixed identity fails at %r" % (x,))
        return True


# -- builders ----------------------------------------------------------------


def standard_simplex(n):
    """Delta^n: nondegenerate k-simplices are (k+1)-subsets of 0..n."""
    nondeg = {}
    for k in range(n + 1):
        nondeg[k] = [tuple(c) for c in combinations(range(n + 1), k + 1)]
    faces = {}
    for k in range(1, n + 1):
        for lab in nondeg[k]:
            for i in range(k + 1):
                sub = lab[:i] + lab[i + 1 :]
                faces[(k, lab, i)] = (sub, identity_map(k - 1))
    return PresentedSimplicialSet(nondeg, faces, name="simplex-%d" % n)


def point():
    return standard_simplex(0)


def graph_complex(vertices, edges):
    """1-dimensional simplicial set: ``edges`` is a list of (name, src, tgt)."""
    nondeg = {0: list(vertices)}
    faces = {}
    names = [e[0] for e in edges]
    if names:
        nondeg[1] = names
    for name, src, tgt in edges:
        # face 0 drops vertex 0, leaving the target; face 1 leaves the source
        faces[(1, name, 0)] = (tgt, identity_map(0))
        faces[(1, name, 1)] = (src, identity_map(0))
    return PresentedSimplicialSet(nondeg, faces, name="graph")


def circle_cycle(k):
    """Circle subdivided into k vertices and k edges."""
    vertices = ["v%d" % i for i in range(k)]
    edges = [("e%d" % i, "v%d" % i, "v%d" % ((i + 1) % k)) for i in range(k)]
    return graph_complex(vertices, edges)


def wedge_of_circles(loops):
    """One vertex with ``loops`` loop edges."""
    edges = [("l%d" % i, "v", "v") for i in range(loops)]
    return graph_complex(["v"], edges)


class SmallCategory:
    """Finite category: explicit objects, morphisms, composition table.

    ``morphisms``: dict name -> (src, tgt); ``comp``: dict (g, f) -> name of
    g after f (defined whenever tgt(f) = src(g)); ``ident``: dict obj -> name.
    """

    def __init__(self, objects, morphisms, comp, ident):
        self.objects = list(objects)
        self.morphisms = dict(morphisms)
        self.comp = dict(comp)
        self.ident = dict(ident)

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def compose(self, g, f):
        """g after f."""
        return self.comp[(g, f)]

    def is_identity(self, f):
        return f == self.ident[self.src(f)]

    def validate(self):
        for o in self.objects:
            e = self.ident[o]
            if self.morphisms[e] != (o, o):
                raise ValueError("bad identity at %r" % (o,))
        for f, (a, b) in self.morphisms.items():
            if self.compose(self.ident[b], f) != f or self.compose(f, self.ident[a]) != f:
                raise ValueError("identity law fails at %r" % (f,))
        for f, (a, b) in self.morphisms.items():
            for g, (c, d) in self.morphisms.items():
                if c != b:
                    continue
                for h, (e2, _) in self.morphisms.items():
                    if e2 != d:
                        continue
                    if self.compose(self.compose(h, g), f) != self.compose(h, self.compose(g, f)):
                        raise ValueError("associativity fails")
        return True


def group_category(elements, mul, unit):
    morphs = {g: ("*", "*") for g in elements}
    comp = {(g, f): mul(g, f) for g in elements for f in elements}
    return SmallCategory(["*"], morphs, comp, {"*": unit})


def nerve(cat, top):
    """Nerve of a finite category as a PresentedSimplicialSet up to level top.

    Nondegenerate n-simplices are strings of composable non-identity
    morphisms x_0 --f_1--> x_1 --f_2--> ...; the i-th face drops x_i
    (composing f_{i+1} after f_i for 0 < i < n).  Labels: vertices are
    ("ob", object), higher simplices ("ar", (f_1, ..., f_n)).
    """
    nondeg = {0: [("ob", o) for o in cat.objects]}
    chains = {0: [((o,), ()) for o in cat.objects]}  # (objects-chain, arrows)
    for n in range(1, top + 1):
        level = []
        for objs, arrows in chains[n - 1]:
            last = objs[-1]
            for f in sorted(cat.morphisms):
                a, b = cat.morphisms[f]
                if a == last and not cat.is_identity(f):
                    level.append((objs + (b,), arrows + (f,)))
        if not level:
            break
        chains[n] = level
        nondeg[n] = [("ar", arrows) for objs, arrows in level]

    def canonical(arrows, src_obj):
        """A string possibly containing identities, as (label, surjection)."""
        core = tuple(f for f in arrows if not cat.is_identity(f))
        srj = [0]
        v = 0
        for f in arrows:
            if not cat.is_identity(f):
                v += 1
            srj.append(v)
        label = ("ar", core) if core else ("ob", src_obj)
        return (label, tuple(srj))

    faces = {}
    for n in range(1, top + 1):
        for label in nondeg.get(n, []):
            arrows = label[1]
            for i in range(n + 1):
                if i == 0:
                    new = arrows[1:]
                    src = cat.tgt(arrows[0])
                elif i == n:
                    new = arrows[:-1]
                    src = cat.src(arrows[0])
                else:
                    new = (
                        arrows[: i - 1]
                        + (cat.compose(arrows[i], arrows[i - 1]),)
                        + arrows[i + 1 :]
                    )
                    src = cat.src(arrows[0])
                faces[(n, label, i)] = canonical(new, src)
    return PresentedSimplicialSet(nondeg, faces, name="nerve")


# ---------------------------------------------------------------------------


class TableSimplicialSet:
    """Explicit simplicial set up to a truncation level."""

    def __init__(self, levels, face_ops, degen_ops, top, name="table-sset"):
        self.levels = {n: list(v) for n, v in levels.items()}
        self.face_ops = face_ops  # dict (n, i) -> dict x -> x'
        self.degen_ops = degen_ops
        self.top = top
        self.name = name

    def simplices(self, n):
        return list(self.levels.get(n, []))

    def face(self, n, i, x):
        return self.face_ops[(n, i)][x]

    def degen(self, n, i, x):
        return self.degen_ops[(n, i)][x]

    def is_degenerate(self, n, x):
        if n == 0:
            return False
        for i in range(n):
            if self.degen(n - 1, i, self.face(n, i + 1, x)) == x:
                return True
        return False

    def nondegenerate(self, n):
        return [x for x in self.simplices(n) if not self.is_degenerate(n, x)]

    def verify(self, top=None):
        top = self.top if top is None else top
        for n in range(top + 1):
            for x in self.simplices(n):
                if n >= 2:
                    for j in range(1, n + 1):
                        for i in range(j):
                            if self.face(n - 1, i, self.face(n, j, x)) != self.face(
                                n - 1, j - 1, self.face(n, i, x)
                            ):
                                raise ValueError("face identity fails")
                if n + 1 < top:
                    for i in range(n + 1):
                        for j in range(i, n + 1):
                            if self.degen(n + 1, i, self.degen(n, j, x)) != self.degen(
                                n + 1, j + 1, self.degen(n, i, x)
                            ):
                                raise ValueError("degeneracy identity fails")
                if n < top:
                    for i in range(n + 2):
                        for j in range(n + 1):
                            lhs = self.face(n + 1, i, self.degen(n, j, x))
                            if i < j:
                                rhs = self.degen(n - 1, j - 1, self.face(n, i, x))
                            elif i in (j, j + 1):
                                rhs = x
                            else:
                                rhs = self.degen(n - 1, j, self.face(n, i - 1, x))
                            if lhs != rhs:
                                raise ValueError("mixed identity fails")
        return True


def tabulate(K, top, name=None):
    """Convert any duck simplicial set to explicit tables up to ``top``."""
    levels = {n: list(K.simplices(n)) for n in range(top + 1)}
    face_ops = {}
    degen_ops = {}
    for n in range(top + 1):
        if n >= 1:
            for i in range(n + 1):
                face_ops[(n, i)] = {x: K.face(n, i, x) for x in levels[n]}
        if n < top:
            for i in range(n + 1):
                degen_ops[(n, i)] = {x: K.degen(n, i, x) for x in levels[n]}
    return TableSimplicialSet(
        levels, face_ops, degen_ops, top, name=name or getattr(K, "name", "table-sset")
    )


def nondeg_simplices(K, n):
    if isinstance(K, TableSimplicialSet):
        return K.nondegenerate(n)
    return [(y, identity_map(n)) for y in K.nondeg.get(n, [])]


def simplex_is_degenerate(K, n, x):
    if isinstance(K, TableSimplicialSet):
        return K.is_degenerate(n, x)
    return not is_identity(x[1])


def normalized_chains(K, ring, top):
    """Normalized chain complex: free on nondegenerate simplices, with
    d = alternating face sum, degenerate faces dropped."""
    from . import linalg
    from .complexes import ChainComplex

    basis = {n: nondeg_simplices(K, n) for n in range(top + 1)}
    index = {n: {x: i for i, x in enumerate(basis[n])} for n in basis}
    ranks = {n: len(basis[n]) for n in basis}
    d = {}
    for n in range(1, top + 1):
        M = linalg.zeros(ring, ranks[n - 1], ranks[n])
        for j, x in enumerate(basis[n]):
            for i in range(n + 1):
                y = K.face(n, i, x)
                if simplex_is_degenerate(K, n - 1, y):
                    continue
                r = index[n - 1][y]
                M[r][j] = ring.add(M[r][j], ring.from_int((-1) ** i))
        d[n] = M
    return ChainComplex(ring, ranks, d)


def product_sset(K, L, top):
    """Levelwise product with componentwise operators, up to ``top``."""
    levels = {n: [(x, y) for x in K.simplices(n) for y in L.simplices(n)] for n in range(top + 1)}
    face_ops = {}
    degen_ops = {}
    for n in range(top + 1):
        if n >= 1:
            for i in range(n + 1):
                face_ops[(n, i)] = {
                    (x, y): (K.face(n, i, x), L.face(n, i, y)) for (x, y) in levels[n]
                }
        if n < top:
            for i in range(n + 1):
                degen_ops[(n, i)] = {
                    (x, y): (K.degen(n, i, x), L.degen(n, i, y)) for (x, y) in levels[n]
                }
    return TableSimplicialSet(levels, face_ops, degen_ops, top, name="product")


def vertex_map_simplex(t, simplex):
    """Apply the map of standard simplices induced by a monotone vertex
    map ``t`` (a tuple listing images of vertices) to ``simplex``, which
    is a (label, surjection) pair of a standard simplex."""
    label, srj = simplex
    return epi_mono_factor(compose(t, compose(label, srj)))


def product_vertex_map(t1, t2):
    """Componentwise action of a pair of vertex maps on simplices of a
    product of standard simplices."""

    def act(n, pair):
        return (vertex_map_simplex(t1, pair[0]), vertex_map_simplex(t2, pair[1]))

    return act


def normalized_chain_map(Kdom, Kcod, act, ring, top):
    """Matrices, one per degree, of the chain map of normalized chains
    induced by a level-preserving simplicial map ``act(n, x)``.

    Images that are degenerate in the codomain are sent to zero."""
    from . import linalg

    mats = {}
    for d in range(top + 1):
        dom = nondeg_simplices(Kdom, d)
        cod = nondeg_simplices(Kcod, d)
        pos = {x: i for i, x in enumerate(cod)}
        M = linalg.zeros(ring, len(cod), len(dom))
        for j, x in enumerate(dom):
            z = act(d, x)
            if not simplex_is_degenerate(Kcod, d, z):
                M[pos[z]][j] = ring.one()
        mats[d] = M
    return mats
