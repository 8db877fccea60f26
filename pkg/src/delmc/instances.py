"""Concrete moduli problems and their independent brute-force oracles.

Two families of deformation problems are built here on top of the
multilinear shuffle calculus:

* rank-r commutative non-unital algebra structures on a free module, as a
  DGLA of shuffle-vanishing multilinear maps with the insertion bracket and
  zero differential (Maurer-Cartan = associativity, gauge = base change);
* the weight-windowed graded variant, where letters carry weights in a
  finite window and every stored map preserves the grading.

The oracles at the bottom classify algebra structures over a finite field
by raw enumeration and compute derivation/deformation dimensions by direct
linear solves.  They share no code with the engine routes they are used to
check, beyond the generic exact linear algebra.
"""

from fractions import Fraction
from itertools import product as iproduct

from . import dgla as dgla_mod
from . import linalg
from .errors import BudgetRefusal
from .liecoalg import SymMapSpace, graded_bracket, word_index
from .rings import Rationals


class NotAUnitError(ValueError):
    pass


def _build_levels(R, r, top, weights):
    spaces = {n: SymMapSpace(R, r, n + 1, weights=weights) for n in range(top + 1)}
    ranks = {n: spaces[n].dim for n in range(top + 1)}
    bracket = {}
    for p in range(top + 1):
        for q in range(p, top + 1):
            if p + q > top:
                continue
            table = []
            for i in range(ranks[p]):
                Fi = spaces[p].basis_matrix(i)
                row = []
                for j in range(ranks[q]):
                    Gj = spaces[q].basis_matrix(j)
                    H = graded_bracket(R, Fi, Gj, r, p + 1, q + 1)
                    row.append(spaces[p + q].coords_of(H))
                table.append(row)
            bracket[(p, q)] = table
    return spaces, ranks, bracket


class ConjugationGauge:
    """Invertible (block) matrices acting by g . f = g o f o (g^{-1})^tensor.

    ``blocks`` lists (start, size) index ranges; elements must be zero
    outside the diagonal blocks (one block per grading weight; a single
    block in the ungraded case).  The derivative map D is zero since the
    underlying differential is zero.
    """

    def __init__(self, ring, spaces, blocks, r):
        self.ring = ring
        self.spaces = spaces
        self.blocks = list(blocks)
        self.r = r

    def identity(self):
        return linalg.identity(self.ring, self.r)

    def in_block_shape(self, g):
        R = self.ring
        allowed = set()
        for start, size in self.blocks:
            for i in range(start, start + size):
                for j in range(start, start + size):
                    allowed.add((i, j))
        for i in range(self.r):
            for j in range(self.r):
                if (i, j) not in allowed and not R.is_zero(g[i][j]):
                    return False
        return True

    def mul(self, g, h):
        return linalg.mat_mul(self.ring, g, h, ncols=self.r)

    def inv(self, g):
        gi = linalg.mat_inv(self.ring, g)
        if gi is None:
            raise NotAUnitError("gauge element is not invertible")
        return gi

    def ad_matrix(self, g, n):
        """Matrix of f -> g o f o (g^{-1})^{tensor (n+1)} on level n."""
        R = self.ring
        space = self.spaces[n]
        gi = self.inv(g)
        K = linalg.kron_power(R, gi, n + 1)
        cols = []
        for i in range(space.dim):
            F = space.basis_matrix(i)
            moved = linalg.mat_mul(
                R, linalg.mat_mul(R, g, F, ncols=space.cols), K, ncols=space.cols
            )
            cols.append(space.coords_of(moved))
        return linalg.mat_from_cols(R, cols, nrows=space.dim)

    def D_vec(self, g):
        return linalg.zero_vec(self.ring, self.spaces[1].dim)

    def elements(self):
        """All invertible block matrices over a finite coefficient ring."""
        R = self.ring
        scalars = list(R.elements())
        slots = []
        for start, size in self.blocks:
            for i in range(start, start + size):
                for j in range(start, start + size):
                    slots.append((i, j))
        for combo in iproduct(scalars, repeat=len(slots)):
            g = linalg.zeros(R, self.r, self.r)
            for (i, j), c in zip(slots, combo):
                g[i][j] = c
            if linalg.mat_inv(R, g) is not None:
                yield g


class AlgebraModuli:
    """A multilinear-map DGLA instance with realization and decoders."""

    def __init__(self, kind, r, top, weights, name):
        self.kind = kind
        self.r = r
        self.top = top
        self.weights = weights
        QQ = Rationals()
        spaces, ranks, bracket = _build_levels(QQ, r, top, weights)
        self.base_ring = QQ
        self.base_spaces = spaces
        self.L = dgla_mod.DGLA(QQ, ranks, {}, bracket, name=name)
        if weights is None:
            self.blocks = [(0, r)]
        else:
            self.blocks = []
            i = 0
            while i < r:
                j = i
                while j < r and weights[j] == weights[i]:
                    j += 1
                self.blocks.append((i, j - i))
                i = j

    def spaces_over(self, A):
        if A == self.base_ring:
            return self.base_spaces
        conv = A.from_fraction
        return {n: sp.transport(A, conv) for n, sp in self.base_spaces.items()}

    def dgla_over(self, A):
        if A == self.base_ring:
            return self.L
        return dgla_mod.tensor_dgla(self.L, A)

    def gauge_over(self, A):
        return ConjugationGauge(A, self.spaces_over(A), self.blocks, self.r)

    def decode_product(self, A, omega):
        """Structure constants of the algebra encoded by a level-1 vector."""
        space = self.spaces_over(A)[1]
        F = space.matrix_of(omega)
        r = self.r
        table = [
            [[F[a][word_index((i, j), r)] for a in range(r)] for j in range(r)]
            for i in range(r)
        ]
        return table

    def encode_product(self, A, table):
        """Level-1 vector of a commutative product table; raises when the
        table is not symmetric or breaks the grading."""
        space = self.spaces_over(A)[1]
        r = self.r
        F = linalg.zeros(A, r, r**2)
        for i in range(r):
            for j in range(r):
                for a in range(r):
                    F[a][word_index((i, j), r)] = table[i][j][a]
        return space.coords_of(F)

    def product_is_associative(self, A, table):
        """Direct check of (xy)z = x(yz) on basis triples."""
        r = self.r
        for i in range(r):
            for j in range(r):
                for l in range(r):
                    lhs = linalg.zero_vec(A, r)
                    rhs = linalg.zero_vec(A, r)
                    for b in range(r):
                        lhs = linalg.vec_add(
                            A,
                            lhs,
                            linalg.vec_scal(A, table[i][j][b], table[b][l]),
                        )
                        rhs = linalg.vec_add(
                            A,
                            rhs,
                            linalg.vec_scal(A, table[j][l][b], table[i][b]),
                        )
                    if not linalg.vec_eq(A, lhs, rhs):
                        return False
        return True


def build_finite_scheme_dgla(r, top=3):
    """Moduli of rank-r commutative non-unital algebra structures."""
    return AlgebraModuli("finite-scheme", r, top, None, "finite-scheme-r%d" % r)


def build_window_dgla(window, h, top=3):
    """Weight-windowed graded variant: letters of weight w in [p, q] with
    multiplicity h(w); all maps preserve the weight."""
    p, q = window
    if q < p:
        raise ValueError("empty window")
    hmap = {w: (h(w) if callable(h) else h[w]) for w in range(p, q + 1)}
    weights = []
    for w in range(p, q + 1):
        if hmap[w] < 0:
            raise ValueError("negative multiplicity")
        weights.extend([w] * hmap[w])
    r = len(weights)
    inst = AlgebraModuli("window", r, top, weights, "window-%d-%d" % (p, q))
    return inst


def two_term_bracket_dgla(lam, ring=None):
    """L^1 = k x, L^2 = k y, d = 0, [x, x] = lam * y."""
    R = ring if ring is not None else Rationals()
    if isinstance(lam, (int, Fraction)):
        lam = R.from_fraction(Fraction(lam))
    bracket = {(1, 1): [[[lam]]]}
    return dgla_mod.DGLA(R, {1: 1, 2: 1}, {}, bracket, name="two-term")


# ---------------------------------------------------------------------------
# oracles: raw enumeration, no engine code paths


def _oracle_product_tables(F, r):
    """All symmetric structure-constant tables c[i][j] in F^r."""
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    scalars = list(F.elements())
    vec_choices = list(iproduct(scalars, repeat=r))
    for combo in iproduct(vec_choices, repeat=len(pairs)):
        table = [[None] * r for _ in range(r)]
        for (i, j), v in zip(pairs, combo):
            table[i][j] = list(v)
            table[j][i] = list(v)
        yield table


def _oracle_associative(F, r, table):
    for i in range(r):
        for j in range(r):
            for l in range(r):
                for a in range(r):
                    lhs = F.zero()
                    rhs = F.zero()
                    for b in range(r):
                        lhs = F.add(lhs, F.mul(table[i][j][b], table[b][l][a]))
                        rhs = F.add(rhs, F.mul(table[j][l][b], table[i][b][a]))
                    if not F.eq(lhs, rhs):
                        return False
    return True


def _oracle_gl(F, r):
    scalars = list(F.elements())
    out = []
    for combo in iproduct(scalars, repeat=r * r):
        g = [list(combo[i * r : (i + 1) * r]) for i in range(r)]
        if linalg.mat_inv(F, g) is not None:
            out.append(g)
    return out


def _oracle_transport(F, r, g, gi, table):
    """(g . c)(x, y) = g c(g^{-1} x, g^{-1} y)."""
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(r):
            acc = [F.zero()] * r
            for s in range(r):
                for t in range(r):
                    c = F.mul(gi[s][i], gi[t][j])
                    if F.is_zero(c):
                        continue
                    for a in range(r):
                        acc[a] = F.add(acc[a], F.mul(c, table[s][t][a]))
            out[i][j] = [
                _dot_row(F, g[a], acc) for a in range(r)
            ]
    return out


def _dot_row(F, row, vec):
    tot = F.zero()
    for c, v in zip(row, vec):
        tot = F.add(tot, F.mul(c, v))
    return tot


def oracle_algebra_classification(r, F, budget=10**7, commutative=True):
    """Isomorphism classes of commutative products on F^r, by brute force.

    Enumerates all symmetric structure-constant tables, filters by
    associativity, and partitions by GL_r(F) base change.  Refuses when the
    candidate-times-group work estimate exceeds the budget.
    """
    n_candidates = len(list(F.elements())) ** (r * r * (r + 1) // 2)
    gl = _oracle_gl(F, r)
    if n_candidates * len(gl) > budget:
        raise BudgetRefusal(
            "classification needs %d evaluations, budget %d"
            % (n_candidates * len(gl), budget)
        )
    assoc = [
        t for t in _oracle_product_tables(F, r) if _oracle_associative(F, r, t)
    ]

    def key(table):
        return tuple(
            tuple(tuple(F.show(c) for c in v) for v in row) for row in table
        )

    pos = {key(t): i for i, t in enumerate(assoc)}
    seen = [False] * len(assoc)
    classes = []
    pairs = [(g, linalg.mat_inv(F, g)) for g in gl]
    for i, t in enumerate(assoc):
        if seen[i]:
            continue
        orbit = set()
        autos = 0
        k0 = key(t)
        for g, gi in pairs:
            moved = _oracle_transport(F, r, g, gi, t)
            km = key(moved)
            if km not in pos:
                raise ValueError("base change left the associative set")
            orbit.add(km)
            if km == k0:
                autos += 1
        for km in orbit:
            seen[pos[km]] = True
        classes.append(
            {
                "representative": t,
                "orbit_size": len(orbit),
                "automorphism_order": autos,
            }
        )
    return {
        "classes": classes,
        "associative_count": len(assoc),
        "group_order": len(gl),
    }


def oracle_derivations_and_deformations(table, k, r, module_rank=1):
    """Dimensions of derivations and of first-order deformations.

    ``table`` is a symmetric structure-constant table over the field ``k``.
    Derivations: linear maps D with D(xy) = D(x)y + x D(y).  Deformations:
    symmetric corrections m' with the linearized associativity, modulo the
    corrections induced by infinitesimal base change.  Both dimensions scale
    linearly in the rank of the coefficient module.
    """
    if module_rank == 0:
        return {"derivations": 0, "deformations": 0}
    # derivations: unknowns D[a][b], equations per (i <= j, target a)
    rows = []
    for i in range(r):
        for j in range(i, r):
            for a in range(r):
                row = [k.zero()] * (r * r)
                # D applied to the product e_i e_j
                for b in range(r):
                    row[a * r + b] = k.add(row[a * r + b], table[i][j][b])
                # minus D(e_i) e_j: D(e_i) = sum_b D[b][i] e_b
                for b in range(r):
                    row[b * r + i] = k.sub(row[b * r + i], table[b][j][a])
                    row[b * r + j] = k.sub(row[b * r + j], table[i][b][a])
                rows.append(row)
    der = len(linalg.kernel_basis(k, rows, r * r))
    # deformations: unknowns mp[(i<=j), a]
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    pidx = {}
    for idx, (i, j) in enumerate(pairs):
        pidx[(i, j)] = idx
        pidx[(j, i)] = idx
    nunk = len(pairs) * r

    def mp_col(i, j, a):
        return pidx[(i, j)] * r + a

    rows = []
    for i in range(r):
        for j in range(r):
            for l in range(r):
                for a in range(r):
                    row = [k.zero()] * nunk
                    for b in range(r):
                        # m'(e_i e_j, e_l) + m(m'(e_i,e_j), e_l)
                        row[mp_col(b, l, a)] = k.add(
                            row[mp_col(b, l, a)], table[i][j][b]
                        )
                        row[mp_col(i, j, b)] = k.add(
                            row[mp_col(i, j, b)], table[b][l][a]
                        )
                        # - m'(e_i, e_j e_l) - m(e_i, m'(e_j,e_l))
                        row[mp_col(i, b, a)] = k.sub(
                            row[mp_col(i, b, a)], table[j][l][b]
                        )
                        row[mp_col(j, l, b)] = k.sub(
                            row[mp_col(j, l, b)], table[i][b][a]
                        )
                    rows.append(row)
    Z = linalg.kernel_basis(k, rows, nunk)
    # boundaries: h in gl_r -> h m(x,y) - m(hx,y) - m(x,hy)
    bcols = []
    for a0 in range(r):
        for b0 in range(r):
            col = [k.zero()] * nunk
            for i in range(r):
                for j in range(i, r):
                    for a in range(r):
                        val = k.zero()
                        if a == a0:
                            val = k.add(val, table[i][j][b0])
                        if i == b0:
                            val = k.sub(val, table[a0][j][a])
                        if j == b0:
                            val = k.sub(val, table[i][a0][a])
                        col[mp_col(i, j, a)] = k.add(col[mp_col(i, j, a)], val)
            bcols.append(col)
    # boundaries land in Z; deformation dim = dim Z - rank(boundaries)
    brank = linalg.rank(k, bcols, nunk)
    for col in bcols:
        if not linalg.in_span(k, Z, col):
            raise ValueError("trivial deformation is not a cocycle")
    defs = len(Z) - brank
    return {
        "derivations": der * module_rank,
        "deformations": defs * module_rank,
    }
