"""Shuffle calculus on tensor powers with odd letters.

This module computes, over an exact coefficient ring, the subspace of
multilinear maps V^(tensor m) -> V that vanish on signed shuffle products,
together with the degree bookkeeping used by the deformation complexes of
finite-rank algebra moduli.  All letters are treated as odd, so the sign of
a shuffle permutation is its ordinary signature.

Conventions fixed here and pinned by tests:
  * words of length m over an r-letter alphabet index the basis of
    V^(tensor m), ordered lexicographically;
  * the signed shuffle of blocks u (length p) and v (length q) is the sum
    over all ways of interleaving u and v keeping each block in order, with
    the signature of the interleaving as coefficient;
  * the composition circ(f, g) inserts g into every slot of f with the
    sign (-1)^(|g| * (slot - 1)), and the bracket is the graded commutator.
"""

from itertools import combinations, product

from . import linalg


def words(r, m):
    """All length-m words over the alphabet {0, ..., r-1}, lex order."""
    return [tuple(w) for w in product(range(r), repeat=m)]


def word_index(word, r):
    idx = 0
    for letter in word:
        idx = idx * r + letter
    return idx


def block_sign(positions, m):
    """Signature of the interleaving that puts one block at ``positions``.

    The permutation sends the concatenation (block letters, then the
    complementary letters, each in order) to the interleaved word; its sign
    is (-1)^(number of pairs (s, t) with s in positions, t outside, s > t).
    """
    inside = set(positions)
    inv = 0
    for s in positions:
        for t in range(m):
            if t not in inside and s > t:
                inv += 1
    return -1 if inv % 2 else 1


def signed_shuffle_vectors(R, r, m):
    """Spanning vectors (length r^m) of the signed-shuffle subspace."""
    vecs = []
    dim = r**m
    for p in range(1, m):
        q = m - p
        for u in words(r, p):
            for v in words(r, q):
                vec = linalg.zero_vec(R, dim)
                for pos in combinations(range(m), p):
                    word = [None] * m
                    rest = [t for t in range(m) if t not in set(pos)]
                    for a, s in enumerate(pos):
                        word[s] = u[a]
                    for b, t in enumerate(rest):
                        word[t] = v[b]
                    c = R.from_int(block_sign(pos, m))
                    j = word_index(tuple(word), r)
                    vec[j] = R.add(vec[j], c)
                if not all(R.is_zero(c) for c in vec):
                    vecs.append(vec)
    return vecs


def shuffle_quotient_dim(R, r, m):
    """Dimension of V^(tensor m) modulo the signed-shuffle subspace."""
    if m == 0:
        return 1
    vecs = signed_shuffle_vectors(R, r, m)
    return r**m - linalg.rank(R, vecs)


class SymMapSpace:
    """Multilinear maps V^(tensor m) -> V vanishing on signed shuffles.

    A map is stored as an r x r^m matrix (rows indexed by the target
    coordinate, columns by words).  The admissible rows for target ``a``
    form a subspace given by a basis in kernel-echelon form: basis vector j
    equals 1 at its free column, 0 at the other free columns.  Coordinates
    of an admissible map are therefore read off at the free columns over
    any coefficient ring, and reconstruction is verified exactly.

    Weights: when ``weights`` (one integer per letter) is given, row ``a``
    is additionally constrained to words whose total weight equals the
    weight of the target letter ``a``; this models graded multilinear maps
    that preserve the grading.
    """

    def __init__(self, R, r, m, weights=None, _rows=None):
        self.ring = R
        self.r = r
        self.m = m
        self.weights = list(weights) if weights is not None else None
        self.cols = r**m
        if _rows is not None:
            self.row_data = _rows
        else:
            self.row_data = self._compute_rows(R)
        self.labels = []
        for a in range(self.r):
            basis, free = self.row_data[a]
            for j in range(len(basis)):
                self.labels.append((a, j))
        self.dim = len(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def _compute_rows(self, R):
        if not getattr(R, "is_field", False):
            raise ValueError("row bases are computed over a field; use transport")
        shuffles = signed_shuffle_vectors(R, r=self.r, m=self.m) if self.m >= 2 else []
        out = []
        all_words = words(self.r, self.m)
        for a in range(self.r):
            constraints = [list(v) for v in shuffles]
            if self.weights is not None:
                target_w = self.weights[a]
                for col, w in enumerate(all_words):
                    if sum(self.weights[l] for l in w) != target_w:
                        e = linalg.zero_vec(R, self.cols)
                        e[col] = R.one()
                        constraints.append(e)
            basis = linalg.kernel_basis(R, constraints, self.cols)
            pivots = set()
            if constraints:
                pivots = set(linalg.rref(R, constraints, self.cols)[1])
            free = [c for c in range(self.cols) if c not in pivots]
            if len(free) != len(basis):
                raise ValueError("echelon bookkeeping mismatch")
            out.append((basis, free))
        return out

    def quotient_dim(self, a=0):
        return len(self.row_data[a][0])

    def transport(self, S, conv):
        """The same space with coefficients mapped into S via ``conv``."""
        rows = []
        for basis, free in self.row_data:
            rows.append(([[conv(c) for c in v] for v in basis], list(free)))
        return SymMapSpace(S, self.r, self.m, weights=self.weights, _rows=rows)

    def matrix_of(self, coords):
        """The r x r^m matrix of the map with the given coordinates."""
        R = self.ring
        F = linalg.zeros(R, self.r, self.cols)
        for i, c in enumerate(coords):
            if R.is_zero(c):
                continue
            a, j = self.labels[i]
            row = self.row_data[a][0][j]
            for col in range(self.cols):
                F[a][col] = R.add(F[a][col], R.mul(c, row[col]))
        return F

    def coords_of(self, F):
        """Coordinates of an admissible matrix; raises if a row is outside
        the admissible span (checked by exact reconstruction)."""
        R = self.ring
        out = linalg.zero_vec(R, self.dim)
        for a in range(self.r):
            basis, free = self.row_data[a]
            cs = [F[a][c] for c in free]
            recon = linalg.zero_vec(R, self.cols)
            for j, c in enumerate(cs):
                if R.is_zero(c):
                    continue
                recon = linalg.vec_add(
                    R, recon, linalg.vec_scal(R, c, basis[j])
                )
            if not linalg.vec_eq(R, recon, F[a]):
                raise ValueError(
                    "map does not vanish on signed shuffles (row %d)" % a
                )
            for j, c in enumerate(cs):
                out[self.index[(a, j)]] = c
        return out

    def basis_matrix(self, i):
        R = self.ring
        v = linalg.zero_vec(R, self.dim)
        v[i] = R.one()
        return self.matrix_of(v)


def apply_map(R, F, r, m, word):
    """Column of F at ``word`` as a length-r vector."""
    j = word_index(word, r)
    return [F[a][j] for a in range(r)]


def insertion_composite(R, F, G, r, mf, mg, slot):
    """The map w -> F(w_1, ..., G(w_slot, ..), .., w_end) as a matrix.

    F takes mf arguments, G takes mg arguments, ``slot`` is 1-based; the
    result takes mf + mg - 1 arguments.
    """
    mtot = mf + mg - 1
    out = linalg.zeros(R, r, r**mtot)
    for w in words(r, mtot):
        inner = apply_map(R, G, r, mg, w[slot - 1 : slot - 1 + mg])
        col = word_index(w, r)
        for a in range(r):
            acc = R.zero()
            for b in range(r):
                c = inner[b]
                if R.is_zero(c):
                    continue
                outer_word = w[: slot - 1] + (b,) + w[slot - 1 + mg :]
                acc = R.add(acc, R.mul(c, F[a][word_index(outer_word, r)]))
            out[a][col] = acc
    return out


def circ(R, F, G, r, mf, mg):
    """Insertion sum with signs: sum_slot (-1)^((mg-1)(slot-1)) F o_slot G."""
    deg_g = mg - 1
    mtot = mf + mg - 1
    out = linalg.zeros(R, r, r**mtot)
    for slot in range(1, mf + 1):
        term = insertion_composite(R, F, G, r, mf, mg, slot)
        sgn = R.from_int((-1) ** (deg_g * (slot - 1)))
        out = linalg.mat_add(R, out, linalg.mat_scal(R, sgn, term))
    return out


def graded_bracket(R, F, G, r, mf, mg):
    """[F, G] = circ(F, G) - (-1)^(|F||G|) circ(G, F) on argument counts."""
    degf, degg = mf - 1, mg - 1
    left = circ(R, F, G, r, mf, mg)
    right = circ(R, G, F, r, mg, mf)
    sgn = R.from_int(-((-1) ** (degf * degg)))
    return linalg.mat_add(R, left, linalg.mat_scal(R, sgn, right))
