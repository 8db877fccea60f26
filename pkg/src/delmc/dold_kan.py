"""Normalization and denormalization between complexes and (co)simplicial modules.

Cosimplicial side: a cochain complex C in degrees >= 0 denormalizes to the
cosimplicial module D(C) with level-n basis labeled (J, m, b): J a subset of
{1..n} with |J| = n - m and b a basis index of C^m, standing for the iterated
coface "d^J" applied to the b-th generator.  A monotone map beta: [n] -> [N]
acts by composing beta with the injection attached to J and refactoring:

* any epi part kills the generator (normalized elements are killed by all
  codegeneracies);
* a mono part missing only indices >= 1 relabels J;
* a mono part missing 0 is rewritten as (mono containing 0) after d^0, and
  d^0 v = dv - sum_{i>=1} (-1)^i d^i v on normalized v, which re-expresses
  everything in basis terms after one expansion.

Simplicial side (mirror image): D(C)_n has basis (s, j, b) for monotone
surjections s: [n] ->> [j]; a monotone alpha: [m] -> [n] acts through the
factorization of s o alpha, where the mono part acts on a normalized chain
by 1 (identity), the differential (missing exactly {0}) or 0 (anything else).

Levelwise bilinear transfer: a graded bilinear pairing on C (bracket or
product) induces one on each level of D(C) by

    pair(d^J v, d^K w) = d^{J & K} * shuffle_sign(K-J, J-K) * pair(v, w)

when deg v = |K - J| and deg w = |J - K|, and 0 otherwise.
"""

from . import linalg
from .complexes import ChainComplex, CochainComplex
from .simplicial import (
    compose,
    delta,
    epi_mono_factor,
    is_identity,
    missing_of,
    sigma,
)


def shuffle_sign(S, T):
    """Sign (-1)^{#{(s,t) in S x T : s > t}}."""
    inv = sum(1 for s in S for t in T if s > t)
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# carriers


class CosimplicialModule:
    """Levels 0..top of free modules with coface/codegeneracy matrices."""

    def __init__(self, ring, top, ranks, coface, codeg):
        self.ring = ring
        self.top = top
        self.ranks = dict(ranks)
        self.coface = dict(coface)  # (n, i): C^n -> C^{n+1}, 0 <= i <= n+1
        self.codeg = dict(codeg)  # (n, i): C^n -> C^{n-1}, 0 <= i <= n-1

    def rank(self, n):
        return self.ranks.get(n, 0)

    def d_sum(self, n):
        """Alternating coface sum C^n -> C^{n+1}."""
        M = linalg.zeros(self.ring, self.rank(n + 1), self.rank(n))
        for i in range(n + 2):
            c = self.ring.from_int((-1) ** i)
            M = linalg.mat_add(self.ring, M, linalg.mat_scal(self.ring, c, self.coface[(n, i)]))
        return M

    def verify(self):
        R = self.ring
        mm = linalg.mat_mul
        for n in range(self.top + 1):
            w = self.rank(n)
            # cofaces out of level n exist when n+1 <= top
            if n + 2 <= self.top:
                for j in range(n + 3):
                    for i in range(j):
                        lhs = mm(R, self.coface[(n + 1, j)], self.coface[(n, i)], ncols=w)
                        rhs = mm(R, self.coface[(n + 1, i)], self.coface[(n, j - 1)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("coface identity fails at n=%d i=%d j=%d" % (n, i, j))
            if n >= 2:
                for i in range(n - 1):
                    for j in range(i, n - 1):
                        lhs = mm(R, self.codeg[(n - 1, j)], self.codeg[(n, i)], ncols=w)
                        rhs = mm(R, self.codeg[(n - 1, i)], self.codeg[(n, j + 1)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("codegeneracy identity fails")
            if n + 1 <= self.top:
                for j in range(n + 1):
                    for i in range(n + 2):
                        lhs = mm(R, self.codeg[(n + 1, j)], self.coface[(n, i)], ncols=w)
                        if i < j:
                            rhs = mm(R, self.coface[(n - 1, i)], self.codeg[(n, j - 1)], ncols=w)
                        elif i in (j, j + 1):
                            rhs = linalg.identity(R, self.rank(n))
                        else:
                            rhs = mm(R, self.coface[(n - 1, i - 1)], self.codeg[(n, j)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("mixed identity fails at n=%d i=%d j=%d" % (n, i, j))
        return True


class SimplicialModule:
    """Levels 0..top of free modules with face/degeneracy matrices."""

    def __init__(self, ring, top, ranks, face, degen):
        self.ring = ring
        self.top = top
        self.ranks = dict(ranks)
        self.face = dict(face)  # (n, i): C_n -> C_{n-1}, 0 <= i <= n
        self.degen = dict(degen)  # (n, i): C_n -> C_{n+1}, 0 <= i <= n

    def rank(self, n):
        return self.ranks.get(n, 0)

    def verify(self):
        R = self.ring
        mm = linalg.mat_mul
        for n in range(self.top + 1):
            w = self.rank(n)
            if n >= 2:
                for j in range(1, n + 1):
                    for i in range(j):
                        lhs = mm(R, self.face[(n - 1, i)], self.face[(n, j)], ncols=w)
                        rhs = mm(R, self.face[(n - 1, j - 1)], self.face[(n, i)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("face identity fails")
            if n + 1 <= self.top:
                for i in range(n + 1):
                    for j in range(i, n + 1):
                        if n + 2 <= self.top:
                            lhs = mm(R, self.degen[(n + 1, j + 1)], self.degen[(n, i)], ncols=w)
                            rhs = mm(R, self.degen[(n + 1, i)], self.degen[(n, j)], ncols=w)
                            if not linalg.mat_eq(R, lhs, rhs):
                                raise ValueError("degeneracy identity fails")
                for i in range(n + 2):
                    for j in range(n + 1):
                        lhs = mm(R, self.face[(n + 1, i)], self.degen[(n, j)], ncols=w)
                        if i < j:
                            rhs = mm(R, self.degen[(n - 1, j - 1)], self.face[(n, i)], ncols=w)
                        elif i in (j, j + 1):
                            rhs = linalg.identity(R, self.rank(n))
                        else:
                            rhs = mm(R, self.degen[(n - 1, j)], self.face[(n, i - 1)], ncols=w)
                        if not linalg.mat_eq(R, lhs, rhs):
                            raise ValueError("mixed identity fails")
        return True


# ---------------------------------------------------------------------------
# honest normalization (kernel intersections + restricted differential)


def kernel_module_basis(R, M, ncols):
    """Basis of ker(M) as a free direct summand over a local ring or field.

    Over a field this is the usual kernel basis.  Over an Artinian local ring
    the kernel of a split surjection (the only case used: joint kernels of
    (co)degeneracies) is free; a spanning set is computed by residue-field
    expansion and a subset with independent reductions is selected, which
    generates by Nakayama.  Raises if the count does not match the reduced
    kernel (the split-freeness witness).
    """
    if R.is_field:
        return linalg.kernel_basis(R, M, ncols)
    k = R.residue
    spanning = linalg.kernel_linear(R, M, ncols)
    reduced = [[R.reduce(x) for x in v] for v in spanning]
    target = len(
        linalg.kernel_basis(k, [[R.reduce(x) for x in row] for row in M], ncols)
    )
    idxs = linalg.independent_subset(k, reduced)
    if len(idxs) != target:
        raise ValueError("kernel is not a free direct summand")
    return [spanning[i] for i in idxs]


def solve_coordinates(R, basis, v, ncols):
    """Coordinates of v in a free-module basis (must exist)."""
    A = linalg.mat_from_cols(R, basis, nrows=len(v))
    sol = linalg.solve_linear(R, A, v, ncols=len(basis))
    if sol is None:
        raise ValueError("vector does not lie in the span")
    return sol[0]


def restrict_map(R, M, incl_dom, incl_cod):
    cols = []
    for b in incl_dom:
        w = linalg.mat_vec(R, M, b)
        cols.append(solve_coordinates(R, incl_cod, w, len(incl_cod)))
    return linalg.mat_from_cols(R, cols, nrows=len(incl_cod))


def normalize_cosimplicial(M):
    """Cochain complex N^n = joint kernel of the codegeneracies, with the
    alternating coface sum; returns (CochainComplex, inclusions per level)."""
    R = M.ring
    incl = {}
    for n in range(M.top + 1):
        if n == 0:
            incl[0] = [linalg.basis_vec(R, M.rank(0), i) for i in range(M.rank(0))]
            continue
        stacked = []
        for i in range(n):
            stacked.extend(M.codeg[(n, i)])
        incl[n] = kernel_module_basis(R, stacked, M.rank(n))
    ranks = {n: len(incl[n]) for n in incl}
    d = {}
    for n in range(M.top):
        d[n] = restrict_map(R, M.d_sum(n), incl[n], incl[n + 1])
    C = CochainComplex(R, ranks, d)
    return C, incl


def normalize_simplicial(M):
    """Moore complex N_n = joint kernel of faces 1..n with d = face 0."""
    R = M.ring
    incl = {}
    for n in range(M.top + 1):
        if n == 0:
            incl[0] = [linalg.basis_vec(R, M.rank(0), i) for i in range(M.rank(0))]
            continue
        stacked = []
        for i in range(1, n + 1):
            stacked.extend(M.face[(n, i)])
        incl[n] = kernel_module_basis(R, stacked, M.rank(n))
    ranks = {n: len(incl[n]) for n in incl}
    d = {}
    for n in range(1, M.top + 1):
        d[n] = restrict_map(R, M.face[(n, 0)], incl[n], incl[n - 1])
    C = ChainComplex(R, ranks, d)
    return C, incl


# ---------------------------------------------------------------------------
# cosimplicial denormalization


class DenormalizedCosimplicial:
    """D(C) for a cochain complex C, with labeled bases and operator pushing."""

    def __init__(self, C, top):
        self.C = C
        self.ring = C.ring
        self.top = top
        from itertools import combinations

        self.basis = {}
        self.index = {}
        for n in range(top + 1):
            labels = []
            for m in sorted(C.degrees()):
                if m > n or C.rank(m) == 0:
                    continue
                for J in combinations(range(1, n + 1), n - m):
                    for b in range(C.rank(m)):
                        labels.append((tuple(J), m, b))
            labels.sort(key=lambda t: (t[1], t[0], t[2]))
            self.basis[n] = labels
            self.index[n] = {lab: i for i, lab in enumerate(labels)}

    def rank(self, n):
        return len(self.basis[n])

    def push(self, label, beta, N):
        """X(beta) applied to the basis element, as [(coeff, label at N)]."""
        J, m, b = label
        n = len(beta) - 1
        alpha = tuple(v for v in range(n + 1) if v not in set(J))
        gamma = compose(beta, alpha)
        mono, epi = epi_mono_factor(gamma)
        if not is_identity(epi):
            return []
        M = missing_of(gamma, N)
        R = self.ring
        if 0 not in M:
            return [(R.one(), (tuple(M), m, b))]
        iota = tuple(sorted(set(gamma) | {0}))
        out = []
        dmat = self.C.diff(m)  # C^m -> C^{m+1}
        Mi = tuple(missing_of(iota, N))
        for b2 in range(self.C.rank(m + 1)):
            c = dmat[b2][b]
            if not R.is_zero(c):
                out.append((c, (Mi, m + 1, b2)))
        for i in range(1, m + 2):
            gi = compose(iota, delta(i, m + 1))
            sign = R.from_int((-1) ** (i + 1))
            out.append((sign, (tuple(missing_of(gi, N)), m, b)))
        return out

    def operator_matrix(self, n, beta, N):
        """Matrix of X(beta): level n -> level N."""
        R = self.ring
        M = linalg.zeros(R, self.rank(N), self.rank(n))
        for j, lab in enumerate(self.basis[n]):
            for c, lab2 in self.push(lab, beta, N):
                i = self.index[N][lab2]
                M[i][j] = R.add(M[i][j], c)
        return M

    def module(self):
        coface = {}
        codeg = {}
        for n in range(self.top):
            for i in range(n + 2):
                coface[(n, i)] = self.operator_matrix(n, delta(i, n + 1), n + 1)
        for n in range(1, self.top + 1):
            for i in range(n):
                codeg[(n, i)] = self.operator_matrix(n, sigma(i, n - 1), n - 1)
        ranks = {n: self.rank(n) for n in range(self.top + 1)}
        return CosimplicialModule(self.ring, self.top, ranks, coface, codeg)

    def include_generator(self, n, b):
        """The generator of C^n as a level-n vector (label ((), n, b))."""
        v = linalg.zero_vec(self.ring, self.rank(n))
        v[self.index[n][((), n, b)]] = self.ring.one()
        return v

    def bilinear_level_table(self, pairing):
        """Levelwise pairing tables from a graded pairing on C.

        ``pairing(p, q, b1, b2)`` returns the vector in C^{p+q} (or None for
        zero).  Returns dict n -> table[i][j] = vector over the level-n basis.
        """
        R = self.ring
        tables = {}
        for n in range(self.top + 1):
            labels = self.basis[n]
            size = len(labels)
            table = [[None] * size for _ in range(size)]
            for i1, (J, m, b) in enumerate(labels):
                SJ = set(J)
                for i2, (K, m2, b2) in enumerate(labels):
                    SK = set(K)
                    KmJ = sorted(SK - SJ)
                    JmK = sorted(SJ - SK)
                    if m != len(KmJ) or m2 != len(JmK):
                        table[i1][i2] = linalg.zero_vec(R, size)
                        continue
                    val = pairing(m, m2, b, b2)
                    out = linalg.zero_vec(R, size)
                    if val is not None:
                        inter = tuple(sorted(SJ & SK))
                        sgn = shuffle_sign(KmJ, JmK)
                        for b3, c in enumerate(val):
                            if R.is_zero(c):
                                continue
                            lab3 = (inter, m + m2, b3)
                            coeff = c if sgn == 1 else R.neg(c)
                            out[self.index[n][lab3]] = R.add(
                                out[self.index[n][lab3]], coeff
                            )
                    table[i1][i2] = out
            tables[n] = table
        return tables


# ---------------------------------------------------------------------------
# simplicial denormalization


class DenormalizedSimplicial:
    """D(C) for a chain complex C: level-n basis (s, j, b), s: [n] ->> [j]."""

    def __init__(self, C, top):
        self.C = C
        self.ring = C.ring
        self.top = top
        self.basis = {}
        self.index = {}
        from .simplicial import surjections

        for n in range(top + 1):
            labels = []
            for j in sorted(C.degrees()):
                if j > n or C.rank(j) == 0:
                    continue
                for s in surjections(n, j):
                    for b in range(C.rank(j)):
                        labels.append((s, j, b))
            labels.sort(key=lambda t: (t[1], t[0], t[2]))
            self.basis[n] = labels
            self.index[n] = {lab: i for i, lab in enumerate(labels)}

    def rank(self, n):
        return len(self.basis[n])

    def push(self, label, alpha):
        """X(alpha) applied to a basis element at level n, alpha: [m] -> [n]."""
        s, j, b = label
        t = compose(s, alpha)
        mono, epi = epi_mono_factor(t)
        M = missing_of(mono, j)
        R = self.ring
        if not M:
            return [(R.one(), (epi, j, b))]
        if M == [0]:
            out = []
            dmat = self.C.diff(j)  # C_j -> C_{j-1}
            for b2 in range(self.C.rank(j - 1)):
                c = dmat[b2][b]
                if not R.is_zero(c):
                    out.append((c, (epi, j - 1, b2)))
            return out
        return []

    def operator_matrix(self, n, alpha, m):
        """Matrix of X(alpha): level n -> level m for alpha: [m] -> [n]."""
        R = self.ring
        M = linalg.zeros(R, self.rank(m), self.rank(n))
        for j, lab in enumerate(self.basis[n]):
            for c, lab2 in self.push(lab, alpha):
                M[self.index[m][lab2]][j] = R.add(M[self.index[m][lab2]][j], c)
        return M

    def module(self):
        face = {}
        degen = {}
        for n in range(1, self.top + 1):
            for i in range(n + 1):
                face[(n, i)] = self.operator_matrix(n, delta(i, n), n - 1)
        for n in range(self.top):
            for i in range(n + 1):
                degen[(n, i)] = self.operator_matrix(n, sigma(i, n), n + 1)
        ranks = {n: self.rank(n) for n in range(self.top + 1)}
        return SimplicialModule(self.ring, self.top, ranks, face, degen)
