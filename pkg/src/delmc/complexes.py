"""Chain complexes, cochain complexes and first-quadrant bicomplexes.

Complexes are finite collections of free modules with explicit differential
matrices.  ``BiComplex`` stores a chain direction (degree ``a``, differential
lowering it) and a cochain direction (degree ``b``, differential raising it)
with commuting differentials; the product totalization uses the sign
``d = d_chain + (-1)^a d_cochain``, which is the one fixed convention used
everywhere in this package.
"""

from . import linalg


class ChainComplex:
    """Degrees are a contiguous range; d[n] maps C_n -> C_{n-1}."""

    def __init__(self, ring, ranks, d):
        self.ring = ring
        self.ranks = dict(ranks)
        self.d = {n: m for n, m in d.items()}

    def rank(self, n):
        return self.ranks.get(n, 0)

    def diff(self, n):
        """Matrix of d: C_n -> C_{n-1} (zero matrix when absent)."""
        if n in self.d:
            return self.d[n]
        return linalg.zeros(self.ring, self.rank(n - 1), self.rank(n))

    def degrees(self):
        return sorted(self.ranks)

    def validate(self):
        for n, m in self.d.items():
            if len(m) != self.rank(n - 1) or (m and len(m[0]) != self.rank(n)):
                raise ValueError("differential shape mismatch at degree %d" % n)
        for n in list(self.ranks):
            comp = linalg.mat_mul(self.ring, self.diff(n), self.diff(n + 1))
            if not linalg.mat_is_zero(self.ring, comp):
                raise ValueError("d*d is nonzero at degree %d" % (n + 1))
        return True

    def homology(self, n):
        """Dimension over a field; residue-field length over an Artinian ring."""
        if self.rank(n) == 0:
            return 0
        d_out = self.diff(n) if self.rank(n - 1) else None
        d_in = self.diff(n + 1) if self.rank(n + 1) else None
        return linalg.homology_length(self.ring, d_out, d_in, self.rank(n))

    def homology_basis(self, n):
        if not self.ring.is_field:
            raise ValueError("representatives are only computed over a field")
        if self.rank(n) == 0:
            return {"dim": 0, "basis": []}
        d_out = self.diff(n) if self.rank(n - 1) else None
        d_in = self.diff(n + 1) if self.rank(n + 1) else None
        return linalg.homology(self.ring, d_out, d_in, self.rank(n))


class CochainComplex:
    """Degrees are a contiguous range; d[n] maps C^n -> C^{n+1}."""

    def __init__(self, ring, ranks, d):
        self.ring = ring
        self.ranks = dict(ranks)
        self.d = {n: m for n, m in d.items()}

    def rank(self, n):
        return self.ranks.get(n, 0)

    def diff(self, n):
        if n in self.d:
            return self.d[n]
        return linalg.zeros(self.ring, self.rank(n + 1), self.rank(n))

    def degrees(self):
        return sorted(self.ranks)

    def validate(self):
        for n, m in self.d.items():
            if len(m) != self.rank(n + 1) or (m and len(m[0]) != self.rank(n)):
                raise ValueError("differential shape mismatch at degree %d" % n)
        for n in list(self.ranks):
            comp = linalg.mat_mul(self.ring, self.diff(n + 1), self.diff(n))
            if not linalg.mat_is_zero(self.ring, comp):
                raise ValueError("d*d is nonzero at degree %d" % n)
        return True

    def cohomology(self, n):
        if self.rank(n) == 0:
            return 0
        d_out = self.diff(n) if self.rank(n + 1) else None
        d_in = self.diff(n - 1) if self.rank(n - 1) else None
        return linalg.homology_length(self.ring, d_out, d_in, self.rank(n))

    def cohomology_basis(self, n):
        if not self.ring.is_field:
            raise ValueError("representatives are only computed over a field")
        if self.rank(n) == 0:
            return {"dim": 0, "basis": []}
        d_out = self.diff(n) if self.rank(n + 1) else None
        d_in = self.diff(n - 1) if self.rank(n - 1) else None
        return linalg.homology(self.ring, d_out, d_in, self.rank(n))


class BiComplex:
    """First-quadrant bicomplex with commuting differentials.

    ``ranks[(a, b)]`` for 0 <= a <= amax, 0 <= b <= bmax;
    ``d_chain[(a, b)]``: (a, b) -> (a-1, b);  ``d_cochain[(a, b)]``: (a, b) -> (a, b+1).
    """

    def __init__(self, ring, ranks, d_chain, d_cochain):
        self.ring = ring
        self.ranks = dict(ranks)
        self.d_chain = dict(d_chain)
        self.d_cochain = dict(d_cochain)

    def rank(self, a, b):
        return self.ranks.get((a, b), 0)

    def dch(self, a, b):
        if (a, b) in self.d_chain:
            return self.d_chain[(a, b)]
        return linalg.zeros(self.ring, self.rank(a - 1, b), self.rank(a, b))

    def dco(self, a, b):
        if (a, b) in self.d_cochain:
            return self.d_cochain[(a, b)]
        return linalg.zeros(self.ring, self.rank(a, b + 1), self.rank(a, b))

    def positions(self):
        return sorted(self.ranks)

    def validate(self):
        R = self.ring
        for (a, b) in self.positions():
            if not linalg.mat_is_zero(R, linalg.mat_mul(R, self.dch(a - 1, b), self.dch(a, b))):
                raise ValueError("chain d^2 nonzero at %r" % ((a, b),))
            if not linalg.mat_is_zero(R, linalg.mat_mul(R, self.dco(a, b + 1), self.dco(a, b))):
                raise ValueError("cochain d^2 nonzero at %r" % ((a, b),))
            lhs = linalg.mat_mul(R, self.dco(a - 1, b), self.dch(a, b))
            rhs = linalg.mat_mul(R, self.dch(a, b + 1), self.dco(a, b))
            if not linalg.mat_eq(R, lhs, rhs):
                raise ValueError("differentials do not commute at %r" % ((a, b),))
        return True

    def drop_cochain_rows_below(self, bmin):
        """Brutal truncation keeping only cochain degrees b >= bmin."""
        ranks = {(a, b): r for (a, b), r in self.ranks.items() if b >= bmin}
        dch = {(a, b): m for (a, b), m in self.d_chain.items() if b >= bmin}
        dco = {(a, b): m for (a, b), m in self.d_cochain.items() if b >= bmin and (a, b + 1) in ranks}
        return BiComplex(self.ring, ranks, dch, dco)

    def total_complex(self):
        """Product totalization in degree n = a - b with d = d_ch + (-1)^a d_co."""
        R = self.ring
        degrees = sorted({a - b for (a, b) in self.ranks})
        layout = {}
        ranks = {}
        for n in degrees:
            cells = sorted((a, b) for (a, b) in self.ranks if a - b == n)
            offs = {}
            total = 0
            for cell in cells:
                offs[cell] = total
                total += self.ranks[cell]
            layout[n] = (cells, offs, total)
            ranks[n] = total
        d = {}
        for n in degrees:
            if n - 1 not in ranks:
                if ranks[n]:
                    d[n] = linalg.zeros(R, 0, ranks[n])
                continue
            cells, offs, total = layout[n]
            tcells, toffs, ttotal = layout[n - 1]
            M = linalg.zeros(R, ttotal, total)
            for (a, b) in cells:
                col0 = offs[(a, b)]
                blk = self.dch(a, b)
                if (a - 1, b) in toffs and blk:
                    row0 = toffs[(a - 1, b)]
                    for i, row in enumerate(blk):
                        for j, x in enumerate(row):
                            M[row0 + i][col0 + j] = x
                blk2 = self.dco(a, b)
                if (a, b + 1) in toffs and blk2:
                    row0 = toffs[(a, b + 1)]
                    sign = 1 if a % 2 == 0 else -1
                    for i, row in enumerate(blk2):
                        for j, x in enumerate(row):
                            M[row0 + i][col0 + j] = x if sign == 1 else R.neg(x)
            d[n] = M
        cc = ChainComplex(R, ranks, d)
        self._tot_layout = layout
        return cc

    def total_layout(self):
        """Cell layout of the last total_complex() call: n -> (cells, offsets, rank)."""
        return self._tot_layout
