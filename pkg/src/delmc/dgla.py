"""Differential graded Lie algebras with explicit tables, over exact rings.

A DGLA here is a finite degree window of free modules with a differential of
degree +1 and a bracket given by structure-constant tables.  The module
provides axiom checking, Maurer-Cartan residuals and verification, gauge
actions (matrix-style models are supplied by the instance builders, the
exponential model of a nilpotent degree-0 part lives here), orbit
decompositions for the shapes that admit exact normalization, twisted
cohomology, and obstruction classes for square-zero coefficient extensions.

The quadratic term of the Maurer-Cartan equation carries a coefficient 1/2,
so every operation that touches it insists on characteristic zero and
raises ``CharacteristicError`` otherwise.
"""

from fractions import Fraction

from . import linalg
from .errors import Refusal
from .poly import PolyRing


class CharacteristicError(ValueError):
    pass


class NormalizationRefusal(Refusal):
    """Raised when an orbit decomposition has no exact normal-form rule."""


def require_char_zero(R):
    if R.char != 0:
        raise CharacteristicError(
            "operation needs characteristic 0, got %d" % R.char
        )


class DGLA:
    """Graded levels, differential matrices, bracket tables.

    ``ranks``: dict degree -> rank.
    ``diff``: dict degree -> matrix (rank(n+1) x rank(n)); missing means 0.
    ``bracket``: dict (p, q) -> table, table[i][j] = vector in level p+q.
    Tables for (q, p) are derived from (p, q) by graded antisymmetry when
    absent.  Degrees outside ``ranks`` have rank 0.
    """

    def __init__(self, ring, ranks, diff, bracket, name="dgla"):
        self.ring = ring
        self.ranks = {n: r for n, r in ranks.items() if r > 0}
        self.diff = dict(diff)
        self.bracket = dict(bracket)
        self.name = name

    def degrees(self):
        return sorted(self.ranks)

    def rank(self, n):
        return self.ranks.get(n, 0)

    def d_matrix(self, n):
        if n in self.diff:
            return self.diff[n]
        return linalg.zeros(self.ring, self.rank(n + 1), self.rank(n))

    def d_vec(self, n, x):
        return linalg.mat_vec(self.ring, self.d_matrix(n), x)

    def bracket_table(self, p, q):
        R = self.ring
        if (p, q) in self.bracket:
            return self.bracket[(p, q)]
        if (q, p) in self.bracket:
            flip = self.bracket[(q, p)]
            sgn = R.from_int(-((-1) ** (p * q)))
            table = [
                [linalg.vec_scal(R, sgn, flip[j][i]) for j in range(self.rank(q))]
                for i in range(self.rank(p))
            ]
            return table
        return [
            [linalg.zero_vec(R, self.rank(p + q)) for _ in range(self.rank(q))]
            for _ in range(self.rank(p))
        ]

    def bracket_vec(self, p, q, x, y):
        """[x, y] for x in level p, y in level q."""
        R = self.ring
        table = self.bracket_table(p, q)
        out = linalg.zero_vec(R, self.rank(p + q))
        for i, xi in enumerate(x):
            if R.is_zero(xi):
                continue
            row = table[i]
            for j, yj in enumerate(y):
                if R.is_zero(yj):
                    continue
                c = R.mul(xi, yj)
                out = linalg.vec_add(R, out, linalg.vec_scal(R, c, row[j]))
        return out

    def ad_matrix(self, p, n, x):
        """Matrix of [x, -]: L^n -> L^(p+n) for x in level p."""
        R = self.ring
        cols = []
        for j in range(self.rank(n)):
            e = linalg.basis_vec(R, self.rank(n), j)
            cols.append(self.bracket_vec(p, n, x, e))
        return linalg.mat_from_cols(R, cols, nrows=self.rank(p + n))

    def basis_vec(self, n, i):
        return linalg.basis_vec(self.ring, self.rank(n), i)

    def change_ring(self, S, conv):
        """Transport all tables through ``conv`` (entrywise) to ring S."""

        def cv(v):
            return [conv(c) for c in v]

        ranks = dict(self.ranks)
        diff = {n: [cv(row) for row in M] for n, M in self.diff.items()}
        bracket = {
            key: [[cv(v) for v in row] for row in table]
            for key, table in self.bracket.items()
        }
        return DGLA(S, ranks, diff, bracket, name=self.name)

    def check_axioms(self):
        """d^2 = 0, graded antisymmetry, Leibniz, Jacobi, on all basis tuples."""
        R = self.ring
        degs = self.degrees()
        for n in degs:
            sq = linalg.mat_mul(
                R, self.d_matrix(n + 1), self.d_matrix(n), ncols=self.rank(n)
            )
            if not linalg.mat_is_zero(R, sq):
                raise ValueError("d^2 != 0 at degree %d" % n)
        for p in degs:
            for q in degs:
                sgn = R.from_int(-((-1) ** (p * q)))
                for i in range(self.rank(p)):
                    x = self.basis_vec(p, i)
                    for j in range(self.rank(q)):
                        y = self.basis_vec(q, j)
                        lhs = self.bracket_vec(p, q, x, y)
                        rhs = linalg.vec_scal(R, sgn, self.bracket_vec(q, p, y, x))
                        if not linalg.vec_eq(R, lhs, rhs):
                            raise ValueError(
                                "antisymmetry fails at %d,%d (%d,%d)" % (p, q, i, j)
                            )
                        # Leibniz: d[x,y] = [dx,y] + (-1)^p [x,dy]
                        lhs2 = self.d_vec(p + q, lhs)
                        t1 = self.bracket_vec(p + 1, q, self.d_vec(p, x), y)
                        t2 = linalg.vec_scal(
                            R,
                            R.from_int((-1) ** p),
                            self.bracket_vec(p, q + 1, x, self.d_vec(q, y)),
                        )
                        if not linalg.vec_eq(R, lhs2, linalg.vec_add(R, t1, t2)):
                            raise ValueError(
                                "Leibniz fails at %d,%d (%d,%d)" % (p, q, i, j)
                            )
        for p in degs:
            for q in degs:
                for s in degs:
                    for i in range(self.rank(p)):
                        x = self.basis_vec(p, i)
                        for j in range(self.rank(q)):
                            y = self.basis_vec(q, j)
                            for l in range(self.rank(s)):
                                z = self.basis_vec(s, l)
                                # [x,[y,z]] = [[x,y],z] + (-1)^{pq} [y,[x,z]]
                                lhs = self.bracket_vec(
                                    p, q + s, x, self.bracket_vec(q, s, y, z)
                                )
                                r1 = self.bracket_vec(
                                    p + q, s, self.bracket_vec(p, q, x, y), z
                                )
                                r2 = linalg.vec_scal(
                                    R,
                                    R.from_int((-1) ** (p * q)),
                                    self.bracket_vec(
                                        q, p + s, y, self.bracket_vec(p, s, x, z)
                                    ),
                                )
                                if not linalg.vec_eq(
                                    R, lhs, linalg.vec_add(R, r1, r2)
                                ):
                                    raise ValueError(
                                        "Jacobi fails at %d,%d,%d" % (p, q, s)
                                    )
        return True

    def descriptor(self):
        R = self.ring
        return {
            "version": 1,
            "kind": "dgla",
            "ring": R.descriptor(),
            "ranks": {str(n): r for n, r in sorted(self.ranks.items())},
            "diff": {
                str(n): [[R.show(c) for c in row] for row in M]
                for n, M in sorted(self.diff.items())
            },
            "bracket": {
                "%d,%d" % key: [[[R.show(c) for c in v] for v in row] for row in tab]
                for key, tab in sorted(self.bracket.items())
            },
            "name": self.name,
        }


def tensor_dgla(L, A):
    """Extend coefficients of a rational DGLA to a characteristic-0 ring."""
    require_char_zero(L.ring)
    require_char_zero(A)
    return L.change_ring(A, lambda c: A.from_fraction(Fraction(c)))


def mc_residual(L, omega):
    """d(omega) + (1/2)[omega, omega] in level 2, omega in level 1."""
    require_char_zero(L.ring)
    R = L.ring
    half = R.from_fraction(Fraction(1, 2))
    quad = L.bracket_vec(1, 1, omega, omega)
    return linalg.vec_add(
        R, L.d_vec(1, omega), linalg.vec_scal(R, half, quad)
    )


def mc_verify(L, omega):
    return linalg.vec_is_zero(L.ring, mc_residual(L, omega))


def mc_polynomial_system(L, varname="w"):
    """The defining equations of the MC locus, over a polynomial ring.

    Returns (P, variables, equations): coordinates of the residual of a
    generic level-1 element, as elements of PolyRing(L.ring, ...).
    """
    require_char_zero(L.ring)
    k = L.rank(1)
    P = PolyRing(L.ring, ["%s%d" % (varname, i) for i in range(k)])
    LP = L.change_ring(P, P.constant)
    omega = [P.gen(i) for i in range(k)]
    eqs = mc_residual(LP, omega)
    return P, omega, eqs


def mc_set(L, grid=None):
    """MC locus description.

    With ``grid`` (a finite list of ring elements) enumerates level-1
    vectors with coordinates in the grid and returns the solutions.
    Without it, returns the polynomial system (always exact, never a
    truncation).
    """
    if grid is not None:
        out = []
        from itertools import product as iproduct

        for combo in iproduct(grid, repeat=L.rank(1)):
            omega = list(combo)
            if mc_verify(L, omega):
                out.append(omega)
        return {"kind": "list", "elements": out}
    P, omega, eqs = mc_polynomial_system(L)
    return {"kind": "system", "ring": P, "variables": omega, "equations": eqs}


def gauge_act(L, G, g, omega):
    """g * omega = ad_g(omega) - D(g)."""
    R = L.ring
    ad = G.ad_matrix(g, 1)
    return linalg.vec_sub(R, linalg.mat_vec(R, ad, omega), G.D_vec(g))


# ---------------------------------------------------------------------------
# exponential gauge model on a nilpotent degree-0 part


def cbh(L, x, y):
    """log(exp x exp y) for x, y in L^0 with nilpotent brackets.

    Hardcoded through bracket weight 4; asserts that every weight-5
    iterated bracket of x and y vanishes, so the truncation is exact on
    the coefficient rings this package accepts.
    """
    require_char_zero(L.ring)
    R = L.ring

    def br(a, b):
        return L.bracket_vec(0, 0, a, b)

    def sc(num, den, v):
        return linalg.vec_scal(R, R.from_fraction(Fraction(num, den)), v)

    xy = br(x, y)
    x_xy = br(x, xy)
    y_yx = br(y, linalg.vec_neg(R, xy))
    y_x_xy = br(y, x_xy)
    out = linalg.vec_add(R, x, y)
    out = linalg.vec_add(R, out, sc(1, 2, xy))
    out = linalg.vec_add(R, out, sc(1, 12, x_xy))
    out = linalg.vec_add(R, out, sc(1, 12, y_yx))
    out = linalg.vec_add(R, out, sc(-1, 24, y_x_xy))
    # exactness guard: all weight-5 brackets must vanish
    w2 = [xy]
    w3 = [br(x, v) for v in w2] + [br(y, v) for v in w2]
    w4 = [br(x, v) for v in w3] + [br(y, v) for v in w3]
    w5 = [br(x, v) for v in w4] + [br(y, v) for v in w4]
    for v in w5:
        if not linalg.vec_is_zero(R, v):
            raise ValueError("weight-5 brackets do not vanish; CBH truncation unsafe")
    return out


class ExpNilpotent:
    """Gauge group exp(L^0 tensor max-ideal) with CBH multiplication.

    Elements are level-0 coordinate vectors (the logarithms); the group
    operations, the adjoint action on every level, and the derivative map
    D(exp x) = sum_k ad_x^k (dx) / (k+1)!  are all exact by nilpotency.
    """

    def __init__(self, L, element_filter=None):
        require_char_zero(L.ring)
        self.L = L
        self.element_filter = element_filter

    def identity(self):
        return linalg.zero_vec(self.L.ring, self.L.rank(0))

    def mul(self, g, h):
        return cbh(self.L, g, h)

    def inv(self, g):
        return linalg.vec_neg(self.L.ring, g)

    def ad_matrix(self, g, n):
        """exp(ad_g) on L^n."""
        L, R = self.L, self.L.ring
        M = L.ad_matrix(0, n, g)
        out = linalg.identity(R, L.rank(n))
        P = linalg.identity(R, L.rank(n))
        fact = 1
        for k in range(1, 61):
            P = linalg.mat_mul(R, M, P, ncols=L.rank(n))
            if linalg.mat_is_zero(R, P):
                break
            fact *= k
            out = linalg.mat_add(
                R, out, linalg.mat_scal(R, R.from_fraction(Fraction(1, fact)), P)
            )
        else:
            raise ValueError("ad_g not nilpotent on level %d" % n)
        return out

    def D_vec(self, g):
        """((exp(ad_g) - 1)/ad_g)(dg)."""
        L, R = self.L, self.L.ring
        v = L.d_vec(0, g)
        out = linalg.zero_vec(R, L.rank(1))
        fact = 1
        term = v
        for k in range(60):
            fact = fact * (k + 1)
            out = linalg.vec_add(
                R, out, linalg.vec_scal(R, R.from_fraction(Fraction(1, fact)), term)
            )
            term = L.bracket_vec(0, 1, g, term)
            if linalg.vec_is_zero(R, term):
                return out
        raise ValueError("D series did not terminate")

    def elements(self):
        """Finite enumeration when the coefficient ring supplies one."""
        from itertools import product as iproduct

        R = self.L.ring
        coords = list(R.elements())
        for combo in iproduct(coords, repeat=self.L.rank(0)):
            g = list(combo)
            if self.element_filter is None or self.element_filter(g):
                yield g


# ---------------------------------------------------------------------------
# orbit decompositions


def deligne_enumerate(L, G, mc_list):
    """Orbit partition of a finite MC list under a finite gauge group.

    Returns {"orbits": [ {"representative", "elements", "stabilizer_order"} ],
    "group_order": N}.
    """
    R = L.ring
    elems = [tuple(v) for v in mc_list]
    pos = {v: i for i, v in enumerate(elems)}
    seen = [False] * len(elems)
    group = list(G.elements())
    orbits = []
    for i, start in enumerate(elems):
        if seen[i]:
            continue
        orbit = set()
        stab = 0
        for g in group:
            moved = tuple(gauge_act(L, G, g, list(start)))
            if moved not in pos:
                raise ValueError("gauge action left the MC set")
            orbit.add(moved)
            if moved == start:
                stab += 1
        for v in orbit:
            seen[pos[v]] = True
        orbits.append(
            {
                "representative": list(start),
                "size": len(orbit),
                "stabilizer_order": stab,
            }
        )
    return {"orbits": orbits, "group_order": len(group)}


def unit_scaling_orbits(A):
    """Normal forms for the action of units on A by multiplication.

    Supported shapes: a field (orbits 0 and 1) and a chain ring k[t]/(t^e)
    presented as ArtinianLocal on one generator (orbits t^j and 0).  Any
    other coefficient ring raises NormalizationRefusal.
    """
    if getattr(A, "is_field", False):
        return [A.zero(), A.one()]
    names = getattr(A, "names", None)
    if names is not None and len(names) == 1:
        t = A.generator(names[0])
        forms = [A.one()]
        p = A.one()
        while True:
            p = A.mul(p, t)
            if A.is_zero(p):
                break
            forms.append(p)
        forms.append(A.zero())
        return forms
    raise NormalizationRefusal(
        "no unit-scaling normal form for coefficient ring %r" % (A.descriptor(),)
    )


def classify_unit_scaling(A, a):
    """Index of the normal form of ``a`` under unit scaling.

    For the supported chain-ring shape every element is unit * t^j or 0;
    returns ("zero",) or ("power", j)."""
    if A.is_zero(a):
        return ("zero",)
    if getattr(A, "is_field", False):
        return ("power", 0)
    names = getattr(A, "names", None)
    if names is None or len(names) != 1:
        raise NormalizationRefusal("unsupported ring for unit-scaling classification")
    t = A.generator(names[0])
    cur = A.one()
    j = 0
    while True:
        # test a in cur * units: a = cur * u with u a unit
        q = _divide_exact(A, a, cur)
        if q is not None and A.is_unit(q):
            return ("power", j)
        cur = A.mul(cur, t)
        j += 1
        if A.is_zero(cur):
            raise NormalizationRefusal("element is not unit * t^j nor zero")


def _divide_exact(A, a, b):
    """Solve b * q = a in A if possible, as a 1 x 1 linear system."""
    sol = linalg.solve_linear(A, [[b]], [a], ncols=1)
    if sol is None:
        return None
    return sol[0][0]


# ---------------------------------------------------------------------------
# twisted complexes and obstruction calculus


def twisted_differential(L, omega, check=True):
    """Matrices of d + [omega, -] on every level; verifies square zero."""
    R = L.ring
    mats = {}
    for n in L.degrees():
        mats[n] = linalg.mat_add(
            R, L.d_matrix(n), L.ad_matrix(1, n, omega)
        )
    if check:
        for n in L.degrees():
            upper = mats.get(n + 1)
            if upper is None:
                upper = linalg.zeros(R, L.rank(n + 2), L.rank(n + 1))
            sq = linalg.mat_mul(R, upper, mats[n], ncols=L.rank(n))
            if not linalg.mat_is_zero(R, sq):
                raise ValueError("twisted differential does not square to zero")
    return mats


def twisted_cohomology(L, omega, i):
    """H^i(L, d + [omega, -]); dim over a field, length over Artinian."""
    R = L.ring
    mats = twisted_differential(L, omega)
    d_out = mats.get(i, linalg.zeros(R, L.rank(i + 1), L.rank(i)))
    d_in = mats.get(i - 1, linalg.zeros(R, L.rank(i), L.rank(i - 1)))
    if getattr(R, "is_field", False):
        H = linalg.homology(R, d_out, d_in, L.rank(i))
        return {"dim": H["dim"], "basis": H["basis"]}
    return {"length": linalg.homology_length(R, d_out, d_in, L.rank(i))}


# ---------------------------------------------------------------------------
# obstruction calculus over square-zero extensions


class KernelComplex:
    """(L tensor I, d + [lift, -]) over the residue field.

    ``ext`` is a SquareZeroExtension A -> B with kernel I; the complex has a
    residue-field basis e_i * mu_j (L-basis element times kernel monomial).
    Its differential only depends on the base MC element since I is
    square-zero, and it squares to zero for the same reason.
    """

    def __init__(self, L_rat, ext, lift):
        A = ext.total
        k = A.residue
        self.ext = ext
        self.k = k
        self.L_A = tensor_dgla(L_rat, A)
        self.s = len(ext.kernel_basis)
        self.dims = {n: self.L_A.rank(n) * self.s for n in self.L_A.degrees()}
        mats_A = {}
        R = A
        for n in self.L_A.degrees():
            mats_A[n] = linalg.mat_add(
                R, self.L_A.d_matrix(n), self.L_A.ad_matrix(1, n, lift)
            )
        self.d = {}
        for n, M in mats_A.items():
            rows_out = self.L_A.rank(n + 1)
            D = linalg.zeros(k, rows_out * self.s, self.L_A.rank(n) * self.s)
            for i in range(self.L_A.rank(n)):
                for j, mu in enumerate(ext.kernel_basis):
                    col = i * self.s + j
                    for i2 in range(rows_out):
                        prod = A.mul(M[i2][i], mu)
                        if not ext.in_kernel(prod):
                            raise ValueError("kernel is not stable under the twist")
                        for j2, idx in enumerate(ext.kernel_indices):
                            c = prod[idx]
                            if not k.is_zero(c):
                                D[i2 * self.s + j2][col] = c
            self.d[n] = D
        for n in self.d:
            upper = self.d.get(n + 1)
            if upper is None:
                continue
            sq = linalg.mat_mul(k, upper, self.d[n], ncols=self.dims.get(n, 0))
            if not linalg.mat_is_zero(k, sq):
                raise ValueError("kernel-complex differential does not square to zero")

    def dim(self, n):
        return self.dims.get(n, 0)

    def d_matrix(self, n):
        if n in self.d:
            return self.d[n]
        return linalg.zeros(self.k, self.dim(n + 1), self.dim(n))

    def to_coords(self, vec_A):
        """Residue coordinates of a level vector with entries in I."""
        out = []
        for a in vec_A:
            if not self.ext.in_kernel(a):
                raise ValueError("vector has components outside the kernel")
            for idx in self.ext.kernel_indices:
                out.append(a[idx])
        return out

    def from_coords(self, coords):
        """Level vector over A from residue coordinates."""
        A = self.ext.total
        k = self.k
        n = len(coords) // self.s
        out = []
        for i in range(n):
            a = [k.zero()] * A.dim
            for j, idx in enumerate(self.ext.kernel_indices):
                a[idx] = coords[i * self.s + j]
            out.append(tuple(a))
        return out

    def cohomology(self, n):
        return linalg.homology(
            self.k, self.d_matrix(n), self.d_matrix(n - 1), self.dim(n)
        )


def obstruction_class(L_rat, ext, omega_base):
    """Obstruction to lifting an MC element across a square-zero extension.

    Returns the class data of u = d(lift) + (1/2)[lift, lift] in the degree-2
    cohomology of the kernel complex, an exact lift when one exists, and the
    well-definedness witness (a second lift changes the cocycle by an exact
    boundary).
    """
    A, B = ext.total, ext.base
    L_B = tensor_dgla(L_rat, B)
    if not mc_verify(L_B, omega_base):
        raise ValueError("base element does not satisfy Maurer-Cartan")
    lift = [ext.section(c) for c in omega_base]
    L_A = tensor_dgla(L_rat, A)
    u = mc_residual(L_A, lift)
    K = KernelComplex(L_rat, ext, lift)
    u_k = K.to_coords(u)
    k = K.k
    if not linalg.vec_is_zero(
        k, linalg.mat_vec(k, K.d_matrix(2), u_k)
    ):
        raise ValueError("obstruction cocycle is not closed")
    # independence of the lift: shift by a deterministic kernel vector
    if K.dim(1) > 0:
        shift_k = [k.one()] * K.dim(1)
        shift = K.from_coords(shift_k)
        lift2 = linalg.vec_add(A, lift, shift)
        u2_k = K.to_coords(mc_residual(L_A, lift2))
        delta = linalg.vec_sub(k, u2_k, u_k)
        if not linalg.vec_eq(
            k, delta, linalg.mat_vec(k, K.d_matrix(1), shift_k)
        ):
            raise ValueError("lift dependence is not an exact boundary")
    H2 = K.cohomology(2)
    neg_u = linalg.vec_neg(k, u_k)
    sol = linalg.solve(k, K.d_matrix(1), neg_u, ncols=K.dim(1))
    lifted = None
    torsor_rank = None
    if sol is not None:
        a = K.from_coords(sol[0])
        lifted = linalg.vec_add(A, lift, a)
        if not mc_verify(L_A, lifted):
            raise ValueError("solved lift fails Maurer-Cartan exactly")
        torsor_rank = len(sol[1])
    is_zero = sol is not None
    # cross-check: class vanishes iff u is in the image of d^1
    img_cols = linalg.cols_of(K.d_matrix(1))
    assert is_zero == linalg.in_span(k, img_cols, u_k)
    return {
        "is_zero": is_zero,
        "cocycle": u_k,
        "h2_dim": H2["dim"],
        "lift": lifted,
        "torsor_rank": torsor_rank,
        "complex": K,
    }
