"""Exact linear algebra over the coefficient rings.

Matrices are lists of rows, vectors are lists; entries live in a ring object
from ``delmc.rings``.  Over a field everything is straight row reduction.
Over an Artinian local ring A each entry is expanded to the residue-field
matrix of its multiplication operator on the monomial basis; solution sets of
the expanded system correspond bijectively to solution sets of the original
one (coefficientwise), which gives exact solving, kernels and length counts
without Smith normal form.

A matrix with zero rows or columns loses its shape in the list-of-lists
encoding, so the core routines accept an explicit ``ncols`` when the row list
may be empty.
"""


def zeros(R, m, n):
    z = R.zero()
    return [[z for _ in range(n)] for _ in range(m)]


def identity(R, n):
    z, o = R.zero(), R.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def zero_vec(R, n):
    return [R.zero() for _ in range(n)]


def mat_add(R, A, B):
    return [[R.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(R, A, B):
    return [[R.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(R, A):
    return [[R.neg(x) for x in row] for row in A]


def mat_scal(R, c, A):
    return [[R.mul(c, x) for x in row] for row in A]


def mat_mul(R, A, B, ncols=None):
    if not A:
        return []
    n = len(B)
    cols = ncols if ncols is not None else (len(B[0]) if B else 0)
    out = []
    for row in A:
        new = [R.zero()] * cols
        for k in range(n):
            a = row[k]
            if R.is_zero(a):
                continue
            bk = B[k]
            for j in range(cols):
                if not R.is_zero(bk[j]):
                    new[j] = R.add(new[j], R.mul(a, bk[j]))
        out.append(new)
    return out


def mat_vec(R, A, v):
    out = []
    for row in A:
        s = R.zero()
        for a, x in zip(row, v):
            if not (R.is_zero(a) or R.is_zero(x)):
                s = R.add(s, R.mul(a, x))
        out.append(s)
    return out


def vec_add(R, u, v):
    return [R.add(x, y) for x, y in zip(u, v)]


def vec_sub(R, u, v):
    return [R.sub(x, y) for x, y in zip(u, v)]


def vec_neg(R, u):
    return [R.neg(x) for x in u]


def vec_scal(R, c, u):
    return [R.mul(c, x) for x in u]


def vec_eq(R, u, v):
    return len(u) == len(v) and all(R.eq(x, y) for x, y in zip(u, v))


def vec_is_zero(R, u):
    return all(R.is_zero(x) for x in u)


def mat_eq(R, A, B):
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(R.eq(x, y) for x, y in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def mat_is_zero(R, A):
    return all(R.is_zero(x) for row in A for x in row)


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*A)]


def mat_from_cols(R, cols, nrows=None):
    if not cols:
        return [[] for _ in range(nrows)] if nrows else []
    return [list(row) for row in zip(*cols)]


def cols_of(A):
    return [list(col) for col in zip(*A)] if A else []


# ---------------------------------------------------------------------------
# field linear algebra


def _rref_gf2(A, n):
    """Bit-packed elimination over the two-element field.

    Rows are Python ints (bit j = column j); elimination is one xor per
    row pair, and pivots are tracked in a table keyed by column, which
    keeps the large mod-2 systems produced by the cosimplicial
    comparisons tractable.  Output matches ``rref``: every table row has
    its lowest set bit at its pivot column and is zero at every other
    pivot column.
    """
    table = {}
    pmask = 0
    for row in A:
        x = 0
        for j, v in enumerate(row):
            if v % 2:
                x |= 1 << j
        while x:
            c = (x & -x).bit_length() - 1
            if c in table:
                x ^= table[c]
                continue
            y = x & pmask
            while y:
                p = (y & -y).bit_length() - 1
                x ^= table[p]
                y &= y - 1
            bit = 1 << c
            for p in table:
                if table[p] & bit:
                    table[p] ^= x
            table[c] = x
            pmask |= bit
            break
    pivots = sorted(table)
    mat = [[(table[c] >> j) & 1 for j in range(n)] for c in pivots]
    return mat, pivots


def rref(F, A, ncols=None):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    A = [list(row) for row in A]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    if getattr(F, "kind", "") == "prime-field" and F.p == 2:
        return _rref_gf2(A, n)
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not F.is_zero(A[i][c]):
                pr = i
                break
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(m):
            if i != r and not F.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(F, A, ncols=None):
    return len(rref(F, A, ncols)[1])


def kernel_basis(F, A, ncols=None):
    """Basis of {x : Ax = 0} as a list of vectors."""
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    R, pivots = rref(F, A, n)
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [F.zero()] * n
        v[free] = F.one()
        for r, p in enumerate(pivots):
            v[p] = F.neg(R[r][free])
        basis.append(v)
    return basis


def solve(F, A, y, ncols=None):
    """Solve Ax = y over a field.

    Returns (particular solution, kernel basis) or None when inconsistent.
    """
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    aug = [list(row) + [yy] for row, yy in zip(A, y)]
    R, pivots = rref(F, aug, n + 1)
    if n in pivots:
        return None
    x = [F.zero()] * n
    for r, p in enumerate(pivots):
        x[p] = R[r][n]
    return x, kernel_basis(F, A, n)


def coordinates_in_span(F, basis, v):
    """Write v as a combination of the given vectors; None if impossible."""
    if not basis:
        return [] if all(F.is_zero(x) for x in v) else None
    A = mat_from_cols(F, basis)
    sol = solve(F, A, v, ncols=len(basis))
    return None if sol is None else sol[0]


def in_span(F, basis, v):
    return coordinates_in_span(F, basis, v) is not None


def independent_subset(F, vectors, seed_vectors=()):
    """Indices of vectors extending the span of ``seed_vectors`` one by one."""
    picked = list(seed_vectors)
    idxs = []
    r = rank(F, picked) if picked else 0
    for i, v in enumerate(vectors):
        cand = picked + [v]
        r2 = rank(F, cand)
        if r2 > r:
            picked = cand
            r = r2
            idxs.append(i)
    return idxs


def restrict_matrix(F, M, incl_dom, incl_cod, dom_dim=None, cod_dim=None):
    """Matrix of a map in sub-bases.

    ``incl_dom``/``incl_cod`` are lists of basis vectors of subspaces of the
    domain/codomain of M, and M must carry the domain subspace into the
    codomain one (checked; raises otherwise).
    """
    cols = []
    for b in incl_dom:
        w = mat_vec(F, M, b)
        coords = coordinates_in_span(F, incl_cod, w)
        if coords is None:
            raise ValueError("map does not preserve the given subspaces")
        cols.append(coords)
    return mat_from_cols(F, cols, nrows=len(incl_cod))


def homology(F, d_out, d_in, dim_mid, check=True):
    """Homology at the middle term of  C_in --d_in--> C_mid --d_out--> C_out.

    Either map may be None (meaning zero).  Returns a dict with the dimension
    and a list of representative cycles.
    """
    if d_out is None:
        cycles = [basis_vec(F, dim_mid, i) for i in range(dim_mid)]
    else:
        cycles = kernel_basis(F, d_out, ncols=dim_mid)
    image = []
    if d_in is not None and d_in and len(d_in[0]) > 0:
        image = [col for col in cols_of(d_in)]
    if check and d_out is not None and d_in is not None and d_in and d_in[0]:
        comp = mat_mul(F, d_out, d_in)
        if not mat_is_zero(F, comp):
            raise ValueError("maps do not compose to zero")
    if check:
        for col in image:
            if d_out is not None and not vec_is_zero(F, mat_vec(F, d_out, col)):
                raise ValueError("image not contained in kernel")
    img_rank = rank(F, image) if image else 0
    reps = []
    picked = list(image)
    r = img_rank
    for v in cycles:
        cand = picked + [v]
        r2 = rank(F, cand)
        if r2 > r:
            picked = cand
            r = r2
            reps.append(v)
    return {"dim": len(cycles) - img_rank, "basis": reps}


def basis_vec(F, n, i):
    v = [F.zero()] * n
    v[i] = F.one()
    return v


def kron(R, A, B, acols=None, bcols=None):
    """Kronecker product, blocks A[i][j] * B."""
    am = len(A)
    an = acols if acols is not None else (len(A[0]) if am else 0)
    bm = len(B)
    bn = bcols if bcols is not None else (len(B[0]) if bm else 0)
    out = zeros(R, am * bm, an * bn)
    for i in range(am):
        for j in range(an):
            a = A[i][j]
            if R.is_zero(a):
                continue
            for s in range(bm):
                row = out[i * bm + s]
                for t in range(bn):
                    row[j * bn + t] = R.mul(a, B[s][t])
    return out


def kron_power(R, A, m):
    """m-fold Kronecker power; m = 0 gives the 1 x 1 identity."""
    out = [[R.one()]]
    for _ in range(m):
        out = kron(R, out, A)
    return out


def mat_inv(R, A):
    """Inverse of a square matrix over any supported ring; None if singular."""
    n = len(A)
    cols = []
    for i in range(n):
        sol = solve_linear(R, A, basis_vec(R, n, i), ncols=n)
        if sol is None:
            return None
        cols.append(sol[0])
    return mat_from_cols(R, cols, nrows=n)


# ---------------------------------------------------------------------------
# Artinian local rings: expansion to the residue field


def expand_matrix(Rart, A, ncols=None):
    """Residue-field matrix of x -> Ax in monomial coordinates."""
    N = Rart.dim
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    k = Rart.residue
    out = [[k.zero()] * (n * N) for _ in range(m * N)]
    for i in range(m):
        for j in range(n):
            block = Rart.mul_operator_rows(A[i][j])
            for s in range(N):
                row = out[i * N + s]
                bs = block[s]
                for t in range(N):
                    row[j * N + t] = bs[t]
    return out


def expand_vector(Rart, v):
    out = []
    for a in v:
        out.extend(a)
    return out


def contract_vector(Rart, w, n):
    N = Rart.dim
    return [tuple(w[i * N : (i + 1) * N]) for i in range(n)]


def solve_linear(R, A, y, ncols=None):
    """Solve Ax = y over a field or an Artinian local ring.

    Returns (particular, kernel_basis) or None.  Over an Artinian ring the
    kernel basis spans the kernel as a residue-field vector space.
    """
    if R.is_field:
        return solve(R, A, y, ncols)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    k = R.residue
    sol = solve(k, expand_matrix(R, A, n), expand_vector(R, y), ncols=n * R.dim)
    if sol is None:
        return None
    x, kern = sol
    return (
        contract_vector(R, x, n),
        [contract_vector(R, v, n) for v in kern],
    )


def kernel_linear(R, A, ncols=None):
    if R.is_field:
        return kernel_basis(R, A, ncols)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    kern = kernel_basis(R.residue, expand_matrix(R, A, n), ncols=n * R.dim)
    return [contract_vector(R, v, n) for v in kern]


def homology_length(R, d_out, d_in, dim_mid, check=True):
    """Residue-field length of homology when R is Artinian; dim over a field."""
    if R.is_field:
        return homology(R, d_out, d_in, dim_mid, check=check)["dim"]
    eo = None if d_out is None else expand_matrix(R, d_out, dim_mid)
    ei = (
        None
        if d_in is None
        else expand_matrix(R, d_in, len(d_in[0]) if d_in else 0)
    )
    return homology(R.residue, eo, ei, dim_mid * R.dim, check=check)["dim"]
