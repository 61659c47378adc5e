"""Exact linear algebra over Z, Q and prime fields.

Everything here works on plain lists of Python ints (arbitrary precision), no
floating point anywhere.  Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def mat_mod(a: Matrix, m: int) -> Matrix:
    return [[x % m for x in row] for row in a]


def mat_eq(a: Matrix, b: Matrix) -> bool:
    return a == b


def mat_vec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def rank_mod_p(rows: Matrix, p: int) -> int:
    """Rank of an integer matrix reduced mod the prime p."""
    if not rows or not rows[0]:
        return 0
    m = [[x % p for x in row] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_rational(rows: Matrix) -> int:
    """Rank over Q via fraction-free (Bareiss) elimination on integer entries."""
    if not rows or not rows[0]:
        return 0
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, nrows):
            mr = m[r]
            f = mr[col]
            base = m[rank]
            for j in range(ncols):
                mr[j] = (mr[j] * pv - f * base[j]) // prev
        prev = pv
        rank += 1
        if rank == nrows:
            break
    return rank


def smith_normal_form(a: Matrix) -> tuple[list[int], Matrix, Matrix]:
    """Smith normal form with transforms: returns (diag, U, V) with U*a*V diagonal.

    diag lists the diagonal entries (nonnegative, divisibility chain) of the
    full diagonal matrix; U and V are unimodular.  Pivot choice is the entry of
    least absolute value, scanned row-major, so the output is deterministic.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    d = [row[:] for row in a]
    u = identity_matrix(nrows)
    v = identity_matrix(ncols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):
        # row dst += q * row src
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # locate pivot: least |entry| in the trailing block, row-major
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = d[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        # clear row and column t; restart if a division leaves residue
        while True:
            for i in range(t + 1, nrows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // d[t][t]))
            if any(d[i][t] for i in range(t + 1, nrows)):
                # residues became new, smaller pivots: move the least one up
                i = min((ii for ii in range(t, nrows) if d[ii][t]),
                        key=lambda ii: abs(d[ii][t]))
                if i != t:
                    swap_rows(t, i)
                continue
            for j in range(t + 1, ncols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // d[t][t]))
            if any(d[t][j] for j in range(t + 1, ncols)):
                j = min((jj for jj in range(t, ncols) if d[t][jj]),
                        key=lambda jj: abs(d[t][jj]))
                if j != t:
                    swap_cols(t, j)
                continue
            break
        # enforce divisibility of the trailing block by d[t][t]
        fixed = True
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if d[i][j] % d[t][t]:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if d[t][t] < 0:
            negate_row(t)
        t += 1

    diag = [d[i][i] if i < ncols else 0 for i in range(min(nrows, ncols))]
    return diag, u, v


def kernel_basis(a: Matrix, ncols: int | None = None) -> list[list[int]]:
    """Basis of the integer kernel lattice {x in Z^n : a x = 0} (saturated).

    Returns a list of basis vectors.  Empty matrix (no rows) means every
    vector is in the kernel.
    """
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a or ncols == 0:
        return [list(row) for row in identity_matrix(ncols)]
    diag, _u, v = smith_normal_form(a)
    rank = sum(1 for x in diag if x)
    return [[v[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def solve_rational(a: Matrix, b: list) -> list[Fraction] | None:
    """Solve a x = b exactly over Q; None when inconsistent.

    When the solution is underdetermined, free variables are set to zero, so
    the output is deterministic.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    if nrows == 0:
        return [Fraction(0)] * ncols if all(x == 0 for x in b) else None
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = m[i][ncols]
    return x


def solve_many_integer(a: Matrix, rhs: Matrix) -> Matrix:
    """Solve a X = rhs columnwise with one elimination; X must be integral.

    `a` must have full column rank; rhs is given as a matrix whose columns are
    the right-hand sides.  Returns X as a list of rows.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    nrhs = len(rhs[0]) if rhs and rhs[0] is not None else 0
    if ncols == 0:
        if any(any(x for x in row) for row in rhs):
            raise ValueError("inconsistent system")
        return [[] for _ in range(0)] if nrhs == 0 else []
    m = [[Fraction(x) for x in row] + [Fraction(v) for v in rhs[i]]
         for i, row in enumerate(a)]
    r = 0
    pivots = []
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][col]
        m[r] = [x / pv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                fct = m[i][col]
                m[i] = [x - fct * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    if len(pivots) != ncols:
        raise ValueError("matrix does not have full column rank")
    for i in range(r, nrows):
        if any(m[i][ncols + j] != 0 for j in range(nrhs)):
            raise ValueError("inconsistent system")
    out = [[0] * nrhs for _ in range(ncols)]
    for i, col in enumerate(pivots):
        for j in range(nrhs):
            v = m[i][ncols + j]
            if v.denominator != 1:
                raise ValueError("solution is not integral")
            out[col][j] = int(v)
    return out


def invert_unimodular(u: Matrix) -> Matrix:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(u)
    x = solve_many_integer(u, identity_matrix(n))
    return x


def solve_integer(a: Matrix, b: list[int]) -> list[int]:
    """Solve a x = b where an integral solution is known to exist."""
    x = solve_rational(a, b)
    if x is None:
        raise ValueError("inconsistent system")
    out = []
    for f in x:
        if f.denominator != 1:
            raise ValueError("solution is not integral")
        out.append(int(f))
    return out


def mod_reduction_injective(mats: list[Matrix], modulus: int) -> tuple[bool, Matrix | None]:
    """Whether reduction mod `modulus` is injective on a finite matrix set.

    Injectivity on a group of matrices is equivalent to: no non-identity
    member reduces to the identity.  Returns (flag, offending matrix or None).
    """
    if not mats:
        return True, None
    n = len(mats[0])
    ident = identity_matrix(n)
    for m in mats:
        if m != ident and mat_mod(m, modulus) == mat_mod(ident, modulus):
            return False, m
    return True, None
