"""Dense exact linear algebra over field elements.

Matrices are lists of row lists whose entries support +, -, *, .inv()
and .is_zero() (the FieldElement wrapper does).  Everything pivots on
exact zero tests, so results are exact over any of the towers.
"""

from __future__ import annotations


def zeros(field, m, n):
    z = field.zero_elt()
    return [[z] * n for _ in range(m)]


def identity(field, n):
    z, o = field.zero_elt(), field.one_elt()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return []
    n, m, r = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(r):
            acc = None
            for k in range(m):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    out = []
    for row in A:
        acc = None
        for a, x in zip(row, v):
            term = a * x
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def congruent(T, G):
    """T^t G T."""
    return mat_mul(transpose(T), mat_mul(G, T))


def rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    R = [list(r) for r in rows]
    if not R:
        return [], []
    ncols = len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(R)):
            if not R[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = R[r][c].inv()
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rref_with_transform(rows, field):
    """(R, T, pivots) with T * rows == R, T invertible; R keeps zero rows."""
    m = len(rows)
    R = [list(r) for r in rows]
    T = identity(field, m)
    ncols = len(R[0]) if R else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if not R[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        T[r], T[piv] = T[piv], T[r]
        inv = R[r][c].inv()
        R[r] = [x * inv for x in R[r]]
        T[r] = [x * inv for x in T[r]]
        for i in range(m):
            if i != r and not R[i][c].is_zero():
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
                T[i] = [a - f * b for a, b in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, T, pivots


def row_reduce_vector(R, pivots, v):
    """Reduce v against RREF rows R; returns the residual vector."""
    v = list(v)
    for row, c in zip(R, pivots):
        if not v[c].is_zero():
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return v


def in_rowspace(R, pivots, v):
    return all(x.is_zero() for x in row_reduce_vector(R, pivots, v))


def solve(A, b, field):
    """One solution x of A x = b, or None.  A is m x n, b length m."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [field.zero_elt()] * n
    for row, c in zip(R, pivots):
        x[c] = row[-1]
    return x


def kernel(A, field, n=None):
    """Basis of the right kernel {x : A x = 0}."""
    if n is None:
        n = len(A[0]) if A else 0
    if not A:
        return identity(field, n)
    R, pivots = rref(A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero_elt()] * n
        x[f] = field.one_elt()
        for row, c in zip(R, pivots):
            x[c] = -row[f]
        basis.append(x)
    return basis


def det(A, field):
    n = len(A)
    if n == 0:
        return field.one_elt()
    M = [list(r) for r in A]
    acc = field.one_elt()
    sign_flip = False
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not M[i][c].is_zero():
                piv = i
                break
        if piv is None:
            return field.zero_elt()
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign_flip = not sign_flip
        acc = acc * M[c][c]
        inv = M[c][c].inv()
        for i in range(c + 1, n):
            if not M[i][c].is_zero():
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    if sign_flip:
        acc = -acc
    return acc


def inverse(A, field):
    n = len(A)
    aug = [list(A[i]) + identity(field, n)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in R]


def _poly_mul_x_minus(p, a):
    """(X - a) * p for a coefficient-list polynomial p (low to high)."""
    out = [None] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] = c
    z = a * p[0]
    out[0] = -(z)
    for i in range(1, len(p)):
        out[i] = out[i] - a * p[i]
    return out


def charpoly(A, field):
    """Coefficients c0..c_{n-1} of det(X I - A) = X^n + c_{n-1} X^{n-1} + ... + c0."""
    n = len(A)
    if n == 0:
        return []
    H = [list(r) for r in A]
    # Hessenberg reduction by similarity
    for j in range(n - 2):
        piv = None
        for i in range(j + 1, n):
            if not H[i][j].is_zero():
                piv = i
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in range(n):
                H[r][piv], H[r][j + 1] = H[r][j + 1], H[r][piv]
        inv = H[j + 1][j].inv()
        for i in range(j + 2, n):
            if H[i][j].is_zero():
                continue
            f = H[i][j] * inv
            H[i] = [a - f * b for a, b in zip(H[i], H[j + 1])]
            for r in range(n):
                H[r][j + 1] = H[r][j + 1] + f * H[r][i]
    # characteristic polynomials of leading principal blocks (1-indexed recurrence)
    polys = [[field.one_elt()]]
    for m in range(1, n + 1):
        pm = _poly_mul_x_minus(polys[m - 1], H[m - 1][m - 1])
        prod = field.one_elt()
        for i in range(m - 1, 0, -1):
            prod = prod * H[i][i - 1]
            coeff = H[i - 1][m - 1] * prod
            prev = polys[i - 1]
            for k, c in enumerate(prev):
                pm[k] = pm[k] - coeff * c
        polys.append(pm)
    return polys[n][:n]
