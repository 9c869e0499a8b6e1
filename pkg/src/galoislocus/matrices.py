"""Dense exact linear algebra over the ground fields (no floats anywhere).

Matrices are tuples of tuples of Scalar; vectors are tuples of Scalar.
Everything is small (dimension <= number of homogeneous coordinates), so
plain Gaussian elimination with exact division is the right tool.
"""

from __future__ import annotations

from .errors import GaloisLocusError


def identity(field, n):
    one = field.scalar(1)
    zero = field.scalar(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for t in range(1, len(v)):
            acc = acc + row[t] * v[t]
        out.append(acc)
    return tuple(out)


def mat_pow(a, e):
    n = len(a)
    field = a[0][0].field
    result = identity(field, n)
    base = a
    while e > 0:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def transpose(a):
    return tuple(zip(*a))


def mat_det(a):
    """Determinant by fraction-free-enough Gaussian elimination over a field."""
    n = len(a)
    rows = [list(r) for r in a]
    field = a[0][0].field
    det = field.scalar(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            return field.scalar(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            if rows[r][col].is_zero():
                continue
            factor = rows[r][col] * inv
            for c in range(col, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def mat_inv(a):
    n = len(a)
    field = a[0][0].field
    rows = [list(r) + list(identity(field, n)[i]) for i, r in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            raise GaloisLocusError("matrix is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r == col or rows[r][col].is_zero():
                continue
            factor = rows[r][col]
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


def rref(rows_in):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows_in]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for rr in range(r, len(rows)):
            if not rows[rr][col].is_zero():
                piv = rr
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and not rows[rr][col].is_zero():
                factor = rows[rr][col]
                rows[rr] = [x - factor * y for x, y in zip(rows[rr], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(rows):
    return len(rref(rows)[0])


def kernel_basis(rows, field, ncols):
    """Basis of {v : rows . v = 0}, in reduced echelon shape (deterministic)."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    zero = field.scalar(0)
    one = field.scalar(1)
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(tuple(v))
    return basis


def subspace_intersection(basis_a, basis_b, field):
    """Basis of span(basis_a) ∩ span(basis_b)."""
    if not basis_a or not basis_b:
        return []
    ncols = len(basis_a[0])
    # solve sum x_i a_i - sum y_j b_j = 0
    cols = list(basis_a) + list(basis_b)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(ncols)]
    sols = kernel_basis(rows, field, len(cols))
    vecs = []
    for s in sols:
        v = [field.scalar(0)] * ncols
        for i, a in enumerate(basis_a):
            if s[i].is_zero():
                continue
            v = [x + s[i] * y for x, y in zip(v, a)]
        if any(not x.is_zero() for x in v):
            vecs.append(tuple(v))
    red, _ = rref(vecs) if vecs else ([], [])
    return list(red)
