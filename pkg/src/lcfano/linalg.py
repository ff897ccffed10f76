"""Exact linear algebra over the integers and the rationals.

Matrices are lists of rows. Entries may be ``int`` or ``Fraction``; results
are exact. Nothing here touches floating point.
"""

from fractions import Fraction
from math import gcd

from .errors import DegenerateInput


def _is_int_matrix(rows):
    return all(isinstance(x, int) for row in rows for x in row)


def det(rows):
    """Determinant of a square matrix (Bareiss for integer input)."""
    n = len(rows)
    if n == 0:
        return 1
    if _is_int_matrix(rows):
        return _bareiss_det([list(r) for r in rows])
    m = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f /= p
                row_c = m[c]
                row_r = m[r]
                for k in range(c + 1, n):
                    row_r[k] -= f * row_c[k]
    return sign * result


def _bareiss_det(m):
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        mkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * mkk - mik * row_k[j]) // prev
        prev = mkk
    return sign * m[n - 1][n - 1]


def rref(rows):
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols=None):
    """Rational basis of {x : rows * x = 0}."""
    if not rows:
        n = ncols
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m, pivots = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(a, b):
    """Solve the square system a x = b exactly; raises on singular input."""
    n = len(a)
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        raise DegenerateInput("singular linear system")
    return [m[i][n] for i in range(n)]


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DegenerateInput("singular matrix")
    return [row[n:] for row in m]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def primitive_integer(v):
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return [x // g for x in ints]


def vector_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def integer_kernel(rows, ncols):
    """Z-basis of {x in Z^n : rows * x = 0} for an integer matrix.

    Unimodular row reduction of [rows^T | I]; rows whose left block vanishes
    carry a kernel basis in the right block.
    """
    m = len(rows)
    work = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
            for j in range(ncols)]
    r = 0
    for c in range(m):
        while True:
            nz = [i for i in range(r, ncols) if work[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(work[i][c]))
            work[r], work[piv] = work[piv], work[r]
            done = True
            for i in range(r + 1, ncols):
                if work[i][c]:
                    f = work[i][c] // work[r][c]
                    work[i] = [x - f * y for x, y in zip(work[i], work[r])]
                    if work[i][c]:
                        done = False
            if done:
                r += 1
                break
        if r == ncols:
            break
    return [row[m:] for row in work if all(x == 0 for x in row[:m])]


def lattice_basis(vectors, ambient_dim):
    """Z-basis of span_R(vectors) ∩ Z^n for integer vectors."""
    normals = nullspace([list(v) for v in vectors], ambient_dim) if vectors else None
    if normals is None:
        return []
    int_normals = [primitive_integer(n) for n in normals]
    if not int_normals:
        return [[int(i == j) for j in range(ambient_dim)] for i in range(ambient_dim)]
    return integer_kernel(int_normals, ambient_dim)


def coordinates_in_basis(basis, v):
    """Exact coordinates c with sum c_i basis_i = v (basis linearly independent)."""
    k = len(basis)
    cols = transpose(basis)
    m, pivots = rref([list(cols[i]) + [v[i]] for i in range(len(v))])
    if len(pivots) != k or k in pivots:
        raise DegenerateInput("vector is not in the span of the basis")
    return [m[i][k] for i in range(k)]
