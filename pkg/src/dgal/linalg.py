"""Dense exact linear algebra over any adapter field.

Matrices are plain lists of lists of field elements; the field argument
supplies the arithmetic (ConstField, RatFuncField, ExtField, ...).
Everything here is straightforward Gaussian elimination; sizes stay
small so no pivoting heuristics are needed beyond "first nonzero".
"""


def zeros(field, rows, cols):
    return [[field.zero for _ in range(cols)] for _ in range(rows)]


def identity(field, n):
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one
    return out


def copy(mat):
    return [row[:] for row in mat]


def transpose(mat):
    return [list(col) for col in zip(*mat)]


def mat_add(field, a, b):
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(field, a, b):
    return [[field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(field, a, c):
    return [[field.mul(x, c) for x in row] for row in a]


def matmul(field, a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = zeros(field, n, p)
    for i in range(n):
        for k in range(m):
            aik = a[i][k]
            if field.is_zero(aik):
                continue
            row_b = b[k]
            row_o = out[i]
            for j in range(p):
                if not field.is_zero(row_b[j]):
                    row_o[j] = field.add(row_o[j], field.mul(aik, row_b[j]))
    return out


def matvec(field, a, v):
    out = []
    for row in a:
        acc = field.zero
        for x, y in zip(row, v):
            if not (field.is_zero(x) or field.is_zero(y)):
                acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def rref(field, mat):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    R = copy(mat)
    if not R:
        return R, []
    rows, cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if not field.is_zero(R[i][c])), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = field.inv(R[r][c])
        R[r] = [field.mul(x, inv) for x in R[r]]
        for i in range(rows):
            if i != r and not field.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(field, mat):
    return len(rref(field, mat)[1])


def nullspace(field, mat):
    """Basis of the right kernel, one vector per free column."""
    if not mat:
        return []
    R, pivots = rref(field, mat)
    cols = len(mat[0])
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(R[r][fc])
        basis.append(v)
    return basis


def solve(field, a, b):
    """One solution of a x = b, or None if inconsistent."""
    if not a:
        return [] if all(field.is_zero(x) for x in b) else None
    cols = len(a[0])
    aug = [row[:] + [bv] for row, bv in zip(a, b)]
    R, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][cols]
    return x


def det(field, mat):
    n = len(mat)
    A = copy(mat)
    d = field.one
    for c in range(n):
        pr = next((i for i in range(c, n) if not field.is_zero(A[i][c])), None)
        if pr is None:
            return field.zero
        if pr != c:
            A[c], A[pr] = A[pr], A[c]
            d = field.neg(d)
        d = field.mul(d, A[c][c])
        inv = field.inv(A[c][c])
        for i in range(c + 1, n):
            if field.is_zero(A[i][c]):
                continue
            f = field.mul(A[i][c], inv)
            A[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(A[i], A[c])]
    return d


def inverse(field, mat):
    n = len(mat)
    aug = [row[:] + ident_row[:] for row, ident_row in zip(mat, identity(field, n))]
    R, pivots = rref(field, aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


class RrefAccumulator:
    """Incrementally maintained reduced row echelon form of a growing set
    of constraint rows; rank and kernel are cheap to read off at any
    point."""

    def __init__(self, field, cols):
        self.field = field
        self.cols = cols
        self.rows = []     # reduced rows, sorted by pivot column
        self.pivots = []   # pivot column of each row

    def add_row(self, row):
        """Reduce and insert; returns True if the rank grew."""
        f = self.field
        row = row[:]
        for r, pc in zip(self.rows, self.pivots):
            if not f.is_zero(row[pc]):
                c = row[pc]
                row = [f.sub(x, f.mul(c, y)) for x, y in zip(row, r)]
        pc = next((j for j in range(self.cols) if not f.is_zero(row[j])), None)
        if pc is None:
            return False
        inv = f.inv(row[pc])
        row = [f.mul(x, inv) for x in row]
        # back-substitute into existing rows
        for i, r in enumerate(self.rows):
            if not f.is_zero(r[pc]):
                c = r[pc]
                self.rows[i] = [f.sub(x, f.mul(c, y)) for x, y in zip(r, row)]
        at = next((i for i, p in enumerate(self.pivots) if p > pc), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, pc)
        return True

    @property
    def rank(self):
        return len(self.rows)

    def kernel_basis(self):
        f = self.field
        free = [c for c in range(self.cols) if c not in self.pivots]
        basis = []
        for fc in free:
            v = [f.zero] * self.cols
            v[fc] = f.one
            for r, pc in zip(self.rows, self.pivots):
                v[pc] = f.neg(r[fc])
            basis.append(v)
        return basis


def row_space_contains(field, rows, vec):
    """True if vec is a linear combination of the given rows."""
    if not rows:
        return all(field.is_zero(x) for x in vec)
    return solve(field, transpose(rows), vec) is not None
