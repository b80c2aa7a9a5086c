"""Solution subspaces cut out by rational-function constraints.

A subspace of the solution space is representable over the base field
when some matrix M of rational functions carries a basis of it to row
echelon form: M (w_1 ... w_m) = (Wtilde; 0) with Wtilde invertible.
``defining_matrix`` reconstructs such an M from truncated series bases;
``wz_span`` builds the monomial-coordinate subspace spanned by F h over
constant points h of a variety; ``coefficient_degree_bound`` converts a
degree cap on the rational data into the cap M needs.
"""

import random

from . import linalg
from .errors import DgalError, UnsupportedInstanceError
from .ratfunc import RatFuncField
from .series import Series, ratfunc_series, reconstruct_ratfunc
from .solve import PositiveDimensionalError, solve_zero_dimensional
from .systems import monomials_upto


class DefinableSubspace:
    """A subspace given by a truncated series basis; once computed, the
    defining matrix over the rational functions and its degree cap."""

    def __init__(self, R, a, basis):
        self.R = R
        self.a = a
        self.basis = [list(v) for v in basis]  # vectors of Series
        self.ambient = len(basis[0]) if basis else 0
        self.matrix = None
        self.degree_bound = None
        self.pivot_rows = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def order(self):
        return self.basis[0][0].order if self.basis else 0


def _series_matrix_inverse(mat, order):
    """Inverse of a square series matrix whose constant-term matrix is
    invertible, by elimination pivoting on unit constant terms."""
    m = len(mat)
    f = mat[0][0].field
    one = Series.constant(f, f.one, order)
    zero = Series.constant(f, f.zero, order)
    A = [[mat[i][j].truncate(order) for j in range(m)] +
         [one if i == j else zero for j in range(m)] for i in range(m)]
    for c in range(m):
        piv = next((r for r in range(c, m)
                    if not f.is_zero(A[r][c].coeffs[0])), None)
        if piv is None:
            raise DgalError("series matrix has singular constant term")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(m):
            if r == c:
                continue
            factor = A[r][c]
            if factor.is_zero():
                continue
            A[r] = [x - factor * y for x, y in zip(A[r], A[c])]
    return [row[m:] for row in A]


def _pivot_rows(field, basis):
    """Row indices whose constant-term submatrix is invertible, chosen
    by the earliest pivots of the stacked initial values."""
    m = len(basis)
    const = [[v[i].coeffs[0] for v in basis] for i in range(len(basis[0]))]
    _r, pivots = linalg.rref(field, linalg.transpose(const))
    if len(pivots) < m:
        raise DgalError("basis vectors are linearly dependent at the "
                        "expansion point")
    return list(pivots)


def defining_matrix(sub, ell):
    """Reconstruct the defining matrix of the subspace with rational
    entries of degree <= ell, or return None when the subspace does not
    admit one at this cap (reconstruction refuses to stabilize).

    The truncation order must exceed 2*ell + dim for the reconstruction
    margin.  On success the matrix (rows over the rational function
    field) and the cap are stored on the subspace and returned.
    """
    m = sub.dim
    N = sub.ambient
    order = sub.order
    if order <= 2 * ell + m:
        raise DgalError("truncation order %d too small for degree cap %d "
                        "(need more than %d)" % (order, ell, 2 * ell + m))
    kf = sub.basis[0][0].field
    R = sub.R if sub.R.const == kf else RatFuncField(kf)
    a = kf.coerce_from(sub.R.const, sub.a) if sub.R.const != kf else sub.a
    piv = _pivot_rows(kf, sub.basis)
    rest = [i for i in range(N) if i not in piv]
    wt = [[v[i] for v in sub.basis] for i in piv]
    wb = [[v[i] for v in sub.basis] for i in rest]
    inv = _series_matrix_inverse(wt, order)
    mbar = []
    for r in range(len(rest)):
        row = []
        for j in range(m):
            acc = Series.constant(kf, kf.zero, order)
            for lidx in range(m):
                acc = acc + wb[r][lidx] * inv[lidx][j]
            got = reconstruct_ratfunc(R, acc, a, ell, ell)
            got2 = reconstruct_ratfunc(R, acc.truncate(order - 1), a, ell, ell)
            if got is None or got2 is None or not R.eq(got, got2):
                return None
            row.append(got)
        mbar.append(row)
    M = [[R.zero] * N for _ in range(N)]
    for k, i in enumerate(piv):
        M[k][i] = R.one
    for r, i in enumerate(rest):
        M[m + r][i] = R.one
        for j, pj in enumerate(piv):
            M[m + r][pj] = R.neg(mbar[r][j])
    sub.matrix = M
    sub.degree_bound = ell
    sub.pivot_rows = piv
    return M


def check_defining(sub):
    """Exact invariant: M applied to every basis vector gives zeros in
    all rows past the subspace dimension, through the full truncation
    order."""
    if sub.matrix is None:
        raise DgalError("no defining matrix computed")
    kf = sub.basis[0][0].field
    R = RatFuncField(kf)
    a = kf.coerce_from(sub.R.const, sub.a) if sub.R.const != kf else sub.a
    order = sub.order
    for v in sub.basis:
        for r in range(sub.dim, sub.ambient):
            acc = Series.constant(kf, kf.zero, order)
            for i in range(sub.ambient):
                entry = R.coerce_from(sub.R, sub.matrix[r][i]) \
                    if R.const != sub.R.const else sub.matrix[r][i]
                if R.is_zero(entry):
                    continue
                acc = acc + ratfunc_series(R, entry, a, order) * v[i]
            if not acc.is_zero():
                return False
    return True


def coefficient_degree_bound(hyperexp_degree_bound):
    """Degree cap for defining-matrix entries from a cap on the rational
    parts of the relevant hyperexponential solutions: normalizing the
    echelon block doubles the degree."""
    if hyperexp_degree_bound < 0:
        raise DgalError("degree bound must be nonnegative")
    return 2 * hyperexp_degree_bound


def _flatten_series_vector(v):
    out = []
    for s in v:
        out.extend(s.coeffs)
    return out


def _sample_variety_points(zpolys, nvars, budget, seed):
    """Constant points of the zero set of zpolys, slicing a positive
    dimensional variety with random hyperplanes until it is finite."""
    rng = random.Random(seed)
    if not zpolys:
        # the whole space: random points
        ring = None
        raise DgalError("sampling the full space needs explicit equations")
    ring = zpolys[0].ring
    fld = ring.field
    for _ in range(budget):
        try:
            return solve_zero_dimensional(zpolys)
        except PositiveDimensionalError:
            slice_poly = ring.from_const(
                fld.from_int(rng.randint(-9, 9)))
            for i in range(nvars):
                slice_poly = slice_poly + ring.gen(i).scale(
                    fld.from_int(rng.randint(-9, 9)))
            zpolys = list(zpolys) + [slice_poly]
    raise DgalError("variety sampling budget exhausted")


def wz_span(zpolys, sys, a, d, order, samples=6, seed=11):
    """Span of the degree-<= d monomial vectors of F h over constant
    points h of the variety cut out by zpolys (polynomials in the n^2
    matrix entries over the constant field).

    F is the fundamental series of sys at a.  Returns a
    DefinableSubspace in the monomial coordinates (monomials_upto order)
    whose field may extend the constant field of sys.
    """
    n = sys.n
    ring = zpolys[0].ring if zpolys else None
    if zpolys:
        fld, pts = _sample_variety_points(zpolys, n * n, samples, seed)
    else:
        # no equations: generic invertible constant matrices
        rng = random.Random(seed)
        fld = sys.R.const
        pts = []
        while len(pts) < samples:
            coords = [fld.from_int(rng.randint(-5, 5)) for _ in range(n * n)]
            m = [[coords[i * n + j] for j in range(n)] for i in range(n)]
            if not fld.is_zero(linalg.det(fld, m)):
                pts.append((coords, 1))
    hmats = []
    for coords, _mult in pts:
        m = [[coords[i * n + j] for j in range(n)] for i in range(n)]
        if not fld.is_zero(linalg.det(fld, m)):
            hmats.append(m)
    if not hmats:
        raise DgalError("no invertible constant points found")
    F = sys.fundamental_series(a, order)
    if F.field != fld:
        F = F.coerce_to(fld)
    monos = monomials_upto(n * n, d)
    alg_one = Series.constant(fld, fld.one, order)
    basis = []
    flat_rows = []
    for h in hmats:
        Fh = F.const_matrix_mul(h)
        entries = [Series(fld, [Fh.mats[o][i // n][i % n]
                                for o in range(order + 1)])
                   for i in range(n * n)]
        vec = []
        for e in monos:
            s = alg_one
            for i, k in enumerate(e):
                for _ in range(k):
                    s = s * entries[i]
            vec.append(s)
        flat = _flatten_series_vector(vec)
        if flat_rows and linalg.row_space_contains(fld, flat_rows, flat):
            continue
        flat_rows.append(flat)
        basis.append(vec)
    Rbig = sys.R if sys.R.const == fld else sys.R.over(fld)
    abig = fld.coerce_from(sys.R.const, a) if sys.R.const != fld else a
    return DefinableSubspace(Rbig, abig, basis)
