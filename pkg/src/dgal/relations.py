"""Degree-bounded polynomial relations among the entries of a truncated
fundamental matrix.

The search is a linear solve: an ansatz polynomial with t-polynomial
coefficients of degree <= 2l is evaluated on the series of the
fundamental matrix, and each series order contributes one linear
constraint on the unknown coefficients.  The kernel, rewritten with
rational-function coefficients and row-reduced, is the relation basis.
"""

from . import linalg
from .errors import DgalError, ResourceCapError
from .extfield import ExtField
from .multipoly import GREVLEX, MonomialOrder, PolyRing
from .ratfunc import _poly_shift
from .series import Series, TruncSeries, algebraic_series
from .systems import monomials_upto


def matrix_var_names(n):
    return ["x_%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]


def graded_lex_order(nvars):
    """The fixed monomial order used for relation bases: total degree
    first, then lex with earlier variables dominating."""
    return MonomialOrder("gradedlex", lambda exp: (sum(exp), exp))


class RelationIdeal:
    """Basis of the degree-<= d relations found at truncation order N."""

    def __init__(self, ring, basis, *, d, a, ell, order_used, rigorous):
        self.ring = ring
        self.basis = basis
        self.d = d
        self.a = a
        self.ell = ell
        self.order_used = order_used
        self.rigorous = rigorous

    def __repr__(self):
        return "RelationIdeal(d=%d, %d relations)" % (self.d, len(self.basis))


class _AnsatzBuilder:
    """Rows of the linear system: one per series order; columns indexed by
    (monomial, t-power [, gamma-power])."""

    def __init__(self, sys, a, d, ell, gamma_spec=None):
        self.sys = sys
        self.R = sys.R
        self.k = sys.R.const
        self.a = a
        self.d = d
        self.ell = ell
        self.monos = monomials_upto(sys.n * sys.n, d)
        self.gamma_spec = gamma_spec  # (ExtField, gamma Series) or None
        self.gdim = gamma_spec[0].deg if gamma_spec else 1
        self.ncols = len(self.monos) * (2 * ell + 1) * self.gdim
        self._gamma = None

    def prepare(self, order):
        """Series of every monomial through the given order."""
        sys = self.sys
        gamma = self.gamma_spec[1].truncate(order) if self.gamma_spec else None
        G = sys.fundamental_series(self.a, order)
        if gamma is not None and gamma.field != G.field:
            G = G.coerce_to(gamma.field)
        k = G.field
        self.k = k
        n = sys.n
        entries = [G.entry(p // n, p % n) for p in range(n * n)]
        mono_series = []
        cache = {}
        for m in self.monos:
            acc = Series.constant(k, k.one, order)
            for p, e in enumerate(m):
                if e:
                    key = (p, e)
                    if key not in cache:
                        s = entries[p]
                        for _ in range(e - 1):
                            s = s * entries[p]
                        cache[key] = s
                    acc = acc * cache[key]
            mono_series.append(acc)
        if gamma is not None:
            gpow = [Series.constant(k, k.one, order)]
            for _ in range(self.gdim - 1):
                gpow.append(gpow[-1] * gamma)
            self.gpowers = gpow
        self.mono_series = mono_series

    def row(self, order_k):
        """Constraint from the coefficient of u^order_k."""
        k = self.k
        width = 2 * self.ell + 1
        row = [k.zero] * self.ncols
        col = 0
        for ms in self.mono_series:
            for j in range(self.gdim):
                for i in range(width):
                    row[col] = self._coeff(ms, j, order_k - i)
                    col += 1
        return row

    def _coeff(self, ms, j, idx):
        if idx < 0 or idx > ms.order:
            return self.k.zero
        if self.gdim == 1 or j == 0:
            return ms.coeffs[idx]
        prod = self._cached_product(ms, j)
        return prod.coeffs[idx] if idx <= prod.order else self.k.zero

    def _cached_product(self, ms, j):
        key = (id(ms), j)
        if not hasattr(self, "_pcache"):
            self._pcache = {}
        if key not in self._pcache:
            self._pcache[key] = ms * self.gpowers[j]
        return self._pcache[key]


def default_window(sys, d):
    return 25 + d * sys.n * sys.n


def order_bound(sys, a, d, ell, strategy, gamma_spec=None, max_order=500):
    """Truncation order for the relation solve.

    strategy: ("explicit", N) -> (N, rigorous=True);
              ("stabilize", w) -> smallest M whose constraint rank is
              unchanged through M..M+w, rigorous=False.
    The row space grows with the order, so kernel stability is exactly
    rank stability.
    """
    kind = strategy[0]
    if kind == "explicit":
        return strategy[1], True
    if kind != "stabilize":
        raise DgalError("unknown order-bound strategy %r" % (kind,))
    w = strategy[1]
    builder = _AnsatzBuilder(sys, a, d, ell, gamma_spec)
    chunk = 2 * ell + 4
    order = chunk
    builder.prepare(order + 1)
    acc = linalg.RrefAccumulator(builder.k, builder.ncols)
    streak = 0
    M = 0
    last_rank = None
    k_row = 0
    while True:
        while k_row <= M + 1:
            acc.add_row(builder.row(k_row))
            k_row += 1
        if acc.rank == last_rank:
            streak += 1
            if streak >= w:
                return M - w, False
        else:
            streak = 0
            last_rank = acc.rank
        M += 1
        if M > max_order:
            raise ResourceCapError("no stable truncation order below %d" % max_order)
        if M + 1 > order:
            order = order * 2
            builder.prepare(order + 1)


def relation_ideal(sys, a, d, ell, N, rigorous=False):
    """Relations of total degree <= d with polynomial coefficients of
    t-degree <= 2*ell, valid through truncation order N+1."""
    sys.check_regular(a)
    builder = _AnsatzBuilder(sys, a, d, ell)
    builder.prepare(N + 1)
    acc = linalg.RrefAccumulator(builder.k, builder.ncols)
    for k_row in range(N + 2):
        acc.add_row(builder.row(k_row))
    kernel = acc.kernel_basis()
    R = sys.R
    ring = PolyRing(R, matrix_var_names(sys.n), graded_lex_order(sys.n * sys.n))
    polys = _kernel_to_polys(builder, kernel, ring, a)
    basis = _row_reduce_polys(ring, polys)
    return RelationIdeal(ring, basis, d=d, a=a, ell=ell, order_used=N,
                         rigorous=rigorous)


def relation_ideal_algebraic(sys, a, d, ell, qcoeffs, N, rigorous=False, root=None):
    """Relations with coefficients in k(gamma), gamma algebraic over k with
    monic minimal polynomial Q; the series of gamma is coupled with the
    series of the fundamental matrix in one linear system (the solution
    vector of the block system diag(A^(+n), companion(Q)))."""
    sys.check_regular(a)
    R = sys.R
    fld, gseries, root_val = algebraic_series(R, qcoeffs, a, N + 1, root=root)
    if fld != R.const:
        from .ratfunc import RatFuncField
        from .systems import OdeSystem
        Rbig = R.over(fld)
        sys = OdeSystem(Rbig, [[Rbig.coerce_from(R, f) for f in row] for row in sys.A])
        qcoeffs = [Rbig.coerce_from(R, c) for c in qcoeffs]
        a = fld.coerce_from(R.const, a)
        R = Rbig
    ext = ExtField(R, qcoeffs)
    builder = _AnsatzBuilder(sys, a, d, ell, gamma_spec=(ext, gseries))
    builder.prepare(N + 1)
    acc = linalg.RrefAccumulator(builder.k, builder.ncols)
    for k_row in range(N + 2):
        acc.add_row(builder.row(k_row))
    kernel = acc.kernel_basis()
    ring = PolyRing(ext, matrix_var_names(sys.n), graded_lex_order(sys.n * sys.n))
    polys = _kernel_to_polys_ext(builder, kernel, ring, ext, a)
    basis = _row_reduce_polys(ring, polys)
    return RelationIdeal(ring, basis, d=d, a=a, ell=ell, order_used=N,
                         rigorous=rigorous)


def _kernel_to_polys(builder, kernel, ring, a):
    R = builder.R
    k = R.const
    width = 2 * builder.ell + 1
    out = []
    for vec in kernel:
        terms = {}
        for mi, m in enumerate(builder.monos):
            ucoeffs = vec[mi * width:(mi + 1) * width]
            if all(k.is_zero(c) for c in ucoeffs):
                continue
            tcoeffs = _poly_shift(k, list(ucoeffs), k.neg(a))
            terms[m] = R.from_coeffs(tcoeffs)
        out.append(ring.from_dict(terms))
    return out


def _kernel_to_polys_ext(builder, kernel, ring, ext, a):
    R = ext.R
    k = R.const
    width = 2 * builder.ell + 1
    gdim = builder.gdim
    out = []
    for vec in kernel:
        terms = {}
        col = 0
        for mi, m in enumerate(builder.monos):
            gcoords = []
            for j in range(gdim):
                ucoeffs = vec[col:col + width]
                col += width
                tcoeffs = _poly_shift(k, list(ucoeffs), k.neg(a))
                gcoords.append(R.from_coeffs(tcoeffs))
            el = ext.new(gcoords)
            if not ext.is_zero(el):
                terms[m] = el
        out.append(ring.from_dict(terms))
    return out


def _row_reduce_polys(ring, polys):
    """Canonical basis: RREF over the coefficient field with columns
    ordered by the ring's monomial order, leading coefficients 1."""
    polys = [p for p in polys if p.terms]
    if not polys:
        return []
    fld = ring.field
    cols = sorted({e for p in polys for e in p.terms},
                  key=ring.order.key, reverse=True)
    index = {e: i for i, e in enumerate(cols)}
    mat = []
    for p in polys:
        row = [fld.zero] * len(cols)
        for e, c in p.terms.items():
            row[index[e]] = c
        mat.append(row)
    rrefed, pivots = linalg.rref(fld, mat)
    out = []
    for r, row in enumerate(rrefed):
        if r >= len(pivots):
            break
        terms = {cols[i]: c for i, c in enumerate(row) if not fld.is_zero(c)}
        if terms:
            out.append(ring.from_dict(terms))
    return out


def substituted_coefficient_system(rel, G, N, diagonal_only=False):
    """Equations on a constant matrix h making every basis relation vanish
    on G·h through u^N: substitute the series matrix times symbolic h into
    each relation and read off one polynomial per series order."""
    from .series import SeriesAlgebra, ratfunc_series
    ring = rel.ring
    R = ring.field
    k = G.field
    n = G.n
    SA = SeriesAlgebra(k, N)
    if diagonal_only:
        hnames = ["y_%d" % (i + 1) for i in range(n)]
    else:
        hnames = ["y_%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    ringS = PolyRing(SA, hnames, graded_lex_order(len(hnames)))
    hvars = ringS.gens
    values = []
    for i in range(n):
        for j in range(n):
            acc = ringS.zero
            for l in range(n):
                if diagonal_only and l != j:
                    continue
                s = SA.lift(G.entry(i, l))
                var = hvars[j] if diagonal_only else hvars[l * n + j]
                acc = acc + var.scale(s)
            values.append(acc)

    def from_coeff(c):
        return ringS.from_const(SA.lift(ratfunc_series(R, c, G.a, N)))

    ringC = PolyRing(k, hnames, graded_lex_order(len(hnames)))
    eqs = []
    for P in rel.basis:
        val = P.evaluate(values, one=ringS.one, mul=lambda x, y: x * y,
                         add=lambda x, y: x + y, from_coeff=from_coeff)
        for order_k in range(N + 1):
            terms = {}
            for exp, s in val.terms.items():
                c = s.coeffs[order_k] if order_k <= s.order else k.zero
                if not k.is_zero(c):
                    terms[exp] = c
            if terms:
                eqs.append(ringC.from_dict(terms))
    return ringC, eqs


def second_point_check(sys, rel, b, margin=10):
    """Soundness of a relation ideal against the series at another
    regular point: either the relations vanish there directly, or a
    constant invertible transport factor h with P(G_b h) = 0 exists.

    Returns (ok, how) with how in {"empty", "direct", "transport"}."""
    from .solve import PositiveDimensionalError, solve_zero_dimensional
    if not rel.basis:
        return True, "empty"
    N = rel.order_used + margin
    Gb = sys.fundamental_series(b, N)
    if all(membership_test(P, Gb, N) for P in rel.basis):
        return True, "direct"
    for diag in (False, True):
        try:
            ringC, eqs = substituted_coefficient_system(rel, Gb, N, diagonal_only=diag)
            if not eqs:
                return True, "direct"
            fld, pts = solve_zero_dimensional(eqs)
        except PositiveDimensionalError:
            continue
        n = Gb.n
        for coords, _mult in pts:
            if diag:
                h = [[coords[i] if i == j else fld.zero for j in range(n)]
                     for i in range(n)]
            else:
                h = [[coords[i * n + j] for j in range(n)] for i in range(n)]
            if not fld.is_zero(linalg.det(fld, h)):
                return True, "transport"
    return False, "none"


def membership_test(P, G, N):
    """True iff P evaluated on the series matrix vanishes through u^N."""
    ring = P.ring
    R = ring.field  # RatFuncField
    k = G.field
    n = G.n
    from .series import ratfunc_series
    order = min(N, G.order)
    values = [G.entry(p // n, p % n).truncate(order) for p in range(n * n)]
    one = Series.constant(k, k.one, order)

    def from_coeff(c):
        if hasattr(R, "numer_coeffs"):
            return ratfunc_series(R, c, G.a, order)
        return Series.constant(k, c, order)

    val = P.evaluate(values, one=one, mul=lambda x, y: x * y,
                     add=lambda x, y: x + y, from_coeff=from_coeff)
    return val.is_zero()


def membership_test_ext(P, G, gamma_series, N):
    """membership_test for polynomials with k(gamma) coefficients."""
    ext = P.ring.field
    R = ext.R
    k = G.field
    n = G.n
    from .series import ratfunc_series
    order = min(N, G.order, gamma_series.order)
    values = [G.entry(p // n, p % n).truncate(order) for p in range(n * n)]
    one = Series.constant(k, k.one, order)
    gpow = [one]
    for _ in range(ext.deg - 1):
        gpow.append(gpow[-1] * gamma_series.truncate(order))

    def from_coeff(el):
        acc = Series.constant(k, k.zero, order)
        for j, f in enumerate(el):
            if not R.is_zero(f):
                acc = acc + ratfunc_series(R, f, G.a, order) * gpow[j]
        return acc

    val = P.evaluate(values, one=one, mul=lambda x, y: x * y,
                     add=lambda x, y: x + y, from_coeff=from_coeff)
    return val.is_zero()
