"""Algebraic subgroups of GL_n presented by polynomial ideals.

A subgroup is a list of polynomial generators in the matrix entries
x_i_j over an exact constant field.  Provided here: the stabilizer of a
relation ideal, a symbolic group-axiom check, identity components for a
few certified classes, character groups via a multiplicativity ansatz,
and kernels of characters.
"""

import random
from fractions import Fraction

import sympy as sp

from . import lattice, linalg
from .errors import DgalError, UnsupportedInstanceError
from .fields import ConstField
from .multipoly import PolyRing, groebner, normal_form, standard_monomials
from .relations import _row_reduce_polys, graded_lex_order, matrix_var_names
from .solve import PositiveDimensionalError, solve_zero_dimensional
from .systems import monomials_upto


class AlgebraicSubgroup:
    """Subgroup of GL_n cut out by polynomial generators in x_i_j."""

    def __init__(self, n, ring, generators, *, connected=None):
        self.n = n
        self.ring = ring
        self.generators = list(generators)
        self.group_verified = False
        self.connected = connected  # True / False / None (unknown)
        self.finite = None
        self.points_field = None
        self.points = None
        self.component_count = None

    @property
    def field(self):
        return self.ring.field

    def identity_values(self):
        """Entries of the identity matrix, row-major, as field elements."""
        fld = self.ring.field
        return [fld.one if i == j else fld.zero
                for i in range(self.n) for j in range(self.n)]

    def vanishes_at_identity(self):
        fld = self.ring.field
        vals = self.identity_values()
        return all(fld.is_zero(g.eval_consts(vals)) for g in self.generators)

    def groebner_basis(self):
        if not hasattr(self, "_gb"):
            self._gb = groebner(self.generators) if self.generators else []
        return self._gb

    def __repr__(self):
        return "AlgebraicSubgroup(n=%d, %d generators)" % (
            self.n, len(self.generators))


class Character:
    """Polynomial representative of a character: P(I) = 1 and
    P(X)P(Y) = P(XY) modulo the group ideal."""

    def __init__(self, poly, ring):
        self.poly = poly
        self.ring = ring

    def __eq__(self, other):
        return isinstance(other, Character) and self.poly == other.poly

    def __repr__(self):
        return "Character(%s)" % self.ring.format(self.poly)


def group_ring(n, field):
    return PolyRing(field, matrix_var_names(n), graded_lex_order(n * n))


def full_group(n, field):
    return AlgebraicSubgroup(n, group_ring(n, field), [], connected=True)


# -- stabilizer ---------------------------------------------------------

def _product_substitution(ring_xy, n):
    """Map each x-variable to its entry of the product X*Y inside the
    doubled ring (x block then y block)."""
    values = {}
    for i in range(n):
        for j in range(n):
            acc = ring_xy.zero
            for l in range(n):
                acc = acc + ring_xy.gen(i * n + l) * ring_xy.gen(n * n + l * n + j)
            values[i * n + j] = acc
    return values


def _action_residuals(rel):
    """For each basis relation P, the coefficient vector of P(X*h) with
    h symbolic, reduced against the span of the basis.

    Returns (ring_h, residual entries): residuals are polynomials in the
    h variables with rational-function coefficients; they vanish exactly
    when h stabilizes the relation span.
    """
    ring = rel.ring
    R = ring.field
    nsq = ring.nvars
    n = int(round(nsq ** 0.5))
    hnames = ["y_%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    ring_xy = PolyRing(R, list(ring.names) + hnames, ring.order)
    subst = {}
    for i in range(n):
        for j in range(n):
            acc = ring_xy.zero
            for l in range(n):
                acc = acc + ring_xy.gen(i * n + l) * ring_xy.gen(nsq + l * n + j)
            subst[i * n + j] = acc
    ring_h = PolyRing(R, hnames, graded_lex_order(nsq))
    cols = sorted(monomials_upto(nsq, rel.d), key=ring.order.key, reverse=True)
    col_index = {e: i for i, e in enumerate(cols)}
    # row-reduced span of the basis coefficient vectors over k
    span = []
    for P in rel.basis:
        row = [R.zero] * len(cols)
        for e, c in P.terms.items():
            row[col_index[e]] = c
        span.append(row)
    rr, pivots = linalg.rref(R, span)
    residuals = []
    for P in rel.basis:
        lifted = ring_xy.from_dict(
            {e + (0,) * nsq: c for e, c in P.terms.items()})
        acted = lifted.substitute({i: subst[i] for i in range(nsq)})
        # split exponents into (x-monomial, h-polynomial) coordinates
        vec = [ring_h.zero] * len(cols)
        for e, c in acted.terms.items():
            xe, he = e[:nsq], e[nsq:]
            vec[col_index[xe]] = vec[col_index[xe]] + ring_h.from_dict({he: c})
        for r, pc in zip(rr, pivots):
            lead = vec[pc]
            if lead.is_zero():
                continue
            vec = [v - lead.scale(x) for v, x in zip(vec, r)]
        residuals.extend(v for v in vec if not v.is_zero())
    return ring_h, residuals


def _split_by_t_power(R, ring_h, ring_const, poly):
    """Clear denominators of a polynomial with rational-function
    coefficients and emit one constant-coefficient polynomial per power
    of t."""
    den = R.one
    for c in poly.terms.values():
        den = R.mul(den, R.from_coeffs(R.denom_coeffs(c)))
    out = {}
    for e, c in poly.terms.items():
        g = R.mul(c, den)
        if not R.is_polynomial(g):
            raise DgalError("denominator clearing failed")
        for m, cm in enumerate(R.numer_coeffs(g)):
            if R.const.is_zero(cm):
                continue
            out.setdefault(m, {})[e] = cm
    return [ring_const.from_dict(d) for _, d in sorted(out.items())]


def stabilizer_group(rel):
    """The group of constant matrices h whose right action X -> X*h
    preserves the span of the relation basis."""
    ring = rel.ring
    R = ring.field
    n = int(round(ring.nvars ** 0.5))
    ring_const = group_ring(n, R.const)
    if not rel.basis:
        return full_group(n, R.const)
    ring_h, residuals = _action_residuals(rel)
    gens = []
    for res in residuals:
        gens.extend(_split_by_t_power(R, ring_h, ring_const, res))
    gens = _row_reduce_polys(ring_const, gens)
    return AlgebraicSubgroup(n, ring_const, gens)


def verify_group_axioms(H, rel):
    """Symbolic closure check: the identity satisfies the generators and
    the stabilizer condition holds identically for h subject to H's
    ideal.  Sets group_verified on success."""
    if not H.vanishes_at_identity():
        raise DgalError("identity matrix violates a group generator")
    if rel.basis:
        R = rel.ring.field
        ring_h, residuals = _action_residuals(rel)
        lifted = [ring_h.from_dict({e: R.from_const(c) for e, c in g.terms.items()})
                  for g in H.generators]
        gb = groebner(lifted) if lifted else []
        for res in residuals:
            if normal_form(res, gb).terms:
                raise DgalError(
                    "group closure failed for residual %s" % ring_h.format(res))
    H.group_verified = True
    return H


# -- identity component -------------------------------------------------

def _diagonal_binomial_lattice(H):
    """If every generator is an off-diagonal variable or a difference of
    monomials in the diagonal variables, return the exponent rows of the
    binomial part (diagonal coordinates), else None."""
    n = H.n
    diag = [i * n + i for i in range(n)]
    offdiag = [p for p in range(n * n) if p not in diag]
    fld = H.ring.field
    need_off = set(offdiag)
    rows = []
    for g in H.generators:
        terms = list(g.terms.items())
        if len(terms) == 1:
            e, _c = terms[0]
            if sum(e) == 1 and any(e[p] for p in offdiag):
                need_off.discard(next(p for p in offdiag if e[p]))
                continue
            return None
        if len(terms) != 2:
            return None
        (e1, c1), (e2, c2) = terms
        if not fld.is_zero(fld.add(c1, c2)):
            return None
        if any(e1[p] or e2[p] for p in offdiag):
            return None
        rows.append([e1[p] - e2[p] for p in diag])
    if need_off and n > 1:
        return None
    return rows


def _single_irreducible_generator(H):
    """True for a principal ideal with an irreducible generator over the
    rationals: the variety is irreducible, hence connected."""
    if len(H.generators) != 1:
        return False
    g = H.generators[0]
    fld = H.ring.field
    if fld.gens:
        return False  # factorization over extensions not attempted
    xs = sp.symbols(" ".join(H.ring.names))
    if H.ring.nvars == 1:
        xs = (xs,)
    expr = sp.Integer(0)
    for e, c in g.terms.items():
        mono = sp.Integer(1)
        for x, k in zip(xs, e):
            mono *= x ** k
        expr += fld.to_sympy(c) * mono
    factors = sp.factor_list(expr)[1]
    return len(factors) == 1 and factors[0][1] == 1


def _rotation_parameterization(field, n):
    """Rational curve through the identity covering the plane rotation
    group: the degree-2 Cayley parameterization."""
    if n != 2:
        return None
    ring = PolyRing(field, ["s"] + matrix_var_names(2), graded_lex_order(5))
    s = ring.gen(0)
    one = ring.one
    den = one + s * s
    num = {0: one - s * s, 1: s + s, 2: -(s + s), 3: one - s * s}
    return ring, [den * ring.gen(1 + p) - num[p] for p in range(4)]


def _parameterization_probe(H):
    """Certify connectedness when H equals the closure of a known
    rational curve through the identity."""
    got = _rotation_parameterization(H.ring.field, H.n)
    if got is None:
        return False
    pring, prels = got
    from .multipoly import eliminate
    img = eliminate(prels, 1)
    mapped = [H.ring.from_dict({e[1:]: c for e, c in g.terms.items()})
              for g in img]
    gb_img = groebner(mapped) if mapped else []
    return gb_img == H.groebner_basis()


def identity_component(H):
    """Connected component of the identity, for certified classes only.

    Supported: trivial ideal (GL_n); finite groups (point enumeration);
    subgroups of the diagonal torus cut out by monomials and binomials
    (lattice saturation); principal ideals with an irreducible
    generator; groups matching a known rational parameterization; and
    groups already flagged connected.
    """
    n = H.n
    ring = H.ring
    fld = ring.field
    if H.connected:
        return H
    if not H.generators:
        H.connected = True
        return H
    gb = H.groebner_basis()
    from .multipoly import is_zero_dimensional
    flag, _w = is_zero_dimensional(gb, ring)
    if flag:
        _fld, pts = group_points_finite(H)
        comp = AlgebraicSubgroup(n, ring, [
            ring.gen(p) - ring.from_const(v)
            for p, v in enumerate(H.identity_values())], connected=True)
        comp.component_count = len(pts)
        H.finite = True
        return comp
    rows = _diagonal_binomial_lattice(H)
    if rows is not None:
        sat = lattice.saturate(rows, n) if rows else []
        gens = [ring.gen(p) for p in range(n * n) if p % (n + 1)]
        for lam in sat:
            pos = {i * n + i: e for i, e in enumerate(lam) if e > 0}
            neg = {i * n + i: -e for i, e in enumerate(lam) if e < 0}
            gens.append(ring.from_dict({tuple(pos.get(p, 0) for p in range(n * n)):
                                        fld.one})
                        - ring.from_dict({tuple(neg.get(p, 0) for p in range(n * n)):
                                          fld.one}))
        return AlgebraicSubgroup(n, ring, gens, connected=True)
    if _single_irreducible_generator(H) and H.vanishes_at_identity():
        H.connected = True
        return H
    if _parameterization_probe(H):
        H.connected = True
        return H
    raise UnsupportedInstanceError(
        "identity component: group is in no certified class "
        "(not finite, not diagonal-binomial, no irreducibility or "
        "parameterization certificate)")


def group_points_finite(H):
    """All points of a finite subgroup, over whatever extension of the
    constant field they need; the set is checked to be closed under
    product and inverse."""
    if not H.generators:
        raise PositiveDimensionalError(H.ring.names[0])
    fld, raw = solve_zero_dimensional(H.generators)
    n = H.n
    pts = []
    seen = []
    for coords, _mult in raw:
        m = [[coords[i * n + j] for j in range(n)] for i in range(n)]
        if fld.is_zero(linalg.det(fld, m)):
            continue
        if not any(_mat_eq(fld, m, q) for q in seen):
            seen.append(m)
            pts.append(m)
    gb = H.groebner_basis()
    ringF = group_ring(n, fld)
    gbF = [ringF.from_dict({e: fld.coerce_from(H.ring.field, c)
                            for e, c in g.terms.items()}) for g in gb]
    for p in pts:
        for q in pts:
            pq = linalg.matmul(fld, p, q)
            vals = [pq[i][j] for i in range(n) for j in range(n)]
            if not all(fld.is_zero(g.eval_consts(vals)) for g in gbF):
                raise DgalError("finite point set not closed under product")
        inv = linalg.inverse(fld, p)
        if not any(_mat_eq(fld, inv, q) for q in pts):
            raise DgalError("finite point set not closed under inverse")
    H.finite = True
    H.points_field = fld
    H.points = pts
    return fld, pts


def _mat_eq(fld, a, b):
    return all(fld.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


# -- characters ---------------------------------------------------------

def _doubled_ideal(H, field=None):
    """Groebner basis of I(H)(x) + I(H)(y) in the doubled ring."""
    n = H.n
    nsq = n * n
    fld = field or H.ring.field
    names = list(H.ring.names) + ["y_%d_%d" % (i + 1, j + 1)
                                  for i in range(n) for j in range(n)]
    ring2 = PolyRing(fld, names, graded_lex_order(2 * nsq))
    conv = (lambda c: c) if fld == H.ring.field else \
        (lambda c: fld.coerce_from(H.ring.field, c))
    both = []
    for g in H.generators:
        both.append(ring2.from_dict({e + (0,) * nsq: conv(c)
                                     for e, c in g.terms.items()}))
        both.append(ring2.from_dict({(0,) * nsq + e: conv(c)
                                     for e, c in g.terms.items()}))
    return ring2, (groebner(both) if both else [])


def sample_group_points(H, count, seed=20):
    """Exact points of H (entries in the constant field or an extension),
    used to probe the translation action.  Strategies, tried in order:
    no equations (random invertible matrices), finite groups (full
    enumeration), diagonal binomial groups (torus parameterization), the
    plane rotation parameterization, and a single generator linear in
    one variable (solve for it at random values of the rest).  Every
    candidate is checked against the generators before being returned.
    """
    rng = random.Random(seed)
    n = H.n
    fld = H.ring.field

    def accept(points, pfld):
        good = []
        for m in points:
            vals = [m[i][j] for i in range(n) for j in range(n)]
            if pfld.is_zero(linalg.det(pfld, m)):
                continue
            gens = H.generators if pfld == fld else [
                _coerce_poly(group_ring(n, pfld), H.ring, g)
                for g in H.generators]
            if all(pfld.is_zero(g.eval_consts(vals)) for g in gens):
                good.append(m)
        return good

    def rnd():
        sign = 1 if rng.random() < 0.7 else -1
        return fld.from_fraction(
            Fraction(sign * rng.randint(1, 9), rng.randint(1, 9)))

    if not H.generators:
        out = []
        while len(out) < count:
            m = [[fld.add(fld.from_int(1 if i == j else 0), rnd())
                  for j in range(n)] for i in range(n)]
            out.extend(accept([m], fld))
        return fld, out[:count]
    gb = H.groebner_basis()
    from .multipoly import is_zero_dimensional
    if is_zero_dimensional(gb, H.ring)[0]:
        pfld, pts = group_points_finite(H)
        return pfld, pts
    rows = _diagonal_binomial_lattice(H)
    if rows is not None:
        sat = lattice.saturate(rows, n) if rows else []
        W = lattice.integer_kernel(sat, n) if sat else \
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        out = []
        for _ in range(count * 3):
            svals = [rnd() for _ in W]
            diag = []
            for i in range(n):
                v = fld.one
                for s, w in zip(svals, W):
                    v = fld.mul(v, fld.pow(s, w[i]))
                diag.append(v)
            m = [[diag[i] if i == j else fld.zero for j in range(n)]
                 for i in range(n)]
            out.extend(accept([m], fld))
            if len(out) >= count:
                return fld, out[:count]
    if len(H.generators) == 1:
        g = H.generators[0]
        for p in range(n * n):
            if g.degree_in(p) != 1:
                continue
            out = []
            for _ in range(count * 5):
                vals = [rnd() for _ in range(n * n)]
                lin = fld.zero
                const = fld.zero
                for e, c in g.terms.items():
                    rest = _monomial_at(
                        fld, tuple(0 if q == p else e[q] for q in range(n * n)),
                        vals)
                    if e[p]:
                        lin = fld.add(lin, fld.mul(c, rest))
                    else:
                        const = fld.add(const, fld.mul(c, rest))
                if fld.is_zero(lin):
                    continue
                vals[p] = fld.neg(fld.div(const, lin))
                m = [[vals[i * n + j] for j in range(n)] for i in range(n)]
                out.extend(accept([m], fld))
                if len(out) >= count:
                    return fld, out[:count]
            if out:
                return fld, out
    if n == 2:
        out = []
        for _ in range(count * 3):
            s = rnd()
            den = fld.inv(fld.add(fld.one, fld.mul(s, s)))
            c = fld.mul(fld.sub(fld.one, fld.mul(s, s)), den)
            sn = fld.mul(fld.add(s, s), den)
            m = [[c, sn], [fld.neg(sn), c]]
            out.extend(accept([m], fld))
            if len(out) >= count:
                return fld, out[:count]
        if out:
            return fld, out
    raise UnsupportedInstanceError(
        "no sampling strategy applies to this group")


def _charpoly(fld, A):
    """Ascending coefficients of det(x I - A), by the trace recurrence."""
    n = len(A)
    M = linalg.zeros(fld, n, n)
    cs = [fld.one]
    for k in range(1, n + 1):
        for i in range(n):
            M[i][i] = fld.add(M[i][i], cs[-1])
        M = linalg.matmul(fld, A, M)
        tr = fld.zero
        for i in range(n):
            tr = fld.add(tr, M[i][i])
        cs.append(fld.neg(fld.div(tr, fld.from_int(k))))
    return list(reversed(cs))


def _translation_matrix(ringF, gbF, B, h, n):
    """Matrix of P(X) -> P(X h) on the span of the standard monomials B,
    columns indexed by B."""
    fld = ringF.field
    subst = {}
    for i in range(n):
        for j in range(n):
            acc = ringF.zero
            for l in range(n):
                acc = acc + ringF.gen(i * n + l).scale(h[l][j])
            subst[i * n + j] = acc
    idx = {m: k for k, m in enumerate(B)}
    mat = linalg.zeros(fld, len(B), len(B))
    for k, m in enumerate(B):
        val = ringF.one
        for p, e in enumerate(m):
            for _ in range(e):
                val = val * subst[p]
        if gbF:
            val = normal_form(val, gbF)
        for e2, c in val.terms.items():
            if e2 not in idx:
                raise DgalError("translation left the monomial basis")
            mat[idx[e2]][k] = c
    return mat


def _coerce_vec(big, small, v):
    if big == small:
        return v
    return [big.coerce_from(small, x) for x in v]


def _shrink_invariant(fld, basis, T):
    """Largest subspace of span(basis) mapped into itself by T."""
    while True:
        if not basis:
            return []
        comp = linalg.nullspace(fld, basis)
        if not comp:
            return basis  # whole space, invariant for free
        timg = [linalg.matvec(fld, T, b) for b in basis]
        cond = [[_dot(fld, q, ti) for ti in timg] for q in comp]
        ker = linalg.nullspace(fld, cond)
        if len(ker) == len(basis):
            return basis
        basis = [[_comb(fld, u, basis, j) for j in range(len(basis[0]))]
                 for u in ker]


def _dot(fld, a, b):
    out = fld.zero
    for x, y in zip(a, b):
        if not (fld.is_zero(x) or fld.is_zero(y)):
            out = fld.add(out, fld.mul(x, y))
    return out


def _comb(fld, u, basis, j):
    out = fld.zero
    for c, b in zip(u, basis):
        out = fld.add(out, fld.mul(c, b[j]))
    return out


def _eigen_refine(fld, spaces, T):
    """Split each subspace along the eigenlines of T; the field grows as
    eigenvalues require.  Returns (field, spaces)."""
    from .fields import split_univariate
    big = fld
    done = []
    for basis in spaces:
        basis = [_coerce_vec(big, fld, v) if big != fld else v for v in basis]
        Tb = [[big.coerce_from(fld, x) for x in row] for row in T] \
            if big != fld else T
        basis = _shrink_invariant(big, basis, Tb)
        if not basis:
            continue
        # restricted matrix: T basis^T = basis^T R
        bt = linalg.transpose(basis)
        cols = []
        for b in basis:
            cols.append(linalg.solve(big, bt, linalg.matvec(big, Tb, b)))
        R = linalg.transpose(cols)
        ext, roots = split_univariate(big, _charpoly(big, R))
        if ext != big:
            done = [[(_coerce_vec(ext, big, v)) for v in sp_]
                    for sp_ in done]
            basis = [_coerce_vec(ext, big, v) for v in basis]
            R = [[ext.coerce_from(big, x) for x in row] for row in R]
            big = ext
        for lam, _mult in roots:
            shifted = [[big.sub(R[i][j], lam) if i == j else R[i][j]
                        for j in range(len(R))] for i in range(len(R))]
            eig = [[_comb(big, u, basis, j) for j in range(len(basis[0]))]
                   for u in linalg.nullspace(big, shifted)]
            if eig:
                done.append(eig)
    return big, done


def characters_generators(H, D, samples=4, seed=20):
    """Generators of the character group of a connected H, from the
    group-like polynomials of degree <= D.

    A character spans a line in the degree-capped coordinate ring that
    every right translation preserves, so the candidates are the common
    eigenlines of the translation matrices at a handful of sampled group
    points.  Each candidate is then verified symbolically (P(I) = 1 and
    P(X)P(Y) = P(XY) modulo the doubled group ideal), which makes the
    sampling sound; the finitely many eigenlines realize the
    zero-dimensionality of the underlying ansatz system.  Inverse pairs
    and products of other solutions are pruned so the returned list
    generates the lattice.
    """
    if H.connected is not True:
        raise DgalError("characters need a connected group "
                        "(run identity_component first)")
    n = H.n
    ring = H.ring
    gb = H.groebner_basis()
    B = standard_monomials(gb, ring, D)
    pfld, hpts = sample_group_points(H, samples, seed)
    big = pfld
    ringF = group_ring(n, big)
    gbF = [_coerce_poly(ringF, ring, g) for g in gb]
    N = len(B)
    spaces = [[[big.one if i == j else big.zero for j in range(N)]
               for i in range(N)]]
    used = 0
    for h in hpts:
        h = [[big.coerce_from(pfld, x) for x in row] for row in h] \
            if big != pfld else h
        ringF = group_ring(n, big)
        gbF = [_coerce_poly(ringF, ring, g) for g in gb]
        T = _translation_matrix(ringF, gbF, B, h, n)
        big, spaces = _eigen_refine(big, spaces, T)
        used += 1
        if all(len(sp_) == 1 for sp_ in spaces) and used >= 2:
            break
    if any(len(sp_) > 1 for sp_ in spaces):
        raise DgalError("character eigenspaces did not separate; "
                        "more sample points needed")
    ringF = group_ring(n, big)
    gbF = [_coerce_poly(ringF, ring, g) for g in gb]
    ident = H.identity_values()
    identF = [big.coerce_from(ring.field, v) for v in ident] \
        if big != ring.field else ident
    sols = []
    for sp_ in spaces:
        v = sp_[0]
        s = big.zero
        for i, m in enumerate(B):
            s = big.add(s, big.mul(_monomial_at(big, m, identF), v[i]))
        if big.is_zero(s):
            continue  # no multiplicative polynomial on this line
        inv = big.inv(s)
        P = ringF.zero
        for i, m in enumerate(B):
            P = P + ringF.from_dict({m: big.mul(v[i], inv)})
        P = normal_form(P, gbF) if gbF else P
        if P == ringF.one:
            continue
        if not any(P == q for q in sols):
            sols.append(P)
    # verify and prune to lattice generators
    ring2F, gb2F = _doubled_ideal(
        AlgebraicSubgroup(n, ringF, gbF, connected=True))
    for P in sols:
        _check_character(ring2F, gb2F, P, n)
    prod_of = {}
    for P in sols:
        for Q in sols:
            pq = P * Q
            prod_of[(id(P), id(Q))] = normal_form(pq, gbF) if gbF else pq
    out = []
    for P in sorted(sols, key=lambda p: (p.total_degree(), ringF.format(p))):
        if any(prod_of[(id(P), id(Q))] == ringF.one for Q in out):
            continue  # inverse of an already chosen generator
        if any(prod_of[(id(a), id(b))] == P
               for a in sols for b in sols
               if a.total_degree() < P.total_degree()
               and b.total_degree() < P.total_degree()):
            continue  # product of two lower-degree solutions
        out.append(P)
    return [Character(P, ringF) for P in out]


def _monomial_at(fld, exp, values):
    out = fld.one
    for v, e in zip(values, exp):
        for _ in range(e):
            out = fld.mul(out, v)
    return out


def _coerce_poly(ring_to, ring_from, p):
    f_to, f_from = ring_to.field, ring_from.field
    if f_to == f_from:
        return ring_to.from_dict(dict(p.terms))
    return ring_to.from_dict({e: f_to.coerce_from(f_from, c)
                              for e, c in p.terms.items()})


def _check_character(ring2, gb2, P, n):
    nsq = n * n
    fld = ring2.field
    Px = ring2.from_dict({e + (0,) * nsq: c for e, c in P.terms.items()})
    Py = ring2.from_dict({(0,) * nsq + e: c for e, c in P.terms.items()})
    prod = _product_substitution(ring2, n)
    Pxy = ring2.zero
    for e, c in P.terms.items():
        term = ring2.from_const(c)
        for p, k in enumerate(e):
            for _ in range(k):
                term = term * prod[p]
        Pxy = Pxy + term
    diff = Px * Py - Pxy
    if gb2:
        diff = normal_form(diff, gb2)
    if not diff.is_zero():
        raise DgalError("character candidate fails multiplicativity")


def kernel_of_characters(H, chars):
    """The subgroup where every character equals 1: H's ideal plus the
    polynomials chi - 1."""
    if not chars:
        return H
    fld = chars[0].ring.field
    ringF = group_ring(H.n, fld)
    gens = [_coerce_poly(ringF, H.ring, g) for g in H.generators]
    for ch in chars:
        gens.append(_coerce_poly(ringF, ch.ring, ch.poly) - ringF.one)
    return AlgebraicSubgroup(H.n, ringF, gens)
