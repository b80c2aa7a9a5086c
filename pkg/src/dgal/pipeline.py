"""End-to-end computation of the differential Galois group.

The stages compose as: relation ideal -> stabilizer (the proto-group H)
-> identity component H deg -> characters and their hyperexponential
relation lattice -> identity component of the Galois group -> finite
part over the conjugates of the algebraic data.  Every completed run
carries a sandwich certificate: the kernel of the characters of H's
identity component is contained in the computed identity component,
which is contained in H (checked by Groebner reduction).

The degree bound that makes the whole computation unconditional is
astronomically large by construction; it is only ever reported
symbolically, and executable runs take a user-supplied degree override
(results are then labeled relative to that degree).
"""

from math import lcm

from . import linalg
from .errors import DgalError, UnsupportedInstanceError
from .fields import split_univariate
from .groups import (AlgebraicSubgroup, _coerce_poly, _mat_eq,
                     characters_generators, group_points_finite, group_ring,
                     identity_component, kernel_of_characters,
                     stabilizer_group, verify_group_axioms)
from .hyperexp import logderiv_from_character, relation_lattice
from .multipoly import PolyRing, groebner, is_zero_dimensional, normal_form
from .relations import (default_window, graded_lex_order, membership_test,
                        order_bound, relation_ideal,
                        substituted_coefficient_system)
from .series import Series, SeriesAlgebra, TruncSeries, algebraic_series
from .solve import PositiveDimensionalError, _join, solve_zero_dimensional


class PipelineConfig:
    """Knobs for a pipeline run.

    degree None means the symbolic-bound mode: the run refuses with the
    rendered bound tower instead of executing.  points b and c default
    to a; order_strategy None uses the heuristic default window (the
    result is then flagged non-rigorous).
    """

    def __init__(self, degree=None, a=None, b=None, c=None, ell=2,
                 order_strategy=None, char_degree=None, samples=4):
        if degree is not None and degree < 1:
            raise DgalError("degree override must be >= 1")
        self.degree = degree
        self.a = a
        self.b = b
        self.c = c
        self.ell = ell
        self.order_strategy = order_strategy
        self.char_degree = char_degree
        self.samples = samples

    def resolve_points(self, sys):
        k = sys.R.const
        a = self.a if self.a is not None else k.one
        b = self.b if self.b is not None else a
        c = self.c if self.c is not None else b
        for p in (a, b, c):
            sys.check_regular(p)
        return a, b, c


class AlphaData:
    """The algebraic change of basis alpha = alphabar * gbar and the
    transported fundamental matrix F_bar = F_b * h, with the series
    witness C = alpha^{-1} F_bar of identity-component membership."""

    def __init__(self, kind, field, M, exps, consts, gamma, root, gbar, h,
                 Fbar, C):
        self.kind = kind          # "identity" or "radical"
        self.field = field        # constant field of the series data
        self.M = M                # gamma^M = t (M = 1 means gamma in k)
        self.exps = exps          # alpha = diag(consts_i gamma^exps[i]) gbar
        self.consts = consts      # constant factors s_i over field
        self.gamma = gamma        # Series of gamma at b, or None
        self.root = root          # gamma(b)
        self.gbar = gbar          # constant matrix over field
        self.h = h                # transport factor, or None for identity
        self.Fbar = Fbar          # TruncSeries at b over field
        self.C = C                # TruncSeries of alpha^{-1} F_bar

    def describe(self, R):
        if self.kind == "identity":
            return "alpha = I"
        return "alpha = diag(s * gamma^%s) * gbar with gamma^%d = t, s = %s" \
            % (list(self.exps), self.M,
               [self.field.format(s) for s in self.consts])


class GaloisGroupDescription:
    """The computed group: its identity component's ideal, the finite
    part when the group is finite, and the provenance of the run."""

    def __init__(self, n, proto, rel, identity_comp, finite, points_field,
                 points, component_count, dimension, rigorous, provenance):
        self.n = n
        self.proto = proto
        self.rel = rel
        self.identity_component = identity_comp
        self.finite = finite
        self.points_field = points_field
        self.points = points
        self.component_count = component_count
        self.dimension = dimension
        self.rigorous = rigorous
        self.provenance = provenance
        self.sandwich_checked = False

    @property
    def order(self):
        return len(self.points) if self.finite else None

    def to_document(self):
        comp = self.identity_component
        lines = ["n: %d" % self.n,
                 "finite: %s" % ("yes" if self.finite else "no"),
                 "dimension: %s" % ("unknown" if self.dimension is None
                                    else self.dimension)]
        if self.component_count is not None:
            lines.append("components: %d" % self.component_count)
        if self.finite:
            lines.append("order: %d" % len(self.points))
            fld = self.points_field
            for m in self.points:
                lines.append("point: [%s]" % "; ".join(
                    ", ".join(fld.format(x) for x in row) for row in m))
        for g in comp.generators:
            lines.append("component_generator: %s" % comp.ring.format(g))
        for g in self.proto.generators:
            lines.append("proto_generator: %s" % self.proto.ring.format(g))
        lines.append("rigorous: %s" % ("yes" if self.rigorous else "no"))
        lines.append("sandwich_checked: %s" %
                     ("yes" if self.sandwich_checked else "no"))
        for key, val in sorted(self.provenance.items()):
            lines.append("%s: %s" % (key, val))
        return "\n".join(lines) + "\n"


def proto_galois(sys, cfg):
    """Relation ideal, then its stabilizer with verified group axioms.

    In symbolic-bound mode (no degree override) the run refuses: the
    unconditional degree bound is not executable at desk scale, and the
    error carries its expression tree and rendering.
    """
    if cfg.degree is None:
        from .bounds import proto_galois_degree_bound, render
        expr = proto_galois_degree_bound(sys.n)
        err = UnsupportedInstanceError(
            "the unconditional relation degree bound is not executable at "
            "desk scale; pass an explicit degree override. Symbolic value: "
            + render(expr))
        err.bound_expr = expr
        raise err
    a, _b, _c = cfg.resolve_points(sys)
    d, ell = cfg.degree, cfg.ell
    strategy = cfg.order_strategy
    if strategy is None:
        strategy = ("stabilize", default_window(sys, d))
    N, rigorous = order_bound(sys, a, d, ell, strategy)
    rel = relation_ideal(sys, a, d, ell, N, rigorous=rigorous)
    H = stabilizer_group(rel)
    verify_group_axioms(H, rel)
    return H, rel


# -- alpha and F_bar ----------------------------------------------------

def _poly_on_series(P, values, kf, order):
    """Evaluate a polynomial with constant coefficients on Series values."""
    cf = P.ring.field
    conv = (lambda c: c) if cf == kf else (lambda c: kf.coerce_from(cf, c))
    one = Series.constant(kf, kf.one, order)
    return P.evaluate(values, one=one, mul=lambda x, y: x * y,
                      add=lambda x, y: x + y,
                      from_coeff=lambda c: Series.constant(kf, conv(c), order))


def _vanishes_at_identity(rel):
    """True when every relation, as a rational function of t, is zero at
    the identity matrix."""
    R = rel.ring.field
    vals = [R.one if p // _n(rel) == p % _n(rel) else R.zero
            for p in range(rel.ring.nvars)]
    return all(R.is_zero(P.eval_consts(vals)) for P in rel.basis)


def _n(rel):
    return int(round(rel.ring.nvars ** 0.5))


def _fraction_nth_root(fr, m):
    """Exact m-th root of a Fraction, or None."""
    from fractions import Fraction
    if fr < 0:
        if m % 2 == 0:
            return None
        neg = _fraction_nth_root(-fr, m)
        return None if neg is None else -neg
    p, q = fr.numerator, fr.denominator
    rp = round(p ** (1.0 / m))
    rq = round(q ** (1.0 / m))
    for dp in (rp - 1, rp, rp + 1):
        for dq in (rq - 1, rq, rq + 1):
            if dp > 0 and dq > 0 and dp ** m == p and dq ** m == q:
                return Fraction(dp, dq)
    return None


def _radical_exponents(rel):
    """Read one relation x_ii^m = c * t^j per diagonal entry, with a
    constant c whose exact m-th root s lies in the rationals.

    Returns (M, exps, consts) for alpha = diag(s_i * gamma^exps[i]),
    gamma^M = t, or raises when the basis holds no such relation for
    some diagonal entry."""
    ring = rel.ring
    R = ring.field
    n = _n(rel)
    found = {}
    for P in rel.basis:
        terms = list(P.terms.items())
        if len(terms) != 2:
            continue
        terms.sort(key=lambda item: sum(item[0]), reverse=True)
        (e1, f1), (e0, f0) = terms
        if sum(e0) != 0:
            continue
        diag_pos = [i * n + i for i in range(n)]
        live = [p for p in range(n * n) if e1[p]]
        if len(live) != 1 or live[0] not in diag_pos:
            continue
        i = live[0] // n
        m = e1[live[0]]
        r = R.div(R.neg(f0), f1)  # x_ii^m = r(t)
        den = R.denom_coeffs(r)
        num = R.numer_coeffs(r)
        if len(den) != 1:
            continue
        if any(not R.const.is_zero(c) for c in num[:-1]):
            continue
        cconst = R.const.div(num[-1], den[0])
        if R.const.is_one(cconst):
            s = R.const.one
        else:
            vec = R.const.to_rational_vector(cconst)
            if any(x != 0 for x in vec[1:]):
                raise UnsupportedInstanceError(
                    "radical solve needs a rational constant factor; "
                    "found %s" % R.const.format(cconst))
            root = _fraction_nth_root(vec[0], m)
            if root is None:
                raise UnsupportedInstanceError(
                    "constant factor %s has no exact %d-th root in the "
                    "rationals" % (R.const.format(cconst), m))
            s = R.const.from_fraction(root)
        j = len(num) - 1
        if i not in found or m < found[i][0]:
            found[i] = (m, j, s)
    if len(found) != n:
        raise UnsupportedInstanceError(
            "no zero of the relation ideal in the supported diagonal "
            "radical class (missing a relation x_ii^m = t^j for some i)")
    M = lcm(*(m for m, _j, _s in found.values()))
    exps = [M * found[i][1] // found[i][0] for i in range(n)]
    consts = [found[i][2] for i in range(n)]
    return M, exps, consts


def _transport(sys, rel, a, b, order):
    """F_bar = F_b * h with every relation vanishing on F_bar.

    Returns (Fbar, h) with h None when no factor is needed."""
    Fb = sys.fundamental_series(b, order)
    if sys.R.const.eq(a, b) or not rel.basis:
        return Fb, None
    if all(membership_test(P, Fb, order) for P in rel.basis):
        return Fb, None
    N = rel.order_used
    for diag in (False, True):
        try:
            _ringC, eqs = substituted_coefficient_system(
                rel, Fb, min(N, order), diagonal_only=diag)
            fld, pts = solve_zero_dimensional(eqs)
        except PositiveDimensionalError:
            continue
        n = sys.n
        for coords, _mult in pts:
            if diag:
                h = [[coords[i] if i == j else fld.zero for j in range(n)]
                     for i in range(n)]
            else:
                h = [[coords[i * n + j] for j in range(n)] for i in range(n)]
            if not fld.is_zero(linalg.det(fld, h)):
                Fbh = Fb.coerce_to(fld).const_matrix_mul(h)
                return Fbh, h
    raise UnsupportedInstanceError(
        "no invertible transport factor between the base points was found")


def find_alpha_fbar(sys, rel, H, Hcirc, a, b, order):
    """The algebraic point alpha of the relation variety and the
    transported fundamental matrix F_bar, with alpha^{-1} F_bar verified
    (in series through the truncation order) to lie in H's identity
    component; the component witness gbar is folded into alpha."""
    n = sys.n
    R = sys.R
    Fbar, h = _transport(sys, rel, a, b, order)
    kf = Fbar.field
    Rb = R if kf == R.const else R.over(kf)
    bb = kf.coerce_from(R.const, b) if kf != R.const else b
    if not rel.basis or _vanishes_at_identity(rel):
        kind, M, exps, gser, root = "identity", 1, [0] * n, None, None
        consts = [kf.one] * n
        C = Fbar
    else:
        kind = "radical"
        M, exps, consts = _radical_exponents(rel)
        if Rb.const != R.const:
            consts = [Rb.const.coerce_from(R.const, s) for s in consts]
        qcoeffs = [Rb.neg(Rb.t)] + [Rb.zero] * (M - 1) + [Rb.one]
        kf, gser, root = algebraic_series(Rb, qcoeffs, bb, order)
        if kf != Rb.const:
            consts = [kf.coerce_from(Rb.const, s) for s in consts]
            Rb = Rb.over(kf)
            Fbar = Fbar.coerce_to(kf)
        # verify every relation vanishes at alpha
        zero = Series.constant(kf, kf.zero, order)
        gpow = {e: _series_pow(gser, e, kf, order) for e in set(exps)}
        alpha_entries = [[gpow[exps[i]].scale(consts[i]) if i == j else zero
                          for j in range(n)] for i in range(n)]
        Aser = TruncSeries.from_entries(kf, Fbar.a, alpha_entries)
        for P in rel.basis:
            Pb = _coerce_poly(PolyRing(Rb, rel.ring.names, rel.ring.order),
                              rel.ring, P)
            if not membership_test(Pb, Aser, order):
                raise DgalError("candidate alpha fails a relation: %s"
                                % rel.ring.format(P))
        ginv = gser.inverse()
        ginv_pow = {e: _series_pow(ginv, e, kf, order) for e in set(exps)}
        C_entries = [[(Fbar.entry(i, j) * ginv_pow[exps[i]]).scale(
                          kf.inv(consts[i]))
                      for j in range(n)] for i in range(n)]
        C = TruncSeries.from_entries(kf, Fbar.a, C_entries)
    gbar = linalg.identity(kf, n)
    if not _component_membership(Hcirc, C, order):
        oldf = C.field
        kf, C, gbar = _component_witness(H, Hcirc, C, order)
        Fbar = Fbar.coerce_to(kf) if Fbar.field != kf else Fbar
        if oldf != kf:
            consts = [kf.coerce_from(oldf, s) for s in consts]
            if gser is not None:
                gser = Series(kf, [kf.coerce_from(oldf, x)
                                   for x in gser.coeffs])
                root = kf.coerce_from(oldf, root)
    return AlphaData(kind, kf, M, exps, consts, gser, root, gbar, h, Fbar, C)


def _series_pow(s, e, kf, order):
    out = Series.constant(kf, kf.one, order)
    for _ in range(e):
        out = out * s
    return out


def _component_membership(Hcirc, C, order):
    n = C.n
    vals = [C.entry(p // n, p % n) for p in range(n * n)]
    return all(_poly_on_series(g, vals, C.field, order).is_zero()
               for g in Hcirc.generators)


def _component_witness(H, Hcirc, C, order):
    """Find a constant gbar in H placing gbar^{-1} C in the identity
    component; only enumerable (finite) H is supported."""
    if H.points is None:
        try:
            group_points_finite(H)
        except (DgalError, PositiveDimensionalError) as err:
            raise UnsupportedInstanceError(
                "component witness search needs an enumerable group: %s"
                % err) from err
    big = _join(C.field, H.points_field)
    Cb = C.coerce_to(big) if C.field != big else C
    for p in H.points:
        g = [[big.coerce_from(H.points_field, x) for x in row] for row in p]
        ginv = linalg.inverse(big, g)
        Cg = TruncSeries(big, Cb.a,
                         [linalg.matmul(big, ginv, m) for m in Cb.mats])
        if _component_membership(Hcirc, Cg, order):
            return big, Cg, g
    raise DgalError("membership of alpha^{-1} F_bar in the identity "
                    "component could not be certified at this order")


# -- identity component of the Galois group -----------------------------

def identity_component_subset(alpha, Hcirc):
    """The substituted ideal {P(alpha^{-1} X)}; with alpha = I this is
    just the component's ideal (the only executable case here, matching
    the restricted alpha search for infinite components)."""
    if alpha.kind == "identity":
        return list(Hcirc.generators)
    raise UnsupportedInstanceError(
        "substitution of a nontrivial algebraic alpha into an infinite "
        "component ideal is outside the supported class")


def character_binomials(chars, rl, ring):
    """Group equations from the hyperexponential relation lattice: each
    relation h_j^m = f * prod h_i^{e_i} forces chi_j^m = prod chi_i^{e_i}
    on the Galois group, and each self relation forces chi_j^m = 1."""
    gens = []

    def chi(i):
        return _coerce_poly(ring, chars[i].ring, chars[i].poly)

    for r in rl.relations:
        lhs = chi(r.j) ** r.m
        rhs = ring.one
        for i, e in sorted(r.exponents.items()):
            if e > 0:
                rhs = rhs * chi(i) ** e
            elif e < 0:
                lhs = lhs * chi(i) ** (-e)
        gens.append(lhs - rhs)
    for r in rl.self_relations:
        gens.append(chi(r.j) ** r.m - ring.one)
    return gens


def build_J_barH(alpha, Hcirc, chars, rl):
    """The constrained component: H's identity component intersected
    with the character binomials of the relation lattice, then its own
    identity component (the Galois group's identity component)."""
    J = identity_component_subset(alpha, Hcirc)
    n = Hcirc.n
    big = Hcirc.ring.field
    if chars:
        big = _join(big, chars[0].ring.field)
    ring = group_ring(n, big)
    gens = [_coerce_poly(ring, Hcirc.ring, g) for g in Hcirc.generators]
    binoms = character_binomials(chars, rl, ring) if chars else []
    J = J + binoms
    if not binoms:
        return J, Hcirc, Hcirc
    Hbar = AlgebraicSubgroup(n, ring, gens + binoms)
    return J, Hbar, identity_component(Hbar)


# -- finite part --------------------------------------------------------

def _coefficient_equations(Qgens, W, N):
    """Polynomials in a symbolic constant matrix g from the first N + 2
    series coefficients of every Q(W * g)."""
    k = W.field
    n = W.n
    SA = SeriesAlgebra(k, N)
    hnames = ["y_%d_%d" % (i + 1, j + 1) for i in range(n) for j in range(n)]
    ringS = PolyRing(SA, hnames, graded_lex_order(n * n))
    hvars = ringS.gens
    values = []
    for i in range(n):
        for j in range(n):
            acc = ringS.zero
            for l in range(n):
                acc = acc + hvars[l * n + j].scale(SA.lift(W.entry(i, l)))
            values.append(acc)
    ringC = PolyRing(k, hnames, graded_lex_order(n * n))
    eqs = []
    for Q in Qgens:
        cf = Q.ring.field
        conv = (lambda c: c) if cf == k else (lambda c: k.coerce_from(cf, c))
        val = Q.evaluate(values, one=ringS.one, mul=lambda x, y: x * y,
                         add=lambda x, y: x + y,
                         from_coeff=lambda c: ringS.from_const(
                             SA.from_const(conv(c))))
        for ko in range(N + 1):
            terms = {}
            for exp, s in val.terms.items():
                c = s.coeffs[ko] if ko <= s.order else k.zero
                if not k.is_zero(c):
                    terms[exp] = c
            if terms:
                eqs.append(ringC.from_dict(terms))
    return ringC, eqs


def finite_part(alpha, Gcirc_gens, order, Ncap=None):
    """The full group as a union over the conjugates tau of gamma: for
    each tau, the constant matrices g with Q(tau(beta)^{-1} F_tilde g) =
    0 for every generator Q of the identity component's ideal.

    beta = alpha and F_tilde = F_bar (the reuse case).  Returns
    (field, points, identity_in_id_part)."""
    kf = alpha.field
    M = alpha.M
    n = alpha.Fbar.n
    N = min(order, Ncap) if Ncap is not None else order
    if M == 1:
        big, roots = kf, [kf.one]
    else:
        big, rts = split_univariate(
            kf, [kf.neg(kf.one)] + [kf.zero] * (M - 1) + [kf.one])
        roots = []
        for r, mult in rts:
            roots.extend([r] * mult)
        if len(roots) != M:
            raise UnsupportedInstanceError(
                "could not split the conjugate set of gamma")
        roots.sort(key=lambda r: (not big.is_one(r), big.format(r)))
    F = alpha.Fbar.coerce_to(big) if alpha.Fbar.field != big else alpha.Fbar
    gser = None
    if alpha.gamma is not None:
        gser = Series(big, [big.coerce_from(kf, x)
                            for x in alpha.gamma.coeffs]) \
            if big != kf else alpha.gamma
    gbar = [[big.coerce_from(kf, x) for x in row] for row in alpha.gbar] \
        if big != kf else alpha.gbar
    gbar_inv = linalg.inverse(big, gbar)
    fld = big
    pts = []
    identity_seen = False
    ident = linalg.identity(fld, n)
    sconsts = [big.coerce_from(kf, s) for s in alpha.consts] \
        if big != kf else alpha.consts
    for tau_idx, z in enumerate(roots):
        scales = []
        zinv = big.inv(z)
        if gser is not None:
            ginv = gser.inverse()
            for i in range(n):
                e = alpha.exps[i]
                s = _series_pow(ginv, e, big, F.order).scale(
                    big.mul(big.pow(zinv, e), big.inv(sconsts[i])))
                scales.append(s)
        else:
            one = Series.constant(big, big.one, F.order)
            scales = [one] * n
        entries = [[F.entry(i, j) * scales[i] for j in range(n)]
                   for i in range(n)]
        Wpre = TruncSeries.from_entries(big, F.a, entries)
        W = TruncSeries(big, F.a,
                        [linalg.matmul(big, gbar_inv, m) for m in Wpre.mats])
        _ringC, eqs = _coefficient_equations(Gcirc_gens, W, N)
        try:
            sfld, sols = solve_zero_dimensional(eqs)
        except PositiveDimensionalError as err:
            raise UnsupportedInstanceError(
                "a conjugate part of the group is positive dimensional; "
                "only finite parts are solved here: %s" % err) from err
        newfld = _join(fld, sfld)
        if newfld != fld:
            pts = [[[newfld.coerce_from(fld, x) for x in row] for row in m]
                   for m in pts]
            ident = linalg.identity(newfld, n)
            fld = newfld
        for coords, _mult in sols:
            m = [[fld.coerce_from(sfld, coords[i * n + j]) for j in range(n)]
                 for i in range(n)]
            if fld.is_zero(linalg.det(fld, m)):
                continue
            if tau_idx == 0 and _mat_eq(fld, m, ident):
                identity_seen = True
            if not any(_mat_eq(fld, m, q) for q in pts):
                pts.append(m)
    if not identity_seen:
        raise DgalError("identity matrix missing from the tau = id part")
    _finite_closure_check(fld, pts)
    return fld, pts


def _finite_closure_check(fld, pts):
    """Cross-check on enumerated groups: closure under product and
    inverse (the intersection-of-ideals assembly agrees on these)."""
    for p in pts:
        inv = linalg.inverse(fld, p)
        if not any(_mat_eq(fld, inv, q) for q in pts):
            raise DgalError("finite part not closed under inverse")
        for q in pts:
            pq = linalg.matmul(fld, p, q)
            if not any(_mat_eq(fld, pq, r) for r in pts):
                raise DgalError("finite part not closed under product")


# -- sandwich certificate and dimension ---------------------------------

def sandwich_check(H, Hcirc, chars, Gcirc):
    """Certify kernel-of-characters(H deg) <= computed component <= H by
    ideal containment: each component generator reduces to zero modulo
    the kernel's Groebner basis, and each generator of H reduces to zero
    modulo the component's."""
    Ht = kernel_of_characters(Hcirc, chars)
    big = Ht.ring.field
    big = _join(big, Gcirc.ring.field)
    big = _join(big, H.ring.field)
    ring = group_ring(H.n, big)
    gb_ht = groebner([_coerce_poly(ring, Ht.ring, g) for g in Ht.generators]) \
        if Ht.generators else []
    gb_gc = groebner([_coerce_poly(ring, Gcirc.ring, g)
                      for g in Gcirc.generators]) if Gcirc.generators else []
    for g in Gcirc.generators:
        gg = _coerce_poly(ring, Gcirc.ring, g)
        if gb_ht and not normal_form(gg, gb_ht).is_zero():
            return False
        if not gb_ht and not gg.is_zero():
            return False
    for g in H.generators:
        gg = _coerce_poly(ring, H.ring, g)
        red = normal_form(gg, gb_gc) if gb_gc else gg
        if not red.is_zero():
            return False
    return True


def _dimension_estimate(comp):
    """Best-effort dimension of a certified identity component."""
    from .groups import (_diagonal_binomial_lattice, _parameterization_probe,
                         _single_irreducible_generator)
    from .lattice import saturate
    n = comp.n
    if not comp.generators:
        return n * n
    gb = comp.groebner_basis()
    flag, _w = is_zero_dimensional(gb, comp.ring)
    if flag:
        return 0
    rows = _diagonal_binomial_lattice(comp)
    if rows is not None:
        sat = saturate(rows, n) if rows else []
        return n - len(sat)
    if _single_irreducible_generator(comp):
        return n * n - 1
    if _parameterization_probe(comp):
        return 1
    return None


def _same_ideal(G1, G2):
    big = _join(G1.ring.field, G2.ring.field)
    ring = group_ring(G1.n, big)
    gb1 = groebner([_coerce_poly(ring, G1.ring, g) for g in G1.generators]) \
        if G1.generators else []
    gb2 = groebner([_coerce_poly(ring, G2.ring, g) for g in G2.generators]) \
        if G2.generators else []
    return sorted(map(ring.format, gb1)) == sorted(map(ring.format, gb2))


# -- the full pipeline --------------------------------------------------

def galois_group(sys, cfg):
    """Compose all stages and return a GaloisGroupDescription.

    Paths: finite proto-group -> enumerate the finite part over the
    conjugates of gamma; connected proto-group with trivial character
    lattice -> the group is the proto-group; connected proto-group with
    characters -> constrain the component by the hyperexponential
    relation lattice (the group equals the proto-group when nothing
    shrinks).  Everything else refuses loudly."""
    H, rel = proto_galois(sys, cfg)
    a, b, c = cfg.resolve_points(sys)
    n = sys.n
    order = rel.order_used + 2
    Hcirc = identity_component(H)
    provenance = {
        "point_a": sys.R.const.format(a),
        "point_b": sys.R.const.format(b),
        "point_c": sys.R.const.format(c),
        "degree": rel.d,
        "order_used": rel.order_used,
    }
    chars = []
    if H.finite:
        alpha = find_alpha_fbar(sys, rel, H, Hcirc, a, b, order)
        Gcirc = Hcirc
        fld, pts = finite_part(alpha, Gcirc.generators, order,
                               Ncap=rel.order_used + 2)
        provenance["alpha"] = alpha.describe(sys.R)
        desc = GaloisGroupDescription(
            n, H, rel, Gcirc, True, fld, pts, len(pts), 0,
            rel.rigorous, provenance)
    else:
        D = cfg.char_degree if cfg.char_degree is not None else rel.d
        chars = characters_generators(Hcirc, D, samples=cfg.samples)
        if not chars:
            if not _same_ideal(H, Hcirc):
                raise UnsupportedInstanceError(
                    "finite part over a positive dimensional component "
                    "is outside the supported class")
            Gcirc = Hcirc
            provenance["alpha"] = "not needed (trivial character lattice)"
        else:
            alpha = find_alpha_fbar(sys, rel, H, Hcirc, a, b, order)
            big = _join(alpha.field, chars[0].ring.field)
            S = alpha.Fbar.coerce_to(big) \
                if alpha.Fbar.field != big else alpha.Fbar
            elements = [logderiv_from_character(ch, S, cfg.ell, cfg.ell)
                        for ch in chars]
            rl = relation_lattice(elements)
            _J, _Hbar, Gcirc = build_J_barH(alpha, Hcirc, chars, rl)
            provenance["alpha"] = alpha.describe(sys.R)
            provenance["hyperexp_relations"] = len(rl.relations) + \
                len(rl.self_relations)
            if not _same_ideal(Gcirc, Hcirc):
                raise UnsupportedInstanceError(
                    "the character relations cut the component properly; "
                    "the finite part over a positive dimensional component "
                    "is outside the supported class")
            if not _same_ideal(H, Hcirc):
                raise UnsupportedInstanceError(
                    "finite part over a positive dimensional component "
                    "is outside the supported class")
        desc = GaloisGroupDescription(
            n, H, rel, Gcirc, False, None, None,
            1 if _same_ideal(H, Hcirc) else None,
            _dimension_estimate(Gcirc), rel.rigorous, provenance)
    if not sandwich_check(H, Hcirc, chars, desc.identity_component):
        raise DgalError("sandwich certificate failed: the computed "
                        "component is not between the character kernel "
                        "and the proto-group")
    desc.sandwich_checked = True
    return desc
