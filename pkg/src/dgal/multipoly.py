"""Sparse multivariate polynomials over an adapter field, with monomial
orders, reduction, and Buchberger's algorithm.

Exponents are tuples of ints; a polynomial is a dict exponent -> nonzero
coefficient.  The ring carries the field, the variable names, and a
default monomial order.  Everything stays small enough here that a plain
Buchberger loop with the coprimality and chain criteria is adequate.
"""

import itertools

from . import _grammar
from .errors import DgalError, ResourceCapError


# -- monomial orders ----------------------------------------------------

class MonomialOrder:
    """Total order on exponent tuples; bigger key means bigger monomial."""

    def __init__(self, name, key):
        self.name = name
        self.key = key

    def __repr__(self):
        return "MonomialOrder(%s)" % self.name


def _grevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


GREVLEX = MonomialOrder("grevlex", _grevlex_key)
LEX = MonomialOrder("lex", lambda exp: exp)


def elimination_order(nfirst):
    """Block order eliminating the first ``nfirst`` variables: grevlex on
    the first block dominates grevlex on the rest."""
    def key(exp):
        return (_grevlex_key(exp[:nfirst]), _grevlex_key(exp[nfirst:]))
    return MonomialOrder("eliminate(%d)" % nfirst, key)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


# -- ring and elements --------------------------------------------------

class PolyRing:
    def __init__(self, field, names, order=GREVLEX):
        self.field = field
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.order = order
        self._zero_exp = (0,) * self.nvars

    def with_order(self, order):
        return PolyRing(self.field, self.names, order)

    @property
    def zero(self):
        return MultiPoly(self, {})

    @property
    def one(self):
        return MultiPoly(self, {self._zero_exp: self.field.one})

    def gen(self, i):
        exp = [0] * self.nvars
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): self.field.one})

    @property
    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def from_const(self, c):
        if self.field.is_zero(c):
            return self.zero
        return MultiPoly(self, {self._zero_exp: c})

    def from_int(self, n):
        return self.from_const(self.field.from_int(n))

    def from_dict(self, d):
        return MultiPoly(self, {e: c for e, c in d.items()
                                if not self.field.is_zero(c)})

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.names == other.names)

    def __hash__(self):
        return hash((self.names, id(self.field.__class__)))

    def __repr__(self):
        return "PolyRing(%s; %s)" % (", ".join(self.names), self.order.name)

    # -- text form ------------------------------------------------------

    def format(self, p):
        if not p.terms:
            return "0"
        out = []
        for exp in sorted(p.terms, key=self.order.key, reverse=True):
            c = p.terms[exp]
            factors = []
            cs = self.field.format(c)
            if " + " in cs:
                cs = "(%s)" % cs
            mono = [("%s^%d" % (n, e) if e > 1 else n)
                    for n, e in zip(self.names, exp) if e]
            if not mono:
                factors.append(cs)
            else:
                if cs != "1":
                    factors.append(cs)
                factors.extend(mono)
            out.append("*".join(factors))
        return " + ".join(out)

    def parse(self, text):
        node = _grammar.parse(text)
        atoms = {n: self.gen(i) for i, n in enumerate(self.names)}
        fld = self.field
        if hasattr(fld, "gamma") and hasattr(fld, "R"):  # k(gamma)
            from .extfield import GAMMA_NAME
            atoms.setdefault(GAMMA_NAME, self.from_const(fld.gamma))
            atoms.setdefault(fld.R.var, self.from_const(fld.from_base(fld.R.t)))
        elif hasattr(fld, "var") and hasattr(fld, "t"):  # rational functions
            atoms.setdefault(fld.var, self.from_const(fld.t))
        gfield = _ground_const(fld)
        if getattr(gfield, "gens", None):
            from .fields import GEN_NAME
            if GEN_NAME not in atoms:
                atoms[GEN_NAME] = self.from_const(self._const_gen())
        return _grammar.evaluate(
            node, atoms,
            from_int=self.from_int,
            add=lambda a, b: a + b, sub=lambda a, b: a - b,
            neg=lambda a: -a, mul=lambda a, b: a * b,
            div=self._div, power=lambda a, n: a ** n)

    def _const_gen(self):
        fld = self.field
        if hasattr(fld, "R"):  # k(gamma): lift through the base field
            return fld.from_const(fld.R.const.generator())
        if hasattr(fld, "from_const") and getattr(fld, "const", None) is not None:
            return fld.from_const(fld.const.generator())
        return fld.generator()


    def _div(self, a, b):
        c = b.constant_value()
        if c is None:
            raise DgalError("only division by constants is supported here")
        return a.scale(self.field.inv(c))


def _ground_const(fld):
    if hasattr(fld, "R"):
        return fld.R.const
    return getattr(fld, "const", fld)


class MultiPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        fld = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = fld.add(out[e], c)
                if fld.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MultiPoly(self.ring, out)

    def __neg__(self):
        fld = self.ring.field
        return MultiPoly(self.ring, {e: fld.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        fld = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mono_mul(e1, e2)
                c = fld.mul(c1, c2)
                if e in out:
                    s = fld.add(out[e], c)
                    if fld.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                elif not fld.is_zero(c):
                    out[e] = c
        return MultiPoly(self.ring, out)

    def __pow__(self, n):
        if n < 0:
            raise DgalError("negative power of a polynomial")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c):
        fld = self.ring.field
        if fld.is_zero(c):
            return self.ring.zero
        return MultiPoly(self.ring, {e: fld.mul(x, c) for e, x in self.terms.items()})

    def mul_term(self, exp, coeff):
        fld = self.ring.field
        return MultiPoly(self.ring, {_mono_mul(e, exp): fld.mul(c, coeff)
                                     for e, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.ring.format(self)

    # -- structure ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def constant_value(self):
        """The field element if the polynomial is constant, else None."""
        if not self.terms:
            return self.ring.field.zero
        if len(self.terms) == 1 and self.ring._zero_exp in self.terms:
            return self.terms[self.ring._zero_exp]
        return None

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def leading(self, order=None):
        """(exponent, coefficient) of the leading term."""
        order = order or self.ring.order
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def monic(self, order=None):
        if not self.terms:
            return self
        _, lc = self.leading(order)
        return self.scale(self.ring.field.inv(lc))

    def variables_used(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=0)

    # -- substitution and evaluation ------------------------------------

    def substitute(self, values):
        """Substitute ring elements for variables; ``values`` maps
        variable index -> MultiPoly.  Unmapped variables stay."""
        ring = self.ring
        out = ring.zero
        cache = {}
        for exp, c in self.terms.items():
            term = ring.from_const(c)
            for i, k in enumerate(exp):
                if not k:
                    continue
                if i in values:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = term * cache[key]
                else:
                    term = term * ring.gen(i) ** k
            out = out + term
        return out

    def evaluate(self, values, *, one, mul, add, from_coeff):
        """Evaluate in another algebra.  ``values`` is a list indexed by
        variable; the keyword arguments define the target algebra and
        ``from_coeff`` maps ring coefficients into it."""
        total = None
        pow_cache = {}
        for exp, c in self.terms.items():
            term = from_coeff(c)
            for i, k in enumerate(exp):
                if not k:
                    continue
                key = (i, k)
                if key not in pow_cache:
                    p = values[i]
                    for _ in range(k - 1):
                        p = mul(p, values[i])
                    pow_cache[key] = p
                term = mul(term, pow_cache[key])
            total = term if total is None else add(total, term)
        if total is None:
            total = mul(one, from_coeff(self.ring.field.zero))
        return total

    def eval_consts(self, values):
        """Evaluate at field elements; returns a field element."""
        fld = self.ring.field
        return self.evaluate(
            [v for v in values], one=fld.one,
            mul=fld.mul, add=fld.add, from_coeff=lambda c: c)


# -- reduction and Groebner bases ---------------------------------------

def normal_form(p, basis, order=None):
    """Remainder of p on division by the list ``basis``."""
    if not basis:
        return p
    ring = p.ring
    order = order or ring.order
    fld = ring.field
    lead = [(g.leading(order), g) for g in basis if g.terms]
    rem = ring.zero
    work = p
    while work.terms:
        exp, c = work.leading(order)
        hit = None
        for (gexp, gc), g in lead:
            if _mono_divides(gexp, exp):
                hit = (gexp, gc, g)
                break
        if hit is None:
            rem = rem + MultiPoly(ring, {exp: c})
            work = work - MultiPoly(ring, {exp: c})
        else:
            gexp, gc, g = hit
            factor = fld.div(c, gc)
            work = work - g.mul_term(_mono_div(exp, gexp), factor)
    return rem


def s_polynomial(f, g, order=None):
    order = order or f.ring.order
    fld = f.ring.field
    (ef, cf) = f.leading(order)
    (eg, cg) = g.leading(order)
    l = _mono_lcm(ef, eg)
    return (f.mul_term(_mono_div(l, ef), fld.inv(cf))
            - g.mul_term(_mono_div(l, eg), fld.inv(cg)))


def groebner(gens, order=None, max_basis=2000):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are pruned with the coprimality and chain criteria.  The
    ``max_basis`` cap turns runaway computations into ResourceCapError
    rather than an unbounded loop.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ring = gens[0].ring
    order = order or ring.order
    G = [g.monic(order) for g in gens]
    pairs = set(itertools.combinations(range(len(G)), 2))
    lead = [g.leading(order)[0] for g in G]

    def chain_criterion(i, j):
        lcm_ij = _mono_lcm(lead[i], lead[j])
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (_mono_divides(lead[k], lcm_ij)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                return True
        return False

    while pairs:
        i, j = min(pairs, key=lambda ij: _grevlex_key(_mono_lcm(lead[ij[0]], lead[ij[1]])))
        pairs.discard((i, j))
        if _mono_lcm(lead[i], lead[j]) == _mono_mul(lead[i], lead[j]):
            continue  # coprime leading monomials
        if chain_criterion(i, j):
            continue
        s = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if not s.terms:
            continue
        s = s.monic(order)
        G.append(s)
        lead.append(s.leading(order)[0])
        if len(G) > max_basis:
            raise ResourceCapError("Groebner basis exceeded %d elements" % max_basis)
        new = len(G) - 1
        for k in range(new):
            pairs.add((k, new))
    return reduce_basis(G, order)


def reduce_basis(G, order=None):
    """Minimal, fully reduced, monic basis, sorted by leading monomial."""
    if not G:
        return []
    ring = G[0].ring
    order = order or ring.order
    G = [g.monic(order) for g in G if g.terms]
    # minimality: drop elements whose lead is divisible by another lead
    keep = []
    leads = [g.leading(order)[0] for g in G]
    for i, g in enumerate(G):
        li = leads[i]
        redundant = any(
            j != i and _mono_divides(leads[j], li)
            and (leads[j] != li or j < i)
            for j in range(len(G)))
        if not redundant:
            keep.append(g)
    # full reduction of tails
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others, order)
        if r.terms:
            out.append(r.monic(order))
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out


def in_ideal(p, gb, order=None):
    return not normal_form(p, gb, order).terms


def ideal_contains(gb_big, gens_small, order=None):
    """True if every generator of the small ideal reduces to zero modulo
    the Groebner basis of the big one."""
    return all(in_ideal(g, gb_big, order) for g in gens_small)


def eliminate(gens, nfirst, max_basis=2000):
    """Generators of the elimination ideal removing the first ``nfirst``
    variables.  Returned polynomials still live in the full ring but only
    involve the remaining variables."""
    if not gens:
        return []
    order = elimination_order(nfirst)
    gb = groebner(gens, order, max_basis=max_basis)
    out = []
    for g in gb:
        if all(i >= nfirst for i in g.variables_used()):
            out.append(g)
    return out


def standard_monomials(gb, ring, max_degree, order=None):
    """Monomials of total degree <= max_degree not divisible by any
    leading monomial of the basis; the staircase up to a degree cap."""
    order = order or ring.order
    leads = [g.leading(order)[0] for g in gb]
    out = []
    for exp in _exponents_up_to(ring.nvars, max_degree):
        if not any(_mono_divides(l, exp) for l in leads):
            out.append(exp)
    out.sort(key=order.key)
    return out


def _exponents_up_to(nvars, max_degree):
    def rec(prefix, remaining, left):
        if remaining == 0:
            yield tuple(prefix)
            return
        for e in range(left + 1):
            yield from rec(prefix + [e], remaining - 1, left - e)
    yield from rec([], nvars, max_degree)


def is_zero_dimensional(gb, ring, order=None):
    """Finiteness test: every variable must show up as a pure power among
    the leading monomials.  Returns (flag, witness_variable_or_None)."""
    order = order or ring.order
    leads = [g.leading(order)[0] for g in gb]
    for i in range(ring.nvars):
        ok = False
        for l in leads:
            if l[i] > 0 and all(l[j] == 0 for j in range(ring.nvars) if j != i):
                ok = True
                break
        if not ok:
            return False, ring.names[i]
    return True, None
