"""Algebraic extension k(gamma) of a rational function field: elements
are vectors of rational functions in the power basis of a monic
irreducible Q with Q(gamma) = 0.

Presents the usual adapter interface so linear algebra and polynomial
rings work over it unchanged.  Elements are tuples, hence hashable.
"""

from .errors import DgalError

GAMMA_NAME = "gamma"


class ExtField:
    def __init__(self, R, qcoeffs):
        """R: RatFuncField; qcoeffs: ascending coefficients of monic Q."""
        if not R.is_one(qcoeffs[-1]):
            raise DgalError("minimal polynomial must be monic")
        self.R = R
        self.q = list(qcoeffs)
        self.deg = len(qcoeffs) - 1
        if self.deg < 1:
            raise DgalError("extension degree must be at least 1")

    # -- construction ---------------------------------------------------

    @property
    def zero(self):
        return (self.R.zero,) * self.deg

    @property
    def one(self):
        return self.new([self.R.one])

    @property
    def gamma(self):
        if self.deg == 1:
            # gamma = -q0 lives in the base field
            return self.new([self.R.neg(self.q[0])])
        return self.new([self.R.zero, self.R.one])

    def new(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.deg:
            coeffs = self._reduce(coeffs)
        coeffs += [self.R.zero] * (self.deg - len(coeffs))
        return tuple(coeffs)

    def from_int(self, n):
        return self.new([self.R.from_int(n)])

    def from_base(self, f):
        return self.new([f])

    def from_const(self, c):
        return self.new([self.R.from_const(c)])

    def _reduce(self, coeffs):
        R = self.R
        coeffs = list(coeffs)
        for k in range(len(coeffs) - 1, self.deg - 1, -1):
            c = coeffs[k]
            if R.is_zero(c):
                coeffs.pop()
                continue
            for i in range(self.deg):
                coeffs[k - self.deg + i] = R.sub(coeffs[k - self.deg + i],
                                                 R.mul(c, self.q[i]))
            coeffs.pop()
        return coeffs

    # -- arithmetic -----------------------------------------------------

    def add(self, a, b):
        R = self.R
        return tuple(R.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        R = self.R
        return tuple(R.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        R = self.R
        return tuple(R.neg(x) for x in a)

    def mul(self, a, b):
        R = self.R
        out = [R.zero] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if R.is_zero(x):
                continue
            for j, y in enumerate(b):
                if not R.is_zero(y):
                    out[i + j] = R.add(out[i + j], R.mul(x, y))
        return self.new(out)

    def scale(self, a, f):
        R = self.R
        return tuple(R.mul(x, f) for x in a)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("division by zero in extension field")
        # extended Euclid in R[x] against Q
        R = self.R
        r0, r1 = list(self.q), list(a)
        s0, s1 = [], [R.one]
        while any(not R.is_zero(c) for c in r1):
            q, r = _polydiv(R, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(R, s0, _polymul(R, q, s1))
        # r0 is the gcd; must be a nonzero constant by irreducibility
        r0 = _trim(R, r0)
        if len(r0) != 1:
            raise DgalError("inverse failed: modulus not irreducible "
                            "(gcd witness of degree %d)" % (len(r0) - 1))
        c = R.inv(r0[0])
        return self.new([R.mul(x, c) for x in s0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return self.inv(self.pow(a, -n))
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def is_zero(self, a):
        return all(self.R.is_zero(x) for x in a)

    def is_one(self, a):
        return self.eq(a, self.one)

    def eq(self, a, b):
        return a == b

    def __eq__(self, other):
        return (isinstance(other, ExtField) and self.R.fld == other.R.fld
                and self.q == other.q)

    def __hash__(self):
        return hash((tuple(self.q), self.deg))

    # -- calculus -------------------------------------------------------

    def gamma_derivative(self):
        """gamma' = -(dQ/dt)(gamma) / Q_x(gamma), from Q(gamma) = 0."""
        R = self.R
        dq_dt = [R.diff(c) for c in self.q]
        qx = [R.scale(self.q[i], R.const.from_int(i)) for i in range(1, len(self.q))]
        num = self.new(dq_dt)
        den = self.new(qx)
        return self.neg(self.div(num, den))

    def derivative(self, a):
        """Total t-derivative of an element, using gamma'."""
        R = self.R
        coeff_part = tuple(R.diff(x) for x in a)
        poly_deriv = [R.scale(a[i], R.const.from_int(i)) for i in range(1, self.deg)]
        if not poly_deriv:
            return coeff_part
        return self.add(coeff_part,
                        self.mul(self.new(poly_deriv), self.gamma_derivative()))

    # -- text -----------------------------------------------------------

    def format(self, a):
        R = self.R
        terms = []
        for k in range(self.deg - 1, -1, -1):
            if R.is_zero(a[k]):
                continue
            cs = R.format(a[k])
            if "+" in cs or (k > 0 and "/" in cs):
                cs = "(%s)" % cs
            if k == 0:
                terms.append(cs)
            else:
                gpow = GAMMA_NAME if k == 1 else "%s^%d" % (GAMMA_NAME, k)
                terms.append(gpow if cs == "1" else "%s*%s" % (cs, gpow))
        return " + ".join(terms) if terms else "0"


def _trim(R, p):
    p = list(p)
    while p and R.is_zero(p[-1]):
        p.pop()
    return p


def _polydiv(R, num, den):
    num = list(num)
    den = _trim(R, den)
    dn = len(den) - 1
    if dn < 0:
        raise ZeroDivisionError
    q = [R.zero] * max(len(num) - dn, 1)
    for k in range(len(num) - 1 - dn, -1, -1):
        c = R.div(num[k + dn], den[dn])
        q[k] = c
        for j in range(dn + 1):
            num[k + j] = R.sub(num[k + j], R.mul(c, den[j]))
    return q, _trim(R, num[:dn] if dn else [])


def _polymul(R, a, b):
    if not a or not b:
        return []
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def _polysub(R, a, b):
    n = max(len(a), len(b))
    a = list(a) + [R.zero] * (n - len(a))
    b = list(b) + [R.zero] * (n - len(b))
    return [R.sub(x, y) for x, y in zip(a, b)]
