"""Exact coefficient arithmetic for the deformed kernel.

Generic computation happens in the rational function field Q(X, Y) where
X and Y stand for the quarter powers of the two deformation parameters
r and s, so that every exponent the kernel needs (r^(1/2), (rs)^(-1/4),
s^(-L/4), ...) is an integer power of X or Y.  Exponents are Laurent
(may be negative).  Root-of-unity specializations live in cyclotomic
fields Q(zeta_n) with arithmetic modulo the n-th cyclotomic polynomial.

No floating point anywhere; coefficients are `fractions.Fraction`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class InvalidScalar(ArithmeticError):
    """Division by zero or an otherwise malformed scalar operation."""


class VanishingDenominator(InvalidScalar):
    """A specialization sent the denominator of a scalar to zero."""


# ---------------------------------------------------------------------------
# Laurent polynomials in X, Y over Q
# ---------------------------------------------------------------------------

def _grlex_key(exps):
    xe, ye = exps
    return (xe + ye, xe, ye)


class IntPoly:
    """Sparse Laurent polynomial in X, Y with rational coefficients.

    Terms map (xExp, yExp) -> nonzero Fraction.  The canonical term order
    used for leading coefficients and serialization is graded lex on
    (xExp, yExp).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for exps, coeff in terms.items():
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c:
                    self.terms[exps] = c

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls()

    @classmethod
    def one(cls) -> "IntPoly":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def monomial(cls, xe: int, ye: int, coeff=1) -> "IntPoly":
        return cls({(xe, ye): Fraction(coeff)})

    @classmethod
    def const(cls, coeff) -> "IntPoly":
        return cls({(0, 0): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {(0, 0): Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def key(self):
        """Hashable canonical key (terms sorted graded-lex)."""
        return tuple(sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0])))

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def __neg__(self):
        return IntPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, Fraction(0)) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        out = IntPoly()
        out.terms = res
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = IntPoly.const(other)
        res = {}
        for (x1, y1), c1 in self.terms.items():
            for (x2, y2), c2 in other.terms.items():
                e = (x1 + x2, y1 + y2)
                s = res.get(e, Fraction(0)) + c1 * c2
                if s:
                    res[e] = s
                else:
                    res.pop(e, None)
        out = IntPoly()
        out.terms = res
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidScalar("negative power of a polynomial; use Scalar")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, factor) -> "IntPoly":
        f = Fraction(factor)
        if not f:
            return IntPoly.zero()
        return IntPoly({e: c * f for e, c in self.terms.items()})

    def shift(self, dx: int, dy: int) -> "IntPoly":
        """Multiply by the monomial X^dx Y^dy."""
        return IntPoly({(x + dx, y + dy): c for (x, y), c in self.terms.items()})

    def min_exps(self):
        return (min(x for x, _ in self.terms), min(y for _, y in self.terms))

    def leading(self):
        """(exps, coeff) of the graded-lex greatest term."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def content(self) -> Fraction:
        """Positive rational c with self/c integral, coprime coefficients."""
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def swap_vars(self) -> "IntPoly":
        """Exchange X and Y (the r <-> s symmetry on coefficients)."""
        return IntPoly({(y, x): c for (x, y), c in self.terms.items()})

    def subs_cyclo(self, zx: "CycloNumber", zy: "CycloNumber") -> "CycloNumber":
        """Evaluate at X = zx, Y = zy (roots of unity, so Laurent is fine)."""
        acc = CycloNumber.from_rational(zx.conductor, 0)
        for (xe, ye), c in self.terms.items():
            acc = acc + (zx ** xe) * (zy ** ye) * CycloNumber.from_rational(zx.conductor, c)
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (x, y), c in sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True):
            bits.append(f"{c}*X^{x}*Y^{y}")
        return " + ".join(bits)


def _x_degree(p: IntPoly) -> int:
    return max(x for x, _ in p.terms)


def _y_degree(p: IntPoly) -> int:
    return max(y for _, y in p.terms)


def _y_coeffs(p: IntPoly):
    """Split a polynomial into {yExp: IntPoly-in-X}."""
    rows = {}
    for (x, y), c in p.terms.items():
        rows.setdefault(y, {})[(x, 0)] = c
    return {y: IntPoly(row) for y, row in rows.items()}


def _univariate_gcd(a: IntPoly, b: IntPoly, var: int) -> IntPoly:
    """Monic gcd of two univariate polynomials (var 0 = X, 1 = Y)."""

    def deg(p):
        return max(e[var] for e in p.terms)

    def to_list(p):
        d = deg(p)
        out = [Fraction(0)] * (d + 1)
        for e, c in p.terms.items():
            out[e[var]] = c
        return out

    fa, fb = to_list(a), to_list(b)
    while fb and any(fb):
        # remainder of fa by fb
        fb_deg = len(fb) - 1
        while fb and not fb[-1]:
            fb.pop()
            fb_deg -= 1
        lead = fb[-1]
        ra = list(fa)
        while len(ra) - 1 >= fb_deg and any(ra):
            while ra and not ra[-1]:
                ra.pop()
            if len(ra) - 1 < fb_deg:
                break
            factor = ra[-1] / lead
            shift = len(ra) - 1 - fb_deg
            for i, c in enumerate(fb):
                ra[i + shift] -= factor * c
        while ra and not ra[-1]:
            ra.pop()
        fa, fb = fb, ra
    while fa and not fa[-1]:
        fa.pop()
    if not fa:
        return IntPoly.zero()
    lead = fa[-1]
    terms = {}
    for i, c in enumerate(fa):
        if c:
            e = (i, 0) if var == 0 else (0, i)
            terms[e] = c / lead
    return IntPoly(terms)


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of a by b with respect to Y."""
    da, db = _y_degree(a), _y_degree(b)
    b_rows = _y_coeffs(b)
    lb = b_rows[db]
    r = a
    while r and _y_degree(r) >= db:
        dr = _y_degree(r)
        r_rows = _y_coeffs(r)
        lr = r_rows[dr]
        r = lb * r - (lr * b).shift(0, dr - db)
    return r


def _primitive_y(p: IntPoly):
    """(content in Q[X], primitive part) of p viewed in (Q[X])[Y]."""
    rows = list(_y_coeffs(p).values())
    g = rows[0]
    for row in rows[1:]:
        if g.is_constant():
            break
        g = _univariate_gcd(g, row, 0)
    if g.is_constant():
        return IntPoly.one(), p
    pp = _exact_div(p, g)
    return g, pp


def _exact_div(num: IntPoly, den: IntPoly):
    """Exact quotient num/den, or None if den does not divide num."""
    if den.is_zero():
        raise InvalidScalar("division by zero polynomial")
    if num.is_zero():
        return IntPoly.zero()
    if den.is_monomial():
        (dx, dy), dc = next(iter(den.terms.items()))
        return IntPoly({(x - dx, y - dy): c / dc for (x, y), c in num.terms.items()})
    q = {}
    r = num
    d_lead, d_coeff = den.leading()
    while r:
        r_lead, r_coeff = r.leading()
        ex = r_lead[0] - d_lead[0]
        ey = r_lead[1] - d_lead[1]
        if ex < 0 or ey < 0:
            return None
        c = r_coeff / d_coeff
        q[(ex, ey)] = c
        r = r - den * IntPoly.monomial(ex, ey, c)
    return IntPoly(q)


@lru_cache(maxsize=4096)
def _poly_gcd_cached(akey, bkey):
    a = IntPoly(dict(akey))
    b = IntPoly(dict(bkey))
    g = _heuristic_gcd(a, b)
    if g is not None:
        return g
    return _poly_gcd_impl(a, b)


def poly_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Gcd of two polynomials with nonnegative exponents, normalized to
    primitive integer coefficients with positive graded-lex lead."""
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    if a.terms == b.terms:
        return _normalize_gcd(a)
    return _poly_gcd_cached(a.key(), b.key())


def _int_primitive(p: IntPoly):
    """Integer-coefficient primitive copy of p as {(x, y): int}."""
    c = p.content()
    return {e: int(v / c) for e, v in p.terms.items()}


def _smod(a: int, m: int) -> int:
    r = a % m
    if r > m // 2:
        r -= m
    return r


def _heu_eval_y(terms, xi):
    out = {}
    for (x, y), c in terms.items():
        out[x] = out.get(x, 0) + c * xi ** y
    return {x: c for x, c in out.items() if c}


def _heu_eval_x(univ, xi):
    return sum(c * xi ** x for x, c in univ.items())


def _heu_lift_int(value: int, xi: int):
    """Balanced xi-adic digits of an integer, as {exp: digit}."""
    digits = {}
    k = 0
    while value:
        d = _smod(value, xi)
        if d:
            digits[k] = d
        value = (value - d) // xi
        k += 1
    return digits


def _heu_gcd_univ(fu, gu, xi):
    """Heuristic gcd of integer univariate polys given as {exp: int}."""
    for _ in range(6):
        fv, gv = _heu_eval_x(fu, xi), _heu_eval_x(gu, xi)
        if fv and gv:
            h = math.gcd(fv, gv)
            cand = _heu_lift_int(h, xi)
            if cand:
                content = math.gcd(*cand.values())
                cand = {e: c // content for e, c in cand.items()}
                if _univ_divides(cand, fu) and _univ_divides(cand, gu):
                    return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _univ_divides(d, p):
    """Exact division test for integer univariate polys {exp: int}."""
    if not d:
        return False
    p = dict(p)
    dd = max(d)
    dl = d[dd]
    while p:
        pd = max(p)
        if pd < dd:
            return False
        q, r = divmod(p[pd], dl)
        if r:
            return False
        for e, c in d.items():
            k = e + pd - dd
            v = p.get(k, 0) - q * c
            if v:
                p[k] = v
            else:
                p.pop(k, None)
    return True


def _heuristic_gcd(a: IntPoly, b: IntPoly):
    """GCDHEU for bivariate integer polynomials; None when unlucky."""
    fa, fb = _int_primitive(a), _int_primitive(b)
    max_coeff = max(max(abs(c) for c in fa.values()),
                    max(abs(c) for c in fb.values()))
    xi = 2 * max_coeff + 29
    for _ in range(6):
        fy = _heu_eval_y(fa, xi)
        gy = _heu_eval_y(fb, xi)
        if fy and gy:
            hu = _heu_gcd_univ(fy, gy, xi * 73794 // 27011 + 3)
            if hu is not None:
                # lift Y back from balanced xi-adic digits of each X-coeff
                cand = {}
                rem = dict(hu)
                k = 0
                while rem:
                    nxt = {}
                    for x, c in rem.items():
                        d = _smod(c, xi)
                        if d:
                            cand[(x, k)] = d
                        c2 = (c - d) // xi
                        if c2:
                            nxt[x] = c2
                    rem = nxt
                    k += 1
                if cand:
                    content = math.gcd(*cand.values())
                    g = IntPoly({e: Fraction(c // content) for e, c in cand.items()})
                    if _exact_div(a, g) is not None and _exact_div(b, g) is not None:
                        return _normalize_gcd(g)
        xi = xi * 73794 // 27011 + 1
    return None


def _normalize_gcd(p: IntPoly) -> IntPoly:
    if p.is_zero():
        return p
    c = p.content()
    _, lead = p.leading()
    if lead < 0:
        c = -c
    return p.scale(1 / c)


def _poly_gcd_impl(a: IntPoly, b: IntPoly) -> IntPoly:
    if a.is_constant() or b.is_constant():
        return IntPoly.one()
    ax, ay = _x_degree(a), _y_degree(a)
    bx, by = _x_degree(b), _y_degree(b)
    if ay == 0 and by == 0:
        return _normalize_gcd(_univariate_gcd(a, b, 0))
    if ax == 0 and bx == 0:
        return _normalize_gcd(_univariate_gcd(a, b, 1))
    # primitive PRS in Y over Q[X]
    ca, pa = _primitive_y(a)
    cb, pb = _primitive_y(b)
    cont = _univariate_gcd(ca, cb, 0) if not (ca.is_constant() or cb.is_constant()) else IntPoly.one()
    f, g = (pa, pb) if _y_degree(pa) >= _y_degree(pb) else (pb, pa)
    while g and _y_degree(g) > 0:
        r = _prem(f, g)
        if r.is_zero():
            f = g
            g = IntPoly.zero()
            break
        if _y_degree(r) == 0:
            # gcd of the primitive parts is trivial in Y
            f = IntPoly.one()
            g = IntPoly.zero()
            break
        _, r = _primitive_y(r)
        f, g = g, r
    if g and not g.is_zero():
        f = IntPoly.one()
    _, f = _primitive_y(f)
    return _normalize_gcd(cont * f)


# ---------------------------------------------------------------------------
# Scalars: elements of Q(X, Y), optionally extended by i
# ---------------------------------------------------------------------------

def _reduce_fraction(num: IntPoly, den: IntPoly):
    """Canonical (num, den): den polynomial with no monomial factor,
    primitive integer coefficients, positive leading coefficient, and
    gcd(num, den) = 1."""
    if den.is_zero():
        raise InvalidScalar("zero denominator")
    if num.is_zero():
        return IntPoly.zero(), IntPoly.one()
    # move den's monomial part into num (Laurent exponents are fine there)
    dx, dy = den.min_exps()
    if dx or dy:
        den = den.shift(-dx, -dy)
        num = num.shift(-dx, -dy)
    if den.is_monomial():
        (zx, zy), dc = next(iter(den.terms.items()))
        num = num.shift(-zx, -zy).scale(Fraction(1) / dc)
        return num, IntPoly.one()
    nx, ny = num.min_exps()
    dx, dy = max(0, -nx), max(0, -ny)
    shifted_num = num.shift(dx, dy) if (dx or dy) else num
    g = poly_gcd(shifted_num, den)
    if not g.is_one():
        shifted_num = _exact_div(shifted_num, g)
        den = _exact_div(den, g)
    num = shifted_num.shift(-dx, -dy) if (dx or dy) else shifted_num
    if den.is_monomial():
        (zx, zy), dc = next(iter(den.terms.items()))
        return num.shift(-zx, -zy).scale(Fraction(1) / dc), IntPoly.one()
    c = den.content()
    _, lead = den.leading()
    if lead < 0:
        c = -c
    return num.scale(1 / c), den.scale(1 / c)


class Scalar:
    """Element of Q(X, Y), optionally with a Gaussian part times i.

    Stored as reduced fractions num/den (+ i * inum/iden); equality is
    decidable and agrees with cross-multiplication.
    """

    __slots__ = ("num", "den", "inum", "iden")

    def __init__(self, num, den=None, inum=None, iden=None, _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = IntPoly.const(num)
        if den is None:
            den = IntPoly.one()
        elif isinstance(den, (int, Fraction)):
            den = IntPoly.const(den)
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce_fraction(num, den)
        if inum is None or (isinstance(inum, IntPoly) and inum.is_zero()):
            self.inum = None
            self.iden = None
        else:
            if isinstance(inum, (int, Fraction)):
                inum = IntPoly.const(inum)
            if iden is None:
                iden = IntPoly.one()
            elif isinstance(iden, (int, Fraction)):
                iden = IntPoly.const(iden)
            if _reduced:
                self.inum, self.iden = inum, iden
            else:
                self.inum, self.iden = _reduce_fraction(inum, iden)
            if self.inum.is_zero():
                self.inum = self.iden = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_fraction(cls, fr) -> "Scalar":
        return cls(IntPoly.const(fr), IntPoly.one(), _reduced=True)

    @classmethod
    def monomial(cls, xe: int, ye: int, coeff=1) -> "Scalar":
        return cls(IntPoly.monomial(xe, ye, coeff), IntPoly.one(), _reduced=True)

    @classmethod
    def zero(cls) -> "Scalar":
        return cls.from_fraction(0)

    @classmethod
    def one(cls) -> "Scalar":
        return cls.from_fraction(1)

    @classmethod
    def i_unit(cls) -> "Scalar":
        return cls(IntPoly.zero(), IntPoly.one(), IntPoly.one(), IntPoly.one())

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero() and self.inum is None

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_one(self) -> bool:
        return self.inum is None and self.num.is_one() and self.den.is_one()

    def has_gaussian_part(self) -> bool:
        return self.inum is not None

    def _real_pair(self):
        return self.num, self.den

    def _imag_pair(self):
        if self.inum is None:
            return IntPoly.zero(), IntPoly.one()
        return self.inum, self.iden

    # -- arithmetic ----------------------------------------------------

    @staticmethod
    def _pair_add(p1, p2):
        n1, d1 = p1
        n2, d2 = p2
        if d1 == d2:
            return _reduce_fraction(n1 + n2, d1)
        return _reduce_fraction(n1 * d2 + n2 * d1, d1 * d2)

    @staticmethod
    def _pair_mul(p1, p2):
        n1, d1 = p1
        n2, d2 = p2
        return _reduce_fraction(n1 * n2, d1 * d2)

    @staticmethod
    def _pair_neg(p):
        return -p[0], p[1]

    def __add__(self, other):
        other = _coerce(other)
        rn, rd = self._pair_add(self._real_pair(), other._real_pair())
        if self.inum is None and other.inum is None:
            return Scalar(rn, rd, _reduced=True)
        xn, xd = self._pair_add(self._imag_pair(), other._imag_pair())
        return Scalar(rn, rd, xn, xd, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        out = Scalar(-self.num, self.den, _reduced=True)
        if self.inum is not None:
            out.inum, out.iden = -self.inum, self.iden
        return out

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        a, b = self._real_pair(), self._imag_pair()
        c, d = other._real_pair(), other._imag_pair()
        if self.inum is None and other.inum is None:
            rn, rd = self._pair_mul(a, c)
            return Scalar(rn, rd, _reduced=True)
        # (a + b i)(c + d i) = (ac - bd) + (ad + bc) i
        rn, rd = self._pair_add(self._pair_mul(a, c), self._pair_neg(self._pair_mul(b, d)))
        xn, xd = self._pair_add(self._pair_mul(a, d), self._pair_mul(b, c))
        return Scalar(rn, rd, xn, xd, _reduced=True)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise InvalidScalar("inverse of zero")
        if self.inum is None:
            return Scalar(self.den, self.num)
        # (a + b i)^(-1) = (a - b i) / (a^2 + b^2)
        a, b = self._real_pair(), self._imag_pair()
        nn, nd = self._pair_add(self._pair_mul(a, a), self._pair_mul(b, b))
        norm = Scalar(nn, nd, _reduced=True)
        conj = Scalar(self.num, self.den, _reduced=True)
        conj.inum, conj.iden = -self.inum, self.iden
        return conj * norm.inv()

    def __truediv__(self, other):
        return self * _coerce(other).inv()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n == 0:
            return Scalar.one()
        base = self if n > 0 else self.inv()
        n = abs(n)
        result = Scalar.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.num == other.num and self.den == other.den
                and self.inum == other.inum and self.iden == other.iden)

    def __hash__(self):
        ik = None if self.inum is None else (self.inum.key(), self.iden.key())
        return hash((self.num.key(), self.den.key(), ik))

    def canonicalize(self) -> "Scalar":
        """Re-run the reduction (idempotent on reduced scalars)."""
        out = Scalar(self.num, self.den)
        if self.inum is not None:
            return Scalar(self.num, self.den, self.inum, self.iden)
        return out

    def swap_vars(self) -> "Scalar":
        """Apply the substitution X <-> Y (i.e. r <-> s)."""
        if self.inum is None:
            return Scalar(self.num.swap_vars(), self.den.swap_vars())
        return Scalar(self.num.swap_vars(), self.den.swap_vars(),
                      self.inum.swap_vars(), self.iden.swap_vars())

    def __repr__(self):
        if self.inum is None:
            if self.den.is_one():
                return f"({self.num})"
            return f"({self.num})/({self.den})"
        return f"({self.num})/({self.den}) + i*({self.inum})/({self.iden})"

    # -- serialization ---------------------------------------------------

    def to_json(self):
        out = {"num": _poly_json(self.num), "den": _poly_json(self.den)}
        if self.inum is not None:
            out["inum"] = _poly_json(self.inum)
            out["iden"] = _poly_json(self.iden)
        return out

    @classmethod
    def from_json(cls, data) -> "Scalar":
        num = _poly_from_json(data["num"])
        den = _poly_from_json(data["den"])
        if "inum" in data:
            return cls(num, den, _poly_from_json(data["inum"]), _poly_from_json(data["iden"]))
        return cls(num, den)


def _coerce(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction)):
        return Scalar.from_fraction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to Scalar")


def _poly_json(p: IntPoly):
    return [[x, y, str(c)] for (x, y), c in
            sorted(p.terms.items(), key=lambda kv: _grlex_key(kv[0]))]


def _poly_from_json(rows) -> IntPoly:
    return IntPoly({(int(x), int(y)): Fraction(c) for x, y, c in rows})


# ---------------------------------------------------------------------------
# Cyclotomic numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int):
    """Coefficients (ascending, ints) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by the product of Phi_d over proper divisors d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _intpoly_div(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _intpoly_div(num, den):
    """Exact division of integer coefficient lists (ascending)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    if any(num):
        raise ArithmeticError("non-exact cyclotomic division")
    return out


@lru_cache(maxsize=None)
def _reduction_rows(n: int):
    """x^k mod Phi_n as coefficient tuples, for k = deg..2*deg-2."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = {}
    # x^deg = -(phi[0] + ... + phi[deg-1] x^(deg-1))
    base = [Fraction(-phi[i]) for i in range(deg)]
    rows[deg] = tuple(base)
    prev = base
    for k in range(deg + 1, 2 * deg - 1):
        shifted = [Fraction(0)] + prev[:-1]
        top = prev[-1]
        if top:
            for i in range(deg):
                shifted[i] += top * base[i]
        rows[k] = tuple(shifted)
        prev = shifted
    return rows, deg


class CycloNumber:
    """Element of Q(zeta_n): a vector of rationals modulo Phi_n."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        _, deg = _reduction_rows(conductor)
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        if len(cs) > deg:
            raise ValueError("coefficient vector longer than phi(n)")
        cs += [Fraction(0)] * (deg - len(cs))
        self.conductor = conductor
        self.coeffs = tuple(cs)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNumber":
        """zeta_n^k."""
        k %= n
        rows, deg = _reduction_rows(n)
        if k < deg:
            coeffs = [Fraction(0)] * deg
            coeffs[k] = Fraction(1)
            return cls(n, coeffs)
        acc = cls.zeta(n, 0)
        gen = cls.zeta(n, 1) if deg > 1 else cls(n, [Fraction(-cyclotomic_polynomial(n)[0])])
        for _ in range(k):
            acc = acc * gen
        return acc

    @classmethod
    def from_rational(cls, n: int, value) -> "CycloNumber":
        _, deg = _reduction_rows(n)
        coeffs = [Fraction(0)] * deg
        coeffs[0] = Fraction(value)
        return cls(n, coeffs)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(not c for c in self.coeffs[1:])

    def _check(self, other):
        if self.conductor != other.conductor:
            raise ValueError("conductor mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(self.conductor, other)
        self._check(other)
        return CycloNumber(self.conductor,
                           [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(self.conductor, other)
        return self + (-other)

    def __rsub__(self, other):
        return CycloNumber.from_rational(self.conductor, other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.conductor, [a * Fraction(other) for a in self.coeffs])
        self._check(other)
        rows, deg = _reduction_rows(self.conductor)
        size = 2 * deg - 1
        prod = [Fraction(0)] * size
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        out = prod[:deg]
        for k in range(deg, size):
            c = prod[k]
            if c:
                row = rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return CycloNumber(self.conductor, out)

    __rmul__ = __mul__

    def inv(self) -> "CycloNumber":
        if self.is_zero():
            raise InvalidScalar("inverse of zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        a = list(self.coeffs)
        # extended Euclid for a modulo phi
        r0, r1 = phi, _trimmed(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0]:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if len(r1) == 1 and r1[0]:
                break
        if len(r1) != 1 or not r1[0]:
            raise InvalidScalar("element not invertible modulo the cyclotomic polynomial")
        c = r1[0]
        inv_coeffs = [x / c for x in s1]
        _, deg = _reduction_rows(self.conductor)
        inv_coeffs = inv_coeffs[:deg] + [Fraction(0)] * max(0, deg - len(inv_coeffs))
        return CycloNumber(self.conductor, inv_coeffs)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return self * other.inv()

    def __pow__(self, n: int):
        if n == 0:
            return CycloNumber.from_rational(self.conductor, 1)
        base = self if n > 0 else self.inv()
        n = abs(n)
        result = CycloNumber.from_rational(self.conductor, 1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(self.conductor, other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.conductor == other.conductor and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.conductor, self.coeffs))

    def order(self):
        """Smallest k >= 1 with self^k = 1, or None (search bounded by the
        torsion of Q(zeta_n): n for even n, 2n for odd n)."""
        if self.is_zero():
            raise InvalidScalar("zero has no multiplicative order")
        bound = self.conductor if self.conductor % 2 == 0 else 2 * self.conductor
        acc = self
        one = CycloNumber.from_rational(self.conductor, 1)
        for k in range(1, bound + 1):
            if acc == one:
                return k
            acc = acc * self
        return None

    def __repr__(self):
        return f"Cyclo({self.conductor}; {', '.join(str(c) for c in self.coeffs)})"

    def to_json(self):
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "CycloNumber":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


def _trimmed(coeffs):
    out = list(coeffs)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _poly_divmod(a, b):
    a = _trimmed(a)
    b = _trimmed(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and (len(r) > 1 or r[0]):
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        q[shift] = factor
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r = _trimmed(r)
        if len(r) == 1 and not r[0]:
            break
    return _trimmed(q), _trimmed(r)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trimmed(out)


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trimmed(out)


def cyclo_order(z: CycloNumber):
    """Order of z as a root of unity, or None if it is not one."""
    return z.order()


def specialize_scalar(s: Scalar, zx: CycloNumber, zy: CycloNumber) -> CycloNumber:
    """Evaluate a scalar at X = zx, Y = zy (a ring homomorphism).

    Raises VanishingDenominator when the denominator evaluates to zero.
    The Gaussian part needs i in the target field, i.e. 4 | conductor.
    """
    if zx.conductor != zy.conductor:
        raise ValueError("conductor mismatch")
    den = s.den.subs_cyclo(zx, zy)
    if den.is_zero():
        raise VanishingDenominator("denominator vanishes under the assignment")
    value = s.num.subs_cyclo(zx, zy) * den.inv()
    if s.inum is not None:
        n = zx.conductor
        if n % 4 != 0:
            raise VanishingDenominator(f"i is not available in Q(zeta_{n})")
        iden = s.iden.subs_cyclo(zx, zy)
        if iden.is_zero():
            raise VanishingDenominator("denominator vanishes under the assignment")
        i_unit = CycloNumber.zeta(n, n // 4)
        value = value + i_unit * s.inum.subs_cyclo(zx, zy) * iden.inv()
    return value


# ---------------------------------------------------------------------------
# Coefficient field contexts
# ---------------------------------------------------------------------------

class GenericField:
    """Q(X, Y) as a coefficient field context for the kernel.

    Exposes the named constants every other module needs; `gaussian=True`
    adjoins i (used only by the i-twist checks).
    """

    def __init__(self, gaussian: bool = False):
        self.gaussian = gaussian
        self.zero = Scalar.zero()
        self.one = Scalar.one()
        self.x = Scalar.monomial(1, 0)        # r^(1/4)
        self.y = Scalar.monomial(0, 1)        # s^(1/4)
        self.sqrt_r = Scalar.monomial(2, 0)
        self.sqrt_s = Scalar.monomial(0, 2)
        self.r = Scalar.monomial(4, 0)
        self.s = Scalar.monomial(0, 4)
        self.q = Scalar.monomial(2, 2)
        self.q_inv = Scalar.monomial(-2, -2)
        self.q_half = Scalar.monomial(1, 1)
        self.q_half_inv = Scalar.monomial(-1, -1)
        self.q_prime = Scalar.monomial(2, 2, -1)
        self.r_minus_s = self.r - self.s
        self.inv_r_minus_s = self.r_minus_s.inv()
        self.eta = (self.sqrt_r + self.sqrt_s) * self.r_minus_s
        self.i = Scalar.i_unit() if gaussian else None

    def from_int(self, k: int) -> Scalar:
        return Scalar.from_fraction(k)

    def from_fraction(self, fr) -> Scalar:
        return Scalar.from_fraction(fr)

    def inv(self, a: Scalar) -> Scalar:
        return a.inv()

    def is_specialized(self) -> bool:
        return False

    def describe(self) -> str:
        return "Q(i)(X,Y)" if self.gaussian else "Q(X,Y)"


class SpecializedField:
    """Q(zeta_n) with X, Y sent to fixed powers of zeta_n.

    Requires r != s under the assignment, otherwise the kernel constant
    1/(r - s) does not exist.
    """

    def __init__(self, conductor: int, x_exp: int, y_exp: int):
        self.conductor = conductor
        self.x_exp = x_exp % conductor
        self.y_exp = y_exp % conductor
        self.zeta_x = CycloNumber.zeta(conductor, x_exp)
        self.zeta_y = CycloNumber.zeta(conductor, y_exp)
        self.zero = CycloNumber.from_rational(conductor, 0)
        self.one = CycloNumber.from_rational(conductor, 1)
        self.x = self.zeta_x
        self.y = self.zeta_y
        self.sqrt_r = self.zeta_x ** 2
        self.sqrt_s = self.zeta_y ** 2
        self.r = self.zeta_x ** 4
        self.s = self.zeta_y ** 4
        if self.r == self.s:
            raise VanishingDenominator("assignment forces r = s")
        self.q = self.sqrt_r * self.sqrt_s
        self.q_inv = self.q.inv()
        self.q_half = self.zeta_x * self.zeta_y
        self.q_half_inv = self.q_half.inv()
        self.q_prime = -self.q
        self.r_minus_s = self.r - self.s
        self.inv_r_minus_s = self.r_minus_s.inv()
        self.eta = (self.sqrt_r + self.sqrt_s) * self.r_minus_s
        self.i = CycloNumber.zeta(conductor, conductor // 4) if conductor % 4 == 0 else None

    def from_int(self, k: int) -> CycloNumber:
        return CycloNumber.from_rational(self.conductor, k)

    def from_fraction(self, fr) -> CycloNumber:
        return CycloNumber.from_rational(self.conductor, fr)

    def inv(self, a: CycloNumber) -> CycloNumber:
        return a.inv()

    def specialize(self, s: Scalar) -> CycloNumber:
        return specialize_scalar(s, self.zeta_x, self.zeta_y)

    def is_specialized(self) -> bool:
        return True

    def describe(self) -> str:
        return f"Q(zeta_{self.conductor}) with X=zeta^{self.x_exp}, Y=zeta^{self.y_exp}"
