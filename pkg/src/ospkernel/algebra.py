"""PBW normal-form arithmetic for the deformed enveloping superalgebra.

Elements are stored in the ordered basis f^a e^b w^c wp^d with a, b
nonnegative integers and c, d half-integers encoded as doubled integer
exponents (w2 = 2c, wp2 = 2d).  The multiplication kernel reorders every
product back into this basis using the defining exchange rules:

    w e = q e w        wp e = q^-1 e wp
    w f = q^-1 f w     wp f = q f wp
    e f = -f e + (w - wp) / (r - s)

The e-past-f rewrite strictly reduces the number of (e, f) inversions,
so normalization terminates; Cartan generators move past e and f by pure
q^(1/2) powers, which keeps half powers of w, wp exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .scalars import CycloNumber, Scalar, SpecializedField


class NonHomogeneous(ValueError):
    """A graded operation received an element of mixed Z2-degree."""


class ZeroElement(ValueError):
    """The zero element has no leading monomial."""


class PbwMonomial(NamedTuple):
    f: int
    e: int
    w2: int
    wp2: int

    def lex_key(self):
        """Order used for leading terms: priority f > w > wp > e."""
        return (self.f, self.w2, self.wp2, self.e)

    def z2_degree(self) -> int:
        return (self.f + self.e) % 2


_GENERATORS = {
    "one": PbwMonomial(0, 0, 0, 0),
    "e": PbwMonomial(0, 1, 0, 0),
    "f": PbwMonomial(1, 0, 0, 0),
    "w": PbwMonomial(0, 0, 2, 0),
    "wInv": PbwMonomial(0, 0, -2, 0),
    "wp": PbwMonomial(0, 0, 0, 2),
    "wpInv": PbwMonomial(0, 0, 0, -2),
    "wHalf": PbwMonomial(0, 0, 1, 0),
    "wpHalf": PbwMonomial(0, 0, 0, 1),
}


class Algebra:
    """The algebra over a fixed coefficient field context.

    Holds the reorder cache for the multiplication kernel; elements are
    immutable values tied to their algebra.
    """

    def __init__(self, field):
        self.field = field
        self._reorder_cache = {}
        self._ef_chain_cache = {}
        self._qh_powers = {0: field.one}

    # -- constructors ---------------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {_GENERATORS["one"]: self.field.one})

    def monomial(self, f=0, e=0, w2=0, wp2=0, coeff=None) -> "AlgebraElement":
        if f < 0 or e < 0:
            raise ValueError("f and e exponents must be nonnegative")
        c = self.field.one if coeff is None else coeff
        if _is_zero(c):
            return self.zero()
        return AlgebraElement(self, {PbwMonomial(f, e, w2, wp2): c})

    def generator(self, name: str) -> "AlgebraElement":
        if name not in _GENERATORS:
            raise KeyError(f"unknown generator {name!r}")
        return AlgebraElement(self, {_GENERATORS[name]: self.field.one})

    def scalar(self, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            c = self.field.from_fraction(Fraction(c))
        if _is_zero(c):
            return self.zero()
        return AlgebraElement(self, {_GENERATORS["one"]: c})

    def element(self, terms: dict) -> "AlgebraElement":
        clean = {m: c for m, c in terms.items() if not _is_zero(c)}
        return AlgebraElement(self, clean)

    # -- kernel ----------------------------------------------------------

    def _qh(self, k: int):
        """Cached integer powers of q^(1/2)."""
        v = self._qh_powers.get(k)
        if v is None:
            v = self.field.q_half ** k
            self._qh_powers[k] = v
        return v

    def _append_e(self, terms: dict, count: int) -> dict:
        """Right-multiply a normal form by e^count."""
        if count == 0:
            return terms
        out = {}
        for m, c in terms.items():
            factor = self._qh((m.w2 - m.wp2) * count)
            key = PbwMonomial(m.f, m.e + count, m.w2, m.wp2)
            _accumulate(out, key, c * factor)
        return out

    def _ef_chain(self, p: int) -> dict:
        """Normal form of e^p f as a term dict."""
        cached = self._ef_chain_cache.get(p)
        if cached is not None:
            return cached
        if p == 0:
            result = {PbwMonomial(1, 0, 0, 0): self.field.one}
        else:
            prev = self._ef_chain(p - 1)
            result = {}
            for m, c in self._append_e(prev, 1).items():
                _accumulate(result, m, -c)
            inv_rs = self.field.inv_r_minus_s
            _accumulate(result, PbwMonomial(0, p - 1, 2, 0), inv_rs)
            _accumulate(result, PbwMonomial(0, p - 1, 0, 2), -inv_rs)
            result = {m: c for m, c in result.items() if not _is_zero(c)}
        self._ef_chain_cache[p] = result
        return result

    def _reorder_ef(self, p: int, q: int) -> dict:
        """Normal form of e^p f^q as a term dict (memoized)."""
        key = (p, q)
        cached = self._reorder_cache.get(key)
        if cached is not None:
            return cached
        if p == 0:
            result = {PbwMonomial(q, 0, 0, 0): self.field.one}
        elif q == 0:
            result = {PbwMonomial(0, p, 0, 0): self.field.one}
        else:
            result = {}
            for m, c in self._ef_chain(p).items():
                # (f^a e^b w^c wp^d) f^(q-1): Cartan past f, then recurse
                factor = self._qh((m.wp2 - m.w2) * (q - 1))
                inner = self._reorder_ef(m.e, q - 1)
                coeff = c * factor
                for mm, mc in inner.items():
                    key2 = PbwMonomial(m.f + mm.f, mm.e,
                                       mm.w2 + m.w2, mm.wp2 + m.wp2)
                    _accumulate(result, key2, coeff * mc)
            result = {m: c for m, c in result.items() if not _is_zero(c)}
        self._reorder_cache[key] = result
        return result

    def _mul_terms(self, t1: dict, t2: dict) -> dict:
        out = {}
        for m1, c1 in t1.items():
            for m2, c2 in t2.items():
                base = c1 * c2 * self._qh((m1.w2 - m1.wp2) * (m2.e - m2.f))
                mid = self._reorder_ef(m1.e, m2.f)
                for mm, mc in mid.items():
                    factor = self._qh((mm.w2 - mm.wp2) * m2.e)
                    key = PbwMonomial(m1.f + mm.f, mm.e + m2.e,
                                      mm.w2 + m1.w2 + m2.w2,
                                      mm.wp2 + m1.wp2 + m2.wp2)
                    _accumulate(out, key, base * mc * factor)
        return {m: c for m, c in out.items() if not _is_zero(c)}

    def mul(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("elements belong to different algebras")
        return AlgebraElement(self, self._mul_terms(x.terms, y.terms))

    # -- graded brackets ---------------------------------------------------

    def commutator(self, x, y):
        return x * y - y * x

    def anticommutator(self, x, y):
        return x * y + y * x

    def super_commutator(self, x, y):
        dx, dy = x.degree(), y.degree()
        if dx == "mixed" or dy == "mixed":
            raise NonHomogeneous("super commutator needs homogeneous elements")
        if dx == "odd" and dy == "odd":
            return x * y + y * x
        return x * y - y * x


def _is_zero(c) -> bool:
    return not c


def _accumulate(acc: dict, key, value):
    cur = acc.get(key)
    if cur is None:
        if not _is_zero(value):
            acc[key] = value
    else:
        s = cur + value
        if _is_zero(s):
            del acc[key]
        else:
            acc[key] = s


class AlgebraElement:
    """Immutable PBW normal form: sparse map monomial -> coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: Algebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return AlgebraElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(other, self)
        return self.scale(other)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            c = self.algebra.field.from_fraction(Fraction(c))
        if _is_zero(c):
            return self.algebra.zero()
        return AlgebraElement(self.algebra,
                              {m: v * c for m, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "AlgebraElement":
        """Inverse, defined only for nonzero multiples of Cartan monomials."""
        if not self.terms:
            raise ZeroElement("zero is not invertible")
        if len(self.terms) != 1:
            raise ValueError("element is not invertible")
        (m, c), = self.terms.items()
        if m.f or m.e:
            raise ValueError("f and e are not invertible")
        return self.algebra.monomial(0, 0, -m.w2, -m.wp2,
                                     self.algebra.field.inv(c))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, _coeff_key(c)) for m, c in self.terms.items()))

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.scalar(other)
        if isinstance(other, (Scalar, CycloNumber)):
            return self.algebra.scalar(other)
        raise TypeError(f"cannot combine AlgebraElement with {type(other).__name__}")

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> str:
        """Z2 grading: 'even', 'odd', or 'mixed' (zero counts as even)."""
        degrees = {m.z2_degree() for m in self.terms}
        if degrees <= {0}:
            return "even"
        if degrees == {1}:
            return "odd"
        return "mixed"

    def leading_monomial(self):
        """(monomial, coeff) maximal in lex order on (f, w2, wp2, e)."""
        if not self.terms:
            raise ZeroElement("zero element has no leading monomial")
        m = max(self.terms, key=PbwMonomial.lex_key)
        return m, self.terms[m]

    def sorted_terms(self):
        """Terms sorted with the leading monomial first."""
        return sorted(self.terms.items(),
                      key=lambda kv: kv[0].lex_key(), reverse=True)

    def commutator_with_generators(self):
        A = self.algebra
        return {name: A.commutator(self, A.generator(name))
                for name in ("e", "f", "w", "wp")}

    def is_central(self) -> bool:
        A = self.algebra
        return all(A.commutator(self, A.generator(g)).is_zero()
                   for g in ("e", "f", "w", "wp"))

    def is_supercentral(self) -> bool:
        """Commutes with w, wp and anticommutes with e, f."""
        if self.degree() == "mixed":
            raise NonHomogeneous("supercentrality needs a homogeneous element")
        A = self.algebra
        return (A.commutator(self, A.generator("w")).is_zero()
                and A.commutator(self, A.generator("wp")).is_zero()
                and A.anticommutator(self, A.generator("e")).is_zero()
                and A.anticommutator(self, A.generator("f")).is_zero())

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = []
        for m, c in self.sorted_terms():
            bits.append(f"{c!r}*f^{m.f} e^{m.e} w2^{m.w2} wp2^{m.wp2}")
        return "<" + " + ".join(bits) + ">"

    # -- serialization --------------------------------------------------------

    def to_json(self):
        rows = []
        for m, c in self.sorted_terms():
            rows.append({"f": m.f, "e": m.e, "w2": m.w2, "wp2": m.wp2,
                         "coeff": c.to_json()})
        return {"terms": rows}


def _coeff_key(c):
    if isinstance(c, CycloNumber):
        return (c.conductor, c.coeffs)
    return hash(c)


def element_from_json(algebra: Algebra, data) -> AlgebraElement:
    terms = {}
    for row in data["terms"]:
        coeff_data = row["coeff"]
        if "conductor" in coeff_data:
            coeff = CycloNumber.from_json(coeff_data)
        else:
            coeff = Scalar.from_json(coeff_data)
        m = PbwMonomial(int(row["f"]), int(row["e"]), int(row["w2"]), int(row["wp2"]))
        terms[m] = coeff
    return algebra.element(terms)


def specialize_element(x: AlgebraElement, target: Algebra) -> AlgebraElement:
    """Map a generic element into a specialized algebra coefficientwise."""
    field = target.field
    if not isinstance(field, SpecializedField):
        raise TypeError("target algebra is not specialized")
    terms = {}
    for m, c in x.terms.items():
        terms[m] = field.specialize(c)
    return target.element(terms)
