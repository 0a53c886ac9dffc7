"""Exact sparse elements of the form sum_a c_a (1+X)^a.

Exponents a are arbitrary integers (they play the role of group elements,
so they can be astronomically large representatives of p-adic units) and
coefficients live in Z/p^N.  Every operation here is exact: multiplication
adds exponents, frobenius multiplies them by p, psi keeps the divisible
ones, and a group substitution scales them.  This is the representation on
which level-indexed limits actually stabilize; the windowed Laurent picture
is only a readout.
"""

import math

from .errors import ValidationError
from .laurent import LaurentElement, binom_row, _factorial_valuation_bound


class PowerSum:
    """Finite sum of powers of (1+X) with coefficients in Z/p^N."""

    __slots__ = ("prec", "terms", "_expansion")

    def __init__(self, prec, terms):
        pn = prec.pn
        clean = {}
        for a, c in terms.items():
            c %= pn
            if c:
                clean[a] = c
        self.prec = prec
        self.terms = clean
        self._expansion = None

    @classmethod
    def zero(cls, prec):
        return cls(prec, {})

    @classmethod
    def one(cls, prec):
        return cls(prec, {0: 1})

    @classmethod
    def group_element(cls, prec, a, c=1):
        """c * (1+X)^a."""
        return cls(prec, {a: c})

    @classmethod
    def from_polynomial(cls, elem):
        """Exact conversion of a Laurent polynomial with nonnegative support,
        via X^e = ((1+X) - 1)^e."""
        if not elem.is_exact():
            raise ValidationError("only exact elements convert to power sums")
        out = {}
        for e, c in elem.coeffs.items():
            if e < 0:
                raise ValidationError("negative exponents have no finite power-sum form")
            for k in range(e + 1):
                s = c * math.comb(e, k)
                out[k] = out.get(k, 0) + (s if (e - k) % 2 == 0 else -s)
        return cls(elem.prec, out)

    # ---- ring operations ----

    def _check_compatible(self, other):
        if self.prec != other.prec:
            raise ValidationError("operands have different working precisions")

    def add(self, other):
        self._check_compatible(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return PowerSum(self.prec, out)

    def neg(self):
        return PowerSum(self.prec, {a: -c for a, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scalar_mul(self, c):
        return PowerSum(self.prec, {a: c * v for a, v in self.terms.items()})

    def mul(self, other):
        self._check_compatible(other)
        out = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                out[a + b] = out.get(a + b, 0) + c * d
        return PowerSum(self.prec, out)

    # ---- semilinear operations ----

    def frobenius(self):
        return PowerSum(self.prec, {self.prec.p * a: c for a, c in self.terms.items()})

    def psi(self):
        p = self.prec.p
        return PowerSum(self.prec, {a // p: c for a, c in self.terms.items() if a % p == 0})

    def sigma(self, b):
        """Substitute X -> (1+X)^b - 1; exponents scale by the integer b."""
        if b % self.prec.p == 0:
            raise ValidationError("sigma index must be prime to p")
        return PowerSum(self.prec, {a * b: c for a, c in self.terms.items()})

    def scale_exponents(self, b):
        """Exponent scaling without the unit restriction (group pushforward)."""
        return PowerSum(self.prec, {a * b: c for a, c in self.terms.items()})

    def derivative(self):
        """d = (1+X) d/dX acts on (1+X)^a as multiplication by a."""
        return PowerSum(self.prec, {a: a * c for a, c in self.terms.items()})

    def has_unit_support(self):
        """True when every exponent is prime to p (then psi kills the element)."""
        return all(a % self.prec.p != 0 for a in self.terms)

    # ---- readout ----

    def to_laurent(self, hi=None):
        """Expansion as a windowed Laurent element, exact on [min-support-ish, hi].

        The expansion of (1+X)^a has unbounded support upward, so the result
        always carries a finite certification bound.
        """
        prec = self.prec
        if hi is None:
            hi = prec.hi
        mod_exp = prec.N + _factorial_valuation_bound(hi, prec.p) + 2
        out = {}
        for a, c in self.terms.items():
            row = binom_row(a, hi, prec.p, mod_exp)
            for k in range(hi + 1):
                if row[k]:
                    out[k] = out.get(k, 0) + c * row[k]
        return LaurentElement(prec, out, hi)

    def expansion(self):
        if self._expansion is None:
            self._expansion = self.to_laurent()
        return self._expansion

    def __eq__(self, other):
        if not isinstance(other, PowerSum):
            return NotImplemented
        self._check_compatible(other)
        if self.terms == other.terms:
            return True
        return self.expansion() == other.expansion()

    __hash__ = None

    def __repr__(self):
        items = sorted(self.terms.items())[:6]
        body = ", ".join("%d: %d" % (a, c) for a, c in items)
        more = "..." if len(self.terms) > 6 else ""
        return "PowerSum({%s%s})" % (body, more)

    def is_zero(self):
        if not self.terms:
            return True
        return self.expansion().is_zero()

    # ---- serialization ----

    def to_json(self):
        return {
            "basis": "oneplusx",
            "terms": [[a, c] for a, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, prec, data):
        from .errors import ParseError

        if not isinstance(data, dict) or data.get("basis") != "oneplusx":
            raise ParseError("power sum serialization needs basis 'oneplusx'")
        terms = data.get("terms")
        if not isinstance(terms, list):
            raise ParseError("power sum serialization needs a 'terms' list")
        out = {}
        for item in terms:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not all(isinstance(x, int) for x in item)
            ):
                raise ParseError("each power-sum term must be an [exponent, coeff] pair")
            out[item[0]] = out.get(item[0], 0) + item[1]
        return cls(prec, out)
