"""Precision-tracked Laurent series arithmetic over Z/p^N.

Elements of (Z/p^N)[[X]][1/X] are stored as sparse coefficient dictionaries
{exponent: coefficient}.  The lower tail of a series is always finite and
exact.  The upper tail is either exact as well (``hi_known is None``, the
polynomial-like case) or certified only up to ``hi_known``: coefficients at
larger exponents are unknown, not zero.  Equality therefore means agreement
on the intersection of the certified ranges.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    NegativeTailResidual,
    NotAUnit,
    ParseError,
    PrecisionTooLow,
    ValidationError,
    WindowUnderflow,
)


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, int(math.isqrt(n)) + 1):
        if n % q == 0:
            return False
    return True


@dataclass(frozen=True)
class Precision:
    """Working precision: odd prime p, p-adic depth N, reference window [lo, hi]."""

    p: int
    N: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not _is_prime(self.p):
            raise ValidationError("p must be an odd prime >= 3, got %r" % (self.p,))
        if self.N < 1:
            raise ValidationError("N must be >= 1, got %r" % (self.N,))
        if not (self.lo <= 0 <= self.hi):
            raise ValidationError("window [%r, %r] must contain 0" % (self.lo, self.hi))
        if self.hi - self.lo < self.p:
            raise ValidationError("window must span at least p exponents")

    @property
    def pn(self):
        return self.p ** self.N

    @property
    def unit_exponent(self):
        # Group-element representatives are fixed modulo p**unit_exponent so
        # that substitution errors fall outside the window at depth N.
        span = self.hi - self.lo
        return self.N + max(1, math.ceil(math.log(span + 1, self.p))) + 1

    @property
    def unit_modulus(self):
        return self.p ** self.unit_exponent


@lru_cache(maxsize=None)
def _binom_tables(kmax, p, modulus_exponent):
    # inverses of 1..kmax with p-parts removed, and powers of p, both mod p**e
    mod = p ** modulus_exponent
    inv = [0] * (kmax + 1)
    for g in range(1, kmax + 1):
        while g % p == 0:
            g //= p
        if inv[g] == 0:
            inv[g] = pow(g, -1, mod)
    powers = [pow(p, v, mod) for v in range(modulus_exponent)]
    return mod, inv, powers


@lru_cache(maxsize=1 << 15)
def binom_row(a, kmax, p, modulus_exponent):
    """Binomial coefficients C(a, k) mod p**modulus_exponent for k = 0..kmax.

    Works for any integer a, including negative and very large values.  The
    running product keeps the p-part of C(a, k) as an explicit valuation so
    division by k+1 never needs an inverse of p.
    """
    mod, inv, powers = _binom_tables(kmax, p, modulus_exponent)
    out = [1 % mod]
    unit, val = 1 % mod, 0
    for k in range(kmax):
        f = a - k
        if f == 0:
            out.extend([0] * (kmax - k))
            return tuple(out)
        while f % p == 0:
            f //= p
            val += 1
        unit = (unit * f) % mod
        g = k + 1
        while g % p == 0:
            g //= p
            val -= 1
        unit = (unit * inv[g]) % mod
        if val < 0:
            raise ValidationError("negative p-valuation in binomial recursion")
        out.append((unit * powers[val]) % mod if val < modulus_exponent else 0)
    return tuple(out)


class LaurentElement:
    """A sparse Laurent series with an exact lower tail and a certified upper bound."""

    __slots__ = ("prec", "coeffs", "hi_known")

    def __init__(self, prec, coeffs, hi_known=None):
        pn = prec.pn
        clean = {}
        for e, c in coeffs.items():
            if hi_known is not None and e > hi_known:
                continue
            c %= pn
            if c:
                clean[e] = c
        self.prec = prec
        self.coeffs = clean
        self.hi_known = hi_known

    # ---- constructors ----

    @classmethod
    def zero(cls, prec):
        return cls(prec, {})

    @classmethod
    def one(cls, prec):
        return cls(prec, {0: 1})

    @classmethod
    def monomial(cls, prec, e, c=1):
        return cls(prec, {e: c})

    # ---- structure ----

    def is_exact(self):
        return self.hi_known is None

    def valuation(self):
        """Lowest exponent with nonzero coefficient, or None for (window-)zero."""
        if not self.coeffs:
            return None
        return min(self.coeffs)

    def degree(self):
        if not self.coeffs:
            return None
        return max(self.coeffs)

    def window_top(self):
        return math.inf if self.hi_known is None else self.hi_known

    def is_zero(self):
        """Zero within the certified range.  Exact elements: identically zero."""
        if self.hi_known is not None and self.hi_known < self.prec.lo:
            raise WindowUnderflow("no certified coefficients in the reference window")
        return not self.coeffs

    def truncated(self, hi):
        h = hi if self.hi_known is None else min(hi, self.hi_known)
        return LaurentElement(self.prec, self.coeffs, h)

    def coefficient(self, e):
        if self.hi_known is not None and e > self.hi_known:
            raise WindowUnderflow("coefficient at %d is outside the certified range" % e)
        return self.coeffs.get(e, 0)

    # ---- ring operations ----

    def _check_compatible(self, other):
        if self.prec != other.prec:
            raise ValidationError("operands have different working precisions")

    def add(self, other):
        self._check_compatible(other)
        h = min(self.window_top(), other.window_top())
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentElement(self.prec, out, None if h == math.inf else h)

    def neg(self):
        return LaurentElement(self.prec, {e: -c for e, c in self.coeffs.items()}, self.hi_known)

    def sub(self, other):
        return self.add(other.neg())

    def scalar_mul(self, c):
        out = {e: c * v for e, v in self.coeffs.items()}
        return LaurentElement(self.prec, out, self.hi_known)

    def shift(self, k):
        """Multiply by X**k."""
        h = None if self.hi_known is None else self.hi_known + k
        return LaurentElement(self.prec, {e + k: c for e, c in self.coeffs.items()}, h)

    def _tail_bound(self):
        # Smallest exponent that could carry an unknown coefficient.
        if self.hi_known is None:
            return math.inf
        v = self.valuation()
        return self.hi_known + 1 if v is None else min(self.hi_known + 1, math.inf)

    def mul(self, other):
        self._check_compatible(other)
        h = math.inf
        for a, b in ((self, other), (other, self)):
            if a.hi_known is not None:
                vb = b.valuation()
                if vb is None:
                    vb = b.window_top() + 1 if b.hi_known is not None else math.inf
                h = min(h, a.hi_known + vb)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e <= h:
                    out[e] = out.get(e, 0) + c1 * c2
        return LaurentElement(self.prec, out, None if h == math.inf else h)

    def __eq__(self, other):
        if not isinstance(other, LaurentElement):
            return NotImplemented
        self._check_compatible(other)
        h = min(self.window_top(), other.window_top())
        if h == math.inf:
            return self.coeffs == other.coeffs
        if h < self.prec.lo:
            raise WindowUnderflow("comparison window is empty")
        for e in set(self.coeffs) | set(other.coeffs):
            if e <= h and self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        terms = ", ".join("%d: %d" % (e, self.coeffs[e]) for e in sorted(self.coeffs)[:8])
        more = "..." if len(self.coeffs) > 8 else ""
        return "LaurentElement({%s%s}, hi_known=%r)" % (terms, more, self.hi_known)

    # ---- inversion ----

    def invert_unit(self):
        """Inverse of a unit c*X^m*(1 + h).

        The perturbation h must be contracting: every term with nonpositive
        exponent needs a p-divisible coefficient, otherwise the geometric
        series does not converge and NotAUnit is raised.
        """
        p, N = self.prec.p, self.prec.N
        # normalize around the lowest exponent carrying a unit coefficient;
        # anything below it is p-divisible and joins the contracting tail
        unit_exps = [e for e, c in self.coeffs.items() if c % p != 0]
        if not unit_exps:
            raise NotAUnit("no coefficient is a p-adic unit")
        v = min(unit_exps)
        c = self.coeffs[v]
        cinv = pow(c, -1, self.prec.pn)
        # h = unit-normalized series minus 1
        h = {e - v: cv * cinv for e, cv in self.coeffs.items() if e != v}
        h = LaurentElement(self.prec, h, None if self.hi_known is None else self.hi_known - v)
        contracting_exactly = True
        for e, cv in h.coeffs.items():
            if e <= 0 and cv % p != 0:
                raise NotAUnit("series has a non-contracting nonpositive tail")
            if e > 0:
                contracting_exactly = contracting_exactly and cv % p == 0
        if self.hi_known is None and contracting_exactly:
            hi_work = None
        else:
            hi_work = self.prec.hi - self.prec.lo + max(0, -v)
            if self.hi_known is not None:
                hi_work = min(hi_work, self.hi_known - 2 * v + max(0, -v))
        neg_h = h.neg()
        if hi_work is not None:
            neg_h = neg_h.truncated(hi_work)
        vh = h.valuation()
        vneg = 0 if vh is None else max(0, -vh)
        cap = (N + 1) * (vneg + 1) + (0 if hi_work is None else hi_work) + 2
        acc = LaurentElement.one(self.prec)
        term = LaurentElement.one(self.prec)
        for _ in range(cap):
            term = term.mul(neg_h)
            if hi_work is not None:
                term = term.truncated(hi_work)
            if not term.coeffs:
                break
            acc = acc.add(term)
        else:
            if term.coeffs:
                raise NotAUnit("geometric series did not terminate")
        out = acc.scalar_mul(cinv).shift(-v)
        if hi_work is not None and out.hi_known is None:
            out = out.truncated(hi_work - v)
        return out

    # ---- semilinear operations ----

    def frobenius(self):
        """Substitute X -> (1+X)^p - 1."""
        prec = self.prec
        phix = _phi_x(prec)
        phix_inv = _phi_x_inv(prec)
        nonneg = sorted(e for e in self.coeffs if e >= 0)
        neg = sorted((e for e in self.coeffs if e < 0), reverse=True)
        out = LaurentElement.zero(prec)
        power = LaurentElement.one(prec)
        last = 0
        for e in nonneg:
            for _ in range(e - last):
                power = power.mul(phix)
            last = e
            out = out.add(power.scalar_mul(self.coeffs[e]))
        power = LaurentElement.one(prec)
        last = 0
        for e in neg:
            for _ in range(last - e):
                power = power.mul(phix_inv)
            last = e
            out = out.add(power.scalar_mul(self.coeffs[e]))
        if self.hi_known is not None:
            # unknown input coefficients beyond hi_known enter at valuation > hi_known
            out = out.truncated(self.hi_known if out.hi_known is None else min(out.hi_known, self.hi_known))
        return out

    def sigma(self, a, a_modulus_exponent=None):
        """Substitute X -> (1+X)^a - 1 for an integer a prime to p.

        ``a`` is taken as an exact integer.  If the caller only knows the
        intended group element modulo p**a_modulus_exponent, pass that
        exponent; representatives below the working unit modulus are refused.
        """
        prec = self.prec
        if a % prec.p == 0:
            raise ValidationError("sigma index must be prime to p")
        if a_modulus_exponent is not None and a_modulus_exponent < prec.unit_exponent:
            raise PrecisionTooLow(
                "sigma index known mod p^%d but p^%d is required"
                % (a_modulus_exponent, prec.unit_exponent)
            )
        if a == 1:
            return self
        s = _one_plus_x_pow(prec, a).add(LaurentElement.one(prec).neg())
        nonneg = sorted(e for e in self.coeffs if e >= 0)
        neg = sorted((e for e in self.coeffs if e < 0), reverse=True)
        out = LaurentElement.zero(prec)
        power = LaurentElement.one(prec)
        last = 0
        for e in nonneg:
            for _ in range(e - last):
                power = power.mul(s)
            last = e
            out = out.add(power.scalar_mul(self.coeffs[e]))
        if neg:
            s_inv = s.invert_unit()
            power = LaurentElement.one(prec)
            last = 0
            for e in neg:
                for _ in range(last - e):
                    power = power.mul(s_inv)
                last = e
                out = out.add(power.scalar_mul(self.coeffs[e]))
        if self.hi_known is not None:
            out = out.truncated(self.hi_known if out.hi_known is None else min(out.hi_known, self.hi_known))
        return out

    def psi(self):
        """Left inverse of frobenius.

        Digit by digit: modulo p the system for x = sum_j (1+X)^j phi(g_j)
        is triangular in each block of p consecutive exponents, because
        phi(X^m) = X^{pm} mod p.  Solve mod p, subtract, divide by p, repeat
        N times; the component j = 0 is psi of the input.
        """
        prec = self.prec
        p, N, pn = prec.p, prec.N, prec.pn
        residual = dict(self.coeffs)
        h = self.hi_known
        out = {}
        last_mhi = None
        for t in range(N):
            if not residual:
                break
            emin = min(residual)
            emax = max(residual)
            mlo = emin // p
            if h is None:
                mhi = emax // p
            else:
                mhi = (h - p + 1) // p
                if mhi < mlo:
                    break
            last_mhi = mhi
            gj = [dict() for _ in range(p)]
            for m in range(mlo, mhi + 1):
                cv = [residual.get(p * m + r, 0) % p for r in range(p)]
                for j in range(p - 1, -1, -1):
                    val = cv[j]
                    for j2 in range(j + 1, p):
                        val -= math.comb(j2, j) * gj[j2].get(m, 0)
                    val %= p
                    if val:
                        gj[j][m] = val
            scale = p ** t
            for m, val in gj[0].items():
                nv = (out.get(m, 0) + val * scale) % pn
                if nv:
                    out[m] = nv
                else:
                    out.pop(m, None)
            if t == N - 1:
                break
            correction = LaurentElement.zero(prec)
            for j in range(p):
                if not gj[j]:
                    continue
                piece = LaurentElement(prec, gj[j]).frobenius()
                piece = piece.mul(_one_plus_x_pow(prec, j))
                correction = correction.add(piece)
            bound = None if h is None else p * mhi + p - 1
            nxt = {}
            for e in set(residual) | set(correction.coeffs):
                if bound is not None and e > bound:
                    continue
                d = (residual.get(e, 0) - correction.coeffs.get(e, 0)) % pn
                if d % p != 0:
                    raise ValidationError("psi digit extraction left a non-divisible residual")
                d //= p
                if d:
                    nxt[e] = d
            residual = nxt
            if h is not None:
                h = bound
        if self.hi_known is None:
            return LaurentElement(prec, out)
        # Unknown upper-tail coefficients at exponent e pollute output slot m
        # with p-valuation growing linearly in e - p*m; keep slots where the
        # pollution provably exceeds depth N.
        m_poll = (self.hi_known + 1 - (N + 1) * (p - 1)) // p
        hi_out = m_poll if last_mhi is None else min(m_poll, last_mhi)
        if hi_out < prec.lo:
            raise WindowUnderflow("psi output window [%d, %d] is empty" % (prec.lo, hi_out))
        return LaurentElement(prec, out, hi_out)

    # ---- functionals ----

    def residue_at_zero(self):
        """res_0(f) = coefficient of X^{-1} in f * (1+X)^{-1}; exact on the lower tail."""
        if self.hi_known is not None and self.hi_known < -1:
            raise WindowUnderflow("negative tail is not certified down to X^{-1}")
        total = 0
        for e, c in self.coeffs.items():
            if e <= -1:
                total += c if (-1 - e) % 2 == 0 else -c
        return total % self.prec.pn

    def eval_at_zero(self):
        """Constant-term evaluation; refuses series with a nonzero negative tail."""
        if any(e < 0 for e in self.coeffs):
            raise NegativeTailResidual("series has nonzero coefficients below X^0")
        return self.coeffs.get(0, 0)

    def derivative(self):
        """The operator d = (1+X) d/dX, applied termwise."""
        out = {}
        for e, c in self.coeffs.items():
            out[e - 1] = out.get(e - 1, 0) + e * c
            out[e] = out.get(e, 0) + e * c
        h = None if self.hi_known is None else self.hi_known - 1
        return LaurentElement(self.prec, out, h)

    # ---- serialization ----

    def to_json(self):
        v = self.valuation()
        if v is None:
            return {"lo": 0, "coeffs": []}
        top = self.degree() if self.hi_known is None else max(self.hi_known, self.degree())
        return {"lo": v, "coeffs": [self.coeffs.get(e, 0) for e in range(v, top + 1)]}

    @classmethod
    def from_json(cls, prec, data, hi_known=None):
        try:
            lo = data["lo"]
            coeffs = data["coeffs"]
        except (TypeError, KeyError) as exc:
            raise ParseError("laurent element needs 'lo' and 'coeffs'") from exc
        if not isinstance(lo, int) or not all(isinstance(c, int) for c in coeffs):
            raise ParseError("laurent element fields must be integers")
        return cls(prec, {lo + k: c for k, c in enumerate(coeffs)}, hi_known)


@lru_cache(maxsize=None)
def _phi_x(prec):
    """phi(X) = (1+X)^p - 1 as an exact polynomial."""
    p = prec.p
    return LaurentElement(prec, {k: math.comb(p, k) for k in range(1, p + 1)})


@lru_cache(maxsize=None)
def _phi_x_inv(prec):
    # phi(X) = X^p (1 + p*r) with r supported in [1-p, -1], so the geometric
    # series for the inverse terminates after N steps and the result is exact.
    return _phi_x(prec).invert_unit()


@lru_cache(maxsize=None)
def _one_plus_x_pow(prec, a):
    """(1+X)^a; exact for small nonnegative a, truncated at the window top otherwise."""
    if 0 <= a <= max(prec.hi, 2 * prec.p):
        return LaurentElement(prec, {k: math.comb(a, k) for k in range(a + 1)})
    hi = prec.hi - prec.lo
    row = binom_row(a, hi, prec.p, prec.N + _factorial_valuation_bound(hi, prec.p) + 2)
    return LaurentElement(prec, {k: row[k] for k in range(hi + 1)}, hi)


def _factorial_valuation_bound(k, p):
    return k // (p - 1) + 1
