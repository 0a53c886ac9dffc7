"""Continuous characters of Q_p^* with values in (Z/p^N)^*.

A character is stored as its value at p (absent for characters of the unit
group only), a power of the cyclotomic character a -> a, and a finite-order
part on (Z/p^c)^* given by its value on a fixed primitive root.  This covers
every character whose restriction to 1 + p^c Z_p is a power of the identity,
which is all the laboratory needs at depth N.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import ParseError, ValidationError


@lru_cache(maxsize=None)
def primitive_root(p, c):
    """Smallest primitive root mod p^2; also primitive mod p^c for every c >= 1."""
    if c <= 0:
        return 1
    mod = p * p
    order = p * (p - 1)
    for g in range(2, mod):
        if g % p == 0:
            continue
        if all(pow(g, order // q, mod) != 1 for q in _prime_factors(order)):
            return g
    raise ValidationError("no primitive root found")


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


@lru_cache(maxsize=None)
def _dlog_table(p, c):
    mod = p ** c
    g = primitive_root(p, c)
    table = {}
    acc = 1
    for i in range(p ** (c - 1) * (p - 1)):
        table[acc] = i
        acc = acc * g % mod
    return table


@dataclass(frozen=True)
class Character:
    """chi_power-th power of the cyclotomic character times a finite-order part,
    with an independently chosen value at p (None = defined on units only)."""

    p: int
    N: int
    value_at_p: object = None
    chi_power: int = 0
    cond_exp: int = 0
    gen_value: int = 1

    def __post_init__(self):
        pn = self.pn
        object.__setattr__(self, "gen_value", self.gen_value % pn)
        if self.value_at_p is not None:
            if self.value_at_p % self.p == 0:
                raise ValidationError("value at p must be a unit at depth N")
            object.__setattr__(self, "value_at_p", self.value_at_p % pn)
        if self.cond_exp < 0:
            raise ValidationError("conductor exponent must be nonnegative")
        if self.cond_exp > 0 and self.gen_value == 1 % pn:
            # trivial finite part: normalize the conductor away
            object.__setattr__(self, "cond_exp", 0)
        if self.cond_exp == 0 and self.gen_value != 1 % pn:
            raise ValidationError("trivial conductor forces trivial finite part")
        if self.cond_exp > 0:
            order = self.p ** (self.cond_exp - 1) * (self.p - 1)
            if pow(self.gen_value, order, pn) != 1 % pn:
                raise ValidationError("generator value is not a root of unity of the right order")

    @property
    def pn(self):
        return self.p ** self.N

    # ---- evaluation ----

    def unit_value(self, a):
        """Value on the unit a (any exact integer representative prime to p)."""
        if a % self.p == 0:
            raise ValidationError("character evaluated at a non-unit")
        pn = self.pn
        out = pow(a % pn, self.chi_power, pn)
        if self.cond_exp > 0:
            i = _dlog_table(self.p, self.cond_exp)[a % self.p ** self.cond_exp]
            out = out * pow(self.gen_value, i, pn) % pn
        return out

    def frobenius_value(self):
        """Value at p; characters of the unit group act trivially under phi."""
        return 1 if self.value_at_p is None else self.value_at_p

    # ---- group structure ----

    def _combine_p(self, other, op):
        if self.value_at_p is None and other.value_at_p is None:
            return None
        return op(self.frobenius_value(), other.frobenius_value())

    def mul(self, other):
        if (self.p, self.N) != (other.p, other.N):
            raise ValidationError("characters at different precisions")
        c = max(self.cond_exp, other.cond_exp)
        g = primitive_root(self.p, c)
        gv = 1
        if c > 0:
            gv = self.unit_value(g) * other.unit_value(g) % self.pn
            gv = gv * pow(pow(g, self.chi_power + other.chi_power, self.pn), -1, self.pn) % self.pn
        return Character(
            self.p,
            self.N,
            self._combine_p(other, lambda x, y: x * y),
            self.chi_power + other.chi_power,
            c,
            gv,
        )

    def inv(self):
        gv = 1
        if self.cond_exp > 0:
            gv = pow(self.gen_value, -1, self.pn)
        vp = None if self.value_at_p is None else pow(self.value_at_p, -1, self.pn)
        return Character(self.p, self.N, vp, -self.chi_power, self.cond_exp, gv)

    def power(self, k):
        out = trivial_character(self.p, self.N)
        base = self if k >= 0 else self.inv()
        for _ in range(abs(k)):
            out = out.mul(base)
        return out

    def is_unit_trivial(self):
        return self.chi_power == 0 and self.cond_exp == 0

    # ---- serialization ----

    def to_json(self):
        return {
            "value_at_p": self.value_at_p,
            "chi_power": self.chi_power,
            "conductor_exp": self.cond_exp,
            "gen_value": self.gen_value,
        }

    @classmethod
    def from_json(cls, p, N, data):
        if not isinstance(data, dict):
            raise ParseError("character serialization must be an object")
        try:
            vp = data["value_at_p"]
            k = data["chi_power"]
            c = data["conductor_exp"]
            gv = data["gen_value"]
        except KeyError as exc:
            raise ParseError("character serialization missing %s" % exc) from exc
        if vp is not None and not isinstance(vp, int):
            raise ParseError("value_at_p must be an integer or null")
        if not all(isinstance(x, int) for x in (k, c, gv)):
            raise ParseError("character fields must be integers")
        try:
            return cls(p, N, vp, k, c, gv)
        except ValidationError as exc:
            raise ValidationError("invalid character: %s" % exc) from exc


def trivial_character(p, N):
    return Character(p, N, value_at_p=1)


def cyclotomic_character(p, N):
    """a -> a on units, with the convention chi(p) = 1."""
    return Character(p, N, value_at_p=1, chi_power=1)


def unramified_character(p, N, value_at_p):
    return Character(p, N, value_at_p=value_at_p)


def finite_order_character(p, N, cond_exp, index=1):
    """A finite-order character of conductor p^cond_exp: the primitive root is
    sent to a root of unity of maximal order, raised to ``index``."""
    pn = p ** N
    if cond_exp == 0:
        return Character(p, N)
    big = primitive_root(p, N)
    full = p ** (N - 1) * (p - 1)
    order = p ** (cond_exp - 1) * (p - 1)
    zeta = pow(big, full // order, pn)
    return Character(p, N, None, 0, cond_exp, pow(zeta, index, pn))
