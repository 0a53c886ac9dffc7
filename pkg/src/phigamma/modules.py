"""Etale (phi, Gamma)-modules of rank one and two over the Laurent-series ring.

A module is presented by characters: rank one is E(delta) with phi acting by
delta(p) on the basis vector, and rank two is an extension of E(delta2) by
E(delta1) with an off-diagonal polynomial U in the Frobenius matrix.  The
Gamma-action off-diagonal entries are solved from the commutation relation
G(a) sigma_a(P) = P phi(G(a)) by a contraction iteration and cached.

Elements carry coordinates either in the exact group-ring picture
(PowerSum) or the windowed Laurent picture (LaurentElement); the former is
required by the level-indexed limit operators, the latter by residues.
"""

from .characters import Character, cyclotomic_character
from .errors import (
    CocycleDivergence,
    NotEtale,
    NotPsiOne,
    NotPsiZero,
    RankMismatch,
    ValidationError,
)
from .laurent import LaurentElement
from .powersum import PowerSum

_COCYCLE_CAP = 64


class PhiGammaModule:
    """Rank-one or triangular rank-two module, determined by its characters
    and the off-diagonal Frobenius entry."""

    __slots__ = ("prec", "rank", "characters", "u_poly", "u_sum", "det_char", "_cocycle_cache")

    def __init__(self, prec, characters, u_poly=None):
        self.prec = prec
        self.rank = len(characters)
        if self.rank not in (1, 2):
            raise RankMismatch("only rank one and rank two modules are supported")
        for d in characters:
            if (d.p, d.N) != (prec.p, prec.N):
                raise ValidationError("character precision does not match the module")
            if d.frobenius_value() % prec.p == 0:
                raise NotEtale("Frobenius eigenvalue is not a unit")
        self.characters = tuple(characters)
        if self.rank == 1:
            if u_poly is not None and u_poly.coeffs:
                raise ValidationError("rank-one modules have no off-diagonal entry")
            u_poly = None
        if u_poly is not None and not u_poly.coeffs:
            u_poly = None
        if u_poly is not None:
            if not u_poly.is_exact():
                raise ValidationError("off-diagonal entry must be an exact polynomial")
            if any(e < 0 for e in u_poly.coeffs):
                raise ValidationError("off-diagonal entry must have nonnegative exponents")
        self.u_poly = u_poly
        self.u_sum = None if u_poly is None else PowerSum.from_polynomial(u_poly)
        det = characters[0]
        for d in characters[1:]:
            det = det.mul(d)
        self.det_char = det
        self._cocycle_cache = {}

    # ---- structural helpers ----

    def __eq__(self, other):
        if not isinstance(other, PhiGammaModule):
            return NotImplemented
        if (self.prec, self.characters) != (other.prec, other.characters):
            return False
        ua = self.u_poly.coeffs if self.u_poly is not None else {}
        ub = other.u_poly.coeffs if other.u_poly is not None else {}
        return ua == ub

    __hash__ = None

    def __repr__(self):
        return "PhiGammaModule(rank=%d, p=%d, N=%d)" % (self.rank, self.prec.p, self.prec.N)

    def zero(self, flavor=PowerSum):
        z = flavor.zero(self.prec)
        return ModuleElement(self, (z,) * self.rank)

    def basis(self, i, flavor=PowerSum):
        coords = [flavor.zero(self.prec) for _ in range(self.rank)]
        coords[i] = flavor.one(self.prec)
        return ModuleElement(self, tuple(coords))

    def _u_as(self, flavor):
        if self.u_sum is None:
            return None
        return self.u_poly if flavor is LaurentElement else self.u_sum

    # ---- Gamma-action off-diagonal entry ----

    def cocycle_entry(self, a):
        """The (1,2) entry of the Gamma-matrix at the unit a, as a PowerSum.

        Solved from C = (d1(p) phi(C) + d2(a) U - d1(a) sigma_a(U)) / d2(p),
        which is a contraction whenever U has positive valuation.
        """
        if self.rank != 2 or self.u_sum is None:
            return None
        key = a % self.prec.unit_modulus
        if key in self._cocycle_cache:
            return self._cocycle_cache[key]
        d1, d2 = self.characters
        pn = self.prec.pn
        c1 = d1.frobenius_value()
        c2inv = pow(d2.frobenius_value(), -1, pn)
        base = self.u_sum.scalar_mul(d2.unit_value(a)).sub(
            self.u_sum.sigma(a).scalar_mul(d1.unit_value(a))
        )
        cur = PowerSum.zero(self.prec)
        cur_x = cur.to_laurent()
        for _ in range(_COCYCLE_CAP):
            nxt = base.add(cur.frobenius().scalar_mul(c1)).scalar_mul(c2inv)
            nxt_x = nxt.to_laurent()
            if nxt_x == cur_x:
                self._cocycle_cache[key] = nxt
                return nxt
            cur, cur_x = nxt, nxt_x
        raise CocycleDivergence("cocycle iteration did not stabilize at a=%d" % a)

    def gamma_offdiag_as(self, a, flavor):
        c = self.cocycle_entry(a)
        if c is None:
            return None
        return c.to_laurent() if flavor is LaurentElement else c

    # ---- module maps ----

    def phi(self, x):
        self._own(x)
        coords = x.coords
        out = [c.frobenius() for c in coords]
        if self.rank == 1:
            d = self.characters[0]
            return ModuleElement(self, (out[0].scalar_mul(d.frobenius_value()),))
        d1, d2 = self.characters
        a = out[0].scalar_mul(d1.frobenius_value())
        u = self._u_as(type(coords[0]))
        if u is not None:
            a = a.add(u.mul(out[1]))
        b = out[1].scalar_mul(d2.frobenius_value())
        return ModuleElement(self, (a, b))

    def psi(self, x):
        self._own(x)
        coords = x.coords
        pn = self.prec.pn
        if self.rank == 1:
            d = self.characters[0]
            inv = pow(d.frobenius_value(), -1, pn)
            return ModuleElement(self, (coords[0].scalar_mul(inv).psi(),))
        d1, d2 = self.characters
        i1 = pow(d1.frobenius_value(), -1, pn)
        i2 = pow(d2.frobenius_value(), -1, pn)
        u = self._u_as(type(coords[0]))
        top = coords[0].scalar_mul(i1)
        if u is not None:
            top = top.sub(u.mul(coords[1]).scalar_mul(i1 * i2))
        return ModuleElement(self, (top.psi(), coords[1].scalar_mul(i2).psi()))

    def sigma(self, x, a):
        self._own(x)
        coords = x.coords
        moved = [c.sigma(a) for c in coords]
        if self.rank == 1:
            d = self.characters[0]
            return ModuleElement(self, (moved[0].scalar_mul(d.unit_value(a)),))
        d1, d2 = self.characters
        top = moved[0].scalar_mul(d1.unit_value(a))
        c = self.gamma_offdiag_as(a, type(coords[0]))
        if c is not None:
            top = top.add(c.mul(moved[1]))
        return ModuleElement(self, (top, moved[1].scalar_mul(d2.unit_value(a))))

    def _own(self, x):
        if x.module is not self and x.module != self:
            raise RankMismatch("element does not belong to this module")


class ModuleElement:
    """Coordinates of a module element in the presentation basis."""

    __slots__ = ("module", "coords")

    def __init__(self, module, coords):
        if len(coords) != module.rank:
            raise RankMismatch("coordinate count does not match the rank")
        self.module = module
        self.coords = tuple(coords)

    def add(self, other):
        self._same(other)
        return ModuleElement(self.module, tuple(a.add(b) for a, b in zip(self.coords, other.coords)))

    def sub(self, other):
        self._same(other)
        return ModuleElement(self.module, tuple(a.sub(b) for a, b in zip(self.coords, other.coords)))

    def neg(self):
        return ModuleElement(self.module, tuple(c.neg() for c in self.coords))

    def scalar_mul(self, c):
        return ModuleElement(self.module, tuple(v.scalar_mul(c) for v in self.coords))

    def ring_mul(self, f):
        return ModuleElement(self.module, tuple(v.mul(f) for v in self.coords))

    def _same(self, other):
        if self.module != other.module:
            raise RankMismatch("elements of different modules")

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        self._same(other)
        return all(a == b for a, b in zip(self.coords, other.coords))

    __hash__ = None

    def __repr__(self):
        return "ModuleElement(%r)" % (list(self.coords),)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def to_windowed(self):
        """Expand PowerSum coordinates into the windowed Laurent picture."""
        if isinstance(self.coords[0], LaurentElement):
            return self
        return ModuleElement(self.module, tuple(c.to_laurent() for c in self.coords))


# ---- constructors and named operations ----


def make_rank_one(prec, delta):
    return PhiGammaModule(prec, (delta,))


def build_triangular(prec, delta1, delta2, u_poly=None):
    return PhiGammaModule(prec, (delta1, delta2), u_poly)


def twist(module, delta):
    """The module tensored with the rank-one piece attached to delta."""
    chars = tuple(d.mul(delta) for d in module.characters)
    u = module.u_poly
    if u is not None:
        u = u.scalar_mul(delta.frobenius_value())
    out = PhiGammaModule(module.prec, chars, u)
    return out


def twist_element(x, twisted):
    """Reinterpret coordinates of x inside the twisted module (x tensor e_delta)."""
    return ModuleElement(twisted, x.coords)


def module_apply(module, x, op, a=None):
    if op == "phi":
        return module.phi(x)
    if op == "psi":
        return module.psi(x)
    if op == "sigma":
        if a is None:
            raise ValidationError("sigma needs a group element")
        return module.sigma(x, a)
    raise ValidationError("unknown module operation %r" % (op,))


def dual_module(module):
    """The dual, with the basis ordered so that the result stays upper triangular."""
    if module.rank == 1:
        return PhiGammaModule(module.prec, (module.characters[0].inv(),))
    d1, d2 = module.characters
    u = module.u_poly
    if u is not None:
        pn = module.prec.pn
        scale = -pow(d1.frobenius_value() * d2.frobenius_value(), -1, pn)
        u = u.scalar_mul(scale)
    return PhiGammaModule(module.prec, (d2.inv(), d1.inv()), u)


def star_module(module):
    """Tate dual: the dual twisted by the cyclotomic character (chi(p) = 1)."""
    chi = cyclotomic_character(module.prec.p, module.prec.N)
    return twist(dual_module(module), chi)


def rank2_dual_embed(module, x, star=None):
    """Send x to the Tate dual via y -> (y wedge x), written in the dual basis
    ordered as (second dual vector, first dual vector).

    With x = (u, v) the image has coordinates (-u, v).
    """
    if module.rank != 2:
        raise RankMismatch("the wedge embedding needs a rank-two module")
    if star is None:
        star = star_module(module)
    u, v = x.coords
    return ModuleElement(star, (u.neg(), v))


def is_psi_fixed(module, x):
    return module.psi(x) == x


def check_psi_fixed(module, x):
    if not is_psi_fixed(module, x):
        raise NotPsiOne("element is not fixed by psi within the window")
    return x


def check_psi_zero(module, x):
    y = module.psi(x)
    windowed = y.to_windowed()
    if not windowed.is_zero():
        raise NotPsiZero("psi does not kill this element within the window")
    return x


def det_module(module):
    """Rank-one module on the top exterior power, with basis e1 wedge e2."""
    if module.rank == 1:
        return module
    return PhiGammaModule(module.prec, (module.det_char,))
