"""Measures on the units of Z_p through the Amice dictionary.

A measure is stored as its transform in the psi-kernel of the Laurent ring:
the point mass at the unit a is (1+X)^a.  Everything downstream produces
finite group-ring combinations, so the transform is kept as an exact
PowerSum; convolution, involution and twists are computed by the limit
formulas on the trivial module and therefore agree with the group-algebra
operations on the nose.
"""

from .characters import trivial_character
from .errors import NotPsiZero, ParseError, ValidationError
from .laurent import Precision
from .modules import ModuleElement, make_rank_one
from .powersum import PowerSum


def _trivial_module(prec):
    return make_rank_one(prec, trivial_character(prec.p, prec.N))


class Measure:
    """A measure on Z_p^*, held as its Amice transform in the (1+X)-power basis."""

    __slots__ = ("prec", "amice")

    def __init__(self, prec, amice):
        if not isinstance(amice, PowerSum):
            raise ValidationError("the Amice transform must be a power sum")
        if not amice.has_unit_support():
            raise NotPsiZero("the Amice transform of a unit-group measure needs psi = 0")
        self.prec = prec
        self.amice = amice

    @classmethod
    def zero(cls, prec):
        return cls(prec, PowerSum.zero(prec))

    @classmethod
    def unit(cls, prec):
        return cls(prec, PowerSum.group_element(prec, 1))

    @classmethod
    def from_group_element(cls, prec, a, c=1):
        if a % prec.p == 0:
            raise ValidationError("group elements are units of Z_p")
        return cls(prec, PowerSum.group_element(prec, a, c))

    # ---- linear structure ----

    def add(self, other):
        return Measure(self.prec, self.amice.add(other.amice))

    def sub(self, other):
        return Measure(self.prec, self.amice.sub(other.amice))

    def neg(self):
        return Measure(self.prec, self.amice.neg())

    def scalar_mul(self, c):
        return Measure(self.prec, self.amice.scalar_mul(c))

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.amice == other.amice

    __hash__ = None

    def __repr__(self):
        return "Measure(%r)" % (self.amice,)

    def is_zero(self):
        return self.amice.is_zero()

    # ---- algebra structure ----

    def convolve(self, other, n_max=None):
        """Product of measures, via the two-variable convolution limit with
        ring multiplication; on group elements [a]*[b] = [ab]."""
        from .operators import convolution, multiplication_bilinear

        triv = _trivial_module(self.prec)
        x1 = ModuleElement(triv, (self.amice,))
        x2 = ModuleElement(triv, (other.amice,))
        out = convolution(
            triv, x1, triv, x2, multiplication_bilinear(triv), triv,
            n_max=n_max, checked=False,
        )
        return Measure(self.prec, out.coords[0])

    def group_scale(self, c):
        """Pushforward under x -> cx on the group; multiplication by [sigma_c]."""
        if c % self.prec.p == 0:
            raise ValidationError("group scaling needs a unit")
        return Measure(self.prec, self.amice.scale_exponents(c))

    def involute(self, n_max=None):
        """Pushforward under inversion on the group, by the limit formula
        sum_i (1+X)^{1/i} phi^n psi^n ((1+X)^{-i} amice)."""
        from .operators import _Decomposition, _group, _stabilized, default_level_cap

        prec = self.prec
        if n_max is None:
            n_max = default_level_cap(prec)
        triv = _trivial_module(prec)
        dec = _Decomposition(triv, ModuleElement(triv, (self.amice,)))
        mod_u = prec.unit_modulus

        def partials():
            while True:
                dec.deepen()
                acc = triv.zero()
                for i, leaf in dec.leaves.items():
                    term = leaf
                    for _ in range(dec.level):
                        term = triv.phi(term)
                    term = term.ring_mul(_group(prec, pow(i, -1, mod_u)))
                    acc = acc.add(term)
                yield acc

        out = _stabilized(partials(), prec, n_max, "involution limit")
        return Measure(prec, out.coords[0])

    def g_twist(self, delta, n_max=None):
        """Masses multiplied by delta^{-1}: m_{delta^{-1}} on the transform."""
        from .operators import m_delta

        triv = _trivial_module(self.prec)
        x = ModuleElement(triv, (self.amice,))
        out = m_delta(triv, x, delta.inv(), n_max=n_max, checked=False)
        return Measure(self.prec, out.coords[0])

    # ---- readouts ----

    def coset_mass(self, a, n):
        """Mass of the coset a + p^n Z_p."""
        q = self.prec.p ** n
        total = 0
        for b, c in self.amice.terms.items():
            if (b - a) % q == 0:
                total += c
        return total % self.prec.pn

    def specialize(self, delta, n_max=None):
        """The character sum sending [a] to delta(a)^{-1}: the value at X = 0
        of m_{delta^{-1}} applied to the transform."""
        from .operators import m_delta

        triv = _trivial_module(self.prec)
        x = ModuleElement(triv, (self.amice,))
        out = m_delta(triv, x, delta.inv(), n_max=n_max, checked=False)
        return sum(out.coords[0].terms.values()) % self.prec.pn

    def act_on(self, module, x, n_max=None, checked=True):
        """Riemann-sum action on the psi-kernel of a module.

        Levels refine the coset partition; each coset present in the measure
        contributes its mass times sigma at a representative chosen inside
        the support, so the sums stabilize as soon as the partition separates
        the support points.
        """
        from .modules import check_psi_zero
        from .operators import _stabilized, default_level_cap

        prec = self.prec
        if checked:
            check_psi_zero(module, x)
        if n_max is None:
            n_max = default_level_cap(prec)

        def partials():
            n = 0
            while True:
                n += 1
                q = prec.p ** n
                buckets = {}
                for b, c in self.amice.terms.items():
                    key = b % q
                    rep, mass = buckets.get(key, (b, 0))
                    buckets[key] = (min(rep, b), mass + c)
                acc = module.zero()
                for rep, mass in buckets.values():
                    acc = acc.add(module.sigma(x, rep).scalar_mul(mass))
                yield acc

        return _stabilized(partials(), prec, n_max, "measure action")

    # ---- serialization ----

    def to_json(self):
        # canonical form: group exponents reduced modulo the representative
        # modulus, the resolution at which the window certifies anything
        mod = self.prec.unit_modulus
        reduced = {}
        for e, c in self.amice.terms.items():
            k = e % mod
            reduced[k] = (reduced.get(k, 0) + c) % self.prec.pn
        return PowerSum(self.prec, reduced).to_json()

    @classmethod
    def from_json(cls, prec, data):
        amice = PowerSum.from_json(prec, data)
        try:
            return cls(prec, amice)
        except NotPsiZero as exc:
            raise ParseError("serialized measure is not psi-null: %s" % exc) from exc
