"""Two-term cochain complexes for a (phi, Gamma)-module at odd p.

The complex in a fixed flavor is

    D --(gamma - 1, theta - 1)--> D (+) D --(theta - 1, 1 - gamma)--> D

with theta = phi or theta = psi and gamma the fixed topological generator
acting as sigma_{1+p}.  Cup products follow the two-generator Koszul rule:
crossing the gamma-leg of the first factor applies gamma to the second,
crossing the phi-leg applies phi.
"""

from .errors import DegreeOverflow, NotPsiOne, RankMismatch, ValidationError
from .modules import ModuleElement, check_psi_fixed, make_rank_one, twist, twist_element

PHI_GAMMA = "phi_gamma"
PSI_GAMMA = "psi_gamma"


def gamma_unit(prec):
    """The fixed generator of Gamma: chi(gamma) = 1 + p."""
    return 1 + prec.p


def log_scalar(prec):
    """(p - 1)/p times log(1 + p), summed in Z/p^N.

    The k-th term of the logarithm contributes p^{k-1}/k after dividing by
    p; every term is p-integral and the tail past k with
    k - 1 - v_p(k) >= N vanishes.
    """
    p, n = prec.p, prec.N
    pn = prec.pn
    total = 0
    k = 1
    while k - 1 - _val(k, p) < n:
        u, v = k, 0
        while u % p == 0:
            u //= p
            v += 1
        term = pow(p, k - 1 - v, pn) * pow(u, -1, pn)
        total += term if k % 2 == 1 else -term
        k += 1
    return (p - 1) * total % pn


def _val(k, p):
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


class Cochain:
    """A cochain of degree 0, 1 or 2 in one of the two flavors."""

    __slots__ = ("module", "degree", "entries", "flavor")

    def __init__(self, module, degree, entries, flavor):
        if degree not in (0, 1, 2):
            raise ValidationError("degree must be 0, 1 or 2")
        if flavor not in (PHI_GAMMA, PSI_GAMMA):
            raise ValidationError("unknown flavor %r" % (flavor,))
        entries = tuple(entries)
        if len(entries) != (2 if degree == 1 else 1):
            raise ValidationError("wrong number of entries for degree %d" % degree)
        for e in entries:
            if e.module != module:
                raise ValidationError("entries must belong to the parent module")
        self.module = module
        self.degree = degree
        self.entries = entries
        self.flavor = flavor

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if (self.degree, self.flavor) != (other.degree, other.flavor):
            return False
        return all(
            a.to_windowed() == b.to_windowed()
            for a, b in zip(self.entries, other.entries)
        )

    __hash__ = None

    def __repr__(self):
        return "Cochain(degree=%d, flavor=%s)" % (self.degree, self.flavor)

    def add(self, other):
        if (self.degree, self.flavor) != (other.degree, other.flavor):
            raise ValidationError("cochains of different shapes")
        return Cochain(
            self.module,
            self.degree,
            tuple(a.add(b) for a, b in zip(self.entries, other.entries)),
            self.flavor,
        )

    def scalar_mul(self, c):
        return Cochain(
            self.module, self.degree, tuple(e.scalar_mul(c) for e in self.entries), self.flavor
        )

    def is_zero(self):
        return all(e.to_windowed().is_zero() for e in self.entries)

    def to_json(self):
        return {
            "degree": self.degree,
            "flavor": self.flavor,
            "entries": [[c.to_json() for c in e.coords] for e in self.entries],
        }


def _theta(module, x, flavor):
    return module.phi(x) if flavor == PHI_GAMMA else module.psi(x)


def _gamma(module, x):
    return module.sigma(x, gamma_unit(module.prec))


def differential(c):
    """d0(x) = ((gamma-1)x, (theta-1)x); d1(a, b) = (theta-1)a - (gamma-1)b."""
    module = c.module
    if c.degree == 0:
        (x,) = c.entries
        return Cochain(
            module,
            1,
            (_gamma(module, x).sub(x), _theta(module, x, c.flavor).sub(x)),
            c.flavor,
        )
    if c.degree == 1:
        a, b = c.entries
        out = _theta(module, a, c.flavor).sub(a).sub(_gamma(module, b).sub(b))
        return Cochain(module, 2, (out,), c.flavor)
    raise DegreeOverflow("no differential out of degree 2")


def psi_comparison(c):
    """The comparison map between the flavors: (id, id (+) -psi, -psi)."""
    if c.flavor != PHI_GAMMA:
        raise ValidationError("the comparison map starts from the phi flavor")
    module = c.module
    if c.degree == 0:
        return Cochain(module, 0, c.entries, PSI_GAMMA)
    if c.degree == 1:
        a, b = c.entries
        return Cochain(module, 1, (a, module.psi(b).neg()), PSI_GAMMA)
    (x,) = c.entries
    return Cochain(module, 2, (module.psi(x).neg(),), PSI_GAMMA)


def tensor_module(m1, m2):
    """Tensor product of two rank-one modules."""
    if m1.rank != 1 or m2.rank != 1:
        raise RankMismatch("cup products are provided for rank-one factors")
    if m1.prec != m2.prec:
        raise ValidationError("tensor factors at different precisions")
    return make_rank_one(m1.prec, m1.characters[0].mul(m2.characters[0]))


def _tensor(target, x, y):
    return ModuleElement(target, (x.coords[0].mul(y.coords[0]),))


def cup(c1, c2):
    """Cup product into the tensor module, by the two-generator Koszul rule."""
    if c1.flavor != c2.flavor:
        raise ValidationError("cup needs cochains of the same flavor")
    if c1.degree + c2.degree > 2:
        raise DegreeOverflow("cup lands above degree 2")
    m1, m2 = c1.module, c2.module
    target = tensor_module(m1, m2)
    flavor = c1.flavor
    if c1.degree == 0:
        (x,) = c1.entries
        entries = tuple(_tensor(target, x, e) for e in c2.entries)
        return Cochain(target, c2.degree, entries, flavor)
    if c2.degree == 0:
        (y,) = c2.entries
        if c1.degree == 1:
            a, b = c1.entries
            entries = (
                _tensor(target, a, _gamma(m2, y)),
                _tensor(target, b, _theta(m2, y, flavor)),
            )
        else:
            (a,) = c1.entries
            entries = (_tensor(target, a, _gamma(m2, _theta(m2, y, flavor))),)
        return Cochain(target, c1.degree, entries, flavor)
    # deg 1 x deg 1: [x1, y1] cup [x2, y2] = x1 (x) gamma(y2) - y1 (x) phi(x2)
    x1, y1 = c1.entries
    x2, y2 = c2.entries
    out = _tensor(target, x1, _gamma(m2, y2)).sub(
        _tensor(target, y1, _theta(m2, x2, flavor))
    )
    return Cochain(target, 2, (out,), flavor)


def iota_specialize(module, x, delta):
    """The degree-one cocycle ((p-1)/p log(chi(gamma)) (x tensor e_delta), 0)
    in the psi flavor of the twisted module, for x fixed by psi."""
    if delta.frobenius_value() != 1:
        raise ValidationError("the specialization twist must be trivial at p")
    check_psi_fixed(module, x)
    tw = twist(module, delta)
    moved = twist_element(x, tw).scalar_mul(log_scalar(module.prec))
    return Cochain(tw, 1, (moved, tw.zero(type(x.coords[0]))), PSI_GAMMA)
