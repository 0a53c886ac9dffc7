"""Level-indexed limit operators on the psi-kernel of a module.

All operators here are partial sums over units modulo p^n, followed by a
stabilization check: two consecutive levels must agree in the windowed
expansion.  The inputs must live in the exact group-ring coordinates
(PowerSum), because a truncated series cannot certify anything after the
deep phi^n psi^n composites these formulas use.

The optional ``zeta`` argument recomputes an operator after the change of
variables X -> (1+X)^a - 1: every (1+X)-power appearing in the defining
formula is raised to the a-th power, while phi, psi and the sigma-indices
are untouched.
"""

from .errors import LimitNotStabilized, NotPsiZero, ValidationError
from .laurent import LaurentElement
from .modules import ModuleElement, check_psi_zero, det_module
from .powersum import PowerSum


def _group(prec, e):
    return PowerSum.group_element(prec, e)


def default_level_cap(prec):
    return prec.unit_exponent + 3


def _require_power_sum(x):
    if not isinstance(x.coords[0], PowerSum):
        raise ValidationError("limit operators need exact group-ring coordinates")


class _Decomposition:
    """Incrementally deepened coset decomposition x = sum_i (1+X)^i phi^n(x_i).

    Level n leaves are indexed by units i in [0, p^n); the solve per level is
    x_i = psi(shifted x), pruning children that vanish identically.
    """

    def __init__(self, module, x):
        self.module = module
        self.prec = module.prec
        self.level = 0
        self.leaves = {0: x}

    def deepen(self):
        p = self.prec.p
        step = p ** self.level
        out = {}
        for i, leaf in self.leaves.items():
            for j in range(p):
                child = self.module.psi(leaf.ring_mul(_group(self.prec, -j)))
                if not any(c.terms for c in child.coords):
                    continue
                if self.level == 0 and j == 0:
                    # index 0 is outside the unit cosets; psi of the input
                    # may survive as terms that only cancel in the window
                    if not child.to_windowed().is_zero():
                        raise NotPsiZero("decomposed element is not psi-null in the window")
                    continue
                out[i + j * step] = child
        self.level += 1
        self.leaves = out


def _stabilized(partials, prec, n_max, what):
    # agreement of consecutive levels certifies the limit only once the
    # level resolves units modulo the group-representative modulus: below
    # that depth a vanishing base-p digit makes partial sums coincide while
    # the unit-valued factors are still read off too few digits
    n_min = prec.unit_exponent
    prev_w = None
    for n, cur in enumerate(partials, start=1):
        if n < n_min:
            continue
        cur_w = cur.to_windowed()
        if prev_w is not None and cur_w == prev_w:
            return cur
        prev_w = cur_w
        if n >= n_max:
            break
    raise LimitNotStabilized("%s did not stabilize below level %d" % (what, n_max))


def _zeta_index(i_std, pn_level, zeta, prec):
    """The formula index i with zeta * i = i_std mod p^n, and the exact
    leftover (i_std - zeta*i) / p^n absorbed by the group-ring factor."""
    if zeta == 1:
        return i_std, 0
    inv = pow(zeta, -1, max(pn_level, prec.unit_modulus))
    i = (inv * i_std) % pn_level
    t, r = divmod(i_std - zeta * i, pn_level)
    if r:
        raise ValidationError("zeta index bookkeeping failed")
    return i, t


def m_delta(module, x, delta, n_max=None, zeta=1, checked=True):
    """Multiplication by delta of the Amice transform: the limit of
    sum_i delta(i) (1+X)^i phi^n psi^n ((1+X)^{-i} x) over units i mod p^n."""
    _require_power_sum(x)
    if checked:
        check_psi_zero(module, x)
    prec = module.prec
    if n_max is None:
        n_max = default_level_cap(prec)
    dec = _Decomposition(module, x)

    def partials():
        while True:
            dec.deepen()
            pn_level = prec.p ** dec.level
            acc = module.zero()
            for i_std, leaf in dec.leaves.items():
                i, t = _zeta_index(i_std, pn_level, zeta, prec)
                term = leaf
                for _ in range(dec.level):
                    term = module.phi(term)
                term = term.ring_mul(_group(prec, i_std))
                acc = acc.add(term.scalar_mul(delta.unit_value(i)))
            yield acc

    return _stabilized(partials(), prec, n_max, "m_delta limit")


def w_star(module, x, n_max=None, zeta=1, checked=True):
    """The involution sending (1+X)^b to (1+X)^{1/b}: the limit of
    sum_i (1+X)^{1/i} sigma_{-1/i^2} phi^n psi^n ((1+X)^{-i} x)."""
    _require_power_sum(x)
    if checked:
        check_psi_zero(module, x)
    prec = module.prec
    if n_max is None:
        n_max = default_level_cap(prec)
    mod_u = prec.unit_modulus
    dec = _Decomposition(module, x)

    def partials():
        while True:
            dec.deepen()
            pn_level = prec.p ** dec.level
            acc = module.zero()
            for i_std, leaf in dec.leaves.items():
                i, t = _zeta_index(i_std, pn_level, zeta, prec)
                inv_i = pow(i, -1, mod_u)
                term = leaf.ring_mul(_group(prec, t))
                for _ in range(dec.level):
                    term = module.phi(term)
                term = module.sigma(term, -inv_i * inv_i)
                term = term.ring_mul(_group(prec, zeta * inv_i))
                acc = acc.add(term)
            yield acc

    return _stabilized(partials(), prec, n_max, "w_star limit")


def w_delta(module, x, delta, n_max=None, zeta=1, checked=True):
    """w_delta = m_{delta^{-1}} after w_star."""
    y = w_star(module, x, n_max=n_max, zeta=zeta, checked=checked)
    return m_delta(module, y, delta.inv(), n_max=n_max, zeta=zeta, checked=False)


def convolution(mod1, x1, mod2, x2, bilinear, target, n_max=None, zeta=1, checked=True):
    """Two-variable convolution limit along a bilinear map into ``target``:

        sum_{i1, i2} (1+X)^{i1 i2} phi^n( M( sigma_{i2} psi^n((1+X)^{-i1} x1),
                                             sigma_{i1} psi^n((1+X)^{-i2} x2) ) )

    with both slots cut off at the same level n.  ``bilinear`` takes the two
    leaf elements and returns an element of ``target``.
    """
    _require_power_sum(x1)
    _require_power_sum(x2)
    if mod1.prec != mod2.prec:
        raise ValidationError("convolution operands at different precisions")
    if checked:
        check_psi_zero(mod1, x1)
        check_psi_zero(mod2, x2)
    prec = mod1.prec
    if n_max is None:
        n_max = default_level_cap(prec)
    dec1 = _Decomposition(mod1, x1)
    dec2 = _Decomposition(mod2, x2)

    def partials():
        while True:
            dec1.deepen()
            dec2.deepen()
            pn_level = prec.p ** dec1.level
            acc = target.zero()
            for i1_std, l1 in dec1.leaves.items():
                i1, t1 = _zeta_index(i1_std, pn_level, zeta, prec)
                for i2_std, l2 in dec2.leaves.items():
                    i2, t2 = _zeta_index(i2_std, pn_level, zeta, prec)
                    y1 = mod1.sigma(l1.ring_mul(_group(prec, t1)), i2)
                    y2 = mod2.sigma(l2.ring_mul(_group(prec, t2)), i1)
                    term = bilinear(y1, y2)
                    for _ in range(dec1.level):
                        term = target.phi(term)
                    term = term.ring_mul(_group(prec, zeta * i1 * i2))
                    acc = acc.add(term)
            yield acc

    return _stabilized(partials(), prec, n_max, "convolution limit")


def multiplication_bilinear(target):
    def bilinear(y1, y2):
        return ModuleElement(target, (y1.coords[0].mul(y2.coords[0]),))

    return bilinear


def wedge_bilinear(target):
    def bilinear(y1, y2):
        a0, a1 = y1.coords
        b0, b1 = y2.coords
        return ModuleElement(target, (a0.mul(b1).sub(a1.mul(b0)),))

    return bilinear


def wedge_pair(module, x, y, n_max=None, zeta=1, checked=True):
    """Convolution along the wedge into the determinant line; antisymmetric
    pairing D^{psi=0} x D^{psi=0} -> (det D)^{psi=0}."""
    if module.rank != 2:
        raise ValidationError("the wedge pairing needs a rank-two module")
    target = det_module(module)
    return convolution(
        module, x, module, y, wedge_bilinear(target), target,
        n_max=n_max, zeta=zeta, checked=checked,
    )


def zeta_substitute(x, a):
    """Rewrite stored series after the change of variables X -> (1+X)^a - 1;
    on group-ring coordinates this scales every exponent by a."""
    if isinstance(x, PowerSum):
        return x.scale_exponents(a)
    if isinstance(x, ModuleElement):
        return ModuleElement(x.module, tuple(c.scale_exponents(a) for c in x.coords))
    raise ValidationError("cannot substitute on %r" % type(x))
