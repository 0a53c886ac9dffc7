"""Batch front end: module descriptors, single-operation evaluation, and
named identity suites with seeded random inputs.

Reports are deterministic for a fixed configuration and seed: the JSON
payload contains no timestamps, every collection is emitted in sorted
order, and wall-clock timing goes to stderr only.
"""

import json
import random
import sys
import time

import click

from .characters import (
    Character,
    cyclotomic_character,
    finite_order_character,
    trivial_character,
    unramified_character,
)
from .errors import (
    ConfigInvalid,
    ParseError,
    PhiGammaError,
    UnknownSuite,
    ValidationError,
)
from .laurent import LaurentElement, Precision
from .measures import Measure
from .modules import (
    ModuleElement,
    build_triangular,
    make_rank_one,
)
from .operators import (
    convolution,
    m_delta,
    multiplication_bilinear,
    w_delta,
    w_star,
    wedge_pair,
)
from .pairings import (
    delta_d,
    duality_check,
    epsilon_rank_one,
    epsilon_rank_two,
    iwasawa_pair,
    trianguline_factorization_check,
    trianguline_inputs,
    twisted_pair,
)
from .powersum import PowerSum

REPORT_SCHEMA = "phigamma-report/1"
MODULE_SCHEMA = "phigamma-module/1"

SUITES = (
    "psi_phi",
    "m_delta_laws",
    "w_laws",
    "convolution_laws",
    "d_equals_m_chi",
    "iwasawa_pairing",
    "duality",
    "trianguline",
    "epsilon_zeta_change",
)


# ---- serialization helpers ----


def _value_json(v):
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Measure):
        return v.to_json()
    if isinstance(v, ModuleElement):
        return {"coords": [c.to_json() for c in v.coords]}
    if isinstance(v, (PowerSum, LaurentElement)):
        return v.to_json()
    raise ValidationError("cannot serialize %r" % type(v))


def _dump(data):
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# ---- suite machinery ----


class SuiteRun:
    def __init__(self, suite, prec, seed, trials, n_max):
        if trials < 1:
            raise ConfigInvalid("trials must be at least 1")
        self.suite = suite
        self.prec = prec
        self.rng = random.Random(seed)
        self.seed = seed
        self.trials = trials
        self.n_max = n_max
        self.checks = []

    def record(self, check, params, ok, lhs, rhs):
        prec = self.prec
        self.checks.append(
            {
                "check": check,
                "params": params,
                "pass": bool(ok),
                "lhs": _value_json(lhs),
                "rhs": _value_json(rhs),
                "precision": {"p": prec.p, "N": prec.N, "window": [prec.lo, prec.hi]},
            }
        )

    def compare(self, check, params, lhs, rhs):
        if hasattr(lhs, "to_windowed"):
            ok = lhs.to_windowed() == rhs.to_windowed()
        else:
            ok = lhs == rhs
        self.record(check, params, ok, lhs, rhs)

    def report(self):
        self.checks.sort(key=lambda c: (c["check"], _dump(c["params"])))
        passed = sum(1 for c in self.checks if c["pass"])
        return {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "params": {
                "p": self.prec.p,
                "N": self.prec.N,
                "window": [self.prec.lo, self.prec.hi],
                "seed": self.seed,
                "trials": self.trials,
                "n_max": self.n_max,
            },
            "checks": self.checks,
            "summary": {
                "total": len(self.checks),
                "passed": passed,
                "failed": len(self.checks) - passed,
            },
        }

    # ---- seeded sample builders ----

    def unit(self, bound=30):
        p = self.prec.p
        while True:
            a = self.rng.randint(-bound, bound)
            if a % p != 0 and a != 0:
                return a

    def character(self, gamma_only=False):
        p, n = self.prec.p, self.prec.N
        out = cyclotomic_character(p, n).power(self.rng.randint(-2, 2))
        idx = self.rng.randint(0, p - 2)
        if idx:
            out = out.mul(finite_order_character(p, n, 1, index=idx))
        if not gamma_only:
            out = out.mul(unramified_character(p, n, self.unit(20)))
        return out

    def psi_zero_sum(self, size=3):
        terms = {}
        for _ in range(size):
            terms[self.unit(20)] = self.rng.randint(1, self.prec.pn - 1)
        return PowerSum(self.prec, terms)

    def measure(self, size=3):
        return Measure(self.prec, self.psi_zero_sum(size))

    def rank_two(self, u_exp=None):
        d1 = self.character()
        d2 = self.character()
        u = None if u_exp is None else LaurentElement.monomial(self.prec, u_exp)
        return build_triangular(self.prec, d1, d2, u)

    def module_vector(self, module, translates=1):
        gens = trianguline_inputs(module)
        acc = module.zero()
        for g in gens:
            for _ in range(translates):
                acc = acc.add(
                    module.sigma(g, self.unit(10)).scalar_mul(
                        self.rng.randint(1, self.prec.pn - 1)
                    )
                )
        return acc


def _trivial(prec):
    return make_rank_one(prec, trivial_character(prec.p, prec.N))


def _triv_elt(prec, ps):
    return ModuleElement(_trivial(prec), (ps,))


# ---- the suites ----


def suite_psi_phi(run):
    prec = run.prec
    p = prec.p
    xinv = LaurentElement.monomial(prec, -1)
    run.compare("psi_phi/x_inverse", {}, xinv.psi(), xinv)
    for t in range(run.trials):
        f = run.psi_zero_sum().add(PowerSum.from_polynomial(
            LaurentElement.monomial(prec, run.rng.randint(0, 5), run.rng.randint(1, prec.pn - 1))
        ))
        run.compare(
            "psi_phi/ring_section", {"trial": t}, f.frobenius().psi(), f
        )
        j = 1 + run.rng.randrange(p - 1)
        shifted = f.frobenius().mul(PowerSum.group_element(prec, j))
        run.compare(
            "psi_phi/unit_coset_kill",
            {"trial": t, "j": j},
            shifted.psi(),
            PowerSum.zero(prec),
        )
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        x = run.module_vector(module)
        run.compare(
            "psi_phi/module_section", {"trial": t}, module.psi(module.phi(x)), x
        )


def suite_m_delta_laws(run):
    prec = run.prec
    triv = _trivial(prec)
    pn = prec.pn
    for t in range(run.trials):
        x = _triv_elt(prec, run.psi_zero_sum())
        d1 = run.character(gamma_only=True)
        d2 = run.character(gamma_only=True)
        a = run.unit()
        run.compare(
            "m_delta/identity",
            {"trial": t},
            m_delta(triv, x, trivial_character(prec.p, prec.N), n_max=run.n_max),
            x,
        )
        run.compare(
            "m_delta/composition",
            {"trial": t},
            m_delta(triv, m_delta(triv, x, d2, n_max=run.n_max), d1,
                    n_max=run.n_max, checked=False),
            m_delta(triv, x, d1.mul(d2), n_max=run.n_max),
        )
        run.compare(
            "m_delta/sigma_law",
            {"trial": t, "a": a},
            triv.sigma(m_delta(triv, x, d1, n_max=run.n_max), a),
            m_delta(triv, triv.sigma(x, a), d1, n_max=run.n_max).scalar_mul(
                pow(d1.unit_value(a), -1, pn)
            ),
        )
        run.compare(
            "m_delta/zeta_change",
            {"trial": t, "a": a},
            m_delta(triv, x, d1, n_max=run.n_max, zeta=a),
            m_delta(triv, x, d1, n_max=run.n_max).scalar_mul(
                pow(d1.unit_value(a), -1, pn)
            ),
        )


def suite_w_laws(run):
    prec = run.prec
    triv = _trivial(prec)
    pn = prec.pn
    for t in range(run.trials):
        x = _triv_elt(prec, run.psi_zero_sum())
        delta = run.character()
        a = run.unit()
        run.compare(
            "w/involution",
            {"trial": t},
            w_star(triv, w_star(triv, x, n_max=run.n_max),
                   n_max=run.n_max, checked=False),
            x,
        )
        run.compare(
            "w/m_intertwine",
            {"trial": t},
            m_delta(triv, w_star(triv, x, n_max=run.n_max), delta.inv(),
                    n_max=run.n_max, checked=False),
            w_star(triv, m_delta(triv, x, delta, n_max=run.n_max),
                   n_max=run.n_max, checked=False),
        )
        run.compare(
            "w/sigma_law",
            {"trial": t, "a": a},
            w_delta(triv, triv.sigma(x, a), delta, n_max=run.n_max),
            triv.sigma(
                w_delta(triv, x, delta, n_max=run.n_max),
                pow(a, -1, prec.unit_modulus),
            ).scalar_mul(delta.unit_value(a)),
        )
        # twisting the module multiplies the inversion by delta(-1) m_{delta^2}
        md = make_rank_one(prec, delta)
        run.compare(
            "w/twist_law",
            {"trial": t},
            w_star(md, ModuleElement(md, x.coords), n_max=run.n_max),
            ModuleElement(
                md,
                m_delta(triv, w_star(triv, x, n_max=run.n_max), delta.power(2),
                        n_max=run.n_max, checked=False).coords,
            ).scalar_mul(delta.unit_value(-1)),
        )
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        v = ModuleElement(
            module, (PowerSum.group_element(prec, 1), PowerSum.zero(prec))
        )
        run.compare(
            "w/dospinescu",
            {"trial": t},
            w_delta(module, v, delta_d(module), n_max=run.n_max),
            v.scalar_mul(module.characters[0].unit_value(-1)),
        )


def suite_convolution_laws(run):
    prec = run.prec
    triv = _trivial(prec)
    for t in range(run.trials):
        mu = run.measure(2)
        nu = run.measure(2)
        rho = run.measure(2)
        a = run.unit()
        run.compare(
            "convolution/unit",
            {"trial": t},
            Measure.unit(prec).convolve(mu, n_max=run.n_max),
            mu,
        )
        run.compare(
            "convolution/commutative",
            {"trial": t},
            mu.convolve(nu, n_max=run.n_max),
            nu.convolve(mu, n_max=run.n_max),
        )
        run.compare(
            "convolution/associative",
            {"trial": t},
            mu.convolve(nu, n_max=run.n_max).convolve(rho, n_max=run.n_max),
            mu.convolve(nu.convolve(rho, n_max=run.n_max), n_max=run.n_max),
        )
        run.compare(
            "convolution/sigma_equivariance",
            {"trial": t, "a": a},
            mu.group_scale(a).convolve(nu, n_max=run.n_max),
            mu.convolve(nu, n_max=run.n_max).group_scale(a),
        )
        x = _triv_elt(prec, mu.amice)
        y = _triv_elt(prec, nu.amice)
        base = convolution(
            triv, x, triv, y, multiplication_bilinear(triv), triv, n_max=run.n_max
        )
        run.compare(
            "convolution/zeta_change",
            {"trial": t, "a": a},
            convolution(
                triv, x, triv, y, multiplication_bilinear(triv), triv,
                n_max=run.n_max, zeta=a,
            ),
            ModuleElement(
                triv,
                (base.coords[0].scale_exponents(pow(a, -1, prec.unit_modulus)),),
            ),
        )
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        xx = run.module_vector(module)
        yy = run.module_vector(module)
        run.compare(
            "convolution/wedge_alternating",
            {"trial": t},
            wedge_pair(module, xx, xx, n_max=run.n_max),
            wedge_pair(module, xx, xx, n_max=run.n_max).module.zero(),
        )
        run.compare(
            "convolution/wedge_antisymmetric",
            {"trial": t},
            wedge_pair(module, xx, yy, n_max=run.n_max),
            wedge_pair(module, yy, xx, n_max=run.n_max).neg(),
        )


def suite_d_equals_m_chi(run):
    prec = run.prec
    triv = _trivial(prec)
    chi = cyclotomic_character(prec.p, prec.N)
    one_plus_x = _triv_elt(prec, PowerSum.group_element(prec, 1))
    run.compare(
        "d_m_chi/one_plus_x",
        {},
        m_delta(triv, one_plus_x, chi, n_max=run.n_max),
        ModuleElement(triv, (one_plus_x.coords[0].derivative(),)),
    )
    for t in range(run.trials):
        x = _triv_elt(prec, run.psi_zero_sum())
        run.compare(
            "d_m_chi/random",
            {"trial": t},
            m_delta(triv, x, chi, n_max=run.n_max),
            ModuleElement(triv, (x.coords[0].derivative(),)),
        )


def suite_iwasawa_pairing(run):
    prec = run.prec
    for t in range(run.trials):
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        x, y = trianguline_inputs(module)
        run.compare(
            "iwasawa/basis_unit",
            {"trial": t},
            iwasawa_pair(module, x, y, n_max=run.n_max),
            Measure.unit(prec),
        )
        a, b = run.unit(10), run.unit(10)
        run.compare(
            "iwasawa/group_translates",
            {"trial": t, "a": a, "b": b},
            iwasawa_pair(module, module.sigma(x, a), module.sigma(y, b),
                         n_max=run.n_max),
            Measure.from_group_element(prec, a * b),
        )
        xx = run.module_vector(module)
        yy = run.module_vector(module)
        run.compare(
            "iwasawa/antisymmetry",
            {"trial": t},
            iwasawa_pair(module, xx, yy, n_max=run.n_max),
            iwasawa_pair(module, yy, xx, n_max=run.n_max).neg(),
        )
        delta = run.character()
        run.compare(
            "iwasawa/twist_compatibility",
            {"trial": t},
            twisted_pair(module, delta, xx, yy, n_max=run.n_max),
            iwasawa_pair(module, xx, yy, n_max=run.n_max).g_twist(
                delta, n_max=run.n_max
            ),
        )


def suite_duality(run):
    for t in range(run.trials):
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        x = run.module_vector(module)
        y = run.module_vector(module)
        ok, lhs, rhs = duality_check(module, x, y, n_max=run.n_max)
        run.record("duality/transport", {"trial": t}, ok, lhs, rhs)


def suite_trianguline(run):
    prec = run.prec
    for t in range(run.trials):
        d1 = run.character()
        d2 = run.character()
        for u_exp in (None, 1):
            u = None if u_exp is None else LaurentElement.monomial(prec, u_exp)
            ok, lam, unit = trianguline_factorization_check(
                prec, d1, d2, u, n_max=run.n_max
            )
            run.record(
                "trianguline/factorization",
                {"trial": t, "u": "0" if u_exp is None else "X"},
                ok,
                lam,
                unit,
            )


def suite_epsilon_zeta_change(run):
    prec = run.prec
    pn = prec.pn
    for t in range(run.trials):
        delta = run.character()
        lam = run.measure(3)
        for a in (2, 1 + prec.p):
            run.compare(
                "epsilon/rank_one_zeta",
                {"trial": t, "a": a},
                epsilon_rank_one(delta, lam, prec, zeta=a, n_max=run.n_max),
                epsilon_rank_one(
                    delta,
                    lam.group_scale(a).scalar_mul(pow(delta.unit_value(a), -1, pn)),
                    prec,
                    n_max=run.n_max,
                ),
            )
        module = run.rank_two(u_exp=run.rng.choice([None, 1]))
        x = run.module_vector(module)
        y = run.module_vector(module)
        base = epsilon_rank_two(module, x, y, n_max=run.n_max)
        for a in (2, 1 + prec.p):
            inv_a = pow(a, -1, prec.unit_modulus)
            run.compare(
                "epsilon/rank_two_zeta",
                {"trial": t, "a": a},
                epsilon_rank_two(module, x, y, zeta=a, n_max=run.n_max),
                base.group_scale(inv_a * inv_a % prec.unit_modulus).scalar_mul(
                    module.det_char.unit_value(a)
                ),
            )


SUITE_TABLE = {
    "psi_phi": suite_psi_phi,
    "m_delta_laws": suite_m_delta_laws,
    "w_laws": suite_w_laws,
    "convolution_laws": suite_convolution_laws,
    "d_equals_m_chi": suite_d_equals_m_chi,
    "iwasawa_pairing": suite_iwasawa_pairing,
    "duality": suite_duality,
    "trianguline": suite_trianguline,
    "epsilon_zeta_change": suite_epsilon_zeta_change,
}


def run_suite(suite, prec, seed, trials, n_max):
    if suite not in SUITE_TABLE:
        raise UnknownSuite("unknown suite %r; choose from %s" % (suite, ", ".join(SUITES)))
    run = SuiteRun(suite, prec, seed, trials, n_max)
    SUITE_TABLE[suite](run)
    return run.report()


# ---- module descriptors ----


def module_to_descriptor(module):
    prec = module.prec
    data = {
        "schema": MODULE_SCHEMA,
        "p": prec.p,
        "N": prec.N,
        "window": [prec.lo, prec.hi],
        "rank": module.rank,
        "characters": [d.to_json() for d in module.characters],
        "U": module.u_poly.to_json() if module.u_poly is not None else None,
    }
    if module.rank == 1:
        data["phi_matrix"] = [[module.characters[0].frobenius_value()]]
    else:
        d1, d2 = module.characters
        data["phi_matrix"] = [
            [d1.frobenius_value(), data["U"]],
            [0, d2.frobenius_value()],
        ]
    if module.rank == 2 and module.u_poly is not None:
        table = {}
        for a in (1 + prec.p, -1, 2):
            table[str(a)] = module.cocycle_entry(a).to_json()
        data["cocycle_table"] = table
    return data


def descriptor_to_module(data):
    try:
        if data.get("schema") != MODULE_SCHEMA:
            raise ParseError("unknown module schema %r" % (data.get("schema"),))
        lo, hi = data["window"]
        prec = Precision(data["p"], data["N"], lo, hi)
        chars = [Character.from_json(prec.p, prec.N, c) for c in data["characters"]]
        if len(chars) != data["rank"]:
            raise ParseError("rank does not match the character list")
        u = None
        if data.get("U") is not None:
            u = LaurentElement.from_json(prec, data["U"])
        if len(chars) == 1:
            module = make_rank_one(prec, chars[0])
        else:
            module = build_triangular(prec, chars[0], chars[1], u)
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError("malformed module descriptor: %s" % exc) from exc
    # commutation spot check at the generator of 1 + pZ_p
    g = 1 + prec.p
    for i in range(module.rank):
        e = module.basis(i)
        if module.sigma(module.phi(e), g).to_windowed() != module.phi(module.sigma(e, g)).to_windowed():
            raise ValidationError("phi and sigma do not commute on the descriptor")
    if "cocycle_table" in data and module.u_poly is not None:
        for key, blob in data["cocycle_table"].items():
            want = PowerSum.from_json(prec, blob)
            if module.cocycle_entry(int(key)).to_laurent() != want.to_laurent():
                raise ValidationError("cocycle table entry %s does not solve the commutation" % key)
    return prec, module


def _parse_element(prec, module, data):
    try:
        flavor = data.get("flavor", "powersum")
        coords = data["coords"]
        if len(coords) != module.rank:
            raise ParseError("wrong coordinate count")
        if flavor == "powersum":
            parsed = [PowerSum.from_json(prec, c) for c in coords]
        elif flavor == "laurent":
            parsed = [LaurentElement.from_json(prec, c) for c in coords]
        else:
            raise ParseError("unknown element flavor %r" % (flavor,))
    except (KeyError, TypeError) as exc:
        raise ParseError("malformed element: %s" % exc) from exc
    return ModuleElement(module, tuple(parsed))


# ---- click front end ----


def _window_type(value):
    try:
        lo, hi = value.split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise click.BadParameter("window must be lo:hi") from exc


@click.group(context_settings={"auto_envvar_prefix": "PHIGAMMA"})
def main():
    """Finite-precision identity checks for (phi, Gamma)-modules."""


@main.command("run-suite")
@click.argument("suite")
@click.option("--p", default=3, show_default=True, help="odd prime")
@click.option("--prec-n", default=6, show_default=True, help="coefficient precision N")
@click.option("--window", default="-40:160", show_default=True, help="exponent window lo:hi")
@click.option("--seed", default=0, show_default=True)
@click.option("--trials", default=50, show_default=True)
@click.option("--n-max", default=None, type=int, help="limit level cap override")
@click.option("--report", "report_path", default=None, type=click.Path(dir_okay=False))
def run_suite_cmd(suite, p, prec_n, window, seed, trials, n_max, report_path):
    """Run a named identity suite with seeded random inputs."""
    started = time.monotonic()
    try:
        lo, hi = _window_type(window)
        prec = Precision(p, prec_n, lo, hi)
        report = run_suite(suite, prec, seed, trials, n_max)
    except (UnknownSuite, ConfigInvalid, ParseError, ValidationError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    payload = _dump(report)
    click.echo(payload, nl=False)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(payload)
    click.echo(
        "suite %s: %d/%d checks passed in %.1fs"
        % (
            suite,
            report["summary"]["passed"],
            report["summary"]["total"],
            time.monotonic() - started,
        ),
        err=True,
    )
    sys.exit(0 if report["summary"]["failed"] == 0 else 1)


@main.command("eval")
@click.argument("module_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("op")
@click.option("--element", "element_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--element2", "element2_file", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--a", default=None, type=int, help="group index for sigma")
@click.option("--character", "character_json", default=None, help="character JSON for twisted operators")
@click.option("--n-max", default=None, type=int)
def eval_cmd(module_file, op, element_file, element2_file, a, character_json, n_max):
    """Apply a single operation to serialized inputs and print the result."""
    try:
        with open(module_file) as fh:
            prec, module = descriptor_to_module(json.load(fh))
        with open(element_file) as fh:
            x = _parse_element(prec, module, json.load(fh))
        if op == "phi":
            out = module.phi(x)
        elif op == "psi":
            out = module.psi(x)
        elif op == "sigma":
            if a is None:
                raise ConfigInvalid("sigma needs --a")
            out = module.sigma(x, a)
        elif op in ("m-delta", "w-delta"):
            if character_json is None:
                raise ConfigInvalid("%s needs --character" % op)
            delta = Character.from_json(prec.p, prec.N, json.loads(character_json))
            fn = m_delta if op == "m-delta" else w_delta
            out = fn(module, x, delta, n_max=n_max)
        elif op == "w-star":
            out = w_star(module, x, n_max=n_max)
        elif op == "iwasawa-pair":
            if element2_file is None:
                raise ConfigInvalid("iwasawa-pair needs --element2")
            with open(element2_file) as fh:
                y = _parse_element(prec, module, json.load(fh))
            out = iwasawa_pair(module, x, y, n_max=n_max)
        else:
            raise ConfigInvalid("unknown operation %r" % (op,))
    except json.JSONDecodeError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    except (PhiGammaError,) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    click.echo(
        _dump(
            {
                "result": _value_json(out),
                "precision": {"p": prec.p, "N": prec.N, "window": [prec.lo, prec.hi]},
            }
        ),
        nl=False,
    )


@main.command("gen-example")
@click.argument("kind")
@click.option("--p", default=3, show_default=True)
@click.option("--prec-n", default=6, show_default=True)
@click.option("--window", default="-40:160", show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path(dir_okay=False))
def gen_example_cmd(kind, p, prec_n, window, out_path):
    """Emit a validated module descriptor of the requested kind."""
    try:
        lo, hi = _window_type(window)
        prec = Precision(p, prec_n, lo, hi)
        chi = cyclotomic_character(p, prec_n)
        eta = finite_order_character(p, prec_n, 1)
        if kind == "rank_one":
            module = make_rank_one(prec, trivial_character(p, prec_n))
        elif kind == "split":
            module = build_triangular(
                prec, chi.mul(unramified_character(p, prec_n, 2)), eta
            )
        elif kind == "triangular":
            module = build_triangular(
                prec,
                chi.mul(unramified_character(p, prec_n, 2)),
                eta.mul(unramified_character(p, prec_n, 1 + p)),
                LaurentElement.monomial(prec, 1),
            )
        else:
            raise ConfigInvalid("unknown kind %r; choose rank_one, split or triangular" % (kind,))
        data = module_to_descriptor(module)
        descriptor_to_module(data)  # round trip through validation
    except (PhiGammaError,) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    payload = _dump(data)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(payload)
    click.echo(payload, nl=False)


if __name__ == "__main__":
    main()
