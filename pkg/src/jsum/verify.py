"""Identity and congruence checks for Jacobi sums of order l^2 and 2l^2.

Every check produces one :class:`CheckRecord`.  Failures never raise: they are
recorded with a witness naming the offending parameters, so the case can be
replayed through the individual functions in :mod:`jsum.charsums`.

Congruences are tested in Z[zeta_{l^2}] at lambda = 1 - zeta_{l^2}.  Values of
order 2l^2 are carried over with zeta_{2l^2} = -zeta_{l^2}^((l^2+1)/2).
Where the congruences involve c-polynomials, the Jacobi sum of order l^2 they
stand for is used instead.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

from . import charsums as cs
from .cycring import INF, CycInt, embed_halforder, galois, lambda_valuation, project_halforder
from .fieldtab import IndexedField, MAX_Q, check_field_params, ind2, is_prime, load_or_build

DEFAULT_SEED = 0x4A53
SUITES = ("props", "dickson", "coeffs", "congruences")
CATEGORY = {"props": "prop", "dickson": "dickson", "coeffs": "coeff", "congruences": "congruence"}
MAX_WITNESSES = 5


class PreconditionError(ValueError):
    pass


@dataclass
class CheckRecord:
    name: str
    category: str
    status: str
    witness: object = None
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> dict:
        out = {"name": self.name, "category": self.category, "status": self.status,
               "witness": self.witness}
        if timings:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class CheckReport:
    params: dict
    seed: int
    suites: list[str]
    checks: list[CheckRecord] = dc_field(default_factory=list)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def get(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings: bool = False) -> dict:
        statuses = [c.status for c in self.checks]
        return {
            "params": self.params,
            "seed": self.seed,
            "suites": self.suites,
            "summary": {s: statuses.count(s) for s in ("pass", "fail", "skipped")},
            "checks": [c.to_dict(timings) for c in self.checks],
        }


def _jsonable(x):
    if x == INF:
        return "inf"
    if isinstance(x, CycInt):
        return x.to_json()
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    return x


class _Collector:
    """Gathers per-case outcomes for one named check."""

    def __init__(self):
        self.bad: list = []
        self.count = 0
        self.info: dict = {}

    def expect(self, ok: bool, **case) -> None:
        self.count += 1
        if not ok:
            self.bad.append(case)


class Context:
    """Field plus the Jacobi/Dickson tables shared by all suites."""

    def __init__(self, field: IndexedField, l: int, threads: int | None = None):
        self.field = field
        self.l = l
        self.q = field.q
        self.e1 = l * l
        self.e2 = 2 * l * l
        self.w = ind2(field)
        self.tables = {e: cs.cyclotomic_numbers(field, e, threads=threads) for e in (self.e1, self.e2)}
        self.J = {e: cs.JacobiSums(t) for e, t in self.tables.items()}
        self._dh: dict[int, cs.DHTable] = {}
        self._proj: dict = {}

    def dh(self, e: int) -> cs.DHTable:
        if e not in self._dh:
            self._dh[e] = cs.dickson_hurwitz(self.tables[e])
        return self._dh[e]

    def J1(self, i: int, j: int) -> CycInt:
        return self.J[self.e1](i, j)

    def J2(self, i: int, j: int) -> CycInt:
        return self.J[self.e2](i, j)

    def J2p(self, i: int, j: int) -> CycInt:
        """J_{2l^2}(i, j) carried into Z[zeta_{l^2}]."""
        key = (i % self.e2, j % self.e2)
        if key not in self._proj:
            self._proj[key] = project_halforder(self.J2(*key))
        return self._proj[key]

    def z(self, t: int) -> CycInt:
        return CycInt.zeta(self.e1, t)

    def val(self, a: CycInt):
        return lambda_valuation(a, self.l)


# props suite

def _swap(ctx: Context, e: int, c: _Collector) -> None:
    J = ctx.J[e]
    for m in range(e):
        for n in range(e):
            s = -m - n
            cs_, cm = J.chi_minus_one(s), J.chi_minus_one(m)
            base = J(m, n)
            chain = [J(s, n), cs_ * J(s, m), cs_ * J(n, m), cm * J(m, s), cm * J(n, s)]
            c.expect(all(x == base for x in chain), e=e, m=m, n=n)
    for m in range(e):
        c.expect(J(1, m) == J.chi_minus_one() * J(1, e - m - 1), e=e, form="J(1,m)", m=m)


def _trivial_character(ctx: Context, e: int, c: _Collector) -> None:
    J = ctx.J[e]
    for j in range(e):
        c.expect(J(0, j) == CycInt.from_int(e, ctx.q - 2 if j == 0 else -1), e=e, i=0, j=j)
    for i in range(1, e):
        c.expect(J(i, 0) == -J.chi_minus_one(i), e=e, i=i, j=0)


def _opposite(ctx: Context, e: int, c: _Collector) -> None:
    J = ctx.J[e]
    for m in range(1, e):
        c.expect(J(m, e - m) == CycInt.from_int(e, -1), e=e, m=m, n=e - m)


def _galois_action(ctx: Context, e: int, c: _Collector) -> None:
    J = ctx.J[e]
    ms = sorted({0, 1, 2, ctx.l, e - 1})
    for k in range(1, e):
        if math.gcd(k, e) != 1:
            continue
        for m in ms:
            for n in range(e):
                c.expect(galois(J(m, n), k) == J(m * k, n * k), e=e, k=k, m=m, n=n)


def _halving_squares(ctx: Context, c: _Collector) -> None:
    for m in range(ctx.e1):
        for n in range(ctx.e1):
            c.expect(ctx.J2(2 * m, 2 * n) == embed_halforder(ctx.J1(m, n)), m=m, n=n)


def _product(ctx: Context, c: _Collector, seed: int) -> None:
    e = ctx.e2
    J = ctx.J[e]
    rng = random.Random(seed)
    triples = []
    while len(triples) < 50:
        m, n, s = (rng.randrange(e) for _ in range(3))
        if (m + n) % e and (m + s) % e:
            triples.append((m, n, s))
    for m, n, s in triples:
        lhs = J(m, n) * J(m + n, s)
        rhs = J.chi_minus_one(m) * J(m, s) * J(n, s + m)
        c.expect(lhs == rhs, m=m, n=n, s=s)
    c.info["triples"] = len(triples)


def _norm(ctx: Context, c: _Collector) -> None:
    e = ctx.e2
    for n in range(e):
        norm = ctx.J2(1, n) * ctx.J2(1, n).conj()
        expected = 1 if n in (0, e - 1) else ctx.q
        c.expect(norm == CycInt.from_int(e, expected), n=n)


def _oracle(ctx: Context, e: int, c: _Collector) -> None:
    for i in range(e):
        for j in range(e):
            c.expect(cs.jacobi_direct(ctx.field, e, i, j) == ctx.J[e](i, j), e=e, i=i, j=j)


# dickson suite

def _dh_relations(ctx: Context, e: int) -> dict[str, Callable[[_Collector], None]]:
    def dh(i, j):
        return ctx.dh(e)(i, j)

    # the B(i, e-i-j) form does not hold in general; it is reported, not assumed
    def symmetry(c):
        for i in range(e):
            for j in range(e):
                c.expect(dh(i, j) == dh(i, e - i - j), e=e, i=i, j=j)

    def reflection(c):
        for i in range(e):
            for j in range(e):
                c.expect(dh(i, j) == dh(i, e - 1 - j), e=e, i=i, j=j)

    def b00(c):
        k = (ctx.q - 1) // e
        c.expect(dh(0, 0) == k - 1, e=e, observed=dh(0, 0), expected=k - 1)

    def bi0(c):
        k = (ctx.q - 1) // e
        for i in range(1, e):
            c.expect(dh(i, 0) == k, e=e, i=i, observed=dh(i, 0), expected=k)

    def colsum(c):
        for j in range(e):
            total = sum(ctx.dh(e).column(j))
            c.expect(total == ctx.q - 2, e=e, j=j, observed=total)

    def unit_scaling(c):
        for j in range(e):
            if math.gcd(j, e) != 1:
                continue
            jb = pow(j, -1, e)
            for i in range(e):
                c.expect(dh(i * jb, jb) == dh(i, j), e=e, i=i, j=j)

    def j_from_b(c):
        k = (ctx.q - 1) // e
        for n in range(e):
            ok = cs.jacobi_from_dickson(ctx.dh(e), n) == cs.jacobi_direct(ctx.field, e, 1, n)
            c.expect(ok, e=e, n=n, k=k)
        c.info["k_parity"] = "even" if k % 2 == 0 else "odd"

    return {
        f"dickson.symmetry.e{e}": symmetry,
        f"dickson.reflection.e{e}": reflection,
        f"dickson.b00.e{e}": b00,
        f"dickson.bi0.e{e}": bi0,
        f"dickson.column_sum.e{e}": colsum,
        f"dickson.unit_scaling.e{e}": unit_scaling,
        f"dickson.jacobi_from_b.e{e}": j_from_b,
    }


# coeffs suite

def _b_recon(ctx: Context, c: _Collector) -> None:
    dh = ctx.dh(ctx.e1)
    for n in range(ctx.e1):
        b = cs.coeffs_b(dh, ctx.l, n)
        c.expect(CycInt(ctx.e1, tuple(b)) == cs.jacobi_direct(ctx.field, ctx.e1, 1, n), n=n, b=b)


def _d_signed(ctx: Context, c: _Collector) -> None:
    dh = ctx.dh(ctx.e2)
    for n in range(ctx.e2):
        recon = CycInt.zeta(ctx.e2, cs.dickson_sign_exponent(dh, n)) * CycInt(
            ctx.e2, tuple(cs.reduce_b_vector(dh, n)))
        c.expect(recon == cs.jacobi_direct(ctx.field, ctx.e2, 1, n), n=n)


def _d_unsigned(ctx: Context, c: _Collector) -> None:
    # the sign chi^(n+1)(-1) = (-1)^(k(n+1)) is dropped: this must hold exactly
    # when k is even or n is odd, and fail otherwise
    dh = ctx.dh(ctx.e2)
    k = (ctx.q - 1) // ctx.e2
    mismatched = []
    for n in range(ctx.e2):
        holds = CycInt(ctx.e2, tuple(cs.reduce_b_vector(dh, n))) == ctx.J2(1, n)
        if not holds:
            mismatched.append(n)
        c.expect(holds == (k % 2 == 0 or n % 2 == 1), n=n, holds=holds, k=k)
    c.info["unsigned_mismatch_n"] = mismatched


def _d_closed(ctx: Context, c: _Collector) -> None:
    dh = ctx.dh(ctx.e2)
    for n in range(ctx.e2):
        d = cs.coeffs_d(dh, ctx.l, n)
        ref = cs.reduce_b_vector(dh, n)
        c.expect(d == ref, n=n, closed_form=d, reduction=ref)


# congruences suite

def _inv2(ctx: Context) -> int:
    return pow(2, -1, ctx.e1)


def _order_l2(ctx: Context, c: _Collector, multiple_of_l: bool) -> None:
    l = ctx.l
    bound = l + 1 if multiple_of_l else 3
    for n in range(1, ctx.e1):
        if (n % l == 0) != multiple_of_l:
            continue
        v = ctx.val(ctx.J1(1, n) + 1)
        c.expect(v >= bound, n=n, valuation=v, required=bound)


def _diagonal(ctx: Context, c: _Collector) -> None:
    e = ctx.e2
    for a in range(1, e):
        rhs = CycInt.zeta(e, -2 * a * ctx.w) * ctx.J2(a, ctx.e1)
        c.expect(ctx.J2(a, a) == rhs, a=a)


def _case_i(ctx: Context, c: _Collector) -> None:
    A = ctx.J1(1, (ctx.e1 - 1) // 2)
    v = ctx.val(ctx.J2p(1, ctx.e1) - ctx.z(-ctx.w) * A)
    c.expect(v >= ctx.l + 1, n=ctx.e1, valuation=v, required=ctx.l + 1)
    c.info["valuation"] = v


def _odd_d(l: int) -> Iterable[int]:
    return [d for d in range(1, 2 * l, 2) if d != l]


def _case_ii(ctx: Context, c: _Collector) -> None:
    l, e1, w = ctx.l, ctx.e1, ctx.w
    A = ctx.J1(1, (e1 - 1) // 2)
    for d in _odd_d(l):
        n = d * l
        sigma = (-1 - n) * _inv2(ctx) % e1
        rhs = -(ctx.z(-w * (n + 1)) * A * galois(ctx.J1(1, n - 1), sigma))
        v = ctx.val(ctx.J2p(1, n) - rhs)
        c.expect(v >= l + 1, d=d, n=n, valuation=v, required=l + 1)


def _case_ii_exact(ctx: Context, c: _Collector) -> None:
    l, e1 = ctx.l, ctx.e1
    for d in _odd_d(l):
        n = d * l
        lhs = ctx.J2(1, n) * ctx.q
        rhs = ctx.J2(1, e1) * ctx.J2(n, e1) * ctx.J2(1 + n, e1 - 1).conj()
        c.expect(lhs == rhs, d=d, n=n)


def _case_ii_halving(ctx: Context, c: _Collector) -> None:
    # conj(J_{2l^2}(1+n, l^2-1)) = sigma_{(-1-n)/2}(J_{l^2}(1, n-1)) for n = dl
    l, e1 = ctx.l, ctx.e1
    for d in _odd_d(l):
        n = d * l
        lhs = ctx.J2p(1 + n, e1 - 1).conj()
        rhs = galois(ctx.J1(1, n - 1), (-1 - n) * _inv2(ctx) % e1)
        c.expect(lhs == rhs, d=d, n=n)


def _aux(ctx: Context, c: _Collector) -> None:
    l, e1, w = ctx.l, ctx.e1, ctx.w
    for d in _odd_d(l):
        n = d * l
        v = ctx.val(ctx.J2p(n, e1) + ctx.z(-w * n))
        c.expect(v >= 2, d=d, valuation=v, required=2)


def _unit_n(ctx: Context) -> list[int]:
    return [n for n in range(1, ctx.e2 - 2, 2) if math.gcd(n, ctx.e2) == 1]


def _case_iii(ctx: Context, c: _Collector) -> None:
    l, e1, w = ctx.l, ctx.e1, ctx.w
    A = ctx.J1(1, (e1 - 1) // 2)
    half = (1 - e1) // 2 % e1
    for n in _unit_n(ctx):
        rhs = ctx.z(-w * (n + 1)) * A * galois(A, n % e1) * galois(ctx.J1(1, -1 - n), half)
        v = ctx.val(ctx.J2p(1, n) - rhs)
        c.expect(v >= l + 1, n=n, valuation=v, required=l + 1)


def _case_iii_exact(ctx: Context, c: _Collector) -> None:
    e1, e2 = ctx.e1, ctx.e2
    for n in _unit_n(ctx):
        lhs = ctx.J2(1, n) * ctx.q
        rhs = ctx.J2(1, e1) * galois(ctx.J2(1, e1), n % e2) * ctx.J2(1 + n, e1 - 1).conj()
        c.expect(lhs == rhs, n=n)


def _case_iii_case_ii_halving(ctx: Context, c: _Collector) -> None:
    e1 = ctx.e1
    half = (1 - e1) // 2 % e1
    for n in _unit_n(ctx):
        lhs = ctx.J2p(1 + n, e1 - 1).conj()
        rhs = galois(ctx.J1(1, -1 - n), half)
        c.expect(lhs == rhs, n=n)


def _even_n(ctx: Context, c: _Collector) -> None:
    e = ctx.e2
    sign = ctx.J[e].chi_minus_one()
    for n in range(2, e - 1, 2):
        c.expect(ctx.J2(1, n) == sign * ctx.J2(1, e - n - 1), n=n)


def _c_extraction(ctx: Context, c: _Collector) -> None:
    residues = {}
    for n in range(1, ctx.e1):
        cvals, valid = cs.extract_c(ctx.J1(1, n), ctx.l)
        if n % ctx.l == 0:
            c.expect(valid and not any(cvals), n=n, c=cvals, valid=valid)
        else:
            c.expect(valid, n=n, c=cvals, valid=valid)
        residues[str(n)] = cvals
    c.info["c_residues"] = residues


def _registry(ctx: Context, seed: int) -> dict[str, list[tuple[str, Callable[[_Collector], None]]]]:
    e1, e2 = ctx.e1, ctx.e2
    props = []
    for e in (e1, e2):
        props += [
            (f"swap.e{e}", lambda c, e=e: _swap(ctx, e, c)),
            (f"trivial_character.e{e}", lambda c, e=e: _trivial_character(ctx, e, c)),
            (f"opposite_exponents.e{e}", lambda c, e=e: _opposite(ctx, e, c)),
            (f"galois_action.e{e}", lambda c, e=e: _galois_action(ctx, e, c)),
            (f"oracle.direct_vs_cycnums.e{e}", lambda c, e=e: _oracle(ctx, e, c)),
        ]
    props += [
        ("halving.squares", lambda c: _halving_squares(ctx, c)),
        ("product_formula", lambda c: _product(ctx, c, seed)),
        ("norm", lambda c: _norm(ctx, c)),
    ]
    dickson = []
    for e in (e1, e2):
        dickson += list(_dh_relations(ctx, e).items())
    coeffs = [
        ("b_coeffs.reconstruction", lambda c: _b_recon(ctx, c)),
        ("d_coeffs.signed_reconstruction", lambda c: _d_signed(ctx, c)),
        ("d_coeffs.unsigned_form", lambda c: _d_unsigned(ctx, c)),
        ("d_coeffs.closed_form", lambda c: _d_closed(ctx, c)),
    ]
    congruences = [
        ("order_l2.coprime_n", lambda c: _order_l2(ctx, c, False)),
        ("order_l2.multiple_of_l", lambda c: _order_l2(ctx, c, True)),
        ("order_l2.c_extraction", lambda c: _c_extraction(ctx, c)),
        ("diagonal", lambda c: _diagonal(ctx, c)),
        ("case_i.n_l2", lambda c: _case_i(ctx, c)),
        ("case_ii.n_dl", lambda c: _case_ii(ctx, c)),
        ("case_ii.exact_q_identity", lambda c: _case_ii_exact(ctx, c)),
        ("case_ii.halving_identity", lambda c: _case_ii_halving(ctx, c)),
        ("case_ii.aux_mod_lambda2", lambda c: _aux(ctx, c)),
        ("case_iii.unit_n", lambda c: _case_iii(ctx, c)),
        ("case_iii.exact_q_identity", lambda c: _case_iii_exact(ctx, c)),
        ("case_iii.halving_identity", lambda c: _case_iii_case_ii_halving(ctx, c)),
        ("even_n.reflection", lambda c: _even_n(ctx, c)),
    ]
    return {"props": props, "dickson": dickson, "coeffs": coeffs, "congruences": congruences}


def check_names(l: int) -> dict[str, list[str]]:
    """Names of all configured checks per suite, without computing anything."""
    dummy = type("C", (), {"e1": l * l, "e2": 2 * l * l})()
    return {s: [name for name, _ in checks] for s, checks in _registry(dummy, 0).items()}


def _run(name: str, category: str, fn: Callable[[_Collector], None]) -> CheckRecord:
    c = _Collector()
    start = time.perf_counter()
    fn(c)
    elapsed = time.perf_counter() - start
    if c.bad:
        witness = {"failed_cases": len(c.bad), "cases_checked": c.count,
                   "first": c.bad[:MAX_WITNESSES]}
        status = "fail"
    else:
        witness = {"cases_checked": c.count}
        status = "pass"
    witness.update(c.info)
    return CheckRecord(name, category, status, _jsonable(witness), elapsed)


def _run_suite(ctx: Context, suite: str, seed: int) -> list[CheckRecord]:
    return [_run(name, CATEGORY[suite], fn) for name, fn in _registry(ctx, seed)[suite]]


def check_propositions(ctx: Context, seed: int = DEFAULT_SEED) -> list[CheckRecord]:
    return _run_suite(ctx, "props", seed)


def check_dickson(ctx: Context) -> list[CheckRecord]:
    return _run_suite(ctx, "dickson", DEFAULT_SEED)


def check_coeff_theorems(ctx: Context) -> list[CheckRecord]:
    return _run_suite(ctx, "coeffs", DEFAULT_SEED)


def check_congruences(ctx: Context) -> list[CheckRecord]:
    return _run_suite(ctx, "congruences", DEFAULT_SEED)


def check_preconditions(l: int, p: int, r: int) -> None:
    if not is_prime(l) or l < 3:
        raise PreconditionError(f"l={l} must be an odd prime")
    try:
        check_field_params(p, r)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    q = p**r
    if p == 2:
        raise PreconditionError("q must be odd for order 2l^2")
    if (q - 1) % (2 * l * l):
        raise PreconditionError(f"q={q} is not 1 mod 2l^2={2 * l * l}")
    assert q <= MAX_Q


def run_all(l: int, p: int, r: int = 1, suites: Iterable[str] = SUITES, seed: int = DEFAULT_SEED,
            cache_dir=None, threads: int | None = None, field: IndexedField | None = None) -> CheckReport:
    suites = list(dict.fromkeys(suites))
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise PreconditionError(f"unknown suite(s): {', '.join(unknown)}")
    check_preconditions(l, p, r)
    if field is None:
        field = load_or_build(p, r, cache_dir)
    ctx = Context(field, l, threads=threads)
    report = CheckReport(
        params={"l": l, "p": p, "r": r, "q": field.q, "gamma": list(field.gamma), "w": ctx.w},
        seed=seed,
        suites=[s for s in SUITES if s in suites],
    )
    names = check_names(l)
    for suite in SUITES:
        if suite in suites:
            report.checks += _run_suite(ctx, suite, seed)
        else:
            report.checks += [CheckRecord(n, CATEGORY[suite], "skipped") for n in names[suite]]
    return report
