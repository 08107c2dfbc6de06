"""Command-line surface: evaluation commands plus the batch verifier.

Exit codes separate the interesting failure modes for CI:

    0  everything checked out
    1  a mathematical identity failed (a theorem-level assertion broke)
    2  usage or configuration error
    3  expansion order / truncation budget insufficient

Reports embed the artifact version and the full run configuration (seeds,
degree bounds, budgets actually used) so any run can be reproduced from its
own output.  Text and JSON formats carry identical numeric content.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .errors import BudgetError, WeylhhError
from .poly import Poly
from .scalars import Scalar
from .weyl import SymplecticData, WeylElement, bform, involution, star
from .forms import ext_d, homotopy_s, proj_p
from .hochschild import SampleSpec, pair_chain, verify_cocycle
from .ffs import cached_symbol, ffs_apply, ffs_cocycle, ffs_hypercube_n1
from .descent import descend, descent_cocycle, make_zeta, make_zeta_g, verify_descent
from .groups import (ClassFunction, GroupElement, SmashElement, afls_dims,
                     higher_spin_preset, theta_cocycle, twisted_cycle)
from . import sampling, simplex

ENV_SEED = "WEYLHH_SEED"


@dataclass
class RunConfig:
    command: str
    n: Optional[int] = None
    seed: int = 0
    samples: int = 0
    max_degree: int = 0
    budget: str = "auto"
    out: Optional[str] = None
    format: str = "text"
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v not in (None, {}, "")}


def _default_seed() -> int:
    return int(os.environ.get(ENV_SEED, "0"))


def _load_json(spec: str):
    spec = spec.strip()
    if spec.startswith("{") or spec.startswith("["):
        return json.loads(spec)
    with open(spec) as fh:
        return json.load(fh)


def _emit(payload: dict, config: RunConfig) -> None:
    payload = {"version": __version__, "config": config.to_json(), **payload}
    if config.format == "json":
        text = json.dumps(payload, indent=2)
    else:
        lines = [f"weylhh {__version__} :: {config.command}"]
        for key, value in payload.items():
            if key in ("version", "config"):
                continue
            lines.append(f"  {key}: {json.dumps(value) if isinstance(value, (dict, list)) else value}")
        text = "\n".join(lines)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _parse_args_payload(obj) -> tuple:
    n = int(obj["n"])
    ambient = SymplecticData.canonical(n)
    args = [WeylElement(Poly.from_json(a), ambient) for a in obj["args"]]
    return ambient, args


def _parse_group_spec(obj):
    if "preset" in obj:
        if obj["preset"] != "higher-spin-4d":
            raise ValueError(f"unknown preset {obj['preset']}")
        group, ambient, labels = higher_spin_preset()
        element = labels[obj["element"]] if "element" in obj else None
        return group, ambient, labels, element
    raise ValueError("group spec must name a preset")


def _scalar_from(obj) -> Scalar:
    if isinstance(obj, int):
        return Scalar.of(obj)
    if isinstance(obj, str):
        return Scalar(Fraction(obj))
    if isinstance(obj, dict):
        return Scalar.from_json(obj)
    raise ValueError(f"cannot parse scalar from {obj!r}")


# -- verify-all ---------------------------------------------------------------


def _suite(name: str, checked: int, passed: int, detail=None) -> dict:
    out = {"name": name, "checked": checked, "passed": passed,
           "ok": checked == passed}
    if detail is not None:
        out["detail"] = detail
    return out


def run_verify_all(seed: int, samples: int, max_degree: int) -> List[dict]:
    suites: List[dict] = []
    rng = random.Random(seed)

    # Weyl algebra invariants: relations, associativity, trace/form suite.
    checked = passed = 0
    for n in (1, 2):
        sym = SymplecticData.canonical(n)
        for j in range(1, 2 * n + 1):
            for k in range(1, 2 * n + 1):
                yj = WeylElement.generator(j, sym)
                yk = WeylElement.generator(k, sym)
                comm = star(yj, yk) - star(yk, yj)
                want = Poly.const(Scalar.of(0, 2) * sym.pi[j - 1][k - 1])
                checked += 1
                passed += comm.poly == want
        for _ in range(samples // 2):
            a = sampling.random_weyl(rng, sym, max_degree)
            b = sampling.random_weyl(rng, sym, max_degree)
            c = sampling.random_weyl(rng, sym, max_degree)
            checked += 1
            passed += star(star(a, b), c) == star(a, star(b, c))
            m = sampling.random_weyl(rng, sym, max_degree)
            checked += 1
            passed += bform(m, a) == bform(involution(a), m)
    suites.append(_suite("weyl-invariants", checked, passed))

    # Homotopy identities on forms.
    checked = passed = 0
    for _ in range(samples):
        n = rng.choice((1, 2))
        sym = SymplecticData.canonical(n)
        a = sampling.random_form(rng, sym, max_degree)
        checked += 3
        passed += ext_d(ext_d(a)).is_zero()
        passed += homotopy_s(homotopy_s(a)).is_zero()
        passed += homotopy_s(ext_d(a)) + ext_d(homotopy_s(a)) == a - proj_p(a)
    suites.append(_suite("form-homotopy", checked, passed))

    # The simplex-symbol cocycle, both ranks.
    rep1 = verify_cocycle(ffs_cocycle(SymplecticData.canonical(1)),
                          SampleSpec(seed=seed, count=samples, max_degree=min(3, max_degree)))
    suites.append(_suite("ffs-cocycle-n1", rep1.checked, rep1.passed,
                         rep1.first_failure))
    rep2 = verify_cocycle(ffs_cocycle(SymplecticData.canonical(2)),
                          SampleSpec(seed=seed + 1, count=max(3, samples // 5),
                                     max_degree=2))
    suites.append(_suite("ffs-cocycle-n2", rep2.checked, rep2.passed,
                         rep2.first_failure))

    # Route agreement: resolution chain vs symbol, and the unit-square form.
    sym1 = SymplecticData.canonical(1)
    zeta = make_zeta(sym1)
    checked = passed = 0
    for m1 in sampling.monomials_upto(sym1, 2):
        for m2 in sampling.monomials_upto(sym1, 2):
            d = descend(zeta, [m1, m2], check_stability=False)
            f = ffs_apply(cached_symbol(1, 8), [m1, m2])
            checked += 1
            passed += f.restrict(d.truncation) == d
            checked += 1
            passed += ffs_hypercube_n1([m1, m2]) == f
    suites.append(_suite("route-agreement-n1", checked, passed))

    # Twisted sector: the reflection twist at rank one.
    minus = GroupElement.diagonal([Scalar.of(-1)] * 2, "-1")
    taum = descent_cocycle(make_zeta_g(sym1, minus))
    repm = verify_cocycle(taum, SampleSpec(seed=seed + 2, count=max(3, samples // 3),
                                           max_degree=2))
    pairm = pair_chain(taum, twisted_cycle(sym1, minus, truncation=8))
    suites.append(_suite("twisted-minus", repm.checked + 1,
                         repm.passed + (pairm == Scalar(Fraction(1, 2))),
                         {"pairing": str(pairm)}))

    # Higher-spin preset: dimensions and the degree-two smash cocycle.
    group, amb2, labels = higher_spin_preset()
    dims = {p: d for p, (d, _) in afls_dims(group).items()}
    dims_ok = dims == {0: 1, 2: 2, 4: 1}
    gamma = ClassFunction.indicator(group, [labels["kappa"]])
    theta2 = theta_cocycle(group, amb2, gamma, 2)
    rept = verify_cocycle(theta2, SampleSpec(seed=seed + 3, count=max(2, samples // 8),
                                             max_degree=1, group=group))
    kbar = SmashElement.group_unit(labels["kappabar"], group, amb2)
    probe = SmashElement.embed(WeylElement.generator(1, amb2), group)
    vanish_ok = theta2(kbar, probe).is_zero()
    suites.append(_suite("higher-spin", rept.checked + 2,
                         rept.passed + dims_ok + vanish_ok,
                         {"dims": dims}))

    # The simplex identity fuzzer.
    rep_s2 = simplex.fuzz(2, max(50, samples * 4), seed)
    rep_s4 = simplex.fuzz(4, max(20, samples), seed + 1)
    suites.append(_suite("simplex-identity",
                         rep_s2["count"] + rep_s4["count"],
                         rep_s2["passed"] + rep_s4["passed"]))
    return suites


def cmd_verify_all(ns) -> int:
    config = RunConfig("verify-all", seed=ns.seed, samples=ns.samples,
                       max_degree=ns.degree, out=ns.out, format=ns.format)
    suites = run_verify_all(ns.seed, ns.samples, ns.degree)
    ok = all(s["ok"] for s in suites)
    first_bad = next((s for s in suites if not s["ok"]), None)
    _emit({"ok": ok, "suites": suites,
           "first_failure": first_bad["name"] if first_bad else None}, config)
    return 0 if ok else 1


# -- thin command wrappers ------------------------------------------------------


def cmd_star(ns) -> int:
    payload = _load_json(ns.payload)
    n = int(payload["n"])
    ambient = SymplecticData.canonical(n)
    a = WeylElement(Poly.from_json(payload["a"]), ambient)
    b = WeylElement(Poly.from_json(payload["b"]), ambient)
    config = RunConfig("star", n=n, out=ns.out, format=ns.format)
    _emit({"result": star(a, b).to_json()}, config)
    return 0


def cmd_ffs_eval(ns) -> int:
    ambient, args = _parse_args_payload(_load_json(ns.args))
    config = RunConfig("ffs eval", n=ambient.n, out=ns.out, format=ns.format)
    total = sum(a.degree() for a in args)
    value = ffs_apply(cached_symbol(ambient.n, total), args)
    _emit({"result": value.to_json(), "budget_used": total}, config)
    return 0


def cmd_descent_eval(ns) -> int:
    ambient, args = _parse_args_payload(_load_json(ns.args))
    if ns.twist and ns.twist != "none":
        spec = _load_json(ns.twist)
        if "preset" in spec:
            _, preset_amb, labels, element = _parse_group_spec(spec)
            if preset_amb.n != ambient.n:
                raise ValueError("twist preset dimension does not match args")
            gen = make_zeta_g(ambient, element)
        else:
            entries = [_scalar_from(x) for x in spec["diag"]]
            gen = make_zeta_g(ambient, GroupElement.diagonal(entries, "g"))
    else:
        gen = make_zeta(ambient)
    budget = None if ns.budget == "auto" else int(ns.budget)
    config = RunConfig("descent eval", n=ambient.n, budget=ns.budget,
                       out=ns.out, format=ns.format)
    value, trace = descend(gen, args, budget=budget, return_trace=True)
    payload = {"result": value.to_json(), "budget_used": trace.budget}
    if ns.trace:
        report = verify_descent(trace, seed=_default_seed())
        with open(ns.trace, "w") as fh:
            json.dump({"budget": trace.budget,
                       "lines": [xi.label for xi in trace.xis],
                       "verification": report.to_json()}, fh, indent=2)
        payload["trace"] = ns.trace
        payload["trace_ok"] = report.ok
    _emit(payload, config)
    return 0


def cmd_smash_dims(ns) -> int:
    group, ambient, labels, _ = _parse_group_spec(_load_json(ns.group))
    dims = {str(p): d for p, (d, _) in sorted(afls_dims(group).items())}
    config = RunConfig("smash dims", n=ambient.n, format=ns.format, out=ns.out)
    _emit({"dims": dims}, config)
    return 0


def cmd_smash_theta(ns) -> int:
    group, ambient, labels, _ = _parse_group_spec(_load_json(ns.group))
    gamma_spec = _load_json(ns.gamma)
    values = {labels[name]: _scalar_from(v) for name, v in gamma_spec.items()}
    gamma = ClassFunction(group, values)
    payload = _load_json(ns.args)
    raw_args = payload["args"]
    smash_args = []
    for entry in raw_args:
        terms = {labels[g]: WeylElement(Poly.from_json(p), ambient)
                 for g, p in entry.items()}
        smash_args.append(SmashElement(group, ambient, terms))
    theta = theta_cocycle(group, ambient, gamma, ns.degree)
    value = theta(*smash_args)
    config = RunConfig("smash theta", n=ambient.n, format=ns.format, out=ns.out,
                       extra={"degree": ns.degree})
    result = {g.label or str(g): a.to_json() for g, a in value.terms.items()}
    _emit({"result": result}, config)
    return 0


def cmd_simplex_fuzz(ns) -> int:
    config = RunConfig("simplex fuzz", seed=ns.seed, samples=ns.count,
                       format=ns.format, out=ns.report,
                       extra={"dim": ns.dim})
    report = simplex.fuzz(ns.dim, ns.count, ns.seed)
    _emit({"report": report, "ok": report["failed"] == 0}, config)
    return 0 if report["failed"] == 0 else 1


# -- entry point ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylhh",
        description="Exact star-product cocycle construction and verification.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", help="run every verification suite")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify_all)

    p = sub.add_parser("star", help="star product of two elements")
    p.add_argument("payload", help="JSON {n, a, b} inline or a file path")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_star)

    p = sub.add_parser("ffs", help="simplex-symbol cocycle")
    ffs_sub = p.add_subparsers(dest="ffs_command", required=True)
    pe = ffs_sub.add_parser("eval")
    pe.add_argument("--args", required=True, help="JSON {n, args:[poly...]}")
    pe.add_argument("--out")
    pe.set_defaults(fn=cmd_ffs_eval)

    p = sub.add_parser("descent", help="resolution-route cocycle")
    d_sub = p.add_subparsers(dest="descent_command", required=True)
    pe = d_sub.add_parser("eval")
    pe.add_argument("--args", required=True)
    pe.add_argument("--twist", default="none",
                    help='"none", or JSON group spec ({preset, element} or {diag})')
    pe.add_argument("--budget", default="auto")
    pe.add_argument("--trace", help="write the audited descent trace here")
    pe.add_argument("--out")
    pe.set_defaults(fn=cmd_descent_eval)

    p = sub.add_parser("smash", help="smash-product cocycles")
    s_sub = p.add_subparsers(dest="smash_command", required=True)
    pd = s_sub.add_parser("dims")
    pd.add_argument("--group", required=True)
    pd.add_argument("--out")
    pd.set_defaults(fn=cmd_smash_dims)
    pt = s_sub.add_parser("theta")
    pt.add_argument("--group", required=True)
    pt.add_argument("--gamma", required=True)
    pt.add_argument("--args", required=True)
    pt.add_argument("--degree", type=int, default=2)
    pt.add_argument("--out")
    pt.set_defaults(fn=cmd_smash_theta)

    p = sub.add_parser("simplex", help="simplex characteristic function")
    x_sub = p.add_subparsers(dest="simplex_command", required=True)
    pf = x_sub.add_parser("fuzz")
    pf.add_argument("--dim", type=int, choices=(2, 4), required=True)
    pf.add_argument("--count", type=int, default=100)
    pf.add_argument("--seed", type=int, default=_default_seed())
    pf.add_argument("--report")
    pf.set_defaults(fn=cmd_simplex_fuzz)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.fn(ns)
    except BudgetError as exc:
        print(f"budget insufficient: {exc}", file=sys.stderr)
        return 3
    except (WeylhhError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
