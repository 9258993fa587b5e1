"""Command-line interface: ``ratspace analyze | generate | fuzz | freiman | selftest``.

Exit codes: 0 when every applicable check passes, 1 when a theorem-level
check fails on a valid instance (a witness is written), 2 on input errors,
3 when a place of degree greater than one would be needed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from pathlib import Path

from .analysis import CHECKLIST, analyze, good_reduction
from .errors import (DegreeRealizationFailed, DimensionTooLarge, InternalInvariantViolation,
                     NonSplitPlace, NotPrime, ParseError, RatspaceError, ZeroDenominator)
from .fields import parse_field
from .freiman import IntSet, freiman_3k4
from .generators import FAMILIES, InstanceSpec, instance_text
from .parser import parse_instance_file
from .places import parse_divisor, riemann_roch_space
from .report import freiman_dict, freiman_text, report_json, report_text

EXIT_OK, EXIT_FINDING, EXIT_INPUT, EXIT_NONSPLIT = 0, 1, 2, 3


def _witness_text(instance: str, report) -> str:
    lines = [instance.rstrip("\n")]
    for f in report.failures():
        lines.append(f"# FAIL {f.lemma}: {json.dumps(f.witness, sort_keys=True)}")
    return "\n".join(lines) + "\n"


# -- analyze -----------------------------------------------------------------


def cmd_analyze(args) -> int:
    text = Path(args.path).read_text() if args.path != "-" else sys.stdin.read()
    if args.field is not None:
        text = _override_field(text, parse_field(args.field))
    field, gens = parse_instance_file(text)
    r = analyze(gens, field, needed_col=args.needed_col, seed=args.seed,
                max_dim=args.max_dim, source=args.path)
    sys.stdout.write(report_json(r) if args.json else report_text(r, table=args.table))
    if r.failures():
        if args.witness_dir:
            out = Path(args.witness_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"witness-analyze-seed{args.seed}.txt").write_text(
                _witness_text(f"# seed: {args.seed}\n" + text, r))
        return EXIT_FINDING
    return EXIT_OK


def _override_field(text: str, field) -> str:
    out, done = [], False
    for line in text.splitlines():
        if not done and line.split("#", 1)[0].strip().lower().startswith("field:"):
            out.append(f"field: {field.spec()}")
            done = True
        else:
            out.append(line)
    return "\n".join(out) + "\n"


# -- generate ----------------------------------------------------------------


def cmd_generate(args) -> int:
    params = {}
    for tok in args.params:
        k, eq, v = tok.partition("=")
        if not eq:
            raise ValueError(f"parameter {tok!r} is not of the form key=value")
        params[k] = v
    if args.family == "random-rr" and "seed" not in params:
        params["seed"] = str(args.seed)
    field = parse_field(args.field or "q")
    spec = InstanceSpec(args.family, params, field)
    sys.stdout.write(instance_text(spec))
    return EXIT_OK


# -- fuzz --------------------------------------------------------------------


def _random_spec(rng: random.Random, cfg, field) -> InstanceSpec:
    family = cfg.family
    if family == "mixed":
        family = rng.choice(("random-rr", "degset"))
    if family == "degset":
        return _random_degset(rng, cfg, field)
    return _random_rr(rng, cfg, field)


def _random_degset(rng: random.Random, cfg, field) -> InstanceSpec:
    """Sparse degree sets with a few simple poles attached to later elements."""
    n = rng.randint(cfg.min_dim, cfg.max_gen_dim)
    degs = [0]
    while len(degs) < n:
        degs.append(degs[-1] + rng.choice((1, 1, 1, 2, 3)))
    plan = [(rng.randint(2, n), rng.randint(-4, 4), rng.randint(1, 2))
            for _ in range(rng.randint(0, cfg.max_poles))]
    params = {"set": ",".join(map(str, degs)), "seed": rng.randrange(2 ** 31)}
    if plan:
        params["poles"] = ";".join(f"{i}:{a}:{k}" for i, a, k in plan)
    return InstanceSpec("degset", params, field)


def _random_rr(rng: random.Random, cfg, field) -> InstanceSpec:
    """Draw a random-rr spec whose L(D) has room for the chosen dimension."""
    n = rng.randint(cfg.min_dim, cfg.max_gen_dim)
    k = rng.randint(0, cfg.max_poles)
    alphas = rng.sample(range(-4, 5), k)
    finite = {a: rng.randint(1, 2) for a in alphas}
    deg = n - 1 + rng.randint(0, cfg.extra_degree)
    inf = max(deg - sum(finite.values()), 0)
    terms = [f"{inf}*inf"] + [f"{m}*{a}" for a, m in sorted(finite.items())]
    D = "+".join(terms)
    return InstanceSpec("random-rr", {"D": D, "n": n, "seed": rng.randrange(2 ** 31)}, field)


def _fuzz_one(spec: InstanceSpec, cfg):
    """Analyze one spec; returns (report or None, error tag or None, space)."""
    try:
        S = spec.build()
        return analyze(S, seed=int(spec.params["seed"]), max_dim=cfg.max_dim,
                       source=spec.to_line()), None, S
    except NonSplitPlace:
        return None, "nonsplit", None
    except (DimensionTooLarge, DegreeRealizationFailed, ZeroDenominator):
        return None, "skipped", None


def cmd_fuzz(args) -> int:
    field = parse_field(args.field or "q")
    cross = parse_field(args.cross_field) if args.cross_field else None
    rng = random.Random(args.seed)
    status = Counter()
    gammas = Counter()
    other = Counter()
    witnesses = []
    for k in range(args.count):
        spec = _random_spec(rng, args, field)
        r, err, S = _fuzz_one(spec, args)
        if r is None:
            other[err] += 1
            continue
        other["analyzed"] += 1
        gammas[(r.n, r.gamma)] += 1
        for f in r.findings:
            status[(f.lemma, f.status)] += 1
        if r.failures():
            seed = spec.params["seed"]
            name = f"witness-{seed}.txt"
            witnesses.append(name)
            out = Path(args.witness_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / name).write_text(_witness_text(instance_text(spec, S), r))
        if cross is not None:
            other[_cross_check(spec, r, cross, args)] += 1
    summary = {
        "count": args.count,
        "seed": args.seed,
        "field": field.spec(),
        "outcomes": dict(sorted(other.items())),
        "findings": {lem: {s: status[(lem, s)] for s in ("pass", "fail", "not-applicable")}
                     for lem in CHECKLIST},
        "dim_gamma": {f"{n},{g}": c for (n, g), c in sorted(gammas.items())},
        "witnesses": sorted(witnesses),
    }
    if args.json:
        sys.stdout.write(json.dumps(summary, indent=2) + "\n")
    else:
        sys.stdout.write(_fuzz_text(summary))
    return EXIT_FINDING if witnesses else EXIT_OK


def _cross_check(spec: InstanceSpec, r, field, cfg) -> str:
    twin = InstanceSpec(spec.family, dict(spec.params), field)
    try:
        S = twin.build()
    except (NonSplitPlace, DimensionTooLarge, DegreeRealizationFailed, ZeroDenominator):
        return "cross-skipped"
    if S.dim != r.original.dim or not good_reduction(r, field.characteristic):
        return "cross-skipped"
    try:
        r2 = analyze(S, max_dim=cfg.max_dim, gap_trials=0)
    except (NonSplitPlace, RatspaceError):
        return "cross-skipped"
    if r2.profile.square_dims != r.profile.square_dims:
        # a rank of S_i^2 dropped mod p: p divides every maximal minor
        return "cross-bad-prime"
    same = (r2.profile.gamma_seq == r.profile.gamma_seq
            and r2.profile.degrees == r.profile.degrees)
    return "cross-agree" if same else "cross-differ"


def _fuzz_text(s: dict) -> str:
    lines = [f"fuzz: {s['count']} instances, seed {s['seed']}, field {s['field']}"]
    for k, v in s["outcomes"].items():
        lines.append(f"  {k}: {v}")
    lines.append("findings (pass / fail / not-applicable):")
    for lem, c in s["findings"].items():
        lines.append(f"  {lem:<8} {c['pass']:>6} {c['fail']:>6} {c['not-applicable']:>6}")
    lines.append("instances by (dim, gamma):")
    for k, v in s["dim_gamma"].items():
        lines.append(f"  ({k}): {v}")
    if s["witnesses"]:
        lines.append("witness files:")
        lines += [f"  {w}" for w in s["witnesses"]]
    return "\n".join(lines) + "\n"


# -- freiman / selftest ------------------------------------------------------


def cmd_freiman(args) -> int:
    try:
        A = IntSet.parse(args.set)
    except ValueError as exc:
        raise ParseError(f"bad integer set {args.set!r}: {exc}", 1, 1, args.set) from None
    try:
        fr = freiman_3k4(A)
    except AssertionError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_FINDING
    sys.stdout.write(json.dumps(freiman_dict(fr), indent=2) + "\n" if args.json else freiman_text(fr))
    return EXIT_OK


def _selftest_cases():
    from .generators import canonical_gamma0, canonical_gamma1
    from .fields import QQ, GF
    from .freiman import monomial_space

    def table1():
        r = analyze(monomial_space(IntSet([0, 1, 2, 4, 5])))
        return (r.gamma == 2 and r.divisor.to_str() == "5*inf" and r.dim_LD == 6
                and [(e.i, e.needed) for e in r.needed] ==
                [(1, False), (2, False), (3, True), (4, True), (5, True)])

    def gamma0():
        return all(analyze(canonical_gamma0(n)).dim_LD == n for n in range(3, 9))

    def gamma1():
        return all(analyze(canonical_gamma1(n, s, QQ(a))).gamma == 1
                   for n in (4, 6) for s in (1, 2) for a in (0, 1, -1))

    def freiman():
        fr = freiman_3k4(IntSet([0, 1, 2, 4]))
        return fr.hull.length == 5 and fr.bound == 5 and fr.conclusion_holds

    def finite_field():
        return analyze(canonical_gamma1(5, 1, GF(7)(2), GF(7))).gamma == 1

    def riemann_roch():
        return riemann_roch_space(parse_divisor("3*inf+1*0+2*1", QQ)).dim == 7

    return [("table-1 instance", table1), ("gamma0 equality", gamma0),
            ("gamma1 shapes", gamma1), ("freiman 3k-4", freiman),
            ("prime field", finite_field), ("riemann-roch", riemann_roch)]


def cmd_selftest(args) -> int:
    ok = True
    for name, fn in _selftest_cases():
        try:
            good = bool(fn())
        except RatspaceError as exc:
            good = False
            name += f" ({type(exc).__name__}: {exc})"
        ok &= good
        print(f"{'PASS' if good else 'FAIL'}  {name}")
    return EXIT_OK if ok else EXIT_FINDING


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ratspace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    a = sub.add_parser("analyze", help="analyze an instance file ('-' reads stdin)")
    a.add_argument("path")
    a.add_argument("--json", action="store_true")
    a.add_argument("--table", action="store_true", help="print the degree table")
    a.add_argument("--needed-col", type=int, default=None, metavar="I")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--field", default=None, help="q or fp:P; overrides the file header")
    a.add_argument("--max-dim", type=int, default=24)
    a.add_argument("--witness-dir", default=None)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("generate", help="print an instance file for a family")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("params", nargs="*", metavar="key=value")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--field", default=None)
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fuzz", help="analyze seeded random subspaces of L(D)")
    f.add_argument("--count", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--field", default=None)
    f.add_argument("--cross-field", default=None, metavar="FIELD",
                   help="also rebuild each instance over FIELD and compare")
    f.add_argument("--family", choices=("random-rr", "degset", "mixed"), default="random-rr")
    f.add_argument("--min-dim", type=int, default=3)
    f.add_argument("--max-gen-dim", type=int, default=7)
    f.add_argument("--max-poles", type=int, default=2)
    f.add_argument("--extra-degree", type=int, default=2)
    f.add_argument("--max-dim", type=int, default=24)
    f.add_argument("--witness-dir", default="witnesses")
    f.add_argument("--json", action="store_true")
    f.set_defaults(func=cmd_fuzz)

    z = sub.add_parser("freiman", help="check the 3k-4 theorem on an integer set")
    z.add_argument("set", help="comma-separated integers, e.g. 0,1,2,4")
    z.add_argument("--json", action="store_true")
    z.set_defaults(func=cmd_freiman)

    s = sub.add_parser("selftest", help="run a short built-in battery")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonSplitPlace as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONSPLIT
    except InternalInvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (ParseError, NotPrime, ZeroDenominator, ValueError, OSError, RatspaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
