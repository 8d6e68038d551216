"""Command-line front end.

Subcommands: moment, count, sample, shuffle, dist, verify, mc, clt.
Exact rationals are printed as ``num/den`` (never through floating point);
a float64 rendering is provided in a separate column for convenience. JSON
artifacts carry the schema version field ``incseq/1``.

Exit codes: 0 success, 1 assertion/check failure, 2 configuration error,
3 enumeration budget exceeded. A key=value config file can preload any
long-option default; explicit flags win. The INCSEQ_BUDGET environment
variable sets the default enumeration budget.
"""
from __future__ import annotations

import argparse
import csv
import inspect
import json
import sys
from fractions import Fraction

from . import distributions as distmod
from . import empirics, moments, sampling, seqstats, verify
from .distributions import BudgetError
from .exactarith import format_fraction, parse_fraction
from .moments import ProbVector

SCHEMA = "incseq/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3


class ConfigError(Exception):
    pass


def _parse_probs(text: str) -> ProbVector:
    try:
        return ProbVector([parse_fraction(x) for x in text.split(",")])
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad probability vector {text!r}: {exc}") from exc


def _parse_int_list(text: str, n_for_all: int | None = None) -> list[int]:
    """Accept '3', '1,4,9', '2:6', or 'all' (needs an n to bound it)."""
    text = text.strip()
    if text == "all":
        if n_for_all is None:
            raise ConfigError("'all' needs a concrete n")
        return list(range(n_for_all + 1))
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _parse_seq(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def _emit(rows: list[dict], header: list[str], args, payload_key: str = "rows"):
    out = sys.stdout if args.out is None else open(args.out, "w")
    try:
        if args.format == "csv":
            w = csv.DictWriter(out, fieldnames=header)
            w.writeheader()
            for r in rows:
                w.writerow(r)
        else:
            json.dump({"schema": SCHEMA, payload_key: rows}, out, indent=2)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _float_repr(x: Fraction) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# moment

MOMENT_STATS = ("weak-inc-k", "strict-inc-k", "weak-inc-total",
                "strict-inc-total", "weak-inc-total-bounds", "inversions",
                "steele", "var-const-perm", "var-const-word",
                "leading-2nd-perm", "leading-2nd-word", "mean-total-word-asymp",
                "cyc3-coeff", "cyc2-coeff")


def _moment_rows(args) -> list[dict]:
    stat = args.stat
    rows = []

    def row(n, k, value, method="closed-form", a_or_p=None):
        if a_or_p is None:
            a_or_p = args.a if args.a is not None else \
                (",".join(format_fraction(x) for x in p.probs) if args.p else "")
        rows.append({"statistic": stat, "moment": args.moment, "n": n, "k": k,
                     "a_or_p": a_or_p, "value": format_fraction(value),
                     "value_float": _float_repr(Fraction(value)),
                     "method": method})

    p = _parse_probs(args.p) if args.p else None
    if stat in ("weak-inc-k", "strict-inc-k", "weak-inc-total",
                "strict-inc-total", "weak-inc-total-bounds", "inversions",
                "steele", "mean-total-word-asymp"):
        if args.n is None:
            raise ConfigError(f"--n required for {stat}")
        ns = _parse_int_list(args.n)
    else:
        ns = [None]

    for n in ns:
        ks = _parse_int_list(args.k, n) if args.k is not None else [None]
        for k in ks:
            if stat == "weak-inc-k":
                if k is None:
                    raise ConfigError("--k required")
                if p is not None:
                    if args.moment == 1:
                        row(n, k, moments.mean_weak_inc_general(n, k, p).value)
                    else:
                        t = distmod.dist_word_stat(n, p, f"weak-inc-{k}",
                                                   budget=args.budget)
                        row(n, k, t.second_moment(), method="enumeration")
                else:
                    if args.a is None:
                        raise ConfigError("need --a or --p")
                    if args.moment == 1:
                        row(n, k, moments.mean_weak_inc_uniform(n, k, args.a).value)
                    else:
                        row(n, k, moments.second_moment_weak_inc_uniform(n, k, args.a).value)
            elif stat == "strict-inc-k":
                if k is None:
                    raise ConfigError("--k required")
                value = moments.mean_inc_perm(n, k).value if args.moment == 1 \
                    else moments.second_moment_inc_perm(n, k).value
                row(n, k, value, a_or_p="")
            elif stat == "weak-inc-total":
                if args.moment != 1:
                    raise ConfigError("only the mean has a closed form; "
                                      "use weak-inc-total-bounds or dist")
                value = moments.mean_total_words(n, p=p, a=args.a).value
                row(n, "", value)
            elif stat == "weak-inc-total-bounds":
                if args.a is None:
                    raise ConfigError("need --a")
                lo, up = moments.bounds_second_moment_total_uniform(n, args.a)
                row(n, "", lo, method="lower-bound")
                row(n, "", up, method="upper-bound")
            elif stat == "strict-inc-total":
                value = moments.mean_total_perm(n).value if args.moment == 1 \
                    else moments.second_moment_total_perm(n).value
                row(n, "", value, a_or_p="")
            elif stat == "inversions":
                if args.a is None:
                    raise ConfigError("need --a")
                mean, var = moments.inv_word_moments(n, args.a)
                value = mean if args.moment == 1 else var + mean * mean
                row(n, "", value)
            elif stat == "steele":
                mean, second = moments.steele_moments(n)
                row(n, "", mean if args.moment == 1 else second, a_or_p="")
            elif stat == "mean-total-word-asymp":
                if args.a is None:
                    raise ConfigError("need --a")
                row(n, "", moments.mean_total_word_asymp(n, args.a))
            elif stat == "var-const-perm":
                row("", k, moments.var_asymp_const_perm(k).value, a_or_p="")
            elif stat == "var-const-word":
                if args.a is None:
                    raise ConfigError("need --a")
                row("", k, moments.var_asymp_const_word(k, args.a).value)
            elif stat == "leading-2nd-perm":
                row("", k, moments.leading_coeffs(k).value, a_or_p="")
            elif stat == "leading-2nd-word":
                if args.a is None:
                    raise ConfigError("need --a")
                row("", k, moments.leading_coeffs(k, args.a).value)
            elif stat == "cyc3-coeff":
                if args.a is None or args.t is None or k is None:
                    raise ConfigError("need --k, --t, --a")
                row("", k, moments.cyc3_coeff_closed(k, args.t, args.a),
                    method=f"t={args.t}")
            elif stat == "cyc2-coeff":
                if args.t is None or k is None:
                    raise ConfigError("need --k, --t")
                row("", k, moments.cyc2_coeff_closed(k, args.t),
                    method=f"t={args.t}", a_or_p="")
            else:
                raise ConfigError(f"unknown stat {stat!r}")
    return rows


def _cmd_moment(args) -> int:
    rows = _moment_rows(args)
    _emit(rows, ["statistic", "moment", "n", "k", "a_or_p", "value",
                 "value_float", "method"], args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# count

def _cmd_count(args) -> int:
    seq = _parse_seq(args.seq)
    if args.total:
        value = seqstats.count_weak_inc_total(seq) if args.relation == "weak" \
            else seqstats.count_strict_inc_total(seq)
    elif args.k is not None:
        value = seqstats.count_weak_inc_k(seq, args.k) if args.relation == "weak" \
            else seqstats.count_strict_inc_k(seq, args.k)
    else:
        raise ConfigError("give --k or --total")
    status = EXIT_OK
    if args.oracle:
        oracle = seqstats.brute_total(seq, args.relation) if args.total \
            else seqstats.brute_count(seq, args.k, args.relation)
        if oracle != value:
            print(f"{value} (oracle MISMATCH: {oracle})")
            return EXIT_CHECK_FAILED
        print(f"{value} (oracle agrees)")
        return status
    print(value)
    return status


# ---------------------------------------------------------------------------
# sample / shuffle

def _cmd_sample(args) -> int:
    p = _parse_probs(args.p) if args.p else (
        ProbVector.uniform(args.a) if args.a else None)
    base, rem = divmod(args.samples, args.streams)
    rows = []
    idx = 0
    for stream in range(args.streams):
        m = base + (1 if stream < rem else 0)
        if m == 0:
            continue
        if args.model == "word":
            if p is None:
                raise ConfigError("need --a or --p")
            batch = sampling.sample_words_batch(m, args.n, p, args.seed, stream)
        elif args.model == "perm":
            batch = sampling.sample_perms_batch(m, args.n, args.seed, stream)
        else:
            raise ConfigError("sample model must be word or perm")
        values = empirics.evaluate_statistic(batch, args.stat) if args.stat else None
        for i in range(m):
            r = {"index": idx, "stream": stream,
                 "seq": " ".join(str(int(x)) for x in batch[i])}
            if values is not None:
                r["stat"] = args.stat
                r["value"] = int(values[i])
            rows.append(r)
            idx += 1
    header = ["index", "stream", "seq"] + (["stat", "value"] if args.stat else [])
    _emit(rows, header, args, payload_key="samples")
    return EXIT_OK


def _cmd_shuffle(args) -> int:
    p = _parse_probs(args.p) if args.p else ProbVector.uniform(args.a)
    rows = []
    for idx in range(args.samples):
        if args.method == "forward":
            perm = sampling.riffle_forward(args.n, p, args.seed, idx)
            digits = None
        else:
            perm, digits = sampling.riffle_inverse(args.n, p, args.seed, idx)
        r = {"index": idx, "perm": " ".join(map(str, perm)),
             "inversions": seqstats.inversions(perm)}
        if digits is not None:
            r["digits"] = " ".join(map(str, digits))
        rows.append(r)
    header = ["index", "perm", "inversions"] + ([] if args.method == "forward"
                                                else ["digits"])
    _emit(rows, header, args, payload_key="shuffles")
    return EXIT_OK


# ---------------------------------------------------------------------------
# dist

def _cmd_dist(args) -> int:
    if args.model == "word":
        p = _parse_probs(args.p) if args.p else ProbVector.uniform(args.a)
        table = distmod.dist_word_stat(args.n, p, args.stat, budget=args.budget)
    elif args.model == "perm":
        table = distmod.dist_perm_stat(args.n, args.stat, budget=args.budget)
    elif args.model == "riffle":
        p = _parse_probs(args.p) if args.p else ProbVector.uniform(args.a)
        table = distmod.dist_riffle(args.n, p, args.method, budget=args.budget)
    else:
        raise ConfigError(f"unknown model {args.model!r}")
    rows = [{"value": v, "prob": format_fraction(q), "prob_float": _float_repr(q)}
            for v, q in sorted(table.entries.items())]
    _emit(rows, ["value", "prob", "prob_float"], args, payload_key="entries")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _cmd_verify(args) -> int:
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    overrides = {"n_max": args.n_max, "a_max": args.a_max, "trials": args.trials,
                 "seed": args.seed}
    any_fail = False
    for name in names:
        fn = verify.SUITES[name]
        accepted = inspect.signature(fn).parameters
        kwargs = {k: v for k, v in overrides.items()
                  if v is not None and k in accepted}
        cases = fn(**kwargs)
        for c in cases:
            tag = "PASS" if c.ok else "FAIL"
            note = f"  ({c.note})" if c.note else ""
            print(f"{tag} [{c.suite}] {c.name}: {c.lhs} {c.relation} {c.rhs}{note}")
            any_fail = any_fail or not c.ok
        bad = len(verify.failures(cases))
        print(f"# suite {name}: {len(cases) - bad}/{len(cases)} passed")
    return EXIT_CHECK_FAILED if any_fail else EXIT_OK


# ---------------------------------------------------------------------------
# mc / clt

def _model_p(args) -> ProbVector | None:
    if args.p:
        return _parse_probs(args.p)
    if args.a:
        return ProbVector.uniform(args.a)
    return None


def _cmd_mc(args) -> int:
    p = _model_p(args)
    report = empirics.mc_run(args.model, args.stat, args.n, args.samples,
                             args.seed, args.streams, p)
    payload = report.to_dict()
    status = EXIT_OK
    if args.check_mean:
        exact_mean, _ = empirics.exact_mean_var(args.model, args.stat, args.n, p)
        payload["exact_mean"] = format_fraction(exact_mean)
        gap = abs(report.mean - float(exact_mean))
        payload["mean_gap_sigmas"] = gap / report.stderr if report.stderr else 0.0
        if report.stderr and gap > args.sigma * report.stderr:
            payload["check"] = "FAIL"
            status = EXIT_CHECK_FAILED
        else:
            payload["check"] = "PASS"
    _emit_json_report(payload, args.out)
    return status


def _cmd_clt(args) -> int:
    p = _model_p(args)
    report = empirics.clt_diagnostic(args.model, args.stat, args.n, args.samples,
                                     args.seed, args.streams, p)
    payload = report.to_dict()
    status = EXIT_OK
    if args.threshold is not None:
        payload["threshold"] = args.threshold
        if report.ks_to_normal > args.threshold:
            payload["check"] = "FAIL"
            status = EXIT_CHECK_FAILED
        else:
            payload["check"] = "PASS"
    _emit_json_report(payload, args.out)
    return status


def _emit_json_report(payload: dict, out_path: str | None) -> None:
    text = json.dumps({"schema": SCHEMA, "report": payload}, indent=2)
    if out_path is None:
        print(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")


# ---------------------------------------------------------------------------
# parser plumbing

def _add_common(sp, budget=False):
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    if budget:
        sp.add_argument("--budget", type=int, default=None,
                        help="enumeration state budget (default INCSEQ_BUDGET or 10^7)")


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    ap = argparse.ArgumentParser(
        prog="incseq",
        description="Increasing-subsequence statistics: exact moments, "
                    "distributions, samplers and Monte-Carlo diagnostics.")
    ap.add_argument("--config", default=None,
                    help="key=value file preloading option defaults; flags win")
    sub = ap.add_subparsers(dest="command", required=True)

    mo = sub.add_parser("moment", help="closed-form moments over a grid")
    mo.add_argument("--stat", required=True, choices=MOMENT_STATS,
                    help="statistic id (weak-inc-k is the word count of length k, "
                         "strict-inc-k the permutation count, ...)")
    mo.add_argument("--moment", type=int, choices=(1, 2), default=1)
    mo.add_argument("--n", default=None, help="int, list (1,2), range (1:6)")
    mo.add_argument("--k", default=None, help="int, list, range, or 'all'")
    mo.add_argument("--a", type=int, default=None)
    mo.add_argument("--t", type=int, default=None, help="cycle power index")
    mo.add_argument("--p", default=None, help="rational probs '1/3,2/3'")
    _add_common(mo, budget=True)
    mo.set_defaults(fn=_cmd_moment)

    co = sub.add_parser("count", help="count statistics of a given sequence")
    co.add_argument("--seq", required=True, help="comma-separated letters")
    co.add_argument("--k", type=int, default=None)
    co.add_argument("--total", action="store_true")
    co.add_argument("--relation", choices=("weak", "strict"), default="weak")
    co.add_argument("--oracle", action="store_true",
                    help="cross-check against brute-force enumeration")
    co.set_defaults(fn=_cmd_count)

    sa = sub.add_parser("sample", help="draw words or permutations")
    sa.add_argument("--model", choices=("word", "perm"), required=True)
    sa.add_argument("--n", type=int, required=True)
    sa.add_argument("--a", type=int, default=None)
    sa.add_argument("--p", default=None)
    sa.add_argument("--samples", type=int, default=1)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--streams", type=int, default=1)
    sa.add_argument("--stat", default=None, help="also evaluate a statistic")
    _add_common(sa)
    sa.set_defaults(fn=_cmd_sample)

    sh = sub.add_parser("shuffle", help="riffle shuffles (forward or inverse)")
    sh.add_argument("--n", type=int, required=True)
    sh.add_argument("--a", type=int, default=2)
    sh.add_argument("--p", default=None)
    sh.add_argument("--method", choices=("forward", "inverse"), default="inverse")
    sh.add_argument("--samples", type=int, default=1)
    sh.add_argument("--seed", type=int, default=0)
    _add_common(sh)
    sh.set_defaults(fn=_cmd_shuffle)

    di = sub.add_parser("dist", help="exact distribution tables")
    di.add_argument("--model", choices=("word", "perm", "riffle"), required=True)
    di.add_argument("--stat", default=None,
                    help="weak-inc-K, strict-inc-K, weak-inc-total, "
                         "strict-inc-total, inversions, steele-vs-identity")
    di.add_argument("--n", type=int, required=True)
    di.add_argument("--a", type=int, default=None)
    di.add_argument("--p", default=None)
    di.add_argument("--method", choices=("forward", "inverse"), default="inverse")
    _add_common(di, budget=True)
    di.set_defaults(fn=_cmd_dist)

    ve = sub.add_parser("verify", help="exact inequality/identity suites")
    ve.add_argument("--suite", choices=tuple(verify.SUITES) + ("all",),
                    default="all")
    ve.add_argument("--n-max", dest="n_max", type=int, default=None)
    ve.add_argument("--a-max", dest="a_max", type=int, default=None)
    ve.add_argument("--trials", type=int, default=None)
    ve.add_argument("--seed", type=int, default=None)
    ve.set_defaults(fn=_cmd_verify)

    mc = sub.add_parser("mc", help="Monte-Carlo estimate with exact-mean check")
    mc.add_argument("--model", choices=empirics.MODELS, required=True)
    mc.add_argument("--stat", required=True)
    mc.add_argument("--n", type=int, required=True)
    mc.add_argument("--a", type=int, default=None)
    mc.add_argument("--p", default=None)
    mc.add_argument("--samples", type=int, required=True)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--streams", type=int, default=1)
    mc.add_argument("--check-mean", dest="check_mean", action="store_true")
    mc.add_argument("--sigma", type=float, default=5.0)
    mc.add_argument("--out", default=None)
    mc.set_defaults(fn=_cmd_mc)

    cl = sub.add_parser("clt", help="Kolmogorov distance to the normal limit")
    cl.add_argument("--model", choices=empirics.MODELS, required=True)
    cl.add_argument("--stat", required=True)
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--a", type=int, default=None)
    cl.add_argument("--p", default=None)
    cl.add_argument("--samples", type=int, required=True)
    cl.add_argument("--seed", type=int, default=0)
    cl.add_argument("--streams", type=int, default=1)
    cl.add_argument("--threshold", type=float, default=None)
    cl.add_argument("--out", default=None)
    cl.set_defaults(fn=_cmd_clt)
    subparsers = {"moment": mo, "count": co, "sample": sa, "shuffle": sh,
                  "dist": di, "verify": ve, "mc": mc, "clt": cl}
    return ap, subparsers


def _load_config(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"bad config line {line!r}")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config_defaults(subparsers: dict, raw: dict) -> None:
    """Push config values into every subparser that defines the key,
    coerced through the option's declared type. Explicit flags still win."""
    for sp in subparsers.values():
        overrides = {}
        for action in sp._actions:
            if action.dest in raw:
                value = raw[action.dest]
                overrides[action.dest] = action.type(value) if action.type else value
        if overrides:
            sp.set_defaults(**overrides)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    ap, subparsers = build_parser()
    try:
        pre, _ = ap.parse_known_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    if getattr(pre, "config", None):
        try:
            raw = _load_config(pre.config)
            _apply_config_defaults(subparsers, raw)
        except (OSError, ConfigError, ValueError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
