"""shortpa command line.

Exit codes:
  0  success
  2  bad input: unparsable matrix, slope, config or Sigma file, unknown claim
  3  construction could not certify a pseudo-Anosov after escalating P
  4  a certificate came back with verdict "fail"
"""

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import certify
from .annular import AnnularDomain, annular_distance
from .constructor import (
    CertificationFailed,
    InvalidOverride,
    construct_full_support,
    make_ledger,
    random_generator_set,
)
from .farey import distance, geodesic
from .torus import MappingClass, Slope, classify

EXIT_OK, EXIT_INPUT, EXIT_UNCERTIFIED, EXIT_CERT_FAIL = 0, 2, 3, 4
LEDGER_KEYS = {"c", "M", "Q", "k", "n", "P", "L_fujiwara"}
RUN_KEYS = {"seed", "jobs", "out", "format"}


class InputError(ValueError):
    pass


def read_config(text):
    """Parse the flat `key = value` config format.

    Blank lines and `#` comments are ignored; values may be quoted.  Ledger
    constants are integers except c, which may be a fraction like 1/2.
    """
    ledger, run = {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if len(val) >= 2 and val[0] == val[-1] and val[0] in "\"'":
            val = val[1:-1]
        if key in LEDGER_KEYS:
            try:
                ledger[key] = Fraction(val) if key == "c" else int(val)
            except ValueError:
                raise InputError(f"config line {lineno}: bad value for {key}: {val!r}")
        elif key in RUN_KEYS:
            run[key] = int(val) if key in ("seed", "jobs") else val
        else:
            raise InputError(f"config line {lineno}: unknown key {key!r}")
    return ledger, run


def load_config(path):
    if not path:
        return {}, {}
    try:
        with open(path) as fh:
            return read_config(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read config: {exc}")


def read_sigma(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"Sigma file is not JSON: {exc}")
    if isinstance(data, dict):
        data = data.get("sigma", data.get("generators"))
    if not isinstance(data, list) or not data:
        raise InputError("Sigma file must hold a non-empty list of 2x2 matrices")
    try:
        return [MappingClass.parse(m) for m in data]
    except ValueError as exc:
        raise InputError(str(exc))


def _parse_matrix(text):
    try:
        return MappingClass.parse(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"bad matrix {text!r}: {exc}")


def _parse_slope(text):
    try:
        return Slope.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad slope {text!r}: {exc}")


def _emit(args, payload, text=None, name=None):
    # files are always JSON; the console gets text unless --format json
    as_json = json.dumps(payload, indent=2, sort_keys=True)
    if args.out and name:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w") as fh:
            fh.write(as_json + "\n")
        if text is not None and args.format != "json":
            print(text)
    else:
        print(as_json if args.format == "json" or text is None else text)


# --- commands -------------------------------------------------------------------

def cmd_classify(args):
    g = _parse_matrix(args.matrix)
    c = classify(g)
    _emit(args, c.to_json(), str(c))
    return EXIT_OK


def cmd_distance(args):
    a, b = _parse_slope(args.alpha), _parse_slope(args.beta)
    out = {"alpha": str(a), "beta": str(b), "distance": distance(a, b)}
    text = str(out["distance"])
    if args.path:
        verts = [str(v) for v in geodesic(a, b).vertices]
        out["geodesic"] = verts
        text += "\n" + " -> ".join(verts)
    _emit(args, out, text)
    return EXIT_OK


def cmd_project(args):
    core = _parse_slope(args.core)
    a, b = _parse_slope(args.alpha), _parse_slope(args.beta)
    d = annular_distance(AnnularDomain(core), a, b)
    out = {"core": str(core), "alpha": str(a), "beta": str(b), "defined": d.defined,
           "distance": d.value if d.defined else None}
    _emit(args, out, str(d.value) if d.defined else "undefined")
    return EXIT_OK


def cmd_construct(args, ledger):
    try:
        with open(args.sigma) as fh:
            sigma = read_sigma(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read Sigma file: {exc}")
    try:
        rep = construct_full_support(sigma, ledger)
    except CertificationFailed as exc:
        print(f"shortpa: {exc}", file=sys.stderr)
        return EXIT_UNCERTIFIED
    data = rep.to_json()
    text = (f"output {data['output_class']['kind']} on {rep.achieved}\n"
            f"word over Sigma: {data['output_word_compact'] or '(empty)'}\n"
            f"Sigma-length {rep.sigma_length} (K_bound {rep.ledger.K_bound})")
    _emit(args, data, text, "construction.json")
    return EXIT_OK if rep.ok else EXIT_UNCERTIFIED


def cmd_certify(args, ledger):
    claims = certify.CLAIMS if args.claim == "all" else [args.claim]
    if any(c not in certify.CLAIMS for c in claims):
        raise InputError(f"unknown claim {args.claim!r}; choose from {', '.join(certify.CLAIMS)} or all")
    certs = [certify.run_claim(c, seed=args.seed, jobs=args.jobs, ledger=ledger) for c in claims]
    if args.out:
        certify.write_certificates(certs, args.out)
    for c in certs:
        if args.format == "json" and not args.out:
            print(json.dumps(c.to_json(), indent=2, sort_keys=True))
        else:
            print(f"{c.claim_id}: {c.verdict} ({c.instances_checked} instances, {c.runtime_ms} ms)")
    return EXIT_OK if all(c.verdict == "pass" for c in certs) else EXIT_CERT_FAIL


SURVEY_FIELDS = ["index", "size", "kept", "target", "achieved", "cases", "sigma_length",
                 "K_bound", "within_K_bound", "escalations", "ok", "flag"]


def _survey_row(job):
    seed, i, ledger = job
    rng = random.Random(f"survey-{seed}-{i}")
    sigma = random_generator_set(rng)
    row = {"index": i, "size": len(sigma)}
    try:
        rep = construct_full_support(sigma, ledger)
    except CertificationFailed:
        row.update(flag="uncertified", ok=False)
        return row
    within = rep.sigma_length <= rep.ledger.K_bound
    row.update(kept=len(rep.kept), target=str(rep.target), achieved=str(rep.achieved),
               cases="+".join(rep.cases), sigma_length=rep.sigma_length,
               K_bound=rep.ledger.K_bound, within_K_bound=within,
               escalations=rep.escalations, ok=rep.ok,
               flag="" if rep.ok and within else "check")
    return row


def survey(count, seed=0, ledger=None, jobs=1):
    ledger = ledger or make_ledger()
    tasks = [(seed, i, ledger) for i in range(count)]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(_survey_row, tasks, chunksize=16))
    else:
        rows = [_survey_row(t) for t in tasks]
    lengths = sorted(r["sigma_length"] for r in rows if "sigma_length" in r)
    summary = {
        "count": count, "seed": seed, "K_bound": str(ledger.K_bound),
        "within_K_bound": sum(1 for r in rows if r.get("within_K_bound")),
        "flagged": sum(1 for r in rows if r.get("flag")),
        "escalated": sum(1 for r in rows if r.get("escalations")),
        "max_sigma_length": lengths[-1] if lengths else None,
        "median_sigma_length": lengths[len(lengths) // 2] if lengths else None,
    }
    return rows, summary


def rows_to_csv(rows):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SURVEY_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def cmd_survey(args, ledger):
    if args.count < 1:
        raise InputError("count must be at least 1")
    rows, summary = survey(args.count, args.seed, ledger, args.jobs)
    table = rows_to_csv(rows)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "survey.csv"), "w") as fh:
            fh.write(table)
        with open(os.path.join(args.out, "survey_summary.json"), "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
        print(json.dumps(summary, indent=2, sort_keys=True))
    elif args.format == "json":
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        sys.stdout.write(table)
    return EXIT_OK


# --- entry point ------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"shortpa: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    common.add_argument("--config", help="flat key = value file with ledger overrides")
    common.add_argument("--out", help="directory for JSON/CSV output")
    common.add_argument("--format", choices=("json", "text"), default=None)

    p = _Parser(prog="shortpa", description="Short pseudo-Anosov words in the punctured torus mapping class group.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="classify a matrix, e.g. '[[1,1],[1,2]]'")
    s.add_argument("matrix")
    s = sub.add_parser("construct", parents=[common], help="build a full-support element from a Sigma file")
    s.add_argument("sigma", help="JSON list of 2x2 integer matrices")
    s = sub.add_parser("certify", parents=[common], help="run a certificate sweep")
    s.add_argument("claim", help=f"one of {', '.join(certify.CLAIMS)}, or all")
    s = sub.add_parser("survey", parents=[common], help="run construct on random generator sets")
    s.add_argument("count", type=int)
    s = sub.add_parser("distance", parents=[common], help="Farey distance between two slopes")
    s.add_argument("alpha")
    s.add_argument("beta")
    s.add_argument("--path", action="store_true", help="also print a geodesic")
    s = sub.add_parser("project", parents=[common], help="annular projection distance about a core")
    s.add_argument("--core", required=True)
    s.add_argument("alpha")
    s.add_argument("beta")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        overrides, run = load_config(args.config)
        args.seed = args.seed if args.seed is not None else run.get("seed", 0)
        args.jobs = args.jobs if args.jobs is not None else run.get("jobs", 1)
        args.out = args.out or run.get("out")
        args.format = args.format or run.get("format", "text")
        if args.format not in ("json", "text"):
            raise InputError(f"format must be json or text, not {args.format!r}")
        try:
            ledger = make_ledger(overrides)
        except InvalidOverride as exc:
            raise InputError(f"invalid ledger override: {exc}")
        cmd = args.command
        if cmd == "classify":
            return cmd_classify(args)
        if cmd == "distance":
            return cmd_distance(args)
        if cmd == "project":
            return cmd_project(args)
        if cmd == "construct":
            return cmd_construct(args, ledger)
        if cmd == "certify":
            return cmd_certify(args, ledger)
        return cmd_survey(args, ledger)
    except InputError as exc:
        print(f"shortpa: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
