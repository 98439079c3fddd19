"""Command line driver: `qqbraid verify <suite>` and `qqbraid texpr check`.

Exit codes: 0 all checks pass, 1 at least one failed, 2 usage error,
3 internal error.  JSON reports carry a schema version and are byte-stable
for a fixed seed (timings are only included with --timings).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import suites, texpr
from .presentations import make_presentation
from .reports import Report

SCHEMA = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        sys.exit(2)


def build_parser():
    p = _Parser(prog="qqbraid", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(suites.SUITES) + ["all"])
    v.add_argument("--n", type=int, default=None, help="super rank bound")
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--k", type=int, default=None)
    v.add_argument("--s", type=int, default=None)
    v.add_argument("--l", type=int, default=None)
    v.add_argument("--trials", type=int, default=None, help="confluence probe size")
    v.add_argument("--max-len", type=int, default=None)
    v.add_argument("--max-degree", type=int, default=None)
    v.add_argument("--seed", type=int, default=2024)
    v.add_argument("--jobs", type=int, default=1, help="bound on worker parallelism")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="include wall times in JSON")

    t = sub.add_parser("texpr", help="tensor-leg expression tools")
    tsub = t.add_subparsers(dest="texpr_command", required=True)
    c = tsub.add_parser("check", help="check a tensor-leg identity")
    c.add_argument("expr", help="identity, e.g. 'S^{12} S^{13} S^{23} == S^{23} S^{13} S^{12}'")
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--frames", type=int, default=1, help="frame count for generator matrices")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--out", default=None)
    return p


def _suite_params(args):
    params = {"seed": args.seed}
    if args.n is not None:
        params["n"] = args.n
    if args.trials is not None:
        params["trials"] = args.trials
    if args.max_len is not None:
        params["max_len"] = args.max_len
    if args.max_degree is not None:
        params["max_degree"] = args.max_degree
    explicit = {k: getattr(args, k) for k in ("r", "k", "s", "l") if getattr(args, k) is not None}
    params.update(explicit)
    for key, bound in (("n", 3), ("r", 3), ("k", 3), ("s", 3), ("l", 3), ("max_degree", 4)):
        if params.get(key) is not None and params[key] > bound:
            sys.stderr.write(
                "warning: %s=%d exceeds the desk-scale bound %d; expect long runtimes\n"
                % (key, params[key], bound)
            )
    return params


def _suite_kwargs(name, params):
    """Translate CLI parameters onto each suite's signature."""
    out = {}
    if name == "ybe":
        out["n"] = params.get("n", 3)
    elif name == "presentation":
        for k in ("trials", "max_len", "seed", "max_degree"):
            if k in params:
                out[k] = params[k]
        if "n" in params and "r" in params:
            out["pairs"] = ((params["r"], params["n"]),)
    elif name == "dual-lemma":
        out["s"] = params.get("s", 2)
        out["n"] = params.get("n", 2)
    elif name == "braiding":
        out["r"] = params.get("r", 2)
        out["k"] = params.get("k", 2)
        out["n"] = params.get("n", 2)
    elif name == "iso":
        if "max_degree" in params:
            out["max_degree"] = params["max_degree"]
    return out


def _json_report(rep, with_timing):
    body = rep.to_dict(with_timing=with_timing)
    body["reports"] = [r.to_dict(with_timing=with_timing) for r in getattr(rep, "subreports", [])]
    return body


def _emit(payload, fmt, out, with_timing=False):
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = payload
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def report_emit(report, fmt="text", with_timing=False):
    """Render one suite report as bytes-stable text or a JSON document."""
    if fmt == "json":
        return {"schema": SCHEMA, **_json_report(report, with_timing)}
    lines = [r.line() for r in getattr(report, "subreports", [report])]
    lines.append(report.line())
    return "\n".join(lines) + "\n"


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            params = _suite_params(args)
            if args.suite == "all":
                reps = suites.run_all(jobs=args.jobs, **{"seed": params.get("seed", 2024)})
                ok = all(r.passed for r in reps)
                if args.format == "json":
                    payload = {
                        "schema": SCHEMA,
                        "suite": "all",
                        "status": "pass" if ok else "fail",
                        "params": {"seed": params.get("seed", 2024)},
                        "reports": [_json_report(r, args.timings) for r in reps],
                    }
                    _emit(payload, "json", args.out)
                else:
                    chunks = [report_emit(r, "text") for r in reps]
                    chunks.append("overall: %s\n" % ("pass" if ok else "FAIL"))
                    _emit("".join(chunks), "text", args.out)
                return 0 if ok else 1
            rep = suites.run(args.suite, **_suite_kwargs(args.suite, params))
            if args.format == "json":
                _emit({"schema": SCHEMA, **_json_report(rep, args.timings)}, "json", args.out)
            else:
                _emit(report_emit(rep, "text"), "text", args.out)
            return 0 if rep.passed else 1
        if args.command == "texpr":
            env = texpr.ops_env(args.n)
            for fam, name in (
                ("A", "T"),
                ("APi", "Tcheck"),
                ("AbarNeg", "Tbar"),
                ("AbarPi", "Tbarcheck"),
            ):
                env[name] = texpr.generator_matrix(make_presentation(fam, args.frames, args.n))
            if args.frames:
                from . import supertensor as st

                env["R+"] = texpr.OperatorBinding(st.build_R_plus(args.frames))
                env["R-"] = texpr.OperatorBinding(st.build_R_minus(args.frames))
            try:
                ast = texpr.parse(args.expr)
            except texpr.TexprSyntaxError as exc:
                sys.stderr.write("error: %s\n" % exc)
                return 2
            rep = texpr.check_identity(ast, env)
            if args.format == "json":
                payload = {"schema": SCHEMA, **rep.to_dict()}
                payload["normalized"] = texpr.render(ast)
                _emit(payload, "json", args.out)
            else:
                _emit(rep.line() + "\n", "text", args.out)
            return 0 if rep.passed else 1
        raise AssertionError("unreachable")
    except texpr.TexprError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except BrokenPipeError:
        return 3
    except Exception as exc:  # internal error contract
        sys.stderr.write("internal error: %r\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
