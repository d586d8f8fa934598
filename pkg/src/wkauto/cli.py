"""Command-line interface: ``wkauto <command> ...``.

Exit codes: 0 accept / equivalent / success, 1 reject / counterexample,
2 usage, file or machine errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Optional, Sequence

from .core import WKError
from .lang import GALLERY, equivalent_up_to, language_sample
from .model import (
    OneWayMachine,
    TwoWayMachine,
    classify_subclass,
    classify_transition,
    is_deterministic,
    is_deterministic_two_way,
)
from .sim import run_one_way, run_two_way, trace_deterministic
from .transform import to_all_final
from .wkfile import LAMBDA_TOKEN, format_violation, parse, read_file, serialize

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2

RUN_SCHEMA = {
    "type": "object",
    "required": ["verdict", "reason", "word", "machine", "explored_configs", "trace"],
    "additionalProperties": False,
    "properties": {
        "verdict": {"enum": ["ACCEPT", "REJECT"]},
        "reason": {"enum": [None, "NoAcceptingRun", "Loop", "Halt", "FellOffNonFinal"]},
        "word": {"type": "string"},
        "machine": {"type": "string"},
        "explored_configs": {"type": "integer", "minimum": 0},
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["state", "upper_pos", "lower_pos", "rule"],
                "additionalProperties": False,
                "properties": {
                    "state": {"type": "string"},
                    "upper_pos": {"type": "integer", "minimum": 0},
                    "lower_pos": {"type": "integer", "minimum": 0},
                    "rule": {"type": ["string", "null"]},
                },
            },
        },
    },
}

EQUIV_SCHEMA = {
    "type": "object",
    "required": ["equivalent", "counterexample", "max_len", "checked"],
    "additionalProperties": False,
    "properties": {
        "equivalent": {"type": "boolean"},
        "counterexample": {"type": ["string", "null"]},
        "max_len": {"type": "integer", "minimum": 0},
        "checked": {"type": "integer", "minimum": 0},
    },
}

LANG_SCHEMA = {
    "type": "object",
    "required": ["machine", "max_len", "accepted"],
    "additionalProperties": False,
    "properties": {
        "machine": {"type": "string"},
        "max_len": {"type": "integer", "minimum": 0},
        "accepted": {"type": "array", "items": {"type": "string"}},
    },
}


class CLIError(WKError):
    pass


def load(path: str):
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def gallery_text(name: str) -> str:
    return resources.files("wkauto").joinpath("gallery", f"{name}.wk").read_text(encoding="utf-8")


def _word_arg(token: str) -> str:
    return "" if token == LAMBDA_TOKEN else token


def _show_word(word: str) -> str:
    return word or LAMBDA_TOKEN


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    with open(args.file, encoding="utf-8") as f:
        problems = read_file(f.read()).violations()
    for line, v in problems:
        print(format_violation(line, v))
    if problems:
        return EXIT_ERROR
    print("valid")
    return EXIT_OK


def cmd_classify(args) -> int:
    m = load(args.file)
    if isinstance(m, OneWayMachine):
        det, witness = is_deterministic(m)
        print("mode: one-way")
        print(f"deterministic: {det}")
        if witness:
            print(f"  conflict: {witness[0]}  /  {witness[1]}")
        return EXIT_OK
    flags = classify_subclass(m)
    det, witness = is_deterministic_two_way(m)
    print("mode: two-way")
    for name in ("stateless", "all_final", "simple", "one_limited"):
        print(f"{name}: {getattr(flags, name)}")
    print(f"deterministic: {det}")
    if witness:
        print(f"  conflict: {witness[0]}  /  {witness[1]}")
    print("transitions:")
    for t in m.transitions:
        print(f"  {classify_transition(t)}  {t}")
    return EXIT_OK


def _trace_rows(report) -> list[dict]:
    return [
        {
            "state": s.configuration.state,
            "upper_pos": s.configuration.upper_pos,
            "lower_pos": s.configuration.lower_pos,
            "rule": None if s.rule is None else str(s.rule),
        }
        for s in report.trace
    ]


def _one_way_rows(m: OneWayMachine, verdict) -> list[dict]:
    rows, q, i, j = [], m.initial, 0, 0
    for t in verdict.witness:
        rows.append({"state": q, "upper_pos": i, "lower_pos": j, "rule": str(t)})
        q, i, j = t.target, i + len(t.upper), j + len(t.lower)
    if verdict.accepted:
        rows.append({"state": q, "upper_pos": i, "lower_pos": j, "rule": None})
    return rows


def cmd_run(args) -> int:
    m = load(args.file)
    word = _word_arg(args.word)
    if isinstance(m, OneWayMachine):
        if args.trace and not is_deterministic(m)[0]:
            raise CLIError("--trace requires a deterministic machine")
        report = run_one_way(m, word)
        rows = _one_way_rows(m, report.verdict)
    else:
        if args.trace:
            if not is_deterministic_two_way(m)[0]:
                raise CLIError("--trace requires a deterministic machine")
            report = trace_deterministic(m, word)
        else:
            report = run_two_way(m, word)
        rows = _trace_rows(report)
    v = report.verdict
    if args.json:
        print(json.dumps({
            "verdict": v.outcome.value,
            "reason": None if v.reason is None else v.reason.value,
            "word": word,
            "machine": args.file,
            "explored_configs": report.explored,
            "trace": rows,
        }, indent=2))
    else:
        print(v.outcome.value)
        if args.trace:
            for r in rows:
                rule = f"  {r['rule']}" if r["rule"] else ""
                print(f"{r['state']} {r['upper_pos']} {r['lower_pos']}{rule}")
            if v.reason is not None:
                print(f"reason: {v.reason.value}")
    return EXIT_OK if v.accepted else EXIT_NO


def cmd_transform(args) -> int:
    m = load(args.file)
    if not isinstance(m, TwoWayMachine):
        raise CLIError("the all-final construction needs a two-way machine")
    result = to_all_final(m, prune=not args.no_prune)
    text = serialize(result.machine)
    if args.explain:
        # the ledger as comments keeps the output a valid .wk file
        notes = "".join(f"; {line}\n" for e in result.ledger for line in str(e).splitlines())
        if args.output:
            sys.stdout.write(notes)
        else:
            text = notes + text
    _write(text, args.output)
    return EXIT_OK


def cmd_equiv(args) -> int:
    m1, m2 = load(args.file1), load(args.file2)
    report = equivalent_up_to(m1, m2, args.max_len, cap=args.cap)
    if args.json:
        print(json.dumps({
            "equivalent": report.equivalent,
            "counterexample": report.counterexample,
            "max_len": report.max_len,
            "checked": report.checked,
        }, indent=2))
    elif report.equivalent:
        print(f"EQUIVALENT up to length {report.max_len} ({report.checked} words checked)")
    else:
        w = report.counterexample
        which = args.file1 if run_any(m1, w) else args.file2
        print(f"NOT EQUIVALENT: counterexample {_show_word(w)} accepted only by {which}")
    return EXIT_OK if report.equivalent else EXIT_NO


def run_any(m, word: str) -> bool:
    run = run_one_way if isinstance(m, OneWayMachine) else run_two_way
    return run(m, word).verdict.accepted


def cmd_lang(args) -> int:
    m = load(args.file)
    sample = language_sample(m, args.max_len, cap=args.cap, name=args.file)
    if args.json:
        print(json.dumps({"machine": args.file, "max_len": sample.max_len, "accepted": list(sample.accepted)}, indent=2))
    else:
        for w in sample.accepted:
            print(_show_word(w))
    return EXIT_OK


def cmd_gallery(args) -> int:
    _write(gallery_text(args.name), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wkauto", description="Watson-Crick automata toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="report structural problems")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="subclass flags and transition classes")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("run", help="decide membership of one word (use _ for the empty word)")
    s.add_argument("file")
    s.add_argument("word")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("transform", help="machine transformations")
    s.add_argument("kind", choices=["allfinal"])
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.add_argument("--explain", action="store_true")
    s.add_argument("--no-prune", action="store_true")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("equiv", help="bounded language equivalence")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--cap", type=int, help="raise the enumeration cap")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("lang", help="list accepted words up to a length")
    s.add_argument("file")
    s.add_argument("--max-len", type=int, required=True)
    s.add_argument("--cap", type=int, help="raise the enumeration cap")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lang)

    s = sub.add_parser("gallery", help="emit a shipped machine")
    s.add_argument("name", choices=sorted(GALLERY))
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gallery)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args)
    except (WKError, OSError) as e:
        print(f"wkauto: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
