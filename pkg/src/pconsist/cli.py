"""Command-line front end.

Usage::

    pconsist check   KBFILE [--minimize] [--json]
    pconsist entail  KBFILE "p & b -> ~f" [--json]
    pconsist witness KBFILE --epsilon 1/10 [--json]
    pconsist eval    MODELFILE "a -> b" [--json]

Exit codes:
  0 = consistent / entailed / model evaluated
  1 = inconsistent / not entailed / ambiguous
  2 = parse or contract error
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, TextIO

from .consistency import Consistent, check_consistency, minimize_core
from .engine import Entailment, p_entails, strict_entailment_support
from .errors import ContractViolation, PConsistError
from .kb import KnowledgeBase, parse_conditional
from .semantics import ProbabilityModel, build_witness_model, conditional_probability

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _ratio(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _bits(t: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in sorted(t.items()))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pconsist",
        description="Probabilistic consistency and entailment for defeasible/strict knowledge bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide p-consistency of a KB file")
    check.add_argument("kbfile")
    check.add_argument("--minimize", action="store_true", help="shrink the core to a minimal one")
    check.add_argument("--json", action="store_true")

    entail = sub.add_parser("entail", help="test whether a KB entails a conditional")
    entail.add_argument("kbfile")
    entail.add_argument("query", help="'a -> b' for p-entailment, 'a => b' for strict")
    entail.add_argument("--json", action="store_true")

    witness = sub.add_parser("witness", help="build an epsilon-model for a consistent KB")
    witness.add_argument("kbfile")
    witness.add_argument("--epsilon", required=True, help="rational in (0, 1), e.g. 1/10")
    witness.add_argument("--json", action="store_true")

    ev = sub.add_parser("eval", help="probability of a conditional under an exported model")
    ev.add_argument("modelfile")
    ev.add_argument("query")
    ev.add_argument("--json", action="store_true")
    return parser


def _cmd_check(args, out: TextIO) -> int:
    kb = KnowledgeBase.load(args.kbfile)
    verdict = check_consistency(kb)
    if isinstance(verdict, Consistent):
        if args.json:
            json.dump(
                {
                    "verdict": "Consistent",
                    "core": [],
                    "removals": [[i, t] for i, t in verdict.removals],
                    "strict_witnesses": {str(i): t for i, t in verdict.strict_witnesses.items()},
                },
                out,
            )
            out.write("\n")
        else:
            out.write("Consistent\n")
            for i, t in verdict.removals:
                out.write(f"  tolerated {i}: {kb[i]}  [{_bits(t)}]\n")
            for i, t in verdict.strict_witnesses.items():
                out.write(f"  strict {i}: {kb[i]}  [{_bits(t)}]\n")
        return EXIT_OK

    core = minimize_core(kb, verdict.core) if args.minimize else verdict.core
    if args.json:
        json.dump(
            {
                "verdict": "Inconsistent",
                "phase": verdict.phase.value,
                "minimized": args.minimize,
                "core": sorted(core),
                "removals": [],
            },
            out,
        )
        out.write("\n")
    else:
        label = "minimal core" if args.minimize else "core"
        out.write(f"Inconsistent ({verdict.phase.value})\n{label}:\n")
        for i in sorted(core):
            out.write(f"  {i}: {kb[i]}\n")
    return EXIT_NEGATIVE


def _cmd_entail(args, out: TextIO) -> int:
    kb = KnowledgeBase.load(args.kbfile)
    query = parse_conditional(args.query)
    if query.is_strict:
        support = strict_entailment_support(kb, query)
        entailed = support is not None
        verdict = "StrictlyEntailed" if entailed else "NotStrictlyEntailed"
        payload = {
            "verdict": verdict,
            "query": query.text(),
            "entailment": "strict",
            "support": sorted(support) if entailed else [],
        }
    else:
        result = p_entails(kb, query)
        entailed = result.kind is Entailment.ENTAILED
        verdict = result.kind.value
        payload = {"verdict": verdict, "query": query.text(), "entailment": "p", "support": []}

    if args.json:
        json.dump(payload, out)
        out.write("\n")
    else:
        out.write(f"{verdict}\n")
        if payload["support"]:
            out.write("  via strict sentences " + ", ".join(map(str, payload["support"])) + "\n")
    return EXIT_OK if entailed else EXIT_NEGATIVE


def _cmd_witness(args, out: TextIO) -> int:
    kb = KnowledgeBase.load(args.kbfile)
    try:
        epsilon = Fraction(args.epsilon)
    except (ValueError, ZeroDivisionError):
        raise ContractViolation(f"bad epsilon {args.epsilon!r}") from None
    verdict = check_consistency(kb)
    if not isinstance(verdict, Consistent):
        if args.json:
            json.dump({"verdict": "Inconsistent", "core": sorted(verdict.core)}, out)
            out.write("\n")
        else:
            out.write("Inconsistent: no witness model exists\n")
        return EXIT_NEGATIVE

    model = build_witness_model(verdict, epsilon)
    probabilities = {x.text(): _ratio(conditional_probability(model, x)) for x in kb}
    if args.json:
        json.dump(
            {
                "verdict": "Consistent",
                "epsilon": _ratio(epsilon),
                "model": model.to_dict(),
                "probabilities": probabilities,
            },
            out,
        )
        out.write("\n")
    else:
        out.write(f"Consistent; witness model for epsilon = {_ratio(epsilon)}\n")
        for t, w in model.points:
            out.write(f"  {_ratio(w):>12}  [{_bits(t)}]\n")
        for text, p in probabilities.items():
            out.write(f"  P({text}) = {p}\n")
    return EXIT_OK


def _cmd_eval(args, out: TextIO) -> int:
    data = json.loads(Path(args.modelfile).read_text(encoding="utf-8"))
    # accept either a bare model or the output of `witness --json`
    model = ProbabilityModel.from_dict(data.get("model", data))
    query = parse_conditional(args.query)
    p = conditional_probability(model, query)
    if args.json:
        json.dump({"verdict": "Evaluated", "query": query.text(), "probability": _ratio(p)}, out)
        out.write("\n")
    else:
        out.write(f"{_ratio(p)}\n")
    return EXIT_OK


_COMMANDS = {
    "check": _cmd_check,
    "entail": _cmd_entail,
    "witness": _cmd_witness,
    "eval": _cmd_eval,
}


def run_cli(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return _COMMANDS[args.command](args, out)
    except (PConsistError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
