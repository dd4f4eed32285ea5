"""Command-line front end.

Exit codes: 0 success or affirmative answer, 1 negative answer or rule
not applicable, 2 usage error, 3 inconclusive (a cap was hit).  JSON
output is stable: fixed two-space indentation with sorted keys, so it
round-trips byte-for-byte.
"""

from __future__ import annotations

import argparse
import json
import sys

from parikh import irreducibility, search, transforms
from parikh.errors import (
    CapError,
    MembershipError,
    ParikhError,
    PatternError,
    RangeError,
)
from parikh.matrices import (
    m_equivalent,
    parikh_matrix,
    strongly_m_equivalent,
)
from parikh.search import Status
from parikh.transforms import (
    FactorSpan,
    SwapSpec,
    TripleClass,
    TripleFactorSpec,
)
from parikh.words import Alphabet, OrderedAlphabet, count_factor, count_subword

CLI_ALPHABET_CAP = 6

# Domain-rule failures: the request was well-formed but the rule does not
# apply; these exit 1 rather than 2.
_NEGATIVE_ERRORS = (
    transforms.NotE1Error
    if False
    else tuple()
)


class _UsageError(Exception):
    pass


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _parse_ints(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"{flag} expects comma-separated integers, got {text!r}")


def _parse_site(text: str) -> tuple[int, int]:
    parts = _parse_ints(text, "--site")
    if len(parts) != 2:
        raise _UsageError(f"--site expects two positions, got {text!r}")
    return parts  # type: ignore[return-value]


def _parse_grouping(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        left, sep, right = chunk.partition("-")
        if not sep:
            raise _UsageError(
                f"--grouping expects items like 0-1, got {chunk!r}"
            )
        try:
            pairs.append((int(left), int(right)))
        except ValueError:
            raise _UsageError(f"bad grouping item {chunk!r}")
    return pairs


def _parse_factors(text: str) -> list[FactorSpan]:
    factors = []
    for chunk in text.split(","):
        span, sep, cls_name = chunk.partition(":")
        start, sep2, end = span.partition("-")
        if not sep or not sep2:
            raise _UsageError(
                f"--factors expects items like 0-4:AB, got {chunk!r}"
            )
        try:
            cls = TripleClass[cls_name.strip().upper()]
        except KeyError:
            raise _UsageError(f"unknown factor class {cls_name!r}")
        try:
            factors.append(FactorSpan(int(start), int(end), cls))
        except ValueError:
            raise _UsageError(f"bad factor span {span!r}")
        except RangeError as exc:
            raise _UsageError(str(exc))
    return factors


def _context(args):
    try:
        alphabet = Alphabet(args.alphabet)
    except ParikhError as exc:
        raise _UsageError(str(exc))
    order_text = args.order or "<".join(alphabet.letters)
    try:
        ordering = OrderedAlphabet(alphabet, tuple(order_text.split("<")))
    except ParikhError as exc:
        raise _UsageError(str(exc))
    return alphabet, ordering


def _word(alphabet: Alphabet, text: str):
    try:
        return alphabet.word(text)
    except MembershipError as exc:
        raise _UsageError(str(exc))


def _swap_spec(word, args) -> SwapSpec:
    if len(args.pair) != 2:
        raise _UsageError(f"--pair expects two letters, got {args.pair!r}")
    positions = _parse_ints(args.blocks, "--blocks")
    try:
        return SwapSpec.from_word(word, tuple(args.pair), positions)
    except (PatternError, RangeError, MembershipError) as exc:
        raise _UsageError(str(exc))


def _spec_json(spec: SwapSpec) -> dict:
    return {
        "pair": "".join(spec.letter_pair),
        "blocks": [
            {"pos": block.pos, "kind": block.kind} for block in spec.blocks
        ],
    }


def _factors_json(spec: TripleFactorSpec) -> dict:
    return {
        "factors": [
            {"start": f.start, "end": f.end, "class": f.cls.name}
            for f in spec.factors
        ]
    }


def _derivation_json(derivation: search.Derivation) -> dict:
    steps = []
    for step in derivation.steps:
        item: dict = {"kind": step.kind.value, "at": list(step.data)}
        if step.counter is not None:
            item["counter"] = list(step.counter)
        steps.append(item)
    return {
        "start": str(derivation.start),
        "steps": steps,
        "result": str(derivation.replay()),
    }


def _print_derivation(derivation: search.Derivation) -> None:
    chain = derivation.words()
    print(str(chain[0]))
    for step, word in zip(derivation.steps, chain[1:]):
        at = ",".join(str(x) for x in step.data)
        note = f"  [{step.kind.value} at {at}"
        if step.counter is not None:
            note += f"; counter {tuple(step.counter)}"
        note += "]"
        print(f"-> {word}{note}")


def _cmd_matrix(args) -> int:
    alphabet, ordering = _context(args)
    word = _word(alphabet, args.word)
    matrix = parikh_matrix(word, ordering)
    if args.output == "json":
        _emit_json(matrix.to_lists())
    else:
        print(matrix.to_text())
    return 0


def _cmd_count(args) -> int:
    alphabet, _ = _context(args)
    word = _word(alphabet, args.word)
    pattern = _word(alphabet, args.pattern)
    try:
        value = (
            count_factor(word, pattern)
            if args.factor
            else count_subword(word, pattern)
        )
    except ParikhError as exc:
        raise _UsageError(str(exc))
    if args.output == "json":
        _emit_json(value)
    else:
        print(value)
    return 0


def _cmd_equiv(args) -> int:
    alphabet, ordering = _context(args)
    w1 = _word(alphabet, args.word1)
    w2 = _word(alphabet, args.word2)
    result = m_equivalent(w1, w2, ordering)
    if args.output == "json":
        _emit_json(
            {
                "equivalent": result,
                "ordering": str(ordering),
                "words": [str(w1), str(w2)],
            }
        )
    else:
        print(f"{'' if result else 'not '}M-equivalent under {ordering}")
    return 0 if result else 1


def _cmd_strong_equiv(args) -> int:
    alphabet, _ = _context(args)
    if alphabet.size > CLI_ALPHABET_CAP:
        raise _UsageError(
            f"alphabets above {CLI_ALPHABET_CAP} letters are not supported"
        )
    w1 = _word(alphabet, args.word1)
    w2 = _word(alphabet, args.word2)
    result = strongly_m_equivalent(w1, w2)
    if args.output == "json":
        _emit_json(
            {
                "alphabet": str(alphabet),
                "equivalent": result,
                "words": [str(w1), str(w2)],
            }
        )
    else:
        print(f"{'' if result else 'not '}strongly M-equivalent")
    return 0 if result else 1


def _cmd_class(args) -> int:
    alphabet, ordering = _context(args)
    if args.mode == "strong" and alphabet.size > CLI_ALPHABET_CAP:
        raise _UsageError(
            f"alphabets above {CLI_ALPHABET_CAP} letters are not supported"
        )
    word = _word(alphabet, args.word)
    members = search.enumerate_class(word, args.mode, ordering)
    listed = sorted(str(m) for m in members)
    if args.output == "json":
        payload = {"mode": args.mode, "size": len(listed), "words": listed}
        if args.mode == "m":
            payload["ordering"] = str(ordering)
        _emit_json(payload)
    else:
        for member in listed:
            print(member)
    return 0


def _cmd_transform(args) -> int:
    alphabet, ordering = _context(args)
    word = _word(alphabet, args.word)
    rule = args.rule

    if rule == "e1":
        result = transforms.apply_e1(word, args.pos, ordering)
        if args.output == "json":
            _emit_json(
                {"word": str(word), "pos": args.pos, "result": str(result)}
            )
        else:
            print(result)
        return 0

    if rule == "s2t":
        spec = _swap_spec(word, args)
        result = transforms.apply_strong_2t(word, spec)
        if args.output == "json":
            _emit_json(
                {
                    "word": str(word),
                    "result": str(result),
                    "spec": _spec_json(spec),
                }
            )
        else:
            print(result)
        return 0

    if rule == "s3t":
        spec = TripleFactorSpec(_parse_factors(args.factors))
        result = transforms.apply_strong_3t(word, spec)
        if args.output == "json":
            _emit_json(
                {
                    "word": str(word),
                    "result": str(result),
                    "spec": _factors_json(spec),
                }
            )
        else:
            print(result)
        return 0

    if rule == "classic2t":
        spec = _swap_spec(word, args)
        grouping = _parse_grouping(args.grouping) if args.grouping else []
        valid = transforms.validate_classic_2t(word, spec, grouping, ordering)
        result = transforms._apply_blocks(word, spec) if valid else None
        if args.output == "json":
            _emit_json(
                {
                    "word": str(word),
                    "ordering": str(ordering),
                    "valid": valid,
                    "result": None if result is None else str(result),
                    "spec": _spec_json(spec),
                    "grouping": [list(pair) for pair in grouping],
                }
            )
        else:
            print("valid" if valid else "not valid")
            if result is not None:
                print(result)
        return 0 if valid else 1

    if rule == "alphabeta":
        i, j = _parse_site(args.site)
        result, counter = transforms.apply_alpha_beta(word, i, j)
        if args.output == "json":
            _emit_json(
                {
                    "word": str(word),
                    "site": [i, j],
                    "result": str(result),
                    "counter": list(counter),
                }
            )
        else:
            print(result)
            print(f"counter {tuple(counter)}")
        return 0

    raise _UsageError(f"unknown transform rule {rule!r}")


def _stages_json(stages) -> list:
    return [
        {"word": str(word), "spec": _spec_json(spec)} for word, spec in stages
    ]


def _cmd_irreducible(args) -> int:
    alphabet, _ = _context(args)
    word = _word(alphabet, args.word)
    spec = _swap_spec(word, args)
    pq = irreducibility.compute_pq_pairs(word, spec)
    report = irreducibility.analyze(word, spec)
    stages = irreducibility.decompose(word, spec) if report.valid else None
    if args.output == "json":
        _emit_json(
            {
                "word": str(word),
                "spec": _spec_json(spec),
                "pq": [list(pair) for pair in pq],
                "valid": report.valid,
                "reducible": report.reducible,
                "witness": None
                if report.witness is None
                else list(report.witness),
                "stages": None if stages is None else _stages_json(stages),
            }
        )
    else:
        print("pq:", " ".join(f"({p},{q})" for p, q in pq))
        if not report.valid:
            print("not a strong transformation (sums do not vanish)")
        elif report.reducible:
            print(f"valid, reducible; witness blocks {set(report.witness)}")
        else:
            print("valid and irreducible")
        if stages is not None:
            for word_before, stage_spec in stages:
                print(
                    f"stage on {word_before}: blocks "
                    f"{','.join(str(p) for p in stage_spec.positions())}"
                )
    if not report.valid:
        return 1
    return 1 if report.reducible else 0


def _cmd_decompose(args) -> int:
    alphabet, _ = _context(args)
    word = _word(alphabet, args.word)
    spec = _swap_spec(word, args)
    stages = irreducibility.decompose(word, spec)
    result = transforms.apply_strong_2t(word, spec)
    if args.output == "json":
        _emit_json(
            {
                "word": str(word),
                "result": str(result),
                "stages": _stages_json(stages),
            }
        )
    else:
        for word_before, stage_spec in stages:
            print(
                f"{word_before} -> blocks "
                f"{','.join(str(p) for p in stage_spec.positions())}"
            )
        print(result)
    return 0


def _cmd_detect(args) -> int:
    alphabet, _ = _context(args)
    what = args.what

    if what == "sites":
        word = _word(alphabet, args.word1)
        sites = search.detect_alpha_beta_sites(word)
        if args.output == "json":
            _emit_json(
                {"word": str(word), "sites": [list(site) for site in sites]}
            )
        else:
            for i, j in sites:
                print(f"{i},{j}")
        return 0

    if args.word2 is None:
        raise _UsageError(f"detect {what} needs two words")
    w1 = _word(alphabet, args.word1)
    w2 = _word(alphabet, args.word2)

    if what == "s2t":
        spec = search.detect_strong_2t(w1, w2)
        if args.output == "json":
            _emit_json(
                {
                    "found": spec is not None,
                    "spec": None if spec is None else _spec_json(spec),
                }
            )
        else:
            print("none" if spec is None else _spec_text(spec))
        return 0 if spec is not None else 1

    if what == "s3t":
        spec3 = search.detect_strong_3t(w1, w2, args.factor_cap)
        if args.output == "json":
            _emit_json(
                {
                    "found": spec3 is not None,
                    "spec": None if spec3 is None else _factors_json(spec3),
                }
            )
        else:
            if spec3 is None:
                print("none")
            else:
                print(
                    ",".join(
                        f"{f.start}-{f.end}:{f.cls.name}"
                        for f in spec3.factors
                    )
                )
        return 0 if spec3 is not None else 1

    raise _UsageError(f"unknown detect target {what!r}")


def _spec_text(spec: SwapSpec) -> str:
    return (
        f"pair {''.join(spec.letter_pair)} blocks "
        + ",".join(str(block.pos) for block in spec.blocks)
    )


def _cmd_search(args) -> int:
    alphabet, _ = _context(args)
    w1 = _word(alphabet, args.word1)
    w2 = _word(alphabet, args.word2)
    if args.mode == "mse":
        outcome = search.mse_equivalent(w1, w2, args.node_cap)
    else:
        outcome = search.msae_search(w1, w2, args.max_steps, args.node_cap)
    payload = {
        "status": outcome.status.value,
        "equivalent": True
        if outcome.found
        else (False if outcome.definitive else None),
        "explored": outcome.explored,
        "derivation": None
        if outcome.derivation is None
        else _derivation_json(outcome.derivation),
    }
    if args.output == "json":
        _emit_json(payload)
    else:
        if outcome.found:
            print(f"found: {len(outcome.derivation)} steps")
            _print_derivation(outcome.derivation)
        elif outcome.definitive:
            print(f"not reachable (exhausted after {outcome.explored} words)")
        else:
            print(f"inconclusive (cap hit after {outcome.explored} words)")
    if outcome.found:
        return 0
    return 1 if outcome.definitive else 3


def _cmd_family(args) -> int:
    alphabet, _ = _context(args)
    kind = args.kind
    if kind == "irreducible":
        made = irreducibility.gen_irreducible_family(args.n, alphabet)
    elif kind == "not3t":
        made = irreducibility.gen_not3t_family(args.n, alphabet)
    elif kind == "not2t":
        made = irreducibility.gen_not2t_family(args.n, alphabet)
    else:
        raise _UsageError(f"unknown family {kind!r}")
    if args.output == "json":
        spec_payload = (
            _factors_json(made.spec)
            if isinstance(made.spec, TripleFactorSpec)
            else _spec_json(made.spec)
        )
        _emit_json(
            {
                "family": kind,
                "n": args.n,
                "word": str(made.word),
                "image": str(made.image),
                "spec": spec_payload,
            }
        )
    else:
        print(made.word)
        print(made.image)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--alphabet",
        default="abc",
        help="alphabet letters in registration order (default: abc)",
    )
    common.add_argument(
        "--order",
        default=None,
        help="'<'-separated ordering (default: registration order)",
    )
    common.add_argument(
        "--output",
        choices=("text", "json"),
        default="text",
        help="output format (default: text)",
    )

    parser = argparse.ArgumentParser(
        prog="parikh",
        description=(
            "Parikh matrices, M-equivalence, strong M-equivalence, and "
            "block-swap rewriting over ordered alphabets."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common], help="Parikh matrix of a word")
    p.add_argument("word")
    p.set_defaults(func=_cmd_matrix, _parser=p)

    p = sub.add_parser("count", parents=[common], help="subword or factor count")
    p.add_argument("word")
    p.add_argument("pattern")
    p.add_argument(
        "--factor", action="store_true", help="count contiguous occurrences"
    )
    p.set_defaults(func=_cmd_count, _parser=p)

    p = sub.add_parser("equiv", parents=[common], help="M-equivalence under one ordering")
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=_cmd_equiv, _parser=p)

    p = sub.add_parser(
        "strong-equiv", parents=[common], help="strong M-equivalence"
    )
    p.add_argument("word1")
    p.add_argument("word2")
    p.set_defaults(func=_cmd_strong_equiv, _parser=p)

    p = sub.add_parser(
        "class", parents=[common], help="enumerate an equivalence class"
    )
    p.add_argument("word")
    p.add_argument("--mode", choices=("m", "strong"), default="strong")
    p.set_defaults(func=_cmd_class, _parser=p)

    p = sub.add_parser("transform", parents=[common], help="apply a rewriting rule")
    p.add_argument(
        "rule", choices=("e1", "s2t", "s3t", "classic2t", "alphabeta")
    )
    p.add_argument("word")
    p.add_argument("--pos", type=int, default=None, help="position for e1")
    p.add_argument("--pair", default=None, help="letter pair, e.g. ab")
    p.add_argument("--blocks", default=None, help="block positions, e.g. 0,3,5,8")
    p.add_argument(
        "--grouping", default=None, help="factor grouping for classic2t, e.g. 0-1,2-3"
    )
    p.add_argument(
        "--factors", default=None, help="factor spans for s3t, e.g. 0-4:AB,5-9:BC"
    )
    p.add_argument("--site", default=None, help="block positions for alphabeta, e.g. 0,3")
    p.set_defaults(func=_cmd_transform, _parser=p)

    p = sub.add_parser(
        "irreducible", parents=[common], help="pq analysis of a block family"
    )
    p.add_argument("word")
    p.add_argument("--pair", required=True)
    p.add_argument("--blocks", required=True)
    p.set_defaults(func=_cmd_irreducible, _parser=p)

    p = sub.add_parser(
        "decompose", parents=[common], help="split into irreducible stages"
    )
    p.add_argument("word")
    p.add_argument("--pair", required=True)
    p.add_argument("--blocks", required=True)
    p.set_defaults(func=_cmd_decompose, _parser=p)

    p = sub.add_parser("detect", parents=[common], help="recover a transformation")
    p.add_argument("what", choices=("s2t", "s3t", "sites"))
    p.add_argument("word1")
    p.add_argument("word2", nargs="?", default=None)
    p.add_argument("--factor-cap", type=int, default=search.DEFAULT_FACTOR_CAP)
    p.set_defaults(func=_cmd_detect, _parser=p)

    p = sub.add_parser("search", parents=[common], help="derivation search")
    p.add_argument("mode", choices=("mse", "msae"))
    p.add_argument("word1")
    p.add_argument("word2")
    p.add_argument("--max-steps", type=int, default=search.DEFAULT_MAX_STEPS)
    p.add_argument(
        "--node-cap",
        type=int,
        default=None,
        help="search cap (default: PARIKH_NODE_CAP or 1000000)",
    )
    p.set_defaults(func=_cmd_search, _parser=p)

    p = sub.add_parser("family", parents=[common], help="generate example pairs")
    p.add_argument("kind", choices=("irreducible", "not3t", "not2t"))
    p.add_argument("n", type=int)
    p.set_defaults(func=_cmd_family, _parser=p)

    return parser


_DOMAIN_NEGATIVE = (
    transforms.NotE1Error.__mro__[0],
)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(args._parser.format_usage(), end="", file=sys.stderr)
        return 2
    except CapError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return 3
    except ParikhError as exc:
        print(f"not applicable: {exc}", file=sys.stderr)
        return 1
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
