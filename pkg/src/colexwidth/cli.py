"""Command-line interface, DFA text format, and JSON reporting.

The text format is line oriented, UTF-8, with ``#`` comments::

    alphabet: a b c        # declaration order = character order
    states: 3
    initial: 0
    final: 1 2
    trans: 0 a 1

Exit codes: 0 success, 1 property false (check commands), 2 input or format
error, 3 exploration bound overflow (rerun with --cap).
"""

import argparse
import hashlib
import importlib.resources
import json
import sys
import time

from .automaton import (
    Alphabet,
    ColexWidthError,
    Dfa,
    InputError,
    minimize,
    require_trim,
    trim,
    validate_trim,
)
from .colex import hasse_cover_edges, state_order, width_dfa
from .convexmn import ChainAssignment, is_p_sortable, minimize_p_sortable
from .langwidth import (
    BoundOverflowError,
    WitnessCertificate,
    verify_certificate,
    width_lang,
)


def load_report_schema():
    """The JSON schema every ``--json`` report conforms to."""
    data = importlib.resources.files("colexwidth").joinpath("data/report.schema.json")
    return json.loads(data.read_text(encoding="utf-8"))


def parse_dfa_text(text):
    """Parse the line-oriented DFA format; raises InputError on any defect."""
    alphabet = None
    state_count = None
    initial = None
    finals = None
    transitions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError("line %d: expected 'key: value', got %r" % (lineno, raw))
        key, _, value = line.partition(":")
        key = key.strip()
        fields = value.split()
        try:
            if key == "alphabet":
                alphabet = Alphabet(tuple(fields))
            elif key == "states":
                state_count = int(fields[0])
            elif key == "initial":
                initial = int(fields[0])
            elif key == "final":
                finals = frozenset(int(f) for f in fields)
            elif key == "trans":
                src, char, dst = fields
                transitions.append((int(src), char, int(dst)))
            else:
                raise InputError("line %d: unknown key %r" % (lineno, key))
        except (ValueError, IndexError):
            raise InputError("line %d: malformed %r entry: %r" % (lineno, key, raw)) from None
    missing = [name for name, v in (("alphabet", alphabet), ("states", state_count),
                                    ("initial", initial), ("final", finals)) if v is None]
    if missing:
        raise InputError("missing required entries: %s" % ", ".join(missing))
    delta = {}
    for src, char, dst in transitions:
        if (src, char) in delta and delta[(src, char)] != dst:
            raise InputError("nondeterministic transitions from state %d on %r" % (src, char))
        delta[(src, char)] = dst
    return Dfa(alphabet, state_count, initial, finals, delta)


def serialize_dfa_text(dfa):
    lines = [
        "alphabet: " + " ".join(dfa.alphabet.symbols),
        "states: %d" % dfa.state_count,
        "initial: %d" % dfa.initial,
        "final: " + " ".join(str(q) for q in sorted(dfa.finals)),
    ]
    for q, c, t in dfa.transitions():
        lines.append("trans: %d %s %d" % (q, c, t))
    return "\n".join(lines) + "\n"


def dfa_as_json(dfa):
    return {
        "alphabet": list(dfa.alphabet.symbols),
        "states": dfa.state_count,
        "initial": dfa.initial,
        "finals": sorted(dfa.finals),
        "transitions": [[q, c, t] for q, c, t in dfa.transitions()],
    }


def parse_chain_spec(spec, state_count):
    """Parse ``"0,1,4|2,3,5"`` into a chain assignment covering all states."""
    blocks = []
    for part in spec.split("|"):
        part = part.strip()
        if not part:
            raise InputError("empty chain in %r" % spec)
        try:
            blocks.append([int(f) for f in part.split(",")])
        except ValueError:
            raise InputError("malformed chain spec %r" % spec) from None
    return ChainAssignment.from_blocks(blocks, state_count)


def _load_dfa(path, do_trim):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
    dfa = parse_dfa_text(text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    if do_trim:
        dfa = trim(dfa)
    else:
        report = validate_trim(dfa)
        if not report.ok:
            raise InputError(
                "input automaton is not trim (%s); rerun with --trim"
                % "; ".join(report.violations())
            )
    return dfa, digest


def _report_base(args, digest, dfa):
    return {
        "command": args.command,
        "input": {
            "path": args.file,
            "sha256": digest,
            "states": dfa.state_count,
            "alphabet": list(dfa.alphabet.symbols),
        },
        "timings": {},
    }


def _emit(args, report, human_lines):
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _chains_human(blocks):
    return " | ".join(",".join(str(q) for q in block) for block in blocks)


def _maybe_diagrams(args, order, antichain=None, chains=None, title=None):
    if getattr(args, "dot", None):
        from .diagrams import hasse_dot

        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(hasse_dot(order, antichain=antichain))
    if getattr(args, "figure", None):
        from .diagrams import render_hasse_figure

        render_hasse_figure(order, args.figure, antichain=antichain,
                            chains=chains, title=title)


def cmd_order(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    t0 = time.perf_counter()
    order = state_order(dfa)
    covers = hasse_cover_edges(order)
    elapsed = time.perf_counter() - t0
    report = _report_base(args, digest, dfa)
    report["pairs"] = [list(p) for p in order.pairs()]
    report["hasse_edges"] = [list(e) for e in covers]
    report["timings"]["order_s"] = elapsed
    _maybe_diagrams(args, order, title="co-lex state order")
    human = ["pairs: " + " ".join("%d<%d" % p for p in order.pairs())]
    human.append("hasse: " + " ".join("%d->%d" % e for e in covers))
    _emit(args, report, human)
    return 0


def cmd_width_dfa(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    t0 = time.perf_counter()
    order = state_order(dfa)
    result = width_dfa(order)
    elapsed = time.perf_counter() - t0
    report = _report_base(args, digest, dfa)
    report["width"] = result.width
    report["antichain"] = list(result.antichain)
    report["chains"] = result.chains.blocks()
    report["timings"]["width_dfa_s"] = elapsed
    _maybe_diagrams(args, order, antichain=result.antichain, chains=result.chains,
                    title="automaton width %d" % result.width)
    human = [
        "width: %d" % result.width,
        "antichain: " + " ".join(str(q) for q in result.antichain),
        "chains: " + _chains_human(result.chains.blocks()),
    ]
    _emit(args, report, human)
    return 0


def cmd_width_lang(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    t0 = time.perf_counter()
    result = width_lang(dfa, cap=args.cap, max_k=args.max_k)
    elapsed = time.perf_counter() - t0
    report = _report_base(args, digest, dfa)
    report["width"] = result.width
    report["exact"] = result.exact
    report["certificate"] = result.certificate.as_dict() if result.certificate else None
    report["minimized_dfa"] = dfa_as_json(result.min_dfa)
    report["timings"]["width_lang_s"] = elapsed
    human = ["width: %d (%s)" % (result.width, "exact" if result.exact else "lower bound")]
    if result.certificate:
        c = result.certificate
        human.append(
            "certificate: states=%s mus=%s gamma=%s direction=%s"
            % (",".join(str(q) for q in c.states), ",".join(c.mus), c.gamma, c.direction)
        )
        human.append("certificate states refer to the minimized automaton")
    _emit(args, report, human)
    return 0


def cmd_check_wheeler(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    result = width_dfa(state_order(dfa))
    wheeler = result.width == 1
    report = _report_base(args, digest, dfa)
    report["wheeler"] = wheeler
    report["width"] = result.width
    _emit(args, report, ["true" if wheeler else "false"])
    return 0 if wheeler else 1


def cmd_minimize(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    result = minimize(dfa)
    report = _report_base(args, digest, dfa)
    report["dfa"] = dfa_as_json(result)
    report["states_before"] = dfa.state_count
    report["states_after"] = result.state_count
    _emit(args, report, [serialize_dfa_text(result).rstrip("\n")])
    return 0


def cmd_psort_check(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    assignment = parse_chain_spec(args.chains, dfa.state_count)
    ok = is_p_sortable(dfa, assignment)
    report = _report_base(args, digest, dfa)
    report["p_sortable"] = ok
    report["chains"] = assignment.blocks()
    _emit(args, report, ["true" if ok else "false"])
    return 0 if ok else 1


def cmd_psort_min(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    assignment = parse_chain_spec(args.chains, dfa.state_count)
    result, projected = minimize_p_sortable(dfa, assignment)
    report = _report_base(args, digest, dfa)
    report["dfa"] = dfa_as_json(result)
    report["chains"] = projected.blocks()
    report["states_before"] = dfa.state_count
    report["states_after"] = result.state_count
    human = [serialize_dfa_text(result).rstrip("\n"),
             "# chains: " + _chains_human(projected.blocks())]
    _emit(args, report, human)
    return 0


def cmd_verify_witness(args):
    dfa, digest = _load_dfa(args.file, args.trim)
    data = _load_cert_json(args.cert)
    if isinstance(data, dict) and "certificate" in data and "k" not in data:
        data = data["certificate"]  # accept a full width-lang report
    if data is None:
        raise InputError("no certificate found in %r" % args.cert)
    cert = WitnessCertificate.from_dict(data)
    check = verify_certificate(dfa, cert)
    report = _report_base(args, digest, dfa)
    report["valid"] = check.ok
    report["reasons"] = list(check.reasons)
    human = ["valid" if check.ok else "invalid: " + "; ".join(check.reasons)]
    _emit(args, report, human)
    return 0 if check.ok else 1


def _load_cert_json(spec):
    text = spec
    if not spec.lstrip().startswith("{"):
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError("cannot read certificate %s: %s" % (spec, exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("malformed certificate JSON: %s" % exc) from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="colexwidth",
        description="Co-lex state orders, automaton/language width, and convex minimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **extra):
        p = sub.add_parser(name, **extra)
        p.add_argument("file", help="DFA in the line-oriented text format")
        p.add_argument("--trim", action="store_true",
                       help="drop unreachable/dead states before analysis")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=func)
        return p

    p = add("order", cmd_order, help="print the strict co-lex state order and its cover edges")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT Hasse diagram")
    p.add_argument("--figure", metavar="PATH", help="also render the Hasse diagram to an image")

    p = add("width-dfa", cmd_width_dfa,
            help="width of the automaton with antichain and chain partition witnesses")
    p.add_argument("--dot", metavar="PATH", help="also write a DOT Hasse diagram")
    p.add_argument("--figure", metavar="PATH", help="also render the Hasse diagram to an image")

    p = add("width-lang", cmd_width_lang,
            help="deterministic width of the accepted language, with certificate")
    p.add_argument("--cap", type=int, default=None,
                   help="length cap for the witness search (semi-decision)")
    p.add_argument("--max-k", type=int, default=None, help="stop the search at this width")

    add("check-wheeler", cmd_check_wheeler, help="exit 0 iff the automaton has width 1")
    add("minimize", cmd_minimize, help="print the minimum equivalent DFA")

    p = add("psort-check", cmd_psort_check,
            help="check that the given chains are chains of the state order")
    p.add_argument("--chains", required=True, help="chain spec, e.g. '0,1,4|2,3,5'")

    p = add("psort-min", cmd_psort_min,
            help="minimum DFA inducing the same prefix partition as the given chains")
    p.add_argument("--chains", required=True, help="chain spec, e.g. '0,1,4|2,3,5'")

    p = add("verify-witness", cmd_verify_witness, help="re-verify a width certificate")
    p.add_argument("--cert", required=True, help="certificate JSON (inline or a file path)")

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BoundOverflowError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except InputError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ColexWidthError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
