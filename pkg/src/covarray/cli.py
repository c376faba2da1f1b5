"""Command-line front end.

Exit codes: 0 success or true, 1 semantic false (not covering, not
equivalent, reproduction mismatch), 2 usage or input error, 3 internal
error or exhausted budget.  Data goes to stdout and diagnostics to stderr.
``--json`` switches stdout to one JSON record per line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import bounds as B
from .classify import classify, default_constraints
from .constructions import (
    FIXED_MATRIX_NAMES,
    fixed_matrix,
    hadamard_3ca_12x11,
    johnson_entringer,
    standard_maximal_2ca,
)
from .core import format_ca, is_covering, parse_ca, verify_coverage, write_ca
from .equivalence import are_equivalent, canonical_form, format_ops
from .errors import BudgetExceeded, CoveringArrayError, InternalInconsistency
from .normalization import lift_except, lift_min_weight, lift_to_target
from .proofs import guided_uniqueness_24x12, nonexistence_14x16, nonexistence_48x13

OK, FALSE, USAGE, INTERNAL = 0, 1, 2, 3

PROOFS = ("24x12-unique", "48x13-nonexistent", "14x16-nonexistent")
TARGETS = ("table1", "table3", "thm54", "thm56", "thm58", "thm59",
           "lemma45", "lemma46", "cor52-range")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


class _Out:
    def __init__(self, as_json: bool, stream=None):
        self.json = as_json
        self.stream = stream or sys.stdout

    def record(self, rtype: str, text: str | None = None, **fields):
        if self.json:
            self.stream.write(json.dumps({"record": rtype, **fields}, default=_jsonable, sort_keys=True) + "\n")
        elif text is not None:
            self.stream.write(text if text.endswith("\n") else text + "\n")


def _jsonable(x):
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    return str(x)


def _read(path: str):
    if path == "-":
        return parse_ca(sys.stdin.read())
    with open(path) as fh:
        return parse_ca(fh.read())


def _emit_array(out: _Out, array, path: str | None = None, rtype: str = "array"):
    if path:
        write_ca(array, path)
        out.record(rtype, None, path=path, m=array.m, n=array.n, q=array.q)
    else:
        out.record(rtype, format_ca(array), m=array.m, n=array.n, q=array.q, rows=["".join(map(str, r)) for r in array.rows()])


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(a, out):
    arr = _read(a.file)
    rep = verify_coverage(arr, a.strength)
    miss = rep.first_missing()
    if rep.is_covering:
        out.record("verify", f"covering: strength {a.strength}", strength=a.strength, covering=True)
        return OK
    cols, pat = miss
    out.record("verify",
               f"not covering: strength {a.strength}; columns {' '.join(map(str, cols))} miss pattern {''.join(map(str, pat))}",
               strength=a.strength, covering=False, columns=cols, pattern=pat)
    return FALSE


def cmd_construct(a, out):
    kind = a.kind
    if kind == "standard":
        arr = standard_maximal_2ca(_need(a.m, "--m"))
    elif kind == "johnson-entringer":
        arr = johnson_entringer(_need(a.n, "--n"))
    elif kind == "hadamard":
        arr = hadamard_3ca_12x11()
    elif kind == "fixed":
        arr = fixed_matrix(_need(a.name, "--name"))
    else:  # guarded by argparse choices
        raise _Usage(kind)
    _emit_array(out, arr, a.output)
    return OK


def _need(value, flag):
    if value is None:
        raise _Usage(f"{flag} is required here")
    return value


def cmd_canon(a, out):
    arr = _read(a.file)
    cert = canonical_form(arr, a.budget)
    if a.cert:
        with open(a.cert, "w") as fh:
            fh.write(format_ops(cert.ops))
    _emit_array(out, cert.canonical, a.output, rtype="canonical")
    return OK


def cmd_equiv(a, out):
    x, y = _read(a.first), _read(a.second)
    eq = are_equivalent(x, y, a.budget)
    out.record("equiv", "equivalent" if eq else "inequivalent", equivalent=eq)
    return OK if eq else FALSE


def cmd_normalize(a, out):
    arr = _read(a.file)
    if a.target is not None and a.except_column is not None:
        raise _Usage("--target and --except are mutually exclusive")
    if a.target is not None:
        res = lift_to_target(arr, a.target)
    elif a.except_column is not None:
        res = lift_except(arr, a.except_column)
    else:
        res = lift_min_weight(arr)
    _emit_array(out, res, a.output)
    return OK


def cmd_bounds(a, out):
    for b in B.all_bounds(a.t, a.n, a.q):
        out.record("bound", f"{b.kind:5s} {b.value:>8d}  {b.provenance}{'  ' + b.note if b.note else ''}",
                   kind=b.kind, value=b.value, rule=b.rule, params=dict(b.params), note=b.note)
    return OK


def cmd_table(a, out):
    for e in B.known_can_table().rows(a.max_n):
        out.record("can", f"{f'CAN({e.t},{e.n},{e.q})':<12} {'=' if e.kind == 'exact' else '>=':>2} {e.value:<6d} {e.source}"
                   + (f"  [{e.witness}]" if e.witness else ""),
                   t=e.t, n=e.n, q=e.q, value=e.value, kind=e.kind, source=e.source, witness=e.witness)
    return OK


def cmd_classify(a, out):
    if a.action:
        if len(a.action) != 2 or a.action[0] != "prove":
            raise _Usage("expected 'classify prove NAME' or --m/--t/--n")
        return _prove(a.action[1], out)
    for flag in ("m", "t", "n"):
        _need(getattr(a, flag), f"--{flag}")
    cons = default_constraints(a.m, a.t, a.n, distances=not a.no_distances)
    res = classify(a.m, a.t, a.n, cons, jobs=a.jobs, checkpoint=a.checkpoint,
                   budget=a.budget, keep=not a.count_only)
    if a.out_dir and not a.count_only:
        os.makedirs(a.out_dir, exist_ok=True)
        for i, rep in enumerate(res.representatives, 1):
            write_ca(rep, os.path.join(a.out_dir, f"class{i:03d}.ca"))
    st = res.stats
    out.record("classify",
               f"m={a.m} t={a.t} n={a.n} q=2 count={res.count} children={st['children']} "
               f"canon_nodes={st['canon_nodes']} seconds={st['seconds']:.3f}",
               params=res.params, count=res.count,
               stats={k: v for k, v in st.items() if k != "levels"},
               levels={str(k): v for k, v in st["levels"].items()})
    if not a.out_dir and not a.count_only and not out.json:
        for rep in res.representatives:
            out.record("array", format_ca(rep))
    return OK


def _prove(name: str, out) -> int:
    if name == "24x12-unique":
        res = guided_uniqueness_24x12()
        br = res.stats["branches"]
        b1 = res.stats["b1_fifth_column"]
        out.record("proof", "\n".join([
            f"24x12-unique: {res.count} class(es)",
            f"  branch B1: {br['B1']['solutions']} completions; nodes per depth {br['B1']['nodes_per_depth']}",
            f"  branch B2: {br['B2']['solutions']} completions, {br['B2']['classes']} class(es)",
            f"  B1 with E pinned: coverage-feasible fifth columns {b1['coverage_completions']}; "
            f"column {b1['hand_column']} gives d(c3,c7) = {b1['hand_column_d_c3_c7']}",
            f"  witness 4-covering: {is_covering(res.representatives[0], 4)}",
        ]), name=name, count=res.count, branches=br, b1_fifth_column=b1)
        return OK if res.count == 1 else FALSE
    if name == "48x13-nonexistent":
        rep = nonexistence_48x13()
    elif name == "14x16-nonexistent":
        rep = nonexistence_14x16()
    else:
        raise _Usage(f"unknown proof {name!r}; choose from {', '.join(PROOFS)}")
    out.record("proof", "\n".join(rep.lines()), name=name, verdict=rep.verdict,
               quantities=rep.quantities, log=rep.log)
    return OK if rep.verdict == "nonexistent" else FALSE


def cmd_prove(a, out):
    return _prove(a.name, out)


# ---------------------------------------------------------------------------
# reproduce


def _counts(m, t, ns):
    return [classify(m, t, n, keep=False).count for n in ns]


def _repro_strength2_counts():
    return _counts(6, 2, range(6, 11)), [4, 3, 1, 1, 1]


def _repro_strength3_counts():
    got = [classify(12, 3, n, default_constraints(12, 3, n, distances=False), keep=False).count
           for n in range(6, 12)]
    return got, [9, 2, 2, 1, 1, 1]


def _repro_10x5():
    res = classify(10, 3, 5)
    return [res.count, are_equivalent(res.representatives[0], fixed_matrix("CA10x5"))], [1, True]


def _repro_12x11():
    res = classify(12, 3, 11)
    return [res.count, are_equivalent(res.representatives[0], hadamard_3ca_12x11())], [1, True]


def _repro_24x12():
    res = guided_uniqueness_24x12()
    return ([res.count, res.stats["branches"]["B1"]["solutions"],
             res.stats["b1_fifth_column"]["hand_column_d_c3_c7"]], [1, 0, 14])


def _repro_48x13():
    rep = nonexistence_48x13()
    return [rep.verdict, rep.quantities["implied_lower"]], ["nonexistent", 49]


def _repro_14x16():
    rep = nonexistence_14x16()
    q = rep.quantities
    return [rep.verdict, q["distance_sum"], q["required_at_least"], B.improved_lower_3(16).value], \
        ["nonexistent", 600, 630, 15]


def _repro_14x15():
    cert = B.replay_odd_certificate(7, 14)
    return [cert.certified, B.improved_lower_3(15).value], [True, 15]


def _repro_hypercube_range():
    got = []
    for n in range(4, 11):
        arr = johnson_entringer(n)
        got.append((arr.m, is_covering(arr, n - 2)))
    return got, [(2**n // 3, True) for n in range(4, 11)]


REPRODUCERS: dict[str, Callable] = {
    "table1": _repro_strength2_counts, "table3": _repro_strength3_counts, "thm54": _repro_10x5,
    "thm56": _repro_12x11, "thm58": _repro_24x12, "thm59": _repro_48x13,
    "lemma45": _repro_14x16, "lemma46": _repro_14x15, "cor52-range": _repro_hypercube_range,
}


def cmd_reproduce(a, out):
    got, want = REPRODUCERS[a.target]()
    ok = list(got) == list(want)
    text = f"{a.target}: {'match' if ok else 'MISMATCH'} got={got}"
    if not ok:
        text += f" expected={want}"
    out.record("reproduce", text, target=a.target, match=ok, got=got, expected=want)
    return OK if ok else FALSE


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="covarray", description="Covering array toolkit.")
    p.add_argument("--json", action="store_true", help="emit JSON records, one per line")
    p.add_argument("--seed", help=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("verify", help="check coverage at a strength")
    s.add_argument("--strength", "-t", type=int, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", help="emit a constructed array")
    s.add_argument("kind", choices=["standard", "johnson-entringer", "hadamard", "fixed"])
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--name", choices=FIXED_MATRIX_NAMES)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("canon", help="canonical form")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--cert", help="write the transforming ops to this file")
    s.add_argument("--budget", type=int, default=5_000_000)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("equiv", help="decide equivalence of two arrays")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--budget", type=int, default=5_000_000)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("normalize", help="lift column weights of a 2-covering array")
    s.add_argument("file")
    s.add_argument("--target", type=int)
    s.add_argument("--except", dest="except_column", type=int, metavar="J")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("bounds", help="all applicable bounds on CAN(t, n, q)")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--q", type=int, default=2)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("table", help="known covering array numbers")
    s.add_argument("--max-n", type=int, default=16)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("classify", help="equivalence classes of binary CA(m; t, n, 2)")
    s.add_argument("action", nargs="*", help="'prove NAME' runs a guided proof")
    s.add_argument("--m", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--checkpoint")
    s.add_argument("--budget", type=int)
    s.add_argument("--no-distances", action="store_true", help="skip forced-distance pruning")
    s.add_argument("--out-dir")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("prove", help="run a guided proof")
    s.add_argument("name", choices=PROOFS)
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("reproduce", help="rerun a stored result and compare")
    s.add_argument("target", choices=TARGETS)
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        if a.seed is not None:
            raise _Usage("--seed is not supported: every algorithm here is deterministic")
        out = _Out(a.json)
        return a.func(a, out)
    except _Usage as e:
        print(f"covarray: usage error: {e}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as e:
        where = f" (checkpoint: {e.checkpoint})" if e.checkpoint else ""
        print(f"covarray: budget exceeded: {e}{where}", file=sys.stderr)
        return INTERNAL
    except InternalInconsistency as e:
        print(f"covarray: internal error: {e}", file=sys.stderr)
        return INTERNAL
    except (CoveringArrayError, OSError) as e:
        print(f"covarray: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    except Exception as e:
        print(f"covarray: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
