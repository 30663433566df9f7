"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 order unknown,
4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions as C
from . import dual as D
from . import growth as Gr
from . import transducer as T
from . import words as W
from .errors import BudgetExceeded, NotSynchronizing, TransducerError, UnknownName
from .registry import example_registry, names as registry_names

OK, USAGE, INVALID, UNKNOWN, BUDGET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(spec: str) -> T.Transducer:
    """A TRN file path, or a registry name when no such file exists."""
    if os.path.exists(spec):
        return T.load(spec)
    base = os.path.basename(spec)
    stem = base[:-4] if base.endswith(".trn") else base
    try:
        return example_registry(stem).transducer
    except UnknownName:
        raise FileNotFoundError(spec) from None


def _emit(text: str, out, stdout):
    if out:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _level_str(A):
    k = T.sync_level(A)
    return "not synchronizing" if k is None else str(k)


def cmd_info(a, out):
    A = _load(a.file)
    lines = [f"alphabet: {A.n}", f"states: {A.size}", f"sync_level: {_level_str(A)}"]
    inv = A.is_invertible()
    lines.append(f"invertible: {'yes' if inv else 'no'}")
    lines.append(f"inverse_sync_level: {_level_str(T.inverse(A)) if inv else 'n/a'}")
    lines.append(f"letter_partition: {D.letter_partition(A)}")
    out.write("\n".join(lines) + "\n")


def cmd_product(a, out):
    _emit(T.serialize(T.product(_load(a.a), _load(a.b))), a.output, out)


def cmd_power(a, out):
    A = _load(a.file)
    P = T.power_raw(A, a.m) if a.raw else T.min_core_power(A, a.m, cap=a.cap)
    _emit(T.serialize(P), a.output, out)


def cmd_minimize(a, out):
    _emit(T.serialize(T.minimize(_load(a.file))[0]), a.output, out)


def cmd_core(a, out):
    _emit(T.serialize(T.core(_load(a.file))), a.output, out)


def cmd_dual(a, out):
    _emit(T.serialize(D.dual(_load(a.file), a.k).transducer), a.output, out)


def cmd_splits(a, out):
    A = _load(a.file)
    res = D.splitting_length(A, a.r, a.max_len)
    if not res:
        tail = "none exist (search saturated)" if res.exhausted else f"none up to length {a.max_len}"
        out.write(f"splitting_length: infinite\nsplits: {tail}\n")
        return
    ok = D.bottom_depends_only_on_top(A, res, a.r)
    out.write(f"splitting_length: {res.length}\nword: {W.word_str(res.word)}\n"
              f"P: {' '.join(res.P)}\nT: {' '.join(res.T)}\n"
              f"top: {{{','.join(sorted(res.top, key=A.index))}}}\n"
              f"bottom: {{{','.join(sorted(res.bottom, key=A.index))}}}\n"
              f"bottom_depends_only_on_top: {'yes' if ok else 'no'}\n")


def cmd_badpairs(a, out):
    A = _load(a.file)
    g = D.minimal_bad_pairs_graph(A, a.r) if a.minimal else D.bad_pairs_graph(A, a.r, a.max_len)
    if a.dot:
        with open(a.dot, "w", encoding="ascii", newline="\n") as fh:
            fh.write(g.to_dot())
    cyc = D.has_circuit(g)
    out.write(f"vertices: {len(g.vertices)}\nedges: {len(g.edges)}\n")
    if cyc:
        desc = " ".join("{" + ",".join(sorted(e[0], key=A.index)) + "}" for e in cyc)
        out.write(f"circuit: {desc}\n")
    else:
        out.write("circuit: none\n")


def cmd_order(a, out):
    A = _load(a.file)
    v = D.decide_order(A, max_power=a.max_power, max_dual_level=a.max_dual)
    out.write(v.to_json() + "\n")
    return UNKNOWN if v.verdict == "unknown" else OK


def cmd_witness(a, out):
    A = _load(a.file)
    w = D.witness_from_loop(A, a.r)
    out.write(f"witness: {w.word}\ncase: {w.case}\n"
              f"left: {W.word_str(w.word.left)}\ncenter: {W.word_str(w.word.center)}\n"
              f"right: {W.word_str(w.word.right)}\nstart: {w.word.start}\n")


def cmd_spectrum(a, out):
    A = _load(a.file)
    sp = W.spectrum(A, a.k)
    for k, d, (L, s, r) in sp.entries:
        out.write(f"({k},{d},({L},{s},{r}))\n")
    if a.compare:
        _, other, verdict = W.compare_spectra(A, _load(a.compare), a.k)
        out.write(f"other: {other}\nconjugacy: {verdict}\n")


def cmd_cayley(a, out):
    with open(a.table, encoding="ascii") as fh:
        G = C.parse_group_csv(fh.read())
    _emit(T.serialize(C.cayley_machine(G)), a.output, out)


def cmd_combine(a, out):
    base = os.path.dirname(os.path.abspath(a.spec))
    with open(a.spec, encoding="ascii") as fh:
        parts = C.parse_combine_spec(fh.read(), loader=lambda p: _load(os.path.join(base, p)))
    _emit(T.serialize(C.combine_disjoint(parts, default_outputs=a.outputs)), a.output, out)


def cmd_growth(a, out):
    A = _load(a.file)
    s = Gr.growth_series(A, a.m, cap=a.cap, name=os.path.basename(a.file))
    _emit(s.to_csv(), a.csv, out)
    if s.truncated:
        return BUDGET
    return OK


def cmd_example(a, out):
    _emit(example_registry(a.name).trn, a.output, out)


def build_parser():
    p = _Parser(prog="artifact", description="Exact computations with synchronous transducers.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("info")
    s.add_argument("file")
    s.set_defaults(fn=cmd_info)

    s = sub.add_parser("product")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_product)

    s = sub.add_parser("power")
    s.add_argument("file")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("--raw", action="store_true")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_power)

    for verb, fn in (("minimize", cmd_minimize), ("core", cmd_core)):
        s = sub.add_parser(verb)
        s.add_argument("file")
        s.add_argument("-o", "--output")
        s.set_defaults(fn=fn)

    s = sub.add_parser("dual")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_dual)

    s = sub.add_parser("splits")
    s.add_argument("file")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--max-len", type=int, default=8)
    s.set_defaults(fn=cmd_splits)

    s = sub.add_parser("badpairs")
    s.add_argument("file")
    s.add_argument("-r", type=int, required=True)
    s.add_argument("--minimal", action="store_true")
    s.add_argument("--max-len", type=int, default=None)
    s.add_argument("--dot")
    s.set_defaults(fn=cmd_badpairs)

    s = sub.add_parser("order")
    s.add_argument("file")
    s.add_argument("--max-power", type=int, default=12)
    s.add_argument("--max-dual", type=int, default=None)
    s.set_defaults(fn=cmd_order)

    s = sub.add_parser("witness")
    s.add_argument("file")
    s.add_argument("-r", type=int, required=True)
    s.set_defaults(fn=cmd_witness)

    s = sub.add_parser("spectrum")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--compare", help="second machine; differing spectra prove non-conjugacy")
    s.set_defaults(fn=cmd_spectrum)

    s = sub.add_parser("cayley")
    s.add_argument("--table", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_cayley)

    s = sub.add_parser("combine")
    s.add_argument("spec")
    s.add_argument("--outputs", choices=["level1", "identity"], default="level1")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_combine)

    s = sub.add_parser("growth")
    s.add_argument("file")
    s.add_argument("-m", type=int, required=True)
    s.add_argument("--csv")
    s.add_argument("--cap", type=int, default=Gr.DEFAULT_CAP)
    s.set_defaults(fn=cmd_growth)

    s = sub.add_parser("example")
    s.add_argument("name", help="one of: " + ", ".join(registry_names()))
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_example)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return USAGE
    except SystemExit as exc:  # --help
        return OK if not exc.code else USAGE
    try:
        code = args.fn(args, stdout)
        return OK if code is None else code
    except BudgetExceeded as exc:
        stderr.write(f"budget exceeded: {exc}\n")
        return BUDGET
    except (TransducerError, NotSynchronizing, FileNotFoundError, UnicodeDecodeError, ValueError) as exc:
        stderr.write(f"invalid input: {exc}\n")
        return INVALID


def main():
    sys.exit(run())
