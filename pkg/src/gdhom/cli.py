"""Command-line front end.

Subcommands wrap the library operations one-to-one; inputs are small plain
text files (matrices, graphs, groupoids, sequences) and output is stable
UTF-8 text with no timestamps, so runs are diffable.  Exit codes: 0 success,
1 input error, 2 failed verification or consistency check.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import chain, exactseq, hyperplane, sft, zlinalg
from .fgab import FgAbGroup, GroupHom
from .zlinalg import IntMatrix


class InputError(Exception):
    """A malformed or semantically invalid input file."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line

    def describe(self) -> str:
        if self.line is None:
            return f"error: {self.args[0]}"
        return f"error: line {self.line}: {self.args[0]}"


def _significant_lines(text: str):
    """(line_number, content) pairs, skipping blanks and '#' comments."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        out.append((n, s))
    return out


class _Cursor:
    def __init__(self, text: str):
        self.lines = _significant_lines(text)
        self.pos = 0

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self, what: str):
        if self.pos >= len(self.lines):
            last = self.lines[-1][0] if self.lines else 1
            raise InputError(f"unexpected end of file, expected {what}", last)
        item = self.lines[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.lines)

    def expect_done(self):
        if not self.done():
            n, s = self.lines[self.pos]
            raise InputError(f"unexpected trailing content {s!r}", n)


def _ints(line: str, lineno: int, count: Optional[int] = None) -> list:
    parts = line.split()
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"expected integers, got {line!r}", lineno) from None
    if count is not None and len(values) != count:
        raise InputError(f"expected {count} integers, got {len(values)}", lineno)
    return values


def _parse_matrix_at(cur: _Cursor) -> IntMatrix:
    lineno, header = cur.next("matrix header 'R C'")
    dims = _ints(header, lineno, 2)
    r, c = dims
    if r < 0 or c < 0:
        raise InputError("matrix dimensions must be nonnegative", lineno)
    entries = []
    if r > 0 and c > 0:
        for _ in range(r):
            ln, row = cur.next("matrix row")
            entries.extend(_ints(row, ln, c))
    return IntMatrix(r, c, entries)


def parse_matrix_text(text: str) -> IntMatrix:
    """First line 'R C', then R rows of C integers; rows are omitted when
    either dimension is zero."""
    cur = _Cursor(text)
    m = _parse_matrix_at(cur)
    cur.expect_done()
    return m


def parse_graph_text(text: str) -> sft.DirectedGraph:
    """Line 'vertices N', then one line 'i t' per edge (1-based)."""
    cur = _Cursor(text)
    lineno, header = cur.next("'vertices N'")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "vertices":
        raise InputError(f"expected 'vertices N', got {header!r}", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise InputError(f"bad vertex count {parts[1]!r}", lineno) from None
    edges = []
    while not cur.done():
        ln, line = cur.next("edge")
        i, t = _ints(line, ln, 2)
        if not (1 <= i <= n and 1 <= t <= n):
            raise InputError(f"edge ({i}, {t}) out of range 1..{n}", ln)
        edges.append((i - 1, t - 1))
    try:
        return sft.DirectedGraph(n, edges)
    except sft.SftPreconditionError as e:
        raise InputError(f"graph violates the '{e.axiom}' axiom: {e}") from None
    except ValueError as e:
        raise InputError(str(e)) from None


def parse_groupoid_text(text: str) -> chain.FiniteTransformationGroupoid:
    """Sections: 'group K' with a KxK multiplication table, 'set N', and
    'action' with one permutation line per group element (all 0-based)."""
    cur = _Cursor(text)
    lineno, header = cur.next("'group K'")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "group":
        raise InputError(f"expected 'group K', got {header!r}", lineno)
    k = int(parts[1])
    table = []
    for _ in range(k):
        ln, line = cur.next("multiplication table row")
        table.append(_ints(line, ln, k))
    lineno, header = cur.next("'set N'")
    parts = header.split()
    if len(parts) != 2 or parts[0] != "set":
        raise InputError(f"expected 'set N', got {header!r}", lineno)
    nx = int(parts[1])
    lineno, header = cur.next("'action'")
    if header != "action":
        raise InputError(f"expected 'action', got {header!r}", lineno)
    action = []
    for _ in range(k):
        ln, line = cur.next("action permutation")
        action.append(_ints(line, ln, nx))
    cur.expect_done()
    try:
        return chain.FiniteTransformationGroupoid(table, nx, action)
    except ValueError as e:
        raise InputError(str(e)) from None


def parse_sequence_text(text: str) -> exactseq.ExactSequence:
    """Alternating 'group <pretty>' lines and map blocks: 'map' followed by
    a matrix, or 'map unknown'."""
    cur = _Cursor(text)
    groups = []
    maps = []
    expecting_group = True
    while not cur.done():
        lineno, line = cur.peek()
        if expecting_group:
            cur.next("group")
            if not line.startswith("group"):
                raise InputError(f"expected 'group <value>', got {line!r}", lineno)
            try:
                groups.append(FgAbGroup.parse(line[len("group"):]))
            except ValueError as e:
                raise InputError(str(e), lineno) from None
            expecting_group = False
        else:
            cur.next("map")
            if line == "map unknown":
                maps.append(None)
            elif line == "map":
                maps.append(_parse_matrix_at(cur))
            else:
                raise InputError(f"expected 'map' or 'map unknown', got {line!r}", lineno)
            expecting_group = True
    if expecting_group and groups:
        raise InputError("sequence ends with a map; expected a final group")
    if len(groups) < 2:
        raise InputError("sequence needs at least two groups")
    homs = []
    for i, m in enumerate(maps):
        if m is None:
            homs.append(None)
            continue
        try:
            homs.append(GroupHom(groups[i], groups[i + 1], m))
        except ValueError as e:
            raise InputError(f"map {i}: {e}") from None
    try:
        return exactseq.ExactSequence(groups, homs)
    except ValueError as e:
        raise InputError(str(e)) from None


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def parse_inputs(path: str, kind: str):
    """Load a typed value from a file; kind is one of matrix, graph,
    groupoid, sequence."""
    text = _read(path)
    if kind == "matrix":
        return parse_matrix_text(text)
    if kind == "graph":
        return parse_graph_text(text)
    if kind == "groupoid":
        return parse_groupoid_text(text)
    if kind == "sequence":
        return parse_sequence_text(text)
    raise ValueError(f"unknown input kind {kind!r}")


# -- subcommands -----------------------------------------------------------

def _cmd_snf(args) -> int:
    m = parse_inputs(args.matrix, "matrix")
    u, d, v = zlinalg.smith_normal_form(m)
    for label, mat in (("U", u), ("D", d), ("V", v)):
        print(label)
        print(zlinalg.format_matrix(mat))
    return 0


def _load_sft_matrix(path: str) -> IntMatrix:
    text = _read(path)
    lines = _significant_lines(text)
    if lines and lines[0][1].startswith("vertices"):
        return sft.adjacency(parse_graph_text(text))
    m = parse_matrix_text(text)
    try:
        sft._check_sft_matrix(m)
    except sft.SftPreconditionError as e:
        raise InputError(f"matrix violates the '{e.axiom}' axiom: {e}") from None
    return m


def _cmd_sft_homology(args) -> int:
    b = _load_sft_matrix(args.input)
    h = sft.sft_homology(b)
    print(f"H_0 = {h[0].pretty()}")
    print(f"H_1 = {h[1].pretty()}")
    return 0


_FACTOR_LABELS = ("Ker(B^t+I)", "Ker(block)", "Ker(B^t-I)",
                  "Coker(B^t+I)", "Coker(block)", "Coker(B^t-I)")
_SUB_LABELS = ("Ker(B^t-I)", "Ker(block)", "Ker(B^t+I)",
               "Coker(B^t-I)", "Coker(block)", "Coker(B^t+I)")


def _cmd_sft_sixterm(args) -> int:
    g = parse_inputs(args.graph, "graph")
    if args.mode == "factor":
        seq, report = sft.factor_six_term(g)
        labels = _FACTOR_LABELS
    else:
        seq, report = sft.subgroupoid_six_term(g)
        labels = _SUB_LABELS
    print(f"six-term sequence ({args.mode} situation), maps unknown:")
    print("0 -> " + " -> ".join(labels) + " -> 0")
    for label, group in zip(labels, seq.groups[1:-1]):
        print(f"{label} = {group.pretty()}")
    print(report.describe())
    return 0 if report.all_ok else 2


def _cmd_les_verify(args) -> int:
    seq = parse_inputs(args.sequence, "sequence")
    if not seq.all_maps_known:
        raise InputError("sequence has unknown maps; nothing to verify")
    report = exactseq.verify_exactness(seq)
    print(report.describe())
    return 0 if report.exact else 2


def _cmd_nerve(args) -> int:
    g = parse_inputs(args.groupoid, "groupoid")
    if args.max_degree < 1:
        raise InputError("--max-degree must be at least 1")
    h = chain.moore_homology(g, args.max_degree)
    for n in range(args.max_degree):
        print(f"H_{n} = {h[n].pretty()}")
    return 0


def _cmd_tiling(args) -> int:
    result = (hyperplane.octagonal_pipeline() if args.which == "octagonal"
              else hyperplane.penrose_pipeline())
    if args.trace:
        print(result.trace, end="")
    for n in range(3):
        print(f"H_{n} = {result.homology[n].pretty()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gdhom",
        description="exact homology computations for etale groupoids",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("snf", help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help="matrix file")
    p.set_defaults(func=_cmd_snf)

    p = subs.add_parser("sft-homology", help="homology of an SFT groupoid")
    p.add_argument("input", help="graph file or adjacency matrix file")
    p.set_defaults(func=_cmd_sft_homology)

    p = subs.add_parser("sft-sixterm", help="six-term sequence of a doubled graph")
    p.add_argument("--mode", choices=("factor", "sub"), required=True)
    p.add_argument("graph", help="graph file")
    p.set_defaults(func=_cmd_sft_sixterm)

    p = subs.add_parser("les-verify", help="verify exactness of a sequence file")
    p.add_argument("sequence", help="sequence file")
    p.set_defaults(func=_cmd_les_verify)

    p = subs.add_parser("nerve", help="homology of a finite transformation groupoid")
    p.add_argument("groupoid", help="groupoid file")
    p.add_argument("--max-degree", type=int, default=3,
                   help="truncation degree N; degrees below N are reported")
    p.set_defaults(func=_cmd_nerve)

    p = subs.add_parser("tiling", help="octagonal or Penrose pipeline")
    p.add_argument("which", choices=("octagonal", "penrose"))
    p.add_argument("--trace", action="store_true", help="print the step trace")
    p.set_defaults(func=_cmd_tiling)

    return parser


def run(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        # argparse already printed usage/help; fold its exit codes into the
        # documented contract (0 for --help, 1 for bad usage)
        return 0 if e.code == 0 else 1
    try:
        return args.func(args)
    except InputError as e:
        print(e.describe(), file=sys.stderr)
        return 1
    except (sft.SftPreconditionError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
