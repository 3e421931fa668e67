"""Text formats for graphs, list assignments and NAE formulas.

Graph files follow the DIMACS ``.col`` layout with 1-based vertex numbers::

    c optional comment
    p 5 4              (``p edge 5 4`` is accepted too)
    e 1 2
    k 3                palette size, default 3
    l 2 1 3            list of vertex 2; unlisted vertices get 1..k

In memory vertices are numbered from 0, so file vertex ``i`` is ``i - 1``.

Formula files hold ``v <n>`` and then ``c <g> <h> <i>`` per clause. Since
``c`` doubles as the comment marker in graph files, a ``c`` line in a
formula file counts as a clause only when it carries exactly three integers.
"""

from __future__ import annotations

from .graph import Graph
from .oracle import NAEFormula


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _ints(parts, lineno):
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(parts)!r}", lineno) from None


def parse_graph(text: str) -> tuple[Graph, dict[int, frozenset], int]:
    """Parse a graph file; returns (graph, lists, palette size)."""
    n = None
    k = 3
    edges = []
    raw_lists = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            args = parts[1:]
            if args and not args[0].lstrip("-").isdigit():
                args = args[1:]
            nums = _ints(args, lineno)
            if len(nums) != 2 or nums[0] < 0:
                raise FormatError("header must be 'p <n> <m>'", lineno)
            if n is not None:
                raise FormatError("duplicate header", lineno)
            n = nums[0]
        elif tag == "e":
            nums = _ints(parts[1:], lineno)
            if len(nums) != 2:
                raise FormatError("edge line must be 'e <u> <v>'", lineno)
            edges.append((nums[0], nums[1], lineno))
        elif tag == "k":
            nums = _ints(parts[1:], lineno)
            if len(nums) != 1 or nums[0] < 1:
                raise FormatError("palette line must be 'k <int>' with a positive int", lineno)
            k = nums[0]
        elif tag == "l":
            nums = _ints(parts[1:], lineno)
            if len(nums) < 2:
                raise FormatError("list line must be 'l <v> <c1> ...'", lineno)
            if nums[0] in raw_lists:
                raise FormatError(f"second list for vertex {nums[0]}", lineno)
            raw_lists[nums[0]] = (nums[1:], lineno)
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise FormatError("missing 'p' header")
    g = Graph(range(n))
    for u, v, lineno in edges:
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"edge endpoint outside 1..{n}", lineno)
        if u == v:
            raise FormatError("self-loop", lineno)
        g.add_edge(u - 1, v - 1)
    palette = frozenset(range(1, k + 1))
    lists = {v: palette for v in range(n)}
    for v, (cols, lineno) in raw_lists.items():
        if not 1 <= v <= n:
            raise FormatError(f"list for vertex outside 1..{n}", lineno)
        if not set(cols) <= palette:
            raise FormatError(f"colour outside 1..{k}", lineno)
        lists[v - 1] = frozenset(cols)
    return g, lists, k


def read_graph(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: Graph, lists: dict | None = None, k: int = 3, comments=()) -> str:
    """Serialise ``g`` (vertices renumbered 1..n in ascending id order)."""
    order = g.vertices()
    num = {v: i + 1 for i, v in enumerate(order)}
    out = [f"c {c}" for c in comments]
    out.append(f"p {len(order)} {g.num_edges()}")
    for u, v in sorted((min(num[a], num[b]), max(num[a], num[b])) for a, b in g.edges()):
        out.append(f"e {u} {v}")
    if lists is not None:
        palette = frozenset(range(1, k + 1))
        if k != 3:
            out.append(f"k {k}")
        for v in order:
            if frozenset(lists[v]) != palette:
                out.append("l " + " ".join(str(x) for x in [num[v], *sorted(lists[v])]))
    return "\n".join(out) + "\n"


def write_graph(path: str, g: Graph, lists: dict | None = None, k: int = 3, comments=()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, lists, k, comments))


def parse_formula(text: str) -> NAEFormula:
    n = None
    clauses = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            nums = _ints(parts[1:], lineno)
            if len(nums) != 1:
                raise FormatError("variable line must be 'v <n>'", lineno)
            n = nums[0]
        elif parts[0] == "c":
            if len(parts) == 4 and all(p.lstrip("-").isdigit() for p in parts[1:]):
                clauses.append((tuple(_ints(parts[1:], lineno)), lineno))
        else:
            raise FormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'v <n>' line")
    for clause, lineno in clauses:
        if any(not 1 <= x <= n for x in clause):
            raise FormatError(f"clause variable outside 1..{n}", lineno)
    return NAEFormula(n, [c for c, _ in clauses])


def read_formula(path: str) -> NAEFormula:
    with open(path, encoding="utf-8") as fh:
        return parse_formula(fh.read())


def format_formula(f: NAEFormula) -> str:
    return "\n".join([f"v {f.n}"] + [f"c {g} {h} {i}" for g, h, i in f.clauses]) + "\n"
