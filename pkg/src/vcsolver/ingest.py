"""Graph ingestion: plain edge lists and MatrixMarket coordinate files.

Both parsers produce a raw edge list that ``canonicalize`` turns into the
solver's internal form: self-loop-free, deduplicated (min, max) pairs,
sorted, with isolated vertices preserved when the file declares a vertex
count.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from vcsolver.graph import StaticGraph, build_csr


class ParseError(ValueError):
    """Malformed input file; message carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class RawEdgeList:
    edges: list[tuple[int, int]]
    num_vertices_declared: int | None = None


def parse_edge_list(text: str) -> RawEdgeList:
    """Parse whitespace-separated integer pairs, one or more edges per line.

    '#' and '%' lines are comments; a '% base=1' comment switches the whole
    file to 1-based ids.  Ids are 0-based otherwise.
    """
    lines = text.splitlines()
    base = 0
    for line in lines:
        stripped = line.strip()
        if stripped.startswith("%") and stripped.lstrip("%").strip() == "base=1":
            base = 1
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped[0] in "#%":
            continue
        tokens = stripped.split()
        if len(tokens) % 2 != 0:
            raise ParseError(lineno, f"odd token count ({len(tokens)})")
        ids = []
        for tok in tokens:
            try:
                ids.append(int(tok))
            except ValueError:
                raise ParseError(lineno, f"non-integer token {tok!r}") from None
        for raw in ids:
            if raw < base:
                raise ParseError(
                    lineno,
                    f"vertex id {raw} below the {base}-based minimum",
                )
        for i in range(0, len(ids), 2):
            edges.append((ids[i] - base, ids[i + 1] - base))
    return RawEdgeList(edges, None)


_MTX_FIELDS = ("pattern", "integer", "real")
_MTX_SYMMETRIES = ("general", "symmetric")


def parse_matrix_market(text: str) -> RawEdgeList:
    """Parse a MatrixMarket coordinate file as an adjacency structure.

    Accepts pattern/integer/real fields (values ignored) and
    general/symmetric symmetry; entries are 1-based.
    """
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError(1, "missing %%MatrixMarket banner")
    banner = lines[0].split()
    if len(banner) < 5:
        raise ParseError(1, "incomplete %%MatrixMarket banner")
    obj, fmt, field, symmetry = (tok.lower() for tok in banner[1:5])
    if obj != "matrix":
        raise ParseError(1, f"unsupported object {obj!r}")
    if fmt != "coordinate":
        raise ParseError(1, f"unsupported format {fmt!r}; only coordinate")
    if field not in _MTX_FIELDS:
        raise ParseError(1, f"unsupported field {field!r}; one of {_MTX_FIELDS}")
    if symmetry not in _MTX_SYMMETRIES:
        raise ParseError(
            1, f"unsupported symmetry {symmetry!r}; one of {_MTX_SYMMETRIES}"
        )
    tokens_expected = 2 if field == "pattern" else 3

    dims = None
    entries: list[tuple[int, int]] = []
    declared_nnz = 0
    for lineno, line in enumerate(lines[1:], start=2):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("%"):
            if dims is None:
                continue
            raise ParseError(lineno, "comment after the dimension line")
        tokens = stripped.split()
        if dims is None:
            if len(tokens) != 3:
                raise ParseError(lineno, "malformed dimension line")
            try:
                rows, cols, declared_nnz = (int(t) for t in tokens)
            except ValueError:
                raise ParseError(lineno, "malformed dimension line") from None
            if rows != cols:
                raise ParseError(
                    lineno, f"adjacency matrix must be square, got {rows}x{cols}"
                )
            if rows < 0 or declared_nnz < 0:
                raise ParseError(lineno, "negative dimension")
            dims = (rows, cols)
            continue
        if len(tokens) != tokens_expected:
            raise ParseError(
                lineno,
                f"expected {tokens_expected} tokens per {field} entry, got {len(tokens)}",
            )
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(lineno, "non-integer index") from None
        if not (1 <= i <= dims[0]) or not (1 <= j <= dims[0]):
            raise ParseError(lineno, f"index ({i}, {j}) out of range 1..{dims[0]}")
        entries.append((i - 1, j - 1))
        if len(entries) > declared_nnz:
            raise ParseError(
                lineno, f"more than the declared {declared_nnz} entries"
            )
    if dims is None:
        raise ParseError(len(lines), "missing dimension line")
    if len(entries) != declared_nnz:
        raise ParseError(
            len(lines),
            f"expected {declared_nnz} entries, found {len(entries)}",
        )
    return RawEdgeList(entries, dims[0])


def canonicalize(raw: RawEdgeList) -> tuple[list[tuple[int, int]], int]:
    """Dedupe to sorted (min, max) pairs, drop self-loops, fix vertex count.

    The vertex count is the declared one when the format carries it
    (isolated vertices survive), else 1 + the largest id seen, self-loops
    included.
    """
    seen: set[tuple[int, int]] = set()
    max_id = -1
    for u, v in raw.edges:
        if u > max_id:
            max_id = u
        if v > max_id:
            max_id = v
        if u == v:
            continue
        seen.add((u, v) if u < v else (v, u))
    edges = sorted(seen)
    if raw.num_vertices_declared is not None:
        n = raw.num_vertices_declared
        if max_id >= n:
            raise ValueError(f"vertex id {max_id} outside declared count {n}")
    else:
        n = max_id + 1
    return edges, n


def load_graph(path, fmt: str = "auto") -> StaticGraph:
    """Read a graph file; ``fmt`` is 'auto', 'edgelist', or 'mtx'.

    Auto-detection keys on the %%MatrixMarket banner.
    """
    text = Path(path).read_text()
    if fmt == "auto":
        fmt = "mtx" if text.lstrip()[:15].lower().startswith("%%matrixmarket") else "edgelist"
    if fmt == "mtx":
        raw = parse_matrix_market(text)
    elif fmt == "edgelist":
        raw = parse_edge_list(text)
    else:
        raise ValueError(f"unknown format {fmt!r}; use auto, edgelist, or mtx")
    edges, n = canonicalize(raw)
    return build_csr(edges, n)
