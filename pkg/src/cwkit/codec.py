"""graph6 and plain edge-list text formats.

graph6 is the canonical printable encoding of the upper-triangular adjacency
bits: a size header (one byte for n <= 62, the 0x7e long form up to 258047),
then the column-major bit string x(0,1) x(0,2) x(1,2) x(0,3) ... packed into
6-bit groups, each offset by 63.  The edge-list format is an "n m" header
line followed by one "u v" line per edge, 0-indexed.
"""

from __future__ import annotations

from .core import Graph

GRAPH6_MAX_N = 258047


class CodecError(ValueError):
    """Malformed graph text; ``offset`` is the byte position when known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


def _upper_pairs(n: int):
    for col in range(1, n):
        for row in range(col):
            yield row, col


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 word (surrounding whitespace tolerated)."""
    word = text.strip()
    if not word:
        raise CodecError("empty graph6 word")
    data = word.encode("ascii", errors="replace")
    pos = 0
    if data[pos] == 126:  # '~' long-form header
        if len(data) < 4:
            raise CodecError("truncated long-form header", pos)
        if data[1] == 126:
            raise CodecError("graphs with n > 258047 are not supported", 1)
        vals = []
        for i in range(1, 4):
            b = data[i]
            if not 63 <= b <= 126:
                raise CodecError(f"out-of-range byte {b}", i)
            vals.append(b - 63)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        pos = 4
    else:
        b = data[0]
        if not 63 <= b <= 126:
            raise CodecError(f"out-of-range byte {b}", 0)
        n = b - 63
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise CodecError(
            f"truncated bit section: need {nbytes} bytes, have {len(data) - pos}", pos
        )
    if len(data) - pos > nbytes:
        raise CodecError("trailing bytes after bit section", pos + nbytes)
    bits = []
    for i in range(pos, pos + nbytes):
        b = data[i]
        if not 63 <= b <= 126:
            raise CodecError(f"out-of-range byte {b}", i)
        v = b - 63
        bits.extend((v >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise CodecError("nonzero padding bits", pos + nbytes - 1)
    rows = [0] * n
    for (u, v), bit in zip(_upper_pairs(n), bits):
        if bit:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def write_graph6(g: Graph) -> str:
    """Canonical graph6 word for ``g`` (no trailing newline)."""
    n = g.n
    if n > GRAPH6_MAX_N:
        raise CodecError(f"n={n} exceeds the graph6 limit {GRAPH6_MAX_N}")
    if n <= 62:
        head = [n + 63]
    else:
        head = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    bits = [1 if g.has_edge(u, v) else 0 for u, v in _upper_pairs(n)]
    while len(bits) % 6:
        bits.append(0)
    body = []
    for i in range(0, len(bits), 6):
        v = 0
        for bit in bits[i : i + 6]:
            v = (v << 1) | bit
        body.append(v + 63)
    return bytes(head + body).decode("ascii")


def parse_edge_list(text: str) -> Graph:
    """Parse the "n m" header plus "u v" lines format."""
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise CodecError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise CodecError(f"bad header {lines[0]!r}: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise CodecError(f"bad header {lines[0]!r}: {exc}") from None
    if len(lines) - 1 != m:
        raise CodecError(f"header announces {m} edges, found {len(lines) - 1} lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise CodecError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise CodecError(str(exc)) from None


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph_auto(text: str) -> Graph:
    """Auto-detect by first byte: digits mean edge-list, else graph6."""
    stripped = text.lstrip()
    if not stripped:
        raise CodecError("empty graph input")
    if stripped[0].isdigit():
        return parse_edge_list(text)
    return parse_graph6(stripped.splitlines()[0])
