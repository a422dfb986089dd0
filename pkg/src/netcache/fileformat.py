"""Instance and source-problem text formats.

The instance document is line-oriented with one record per line:

    netcache-instance v1
    content <id> <size>
    cache <id> <capacity>
    user <id> <num>/<den>
    request <user> <content> <num>/<den>
    edge <cache> <user>
    threshold <num>/<den>

Serialization is canonical (sorted ids, lowest-terms fractions with an
explicit denominator), so parse and serialize round-trip bit-exactly.
Lines starting with ``#`` and blank lines are ignored when parsing.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .model import Allocation, Instance, User, validate
from .problems import BinPackingInstance, CnfFormula, KnapsackInstance, MaxKVcInstance

HEADER = "netcache-instance v1"

_ID_RE = re.compile(r"^[A-Za-z0-9_@#.~-]+$")


def _parse_fraction(token: str, line_no: int, col: int) -> Fraction:
    if "/" in token:
        num_s, _, den_s = token.partition("/")
    else:
        num_s, den_s = token, "1"
    try:
        num, den = int(num_s), int(den_s)
    except ValueError:
        raise ParseError(f"bad fraction {token!r}", line_no, col) from None
    if den == 0:
        raise ParseError(f"zero denominator in {token!r}", line_no, col)
    return Fraction(num, den)


def _parse_int(token: str, line_no: int, col: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad integer {token!r}", line_no, col) from None


def _check_id(token: str, line_no: int, col: int) -> str:
    if not _ID_RE.match(token):
        raise ParseError(f"bad id {token!r}", line_no, col)
    return token


def _records(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        cols = []
        pos = 0
        for tok in tokens:
            pos = raw.index(tok, pos)
            cols.append(pos + 1)
            pos += len(tok)
        yield line_no, tokens, cols


def parse_instance_document(text: str) -> tuple[Instance, Fraction | None]:
    """Parse a document into a validated instance and optional threshold."""
    contents: dict[str, int] = {}
    caches: dict[str, int] = {}
    weights: dict[str, Fraction] = {}
    requests: dict[str, dict[str, Fraction]] = {}
    edges: set[tuple[str, str]] = set()
    threshold: Fraction | None = None
    saw_header = False

    for line_no, tokens, cols in _records(text):
        kind = tokens[0]
        if not saw_header:
            if tokens != HEADER.split():
                raise ParseError(f"expected header {HEADER!r}", line_no, cols[0])
            saw_header = True
            continue
        if kind == "content" and len(tokens) == 3:
            contents[_check_id(tokens[1], line_no, cols[1])] = _parse_int(
                tokens[2], line_no, cols[2]
            )
        elif kind == "cache" and len(tokens) == 3:
            caches[_check_id(tokens[1], line_no, cols[1])] = _parse_int(
                tokens[2], line_no, cols[2]
            )
        elif kind == "user" and len(tokens) == 3:
            uid = _check_id(tokens[1], line_no, cols[1])
            weights[uid] = _parse_fraction(tokens[2], line_no, cols[2])
            requests.setdefault(uid, {})
        elif kind == "request" and len(tokens) == 4:
            uid = _check_id(tokens[1], line_no, cols[1])
            sid = _check_id(tokens[2], line_no, cols[2])
            if uid not in weights:
                raise ParseError(f"request before user {uid!r}", line_no, cols[1])
            requests[uid][sid] = _parse_fraction(tokens[3], line_no, cols[3])
        elif kind == "edge" and len(tokens) == 3:
            edges.add(
                (
                    _check_id(tokens[1], line_no, cols[1]),
                    _check_id(tokens[2], line_no, cols[2]),
                )
            )
        elif kind == "threshold" and len(tokens) == 2:
            threshold = _parse_fraction(tokens[1], line_no, cols[1])
        else:
            raise ParseError(f"unrecognized record {' '.join(tokens)!r}", line_no, cols[0])

    if not saw_header:
        raise ParseError(f"missing header {HEADER!r}", 1, 1)
    users = {u: User(weights[u], requests[u]) for u in weights}
    instance = validate(Instance(contents, caches, users, frozenset(edges)))
    return instance, threshold


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def serialize_instance(
    instance: Instance, threshold: Fraction | None = None
) -> str:
    lines = [HEADER]
    for s in instance.content_ids():
        lines.append(f"content {s} {instance.contents[s]}")
    for c in instance.cache_ids():
        lines.append(f"cache {c} {instance.caches[c]}")
    for u in instance.user_ids():
        lines.append(f"user {u} {_frac_str(instance.users[u].weight)}")
    for u in instance.user_ids():
        reqs = instance.users[u].requests
        for s in sorted(reqs):
            lines.append(f"request {u} {s} {_frac_str(reqs[s])}")
    for c, u in sorted(instance.edges):
        lines.append(f"edge {c} {u}")
    if threshold is not None:
        lines.append(f"threshold {_frac_str(threshold)}")
    return "\n".join(lines) + "\n"


def serialize_allocation(alloc: Allocation) -> str:
    lines = []
    for c in sorted(alloc.store):
        for s in sorted(alloc.store[c]):
            lines.append(f"store {c} {s}")
    return "\n".join(lines) + ("\n" if lines else "")


# Source-problem formats (see the CLI documentation):
#   CNF        "p <vars> <clauses>" then one clause per line, signed ints,
#              optional trailing 0 (DIMACS-like)
#   binpack    "<bins> <capacity>" then item sizes
#   knapsack   "<capacity> <target>" then "<weight> <value>" lines
#   graph      "<vertices> <k> <t>" then "<x> <y>" edge lines (1-based)


def parse_cnf(text: str) -> CnfFormula:
    records = list(_records(text))
    if not records:
        raise ParseError("empty CNF document", 1, 1)
    line_no, tokens, cols = records[0]
    if tokens[0] != "p" or len(tokens) != 3:
        raise ParseError("expected 'p <vars> <clauses>' header", line_no, cols[0])
    num_vars = _parse_int(tokens[1], line_no, cols[1])
    num_clauses = _parse_int(tokens[2], line_no, cols[2])
    clauses = []
    for line_no, tokens, cols in records[1:]:
        lits = []
        for tok, col in zip(tokens, cols):
            lit = _parse_int(tok, line_no, col)
            if lit == 0:
                break
            lits.append((abs(lit), lit > 0))
        if lits:
            clauses.append(tuple(lits))
    if len(clauses) != num_clauses:
        raise ParseError(
            f"header promises {num_clauses} clauses, found {len(clauses)}", 1, 1
        )
    return CnfFormula(num_vars, tuple(clauses))


def parse_bin_packing(text: str) -> BinPackingInstance:
    records = list(_records(text))
    if not records:
        raise ParseError("empty bin-packing document", 1, 1)
    line_no, tokens, cols = records[0]
    if len(tokens) != 2:
        raise ParseError("expected '<bins> <capacity>' header", line_no, cols[0])
    bins = _parse_int(tokens[0], line_no, cols[0])
    capacity = _parse_int(tokens[1], line_no, cols[1])
    items = []
    for line_no, tokens, cols in records[1:]:
        items.extend(_parse_int(t, line_no, c) for t, c in zip(tokens, cols))
    return BinPackingInstance(tuple(items), bins, capacity)


def parse_knapsack(text: str) -> KnapsackInstance:
    records = list(_records(text))
    if not records:
        raise ParseError("empty knapsack document", 1, 1)
    line_no, tokens, cols = records[0]
    if len(tokens) != 2:
        raise ParseError("expected '<capacity> <target>' header", line_no, cols[0])
    capacity = _parse_int(tokens[0], line_no, cols[0])
    target = _parse_int(tokens[1], line_no, cols[1])
    items = []
    for line_no, tokens, cols in records[1:]:
        if len(tokens) != 2:
            raise ParseError("expected '<weight> <value>'", line_no, cols[0])
        items.append(
            (_parse_int(tokens[0], line_no, cols[0]), _parse_int(tokens[1], line_no, cols[1]))
        )
    return KnapsackInstance(capacity, tuple(items), target)


def parse_graph(text: str) -> MaxKVcInstance:
    records = list(_records(text))
    if not records:
        raise ParseError("empty graph document", 1, 1)
    line_no, tokens, cols = records[0]
    if len(tokens) != 3:
        raise ParseError("expected '<vertices> <k> <t>' header", line_no, cols[0])
    n = _parse_int(tokens[0], line_no, cols[0])
    k = _parse_int(tokens[1], line_no, cols[1])
    t = _parse_int(tokens[2], line_no, cols[2])
    edges = []
    for line_no, tokens, cols in records[1:]:
        if len(tokens) != 2:
            raise ParseError("expected '<x> <y>' edge", line_no, cols[0])
        edges.append(
            (_parse_int(tokens[0], line_no, cols[0]), _parse_int(tokens[1], line_no, cols[1]))
        )
    return MaxKVcInstance.from_edges(n, edges, k, t)
