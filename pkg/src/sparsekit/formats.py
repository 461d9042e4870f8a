"""Parsers and serializers for all instance and certificate formats.

Text formats (DIMACS-style, ``c`` lines are comments):

* CNF:        ``p cnf <vars> <clauses>`` then 0-terminated clauses.
* Hypergraph: ``p hyp <vertices> <edges>`` then one 0-terminated vertex
  list per edge, in order (edge order is significant).
* Graph:      ``p edge <vertices> <edges>`` then ``e u v`` lines.
* Digraph:    ``p arc <vertices> <arcs>`` then ``a u v`` lines.

Structured instances and certificates are single JSON documents with a
``type`` discriminator; see docs/FORMATS.md.  Serialization is canonical:
``parse(serialize(v)) == v`` and re-serializing a parsed document is
byte-identical.
"""

from __future__ import annotations

import json

from .instances import (
    Assignment,
    BipartiteHamInstance,
    CnfFormula,
    Coloring,
    Digraph,
    DomSet,
    EqColRbdsInstance,
    Graph,
    HamCycle,
    Hypergraph,
    InvariantError,
    ListColoringInstance,
    TsdInstance,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _tokens(text: str):
    """Yield (token, line_number), skipping comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        for tok in stripped.split():
            yield tok, lineno


def _int_token(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def _parse_header(stream, fmt: str) -> tuple[int, int, int]:
    try:
        tok, lineno = next(stream)
    except StopIteration:
        raise ParseError("empty input, missing header") from None
    if tok != "p":
        raise ParseError(f"expected 'p {fmt}' header, got {tok!r}", lineno)
    rest = []
    for _ in range(3):
        try:
            t, lineno = next(stream)
        except StopIteration:
            raise ParseError(f"truncated 'p {fmt}' header", lineno) from None
        rest.append((t, lineno))
    if rest[0][0] != fmt:
        raise ParseError(f"expected format {fmt!r}, got {rest[0][0]!r}", rest[0][1])
    n = _int_token(*rest[1])
    m = _int_token(*rest[2])
    if n < 0 or m < 0:
        raise ParseError("header counts must be non-negative", rest[2][1])
    return n, m, rest[2][1]


def _parse_zero_terminated(text: str, fmt: str,
                           in_range) -> tuple[int, list[list[int]], int]:
    stream = _tokens(text)
    n, m, header_line = _parse_header(stream, fmt)
    groups: list[list[int]] = []
    current: list[int] = []
    last_line = header_line
    for tok, lineno in stream:
        val = _int_token(tok, lineno)
        last_line = lineno
        if val == 0:
            groups.append(current)
            current = []
        elif not in_range(val, n):
            raise ParseError(f"index {val} out of range for n={n}", lineno)
        else:
            current.append(val)
    if current:
        raise ParseError("unterminated final group (missing 0)", last_line)
    if len(groups) != m:
        raise ParseError(
            f"header declares {m} entries but body has {len(groups)}", last_line)
    return n, groups, header_line


# --------------------------------------------------------------------------
# CNF


def parse_cnf(text: str) -> CnfFormula:
    n, groups, header_line = _parse_zero_terminated(
        text, "cnf", lambda lit, nv: 1 <= abs(lit) <= nv)
    try:
        return CnfFormula(n, groups)
    except InvariantError as exc:
        raise ParseError(str(exc), header_line) from None


def serialize_cnf(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    for clause in f.clauses:
        lines.append(" ".join(str(l) for l in clause) + " 0" if clause else "0")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# hypergraphs


def parse_hypergraph(text: str) -> Hypergraph:
    n, groups, header_line = _parse_zero_terminated(
        text, "hyp", lambda v, nv: 1 <= v <= nv)
    try:
        return Hypergraph(n, groups)
    except InvariantError as exc:
        raise ParseError(str(exc), header_line) from None


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"p hyp {h.num_vertices} {len(h.edges)}"]
    for e in h.edges:
        lines.append(" ".join(str(v) for v in e) + " 0" if e else "0")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# graphs and digraphs


def _parse_pair_format(text: str, fmt: str, tag: str) -> tuple[int, list[tuple[int, int]]]:
    stream = _tokens(text)
    n, m, _ = _parse_header(stream, fmt)
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    toks = list(stream)
    if len(toks) % 3 != 0:
        raise ParseError(f"truncated '{tag} u v' entry",
                         toks[-1][1] if toks else None)
    for i in range(0, len(toks), 3):
        (t0, l0), (t1, l1), (t2, l2) = toks[i], toks[i + 1], toks[i + 2]
        if t0 != tag:
            raise ParseError(f"expected {tag!r} line, got {t0!r}", l0)
        u = _int_token(t1, l1)
        v = _int_token(t2, l2)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", l2)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"endpoint out of range in ({u},{v})", l2)
        key = (min(u, v), max(u, v)) if tag == "e" else (u, v)
        if key in seen:
            raise ParseError(f"duplicate entry ({u},{v})", l2)
        seen.add(key)
        pairs.append(key)
    if len(pairs) != m:
        raise ParseError(f"header declares {m} entries but body has {len(pairs)}")
    return n, pairs


def parse_graph(text: str) -> Graph:
    n, pairs = _parse_pair_format(text, "edge", "e")
    return Graph(n, pairs)


def serialize_graph(g: Graph) -> str:
    lines = [f"p edge {g.num_vertices} {len(g.edges)}"]
    lines.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    n, pairs = _parse_pair_format(text, "arc", "a")
    return Digraph(n, pairs)


def serialize_digraph(d: Digraph) -> str:
    lines = [f"p arc {d.num_vertices} {len(d.arcs)}"]
    lines.extend(f"a {u} {v}" for u, v in d.sorted_arcs())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# JSON documents (structured instances and certificates)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _graph_fields(g: Graph) -> dict:
    return {
        "num_vertices": g.num_vertices,
        "edges": [[u, v] for u, v in g.sorted_edges()],
    }


def _graph_from_fields(doc: dict) -> Graph:
    return Graph(doc["num_vertices"], [tuple(e) for e in doc["edges"]])


def serialize_instance(inst) -> str:
    """Structured instance (or graph-like) to its canonical JSON document."""
    if isinstance(inst, TsdInstance):
        doc = {"type": "tsd", **_graph_fields(inst.graph),
               "independent_set": list(inst.independent_set),
               "triangles": [list(t) for t in inst.triangles]}
    elif isinstance(inst, BipartiteHamInstance):
        doc = {"type": "bipartite_ham", **_graph_fields(inst.graph),
               "side_a": list(inst.side_a), "side_b": list(inst.side_b),
               "s": inst.s, "t": inst.t}
    elif isinstance(inst, EqColRbdsInstance):
        doc = {"type": "eq_col_rbds", **_graph_fields(inst.graph),
               "red_classes": [list(c) for c in inst.red_classes],
               "blue": list(inst.blue)}
    elif isinstance(inst, ListColoringInstance):
        doc = {"type": "list_coloring", **_graph_fields(inst.graph),
               "lists": [list(l) for l in inst.lists]}
    else:
        raise TypeError(f"no JSON form for {type(inst).__name__}")
    return _dump_json(doc)


def parse_instance_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "type" not in doc:
        raise ParseError("JSON instance must be an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "tsd":
            return TsdInstance(_graph_from_fields(doc),
                               doc["independent_set"],
                               [tuple(t) for t in doc["triangles"]])
        if kind == "bipartite_ham":
            return BipartiteHamInstance(_graph_from_fields(doc), doc["side_a"],
                                        doc["side_b"], doc["s"], doc["t"])
        if kind == "eq_col_rbds":
            return EqColRbdsInstance(_graph_from_fields(doc),
                                     [tuple(c) for c in doc["red_classes"]],
                                     doc["blue"])
        if kind == "list_coloring":
            return ListColoringInstance(_graph_from_fields(doc), doc["lists"])
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r} in {kind} instance") from None
    except InvariantError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown instance type {kind!r}")


def serialize_certificate(cert) -> str:
    if isinstance(cert, Assignment):
        doc = {"type": "assignment", "values": [int(v) for v in cert.values]}
    elif isinstance(cert, Coloring):
        doc = {"type": "coloring", "colors": list(cert.colors)}
    elif isinstance(cert, HamCycle):
        doc = {"type": "ham_cycle", "order": list(cert.order)}
    elif isinstance(cert, DomSet):
        doc = {"type": "dom_set", "vertices": list(cert.vertices)}
    else:
        raise TypeError(f"no JSON form for {type(cert).__name__}")
    return _dump_json(doc)


def parse_certificate_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "type" not in doc:
        raise ParseError("JSON certificate must be an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "assignment":
            return Assignment([bool(v) for v in doc["values"]])
        if kind == "coloring":
            return Coloring(doc["colors"])
        if kind == "ham_cycle":
            return HamCycle(doc["order"])
        if kind == "dom_set":
            return DomSet(doc["vertices"])
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r} in {kind} certificate") from None
    raise ParseError(f"unknown certificate type {kind!r}")


# --------------------------------------------------------------------------
# dispatch helpers


_TEXT_PARSERS = {
    "cnf": parse_cnf,
    "hyp": parse_hypergraph,
    "edge": parse_graph,
    "arc": parse_digraph,
}


_CERT_KINDS = ("assignment", "coloring", "ham_cycle", "dom_set")


def parse_any(text: str):
    """Parse any supported document, detecting the format from its content."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            kind = json.loads(text).get("type")
        except (json.JSONDecodeError, AttributeError):
            kind = None
        if kind in _CERT_KINDS:
            return parse_certificate_json(text)
        return parse_instance_json(text)
    for tok, lineno in _tokens(text):
        if tok != "p":
            raise ParseError(f"expected a 'p' header or JSON document, got {tok!r}",
                             lineno)
        break
    for fmt, parser in _TEXT_PARSERS.items():
        try:
            return parser(text)
        except ParseError as exc:
            if "expected format" in str(exc):
                continue
            raise
    raise ParseError("unrecognized 'p' header format")


def serialize_any(value) -> str:
    if isinstance(value, CnfFormula):
        return serialize_cnf(value)
    if isinstance(value, Hypergraph):
        return serialize_hypergraph(value)
    if isinstance(value, Graph):
        return serialize_graph(value)
    if isinstance(value, Digraph):
        return serialize_digraph(value)
    if isinstance(value, (Assignment, Coloring, HamCycle, DomSet)):
        return serialize_certificate(value)
    return serialize_instance(value)


def load_any(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_any(fh.read())


def save_any(path: str, value) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_any(value))
