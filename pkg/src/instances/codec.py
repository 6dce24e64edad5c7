"""DIMACS CNF and "p col" edge-list text formats."""

from __future__ import annotations

from typing import Optional

from src.models.instance import CnfInstance, Graph, InstanceError, canonical_clause


class CodecError(RuntimeError):
    """Raised when instance text is malformed."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _header(text: str, kind: str) -> tuple[int, int, int, list[tuple[int, str]]]:
    body: list[tuple[int, str]] = []
    header: Optional[tuple[int, int, int]] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise CodecError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != kind:
                raise CodecError(f"malformed header, expected 'p {kind} <n> <count>'", lineno)
            try:
                n, count = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise CodecError("header values must be integers", lineno) from exc
            if n < 1 or count < 0:
                raise CodecError("header values out of range", lineno)
            header = (n, count, lineno)
            continue
        if header is None:
            raise CodecError("data before header", lineno)
        body.append((lineno, line))
    if header is None:
        raise CodecError(f"missing 'p {kind}' header")
    return header[0], header[1], header[2], body


def parse_dimacs(text: str) -> CnfInstance:
    num_vars, num_clauses, header_line, body = _header(text, "cnf")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = header_line
    arity: Optional[int] = None
    for lineno, line in body:
        for token in line.split():
            try:
                lit = int(token)
            except ValueError as exc:
                raise CodecError(f"invalid literal {token!r}", lineno) from exc
            if not current:
                current_line = lineno
            if lit == 0:
                if not current:
                    raise CodecError("empty clause", lineno)
                if len({abs(x) for x in current}) != len(current):
                    raise CodecError(f"clause {current} repeats a variable", current_line)
                if arity is None:
                    arity = len(current)
                elif len(current) != arity:
                    raise CodecError(f"clause has {len(current)} literals, expected {arity}", current_line)
                clauses.append(canonical_clause(current))
                current = []
                continue
            if abs(lit) > num_vars:
                raise CodecError(f"literal {lit} out of range 1..{num_vars}", lineno)
            current.append(lit)
    if current:
        raise CodecError("last clause is not terminated by 0", current_line)
    if len(clauses) != num_clauses:
        raise CodecError(f"header declares {num_clauses} clauses, found {len(clauses)}", header_line)
    try:
        return CnfInstance(num_vars=num_vars, clauses=tuple(clauses), k=arity or 3)
    except InstanceError as exc:
        raise CodecError(str(exc)) from exc


def emit_dimacs(instance: CnfInstance) -> str:
    lines = [f"p cnf {instance.num_vars} {instance.num_clauses}"]
    for clause in instance.clauses:
        lines.append(" ".join(str(lit) for lit in canonical_clause(clause)) + " 0")
    return "\n".join(lines) + "\n"


def parse_edges(text: str) -> Graph:
    num_vertices, num_edges, header_line, body = _header(text, "col")
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, line in body:
        parts = line.split()
        if parts[0] == "e":
            parts = parts[1:]
        if len(parts) != 2:
            raise CodecError("edge line must hold two vertices", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise CodecError("vertices must be integers", lineno) from exc
        if not (1 <= u <= num_vertices and 1 <= v <= num_vertices):
            raise CodecError(f"vertex out of range 1..{num_vertices}", lineno)
        if u == v:
            raise CodecError(f"self-loop on vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise CodecError(f"duplicate edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    if len(edges) != num_edges:
        raise CodecError(f"header declares {num_edges} edges, found {len(edges)}", header_line)
    return Graph(num_vertices=num_vertices, edges=tuple(sorted(edges)))


def emit_edges(graph: Graph) -> str:
    lines = [f"p col {graph.num_vertices} {graph.num_edges}"]
    for u, v in sorted((min(a, b), max(a, b)) for a, b in graph.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def detect_format(text: str) -> str:
    """Return "cnf" or "col" from the first header line."""

    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if parts and parts[0] == "p" and len(parts) > 1:
            if parts[1] in ("cnf", "col"):
                return parts[1]
            raise CodecError(f"unknown format {parts[1]!r}", lineno)
    raise CodecError("no 'p' header found")
