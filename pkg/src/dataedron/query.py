"""Boolean query language: AST, parser, canonical form, composition,
lowering to the external search syntax, and the query history hb-graph.

Grammar (operators are case-sensitive uppercase):

    query  := or_expr
    or     := and (OR and)*          lowest precedence
    and    := not (AND not)*
    not    := NOT not | atom         unary, binds tightest of the operators
    atom   := '(' or ')' | '"' words '"' | word

Adjacent bare terms are an error: there is no implicit AND, so queries
built by clicking stay unambiguous.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union
from urllib.parse import quote

from .hbgraph import HbGraph
from .mset import Multiset

__all__ = [
    "Term",
    "Phrase",
    "And",
    "Or",
    "Not",
    "Group",
    "QueryAst",
    "QueryParseError",
    "UnsupportedQueryError",
    "parse",
    "to_canonical",
    "normalize",
    "combine",
    "to_external_query",
    "count_terms",
    "HistoryEntry",
    "QueryHistory",
]

_WORD_BAD = re.compile(r"[\s()\"]")


@dataclass(frozen=True)
class Term:
    word: str

    def __post_init__(self):
        if not self.word or _WORD_BAD.search(self.word):
            raise ValueError(f"invalid term word {self.word!r}")


@dataclass(frozen=True)
class Phrase:
    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words:
            raise ValueError("phrase must contain at least one word")
        for word in self.words:
            if not word or _WORD_BAD.search(word):
                raise ValueError(f"invalid phrase word {word!r}")


@dataclass(frozen=True)
class And:
    left: "QueryAst"
    right: "QueryAst"


@dataclass(frozen=True)
class Or:
    left: "QueryAst"
    right: "QueryAst"


@dataclass(frozen=True)
class Not:
    operand: "QueryAst"


@dataclass(frozen=True)
class Group:
    child: "QueryAst"


QueryAst = Union[Term, Phrase, And, Or, Not, Group]


class QueryParseError(ValueError):
    """Parse failure with the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (offset {position})")
        self.message = message
        self.position = position


class UnsupportedQueryError(ValueError):
    """Query shape the external search syntax cannot express."""


_TOKEN_RE = re.compile(r"\(|\)|\"|[^\s()\"]+")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, value, offset) triples; kinds: lparen rparen word phrase and or not."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "(":
            tokens.append(("lparen", "(", pos))
            pos += 1
        elif ch == ")":
            tokens.append(("rparen", ")", pos))
            pos += 1
        elif ch == '"':
            end = text.find('"', pos + 1)
            if end < 0:
                raise QueryParseError("unterminated quote", pos)
            words = text[pos + 1 : end].split()
            if not words:
                raise QueryParseError("empty phrase", pos)
            tokens.append(("phrase", " ".join(words), pos))
            pos = end + 1
        else:
            match = _TOKEN_RE.match(text, pos)
            word = match.group()
            if word in ("AND", "OR", "NOT"):
                tokens.append((word.lower(), word, pos))
            else:
                tokens.append(("word", word, pos))
            pos = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]], text: str):
        self._tokens = tokens
        self._text = text
        self._index = 0

    def _peek(self) -> tuple[str, str, int] | None:
        if self._index < len(self._tokens):
            return self._tokens[self._index]
        return None

    def _next(self) -> tuple[str, str, int]:
        token = self._tokens[self._index]
        self._index += 1
        return token

    def _eof_position(self) -> int:
        return len(self._text)

    def parse_query(self) -> QueryAst:
        node = self.parse_or()
        trailing = self._peek()
        if trailing is not None:
            kind, value, pos = trailing
            if kind == "rparen":
                raise QueryParseError("unbalanced parenthesis", pos)
            raise QueryParseError(
                f"missing operator before {value!r}", pos
            )
        return node

    def parse_or(self) -> QueryAst:
        node = self.parse_and()
        while (token := self._peek()) and token[0] == "or":
            self._next()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self) -> QueryAst:
        node = self.parse_not()
        while (token := self._peek()) and token[0] == "and":
            self._next()
            node = And(node, self.parse_not())
        return node

    def parse_not(self) -> QueryAst:
        token = self._peek()
        if token and token[0] == "not":
            self._next()
            return Not(self.parse_not())
        return self.parse_atom()

    def parse_atom(self) -> QueryAst:
        token = self._peek()
        if token is None:
            raise QueryParseError("dangling operator", self._eof_position())
        kind, value, pos = token
        if kind == "word":
            self._next()
            return Term(value)
        if kind == "phrase":
            self._next()
            return Phrase(tuple(value.split()))
        if kind == "lparen":
            self._next()
            inner = self.parse_or()
            closing = self._peek()
            if closing is None or closing[0] != "rparen":
                raise QueryParseError("unbalanced parenthesis", pos)
            self._next()
            return Group(inner)
        if kind in ("and", "or", "not"):
            raise QueryParseError("dangling operator", pos)
        raise QueryParseError("unbalanced parenthesis", pos)


def parse(text: str) -> QueryAst:
    """Parse a query string; raises QueryParseError with the failing offset."""
    tokens = _tokenize(text)
    if not tokens:
        raise QueryParseError("empty query", 0)
    return _Parser(tokens, text).parse_query()


def to_canonical(ast: QueryAst) -> str:
    """Fully parenthesized canonical string; groups print transparently."""
    if isinstance(ast, Term):
        return ast.word
    if isinstance(ast, Phrase):
        return '"' + " ".join(ast.words) + '"'
    if isinstance(ast, And):
        return f"({to_canonical(ast.left)} AND {to_canonical(ast.right)})"
    if isinstance(ast, Or):
        return f"({to_canonical(ast.left)} OR {to_canonical(ast.right)})"
    if isinstance(ast, Not):
        return f"(NOT {to_canonical(ast.operand)})"
    if isinstance(ast, Group):
        return to_canonical(ast.child)
    raise TypeError(f"not a query node: {ast!r}")


def normalize(ast: QueryAst) -> QueryAst:
    """Erase grouping nodes, leaving the operator structure."""
    if isinstance(ast, Group):
        return normalize(ast.child)
    if isinstance(ast, And):
        return And(normalize(ast.left), normalize(ast.right))
    if isinstance(ast, Or):
        return Or(normalize(ast.left), normalize(ast.right))
    if isinstance(ast, Not):
        return Not(normalize(ast.operand))
    return ast


def combine(current: QueryAst, op: str, addition: QueryAst) -> QueryAst:
    """Attach a new clause to the running query: AND, OR or ANDNOT."""
    if op == "AND":
        return And(current, addition)
    if op == "OR":
        return Or(current, addition)
    if op == "ANDNOT":
        return And(current, Not(addition))
    raise ValueError(f"unknown combinator {op!r}")


def to_external_query(ast: QueryAst) -> str:
    """Lower the AST to the external search_query syntax.

    The external syntax has no unary NOT, only the binary ANDNOT, so a NOT
    is accepted only as the right operand of an AND; anything else fails
    loudly rather than silently dropping clauses. Phrases are emitted
    pre-encoded (%22 quotes, + separators).
    """
    return _external(normalize(ast))


def _external(node: QueryAst) -> str:
    if isinstance(node, Term):
        return "all:" + quote(node.word, safe="")
    if isinstance(node, Phrase):
        return "all:%22" + "+".join(quote(w, safe="") for w in node.words) + "%22"
    if isinstance(node, And):
        left = _external(node.left)
        if isinstance(node.right, Not):
            return f"({left} ANDNOT {_external(node.right.operand)})"
        return f"({left} AND {_external(node.right)})"
    if isinstance(node, Or):
        return f"({_external(node.left)} OR {_external(node.right)})"
    if isinstance(node, Not):
        raise UnsupportedQueryError(
            "NOT is only supported as the right operand of AND: " + to_canonical(node)
        )
    raise TypeError(f"not a query node: {node!r}")


def count_terms(ast: QueryAst) -> Multiset:
    """Occurrence counts of terms and phrases in the query, polarity-blind."""
    counts: dict[str, int] = {}

    def walk(node: QueryAst) -> None:
        if isinstance(node, Term):
            counts[node.word] = counts.get(node.word, 0) + 1
        elif isinstance(node, Phrase):
            label = " ".join(node.words)
            counts[label] = counts.get(label, 0) + 1
        elif isinstance(node, (And, Or)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Not):
            walk(node.operand)
        elif isinstance(node, Group):
            walk(node.child)

    walk(ast)
    return Multiset(counts)


@dataclass(frozen=True)
class HistoryEntry:
    id: str
    timestamp: str
    query: str
    terms: Multiset

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "ts": self.timestamp,
            "query": self.query,
            "entries": {k: v for k, v in sorted(self.terms.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "HistoryEntry":
        return cls(obj["id"], obj["ts"], obj["query"], Multiset(obj["entries"]))


class QueryHistory:
    """Append-only log of executed queries, viewable as an hb-graph.

    Each executed query contributes exactly one hb-edge whose multiset
    counts term occurrences; merging session histories concatenates the
    families, re-suffixing colliding ids deterministically.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[HistoryEntry] = ()):
        self._entries: list[HistoryEntry] = []
        seen: set[str] = set()
        for entry in entries:
            if entry.id in seen:
                raise ValueError(f"duplicate history id {entry.id!r}")
            seen.add(entry.id)
            self._entries.append(entry)

    @property
    def entries(self) -> tuple[HistoryEntry, ...]:
        return tuple(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def append(self, ast: QueryAst, timestamp: str, entry_id: str | None = None) -> "QueryHistory":
        entry = HistoryEntry(
            id=entry_id or timestamp,
            timestamp=timestamp,
            query=to_canonical(ast),
            terms=count_terms(ast),
        )
        return QueryHistory([*self._entries, entry])

    def merge(self, other: "QueryHistory", namespace: str | None = None) -> "QueryHistory":
        """Concatenate another history; ids get namespaced/re-suffixed to stay unique."""
        merged = list(self._entries)
        taken = {entry.id for entry in merged}
        for entry in other._entries:
            candidate = f"{namespace}:{entry.id}" if namespace else entry.id
            if candidate in taken:
                k = 2
                while f"{candidate}-{k}" in taken:
                    k += 1
                candidate = f"{candidate}-{k}"
            taken.add(candidate)
            merged.append(
                HistoryEntry(candidate, entry.timestamp, entry.query, entry.terms)
            )
        return QueryHistory(merged)

    def hbgraph(self) -> HbGraph:
        vertices: set[str] = set()
        for entry in self._entries:
            vertices.update(entry.terms.support)
        return HbGraph(vertices, [(e.id, e.terms) for e in self._entries])

    def to_json(self) -> list[dict]:
        return [entry.to_json() for entry in self._entries]

    @classmethod
    def from_json(cls, rows: Iterable[dict]) -> "QueryHistory":
        return cls(HistoryEntry.from_json(row) for row in rows)

    def to_jsonl(self) -> str:
        import json

        return "\n".join(json.dumps(e.to_json(), ensure_ascii=False) for e in self._entries)

    @classmethod
    def from_jsonl(cls, text: str) -> "QueryHistory":
        import json

        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        return cls.from_json(rows)
