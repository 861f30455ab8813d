"""Parsing, rendering, and IR transforms for conjunctive SPARQL programs.

The grammar covers the query shapes used by compositional-generalization
benchmarks over knowledge graphs: a ``SELECT count(*)`` or ``SELECT DISTINCT
?x0 ...`` head followed by a brace-delimited body of dot-separated conjuncts,
each of which is either a subject/relation/object triple or a binary
``FILTER ( a != b )`` constraint.  It is deliberately not a general SPARQL
parser.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Union

from .errors import InversionError, ParseError, TransformError

COUNT = "count"
DISTINCT = "distinct"

FILTER_OPS = ("!=",)

VAR_TOKEN = "var"

_ENTITY_RE = re.compile(r"M\d+|m_\w+")
_RESERVED = frozenset({"SELECT", "WHERE", "FILTER", "DISTINCT", "count(*)",
                       "{", "}", "(", ")", ".", ",", "!="})


def is_variable(token: str) -> bool:
    return token.startswith("?")


def is_entity(token: str) -> bool:
    return _ENTITY_RE.fullmatch(token) is not None


@dataclass(frozen=True, slots=True)
class SelectHead:
    kind: str  # COUNT or DISTINCT
    variables: tuple[str, ...] = ()

    def render(self) -> str:
        if self.kind == COUNT:
            return "SELECT count(*)"
        return "SELECT DISTINCT " + " ".join(self.variables)


@dataclass(frozen=True, slots=True)
class Triple:
    subject: str
    relation: str
    object: str

    def render(self) -> str:
        return f"{self.subject} {self.relation} {self.object}"


@dataclass(frozen=True, slots=True)
class Filter:
    left: str
    op: str
    right: str

    def render(self) -> str:
        return f"FILTER ( {self.left} {self.op} {self.right} )"


Conjunct = Union[Triple, Filter]


@dataclass(frozen=True, slots=True)
class SparqlQuery:
    head: SelectHead
    conjuncts: tuple[Conjunct, ...]

    def triples(self) -> tuple[Triple, ...]:
        return tuple(c for c in self.conjuncts if isinstance(c, Triple))


@dataclass(frozen=True, slots=True)
class TripleGroup:
    """One or more triples sharing a subject and relation."""

    subject: str
    relation: str
    objects: tuple[str, ...]


Group = Union[TripleGroup, Filter]


@dataclass(frozen=True, slots=True)
class SparqlRir:
    head: SelectHead
    groups: tuple[Group, ...]
    bracketed: bool


@dataclass(frozen=True, slots=True)
class RirOptions:
    """Toggles for the reversible transform; all-on is the default IR."""

    merge_conjuncts: bool = True
    shorten_relations: bool = True
    brackets: bool = True


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Cursor:
    """Token cursor over whitespace-separated input.

    The fast path tokenizes with ``str.split``; byte offsets are only
    recomputed (with a second scan) when an error has to be reported.
    """

    __slots__ = ("text", "tokens", "pos")

    def __init__(self, text: str):
        self.text = text
        self.tokens = text.split()
        self.pos = 0

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def next(self, *expected: str) -> str:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input", expected)
        self.pos += 1
        return tok

    def expect(self, *expected: str) -> str:
        tok = self.next(*expected)
        if tok not in expected:
            self.pos -= 1
            self.fail(f"unexpected token {tok!r}", expected)
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def offset(self) -> int:
        # Byte offset of the current token, recovered by re-scanning.
        spans = [m.start() for m in re.finditer(r"\S+", self.text)]
        if self.pos < len(spans):
            return len(self.text[:spans[self.pos]].encode("utf-8"))
        return len(self.text.encode("utf-8"))

    def fail(self, message: str, expected: Iterable[str] = ()) -> None:
        raise ParseError(message, offset=self.offset(),
                         expected=tuple(expected))


def _term(cur: _Cursor, what: str) -> str:
    tok = cur.next(f"<{what}>")
    if tok in _RESERVED:
        cur.pos -= 1
        cur.fail(f"reserved token {tok!r} where a {what} was expected",
                 (f"<{what}>",))
    return tok


def _parse_head(cur: _Cursor) -> SelectHead:
    cur.expect("SELECT")
    tok = cur.next("count(*)", "DISTINCT")
    if tok == "count(*)":
        return SelectHead(COUNT)
    if tok != "DISTINCT":
        cur.pos -= 1
        cur.fail(f"unexpected token {tok!r}", ("count(*)", "DISTINCT"))
    variables = []
    while (tok := cur.peek()) is not None and tok != "WHERE":
        if not is_variable(tok):
            cur.fail(f"non-variable token {tok!r} in select head",
                     ("<variable>", "WHERE"))
        variables.append(cur.next())
    if not variables:
        cur.fail("DISTINCT head needs at least one variable", ("<variable>",))
    return SelectHead(DISTINCT, tuple(variables))


def _parse_filter(cur: _Cursor) -> Filter:
    cur.expect("(")
    left = _term(cur, "term")
    op = cur.expect(*FILTER_OPS)
    right = _term(cur, "term")
    cur.expect(")")
    return Filter(left, op, right)


def _check_head_vars(head: SelectHead, conjuncts: Iterable[Conjunct],
                     cur: _Cursor) -> None:
    if head.kind != DISTINCT:
        return
    seen: set[str] = set()
    for c in conjuncts:
        if isinstance(c, Triple):
            seen.add(c.subject)
            seen.add(c.object)
        else:
            seen.add(c.left)
            seen.add(c.right)
    missing = [v for v in head.variables if v not in seen]
    if missing:
        cur.fail(f"head variable(s) {', '.join(missing)} never used in body")


def parse_sparql(text: str) -> SparqlQuery:
    """Parse one query; raises :class:`ParseError` on malformed input."""
    cur = _Cursor(text)
    head = _parse_head(cur)
    cur.expect("WHERE")
    cur.expect("{")
    conjuncts: list[Conjunct] = []
    while True:
        tok = cur.peek()
        if tok is None:
            cur.fail("unterminated body", ("}",))
        if tok == "}":
            cur.next()
            break
        if conjuncts:
            cur.expect(".")
            tok = cur.peek()
        if tok == "FILTER":
            cur.next()
            conjuncts.append(_parse_filter(cur))
        else:
            subject = _term(cur, "subject")
            relation = _term(cur, "relation")
            obj = _term(cur, "object")
            conjuncts.append(Triple(subject, relation, obj))
    if not cur.at_end():
        cur.fail("trailing tokens after closing brace")
    _check_head_vars(head, conjuncts, cur)
    return SparqlQuery(head, tuple(conjuncts))


def render_sparql(q: SparqlQuery) -> str:
    """Canonical surface form: single spaces, ``.`` between conjuncts."""
    body = " . ".join(c.render() for c in q.conjuncts)
    if body:
        return f"{q.head.render()} WHERE {{ {body} }}"
    return f"{q.head.render()} WHERE {{ }}"


# ---------------------------------------------------------------------------
# Relation dictionary
# ---------------------------------------------------------------------------

_NS_MARK = "ns:"


def _post_ns(relation: str) -> str:
    # Split at the last occurrence of the literal "ns:".
    return relation.rsplit(_NS_MARK, 1)[-1]


def _suffix_candidates(relation: str) -> list[str]:
    """Shortest-first truncation candidates for one relation name."""
    if _NS_MARK not in relation:
        return [relation]
    segments = _post_ns(relation).split(".")
    return [".".join(segments[-n:]) for n in range(1, len(segments) + 1)]


@dataclass(frozen=True, slots=True)
class RelationDictionary:
    """Bijective map between full and truncated relation names."""

    forward: Mapping[str, str]
    backward: Mapping[str, str]

    def __post_init__(self) -> None:
        if len(self.forward) != len(self.backward):
            raise TransformError("relation dictionary is not a bijection")
        for full, short in self.forward.items():
            if self.backward.get(short) != full:
                raise TransformError(
                    f"relation dictionary is not a bijection at {short!r}")

    def shorten(self, relation: str) -> str:
        try:
            return self.forward[relation]
        except KeyError:
            raise TransformError(f"relation {relation!r} not in dictionary")

    def restore(self, relation: str) -> str:
        full = self.backward.get(relation)
        if full is not None:
            return full
        # A full name passes through untouched (IRs built with truncation
        # disabled still invert against the same dictionary).
        if relation in self.forward:
            return relation
        raise InversionError(f"unknown truncated relation {relation!r}")

    def save(self, path: str | Path) -> None:
        payload = dict(sorted(self.forward.items()))
        Path(path).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n",
            encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "RelationDictionary":
        forward = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(forward, {v: k for k, v in forward.items()})


def build_relation_dict(corpus: Iterable[SparqlQuery]) -> RelationDictionary:
    """Assign each relation its shortest corpus-unique dot-suffix.

    Every relation starts at the last dot-separated segment after the final
    ``ns:`` marker and is extended leftward one segment at a time while it
    collides with another relation's current assignment.  Relations without
    the marker map to themselves.
    """
    relations: set[str] = set()
    n_queries = 0
    for q in corpus:
        n_queries += 1
        for t in q.triples():
            relations.add(t.relation)
    if n_queries == 0:
        raise TransformError("cannot build a relation dictionary from an "
                             "empty corpus")

    candidates = {rel: _suffix_candidates(rel) for rel in sorted(relations)}
    index = {rel: 0 for rel in candidates}
    while True:
        by_name: dict[str, list[str]] = {}
        for rel in candidates:
            by_name.setdefault(candidates[rel][index[rel]], []).append(rel)
        colliding = [group for group in by_name.values() if len(group) > 1]
        if not colliding:
            break
        for group in colliding:
            extendable = [r for r in group
                          if index[r] + 1 < len(candidates[r])]
            if not extendable:
                raise TransformError(
                    "relations truncate to the same name and cannot be "
                    "disambiguated: " + " vs ".join(sorted(group)))
            for rel in extendable:
                index[rel] += 1

    forward = {rel: candidates[rel][index[rel]] for rel in candidates}
    return RelationDictionary(forward, {v: k for k, v in forward.items()})


# ---------------------------------------------------------------------------
# Reversible IR
# ---------------------------------------------------------------------------


def sparql_to_rir(q: SparqlQuery,
                  rdict: RelationDictionary | None = None,
                  options: RirOptions = RirOptions()) -> SparqlRir:
    """Group shared-subject/relation triples, truncate relations, bracket."""
    if options.shorten_relations and rdict is None:
        raise TransformError("relation truncation requires a dictionary")

    def rel(name: str) -> str:
        return rdict.shorten(name) if options.shorten_relations else name

    groups: list[Group] = []
    by_key: dict[tuple[str, str], int] = {}
    for c in q.conjuncts:
        if isinstance(c, Filter):
            groups.append(c)
            continue
        relation = rel(c.relation)
        if options.merge_conjuncts:
            key = (c.subject, relation)
            slot = by_key.get(key)
            if slot is not None:
                g = groups[slot]
                groups[slot] = TripleGroup(g.subject, g.relation,
                                           g.objects + (c.object,))
                continue
            by_key[key] = len(groups)
        groups.append(TripleGroup(c.subject, relation, (c.object,)))
    return SparqlRir(q.head, tuple(groups), options.brackets)


def _render_group(g: Group, bracketed: bool) -> str:
    if isinstance(g, Filter):
        base = g.render()
        return f"( {base} )" if bracketed else base
    if len(g.objects) == 1:
        core = f"{g.subject} {g.relation} {g.objects[0]}"
    elif bracketed:
        objs = " , ".join(g.objects)
        core = f"{g.subject} {g.relation} ( {objs} )"
    else:
        objs = " , ".join(g.objects)
        core = f"{g.subject} {g.relation} {objs}"
    return f"( {core} )" if bracketed else core


def render_rir(z: SparqlRir) -> str:
    """Surface form: bracketed groups are space-joined, plain ones dotted."""
    sep = " " if z.bracketed else " . "
    body = sep.join(_render_group(g, z.bracketed) for g in z.groups)
    if body:
        return f"{z.head.render()} WHERE {{ {body} }}"
    return f"{z.head.render()} WHERE {{ }}"


def _parse_bracketed_group(cur: _Cursor) -> Group:
    cur.expect("(")
    if cur.peek() == "FILTER":
        cur.next()
        g: Group = _parse_filter(cur)
    else:
        subject = _term(cur, "subject")
        relation = _term(cur, "relation")
        if cur.peek() == "(":
            cur.next()
            objects = [_term(cur, "object")]
            while cur.peek() == ",":
                cur.next()
                objects.append(_term(cur, "object"))
            cur.expect(")")
        else:
            objects = [_term(cur, "object")]
        g = TripleGroup(subject, relation, tuple(objects))
    cur.expect(")")
    return g


def _parse_plain_group(cur: _Cursor) -> Group:
    if cur.peek() == "FILTER":
        cur.next()
        return _parse_filter(cur)
    subject = _term(cur, "subject")
    relation = _term(cur, "relation")
    objects = [_term(cur, "object")]
    while cur.peek() == ",":
        cur.next()
        objects.append(_term(cur, "object"))
    return TripleGroup(subject, relation, tuple(objects))


def parse_rir(text: str, bracketed: bool | None = None) -> SparqlRir:
    """Parse an IR surface string; bracketing is auto-detected by default."""
    cur = _Cursor(text)
    head = _parse_head(cur)
    cur.expect("WHERE")
    cur.expect("{")
    if bracketed is None:
        bracketed = cur.peek() == "("
    groups: list[Group] = []
    while True:
        tok = cur.peek()
        if tok is None:
            cur.fail("unterminated body", ("}",))
        if tok == "}":
            cur.next()
            break
        if bracketed:
            groups.append(_parse_bracketed_group(cur))
        else:
            if groups:
                cur.expect(".")
            groups.append(_parse_plain_group(cur))
    if not cur.at_end():
        cur.fail("trailing tokens after closing brace")
    return SparqlRir(head, tuple(groups), bracketed)


def sparql_from_rir(z: SparqlRir,
                    rdict: RelationDictionary | None = None) -> SparqlQuery:
    """Expand groups back into triples and restore full relation names."""
    conjuncts: list[Conjunct] = []
    for g in z.groups:
        if isinstance(g, Filter):
            conjuncts.append(g)
            continue
        relation = rdict.restore(g.relation) if rdict else g.relation
        for obj in g.objects:
            conjuncts.append(Triple(g.subject, relation, obj))
    return SparqlQuery(z.head, tuple(conjuncts))


# ---------------------------------------------------------------------------
# Lossy IR, VARified form, normalization, structure signatures
# ---------------------------------------------------------------------------


def _anonymize_term(t: str) -> str:
    if is_variable(t) or is_entity(t):
        return VAR_TOKEN
    return t


def _map_head(head: SelectHead, fn) -> SelectHead:
    if head.kind != DISTINCT:
        return head
    return SelectHead(DISTINCT, tuple(fn(v) for v in head.variables))


def _map_terms(program: SparqlQuery | SparqlRir, fn):
    head = _map_head(program.head, fn)
    if isinstance(program, SparqlQuery):
        conjuncts: list[Conjunct] = []
        for c in program.conjuncts:
            if isinstance(c, Triple):
                conjuncts.append(Triple(fn(c.subject), c.relation,
                                        fn(c.object)))
            else:
                conjuncts.append(Filter(fn(c.left), c.op, fn(c.right)))
        return SparqlQuery(head, tuple(conjuncts))
    groups: list[Group] = []
    for g in program.groups:
        if isinstance(g, TripleGroup):
            groups.append(TripleGroup(fn(g.subject), g.relation,
                                      tuple(fn(o) for o in g.objects)))
        else:
            groups.append(Filter(fn(g.left), g.op, fn(g.right)))
    return SparqlRir(head, tuple(groups), program.bracketed)


def sparql_to_lir(program: SparqlQuery | SparqlRir) -> str:
    """Replace every variable and entity (head included) with ``var``."""
    anonymized = _map_terms(program, _anonymize_term)
    if isinstance(anonymized, SparqlQuery):
        return render_sparql(anonymized)
    return render_rir(anonymized)


def varify(q: SparqlQuery) -> str:
    """Original surface form with ``var`` prepended to variables/entities."""

    def mark(t: str) -> str:
        if is_variable(t) or is_entity(t):
            return f"{VAR_TOKEN} {t}"
        return t

    return render_sparql(_map_terms(q, mark))


def strip_var_markers(text: str) -> str:
    """Inverse of :func:`varify` at the token level."""
    return " ".join(tok for tok in text.split() if tok != VAR_TOKEN)


def normalize_sparql(q: SparqlQuery) -> SparqlQuery:
    """Dedupe conjuncts, then sort them by their rendered string.

    UTF-8 byte order and code-point order agree, so a plain string sort
    implements the byte-order contract.
    """
    rendered = {}
    for c in q.conjuncts:
        rendered.setdefault(c.render(), c)
    ordered = tuple(rendered[k] for k in sorted(rendered))
    return SparqlQuery(q.head, ordered)


def _identity_rir(q: SparqlQuery) -> SparqlRir:
    groups: list[Group] = []
    for c in q.conjuncts:
        if isinstance(c, Triple):
            groups.append(TripleGroup(c.subject, c.relation, (c.object,)))
        else:
            groups.append(c)
    return SparqlRir(q.head, tuple(groups), False)


def structure_signature(program: SparqlQuery | SparqlRir) -> str:
    """Canonical structural form: entities masked, variables renumbered.

    Variables keep their co-reference pattern (first occurrence order before
    sorting), entities collapse to ``ENT``, then groups are sorted so the
    signature is insensitive to noise in group order.
    """
    z = program if isinstance(program, SparqlRir) else _identity_rir(program)
    names: dict[str, str] = {}

    def rename(t: str) -> str:
        if is_entity(t):
            return "ENT"
        if is_variable(t):
            if t not in names:
                names[t] = f"V{len(names)}"
            return names[t]
        return t

    renamed = _map_terms(z, rename)
    body = sorted(_render_group(g, z.bracketed) for g in renamed.groups)
    sep = " " if z.bracketed else " . "
    rendered_body = sep.join(body)
    if rendered_body:
        return f"{renamed.head.render()} WHERE {{ {rendered_body} }}"
    return f"{renamed.head.render()} WHERE {{ }}"
