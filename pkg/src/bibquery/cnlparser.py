"""Deterministic dependency parsing for the controlled query language.

Queries are noun phrases with optional prepositional attachments,
possessives, relative clauses, and coordination.  A citation keyword
splits a query into two parts that are parsed independently; the parser
emits Stanford-style relation codes over token indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import UnparsableQuery, UnsupportedQuery
from .lexicon import Token

PREPOSITIONS = frozenset({"about", "of", "by", "in", "at", "on", "with"})
RELATIVE_PRONOUNS = frozenset({"that", "which", "who", "whose"})
AUXILIARIES = frozenset({"are", "is", "was", "were", "had", "been"})
VERBS = frozenset({"written", "wrote", "published", "presented", "affiliated"})
CONJUNCTIONS = frozenset({"and", "or"})
DETERMINERS = frozenset({"the", "a", "an"})
CITATION_KEYWORDS = frozenset({"cite", "cites", "cited", "citing"})
POSSESSIVE_MARKS = frozenset({"'s", "’s"})
COMMA = ","

RELATION_NAMES = {
    "root": "root",
    "case": "case marker",
    "nmod": "nmod_preposition",
    "nmod:poss": "possessive modifier",
    "cc": "coordination",
    "conj": "conj_collapsed",
    "ref": "referent",
    "nsubjpass": "nominal passive subject",
    "auxpass": "passive auxiliary",
    "acl:relcl": "relative clause modifier",
    "dobj": "direct object",
    "nsubj": "nominal subject",
}


@dataclass(frozen=True)
class DependencyRelation:
    """A (governor, dependent, code) triple over token indices; the root
    relation has no governor."""

    subject: int | None
    object: int
    code: str

    @property
    def name(self) -> str:
        return RELATION_NAMES[self.code]


@dataclass
class QueryParts:
    """Token partition around the citation keyword.

    For non-citation queries `cited` holds the whole query and `citing`
    and `pivot` are absent.
    """

    cited: list[Token]
    citing: list[Token] | None = None
    pivot: Token | None = None

    @property
    def is_citation(self) -> bool:
        return self.pivot is not None


@dataclass
class ParseResult:
    tokens: list[Token]
    relations: list[DependencyRelation]
    root_index: int
    _by_index: dict[int, Token] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._by_index = {t.index: t for t in self.tokens}

    def token_at(self, index: int) -> Token:
        return self._by_index[index]

    def subject_text(self, rel: DependencyRelation) -> str:
        return "" if rel.subject is None else self._by_index[rel.subject].text

    def table(self) -> list[tuple[int, str, str, str, str]]:
        """Rows of (order, subject text, object text, code, name)."""
        return [
            (i, self.subject_text(rel), self._by_index[rel.object].text, rel.code, rel.name)
            for i, rel in enumerate(self.relations, start=1)
        ]


def split_citation(tokens: Sequence[Token]) -> QueryParts:
    """Split at the first citation keyword found outside any mention.

    "cited" followed by "by" reads as passive, so the left side is the
    cited part; every other keyword use reads as active and the left side
    is the citing part.  A second keyword is out of scope.
    """
    pivots = [
        (i, t) for i, t in enumerate(tokens)
        if t.mention is None and t.text.casefold() in CITATION_KEYWORDS
    ]
    if not pivots:
        return QueryParts(cited=list(tokens))
    if len(pivots) > 1:
        second = pivots[1][1]
        raise UnsupportedQuery(
            f"query contains more than one citation keyword ({second.text!r})",
            stage="split", token=second.text,
        )
    i, pivot = pivots[0]
    left, right = list(tokens[:i]), list(tokens[i + 1:])
    if not left or not right:
        raise UnparsableQuery(
            f"citation keyword {pivot.text!r} at the query boundary",
            stage="split", token=pivot.text,
        )
    passive = (
        pivot.text.casefold() == "cited"
        and right[0].mention is None
        and right[0].text.casefold() == "by"
    )
    if passive:
        return QueryParts(cited=left, citing=right, pivot=pivot)
    return QueryParts(cited=right, citing=left, pivot=pivot)


def parse(tokens: Sequence[Token]) -> ParseResult:
    """Parse one query part into dependency relations.

    The part grammar tolerates fragments produced by citation splitting:
    a leading agentive "by" and a trailing relative-pronoun remnant
    ("that were") are consumed without a verb.
    """
    return _Parser(tokens).run()


class _Parser:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0
        self.relations: list[DependencyRelation] = []
        self.root_index: int | None = None

    # -- primitives ---------------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    @staticmethod
    def low(tok: Token | None) -> str:
        return "" if tok is None else tok.text.casefold()

    @staticmethod
    def is_entity(tok: Token | None) -> bool:
        return tok is not None and tok.mention is not None

    def is_class_head(self, tok: Token) -> bool:
        return tok.mention is not None and tok.mention.entry.is_class

    def is_np_start(self, offset: int) -> bool:
        tok = self.peek(offset)
        return self.is_entity(tok) or self.low(tok) in DETERMINERS

    def emit(self, subject: Token | None, obj: Token, code: str) -> None:
        self.relations.append(DependencyRelation(
            None if subject is None else subject.index, obj.index, code,
        ))

    def fail(self, tok: Token | None, why: str) -> None:
        if tok is None:
            raise UnparsableQuery(f"{why} at end of query part", stage="parse")
        raise UnparsableQuery(
            f"{why}: unexpected token {tok.text!r}", stage="parse", token=tok.text,
        )

    # -- grammar ------------------------------------------------------------

    def run(self) -> ParseResult:
        if not self.tokens:
            raise UnparsableQuery("query part is empty", stage="parse")
        leading_by = None
        first = self.peek()
        if first is not None and first.mention is None and self.low(first) == "by":
            leading_by = self.advance()
        head = self.parse_np(root=True, leading_by=leading_by)
        if self.pos < len(self.tokens):
            self.fail(self.peek(), "trailing material after the noun phrase")
        assert self.root_index is not None
        return ParseResult(self.tokens, self.relations, self.root_index)

    def parse_np(self, *, root: bool = False, allow_posts: bool = True,
                 leading_by: Token | None = None) -> Token:
        while self.low(self.peek()) in DETERMINERS and self.peek() is not None \
                and self.peek().mention is None:
            self.advance()
        possessors: list[Token] = []
        while self.is_entity(self.peek()) and self.low(self.peek(1)) in POSSESSIVE_MARKS:
            possessors.append(self.advance())
            self.advance()  # the marker
        head = self.peek()
        if not self.is_entity(head):
            self.fail(head, "expected a recognized entity")
        assert head is not None
        self.advance()
        if root:
            self.root_index = head.index
            self.emit(None, head, "root")
        if leading_by is not None:
            self.emit(head, leading_by, "case")
        for possessor in possessors:
            self.emit(head, possessor, "nmod:poss")
        if allow_posts:
            self.post_loop(head)
        return head

    def post_loop(self, head: Token) -> None:
        """Attachments after a head: prepositional phrases bind to the
        nearest entity, relative clauses only to a class-word head."""
        while True:
            tok = self.peek()
            if tok is None:
                return
            t = self.low(tok)
            if tok.mention is None and t in PREPOSITIONS and self.is_np_start(1):
                prep = self.advance()
                self.parse_object_list(head, "nmod", prep)
            elif t == COMMA and self.low(self.peek(1)) in RELATIVE_PRONOUNS:
                if not self.is_class_head(head):
                    return
                self.advance()  # comma
                self.parse_relclause(head)
            elif tok.mention is None and t in RELATIVE_PRONOUNS:
                if not self.is_class_head(head):
                    return
                self.parse_relclause(head)
            else:
                return

    def parse_object_list(self, governor: Token, code: str, prep: Token | None) -> Token:
        """Entity objects of a preposition or verb, with coordination.

        Conjuncts each receive the governor relation; cc/conj chain to the
        first conjunct.
        """
        obj = self.parse_np(allow_posts=False)
        if prep is not None:
            self.emit(obj, prep, "case")
        self.emit(governor, obj, code)
        self.post_loop(obj)
        first = obj
        while True:
            has_comma = self.low(self.peek()) == COMMA
            k = 1 if has_comma else 0
            cw = self.peek(k)
            if cw is not None and cw.mention is None and self.low(cw) in CONJUNCTIONS \
                    and self.is_np_start(k + 1):
                if has_comma:
                    self.advance()
                conj_tok = self.advance()
                self.emit(first, conj_tok, "cc")
                extra = self.parse_np(allow_posts=False)
                self.emit(governor, extra, code)
                self.emit(first, extra, "conj")
                self.post_loop(extra)
            elif has_comma and self.is_entity(cw):
                self.advance()
                extra = self.parse_np(allow_posts=False)
                self.emit(governor, extra, code)
                self.emit(first, extra, "conj")
                self.post_loop(extra)
            else:
                return first

    def parse_relclause(self, head: Token) -> None:
        relpron = self.advance()
        possessed: Token | None = None
        if self.low(relpron) == "whose":
            possessed = self.parse_np(allow_posts=False)
        subj = possessed if possessed is not None else head
        ref_emitted = False
        if possessed is not None:
            self.emit(head, relpron, "ref")
            self.emit(possessed, head, "nmod:poss")
            ref_emitted = True
        anchor: Token | None = None
        pending_conj: Token | None = None
        first_segment = True
        while True:
            auxes: list[Token] = []
            while self.peek() is not None and self.peek().mention is None \
                    and self.low(self.peek()) in AUXILIARIES:
                auxes.append(self.advance())
            nxt = self.peek()
            if nxt is None:
                # Remnant left behind by citation splitting: "that were".
                if not ref_emitted:
                    self.emit(subj, relpron, "ref")
                return
            t = self.low(nxt)
            if nxt.mention is None and t in VERBS:
                verb = self.advance()
                passive = not self.is_np_start(0)
                if first_segment:
                    self.emit(verb, subj, "nsubjpass" if passive else "nsubj")
                    if not ref_emitted:
                        self.emit(subj, relpron, "ref")
                        ref_emitted = True
                    if passive:
                        for aux in auxes:
                            self.emit(verb, aux, "auxpass")
                    self.emit(subj, verb, "acl:relcl")
                    anchor = verb
                else:
                    if pending_conj is not None:
                        self.emit(anchor, pending_conj, "cc")
                        pending_conj = None
                    self.emit(anchor, verb, "conj")
                    if passive:
                        for aux in auxes:
                            self.emit(verb, aux, "auxpass")
                    self.emit(subj, verb, "acl:relcl")
                if passive:
                    la = self.peek()
                    if la is not None and la.mention is None \
                            and self.low(la) in PREPOSITIONS and self.is_np_start(1):
                        prep = self.advance()
                        self.parse_object_list(verb, "nmod", prep)
                else:
                    self.parse_object_list(verb, "dobj", None)
            elif nxt.mention is None and t in PREPOSITIONS and self.is_np_start(1):
                # Copular predicate: "that were about simulation".
                if not ref_emitted:
                    self.emit(subj, relpron, "ref")
                    ref_emitted = True
                prep = self.advance()
                first_obj = self.parse_object_list(subj, "nmod", prep)
                if anchor is None:
                    anchor = first_obj
            else:
                self.fail(nxt, "expected a verb or preposition in the relative clause")
            first_segment = False
            has_comma = self.low(self.peek()) == COMMA
            k = 1 if has_comma else 0
            cw = self.peek(k)
            if cw is not None and cw.mention is None and self.low(cw) in CONJUNCTIONS:
                after = self.peek(k + 1)
                word = self.low(after)
                if after is not None and after.mention is None \
                        and (word in AUXILIARIES or word in VERBS):
                    if has_comma:
                        self.advance()
                    pending_conj = self.advance()
                    continue
            return


__all__ = [
    "AUXILIARIES",
    "CITATION_KEYWORDS",
    "CONJUNCTIONS",
    "DependencyRelation",
    "ParseResult",
    "PREPOSITIONS",
    "QueryParts",
    "RELATION_NAMES",
    "RELATIVE_PRONOUNS",
    "VERBS",
    "parse",
    "split_citation",
]
