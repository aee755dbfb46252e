"""Finite monoid presentations and a catalog of built-in examples.

A presentation is an alphabet together with defining relations.  Relations
come in one of two forms:

* an explicit finite list of pairs of words, optionally declared as an
  oriented, terminating and confluent rewriting system;
* a rule oracle, a pure total function that inspects a word and reports
  applicable rewrite instances.  Oracles describe recursive (possibly
  infinite) relation families; every oracle-backed presentation must
  declare termination and confluence of its oriented rules.

Confluence is a declaration, never inferred here; no completion is
attempted.  A presentation may additionally declare that its right Cayley
graph is a rooted tree (true for free monoids, and for the oracle-backed
family built from a membership oracle), which downstream code uses to
certify infinite distances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .words import Word, check_word, format_word, parse_word

__all__ = [
    "PresentationError",
    "Relation",
    "RuleInstance",
    "RuleOracle",
    "Presentation",
    "parse_presentation",
    "serialize_presentation",
    "builtin",
    "BUILTIN_NAMES",
]


class PresentationError(ValueError):
    """Malformed presentation text or an invalid presentation object."""


class RuleInstance(NamedTuple):
    """One applicable rewrite: replace ``old`` at index ``start`` by ``new``."""

    start: int
    old: Word
    new: Word


@dataclass(frozen=True)
class Relation:
    """A defining relation lhs = rhs, ordered for rewriting (lhs -> rhs)."""

    lhs: Word
    rhs: Word

    @property
    def total_length(self) -> int:
        return len(self.lhs) + len(self.rhs)

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} = {format_word(self.rhs)}"


class RuleOracle:
    """Rule supplier for presentations whose relation family is not listed.

    Subclasses implement ``leftmost`` (the reducing rule instance with the
    smallest start index, or ``None`` on irreducible words) and
    ``applicable`` (every instance in both orientations, used by the
    undirected equality search).  Both must be pure and deterministic.
    """

    def leftmost(self, word: Word) -> RuleInstance | None:
        raise NotImplementedError

    def applicable(self, word: Word) -> list[RuleInstance]:
        raise NotImplementedError


@dataclass(frozen=True)
class Presentation:
    """A monoid presentation over named generators.

    ``confluent`` declares that the oriented rules (lhs -> rhs, or the
    oracle's reducing direction) form a terminating confluent system, so
    normal forms exist and decide the word problem.  ``cayley_tree``
    declares that the right Cayley graph is a rooted tree; it is set
    automatically for free presentations.
    """

    generators: tuple[str, ...]
    relations: tuple[Relation, ...] = ()
    oracle: RuleOracle | None = None
    confluent: bool = False
    cayley_tree: bool = False
    name: str = ""
    alphabet: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.generators:
            raise PresentationError("a presentation needs at least one generator")
        seen = set()
        for g in self.generators:
            if not g or any(ch.isspace() for ch in g):
                raise PresentationError(f"invalid generator name {g!r}")
            if g == "1":
                raise PresentationError("'1' is reserved for the empty word")
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        object.__setattr__(self, "alphabet", frozenset(self.generators))
        for rel in self.relations:
            check_word(rel.lhs, self.alphabet)
            check_word(rel.rhs, self.alphabet)
        if self.oracle is not None:
            if self.relations:
                raise PresentationError("a presentation lists relations or carries an oracle, not both")
            if not self.confluent:
                raise PresentationError("oracle-backed presentations must declare confluence")
        if not self.relations and self.oracle is None and not self.confluent:
            # A free presentation is vacuously confluent and its Cayley
            # graph is the |A|-ary rooted tree.
            object.__setattr__(self, "confluent", True)
        if not self.relations and self.oracle is None:
            object.__setattr__(self, "cayley_tree", True)

    @property
    def is_free(self) -> bool:
        return not self.relations and self.oracle is None

    def max_relation_length(self) -> int:
        """Largest |lhs| + |rhs| over the listed relations (0 if none)."""
        return max((r.total_length for r in self.relations), default=0)


_GENS_RE = re.compile(r"^gens:\s*(.*)$")
_REL_RE = re.compile(r"^rel:\s*(.*?)\s*=\s*(.*)$")


def parse_presentation(text: str) -> Presentation:
    """Parse the line-based presentation format.

    The first significant line is ``gens: <name> <name> ...``; every
    following significant line is ``rel: <word> = <word>`` with words as
    space-separated generator names and ``1`` for the empty word.  Blank
    lines and ``#`` comments are ignored.
    """
    generators: tuple[str, ...] | None = None
    relations: list[Relation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if generators is None:
            m = _GENS_RE.match(line)
            if not m:
                raise PresentationError(f"line {lineno}: expected 'gens: ...' before any relation")
            generators = tuple(m.group(1).split())
            if not generators:
                raise PresentationError(f"line {lineno}: empty generator list")
            continue
        m = _REL_RE.match(line)
        if not m:
            raise PresentationError(f"line {lineno}: expected 'rel: <word> = <word>'")
        try:
            lhs = parse_word(m.group(1))
            rhs = parse_word(m.group(2))
        except ValueError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from exc
        relations.append(Relation(lhs, rhs))
    if generators is None:
        raise PresentationError("no 'gens:' line found")
    try:
        return Presentation(generators, tuple(relations))
    except ValueError as exc:
        raise PresentationError(str(exc)) from exc


def serialize_presentation(p: Presentation) -> str:
    """Render a presentation back to the line format (explicit relations only)."""
    if p.oracle is not None:
        raise PresentationError("oracle-backed presentations have no finite relation list to serialize")
    lines = ["gens: " + " ".join(p.generators)]
    lines.extend(f"rel: {format_word(r.lhs)} = {format_word(r.rhs)}" for r in p.relations)
    return "\n".join(lines) + "\n"


_LETTERS = "abcdefghijklmnopqrstuvwxyz"

_FREE_RE = re.compile(r"^free\((\d+)\)$")
_MX_RE = re.compile(r"^mx\((.+)\)$")

BUILTIN_NAMES = ("free(k)", "bicyclic", "free_commutative_2", "section4_S", "mx(oracle)", "f2_group")


def _section4_monoid() -> Presentation:
    """An 11-generator, 22-relation monoid with mutually inverse letter pairs.

    Four letters a1..a4 have two-sided inverses a1'..a4'; b doubles each
    a_j when pushed past it, c absorbs powers of b, and d commutes with
    the a_j while the product c b d is central among them.  The system is
    not oriented as a confluent rewriting system, so only best-effort
    searches apply.
    """
    a = [f"a{j}" for j in range(1, 5)]
    ai = [f"a{j}'" for j in range(1, 5)]
    gens = tuple(a + ai + ["b", "c", "d"])
    rels: list[Relation] = []
    for j in range(4):
        rels.append(Relation((a[j], ai[j]), ()))
        rels.append(Relation((ai[j], a[j]), ()))
    rels.append(Relation((a[0], a[1]), (a[2], a[3])))
    for j in range(4):
        rels.append(Relation((a[j], "b"), ("b", a[j], a[j])))
    rels.append(Relation(("c", "b", "b"), ("c", "b")))
    for j in range(4):
        rels.append(Relation((a[j], "d"), ("d", a[j])))
    for j in range(4):
        rels.append(Relation(("c", "b", "d", a[j]), (a[j], "c", "b", "d")))
    return Presentation(gens, tuple(rels), name="section4_S")


def builtin(name: str) -> Presentation:
    """Look up a built-in presentation by name.

    Recognized names: ``free(k)``, ``bicyclic``, ``free_commutative_2``,
    ``section4_S``, ``mx(<oracle spec>)``, ``f2_group``.
    """
    m = _FREE_RE.match(name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise PresentationError("free(k) needs k >= 1")
        if k > len(_LETTERS):
            raise PresentationError(f"free(k) supports at most {len(_LETTERS)} generators")
        return Presentation(tuple(_LETTERS[:k]), name=name)
    m = _MX_RE.match(name)
    if m:
        from .families import mx_presentation, parse_oracle

        return mx_presentation(parse_oracle(m.group(1)))
    if name == "bicyclic":
        return Presentation(
            ("a", "b"), (Relation(("a", "b"), ()),), confluent=True, name=name
        )
    if name == "free_commutative_2":
        # Oriented a b -> b a: each application removes one inversion, so
        # the system terminates; the sides do not overlap, so it is
        # confluent with normal forms b^m a^n.
        return Presentation(
            ("a", "b"), (Relation(("a", "b"), ("b", "a")),), confluent=True, name=name
        )
    if name == "section4_S":
        return _section4_monoid()
    if name == "f2_group":
        rels = tuple(
            Relation((x, y), ())
            for x, y in (("x", "x'"), ("x'", "x"), ("y", "y'"), ("y'", "y"))
        )
        # Free reduction: terminating, and all critical pairs resolve.
        return Presentation(("x", "x'", "y", "y'"), rels, confluent=True, name=name)
    raise PresentationError(f"unknown built-in presentation {name!r}")
