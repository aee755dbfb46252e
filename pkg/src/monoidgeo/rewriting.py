"""String rewriting over a presentation: equality, areas, normal forms.

Two words are equal in the presented monoid iff they are connected in the
undirected rewrite graph, whose edges replace one occurrence of a relation
side by the other side.  The *area* A(u, v) of an equal pair is the length
of a shortest such connection, i.e. the least number of relation
applications transforming u into v.  The Dehn function

    delta(n) = max { A(u, v) : u = v in the monoid, |u| + |v| <= n }

measures the worst area over short equal pairs.

Equality queries run a level-synchronized bidirectional breadth-first
search, so reported areas are exact minima.  Searches are bounded by a
depth bound and a visited-word budget; exhausting either yields the
explicit verdict Unknown, never a guess.  A presentation with a declared
confluent terminating system additionally refutes equality by comparing
normal forms, and a search that exhausts a finite rewrite component
refutes equality outright.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .presentation import Presentation, PresentationError, Relation, RuleInstance
from .words import Word, check_word, count_words_up_to, occurrences, replace_at, words_up_to

__all__ = [
    "Status",
    "EqualityVerdict",
    "GrowthTable",
    "BudgetExceededError",
    "RewriteError",
    "UNKNOWN",
    "INF",
    "apply_relation_once",
    "apply_instance",
    "relation_instances",
    "leftmost_redex",
    "rewrite_neighbors",
    "equality_search",
    "normal_form_confluent",
    "is_irreducible",
    "dehn_sample",
]


class RewriteError(ValueError):
    """A rewrite was requested where its side does not occur."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


class Status(enum.Enum):
    EQUAL = "Equal"
    NOT_EQUAL = "NotEqual"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class EqualityVerdict:
    """Outcome of an equality query.

    ``area`` is present exactly when the status is Equal, and is then the
    exact minimal number of relation applications.  ``depth_used`` records
    how much search depth the query consumed (the configured bound when
    the verdict is Unknown).
    """

    status: Status
    area: int | None = None
    depth_used: int = 0

    def __post_init__(self) -> None:
        if (self.status is Status.EQUAL) != (self.area is not None):
            raise ValueError("area is reported exactly for Equal verdicts")


# Table entry markers.  Growth tables hold natural numbers, "inf" for a
# value certified infinite, or "unknown" for a value the sampler could not
# resolve within its budgets.
UNKNOWN = "unknown"
INF = "inf"


@dataclass
class GrowthTable:
    """A sampled monotone growth function n -> value."""

    entries: dict[int, int | str] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["n,value"]
        lines.extend(f"{n},{self.entries[n]}" for n in sorted(self.entries))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "GrowthTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].replace(" ", "") != "n,value":
            raise ValueError("growth table CSV must start with the header 'n,value'")
        entries: dict[int, int | str] = {}
        for ln in lines[1:]:
            left, _, right = ln.partition(",")
            n = int(left)
            value = right.strip()
            entries[n] = value if value in (UNKNOWN, INF) else int(value)
        return cls(entries)

    def known_pairs(self) -> list[tuple[int, int | str]]:
        return [(n, self.entries[n]) for n in sorted(self.entries)]


def apply_relation_once(
    word: Word, relation: Relation, position: int, *, reverse: bool = False
) -> Word:
    """Apply one relation at ``position``; ``reverse`` rewrites rhs -> lhs."""
    old, new = (relation.rhs, relation.lhs) if reverse else (relation.lhs, relation.rhs)
    if position < 0 or position + len(old) > len(word) or word[position : position + len(old)] != old:
        raise RewriteError(
            f"relation side does not occur at position {position} of the given word"
        )
    return replace_at(word, position, len(old), new)


def apply_instance(word: Word, instance: RuleInstance) -> Word:
    return replace_at(word, instance.start, len(instance.old), instance.new)


def relation_instances(word: Word, p: Presentation) -> list[RuleInstance]:
    """Every applicable rewrite instance of ``word``, in both orientations."""
    if p.oracle is not None:
        return p.oracle.applicable(word)
    instances: list[RuleInstance] = []
    for rel in p.relations:
        if rel.lhs == rel.rhs:
            continue  # a trivial relation contributes only self-loops
        for old, new in ((rel.lhs, rel.rhs), (rel.rhs, rel.lhs)):
            for pos in occurrences(word, old):
                instances.append(RuleInstance(pos, old, new))
    return instances


def leftmost_redex(word: Word, p: Presentation) -> RuleInstance | None:
    """The oriented (lhs -> rhs) rewrite with the smallest start index."""
    if p.oracle is not None:
        return p.oracle.leftmost(word)
    for rel in p.relations:
        if not rel.lhs and rel.rhs:
            # An empty left side would expand forever.
            raise PresentationError("oriented rules cannot have an empty left side")
    for pos in range(len(word)):
        for rel in p.relations:
            k = len(rel.lhs)
            if k and word[pos : pos + k] == rel.lhs:
                return RuleInstance(pos, rel.lhs, rel.rhs)
    return None


def rewrite_neighbors(word: Word, p: Presentation) -> list[Word]:
    """Distinct one-step neighbours of ``word`` in the undirected rewrite graph."""
    seen: set[Word] = set()
    out: list[Word] = []
    for inst in relation_instances(word, p):
        nxt = apply_instance(word, inst)
        if nxt not in seen:
            seen.add(nxt)
            out.append(nxt)
    return out


def is_irreducible(word: Word, p: Presentation) -> bool:
    return leftmost_redex(word, p) is None


def normal_form_confluent(word: Word, p: Presentation, max_steps: int = 10**6) -> Word:
    """Reduce to the unique normal form of a declared-confluent presentation.

    Applies the leftmost oriented rewrite until none applies.  Raises if
    the presentation carries no confluence declaration, or if the step
    budget is exceeded (which would expose a bogus declaration).
    """
    if not p.confluent:
        raise PresentationError("presentation is not declared confluent and terminating")
    check_word(word, p.alphabet)
    current = word
    for _ in range(max_steps):
        inst = leftmost_redex(current, p)
        if inst is None:
            return current
        current = apply_instance(current, inst)
    raise BudgetExceededError(f"normal form not reached within {max_steps} rewrite steps")


def _expand_level(
    frontier: list[Word],
    dist: dict[Word, int],
    other: dict[Word, int],
    depth: int,
    p: Presentation,
) -> tuple[list[Word], int | None]:
    """Grow one BFS level; return the new frontier and the best meeting total."""
    best: int | None = None
    new_frontier: list[Word] = []
    for w in frontier:
        for nxt in rewrite_neighbors(w, p):
            if nxt in dist:
                continue
            dist[nxt] = depth
            new_frontier.append(nxt)
            if nxt in other:
                total = depth + other[nxt]
                if best is None or total < best:
                    best = total
    return new_frontier, best


def equality_search(
    u: Word,
    v: Word,
    p: Presentation,
    depth_bound: int = 10,
    visit_budget: int = 10**6,
) -> EqualityVerdict:
    """Decide u = v in the presented monoid, with exact area on success.

    Bidirectional breadth-first search over the undirected rewrite graph.
    Levels are expanded alternately (smaller frontier first); a meeting
    witnesses equality, and because every word settled at level d has
    rewrite distance exactly d from its endpoint, the minimum over all
    meetings seen once the two depths cover a candidate total is the exact
    area.  NotEqual is returned when a finite rewrite component is
    exhausted without meeting, or on distinct normal forms of a declared
    confluent system; everything else is Unknown.
    """
    check_word(u, p.alphabet)
    check_word(v, p.alphabet)
    if depth_bound < 0:
        raise ValueError("depth_bound must be non-negative")
    if u == v:
        return EqualityVerdict(Status.EQUAL, 0, 0)
    if p.confluent:
        if normal_form_confluent(u, p) != normal_form_confluent(v, p):
            return EqualityVerdict(Status.NOT_EQUAL, depth_used=0)

    dist_u: dict[Word, int] = {u: 0}
    dist_v: dict[Word, int] = {v: 0}
    front_u: list[Word] = [u]
    front_v: list[Word] = [v]
    depth_u = depth_v = 0
    best: int | None = None

    while True:
        if best is not None and depth_u + depth_v >= best:
            return EqualityVerdict(Status.EQUAL, best, depth_used=best)
        if not front_u or not front_v:
            # One component is fully explored and the endpoints never met.
            return EqualityVerdict(Status.NOT_EQUAL, depth_used=depth_u + depth_v)
        if depth_u + depth_v >= depth_bound:
            return EqualityVerdict(Status.UNKNOWN, depth_used=depth_bound)
        if len(dist_u) + len(dist_v) > visit_budget:
            return EqualityVerdict(Status.UNKNOWN, depth_used=depth_bound)
        if len(front_u) <= len(front_v):
            depth_u += 1
            front_u, found = _expand_level(front_u, dist_u, dist_v, depth_u, p)
        else:
            depth_v += 1
            front_v, found = _expand_level(front_v, dist_v, dist_u, depth_v, p)
        if found is not None and (best is None or found < best):
            best = found


def dehn_sample(
    p: Presentation,
    n_max: int,
    depth_bound: int = 10,
    word_budget: int = 10**6,
) -> GrowthTable:
    """Sample the Dehn function delta(n) for n = 0..n_max.

    Enumerates every unordered pair of words with |u| + |v| <= n_max over
    the alphabet and takes the maximal exact area among equal pairs.  An
    entry where some pair came back Unknown is reported as "unknown"
    rather than a lower bound.  Requires an explicit relation list (the
    enumeration is meaningless for oracle families) and refuses up front
    if the word enumeration would exceed ``word_budget``.
    """
    if p.oracle is not None:
        raise PresentationError("dehn_sample needs an explicit finite relation list")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    total_words = count_words_up_to(len(p.generators), n_max)
    if total_words > word_budget:
        raise BudgetExceededError(
            f"enumerating {total_words} words exceeds the word budget of {word_budget}"
        )
    universe = list(words_up_to(p.generators, n_max))
    best_at: dict[int, int] = {}
    unknown_at: set[int] = set()
    for i, u in enumerate(universe):
        for v in universe[i:]:
            size = len(u) + len(v)
            if size > n_max:
                continue
            if u == v:
                best_at[size] = max(best_at.get(size, 0), 0)
                continue
            verdict = equality_search(u, v, p, depth_bound)
            if verdict.status is Status.EQUAL:
                assert verdict.area is not None
                best_at[size] = max(best_at.get(size, 0), verdict.area)
            elif verdict.status is Status.UNKNOWN:
                unknown_at.add(size)
    table = GrowthTable()
    running = 0
    poisoned = False
    for n in range(n_max + 1):
        poisoned = poisoned or n in unknown_at
        running = max(running, best_at.get(n, 0))
        table.entries[n] = UNKNOWN if poisoned else running
    return table
