"""Balls in the right Cayley graph, with honest distance bookkeeping.

The right Cayley graph of a monoid has one vertex per element and an edge
x -s-> xs for each generator s.  The induced semimetric d(x, y) is the
length of a shortest directed path (infinity when y is not reachable from
x); it separates points and satisfies the directed triangle inequality
but is not symmetric.

A ball of radius L is the full subgraph on the elements at distance at
most L from the identity.  Out-edges are present for every generator at
every non-frontier vertex; an out-edge of a frontier vertex (distance
exactly L) is kept only when its target lies inside the ball.  Built from
a declared confluent presentation, vertex identification is by normal
form and the ball is *certified*; otherwise products are merged by
bounded equality searches, every unresolved merge is recorded, and the
ball is best-effort (elements may appear split).

Distances extracted from a ball carry their trust level explicitly: a
value is *exact* when the truncation provably cannot shorten it, and
otherwise the query returns an unresolved marker together with the bound
B = L - |x|, meaning d(x, y) > B or d(x, y) is infinite.  Balls whose
presentation declares a tree-shaped Cayley graph (free monoids, the
membership-oracle family) also certify infinite distances: in a rooted
tree, a vertex unreachable inside the ball is unreachable outright.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple

from .presentation import Presentation
from .rewriting import (
    BudgetExceededError,
    Status,
    apply_instance,
    equality_search,
    leftmost_redex,
    normal_form_confluent,
)
from .words import Word, format_word

__all__ = [
    "Edge",
    "CayleyBall",
    "ExtendedDistance",
    "SccClass",
    "SchutzenbergerGraph",
    "UndirectedView",
    "QuasimetricReport",
    "enumerate_ball",
    "distance",
    "check_quasimetric",
    "strongly_connected_components",
    "schutzenberger_graph",
    "undirected_view",
    "ball_to_json_dict",
    "ball_to_json",
    "ball_to_dot",
]


class Edge(NamedTuple):
    src: int
    label: str
    dst: int


@dataclass(eq=False)
class CayleyBall:
    """A radius-L ball in the right Cayley graph of a presentation.

    Vertices are numbered in breadth-first discovery order (generator
    order within a layer), so ids are deterministic; vertex 0 is the
    identity.  ``words[i]`` is the representative of vertex i (the normal
    form when certified) and ``lengths[i]`` its distance from the
    identity.  A completed ball is treated as immutable.
    """

    presentation: Presentation
    radius: int
    words: tuple[Word, ...]
    lengths: tuple[int, ...]
    edges: tuple[Edge, ...]
    certified: bool
    tree_certified: bool
    frontier: frozenset[int]
    unresolved_merges: tuple[tuple[Word, int], ...] = ()
    _out: list[list[Edge]] = field(default_factory=list, repr=False)
    _succ: list[tuple[int, ...]] = field(default_factory=list, repr=False)
    _bfs_cache: dict[int, dict[int, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        out: list[list[Edge]] = [[] for _ in self.words]
        for e in self.edges:
            out[e.src].append(e)
        succ: list[tuple[int, ...]] = []
        for adj in out:
            seen: set[int] = set()
            ordered: list[int] = []
            for e in adj:
                if e.dst not in seen:
                    seen.add(e.dst)
                    ordered.append(e.dst)
            succ.append(tuple(ordered))
        self._out = out
        self._succ = succ

    @property
    def vertex_count(self) -> int:
        return len(self.words)

    def out_edges(self, v: int) -> list[Edge]:
        return self._out[v]

    def successors(self, v: int) -> tuple[int, ...]:
        """Distinct edge targets of v (parallel labels collapsed)."""
        return self._succ[v]

    def is_frontier(self, v: int) -> bool:
        return v in self.frontier

    def vertex_id(self, word: Word) -> int:
        try:
            return self.words.index(word)
        except ValueError:
            raise KeyError(f"no vertex with representative {format_word(word)!r}") from None

    def steps_from(self, x: int) -> dict[int, int]:
        """In-ball BFS distances from x (cached; ball is finite)."""
        cached = self._bfs_cache.get(x)
        if cached is not None:
            return cached
        dist = {x: 0}
        queue = deque([x])
        while queue:
            cur = queue.popleft()
            d = dist[cur] + 1
            for nxt in self._succ[cur]:
                if nxt not in dist:
                    dist[nxt] = d
                    queue.append(nxt)
        self._bfs_cache[x] = dist
        return dist


@dataclass(frozen=True)
class ExtendedDistance:
    """A ball distance with its trust level.

    ``value`` is a natural number, or None as the infinite-or-unresolved
    marker; ``exact`` discriminates: exact with a value means the true
    distance, exact without a value means certified infinite, and
    non-exact without a value means "greater than ``bound`` or infinite".
    """

    value: int | None
    exact: bool
    bound: int

    def __post_init__(self) -> None:
        if self.value is not None and not self.exact:
            raise ValueError("an inexact distance carries no value")

    @property
    def is_infinite(self) -> bool:
        return self.value is None and self.exact

    @property
    def unresolved(self) -> bool:
        return self.value is None and not self.exact

    def json_dict(self) -> dict:
        if self.unresolved:
            shown: int | str = "unresolved"
        elif self.is_infinite:
            shown = "inf"
        else:
            assert self.value is not None
            shown = self.value
        return {"value": shown, "exact": self.exact, "bound": self.bound}


# Best-effort merge searches are individually tiny and globally capped, so
# a presentation with a hard word problem cannot stall the build.
_MERGE_VISIT_BUDGET = 200
_MERGE_CALL_QUOTA = 1000
_UNRESOLVED_CAP = 10_000


def _greedy_reduce(word: Word, p: Presentation, max_steps: int = 200) -> Word:
    """Apply oriented rules leftmost-first with a step and growth cap.

    Not canonical without confluence, but every step preserves the
    element, so two words with equal reductions are provably equal.
    """
    current = word
    for _ in range(max_steps):
        inst = leftmost_redex(current, p)
        if inst is None or len(current) > len(word) + 40:
            break
        current = apply_instance(current, inst)
    return current


def enumerate_ball(
    p: Presentation,
    radius: int,
    depth_bound: int = 8,
    vertex_budget: int = 10**6,
) -> CayleyBall:
    """Breadth-first enumeration of the radius-L ball at the identity.

    With a confluence certificate, products are identified by normal
    form, every product of a non-frontier vertex lands on a vertex, and
    frontier products are kept exactly when they land inside.  Without a
    certificate the builder first matches greedy reductions (a sound
    merge: reduction steps preserve the element) and then spends a global
    quota of small bounded equality searches; comparisons that end
    Unknown or fall outside the quota are recorded as unresolved merges
    and the ball is marked uncertified.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    words: list[Word] = [()]
    lengths: list[int] = [0]
    index: dict[Word, int] = {(): 0}
    reduced_index: dict[Word, int] = {(): 0}
    edges: list[Edge] = []
    unresolved: list[tuple[Word, int]] = []
    search_calls = 0

    vid = 0
    while vid < len(words):
        if len(words) > vertex_budget:
            raise BudgetExceededError(
                f"ball enumeration exceeded the vertex budget of {vertex_budget}"
            )
        base = words[vid]
        here = lengths[vid]
        for s in p.generators:
            product = base + (s,)
            if p.confluent:
                target = normal_form_confluent(product, p)
                known = index.get(target)
                if known is not None:
                    edges.append(Edge(vid, s, known))
                elif here < radius:
                    index[target] = len(words)
                    words.append(target)
                    lengths.append(here + 1)
                    edges.append(Edge(vid, s, index[target]))
                # else: the product leaves the ball.
            else:
                reduced = _greedy_reduce(product, p)
                known = index.get(product)
                if known is None:
                    known = reduced_index.get(reduced)
                if known is None:
                    for j, other in enumerate(words):
                        if search_calls >= _MERGE_CALL_QUOTA:
                            if len(unresolved) < _UNRESOLVED_CAP:
                                unresolved.append((product, j))
                            continue
                        search_calls += 1
                        verdict = equality_search(
                            product, other, p, depth_bound, _MERGE_VISIT_BUDGET
                        )
                        if verdict.status is Status.EQUAL:
                            known = j
                            break
                        if verdict.status is Status.UNKNOWN:
                            if len(unresolved) < _UNRESOLVED_CAP:
                                unresolved.append((product, j))
                if known is not None:
                    edges.append(Edge(vid, s, known))
                elif here < radius:
                    new_id = len(words)
                    index[product] = new_id
                    reduced_index.setdefault(reduced, new_id)
                    words.append(product)
                    lengths.append(here + 1)
                    edges.append(Edge(vid, s, new_id))
        vid += 1

    frontier = frozenset(i for i, ln in enumerate(lengths) if ln == radius)
    ball = CayleyBall(
        presentation=p,
        radius=radius,
        words=tuple(words),
        lengths=tuple(lengths),
        edges=tuple(edges),
        certified=p.confluent,
        tree_certified=False,
        frontier=frontier,
        unresolved_merges=tuple(unresolved),
    )
    if p.cayley_tree:
        if not _is_rooted_forest(ball):
            raise RuntimeError(
                "presentation declares a tree-shaped Cayley graph but the ball is not a rooted tree"
            )
        ball.tree_certified = True
    return ball


def _is_rooted_forest(ball: CayleyBall) -> bool:
    """Structural check: every edge descends one layer, in-degree one off the root."""
    indeg = [0] * ball.vertex_count
    for v in range(ball.vertex_count):
        for w in ball.successors(v):
            if ball.lengths[w] != ball.lengths[v] + 1:
                return False
            indeg[w] += 1
    return indeg[0] == 0 and all(d == 1 for i, d in enumerate(indeg) if i != 0)


def distance(ball: CayleyBall, x: int, y: int) -> ExtendedDistance:
    """The semimetric d(x, y) as witnessed by the ball.

    On a certified ball any directed path of length j <= L - |x| stays
    inside it, so an in-ball BFS is complete up to that bound: a hit
    within the bound is the true distance, and a miss leaves only
    "longer than the bound or infinite".  On a tree-certified ball
    reachability is decided outright (tree paths descend through layers,
    so they never need to leave).  A best-effort ball may be missing
    edges anywhere, so it never certifies a value.
    """
    n = ball.vertex_count
    if not (0 <= x < n and 0 <= y < n):
        raise IndexError("vertex id out of range")
    bound = ball.radius - ball.lengths[x]
    if x == y:
        # Identity of indiscernibles holds regardless of certification.
        return ExtendedDistance(0, True, bound)
    found = ball.steps_from(x).get(y)
    if not ball.certified:
        return ExtendedDistance(None, False, bound)
    if found is None:
        if ball.tree_certified:
            return ExtendedDistance(None, True, bound)
        return ExtendedDistance(None, False, bound)
    if found <= bound or ball.tree_certified:
        return ExtendedDistance(found, True, bound)
    return ExtendedDistance(None, False, bound)


@dataclass(frozen=True)
class QuasimetricReport:
    """Outcome of a quasi-metric check d(x,y) <= lam * d(y,x) + mu."""

    verdict: str  # "pass" or "counterexample"
    witness: tuple[int, int] | None
    checked: int
    skipped: int

    def json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
            "checked": self.checked,
            "skipped": self.skipped,
        }


def _holds_leq(d_left: ExtendedDistance, lam: Fraction, d_right: ExtendedDistance, mu: Fraction) -> bool:
    """d_left <= lam * d_right + mu over N u {inf}; both sides decided."""
    if d_right.is_infinite:
        return True  # lam >= 1, so the right side is infinite
    if d_left.is_infinite:
        return False
    assert d_left.value is not None and d_right.value is not None
    return d_left.value <= lam * d_right.value + mu


def check_quasimetric(ball: CayleyBall, lam: Fraction, mu: Fraction) -> QuasimetricReport:
    """Test d(x,y) <= lam*d(y,x) + mu over all decided vertex pairs.

    Pairs with an unresolved distance on either side are skipped and
    counted; they never silently satisfy the inequality.  The first
    violating pair in id order is returned as the counterexample.
    """
    lam = Fraction(lam)
    mu = Fraction(mu)
    if lam < 1 or mu < 0:
        raise ValueError("a quasi-metric comparison needs lam >= 1 and mu >= 0")
    checked = skipped = 0
    for x in range(ball.vertex_count):
        for y in range(x + 1, ball.vertex_count):
            dxy = distance(ball, x, y)
            dyx = distance(ball, y, x)
            if dxy.unresolved or dyx.unresolved:
                skipped += 1
                continue
            checked += 1
            if not (_holds_leq(dxy, lam, dyx, mu) and _holds_leq(dyx, lam, dxy, mu)):
                return QuasimetricReport("counterexample", (x, y), checked, skipped)
    return QuasimetricReport("pass", None, checked, skipped)


@dataclass(frozen=True)
class SccClass:
    """A strongly connected component; approximate when truncation may have cut it."""

    vertices: tuple[int, ...]
    approximate: bool


def strongly_connected_components(ball: CayleyBall) -> list[SccClass]:
    """Tarjan's algorithm, iterative, deterministic by vertex id.

    Components are the Green's R-classes of the ball's elements, except
    that a class touching the frontier may extend past the truncation and
    is flagged approximate.  Classes are listed by smallest member id.
    """
    n = ball.vertex_count
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index_of[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index_of[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recursed = False
            succ = ball.successors(v)
            for i in range(pi, len(succ)):
                w = succ[i]
                if index_of[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recursed = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index_of[w])
            if recursed:
                continue
            if low[v] == index_of[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                components.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])

    components.sort(key=lambda comp: comp[0])
    return [
        SccClass(tuple(comp), any(v in ball.frontier for v in comp))
        for comp in components
    ]


@dataclass(frozen=True)
class SchutzenbergerGraph:
    """The induced subgraph on the strongly connected component of a vertex."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    approximate: bool

    def json_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"src": e.src, "label": e.label, "dst": e.dst} for e in self.edges],
            "approximate": self.approximate,
        }


def schutzenberger_graph(ball: CayleyBall, h: int) -> SchutzenbergerGraph:
    if not (0 <= h < ball.vertex_count):
        raise IndexError("vertex id out of range")
    for comp in strongly_connected_components(ball):
        if h in comp.vertices:
            members = set(comp.vertices)
            kept = tuple(e for e in ball.edges if e.src in members and e.dst in members)
            return SchutzenbergerGraph(comp.vertices, kept, comp.approximate)
    raise AssertionError("every vertex lies in exactly one component")


@dataclass(frozen=True)
class UndirectedView:
    """The underlying undirected simple graph of a ball.

    ``interior`` holds the non-frontier vertex ids: inside the full
    Cayley graph those are exactly the vertices whose whole neighbourhood
    is visible in the ball.
    """

    vertex_count: int
    adjacency: tuple[frozenset[int], ...]
    edge_list: tuple[tuple[int, int], ...]
    interior: frozenset[int]
    loops: frozenset[int]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])


def undirected_view(ball: CayleyBall) -> UndirectedView:
    adj: list[set[int]] = [set() for _ in range(ball.vertex_count)]
    loops: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    for e in ball.edges:
        if e.src == e.dst:
            loops.add(e.src)
            continue
        a, b = min(e.src, e.dst), max(e.src, e.dst)
        pairs.add((a, b))
        adj[a].add(b)
        adj[b].add(a)
    interior = frozenset(range(ball.vertex_count)) - ball.frontier
    return UndirectedView(
        ball.vertex_count,
        tuple(frozenset(s) for s in adj),
        tuple(sorted(pairs)),
        interior,
        frozenset(loops),
    )


def ball_to_json_dict(ball: CayleyBall) -> dict:
    return {
        "radius": ball.radius,
        "certified": ball.certified,
        "vertices": [
            {"id": i, "repr": format_word(w), "len": ball.lengths[i]}
            for i, w in enumerate(ball.words)
        ],
        "edges": [{"src": e.src, "label": e.label, "dst": e.dst} for e in ball.edges],
        "frontier": sorted(ball.frontier),
    }


def ball_to_json(ball: CayleyBall) -> str:
    return json.dumps(ball_to_json_dict(ball), separators=(",", ":"))


def ball_to_dot(ball: CayleyBall) -> str:
    """Graphviz rendering; frontier vertices are dashed."""
    lines = ["digraph ball {"]
    for i, w in enumerate(ball.words):
        style = ", style=dashed" if i in ball.frontier else ""
        lines.append(f'  v{i} [label="{format_word(w)}"{style}];')
    for e in ball.edges:
        lines.append(f'  v{e.src} -> v{e.dst} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
