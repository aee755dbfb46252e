"""Directed 2-complexes on Cayley balls and combinatorial homotopy.

Given a digraph, the directed 2-complex K_n attaches a 2-cell to every
ordered pair (p, q) of *distinct parallel* directed paths (same start,
same end) with |p| + |q| <= n.  An atomic homotopy step rewrites a 1-path
r = prefix . top . suffix into prefix . bottom . suffix across one cell
(top, bottom); a 2-path is a chain of such steps, and the area A(p, q) of
a parallel pair is the length of a shortest 2-path from p to q (infinite
when none exists).  The growth function

    gamma(i) = sup { A(p, q) : p, q parallel, |p| + |q| <= i }

plays the role of a Dehn function for the complex, and a digraph is
quasi-simply connected at level n when all short parallel pairs are
homotopic in K_n.

Working on a ball truncates the complex, so verdicts track boundary
safety.  A 1-path state is *safe* when every vertex it visits sits at
layer <= L - n: all candidate cell bottoms from such a state stay inside
the ball, so its neighbour enumeration is complete.  A breadth-first
search that exhausts its reachable states having expanded only safe ones
has therefore explored the full reachable set of the untruncated complex;
only then is a missing homotopy reported as a definite absence.  Found
2-paths are certificates regardless, and their minimality is certified
when every state expanded earlier was safe.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .cayley import CayleyBall, Edge
from .rewriting import GrowthTable, INF, UNKNOWN

__all__ = [
    "DirectedPath",
    "TwoCell",
    "AtomicStep",
    "TwoPath",
    "DirectedTwoComplex",
    "HomotopyResult",
    "QscReport",
    "build_kn",
    "path_from_labels",
    "homotopy_search",
    "gamma_sample",
    "check_qsc",
    "twopath_to_json_list",
]


@dataclass(frozen=True)
class DirectedPath:
    """A directed edge path; the empty path at a vertex has no edges."""

    start: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        at = self.start
        for e in self.edges:
            if e.src != at:
                raise ValueError("edges do not compose into a path")
            at = e.dst

    @property
    def end(self) -> int:
        return self.edges[-1].dst if self.edges else self.start

    def __len__(self) -> int:
        return len(self.edges)

    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.edges)

    def vertices(self) -> tuple[int, ...]:
        return (self.start,) + tuple(e.dst for e in self.edges)

    def vertex_at(self, i: int) -> int:
        return self.start if i == 0 else self.edges[i - 1].dst

    def subpath(self, i: int, j: int) -> "DirectedPath":
        return DirectedPath(self.vertex_at(i), self.edges[i:j])

    def splice(self, i: int, j: int, replacement: "DirectedPath") -> "DirectedPath":
        if replacement.start != self.vertex_at(i) or replacement.end != self.vertex_at(j):
            raise ValueError("replacement is not parallel to the removed factor")
        return DirectedPath(self.start, self.edges[:i] + replacement.edges + self.edges[j:])

    def is_parallel_to(self, other: "DirectedPath") -> bool:
        return self.start == other.start and self.end == other.end


@dataclass(frozen=True)
class TwoCell:
    """An ordered cell: a pair of distinct parallel paths with bounded total length."""

    top: DirectedPath
    bottom: DirectedPath

    def __post_init__(self) -> None:
        if not self.top.is_parallel_to(self.bottom):
            raise ValueError("cell boundary paths must be parallel")
        if self.top == self.bottom:
            raise ValueError("degenerate cells (p, p) are excluded")

    @property
    def total_length(self) -> int:
        return len(self.top) + len(self.bottom)

    def inverse(self) -> "TwoCell":
        return TwoCell(self.bottom, self.top)


def _concat(*paths: DirectedPath) -> DirectedPath:
    edges: tuple[Edge, ...] = ()
    for p in paths:
        edges = edges + p.edges
    return DirectedPath(paths[0].start, edges)


@dataclass(frozen=True)
class AtomicStep:
    """One homotopy step prefix . cell.top . suffix -> prefix . cell.bottom . suffix."""

    prefix: DirectedPath
    cell: TwoCell
    suffix: DirectedPath

    def __post_init__(self) -> None:
        if self.prefix.end != self.cell.top.start or self.cell.top.end != self.suffix.start:
            raise ValueError("step factors do not compose")

    def top(self) -> DirectedPath:
        return _concat(self.prefix, self.cell.top, self.suffix)

    def bottom(self) -> DirectedPath:
        return _concat(self.prefix, self.cell.bottom, self.suffix)


@dataclass(frozen=True)
class TwoPath:
    """A chain of atomic steps from ``source``; empty chains are identities."""

    source: DirectedPath
    steps: tuple[AtomicStep, ...] = ()

    def __post_init__(self) -> None:
        at = self.source
        for step in self.steps:
            if step.top() != at:
                raise ValueError("steps do not chain: a step's top must match the previous bottom")
            at = step.bottom()

    @property
    def top(self) -> DirectedPath:
        return self.source

    @property
    def bottom(self) -> DirectedPath:
        return self.steps[-1].bottom() if self.steps else self.source

    def __len__(self) -> int:
        return len(self.steps)


class DirectedTwoComplex:
    """K_n over a Cayley ball, with cells enumerated on demand.

    Cells are never materialized as a global list (there are too many);
    instead the complex answers path enumeration queries and generates
    the homotopy neighbours of a 1-path.
    """

    def __init__(self, ball: CayleyBall, n: int):
        if n < 2:
            raise ValueError("a cell needs total boundary length at least 2, so n >= 2")
        self.ball = ball
        self.n = n
        self._paths_cache: dict[tuple[int, int], dict[int, tuple[DirectedPath, ...]]] = {}

    def paths_from(self, start: int, max_len: int) -> dict[int, tuple[DirectedPath, ...]]:
        """All directed ball paths from ``start`` of length <= max_len, by endpoint.

        Paths are generated in label-lexicographic, length-compatible
        order, so every returned tuple is deterministic.
        """
        key = (start, max_len)
        cached = self._paths_cache.get(key)
        if cached is not None:
            return cached
        grouped: dict[int, list[DirectedPath]] = {}
        stack = [DirectedPath(start)]
        ordered: list[DirectedPath] = []
        while stack:
            path = stack.pop()
            ordered.append(path)
            if len(path) < max_len:
                out = self.ball.out_edges(path.end)
                for e in reversed(out):
                    stack.append(DirectedPath(start, path.edges + (e,)))
        ordered.sort(key=lambda p: (len(p), p.labels()))
        for path in ordered:
            grouped.setdefault(path.end, []).append(path)
        result = {end: tuple(paths) for end, paths in grouped.items()}
        self._paths_cache[key] = result
        return result

    def is_cell(self, top: DirectedPath, bottom: DirectedPath) -> bool:
        return (
            top.is_parallel_to(bottom)
            and top != bottom
            and len(top) + len(bottom) <= self.n
        )

    def cells_from(self, vertex: int) -> list[TwoCell]:
        """Every cell whose boundary starts at ``vertex``, deterministically ordered."""
        cells = []
        for end, paths in sorted(self.paths_from(vertex, self.n).items()):
            for p in paths:
                for q in paths:
                    if p != q and len(p) + len(q) <= self.n:
                        cells.append(TwoCell(p, q))
        cells.sort(key=lambda c: (c.total_length, c.top.labels(), c.bottom.labels()))
        return cells

    def is_safe(self, path: DirectedPath) -> bool:
        """True when the neighbour enumeration of ``path`` is provably complete.

        Needs a certified ball (a best-effort ball may silently miss
        edges anywhere) and enough clearance that every candidate cell
        bottom stays at layer <= L.
        """
        if not self.ball.certified:
            return False
        lengths = self.ball.lengths
        top = max(lengths[v] for v in path.vertices())
        return top + self.n <= self.ball.radius

    def neighbours(self, path: DirectedPath) -> Iterator[tuple[DirectedPath, AtomicStep]]:
        """All one-step homotopies of ``path`` across cells visible in the ball."""
        k = len(path)
        for i in range(k + 1):
            for j in range(i, min(i + self.n, k) + 1):
                mid = path.subpath(i, j)
                budget = self.n - (j - i)
                if budget < 0:
                    continue
                u, v = path.vertex_at(i), path.vertex_at(j)
                for bottom in self.paths_from(u, budget).get(v, ()):
                    if bottom == mid:
                        continue
                    step = AtomicStep(path.subpath(0, i), TwoCell(mid, bottom), path.subpath(j, k))
                    yield path.splice(i, j, bottom), step


def build_kn(ball: CayleyBall, n: int) -> DirectedTwoComplex:
    return DirectedTwoComplex(ball, n)


def path_from_labels(ball: CayleyBall, start: int, labels: Iterator[str] | tuple[str, ...]) -> DirectedPath:
    """Follow edge labels from a vertex; fails if a label has no edge there."""
    edges = []
    at = start
    for label in labels:
        for e in ball.out_edges(at):
            if e.label == label:
                edges.append(e)
                at = e.dst
                break
        else:
            raise ValueError(f"no edge labelled {label!r} at vertex {at}")
    return DirectedPath(start, tuple(edges))


@dataclass(frozen=True)
class HomotopyResult:
    """Outcome of a homotopy search between parallel 1-paths.

    ``status`` is "found" (with a witness 2-path), "absent" (the full
    reachable set was explored boundary-safely: the paths are provably
    not homotopic in the untruncated complex), or "inconclusive" (budget
    exhausted, or the search brushed the ball boundary).  For found
    results ``area_certified`` marks the witness length as the true
    minimal area.
    """

    status: str
    twopath: TwoPath | None = None
    area: int | None = None
    area_certified: bool = False
    visited: int = 0


def homotopy_search(
    K: DirectedTwoComplex,
    p: DirectedPath,
    q: DirectedPath,
    step_budget: int = 10**6,
) -> HomotopyResult:
    """Shortest 2-path from p to q in K_n, by BFS over 1-path states."""
    if not p.is_parallel_to(q):
        raise ValueError("homotopy is defined between parallel paths only")
    if p == q:
        return HomotopyResult("found", TwoPath(p), 0, True, 1)

    parents: dict[DirectedPath, tuple[DirectedPath, AtomicStep] | None] = {p: None}
    queue: deque[tuple[DirectedPath, int]] = deque([(p, 0)])
    all_safe = True
    visited = 1

    while queue:
        state, depth = queue.popleft()
        if not K.is_safe(state):
            all_safe = False
        for nxt, step in K.neighbours(state):
            if nxt in parents:
                continue
            parents[nxt] = (state, step)
            visited += 1
            if nxt == q:
                steps = [step]
                back = state
                while parents[back] is not None:
                    prev, prev_step = parents[back]  # type: ignore[misc]
                    steps.append(prev_step)
                    back = prev
                steps.reverse()
                return HomotopyResult("found", TwoPath(p, tuple(steps)), depth + 1, all_safe, visited)
            if visited > step_budget:
                return HomotopyResult("inconclusive", None, None, False, visited)
            queue.append((nxt, depth + 1))

    status = "absent" if all_safe else "inconclusive"
    return HomotopyResult(status, None, None, False, visited)


def _parallel_pairs(
    K: DirectedTwoComplex, root: int, i_max: int
) -> Iterator[tuple[DirectedPath, DirectedPath]]:
    """Unordered distinct parallel pairs from ``root`` with total length <= i_max."""
    by_end = K.paths_from(root, i_max)
    for end in sorted(by_end):
        paths = by_end[end]
        for a in range(len(paths)):
            for b in range(a + 1, len(paths)):
                if len(paths[a]) + len(paths[b]) <= i_max:
                    yield paths[a], paths[b]


def gamma_sample(
    K: DirectedTwoComplex,
    i_max: int,
    roots: tuple[int, ...],
    step_budget: int = 10**6,
) -> GrowthTable:
    """Sample gamma(i) for i = 0..i_max over pairs rooted at ``roots``.

    Every root must satisfy |root| + i_max <= L so the pair enumeration
    is complete.  An entry is the maximal certified area; it becomes
    "inf" once some pair is provably non-homotopic (the supremum includes
    an infinite value) and "unknown" once some search was inconclusive or
    returned an uncertified area.
    """
    ball = K.ball
    for root in roots:
        if ball.lengths[root] + i_max > ball.radius:
            raise ValueError(
                f"root {root} is too close to the frontier for total length {i_max}"
            )
    if not ball.certified:
        raise ValueError("gamma sampling needs a certified ball")
    finite_at: dict[int, int] = {}
    infinite_at: set[int] = set()
    unknown_at: set[int] = set()
    for root in sorted(set(roots)):
        for p, q in _parallel_pairs(K, root, i_max):
            total = len(p) + len(q)
            res = homotopy_search(K, p, q, step_budget)
            if res.status == "found" and res.area_certified:
                assert res.area is not None
                finite_at[total] = max(finite_at.get(total, 0), res.area)
            elif res.status == "absent":
                infinite_at.add(total)
            else:
                unknown_at.add(total)
    table = GrowthTable()
    running = 0
    seen_inf = False
    seen_unknown = False
    for i in range(i_max + 1):
        seen_inf = seen_inf or i in infinite_at
        seen_unknown = seen_unknown or i in unknown_at
        running = max(running, finite_at.get(i, 0))
        if seen_inf:
            table.entries[i] = INF
        elif seen_unknown:
            table.entries[i] = UNKNOWN
        else:
            table.entries[i] = running
    return table


@dataclass(frozen=True)
class QscReport:
    """Quasi-simple-connectivity verdict, explicitly scoped to one ball.

    The check covers every distinct parallel pair with total length
    <= i_max rooted at vertices of layer <= L - i_max; the verdict
    therefore reads "on this ball, up to i_max", never as an asymptotic
    claim about the monoid.
    """

    verdict: str  # "pass" | "fail" | "inconclusive"
    witness: tuple[tuple[str, ...], tuple[str, ...], int] | None
    pairs_checked: int
    inconclusive_pairs: int
    radius: int
    n: int
    i_max: int

    def json_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "top": list(self.witness[0]),
                "bottom": list(self.witness[1]),
                "root": self.witness[2],
            }
        return {
            "verdict": self.verdict,
            "witness": witness,
            "pairs": self.pairs_checked,
            "inconclusive": self.inconclusive_pairs,
            "radius": self.radius,
            "n": self.n,
            "i_max": self.i_max,
        }


def check_qsc(
    ball: CayleyBall,
    n: int,
    i_max: int,
    step_budget: int = 10**6,
) -> QscReport:
    """Are all short parallel pairs of the ball homotopic in K_n?

    Roots are every vertex with |root| + i_max <= L (elsewhere the pair
    enumeration would be incomplete); there must be at least one.  A
    found 2-path certifies a pair; a boundary-safe exhausted search
    certifies a non-homotopic pair and fails the check with the first
    such witness in (total length, root, labels) order; anything left
    undecided downgrades the verdict to inconclusive.
    """
    if not ball.certified:
        raise ValueError("quasi-simple-connectivity checks need a certified ball")
    K = build_kn(ball, n)
    roots = [v for v in range(ball.vertex_count) if ball.lengths[v] + i_max <= ball.radius]
    if not roots:
        raise ValueError(
            f"no vertex lies at layer <= {ball.radius - i_max}; "
            "the ball is too small for this i_max"
        )
    candidates: list[tuple[int, int, DirectedPath, DirectedPath]] = []
    for root in roots:
        for p, q in _parallel_pairs(K, root, i_max):
            candidates.append((len(p) + len(q), root, p, q))
    candidates.sort(key=lambda c: (c[0], c[1], c[2].labels(), c[3].labels()))

    inconclusive = 0
    for total, root, p, q in candidates:
        res = homotopy_search(K, p, q, step_budget)
        if res.status == "found":
            continue
        if res.status == "absent":
            return QscReport(
                "fail",
                (p.labels(), q.labels(), root),
                len(candidates),
                inconclusive,
                ball.radius,
                n,
                i_max,
            )
        inconclusive += 1
    verdict = "inconclusive" if inconclusive else "pass"
    return QscReport(verdict, None, len(candidates), inconclusive, ball.radius, n, i_max)


def twopath_to_json_list(ball: CayleyBall, tp: TwoPath) -> list[dict]:
    """Serialize a 2-path as steps over ball edge ids (index into the edges array)."""
    lookup = {e: i for i, e in enumerate(ball.edges)}
    out = []
    for step in tp.steps:
        out.append(
            {
                "prefix": [lookup[e] for e in step.prefix.edges],
                "cell": {
                    "top": [lookup[e] for e in step.cell.top.edges],
                    "bottom": [lookup[e] for e in step.cell.bottom.edges],
                },
                "suffix": [lookup[e] for e in step.suffix.edges],
            }
        )
    return out
