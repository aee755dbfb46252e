"""The membership-oracle monoid family and its comparison ball.

For a nonempty proper subset X of the naturals, take generators
a, b, c, d, e and the infinite relation family

    a b^i c = a b^i d   (i in X)
    a b^j c = a b^j e   (j not in X)

oriented left to right.  The reducible factors are exactly the a b^i c,
so the set of normal forms does not depend on X, and one left-to-right
scan rewrites any word (each c either closes a factor or stands).  The
right Cayley graph on normal forms is a rooted tree with outdegree 4 or
5: appending any of a, b, d, e extends a normal form, while appending c
either extends it (new branch) or collapses onto the d- or e-child.
Since the tree shape is X-independent, the identity on normal forms is
an isometry between any two members of the family; only edge labels
betray X.  The word problem reduces to oracle membership in unary: deciding
a b^n c = a b^n d is exactly deciding n in X.

The free-group ball on two generators (with its 4-valent undirected
tree) is provided alongside as the classical comparison object.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import CayleyBall, Edge, _is_rooted_forest, enumerate_ball
from .presentation import Presentation, RuleInstance, RuleOracle, builtin
from .rewriting import BudgetExceededError
from .words import Word, check_word

__all__ = [
    "MembershipOracle",
    "parse_oracle",
    "MxRuleOracle",
    "IsometryReport",
    "mx_presentation",
    "mx_normal_form",
    "is_mx_normal_form",
    "mx_word_problem",
    "mx_successors",
    "mx_ball",
    "mx_isometry_check",
    "f2_ball",
    "MX_ALPHABET",
]

MX_ALPHABET = ("a", "b", "c", "d", "e")
_MX_SET = frozenset(MX_ALPHABET)


@dataclass(frozen=True)
class MembershipOracle:
    """A decidable nonempty proper subset X of the naturals.

    Kinds: ``finite`` (an explicit set), ``cofinite`` (complement of an
    explicit set), ``periodic`` (n in X iff n >= threshold and
    n mod period lands in the residue set), and ``evens``.
    """

    kind: str
    members: frozenset[int] = frozenset()
    threshold: int = 0
    period: int = 1
    residues: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind in ("finite", "cofinite"):
            if not self.members:
                raise ValueError(f"{self.kind} oracle needs a nonempty set")
            if any(n < 0 for n in self.members):
                raise ValueError("set elements must be natural numbers")
        elif self.kind == "periodic":
            if self.threshold < 0 or self.period < 1:
                raise ValueError("periodic oracle needs threshold >= 0 and period >= 1")
            if not self.residues:
                raise ValueError("periodic oracle needs at least one residue")
            if not all(0 <= r < self.period for r in self.residues):
                raise ValueError("residues must lie in [0, period)")
            if self.threshold == 0 and len(self.residues) == self.period:
                raise ValueError("oracle describes all of the naturals, not a proper subset")
        elif self.kind != "evens":
            raise ValueError(f"unknown oracle kind {self.kind!r}")

    def __call__(self, n: int) -> bool:
        if n < 0:
            raise ValueError("membership is defined on natural numbers")
        if self.kind == "finite":
            return n in self.members
        if self.kind == "cofinite":
            return n not in self.members
        if self.kind == "periodic":
            return n >= self.threshold and (n % self.period) in self.residues
        return n % 2 == 0

    def spec(self) -> str:
        """The canonical CLI spelling of this oracle."""
        if self.kind == "evens":
            return "evens"
        if self.kind == "periodic":
            rs = ",".join(str(r) for r in sorted(self.residues))
            return f"periodic:t={self.threshold},p={self.period},r={rs}"
        return f"{self.kind}:" + ",".join(str(n) for n in sorted(self.members))


def parse_oracle(text: str) -> MembershipOracle:
    """Parse `finite:1,3,5` | `cofinite:0,2` | `periodic:t=4,p=3,r=0,2` | `evens`."""
    text = text.strip()
    if text == "evens":
        return MembershipOracle("evens")
    kind, sep, rest = text.partition(":")
    if not sep or not rest:
        raise ValueError(f"malformed oracle spec {text!r}")
    if kind in ("finite", "cofinite"):
        try:
            members = frozenset(int(tok) for tok in rest.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed oracle spec {text!r}") from exc
        return MembershipOracle(kind, members=members)
    if kind == "periodic":
        fields: dict[str, list[int]] = {}
        current: list[int] | None = None
        for tok in rest.split(","):
            key, eq, val = tok.partition("=")
            if eq:
                current = fields.setdefault(key, [])
                tok = val
            if current is None:
                raise ValueError(f"malformed oracle spec {text!r}")
            try:
                current.append(int(tok))
            except ValueError as exc:
                raise ValueError(f"malformed oracle spec {text!r}") from exc
        if sorted(fields) != ["p", "r", "t"] or len(fields["t"]) != 1 or len(fields["p"]) != 1:
            raise ValueError(f"periodic oracle needs t=, p=, and r= parts: {text!r}")
        return MembershipOracle(
            "periodic",
            threshold=fields["t"][0],
            period=fields["p"][0],
            residues=frozenset(fields["r"]),
        )
    raise ValueError(f"unknown oracle kind {kind!r}")


def _closing_factors(word: Word, closer: str):
    """Yield (start, i) for every factor a b^i <closer> of the word."""
    n = len(word)
    for k in range(n):
        if word[k] != "a":
            continue
        j = k + 1
        while j < n and word[j] == "b":
            j += 1
        if j < n and word[j] == closer:
            yield k, j - k - 1


@dataclass(frozen=True)
class MxRuleOracle(RuleOracle):
    """Rewriting rules of the membership-oracle family, served on demand."""

    oracle: MembershipOracle

    def _replacement(self, i: int) -> str:
        return "d" if self.oracle(i) else "e"

    def leftmost(self, word: Word) -> RuleInstance | None:
        for start, i in _closing_factors(word, "c"):
            old = word[start : start + i + 2]
            return RuleInstance(start, old, old[:-1] + (self._replacement(i),))
        return None

    def applicable(self, word: Word) -> list[RuleInstance]:
        instances = []
        for start, i in _closing_factors(word, "c"):
            old = word[start : start + i + 2]
            instances.append(RuleInstance(start, old, old[:-1] + (self._replacement(i),)))
        for closer in ("d", "e"):
            for start, i in _closing_factors(word, closer):
                if self._replacement(i) != closer:
                    continue  # that relation instance does not exist for this X
                old = word[start : start + i + 2]
                instances.append(RuleInstance(start, old, old[:-1] + ("c",)))
        instances.sort(key=lambda inst: (inst.start, inst.old))
        return instances


def mx_presentation(oracle: MembershipOracle) -> Presentation:
    """The oracle-backed presentation; confluent, with a tree Cayley graph."""
    return Presentation(
        MX_ALPHABET,
        oracle=MxRuleOracle(oracle),
        confluent=True,
        cayley_tree=True,
        name=f"mx({oracle.spec()})",
    )


def mx_normal_form(
    w: Word, X: MembershipOracle, query_log: list[int] | None = None
) -> Word:
    """Normal form by one left-to-right scan.

    Each c either closes a pending a b^i factor (one oracle query at
    unary weight i, recorded in ``query_log`` when given) or is copied.
    The total logged weight never exceeds |w| because the queried b-runs
    are disjoint factors of w.
    """
    check_word(w, _MX_SET)
    out: list[str] = []
    for ch in w:
        if ch == "c":
            k = len(out)
            while k > 0 and out[k - 1] == "b":
                k -= 1
            if k > 0 and out[k - 1] == "a":
                i = len(out) - k
                if query_log is not None:
                    query_log.append(i)
                out.append("d" if X(i) else "e")
                continue
        out.append(ch)
    return tuple(out)


def is_mx_normal_form(w: Word) -> bool:
    """No factor a b^i c; this does not depend on the oracle."""
    check_word(w, _MX_SET)
    return next(_closing_factors(w, "c"), None) is None


def mx_word_problem(u: Word, v: Word, X: MembershipOracle) -> bool:
    """Equality in the monoid, decided through normal forms."""
    return mx_normal_form(u, X) == mx_normal_form(v, X)


def mx_successors(u: Word) -> list[Word]:
    """The distinct products u*s over the generators, in generator order.

    A normal form ending in a b^i loses its c-child (u*c collapses onto
    u*d or u*e), leaving 4 successors; every other normal form has 5.
    """
    if not is_mx_normal_form(u):
        raise ValueError("successor rules apply to normal forms only")
    k = len(u)
    while k > 0 and u[k - 1] == "b":
        k -= 1
    if k > 0 and u[k - 1] == "a":
        return [u + (s,) for s in ("a", "b", "d", "e")]
    return [u + (s,) for s in MX_ALPHABET]


def mx_ball(X: MembershipOracle, L: int, vertex_budget: int = 10**6) -> CayleyBall:
    """The radius-L ball, built layer by layer from the successor rules.

    Vertex ids follow successor order, which mentions only a, b, d, e
    branching, so the id assignment is identical for every oracle.  All
    five generator edges are present at each non-frontier vertex; the
    c-edge of a vertex ending in a b^i points at its d- or e-child
    according to the oracle, which is the only X-dependence.
    """
    if L < 0:
        raise ValueError("radius must be non-negative")
    p = mx_presentation(X)
    words: list[Word] = [()]
    lengths: list[int] = [0]
    index: dict[Word, int] = {(): 0}
    edges: list[Edge] = []
    vid = 0
    while vid < len(words):
        if lengths[vid] < L:
            u = words[vid]
            succs = mx_successors(u)
            for s in succs:
                if len(words) >= vertex_budget:
                    raise BudgetExceededError(
                        f"ball enumeration exceeded the vertex budget of {vertex_budget}"
                    )
                index[s] = len(words)
                words.append(s)
                lengths.append(lengths[vid] + 1)
            if len(succs) == 4:
                i = len(u) - 1
                while u[i] == "b":
                    i -= 1
                c_target = u + (("d",) if X(len(u) - 1 - i) else ("e",))
                for s in MX_ALPHABET:
                    target = c_target if s == "c" else u + (s,)
                    edges.append(Edge(vid, s, index[target]))
            else:
                for s in MX_ALPHABET:
                    edges.append(Edge(vid, s, index[u + (s,)]))
        vid += 1
    ball = CayleyBall(
        presentation=p,
        radius=L,
        words=tuple(words),
        lengths=tuple(lengths),
        edges=tuple(edges),
        certified=True,
        tree_certified=False,
        frontier=frozenset(i for i, ln in enumerate(lengths) if ln == L),
    )
    if not _is_rooted_forest(ball):
        raise RuntimeError("successor rules produced a non-tree ball")
    ball.tree_certified = True
    return ball


@dataclass(frozen=True)
class IsometryReport:
    """Comparison of two family balls over the shared normal-form vertices."""

    verdict: str  # "pass" | "counterexample"
    labels_differ: bool
    witness: str | None = None

    def json_dict(self) -> dict:
        out: dict = {"verdict": self.verdict, "labels_differ": self.labels_differ}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def mx_isometry_check(X: MembershipOracle, Y: MembershipOracle, L: int) -> IsometryReport:
    """Is the identity on normal forms an isomorphism of the unlabeled balls?

    It always should be (the tree shape ignores the oracle); the check
    rebuilds both balls and compares.  The labeled graphs are compared
    alongside: they differ exactly when the oracles disagree somewhere
    in the window [0, L-2] reachable inside the ball.
    """
    bx = mx_ball(X, L)
    by = mx_ball(Y, L)
    labels_differ = set(bx.edges) != set(by.edges)
    if bx.words != by.words:
        return IsometryReport("counterexample", labels_differ, witness="vertex sets differ")
    ex = {(e.src, e.dst) for e in bx.edges}
    ey = {(e.src, e.dst) for e in by.edges}
    if ex != ey:
        src, dst = min(ex.symmetric_difference(ey))
        return IsometryReport(
            "counterexample", labels_differ, witness=f"edge {src} -> {dst} unmatched"
        )
    return IsometryReport("pass", labels_differ)


def f2_ball(L: int, vertex_budget: int = 10**6) -> CayleyBall:
    """The radius-L ball of the free group on two generators (as a monoid ball)."""
    return enumerate_ball(builtin("f2_group"), L, vertex_budget=vertex_budget)
