"""Quasi-isometry checks between finite semimetric spaces (Cayley balls).

A map f: X -> Y is a (lam, eps)-quasi-isometric embedding when

    (1/lam) d_X(x, x') - eps  <=  d_Y(f x, f x')  <=  lam d_X(x, x') + eps

for all x, x', with distances valued in [0, oo]: an infinite d_X makes
the upper bound vacuous and the lower bound forces d_Y to be infinite.
A subset Z of Y is mu-quasi-dense when every y has some z in Z with
d(y, z) <= mu and d(z, y) <= mu; a quasi-isometry is an embedding with
mu-quasi-dense image.  Such a map admits a quasi-inverse with explicit
constants, computed here by the textbook construction: pick preimages on
the image and route every other point through a nearby image point.

All verdicts use exact rational arithmetic, and unresolved ball
distances never silently satisfy an inequality: affected pairs are
skipped and counted, downgrading "pass" to "inconclusive".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cayley import CayleyBall, ExtendedDistance, UndirectedView, distance
from .rewriting import GrowthTable

__all__ = [
    "QiError",
    "QiSpec",
    "VertexMap",
    "EmbeddingReport",
    "DensityReport",
    "TypeReport",
    "BushyReport",
    "parse_vertex_map",
    "serialize_vertex_map",
    "verify_qi_embedding",
    "check_quasi_dense",
    "quasi_inverse",
    "quasi_inverse_constants",
    "m_bound",
    "type_leq",
    "search_type_witness",
    "check_bushy_hypotheses",
]


class QiError(ValueError):
    """A quasi-isometry operation received input violating its contract."""


Rational = Fraction | int


@dataclass(frozen=True)
class QiSpec:
    """Constants (lam, eps, mu) of a quasi-isometry claim.

    lam >= 1 scales, eps > 0 shifts the embedding inequalities, mu >= 0
    bounds the density of the image.  All finite rationals.
    """

    lam: Fraction
    eps: Fraction
    mu: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "mu", Fraction(self.mu))
        if self.lam < 1:
            raise QiError("lam must be at least 1")
        if self.eps <= 0:
            raise QiError("eps must be positive")
        if self.mu < 0:
            raise QiError("mu must be non-negative")

    def json_dict(self) -> dict:
        return {"lambda": str(self.lam), "eps": str(self.eps), "mu": str(self.mu)}


@dataclass(frozen=True)
class VertexMap:
    """A total map between ball vertex sets, as a target per source id."""

    targets: tuple[int, ...]

    def __getitem__(self, src: int) -> int:
        return self.targets[src]

    def __len__(self) -> int:
        return len(self.targets)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.targets)))

    def compose(self, then: "VertexMap") -> "VertexMap":
        """The map x -> then[self[x]]."""
        return VertexMap(tuple(then[t] for t in self.targets))

    @staticmethod
    def identity(n: int) -> "VertexMap":
        return VertexMap(tuple(range(n)))


def _require_map(f: VertexMap, X: CayleyBall, Y: CayleyBall, name: str = "map") -> None:
    if len(f) != X.vertex_count:
        raise QiError(
            f"{name} is not total: {len(f)} entries for {X.vertex_count} source vertices"
        )
    for src, dst in enumerate(f.targets):
        if not (0 <= dst < Y.vertex_count):
            raise QiError(f"{name} sends vertex {src} to unknown target {dst}")


def parse_vertex_map(text: str) -> VertexMap:
    """Parse `src -> dst` lines (comments with #, any order, no gaps)."""
    table: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise QiError(f"line {lineno}: expected 'src -> dst'")
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise QiError(f"line {lineno}: vertex ids must be integers") from exc
        if src in table:
            raise QiError(f"line {lineno}: duplicate source {src}")
        table[src] = dst
    if sorted(table) != list(range(len(table))):
        raise QiError("vertex map sources must be exactly 0..n-1")
    return VertexMap(tuple(table[i] for i in range(len(table))))


def serialize_vertex_map(f: VertexMap) -> str:
    return "\n".join(f"{src} -> {dst}" for src, dst in enumerate(f.targets)) + "\n"


@dataclass(frozen=True)
class EmbeddingReport:
    verdict: str  # "pass" | "counterexample" | "inconclusive"
    witness: tuple[int, int] | None
    checked: int
    skipped: int

    def json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
            "skipped": self.skipped,
        }


def _upper_violated(dx: ExtendedDistance, dy: ExtendedDistance, lam: Fraction, eps: Fraction) -> bool:
    # d_Y <= lam * d_X + eps; an infinite right side is never exceeded.
    if dx.is_infinite:
        return False
    if dy.is_infinite:
        return True
    assert dx.value is not None and dy.value is not None
    return Fraction(dy.value) > lam * dx.value + eps


def _lower_violated(dx: ExtendedDistance, dy: ExtendedDistance, lam: Fraction, eps: Fraction) -> bool:
    # (1/lam) d_X - eps <= d_Y, rearranged to d_X <= lam * d_Y + lam * eps
    # so that no subtraction from infinity is ever formed.
    if dy.is_infinite:
        return False
    if dx.is_infinite:
        return True
    assert dx.value is not None and dy.value is not None
    return Fraction(dx.value) > lam * dy.value + lam * eps


def verify_qi_embedding(
    X: CayleyBall, Y: CayleyBall, f: VertexMap, spec: QiSpec
) -> EmbeddingReport:
    """Check the embedding inequalities over every ordered source pair.

    Pairs whose source or image distance is unresolved are skipped and
    counted, except when both queries are literally the same (same ball,
    same ordered pair): whatever the unknown value is, it satisfies its
    own inequalities, so identity-like maps pass in full.
    """
    _require_map(f, X, Y)
    lam, eps = spec.lam, spec.eps
    checked = 0
    skipped = 0
    for x1 in range(X.vertex_count):
        for x2 in range(X.vertex_count):
            y1, y2 = f[x1], f[x2]
            if X is Y and (x1, x2) == (y1, y2):
                checked += 1
                continue
            dx = distance(X, x1, x2)
            dy = distance(Y, y1, y2)
            if dx.unresolved or dy.unresolved:
                skipped += 1
                continue
            if _upper_violated(dx, dy, lam, eps) or _lower_violated(dx, dy, lam, eps):
                return EmbeddingReport("counterexample", (x1, x2), checked, skipped)
            checked += 1
    verdict = "inconclusive" if skipped else "pass"
    return EmbeddingReport(verdict, None, checked, skipped)


@dataclass(frozen=True)
class DensityReport:
    verdict: str  # "pass" | "counterexample" | "inconclusive"
    witness: int | None
    undecided: int

    def json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "skipped": self.undecided,
        }


def _within(d: ExtendedDistance, mu: Fraction, certified: bool) -> str:
    """Classify d <= mu as 'yes', 'no', or 'unknown' under ball semantics."""
    if d.value is not None:
        return "yes" if Fraction(d.value) <= mu else "no"
    if d.is_infinite:
        return "no"
    # Unresolved on a certified ball means d > bound, which settles the
    # comparison whenever bound >= mu.  A best-effort ball may simply be
    # missing edges, so its misses decide nothing.
    if certified and d.bound >= mu:
        return "no"
    return "unknown"


def check_quasi_dense(
    Y: CayleyBall,
    image: Iterable[int],
    mu: Rational,
    subset: Sequence[int] | None = None,
) -> DensityReport:
    """Is every vertex (of ``subset``, default all) mu-close to the image both ways?"""
    mu = Fraction(mu)
    if mu < 0:
        raise QiError("mu must be non-negative")
    candidates = sorted(set(image))
    for z in candidates:
        if not (0 <= z < Y.vertex_count):
            raise QiError(f"image vertex {z} is not in the ball")
    targets = range(Y.vertex_count) if subset is None else subset
    undecided = 0
    for y in targets:
        satisfied = False
        any_unknown = False
        for z in candidates:
            a = _within(distance(Y, y, z), mu, Y.certified)
            b = _within(distance(Y, z, y), mu, Y.certified)
            if a == "yes" and b == "yes":
                satisfied = True
                break
            if a != "no" and b != "no":
                any_unknown = True
        if satisfied:
            continue
        if not any_unknown:
            return DensityReport("counterexample", y, undecided)
        undecided += 1
    verdict = "inconclusive" if undecided else "pass"
    return DensityReport(verdict, None, undecided)


def quasi_inverse_constants(spec_prime: QiSpec) -> tuple[Fraction, QiSpec]:
    """Constants of the constructed quasi-inverse, with the intermediate sigma.

    sigma = max((eps' + 2 mu') / lam', lam' (eps' + 2 mu')), and the
    inverse is a (lam', max(eps', sigma), max(mu', eps' + 1))-quasi-isometry.
    """
    lam, eps, mu = spec_prime.lam, spec_prime.eps, spec_prime.mu
    sigma = max((eps + 2 * mu) / lam, lam * (eps + 2 * mu))
    return sigma, QiSpec(lam, max(eps, sigma), max(mu, eps + 1))


def _exact_leq(d: ExtendedDistance, mu: Fraction) -> bool:
    return d.value is not None and Fraction(d.value) <= mu


def quasi_inverse(
    X: CayleyBall, Y: CayleyBall, g: VertexMap, spec_prime: QiSpec
) -> tuple[VertexMap, QiSpec]:
    """Construct a quasi-inverse f: X -> Y of g: Y -> X, with constants.

    g must first verify as a quasi-isometric embedding (no violations;
    skipped pairs are tolerated).  On the image of g, f picks the
    smallest preimage; off the image, each x is routed through the
    smallest image vertex within mu' of x in both directions; if some x
    has none, the ball is too small for the construction and this raises
    rather than degrade silently.  The four quasi-inverse conclusions
    (both composites move points at most mu resp. mu', g f g = g,
    f g f = f) are verified exhaustively before returning.
    """
    _require_map(g, Y, X, name="g")
    report = verify_qi_embedding(Y, X, g, spec_prime)
    if report.verdict == "counterexample":
        raise QiError(
            f"g is not a ({spec_prime.lam},{spec_prime.eps})-quasi-isometric "
            f"embedding: violated at pair {report.witness}"
        )
    mu_prime = spec_prime.mu
    sigma, spec = quasi_inverse_constants(spec_prime)

    smallest_preimage: dict[int, int] = {}
    for y in range(Y.vertex_count - 1, -1, -1):
        smallest_preimage[g[y]] = y
    image = sorted(smallest_preimage)

    targets = []
    for x in range(X.vertex_count):
        if x in smallest_preimage:
            targets.append(smallest_preimage[x])
            continue
        for z in image:
            if _exact_leq(distance(X, x, z), mu_prime) and _exact_leq(
                distance(X, z, x), mu_prime
            ):
                targets.append(smallest_preimage[z])
                break
        else:
            raise QiError(
                f"vertex {x} has no image point within {mu_prime} in both "
                "directions; the ball is too small for the construction"
            )
    f = VertexMap(tuple(targets))

    def moved_at_most(ball: CayleyBall, a: int, b: int, limit: Fraction, claim: str) -> None:
        if a == b:
            return
        for d in (distance(ball, a, b), distance(ball, b, a)):
            if d.unresolved:
                raise QiError(f"cannot verify {claim}: unresolved distance ({a}, {b})")
            if not _exact_leq(d, limit):
                raise QiError(f"constructed map violates {claim} at ({a}, {b})")

    for y in range(Y.vertex_count):
        z = f[g[y]]
        moved_at_most(Y, y, z, spec.mu, "the image displacement bound")
        if g[z] != g[y]:
            raise QiError(f"g f g differs from g at vertex {y}")
    for x in range(X.vertex_count):
        moved_at_most(X, x, g[f[x]], mu_prime, "the source displacement bound")
        if f[g[f[x]]] != f[x]:
            raise QiError(f"f g f differs from f at vertex {x}")
    return f, spec


def m_bound(spec: QiSpec, n: int) -> int:
    """Cell-size bound max(lam^2 + (lam+1) eps + 2 mu + 1, (lam+eps) n), rounded up."""
    if n < 0:
        raise QiError("n must be non-negative")
    lam, eps, mu = spec.lam, spec.eps, spec.mu
    value = max(lam * lam + (lam + 1) * eps + 2 * mu + 1, (lam + eps) * n)
    return math.ceil(value)


@dataclass(frozen=True)
class TypeReport:
    verdict: str  # "holds" | "violation"
    witness: int | None
    checked: int

    def json_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness, "checked": self.checked}


def type_leq(f: GrowthTable, g: GrowthTable, a: int) -> TypeReport:
    """Pointwise check of f(j) <= a g(a j) + a j on the overlapping domain.

    Entries marked unknown are excluded from the checkable range; an inf
    on the left holds only against an inf on the right.  Raises when no
    j is checkable at all.
    """
    if a < 1:
        raise QiError("the witness a must be at least 1")
    checked = 0
    first_violation: int | None = None
    for j in sorted(f.entries):
        fj = f.entries[j]
        gj = g.entries.get(a * j)
        if fj == "unknown" or gj is None or gj == "unknown":
            continue
        checked += 1
        if gj == "inf":
            continue
        if fj == "inf" or fj > a * gj + a * j:
            first_violation = j
            break
    if checked == 0:
        raise QiError("empty checkable range: no j with f(j) and g(a j) both known")
    if first_violation is not None:
        return TypeReport("violation", first_violation, checked)
    return TypeReport("holds", None, checked)


def search_type_witness(f: GrowthTable, g: GrowthTable, a_max: int) -> int | None:
    """Smallest a <= a_max making type_leq hold, or None."""
    for a in range(1, a_max + 1):
        try:
            if type_leq(f, g, a).verdict == "holds":
                return a
        except QiError:
            continue
    return None


@dataclass(frozen=True)
class BushyReport:
    verdict: str  # "pass" | "fail"
    witness: int | None
    interior_degrees: tuple[int, ...]

    def json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "degrees": sorted(set(self.interior_degrees)),
        }


def check_bushy_hypotheses(
    T: UndirectedView, degree_floor: int = 3, degree_cap: int | None = None
) -> BushyReport:
    """Tree with all interior degrees in [degree_floor, degree_cap]?

    The input must be a tree (no loops, connected, |E| = |V| - 1); that
    is a hard precondition, violated inputs raise.  Only interior
    vertices are assessed: a frontier vertex's missing neighbours would
    make its degree meaningless.
    """
    if degree_cap is None:
        raise QiError("a degree cap is required (bounded-degree hypothesis)")
    if degree_cap < degree_floor:
        raise QiError("degree cap below degree floor")
    if T.loops:
        raise QiError("input graph is not a tree: it has a self-loop")
    if len(T.edge_list) != T.vertex_count - 1 or not _connected(T):
        raise QiError("input graph is not a tree")
    degrees = tuple(T.degree(v) for v in sorted(T.interior))
    for v, deg in zip(sorted(T.interior), degrees):
        if not degree_floor <= deg <= degree_cap:
            return BushyReport("fail", v, degrees)
    return BushyReport("pass", None, degrees)


def _connected(T: UndirectedView) -> bool:
    if T.vertex_count == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in T.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == T.vertex_count
