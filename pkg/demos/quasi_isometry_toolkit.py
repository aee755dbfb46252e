"""Quasi-isometry machinery on finite balls: embeddings, inverses, bounds.

The workhorse is the quasi-inverse construction: from an embedding
g with quasi-dense image it produces f going the other way, with
explicitly computable constants, and verifies the four conclusions
(both composites move points a bounded amount, gfg = g, fgf = f).
"""

from monoidgeo import (
    QiSpec,
    VertexMap,
    f2_ball,
    m_bound,
    quasi_inverse,
    verify_qi_embedding,
)

ball = f2_ball(2)
print(f"free-group ball L=2: {ball.vertex_count} vertices")

print()
print("== a map that folds one branch onto the root ==")
targets = list(range(ball.vertex_count))
targets[4] = 0  # vertex 4 is a depth-1 vertex; send it to the identity
g = VertexMap(tuple(targets))
spec_prime = QiSpec(1, 2, 1)

report = verify_qi_embedding(ball, ball, g, spec_prime)
print(f"  embedding check: {report.json_dict()}")
print("  (no violations; pairs whose distance the ball cannot resolve are")
print("   skipped, so the verdict is inconclusive rather than pass)")

f, spec = quasi_inverse(ball, ball, g, spec_prime)
print(f"  quasi-inverse constants: {spec.json_dict()}")
print(f"  f routes the folded vertex back: f(4) = {f[4]}")
print("  (sigma = max((eps'+2mu')/lam', lam'(eps'+2mu')) drives eps; mu is")
print("   max(mu', eps'+1), so even a tame fold costs an additive bump)")

print()
print("== identity is the degenerate case ==")
ident = VertexMap.identity(ball.vertex_count)
f, spec = quasi_inverse(ball, ball, ident, QiSpec(1, 1, 0))
print(f"  constants for the identity: {spec.json_dict()}")

print()
print("== cell-size bound for transported 2-complexes ==")
for lam, eps, mu, n in ((2, 1, 1, 3), (1, 1, 0, 5), (3, 2, 1, 10)):
    m = m_bound(QiSpec(lam, eps, mu), n)
    print(f"  lam={lam} eps={eps} mu={mu} n={n}  ->  m = {m}")
print("A (lam, eps)-embedding with mu-dense image carries K_n cells into")
print("K_m cells; m is the price of the distortion.")
