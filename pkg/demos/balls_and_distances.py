"""Cayley balls and the directed distance, with its exactness bookkeeping.

A ball of radius L only certifies shortest paths up to L - |x|, so every
distance value carries an exactness flag and a bound.  Trees are the
exception: their structure certifies unreachability, so "infinite" can
be exact even in a finite ball.
"""

from monoidgeo import (
    builtin,
    check_quasimetric,
    distance,
    enumerate_ball,
    schutzenberger_graph,
    strongly_connected_components,
)
from monoidgeo.words import format_word

bicyclic = enumerate_ball(builtin("bicyclic"), 4)
print(f"bicyclic ball L=4: {bicyclic.vertex_count} vertices, certified={bicyclic.certified}")

print()
print("== distances are directed and partially resolved ==")
ident = bicyclic.vertex_id(())
b = bicyclic.vertex_id(("b",))
for x, y in ((ident, b), (b, ident)):
    d = distance(bicyclic, x, y)
    src, dst = format_word(bicyclic.words[x]), format_word(bicyclic.words[y])
    print(f"  d({src}, {dst}) = {d.json_dict()}")
print("  (b reaches 1 by no word: ab=1 cannot cancel a leading b; the ball")
print("   alone cannot certify that, hence unresolved rather than infinite)")

ray = enumerate_ball(builtin("free(1)"), 4)
d = distance(ray, ray.vertex_id(("a", "a")), ray.vertex_id(("a",)))
print(f"  on the free(1) tree, d(aa, a) = {d.json_dict()}  (exact infinity)")

print()
print("== the quasi-metric test d(x,y) <= lam d(y,x) + mu ==")
report = check_quasimetric(ray, 1, 0)
print(f"  free(1): {report.json_dict()}")
print("  (any monoid with one-way arrows fails: the ray is not quasi-metric)")

print()
print("== R-classes are the strongly connected components ==")
for comp in strongly_connected_components(bicyclic):
    words = ", ".join(format_word(bicyclic.words[v]) for v in comp.vertices)
    mark = " (approximate: touches the frontier)" if comp.approximate else ""
    print(f"  {{{words}}}{mark}")

graph = schutzenberger_graph(bicyclic, ident)
print(f"the identity's Schutzenberger graph has {len(graph.vertices)} vertices,")
print(f"{len(graph.edges)} edges; it is the induced subgraph on the a-powers.")
