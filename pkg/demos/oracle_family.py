"""The membership-oracle family M(X): one tree, many monoids.

Every decidable set X of naturals yields a 5-generator monoid whose
right Cayley graph is the same rooted tree; only the c-edge labels
depend on X.  The word problem is exactly unary membership in X, so
geometrically indistinguishable monoids can have word problems of
wildly different difficulty.
"""

from monoidgeo import (
    check_bushy_hypotheses,
    f2_ball,
    mx_ball,
    mx_isometry_check,
    mx_normal_form,
    mx_word_problem,
    parse_oracle,
    undirected_view,
)
from monoidgeo.words import format_word

evens = parse_oracle("evens")
one = parse_oracle("finite:1")

print("== the word problem is unary membership ==")
for n in range(4):
    probe = ("a",) + ("b",) * n + ("c",)
    target = ("a",) + ("b",) * n + ("d",)
    eq = mx_word_problem(probe, target, evens)
    print(f"  a b^{n} c = a b^{n} d in M(evens)?  {eq}   (is {n} even? {evens(n)})")

print()
print("== normal forms by a single scan ==")
for text in ("abc", "abcabbbc", "cab"):
    w = tuple(text)
    print(f"  {text:10} ->  {format_word(mx_normal_form(w, evens))}")

print()
print("== the tree does not see the oracle ==")
for L in (1, 2, 3):
    bx, by = mx_ball(one, L), mx_ball(evens, L)
    print(f"  L={L}: |ball(finite:1)| = {len(bx.words)}, |ball(evens)| = {len(by.words)}")
report = mx_isometry_check(one, evens, 6)
print(f"  isometry check at L=6: {report.json_dict()}")
print("  (pass: identical unlabeled graphs; labels_differ: the c-edges do)")

print()
print("== both comparison trees are bushy ==")
mx6 = undirected_view(mx_ball(evens, 6))
f26 = undirected_view(f2_ball(6))
print(f"  M(X) ball:      {check_bushy_hypotheses(mx6, degree_cap=6).json_dict()}")
print(f"  free-group ball: {check_bushy_hypotheses(f26, degree_cap=4).json_dict()}")
print("Bushy trees of bounded valency are all quasi-isometric, which is")
print("what lets one geometry carry uncountably many monoids.")
