"""Walk through string rewriting: normal forms, equality areas, Dehn sampling.

The bicyclic monoid <a, b | ab = 1> is the running example: it is
confluent, so normal forms decide equality, yet the area of a proof can
still grow with word length.
"""

from monoidgeo import (
    Status,
    builtin,
    dehn_sample,
    equality_search,
    normal_form_confluent,
)
from monoidgeo.words import format_word, parse_word

bicyclic = builtin("bicyclic")

print("== normal forms ==")
for text in ("a b", "a a b b", "b a a b", "b b a"):
    w = parse_word(text)
    nf = normal_form_confluent(w, bicyclic)
    print(f"  {format_word(w):12} ->  {format_word(nf)}")

print()
print("== equality search with exact area ==")
pairs = [("a a b b", "1"), ("b a", "a b"), ("a a b", "a")]
for left, right in pairs:
    verdict = equality_search(parse_word(left), parse_word(right), bicyclic, depth_bound=8)
    if verdict.status is Status.EQUAL:
        print(f"  {left} = {right}   (area {verdict.area})")
    else:
        print(f"  {left} != {right}  ({verdict.status.value})")

print()
print("== Dehn function samples ==")
table = dehn_sample(bicyclic, 6)
print("  bicyclic:", ", ".join(f"d({n})={v}" for n, v in sorted(table.entries.items())))
free2 = dehn_sample(builtin("free(2)"), 6)
print("  free(2): ", ", ".join(f"d({n})={v}" for n, v in sorted(free2.entries.items())))
print()
print("A deeper search bound turns Unknown rows into numbers; the CSV form")
print("of any table round-trips through GrowthTable.to_csv / from_csv.")
