"""The directed 2-complex K_n over a ball, and homotopy between paths.

K_n glues a 2-cell onto every pair of distinct parallel paths of total
length at most n.  2-paths rewrite one path into another cell by cell;
the minimum number of cells is the two-dimensional area.  On the free
commutative monoid the picture is the familiar one: commuting a past b
costs one square, and transporting a a b b to b b a a costs four.
"""

from monoidgeo import (
    build_kn,
    builtin,
    check_qsc,
    enumerate_ball,
    gamma_sample,
    homotopy_search,
    path_from_labels,
)

grid = enumerate_ball(builtin("free_commutative_2"), 10)
K4 = build_kn(grid, 4)
origin = grid.vertex_id(())

print("== cells at the origin ==")
for cell in K4.cells_from(origin):
    print(f"  {''.join(cell.top.labels())} => {''.join(cell.bottom.labels())}")

print()
print("== homotopy area ==")
for top, bottom in (("ab", "ba"), ("aabb", "bbaa")):
    res = homotopy_search(
        K4,
        path_from_labels(grid, origin, tuple(top)),
        path_from_labels(grid, origin, tuple(bottom)),
    )
    print(f"  A({top}, {bottom}) = {res.area}  (certified={res.area_certified})")

print()
print("== growth of the area, gamma(i) ==")
table = gamma_sample(K4, 8, (origin,))
print(" ", ", ".join(f"gamma({n})={v}" for n, v in sorted(table.entries.items())))

print()
print("== quasi-simple connectivity ==")
# n must reach max |u|+|v| over the relations; for ab = ba that is 4
for n in (4, 2):
    report = check_qsc(grid, n, 4)
    line = f"  K_{n}: {report.verdict}"
    if report.witness:
        p, q, root = report.witness
        line += f"  (stuck pair {''.join(p)} vs {''.join(q)} at vertex {root})"
    print(line)
print("K_2 has no cells at all here, so even the unit square is a hole.")
