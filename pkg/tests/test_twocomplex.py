from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoidgeo.cayley import enumerate_ball
from monoidgeo.presentation import builtin
from monoidgeo.rewriting import INF, UNKNOWN, Status, equality_search
from monoidgeo.twocomplex import (
    DirectedPath,
    TwoCell,
    build_kn,
    check_qsc,
    gamma_sample,
    homotopy_search,
    path_from_labels,
    twopath_to_json_list,
)

GRID = builtin("free_commutative_2")

_cache: dict = {}


def grid_ball(L):
    key = ("ball", L)
    if key not in _cache:
        _cache[key] = enumerate_ball(GRID, L)
    return _cache[key]


def grid_kn(L, n):
    key = ("kn", L, n)
    if key not in _cache:
        _cache[key] = build_kn(grid_ball(L), n)
    return _cache[key]


# ------------------------------------------------------------ 1-paths


def test_path_from_labels_and_accessors():
    b = grid_ball(3)
    p = path_from_labels(b, 0, ("a", "b"))
    assert p.start == 0
    assert p.labels() == ("a", "b")
    assert len(p) == 2
    assert p.end == b.vertex_id(("b", "a"))
    assert p.vertices()[0] == 0


def test_path_from_labels_rejects_missing_edge():
    b = enumerate_ball(builtin("free(1)"), 2)
    with pytest.raises(ValueError):
        path_from_labels(b, 0, ("b",))
    with pytest.raises(ValueError):
        path_from_labels(b, 2, ("a",))  # frontier vertex has no out-edge


def test_path_validation_rejects_non_composing_edges():
    b = grid_ball(3)
    e1 = next(e for e in b.edges if e.src == 0 and e.label == "a")
    e2 = next(e for e in b.edges if e.src == 0 and e.label == "b")
    with pytest.raises(ValueError):
        DirectedPath(0, (e1, e2))


def test_subpath_and_splice():
    b = grid_ball(4)
    p = path_from_labels(b, 0, ("a", "b", "a"))
    mid = p.subpath(1, 2)
    assert mid.labels() == ("b",)
    replacement = path_from_labels(b, mid.start, ("b",))
    assert p.splice(1, 2, replacement).labels() == ("a", "b", "a")


def test_empty_path_is_allowed():
    p = DirectedPath(0, ())
    assert len(p) == 0 and p.end == 0


# -------------------------------------------------------------- cells


def test_cell_requires_parallel_distinct():
    b = grid_ball(3)
    ab = path_from_labels(b, 0, ("a", "b"))
    ba = path_from_labels(b, 0, ("b", "a"))
    a = path_from_labels(b, 0, ("a",))
    cell = TwoCell(ab, ba)
    assert cell.total_length == 4
    assert cell.inverse() == TwoCell(ba, ab)
    with pytest.raises(ValueError):
        TwoCell(ab, a)
    with pytest.raises(ValueError):
        TwoCell(ab, ab)


def test_kn_requires_n_at_least_two():
    with pytest.raises(ValueError):
        build_kn(grid_ball(3), 1)


def test_free_monoid_has_no_cells():
    K = build_kn(enumerate_ball(builtin("free(2)"), 3), 4)
    for v in range(K.ball.vertex_count):
        assert K.cells_from(v) == []


def test_grid_cells_from_origin():
    K = grid_kn(3, 4)
    cells = K.cells_from(0)
    boundaries = [(c.top.labels(), c.bottom.labels()) for c in cells]
    assert boundaries == [(("a", "b"), ("b", "a")), (("b", "a"), ("a", "b"))]


def test_bicyclic_unit_cells():
    b = enumerate_ball(builtin("bicyclic"), 2)
    K = build_kn(b, 2)
    cells = K.cells_from(0)
    boundaries = {(c.top.labels(), c.bottom.labels()) for c in cells}
    assert boundaries == {(("a", "b"), ()), ((), ("a", "b"))}


def test_grid_k2_has_no_cells():
    K = grid_kn(4, 2)
    assert all(K.cells_from(v) == [] for v in range(K.ball.vertex_count))


def test_is_cell_matches_enumeration():
    K = grid_kn(4, 4)
    ab = path_from_labels(K.ball, 0, ("a", "b"))
    ba = path_from_labels(K.ball, 0, ("b", "a"))
    assert K.is_cell(ab, ba)
    assert not K.is_cell(ab, ab)


# ------------------------------------------------------------ homotopy


def test_homotopy_identical_paths_area_zero():
    K = grid_kn(4, 4)
    p = path_from_labels(K.ball, 0, ("a", "b"))
    res = homotopy_search(K, p, p)
    assert res.status == "found" and res.area == 0
    assert res.twopath is not None and len(res.twopath) == 0


def test_homotopy_single_cell():
    K = grid_kn(10, 4)
    p = path_from_labels(K.ball, 0, ("a", "b"))
    q = path_from_labels(K.ball, 0, ("b", "a"))
    res = homotopy_search(K, p, q)
    assert res.status == "found"
    assert res.area == 1
    assert res.area_certified


def test_homotopy_commuting_square_area_four():
    K = grid_kn(10, 4)
    p = path_from_labels(K.ball, 0, ("a", "a", "b", "b"))
    q = path_from_labels(K.ball, 0, ("b", "b", "a", "a"))
    res = homotopy_search(K, p, q)
    assert res.status == "found"
    assert res.area == 4
    assert res.area_certified
    tp = res.twopath
    assert tp.top.labels() == ("a", "a", "b", "b")
    assert tp.bottom.labels() == ("b", "b", "a", "a")


def test_homotopy_absent_without_cells():
    K = grid_kn(10, 2)
    p = path_from_labels(K.ball, 0, ("a", "b"))
    q = path_from_labels(K.ball, 0, ("b", "a"))
    res = homotopy_search(K, p, q)
    assert res.status == "absent"


def test_homotopy_requires_parallel_paths():
    K = grid_kn(4, 4)
    p = path_from_labels(K.ball, 0, ("a",))
    q = path_from_labels(K.ball, 0, ("b",))
    with pytest.raises(ValueError):
        homotopy_search(K, p, q)


def test_homotopy_found_but_uncertified_near_frontier():
    # The witness homotopy exists, but boundary clearance cannot certify
    # that no shorter one escapes the window.
    K = grid_kn(4, 4)
    p = path_from_labels(K.ball, 0, ("a", "a", "b", "b"))
    q = path_from_labels(K.ball, 0, ("b", "b", "a", "a"))
    res = homotopy_search(K, p, q)
    assert res.status == "found"
    assert res.area == 4
    assert not res.area_certified


def test_homotopy_inconclusive_on_best_effort_ball():
    # Inverse pairs make two-edge loop cells, so the state space is
    # endless; the budget cuts it off and nothing can be certified.
    b = enumerate_ball(builtin("section4_S"), 2)
    K = build_kn(b, 2)
    top = path_from_labels(b, 0, ("a1", "a2"))
    bottom = path_from_labels(b, 0, ("a3", "a4"))
    assert top.is_parallel_to(bottom)
    res = homotopy_search(K, top, bottom, step_budget=500)
    assert res.status == "inconclusive"


def test_homotopy_on_merged_pair_of_section4():
    b = enumerate_ball(builtin("section4_S"), 2)
    K = build_kn(b, 4)
    top = path_from_labels(b, 0, ("a1", "a2"))
    bottom = path_from_labels(b, 0, ("a3", "a4"))
    res = homotopy_search(K, top, bottom)
    assert res.status == "found"
    assert res.area == 1
    assert not res.area_certified  # best-effort balls never certify


def test_homotopy_steps_stay_parallel():
    K = grid_kn(8, 4)
    p = path_from_labels(K.ball, 0, ("a", "b", "a"))
    q = path_from_labels(K.ball, 0, ("b", "a", "a"))
    res = homotopy_search(K, p, q)
    assert res.status == "found"
    seen = res.twopath.top
    for step in res.twopath.steps:
        nxt = step.bottom()
        assert nxt.is_parallel_to(seen)
        seen = nxt
    assert seen.labels() == q.labels()


def test_twopath_json_shape():
    K = grid_kn(8, 4)
    p = path_from_labels(K.ball, 0, ("a", "b"))
    q = path_from_labels(K.ball, 0, ("b", "a"))
    res = homotopy_search(K, p, q)
    steps = twopath_to_json_list(K.ball, res.twopath)
    assert len(steps) == 1
    (step,) = steps
    assert set(step) == {"prefix", "cell", "suffix"}
    assert step["prefix"] == [] and step["suffix"] == []
    assert set(step["cell"]) == {"top", "bottom"}
    edge_count = len(K.ball.edges)
    for ids in (step["cell"]["top"], step["cell"]["bottom"]):
        assert all(0 <= e < edge_count for e in ids)


# --------------------------------------------------------------- gamma


def test_gamma_small_table():
    K = grid_kn(10, 4)
    table = gamma_sample(K, 4, (0,))
    assert table.entries == {0: 0, 1: 0, 2: 0, 3: 0, 4: 1}


def test_gamma_matches_acceptance_point():
    K = grid_kn(10, 4)
    table = gamma_sample(K, 8, (0,))
    assert table.entries[8] == 4


def test_gamma_reports_inf_without_cells():
    K = grid_kn(10, 2)
    table = gamma_sample(K, 4, (0,))
    assert table.entries == {0: 0, 1: 0, 2: 0, 3: 0, 4: INF}


def test_gamma_rejects_roots_too_near_frontier():
    K = grid_kn(4, 4)
    with pytest.raises(ValueError):
        gamma_sample(K, 4, (K.ball.vertex_id(("a",)),))


def test_gamma_rejects_best_effort_ball():
    b = enumerate_ball(builtin("section4_S"), 2)
    with pytest.raises(ValueError):
        gamma_sample(build_kn(b, 2), 2, (0,))


def test_gamma_unknown_under_tiny_step_budget():
    # Found witnesses survive a zero budget, deeper searches do not.
    K = grid_kn(10, 4)
    table = gamma_sample(K, 6, (0,), step_budget=0)
    assert table.entries[4] == 1
    assert table.entries[6] == UNKNOWN


# ----------------------------------------------------------------- qsc


def test_qsc_pass_on_grid():
    report = check_qsc(grid_ball(10), 4, 6)
    assert report.verdict == "pass"
    assert report.witness is None
    assert report.inconclusive_pairs == 0
    assert report.pairs_checked > 0


def test_qsc_fail_witness():
    report = check_qsc(grid_ball(10), 2, 6)
    assert report.verdict == "fail"
    assert report.witness == (("a", "b"), ("b", "a"), 0)


def test_qsc_inconclusive_when_boundary_blocks():
    report = check_qsc(grid_ball(4), 3, 4)
    assert report.verdict == "inconclusive"
    assert report.inconclusive_pairs > 0


def test_qsc_needs_room_for_roots():
    with pytest.raises(ValueError):
        check_qsc(grid_ball(4), 4, 6)


def test_qsc_rejects_best_effort_ball():
    b = enumerate_ball(builtin("section4_S"), 2)
    with pytest.raises(ValueError):
        check_qsc(b, 2, 2)


def test_qsc_json_shape():
    payload = check_qsc(grid_ball(8), 4, 4).json_dict()
    assert set(payload) == {
        "verdict",
        "witness",
        "pairs",
        "inconclusive",
        "radius",
        "n",
        "i_max",
    }


# --------------------------------------- coherence with 1-dim areas


@settings(max_examples=20, deadline=None)
@given(
    st.lists(st.sampled_from(["a", "b"]), min_size=1, max_size=3),
    st.lists(st.sampled_from(["a", "b"]), min_size=1, max_size=3),
)
def test_cell_boundaries_are_equal_words(top, bottom):
    K = grid_kn(6, 4)
    try:
        p = path_from_labels(K.ball, 0, tuple(top))
        q = path_from_labels(K.ball, 0, tuple(bottom))
    except ValueError:
        return
    if K.is_cell(p, q):
        verdict = equality_search(tuple(top), tuple(bottom), GRID)
        assert verdict.status is Status.EQUAL


def test_homotopy_area_bounds_rewriting_area():
    # A K_4 homotopy in the grid applies one relation per atomic step,
    # so its length can never undercut the rewriting area.
    K = grid_kn(10, 4)
    p = path_from_labels(K.ball, 0, ("a", "b"))
    q = path_from_labels(K.ball, 0, ("b", "a"))
    res = homotopy_search(K, p, q)
    rewrite = equality_search(("a", "b"), ("b", "a"), GRID)
    assert rewrite.status is Status.EQUAL
    assert res.area >= rewrite.area
