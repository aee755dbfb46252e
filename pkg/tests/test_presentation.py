from __future__ import annotations

import pytest

from monoidgeo.presentation import (
    BUILTIN_NAMES,
    Presentation,
    PresentationError,
    Relation,
    builtin,
    parse_presentation,
    serialize_presentation,
)

BICYCLIC_TEXT = "gens: a b\nrel: a b = 1\n"


def test_parse_bicyclic_text():
    p = parse_presentation(BICYCLIC_TEXT)
    assert p.generators == ("a", "b")
    assert len(p.relations) == 1
    assert p.relations[0].lhs == ("a", "b")
    assert p.relations[0].rhs == ()


def test_parse_free_monoid():
    p = parse_presentation("gens: a\n")
    assert p.generators == ("a",)
    assert p.relations == ()
    assert p.is_free
    assert p.confluent
    assert p.cayley_tree


def test_parse_comments_and_blanks():
    p = parse_presentation("# header\n\ngens: a b\n# middle\nrel: a b = b a\n")
    assert len(p.relations) == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(PresentationError, match="line 1"):
        parse_presentation("rel: a = b\n")
    with pytest.raises(PresentationError, match="line 2"):
        parse_presentation("gens: a\nrel: a b\n")
    with pytest.raises(PresentationError, match="unknown generator"):
        parse_presentation("gens: a\nrel: a = c\n")


def test_duplicate_generators_rejected():
    with pytest.raises(PresentationError):
        parse_presentation("gens: a a\n")


def test_serialize_round_trip():
    p = parse_presentation(BICYCLIC_TEXT)
    again = parse_presentation(serialize_presentation(p))
    assert again.generators == p.generators
    assert again.relations == p.relations


def test_builtin_names_all_construct():
    placeholders = {"free(k)": "free(3)", "mx(oracle)": "mx(evens)"}
    for name in BUILTIN_NAMES:
        assert builtin(placeholders.get(name, name)).generators


def test_builtin_free():
    p = builtin("free(2)")
    assert p.generators == ("a", "b")
    assert p.is_free and p.cayley_tree and p.confluent
    assert builtin("free(1)").generators == ("a",)


def test_builtin_bicyclic_confluent():
    p = builtin("bicyclic")
    assert p.confluent
    assert not p.cayley_tree
    assert p.max_relation_length() == 2


def test_builtin_grid():
    p = builtin("free_commutative_2")
    assert p.confluent
    assert p.max_relation_length() == 4


def test_builtin_f2_group():
    p = builtin("f2_group")
    assert p.generators == ("x", "x'", "y", "y'")
    assert len(p.relations) == 4
    assert p.confluent


def test_builtin_section4_monoid_shape():
    p = builtin("section4_S")
    assert len(p.generators) == 11
    assert len(p.relations) == 22
    assert not p.confluent


def test_builtin_mx_accepts_oracle_spec():
    p = builtin("mx(finite:1,3)")
    assert p.oracle is not None
    assert p.confluent and p.cayley_tree
    assert p.relations == ()


def test_builtin_unknown_name():
    with pytest.raises(PresentationError):
        builtin("nosuch")


def test_oracle_and_relations_exclusive():
    q = builtin("mx(evens)")
    with pytest.raises(PresentationError):
        Presentation(
            generators=q.generators,
            relations=(Relation(("a",), ("b",)),),
            oracle=q.oracle,
        )


def test_oracle_requires_confluent_flag():
    q = builtin("mx(evens)")
    with pytest.raises(PresentationError):
        Presentation(generators=q.generators, relations=(), oracle=q.oracle, confluent=False)
