"""Pattern construction, canonicalization, parsing and automorphism counts."""

import pytest

from conblock.patterns import Pattern, UnsupportedPatternError

from naive import naive_aut


def test_degenerate_shapes_normalize_to_k2():
    k2 = Pattern.clique(2)
    assert Pattern.star(1) == k2
    assert Pattern.path(2) == k2
    assert k2.token == "K2"


def test_two_leaf_star_is_p3():
    assert Pattern.star(2) == Pattern.path(3)


@pytest.mark.parametrize(
    "pat,expected",
    [
        (Pattern.clique(2), 2),
        (Pattern.path(3), 2),
        (Pattern.path(4), 2),
        (Pattern.path(5), 2),
        (Pattern.clique(3), 6),
        (Pattern.clique(4), 24),
        (Pattern.star(3), 6),
        (Pattern.star(4), 24),
        (Pattern.tree([(0, 1), (1, 2), (1, 3), (3, 4)]), 2),
    ],
)
def test_automorphism_counts(pat, expected):
    assert pat.aut == expected
    assert pat.aut == naive_aut(pat)


def test_parse_tokens():
    assert Pattern.parse("K3") == Pattern.clique(3)
    assert Pattern.parse("p4") == Pattern.path(4)
    assert Pattern.parse("S2") == Pattern.path(3)
    assert Pattern.parse("T:0-1,1-2,1-3") == Pattern.star(3)
    assert Pattern.parse("T:0-1,1-2,2-3") == Pattern.path(4)
    g = Pattern.parse("G:0-1,1-2,0-2")
    assert g == Pattern.clique(3)


def test_parse_edge_list_text():
    pat = Pattern.parse("0 1\n1 2\n2 0\n")
    assert pat == Pattern.clique(3)


def test_tree_rejects_cycles_and_disconnected():
    with pytest.raises(UnsupportedPatternError):
        Pattern.tree([(0, 1), (1, 2), (2, 0)])
    with pytest.raises(UnsupportedPatternError):
        Pattern.tree([(0, 1), (2, 3)])


def test_size_cap():
    with pytest.raises(UnsupportedPatternError):
        Pattern.path(9)
    Pattern.path(8)  # boundary is allowed


def test_shape_predicates_survive_edge_list_input():
    p4 = Pattern.parse("T:0-1,1-2,2-3")
    assert p4.is_path(4)
    assert not p4.is_star(3)
    s3 = Pattern.parse("T:0-2,1-2,2-3")
    assert s3.is_star(3)
    assert s3.star_leaves() == 3


def test_general_disconnected():
    two_edges = Pattern.general([(0, 1), (2, 3)])
    assert two_edges.kind == "general"
    assert two_edges.n == 4
    assert two_edges.aut == 8
