"""Root systems, Weyl groups, coset enumeration."""

from fractions import Fraction

import pytest

from homgenus.rootdata import (
    Ordering,
    SubgroupData,
    build_group,
    canonical_positive,
    coset_space,
    default_ordering,
    gram_pairing,
    group_from_doc,
    identity_matrix,
    mat_vec,
    reflection_matrix,
    root_sign,
    weyl_group,
)


def test_builtin_group_root_counts():
    for spec, dim, nroots in (
        ("U(3)", 3, 6),
        ("SU(3)", 3, 6),
        ("U(5)", 5, 20),
        ("Sp(2)", 2, 8),
        ("SO(4)", 2, 4),
        ("SO(5)", 2, 8),
        ("SO(6)", 3, 12),
        ("SO(7)", 3, 18),
        ("G2", 2, 12),
        ("T3", 3, 0),
    ):
        g = build_group(spec)
        assert g.dim == dim
        assert len(g.roots) == nroots


def test_su_rank_drops():
    assert build_group("SU(4)").rank == 3
    assert build_group("U(4)").rank == 4


def test_build_group_rejects_unknown():
    with pytest.raises(ValueError, match="unrecognized group"):
        build_group("E8")


def test_roots_come_in_pairs():
    for spec in ("U(4)", "Sp(2)", "SO(5)", "G2"):
        g = build_group(spec)
        roots = set(g.roots)
        for r in roots:
            assert tuple(-c for c in r) in roots


def test_positive_roots_split():
    g = build_group("U(3)")
    pos = g.positive_roots()
    assert len(pos) == 3
    assert set(pos) == {
        (1, -1, 0),
        (1, 0, -1),
        (0, 1, -1),
    }


def test_simple_roots_u3():
    assert set(build_group("U(3)").simple_roots()) == {(1, -1, 0), (0, 1, -1)}


def test_weyl_orders():
    for spec, order in (("U(3)", 6), ("U(4)", 24), ("Sp(2)", 8), ("SO(4)", 4), ("SO(5)", 8), ("G2", 12)):
        assert len(list(weyl_group(build_group(spec)))) == order


def test_weyl_identity_word_is_empty():
    w = weyl_group(build_group("U(3)"))
    words = [e.word for e in w]
    assert () in words
    ident = identity_matrix(3)
    assert w.contains_matrix(ident)


def test_weyl_elements_permute_roots():
    g = build_group("Sp(2)")
    roots = set(g.roots)
    for e in weyl_group(g):
        assert {e.apply(r) for r in roots} == roots


def test_reflection_is_involutive():
    g2 = build_group("G2")
    for alpha in g2.roots:
        m = reflection_matrix(alpha, g2.dim, gram=g2.gram)
        assert mat_vec(m, mat_vec(m, (Fraction(5), Fraction(7)))) == (
            Fraction(5),
            Fraction(7),
        )


def test_g2_has_two_root_lengths():
    g2 = build_group("G2")
    norms = {gram_pairing(r, r, g2.gram) for r in g2.roots}
    assert len(norms) == 2
    assert max(norms) == 3 * min(norms)


def test_default_ordering():
    o = default_ordering(3)
    assert o.v == (3, 2, 1)
    assert o.sign((1, -1, 0)) == 1
    assert o.sign((-1, 1, 0)) == -1
    assert root_sign((0, 0, 1), o) == 1


def test_ordering_rejects_nongeneric():
    with pytest.raises(ValueError, match="not generic"):
        Ordering((1, 1, 0)).sign((1, -1, 0))
    with pytest.raises(ValueError, match="not generic"):
        default_ordering(3).sign((0, 0, 0))


def test_canonical_positive():
    line, scale = canonical_positive((-2, 2, 0))
    assert line == (1, -1, 0)
    assert scale == -2
    line, scale = canonical_positive((Fraction(1, 2), Fraction(-1, 2), 0))
    assert line == (1, -1, 0)
    assert scale == Fraction(1, 2)


def test_canonical_positive_reconstructs():
    v = (Fraction(-3, 2), 0, Fraction(3, 2))
    line, scale = canonical_positive(v)
    assert tuple(scale * c for c in line) == v


def test_coset_counts():
    u4 = build_group("U(4)")
    u3_inside = SubgroupData(u4, tuple(
        r for r in u4.roots if r[0] == 0
    ))
    cs = coset_space(u4, u3_inside)
    assert len(cs.representatives) == 4


def test_coset_index_of_matrix_rejects_stranger():
    u3 = build_group("U(3)")
    torus = SubgroupData(u3, ())
    cs = coset_space(u3, torus)
    assert len(cs.representatives) == 6
    with pytest.raises(ValueError):
        cs.index_of_matrix([[2, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_subgroup_closure_checked():
    sp2 = build_group("Sp(2)")
    with pytest.raises(ValueError, match="not closed"):
        SubgroupData(sp2, ((1, -1), (-1, 1), (2, 0), (-2, 0)))


def test_subgroup_roots_must_come_from_ambient():
    u3 = build_group("U(3)")
    with pytest.raises(ValueError):
        SubgroupData(u3, ((2, 0, 0), (-2, 0, 0)))


def test_group_from_doc_parses_rationals():
    g = group_from_doc(
        {"label": "X", "dim": 2, "roots": [["1", "-1"], ["-1", "1"]], "rank": 2}
    )
    assert g.roots == ((Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(1)))
    assert g.label == "X"


def test_weyl_coset_order_identity():
    # |W(G)| = |W(H)| * number of fixed cosets, H of maximal rank
    u4 = build_group("U(4)")
    sub = SubgroupData(u4, tuple(r for r in u4.roots if r[0] == 0))
    h = sub.as_group()
    wg = len(list(weyl_group(u4)))
    wh = len(list(weyl_group(h)))
    assert wg == wh * len(coset_space(u4, sub).representatives)
