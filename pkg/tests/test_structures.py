"""Invariant and stable structures, fixed-point data, pairings."""

from fractions import Fraction

import pytest

from homgenus.catalog import catalog_entry, catalog_space
from homgenus.structures import (
    InvariantStructure,
    StableStructure,
    c1_divisibility,
    enumerate_structures,
    find_su_structures,
    first_chern,
    fixed_points,
    is_integrable,
    parse_signs,
    verify_pairing,
)


def test_s6_structure_basics():
    space = catalog_space("S6")
    assert len(space.summands) == 1
    std = InvariantStructure(space, (1,))
    assert std.to_signs() == "+"
    # the three roots of the summand are not a positive system: middle one flips
    assert std.eps == (1, -1, 1)
    assert first_chern(std) == (0, 0)
    assert not is_integrable(std)


def test_s6_has_two_structures():
    assert [s.to_signs() for s in enumerate_structures(catalog_space("S6"))] == ["+", "-"]


def test_structure_counts():
    assert len(enumerate_structures(catalog_space("U3-flag"))) == 8
    assert len(enumerate_structures(catalog_space("G622"))) == 8
    assert len(enumerate_structures(catalog_space("Sp2-flag"))) == 16


def test_quaternionic_line_has_no_invariant_structure():
    space = catalog_space("HP1")
    assert [s.self_conjugate for s in space.summands] == [True]
    assert enumerate_structures(space) == []
    with pytest.raises(ValueError, match="self-conjugate"):
        InvariantStructure(space, (1,))


def test_su_inventory_u3_flag():
    space = catalog_space("U3-flag")
    assert sorted(s.to_signs() for s in find_su_structures(space)) == ["+-+", "-+-"]


def test_su_inventory_empty_cases():
    for name in ("CP1", "CP2", "CP3", "U4-flag", "U4-T2xU2"):
        assert find_su_structures(catalog_space(name)) == []


def test_first_chern_cp3():
    std = InvariantStructure(catalog_space("CP3"), (1,))
    assert first_chern(std) == (3, -1, -1, -1)
    assert first_chern(std.conjugate()) == (-3, 1, 1, 1)


def test_c1_divisibility_is_coordinatewise():
    # divisibility in weight-lattice coordinates, not in the cohomology
    # of the quotient: (3,-1,-1,-1) is primitive
    std = InvariantStructure(catalog_space("CP3"), (1,))
    assert c1_divisibility(std, 1)
    assert not c1_divisibility(std, 2)
    assert not c1_divisibility(std, 4)
    # an SU-structure has c1 = 0, divisible by everything
    su = parse_signs(catalog_space("U3-flag"), "+-+")
    assert c1_divisibility(su, 12)
    with pytest.raises(ValueError):
        c1_divisibility(std, 0)


def test_integrability():
    u3 = catalog_space("U3-flag")
    assert is_integrable(InvariantStructure(u3, (1, 1, 1)))
    assert not is_integrable(parse_signs(u3, "+-+"))


def test_parse_signs_validation():
    u3 = catalog_space("U3-flag")
    assert parse_signs(u3, "+-+").summand_signs == (1, -1, 1)
    with pytest.raises(ValueError, match="expected 3"):
        parse_signs(u3, "++")
    with pytest.raises(ValueError, match="'\\+' and '-'"):
        parse_signs(u3, "+0+")


def test_conjugate_flips_all_signs():
    u3 = catalog_space("U3-flag")
    assert parse_signs(u3, "+-+").conjugate().to_signs() == "-+-"


def test_summand_line_indices():
    assert [s.line_indices for s in catalog_space("U3-flag").summands] == [
        (0,),
        (1,),
        (2,),
    ]


def test_fixed_points_cp1():
    pts = fixed_points(InvariantStructure(catalog_space("CP1"), (1,)))
    assert [(p.weights, p.sign) for p in pts] == [
        (((1, -1),), 1),
        (((-1, 1),), 1),
    ]


def test_fixed_points_count_matches_euler():
    for name in ("CP3", "U3-flag", "G42", "Sp2-flag"):
        space = catalog_space(name)
        std = InvariantStructure(space, (1,) * len(space.summands))
        assert len(fixed_points(std)) == space.euler_characteristic


def test_fixed_points_stable_preset():
    ss = catalog_entry("CP3").stable_structure("cp3-e11-minus")
    assert ss.global_sign == -1
    pts = fixed_points(ss)
    assert pts[1].weights == (
        (1, -1, 0, 0),
        (0, 1, -1, 0),
        (0, 1, 0, -1),
    )
    assert pts[1].sign == -1


def test_stable_table_validation():
    cp3 = catalog_space("CP3")
    std = InvariantStructure(cp3, (1,))
    with pytest.raises(ValueError, match="3 entries"):
        StableStructure(cp3, std, ((1, 1),) * 4)
    with pytest.raises(ValueError, match="must be \\+1 or -1"):
        StableStructure(cp3, std, ((1, 1, 2),) * 4)


def test_verify_pairing_cp2():
    std = InvariantStructure(catalog_space("CP2"), (1,))
    out = verify_pairing(std, (1, -1, 0))
    assert out["all_claims_hold"]
    entries = out["entries"]
    assert [e.coset for e in entries] == [0, 1, 2]
    assert [e.partner for e in entries] == [1, 0, 0]
    assert [e.involutive for e in entries] == [True, True, False]
    e0 = entries[0]
    assert e0.negated_weight_present
    assert e0.flip_count == 1
    assert e0.as_dict()["groups"] == {0: "flip", 1: "IV"}


def test_verify_pairing_wall_must_be_a_root():
    std = InvariantStructure(catalog_space("CP2"), (1,))
    with pytest.raises(ValueError):
        verify_pairing(std, (2, 0, 0))
