"""Twisted products: total-space expansions against base x fiber."""

import pytest

from homgenus.catalog import catalog_space
from homgenus.rootdata import SubgroupData
from homgenus.structures import HomogeneousSpace, InvariantStructure
from homgenus.toricgenus import chern_dold_genus, combine_structures, twisted_product


def _std(space):
    return InvariantStructure(space, (1,) * len(space.summands))


def _full_flag_fiber(base_space):
    """The fiber H/T of the fibration G/T -> G/H, with its standard structure."""
    h = base_space.subgroup.as_group()
    fs = HomogeneousSpace(h, SubgroupData(h, ()), label="H/T")
    return fs


def test_six_sphere_times_su3_flag():
    # G2/T fibers over the six-sphere with full-flag fiber
    s6 = catalog_space("S6")
    base = _std(s6)
    fiber_space = _full_flag_fiber(s6)
    assert len(fiber_space.cosets.representatives) == 6
    fiber = _std(fiber_space)

    tw = twisted_product(base, fiber, cutoff=6)
    assert tw.structure.space.euler_characteristic == 12
    direct = chern_dold_genus(tw.structure, cutoff=6)
    assert tw.form == direct.form
    prod = (chern_dold_genus(base, 6).form * chern_dold_genus(fiber, 6).form).truncate_var(
        "t", 6
    )
    assert tw.form == prod
    assert tw.lower_terms_vanish()


def test_combined_structure_signs():
    s6 = catalog_space("S6")
    fiber_space = _full_flag_fiber(s6)
    comb = combine_structures(_std(s6), _std(fiber_space))
    # one fiber summand lands negatively against the total positive system
    assert comb.to_signs() == "++-+++"
    assert comb.space.euler_characteristic == 12


def test_projective_plane_all_sign_combinations():
    # the U(3) flag fibers over CP2 with CP1 fiber, but the isotropy group
    # has a torus factor, so the expansion does NOT factor as base x fiber;
    # the twisted product formula must still match the direct computation
    cp2 = catalog_space("CP2")
    fiber_space = _full_flag_fiber(cp2)
    for bsign in (1, -1):
        for fsign in (1, -1):
            base = InvariantStructure(cp2, (bsign,))
            fiber = InvariantStructure(fiber_space, (fsign,) * len(fiber_space.summands))
            tw = twisted_product(base, fiber, cutoff=3)
            direct = chern_dold_genus(tw.structure, cutoff=3)
            assert tw.form == direct.form
            prod = (
                chern_dold_genus(base, 3).form * chern_dold_genus(fiber, 3).form
            ).truncate_var("t", 3)
            assert tw.form != prod


def test_fiber_group_must_match_isotropy():
    base = _std(catalog_space("S6"))
    stranger = _std(catalog_space("CP1"))
    with pytest.raises(ValueError, match="isotropy"):
        twisted_product(base, stranger, cutoff=3)
    with pytest.raises(ValueError, match="isotropy"):
        combine_structures(base, stranger)
