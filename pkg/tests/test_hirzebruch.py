"""chi_y, signature, Todd genus, rigidity functionals."""

from fractions import Fraction

import pytest

from homgenus.catalog import catalog_entry, catalog_space
from homgenus.cobordism import tanh_series, todd_series
from homgenus.exactalg import parse_poly, parse_rational
from homgenus.hirzebruch import (
    certify_odd_rigidity,
    chi_y_genus,
    euler_number,
    genus_of_class,
    rigidity_eval,
    signature,
    signature_of_class,
    structure_independence,
    todd_genus,
    todd_of_class,
)
from homgenus.rootdata import Ordering
from homgenus.structures import InvariantStructure, enumerate_structures, parse_signs
from homgenus.toricgenus import chern_dold_genus


def _std(name):
    space = catalog_space(name)
    return InvariantStructure(space, (1,) * len(space.summands))


def test_chi_y_projective_space():
    assert chi_y_genus(_std("CP3")) == parse_poly("1 - y + y^2 - y^3")
    assert chi_y_genus(_std("CP2")) == parse_poly("1 - y + y^2")


def test_chi_y_six_sphere():
    assert chi_y_genus(_std("S6")) == parse_poly("y^2 - y")


def test_chi_y_stable_presets():
    entry = catalog_entry("CP3")
    assert chi_y_genus(entry.stable_structure("cp3-standard")) == parse_poly("1 - y + y^2 - y^3")
    assert chi_y_genus(entry.stable_structure("cp3-e11-minus")) == parse_poly("y^2 - y")
    assert chi_y_genus(entry.stable_structure("cp3-null")).is_zero()


def test_chi_y_specializations():
    j = _std("G42")
    chi = chi_y_genus(j)
    # y = -1 counts fixed points, y = 1 is the signature, y = 0 the Todd genus
    assert chi.evaluate({"y": Fraction(-1)}) == euler_number(j) == 6
    assert chi.evaluate({"y": Fraction(1)}) == signature(j) == 2
    assert chi.evaluate({"y": Fraction(0)}) == todd_genus(j) == 1


def test_chi_y_independent_of_ordering():
    j = _std("U3-flag")
    alt = Ordering((Fraction(11), Fraction(5), Fraction(2)))
    assert chi_y_genus(j) == chi_y_genus(j, ordering=alt)


def test_signatures():
    assert signature(_std("CP2")) == 1
    assert signature(_std("CP3")) == 0
    assert signature(_std("U3-flag")) == 0
    assert signature(_std("S6")) == 0


def test_todd_dichotomy_u3_flag():
    # integrable structures have Todd genus 1, the rest 0
    space = catalog_space("U3-flag")
    from homgenus.structures import is_integrable

    seen = set()
    for s in enumerate_structures(space):
        td = todd_genus(s)
        seen.add(td)
        assert td == (1 if is_integrable(s) else 0)
    assert seen == {0, 1}


def test_todd_of_stable_presets():
    entry = catalog_entry("CP3")
    assert todd_genus(entry.stable_structure("cp3-standard")) == 1
    assert todd_genus(entry.stable_structure("cp3-e11-minus")) == 0


def test_genus_of_class_routes():
    cls3 = chern_dold_genus(_std("CP3")).bordism_class()
    assert genus_of_class(cls3, todd_series(7), 3) == 1
    assert todd_of_class(cls3, 3) == 1
    assert signature_of_class(cls3, 3) == 0
    cls2 = chern_dold_genus(_std("CP2")).bordism_class()
    assert signature_of_class(cls2, 2) == signature(_std("CP2")) == 1


def test_class_route_matches_fixed_point_route():
    for name in ("S6", "CP3", "G42", "Sp2-flag"):
        j = _std(name)
        cls = chern_dold_genus(j).bordism_class()
        n = j.space.n
        assert signature_of_class(cls, n) == signature(j)
        assert todd_of_class(cls, n) == todd_genus(j)


def test_rigidity_eval_grassmannian():
    f = parse_rational("u/(1+u^2)")
    j = _std("G42")
    assert rigidity_eval(j, f, (3, 2, 1, 0)) == 80
    assert rigidity_eval(j, f, (4, 2, 1, 0)) == 140


def test_rigid_functional_vanishes_on_the_flag():
    f = parse_rational("u/(1+u^2)")
    assert rigidity_eval(_std("U3-flag"), f, (3, 2, 1)) == 0
    assert rigidity_eval(_std("U3-flag"), f, (7, 2, -1)) == 0


def test_rigidity_eval_error_paths():
    f = parse_rational("u/(1+u^2)")
    with pytest.raises(ValueError, match="pairs to zero"):
        rigidity_eval(_std("CP1"), f, (1, 1))
    with pytest.raises(ValueError, match="genus kernel vanishes"):
        rigidity_eval(_std("CP1"), parse_rational("u - u^2"), (2, 1))
    with pytest.raises(ZeroDivisionError):
        rigidity_eval(_std("CP1"), parse_rational("u^2/(1+u)"), (2, 1))


def test_structure_independence_of_stable_presets():
    entry = catalog_entry("CP3")
    structures = [
        entry.stable_structure(p) for p in ("cp3-standard", "cp3-e11-minus", "cp3-null")
    ]
    out = structure_independence(structures, parse_rational("u/(1+u^2)"), samples=3, seed=1)
    assert out["independent"]
    assert len(out["points"]) == 3
    # every structure gives the same value at every sample point
    for row in out["values"]:
        assert len(set(row)) == 1


def test_certify_odd_rigidity_u3_flag():
    out = certify_odd_rigidity(_std("U3-flag"), f=parse_rational("u/(1+u^2)"))
    assert out["verdict"] == "certified zero"
    cert = out["certificate"]
    assert cert["element"] == (0,)
    assert cert["pairs"] == [
        {"pair": (0, 1), "flips": 1},
        {"pair": (2, 3), "flips": 3},
        {"pair": (4, 5), "flips": 1},
    ]
    assert all(v == 0 for _, v in out["samples"])


def test_certify_odd_rigidity_not_covered():
    out = certify_odd_rigidity(_std("CP2"), f=parse_rational("u/(1+u^2)"))
    assert out["verdict"] == "not covered: odd number of fixed points"
    # and indeed the functional is not zero there
    assert any(v != 0 for _, v in out["samples"])


def test_certify_with_truncated_series():
    out = certify_odd_rigidity(_std("U3-flag"), f=tanh_series(7))
    assert out["verdict"] == "consistent to cutoff"
    assert out["samples"] == [("class evaluation", 0)]


def test_certify_rejects_even_series():
    with pytest.raises(ValueError, match="not odd"):
        certify_odd_rigidity(_std("U3-flag"), f=parse_rational("u^2/(1+u)"))
