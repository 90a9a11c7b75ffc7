import numpy as np
import pytest

from antipode_spectrum.errors import NotInvertibleClass
from antipode_spectrum.families import (
    Group,
    fibonacci_fusion,
    regular_module,
    taft_family,
    uqsl2_family,
    vecg_family,
)
from antipode_spectrum.modcat import (
    ModuleActionData,
    d_action_triviality,
    dimension_identity,
    verify_module,
)
from antipode_spectrum.spectrum import char_poly_s2


class TestVerifyModule:
    def test_regular_module_passes(self):
        f = fibonacci_fusion()
        mod, _ = regular_module(f)
        assert verify_module(f, mod).ok

    def test_taft_permutation_algebra(self):
        for n in (2, 3, 5):
            f, mod, _ = taft_family(n)
            assert verify_module(f, mod).ok

    def test_uqsl2_module(self):
        for ell in (3, 5):
            fam = uqsl2_family(ell)
            assert verify_module(fam.fusion, fam.module).ok

    def test_corrupted_unit_fails_with_witness(self):
        f, mod, _ = taft_family(3)
        action = {r: mod.matrix(r).copy() for r in f.labels}
        action["0"] = mod.matrix("1")  # N_unit no longer the identity
        bad = ModuleActionData(mod.labels, action)
        rep = verify_module(f, bad)
        assert not rep.ok
        assert any(v.check == "unit-action" for v in rep.violations)

    def test_disconnected_support_fails(self):
        f = fibonacci_fusion()
        # block-diagonal fake action: two copies of the trivial module
        eye = np.eye(2, dtype=int)
        bad = ModuleActionData(["a", "b"], {"1": eye, "t": 2 * eye})
        rep = verify_module(f, bad)
        assert any(v.check == "indecomposability" for v in rep.violations)


class TestDActionTriviality:
    def test_taft_distinguished_object_acts_nontrivially(self):
        _, mod, _ = taft_family(3)
        # D is the character g -> q, i.e. the class of label "1": a shift
        assert d_action_triviality(mod, "1") is False

    def test_unit_always_trivial(self):
        _, mod, _ = taft_family(4)
        assert d_action_triviality(mod, "0") is True
        f, mod2, _ = vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0"])
        assert d_action_triviality(mod2, "0") is True

    def test_non_invertible_class_rejected(self):
        fam = uqsl2_family(3)
        with pytest.raises(NotInvertibleClass):
            d_action_triviality(fam.module, "X2")


class TestSupportAndDegree:
    def test_every_column_hit(self):
        for f, mod in [
            taft_family(3)[:2],
            (fibonacci_fusion(), regular_module(fibonacci_fusion())[0]),
            (uqsl2_family(3).fusion, uqsl2_family(3).module),
        ]:
            support = sum(mod.matrix(r) for r in f.labels)
            assert (support.sum(axis=0) > 0).all()

    def test_dimension_identity_matches_block_total(self):
        from antipode_spectrum.spectrum import block_multiplicities

        for f, mod in [
            taft_family(3)[:2],
            (fibonacci_fusion(), regular_module(fibonacci_fusion())[0]),
            (uqsl2_family(5).fusion, uqsl2_family(5).module),
        ]:
            assert dimension_identity(f, mod) == int(block_multiplicities(f, mod).sum())

    def test_dimension_identity_matches_spectrum_degree(self):
        f, mod, m = taft_family(3)
        assert char_poly_s2(f, mod, m).total_degree == dimension_identity(f, mod)
        fam = uqsl2_family(3)
        assert char_poly_s2(fam.fusion, fam.module, fam.m).total_degree == dimension_identity(
            fam.fusion, fam.module
        )
