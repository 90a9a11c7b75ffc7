from fractions import Fraction

import numpy as np
import pytest

from antipode_spectrum.cyclotomic import CycField
from antipode_spectrum.errors import (
    AmbiguousM,
    EmptyEigenspace,
    InvalidTwist,
    JDependence,
    NotInEigenspace,
    ZeroEntry,
)
from antipode_spectrum.families import (
    Group,
    fibonacci_fusion,
    matched_builtins,
    regular_module,
    taft_family,
    uqsl2_family,
    vecg_family,
)
from antipode_spectrum.grothendieck import FusionData, global_dimension
from antipode_spectrum.oracle import brute_force_spectrum
from antipode_spectrum.spectrum import (
    block_multiplicities,
    char_poly_s2,
    dimension_eigenspace,
    m_bar,
    matched_checks,
    perron_m_vector,
    pivotal_twist_invariance,
    select_m,
)

PHI5 = lambda: -(CycField(5).zeta(2)) - CycField(5).zeta(3)


class TestDimensionEigenspace:
    def test_taft_multiplicity_one(self):
        f, mod, _ = taft_family(3)
        basis, mult = dimension_eigenspace(f, mod)
        assert mult == 1
        m = select_m(f, mod, (basis, mult))
        F = CycField(3)
        assert m == [F.one(), F.zeta(1), F.zeta(2)]  # m_i = q^i

    def test_uqsl2_multiplicity_two(self):
        for ell in (3, 5):
            fam = uqsl2_family(ell)
            _, mult = dimension_eigenspace(fam.fusion, fam.module)
            assert mult == 2

    def test_fibonacci_multiplicity_one(self):
        f = fibonacci_fusion()
        mod, _ = regular_module(f)
        _, mult = dimension_eigenspace(f, mod)
        assert mult == 1

    def test_empty_for_unmatched_kappa(self):
        f, mod, _ = vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0", "1"])
        with pytest.raises(EmptyEigenspace):
            dimension_eigenspace(f, mod)

    def test_numeric_backend_eigenspace(self):
        # complex dims route through the SVD kernel
        import cmath

        from antipode_spectrum.grothendieck import FusionData

        f, mod, _ = taft_family(3)
        q = cmath.exp(2j * cmath.pi / 3)
        fnum = FusionData(
            f.labels, f.unit, f.dual, f.structure, cartan=f.cartan,
            dims={str(a): q**a for a in range(3)},
        )
        basis, mult = dimension_eigenspace(fnum, mod)
        assert mult == 1
        m = select_m(fnum, mod, (basis, mult))
        assert all(abs(m[i] - q**i) < 1e-9 for i in range(3))


class TestSelectM:
    def test_ambiguous_without_candidate(self):
        fam = uqsl2_family(3)
        with pytest.raises(AmbiguousM):
            select_m(fam.fusion, fam.module)

    def test_symbolic_candidate_accepted(self):
        fam = uqsl2_family(5)
        m = select_m(fam.fusion, fam.module, candidate=fam.m)
        assert m == fam.m

    def test_numeric_root_of_unity_rejected(self):
        # Lambda^ell = 1 forces a vanishing entry
        with pytest.raises(ZeroEntry):
            uqsl2_family(3, lam=1.0)
        F = CycField(3)
        with pytest.raises(ZeroEntry):
            uqsl2_family(3, lam=F.zeta(1))

    def test_not_in_eigenspace(self):
        fam = uqsl2_family(3)
        F = CycField(3)
        bad = [F.one(), F.one(), F.from_rational(2)]
        with pytest.raises(NotInEigenspace):
            select_m(fam.fusion, fam.module, candidate=bad)

    def test_exact_lambda_candidate(self):
        fam = uqsl2_family(3, lam=Fraction(2))
        m = select_m(fam.fusion, fam.module, candidate=fam.m)
        assert all(x for x in m)


class TestMBar:
    def test_fibonacci_self_conjugate(self):
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        mb = m_bar(f, mod, m)
        assert mb == m
        total = sum((a * b for a, b in zip(m, mb)), start=f.dims["1"] * 0)
        assert total == global_dimension(f)

    def test_vec_z2_signed(self):
        f, mod, m = vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0"])
        mb = m_bar(f, mod, m)
        assert m == [1, -1] and mb == [1, -1]
        assert sum(a * b for a, b in zip(m, mb)) == 2 == global_dimension(f)

    def test_spherical_regular_mbar_equals_m(self):
        # M = C with real (spherical) dims
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        assert m_bar(f, mod, m) == m

    def test_taft_mbar_is_inverse_character(self):
        f, mod, m = taft_family(5, 2)
        F = CycField(5)
        mb = m_bar(f, mod, m)
        assert mb == [F.zeta(-2 * i) for i in range(5)]

    def test_jdependence_for_uqsl2(self):
        fam = uqsl2_family(3)
        with pytest.raises(JDependence):
            m_bar(fam.fusion, fam.module, fam.m)


class TestMatchedChecks:
    def test_all_fusion_like_builtins_pass(self):
        for ex in matched_builtins():
            if not ex.q_suite:
                continue
            mb = m_bar(ex.fusion, ex.module, ex.m)
            rep = matched_checks(ex.fusion, ex.module, ex.m, mb)
            assert rep.ok, f"{ex.name}: {rep}"

    def test_s3_coset_module(self):
        s3 = Group.symmetric3()
        f, mod, m = vecg_family(s3, {g: 1 for g in s3.elements}, ["e", "r", "r2"])
        mb = m_bar(f, mod, m)
        rep = matched_checks(f, mod, m, mb)
        assert rep.ok, str(rep)

    def test_corrupted_m_fails_rank_or_table(self):
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        mb = m_bar(f, mod, m)
        bad_m = [m[0], m[1] + 1]
        rep = matched_checks(f, mod, bad_m, mb)
        assert not rep.ok


class TestCharPolyS2:
    def test_taft_n3(self):
        from antipode_spectrum.scalar import canonical_key

        f, mod, m = taft_family(3)
        spec = char_poly_s2(f, mod, m)
        F = CycField(3)
        assert spec.total_degree == 81
        assert spec.multiset() == {
            canonical_key(F.one()): 27,
            canonical_key(F.zeta(1)): 27,
            canonical_key(F.zeta(2)): 27,
        }

    def test_trivial_category(self):
        f = FusionData(["1"], "1", {"1": "1"}, {("1", "1", "1"): 1}, dims={"1": Fraction(1)})
        mod, m = regular_module(f)
        spec = char_poly_s2(f, mod, m)
        assert spec.entries == [(Fraction(1), 1)]

    def test_fibonacci_regular_vs_brute_oracle(self):
        from antipode_spectrum.scalar import canonical_key

        f = fibonacci_fusion()
        mod, m = regular_module(f)
        spec = char_poly_s2(f, mod, m)
        assert spec == brute_force_spectrum(f, mod, m)
        phi = PHI5()
        expect = {
            canonical_key(CycField(5).one()): 7,
            canonical_key(phi): 2,
            canonical_key(phi.inverse()): 2,
            canonical_key(phi * phi): 1,
            canonical_key((phi * phi).inverse()): 1,
        }
        assert spec.multiset() == expect
        assert spec.total_degree == 13


class TestSpectrumInvariants:
    def examples(self):
        out = [taft_family(2), taft_family(3), taft_family(5, 2)]
        f = fibonacci_fusion()
        out.append((f, *regular_module(f)))
        out.append(vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0"]))
        s3 = Group.symmetric3()
        out.append(vecg_family(s3, {g: 1 for g in s3.elements}, ["e", "r", "r2"]))
        fam = uqsl2_family(3)
        out.append((fam.fusion, fam.module, fam.m))
        return out

    def test_rescaling_invariance(self):
        from antipode_spectrum.symbolic import FactoredValue

        for f, mod, m in self.examples():
            spec = char_poly_s2(f, mod, m)
            if isinstance(m[0], FactoredValue):
                two = FactoredValue.from_constant(m[0].ctx, m[0].ctx.field.from_rational(2))
                scaled = [two * x for x in m]
            else:
                scaled = [2 * x for x in m]
            assert char_poly_s2(f, mod, scaled) == spec

    def test_inversion_closure(self):
        # Cartans of the built-ins satisfy C_{qr} = C_{r*q*}; multiplicities
        # of lambda and lambda^-1 then agree
        from antipode_spectrum.scalar import canonical_key
        from antipode_spectrum.symbolic import FactoredValue

        for f, mod, m in self.examples():
            C = f.cartan_matrix()
            perm = [f.dual_index(i) for i in range(f.size)]
            assert (C == C[np.ix_(perm, perm)].T).all()
            spec = char_poly_s2(f, mod, m)
            mult = spec.multiset()
            for v, count in spec.entries:
                if isinstance(v, FactoredValue):
                    vinv = FactoredValue.one(v.ctx) / v
                else:
                    vinv = 1 / v if not hasattr(v, "inverse") else v.inverse()
                assert mult[canonical_key(vinv)] == count

    def test_eigenvalue_one_lower_bound(self):
        from antipode_spectrum.scalar import canonical_key
        from antipode_spectrum.symbolic import FactoredValue

        for f, mod, m in self.examples():
            n = block_multiplicities(f, mod)
            size = mod.size
            lower = int(sum(n[i, i, k, k] for i in range(size) for k in range(size)))
            assert lower > 0
            spec = char_poly_s2(f, mod, m)
            if isinstance(m[0], FactoredValue):
                key = canonical_key(FactoredValue.one(m[0].ctx))
            else:
                key = canonical_key(m[0] / m[0])
            assert spec.multiset()[key] >= lower

    def test_degree_equals_dimension_identity(self):
        from antipode_spectrum.modcat import dimension_identity

        for f, mod, m in self.examples():
            assert char_poly_s2(f, mod, m).total_degree == dimension_identity(f, mod)

    def test_numeric_backend_reproduces_exact(self):
        from antipode_spectrum.scalar import numeric_value

        for f, mod, m in self.examples():
            if any(not hasattr(x, "complex_value") and not isinstance(x, (int, Fraction)) for x in m):
                continue
            from antipode_spectrum.symbolic import FactoredValue

            if isinstance(m[0], FactoredValue):
                continue
            exact = char_poly_s2(f, mod, m)
            numeric = char_poly_s2(f, mod, [numeric_value(x) for x in m])
            assert numeric.close_to(exact, 1e-9)

    def test_pseudounitary_path(self):
        # Perron m reproduces the matched spectrum on pseudounitary input
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        m_fp = perron_m_vector(mod, f)
        spec_fp = char_poly_s2(f, mod, m_fp)
        assert spec_fp.close_to(char_poly_s2(f, mod, m), 1e-9)

        s3 = Group.symmetric3()
        f2, mod2, m2 = vecg_family(s3, {g: 1 for g in s3.elements}, ["e"])
        assert char_poly_s2(f2, mod2, perron_m_vector(mod2, f2)).close_to(
            char_poly_s2(f2, mod2, m2), 1e-9
        )


class TestTwistInvariance:
    def test_global_rescaling(self):
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        ring_char = {x: Fraction(1) for x in f.labels}
        assert pivotal_twist_invariance(f, mod, m, ring_char, [Fraction(3), Fraction(3)])

    def test_taft_character_shift(self):
        # b_i = q^{t i} with gcd(1 + t, n) = 1 relabels eigenvalue exponents
        f, mod, m = taft_family(3)
        F = CycField(3)
        t = 1
        ring_char = {str(a): F.zeta(t * a) for a in range(3)}
        module_twist = [F.zeta(t * i) for i in range(3)]
        assert pivotal_twist_invariance(f, mod, m, ring_char, module_twist)

    def test_vec_z3_cube_root_character(self):
        z3 = Group.cyclic(3)
        f, mod, m = vecg_family(z3, {str(a): 1 for a in range(3)}, ["0"])
        F = CycField(3)
        # left translation pairs the module twist b with the inverse ring character
        ring_char = {str(g): F.zeta(-g) for g in range(3)}
        module_twist = [F.zeta(i) for i in range(3)]
        assert pivotal_twist_invariance(f, mod, m, ring_char, module_twist)

    def test_invalid_twist_rejected(self):
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        ring_char = {"1": Fraction(1), "t": Fraction(2)}
        with pytest.raises(InvalidTwist):
            pivotal_twist_invariance(f, mod, m, ring_char, [Fraction(1), Fraction(2)])
