import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from antipode_spectrum.cyclotomic import CycField
from antipode_spectrum.errors import BadParameters, NotACharacter, NotASubgroup, ZeroEntry
from antipode_spectrum.families import (
    Group,
    MatchFailure,
    RootSystemData,
    TorusPoint,
    chebyshev,
    fibonacci_fusion,
    regular_module,
    taft_family,
    uqg_family,
    uqsl2_family,
    vecg_family,
)
from antipode_spectrum.grothendieck import verify_fusion
from antipode_spectrum.modcat import verify_module
from antipode_spectrum.scalar import canonical_key
from antipode_spectrum.spectrum import block_multiplicities, char_poly_s2


class TestChebyshev:
    def test_first_values(self):
        assert chebyshev(1) == [1]
        assert chebyshev(2) == [0, 1]
        assert chebyshev(3) == [-1, 0, 1]
        assert chebyshev(4) == [0, -2, 0, 1]

    def test_defining_identity_numeric(self):
        rng = random.Random(17)
        p5 = chebyshev(5)
        for _ in range(10):
            theta = rng.uniform(0.1, 3.0)
            x = 2 * math.cos(theta)
            val = sum(c * x**k for k, c in enumerate(p5))
            assert abs(val * math.sin(theta) - math.sin(5 * theta)) < 1e-9


class TestTaftFamily:
    def test_all_blocks_have_multiplicity_one(self):
        f, mod, _ = taft_family(3)
        n = block_multiplicities(f, mod)
        assert set(n.ravel().tolist()) == {1}

    def test_spectrum_packets(self):
        for n, s in ((2, 1), (3, 1), (5, 2)):
            f, mod, m = taft_family(n, s)
            spec = char_poly_s2(f, mod, m)
            F = CycField(n)
            assert spec.total_degree == n**4
            assert spec.multiset() == {canonical_key(F.zeta(t)): n**3 for t in range(n)}

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            taft_family(1)
        with pytest.raises(BadParameters):
            taft_family(4, 2)

    def test_verifies(self):
        f, mod, _ = taft_family(4)
        assert verify_fusion(f, strict_duality=True).ok
        assert verify_module(f, mod).ok


class TestUqsl2Family:
    def test_ring_relation_is_the_minimal_one(self):
        # x P_ell - 2 P_{ell-1} - 2 equals 2 T_ell(x/2) - 2, the polynomial
        # identity behind z^ell + z^-ell - 2 = 0
        for ell in (3, 5, 7):
            pl = chebyshev(ell)
            plm = chebyshev(ell - 1)
            q_poly = [0] + pl
            q_poly = [a - 2 * b for a, b in zip(q_poly, plm + [0] * (len(q_poly) - len(plm)))]
            q_poly[0] -= 2
            # doubled first-kind Chebyshev via a_0 = 2, a_1 = x, a_{k+1} = x a_k - a_{k-1}
            a_prev, a_cur = [2], [0, 1]
            for _ in range(ell - 1):
                nxt = [0] + a_cur
                for t, c in enumerate(a_prev):
                    nxt[t] -= c
                a_prev, a_cur = a_cur, nxt
            minimal = list(a_cur)
            minimal[0] -= 2
            assert q_poly == minimal

    def test_ring_relation_roots_numeric(self):
        # Q(x) = (x - 2) prod_j (x - 2cos(2 pi j / ell))^2 within 1e-9
        for ell in (3, 5):
            pl, plm = chebyshev(ell), chebyshev(ell - 1)
            q_poly = [0] + pl
            q_poly = [a - 2 * b for a, b in zip(q_poly, plm + [0] * (len(q_poly) - len(plm)))]
            q_poly[0] -= 2
            prod = np.array([1.0])
            for root in [2.0] + [
                2 * math.cos(2 * math.pi * j / ell)
                for j in range(1, (ell - 1) // 2 + 1)
                for _ in range(2)
            ]:
                prod = np.convolve(prod, [-root, 1.0])
            assert np.allclose(np.array(q_poly, dtype=float), prod, atol=1e-9)

    def test_fusion_boundary_rule(self):
        fam = uqsl2_family(5)
        f = fam.fusion
        t = f.tensor()
        i2, i5 = f.index["X2"], f.index["X5"]
        # X2 X5 = 2 X1 + 2 X4
        col = t[i2, i5, :]
        assert col[f.index["X1"]] == 2 and col[f.index["X4"]] == 2
        assert col.sum() == 4

    def test_m_recursion_identity(self):
        # m_{j+1} + m_{j-1} = (q + q^-1) m_j at the Laurent level
        ell, s = 5, 1
        fam = uqsl2_family(ell, s)
        ctx = fam.m[0].ctx
        F = ctx.field
        x0 = F.zeta(s) + F.zeta(-s)
        polys = [x.expand() for x in fam.m]
        for j in range(ell):
            lhs = polys[(j + 1) % ell] + polys[(j - 1) % ell]
            rhs = polys[j] * x0
            assert (lhs - rhs).is_zero()

    def test_dims_match_weight_character(self):
        # dim X_2 = q + q^-1 = 2 cos(2 pi s / ell)
        for ell, s in ((5, 1), (5, 2), (7, 3)):
            fam = uqsl2_family(ell, s)
            d2 = fam.fusion.dims["X2"].complex_value()
            assert abs(d2 - 2 * math.cos(2 * math.pi * s / ell)) < 1e-9

    def test_cartan_weighted_sums(self):
        for ell in (3, 5, 7):
            fam = uqsl2_family(ell)
            C = fam.fusion.cartan
            dims = np.arange(1, ell + 1)
            proj = C.T @ dims
            assert (proj[:-1] == 2 * ell).all()
            assert proj[-1] == ell
            assert int(proj @ dims) == ell**3

    def test_every_block_multiplicity_is_ell(self):
        for ell in (3, 5):
            fam = uqsl2_family(ell)
            n = block_multiplicities(fam.fusion, fam.module)
            assert set(n.ravel().tolist()) == {ell}

    def test_symbolic_spectrum_equals_product_formula(self):
        for ell in (3, 5):
            fam = uqsl2_family(ell)
            assert char_poly_s2(fam.fusion, fam.module, fam.m) == fam.expected

    def test_exact_lambda_spectrum_equals_product_formula(self):
        for lam in (Fraction(2), Fraction(-3, 7)):
            fam = uqsl2_family(5, lam=lam)
            assert char_poly_s2(fam.fusion, fam.module, fam.m) == fam.expected

    def test_numeric_lambda_spectrum_equals_product_formula(self):
        fam = uqsl2_family(5, lam=0.37 - 1.2j)
        spec = char_poly_s2(fam.fusion, fam.module, fam.m)
        assert spec.close_to(fam.expected, 1e-9)

    def test_lambda_zero_exact_limit(self):
        fam = uqsl2_family(3, lam=0)
        spec = char_poly_s2(fam.fusion, fam.module, fam.m)
        assert spec.uniform_root_power() == (3, 3**4)

    def test_numeric_lambda_near_zero(self):
        fam = uqsl2_family(3, lam=1e-6)
        spec = char_poly_s2(fam.fusion, fam.module, fam.m)
        assert spec.total_degree == 3**5
        roots = [cmath.exp(2j * cmath.pi * t / 3) for t in range(3)]
        for v, _ in spec.entries:
            assert min(abs(complex(v) - r) for r in roots) < 1e-4

    def test_root_of_unity_lambda_rejected(self):
        with pytest.raises(ZeroEntry):
            uqsl2_family(5, lam=1.0)

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            uqsl2_family(4)
        with pytest.raises(BadParameters):
            uqsl2_family(9, s=3)


class TestUqgFamily:
    def test_a1_specializes_to_uqsl2(self):
        for ell in (3, 5):
            fam = uqsl2_family(ell)
            assert uqg_family("A1", ell) == fam.expected
        # and with exact numeric lambda
        fam = uqsl2_family(5, lam=Fraction(2))
        assert uqg_family("A1", 5, lam=[Fraction(2)]) == fam.expected

    def test_a2_degree_and_multiplicities(self):
        spec = uqg_family("A2", 5, lam=(0.7 + 0.2j, 1.3 - 0.4j))
        assert spec.total_degree == 5**12
        assert all(mult % 5**4 == 0 for _, mult in spec.entries)

    def test_a2_ell3_rejected(self):
        with pytest.raises(BadParameters):
            uqg_family("A2", 3)

    def test_highest_root_monomial(self):
        # Lambda_alpha for alpha = alpha1 + alpha2 is the monomial L1 L2
        from antipode_spectrum.symbolic import FactoredContext, FactoredValue

        ctx = FactoredContext(5, 2)
        atom = FactoredValue.atom(ctx, (1, 1), 2)
        z = cmath.exp(2j * cmath.pi / 5)
        l1, l2 = 0.8 + 0.1j, 1.4 - 0.3j
        assert abs(atom.complex_value((l1, l2)) - (l1 * l2 * z**2 - z**-2)) < 1e-12

    def test_symbolic_rank_two_pairing(self):
        # small rank-2 system exercises the symbolic multi-variable path
        rs = RootSystemData("A1xA1", [[2, 0], [0, 2]], [(1, 0), (0, 1)], 6)
        spec = uqg_family(rs, 3, lam="symbolic")
        assert spec.total_degree == 3 ** (6 + 4)
        coords = {c for v, _ in spec.entries for (c, _a), _p in v.factors.items()}
        assert coords == {(1, 0), (0, 1)}

    def test_root_system_presets(self):
        for name, npos, dim in (("A1", 1, 3), ("A2", 3, 8), ("A3", 6, 15)):
            rs = RootSystemData.preset(name)
            assert len(rs.positive_roots) == npos
            assert rs.dim_g == dim
            assert (rs.cartan == rs.cartan.T).all()
        with pytest.raises(BadParameters):
            RootSystemData.preset("B2")

    def test_torus_point_coercion(self):
        tp = TorusPoint.coerce(5, "symbolic", 2)
        assert tp.is_symbolic
        with pytest.raises(BadParameters):
            TorusPoint.coerce(5, (1.0,), 2)

    def test_threaded_enumeration_is_deterministic(self, monkeypatch):
        lam = (0.7 + 0.2j, 1.3 - 0.4j)
        serial = uqg_family("A2", 5, lam=lam)
        monkeypatch.setenv("ANTIPODE_SPECTRUM_THREADS", "4")
        threaded = uqg_family("A2", 5, lam=lam)
        assert threaded == serial
        assert threaded.entries == serial.entries


class TestVecGFamily:
    def test_z2_signed_matched(self):
        f, mod, m = vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0"])
        assert m == [1, -1]
        assert verify_fusion(f, strict_duality=True).ok
        assert verify_module(f, mod).ok

    def test_z2_full_subgroup_unmatched(self):
        _, _, mf = vecg_family(Group.cyclic(2), {"0": 1, "1": -1}, ["0", "1"])
        assert isinstance(mf, MatchFailure)
        assert mf.multiplicity == 0

    def test_s3_coset_trivial_character(self):
        s3 = Group.symmetric3()
        f, mod, m = vecg_family(s3, {g: 1 for g in s3.elements}, ["e", "r", "r2"])
        assert m == [1, 1]
        assert mod.size == 2
        assert verify_module(f, mod).ok

    def test_not_a_character(self):
        with pytest.raises(NotACharacter):
            vecg_family(Group.cyclic(3), {"0": 1, "1": -1, "2": 1}, ["0"])

    def test_not_a_subgroup(self):
        s3 = Group.symmetric3()
        with pytest.raises(NotASubgroup):
            vecg_family(s3, {g: 1 for g in s3.elements}, ["e", "s", "r"])
        with pytest.raises(NotASubgroup):
            vecg_family(s3, {g: 1 for g in s3.elements}, ["r", "r2"])


class TestRegularModule:
    def test_fibonacci_degree_13(self):
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        assert char_poly_s2(f, mod, m).total_degree == 13

    def test_vec_zn_trivial_all_ones_spectrum(self):
        z4, _, _ = vecg_family(Group.cyclic(4), {str(a): 1 for a in range(4)}, ["0"])
        mod, m = regular_module(z4)
        spec = char_poly_s2(z4, mod, m)
        assert len(spec.entries) == 1 and spec.entries[0][1] == spec.total_degree

    def test_index_bijection_against_dd_form(self):
        # merged multiset equals {d_j d_k / (d_i d_l)} with multiplicity
        # dim Hom(X_j X_k, X_i X_l), the regular-module index convention
        f = fibonacci_fusion()
        mod, m = regular_module(f)
        spec = char_poly_s2(f, mod, m)
        t = f.tensor()
        d = f.dims_vector()
        acc = {}
        k = f.size
        import itertools

        for i, j, kk, l in itertools.product(range(k), repeat=4):
            # dim Hom(X_j X_k, X_i X_l) = sum_w c_{j k}^w c_{i l}^w
            mult = int(sum(t[j, kk, w] * t[i, l, w] for w in range(k)))
            if mult:
                lam = d[j] * d[kk] / (d[i] * d[l])
                key = canonical_key(lam)
                acc[key] = acc.get(key, 0) + mult
        assert acc == spec.multiset()
