"""Anchored brackets in a frame: validation, duals, deformations, and the
compatibility equations with a degree-1 derivation."""

import random

import pytest

from lnlab.poly import Chart, Poly, PolyError
from lnlab.forms import Multivector, VForm, vf_bracket
from lnlab.gder import (FramedBundle, build_drT, build_drTstar,
                        build_from_connection)
from lnlab.algebroid import (AlgebroidStructure, FrameBivector,
                             ce_differential, check_bialgebroid, check_im,
                             cotangent_of_poisson, deformed_bracket,
                             tangent_algebroid)

from helpers import CH2, CH3, rnd_endo, rnd_poly, rnd_vf

X = Poly.var(CH2, "x")
Y = Poly.var(CH2, "y")
ONE = Poly.const(CH2, 1)
ZERO = Poly.zero(CH2)

XID = VForm(CH2, 1, 2, {((0,), 0): X, ((1,), 1): X})
J2 = VForm(CH2, 1, 2, {((0,), 1): ONE, ((1,), 0): -ONE})
PI0 = Multivector(CH2, 2, {(0, 1): ONE})


def aff2_pair():
    """Rank-2 bundle with zero anchor, [e1,e2] = e2, and its classical dual."""
    E = FramedBundle(CH2, ("e1", "e2"))
    zrow = [[ZERO, ZERO], [ZERO, ZERO]]
    A = AlgebroidStructure(E, zrow, {(0, 1): [ZERO, ONE]})
    Astar = AlgebroidStructure(E.dual(), zrow, {(0, 1): [ZERO, -ONE]})
    return A, Astar


class TestValidate:
    def test_tangent_passes(self):
        assert tangent_algebroid(CH3).validate().passed

    def test_cotangent_of_poisson_passes(self):
        Z3 = Poly.var(CH3, "z")
        X3 = Poly.var(CH3, "x")
        pi = Multivector(CH3, 2, {(0, 1): Z3, (1, 2): X3})
        ctg = cotangent_of_poisson(pi)
        assert not ctg.pre_lie_only
        assert ctg.validate().passed

    def test_non_poisson_is_flagged(self):
        Y3 = Poly.var(CH3, "y")
        X3 = Poly.var(CH3, "x")
        pi = Multivector(CH3, 2, {(0, 1): Y3, (1, 2): X3})
        ctg = cotangent_of_poisson(pi)
        assert ctg.pre_lie_only

    def test_rank3_jacobi_failure(self):
        # [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=-e1 with zero anchor: the cyclic
        # sum on (e1,e2,e3) is e3, so Jacobi fails there and only there
        ch = Chart(("t",))
        z, o = Poly.zero(ch), Poly.const(ch, 1)
        E = FramedBundle(ch, ("e1", "e2", "e3"))
        A = AlgebroidStructure(E, [[z]] * 3,
                               {(0, 1): [z, z, o], (1, 2): [o, z, z],
                                (0, 2): [-o, z, z]})
        rep = A.validate()
        assert not rep.passed
        assert [(i.law, i.detail) for i in rep.failures()] == [
            ("Jacobi identity", "(e1,e2,e3)")]

    def test_shape_errors(self):
        E = FramedBundle(CH2, ("e1", "e2"))
        with pytest.raises(PolyError):
            AlgebroidStructure(E, [[ZERO, ZERO]], {})
        with pytest.raises(PolyError):
            AlgebroidStructure(E, [[ZERO, ZERO]] * 2, {(1, 0): [ZERO, ZERO]})


class TestSectionBracket:
    def test_leibniz_in_second_slot(self):
        rng = random.Random(50)
        A = tangent_algebroid(CH2)
        s, t = rnd_vf(rng, CH2), rnd_vf(rng, CH2)
        f = rnd_poly(rng, CH2)
        lhs = A.section_bracket(s, t * f)
        rho_s = A.anchor_of(s).section_components()
        df = sum((rho_s[i] * f.diff(i) for i in range(2)), ZERO)
        rhs = A.section_bracket(s, t) * f + t * df
        assert (lhs - rhs).is_zero

    def test_tangent_bracket_is_vf_bracket(self):
        rng = random.Random(51)
        A = tangent_algebroid(CH2)
        s, t = rnd_vf(rng, CH2), rnd_vf(rng, CH2)
        assert (A.section_bracket(s, t) - vf_bracket(s, t)).is_zero

    def test_antisymmetry(self):
        rng = random.Random(52)
        pi = Multivector(CH2, 2, {(0, 1): rnd_poly(rng, CH2)})
        A = cotangent_of_poisson(pi)
        s, t = rnd_vf(rng, CH2), rnd_vf(rng, CH2)
        assert (A.section_bracket(s, t) + A.section_bracket(t, s)).is_zero


class TestDualDifferential:
    def test_aff2_values(self):
        A, Astar = aff2_pair()
        e1 = A.bundle.frame_section(0)
        e2 = A.bundle.frame_section(1)
        assert ce_differential(Astar, e1).is_zero
        d2 = ce_differential(Astar, e2)
        assert d2.coeffs == {(0, 1): ONE}

    def test_leibniz_over_functions(self):
        rng = random.Random(53)
        ctg = cotangent_of_poisson(PI0)
        TM = tangent_algebroid(CH2)
        s = rnd_vf(rng, CH2)
        f = rnd_poly(rng, CH2)
        lhs = ce_differential(ctg, s * f)
        # delta(f s) = f delta(s) + df_pi ^ s with df taken through the anchor
        df = [sum((ctg.anchor[a][i] * f.diff(i) for i in range(2)), ZERO)
              for a in range(2)]
        rhs = (ce_differential(ctg, s) * f
               + FrameBivector.wedge_sections(
                   VForm.section(CH2, df), s, TM.bundle))
        assert (lhs - rhs).is_zero


class TestBialgebroid:
    def test_aff2_pair_passes(self):
        A, Astar = aff2_pair()
        assert check_bialgebroid(A, Astar).passed

    def test_modified_cobracket_still_cocycle(self):
        # replacing the dual bracket by [e1*,e2*] = -e1* keeps the cocycle
        # condition: the induced delta kills e1 and both Lie terms vanish
        A, _ = aff2_pair()
        pert = AlgebroidStructure(A.bundle.dual(), [[ZERO, ZERO]] * 2,
                                  {(0, 1): [-ONE, ZERO]})
        assert pert.validate().passed
        assert check_bialgebroid(A, pert).passed

    def test_invalid_base_short_circuits(self):
        ch = Chart(("t",))
        z, o = Poly.zero(ch), Poly.const(ch, 1)
        E = FramedBundle(ch, ("e1", "e2", "e3"))
        bad = AlgebroidStructure(E, [[z]] * 3,
                                 {(0, 1): [z, z, o], (1, 2): [o, z, z],
                                  (0, 2): [-o, z, z]})
        triv = AlgebroidStructure(E.dual(), [[z]] * 3, {})
        rep = check_bialgebroid(bad, triv)
        assert not rep.passed
        assert rep.items[0].law == "base structure valid"


class TestDeformedBracket:
    def test_scaling_endomorphism(self):
        A = tangent_algebroid(CH2)
        db = deformed_bracket(A, build_drT(XID))
        assert db.skew
        # [d/dx, d/dy] deformed by x-scaling picks up the derivative of x
        assert db.table[0][1].section_components() == [ZERO, ONE]
        assert db.to_algebroid().validate().passed

    def test_rotation_endomorphism(self):
        A = tangent_algebroid(CH2)
        db = deformed_bracket(A, build_drT(J2))
        assert db.skew
        assert db.table[0][1].is_zero
        assert db.to_algebroid().validate().passed

    def test_anchors_agree_for_drT(self):
        rng = random.Random(54)
        A = tangent_algebroid(CH2)
        db = deformed_bracket(A, build_drT(rnd_endo(rng, CH2)))
        for a in range(2):
            for j in range(2):
                assert db.anchor_l[a][j] == db.anchor_r[a][j]

    def test_degree_mismatch(self):
        A = tangent_algebroid(CH2)
        from lnlab.gder import GenDer
        D0 = GenDer(A.bundle, 0,
                    [A.bundle.frame_section(a) for a in range(2)],
                    None, VForm.zero(CH2, 0, 2))
        with pytest.raises(PolyError):
            deformed_bracket(A, D0)


class TestIMEquations:
    def test_drT_always_satisfies_them(self):
        rng = random.Random(55)
        A = tangent_algebroid(CH2)
        for _ in range(3):
            assert check_im(A, build_drT(rnd_endo(rng, CH2))).passed

    def test_cotangent_with_selfadjoint_endo(self):
        ctg = cotangent_of_poisson(PI0)
        assert check_im(ctg, build_drTstar(XID)).passed

    def test_cotangent_with_rotation_fails_symbol_square(self):
        ctg = cotangent_of_poisson(PI0)
        rep = check_im(ctg, build_drTstar(J2))
        assert not rep.passed
        assert {i.law for i in rep.failures()} == {"IM symbol square"}

    def test_flat_connection_with_identity_symbol(self):
        A = tangent_algebroid(CH2)
        lf = [A.bundle.frame_section(a) for a in range(2)]
        gamma = [[[ZERO, ZERO], [ZERO, ZERO]], [[ZERO, ZERO], [ZERO, ZERO]]]
        D = build_from_connection(A.bundle, gamma, lf, VForm(CH2, 1, 2, {}))
        rep = check_im(A, D)
        assert not rep.passed
        assert {i.law for i in rep.failures()} == {"IM symbol square"}
