"""Exterior calculus layer: wedge, d, interior products, and the three
brackets (Lie, Frolicher-Nijenhuis, Schouten) with their defining identities."""

import random
from fractions import Fraction

import pytest

from lnlab.poly import Chart, Poly
from lnlab.forms import (DiffForm, Multivector, VForm, bivector_from_sharp,
                         exterior_d, frolicher_nijenhuis, interior_vector,
                         interior_vvf, lie_derivative_vvf, mv_wedge,
                         nijenhuis_torsion, pairing, schouten, sharp,
                         sharp_matrix, sort_index, vf_bracket, wedge)

from helpers import (CH2, CH3, rnd_form, rnd_mv, rnd_one_form, rnd_poly,
                     rnd_vf, rnd_vvform)

X2 = Poly.var(CH2, "x")
Y2 = Poly.var(CH2, "y")
ONE2 = Poly.const(CH2, 1)


class TestSortIndex:
    def test_sorted_is_fixed(self):
        assert sort_index((0, 1, 2)) == ((0, 1, 2), 1)

    def test_single_swap(self):
        assert sort_index((1, 0)) == ((0, 1), -1)

    def test_three_cycle(self):
        assert sort_index((2, 0, 1)) == ((0, 1, 2), 1)

    def test_repeat_vanishes(self):
        assert sort_index((0, 0)) is None
        assert sort_index((1, 2, 1)) is None


class TestWedge:
    def test_graded_commutativity(self):
        rng = random.Random(1)
        for p, q in [(1, 1), (1, 2), (2, 1)]:
            a, b = rnd_form(rng, CH3, p), rnd_form(rng, CH3, q)
            sign = (-1) ** (p * q)
            assert wedge(a, b) == wedge(b, a) * sign

    def test_associativity(self):
        rng = random.Random(2)
        a, b, c = (rnd_form(rng, CH3, 1) for _ in range(3))
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))

    def test_basis_example(self):
        dx = DiffForm.basis(CH2, (0,))
        dy = DiffForm.basis(CH2, (1,))
        assert wedge(dx, dy).coeff((0, 1)) == ONE2
        assert wedge(dy, dx).coeff((0, 1)) == -ONE2

    def test_top_degree_truncation(self):
        rng = random.Random(3)
        a, b = rnd_form(rng, CH2, 1), rnd_form(rng, CH2, 2)
        assert wedge(a, b).is_zero


class TestExteriorD:
    def test_d_squared_zero(self):
        rng = random.Random(4)
        for deg in (0, 1, 2):
            a = rnd_form(rng, CH3, deg)
            assert exterior_d(exterior_d(a)).is_zero

    def test_leibniz(self):
        rng = random.Random(5)
        for p, q in [(0, 1), (1, 1), (1, 2)]:
            a, b = rnd_form(rng, CH3, p), rnd_form(rng, CH3, q)
            lhs = exterior_d(wedge(a, b))
            rhs = wedge(exterior_d(a), b) + wedge(a, exterior_d(b)) * ((-1) ** p)
            assert lhs == rhs

    def test_d_of_function(self):
        f = DiffForm.from_poly(X2 * X2 * Y2)
        df = exterior_d(f)
        assert df.coeff((0,)) == 2 * X2 * Y2
        assert df.coeff((1,)) == X2 * X2


class TestInterior:
    def test_nilpotent(self):
        rng = random.Random(6)
        comps = [rnd_poly(rng, CH3) for _ in range(3)]
        a = rnd_form(rng, CH3, 3)
        assert interior_vector(comps, interior_vector(comps, a)).is_zero

    def test_derivation_over_wedge(self):
        rng = random.Random(7)
        comps = [rnd_poly(rng, CH3) for _ in range(3)]
        for p, q in [(1, 1), (1, 2)]:
            a, b = rnd_form(rng, CH3, p), rnd_form(rng, CH3, q)
            lhs = interior_vector(comps, wedge(a, b))
            rhs = (wedge(interior_vector(comps, a), b)
                   + wedge(a, interior_vector(comps, b)) * ((-1) ** p))
            assert lhs == rhs

    def test_identity_insertion_counts_degree(self):
        rng = random.Random(8)
        for deg in (1, 2):
            a = rnd_form(rng, CH2, deg)
            assert interior_vvf(VForm.identity(CH2), a) == a * deg


class TestLieDerivative:
    def test_commutes_with_d_for_fields(self):
        rng = random.Random(9)
        Xf = rnd_vf(rng, CH2)
        a = rnd_one_form(rng, CH2)
        assert lie_derivative_vvf(Xf, exterior_d(a)) == exterior_d(lie_derivative_vvf(Xf, a))

    def test_on_functions(self):
        Xf = VForm.section(CH2, [X2, Y2 * Y2])
        f = DiffForm.from_poly(X2 * Y2)
        out = lie_derivative_vvf(Xf, f)
        assert out.coeff(()) == X2 * Y2 + Y2 * Y2 * X2

    def test_bracket_compatibility(self):
        # L_[X,Y] = L_X L_Y - L_Y L_X on forms
        rng = random.Random(10)
        Xf, Yf = rnd_vf(rng, CH2), rnd_vf(rng, CH2)
        a = rnd_one_form(rng, CH2)
        lhs = lie_derivative_vvf(vf_bracket(Xf, Yf), a)
        rhs = (lie_derivative_vvf(Xf, lie_derivative_vvf(Yf, a))
               - lie_derivative_vvf(Yf, lie_derivative_vvf(Xf, a)))
        assert lhs == rhs


class TestVectorFieldBracket:
    def test_antisymmetry_and_jacobi(self):
        rng = random.Random(11)
        Xf, Yf, Zf = (rnd_vf(rng, CH3) for _ in range(3))
        assert (vf_bracket(Xf, Yf) + vf_bracket(Yf, Xf)).is_zero
        jac = (vf_bracket(Xf, vf_bracket(Yf, Zf))
               + vf_bracket(Yf, vf_bracket(Zf, Xf))
               + vf_bracket(Zf, vf_bracket(Xf, Yf)))
        assert jac.is_zero

    def test_known_value(self):
        Xf = VForm.section(CH2, [X2 * Y2, Poly.zero(CH2)])
        Yf = VForm.section(CH2, [Poly.zero(CH2), ONE2])
        # [xy dx, dy] = -x dx
        assert vf_bracket(Xf, Yf).section_components()[0] == -X2


class TestFrolicherNijenhuis:
    def test_degree_zero_is_lie_bracket(self):
        rng = random.Random(12)
        Xf, Yf = rnd_vf(rng, CH2), rnd_vf(rng, CH2)
        assert frolicher_nijenhuis(Xf, Yf) == vf_bracket(Xf, Yf)

    def test_graded_antisymmetry(self):
        rng = random.Random(13)
        for k, l in [(1, 1), (0, 1), (1, 2)]:
            K, L = rnd_vvform(rng, CH2, k), rnd_vvform(rng, CH2, l)
            assert frolicher_nijenhuis(K, L) == frolicher_nijenhuis(L, K) * (-((-1) ** (k * l)))

    def test_graded_jacobi(self):
        rng = random.Random(14)
        K0 = rnd_vf(rng, CH2)
        K1, L1 = rnd_vvform(rng, CH2, 1), rnd_vvform(rng, CH2, 1)
        fn = frolicher_nijenhuis
        # degrees (0, 1, 1): cyclic signs (-1)^(k1 k3), (-1)^(k2 k1), (-1)^(k3 k2)
        lhs = (fn(K0, fn(K1, L1))
               + fn(K1, fn(L1, K0))
               - fn(L1, fn(K0, K1)))
        assert lhs.is_zero

    def test_identity_is_central(self):
        rng = random.Random(15)
        K = rnd_vvform(rng, CH2, 1)
        assert frolicher_nijenhuis(VForm.identity(CH2), K).is_zero

    def test_torsion_is_half_self_bracket(self):
        rng = random.Random(16)
        for _ in range(5):
            r = rnd_vvform(rng, CH2, 1)
            half = frolicher_nijenhuis(r, r) * Fraction(1, 2)
            assert nijenhuis_torsion(r) == half


class TestTorsion:
    def test_complex_structure_is_integrable(self):
        J = VForm(CH2, 1, 2, {((0,), 1): ONE2, ((1,), 0): -ONE2})
        assert nijenhuis_torsion(J).is_zero

    def test_scalar_multiple_of_identity(self):
        f = X2 + Y2
        r = VForm(CH2, 1, 2, {((0,), 0): f, ((1,), 1): f})
        assert nijenhuis_torsion(r).is_zero

    def test_known_nonzero_value(self):
        # r = y dx (x) d/dx has N_r = y dx^dy (x) d/dx
        r = VForm(CH2, 1, 2, {((0,), 0): Y2})
        N = nijenhuis_torsion(r)
        assert N.coeffs == {((0, 1), 0): Y2}


class TestSchouten:
    def test_vector_field_case_is_lie_derivative(self):
        rng = random.Random(17)
        Xf = rnd_vf(rng, CH2)
        Xmv = Multivector(CH2, 1, {(i,): p for i, p in
                                   enumerate(Xf.section_components()) if not p.is_zero})
        Ymv = rnd_mv(rng, CH2, 1)
        Yf = VForm.section(CH2, [Ymv.coeff((i,)) for i in range(2)])
        br = schouten(Xmv, Ymv)
        lie = vf_bracket(Xf, Yf)
        assert [br.coeff((i,)) for i in range(2)] == lie.section_components()

    def test_graded_antisymmetry(self):
        rng = random.Random(18)
        for p, q in [(1, 2), (2, 2), (2, 3), (1, 3)]:
            P, Q = rnd_mv(rng, CH3, p), rnd_mv(rng, CH3, q)
            sign = -((-1) ** ((p - 1) * (q - 1)))
            assert schouten(P, Q) == schouten(Q, P) * sign

    def test_leibniz(self):
        rng = random.Random(19)
        P = rnd_mv(rng, CH3, 1)
        Q = rnd_mv(rng, CH3, 1)
        S = rnd_mv(rng, CH3, 2)
        lhs = schouten(P, mv_wedge(Q, S))
        rhs = (mv_wedge(schouten(P, Q), S)
               + mv_wedge(Q, schouten(P, S)))
        assert lhs == rhs

    def test_graded_jacobi(self):
        rng = random.Random(20)
        P = rnd_mv(rng, CH2, 1)
        Q = rnd_mv(rng, CH2, 2)
        S = rnd_mv(rng, CH2, 2)
        p, q, s = 0, 1, 1  # shifted degrees
        lhs = (schouten(P, schouten(Q, S)) * ((-1) ** (p * s))
               + schouten(Q, schouten(S, P)) * ((-1) ** (q * p))
               + schouten(S, schouten(P, Q)) * ((-1) ** (s * q)))
        assert lhs.is_zero

    def test_poisson_examples(self):
        z3 = Poly.var(CH3, "z")
        x3 = Poly.var(CH3, "x")
        y3 = Poly.var(CH3, "y")
        pi = Multivector(CH3, 2, {(0, 1): z3, (1, 2): x3})
        assert schouten(pi, pi).is_zero
        bad = Multivector(CH3, 2, {(0, 1): y3, (1, 2): x3})
        defect = schouten(bad, bad)
        assert defect.coeffs == {(0, 1, 2): -2 * x3}


class TestSharp:
    def test_standard_symplectic(self):
        pi0 = Multivector(CH2, 2, {(0, 1): ONE2})
        dx = DiffForm.basis(CH2, (0,))
        dy = DiffForm.basis(CH2, (1,))
        assert sharp(pi0, dx).section_components() == [Poly.zero(CH2), ONE2]
        assert sharp(pi0, dy).section_components() == [-ONE2, Poly.zero(CH2)]

    def test_pairing_recovers_bivector(self):
        rng = random.Random(21)
        P = rnd_mv(rng, CH3, 2)
        a, b = rnd_one_form(rng, CH3), rnd_one_form(rng, CH3)
        lhs = pairing(b, sharp(P, a))
        rhs = Poly.zero(CH3)
        for i in range(3):
            for j in range(3):
                rhs = rhs + a.coeff((i,)) * b.coeff((j,)) * P.coeff((i, j))
        assert lhs == rhs

    def test_matrix_round_trip(self):
        rng = random.Random(22)
        P = rnd_mv(rng, CH3, 2)
        assert bivector_from_sharp(CH3, sharp_matrix(P)) == P
