"""Connection forms: curvature, pole ranks, restrictions, assembly,
and the structure-condition checks."""

import random
from fractions import Fraction

import pytest

from arith_lg.connalg import (FTSTuple, MatForm, assemble_nabla,
                              assembled_pairing_flat, curvature,
                              log_restriction, poincare_rank,
                              rank1_restriction, residue_at_infinity,
                              to_infinity_chart, verify_fts, verify_metric)
from arith_lg.errors import (InputError, NotFlat, NotMeromorphicAlongT,
                             SingularMetric, WrongRank)
from arith_lg.mpoly import MPoly, RatFunc

NV = 3


def c(v):
    return MPoly.const(NV, v)


def var(i):
    return MPoly.variable(NV, i)


t, x, y = var(0), var(1), var(2)

ZERO2 = [[0, 0], [0, 0]]
E12 = [[0, 1], [0, 0]]
I2 = [[1, 0], [0, 1]]


def as_rf_matrix(rows, nvars=NV):
    def conv(v):
        if isinstance(v, RatFunc):
            return v
        if isinstance(v, MPoly):
            return RatFunc(v)
        return RatFunc.const(nvars, v)
    return tuple(tuple(conv(v) for v in row) for row in rows)


def mats_equal(a, b):
    return all(u == v for ra, rb in zip(a, b) for u, v in zip(ra, rb))


class TestMatForm:
    def test_zero_components_dropped(self):
        A = MatForm(NV, 1, {(1,): ZERO2, (2,): E12}, 2)
        assert (1,) not in A.comps
        assert (2,) in A.comps
        assert not A.is_zero

    def test_component_default_zero(self):
        A = MatForm(NV, 1, {(2,): E12}, 2)
        assert all(v.is_zero for row in A.component((1,)) for v in row)

    def test_key_validation(self):
        with pytest.raises(InputError):
            MatForm(NV, 2, {(1, 1): E12}, 2)
        with pytest.raises(InputError):
            MatForm(NV, 1, {(5,): E12}, 2)
        with pytest.raises(InputError):
            MatForm(NV, 1, {(1, 2): E12}, 2)

    def test_size_inference_needs_content(self):
        with pytest.raises(InputError):
            MatForm(NV, 1, {})

    def test_non_square_rejected(self):
        with pytest.raises(InputError):
            MatForm(NV, 1, {(1,): [[0, 1]]})

    def test_equality_ignores_representation(self):
        A = MatForm(NV, 1, {(1,): [[RatFunc(t, t * t), 0], [0, 0]]}, 2)
        B = MatForm(NV, 1, {(1,): [[RatFunc(c(1), t), 0], [0, 0]]}, 2)
        assert A == B


class TestCurvature:
    def test_zero(self):
        A = MatForm(NV, 1, {(1,): ZERO2}, 2)
        assert curvature(A).is_zero

    def test_constant_single_variable(self):
        A = MatForm(NV, 1, {(1,): [[1, 2], [3, 4]]}, 2)
        assert curvature(A).is_zero

    def test_hand_expanded_example(self):
        # A = E12 x dy + E21 y dx has curvature
        # (E12 - E21 + xy(E22 - E11)) dx^dy
        A = MatForm(NV, 1, {(2,): [[0, x], [0, 0]], (1,): [[0, 0], [y, 0]]}, 2)
        F = curvature(A)
        xy = x * y
        expected = as_rf_matrix([[-xy, c(1)], [c(-1), xy]])
        assert mats_equal(F.component((1, 2)), expected)
        assert all(v.is_zero for i in (1, 2)
                   for row in F.component((0, i)) for v in row)

    def test_commutator_term_orientation(self):
        # constant noncommuting dx and dy parts: curvature = [M, N] dx^dy
        M = [[0, 1], [0, 0]]
        N = [[0, 0], [1, 0]]
        A = MatForm(NV, 1, {(1,): M, (2,): N}, 2)
        F = curvature(A)
        expected = as_rf_matrix([[1, 0], [0, -1]])
        assert mats_equal(F.component((1, 2)), expected)

    def test_dt_component(self):
        # A = x dt: dt^dx coefficient is -d_x(x) = -1
        A = MatForm(NV, 1, {(0,): [[x, 0], [0, 0]]}, 2)
        F = curvature(A)
        assert F.component((0, 1))[0][0] == -1

    def test_gauge_transform_of_zero_is_flat(self):
        # A = U^{-1} dU for polynomial-invertible U: exactly flat
        rng = random.Random(11)
        for _ in range(10):
            U = [[c(1), c(0)], [c(0), c(1)]]
            Uinv = [[c(1), c(0)], [c(0), c(1)]]
            for _ in range(3):
                i, j = rng.sample((0, 1), 2)
                coef = rng.randint(-2, 2)
                mono = [c(1), x, y, x * y][rng.randrange(4)]
                E = [[c(1), c(0)], [c(0), c(1)]]
                E[i][j] = coef * mono
                Einv = [[c(1), c(0)], [c(0), c(1)]]
                Einv[i][j] = -coef * mono
                U = poly_matmul(E, U)
                Uinv = poly_matmul(Uinv, Einv)
            comps = {}
            for k in (1, 2):
                dU = [[e.partial(k) for e in row] for row in U]
                comps[(k,)] = poly_matmul(Uinv, dU)
            A = MatForm(NV, 1, comps, 2)
            assert curvature(A).is_zero

    def test_wrong_degree(self):
        A = MatForm(NV, 0, {(): I2}, 2)
        with pytest.raises(InputError):
            curvature(A)


def poly_matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), MPoly(NV))
             for j in range(n)] for i in range(n)]


class TestPoincareRank:
    def test_logarithmic(self):
        A = MatForm(NV, 1, {(0,): [[RatFunc(x, t), 0], [0, 0]]}, 2)
        assert poincare_rank(A) == 0

    def test_rank_one(self):
        A = MatForm(NV, 1, {(1,): [[RatFunc(c(1), t), 0], [0, 0]],
                            (0,): [[RatFunc(c(1), t * t), 0], [0, 0]]}, 2)
        assert poincare_rank(A) == 1

    def test_holomorphic_is_minus_one(self):
        A = MatForm(NV, 1, {(1,): [[1, 2], [3, 4]]}, 2)
        assert poincare_rank(A) == -1

    def test_regular_dt_part_is_minus_one(self):
        A = MatForm(NV, 1, {(0,): [[x, 0], [0, 1]]}, 2)
        assert poincare_rank(A) == -1

    def test_dx_pole_alone(self):
        A = MatForm(NV, 1, {(1,): [[RatFunc(c(1), t), 0], [0, 0]]}, 2)
        assert poincare_rank(A) == 1

    def test_regular_dx_with_log_dt(self):
        A = MatForm(NV, 1, {(1,): [[x, 0], [0, 0]],
                            (0,): [[RatFunc(c(1), t), 0], [0, 0]]}, 2)
        assert poincare_rank(A) == 0

    def test_mixed_denominator_rejected(self):
        A = MatForm(NV, 1, {(0,): [[RatFunc(c(1), t + x), 0], [0, 0]]}, 2)
        with pytest.raises(NotMeromorphicAlongT):
            poincare_rank(A)


class TestLogRestriction:
    def test_constant_residue(self):
        A = MatForm(NV, 1, {(0,): [[RatFunc(c(5), t), RatFunc(c(1), t)],
                                   [0, RatFunc(c(2), t)]]}, 2)
        lr = log_restriction(A)
        assert lr.residue[0][0] == 5
        assert lr.residue[0][1] == 1
        assert lr.residue[1][1] == 2
        assert all(v.is_zero for mat in lr.restriction for row in mat for v in row)
        assert lr.restriction_flat and lr.residue_horizontal

    def test_nonconstant_residue_without_dx_is_not_flat(self):
        # horizontality would force the residue constant
        A = MatForm(NV, 1, {(0,): [[RatFunc(x, t), 0], [0, RatFunc(y, t)]]}, 2)
        with pytest.raises(NotFlat):
            log_restriction(A)

    def test_rank_one_rejected(self):
        T = FTSTuple(2, 2, A=[ZERO2, ZERO2], phi=[E12, ZERO2], r0=I2,
                     rinf=[[0, 0], [0, 1]])
        with pytest.raises(WrongRank):
            log_restriction(assemble_nabla(T))

    def test_holomorphic_accepted_with_zero_residue(self):
        A = MatForm(NV, 1, {(1,): [[1, 0], [0, 1]]}, 2)
        lr = log_restriction(A)
        assert all(v.is_zero for row in lr.residue for v in row)


class TestRank1Restriction:
    def test_round_trip(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 1]])
        rt = rank1_restriction(assemble_nabla(T))
        assert mats_equal(rt.higgs[0], as_rf_matrix(E12, 2))
        assert mats_equal(rt.r0, as_rf_matrix(I2, 2))
        assert rt.higgs_squares_zero and rt.higgs_commutes_r0

    def test_round_trip_polynomial_entries(self):
        phi = [[x, y], [c(0), x]]
        r0 = [[x * y, c(0)], [c(0), x * y]]
        T = FTSTuple(2, 2, A=[ZERO2, ZERO2],
                     phi=[phi, ZERO2], r0=r0, rinf=ZERO2)
        A = assemble_nabla(T)
        # flatness of this particular tuple is not automatic; only run
        # the restriction when it holds
        if curvature(A).is_zero:
            rt = rank1_restriction(A)
            assert mats_equal(rt.higgs[0], as_rf_matrix(phi))

    def test_curved_form_rejected(self):
        A = MatForm(NV, 1, {(1,): [[RatFunc(y, t), 0], [0, 0]],
                            (2,): [[0, 0], [0, 0]]}, 2)
        with pytest.raises(NotFlat):
            rank1_restriction(A)

    def test_log_pole_rejected(self):
        A = MatForm(NV, 1, {(0,): [[RatFunc(c(5), t), 0], [0, 0]]}, 2)
        with pytest.raises(WrongRank):
            rank1_restriction(A)

    def test_scalar_case(self):
        # scalar flatness forces phi = -dr0/dx, commutators all vanish
        x1 = MPoly.variable(2, 1)
        T = FTSTuple(1, 1, A=[[[0]]], phi=[[[1]]], r0=[[-x1]], rinf=[[3]])
        rt = rank1_restriction(assemble_nabla(T))
        assert rt.higgs_squares_zero and rt.higgs_commutes_r0
        assert rt.higgs[0][0][0] == RatFunc.const(2, 1)
        assert rt.r0[0][0] == RatFunc(-x1)


class TestAssembly:
    def test_zero_tuple(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2)
        assert assemble_nabla(T).is_zero

    def test_explicit_shape(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 1]])
        A = assemble_nabla(T)
        nv = T.nvars
        tt = MPoly.variable(nv, 0)
        assert A.component((1,))[0][1] == RatFunc(MPoly.const(nv, 1), tt)
        At = A.component((0,))
        assert At[0][0] == RatFunc(MPoly.const(nv, 1), tt * tt)
        assert At[1][1] == RatFunc(1 - tt, tt * tt)

    def test_dt_over_t_squared_coefficient_is_r0(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12],
                     r0=[[2, 1], [0, 2]], rinf=[[0, 0], [0, 1]])
        A = assemble_nabla(T)
        back = [[v.mul_t_power(2).eval_t0() for v in row]
                for row in A.component((0,))]
        assert mats_equal(back, as_rf_matrix([[2, 1], [0, 2]], T.nvars))

    def test_poincare_rank_at_most_one(self):
        T = FTSTuple(2, 2, A=[ZERO2, [[0, 0], [0, 1]]], phi=[E12, ZERO2],
                     r0=I2, rinf=ZERO2)
        assert poincare_rank(assemble_nabla(T)) <= 1

    def test_infinity_chart_is_logarithmic(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 1]])
        B = to_infinity_chart(assemble_nabla(T))
        assert poincare_rank(B) == 0

    def test_residue_at_infinity_is_rinf(self):
        rinf = [[3, 1], [0, 4]]
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=rinf)
        res = residue_at_infinity(assemble_nabla(T))
        assert mats_equal(res, as_rf_matrix(rinf, T.nvars))

    def test_chart_change_involution(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 1]])
        A = assemble_nabla(T)
        assert to_infinity_chart(to_infinity_chart(A)) == A


class TestFTSTuple:
    def test_t_dependence_rejected(self):
        bad = [[t, c(0)], [c(0), c(0)]]
        with pytest.raises(InputError):
            FTSTuple(2, 1, A=[bad], phi=[ZERO2], r0=ZERO2, rinf=ZERO2)

    def test_asymmetric_pairing_rejected(self):
        with pytest.raises(InputError):
            FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2,
                     g=E12)

    def test_wrong_component_count(self):
        with pytest.raises(InputError):
            FTSTuple(2, 2, A=[ZERO2], phi=[ZERO2, ZERO2], r0=ZERO2, rinf=ZERO2)


class TestVerifyFTS:
    def test_known_pass_instance(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 1]])
        rep = verify_fts(T)
        assert rep.all_conditions_ok and rep.assembled_flat
        assert all(rep.conditions.values())

    def test_known_fail_instance(self):
        # doubling the diagonal breaks only the transport condition
        T = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=[[0, 0], [0, 2]])
        rep = verify_fts(T)
        assert not rep.all_conditions_ok and not rep.assembled_flat
        failed = [k for k, v in rep.conditions.items() if not v]
        assert failed == ["r0_transport"]

    def test_zero_tuple_passes(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2)
        rep = verify_fts(T)
        assert rep.all_conditions_ok and rep.assembled_flat

    def test_two_variable_pass(self):
        # commuting constant Higgs components with scalar r0
        phi1 = [[0, 1], [0, 0]]
        phi2 = [[0, 2], [0, 0]]
        T = FTSTuple(2, 2, A=[ZERO2, ZERO2], phi=[phi1, phi2],
                     r0=[[3, 0], [0, 3]], rinf=[[0, 0], [0, 1]])
        rep = verify_fts(T)
        assert rep.all_conditions_ok and rep.assembled_flat

    def test_random_equivalence(self):
        # the six conditions and assembled flatness always agree
        rng = random.Random(23)
        agree = 0
        for _ in range(40):
            T = random_tuple(rng)
            rep = verify_fts(T)
            assert rep.all_conditions_ok == rep.assembled_flat
            agree += 1
        assert agree == 40


def random_tuple(rng, with_metric=False):
    r = rng.choice((1, 2, 3))
    m = rng.choice((1, 2))
    nv = m + 1
    kind = rng.random()

    def rand_poly(max_deg=2):
        p = MPoly(nv)
        for _ in range(rng.randrange(3)):
            exps = [0] * nv
            for _ in range(max_deg):
                i = rng.randrange(1, nv)
                if rng.random() < 0.6:
                    exps[i] += 1
            p = p + MPoly(nv, [(tuple(exps), rng.randint(-2, 2))])
        return p

    def rand_mat():
        return [[rand_poly() for _ in range(r)] for _ in range(r)]

    def zmat():
        return [[MPoly(nv) for _ in range(r)] for _ in range(r)]

    def cmat(scale):
        return [[MPoly.const(nv, scale if i == j else 0) for j in range(r)]
                for i in range(r)]

    if kind < 0.35:
        # flat by construction: zero Higgs, constant commuting data
        T = FTSTuple(r, m, A=[zmat() for _ in range(m)],
                     phi=[zmat() for _ in range(m)],
                     r0=cmat(rng.randint(-2, 2)), rinf=cmat(rng.randint(-2, 2)),
                     g=cmat(1) if with_metric else None)
    elif kind < 0.5 and r == 2:
        # flat nilpotent template: phi = c E12, scalar r0,
        # rinf = diag(d, d+1)
        cval = rng.randint(1, 3)
        d = rng.randint(-2, 2)
        phi = [[MPoly.const(nv, 0), MPoly.const(nv, cval)],
               [MPoly.const(nv, 0), MPoly.const(nv, 0)]]
        rinf = [[MPoly.const(nv, d), MPoly.const(nv, 0)],
                [MPoly.const(nv, 0), MPoly.const(nv, d + 1)]]
        T = FTSTuple(2, m, A=[zmat() for _ in range(m)],
                     phi=[phi] + [zmat() for _ in range(m - 1)],
                     r0=cmat(rng.randint(-2, 2)), rinf=rinf,
                     g=cmat(1) if with_metric else None)
    else:
        T = FTSTuple(r, m, A=[rand_mat() for _ in range(m)],
                     phi=[rand_mat() for _ in range(m)],
                     r0=rand_mat(), rinf=rand_mat(),
                     g=cmat(1) if with_metric else None)
    return T


class TestVerifyMetric:
    def test_trivial_all_pass(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2, g=I2)
        rep = verify_metric(T)
        assert rep.all_ok

    def test_skew_rinf_passes(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2,
                     rinf=[[0, 1], [-1, 0]], g=I2)
        assert verify_metric(T).rinf_skew_adjoint

    def test_e12_r0_fails_self_adjointness(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=E12, rinf=ZERO2, g=I2)
        rep = verify_metric(T)
        assert not rep.r0_self_adjoint
        assert not rep.all_ok

    def test_missing_metric(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2)
        with pytest.raises(InputError):
            verify_metric(T)

    def test_singular_metric(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2,
                     g=[[1, 1], [1, 1]])
        with pytest.raises(SingularMetric):
            verify_metric(T)

    def test_nonconstant_flat_metric(self):
        # g = diag(1, x1): flatness needs A with A^T g + g A = dg;
        # A = diag(0, 1/(2 x1)) dx is rational but not polynomial, so
        # instead check failure with A = 0
        T = FTSTuple(2, 1, A=[ZERO2], phi=[ZERO2], r0=ZERO2, rinf=ZERO2,
                     g=[[MPoly.const(2, 1), MPoly.const(2, 0)],
                        [MPoly.const(2, 0), MPoly.variable(2, 1)]])
        rep = verify_metric(T)
        assert not rep.pairing_flat

    def test_metric_equivalence_with_assembled_pairing(self):
        # the four identities hold exactly when the t/-t pairing on the
        # assembled family is flat, computed by disjoint paths
        rng = random.Random(37)
        for _ in range(30):
            T = random_tuple(rng, with_metric=True)
            assert verify_metric(T).all_ok == assembled_pairing_flat(T)

    def test_assembled_pairing_on_known_instances(self):
        T = FTSTuple(2, 1, A=[ZERO2], phi=[[[0, 1], [1, 0]]], r0=I2,
                     rinf=ZERO2, g=I2)
        assert assembled_pairing_flat(T)
        T2 = FTSTuple(2, 1, A=[ZERO2], phi=[E12], r0=I2, rinf=ZERO2, g=I2)
        assert not assembled_pairing_flat(T2)
