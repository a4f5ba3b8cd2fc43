import json

import numpy as np
import pytest

from qdef import (I, J, Quaternion, QOperator, gram_schmidt,
                  hermitian_random, kernel_q, left_scalar, point_sspectrum,
                  random_operator, random_qvector, random_unit_imaginary,
                  real_symmetric, resolvent_bound_check,
                  resolvent_inverse_norm, resolvent_poly, selfadjoint_iff_real)
from qdef.errors import PreconditionFailed


def spheres_of(report):
    return [(round(s.re, 9), round(s.im_mag, 9), s.multiplicity)
            for s in report.spheres]


class TestPointSpectrum:
    def test_real_diagonal(self):
        rep = point_sspectrum(QOperator([[1, 0], [0, 2]]))
        assert spheres_of(rep) == [(1.0, 0.0, 1), (2.0, 0.0, 1)]
        assert rep.all_real

    def test_left_unit_whole_sphere(self):
        rep = point_sspectrum(left_scalar(I, 1))
        assert spheres_of(rep) == [(0.0, 1.0, 1)]
        assert not rep.all_real

    def test_hermitian_with_j(self):
        A = QOperator([[Quaternion(0), J], [-J, Quaternion(0)]])
        rep = point_sspectrum(A)
        assert spheres_of(rep) == [(-1.0, 0.0, 1), (1.0, 0.0, 1)]
        assert rep.all_real

    def test_multiplicity_conservation(self):
        for seed in range(10):
            n = 2 + seed % 4
            A = random_operator(n, seed=seed)
            rep = point_sspectrum(A)
            assert sum(2 * s.multiplicity for s in rep.spheres) == 2 * n

    def test_sphere_invariance_under_unit_choice(self):
        # R_q depends on q only through (Re q, |Im q|)
        rng = np.random.default_rng(1)
        A = hermitian_random(3, seed=2)
        rep = point_sspectrum(A)
        s = rep.spheres[0]
        base = kernel_q(resolvent_poly(A, s.representative()), scale=1.0).qdim
        for _ in range(20):
            u = random_unit_imaginary(rng)
            q = Quaternion(s.re) + u * s.im_mag
            qd = kernel_q(resolvent_poly(A, q), scale=1.0).qdim
            assert qd == base

    def test_unitary_similarity_invariance(self):
        rng = np.random.default_rng(3)
        for seed in range(5):
            n = 4
            A = random_operator(n, seed=seed)
            B = gram_schmidt([random_qvector(rng, n) for _ in range(n)])
            U = QOperator.from_entries(B.matrix.transpose(1, 0, 2))
            conj = U.adjoint() @ A @ U
            s1 = point_sspectrum(A, verify_kernels=False).spheres
            s2 = point_sspectrum(conj, verify_kernels=False).spheres
            assert len(s1) == len(s2)
            for a, b in zip(s1, s2):
                assert abs(a.re - b.re) <= 1e-8
                assert abs(a.im_mag - b.im_mag) <= 1e-8
                assert a.multiplicity == b.multiplicity

    def test_hermitian_always_real(self):
        for seed in range(20):
            A = hermitian_random(2 + seed % 5, seed=seed)
            assert point_sspectrum(A).all_real

    def test_report_serialization(self):
        rep = point_sspectrum(QOperator([[1, 0], [0, 2]]))
        obj = json.loads(rep.to_json())
        assert obj["all_real"] is True
        assert obj["spheres"][0] == {"re": 1.0, "im_mag": 0.0, "mult": 1}
        csv = rep.to_csv()
        assert csv.splitlines()[0] == "re,im_mag,multiplicity"
        assert len(csv.splitlines()) == 3


class TestSelfAdjointIffReal:
    def test_real_symmetric(self):
        v = selfadjoint_iff_real(real_symmetric(4, seed=4))
        assert v.self_adjoint and v.all_real and v.hypotheses_met and v.equivalent

    def test_left_unit_forward_report(self):
        v = selfadjoint_iff_real(left_scalar(I, 2))
        assert not v.self_adjoint and not v.all_real
        with pytest.raises(PreconditionFailed):
            selfadjoint_iff_real(left_scalar(I, 2), strict=True)

    def test_zero_operator(self):
        v = selfadjoint_iff_real(QOperator.zero(2))
        assert v.self_adjoint and v.all_real
        rep = point_sspectrum(QOperator.zero(2))
        assert spheres_of(rep) == [(0.0, 0.0, 2)]


class TestResolventBound:
    def test_diag_at_i(self):
        A = QOperator([[1, 0], [0, 2]])
        assert resolvent_inverse_norm(A, I) == pytest.approx(0.5, rel=1e-12)
        assert resolvent_bound_check(A, I, samples=30, seed=0) <= 1e-8

    def test_diag_at_2i(self):
        A = QOperator([[1, 0], [0, 2]])
        # R = diag(5, 8); bound is 1/4
        assert resolvent_inverse_norm(A, I * 2.0) == pytest.approx(0.2, rel=1e-12)
        assert 0.2 <= 0.25

    def test_real_shift_rejected(self):
        with pytest.raises(PreconditionFailed):
            resolvent_bound_check(QOperator([[1, 0], [0, 2]]), Quaternion(3))

    def test_non_symmetric_rejected(self):
        with pytest.raises(PreconditionFailed):
            resolvent_bound_check(random_operator(3, seed=5), I)

    def test_hermitian_family(self):
        rng = np.random.default_rng(6)
        for seed in range(10):
            A = hermitian_random(2 + seed % 4, seed=seed)
            q = Quaternion(*rng.standard_normal(4))
            while q.im_norm() < 0.2:
                q = Quaternion(*rng.standard_normal(4))
            bound = 1.0 / q.im_norm() ** 2
            assert resolvent_inverse_norm(A, q) <= bound + 1e-8
            assert resolvent_bound_check(A, q, samples=20, seed=seed) <= 1e-8
