import numpy as np
import pytest

from qdef import (I, J, K, ONE, ComplexPair, Quaternion, conj_norm_inv,
                  embed2x2, format_quaternion, from_embed2x2, im_norm,
                  parse_quaternion, qmul)


def rand_q(rng, scale=2.0):
    return Quaternion(*(scale * rng.standard_normal(4)))


class TestUnitTable:
    def test_products(self):
        assert (I * J).isclose(K)
        assert (J * I).isclose(-K)
        assert (J * K).isclose(I)
        assert (K * J).isclose(-I)
        assert (K * I).isclose(J)
        assert (I * K).isclose(-J)

    def test_squares(self):
        for u in (I, J, K):
            assert (u * u).isclose(Quaternion(-1))

    def test_identity_element(self):
        q = Quaternion(2, 0, 3, 0)
        assert (q * ONE).isclose(q)
        assert (ONE * q).isclose(q)

    def test_worked_product(self):
        # (1+2i)(3+k) via the embedding oracle and frozen by hand
        a = Quaternion(1, 2, 0, 0)
        b = Quaternion(3, 0, 0, 1)
        expected = from_embed2x2(embed2x2(a) @ embed2x2(b))
        assert (a * b).isclose(expected, atol=1e-14)
        assert (a * b).isclose(Quaternion(3, 6, -2, 1), atol=1e-14)

    def test_associative_noncommutative(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a, b, c = rand_q(rng), rand_q(rng), rand_q(rng)
            assert ((a * b) * c).isclose(a * (b * c), atol=1e-12)
        assert not (I * J).isclose(J * I)


class TestConjNormInv:
    def test_unit_imaginary(self):
        c, n, inv = conj_norm_inv(I)
        assert c.isclose(-I) and n == 1.0 and inv.isclose(-I)

    def test_norm_value(self):
        q = Quaternion(1, 2, 3, 4)
        assert q.norm_sq() == pytest.approx(30.0, abs=1e-14)

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroDivisionError):
            conj_norm_inv(Quaternion(0))

    def test_conj_involution(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            q = rand_q(rng)
            assert q.conjugate().conjugate().isclose(q, atol=0)

    def test_inverse_property(self):
        rng = np.random.default_rng(4)
        for _ in range(200):
            q = rand_q(rng)
            if q.norm() < 1e-6:
                continue
            assert (q * q.inverse() - ONE).norm() <= 1e-14
            assert (q.inverse() * q - ONE).norm() <= 1e-14

    def test_q_times_conj_is_normsq(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            q = rand_q(rng)
            left = q * q.conjugate()
            right = q.conjugate() * q
            assert left.isclose(Quaternion(q.norm_sq()), atol=1e-12)
            assert right.isclose(Quaternion(q.norm_sq()), atol=1e-12)

    def test_norm_multiplicative(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            a, b = rand_q(rng), rand_q(rng)
            assert (a * b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-12)


class TestEmbedding:
    def test_unit_images(self):
        np.testing.assert_allclose(embed2x2(ONE), np.eye(2))
        np.testing.assert_allclose(embed2x2(I), np.array([[0, 1j], [1j, 0]]))
        np.testing.assert_allclose(embed2x2(J), np.array([[0, -1], [1, 0]]))
        np.testing.assert_allclose(embed2x2(K), np.array([[1j, 0], [0, -1j]]))

    def test_det_is_normsq(self):
        q = Quaternion(1, 2, 3, 4)
        assert np.linalg.det(embed2x2(q)) == pytest.approx(30.0, abs=1e-12)

    def test_multiplicative(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            a, b = rand_q(rng), rand_q(rng)
            lhs = embed2x2(a * b)
            rhs = embed2x2(a) @ embed2x2(b)
            assert np.max(np.abs(lhs - rhs)) <= 1e-14 * max(1.0, a.norm() * b.norm())

    def test_conjugate_maps_to_adjoint(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            q = rand_q(rng)
            np.testing.assert_allclose(embed2x2(q.conjugate()),
                                       embed2x2(q).conj().T, atol=1e-15)

    def test_complex_pair_roundtrip_exact(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            q = rand_q(rng)
            back = ComplexPair.from_quaternion(q).to_quaternion()
            assert back.isclose(q, atol=0)


class TestImNorm:
    def test_examples(self):
        assert im_norm(Quaternion(5)) == 0.0
        assert im_norm(I) == 1.0
        assert im_norm(Quaternion(1, 2, 2, 1)) == pytest.approx(3.0, abs=1e-15)

    def test_zero_iff_self_conjugate(self):
        rng = np.random.default_rng(10)
        for _ in range(50):
            q = rand_q(rng)
            assert (im_norm(q) == 0.0) == q.isclose(q.conjugate(), atol=0)
        assert im_norm(Quaternion(3.5)) == 0.0


class TestLiterals:
    def test_parse_examples(self):
        assert parse_quaternion("1-2i+0.5k").isclose(Quaternion(1, -2, 0, 0.5), atol=0)
        assert parse_quaternion("i").isclose(I, atol=0)
        assert parse_quaternion("-j").isclose(-J, atol=0)
        assert parse_quaternion("2.5").isclose(Quaternion(2.5), atol=0)
        assert parse_quaternion("0").isclose(Quaternion(0), atol=0)
        assert parse_quaternion("1+i+j+k").isclose(Quaternion(1, 1, 1, 1), atol=0)
        assert parse_quaternion("3e-2i").isclose(Quaternion(0, 0.03), atol=0)

    def test_parse_rejects_junk(self):
        for bad in ("", "foo", "1+2x", "++", "1i2"):
            with pytest.raises(ValueError):
                parse_quaternion(bad)

    def test_roundtrip(self):
        rng = np.random.default_rng(12)
        for _ in range(200):
            q = rand_q(rng)
            assert parse_quaternion(format_quaternion(q)).isclose(q, atol=0)
        assert format_quaternion(Quaternion(0)) == "0"
        assert format_quaternion(Quaternion(1, -2, 0, 0.5)) == "1-2i+0.5k"


class TestArrayHelpers:
    def test_qmul_matches_scalar(self):
        rng = np.random.default_rng(13)
        a = rng.standard_normal((40, 4))
        b = rng.standard_normal((40, 4))
        prod = qmul(a, b)
        for k in range(40):
            expected = Quaternion.from_array(a[k]) * Quaternion.from_array(b[k])
            assert Quaternion.from_array(prod[k]).isclose(expected, atol=0)

    def test_broadcasting(self):
        rng = np.random.default_rng(14)
        a = rng.standard_normal((5, 1, 4))
        b = rng.standard_normal((1, 7, 4))
        assert qmul(a, b).shape == (5, 7, 4)
