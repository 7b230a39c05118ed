import unittest

from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
import numpy as np
from transforms3d.quaternions import qconjugate, qmult, qnorm

from dqjulia.algebra import SquaringMode, dual_quaternion, dq_add, dq_conjugate, dq_magnitude, dq_mul, \
    dq_scale, dq_square, quat_add, quat_conjugate, quat_dot, quat_mul, quat_norm, quat_scale, quat_square, \
    quaternion

# Products of components stay clear of the subnormal range.
components = st.floats(min_value=-10.0, max_value=10.0).filter(lambda v: v == 0.0 or abs(v) > 1e-100)
quaternions = arrays(dtype=np.float64, shape=4, elements=components)
dual_quaternions = arrays(dtype=np.float64, shape=(2, 4), elements=components)

N_RANDOM_CASES = 100000


def random_quaternions(seed, low=-10.0, high=10.0):
    return np.random.default_rng(seed).uniform(low, high, size=(N_RANDOM_CASES, 4))


class TestQuaternion(unittest.TestCase):

    def test_add(self):
        q = np.array([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(quat_add(np.zeros(4), q), q)
        np.testing.assert_array_equal(quat_add(q, [5.0, 6.0, 7.0, 8.0]), [6.0, 8.0, 10.0, 12.0])
        np.testing.assert_array_equal(quat_add(q, quat_scale(-1.0, q)), np.zeros(4))

    def test_scale(self):
        q = np.array([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(quat_scale(1.0, q), q)
        np.testing.assert_array_equal(quat_scale(0.0, q), np.zeros(4))
        np.testing.assert_array_equal(quat_scale(2.0, q), [2.0, 4.0, 6.0, 8.0])

    def test_mul(self):
        q = np.array([1.0, 2.0, 3.0, 4.0])
        np.testing.assert_array_equal(quat_mul([1.0, 0.0, 0.0, 0.0], q), q)
        np.testing.assert_array_equal(quat_mul([0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]), [0.0, 0.0, 0.0, 1.0])
        np.testing.assert_array_equal(quat_mul(q, [5.0, 6.0, 7.0, 8.0]), [-60.0, 12.0, 30.0, 24.0])

    def test_mul_not_commutative(self):
        i = np.array([0.0, 1.0, 0.0, 0.0])
        j = np.array([0.0, 0.0, 1.0, 0.0])
        np.testing.assert_array_equal(quat_mul(j, i), [0.0, 0.0, 0.0, -1.0])

    def test_conjugate(self):
        np.testing.assert_array_equal(quat_conjugate([1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0])
        np.testing.assert_array_equal(quat_conjugate([1.0, 2.0, 3.0, 4.0]), [1.0, -2.0, -3.0, -4.0])

    def test_dot(self):
        self.assertEqual(quat_dot([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]), 0.0)
        self.assertEqual(quat_dot([1.0, 2.0, 3.0, 4.0], [5.0, 6.0, 7.0, 8.0]), 70.0)

    def test_norm(self):
        self.assertEqual(quat_norm(np.zeros(4)), 0.0)
        self.assertEqual(quat_norm([1.0, 0.0, 0.0, 0.0]), 1.0)
        self.assertEqual(quat_norm([1.0, 2.0, 2.0, 0.0]), 3.0)

    def test_square(self):
        np.testing.assert_array_equal(quat_square([1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0])
        np.testing.assert_array_equal(quat_square([0.0, 1.0, 0.0, 0.0]), [-1.0, 0.0, 0.0, 0.0])
        np.testing.assert_array_equal(quat_square([1.0, 2.0, 3.0, 4.0]), [-28.0, 4.0, 6.0, 8.0])

    def test_broadcasting(self):
        q = random_quaternions(1)[:12].reshape(3, 4, 4)
        single = np.array([quat_mul(a, q[0, 0]) for a in q.reshape(-1, 4)]).reshape(3, 4, 4)
        np.testing.assert_array_equal(quat_mul(q, q[0, 0]), single)


class TestQuaternionLaws(unittest.TestCase):
    """Algebra laws over many random quaternions with components in [-10, 10]."""

    def test_associativity(self):
        rng = np.random.default_rng(7)
        q1, q2, q3 = (rng.uniform(-10.0, 10.0, size=(N_RANDOM_CASES, 4)) for _ in range(3))
        left = quat_mul(quat_mul(q1, q2), q3)
        right = quat_mul(q1, quat_mul(q2, q3))
        # Relative to the size of the product.
        scale = np.maximum(1.0, quat_norm(q1) * quat_norm(q2) * quat_norm(q3))
        self.assertLessEqual(np.max(np.abs(left - right) / scale[:, None]), 1e-12)

    def test_associativity_unit_range(self):
        rng = np.random.default_rng(8)
        q1, q2, q3 = (rng.uniform(-1.0, 1.0, size=(N_RANDOM_CASES, 4)) for _ in range(3))
        left = quat_mul(quat_mul(q1, q2), q3)
        right = quat_mul(q1, quat_mul(q2, q3))
        self.assertLessEqual(np.max(np.abs(left - right)), 1e-12)

    def test_norm_multiplicative(self):
        q1 = random_quaternions(11)
        q2 = random_quaternions(12)
        expected = quat_norm(q1) * quat_norm(q2)
        np.testing.assert_allclose(quat_norm(quat_mul(q1, q2)), expected, rtol=1e-10)

    def test_conjugate_involution(self):
        q = random_quaternions(13)
        np.testing.assert_array_equal(quat_conjugate(quat_conjugate(q)), q)

    def test_mul_conjugate_is_squared_norm(self):
        q = random_quaternions(14)
        product = quat_mul(q, quat_conjugate(q))
        expected = np.zeros_like(q)
        expected[:, 0] = quat_dot(q, q)
        np.testing.assert_allclose(product, expected, rtol=1e-10, atol=1e-10)

    def test_square_equals_product(self):
        q = random_quaternions(15)
        np.testing.assert_array_equal(quat_square(q), quat_mul(q, q))

    def test_clifford_nilpotency(self):
        rng = np.random.default_rng(16)
        zeta1 = np.zeros((N_RANDOM_CASES, 2, 4))
        zeta2 = np.zeros((N_RANDOM_CASES, 2, 4))
        zeta1[:, 1] = rng.uniform(-10.0, 10.0, size=(N_RANDOM_CASES, 4))
        zeta2[:, 1] = rng.uniform(-10.0, 10.0, size=(N_RANDOM_CASES, 4))
        self.assertTrue(np.all(dq_mul(zeta1, zeta2) == 0.0))


@given(q1=quaternions, q2=quaternions)
def test_mul_matches_transforms3d(q1, q2):
    np.testing.assert_allclose(quat_mul(q1, q2), qmult(q1, q2), rtol=1e-12, atol=1e-9)


@given(q=quaternions)
def test_conjugate_matches_transforms3d(q):
    np.testing.assert_array_equal(quat_conjugate(q), qconjugate(q))


@given(q=quaternions)
def test_norm_matches_transforms3d(q):
    np.testing.assert_allclose(quat_norm(q), qnorm(q), rtol=1e-12, atol=1e-300)


class TestConstructors(unittest.TestCase):

    def test_quaternion(self):
        q = quaternion(1.0, 2.0, 3.0, 4.0)
        self.assertEqual(q.dtype, np.float64)
        np.testing.assert_array_equal(q, (1.0, 2.0, 3.0, 4.0))
        np.testing.assert_array_equal(quaternion(), np.zeros(4))
        np.testing.assert_array_equal(quat_mul(quaternion(0.0, 1.0), quaternion(0.0, 0.0, 1.0)),
                                      quaternion(0.0, 0.0, 0.0, 1.0))

    def test_dual_quaternion(self):
        zeta = dual_quaternion(quaternion(1.0, 2.0, 3.0, 4.0), quaternion(5.0))
        self.assertEqual(zeta.shape, (2, 4))
        np.testing.assert_array_equal(zeta, [[1.0, 2.0, 3.0, 4.0], [5.0, 0.0, 0.0, 0.0]])


class TestDualQuaternion(unittest.TestCase):

    def test_add(self):
        zeta = dual_quaternion((1.0, 2.0, 3.0, 4.0), (5.0, 6.0, 7.0, 8.0))
        np.testing.assert_array_equal(dq_add(zeta, np.zeros((2, 4))), zeta)
        np.testing.assert_array_equal(dq_add(dual_quaternion((1.0, 0.0, 0.0, 0.0)), dual_quaternion(dual=(1.0, 0.0, 0.0, 0.0))),
                                      dual_quaternion((1.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0)))

    def test_scale(self):
        zeta = dual_quaternion((1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0))
        np.testing.assert_array_equal(dq_scale(1.0, zeta), zeta)
        np.testing.assert_array_equal(dq_scale(0.0, zeta), np.zeros((2, 4)))
        np.testing.assert_array_equal(dq_scale(2.0, zeta), dual_quaternion((2.0, 0.0, 0.0, 0.0), (0.0, 2.0, 0.0, 0.0)))

    def test_mul(self):
        zeta1 = dual_quaternion((1.0, 2.0, 3.0, 4.0), (1.0, 0.0, 0.0, 0.0))
        zeta2 = dual_quaternion((5.0, 6.0, 7.0, 8.0), (0.0, 1.0, 0.0, 0.0))
        np.testing.assert_array_equal(dq_mul(zeta1, zeta2), dual_quaternion((-60.0, 12.0, 30.0, 24.0),
                                                                            (3.0, 7.0, 11.0, 5.0)))

    def test_mul_identity(self):
        identity = dual_quaternion((1.0, 0.0, 0.0, 0.0))
        zeta = np.random.default_rng(3).uniform(-10.0, 10.0, size=(1000, 2, 4))
        np.testing.assert_array_equal(dq_mul(identity, zeta), zeta)
        np.testing.assert_array_equal(dq_mul(zeta, identity), zeta)

    def test_conjugate(self):
        zeta = dual_quaternion((1.0, 2.0, 3.0, 4.0), (5.0, 6.0, 7.0, 8.0))
        np.testing.assert_array_equal(dq_conjugate(zeta), dual_quaternion((1.0, -2.0, -3.0, -4.0),
                                                                          (5.0, -6.0, -7.0, -8.0)))
        np.testing.assert_array_equal(dq_conjugate(dq_conjugate(zeta)), zeta)
        real = dual_quaternion((2.0, 0.0, 0.0, 0.0), (3.0, 0.0, 0.0, 0.0))
        np.testing.assert_array_equal(dq_conjugate(real), real)

    def test_magnitude(self):
        self.assertEqual(dq_magnitude(np.zeros((2, 4))), 0.0)
        self.assertEqual(dq_magnitude(dual_quaternion((1.0, 0.0, 0.0, 0.0))), 1.0)
        self.assertEqual(dq_magnitude(dual_quaternion((1.0, 2.0, 2.0, 0.0), (0.0, 0.0, 0.0, 4.0))), 5.0)

    def test_square_modes(self):
        zeta = dual_quaternion((0.0, 1.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0))
        np.testing.assert_array_equal(dq_square(zeta), dual_quaternion((-1.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0)))
        np.testing.assert_array_equal(dq_square(zeta, SquaringMode.CLIFFORD_EXACT),
                                      dual_quaternion((-1.0, 0.0, 0.0, 0.0), (0.0, 2.0, 0.0, 0.0)))

    def test_square_pure_dual_vanishes(self):
        zeta = dual_quaternion(dual=(0.3, -1.2, 4.0, 2.5))
        self.assertTrue(np.all(dq_square(zeta, SquaringMode.CLIFFORD_EXACT) == 0.0))

    def test_default_mode(self):
        self.assertIs(SquaringMode('componentwise'), SquaringMode.COMPONENTWISE)


@given(zeta=dual_quaternions)
def test_clifford_square_is_product(zeta):
    np.testing.assert_array_equal(dq_square(zeta, SquaringMode.CLIFFORD_EXACT), dq_mul(zeta, zeta))


@given(zeta=dual_quaternions)
def test_square_modes_share_real_part(zeta):
    componentwise = dq_square(zeta, SquaringMode.COMPONENTWISE)
    clifford = dq_square(zeta, SquaringMode.CLIFFORD_EXACT)
    np.testing.assert_array_equal(componentwise[0], clifford[0])


@given(zeta1=dual_quaternions, zeta2=dual_quaternions)
def test_add_commutative(zeta1, zeta2):
    np.testing.assert_array_equal(dq_add(zeta1, zeta2), dq_add(zeta2, zeta1))


@given(zeta=dual_quaternions)
def test_magnitude_dominates_parts(zeta):
    magnitude = dq_magnitude(zeta)
    assert magnitude >= 0.0
    assert magnitude >= quat_norm(zeta[0]) * (1.0 - 1e-15)
    assert magnitude >= quat_norm(zeta[1]) * (1.0 - 1e-15)
