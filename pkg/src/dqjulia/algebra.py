# MIT License
#
# Copyright (c) 2026 dqjulia contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

""" Quaternion and dual-quaternion arithmetic on numpy arrays.

A quaternion is an array whose last axis holds (s, x, y, z), scalar first, the same
order transforms3d uses for its wxyz quaternions.
A dual-quaternion is an array whose last two axes have shape (2, 4): the real part q_r
followed by the dual part q_d. The dual unit itself is never stored.

All functions broadcast over leading axes, so they work on a single value as well as
on a whole tile of values at once.
"""
from enum import Enum

import numpy as np


class SquaringMode(Enum):
    """How a dual-quaternion gets squared during iteration."""
    # Square real and dual part independently.
    COMPONENTWISE = 'componentwise'
    # Full product with the dual unit squaring to zero.
    CLIFFORD_EXACT = 'clifford'


def quaternion(s=0.0, x=0.0, y=0.0, z=0.0):
    """Build a quaternion array from its scalar and vector components.

    :return: quaternion (s, x, y, z).
    :rtype: numpy.ndarray
    """
    return np.array([s, x, y, z], dtype=np.float64)


def dual_quaternion(real=(0.0, 0.0, 0.0, 0.0), dual=(0.0, 0.0, 0.0, 0.0)):
    """Build a dual-quaternion array from its real and dual quaternion parts.

    :param real: Real part (s, x, y, z).
    :type real: tuple|numpy.ndarray
    :param dual: Dual part (s, x, y, z).
    :type dual: tuple|numpy.ndarray
    :return: dual-quaternion of shape (2, 4).
    :rtype: numpy.ndarray
    """
    return np.stack([np.asarray(real, dtype=np.float64), np.asarray(dual, dtype=np.float64)], axis=-2)


def real_part(zeta):
    return zeta[..., 0, :]


def dual_part(zeta):
    return zeta[..., 1, :]


def quat_add(q1, q2):
    return np.asarray(q1, dtype=np.float64) + np.asarray(q2, dtype=np.float64)


def quat_scale(k, q):
    return np.asarray(k, dtype=np.float64)[..., None] * np.asarray(q, dtype=np.float64)


def quat_mul(q1, q2):
    """Hamilton product q1 q2 = [s1 s2 - v1.v2, s1 v2 + s2 v1 + v1 x v2].

    :param q1: Left factor(s).
    :type q1: numpy.ndarray
    :param q2: Right factor(s).
    :type q2: numpy.ndarray
    :return: Product, not commutative in general.
    :rtype: numpy.ndarray
    """
    q1 = np.asarray(q1, dtype=np.float64)
    q2 = np.asarray(q2, dtype=np.float64)
    s1, x1, y1, z1 = q1[..., 0], q1[..., 1], q1[..., 2], q1[..., 3]
    s2, x2, y2, z2 = q2[..., 0], q2[..., 1], q2[..., 2], q2[..., 3]
    # quat_square relies on this exact evaluation order.
    s = s1 * s2 - (x1 * x2 + y1 * y2 + z1 * z2)
    x = s1 * x2 + s2 * x1 + (y1 * z2 - z1 * y2)
    y = s1 * y2 + s2 * y1 + (z1 * x2 - x1 * z2)
    z = s1 * z2 + s2 * z1 + (x1 * y2 - y1 * x2)
    return np.stack([s, x, y, z], axis=-1)


def quat_conjugate(q):
    q = np.asarray(q, dtype=np.float64)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def quat_dot(q1, q2):
    q1 = np.asarray(q1, dtype=np.float64)
    q2 = np.asarray(q2, dtype=np.float64)
    # Spelled out instead of np.sum so the result never depends on array layout.
    return q1[..., 0] * q2[..., 0] + q1[..., 1] * q2[..., 1] + q1[..., 2] * q2[..., 2] + q1[..., 3] * q2[..., 3]


def quat_norm(q):
    return np.sqrt(quat_dot(q, q))


def quat_square(q):
    """Square of a quaternion, q^2 = (s^2 - |v|^2, 2 s v).

    Bit-identical to quat_mul(q, q): the doubled vector part is an exact
    power-of-two scaling and the cross product of v with itself vanishes exactly.

    :param q: Quaternion(s).
    :type q: numpy.ndarray
    :return: Squared quaternion(s).
    :rtype: numpy.ndarray
    """
    q = np.asarray(q, dtype=np.float64)
    s, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    two_s = 2.0 * s
    return np.stack([s * s - (x * x + y * y + z * z), two_s * x, two_s * y, two_s * z], axis=-1)


def dq_add(zeta1, zeta2):
    """(q_r1 + q_r2) + (q_d1 + q_d2) e"""
    return np.asarray(zeta1, dtype=np.float64) + np.asarray(zeta2, dtype=np.float64)


def dq_scale(k, zeta):
    return np.asarray(k, dtype=np.float64)[..., None, None] * np.asarray(zeta, dtype=np.float64)


def dq_mul(zeta1, zeta2):
    """Dual-quaternion product.

    real = q_r1 q_r2, dual = q_r1 q_d2 + q_d1 q_r2; the q_d1 q_d2 term carries the
    squared dual unit and drops out.

    :param zeta1: Left factor(s), shape (..., 2, 4).
    :type zeta1: numpy.ndarray
    :param zeta2: Right factor(s), shape (..., 2, 4).
    :type zeta2: numpy.ndarray
    :return: Product(s), shape (..., 2, 4).
    :rtype: numpy.ndarray
    """
    zeta1 = np.asarray(zeta1, dtype=np.float64)
    zeta2 = np.asarray(zeta2, dtype=np.float64)
    real1, dual1 = real_part(zeta1), dual_part(zeta1)
    real2, dual2 = real_part(zeta2), dual_part(zeta2)
    real = quat_mul(real1, real2)
    dual = quat_mul(real1, dual2) + quat_mul(dual1, real2)
    return np.stack([real, dual], axis=-2)


def dq_conjugate(zeta):
    return quat_conjugate(zeta)


def dq_magnitude(zeta):
    """Euclidean norm over all eight components, sqrt(|q_r|^2 + |q_d|^2).

    :param zeta: Dual-quaternion(s), shape (..., 2, 4).
    :type zeta: numpy.ndarray
    :return: Non-negative magnitude(s).
    :rtype: numpy.ndarray
    """
    zeta = np.asarray(zeta, dtype=np.float64)
    return np.sqrt(quat_dot(real_part(zeta), real_part(zeta)) + quat_dot(dual_part(zeta), dual_part(zeta)))


def dq_square(zeta, mode=SquaringMode.COMPONENTWISE):
    """Square a dual-quaternion.

    COMPONENTWISE squares real and dual part independently (q_a^2 + q_b^2 e).
    CLIFFORD_EXACT is the true product zeta zeta = q_a^2 + (q_a q_b + q_b q_a) e.

    :param zeta: Dual-quaternion(s), shape (..., 2, 4).
    :type zeta: numpy.ndarray
    :param mode: Squaring rule.
    :type mode: SquaringMode
    :return: Squared dual-quaternion(s).
    :rtype: numpy.ndarray
    """
    if mode is SquaringMode.CLIFFORD_EXACT:
        return dq_mul(zeta, zeta)
    return quat_square(zeta)
