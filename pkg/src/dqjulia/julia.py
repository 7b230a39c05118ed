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

""" Escape-time iteration of zeta <- zeta^2 + c over dual-quaternions.

Points of 3D space are embedded into the 8 dual-quaternion components by a slice:
three slots follow the point, the other five hold constants.
Orbits are iterated until their magnitude passes the escape radius. Along the way a
scalar running derivative is kept, r' <- 2 |zeta| r', from which a lower bound on the
distance to the set is estimated.

Functions accept single points of shape (3,) as well as arrays of points (..., 3).
"""
from collections import namedtuple
from enum import Enum

import numpy as np

from .algebra import SquaringMode, dq_add, dq_magnitude, dq_square

SLOT_NAMES = ('rs', 'rx', 'ry', 'rz', 'ds', 'dx', 'dy', 'dz')
DEFAULT_SLICE_MAP = 'rs-rx-ry'


class DistanceEstimator(Enum):
    # 0.5 |zeta_n| / |zeta_n'| ln |zeta_n|
    HART_LOG = 'hart'
    # alpha |zeta_n| / |zeta_n'|
    RATIO_ALPHA = 'alpha'


SliceConfig = namedtuple('SliceConfig', ['constants', 'axes'])
SliceConfig.__doc__ = """Maps 3D points into dual-quaternion space.
constants: five reals for the slots not driven by the point, in slot order.
axes: slot indices (0-7) receiving p.x, p.y and p.z."""

IterationParams = namedtuple('IterationParams', ['max_iterations', 'escape_radius', 'squaring_mode'])

SceneParams = namedtuple('SceneParams', ['c', 'slice', 'iteration', 'estimator', 'alpha'])
SceneParams.__doc__ = """Everything that determines the fractal.
c: Julia constant, dual-quaternion of shape (2, 4)."""

OrbitResult = namedtuple('OrbitResult', ['escaped', 'steps', 'final_magnitude', 'derivative_magnitude'])


def parse_slice_map(name):
    """Turn a slice map name like 'rs-rx-ry' into slot indices.

    :param name: Three distinct slot labels out of rs rx ry rz ds dx dy dz, joined by '-'.
    :type name: str
    :return: Slot indices for x, y, z.
    :rtype: tuple
    """
    labels = name.strip().lower().split('-')
    if len(labels) != 3:
        raise ValueError("slice map '{}' must name exactly three slots".format(name))
    try:
        axes = tuple(SLOT_NAMES.index(label) for label in labels)
    except ValueError:
        raise ValueError("slice map '{}' contains an unknown slot. Valid slots: {}".format(
            name, ' '.join(SLOT_NAMES)))
    if len(set(axes)) != 3:
        raise ValueError("slice map '{}' repeats a slot".format(name))
    return axes


def slice_map_name(axes):
    return '-'.join(SLOT_NAMES[axis] for axis in axes)


def make_slice(constants=(0.0, 0.0, 0.0, 0.0, 0.0), mapping=DEFAULT_SLICE_MAP):
    """Validated SliceConfig.

    :param constants: Five finite reals for the fixed slots.
    :type constants: tuple
    :param mapping: Slice map name or three slot indices.
    :type mapping: str|tuple
    :rtype: SliceConfig
    """
    if isinstance(mapping, str):
        axes = parse_slice_map(mapping)
    else:
        axes = tuple(int(axis) for axis in mapping)
        if len(axes) != 3 or len(set(axes)) != 3 or not all(0 <= axis < 8 for axis in axes):
            raise ValueError("slice axes must be three distinct slot indices in 0..7, got {}".format(axes))
    constants = tuple(float(value) for value in constants)
    if len(constants) != 5:
        raise ValueError("slice needs exactly 5 constants, got {}".format(len(constants)))
    if not np.all(np.isfinite(constants)):
        raise ValueError("slice constants must be finite")
    return SliceConfig(constants, axes)


def make_iteration_params(max_iterations=10, escape_radius=4.0, squaring_mode=SquaringMode.COMPONENTWISE):
    if int(max_iterations) != max_iterations or max_iterations < 1:
        raise ValueError("max_iterations must be a positive integer, got {}".format(max_iterations))
    if not escape_radius > 1.0:
        raise ValueError("escape_radius must be greater than 1, got {}".format(escape_radius))
    return IterationParams(int(max_iterations), float(escape_radius), SquaringMode(squaring_mode))


def make_scene(c=None, slice_config=None, iteration=None, estimator=DistanceEstimator.HART_LOG, alpha=0.1):
    """Validated SceneParams. Missing pieces get their defaults.

    :param c: Julia constant, anything reshapeable to (2, 4), e.g. 8 reals.
    :param slice_config: Slice through dual-quaternion space.
    :type slice_config: SliceConfig
    :param iteration: Iteration settings.
    :type iteration: IterationParams
    :param estimator: Distance estimator variant.
    :type estimator: DistanceEstimator
    :param alpha: Scale of the ratio estimator, in (0, 0.1].
    :type alpha: float
    :rtype: SceneParams
    """
    if c is None:
        c = np.zeros((2, 4))
    c = np.array(c, dtype=np.float64).reshape(2, 4)
    if not np.all(np.isfinite(c)):
        raise ValueError("c must be finite")
    c.setflags(write=False)
    estimator = DistanceEstimator(estimator)
    if estimator is DistanceEstimator.RATIO_ALPHA and not 0.0 < alpha <= 0.1:
        raise ValueError("alpha must lie in (0, 0.1], got {}".format(alpha))
    return SceneParams(c,
                       slice_config if slice_config is not None else make_slice(),
                       iteration if iteration is not None else make_iteration_params(),
                       estimator,
                       float(alpha))


def embed_point(p, slice_config):
    """Place 3D point(s) into dual-quaternion space.

    :param p: Point(s), shape (..., 3).
    :type p: numpy.ndarray
    :param slice_config: Which slots follow the point and what the others hold.
    :type slice_config: SliceConfig
    :return: Dual-quaternion(s), shape (..., 2, 4).
    :rtype: numpy.ndarray
    """
    p = np.asarray(p, dtype=np.float64)
    flat = np.empty(p.shape[:-1] + (8,))
    fixed = [slot for slot in range(8) if slot not in slice_config.axes]
    flat[..., fixed] = slice_config.constants
    flat[..., list(slice_config.axes)] = p
    return flat.reshape(p.shape[:-1] + (2, 4))


def orbit_sequence(zeta0, scene, steps):
    """Iterates zeta_1 .. zeta_steps without any escape test.

    Large step counts overflow for points outside the set.

    :return: Array of shape (steps, ..., 2, 4).
    :rtype: numpy.ndarray
    """
    zeta = np.asarray(zeta0, dtype=np.float64)
    orbit = []
    for _ in range(steps):
        zeta = dq_add(dq_square(zeta, scene.iteration.squaring_mode), scene.c)
        orbit.append(zeta)
    return np.array(orbit)


def iterate_orbit(zeta0, scene):
    """Iterate zeta <- zeta^2 + c until escape or max_iterations.

    The running derivative r'_{n+1} = 2 |zeta_n| r'_n starts at r'_0 = 1.
    Escaped orbits are frozen at their escape step.

    :param zeta0: Starting dual-quaternion(s), shape (..., 2, 4).
    :type zeta0: numpy.ndarray
    :param scene: Fractal parameters.
    :type scene: SceneParams
    :return: Per-point escape flag, step count, magnitude and derivative magnitude.
    :rtype: OrbitResult
    """
    zeta0 = np.asarray(zeta0, dtype=np.float64)
    shape = zeta0.shape[:-2]
    params = scene.iteration
    zeta = zeta0.reshape(-1, 2, 4).copy()
    n_points = zeta.shape[0]

    magnitude = dq_magnitude(zeta)
    derivative = np.ones(n_points)
    steps = np.full(n_points, params.max_iterations, dtype=np.int64)
    escaped = np.zeros(n_points, dtype=bool)
    # Indices of orbits still being iterated.
    live = np.arange(n_points)
    for step in range(1, params.max_iterations + 1):
        if not live.size:
            break
        derivative[live] = 2.0 * magnitude[live] * derivative[live]
        current = dq_add(dq_square(zeta[live], params.squaring_mode), scene.c)
        zeta[live] = current
        current_magnitude = dq_magnitude(current)
        magnitude[live] = current_magnitude
        out = current_magnitude > params.escape_radius
        escaped[live[out]] = True
        steps[live[out]] = step
        live = live[~out]
    return OrbitResult(escaped.reshape(shape),
                       steps.reshape(shape),
                       magnitude.reshape(shape),
                       derivative.reshape(shape))


def membership(p, scene):
    """Whether point(s) stay bounded for max_iterations.

    :param p: Point(s), shape (..., 3).
    :type p: numpy.ndarray
    :param scene: Fractal parameters.
    :type scene: SceneParams
    :return: True for points inside the filled Julia set.
    :rtype: numpy.ndarray
    """
    return ~iterate_orbit(embed_point(p, scene.slice), scene).escaped


def estimate_from_orbit(orbit, scene):
    """Distance lower bound from an already iterated orbit. Zero for non-escaped orbits."""
    magnitude = orbit.final_magnitude
    derivative = orbit.derivative_magnitude
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(derivative > 0.0, magnitude / derivative, np.inf)
        if scene.estimator is DistanceEstimator.RATIO_ALPHA:
            distance = scene.alpha * ratio
        else:
            distance = 0.5 * ratio * np.log(magnitude)
    return np.where(orbit.escaped, np.maximum(distance, 0.0), 0.0)


def distance_estimate(p, scene):
    """Lower bound on the distance from point(s) to the set.

    :param p: Point(s), shape (..., 3).
    :type p: numpy.ndarray
    :param scene: Fractal parameters.
    :type scene: SceneParams
    :return: Non-negative distance(s), 0 inside the set.
    :rtype: numpy.ndarray
    """
    return estimate_from_orbit(iterate_orbit(embed_point(p, scene.slice), scene), scene)
