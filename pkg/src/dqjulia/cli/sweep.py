""" Random Julia constants for parameter sweeps.

Constants are drawn from numpy's PCG64 bit generator (PCG XSL-RR 128/64), seeded with
the 64-bit unsigned sweep seed through numpy.random.SeedSequence. Each constant takes 8
consecutive draws of Generator.uniform(-1, 1): real part s, x, y, z, then dual part
s, x, y, z. The same seed gives the same constants on every platform.
"""
import numpy as np

SEED_LIMIT = 2 ** 64


def draw_constants(seed, count):
    """Draw count Julia constants with every component uniform in [-1, 1).

    :param seed: 64-bit unsigned seed.
    :type seed: int
    :param count: Number of constants.
    :type count: int
    :return: Array of shape (count, 8).
    :rtype: numpy.ndarray
    """
    if not 0 <= seed < SEED_LIMIT:
        raise ValueError("seed must be a 64-bit unsigned integer, got {}".format(seed))
    generator = np.random.Generator(np.random.PCG64(seed))
    return generator.uniform(-1.0, 1.0, size=(count, 8))


def format_constant(c):
    """Julia constant in figure caption style, e.g. (-0.04,0.95,0.40,-0.43)(0.09,-0.35,-0.27,-0.31)."""
    c = np.asarray(c, dtype=np.float64).reshape(2, 4)
    return ''.join('(' + ','.join('{:.2f}'.format(v) for v in part) + ')' for part in c)


def sweep_filename(index, c):
    return "sweep_{:03d}_c{}.ppm".format(index, format_constant(c))
