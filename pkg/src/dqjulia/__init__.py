from importlib.metadata import PackageNotFoundError, version

from .algebra import SquaringMode, \
                     quaternion, \
                     dual_quaternion, \
                     quat_mul, \
                     quat_conjugate, \
                     quat_norm, \
                     quat_square, \
                     dq_add, \
                     dq_mul, \
                     dq_magnitude, \
                     dq_square
from .julia import DistanceEstimator, \
                   make_slice, \
                   make_iteration_params, \
                   make_scene, \
                   embed_point, \
                   iterate_orbit, \
                   membership, \
                   distance_estimate
from .render import make_camera, \
                    make_march_params, \
                    make_material, \
                    make_light
from .voxel import voxelize, \
                   inside_count, \
                   export_mesh


def get_pkg_version():
    try:
        return version(__package__)
    except PackageNotFoundError:
        return 'unknown'


__version__ = get_pkg_version()
