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

""" Ray marching renderer for 3D slices of dual-quaternion Julia sets.

Rays from a pinhole camera are clipped against a sphere around the origin and then
advanced by the distance estimate until they come closer than hit_epsilon to the set.
Surface normals come from central differences of the distance field and are lit with
the Phong model for a single directional light.

The image is split into bands of BAND_HEIGHT rows. Each band is marched as one numpy
batch, possibly in a separate process, and written to its own rows of the raster.
The band layout doesn't depend on the number of workers, so neither does the output.
"""
from collections import namedtuple

import numpy as np
from transforms3d.utils import normalized_vector

from .julia import distance_estimate
from .parallel import run_tasks

BAND_HEIGHT = 16

Camera = namedtuple('Camera', ['position', 'look_at', 'up', 'fov', 'width', 'height'])
Camera.__doc__ = """Pinhole camera. fov is the vertical field of view in degrees."""

MarchParams = namedtuple('MarchParams', ['hit_epsilon', 'max_steps', 'bounding_radius', 'max_ray_distance',
                                         'use_bounding_sphere'])

Material = namedtuple('Material', ['ambient', 'diffuse', 'specular', 'shininess', 'color'])
Material.__doc__ = """Phong coefficients k_a, k_d, k_s, specular exponent and per-channel base color."""

Light = namedtuple('Light', ['ambient_intensity', 'diffuse_intensity', 'specular_intensity', 'direction'])
Light.__doc__ = """Directional light. direction is the unit vector pointing towards the light."""

Hit = namedtuple('Hit', ['hit', 'point', 'steps_taken', 'distance_along_ray'])

ImageBuffer = namedtuple('ImageBuffer', ['width', 'height', 'pixels', 'hits', 'degenerate'], defaults=(None,))
ImageBuffer.__doc__ = """Rendered raster.
pixels: uint8 array (height, width, 3), row-major from the top-left corner.
hits: bool array (height, width), True where a ray hit the set.
degenerate: bool array (height, width), True for hits whose normal fell back to the
negated ray direction because the distance gradient vanished."""


def _dot3(a, b):
    return a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] + a[..., 2] * b[..., 2]


def _normalize_rows(v):
    return v / np.sqrt(_dot3(v, v))[..., None]


def make_camera(position=(0.0, 0.0, -4.0), look_at=(0.0, 0.0, 0.0), up=(0.0, 1.0, 0.0), fov=45.0,
                width=512, height=512):
    """Validated Camera.

    :raises ValueError: If the camera looks at itself, up is parallel to the view direction,
                        the field of view is outside (0, 180) or the image size isn't positive.
    :rtype: Camera
    """
    position = tuple(float(v) for v in position)
    look_at = tuple(float(v) for v in look_at)
    up = tuple(float(v) for v in up)
    view = np.subtract(look_at, position)
    if not np.any(view):
        raise ValueError("camera position and look_at must differ")
    if not np.any(np.cross(view, up)):
        raise ValueError("camera up must not be parallel to the view direction")
    if not 0.0 < fov < 180.0:
        raise ValueError("fov must lie in (0, 180) degrees, got {}".format(fov))
    if int(width) < 1 or int(height) < 1:
        raise ValueError("image width and height must be positive, got {}x{}".format(width, height))
    return Camera(position, look_at, up, float(fov), int(width), int(height))


def make_march_params(hit_epsilon=1e-4, max_steps=256, bounding_radius=3.0, max_ray_distance=100.0,
                      use_bounding_sphere=True):
    if not hit_epsilon > 0.0:
        raise ValueError("hit_epsilon must be positive, got {}".format(hit_epsilon))
    if int(max_steps) < 1:
        raise ValueError("max_steps must be a positive integer, got {}".format(max_steps))
    if not bounding_radius > hit_epsilon:
        raise ValueError("bounding_radius must be larger than hit_epsilon, got {}".format(bounding_radius))
    if not max_ray_distance > 0.0:
        raise ValueError("max_ray_distance must be positive, got {}".format(max_ray_distance))
    return MarchParams(float(hit_epsilon), int(max_steps), float(bounding_radius), float(max_ray_distance),
                       bool(use_bounding_sphere))


def make_material(ambient=0.1, diffuse=0.7, specular=0.2, shininess=10.0, color=(1.0, 1.0, 1.0)):
    for name, value in (('ambient', ambient), ('diffuse', diffuse), ('specular', specular)):
        if not 0.0 <= value <= 1.0:
            raise ValueError("{} coefficient must lie in [0, 1], got {}".format(name, value))
    if not shininess >= 1.0:
        raise ValueError("shininess must be at least 1, got {}".format(shininess))
    color = tuple(float(v) for v in color)
    if len(color) != 3 or not all(0.0 <= v <= 1.0 for v in color):
        raise ValueError("color must be three channels in [0, 1], got {}".format(color))
    return Material(float(ambient), float(diffuse), float(specular), float(shininess), color)


def make_light(ambient_intensity=1.0, diffuse_intensity=1.0, specular_intensity=1.0, direction=(-1.0, 1.0, -1.0)):
    for name, value in (('ambient_intensity', ambient_intensity),
                        ('diffuse_intensity', diffuse_intensity),
                        ('specular_intensity', specular_intensity)):
        if not value >= 0.0:
            raise ValueError("{} must not be negative, got {}".format(name, value))
    direction = np.asarray(direction, dtype=np.float64)
    if direction.shape != (3,) or not np.any(direction):
        raise ValueError("light direction must be a non-zero 3-vector")
    return Light(float(ambient_intensity), float(diffuse_intensity), float(specular_intensity),
                 tuple(normalized_vector(direction)))


def camera_basis(camera):
    """Orthonormal camera frame.

    :return: forward, right and up unit vectors.
    :rtype: tuple
    """
    position = np.asarray(camera.position, dtype=np.float64)
    forward = normalized_vector(np.asarray(camera.look_at, dtype=np.float64) - position)
    w = -forward
    right = normalized_vector(np.cross(camera.up, w))
    up = np.cross(w, right)
    return forward, right, up


def generate_rays(camera, px, py):
    """Rays through the centers of the given pixels.

    :param camera: Pinhole camera.
    :type camera: Camera
    :param px: Column indices.
    :type px: numpy.ndarray
    :param py: Row indices, 0 is the top row.
    :type py: numpy.ndarray
    :return: origins and unit directions, both of shape (..., 3).
    :rtype: tuple
    """
    forward, right, up = camera_basis(camera)
    half_height = np.tan(np.radians(camera.fov) / 2.0)
    half_width = half_height * camera.width / camera.height
    u = (2.0 * (np.asarray(px, dtype=np.float64) + 0.5) / camera.width - 1.0) * half_width
    v = (1.0 - 2.0 * (np.asarray(py, dtype=np.float64) + 0.5) / camera.height) * half_height
    directions = _normalize_rows(forward + u[..., None] * right + v[..., None] * up)
    origins = np.broadcast_to(np.asarray(camera.position, dtype=np.float64), directions.shape)
    return origins, directions


def generate_ray(camera, px, py):
    """Ray through the center of pixel (px, py).

    :return: (origin, unit direction)
    :rtype: tuple
    """
    if not (0 <= px < camera.width and 0 <= py < camera.height):
        raise ValueError("pixel ({}, {}) outside of {}x{} image".format(px, py, camera.width, camera.height))
    origins, directions = generate_rays(camera, np.array([px]), np.array([py]))
    return origins[0].copy(), directions[0]


def sphere_intervals(origins, directions, radius):
    """Entry and exit parameters of rays through a sphere around the origin.

    :return: mask of rays that reach the sphere, t_near (clamped to >= 0), t_far
    :rtype: tuple
    """
    b = _dot3(origins, directions)
    c = _dot3(origins, origins) - radius * radius
    discriminant = b * b - c
    with np.errstate(invalid='ignore'):
        root = np.sqrt(discriminant)
    t_near = np.maximum(-b - root, 0.0)
    t_far = -b + root
    reached = (discriminant >= 0.0) & (t_far >= 0.0)
    return reached, t_near, t_far


def intersect_bounding_sphere(ray, radius):
    """Clip a ray against the sphere of given radius around the origin.

    :param ray: (origin, unit direction)
    :type ray: tuple
    :param radius: Sphere radius.
    :type radius: float
    :return: (t_near, t_far) or None if the sphere is missed.
    :rtype: tuple|None
    """
    origin, direction = (np.asarray(v, dtype=np.float64) for v in ray)
    reached, t_near, t_far = sphere_intervals(origin, direction, radius)
    if not reached:
        return None
    return float(t_near), float(t_far)


def march_rays(origins, directions, scene, march, trace=None):
    """Sphere-trace a batch of rays.

    Each step advances a ray by exactly the distance estimate at its current position.
    A ray hits when the estimate drops below hit_epsilon and misses when it leaves the
    bounding sphere, passes max_ray_distance or runs out of steps.

    :param origins: Ray origins (n, 3).
    :type origins: numpy.ndarray
    :param directions: Unit ray directions (n, 3).
    :type directions: numpy.ndarray
    :param scene: Fractal parameters.
    :type scene: julia.SceneParams
    :param march: Step and culling settings.
    :type march: MarchParams
    :param trace: If given, receives (ray indices, t, distance estimate) for every step.
    :type trace: list
    :return: Hit record of arrays: hit flags, points, steps taken and final t per ray.
    :rtype: Hit
    """
    origins = np.asarray(origins, dtype=np.float64)
    directions = np.asarray(directions, dtype=np.float64)
    n_rays = origins.shape[0]
    if march.use_bounding_sphere:
        reached, t, t_far = sphere_intervals(origins, directions, march.bounding_radius)
        t = np.where(reached, t, 0.0)
    else:
        reached = np.ones(n_rays, dtype=bool)
        t = np.zeros(n_rays)
        t_far = np.full(n_rays, np.inf)
    t_limit = np.minimum(t_far, march.max_ray_distance)

    hit = np.zeros(n_rays, dtype=bool)
    steps = np.zeros(n_rays, dtype=np.int64)
    points = origins + t[:, None] * directions
    live = np.flatnonzero(reached)
    for _ in range(march.max_steps):
        if not live.size:
            break
        positions = origins[live] + t[live, None] * directions[live]
        distance = distance_estimate(positions, scene)
        steps[live] += 1
        if trace is not None:
            trace.append((live.copy(), t[live].copy(), distance.copy()))
        close = distance < march.hit_epsilon
        hit[live[close]] = True
        points[live] = positions
        moving = live[~close]
        t[moving] += distance[~close]
        live = moving[t[moving] <= t_limit[moving]]
    return Hit(hit, points, steps, t)


def ray_march(ray, scene, march, trace=None):
    """March a single ray.

    :param ray: (origin, unit direction)
    :type ray: tuple
    :param trace: If given, receives one (t, distance estimate) pair per step.
    :type trace: list
    :rtype: Hit
    """
    origin, direction = (np.asarray(v, dtype=np.float64).reshape(1, 3) for v in ray)
    records = [] if trace is not None else None
    result = march_rays(origin, direction, scene, march, trace=records)
    if trace is not None:
        trace.extend((float(t[0]), float(d[0])) for _, t, d in records)
    return Hit(bool(result.hit[0]), result.point[0], int(result.steps_taken[0]),
               float(result.distance_along_ray[0]))


def estimate_normals(points, scene, h=1e-3, fallback=None):
    """Normalized central-difference gradient of the distance field.

    :param points: Surface points (n, 3).
    :type points: numpy.ndarray
    :param h: Sample offset.
    :type h: float
    :param fallback: Normals used where the gradient vanishes, (n, 3) or (3,).
    :type fallback: numpy.ndarray
    :return: unit normals (n, 3), mask of points that needed the fallback
    :rtype: tuple
    """
    points = np.asarray(points, dtype=np.float64)
    offsets = np.eye(3) * h
    forward = distance_estimate(points[..., None, :] + offsets, scene)
    backward = distance_estimate(points[..., None, :] - offsets, scene)
    gradient = (forward - backward) / (2.0 * h)
    length = np.sqrt(_dot3(gradient, gradient))
    degenerate = ~(np.isfinite(length) & (length > 0.0))
    with np.errstate(divide='ignore', invalid='ignore'):
        normals = gradient / length[..., None]
    if fallback is None:
        fallback = np.array([0.0, 0.0, -1.0])
    fallback = np.broadcast_to(np.asarray(fallback, dtype=np.float64), normals.shape)
    normals = np.where(degenerate[..., None], fallback, normals)
    return normals, degenerate


def estimate_normal(p, scene, h=1e-3, direction=None):
    """Surface normal at a single point.

    :param p: Point on or near the surface.
    :param h: Sample offset.
    :param direction: Direction of the incoming ray; its negation is returned if the gradient vanishes.
    :return: Unit normal.
    :rtype: numpy.ndarray
    """
    fallback = None if direction is None else -np.asarray(direction, dtype=np.float64)
    normals, _ = estimate_normals(np.asarray(p, dtype=np.float64).reshape(1, 3), scene, h, fallback)
    return normals[0]


def shade(points, normals, material, light, eye):
    """Phong illumination I = k_a I_a + k_d I_d (n.l) + k_s I_s (r.v)^s, per color channel.

    n.l and r.v are clamped to [0, 1]. Faces turned away from the light get no specular term.

    :return: RGB values in [0, 1], shape (..., 3).
    :rtype: numpy.ndarray
    """
    points = np.asarray(points, dtype=np.float64)
    normals = np.asarray(normals, dtype=np.float64)
    to_light = np.asarray(light.direction, dtype=np.float64)
    n_dot_l = _dot3(normals, to_light)
    reflected = 2.0 * normals * n_dot_l[..., None] - to_light
    to_eye = _normalize_rows(np.asarray(eye, dtype=np.float64) - points)
    r_dot_v = np.clip(_dot3(reflected, to_eye), 0.0, 1.0)
    lit = n_dot_l > 0.0
    n_dot_l = np.clip(n_dot_l, 0.0, 1.0)

    base = material.ambient * light.ambient_intensity + material.diffuse * light.diffuse_intensity * n_dot_l
    highlight = np.where(lit, material.specular * light.specular_intensity * r_dot_v ** material.shininess, 0.0)
    rgb = np.asarray(material.color) * base[..., None] + highlight[..., None]
    return np.clip(rgb, 0.0, 1.0)


def shade_phong(hit, normal, material, light, eye):
    """Phong color of a single hit.

    :type hit: Hit
    :param normal: Unit surface normal.
    :type material: Material
    :type light: Light
    :param eye: Camera position.
    :return: RGB in [0, 1], before quantization.
    :rtype: numpy.ndarray
    """
    return shade(np.asarray(hit.point).reshape(1, 3), np.asarray(normal).reshape(1, 3), material, light, eye)[0]


def quantize(rgb, gamma=2.2):
    """Convert [0, 1] color values to 8 bit with gamma encoding. gamma None or 1 skips the encoding."""
    rgb = np.clip(np.asarray(rgb, dtype=np.float64), 0.0, 1.0)
    if gamma and gamma != 1.0:
        rgb = rgb ** (1.0 / gamma)
    return np.rint(rgb * 255.0).astype(np.uint8)


def _render_band(task):
    """Render rows [row_start, row_end). Module level so worker processes can unpickle it."""
    (row_start, row_end, scene, camera, march, material, light, background, gamma, normal_offset) = task
    py, px = np.mgrid[row_start:row_end, 0:camera.width]
    origins, directions = generate_rays(camera, px.ravel(), py.ravel())
    result = march_rays(origins, directions, scene, march)

    band = np.empty((px.size, 3), dtype=np.uint8)
    band[:] = np.asarray(background, dtype=np.uint8)
    degenerate = np.zeros(px.size, dtype=bool)
    hit = result.hit
    if np.any(hit):
        points = result.point[hit]
        normals, degenerate[hit] = estimate_normals(points, scene, normal_offset, fallback=-directions[hit])
        rgb = shade(points, normals, material, light, camera.position)
        band[hit] = quantize(rgb, gamma)
    rows = row_end - row_start
    return band.reshape(rows, camera.width, 3), hit.reshape(rows, camera.width), degenerate.reshape(rows, camera.width)


def render(scene, camera, march, material, light, background=(0, 0, 0), gamma=2.2, normal_offset=1e-3,
           workers=1, verbose=False):
    """Render the scene into an RGB raster.

    :param scene: Fractal parameters.
    :type scene: julia.SceneParams
    :param camera: Pinhole camera, also defines the image size.
    :type camera: Camera
    :param march: Ray marching settings.
    :type march: MarchParams
    :param material: Surface material.
    :type material: Material
    :param light: Directional light.
    :type light: Light
    :param background: 8 bit RGB color of pixels whose ray misses the set.
    :type background: tuple
    :param gamma: Gamma used for quantization. None disables it.
    :type gamma: float
    :param normal_offset: Sample offset for normal estimation.
    :type normal_offset: float
    :param workers: Number of worker processes.
    :type workers: int
    :param verbose: Print pool information.
    :type verbose: bool
    :return: The rendered image. Byte-identical for any number of workers.
    :rtype: ImageBuffer
    """
    tasks = [(start, min(start + BAND_HEIGHT, camera.height), scene, camera, march, material, light,
              tuple(background), gamma, normal_offset)
             for start in range(0, camera.height, BAND_HEIGHT)]
    bands = run_tasks(_render_band, tasks, workers, verbose=verbose)
    pixels, hits, degenerate = (np.concatenate(parts, axis=0) for parts in zip(*bands))
    return ImageBuffer(camera.width, camera.height, pixels, hits, degenerate)


def hit_fraction(image):
    """Fraction of pixels showing the set."""
    return float(np.mean(image.hits))
