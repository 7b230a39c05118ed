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

""" Dense occupancy grids of the filled Julia set and their export as cube meshes.

Every cell is sampled once at its center. Cells are numbered x-fastest:
index = x + resolution * (y + resolution * z).

The mesh text format has one line per vertex, "v x y z", followed by one line per
triangle, "f i j k" with 1-based vertex indices. Each occupied cell contributes an
axis-aligned cube of 8 vertices and 12 outward-facing triangles, in cell index order.
"""
import io
from collections import namedtuple

import numpy as np

from .julia import membership
from .parallel import run_tasks

DEFAULT_BOUNDS = ((-1.5, -1.5, -1.5), (1.5, 1.5, 1.5))

VoxelGrid = namedtuple('VoxelGrid', ['resolution', 'bounds', 'occupancy'])
VoxelGrid.__doc__ = """Occupancy of resolution^3 cells inside bounds = (min corner, max corner).
occupancy: flat bool array, x-fastest."""

# Unit cube corners, bit 0 -> x, bit 1 -> y, bit 2 -> z, walked around each face.
_CUBE_CORNERS = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0],
                          [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], dtype=np.float64)
# Counter-clockwise seen from outside.
_CUBE_TRIANGLES = np.array([[0, 2, 1], [0, 3, 2],  # -z
                            [4, 5, 6], [4, 6, 7],  # +z
                            [0, 1, 5], [0, 5, 4],  # -y
                            [3, 7, 6], [3, 6, 2],  # +y
                            [0, 4, 7], [0, 7, 3],  # -x
                            [1, 2, 6], [1, 6, 5]],  # +x
                           dtype=np.int64)


def make_grid_config(resolution=50, bounds=DEFAULT_BOUNDS):
    """Check grid settings.

    :return: (resolution, bounds) as int and tuple of float tuples.
    :rtype: tuple
    """
    if int(resolution) != resolution or resolution < 1:
        raise ValueError("voxel resolution must be a positive integer, got {}".format(resolution))
    low, high = (tuple(float(v) for v in corner) for corner in bounds)
    if len(low) != 3 or len(high) != 3 or not all(a < b for a, b in zip(low, high)):
        raise ValueError("voxel bounds need min < max on every axis, got {}".format(bounds))
    return int(resolution), (low, high)


def cell_size(grid):
    low, high = (np.asarray(corner) for corner in grid.bounds)
    return (high - low) / grid.resolution


def cell_centers(resolution, bounds, z_indices):
    """Centers of all cells in the given z-slabs, x-fastest.

    :return: Points of shape (len(z_indices) * resolution^2, 3).
    :rtype: numpy.ndarray
    """
    low, high = (np.asarray(corner, dtype=np.float64) for corner in bounds)
    step = (high - low) / resolution
    z, y, x = np.meshgrid(np.asarray(z_indices), np.arange(resolution), np.arange(resolution), indexing='ij')
    indices = np.stack([x.ravel(), y.ravel(), z.ravel()], axis=-1)
    return low + (indices + 0.5) * step


def _voxelize_slabs(task):
    scene, resolution, bounds, z_start, z_end = task
    return membership(cell_centers(resolution, bounds, np.arange(z_start, z_end)), scene)


def voxelize(scene, resolution=50, bounds=DEFAULT_BOUNDS, workers=1, slab_depth=4, verbose=False):
    """Sample set membership at every cell center.

    :param scene: Fractal parameters.
    :type scene: julia.SceneParams
    :param resolution: Cells per axis.
    :type resolution: int
    :param bounds: (min corner, max corner) of the sampled box.
    :type bounds: tuple
    :param workers: Number of worker processes. The result doesn't depend on it.
    :type workers: int
    :param slab_depth: Number of z-slices handed to a worker at once.
    :type slab_depth: int
    :rtype: VoxelGrid
    """
    resolution, bounds = make_grid_config(resolution, bounds)
    tasks = [(scene, resolution, bounds, z, min(z + slab_depth, resolution))
             for z in range(0, resolution, slab_depth)]
    slabs = run_tasks(_voxelize_slabs, tasks, workers, verbose=verbose)
    return VoxelGrid(resolution, bounds, np.concatenate(slabs))


def inside_count(grid):
    return int(np.count_nonzero(grid.occupancy))


def occupancy_volume(grid):
    """Occupancy as a 3D array indexed [z, y, x]."""
    n = grid.resolution
    return grid.occupancy.reshape(n, n, n)


def export_mesh(grid):
    """Cube mesh of all occupied cells.

    :param grid: Occupancy grid.
    :type grid: VoxelGrid
    :return: Mesh document, vertex lines followed by face lines.
    :rtype: str
    """
    n = grid.resolution
    low = np.asarray(grid.bounds[0], dtype=np.float64)
    step = cell_size(grid)
    cells = np.flatnonzero(grid.occupancy)
    x = cells % n
    y = (cells // n) % n
    z = cells // (n * n)
    corner_indices = np.stack([x, y, z], axis=-1)[:, None, :] + _CUBE_CORNERS
    vertices = (low + corner_indices * step).reshape(-1, 3)
    faces = (_CUBE_TRIANGLES + 8 * np.arange(cells.size)[:, None, None] + 1).reshape(-1, 3)

    out = io.StringIO()
    out.write("# {} occupied cells, {} vertices, {} faces\n".format(cells.size, len(vertices), len(faces)))
    np.savetxt(out, vertices, fmt='v %.6f %.6f %.6f')
    np.savetxt(out, faces, fmt='f %d %d %d')
    return out.getvalue()


def write_mesh(grid, filepath):
    """Write the cube mesh of a grid to a text file.

    :return: If writing the file was successful.
    :rtype: bool
    """
    try:
        with open(filepath, 'w', newline='\n') as file_handle:
            file_handle.write(export_mesh(grid))
        return True
    except OSError as e:
        print("ERROR({}): Could not write to file {}.\n"
              "Make sure you have writing permissions.\n".format(e.errno, filepath))
        return False
