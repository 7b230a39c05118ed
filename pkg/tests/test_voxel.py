import unittest

import numpy as np
import pytest

from dqjulia.julia import make_iteration_params, make_scene, membership
from dqjulia.render import generate_rays, make_camera, make_march_params, march_rays
from dqjulia.voxel import DEFAULT_BOUNDS, VoxelGrid, cell_centers, cell_size, export_mesh, inside_count, \
    make_grid_config, occupancy_volume, voxelize, write_mesh

HIGH_DETAIL_C = (-0.04, 0.95, 0.4, -0.43, 0.09, -0.35, -0.27, -0.31)


def unit_sphere_scene(iterations=10):
    return make_scene(iteration=make_iteration_params(iterations))


def single_cell_grid(resolution=2, index=0):
    occupancy = np.zeros(resolution ** 3, dtype=bool)
    occupancy[index] = True
    return VoxelGrid(resolution, ((0.0, 0.0, 0.0), (1.0, 1.0, 1.0)), occupancy)


def mesh_lines(document):
    lines = [line for line in document.splitlines() if not line.startswith('#')]
    vertices = [line for line in lines if line.startswith('v ')]
    faces = [line for line in lines if line.startswith('f ')]
    return vertices, faces


class TestGrid(unittest.TestCase):

    def test_grid_config(self):
        self.assertEqual(make_grid_config(10, DEFAULT_BOUNDS), (10, ((-1.5, -1.5, -1.5), (1.5, 1.5, 1.5))))
        with self.assertRaises(ValueError):
            make_grid_config(0)
        with self.assertRaises(ValueError):
            make_grid_config(10, ((0.0, 0.0, 0.0), (1.0, -1.0, 1.0)))

    def test_cell_centers_x_fastest(self):
        centers = cell_centers(4, ((0.0, 0.0, 0.0), (4.0, 8.0, 12.0)), np.arange(4))
        self.assertEqual(centers.shape, (64, 3))
        np.testing.assert_allclose(centers[0], (0.5, 1.0, 1.5))
        np.testing.assert_allclose(centers[1], (1.5, 1.0, 1.5))
        np.testing.assert_allclose(centers[4], (0.5, 3.0, 1.5))
        np.testing.assert_allclose(centers[16], (0.5, 1.0, 4.5))
        np.testing.assert_allclose(centers[1 + 4 * (2 + 4 * 3)], (1.5, 5.0, 10.5))

    def test_cell_size(self):
        grid = VoxelGrid(4, ((0.0, 0.0, 0.0), (4.0, 8.0, 12.0)), np.zeros(64, dtype=bool))
        np.testing.assert_allclose(cell_size(grid), (1.0, 2.0, 3.0))


class TestVoxelize(unittest.TestCase):

    def test_escaping_constant_gives_empty_grid(self):
        scene = make_scene(c=(10.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0))
        grid = voxelize(scene, resolution=20)
        self.assertEqual(grid.occupancy.shape, (8000,))
        self.assertEqual(inside_count(grid), 0)

    def test_full_grid(self):
        grid = voxelize(unit_sphere_scene(), resolution=8, bounds=((-0.5, -0.5, -0.5), (0.5, 0.5, 0.5)))
        self.assertEqual(inside_count(grid), 8 ** 3)

    def test_unit_ball_volume(self):
        grid = voxelize(unit_sphere_scene(), resolution=50)
        expected = 4.0 * np.pi / 3.0 / 27.0
        self.assertAlmostEqual(inside_count(grid) / 50 ** 3, expected, delta=0.1 * expected)

    def test_occupancy_is_membership(self):
        scene = make_scene(c=HIGH_DETAIL_C, iteration=make_iteration_params(10))
        grid = voxelize(scene, resolution=12)
        self.assertEqual(occupancy_volume(grid).shape, (12, 12, 12))
        np.testing.assert_array_equal(grid.occupancy, membership(cell_centers(12, grid.bounds, np.arange(12)), scene))

    def test_refinement_consistency(self):
        scene = unit_sphere_scene()
        coarse = occupancy_volume(voxelize(scene, resolution=24))
        fine = occupancy_volume(voxelize(scene, resolution=48))
        votes = fine.reshape(24, 2, 24, 2, 24, 2).sum(axis=(1, 3, 5))
        # A tie counts as agreeing with either answer.
        agree = np.where(votes == 4, True, coarse == (votes > 4))
        self.assertGreaterEqual(np.mean(agree), 0.95)

    def test_more_iterations_never_add_cells(self):
        scene_at = lambda n: make_scene(c=HIGH_DETAIL_C, iteration=make_iteration_params(n))
        counts = [inside_count(voxelize(scene_at(n), resolution=24)) for n in range(6, 16)]
        self.assertEqual(counts, sorted(counts, reverse=True))

    def test_worker_count_independent(self):
        scene = make_scene(c=HIGH_DETAIL_C, iteration=make_iteration_params(10))
        single = voxelize(scene, resolution=20, workers=1)
        parallel = voxelize(scene, resolution=20, workers=3, slab_depth=3)
        np.testing.assert_array_equal(single.occupancy, parallel.occupancy)


class TestMesh(unittest.TestCase):

    def test_empty_grid(self):
        grid = VoxelGrid(3, DEFAULT_BOUNDS, np.zeros(27, dtype=bool))
        vertices, faces = mesh_lines(export_mesh(grid))
        self.assertEqual(len(vertices), 0)
        self.assertEqual(len(faces), 0)
        self.assertEqual(inside_count(grid), 0)

    def test_single_cell(self):
        document = export_mesh(single_cell_grid())
        vertices, faces = mesh_lines(document)
        self.assertEqual(len(vertices), 8)
        self.assertEqual(len(faces), 12)
        self.assertEqual(vertices[0], 'v 0.000000 0.000000 0.000000')
        self.assertEqual(vertices[6], 'v 0.500000 0.500000 0.500000')
        indices = np.array([[int(i) for i in face.split()[1:]] for face in faces])
        self.assertEqual(indices.min(), 1)
        self.assertEqual(indices.max(), 8)
        self.assertTrue(document.endswith('\n'))

    def test_vertices_before_faces(self):
        lines = [line for line in export_mesh(single_cell_grid(index=5)).splitlines() if not line.startswith('#')]
        kinds = [line[0] for line in lines]
        self.assertEqual(kinds, ['v'] * 8 + ['f'] * 12)

    def test_cell_position(self):
        # Cell index 5 of a 2^3 grid is x=1, y=0, z=1.
        vertices, _ = mesh_lines(export_mesh(single_cell_grid(index=5)))
        corners = np.array([[float(v) for v in line.split()[1:]] for line in vertices])
        np.testing.assert_allclose(corners.min(axis=0), (0.5, 0.0, 0.5))
        np.testing.assert_allclose(corners.max(axis=0), (1.0, 0.5, 1.0))

    def test_outward_faces(self):
        vertices, faces = mesh_lines(export_mesh(single_cell_grid()))
        corners = np.array([[float(v) for v in line.split()[1:]] for line in vertices])
        center = corners.mean(axis=0)
        for face in faces:
            a, b, c = (corners[int(i) - 1] for i in face.split()[1:])
            normal = np.cross(b - a, c - a)
            self.assertGreater(np.dot(normal, (a + b + c) / 3.0 - center), 0.0)

    def test_face_count_matches_cells(self):
        grid = voxelize(unit_sphere_scene(), resolution=20)
        vertices, faces = mesh_lines(export_mesh(grid))
        self.assertEqual(len(faces), 12 * inside_count(grid))
        self.assertEqual(len(vertices), 8 * inside_count(grid))

    def test_deterministic(self):
        grid = voxelize(unit_sphere_scene(), resolution=10)
        self.assertEqual(export_mesh(grid), export_mesh(voxelize(unit_sphere_scene(), resolution=10)))

    def test_write_mesh(self):
        import tempfile
        import os
        grid = single_cell_grid()
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'cube.obj')
            self.assertTrue(write_mesh(grid, path))
            with open(path) as file_handle:
                self.assertEqual(file_handle.read(), export_mesh(grid))
            self.assertFalse(write_mesh(grid, os.path.join(tmpdir, 'missing', 'cube.obj')))


@pytest.mark.slow
def test_unit_sphere_boundary_grid():
    # Misclassified cells of a 128^3 grid all lie within one cell of the unit sphere.
    grid = voxelize(unit_sphere_scene(15), resolution=128)
    centers = cell_centers(128, grid.bounds, np.arange(128))
    radius = np.linalg.norm(centers, axis=-1)
    wrong = grid.occupancy != (radius < 1.0)
    assert np.all(np.abs(radius[wrong] - 1.0) < np.linalg.norm(cell_size(grid)))


@pytest.mark.slow
def test_inside_count_monotone_64():
    counts = [inside_count(voxelize(make_scene(c=HIGH_DETAIL_C, iteration=make_iteration_params(n)), resolution=64))
              for n in range(6, 16)]
    assert counts == sorted(counts, reverse=True)


@pytest.mark.slow
def test_ray_march_hits_near_occupied_cells():
    scene = unit_sphere_scene()
    grid = voxelize(scene, resolution=100)
    occupied = cell_centers(100, grid.bounds, np.arange(100))[grid.occupancy]
    camera = make_camera(position=(1.0, 2.0, -3.0), width=32, height=32)
    py, px = np.mgrid[0:32, 0:32]
    origins, directions = generate_rays(camera, px.ravel(), py.ravel())
    result = march_rays(origins, directions, scene, make_march_params())
    diagonal = np.linalg.norm(cell_size(grid))
    assert np.any(result.hit)
    for point in result.point[result.hit]:
        assert np.min(np.linalg.norm(occupied - point, axis=-1)) <= diagonal
