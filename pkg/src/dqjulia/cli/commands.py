#!/usr/bin/env python
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

""" Run modes of the dqjulia command-line tool. """

import os
import sys
import time
from multiprocessing import freeze_support

from ..render import render
from ..voxel import inside_count, voxelize, write_mesh
from .config import ConfigError, build_camera, build_light, build_march, build_material, build_scene, \
    dump_config, parse_command_line, split_bounds
from .ppm import write_ppm
from .sweep import draw_constants, format_constant, sweep_filename


def _progress(cfg, message):
    if not cfg.quiet:
        print(message)


def render_image(cfg):
    """Render the scene described by cfg.

    :type cfg: config.RunConfig
    :rtype: render.ImageBuffer
    """
    return render(build_scene(cfg), build_camera(cfg), build_march(cfg), build_material(cfg), build_light(cfg),
                  background=cfg.background,
                  gamma=cfg.gamma,
                  normal_offset=cfg.normal_offset,
                  workers=cfg.workers,
                  verbose=not cfg.quiet)


def save_image(image, filepath):
    """Write image as PPM file.

    :return: If writing the file was successful.
    :rtype: bool
    """
    try:
        write_ppm(image, filepath)
    except OSError as e:
        print("ERROR({}): {}\nMake sure you have writing permissions.".format(e.errno, e))
        return False
    return True


def _make_folder(dirpath):
    try:
        os.makedirs(dirpath, exist_ok=True)
    except OSError as e:
        print("ERROR({}): Could not create folder {}.".format(e.errno, dirpath))
        return False
    return True


def run_render(cfg):
    """Render one image to cfg.output.

    :param cfg: Resolved configuration.
    :type cfg: config.RunConfig
    :return: If the image was written.
    :rtype: bool
    """
    _progress(cfg, "Rendering {}x{} image with {} workers...".format(cfg.width, cfg.height, cfg.workers))
    image = render_image(cfg)
    return save_image(image, cfg.output)


def run_voxel(cfg):
    """Voxelize the set and write the cube mesh to cfg.output.

    :param cfg: Resolved configuration.
    :type cfg: config.RunConfig
    :return: If the mesh was written.
    :rtype: bool
    """
    _progress(cfg, "Voxelizing {0}x{0}x{0} grid with {1} workers...".format(cfg.resolution, cfg.workers))
    grid = voxelize(build_scene(cfg), cfg.resolution, split_bounds(cfg.bounds), workers=cfg.workers,
                    verbose=not cfg.quiet)
    _progress(cfg, "{} of {} cells inside the set.".format(inside_count(grid), cfg.resolution ** 3))
    return write_mesh(grid, cfg.output)


def run_sweep(cfg):
    """Render cfg.count images for random Julia constants into the folder cfg.output.

    Constants are drawn from cfg.seed, file names carry index and constant.

    :param cfg: Resolved configuration.
    :type cfg: config.RunConfig
    :return: If all images were written.
    :rtype: bool
    """
    if not _make_folder(cfg.output):
        return False
    n_succeeded = 0
    for index, c in enumerate(draw_constants(cfg.seed, cfg.count), 1):
        _progress(cfg, "Rendering sweep image {} of {}, c = {}".format(index, cfg.count, format_constant(c)))
        image = render_image(cfg._replace(c=tuple(float(v) for v in c)))
        n_succeeded += save_image(image, os.path.join(cfg.output, sweep_filename(index, c)))
    return n_succeeded == cfg.count


def detail_filename(iterations):
    return "detail_n{:02d}.ppm".format(iterations)


def run_detail(cfg):
    """Render the same view once per iteration count in cfg.detail_range.

    :param cfg: Resolved configuration.
    :type cfg: config.RunConfig
    :return: If all images were written.
    :rtype: bool
    """
    if not _make_folder(cfg.output):
        return False
    low, high = cfg.detail_range
    n_succeeded = 0
    for iterations in range(low, high + 1):
        _progress(cfg, "Rendering with {} iterations...".format(iterations))
        image = render_image(cfg._replace(iterations=iterations))
        n_succeeded += save_image(image, os.path.join(cfg.output, detail_filename(iterations)))
    return n_succeeded == high - low + 1


RUNNERS = {'render': run_render,
           'voxel': run_voxel,
           'sweep': run_sweep,
           'detail': run_detail,
           }


def main(argv=sys.argv[1:]):
    try:
        cfg, dump = parse_command_line(argv)
    except ConfigError as e:
        print("ERROR: {}".format(e))
        return False
    if dump:
        print(dump_config(cfg), end='')
        return True

    start = time.time()
    success = RUNNERS[cfg.mode](cfg)
    _progress(cfg, "Processing took: {:.2f} seconds".format(time.time() - start))
    if not success:
        print("Some errors occurred.")
    return success


def entry_point():
    """Console script hook, exits with status 0 on success."""
    freeze_support()
    sys.exit(int(not main(sys.argv[1:])))


if __name__ == "__main__":
    entry_point()
