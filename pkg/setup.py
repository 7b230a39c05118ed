#!/usr/bin/env python
""" Installation script for dqjulia package """

try:
    from setuptools import setup, find_packages
except ImportError:
    from distutils.core import setup, find_packages
from os import path
from io import open

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()

setup(name='dqjulia',
      version='0.1.0',
      description='Ray marching renderer and voxelizer for 3D slices of dual-quaternion Julia sets.',
      long_description=long_description,
      long_description_content_type='text/markdown',
      author='dqjulia contributors',
      classifiers=['License :: OSI Approved :: MIT License',
                   'Programming Language :: Python :: 3',
                   'Operating System :: OS Independent',
                   'Environment :: Console',
                   'Topic :: Multimedia :: Graphics :: 3D Rendering',
                   'Development Status :: 3 - Alpha',
                   ],
      keywords='fractal julia-set dual-quaternion quaternion ray-marching distance-estimation voxel 3d',
      packages=find_packages(where="src"),
      package_dir={"": "src"},
      python_requires='>=3.8',
      install_requires=['numpy >= 1.17',
                        'transforms3d >= 0.3.1'],
      extras_require={'test': ['pytest', 'hypothesis'],
                      },
      entry_points={'console_scripts': ['dqjulia=dqjulia.cli.commands:entry_point',
                                        ],
                    },
      )
