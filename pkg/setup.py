# -*- coding:utf-8 -*-
from setuptools import setup, find_packages
from DGMultigrid import __version__

with open("README.md", "r", encoding='utf-8') as fh:
    long_description = fh.read()

setup(
    name="DGMultigrid",
    version=__version__,
    description="hp-version discontinuous Galerkin discretizations of the 2D Poisson problem "
                "solved with W-cycle multigrid, with tools to measure convergence factors and constants.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="BSD-3-Clause",
    keywords="DGMultigrid discontinuous-galerkin multigrid",
    include_package_data=True,
    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),
    package_data={'DGMultigrid': ['_configs/configs.ini']},
    zip_safe=False,
    install_requires=[
        'numpy',
        'scipy',
        'click',
        'psutil'
    ],
    extras_require={
        'test': ['pytest'],
    },
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: BSD License",
    ],
    python_requires='>=3.8',
    entry_points={
        'console_scripts': [
            'dgmg = DGMultigrid._functions.cli:main',
        ],
    },
)
