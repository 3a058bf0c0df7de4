#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup, find_packages

setup(
    name="vconn",
    description="Local-search vertex connectivity with a preflow baseline and benchmark tools",
    version="0.1.0",
    license="GPLv3",
    keywords="graph, vertex connectivity, max flow, benchmark",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Programming Language :: Python :: 3.7",
        "Programming Language :: Python :: 3.8",
    ],
    entry_points={
        "console_scripts": ["vconn=vconn.scripts.vconn_cli:main"],
    },
    install_requires=[
        "PyYAML",
        "pandas",
        "numpy",
        "setuptools",
    ],
    python_requires=">=3.7",
    packages=find_packages("src"),
    package_dir={"": "src"},
    include_package_data=True,
    zip_safe=False,
)
