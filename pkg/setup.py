#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import os
import re

from setuptools import setup, find_packages

here = os.path.abspath(os.path.dirname(__file__))

with io.open(os.path.join(here, 'README.md'), encoding='utf-8') as f:
    readme = f.read()

install_requires = [
    "colorlog",
    "verboselogs",
    "PyYAML",
    "marshmallow>=3.13",
    "dotty-dict",
    "deepmerge",
    "toposort",
    "progress",
    "numpy",
    "pandas>=1.5",
    "torch>=2.0"
]

dev_requires = [
    "tox",
    "astroid",
    "pylint",
    "pytest",
    "coverage",
    "pytest-mock",
    "pytest-cov"
]

entry_points = {
    'console_scripts': [
        'sidrank = sidrank.__main__:console_script'
    ]
}

with io.open('sidrank/__version__.py', 'r') as f:
    version = re.search(r'^__version__\st*=\s*[\'"]([^\'"]*)[\'"]$', f.read(), re.MULTILINE).group(1)

args = dict(name='sidrank',
            version=version,
            description='sidrank - Desk-scale generative retrieval with listwise preference alignment',
            long_description=readme,
            long_description_content_type='text/markdown',
            classifiers=['Development Status :: 3 - Alpha',
                         'License :: OSI Approved :: MIT License',
                         'Operating System :: OS Independent',
                         'Intended Audience :: Science/Research',
                         'Programming Language :: Python :: 3',
                         'Programming Language :: Python :: 3.8',
                         'Programming Language :: Python :: 3.9',
                         'Programming Language :: Python :: 3.10',
                         'Programming Language :: Python :: 3.11',
                         'Topic :: Scientific/Engineering :: Artificial Intelligence'
                         ],
            keywords='recommendation generative retrieval semantic id beam search preference optimization',
            license='MIT',
            packages=find_packages(exclude=['tests', 'tests.*']),
            include_package_data=True,
            install_requires=install_requires,
            entry_points=entry_points,
            zip_safe=True,
            extras_require={
                'dev': dev_requires
            })

setup(**args)
