# Copyright 2024 The festcircuit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Install script for setuptools."""

import setuptools


def _remove_excluded(description: str) -> str:
  description, *sections = description.split('<!-- GITHUB -->')
  for section in sections:
    excluded, included = section.split('<!-- /GITHUB -->')
    del excluded
    description += included
  return description


with open('README.md') as f:
  LONG_DESCRIPTION = _remove_excluded(f.read())


setuptools.setup(
    name='festcircuit',
    version='0.1.0',
    license='Apache 2.0',
    author='The festcircuit Authors',
    description=(
        'Analytics of the international film festival circuit: balance,'
        ' regression, flows and diversity.'
    ),
    description_content_type='text/plain',
    long_description=LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    keywords=(
        'film-festivals cultural-analytics regression trade-flows diversity'
        ' bootstrap python'
    ),
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: POSIX :: Linux',
        'Operating System :: MacOS :: MacOS X',
        'Programming Language :: Python :: 3 :: Only',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Information Analysis',
        'Topic :: Sociology',
    ],
    packages=setuptools.find_packages(
        include=['festcircuit', 'festcircuit.*']
    ),
    package_data={'festcircuit.data': ['*.csv']},
    python_requires='>=3.11',
    install_requires=(
        'absl-py',
        'numpy<2',
        'pandas<=2.0.3',
        'PyYAML',
        'reactivex',
        'scipy',
        'statsmodels',
    ),
    extras_require={
        # Used in development.
        'dev': [
            'build',
            'isort',
            'pip-tools',
            'pyink',
            'pylint',
            'pytest-xdist',
            'pytype',
        ],
    },
    entry_points={
        'console_scripts': ['festcircuit=festcircuit.cli.main:run'],
    },
)
