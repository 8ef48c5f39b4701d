"""
Copyright © 2024 lfmpy contributors.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing,
software distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
KIND, either express or implied.  See the License for the
specific language governing permissions and limitations
under the License.


"""
import re

import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

with open("lfmpy/_version.py", "r") as fh:
    version = re.search(r'__version__ = "([^"]+)"', fh.read()).group(1)

setuptools.setup(
    name="lfmpy",
    version=version,
    author="lfmpy contributors",
    description="Linear fractional self-maps of the unit ball in C^2, their models and fractional iterates",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="",
    packages=setuptools.find_packages(exclude=["tests"]),
    include_package_data=True,
    package_data={"lfmpy": ["config.ini", "examples/sample_data/*.json"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.20",
        "scipy",
        "pandas",
        "inflection",
    ],
    extras_require={
        "notebook": ["jupyter"],
        "test": [
            "pytest",
            "pytest-cov",
            "hypothesis",
            "testfixtures",
        ],
        "develop": [
            "wheel",
            "sphinx",
            "sphinx_rtd_theme",
            "sphinx_autodoc_typehints",
            "sphinx_copybutton",
            "pre-commit",
            "flake8",
            "black",
        ],
    },
    entry_points={"console_scripts": ["lfmpy = lfmpy.cli:main"]},
)
