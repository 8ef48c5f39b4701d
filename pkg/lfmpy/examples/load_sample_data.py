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


Sample maps shipped with the package, one JSON file per map in ``sample_data``.
"""
from pathlib import Path
from typing import List

from lfmpy.lfm import LinearFractionalMap, load_map
from lfmpy.lfmexceptions import LfmPreconditionError

data_folder_path = Path(__file__).parent.joinpath("sample_data")


def sample_names() -> List[str]:
    return sorted(p.stem for p in data_folder_path.glob("*.json"))


def sample_path(name: str) -> Path:
    """Path of a sample map file

    Raises:
        LfmPreconditionError: no sample of that name
    """
    path = data_folder_path.joinpath(f"{name}.json")
    if not path.is_file():
        raise LfmPreconditionError(f"No sample map {name!r}; available: {', '.join(sample_names())}")
    return path


def sample_map(name: str) -> LinearFractionalMap:
    """One of example1, contraction, identity, dilation, parabolic, hyperbolic"""
    return load_map(sample_path(name))
