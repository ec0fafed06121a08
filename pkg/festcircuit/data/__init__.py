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

"""Static tables bundled with the package."""

import pathlib

_DATA_DIR = pathlib.Path(__file__).resolve().parent

# code, capital, lat, lon
CAPITALS_CSV = _DATA_DIR / 'capitals.csv'
# code, name, region
REGIONS_CSV = _DATA_DIR / 'regions.csv'
# term, beta, se, p
PUBLISHED_COEFFICIENTS_CSV = _DATA_DIR / 'published_coefficients.csv'
