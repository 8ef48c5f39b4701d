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
#!/usr/bin/env python
# coding: utf-8

# # Getting Started With lfmpy
#
# A walk through both worked examples: the parabolic map fixing (1, 0) with
# multiplicity three, and the analytic map built from a Heisenberg translation
# of the Siegel half space.
#

# ## Logging
#
# The standard logging library is used to log from within the package.
# In order to see the logging statements, you must add at least one handler.

import logging

logging.basicConfig(
    level=logging.INFO,
    format=r'%(asctime)s %(levelname)-8s %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S'
)

from pprint import pprint

import numpy as np

from lfmpy import classify, jordan_form, phi_t, self_map_check, verify_semigroup
from lfmpy.examples.load_sample_data import sample_map
from lfmpy.model import analytic_phi, example2_closed_form, example2_map
from lfmpy.semigroup import orbit, orbit_frame

# ## A Parabolic Map
#
# phi(z) = (z1 + 2 z2 + 1, -2 z1 + 2 z2 + 2) / (-z1 + 2 z2 + 3)

phi = sample_map("example1")
print(phi.matrix.m)
print(self_map_check(phi))

# Classification finds the Denjoy-Wolff point (1, 0) and a single Jordan block.

model = classify(phi)
print(model.summary)
pprint(model.to_dict()["eigenvalues"])

# ## The Semigroup
#
# m_{phi_t} = S Lambda^t S^-1, normalized so that the (3, 3) entry is 1.

decomp = jordan_form(phi.matrix.m)
half = phi_t(decomp, 0.5)
print(half.map.matrix.canonical)

report = verify_semigroup(decomp, [0, 0.5, 1, 2], [0, 0.5, 1, 2], z_samples=1000, seed=1)
print(report)

# The orbit of the origin creeps towards (1, 0).

frame = orbit_frame(orbit(decomp, np.zeros(2), [0, 1, 5, 10, 50]))
print(frame.to_string(index=False))

# ## The Analytic Example
#
# phi = sigma^-1 o Phi o sigma where Phi translates the Siegel half space.

z = np.array([0.2 + 0.1j, -0.3j])
print(analytic_phi(z))
print(example2_closed_form(1.0, z))

model2 = example2_map()
print(model2.at(0.5)(z))
print(model2.ball_exits(10000, 42), "of 10000 samples leave the ball at t = 1")
