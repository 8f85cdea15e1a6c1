# Copyright 2026 The cic Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent LP oracle (scipy HiGHS) for optimizer regression constants.

Run: python3 tests/oracles/lp_oracle.py
"""
import itertools
import math

import numpy as np
from scipy.optimize import linprog


def zipf(n, g):
    w = np.array([1.0 / i ** g for i in range(1, n + 1)])
    return w / w.sum()


def solve(n, m, f, z):
    subsets = list(itertools.combinations(range(n), m))
    F = np.array([math.fsum(f[j] for j in s) for s in subsets])
    u = 1.0 - F
    c = z * u * u / (z * u + 1.0)
    a = np.zeros((n + 1, len(subsets)))
    a[0, :] = 1.0
    for k, s in enumerate(subsets):
        for j in s:
            a[j + 1, k] = 1.0
    b = np.concatenate([[1.0], np.full(n, m / n)])
    # HiGHS defaults (1e-7) leave the N=100 optimum about 1e-8 high.
    tight = dict(primal_feasibility_tolerance=1e-10, dual_feasibility_tolerance=1e-10)
    res = linprog(c, A_eq=a, b_eq=b, bounds=(0, None), method="highs", options=tight)
    return res, subsets, c


z = math.pi / 4
for n, m, g in [(4, 2, 0.8), (10, 2, 0.8), (30, 3, 0.8), (100, 3, 0.8)]:
    f = zipf(n, g)
    res, subsets, c = solve(n, m, f, z)
    u = 1 - m / n
    uniform = z * u * u / (z * u + 1)
    print(f"N={n} M={m} gamma={g}: objective={res.fun:.15f} plr_uniform={uniform:.15f} "
          f"uniform-density={c.mean():.15f} support={int((res.x > 1e-12).sum())}")
    if n <= 10:
        for k in np.argsort(-res.x):
            if res.x[k] > 1e-12:
                print("   ", [j + 1 for j in subsets[k]], f"{res.x[k]:.12f}")
