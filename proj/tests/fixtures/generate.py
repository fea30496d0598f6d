#
# Copyright 2026 The Agroline Authors
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

"""Writes the synthetic fixtures in this directory (run from any cwd)."""

import os

X0, Y0 = 510000.0, 7920000.0
HERE = os.path.dirname(os.path.abspath(__file__))


def write(name, rows):
    with open(os.path.join(HERE, name), "w", newline="\n") as f:
        for r in rows:
            f.write(" ".join(f"{v:.2f}" for v in r) + "\n")


def planar_terrain(gradient):
    # Level curves every 50 m in x, points every 10 m in y, highest first.
    rows = []
    for i in reversed(range(17)):
        x = -50.0 + 50.0 * i
        z = gradient * x
        for k in range(81):
            rows.append((X0 + x, Y0 - 50.0 + 10.0 * k, z))
    return rows


def flat_terrain():
    rows = []
    for i in range(17):
        for k in range(81):
            rows.append((X0 - 50.0 + 50.0 * i, Y0 - 50.0 + 10.0 * k, 500.0))
    return rows


def shifted(points):
    return [(X0 + x, Y0 + y) for x, y in points]


write("plane_terrain.txt", planar_terrain(0.02))
write("steep_terrain.txt", planar_terrain(0.2))
write("flat_terrain.txt", flat_terrain())
write("square_plot.txt", shifted([(0, 0), (700, 0), (700, 700), (0, 700)]))
write("l_plot.txt", shifted([(0, 0), (300, 0), (300, 300), (200, 300), (200, 100), (0, 100)]))
write("l_plot.eplot", shifted([(200, 100), (200, 0)]))
write("l_bad.eplot", shifted([(200, 300), (300, 0)]))
with open(os.path.join(HERE, "malformed_terrain.txt"), "w", newline="\n") as f:
    f.write("510000.00 7920000.00 10.00\n510000.00 7920010.00 10.00\n510000.00 7920020.00\n")
