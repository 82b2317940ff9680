# Copyright 2026 The xshap Authors.
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

"""Writes synthetic.csv: 200 rows, three features, a binary label drawn from
a logistic model, and a two-valued subgroup tag."""

import csv
import math
import random


def main():
    rng = random.Random(20260101)
    with open("synthetic.csv", "w", newline="") as f:
        out = csv.writer(f)
        out.writerow(["x1", "x2", "x3", "group", "label"])
        for _ in range(200):
            group = "a" if rng.random() < 0.7 else "b"
            x1 = rng.gauss(0.0, 1.0)
            x2 = rng.gauss(0.5 if group == "b" else 0.0, 1.0)
            x3 = rng.uniform(-1.0, 1.0)
            logit = 1.8 * x1 - 1.2 * x2 + 0.6 * x3 + (0.4 if group == "b" else 0.0)
            label = 1 if rng.random() < 1.0 / (1.0 + math.exp(-logit)) else 0
            out.writerow([f"{x1:.6f}", f"{x2:.6f}", f"{x3:.6f}", group, label])


if __name__ == "__main__":
    main()
