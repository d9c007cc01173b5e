#!/usr/bin/env python3
# Copyright 2026 The Authors.
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
"""Writes a road-network-like undirected graph: a perturbed grid.

Some grid streets are dropped and a few diagonal shortcuts are added, which
gives the sparse, nearly planar shape of road maps.
"""

import argparse
import random


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=24)
    parser.add_argument("--cols", type=int, default=24)
    parser.add_argument("--drop", type=float, default=0.06)
    parser.add_argument("--shortcuts", type=float, default=0.04)
    parser.add_argument("--seed", type=int, default=2026)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    edges = []
    for r in range(args.rows):
        for c in range(args.cols):
            here = f"n{r}_{c}"
            if c + 1 < args.cols and rng.random() >= args.drop:
                edges.append((here, f"n{r}_{c + 1}"))
            if r + 1 < args.rows and rng.random() >= args.drop:
                edges.append((here, f"n{r + 1}_{c}"))
            if (r + 1 < args.rows and c + 1 < args.cols
                    and rng.random() < args.shortcuts):
                edges.append((here, f"n{r + 1}_{c + 1}"))

    print(f"# Perturbed {args.rows}x{args.cols} grid, seed {args.seed}, "
          f"{len(edges)} edges.")
    print("undirected")
    for k, (u, v) in enumerate(edges):
        print(f"r{k} {u} {v}")


if __name__ == "__main__":
    main()
