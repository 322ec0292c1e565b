# Copyright 2026 The hyperexp Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Sparse 3-uniform hypergraph expanders from Sidon sets over Z_2^t."""

from hyperexp._core import (
    HyperexpError,
    Hypergraph,
    SidonSet,
    __version__,
    aux_spectrum,
    complete_overlap,
    count_crossing_triples,
    expansion,
    expansion_certificate,
    gold_sidon,
    hypergraph_overlap,
    is_sidon,
    mixing_profile,
    monte_carlo_walk,
    pair_sums,
    point_in_triangle,
    random_sidon,
    random_thirds,
    run_cli,
    sidon_violation,
    spectral_gap,
    spectrum,
    square_relation_holds,
)

__all__ = [
    "HyperexpError",
    "Hypergraph",
    "SidonSet",
    "__version__",
    "aux_spectrum",
    "complete_overlap",
    "count_crossing_triples",
    "expansion",
    "expansion_certificate",
    "gold_sidon",
    "hypergraph_overlap",
    "is_sidon",
    "mixing_profile",
    "monte_carlo_walk",
    "pair_sums",
    "point_in_triangle",
    "random_sidon",
    "random_thirds",
    "run_cli",
    "sidon_violation",
    "spectral_gap",
    "spectrum",
    "square_relation_holds",
]
