# Copyright 2026 The fibcompile Authors
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

"""Compile quantum gates into braids of Fibonacci anyons."""

import json

from ._fibcompile import (
    Error,
    InfeasibleTarget,
    IoError,
    NetTooCoarse,
    basis_dimension,
    braid_to_json,
    canonicalize,
    evaluate_braid,
    f_matrix,
    sigma1,
    sigma2,
)
from . import _fibcompile

__all__ = [
    "Error",
    "InfeasibleTarget",
    "IoError",
    "NetTooCoarse",
    "basis_dimension",
    "braid_to_json",
    "canonicalize",
    "compile2q",
    "compile_single_qubit",
    "evaluate_braid",
    "f_matrix",
    "scaling",
    "search",
    "sigma1",
    "sigma2",
    "sk",
]


def search(target, l_max, mode="exact", m=2, alpha=3.141592653589793, keep=1, workers=1):
    """Best weaves for a library target, as dicts."""
    return json.loads(_fibcompile._search(target, l_max, mode, m, alpha, keep, workers))


def scaling(target, l_max, workers=1):
    """(L, epsilon) rows where the best distance improves."""
    return _fibcompile._scaling(target, l_max, workers)


def sk(target, depth, net_length=16, frame_samples=8):
    return json.loads(_fibcompile._sk(target, depth, net_length, frame_samples))


def compile2q(construction, ideal=False, l_max=16, m=2, alpha=3.141592653589793):
    """Assemble a six-strand two-qubit gate and its per-sector report."""
    return json.loads(_fibcompile._compile2q(construction, ideal, l_max, m, alpha))


def compile_single_qubit(u, mode="projective", l_max=16, sk_depth=0):
    return json.loads(_fibcompile._compile_single_qubit(u, mode, l_max, sk_depth))
