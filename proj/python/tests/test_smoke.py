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

import cmath
import math

import numpy as np
import pytest

import fibcompile as fc

TAU = (math.sqrt(5) - 1) / 2


def test_f_matrix():
    f = fc.f_matrix()
    expected = np.array([[TAU, math.sqrt(TAU), 0], [math.sqrt(TAU), -TAU, 0], [0, 0, 1]])
    assert np.allclose(f, expected, atol=1e-12)
    assert np.allclose(f @ f, np.eye(3), atol=1e-12)


def test_sigma1():
    s1 = fc.sigma1()
    expected = np.diag([cmath.exp(-4j * math.pi / 5), cmath.exp(3j * math.pi / 5),
                        cmath.exp(3j * math.pi / 5)])
    assert np.allclose(s1, expected, atol=1e-12)


def test_basis_dimensions():
    assert [fc.basis_dimension(n, 1) for n in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]
    assert fc.basis_dimension(6, 0) == 5


def test_evaluate_and_canonicalize():
    u = fc.evaluate_braid(3, [(1, 1), (1, 1), (2, -1)])
    v = fc.evaluate_braid(3, fc.canonicalize(3, [(1, 1), (1, 1), (2, -1)]))
    assert np.allclose(u, v, atol=1e-12)
    assert fc.canonicalize(3, [(1, 3), (1, 7)]) == []


def test_search():
    best = fc.search("ix", 16)[0]
    assert best["length"] == 14
    assert best["distance"] == pytest.approx(0.191007794186624, abs=1e-12)


def test_compile2q_ideal():
    out = fc.compile2q("injection-cnot", ideal=True)
    for sector in out["report"]["sectors"]:
        assert sector["distance_exact"] < 1e-12
        assert sector["leakage"] < 1e-12


def test_infeasible_raises():
    with pytest.raises(fc.InfeasibleTarget):
        fc.search("effective-braiding", 8, m=3)
