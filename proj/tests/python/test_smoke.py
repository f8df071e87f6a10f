# Copyright 2026 The nsdensity Authors
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

from fractions import Fraction

import pytest

import nsdensity as nd


def test_associated_set_and_family():
    t = nd.NumericalSet(3, [1])
    assert nd.associated_set(t) == nd.NumericalSet.minimal(3)
    assert not nd.is_semigroup(t)
    s = nd.n_of([1, 3], 7)
    assert s.small_members == [4, 6]
    assert nd.d_of(s) == nd.DSet([1, 3])
    assert nd.multiplicity(s) == 4
    assert nd.r_value(s) == 3


def test_dset_parsing():
    assert nd.DSet.parse("1,3").key() == "1,3"
    assert nd.DSet.parse("").key() == "∅"
    with pytest.raises(ValueError):
        nd.DSet.parse("3,1")


def test_density_table():
    table = nd.density_table(9)
    assert len(table) == 21
    assert sum(table.values()) == 2**8
    assert nd.density_table(3)[nd.DSet()] == 3
    assert nd.density_table(12, workers=1) == nd.density_table(12, workers=3)


def test_counters():
    assert nd.count_B([1], 10) == 128
    assert nd.count_B("1,3", 7) == 3
    assert nd.count_G_l(0, 5) == nd.density_table(5)[nd.DSet()]
    assert nd.alpha_empirical(5, -1) == Fraction(5, 8)
    with pytest.raises(nd.BudgetExceeded):
        nd.density_table(40)


def test_limits(tmp_path):
    constants = nd.Constants()
    g = nd.gamma(constants, [], depth=2)
    assert g["value"] == Fraction(5, 8)
    assert g["lower"] == Fraction(5, 8) - Fraction(9, 16)
    assert nd.gamma_lower_bound([]) is None
    assert nd.gamma_lower_bound([1]) > 0
    a = nd.alpha(constants, 1, depth=6)
    assert a["value"] == nd.gamma(constants, [1], depth=6)["value"]
    rows = nd.gamma_table(constants, 2, depth=6)
    assert len(rows) == 4
    assert all(x["value"] >= y["value"] for x, y in zip(rows, rows[1:]))

    path = tmp_path / "c.cache"
    assert constants.dirty
    constants.save(path)
    reloaded = nd.Constants(cache=path)
    assert reloaded.a_const("1,3") == 3
    assert not reloaded.dirty


def test_verify_core():
    results = nd.verify(nd.Constants(), suite="core", max_f=8)
    assert results and all(r["passed"] for r in results)
