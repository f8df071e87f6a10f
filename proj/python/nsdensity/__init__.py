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

"""Exact densities of numerical semigroups under T -> A(T)."""

from ._core import (
    DEFAULT_DEPTH_BUDGET,
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_LIMIT_DEPTH,
    MAX_FROBENIUS,
    BudgetExceeded,
    CacheError,
    Constants,
    ConsistencyError,
    DSet,
    NumericalSet,
    alpha,
    alpha_empirical,
    associated_set,
    count_B,
    count_B_l,
    count_G_l,
    count_S,
    d_of,
    density_table,
    gamma,
    gamma_lower_bound,
    gamma_table,
    is_semigroup,
    multiplicity,
    n_of,
    r_value,
    verify,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
