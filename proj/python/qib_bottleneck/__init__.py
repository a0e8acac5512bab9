# Copyright 2026 The quantum-bottleneck Authors
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

"""Quantum information bottleneck solvers."""

from ._qib import (
    CQChannel,
    CQState,
    NumericalError,
    ValidationError,
    advantage_gap,
    classical_bound,
    classify,
    copy_state,
    f_alpha,
    f_dib,
    f_operator,
    fourier_feature_channel,
    gamma_ratio,
    holevo_information,
    mutual_info_tx,
    mutual_info_ty,
    quantum_bound,
    random_qubit_ensemble,
    run_qdib,
    run_qib,
)

__all__ = [
    "CQChannel",
    "CQState",
    "NumericalError",
    "ValidationError",
    "advantage_gap",
    "classical_bound",
    "classify",
    "copy_state",
    "f_alpha",
    "f_dib",
    "f_operator",
    "fourier_feature_channel",
    "gamma_ratio",
    "holevo_information",
    "mutual_info_tx",
    "mutual_info_ty",
    "quantum_bound",
    "random_qubit_ensemble",
    "run_qdib",
    "run_qib",
]
