# Copyright 2026 The vqtrain Authors
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
"""Fidelity training of parameterized quantum circuits.

Thin Python layer over the C++ core: circuits, states, the quantum Fisher
metric, adaptive gradient ascent, quantum control and projected variational
dynamics.
"""

from ._core import (  # noqa: F401
    Circuit,
    ConditioningError,
    ContractError,
    ControlProblem,
    DomainError,
    SizeError,
    State,
    __version__,
    build_ansatz,
    build_product_ansatz,
    control_gradient,
    control_qfim,
    evolve_protocol,
    fidelity,
    fidelity_gradient,
    gqng,
    init_at_infidelity,
    kernel_scan,
    make_control_problem,
    make_unreachable_target,
    parameter_shift_gradient,
    prepare,
    pvqd_run,
    qfim,
    random_parameters,
    tangents,
    train,
    train_control,
    variance_scan,
    VqtrainError,
)
