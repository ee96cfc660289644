// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_SRC_KERNELS_BACKEND_REGISTRATION_HPP
#define LARCH_SRC_KERNELS_BACKEND_REGISTRATION_HPP

#include "larch/core/dispatch.hpp"

namespace larch {

void register_reference_kernels(KernelRegistry& registry);
void register_parallel_kernels(KernelRegistry& registry);
void register_sim_device_kernels(KernelRegistry& registry);

}  // namespace larch

#endif  // LARCH_SRC_KERNELS_BACKEND_REGISTRATION_HPP
