// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/kernels.hpp"

namespace binet::kernels {

const Ops& scalar_ops();

#if defined(BINET_HAVE_AVX2)
const Ops& avx2_ops();
#endif

} // namespace binet::kernels
