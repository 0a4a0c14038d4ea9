#pragma once

#include "sobseq/kernels/kernels.hpp"

namespace sobseq::kernels::detail {

#if defined(SOBSEQ_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

} // namespace sobseq::kernels::detail
