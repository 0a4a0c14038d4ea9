#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace sobseq::kernels {

std::string_view to_string(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

const KernelTable* avx2_kernels()
{
#if defined(SOBSEQ_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    }();
    if (supported)
        return &detail::avx2_table();
#endif
    return nullptr;
}

const KernelTable& active_kernels()
{
    static const KernelTable* table = [] {
        const char* forced = std::getenv("SOBSEQ_ISA");
        if (forced && std::string_view(forced) == "scalar")
            return &scalar_kernels();
        if (const KernelTable* avx2 = avx2_kernels())
            return avx2;
        return &scalar_kernels();
    }();
    return *table;
}

} // namespace sobseq::kernels
