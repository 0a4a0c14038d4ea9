#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference
// implementation; vector variants are selected at runtime from the CPU
// features and must agree with the reference to within a few ulps per term
// (see tests/test_kernels.cpp).

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

#include "sobseq/summation.hpp"

namespace sobseq::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
    Isa isa;

    /// Sum of (1 + m^s)^(-a) for m in [first, last), m >= 0.
    NeumaierSum (*decay_series)(std::int64_t first, std::int64_t last, double s, double a);

    /// Sum of |x_i|^p, p > 0. Zero entries contribute zero.
    NeumaierSum (*abs_pow_sum)(std::span<const double> x, double p);

    /// values[i] *= exp(log_offset + log_factors[i]).
    void (*scale_by_exp)(std::span<std::complex<double>> values,
                         std::span<const double> log_factors,
                         double log_offset);
};

const KernelTable& scalar_kernels();

/// The AVX2+FMA table, or nullptr when it was not compiled in or the CPU
/// lacks the instructions.
const KernelTable* avx2_kernels();

/// Best table for this CPU. The environment variable SOBSEQ_ISA=scalar
/// forces the reference path.
const KernelTable& active_kernels();

} // namespace sobseq::kernels
