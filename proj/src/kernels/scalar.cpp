#include <cmath>

#include "kernels_internal.hpp"

namespace sobseq::kernels {
namespace {

NeumaierSum decay_series(std::int64_t first, std::int64_t last, double s, double a)
{
    NeumaierSum acc;
    for (std::int64_t m = first; m < last; ++m) {
        const double base = 1.0 + std::pow(static_cast<double>(m), s);
        acc.add(std::pow(base, -a));
    }
    return acc;
}

NeumaierSum abs_pow_sum(std::span<const double> x, double p)
{
    NeumaierSum acc;
    for (double v : x) {
        const double mag = std::abs(v);
        if (mag != 0.0)
            acc.add(std::pow(mag, p));
    }
    return acc;
}

void scale_by_exp(std::span<std::complex<double>> values,
                  std::span<const double> log_factors,
                  double log_offset)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] *= std::exp(log_offset + log_factors[i]);
}

constexpr KernelTable kScalar{Isa::Scalar, &decay_series, &abs_pow_sum, &scale_by_exp};

} // namespace

const KernelTable& scalar_kernels() { return kScalar; }

} // namespace sobseq::kernels
