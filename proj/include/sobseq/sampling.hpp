#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "sobseq/spaces.hpp"

namespace sobseq {

/// Deterministic random stream. Independent trials derive their own stream
/// from (seed, trial index) so they can run in any order.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    Index integer(Index lo, Index hi);

private:
    std::mt19937_64 engine_;
};

/// Random finite-support vector with indices in the window |m| <= radius
/// (m >= 0 on the half line). Magnitudes span several decades.
SeqVector random_vector(Rng& rng, Domain domain, Index radius, std::size_t max_support = 8);

std::complex<double> random_complex(Rng& rng);

} // namespace sobseq
