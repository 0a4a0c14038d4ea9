#include "sobseq/sampling.hpp"

#include <cmath>

namespace sobseq {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream)
{
    std::uint64_t state = seed;
    const std::uint64_t a = splitmix64(state);
    state ^= stream * 0xD1B54A32D192ED03ULL;
    return a ^ splitmix64(state);
}

} // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

Index Rng::integer(Index lo, Index hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Index>(next() % span);
}

std::complex<double> random_complex(Rng& rng)
{
    const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
    return {scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0)};
}

SeqVector random_vector(Rng& rng, Domain domain, Index radius, std::size_t max_support)
{
    const Index lo = domain == Domain::HalfLine ? 0 : -radius;
    const auto support = static_cast<std::size_t>(rng.integer(1, static_cast<Index>(max_support)));
    SeqVector::Entries entries;
    for (std::size_t i = 0; i < support; ++i)
        entries[rng.integer(lo, radius)] = random_complex(rng);
    SeqVector v(std::move(entries));
    if (v.empty())
        return basis_vector(lo);
    return v;
}

} // namespace sobseq
