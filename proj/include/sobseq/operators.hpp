#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "sobseq/spaces.hpp"

namespace sobseq {

/// Truncation of a bounded operator T: h^{src} -> h^{tgt} to the square
/// index window, stored row-major with rows indexed by the target index.
class FiniteSectionOperator {
public:
    FiniteSectionOperator(IndexRange window, SpaceParams src, SpaceParams tgt,
                          std::vector<std::complex<double>> entries);

    static FiniteSectionOperator zero(IndexRange window, SpaceParams src, SpaceParams tgt);

    IndexRange window() const { return window_; }
    std::size_t dim() const { return static_cast<std::size_t>(window_.size()); }
    const SpaceParams& src() const { return src_; }
    const SpaceParams& tgt() const { return tgt_; }

    std::complex<double> at(Index row, Index col) const { return entries_[offset(row, col)]; }
    std::complex<double>& at(Index row, Index col) { return entries_[offset(row, col)]; }

    std::span<const std::complex<double>> row(Index m) const;
    std::span<std::complex<double>> row(Index m);
    std::span<const std::complex<double>> entries() const { return entries_; }

    /// Dense product on window coordinates.
    std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

private:
    std::size_t offset(Index row, Index col) const;

    IndexRange window_;
    SpaceParams src_;
    SpaceParams tgt_;
    std::vector<std::complex<double>> entries_;
};

/// (J p)_m = w_m^(1/s) (1 + |m|^s)^(k/s) p_m, an isometry onto unweighted l^s.
SeqVector isometry_apply(const SpaceParams& sp, const SeqVector& p);
SeqVector isometry_invert(const SpaceParams& sp, const SeqVector& q);

/// C = J_{k,t,w} T J_{k,s,w}^{-1}, an operator from unweighted l^s to l^t.
FiniteSectionOperator pitt_conjugate(const FiniteSectionOperator& op);

/// Inverse of pitt_conjugate: T = J_{k,t,w}^{-1} C J_{k,s,w}.
FiniteSectionOperator pitt_deconjugate(const FiniteSectionOperator& conjugated,
                                       const SpaceParams& src, const SpaceParams& tgt);

/// The embedding h^{src} -> h^{tgt} seen through the isometries: the diagonal
/// d_m = ||e_m||_tgt / ||e_m||_src on unweighted l^s.
FiniteSectionOperator embedding_as_diagonal(const SpaceParams& src, const SpaceParams& tgt,
                                            IndexRange window);

/// Unweighted l^p norm of a dense vector; p = +inf gives the max magnitude.
double lp_norm(std::span<const std::complex<double>> x, double p);

/// Row-Holder bound (sum_m ||row_m||_{s'}^t)^(1/t) >= ||A||_{l^s -> l^t},
/// with s = src().s() and t = tgt().s().
double operator_norm_upper(const FiniteSectionOperator& op);

/// Largest observed ||A x||_t / ||x||_s over the window's basis vectors and
/// `probes` seeded random vectors.
double operator_norm_lower(const FiniteSectionOperator& op, int probes, std::uint64_t seed);

/// Caller-declared majorant of the row s'-norms of the conjugated operator.
class DecayEnvelope {
public:
    enum class Form { Power, Exponential, Table };

    /// amplitude (1 + |m|)^(-gamma)
    static DecayEnvelope power(double gamma, double amplitude = 1.0);
    /// amplitude exp(-rho |m|)
    static DecayEnvelope exponential(double rho, double amplitude = 1.0);
    /// Explicit values; rows not listed are declared zero.
    static DecayEnvelope table(std::map<Index, double> values);

    Form form() const { return form_; }
    double rate() const { return rate_; }
    double amplitude() const { return amplitude_; }

    double bound(Index m) const;

    /// Certified upper bound of sum_{|m| > n} bound(m)^t over the domain.
    /// Throws EnvelopeNotSummable when the series diverges.
    double tail_power_sum(Index n, double t, Domain domain) const;

private:
    DecayEnvelope(Form form, double rate, double amplitude, std::map<Index, double> table)
        : form_(form), rate_(rate), amplitude_(amplitude), table_(std::move(table))
    {}

    Form form_;
    double rate_;
    double amplitude_;
    std::map<Index, double> table_;
};

struct WitnessStep {
    Index n = 0;
    double bound = 0.0;
};

struct CompactnessWitness {
    /// Rows |m| <= n_eps of C form the finite-rank approximant.
    Index n_eps = 0;
    double certified_error = 0.0;
    /// Window sizes tried on the way in increasing order; bounds are
    /// nonincreasing and the last step is (n_eps, certified_error).
    std::vector<WitnessStep> trace;
};

using EntryFunction = std::function<std::complex<double>(Index row, Index col)>;

/// Smallest n whose row-truncation error bound for C = J T J^{-1} is
/// <= epsilon. `entries` evaluates T; the envelope is checked against the
/// rows of C within |m|, |n| <= min(max(n_eps, 8), sample_radius).
CompactnessWitness compactness_witness(const EntryFunction& entries, const DecayEnvelope& envelope,
                                       const SpaceParams& src, const SpaceParams& tgt,
                                       double epsilon, Index sample_radius = 256);

} // namespace sobseq
