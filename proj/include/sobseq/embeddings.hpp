#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sobseq/spaces.hpp"
#include "sobseq/weights.hpp"

namespace sobseq {

enum class Relation { CompactEmbedding, ContinuousEmbedding, NoGuarantee };

std::string_view to_string(Relation r);

struct EmbeddingReport {
    Relation relation = Relation::NoGuarantee;
    /// Present whenever relation != NoGuarantee.
    std::optional<double> constant;
    std::vector<std::string> notes;
};

/// Relation between h^{k_src,s}_w and h^{k_tgt,s}_w (same s and w).
EmbeddingReport classify_order_pair(double k_src, double k_tgt);

enum class Theorem { T1a, T2 };

std::string_view to_string(Theorem t);

/// Tail rank m* with the guarantee that every p in the kappa-ball of the
/// source space satisfies ||p - truncate(p, m*)||_target <= epsilon / 2.
struct CompactnessCertificate {
    Theorem theorem = Theorem::T1a;
    Domain domain = Domain::FullLine;
    Index m_star = 0;
    Index subspace_dim = 0;
    double epsilon = 0.0;
    double kappa = 0.0;
    std::optional<double> constant;
    bool rigorous = true;
};

/// 2 m* + 1 on the full line, m* on the half line, 0 for m* = 0.
Index subspace_dimension(Index m_star, Domain domain);

Index tail_rank_theorem1(double k, double k_prime, double s, double epsilon, double kappa);

CompactnessCertificate certify_theorem1(double k, double k_prime, double s, const WeightFamily& w,
                                        double epsilon, double kappa);

/// c_{s,t} with ||p||_{k,s,w} <= c_{s,t} ||p||_{k,t,w}, valid for k >= 0,
/// s >= t >= 1 and inf w > 0.
double summability_constant(double k, double s, double t, const WeightFamily& w);

/// r = s t / (s - t), so that 1/r + 1/s = 1/t.
double holder_exponent(double s, double t);

/// Certified value of sum over the domain of (1 + |m|^s)^(-k r / s).
struct SeriesSum {
    double value = 0.0;  // midpoint of [lower, upper]
    double lower = 0.0;  // exact partial sum (up to rounding)
    double upper = 0.0;  // partial sum plus integral-test tail bound
    Index cutoff = 0;    // terms with |m| <= cutoff were summed
    double tail_bound = 0.0;
};

SeriesSum weight_series_sum(double k, double s, double t, Domain domain, double tol);

/// c_{k,s,t} with ||p||_{t,w_hat} <= c_{k,s,t} ||p||_{k,s,w}, given the
/// lower ratio bound c1 of w_m^(t/s) / w_hat_m.
double theorem2_constant(double k, double s, double t, double c1, Domain domain, double tol);

/// c2^(1/t): ||p||_{s,w} <= c2^(1/t) ||p||_{t,w_hat}.
double theorem2_second_constant(double s, double t, double c2);

Index tail_rank_theorem2(double k, double s, double t, double c1, double epsilon, double kappa,
                         Domain domain, double tol);

CompactnessCertificate certify_theorem2(double k, double s, double t, const RatioBounds& ratio,
                                        double epsilon, double kappa, Domain domain, double tol);

/// Empirical lower bound for the best constant C in ||p||_tgt <= C ||p||_src:
/// max of the norm ratio over all basis vectors with |m| <= window and
/// `trials` seeded random vectors.
double sharpness_probe(const SpaceParams& src, const SpaceParams& tgt, int trials,
                       std::uint64_t seed, Index window = 64);

} // namespace sobseq
