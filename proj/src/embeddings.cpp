#include "sobseq/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sobseq/error.hpp"
#include "sobseq/kernels/kernels.hpp"
#include "sobseq/sampling.hpp"

namespace sobseq {

std::string_view to_string(Relation r)
{
    switch (r) {
    case Relation::CompactEmbedding: return "compact";
    case Relation::ContinuousEmbedding: return "continuous";
    case Relation::NoGuarantee: return "none";
    }
    return "unknown";
}

std::string_view to_string(Theorem t)
{
    return t == Theorem::T1a ? "T1a" : "T2";
}

EmbeddingReport classify_order_pair(double k_src, double k_tgt)
{
    if (!std::isfinite(k_src) || !std::isfinite(k_tgt))
        throw Error(ErrorCode::InvalidArgument, "orders must be finite");

    EmbeddingReport report;
    if (k_tgt > k_src) {
        report.relation = Relation::NoGuarantee;
        report.notes.push_back("target order exceeds source order; ||e_m||_tgt / ||e_m||_src is unbounded");
        return report;
    }
    report.constant = 1.0;
    if (k_tgt == k_src) {
        report.relation = Relation::ContinuousEmbedding;
        report.notes.push_back("identity map");
        return report;
    }

    // k_tgt < k_src. Position of l^s_w (order 0) in the chain.
    report.relation = Relation::CompactEmbedding;
    const double k = k_tgt;
    const double kp = k_src;
    if (kp <= 0.0)
        report.notes.push_back("chain (a): l^s_w -> h^{k',s}_w continuous, h^{k',s}_w => h^{k,s}_w compact");
    if (k <= 0.0 && 0.0 < kp)
        report.notes.push_back("chain (b): h^{k',s}_w => l^s_w compact, l^s_w -> h^{k,s}_w continuous");
    if (0.0 <= k)
        report.notes.push_back("chain (c): h^{k',s}_w => h^{k,s}_w compact, h^{k,s}_w -> l^s_w continuous");
    return report;
}

Index subspace_dimension(Index m_star, Domain domain)
{
    if (m_star == 0)
        return 0;
    return domain == Domain::FullLine ? 2 * m_star + 1 : m_star;
}

namespace {

void require_positive(double x, const char* what)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
}

// Largest cutoff the certified summation will walk to.
constexpr Index kMaxTerms = Index{1} << 32;

} // namespace

Index tail_rank_theorem1(double k, double k_prime, double s, double epsilon, double kappa)
{
    if (!std::isfinite(k) || !std::isfinite(k_prime))
        throw Error(ErrorCode::InvalidArgument, "orders must be finite");
    if (!(k_prime > k))
        throw Error(ErrorCode::NotStrictlySmoother, "tail rank needs k' > k");
    if (!std::isfinite(s) || s < 1.0)
        throw Error(ErrorCode::InvalidExponents, "s must be finite and >= 1");
    require_positive(epsilon, "epsilon");
    require_positive(kappa, "kappa");

    const double gap = k_prime - k;
    const double ratio = 2.0 * kappa / epsilon;
    if (ratio <= 1.0)
        return 0;

    const double rhs = std::pow(ratio, s);
    const double log_rhs = s * std::log(ratio);
    // (1 + m^s)^gap >= (2 kappa / epsilon)^s, compared directly while both
    // sides are representable so that exact boundary cases stay exact.
    auto holds = [&](Index m) {
        const double x = static_cast<double>(m);
        const double lhs = std::pow(1.0 + std::pow(x, s), gap);
        if (std::isfinite(lhs) && std::isfinite(rhs))
            return lhs >= rhs;
        return gap * log1p_pow(x, s) >= log_rhs;
    };

    // Closed form m = ((ratio^s)^(1/gap) - 1)^(1/s), then settle on the exact boundary.
    const double y = log_rhs / gap;
    const double log_m = (y > 36.0 ? y : std::log(std::expm1(y))) / s;
    if (log_m > std::log(static_cast<double>(kMaxIndex)) - 1.0)
        throw Error(ErrorCode::ToleranceUnreachable, "tail rank exceeds the supported index range");
    Index m = static_cast<Index>(std::ceil(std::exp(log_m)));
    while (m > 0 && holds(m - 1))
        --m;
    while (!holds(m))
        ++m;
    return m;
}

CompactnessCertificate certify_theorem1(double k, double k_prime, double s, const WeightFamily& w,
                                        double epsilon, double kappa)
{
    CompactnessCertificate cert;
    cert.theorem = Theorem::T1a;
    cert.domain = w.domain();
    cert.m_star = tail_rank_theorem1(k, k_prime, s, epsilon, kappa);
    cert.subspace_dim = subspace_dimension(cert.m_star, cert.domain);
    cert.epsilon = epsilon;
    cert.kappa = kappa;
    cert.constant = 1.0;
    cert.rigorous = true;
    return cert;
}

double summability_constant(double k, double s, double t, const WeightFamily& w)
{
    if (!(k >= 0.0) || !std::isfinite(k))
        throw Error(ErrorCode::HypothesisFailure, "summability constant needs k >= 0");
    if (!(t >= 1.0) || !(s >= t) || !std::isfinite(s))
        throw Error(ErrorCode::HypothesisFailure, "summability constant needs s >= t >= 1");
    const double inf = weight_infimum(w);
    return std::pow(inf, 1.0 / s - 1.0 / t);
}

double holder_exponent(double s, double t)
{
    return s * t / (s - t);
}

namespace {

struct SeriesSetup {
    double a = 0.0;      // exponent of (1 + |m|^s)^(-a)
    double excess = 0.0; // k r - 1 > 0
    double factor = 1.0; // two tails on the full line
    Index min_cutoff = 2;
};

// Validates exponents (throwing `exponent_error`) and the convergence hypothesis.
SeriesSetup series_setup(double k, double s, double t, Domain domain, ErrorCode exponent_error)
{
    if (!std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "order k must be finite");
    if (!(t >= 1.0) || !(s > t) || !std::isfinite(s))
        throw Error(exponent_error, "needs s > t >= 1");
    if (!(k > (s - t) / (s * t)))
        throw Error(ErrorCode::SeriesDiverges,
                    "k must exceed (s - t) / (s t); the weight series diverges");

    SeriesSetup setup;
    const double r = holder_exponent(s, t);
    setup.a = k * r / s;
    setup.excess = k * r - 1.0;
    if (!(setup.excess > 0.0))
        throw Error(ErrorCode::SeriesDiverges, "k r = 1 to working precision");
    setup.factor = domain == Domain::FullLine ? 2.0 : 1.0;

    const double start = std::pow(setup.excess, -1.0 / setup.excess);
    if (!(start < static_cast<double>(kMaxTerms)))
        throw Error(ErrorCode::ToleranceUnreachable, "series converges too slowly to certify");
    setup.min_cutoff = std::max<Index>(2, static_cast<Index>(std::ceil(start)));
    return setup;
}

// Integral-test bound on the terms beyond the cutoff (all of them, both tails).
double tail_bound(const SeriesSetup& setup, Index cutoff)
{
    return setup.factor * std::pow(static_cast<double>(cutoff), -setup.excess) / setup.excess;
}

// Smallest cutoff >= min_cutoff whose tail bound is <= target.
Index cutoff_for(const SeriesSetup& setup, double target)
{
    const double log_m = (std::log(setup.factor) - std::log(setup.excess) - std::log(target)) /
                         setup.excess;
    if (!(log_m < std::log(static_cast<double>(kMaxTerms))))
        throw Error(ErrorCode::ToleranceUnreachable,
                    "certifying this tolerance needs more than 2^32 terms");
    Index m = std::max(setup.min_cutoff, static_cast<Index>(std::ceil(std::exp(log_m))));
    while (m > setup.min_cutoff && tail_bound(setup, m - 1) <= target)
        --m;
    while (tail_bound(setup, m) > target)
        ++m;
    return m;
}

double term(const SeriesSetup& setup, double s, Index m)
{
    return kernels::active_kernels().decay_series(m, m + 1, s, setup.a).value();
}

} // namespace

SeriesSum weight_series_sum(double k, double s, double t, Domain domain, double tol)
{
    require_positive(tol, "tolerance");
    const SeriesSetup setup = series_setup(k, s, t, domain, ErrorCode::InvalidExponents);
    const Index cutoff = cutoff_for(setup, tol);

    NeumaierSum sum = kernels::active_kernels().decay_series(1, cutoff + 1, s, setup.a);
    NeumaierSum partial;
    partial.add(1.0); // m = 0
    partial.add(setup.factor * sum.raw_sum());
    partial.add(setup.factor * sum.compensation());

    SeriesSum out;
    out.cutoff = cutoff;
    out.tail_bound = tail_bound(setup, cutoff);
    out.lower = partial.value();
    out.upper = out.lower + out.tail_bound + 8.0 * std::numeric_limits<double>::epsilon() * out.lower;
    out.value = out.lower + 0.5 * out.tail_bound;
    return out;
}

double theorem2_constant(double k, double s, double t, double c1, Domain domain, double tol)
{
    if (!(t >= 1.0) || !(s > t) || !std::isfinite(s))
        throw Error(ErrorCode::HypothesisFailure, "embedding constant needs s > t >= 1");
    require_positive(c1, "c1");
    const double series = weight_series_sum(k, s, t, domain, tol).upper;
    return std::pow(c1, -1.0 / t) * std::pow(series, 1.0 / holder_exponent(s, t));
}

double theorem2_second_constant(double s, double t, double c2)
{
    if (!(t >= 1.0) || !(s > t) || !std::isfinite(s))
        throw Error(ErrorCode::InvalidExponents, "needs s > t >= 1");
    require_positive(c2, "c2");
    return std::pow(c2, 1.0 / t);
}

Index tail_rank_theorem2(double k, double s, double t, double c1, double epsilon, double kappa,
                         Domain domain, double tol)
{
    require_positive(c1, "c1");
    require_positive(epsilon, "epsilon");
    require_positive(kappa, "kappa");
    require_positive(tol, "tolerance");
    const SeriesSetup setup = series_setup(k, s, t, domain, ErrorCode::HypothesisFailure);

    const double r = holder_exponent(s, t);
    const double threshold =
        std::exp(r * (std::log(epsilon) + std::log(c1) / t - std::log(2.0) - std::log(kappa)));

    // Certified tail beyond L, then walk down accumulating the exact terms
    // until the running tail exceeds the threshold.
    const Index last = cutoff_for(setup, std::min(tol, 0.5 * threshold));
    NeumaierSum running;
    running.add(tail_bound(setup, last));

    const auto& kern = kernels::active_kernels();
    constexpr Index kBlock = Index{1} << 16;
    for (Index hi = last; hi >= 1;) {
        const Index lo = std::max<Index>(1, hi - kBlock + 1);
        const double block = setup.factor * kern.decay_series(lo, hi + 1, s, setup.a).value();
        if (running.value() + block <= threshold) {
            running.add(block);
            hi = lo - 1;
            continue;
        }
        for (Index m = hi; m >= lo; --m) {
            running.add(setup.factor * term(setup, s, m));
            if (running.value() > threshold)
                return m + 1;
        }
        // Only reached when rounding made the block sum exceed its terms.
        hi = lo - 1;
    }
    running.add(term(setup, s, 0));
    return running.value() > threshold ? 1 : 0;
}

CompactnessCertificate certify_theorem2(double k, double s, double t, const RatioBounds& ratio,
                                        double epsilon, double kappa, Domain domain, double tol)
{
    CompactnessCertificate cert;
    cert.theorem = Theorem::T2;
    cert.domain = domain;
    cert.m_star = tail_rank_theorem2(k, s, t, ratio.c1, epsilon, kappa, domain, tol);
    cert.subspace_dim = subspace_dimension(cert.m_star, domain);
    cert.epsilon = epsilon;
    cert.kappa = kappa;
    cert.constant = theorem2_constant(k, s, t, ratio.c1, domain, tol);
    cert.rigorous = ratio.analytic;
    return cert;
}

double sharpness_probe(const SpaceParams& src, const SpaceParams& tgt, int trials,
                       std::uint64_t seed, Index window)
{
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "sharpness probe needs at least one trial");
    if (window < 0)
        throw Error(ErrorCode::InvalidArgument, "probe window must be nonnegative");
    if (src.domain() != tgt.domain())
        throw Error(ErrorCode::DomainMismatch, "source and target live on different domains");

    const Domain domain = src.domain();
    double best = 0.0;
    auto consider = [&](const SeqVector& p) {
        const double denom = norm(src, p);
        if (denom > 0.0)
            best = std::max(best, norm(tgt, p) / denom);
    };
    for (Index m = domain == Domain::HalfLine ? 0 : -window; m <= window; ++m)
        consider(basis_vector(m));
    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        consider(random_vector(rng, domain, window));
    }
    return best;
}

} // namespace sobseq
