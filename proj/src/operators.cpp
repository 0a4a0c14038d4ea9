#include "sobseq/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sobseq/error.hpp"
#include "sobseq/kernels/kernels.hpp"
#include "sobseq/sampling.hpp"

namespace sobseq {

FiniteSectionOperator::FiniteSectionOperator(IndexRange window, SpaceParams src, SpaceParams tgt,
                                             std::vector<std::complex<double>> entries)
    : window_(window), src_(std::move(src)), tgt_(std::move(tgt)), entries_(std::move(entries))
{
    if (window_.empty())
        throw Error(ErrorCode::InvalidArgument, "empty operator window");
    for (Index m : {window_.lo, window_.hi}) {
        require_in_domain(src_.domain(), m);
        require_in_domain(tgt_.domain(), m);
    }
    if (entries_.size() != dim() * dim())
        throw Error(ErrorCode::InvalidArgument,
                    "operator has " + std::to_string(entries_.size()) + " entries, window needs " +
                        std::to_string(dim() * dim()));
}

FiniteSectionOperator FiniteSectionOperator::zero(IndexRange window, SpaceParams src, SpaceParams tgt)
{
    const auto n = static_cast<std::size_t>(window.size());
    return FiniteSectionOperator(window, std::move(src), std::move(tgt),
                                 std::vector<std::complex<double>>(n * n));
}

std::size_t FiniteSectionOperator::offset(Index row, Index col) const
{
    if (!window_.contains(row) || !window_.contains(col))
        throw Error(ErrorCode::IndexOutsideDomain,
                    "(" + std::to_string(row) + ", " + std::to_string(col) + ") is outside the window");
    return static_cast<std::size_t>(row - window_.lo) * dim() + static_cast<std::size_t>(col - window_.lo);
}

std::span<const std::complex<double>> FiniteSectionOperator::row(Index m) const
{
    return std::span(entries_).subspan(offset(m, window_.lo), dim());
}

std::span<std::complex<double>> FiniteSectionOperator::row(Index m)
{
    return std::span(entries_).subspan(offset(m, window_.lo), dim());
}

std::vector<std::complex<double>> FiniteSectionOperator::apply(std::span<const std::complex<double>> x) const
{
    if (x.size() != dim())
        throw Error(ErrorCode::InvalidArgument, "vector length does not match the operator window");
    std::vector<std::complex<double>> y(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        std::complex<double> acc{};
        const auto* r = entries_.data() + i * dim();
        for (std::size_t j = 0; j < dim(); ++j)
            acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

namespace {

SeqVector scale_entries(const SpaceParams& sp, const SeqVector& p, double sign)
{
    SeqVector::Entries out;
    for (const auto& [m, v] : p.entries()) {
        require_in_domain(sp.domain(), m);
        out.emplace(m, v * std::exp(sign * log_basis_norm(sp, m)));
    }
    return SeqVector(std::move(out));
}

std::vector<double> log_scales(const SpaceParams& sp, IndexRange window)
{
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(window.size()));
    for (Index m = window.lo; m <= window.hi; ++m)
        out.push_back(log_basis_norm(sp, m));
    return out;
}

// out[m, n] = in[m, n] * exp(row_sign * row_log[m] + col_sign * col_log[n])
std::vector<std::complex<double>> rescale(std::span<const std::complex<double>> in, std::size_t dim,
                                          std::span<const double> row_log, double row_sign,
                                          std::span<const double> col_log, double col_sign)
{
    std::vector<std::complex<double>> out(in.begin(), in.end());
    std::vector<double> col_factors(col_log.begin(), col_log.end());
    for (double& f : col_factors)
        f *= col_sign;
    const auto& kern = kernels::active_kernels();
    for (std::size_t i = 0; i < dim; ++i)
        kern.scale_by_exp(std::span(out).subspan(i * dim, dim), col_factors, row_sign * row_log[i]);
    return out;
}

void require_pitt_pair(const SpaceParams& src, const SpaceParams& tgt)
{
    if (src.k() != tgt.k() || !(src.weight() == tgt.weight()))
        throw Error(ErrorCode::ParameterMismatch, "source and target must share k and w");
    if (!(tgt.s() >= 1.0) || !(src.s() > tgt.s()))
        throw Error(ErrorCode::ParameterMismatch, "conjugation needs s > t >= 1");
}

std::vector<double> magnitudes(std::span<const std::complex<double>> x)
{
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& z : x)
        out.push_back(std::abs(z));
    return out;
}

double lp_norm_real(std::vector<double> mags, double p)
{
    double top = 0.0;
    for (double v : mags)
        top = std::max(top, std::abs(v));
    if (top == 0.0 || std::isinf(p) || std::isinf(top))
        return top;
    for (double& v : mags)
        v /= top;
    const double sum = kernels::active_kernels().abs_pow_sum(mags, p).value();
    return top * std::pow(sum, 1.0 / p);
}

} // namespace

SeqVector isometry_apply(const SpaceParams& sp, const SeqVector& p)
{
    return scale_entries(sp, p, 1.0);
}

SeqVector isometry_invert(const SpaceParams& sp, const SeqVector& q)
{
    return scale_entries(sp, q, -1.0);
}

FiniteSectionOperator pitt_conjugate(const FiniteSectionOperator& op)
{
    require_pitt_pair(op.src(), op.tgt());
    const auto rows = log_scales(op.tgt(), op.window());
    const auto cols = log_scales(op.src(), op.window());
    const Domain domain = op.src().domain();
    return FiniteSectionOperator(op.window(), unweighted(op.src().s(), domain),
                                 unweighted(op.tgt().s(), domain),
                                 rescale(op.entries(), op.dim(), rows, 1.0, cols, -1.0));
}

FiniteSectionOperator pitt_deconjugate(const FiniteSectionOperator& conjugated,
                                       const SpaceParams& src, const SpaceParams& tgt)
{
    require_pitt_pair(src, tgt);
    if (conjugated.src().s() != src.s() || conjugated.tgt().s() != tgt.s())
        throw Error(ErrorCode::ParameterMismatch, "conjugated operator has different exponents");
    const auto rows = log_scales(tgt, conjugated.window());
    const auto cols = log_scales(src, conjugated.window());
    return FiniteSectionOperator(conjugated.window(), src, tgt,
                                 rescale(conjugated.entries(), conjugated.dim(), rows, -1.0, cols, 1.0));
}

FiniteSectionOperator embedding_as_diagonal(const SpaceParams& src, const SpaceParams& tgt,
                                            IndexRange window)
{
    if (src.s() != tgt.s() || !(src.weight() == tgt.weight()))
        throw Error(ErrorCode::ParameterMismatch, "embedding diagonal needs the same s and w");
    if (tgt.k() > src.k())
        throw Error(ErrorCode::NotContinuous, "target order exceeds source order");
    const double s = src.s();
    const double exponent = (tgt.k() - src.k()) / s;
    auto op = FiniteSectionOperator::zero(window, unweighted(s, src.domain()), unweighted(s, src.domain()));
    for (Index m = window.lo; m <= window.hi; ++m)
        op.at(m, m) = std::exp(exponent * log1p_pow(std::abs(static_cast<double>(m)), s));
    return op;
}

double lp_norm(std::span<const std::complex<double>> x, double p)
{
    return lp_norm_real(magnitudes(x), p);
}

namespace {

double holder_conjugate(double s)
{
    return s == 1.0 ? HUGE_VAL : s / (s - 1.0);
}

} // namespace

double operator_norm_upper(const FiniteSectionOperator& op)
{
    const double dual = holder_conjugate(op.src().s());
    std::vector<double> row_norms;
    row_norms.reserve(op.dim());
    for (Index m = op.window().lo; m <= op.window().hi; ++m)
        row_norms.push_back(lp_norm(op.row(m), dual));
    return lp_norm_real(std::move(row_norms), op.tgt().s());
}

double operator_norm_lower(const FiniteSectionOperator& op, int probes, std::uint64_t seed)
{
    if (probes < 1)
        throw Error(ErrorCode::InvalidArgument, "operator_norm_lower needs at least one probe");
    const double s = op.src().s();
    const double t = op.tgt().s();
    const std::size_t n = op.dim();

    double best = 0.0;
    std::vector<std::complex<double>> column(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            column[i] = op.entries()[i * n + j];
        best = std::max(best, lp_norm(column, t));
    }
    std::vector<std::complex<double>> x(n);
    for (int trial = 0; trial < probes; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(trial));
        for (auto& v : x)
            v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const double denom = lp_norm(x, s);
        if (denom > 0.0)
            best = std::max(best, lp_norm(op.apply(x), t) / denom);
    }
    return best;
}

DecayEnvelope DecayEnvelope::power(double gamma, double amplitude)
{
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "power decay needs gamma > 0");
    if (!std::isfinite(amplitude) || amplitude < 0.0)
        throw Error(ErrorCode::InvalidArgument, "envelope amplitude must be nonnegative");
    return DecayEnvelope(Form::Power, gamma, amplitude, {});
}

DecayEnvelope DecayEnvelope::exponential(double rho, double amplitude)
{
    if (!std::isfinite(rho) || rho <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "exponential decay needs rho > 0");
    if (!std::isfinite(amplitude) || amplitude < 0.0)
        throw Error(ErrorCode::InvalidArgument, "envelope amplitude must be nonnegative");
    return DecayEnvelope(Form::Exponential, rho, amplitude, {});
}

DecayEnvelope DecayEnvelope::table(std::map<Index, double> values)
{
    for (const auto& [m, v] : values)
        if (!std::isfinite(v) || v < 0.0)
            throw Error(ErrorCode::InvalidArgument,
                        "envelope value at " + std::to_string(m) + " must be nonnegative");
    return DecayEnvelope(Form::Table, 0.0, 1.0, std::move(values));
}

double DecayEnvelope::bound(Index m) const
{
    const double am = std::abs(static_cast<double>(m));
    switch (form_) {
    case Form::Power: return amplitude_ * std::pow(1.0 + am, -rate_);
    case Form::Exponential: return amplitude_ * std::exp(-rate_ * am);
    case Form::Table: {
        const auto it = table_.find(m);
        return it == table_.end() ? 0.0 : it->second;
    }
    }
    return 0.0;
}

double DecayEnvelope::tail_power_sum(Index n, double t, Domain domain) const
{
    const double tails = domain == Domain::FullLine ? 2.0 : 1.0;
    const double nd = static_cast<double>(n);
    switch (form_) {
    case Form::Power: {
        const double decay = rate_ * t;
        if (!(decay > 1.0))
            throw Error(ErrorCode::EnvelopeNotSummable,
                        "sum of (1+|m|)^(-gamma t) diverges for gamma t <= 1");
        if (amplitude_ == 0.0)
            return 0.0;
        // sum_{j > n} (1 + j)^(-decay) <= integral_n^inf (1 + x)^(-decay) dx
        return tails * std::pow(amplitude_, t) * std::pow(1.0 + nd, 1.0 - decay) / (decay - 1.0);
    }
    case Form::Exponential: {
        if (amplitude_ == 0.0)
            return 0.0;
        const double q = rate_ * t;
        return tails * std::pow(amplitude_, t) * std::exp(-q * (nd + 1.0)) / -std::expm1(-q);
    }
    case Form::Table: {
        NeumaierSum acc;
        for (const auto& [m, v] : table_) {
            if (!in_domain(domain, m))
                continue;
            const Index am = m < 0 ? -m : m;
            if (am > n && v > 0.0)
                acc.add(std::pow(v, t));
        }
        return acc.value();
    }
    }
    return 0.0;
}

namespace {

void check_envelope(const EntryFunction& entries, const DecayEnvelope& envelope,
                    const SpaceParams& src, const SpaceParams& tgt, Index radius)
{
    const Domain domain = src.domain();
    const IndexRange window{domain == Domain::HalfLine ? 0 : -radius, radius};
    const auto rows = log_scales(tgt, window);
    const auto cols = log_scales(src, window);
    const double dual = holder_conjugate(src.s());
    std::vector<std::complex<double>> row(static_cast<std::size_t>(window.size()));
    for (Index m = window.lo; m <= window.hi; ++m) {
        for (Index n = window.lo; n <= window.hi; ++n) {
            const auto j = static_cast<std::size_t>(n - window.lo);
            row[j] = entries(m, n) * std::exp(rows[static_cast<std::size_t>(m - window.lo)] - cols[j]);
        }
        const double observed = lp_norm(row, dual);
        const double declared = envelope.bound(m);
        if (observed > declared * (1.0 + 1e-9) + 1e-300)
            throw Error(ErrorCode::EnvelopeViolated,
                        "row " + std::to_string(m) + " has s'-norm " + std::to_string(observed) +
                            " above its envelope " + std::to_string(declared));
    }
}

} // namespace

CompactnessWitness compactness_witness(const EntryFunction& entries, const DecayEnvelope& envelope,
                                       const SpaceParams& src, const SpaceParams& tgt,
                                       double epsilon, Index sample_radius)
{
    if (!std::isfinite(epsilon) || epsilon <= 0.0)
        throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
    if (src.domain() != tgt.domain())
        throw Error(ErrorCode::DomainMismatch, "source and target live on different domains");
    if (!(tgt.s() >= 1.0) || !(src.s() > tgt.s()))
        throw Error(ErrorCode::InvalidExponents, "compactness witness needs s > t >= 1");

    const double t = tgt.s();
    const Domain domain = src.domain();
    auto error_at = [&](Index n) { return std::pow(envelope.tail_power_sum(n, t, domain), 1.0 / t); };

    CompactnessWitness out;
    // Doubling search, then bisection for the smallest admissible n.
    Index below = -1; // largest n known to miss epsilon
    Index n = 0;
    double err = error_at(0);
    while (err > epsilon) {
        out.trace.push_back({n, err});
        below = n;
        n = n == 0 ? 1 : 2 * n;
        if (n > kMaxIndex / 2)
            throw Error(ErrorCode::ToleranceUnreachable, "envelope tail decays too slowly");
        err = error_at(n);
    }
    Index hi = n;
    while (hi - below > 1) {
        const Index mid = below + (hi - below) / 2;
        if (error_at(mid) <= epsilon)
            hi = mid;
        else
            below = mid;
    }
    out.n_eps = hi;
    out.certified_error = error_at(hi);
    out.trace.push_back({out.n_eps, out.certified_error});

    check_envelope(entries, envelope, src, tgt, std::min(std::max<Index>(out.n_eps, 8), sample_radius));
    return out;
}

} // namespace sobseq
