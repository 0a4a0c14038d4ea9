#include "sobseq/spaces.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

#include "sobseq/error.hpp"
#include "sobseq/summation.hpp"

namespace sobseq {

SpaceParams::SpaceParams(double k, double s, WeightFamily w)
    : k_(k), s_(s), w_(std::move(w))
{
    if (!std::isfinite(k))
        throw Error(ErrorCode::InvalidArgument, "order k must be finite");
    if (!std::isfinite(s) || s < 1.0)
        throw Error(ErrorCode::InvalidExponents, "summability degree s must be finite and >= 1");
}

SpaceParams unweighted(double s, Domain domain)
{
    return SpaceParams(0.0, s, WeightFamily::constant(1.0, domain));
}

SeqVector::SeqVector(Entries entries)
{
    for (auto it = entries.begin(); it != entries.end();) {
        if (it->second == std::complex<double>{})
            it = entries.erase(it);
        else
            ++it;
    }
    entries_ = std::move(entries);
}

SeqVector::SeqVector(std::initializer_list<std::pair<const Index, std::complex<double>>> entries)
    : SeqVector(Entries(entries))
{}

std::complex<double> SeqVector::at(Index m) const
{
    const auto it = entries_.find(m);
    return it == entries_.end() ? std::complex<double>{} : it->second;
}

Index SeqVector::max_abs_index() const
{
    if (entries_.empty())
        return 0;
    const Index m = entries_.rbegin()->first;
    return m < 0 ? -m : m;
}

SeqVector SeqVector::operator+(const SeqVector& other) const
{
    Entries out = entries_;
    for (const auto& [m, v] : other.entries_)
        out[m] += v;
    return SeqVector(std::move(out));
}

SeqVector SeqVector::operator-(const SeqVector& other) const
{
    Entries out = entries_;
    for (const auto& [m, v] : other.entries_)
        out[m] -= v;
    return SeqVector(std::move(out));
}

SeqVector SeqVector::scaled(std::complex<double> alpha) const
{
    Entries out;
    for (const auto& [m, v] : entries_)
        out.emplace(m, alpha * v);
    return SeqVector(std::move(out));
}

double log1p_pow(double x, double s)
{
    if (x == 0.0)
        return 0.0;
    const double log_xs = s * std::log(x);
    if (log_xs > 36.0)
        return log_xs + std::log1p(std::exp(-log_xs));
    return std::log1p(std::pow(x, s));
}

double log_basis_norm(const SpaceParams& sp, Index m)
{
    const double am = std::abs(static_cast<double>(m));
    return (log_weight_at(sp.weight(), m) + sp.k() * log1p_pow(am, sp.s())) / sp.s();
}

double basis_norm(const SpaceParams& sp, Index m)
{
    return std::exp(log_basis_norm(sp, m));
}

namespace {

bool usable_term(double term) { return std::isfinite(term) && term >= DBL_MIN; }

// Plain products. Returns NaN when a term leaves the normal range.
double norm_direct(const SpaceParams& sp, const SeqVector& p)
{
    NeumaierSum acc;
    for (const auto& [m, v] : p.entries()) {
        const double am = std::abs(static_cast<double>(m));
        const double term = weight_at(sp.weight(), m) *
                            std::pow(1.0 + std::pow(am, sp.s()), sp.k()) *
                            std::pow(std::abs(v), sp.s());
        if (!usable_term(term))
            return NAN;
        acc.add(term);
    }
    const double total = acc.value();
    if (!std::isfinite(total))
        return NAN;
    return std::pow(total, 1.0 / sp.s());
}

// Each term as exp(L_m - L_max); the common factor is restored in log space.
double norm_log_domain(const SpaceParams& sp, const SeqVector& p)
{
    std::vector<double> logs;
    logs.reserve(p.size());
    for (const auto& [m, v] : p.entries()) {
        const double am = std::abs(static_cast<double>(m));
        logs.push_back(log_weight_at(sp.weight(), m) + sp.k() * log1p_pow(am, sp.s()) +
                       sp.s() * std::log(std::abs(v)));
    }
    const double top = *std::max_element(logs.begin(), logs.end());
    NeumaierSum acc;
    for (double l : logs)
        acc.add(std::exp(l - top));
    return std::exp((top + std::log(acc.value())) / sp.s());
}

} // namespace

double norm(const SpaceParams& sp, const SeqVector& p)
{
    if (p.empty())
        return 0.0;
    for (const auto& entry : p.entries())
        require_in_domain(sp.domain(), entry.first);
    const double direct = norm_direct(sp, p);
    if (!std::isnan(direct))
        return direct;
    return norm_log_domain(sp, p);
}

std::complex<double> inner_product(const SpaceParams& sp, const SeqVector& p, const SeqVector& q)
{
    if (sp.s() != 2.0)
        throw Error(ErrorCode::NotAHilbertSpace, "inner product needs s = 2");
    for (const auto& entry : q.entries())
        require_in_domain(sp.domain(), entry.first);
    ComplexNeumaierSum acc;
    for (const auto& [m, v] : p.entries()) {
        require_in_domain(sp.domain(), m);
        const std::complex<double> u = q.at(m);
        if (u == std::complex<double>{})
            continue;
        const double dm = static_cast<double>(m);
        const double scale = weight_at(sp.weight(), m) * std::pow(1.0 + dm * dm, sp.k());
        acc.add(scale * v * std::conj(u));
    }
    return acc.value();
}

SeqVector basis_vector(Index m)
{
    return SeqVector{{m, 1.0}};
}

SeqVector truncate(const SeqVector& p, Index cutoff)
{
    if (cutoff < 0)
        throw Error(ErrorCode::InvalidArgument, "truncation cutoff must be nonnegative");
    SeqVector::Entries kept;
    for (const auto& [m, v] : p.entries()) {
        const Index am = m < 0 ? -m : m;
        if (am >= cutoff)
            break; // entries are ordered by |m|
        kept.emplace(m, v);
    }
    return SeqVector(std::move(kept));
}

double expansion_remainder(const SpaceParams& sp, const SeqVector& p, Index n)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidArgument, "expansion order must be nonnegative");
    SeqVector::Entries rest;
    for (const auto& [m, v] : p.entries()) {
        const Index am = m < 0 ? -m : m;
        if (am > n)
            rest.emplace(m, v);
    }
    return norm(sp, SeqVector(std::move(rest)));
}

} // namespace sobseq
