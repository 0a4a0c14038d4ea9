#include "sobseq/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sobseq/error.hpp"

namespace sobseq {

std::string_view to_string(Domain d)
{
    return d == Domain::FullLine ? "full" : "half";
}

Domain parse_domain(std::string_view text)
{
    if (text == "full")
        return Domain::FullLine;
    if (text == "half")
        return Domain::HalfLine;
    throw Error(ErrorCode::InvalidArgument, "unknown domain '" + std::string(text) + "'");
}

bool in_domain(Domain d, Index m)
{
    if (m > kMaxIndex || m < -kMaxIndex)
        return false;
    return d == Domain::FullLine || m >= 0;
}

void require_in_domain(Domain d, Index m)
{
    if (!in_domain(d, m))
        throw Error(ErrorCode::IndexOutsideDomain,
                    "index " + std::to_string(m) + " is outside the " + std::string(to_string(d)) +
                        " line");
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

bool nearly_equal(double a, double b)
{
    return std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(a), std::abs(b));
}

} // namespace

WeightFamily WeightFamily::constant(double c, Domain domain)
{
    if (!positive_finite(c))
        throw Error(ErrorCode::InvalidArgument, "constant weight must be positive and finite");
    return WeightFamily(Kind::Constant, domain, c, nullptr);
}

WeightFamily WeightFamily::polynomial(double alpha, Domain domain)
{
    if (!std::isfinite(alpha))
        throw Error(ErrorCode::InvalidArgument, "polynomial exponent must be finite");
    return WeightFamily(Kind::Polynomial, domain, alpha, nullptr);
}

WeightFamily WeightFamily::gibbs(double beta, Domain domain)
{
    if (domain != Domain::HalfLine)
        throw Error(ErrorCode::DomainMismatch, "Gibbs weights are only defined on the half line");
    if (!positive_finite(beta))
        throw Error(ErrorCode::InvalidArgument, "Gibbs beta must be positive and finite");
    return WeightFamily(Kind::Gibbs, domain, beta, nullptr);
}

WeightFamily WeightFamily::table(std::map<Index, double> values, double lower_bound, Domain domain)
{
    if (!positive_finite(lower_bound))
        throw Error(ErrorCode::InvalidArgument, "table lower bound must be positive and finite");
    for (const auto& [m, v] : values) {
        require_in_domain(domain, m);
        if (!positive_finite(v))
            throw Error(ErrorCode::InvalidArgument,
                        "table weight at " + std::to_string(m) + " is not positive");
        if (v < lower_bound)
            throw Error(ErrorCode::InvalidArgument,
                        "table weight at " + std::to_string(m) + " is below the declared lower bound");
    }
    return WeightFamily(Kind::Table, domain, lower_bound,
                        std::make_shared<const std::map<Index, double>>(std::move(values)));
}

const std::map<Index, double>& WeightFamily::table_values() const
{
    static const std::map<Index, double> empty;
    return table_ ? *table_ : empty;
}

bool WeightFamily::operator==(const WeightFamily& other) const
{
    if (kind_ != other.kind_ || domain_ != other.domain_ || parameter_ != other.parameter_)
        return false;
    return kind_ != Kind::Table || table_values() == other.table_values();
}

namespace {

double table_lookup(const WeightFamily& w, Index m)
{
    const auto& values = w.table_values();
    const auto it = values.find(m);
    if (it == values.end())
        throw Error(ErrorCode::MissingWeight, "no table weight for index " + std::to_string(m));
    return it->second;
}

} // namespace

double weight_at(const WeightFamily& w, Index m)
{
    require_in_domain(w.domain(), m);
    switch (w.kind()) {
    case WeightFamily::Kind::Constant:
        return w.parameter();
    case WeightFamily::Kind::Polynomial:
        return std::pow(1.0 + std::abs(static_cast<double>(m)), w.parameter());
    case WeightFamily::Kind::Gibbs:
        return std::exp(log_weight_at(w, m));
    case WeightFamily::Kind::Table:
        return table_lookup(w, m);
    }
    return 0.0;
}

double log_weight_at(const WeightFamily& w, Index m)
{
    require_in_domain(w.domain(), m);
    switch (w.kind()) {
    case WeightFamily::Kind::Constant:
        return std::log(w.parameter());
    case WeightFamily::Kind::Polynomial:
        return w.parameter() * std::log1p(std::abs(static_cast<double>(m)));
    case WeightFamily::Kind::Gibbs:
        return w.parameter() * static_cast<double>(m);
    case WeightFamily::Kind::Table:
        return std::log(table_lookup(w, m));
    }
    return 0.0;
}

double weight_infimum(const WeightFamily& w)
{
    switch (w.kind()) {
    case WeightFamily::Kind::Constant:
        return w.parameter();
    case WeightFamily::Kind::Polynomial:
        if (w.parameter() < 0.0)
            throw Error(ErrorCode::InfimumNotPositive,
                        "(1+|m|)^alpha with alpha < 0 has infimum 0");
        return 1.0;
    case WeightFamily::Kind::Gibbs:
        return 1.0;
    case WeightFamily::Kind::Table:
        return w.parameter();
    }
    return 0.0;
}

RatioBounds ratio_condition_check(const WeightFamily& w, const WeightFamily& w_hat,
                                  double s, double t, IndexRange window)
{
    if (w.domain() != w_hat.domain())
        throw Error(ErrorCode::DomainMismatch, "weight families live on different domains");
    if (!(t >= 1.0) || !(s > t) || !std::isfinite(s))
        throw Error(ErrorCode::InvalidExponents, "ratio condition needs s > t >= 1");
    if (window.empty())
        throw Error(ErrorCode::InvalidArgument, "empty index window");
    require_in_domain(w.domain(), window.lo);
    require_in_domain(w.domain(), window.hi);

    const double q = t / s;
    using K = WeightFamily::Kind;
    if (w.kind() == K::Constant && w_hat.kind() == K::Constant) {
        const double r = std::pow(w.parameter(), q) / w_hat.parameter();
        return {r, r, true};
    }
    if (w.kind() == w_hat.kind() && (w.kind() == K::Polynomial || w.kind() == K::Gibbs) &&
        nearly_equal(w.parameter() * q, w_hat.parameter())) {
        return {1.0, 1.0, true};
    }

    double lo = HUGE_VAL;
    double hi = 0.0;
    for (Index m = window.lo; m <= window.hi; ++m) {
        const double r = std::exp(q * log_weight_at(w, m) - log_weight_at(w_hat, m));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return {lo, hi, false};
}

} // namespace sobseq
