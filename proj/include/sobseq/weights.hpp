#pragma once

#include <map>
#include <memory>

#include "sobseq/types.hpp"

namespace sobseq {

/// A strictly positive weight sequence (w_m) over the integers or the
/// nonnegative integers. Values are immutable after construction.
class WeightFamily {
public:
    enum class Kind { Constant, Polynomial, Gibbs, Table };

    /// w_m = c, c > 0.
    static WeightFamily constant(double c, Domain domain = Domain::FullLine);
    /// w_m = (1 + |m|)^alpha.
    static WeightFamily polynomial(double alpha, Domain domain = Domain::FullLine);
    /// w_m = exp(beta m), beta > 0. Only defined on the half line.
    static WeightFamily gibbs(double beta, Domain domain = Domain::HalfLine);
    /// Explicit values plus a declared lower bound that must not exceed any of them.
    static WeightFamily table(std::map<Index, double> values, double lower_bound, Domain domain);

    Kind kind() const { return kind_; }
    Domain domain() const { return domain_; }

    /// c, alpha or beta; the lower bound for tables.
    double parameter() const { return parameter_; }

    const std::map<Index, double>& table_values() const;

    bool operator==(const WeightFamily& other) const;

private:
    WeightFamily(Kind kind, Domain domain, double parameter,
                 std::shared_ptr<const std::map<Index, double>> table)
        : kind_(kind), domain_(domain), parameter_(parameter), table_(std::move(table))
    {}

    Kind kind_;
    Domain domain_;
    double parameter_;
    std::shared_ptr<const std::map<Index, double>> table_;
};

double weight_at(const WeightFamily& w, Index m);
double log_weight_at(const WeightFamily& w, Index m);

/// Exact infimum of the family over its domain. Throws InfimumNotPositive
/// when it is zero (decaying polynomial weights).
double weight_infimum(const WeightFamily& w);

/// Bounds c1 <= w_m^(t/s) / w_hat_m <= c2.
struct RatioBounds {
    double c1 = 0.0;
    double c2 = 0.0;
    /// True when the bounds hold for every index of the domain; false when
    /// they are the extremes over the inspected window only.
    bool analytic = false;
};

RatioBounds ratio_condition_check(const WeightFamily& w, const WeightFamily& w_hat,
                                  double s, double t, IndexRange window);

} // namespace sobseq
