#pragma once

#include <complex>
#include <initializer_list>
#include <map>
#include <utility>

#include "sobseq/types.hpp"
#include "sobseq/weights.hpp"

namespace sobseq {

/// The triple (k, s, w) naming the space h^{k,s}_w. The index domain is the
/// weight family's domain.
class SpaceParams {
public:
    SpaceParams(double k, double s, WeightFamily w);

    double k() const { return k_; }
    double s() const { return s_; }
    const WeightFamily& weight() const { return w_; }
    Domain domain() const { return w_.domain(); }

    /// Same s and w, different order k.
    SpaceParams with_order(double k) const { return SpaceParams(k, s_, w_); }

    bool operator==(const SpaceParams&) const = default;

private:
    double k_;
    double s_;
    WeightFamily w_;
};

/// Unweighted l^s over the given domain.
SpaceParams unweighted(double s, Domain domain);

/// Orders indices by |m|, negative before positive. Norm sums follow this order.
struct SummationOrder {
    bool operator()(Index a, Index b) const
    {
        const Index ua = a < 0 ? -a : a;
        const Index ub = b < 0 ? -b : b;
        return ua != ub ? ua < ub : a < b;
    }
};

/// Finite-support complex sequence. Exact zeros are never stored.
class SeqVector {
public:
    using Entries = std::map<Index, std::complex<double>, SummationOrder>;

    SeqVector() = default;
    explicit SeqVector(Entries entries);
    SeqVector(std::initializer_list<std::pair<const Index, std::complex<double>>> entries);

    std::complex<double> at(Index m) const;
    const Entries& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    /// max |m| over the support; 0 for the zero vector.
    Index max_abs_index() const;

    SeqVector operator+(const SeqVector& other) const;
    SeqVector operator-(const SeqVector& other) const;
    SeqVector scaled(std::complex<double> alpha) const;

    bool operator==(const SeqVector&) const = default;

private:
    Entries entries_;
};

/// ln(1 + x^s) for x >= 0 without overflow.
double log1p_pow(double x, double s);

/// ln of w_m^(1/s) (1 + |m|^s)^(k/s), the norm of e_m.
double log_basis_norm(const SpaceParams& sp, Index m);
double basis_norm(const SpaceParams& sp, Index m);

double norm(const SpaceParams& sp, const SeqVector& p);

/// Sesquilinear form of the Hilbert case s = 2, conjugate-linear in q.
std::complex<double> inner_product(const SpaceParams& sp, const SeqVector& p, const SeqVector& q);

SeqVector basis_vector(Index m);

/// Entries with |m| < cutoff.
SeqVector truncate(const SeqVector& p, Index cutoff);

/// Norm of p minus its partial expansion over |m| <= n.
double expansion_remainder(const SpaceParams& sp, const SeqVector& p, Index n);

} // namespace sobseq
