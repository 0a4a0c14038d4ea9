#pragma once

#include <cmath>
#include <complex>

namespace sobseq {

/// Kahan-Babuska-Neumaier accumulator.
///
/// The running compensation collects the low-order bits lost by each
/// addition, so the result is accurate to a few ulps independently of the
/// number of terms (for same-sign terms). Must not be compiled with
/// -ffast-math or FMA contraction.
class NeumaierSum {
public:
    NeumaierSum() = default;
    NeumaierSum(double sum, double compensation) : sum_(sum), comp_(compensation) {}

    void add(double x)
    {
        const double t = sum_ + x;
        if (!std::isfinite(t)) {
            sum_ = t; // overflow saturates instead of turning into inf - inf
            return;
        }
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    NeumaierSum& operator+=(double x)
    {
        add(x);
        return *this;
    }

    void merge(const NeumaierSum& other)
    {
        add(other.sum_);
        comp_ += other.comp_;
    }

    double value() const { return sum_ + comp_; }
    double raw_sum() const { return sum_; }
    double compensation() const { return comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexNeumaierSum {
public:
    void add(std::complex<double> z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    NeumaierSum re_;
    NeumaierSum im_;
};

} // namespace sobseq
