// AVX2 + FMA variants. This translation unit is compiled with -mavx2 -mfma
// and must only be entered after the runtime CPU check in dispatch.cpp.

#include <immintrin.h>

#include <array>
#include <cfloat>
#include <cmath>

#include "kernels_internal.hpp"

namespace sobseq::kernels::detail {
namespace {

using vd = __m256d;

inline vd splat(double x) { return _mm256_set1_pd(x); }

inline vd vabs(vd x) { return _mm256_andnot_pd(splat(-0.0), x); }

// Integral-valued double in [-2^51, 2^51] to int64 lanes, via the 2^52 trick.
inline __m256i to_biased_exponent(vd n)
{
    const vd magic = splat(4503599627370496.0 + 1023.0); // 2^52 + bias
    return _mm256_slli_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), 52);
}

inline vd pow2(vd n) { return _mm256_castsi256_pd(to_biased_exponent(n)); }

constexpr double kLn2Hi = 6.93147180369123816490e-01;
constexpr double kLn2Lo = 1.90821492927058770002e-10;

// exp(x), ~1 ulp on the normal range, flushes to 0 below about -745.
inline vd exp_pd(vd x)
{
    x = _mm256_max_pd(_mm256_min_pd(x, splat(709.9)), splat(-746.0));
    const vd n = _mm256_round_pd(_mm256_mul_pd(x, splat(1.4426950408889634074)),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    vd r = _mm256_fnmadd_pd(n, splat(kLn2Hi), x);
    r = _mm256_fnmadd_pd(n, splat(kLn2Lo), r);

    // Taylor polynomial to degree 13; |r| <= ln2/2 makes the remainder < 2^-56.
    static constexpr std::array<double, 14> c = {
        1.0,
        1.0,
        1.0 / 2,
        1.0 / 6,
        1.0 / 24,
        1.0 / 120,
        1.0 / 720,
        1.0 / 5040,
        1.0 / 40320,
        1.0 / 362880,
        1.0 / 3628800,
        1.0 / 39916800,
        1.0 / 479001600,
        1.0 / 6227020800,
    };
    vd p = splat(c[13]);
    for (int j = 12; j >= 0; --j)
        p = _mm256_fmadd_pd(p, r, splat(c[j]));

    // Split the scaling so 2^n stays representable through the subnormal range.
    const vd n1 = _mm256_floor_pd(_mm256_mul_pd(n, splat(0.5)));
    const vd n2 = _mm256_sub_pd(n, n1);
    return _mm256_mul_pd(_mm256_mul_pd(p, pow2(n1)), pow2(n2));
}

// log(x) for finite x > 0 (subnormals included).
inline vd log_pd(vd x)
{
    const vd tiny = _mm256_cmp_pd(x, splat(DBL_MIN), _CMP_LT_OQ);
    x = _mm256_blendv_pd(x, _mm256_mul_pd(x, splat(18014398509481984.0)), tiny); // 2^54
    vd e_adj = _mm256_and_pd(tiny, splat(-54.0));

    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i biased = _mm256_srli_epi64(bits, 52);
    const vd magic = splat(4503599627370496.0);
    vd e = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(biased, _mm256_castpd_si256(magic))), magic);
    e = _mm256_add_pd(_mm256_sub_pd(e, splat(1023.0)), e_adj);

    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    vd f = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

    const vd big = _mm256_cmp_pd(f, splat(1.41421356237309504880), _CMP_GT_OQ);
    f = _mm256_blendv_pd(f, _mm256_mul_pd(f, splat(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

    // log f = 2 atanh(z), |z| <= 0.1716.
    const vd z = _mm256_div_pd(_mm256_sub_pd(f, splat(1.0)), _mm256_add_pd(f, splat(1.0)));
    const vd z2 = _mm256_mul_pd(z, z);
    vd p = splat(1.0 / 25);
    for (int j = 11; j >= 0; --j)
        p = _mm256_fmadd_pd(p, z2, splat(1.0 / (2 * j + 1)));
    const vd logf = _mm256_mul_pd(_mm256_add_pd(z, z), p);

    return _mm256_fmadd_pd(e, splat(kLn2Hi), _mm256_fmadd_pd(e, splat(kLn2Lo), logf));
}

struct VecNeumaier {
    vd sum = _mm256_setzero_pd();
    vd comp = _mm256_setzero_pd();

    void add(vd x)
    {
        const vd t = _mm256_add_pd(sum, x);
        const vd keep_sum = _mm256_cmp_pd(vabs(sum), vabs(x), _CMP_GE_OQ);
        const vd c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
        const vd c_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
        const vd finite = _mm256_cmp_pd(vabs(t), splat(HUGE_VAL), _CMP_LT_OQ);
        comp = _mm256_add_pd(comp, _mm256_and_pd(finite, _mm256_blendv_pd(c_x, c_sum, keep_sum)));
        sum = t;
    }

    NeumaierSum reduce() const
    {
        alignas(32) std::array<double, 4> s{};
        alignas(32) std::array<double, 4> c{};
        _mm256_store_pd(s.data(), sum);
        _mm256_store_pd(c.data(), comp);
        NeumaierSum acc;
        for (int i = 0; i < 4; ++i)
            acc.merge(NeumaierSum(s[i], c[i]));
        return acc;
    }
};

enum class PowKind { One, Two, Three, Four, General };

PowKind classify_power(double e)
{
    if (e == 1.0) return PowKind::One;
    if (e == 2.0) return PowKind::Two;
    if (e == 3.0) return PowKind::Three;
    if (e == 4.0) return PowKind::Four;
    return PowKind::General;
}

// x^e for x >= 0 with 0^e = 0.
template <PowKind K>
inline vd pow_nonneg(vd x, double e)
{
    if constexpr (K == PowKind::One) {
        return x;
    } else if constexpr (K == PowKind::Two) {
        return _mm256_mul_pd(x, x);
    } else if constexpr (K == PowKind::Three) {
        return _mm256_mul_pd(_mm256_mul_pd(x, x), x);
    } else if constexpr (K == PowKind::Four) {
        const vd x2 = _mm256_mul_pd(x, x);
        return _mm256_mul_pd(x2, x2);
    } else {
        const vd is_zero = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ);
        const vd safe = _mm256_blendv_pd(x, splat(1.0), is_zero);
        const vd r = exp_pd(_mm256_mul_pd(splat(e), log_pd(safe)));
        return _mm256_andnot_pd(is_zero, r);
    }
}

enum class DecayKind { Reciprocal, RsqrtLike, ReciprocalSquare, General };

DecayKind classify_decay(double a)
{
    if (a == 1.0) return DecayKind::Reciprocal;
    if (a == 0.5) return DecayKind::RsqrtLike;
    if (a == 2.0) return DecayKind::ReciprocalSquare;
    return DecayKind::General;
}

// base^(-a) for base >= 1.
template <DecayKind D>
inline vd decay(vd base, double a)
{
    const vd one = splat(1.0);
    if constexpr (D == DecayKind::Reciprocal) {
        return _mm256_div_pd(one, base);
    } else if constexpr (D == DecayKind::RsqrtLike) {
        return _mm256_div_pd(one, _mm256_sqrt_pd(base));
    } else if constexpr (D == DecayKind::ReciprocalSquare) {
        return _mm256_div_pd(one, _mm256_mul_pd(base, base));
    } else {
        return exp_pd(_mm256_mul_pd(splat(-a), log_pd(base)));
    }
}

template <PowKind K, DecayKind D>
NeumaierSum decay_series_impl(std::int64_t first, std::int64_t last, double s, double a)
{
    VecNeumaier acc;
    const double f = static_cast<double>(first);
    vd m = _mm256_setr_pd(f, f + 1.0, f + 2.0, f + 3.0);
    const vd end = splat(static_cast<double>(last));
    const vd step = splat(4.0);
    const vd one = splat(1.0);
    for (std::int64_t i = first; i < last; i += 4) {
        const vd valid = _mm256_cmp_pd(m, end, _CMP_LT_OQ);
        const vd base = _mm256_add_pd(one, pow_nonneg<K>(m, s));
        acc.add(_mm256_and_pd(valid, decay<D>(base, a)));
        m = _mm256_add_pd(m, step);
    }
    return acc.reduce();
}

template <PowKind K>
NeumaierSum decay_series_by_decay(std::int64_t first, std::int64_t last, double s, double a)
{
    switch (classify_decay(a)) {
    case DecayKind::Reciprocal: return decay_series_impl<K, DecayKind::Reciprocal>(first, last, s, a);
    case DecayKind::RsqrtLike: return decay_series_impl<K, DecayKind::RsqrtLike>(first, last, s, a);
    case DecayKind::ReciprocalSquare:
        return decay_series_impl<K, DecayKind::ReciprocalSquare>(first, last, s, a);
    case DecayKind::General: break;
    }
    return decay_series_impl<K, DecayKind::General>(first, last, s, a);
}

NeumaierSum decay_series(std::int64_t first, std::int64_t last, double s, double a)
{
    if (first >= last)
        return {};
    switch (classify_power(s)) {
    case PowKind::One: return decay_series_by_decay<PowKind::One>(first, last, s, a);
    case PowKind::Two: return decay_series_by_decay<PowKind::Two>(first, last, s, a);
    case PowKind::Three: return decay_series_by_decay<PowKind::Three>(first, last, s, a);
    case PowKind::Four: return decay_series_by_decay<PowKind::Four>(first, last, s, a);
    case PowKind::General: break;
    }
    return decay_series_by_decay<PowKind::General>(first, last, s, a);
}

template <PowKind K>
NeumaierSum abs_pow_sum_impl(std::span<const double> x, double p)
{
    VecNeumaier acc;
    const vd inf = splat(HUGE_VAL);
    std::size_t i = 0;
    for (; i + 4 <= x.size(); i += 4) {
        const vd v = vabs(_mm256_loadu_pd(x.data() + i));
        const vd is_inf = _mm256_cmp_pd(v, inf, _CMP_EQ_OQ);
        acc.add(_mm256_blendv_pd(pow_nonneg<K>(v, p), inf, is_inf));
    }
    if (i < x.size()) {
        alignas(32) std::array<double, 4> rest{};
        for (std::size_t j = 0; i + j < x.size(); ++j)
            rest[j] = x[i + j];
        const vd v = vabs(_mm256_load_pd(rest.data()));
        const vd is_inf = _mm256_cmp_pd(v, inf, _CMP_EQ_OQ);
        acc.add(_mm256_blendv_pd(pow_nonneg<K>(v, p), inf, is_inf));
    }
    return acc.reduce();
}

NeumaierSum abs_pow_sum(std::span<const double> x, double p)
{
    switch (classify_power(p)) {
    case PowKind::One: return abs_pow_sum_impl<PowKind::One>(x, p);
    case PowKind::Two: return abs_pow_sum_impl<PowKind::Two>(x, p);
    case PowKind::Three: return abs_pow_sum_impl<PowKind::Three>(x, p);
    case PowKind::Four: return abs_pow_sum_impl<PowKind::Four>(x, p);
    case PowKind::General: break;
    }
    return abs_pow_sum_impl<PowKind::General>(x, p);
}

void scale_by_exp(std::span<std::complex<double>> values,
                  std::span<const double> log_factors,
                  double log_offset)
{
    // std::complex<double> is layout-compatible with double[2].
    double* data = reinterpret_cast<double*>(values.data());
    const vd offset = splat(log_offset);
    std::size_t i = 0;
    for (; i + 4 <= values.size(); i += 4) {
        const vd f = exp_pd(_mm256_add_pd(offset, _mm256_loadu_pd(log_factors.data() + i)));
        const vd lo = _mm256_permute4x64_pd(f, 0x50); // f0 f0 f1 f1
        const vd hi = _mm256_permute4x64_pd(f, 0xFA); // f2 f2 f3 f3
        double* p = data + 2 * i;
        _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), lo));
        _mm256_storeu_pd(p + 4, _mm256_mul_pd(_mm256_loadu_pd(p + 4), hi));
    }
    if (i < values.size()) {
        alignas(32) std::array<double, 4> lf{};
        alignas(32) std::array<double, 4> f{};
        const std::size_t rest = values.size() - i;
        for (std::size_t j = 0; j < rest; ++j)
            lf[j] = log_factors[i + j];
        _mm256_store_pd(f.data(), exp_pd(_mm256_add_pd(offset, _mm256_load_pd(lf.data()))));
        for (std::size_t j = 0; j < rest; ++j)
            values[i + j] *= f[j];
    }
}

constexpr KernelTable kAvx2{Isa::Avx2, &decay_series, &abs_pow_sum, &scale_by_exp};

} // namespace

const KernelTable& avx2_table() { return kAvx2; }

} // namespace sobseq::kernels::detail
