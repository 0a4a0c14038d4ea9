#include <cmath>

#include "doctest.h"
#include "sobseq/error.hpp"
#include "sobseq/operators.hpp"
#include "sobseq/sampling.hpp"

using namespace sobseq;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

bool close(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

bool close(std::complex<double> a, std::complex<double> b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Direct unweighted l^s norm.
double flat_norm(const SeqVector& q, double s)
{
    long double total = 0.0L;
    for (const auto& [m, v] : q.entries())
        total += std::pow(static_cast<long double>(std::abs(v)), static_cast<long double>(s));
    return static_cast<double>(std::pow(total, 1.0L / s));
}

std::vector<SpaceParams> grid()
{
    std::vector<SpaceParams> out;
    for (double k : {-1.0, 0.0, 1.0, 2.5})
        for (double s : {1.0, 2.0, 3.0}) {
            out.emplace_back(k, s, WeightFamily::constant(1.0));
            out.emplace_back(k, s, WeightFamily::constant(4.0));
            out.emplace_back(k, s, WeightFamily::polynomial(2.0));
            out.emplace_back(k, s, WeightFamily::gibbs(1.0));
        }
    return out;
}

FiniteSectionOperator random_operator(Rng& rng, IndexRange window, const SpaceParams& src, const SpaceParams& tgt)
{
    auto op = FiniteSectionOperator::zero(window, src, tgt);
    for (Index r = window.lo; r <= window.hi; ++r)
        for (Index c = window.lo; c <= window.hi; ++c)
            op.at(r, c) = random_complex(rng);
    return op;
}

} // namespace

TEST_CASE("isometry")
{
    const SpaceParams sp(1.0, 2.0, WeightFamily::constant(1.0));
    const SeqVector q = isometry_apply(sp, SeqVector{{1, 1.0}, {-1, 1.0}});
    CHECK(q.at(1).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(q.at(-1).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    const SpaceParams flat(0.0, 2.5, WeightFamily::constant(1.0));
    const SeqVector p{{-3, {1.0, 2.0}}, {8, {0.5, 0.0}}};
    CHECK(isometry_apply(flat, p) == p);
    CHECK(isometry_invert(flat, p) == p);

    Rng rng(41, 0);
    for (const auto& g : grid()) {
        for (Index m = g.domain() == Domain::HalfLine ? 0 : -20; m <= 20; ++m) {
            const double scale = basis_norm(g, m);
            CHECK(close(isometry_apply(g, basis_vector(m)).at(m).real(), scale, 1e-12));
            CHECK(close(isometry_invert(g, basis_vector(m)).at(m).real(), 1.0 / scale, 1e-12));
        }
        for (int i = 0; i < 10; ++i) {
            const SeqVector x = random_vector(rng, g.domain(), 50);
            CHECK(close(flat_norm(isometry_apply(g, x), g.s()), norm(g, x), 1e-12));
            const SeqVector back = isometry_invert(g, isometry_apply(g, x));
            REQUIRE(back.size() == x.size());
            for (const auto& [m, v] : x.entries())
                CHECK(close(back.at(m), v, 1e-12));
        }
    }
    CHECK(code_of([] { isometry_apply(SpaceParams(0.0, 2.0, WeightFamily::gibbs(1.0)), basis_vector(-2)); }) ==
          ErrorCode::IndexOutsideDomain);
}

TEST_CASE("Pitt conjugation")
{
    const auto w = WeightFamily::polynomial(1.0);
    const SpaceParams src(1.5, 2.0, w);
    const SpaceParams tgt(1.5, 1.0, w);
    const IndexRange window{-5, 5};

    SUBCASE("scalings cancel on the matching diagonal")
    {
        auto op = FiniteSectionOperator::zero(window, src, tgt);
        for (Index m = window.lo; m <= window.hi; ++m)
            op.at(m, m) = basis_norm(src, m) / basis_norm(tgt, m);
        const auto c = pitt_conjugate(op);
        for (Index r = window.lo; r <= window.hi; ++r)
            for (Index col = window.lo; col <= window.hi; ++col)
                CHECK(std::abs(c.at(r, col) - (r == col ? 1.0 : 0.0)) <= 1e-14);
        CHECK(c.src() == unweighted(2.0, Domain::FullLine));
        CHECK(c.tgt() == unweighted(1.0, Domain::FullLine));
    }
    SUBCASE("k = 0 with unit weights is a no-op")
    {
        Rng rng(43, 0);
        const auto flat_src = SpaceParams(0.0, 3.0, WeightFamily::constant(1.0));
        const auto flat_tgt = SpaceParams(0.0, 2.0, WeightFamily::constant(1.0));
        const auto op = random_operator(rng, window, flat_src, flat_tgt);
        const auto c = pitt_conjugate(op);
        for (std::size_t i = 0; i < op.entries().size(); ++i)
            CHECK(c.entries()[i] == op.entries()[i]);
    }
    SUBCASE("entry formula and round trip")
    {
        Rng rng(47, 0);
        for (auto [s, t] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {3.0, 1.5}}) {
            for (const auto& g : grid()) {
                const SpaceParams a(g.k(), s, g.weight());
                const SpaceParams b(g.k(), t, g.weight());
                const IndexRange win = g.domain() == Domain::HalfLine ? IndexRange{0, 9} : IndexRange{-4, 5};
                const auto op = random_operator(rng, win, a, b);
                const auto c = pitt_conjugate(op);
                for (Index r = win.lo; r <= win.hi; ++r)
                    for (Index col = win.lo; col <= win.hi; ++col)
                        CHECK(close(c.at(r, col), basis_norm(b, r) * op.at(r, col) / basis_norm(a, col), 1e-12));
                const auto back = pitt_deconjugate(c, a, b);
                for (std::size_t i = 0; i < op.entries().size(); ++i)
                    CHECK(close(back.entries()[i], op.entries()[i], 1e-12));
            }
        }
    }
    SUBCASE("parameter checks")
    {
        CHECK(code_of([&] { pitt_conjugate(FiniteSectionOperator::zero(window, src, SpaceParams(1.0, 1.0, w))); }) ==
              ErrorCode::ParameterMismatch);
        CHECK(code_of([&] { pitt_conjugate(FiniteSectionOperator::zero(window, tgt, src)); }) ==
              ErrorCode::ParameterMismatch);
        CHECK(code_of([&] {
                  pitt_conjugate(FiniteSectionOperator::zero(window, src, SpaceParams(1.5, 1.0, WeightFamily::constant(1.0))));
              }) == ErrorCode::ParameterMismatch);
        CHECK(code_of([&] { FiniteSectionOperator(window, src, tgt, {}); }) == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("embedding as a diagonal")
{
    const SpaceParams src(1.0, 2.0, WeightFamily::constant(1.0));
    const SpaceParams tgt(0.0, 2.0, WeightFamily::constant(1.0));
    const auto d = embedding_as_diagonal(src, tgt, {-10, 10});
    CHECK(d.at(0, 0).real() == 1.0);
    CHECK(d.at(3, 3).real() == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-15));
    CHECK(d.at(3, 3).real() == doctest::Approx(0.316228).epsilon(1e-6));
    CHECK(d.at(2, 3) == std::complex<double>{});

    const auto id = embedding_as_diagonal(src, src, {-4, 4});
    for (Index m = -4; m <= 4; ++m)
        CHECK(id.at(m, m).real() == 1.0);

    for (const auto& g : grid()) {
        const SpaceParams smooth(g.k() + 1.25, g.s(), g.weight());
        const IndexRange win = g.domain() == Domain::HalfLine ? IndexRange{0, 30} : IndexRange{-30, 30};
        const auto diag = embedding_as_diagonal(smooth, g, win);
        for (Index m = win.lo; m <= win.hi; ++m)
            CHECK(close(diag.at(m, m).real(), norm(g, basis_vector(m)) / norm(smooth, basis_vector(m)), 1e-12));
        // Symbol decays to zero away from the origin.
        CHECK(std::abs(diag.at(win.hi, win.hi)) < std::abs(diag.at(win.hi - 1, win.hi - 1)));
    }

    CHECK(code_of([&] { embedding_as_diagonal(tgt, src, {0, 3}); }) == ErrorCode::NotContinuous);
    CHECK(code_of([&] { embedding_as_diagonal(src, SpaceParams(0.0, 1.0, WeightFamily::constant(1.0)), {0, 3}); }) ==
          ErrorCode::ParameterMismatch);
}

TEST_CASE("norm bounds")
{
    const SpaceParams l2 = unweighted(2.0, Domain::FullLine);
    const SpaceParams l1 = unweighted(1.0, Domain::FullLine);

    auto single = FiniteSectionOperator::zero({-2, 2}, l2, l1);
    single.at(0, 0) = {3.0, 4.0};
    CHECK(operator_norm_upper(single) == 5.0);
    CHECK(operator_norm_lower(single, 10, 0) == 5.0);

    const Index n = 6;
    auto identity = FiniteSectionOperator::zero({-n, n}, l2, l1);
    for (Index m = -n; m <= n; ++m)
        identity.at(m, m) = 1.0;
    CHECK(operator_norm_upper(identity) == doctest::Approx(2.0 * n + 1).epsilon(1e-15));
    // ||I||_{l^2 -> l^1} on 13 coordinates is sqrt(13), attained at the flat vector.
    const double lower = operator_norm_lower(identity, 200, 0);
    CHECK(lower <= std::sqrt(13.0) * (1.0 + 1e-12));
    CHECK(lower >= 1.0);

    const auto zero = FiniteSectionOperator::zero({0, 5}, l2, l1);
    CHECK(operator_norm_upper(zero) == 0.0);
    CHECK(operator_norm_lower(zero, 5, 0) == 0.0);

    SUBCASE("diagonal operators")
    {
        const SpaceParams src(2.0, 2.0, WeightFamily::constant(1.0));
        const SpaceParams tgt(0.5, 2.0, WeightFamily::constant(1.0));
        // s = t: the norm is max |d_m|, attained at a basis vector.
        const auto d = embedding_as_diagonal(src, tgt, {-8, 8});
        CHECK(operator_norm_lower(d, 50, 1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(operator_norm_upper(d) >= 1.0);

        // t < s: basis vectors give max |d_m|, random probes may do better.
        auto dd = FiniteSectionOperator::zero({-8, 8}, l2, l1);
        double top = 0.0;
        for (Index m = -8; m <= 8; ++m) {
            dd.at(m, m) = std::pow(1.0 + std::abs(double(m)), -2.0);
            top = std::max(top, std::abs(dd.at(m, m)));
        }
        const double lo = operator_norm_lower(dd, 50, 1);
        CHECK(lo >= top);
        CHECK(lo <= operator_norm_upper(dd) * (1.0 + 1e-12));
    }

    SUBCASE("bracket on random operators")
    {
        Rng rng(53, 0);
        const std::pair<double, double> exps[] = {{2.0, 1.0}, {3.0, 2.0}, {1.0, 1.0}, {1.5, 3.0}};
        for (int i = 0; i < 100; ++i) {
            const auto [s, t] = exps[i % 4];
            const Index n = rng.integer(0, 6);
            const auto op = random_operator(rng, {-n, n}, unweighted(s, Domain::FullLine), unweighted(t, Domain::FullLine));
            CHECK(operator_norm_lower(op, 20, static_cast<std::uint64_t>(i)) <= operator_norm_upper(op) * (1.0 + 1e-12));
        }
    }

    CHECK(lp_norm(std::vector<std::complex<double>>{{3.0, 4.0}, {0.0, -12.0}}, HUGE_VAL) == 12.0);
    CHECK(lp_norm(std::vector<std::complex<double>>{{3.0, 0.0}, {4.0, 0.0}}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(lp_norm(std::vector<std::complex<double>>{{1e200, 0.0}, {1e200, 0.0}}, 2.0) ==
          doctest::Approx(std::sqrt(2.0) * 1e200).epsilon(1e-15));
}

TEST_CASE("decay envelopes")
{
    const auto p = DecayEnvelope::power(2.0, 3.0);
    CHECK(p.bound(0) == 3.0);
    CHECK(p.bound(-4) == doctest::Approx(3.0 / 25.0).epsilon(1e-15));
    // Tail bound dominates the brute-force tail.
    for (Index n : {0, 1, 5, 40}) {
        long double brute = 0.0L;
        for (Index m = n + 1; m < 2'000'000; ++m)
            brute += 2.0L * 9.0L / std::pow(1.0L + m, 4.0L);
        CHECK(static_cast<double>(brute) <= p.tail_power_sum(n, 2.0, Domain::FullLine));
    }
    const auto e = DecayEnvelope::exponential(0.5);
    for (Index n : {0, 3, 20}) {
        long double brute = 0.0L;
        for (Index m = n + 1; m < 2000; ++m)
            brute += std::exp(-0.5L * m);
        CHECK(e.tail_power_sum(n, 1.0, Domain::HalfLine) == doctest::Approx(static_cast<double>(brute)).epsilon(1e-13));
    }
    const auto t = DecayEnvelope::table({{-3, 0.5}, {1, 0.25}, {7, 0.125}});
    CHECK(t.bound(2) == 0.0);
    CHECK(t.tail_power_sum(1, 1.0, Domain::FullLine) == 0.625);
    CHECK(t.tail_power_sum(1, 1.0, Domain::HalfLine) == 0.125);
    CHECK(code_of([] { DecayEnvelope::power(1.0).tail_power_sum(0, 1.0, Domain::FullLine); }) ==
          ErrorCode::EnvelopeNotSummable);
    CHECK(code_of([] { DecayEnvelope::power(0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("compactness witness")
{
    const SpaceParams src = unweighted(2.0, Domain::FullLine);
    const SpaceParams tgt = unweighted(1.0, Domain::FullLine);
    auto diagonal = [](double gamma) {
        return EntryFunction([gamma](Index m, Index n) -> std::complex<double> {
            return m == n ? std::pow(1.0 + std::abs(double(m)), -gamma) : 0.0;
        });
    };

    SUBCASE("harmonic decay is not summable")
    {
        CHECK(code_of([&] { compactness_witness(diagonal(1.0), DecayEnvelope::power(1.0), src, tgt, 0.01); }) ==
              ErrorCode::EnvelopeNotSummable);
    }
    SUBCASE("inverse-square decay")
    {
        const auto w = compactness_witness(diagonal(2.0), DecayEnvelope::power(2.0), src, tgt, 0.01);
        CHECK(w.n_eps == 199);
        CHECK(w.certified_error <= 0.01);
        // True tails sum_{|m| > n} (1 + |m|)^-2 by brute force, for n < 400.
        std::vector<double> true_tail(400);
        {
            const Index big = 4'000'000;
            long double sum = 2.0L / (1.5L + big);
            for (Index m = big; m > 0; --m) {
                if (m < 400)
                    true_tail[static_cast<std::size_t>(m)] = static_cast<double>(sum);
                sum += 2.0L / ((1.0L + m) * (1.0L + m));
            }
            true_tail[0] = static_cast<double>(sum);
        }
        CHECK(true_tail[static_cast<std::size_t>(w.n_eps)] <= w.certified_error);
        Index first = 0;
        while (true_tail[static_cast<std::size_t>(first)] > 0.01)
            ++first;
        CHECK(first <= 199);
        for (std::size_t i = 1; i < w.trace.size(); ++i) {
            CHECK(w.trace[i].n > w.trace[i - 1].n);
            CHECK(w.trace[i].bound <= w.trace[i - 1].bound);
        }
        CHECK(w.trace.back().n == w.n_eps);
        CHECK(w.trace.back().bound == w.certified_error);
    }
    SUBCASE("zero operator")
    {
        const auto zero = [](Index, Index) { return std::complex<double>{}; };
        const auto w = compactness_witness(zero, DecayEnvelope::table({}), src, tgt, 1e-6);
        CHECK(w.n_eps == 0);
        CHECK(w.certified_error == 0.0);
    }
    SUBCASE("violated envelope")
    {
        CHECK(code_of([&] { compactness_witness(diagonal(2.0), DecayEnvelope::power(3.0), src, tgt, 0.01); }) ==
              ErrorCode::EnvelopeViolated);
    }
    SUBCASE("weighted operator through the conjugation")
    {
        const SpaceParams a(1.0, 2.0, WeightFamily::polynomial(1.0));
        const SpaceParams b(1.0, 1.0, WeightFamily::polynomial(1.0));
        // T chosen so that C = J T J^-1 has symbol (1 + |m|)^-3.
        const EntryFunction t = [&](Index m, Index n) -> std::complex<double> {
            if (m != n)
                return 0.0;
            return std::pow(1.0 + std::abs(double(m)), -3.0) * basis_norm(a, m) / basis_norm(b, m);
        };
        const auto w = compactness_witness(t, DecayEnvelope::power(3.0), a, b, 1e-3);
        CHECK(w.certified_error <= 1e-3);
        CHECK(code_of([&] { compactness_witness(t, DecayEnvelope::power(3.5), a, b, 1e-3); }) ==
              ErrorCode::EnvelopeViolated);
        CHECK(code_of([&] { compactness_witness(t, DecayEnvelope::power(3.0), b, a, 1e-3); }) ==
              ErrorCode::InvalidExponents);
    }
}
