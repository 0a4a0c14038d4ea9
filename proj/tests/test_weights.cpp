#include <cmath>
#include <limits>

#include "doctest.h"
#include "sobseq/error.hpp"
#include "sobseq/weights.hpp"

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

} // namespace

TEST_CASE("weight_at on the basic families")
{
    CHECK(weight_at(WeightFamily::constant(1.0), 7) == 1.0);
    CHECK(weight_at(WeightFamily::gibbs(1.0), 0) == 1.0);
    CHECK(weight_at(WeightFamily::gibbs(2.0), 3) == doctest::Approx(403.4287934927351).epsilon(1e-15));
    CHECK(weight_at(WeightFamily::gibbs(2.0), 3) == doctest::Approx(std::exp(6.0)).epsilon(1e-15));
    CHECK(weight_at(WeightFamily::polynomial(2.0), -3) == 16.0);
    CHECK(weight_at(WeightFamily::polynomial(-1.0), 4) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("log weights")
{
    CHECK(log_weight_at(WeightFamily::gibbs(1.0), 700) == 700.0);
    CHECK(log_weight_at(WeightFamily::constant(1.0), -5) == 0.0);
    CHECK(log_weight_at(WeightFamily::polynomial(2.0), 3) == doctest::Approx(2.0 * std::log(4.0)).epsilon(1e-15));
    // Past the double range the log stays exact while the value overflows.
    CHECK(log_weight_at(WeightFamily::gibbs(1.0), 1000) == 1000.0);
}

TEST_CASE("exp(log_weight_at) agrees with weight_at")
{
    const WeightFamily families[] = {
        WeightFamily::constant(0.3),       WeightFamily::constant(4.0),
        WeightFamily::polynomial(2.0),     WeightFamily::polynomial(-1.5),
        WeightFamily::polynomial(0.7),     WeightFamily::gibbs(1.0),
        WeightFamily::gibbs(0.25),         WeightFamily::table({{-2, 3.0}, {0, 1.5}, {9, 2.0}}, 1.0, Domain::FullLine),
    };
    for (const auto& w : families) {
        const Index lo = w.domain() == Domain::HalfLine ? 0 : -200;
        for (Index m = lo; m <= 200; ++m) {
            if (w.kind() == WeightFamily::Kind::Table && !w.table_values().contains(m))
                continue;
            const double v = weight_at(w, m);
            CHECK(v > 0.0);
            CHECK(std::abs(std::exp(log_weight_at(w, m)) - v) <= 1e-12 * v);
        }
    }
}

TEST_CASE("domain and table errors")
{
    CHECK(code_of([] { weight_at(WeightFamily::gibbs(1.0), -1); }) == ErrorCode::IndexOutsideDomain);
    CHECK(code_of([] { log_weight_at(WeightFamily::constant(1.0, Domain::HalfLine), -3); }) ==
          ErrorCode::IndexOutsideDomain);
    CHECK(code_of([] { WeightFamily::gibbs(1.0, Domain::FullLine); }) == ErrorCode::DomainMismatch);
    CHECK(code_of([] { WeightFamily::constant(0.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { WeightFamily::gibbs(-1.0); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { WeightFamily::table({{0, 0.5}}, 1.0, Domain::FullLine); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { WeightFamily::table({{0, -1.0}}, 1.0, Domain::FullLine); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { WeightFamily::table({{-1, 2.0}}, 1.0, Domain::HalfLine); }) == ErrorCode::IndexOutsideDomain);
    const auto t = WeightFamily::table({{0, 2.0}}, 1.0, Domain::FullLine);
    CHECK(code_of([&] { weight_at(t, 1); }) == ErrorCode::MissingWeight);
}

TEST_CASE("infima")
{
    CHECK(weight_infimum(WeightFamily::gibbs(3.0)) == 1.0);
    CHECK(weight_infimum(WeightFamily::constant(4.0)) == 4.0);
    CHECK(weight_infimum(WeightFamily::polynomial(2.0)) == 1.0);
    CHECK(weight_infimum(WeightFamily::polynomial(0.0)) == 1.0);
    CHECK(weight_infimum(WeightFamily::table({{0, 2.0}, {5, 3.0}}, 1.5, Domain::FullLine)) == 1.5);
    CHECK(code_of([] { weight_infimum(WeightFamily::polynomial(-1.0)); }) == ErrorCode::InfimumNotPositive);

    const WeightFamily families[] = {WeightFamily::gibbs(0.5), WeightFamily::polynomial(1.3),
                                     WeightFamily::constant(2.0)};
    for (const auto& w : families) {
        const double inf = weight_infimum(w);
        for (Index m = w.domain() == Domain::HalfLine ? 0 : -100; m <= 100; ++m)
            CHECK(inf <= weight_at(w, m));
    }
}

TEST_CASE("ratio condition")
{
    SUBCASE("Gibbs pair is analytic with unit bounds")
    {
        const auto r = ratio_condition_check(WeightFamily::gibbs(1.0), WeightFamily::gibbs(0.5), 2.0, 1.0, {0, 50});
        CHECK(r.c1 == 1.0);
        CHECK(r.c2 == 1.0);
        CHECK(r.analytic);
        // Pointwise: w_m^(1/2) / w_hat_m == 1 for sampled m.
        for (Index m = 0; m <= 300; ++m)
            CHECK(std::sqrt(weight_at(WeightFamily::gibbs(1.0), m)) / weight_at(WeightFamily::gibbs(0.5), m) ==
                  doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("constant pair")
    {
        const auto r = ratio_condition_check(WeightFamily::constant(1.0), WeightFamily::constant(1.0), 3.0, 2.0, {-5, 5});
        CHECK(r.c1 == 1.0);
        CHECK(r.c2 == 1.0);
        CHECK(r.analytic);
        const auto q = ratio_condition_check(WeightFamily::constant(4.0), WeightFamily::constant(1.0), 2.0, 1.0, {-5, 5});
        CHECK(q.c1 == 2.0);
        CHECK(q.c2 == 2.0);
    }
    SUBCASE("polynomial pair matches both as an analytic pair and over a window")
    {
        const auto r = ratio_condition_check(WeightFamily::polynomial(2.0), WeightFamily::polynomial(1.0), 2.0, 1.0, {0, 100});
        CHECK(r.c1 == 1.0);
        CHECK(r.c2 == 1.0);
        CHECK(r.analytic);
        // Same pair via a table forces the window scan.
        std::map<Index, double> values;
        for (Index m = 0; m <= 100; ++m)
            values[m] = 1.0 + static_cast<double>(m);
        const auto table = WeightFamily::table(values, 1.0, Domain::FullLine);
        const auto e = ratio_condition_check(WeightFamily::polynomial(2.0), table, 2.0, 1.0, {0, 100});
        CHECK(!e.analytic);
        CHECK(e.c1 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(e.c2 == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("window extremes for an unmatched pair")
    {
        const auto e = ratio_condition_check(WeightFamily::polynomial(2.0), WeightFamily::constant(1.0), 2.0, 1.0, {-3, 7});
        CHECK(!e.analytic);
        CHECK(e.c1 == doctest::Approx(1.0));
        CHECK(e.c2 == doctest::Approx(8.0));
    }
    SUBCASE("errors")
    {
        CHECK(code_of([] {
                  ratio_condition_check(WeightFamily::gibbs(1.0), WeightFamily::constant(1.0), 2.0, 1.0, {0, 3});
              }) == ErrorCode::DomainMismatch);
        CHECK(code_of([] {
                  ratio_condition_check(WeightFamily::constant(1.0), WeightFamily::constant(1.0), 1.0, 2.0, {0, 3});
              }) == ErrorCode::InvalidExponents);
        CHECK(code_of([] {
                  ratio_condition_check(WeightFamily::constant(1.0), WeightFamily::constant(1.0), 2.0, 2.0, {0, 3});
              }) == ErrorCode::InvalidExponents);
    }
}
