#include <sstream>

#include "doctest.h"
#include "sobseq/error.hpp"
#include "sobseq/io.hpp"
#include "sobseq/sampling.hpp"

using namespace sobseq;
using io::Json;

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

SeqVector parse(const std::string& text)
{
    std::istringstream in(text);
    return io::read_jsonl(in);
}

} // namespace

TEST_CASE("JSONL sequences round-trip")
{
    Rng rng(59, 0);
    for (int i = 0; i < 50; ++i) {
        const SeqVector p = random_vector(rng, Domain::FullLine, 1000, 20);
        std::ostringstream out;
        io::write_jsonl(out, p);
        CHECK(parse(out.str()) == p);
    }
    CHECK(parse("").empty());
    CHECK(parse("\n  \n{\"m\": -3, \"re\": 1.5, \"im\": 0}\n") == SeqVector{{-3, 1.5}});
}

TEST_CASE("JSONL rejects malformed input")
{
    CHECK(code_of([] { parse("{\"m\": 1, \"re\": 0, \"im\": 0}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse("{\"m\": 1, \"re\": 1, \"im\": 0}\n{\"m\": 1, \"re\": 2, \"im\": 0}"); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { parse("{\"m\": 1.5, \"re\": 1, \"im\": 0}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse("{\"m\": 1, \"re\": \"x\", \"im\": 0}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse("{\"m\": 1, \"re\": 1}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse("{\"m\": 1, \"re\": 1, \"im\": 0, \"x\": 2}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse("not json"); }) == ErrorCode::ParseError);
}

TEST_CASE("weight and space JSON")
{
    const WeightFamily families[] = {
        WeightFamily::constant(4.0),
        WeightFamily::polynomial(-1.5, Domain::HalfLine),
        WeightFamily::gibbs(0.5),
        WeightFamily::table({{-2, 3.0}, {0, 1.5}, {9, 2.0}}, 1.0, Domain::FullLine),
    };
    for (const auto& w : families) {
        CHECK(io::weight_from_json(io::to_json(w)) == w);
        const SpaceParams sp(1.25, 2.5, w);
        CHECK(io::space_from_json(Json::parse(io::to_json(sp).dump())) == sp);
    }

    const auto t = io::weight_table_from_json(Json::parse(R"({"lower_bound": 0.5, "0": 1, "-4": 2.5})"),
                                              Domain::FullLine);
    CHECK(weight_at(t, -4) == 2.5);
    CHECK(weight_infimum(t) == 0.5);
    CHECK(code_of([] { io::weight_table_from_json(Json::parse(R"({"0": 1})"), Domain::FullLine); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { io::weight_table_from_json(Json::parse(R"({"lower_bound": 1, "x1": 2})"), Domain::FullLine); }) ==
          ErrorCode::ParseError);
    CHECK(code_of([] { io::weight_table_from_json(Json::parse(R"({"lower_bound": 1, "3": 0.5})"), Domain::FullLine); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([] { io::weight_from_json(Json::parse(R"({"kind": "gibbs", "beta": 1, "domain": "full"})")); }) ==
          ErrorCode::DomainMismatch);
    CHECK(code_of([] { io::weight_from_json(Json::parse(R"({"kind": "cubic", "domain": "full"})")); }) ==
          ErrorCode::ParseError);
}

TEST_CASE("operator and certificate JSON")
{
    const SpaceParams src(1.0, 2.0, WeightFamily::constant(1.0));
    const SpaceParams tgt(1.0, 1.0, WeightFamily::constant(1.0));
    auto op = FiniteSectionOperator::zero({-1, 1}, src, tgt);
    op.at(-1, 1) = {1.0, -2.0};
    op.at(0, 0) = 3.5;
    const Json j = io::to_json(op);
    CHECK(j["window"] == Json::array({-1, 1}));
    CHECK(j["entries"].size() == 9);
    CHECK(j["entries"][2] == Json::array({1.0, -2.0}));
    const auto back = io::operator_from_json(Json::parse(j.dump()));
    CHECK(back.window() == op.window());
    CHECK(back.src() == src);
    CHECK(back.tgt() == tgt);
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(back.entries()[i] == op.entries()[i]);

    Json bad = j;
    bad["entries"].erase(0);
    CHECK(code_of([&] { io::operator_from_json(bad); }) == ErrorCode::InvalidArgument);

    CompactnessCertificate cert;
    cert.m_star = 10;
    cert.subspace_dim = 21;
    cert.epsilon = 0.2;
    cert.kappa = 1.0;
    cert.constant = 1.0;
    CHECK(io::to_json(cert).dump() ==
          R"({"theorem":"T1a","m_star":10,"subspace_dim":21,"epsilon":0.2,"kappa":1.0,"constant":1.0,"rigorous":true})");
    cert.constant.reset();
    CHECK(io::to_json(cert)["constant"].is_null());
}
