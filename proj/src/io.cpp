#include "sobseq/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "sobseq/error.hpp"

namespace sobseq::io {

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw Error(ErrorCode::ParseError, what);
}

const Json& member(const Json& j, const char* key)
{
    if (!j.is_object())
        fail(std::string("expected an object holding '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end())
        fail(std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const char* what)
{
    if (!j.is_number())
        fail(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        fail(std::string(what) + " must be finite");
    return v;
}

Index integer(const Json& j, const char* what)
{
    if (!j.is_number_integer())
        fail(std::string(what) + " must be an integer");
    return j.get<Index>();
}

Index parse_index(const std::string& text)
{
    Index value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty())
        fail("'" + text + "' is not a decimal integer index");
    return value;
}

} // namespace

WeightFamily weight_table_from_json(const Json& j, Domain domain)
{
    const double lower = number(member(j, "lower_bound"), "lower_bound");
    std::map<Index, double> values;
    for (const auto& [key, value] : j.items()) {
        if (key == "lower_bound")
            continue;
        values.emplace(parse_index(key), number(value, "table weight"));
    }
    return WeightFamily::table(std::move(values), lower, domain);
}

Json weight_table_to_json(const WeightFamily& w)
{
    Json j = Json::object();
    j["lower_bound"] = w.parameter();
    for (const auto& [m, v] : w.table_values())
        j[std::to_string(m)] = v;
    return j;
}

Json to_json(const WeightFamily& w)
{
    Json j = Json::object();
    switch (w.kind()) {
    case WeightFamily::Kind::Constant:
        j["kind"] = "constant";
        j["c"] = w.parameter();
        break;
    case WeightFamily::Kind::Polynomial:
        j["kind"] = "polynomial";
        j["alpha"] = w.parameter();
        break;
    case WeightFamily::Kind::Gibbs:
        j["kind"] = "gibbs";
        j["beta"] = w.parameter();
        break;
    case WeightFamily::Kind::Table:
        j["kind"] = "table";
        j["table"] = weight_table_to_json(w);
        break;
    }
    j["domain"] = std::string(to_string(w.domain()));
    return j;
}

WeightFamily weight_from_json(const Json& j)
{
    const Json& kind = member(j, "kind");
    if (!kind.is_string())
        fail("weight kind must be a string");
    const Json& domain_field = member(j, "domain");
    if (!domain_field.is_string())
        fail("domain must be a string");
    const Domain domain = parse_domain(domain_field.get<std::string>());
    const std::string k = kind.get<std::string>();
    if (k == "constant")
        return WeightFamily::constant(number(member(j, "c"), "c"), domain);
    if (k == "polynomial")
        return WeightFamily::polynomial(number(member(j, "alpha"), "alpha"), domain);
    if (k == "gibbs")
        return WeightFamily::gibbs(number(member(j, "beta"), "beta"), domain);
    if (k == "table")
        return weight_table_from_json(member(j, "table"), domain);
    fail("unknown weight kind '" + k + "'");
}

Json to_json(const SpaceParams& sp)
{
    Json j = Json::object();
    j["k"] = sp.k();
    j["s"] = sp.s();
    j["weight"] = to_json(sp.weight());
    return j;
}

SpaceParams space_from_json(const Json& j)
{
    return SpaceParams(number(member(j, "k"), "k"), number(member(j, "s"), "s"),
                       weight_from_json(member(j, "weight")));
}

SeqVector read_jsonl(std::istream& in)
{
    SeqVector::Entries entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        Json j;
        try {
            j = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail(where + e.what());
        }
        if (!j.is_object() || j.size() != 3)
            fail(where + "expected exactly the fields m, re, im");
        const Index m = integer(member(j, "m"), "m");
        const std::complex<double> v(number(member(j, "re"), "re"), number(member(j, "im"), "im"));
        if (v == std::complex<double>{})
            fail(where + "zero entries are not stored");
        if (!entries.emplace(m, v).second)
            fail(where + "index " + std::to_string(m) + " appears twice");
    }
    return SeqVector(std::move(entries));
}

void write_jsonl(std::ostream& out, const SeqVector& p)
{
    for (const auto& [m, v] : p.entries()) {
        Json j = Json::object();
        j["m"] = m;
        j["re"] = v.real();
        j["im"] = v.imag();
        out << j.dump() << '\n';
    }
}

Json to_json(const FiniteSectionOperator& op)
{
    Json j = Json::object();
    j["window"] = Json::array({op.window().lo, op.window().hi});
    j["src"] = to_json(op.src());
    j["tgt"] = to_json(op.tgt());
    Json entries = Json::array();
    for (const auto& z : op.entries())
        entries.push_back(Json::array({z.real(), z.imag()}));
    j["entries"] = std::move(entries);
    return j;
}

FiniteSectionOperator operator_from_json(const Json& j)
{
    const Json& window = member(j, "window");
    if (!window.is_array() || window.size() != 2)
        fail("window must be [lo, hi]");
    const IndexRange range{integer(window[0], "window lo"), integer(window[1], "window hi")};
    const Json& raw = member(j, "entries");
    if (!raw.is_array())
        fail("entries must be an array");
    std::vector<std::complex<double>> entries;
    entries.reserve(raw.size());
    for (const auto& z : raw) {
        if (!z.is_array() || z.size() != 2)
            fail("each entry must be [re, im]");
        entries.emplace_back(number(z[0], "re"), number(z[1], "im"));
    }
    return FiniteSectionOperator(range, space_from_json(member(j, "src")),
                                 space_from_json(member(j, "tgt")), std::move(entries));
}

Json to_json(const CompactnessCertificate& cert)
{
    Json j = Json::object();
    j["theorem"] = std::string(to_string(cert.theorem));
    j["m_star"] = cert.m_star;
    j["subspace_dim"] = cert.subspace_dim;
    j["epsilon"] = cert.epsilon;
    j["kappa"] = cert.kappa;
    j["constant"] = cert.constant ? Json(*cert.constant) : Json(nullptr);
    j["rigorous"] = cert.rigorous;
    return j;
}

Json to_json(const EmbeddingReport& report)
{
    Json j = Json::object();
    j["relation"] = std::string(to_string(report.relation));
    j["constant"] = report.constant ? Json(*report.constant) : Json(nullptr);
    j["notes"] = report.notes;
    return j;
}

Json to_json(const SeriesSum& sum)
{
    Json j = Json::object();
    j["value"] = sum.value;
    j["lower"] = sum.lower;
    j["upper"] = sum.upper;
    j["cutoff"] = sum.cutoff;
    j["tail_bound"] = sum.tail_bound;
    return j;
}

} // namespace sobseq::io
