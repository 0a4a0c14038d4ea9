// Command-line front end. Every subcommand writes one JSON document (or a CSV
// table for series sums and constants) to stdout; diagnostics go to stderr.
//
// Exit status: 0 success, 1 invalid input or failed hypothesis, 2 divergence.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sobseq/embeddings.hpp"
#include "sobseq/error.hpp"
#include "sobseq/io.hpp"
#include "sobseq/operators.hpp"
#include "sobseq/verify.hpp"

using namespace sobseq;
using io::Json;

namespace {

struct Global {
    std::uint64_t seed = 0;
    std::string output = "json";
};

// A CSV table: header plus rows of preformatted cells.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string cell(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string cell(Index x) { return std::to_string(x); }
std::string cell(bool x) { return x ? "true" : "false"; }

void write_csv(std::ostream& out, const Table& t)
{
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows)
        line(r);
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

SeqVector read_sequence(const std::string& path)
{
    if (path == "-")
        return io::read_jsonl(std::cin);
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    return io::read_jsonl(in);
}

double parse_number(const std::string& text, const std::string& spec)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw Error(ErrorCode::ParseError, "bad number in weight spec '" + spec + "'");
    return v;
}

// const:c, poly:alpha, gibbs:beta or table:path.
WeightFamily parse_weight(const std::string& spec, Domain domain)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw Error(ErrorCode::ParseError, "weight spec '" + spec + "' needs the form kind:value");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "const")
        return WeightFamily::constant(parse_number(arg, spec), domain);
    if (kind == "poly")
        return WeightFamily::polynomial(parse_number(arg, spec), domain);
    if (kind == "gibbs")
        return WeightFamily::gibbs(parse_number(arg, spec), domain);
    if (kind == "table")
        return io::weight_table_from_json(read_json_file(arg), domain);
    throw Error(ErrorCode::ParseError, "unknown weight kind '" + kind + "'");
}

const std::vector<std::string> kDomains = {"full", "half"};

void add_domain(CLI::App* cmd, std::string& domain)
{
    cmd->add_option("--domain", domain, "Index domain")
        ->check(CLI::IsMember(kDomains))
        ->capture_default_str();
}

// --- subcommand options ---------------------------------------------------

struct NormOpts {
    double k = 0.0, s = 2.0;
    std::string weight = "const:1", domain = "full", input = "-";
};

struct InnerOpts {
    double k = 0.0, s = 2.0;
    std::string weight = "const:1", domain = "full", p, q;
};

struct ClassifyOpts {
    double k_src = 0.0, k_tgt = 0.0;
};

struct TailRankOpts {
    std::string theorem = "t1a", domain = "full";
    double k = 0.0, k_prime = 1.0, s = 2.0, t = 1.0, c1 = 1.0, epsilon = 0.2, kappa = 1.0, tol = 1e-8;
};

struct CertifyOpts {
    std::string theorem = "t1a", domain = "full", weight = "const:1", weight_hat;
    double k = 0.0, k_prime = 1.0, s = 2.0, t = 1.0, epsilon = 0.2, kappa = 1.0, tol = 1e-8;
    Index window = 64;
};

struct SeriesOpts {
    double k = 1.0, s = 2.0, t = 1.0, tol = 1e-8;
    std::string domain = "full";
};

struct T2Opts {
    double k = 1.0, s = 2.0, t = 1.0, tol = 1e-8;
    std::string domain = "full", weight = "const:1", weight_hat;
    Index window = 64;
};

struct PittOpts {
    double k = 0.0, s = 2.0, t = 1.0, gamma = 2.0, epsilon = 0.01;
    std::string weight = "const:1", domain = "full";
    int probes = 64;
};

struct GibbsOpts {
    double beta = 1.0, epsilon = 0.5, kappa = 1.0, tol = 1e-8;
    int trials = 1000;
};

struct VerifyOpts {
    std::string suite;
    int trials = 1000;
};

// --- runners --------------------------------------------------------------

Json run_norm(const NormOpts& o)
{
    const SpaceParams sp(o.k, o.s, parse_weight(o.weight, parse_domain(o.domain)));
    const SeqVector p = read_sequence(o.input);
    Json j = Json::object();
    j["space"] = io::to_json(sp);
    j["support"] = p.size();
    j["norm"] = norm(sp, p);
    return j;
}

Json run_inner(const InnerOpts& o)
{
    const SpaceParams sp(o.k, o.s, parse_weight(o.weight, parse_domain(o.domain)));
    if (o.p == "-" && o.q == "-")
        throw Error(ErrorCode::InvalidArgument, "only one of --p and --q may read stdin");
    const SeqVector p = read_sequence(o.p);
    const SeqVector q = read_sequence(o.q);
    const auto z = inner_product(sp, p, q);
    Json j = Json::object();
    j["space"] = io::to_json(sp);
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

Json run_classify(const ClassifyOpts& o)
{
    Json j = io::to_json(classify_order_pair(o.k_src, o.k_tgt));
    j["k_src"] = o.k_src;
    j["k_tgt"] = o.k_tgt;
    return j;
}

Json run_tail_rank(const TailRankOpts& o)
{
    Json j = Json::object();
    j["theorem"] = o.theorem == "t1a" ? "T1a" : "T2";
    if (o.theorem == "t1a") {
        j["m_star"] = tail_rank_theorem1(o.k, o.k_prime, o.s, o.epsilon, o.kappa);
    } else {
        j["m_star"] = tail_rank_theorem2(o.k, o.s, o.t, o.c1, o.epsilon, o.kappa,
                                         parse_domain(o.domain), o.tol);
    }
    return j;
}

IndexRange ratio_window(Domain domain, Index radius)
{
    if (radius < 0)
        throw Error(ErrorCode::InvalidArgument, "--window must be nonnegative");
    return {domain == Domain::HalfLine ? 0 : -radius, radius};
}

Json run_certify(const CertifyOpts& o)
{
    const Domain domain = parse_domain(o.domain);
    const WeightFamily w = parse_weight(o.weight, domain);
    if (o.theorem == "t1a")
        return io::to_json(certify_theorem1(o.k, o.k_prime, o.s, w, o.epsilon, o.kappa));
    if (o.weight_hat.empty())
        throw Error(ErrorCode::InvalidArgument, "certify --theorem t2 needs --weight-hat");
    const WeightFamily w_hat = parse_weight(o.weight_hat, domain);
    const RatioBounds ratio = ratio_condition_check(w, w_hat, o.s, o.t, ratio_window(domain, o.window));
    return io::to_json(certify_theorem2(o.k, o.s, o.t, ratio, o.epsilon, o.kappa, domain, o.tol));
}

Table series_table(const SeriesSum& sum)
{
    return {{"value", "lower", "upper", "cutoff", "tail_bound"},
            {{cell(sum.value), cell(sum.lower), cell(sum.upper), cell(sum.cutoff), cell(sum.tail_bound)}}};
}

struct T2Result {
    RatioBounds ratio;
    double constant;
    double second;
};

T2Result t2_result(const T2Opts& o)
{
    const Domain domain = parse_domain(o.domain);
    const WeightFamily w = parse_weight(o.weight, domain);
    const WeightFamily w_hat = parse_weight(o.weight_hat.empty() ? o.weight : o.weight_hat, domain);
    const RatioBounds ratio = ratio_condition_check(w, w_hat, o.s, o.t, ratio_window(domain, o.window));
    return {ratio, theorem2_constant(o.k, o.s, o.t, ratio.c1, domain, o.tol),
            theorem2_second_constant(o.s, o.t, ratio.c2)};
}

Json t2_json(const T2Result& r)
{
    Json j = Json::object();
    j["c1"] = r.ratio.c1;
    j["c2"] = r.ratio.c2;
    j["constant"] = r.constant;
    j["second_constant"] = r.second;
    j["rigorous"] = r.ratio.analytic;
    return j;
}

Table t2_table(const T2Result& r)
{
    return {{"c1", "c2", "constant", "second_constant", "rigorous"},
            {{cell(r.ratio.c1), cell(r.ratio.c2), cell(r.constant), cell(r.second),
              cell(r.ratio.analytic)}}};
}

// Diagonal operator whose conjugate C has symbol (1 + |m|)^-gamma, certified
// against the matching power envelope.
Json run_pitt(const PittOpts& o, std::uint64_t seed)
{
    const Domain domain = parse_domain(o.domain);
    const WeightFamily w = parse_weight(o.weight, domain);
    const SpaceParams src(o.k, o.s, w);
    const SpaceParams tgt(o.k, o.t, w);
    if (!(o.gamma > 0.0))
        throw Error(ErrorCode::InvalidArgument, "--gamma must be positive");
    if (o.probes < 1)
        throw Error(ErrorCode::InvalidArgument, "--probes must be at least 1");

    auto symbol = [&](Index m) { return std::pow(1.0 + std::abs(static_cast<double>(m)), -o.gamma); };
    const EntryFunction entries = [&](Index row, Index col) -> std::complex<double> {
        if (row != col)
            return 0.0;
        return symbol(row) * std::exp(log_basis_norm(src, row) - log_basis_norm(tgt, row));
    };
    const auto witness =
        compactness_witness(entries, DecayEnvelope::power(o.gamma), src, tgt, o.epsilon);

    // Norm bracket of the conjugated finite section on a small window.
    const Index radius = std::min<Index>(witness.n_eps, 16);
    const IndexRange window{domain == Domain::HalfLine ? 0 : -radius, radius};
    auto section = FiniteSectionOperator::zero(window, src, tgt);
    for (Index m = window.lo; m <= window.hi; ++m)
        section.at(m, m) = entries(m, m);
    const auto conj = pitt_conjugate(section);

    Json trace = Json::array();
    for (const auto& step : witness.trace)
        trace.push_back(Json{{"n", step.n}, {"bound", step.bound}});
    Json j = Json::object();
    j["source"] = io::to_json(src);
    j["target"] = io::to_json(tgt);
    j["gamma"] = o.gamma;
    j["epsilon"] = o.epsilon;
    j["n_eps"] = witness.n_eps;
    j["certified_error"] = witness.certified_error;
    j["trace"] = std::move(trace);
    j["section"] = Json{{"window", Json::array({window.lo, window.hi})},
                        {"norm_lower", operator_norm_lower(conj, o.probes, seed)},
                        {"norm_upper", operator_norm_upper(conj)}};
    return j;
}

Json run_gibbs(const GibbsOpts& o, std::uint64_t seed)
{
    const double s = 2.0, t = 1.0, k = 1.0;
    const WeightFamily w = WeightFamily::gibbs(o.beta);
    const WeightFamily w_hat = WeightFamily::gibbs(o.beta * t / s);
    const RatioBounds ratio = ratio_condition_check(w, w_hat, s, t, {0, 64});
    const double constant = theorem2_constant(k, s, t, ratio.c1, Domain::HalfLine, o.tol);
    const double second = theorem2_second_constant(s, t, ratio.c2);

    const SpaceParams smooth(k, s, w);
    const SpaceParams middle(0.0, t, w_hat);
    const SpaceParams rough(0.0, s, w);
    const auto cert = certify_theorem2(k, s, t, ratio, o.epsilon, o.kappa, Domain::HalfLine, o.tol);

    Json chain = Json::array();
    chain.push_back(Json{{"source", io::to_json(smooth)},
                         {"target", io::to_json(middle)},
                         {"relation", "compact"},
                         {"constant", constant},
                         {"probe", sharpness_probe(smooth, middle, o.trials, seed)}});
    chain.push_back(Json{{"source", io::to_json(middle)},
                         {"target", io::to_json(rough)},
                         {"relation", "continuous"},
                         {"constant", second},
                         {"probe", sharpness_probe(middle, rough, o.trials, seed)}});

    Json j = Json::object();
    j["beta"] = o.beta;
    j["c1"] = ratio.c1;
    j["c2"] = ratio.c2;
    j["analytic"] = ratio.analytic;
    j["t2_constant"] = constant;
    j["chain_labels"] = Json::array({"compact", "continuous"});
    j["chain"] = std::move(chain);
    j["certificate"] = io::to_json(cert);
    return j;
}

// Returns the exit status.
int run_verify(const VerifyOpts& o, std::uint64_t seed)
{
    std::vector<Suite> suites;
    if (o.suite == "all") {
        for (Suite s : {Suite::NormAxioms, Suite::Monotonicity, Suite::T1b, Suite::T2,
                        Suite::Certificates, Suite::Isometry})
            suites.push_back(s);
    } else {
        suites.push_back(parse_suite(o.suite));
    }
    if (o.trials < 1)
        throw Error(ErrorCode::InvalidArgument, "--trials must be at least 1");

    bool ok = true;
    Json reports = Json::array();
    for (Suite s : suites) {
        const VerifyReport report = run_suite(s, o.trials, seed);
        ok = ok && report.ok();
        reports.push_back(to_json(report));
    }
    Json j = Json::object();
    j["passed"] = ok;
    j["suites"] = std::move(reports);
    std::cout << j.dump(2) << '\n';
    return ok ? 0 : 1;
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Norms, embedding constants and compactness certificates for weighted "
                 "Sobolev sequence spaces h^{k,s}_w."};
    app.require_subcommand(1);
    Global g;
    app.add_option("--seed", g.seed, "Seed for randomized probes")->capture_default_str();
    app.add_option("--output", g.output, "Output format; csv only for series-sum and t2-constant")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    NormOpts norm_o;
    auto* norm_cmd = app.add_subcommand("norm", "Norm of a JSONL sequence");
    norm_cmd->add_option("--k", norm_o.k)->capture_default_str();
    norm_cmd->add_option("--s", norm_o.s)->capture_default_str();
    norm_cmd->add_option("--weight", norm_o.weight, "const:c | poly:alpha | gibbs:beta | table:path")
        ->capture_default_str();
    add_domain(norm_cmd, norm_o.domain);
    norm_cmd->add_option("--input", norm_o.input, "JSONL file, - for stdin")->capture_default_str();

    InnerOpts inner_o;
    auto* inner_cmd = app.add_subcommand("inner", "Inner product for s = 2");
    inner_cmd->add_option("--k", inner_o.k)->capture_default_str();
    inner_cmd->add_option("--s", inner_o.s)->capture_default_str();
    inner_cmd->add_option("--weight", inner_o.weight)->capture_default_str();
    add_domain(inner_cmd, inner_o.domain);
    inner_cmd->add_option("--p", inner_o.p, "JSONL file, - for stdin")->required();
    inner_cmd->add_option("--q", inner_o.q, "JSONL file, - for stdin")->required();

    ClassifyOpts cls_o;
    auto* cls_cmd = app.add_subcommand("embed-classify", "Relation between two orders k");
    cls_cmd->add_option("--k-src", cls_o.k_src)->required();
    cls_cmd->add_option("--k-tgt", cls_o.k_tgt)->required();

    const std::vector<std::string> theorems = {"t1a", "t2"};

    TailRankOpts tr_o;
    auto* tr_cmd = app.add_subcommand("tail-rank", "Tail rank m*");
    tr_cmd->add_option("--theorem", tr_o.theorem)->check(CLI::IsMember(theorems))->capture_default_str();
    tr_cmd->add_option("--k", tr_o.k)->capture_default_str();
    tr_cmd->add_option("--k-prime", tr_o.k_prime, "Source order (t1a)")->capture_default_str();
    tr_cmd->add_option("--s", tr_o.s)->capture_default_str();
    tr_cmd->add_option("--t", tr_o.t, "Target summability (t2)")->capture_default_str();
    tr_cmd->add_option("--c1", tr_o.c1, "Lower weight ratio bound (t2)")->capture_default_str();
    tr_cmd->add_option("--epsilon", tr_o.epsilon)->capture_default_str();
    tr_cmd->add_option("--kappa", tr_o.kappa)->capture_default_str();
    tr_cmd->add_option("--tol", tr_o.tol)->capture_default_str();
    add_domain(tr_cmd, tr_o.domain);

    CertifyOpts cert_o;
    auto* cert_cmd = app.add_subcommand("certify", "Compactness certificate");
    cert_cmd->add_option("--theorem", cert_o.theorem)->check(CLI::IsMember(theorems))->capture_default_str();
    cert_cmd->add_option("--k", cert_o.k)->capture_default_str();
    cert_cmd->add_option("--k-prime", cert_o.k_prime)->capture_default_str();
    cert_cmd->add_option("--s", cert_o.s)->capture_default_str();
    cert_cmd->add_option("--t", cert_o.t)->capture_default_str();
    cert_cmd->add_option("--weight", cert_o.weight)->capture_default_str();
    cert_cmd->add_option("--weight-hat", cert_o.weight_hat, "Target weight (t2)");
    cert_cmd->add_option("--epsilon", cert_o.epsilon)->capture_default_str();
    cert_cmd->add_option("--kappa", cert_o.kappa)->capture_default_str();
    cert_cmd->add_option("--tol", cert_o.tol)->capture_default_str();
    cert_cmd->add_option("--window", cert_o.window, "Ratio window radius for non-analytic weight pairs")
        ->capture_default_str();
    add_domain(cert_cmd, cert_o.domain);

    SeriesOpts ser_o;
    auto* ser_cmd = app.add_subcommand("series-sum", "Certified sum of (1 + |m|^s)^(-k r / s)");
    ser_cmd->add_option("--k", ser_o.k)->capture_default_str();
    ser_cmd->add_option("--s", ser_o.s)->capture_default_str();
    ser_cmd->add_option("--t", ser_o.t)->capture_default_str();
    ser_cmd->add_option("--tol", ser_o.tol)->capture_default_str();
    add_domain(ser_cmd, ser_o.domain);

    T2Opts t2_o;
    auto* t2_cmd = app.add_subcommand("t2-constant", "Embedding constants for h^{k,s}_w -> l^t_{w_hat}");
    t2_cmd->add_option("--k", t2_o.k)->capture_default_str();
    t2_cmd->add_option("--s", t2_o.s)->capture_default_str();
    t2_cmd->add_option("--t", t2_o.t)->capture_default_str();
    t2_cmd->add_option("--tol", t2_o.tol)->capture_default_str();
    t2_cmd->add_option("--weight", t2_o.weight)->capture_default_str();
    t2_cmd->add_option("--weight-hat", t2_o.weight_hat, "Defaults to --weight");
    t2_cmd->add_option("--window", t2_o.window)->capture_default_str();
    add_domain(t2_cmd, t2_o.domain);

    PittOpts pitt_o;
    auto* pitt_cmd = app.add_subcommand("pitt-demo", "Finite-rank witness for a decaying diagonal operator");
    pitt_cmd->add_option("--k", pitt_o.k)->capture_default_str();
    pitt_cmd->add_option("--s", pitt_o.s)->capture_default_str();
    pitt_cmd->add_option("--t", pitt_o.t)->capture_default_str();
    pitt_cmd->add_option("--gamma", pitt_o.gamma, "Decay exponent of the conjugated symbol")
        ->capture_default_str();
    pitt_cmd->add_option("--epsilon", pitt_o.epsilon)->capture_default_str();
    pitt_cmd->add_option("--weight", pitt_o.weight)->capture_default_str();
    pitt_cmd->add_option("--probes", pitt_o.probes)->capture_default_str();
    add_domain(pitt_cmd, pitt_o.domain);

    GibbsOpts gibbs_o;
    auto* gibbs_cmd = app.add_subcommand("gibbs-demo", "Gibbs weight chain with s = 2, t = 1, k = 1");
    gibbs_cmd->add_option("--beta", gibbs_o.beta)->capture_default_str();
    gibbs_cmd->add_option("--epsilon", gibbs_o.epsilon)->capture_default_str();
    gibbs_cmd->add_option("--kappa", gibbs_o.kappa)->capture_default_str();
    gibbs_cmd->add_option("--tol", gibbs_o.tol)->capture_default_str();
    gibbs_cmd->add_option("--trials", gibbs_o.trials)->capture_default_str();

    VerifyOpts ver_o;
    auto* ver_cmd = app.add_subcommand("verify", "Randomized invariant suites");
    ver_cmd->add_option("--suite", ver_o.suite,
                        "norm-axioms | monotonicity | t1b | t2 | certificates | isometry | all")
        ->required();
    ver_cmd->add_option("--trials", ver_o.trials)->capture_default_str();

    for (auto* cmd : app.get_subcommands({}))
        cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const bool csv = g.output == "csv";
    try {
        if (csv && !ser_cmd->parsed() && !t2_cmd->parsed())
            throw Error(ErrorCode::InvalidArgument,
                        "--output csv is only available for series-sum and t2-constant");

        if (norm_cmd->parsed()) {
            emit(run_norm(norm_o));
        } else if (inner_cmd->parsed()) {
            emit(run_inner(inner_o));
        } else if (cls_cmd->parsed()) {
            emit(run_classify(cls_o));
        } else if (tr_cmd->parsed()) {
            emit(run_tail_rank(tr_o));
        } else if (cert_cmd->parsed()) {
            emit(run_certify(cert_o));
        } else if (ser_cmd->parsed()) {
            const SeriesSum sum = weight_series_sum(ser_o.k, ser_o.s, ser_o.t, parse_domain(ser_o.domain), ser_o.tol);
            if (csv)
                write_csv(std::cout, series_table(sum));
            else
                emit(io::to_json(sum));
        } else if (t2_cmd->parsed()) {
            const T2Result r = t2_result(t2_o);
            if (csv)
                write_csv(std::cout, t2_table(r));
            else
                emit(t2_json(r));
        } else if (pitt_cmd->parsed()) {
            emit(run_pitt(pitt_o, g.seed));
        } else if (gibbs_cmd->parsed()) {
            emit(run_gibbs(gibbs_o, g.seed));
        } else if (ver_cmd->parsed()) {
            return run_verify(ver_o, g.seed);
        }
    } catch (const Error& e) {
        Json j = Json::object();
        j["error"] = std::string(to_string(e.code()));
        j["message"] = e.what();
        emit(j);
        std::cerr << e.what() << '\n';
        return is_divergence(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
