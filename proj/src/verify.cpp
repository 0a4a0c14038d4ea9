#include "sobseq/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sobseq/embeddings.hpp"
#include "sobseq/error.hpp"
#include "sobseq/operators.hpp"
#include "sobseq/sampling.hpp"

namespace sobseq {

namespace {

constexpr std::array<std::pair<Suite, std::string_view>, 6> kSuiteNames = {{
    {Suite::NormAxioms, "norm-axioms"},
    {Suite::Monotonicity, "monotonicity"},
    {Suite::T1b, "t1b"},
    {Suite::T2, "t2"},
    {Suite::Certificates, "certificates"},
    {Suite::Isometry, "isometry"},
}};

// Radius of the index window random vectors are drawn from.
constexpr Index kRadius = 64;

// Tolerance for the certified series behind every T2 constant.
constexpr double kSeriesTol = 1e-8;

class Property {
public:
    explicit Property(std::string name) { result_.name = std::move(name); }

    template <class MakeCounterexample>
    void check(bool ok, MakeCounterexample&& make)
    {
        ++result_.checked;
        if (ok)
            ++result_.passed;
        else if (!result_.counterexample)
            result_.counterexample = make();
    }

    PropertyResult take() { return std::move(result_); }

private:
    PropertyResult result_;
};

io::Json vector_json(const SeqVector& p)
{
    io::Json out = io::Json::array();
    for (const auto& [m, v] : p.entries())
        out.push_back(io::Json::array({m, v.real(), v.imag()}));
    return out;
}

io::Json complex_json(std::complex<double> z)
{
    return io::Json::array({z.real(), z.imag()});
}

bool close_rel(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

bool close_rel(std::complex<double> a, std::complex<double> b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

template <class T, std::size_t N>
const T& pick(Rng& rng, const std::array<T, N>& options)
{
    return options[static_cast<std::size_t>(rng.integer(0, static_cast<Index>(N) - 1))];
}

WeightFamily any_weight(Rng& rng)
{
    switch (rng.integer(0, 4)) {
    case 0: return WeightFamily::constant(1.0);
    case 1: return WeightFamily::constant(4.0);
    case 2: return WeightFamily::polynomial(2.0);
    case 3: return WeightFamily::polynomial(-1.0);
    default: return WeightFamily::gibbs(1.0);
    }
}

// The grid used for the basis-norm and isometry checks.
SpaceParams grid_space(Rng& rng)
{
    static constexpr std::array<double, 4> ks = {-1.0, 0.0, 1.0, 2.5};
    static constexpr std::array<double, 3> ss = {1.0, 2.0, 3.0};
    const double k = pick(rng, ks);
    const double s = pick(rng, ss);
    switch (rng.integer(0, 3)) {
    case 0: return SpaceParams(k, s, WeightFamily::constant(1.0));
    case 1: return SpaceParams(k, s, WeightFamily::constant(4.0));
    case 2: return SpaceParams(k, s, WeightFamily::polynomial(2.0));
    default: return SpaceParams(k, s, WeightFamily::gibbs(1.0));
    }
}

std::vector<PropertyResult> norm_axioms(int trials, std::uint64_t seed)
{
    static constexpr std::array<double, 4> ss = {1.0, 1.5, 2.0, 3.0};
    Property zero("zero-vector");
    Property positive("positivity");
    Property homogeneous("homogeneity");
    Property triangle("triangle");
    Property parallelogram("parallelogram-s2");
    Property not_hilbert("parallelogram-witness");

    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const SpaceParams sp(rng.uniform(-1.0, 3.0), pick(rng, ss), any_weight(rng));
        const SeqVector p = random_vector(rng, sp.domain(), kRadius);
        const SeqVector q = random_vector(rng, sp.domain(), kRadius);
        const std::complex<double> alpha = random_complex(rng);
        auto context = [&] {
            return io::Json{{"space", io::to_json(sp)}, {"p", vector_json(p)}, {"q", vector_json(q)},
                            {"alpha", complex_json(alpha)}};
        };

        const double np = norm(sp, p);
        const double nq = norm(sp, q);

        zero.check(norm(sp, SeqVector{}) == 0.0, context);
        positive.check(np > 0.0, context);

        const double scaled = norm(sp, p.scaled(alpha));
        homogeneous.check(close_rel(scaled, std::abs(alpha) * np, 1e-12), [&] {
            auto j = context();
            j["lhs"] = scaled;
            j["rhs"] = std::abs(alpha) * np;
            return j;
        });

        const double sum = norm(sp, p + q);
        triangle.check(sum <= (np + nq) * (1.0 + 1e-12), [&] {
            auto j = context();
            j["lhs"] = sum;
            j["rhs"] = np + nq;
            return j;
        });

        const SpaceParams h(sp.k(), 2.0, sp.weight());
        const double a = norm(h, p + q);
        const double b = norm(h, p - q);
        const double c = norm(h, p);
        const double d = norm(h, q);
        const double lhs = a * a + b * b;
        const double rhs = 2.0 * (c * c + d * d);
        parallelogram.check(close_rel(lhs, rhs, 1e-12), [&] {
            auto j = context();
            j["space"] = io::to_json(h);
            j["lhs"] = lhs;
            j["rhs"] = rhs;
            return j;
        });

        if (sp.s() != 2.0) {
            const SpaceParams flat(0.0, sp.s(), WeightFamily::constant(1.0));
            const SeqVector e0 = basis_vector(0);
            const SeqVector e1 = basis_vector(1);
            const double x = norm(flat, e0 + e1);
            const double y = norm(flat, e0 - e1);
            const double witness = x * x + y * y;
            not_hilbert.check(close_rel(witness, 2.0 * std::pow(2.0, 2.0 / sp.s()), 1e-12) &&
                                  !close_rel(witness, 4.0, 1e-12),
                              [&] { return io::Json{{"s", sp.s()}, {"lhs", witness}}; });
        }
    }
    return {zero.take(), positive.take(), homogeneous.take(), triangle.take(), parallelogram.take(),
            not_hilbert.take()};
}

std::vector<PropertyResult> monotonicity(int trials, std::uint64_t seed)
{
    Property order("norm-nondecreasing-in-k");
    Property basis("basis-norm-nondecreasing-in-k");
    Property remainder("expansion-remainder");
    Property antisymmetric("classification-antisymmetry");

    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const double k = rng.uniform(-1.0, 3.0);
        const double kp = i % 10 == 0 ? k : k + rng.uniform(0.0, 2.0);
        const double s = rng.uniform(1.0, 4.0);
        const WeightFamily w = any_weight(rng);
        const SpaceParams lo(k, s, w);
        const SpaceParams hi(kp, s, w);
        const SeqVector p = random_vector(rng, w.domain(), kRadius);
        auto context = [&] {
            return io::Json{{"low", io::to_json(lo)}, {"high", io::to_json(hi)}, {"p", vector_json(p)}};
        };

        const double a = norm(lo, p);
        const double b = norm(hi, p);
        order.check(a <= b + 1e-12, [&] {
            auto j = context();
            j["norm_low"] = a;
            j["norm_high"] = b;
            return j;
        });

        const Index m = rng.integer(w.domain() == Domain::HalfLine ? 0 : -kRadius, kRadius);
        const double ea = basis_norm(lo, m);
        const double eb = basis_norm(hi, m);
        basis.check(ea <= eb + 1e-12, [&] {
            auto j = context();
            j["m"] = m;
            return j;
        });

        // Nonincreasing in N, zero once N covers the support.
        bool ok = true;
        double previous = expansion_remainder(lo, p, 0);
        for (Index n = 1; n <= p.max_abs_index(); ++n) {
            const double r = expansion_remainder(lo, p, n);
            ok = ok && r <= previous;
            previous = r;
        }
        ok = ok && expansion_remainder(lo, p, p.max_abs_index()) == 0.0;
        remainder.check(ok, context);

        const double x = std::round(rng.uniform(-3.0, 3.0) * 4.0) / 4.0;
        const double y = std::round(rng.uniform(-3.0, 3.0) * 4.0) / 4.0;
        const bool forward = classify_order_pair(x, y).relation == Relation::CompactEmbedding;
        const bool backward = classify_order_pair(y, x).relation == Relation::NoGuarantee;
        antisymmetric.check(x == y || !forward || backward,
                            [&] { return io::Json{{"k_src", x}, {"k_tgt", y}}; });
    }
    return {order.take(), basis.take(), remainder.take(), antisymmetric.take()};
}

std::vector<PropertyResult> theorem1b(int trials, std::uint64_t seed)
{
    static constexpr std::array<double, 3> ks = {0.0, 1.0, 2.5};
    static constexpr std::array<std::pair<double, double>, 3> exps = {{{2.0, 1.0}, {3.0, 2.0}, {2.0, 2.0}}};
    Property vectors("constant-bounds-random-vectors");
    Property basis("constant-bounds-basis-vectors");
    Property guard("decaying-weight-rejected");

    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const double k = pick(rng, ks);
        const auto [s, t] = pick(rng, exps);
        WeightFamily w = WeightFamily::constant(1.0);
        switch (rng.integer(0, 4)) {
        case 0: break;
        case 1: w = WeightFamily::constant(4.0); break;
        case 2: w = WeightFamily::constant(0.25); break;
        case 3: w = WeightFamily::polynomial(2.0); break;
        default: w = WeightFamily::gibbs(1.0); break;
        }
        const SpaceParams big(k, s, w);
        const SpaceParams small(k, t, w);
        const double c = summability_constant(k, s, t, w);

        const SeqVector p = random_vector(rng, w.domain(), kRadius);
        const double lhs = norm(big, p);
        const double rhs = c * norm(small, p);
        vectors.check(lhs <= rhs * (1.0 + 1e-10), [&] {
            return io::Json{{"source", io::to_json(small)}, {"target", io::to_json(big)},
                            {"constant", c}, {"p", vector_json(p)}};
        });

        const Index m = rng.integer(w.domain() == Domain::HalfLine ? 0 : -kRadius, kRadius);
        const double eb = basis_norm(big, m);
        const double es = c * basis_norm(small, m);
        basis.check(eb <= es * (1.0 + 1e-10), [&] {
            return io::Json{{"source", io::to_json(small)}, {"target", io::to_json(big)},
                            {"constant", c}, {"m", m}};
        });
    }

    bool rejected = false;
    try {
        summability_constant(1.0, 2.0, 1.0, WeightFamily::polynomial(-1.0));
    } catch (const Error& e) {
        rejected = e.code() == ErrorCode::InfimumNotPositive;
    }
    guard.check(rejected, [] { return io::Json{{"weight", "polynomial(-1)"}}; });
    return {vectors.take(), basis.take(), guard.take()};
}

struct T2Config {
    SpaceParams src;
    SpaceParams tgt;
    RatioBounds ratio;
    double constant;
};

T2Config gibbs_config()
{
    const WeightFamily w = WeightFamily::gibbs(1.0);
    const WeightFamily w_hat = WeightFamily::gibbs(0.5);
    const RatioBounds ratio = ratio_condition_check(w, w_hat, 2.0, 1.0, {0, kRadius});
    return {SpaceParams(1.0, 2.0, w), SpaceParams(0.0, 1.0, w_hat), ratio,
            theorem2_constant(1.0, 2.0, 1.0, ratio.c1, Domain::HalfLine, kSeriesTol)};
}

T2Config constant_config()
{
    const WeightFamily w = WeightFamily::constant(1.0);
    const RatioBounds ratio = ratio_condition_check(w, w, 2.0, 1.0, {-kRadius, kRadius});
    return {SpaceParams(1.0, 2.0, w), SpaceParams(0.0, 1.0, w), ratio,
            theorem2_constant(1.0, 2.0, 1.0, ratio.c1, Domain::FullLine, kSeriesTol)};
}

std::vector<PropertyResult> theorem2(int trials, std::uint64_t seed)
{
    const std::array<std::pair<std::string, T2Config>, 2> configs = {{
        {"gibbs", gibbs_config()},
        {"constant-weight", constant_config()},
    }};

    std::vector<PropertyResult> out;
    for (const auto& [name, cfg] : configs) {
        Property analytic(name + "-ratio-analytic");
        Property bound(name + "-constant-bound");
        Property probe(name + "-probe-below-constant");

        analytic.check(cfg.ratio.analytic && cfg.ratio.c1 == 1.0 && cfg.ratio.c2 == 1.0, [&] {
            return io::Json{{"c1", cfg.ratio.c1}, {"c2", cfg.ratio.c2}, {"analytic", cfg.ratio.analytic}};
        });

        for (int i = 0; i < trials; ++i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            const SeqVector p = random_vector(rng, cfg.src.domain(), kRadius);
            const double lhs = norm(cfg.tgt, p);
            const double rhs = cfg.constant * norm(cfg.src, p);
            bound.check(lhs <= rhs * (1.0 + 1e-10), [&] {
                return io::Json{{"source", io::to_json(cfg.src)}, {"target", io::to_json(cfg.tgt)},
                                {"constant", cfg.constant}, {"p", vector_json(p)}};
            });
        }

        const double empirical = sharpness_probe(cfg.src, cfg.tgt, trials, seed);
        probe.check(empirical <= cfg.constant * (1.0 + 1e-10), [&] {
            return io::Json{{"probe", empirical}, {"constant", cfg.constant}};
        });

        out.push_back(analytic.take());
        out.push_back(bound.take());
        out.push_back(probe.take());
    }
    return out;
}

// Linear scan for the first m with (1 + m^s)^gap >= (2 kappa / epsilon)^s,
// evaluated in extended precision.
Index scan_tail_rank(double gap, double s, double epsilon, double kappa)
{
    const long double rhs = std::pow(2.0L * kappa / epsilon, static_cast<long double>(s));
    Index m = 0;
    while (std::pow(1.0L + std::pow(static_cast<long double>(m), static_cast<long double>(s)),
                    static_cast<long double>(gap)) < rhs)
        ++m;
    return m;
}

SeqVector scaled_to(const SpaceParams& sp, const SeqVector& p, double radius)
{
    return p.scaled(radius / norm(sp, p));
}

std::vector<PropertyResult> certificates(int trials, std::uint64_t seed)
{
    Property reference("t1a-reference-rank");
    Property sound("t1a-tail-sound");
    Property basis("t1a-basis-tail");
    Property minimal("t1a-scan-agreement");
    Property sound2("t2-gibbs-tail-sound");

    const double epsilon = 0.2;
    const double kappa = 1.0;
    const WeightFamily flat = WeightFamily::constant(1.0);
    const CompactnessCertificate cert = certify_theorem1(0.0, 1.0, 2.0, flat, epsilon, kappa);
    reference.check(cert.m_star == 10 && cert.subspace_dim == 21,
                    [&] { return io::to_json(cert); });

    const SpaceParams src(1.0, 2.0, flat);
    const SpaceParams tgt(0.0, 2.0, flat);

    const T2Config gibbs = gibbs_config();
    const double epsilon2 = 0.5;
    const Index m2 = tail_rank_theorem2(1.0, 2.0, 1.0, gibbs.ratio.c1, epsilon2, kappa,
                                        Domain::HalfLine, kSeriesTol);

    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));

        const SeqVector p = scaled_to(src, random_vector(rng, Domain::FullLine, kRadius), kappa);
        const double tail = norm(tgt, p - truncate(p, cert.m_star));
        sound.check(tail <= epsilon / 2 + 1e-12, [&] {
            return io::Json{{"certificate", io::to_json(cert)}, {"p", vector_json(p)}, {"tail", tail}};
        });

        const Index m = cert.m_star + rng.integer(0, kRadius);
        const SeqVector e = scaled_to(src, basis_vector(rng.integer(0, 1) ? m : -m), kappa);
        const double etail = norm(tgt, e - truncate(e, cert.m_star));
        basis.check(etail <= epsilon / 2 + 1e-12, [&] {
            return io::Json{{"certificate", io::to_json(cert)}, {"p", vector_json(e)}, {"tail", etail}};
        });

        const double gap = rng.uniform(0.5, 3.0);
        const double s = rng.uniform(1.0, 3.0);
        const double kap = std::pow(10.0, rng.uniform(-1.0, 1.0));
        const double eps = 2.0 * kap / rng.uniform(0.5, 100.0);
        const Index fast = tail_rank_theorem1(0.0, gap, s, eps, kap);
        const Index slow = scan_tail_rank(gap, s, eps, kap);
        minimal.check(fast == slow, [&] {
            return io::Json{{"k", 0.0}, {"k_prime", gap}, {"s", s}, {"epsilon", eps},
                            {"kappa", kap}, {"library", fast}, {"scan", slow}};
        });

        const SeqVector q = scaled_to(gibbs.src, random_vector(rng, Domain::HalfLine, kRadius), kappa);
        const double tail2 = norm(gibbs.tgt, q - truncate(q, m2));
        sound2.check(tail2 <= epsilon2 / 2 + 1e-12, [&] {
            return io::Json{{"m_star", m2}, {"epsilon", epsilon2}, {"kappa", kappa},
                            {"p", vector_json(q)}, {"tail", tail2}};
        });
    }
    return {reference.take(), sound.take(), basis.take(), minimal.take(), sound2.take()};
}

std::vector<PropertyResult> isometry(int trials, std::uint64_t seed)
{
    static constexpr std::array<std::pair<double, double>, 3> exps = {{{2.0, 1.0}, {3.0, 2.0}, {3.0, 1.5}}};
    Property preserved("norm-preserved");
    Property round_trip("invert-round-trip");
    Property pitt("pitt-round-trip");
    Property diagonal("diagonal-symbol");

    for (int i = 0; i < trials; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        const SpaceParams sp = grid_space(rng);
        const SeqVector p = random_vector(rng, sp.domain(), 50);
        auto context = [&] { return io::Json{{"space", io::to_json(sp)}, {"p", vector_json(p)}}; };

        const SeqVector q = isometry_apply(sp, p);
        const double flat = norm(unweighted(sp.s(), sp.domain()), q);
        const double weighted = norm(sp, p);
        preserved.check(close_rel(flat, weighted, 1e-12), [&] {
            auto j = context();
            j["unweighted"] = flat;
            j["weighted"] = weighted;
            return j;
        });

        const SeqVector back = isometry_invert(sp, q);
        bool same = back.size() == p.size();
        for (const auto& [m, v] : p.entries())
            same = same && close_rel(back.at(m), v, 1e-12);
        round_trip.check(same, context);

        const auto [s, t] = pick(rng, exps);
        const Index lo = sp.domain() == Domain::HalfLine ? 0 : -4;
        const IndexRange window{lo, lo + 8};
        const SpaceParams src(sp.k(), s, sp.weight());
        const SpaceParams tgt(sp.k(), t, sp.weight());
        auto op = FiniteSectionOperator::zero(window, src, tgt);
        for (Index r = window.lo; r <= window.hi; ++r)
            for (Index c = window.lo; c <= window.hi; ++c)
                if (rng.uniform() < 0.6)
                    op.at(r, c) = random_complex(rng);
        const auto restored = pitt_deconjugate(pitt_conjugate(op), src, tgt);
        bool recovered = true;
        for (std::size_t j = 0; j < op.entries().size(); ++j)
            recovered = recovered && close_rel(restored.entries()[j], op.entries()[j], 1e-12);
        pitt.check(recovered, [&] { return io::to_json(op); });

        const double kp = sp.k() + rng.uniform(0.0, 2.0);
        const SpaceParams smooth(kp, sp.s(), sp.weight());
        const auto d = embedding_as_diagonal(smooth, sp, window);
        bool symbol = true;
        for (Index m = window.lo; m <= window.hi; ++m)
            symbol = symbol &&
                     close_rel(d.at(m, m).real(), basis_norm(sp, m) / basis_norm(smooth, m), 1e-12);
        diagonal.check(symbol, [&] {
            return io::Json{{"source", io::to_json(smooth)}, {"target", io::to_json(sp)}};
        });
    }
    return {preserved.take(), round_trip.take(), pitt.take(), diagonal.take()};
}

} // namespace

std::string_view to_string(Suite s)
{
    for (const auto& [suite, name] : kSuiteNames)
        if (suite == s)
            return name;
    return "unknown";
}

Suite parse_suite(std::string_view text)
{
    for (const auto& [suite, name] : kSuiteNames)
        if (name == text)
            return suite;
    throw Error(ErrorCode::InvalidArgument, "unknown verify suite '" + std::string(text) + "'");
}

bool VerifyReport::ok() const
{
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.ok(); });
}

VerifyReport run_suite(Suite suite, int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw Error(ErrorCode::InvalidArgument, "verify needs at least one trial");
    VerifyReport report;
    report.suite = suite;
    report.trials = trials;
    report.seed = seed;
    switch (suite) {
    case Suite::NormAxioms: report.properties = norm_axioms(trials, seed); break;
    case Suite::Monotonicity: report.properties = monotonicity(trials, seed); break;
    case Suite::T1b: report.properties = theorem1b(trials, seed); break;
    case Suite::T2: report.properties = theorem2(trials, seed); break;
    case Suite::Certificates: report.properties = certificates(trials, seed); break;
    case Suite::Isometry: report.properties = isometry(trials, seed); break;
    }
    return report;
}

io::Json to_json(const VerifyReport& report)
{
    io::Json props = io::Json::array();
    for (const auto& p : report.properties) {
        io::Json j = io::Json::object();
        j["name"] = p.name;
        j["checked"] = p.checked;
        j["passed"] = p.passed;
        j["counterexample"] = p.counterexample ? *p.counterexample : io::Json(nullptr);
        props.push_back(std::move(j));
    }
    io::Json out = io::Json::object();
    out["suite"] = std::string(to_string(report.suite));
    out["trials"] = report.trials;
    out["seed"] = report.seed;
    out["passed"] = report.ok();
    out["properties"] = std::move(props);
    return out;
}

} // namespace sobseq
