#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sobseq/io.hpp"

namespace sobseq {

enum class Suite { NormAxioms, Monotonicity, T1b, T2, Certificates, Isometry };

std::string_view to_string(Suite s);
/// Accepts the names printed by to_string ("norm-axioms", "t1b", ...).
Suite parse_suite(std::string_view text);

struct PropertyResult {
    std::string name;
    std::int64_t checked = 0;
    std::int64_t passed = 0;
    /// Inputs of the first failing check, enough to replay it.
    std::optional<io::Json> counterexample;

    bool ok() const { return checked == passed; }
};

struct VerifyReport {
    Suite suite = Suite::NormAxioms;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> properties;

    bool ok() const;
};

/// Runs one invariant suite. Trial i draws from Rng(seed, i), so the report
/// depends only on (suite, trials, seed).
VerifyReport run_suite(Suite suite, int trials, std::uint64_t seed);

io::Json to_json(const VerifyReport& report);

} // namespace sobseq
