#pragma once

#include <iosfwd>

#include "json.hpp"
#include "sobseq/embeddings.hpp"
#include "sobseq/operators.hpp"
#include "sobseq/spaces.hpp"
#include "sobseq/weights.hpp"

namespace sobseq::io {

using Json = nlohmann::ordered_json;

/// {"lower_bound": x, "<index>": value, ...}
WeightFamily weight_table_from_json(const Json& j, Domain domain);
Json weight_table_to_json(const WeightFamily& w);

/// {"kind": "constant"|"polynomial"|"gibbs"|"table", ...}
Json to_json(const WeightFamily& w);
WeightFamily weight_from_json(const Json& j);

/// {"k": x, "s": x, "weight": {...}}
Json to_json(const SpaceParams& sp);
SpaceParams space_from_json(const Json& j);

/// One {"m": <int>, "re": x, "im": x} object per line. Blank lines are skipped;
/// zero entries and repeated indices are rejected.
SeqVector read_jsonl(std::istream& in);
void write_jsonl(std::ostream& out, const SeqVector& p);

/// {"window": [lo, hi], "src": {...}, "tgt": {...}, "entries": [[re, im], ...]}
Json to_json(const FiniteSectionOperator& op);
FiniteSectionOperator operator_from_json(const Json& j);

/// {"theorem", "m_star", "subspace_dim", "epsilon", "kappa", "constant", "rigorous"}
Json to_json(const CompactnessCertificate& cert);
Json to_json(const EmbeddingReport& report);
Json to_json(const SeriesSum& sum);

} // namespace sobseq::io
