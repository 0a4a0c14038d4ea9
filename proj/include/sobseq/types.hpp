#pragma once

#include <cstdint>
#include <string_view>

namespace sobseq {

using Index = std::int64_t;

/// Largest supported |m|; beyond it indices no longer convert exactly to double.
inline constexpr Index kMaxIndex = Index{1} << 53;

enum class Domain { FullLine, HalfLine };

std::string_view to_string(Domain d);
Domain parse_domain(std::string_view text);

bool in_domain(Domain d, Index m);

/// Throws IndexOutsideDomain when m is not an index of the domain.
void require_in_domain(Domain d, Index m);

/// Closed index interval [lo, hi].
struct IndexRange {
    Index lo = 0;
    Index hi = 0;

    bool empty() const { return hi < lo; }
    Index size() const { return empty() ? 0 : hi - lo + 1; }
    bool contains(Index m) const { return lo <= m && m <= hi; }
    bool operator==(const IndexRange&) const = default;
};

} // namespace sobseq
