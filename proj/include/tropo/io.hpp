#pragma once

#include "tropo/complex.hpp"
#include "tropo/cycle.hpp"
#include "tropo/divisors.hpp"
#include "tropo/lattice.hpp"
#include "tropo/measures.hpp"
#include "tropo/superform.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tropo {

/// Verdict plus named exact values, e.g. {"residual": "0/1"}.
struct Report {
  std::string verdict;
  std::map<std::string, std::string> values;
  std::optional<std::string> witness;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class DocumentKind { Complex, Cycle, Function, Superform, Preform, Measure, Report, Map };

const char* to_string(DocumentKind k);
/// Throws PARSE_ERROR for unknown names.
DocumentKind parse_kind(const std::string& s);

struct Meta {
  std::string tool_version;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> timing_us;  // excluded from equality
};

using Payload = std::variant<PolyhedralComplex, TropicalCycle, PiecewisePolynomial, PiecewiseSuperform,
                             DeltaPreform, PointMeasure, Report, IntegralAffineMap>;

struct Document {
  Payload payload;
  Meta meta;

  DocumentKind kind() const { return static_cast<DocumentKind>(payload.index()); }
};

extern const char* const kToolVersion;

/// Compact JSON with sorted keys; rationals as "p/q".
std::string serialize(const Document& d, bool pretty = false);
/// Throws PARSE_ERROR with line and column on malformed JSON, and on schema violations
/// with the JSON pointer of the offending value. Library invariants (continuity, purity,
/// ...) raise their own codes.
Document parse_document(const std::string& text);
Document read_document(const std::string& path);

/// Structural equality of payloads; timing is ignored.
bool documents_equal(const Document& a, const Document& b);

/// Human-readable rendering used by the CLI without --json.
std::string describe(const Document& d);

}  // namespace tropo
