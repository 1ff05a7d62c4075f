#pragma once

#include <string>

#include "json.hpp"

#include "expstar/fps/series.hpp"

namespace expstar::fps {

/// [numerator, denominator] of a rational. Entries that do not fit in 64 bits are
/// written as decimal strings.
nlohmann::json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const nlohmann::json& j);

/// One record per stored term, in canonical term order:
/// {"exponents": [...], "re": [p, q], "im": [p, q]}.
nlohmann::json term_records(const TruncatedSeries& s);

/// Inverse of term_records for a ring of the given shape.
TruncatedSeries series_from_records(const nlohmann::json& records, int n_vars, int order);

}  // namespace expstar::fps
