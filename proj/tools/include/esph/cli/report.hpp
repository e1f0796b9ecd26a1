#pragma once

// JSON documents emitted by the command-line tool. Keys keep insertion order
// so the output is byte-stable.

#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "esph/harness.hpp"

namespace esph::cli {

using Json = nlohmann::ordered_json;

// Per-instance report: dim, n, generic, counts, census2d (d = 2 only),
// theorems, ears, bm_ears.
Json report_json(const Analysis& a, const InstanceRecord& r);

Json genericity_json(const GenericityReport& g);
Json census_json(const Census2D& c);
Json radii_json(const RadiiReport& r);
Json record_json(const InstanceRecord& r);

// Aggregate counters plus the best instance of a search, if any.
Json theorem_report_json(const TheoremReport& rep);

Json points_json(std::span<const VectorD> points);

// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace esph::cli
