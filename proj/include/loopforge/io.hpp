#pragma once

// JSON and CSV forms of the library's values. Parsers throw MalformedInput.

#include <string>

#include <json.hpp>

#include "loopforge/barcodes.hpp"
#include "loopforge/bounds.hpp"
#include "loopforge/curves.hpp"
#include "loopforge/growth.hpp"
#include "loopforge/turaev.hpp"

namespace loopforge {

using Json = nlohmann::ordered_json;

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

// {"presentation": "S2", "word": "g1 g3"}
Json word_to_json(const ReducedWord& w);
ReducedWord word_from_json(const Json& j);

// {"L": "8", "vertices": [{"chart": "V", "x": "1/3", "y": "7/2"}, ...], "basepoint": 0}
Json curve_to_json(const CurveDiagram& c);
CurveDiagram curve_from_json(const Json& j);

// {"presentation": "F3", "g": "a b", "terms": [{"l": "a c A", "r": "a C b", "k": 1}, ...]}
// "presentation" defaults to F3 when absent.
Json mu_to_json(const MuElement& mu);
MuElement mu_from_json(const Json& j);

// {"bars": [{"a": 0.0, "b": 2.5, "mult": 1}, {"a": 1.0, "b": "inf", "mult": 2}]}
Json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const Json& j);

Json matching_to_json(const Barcode& A, const Barcode& B, const Matching& m);
Json discs_to_json(const std::vector<DiscCertificate>& discs);
Json intersections_to_json(const std::vector<IntersectionPoint>& pts);
Json comp_to_json(const Comp& c);
Json events_to_json(const std::vector<CancellationEvent>& events);

// Rows {n, nhat, slope} plus the summary fields.
Json trace_to_json(const GrowthTrace& t);
// Header "n,nhat,slope", one row per n >= 1.
std::string trace_to_csv(const GrowthTrace& t);

Json report_to_json(const EggbeaterReport& r);

}  // namespace loopforge
