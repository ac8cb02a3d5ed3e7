#include "loopforge/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw MalformedInput("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw MalformedInput(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

// Rationals are "p/q" strings; plain integers are accepted too.
mpq_class rational_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (v.is_number_integer()) return mpq_class(std::to_string(v.get<long long>()));
  if (!v.is_string()) throw MalformedInput(std::string("field \"") + key + "\" must be a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    throw MalformedInput(std::string("field \"") + key + "\": " + e.what());
  }
}

double endpoint(const Json& v, const char* key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  }
  throw MalformedInput(std::string("field \"") + key + "\" must be a number or \"inf\"");
}

Json endpoint_json(double x) { return std::isinf(x) ? Json("inf") : Json(x); }

Presentation presentation_field(const Json& j, const char* fallback) {
  auto it = j.find("presentation");
  std::string name = fallback;
  if (it != j.end()) {
    if (!it->is_string()) throw MalformedInput("field \"presentation\" must be a string");
    name = it->get<std::string>();
  }
  try {
    return Presentation::parse_name(name);
  } catch (const Error& e) {
    throw MalformedInput(e.what());
  }
}

ReducedWord parse_word(const Presentation& p, const std::string& text) {
  try {
    return ReducedWord::parse(p, text);
  } catch (const Error& e) {
    throw MalformedInput(e.what());
  }
}

}  // namespace

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

Json word_to_json(const ReducedWord& w) {
  return Json{{"presentation", w.presentation().name()}, {"word", w.to_string()}};
}

ReducedWord word_from_json(const Json& j) {
  Presentation p = presentation_field(j, "F3");
  return parse_word(p, string_field(j, "word"));
}

Json curve_to_json(const CurveDiagram& c) {
  Json verts = Json::array();
  for (const auto& v : c.vertices())
    verts.push_back({{"chart", chart_name(v.chart)}, {"x", rational_to_string(v.p.x)}, {"y", rational_to_string(v.p.y)}});
  return Json{{"L", rational_to_string(c.atlas().L())}, {"vertices", verts}, {"basepoint", c.basepoint()}};
}

CurveDiagram curve_from_json(const Json& j) {
  mpq_class L = j.is_object() && j.contains("L") ? rational_field(j, "L") : mpq_class(8);
  const Json& vs = field(j, "vertices");
  if (!vs.is_array()) throw MalformedInput("\"vertices\" must be an array");
  std::vector<Vertex> verts;
  for (const auto& v : vs) {
    Chart chart;
    try {
      chart = parse_chart(string_field(v, "chart"));
    } catch (const MalformedInput&) {
      throw;
    } catch (const Error& e) {
      throw MalformedInput(e.what());
    }
    verts.push_back({chart, {rational_field(v, "x"), rational_field(v, "y")}});
  }
  std::size_t base = 0;
  if (j.contains("basepoint")) {
    const Json& b = j["basepoint"];
    if (!b.is_number_unsigned() && !(b.is_number_integer() && b.get<long long>() >= 0))
      throw MalformedInput("\"basepoint\" must be a non-negative integer");
    base = b.get<std::size_t>();
  }
  return CurveDiagram(ChartAtlas(L), std::move(verts), base);
}

Json mu_to_json(const MuElement& mu) {
  Json terms = Json::array();
  for (const auto& t : mu.terms())
    terms.push_back({{"l", t.left.to_string()}, {"r", t.right.to_string()}, {"k", t.coefficient}});
  return Json{{"presentation", mu.base().presentation().name()}, {"g", mu.base().to_string()}, {"terms", terms}};
}

MuElement mu_from_json(const Json& j) {
  Presentation p = presentation_field(j, "F3");
  ReducedWord g = parse_word(p, string_field(j, "g"));
  const Json& ts = field(j, "terms");
  if (!ts.is_array()) throw MalformedInput("\"terms\" must be an array");
  std::vector<TensorTerm> terms;
  for (const auto& t : ts) {
    const Json& k = field(t, "k");
    if (!k.is_number_integer()) throw MalformedInput("\"k\" must be an integer");
    terms.push_back({parse_word(p, string_field(t, "l")), parse_word(p, string_field(t, "r")), k.get<long>()});
  }
  return MuElement::from_terms(g, std::move(terms));
}

Json barcode_to_json(const Barcode& b) {
  Json bars = Json::array();
  for (const auto& x : b.bars()) bars.push_back({{"a", x.a}, {"b", endpoint_json(x.b)}, {"mult", x.mult}});
  return Json{{"bars", bars}};
}

Barcode barcode_from_json(const Json& j) {
  const Json& bs = field(j, "bars");
  if (!bs.is_array()) throw MalformedInput("\"bars\" must be an array");
  std::vector<Bar> bars;
  for (const auto& x : bs) {
    Bar bar{endpoint(field(x, "a"), "a"), endpoint(field(x, "b"), "b"), 1};
    if (x.contains("mult")) {
      if (!x["mult"].is_number_integer()) throw MalformedInput("\"mult\" must be an integer");
      bar.mult = x["mult"].get<long>();
    }
    bars.push_back(bar);
  }
  try {
    return Barcode(std::move(bars));
  } catch (const DomainError& e) {
    throw MalformedInput(e.what());
  }
}

Json matching_to_json(const Barcode& A, const Barcode& B, const Matching& m) {
  auto ea = A.expanded(), eb = B.expanded();
  auto bar = [](const Bar& x) { return Json{{"a", x.a}, {"b", endpoint_json(x.b)}}; };
  Json pairs = Json::array();
  std::vector<char> usedA(ea.size()), usedB(eb.size());
  for (auto [i, j] : m.pairs) {
    pairs.push_back({{"from", bar(ea[i])}, {"to", bar(eb[j])}});
    usedA[i] = usedB[j] = 1;
  }
  Json ua = Json::array(), ub = Json::array();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!usedA[i]) ua.push_back(bar(ea[i]));
  for (std::size_t j = 0; j < eb.size(); ++j)
    if (!usedB[j]) ub.push_back(bar(eb[j]));
  return Json{{"pairs", pairs}, {"unmatched_first", ua}, {"unmatched_second", ub}};
}

Json discs_to_json(const std::vector<DiscCertificate>& discs) {
  Json out = Json::array();
  for (const auto& d : discs) {
    Json arcs = Json::array();
    for (const auto& a : d.arcs) arcs.push_back({{"from", rational_to_string(a.from)}, {"to", rational_to_string(a.to)}});
    out.push_back({{"kind", d.kind == DiscCertificate::Kind::bigon ? "bigon" : "monogon"},
                   {"points", d.points},
                   {"arcs", arcs},
                   {"boundary", d.boundary.to_string()}});
  }
  return out;
}

Json intersections_to_json(const std::vector<IntersectionPoint>& pts) {
  Json out = Json::array();
  for (const auto& y : pts)
    out.push_back({{"t", rational_to_string(y.t)},
                   {"t_prime", rational_to_string(y.t_prime)},
                   {"chart", chart_name(y.chart)},
                   {"x", rational_to_string(y.location.x)},
                   {"y", rational_to_string(y.location.y)},
                   {"square", y.square},
                   {"sign", y.sign}});
  return out;
}

Json comp_to_json(const Comp& c) {
  Json out = Json::array();
  for (const auto& [l, r] : c.pairs) out.push_back({{"l", l.to_string()}, {"r", r.to_string()}});
  return out;
}

Json events_to_json(const std::vector<CancellationEvent>& events) {
  Json out = Json::array();
  for (const auto& e : events)
    out.push_back({{"kind", event_kind_name(e.kind)}, {"terms", e.source_terms}, {"detail", e.detail}});
  return out;
}

Json trace_to_json(const GrowthTrace& t) {
  Json rows = Json::array();
  for (std::size_t n = 1; n < t.counts.size(); ++n) rows.push_back({{"n", n}, {"nhat", t.counts[n]}, {"slope", t.slopes[n]}});
  return Json{{"rows", rows},
              {"window", t.window},
              {"tail_slope", t.tail_slope},
              {"uncorrected_tail_slope", t.uncorrected_tail_slope},
              {"certificate", t.certificate}};
}

std::string trace_to_csv(const GrowthTrace& t) {
  std::ostringstream os;
  os.precision(17);
  os << "n,nhat,slope\n";
  for (std::size_t n = 1; n < t.counts.size(); ++n) os << n << ',' << t.counts[n] << ',' << t.slopes[n] << '\n';
  return os.str();
}

Json report_to_json(const EggbeaterReport& r) {
  const auto& in = r.inputs;
  return Json{{"m", in.m},
              {"n", in.n},
              {"si", r.si},
              {"si_bound", r.si_bound},
              {"si_term", r.si_term},
              {"tinf_lower", r.tinf_lower},
              {"tinf_beats_si_term", r.tinf_beats_si_term},
              {"upper_bound_inputs", {{"c0", in.c0}, {"k", in.k}, {"word_len", in.word_len}}},
              {"upper_bound", r.upper_bound},
              {"persistence_inputs", {{"M", in.M}, {"delta", in.delta}, {"C", in.C}}},
              {"persistence_radius", r.persistence_radius},
              {"persistent_lower", r.persistent_lower},
              {"conditional_on", r.conditional_on}};
}

}  // namespace loopforge
