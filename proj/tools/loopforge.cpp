// loopforge: command-line front end.
//
// Exit codes: 0 success, 1 a checked property is violated, 2 domain error or
// resource cap, 64 usage error, 65 malformed JSON input.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopforge/barcodes.hpp"
#include "loopforge/bounds.hpp"
#include "loopforge/curves.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/growth.hpp"
#include "loopforge/io.hpp"
#include "loopforge/turaev.hpp"

using namespace loopforge;

namespace {

constexpr int kExitViolated = 1;
constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitBadJson = 65;

// Raised for problems in JSON inputs (files or --config), as opposed to
// malformed command-line arguments.
struct BadJson : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t max_classes = GrowthOptions{}.max_classes;
  std::size_t max_word_len = 0;
  int n_max = 10;
  std::string presentation = "F3";
  std::string format = "json";
  std::uint64_t seed = 1;

  GrowthOptions growth() const { return {max_classes, max_word_len}; }
};

template <class F>
auto from_json_input(F&& f) {
  try {
    return f();
  } catch (const MalformedInput& e) {
    throw BadJson(e.what());
  }
}

void load_config(RunConfig& cfg, const std::string& path) {
  Json j = from_json_input([&] { return read_json_file(path); });
  if (!j.is_object()) throw BadJson("config must be a JSON object");
  auto positive = [&](const char* key, auto& slot) {
    if (!j.contains(key)) return;
    const Json& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() <= 0)
      throw BadJson(std::string("config field \"") + key + "\" must be a positive integer");
    slot = static_cast<std::remove_reference_t<decltype(slot)>>(v.get<long long>());
  };
  positive("max_classes", cfg.max_classes);
  positive("max_word_len", cfg.max_word_len);
  positive("n_max", cfg.n_max);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw BadJson("config field \"seed\" must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  for (const char* key : {"presentation", "format"}) {
    if (!j.contains(key)) continue;
    if (!j[key].is_string()) throw BadJson(std::string("config field \"") + key + "\" must be a string");
    (std::string(key) == "format" ? cfg.format : cfg.presentation) = j[key].get<std::string>();
  }
}

void apply_env(RunConfig& cfg) {
  auto read = [](const char* name, auto& slot) {
    const char* v = std::getenv(name);
    if (!v) return;
    char* end = nullptr;
    long long x = std::strtoll(v, &end, 10);
    if (*v == '\0' || *end != '\0' || x <= 0) throw UsageError(std::string(name) + " must be a positive integer");
    slot = static_cast<std::remove_reference_t<decltype(slot)>>(x);
  };
  read("LOOPFORGE_MAX_CLASSES", cfg.max_classes);
  read("LOOPFORGE_MAX_WORD_LEN", cfg.max_word_len);
  read("LOOPFORGE_N_MAX", cfg.n_max);
}

Presentation presentation_of(const RunConfig& cfg, int genus) {
  if (genus > 0) return Presentation::surface(genus);
  try {
    return Presentation::parse_name(cfg.presentation);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

ReducedWord arg_word(const Presentation& p, const std::string& text) {
  try {
    return ReducedWord::parse(p, text);
  } catch (const MalformedInput& e) {
    throw UsageError(e.what());
  }
}

// Human-readable rendering with the same fields as the JSON.
void print_text(const Json& j, std::ostream& os) {
  if (!j.is_object()) {
    os << j.dump() << '\n';
    return;
  }
  for (const auto& [k, v] : j.items()) {
    os << k << ": ";
    if (v.is_string())
      os << v.get<std::string>();
    else
      os << v.dump();
    os << '\n';
  }
}

struct Output {
  Json body;
  int code = 0;
  std::optional<std::string> csv;  // used when the format is csv
};

Json discs_summary(const CurveDiagram& c) {
  auto local = detect_bigons_monogons(c);
  auto singular = singular_discs(c, GateSystem::standard(c.atlas()));
  return Json{{"bigons_monogons", discs_to_json(local)},
              {"singular_discs", discs_to_json(singular)},
              {"minimal", local.empty() && singular.empty()}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json tinf_json(const TinfResult& r) {
  Json T = Json::array();
  for (const auto& [l, rr] : r.best_T) T.push_back({{"l", l.to_string()}, {"r", rr.to_string()}});
  Json subset = Json::array();
  for (const auto& s : r.best.subset) subset.push_back(s.to_string());
  return Json{{"estimate", r.estimate},
              {"certified_lower", r.certified_lower},
              {"zero", r.zero},
              {"best_T", T},
              {"side", r.best.side},
              {"subset", subset},
              {"trace", r.zero ? Json(nullptr) : trace_to_json(r.best.trace)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loops on surfaces: words, curves, cobrackets, growth, forcing bounds and barcodes."};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  std::string config_path, format;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "RunConfig JSON file")->check(CLI::ExistingFile);
  app.add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
  app.add_option("--seed", seed, "seed recorded for replay");

  std::function<Output()> action;

  // word -------------------------------------------------------------------
  auto* word = app.add_subcommand("word", "word problem, conjugacy and g-equivalence");
  word->require_subcommand(1);
  word->fallthrough();
  int genus = 0;
  std::string presentation_name;
  auto add_pres = [&](CLI::App* c) {
    c->add_option("--genus", genus, "use the genus-g surface group")->check(CLI::Range(2, 64));
    c->add_option("--presentation", presentation_name, "F<r>, S<g> or surface:<g>");
  };
  std::string w1, w2;
  auto pres = [&] {
    if (!presentation_name.empty()) cfg.presentation = presentation_name;
    return presentation_of(cfg, genus);
  };
  auto* w_reduce = word->add_subcommand("reduce", "normal form");
  w_reduce->add_option("word", w1)->required();
  add_pres(w_reduce);
  w_reduce->callback([&] {
    action = [&] {
      Presentation p = pres();
      ReducedWord w = arg_word(p, w1);
      ReducedWord n = normal_form(w);
      return Output{Json{{"presentation", p.name()}, {"input", w1}, {"reduced", n.empty() ? "ε" : n.to_string()},
                         {"identity", n.empty()}}};
    };
  });
  auto* w_ident = word->add_subcommand("identity", "decide w = 1");
  w_ident->add_option("word", w1)->required();
  add_pres(w_ident);
  w_ident->callback([&] {
    action = [&] {
      Presentation p = pres();
      return Output{Json{{"presentation", p.name()}, {"word", w1}, {"identity", is_identity(arg_word(p, w1))}}};
    };
  });
  auto* w_conj = word->add_subcommand("conj", "decide conjugacy");
  w_conj->add_option("first", w1)->required();
  w_conj->add_option("second", w2)->required();
  add_pres(w_conj);
  w_conj->callback([&] {
    action = [&] {
      Presentation p = pres();
      ReducedWord x = arg_word(p, w1), y = arg_word(p, w2);
      return Output{Json{{"presentation", p.name()},
                         {"conjugate", are_conjugate(x, y)},
                         {"canonical", {conj_canonical(x).canonical.to_string(), conj_canonical(y).canonical.to_string()}}}};
    };
  });
  auto* w_gequiv = word->add_subcommand("gequiv", "canonical representative of [x]_g");
  w_gequiv->add_option("g", w1)->required();
  w_gequiv->add_option("x", w2)->required();
  add_pres(w_gequiv);
  w_gequiv->callback([&] {
    action = [&] {
      Presentation p = pres();
      ReducedWord g = arg_word(p, w1), x = arg_word(p, w2);
      return Output{Json{{"presentation", p.name()}, {"g", g.to_string()}, {"x", x.to_string()},
                         {"canonical_rep", g_equiv_canonical(g, x).canonical_rep.to_string()}}};
    };
  });
  int k_max = 10;
  auto* w_fk = word->add_subcommand("fk", "non-triviality of f_k in genus 2 for |k| <= K");
  w_fk->add_option("--k-max", k_max)->check(CLI::Range(0, 1000));
  w_fk->callback([&] {
    action = [&] {
      Json rows = Json::array();
      bool all = true;
      for (int k = -k_max; k <= k_max; ++k) {
        bool id = is_identity(f_k_word(k));
        all = all && !id;
        rows.push_back({{"k", k}, {"identity", id}});
      }
      return Output{Json{{"k_max", k_max}, {"all_nontrivial", all}, {"rows", rows}}, all ? 0 : kExitViolated};
    };
  });

  // curve ------------------------------------------------------------------
  auto* curve = app.add_subcommand("curve", "read a curve diagram: word, self-intersections, disc certificates");
  std::string curve_path;
  curve->add_option("file", curve_path, "curve JSON")->required()->check(CLI::ExistingFile);
  curve->callback([&] {
    action = [&] {
      CurveDiagram c = from_json_input([&] { return curve_from_json(read_json_file(curve_path)); });
      auto pts = self_intersections(c);
      Json out{{"word", read_word(c).to_string()}, {"si", pts.size()}, {"intersections", intersections_to_json(pts)}};
      Json discs = discs_summary(c);
      for (auto& [k, v] : discs.items()) out[k] = v;
      return Output{out};
    };
  });

  // mu ---------------------------------------------------------------------
  auto* mu = app.add_subcommand("mu", "the refined cobracket of a curve or of Gamma_{m,n}");
  int m = 0, n = 0;
  bool closed_form = false, push = false;
  std::string mu_curve;
  mu->add_option("file", mu_curve, "curve JSON")->check(CLI::ExistingFile);
  mu->add_option("--m", m);
  mu->add_option("--n", n);
  mu->add_flag("--closed-form", closed_form, "use the double-sum formula instead of the geometry");
  mu->add_flag("--push", push, "push forward to the genus-2 surface group");
  mu->callback([&] {
    action = [&] {
      MuElement e;
      if (!mu_curve.empty())
        e = mu_of_curve(from_json_input([&] { return curve_from_json(read_json_file(mu_curve)); }));
      else if (m == 0 && n == 0)
        throw UsageError("give a curve file or --m and --n");
      else
        e = closed_form ? mu_eggbeater_closed_form(m, n) : mu_of_curve(make_eggbeater_curve(m, n));
      Json out{{"mu", mu_to_json(e)}, {"comp", comp_to_json(comp(e))}};
      if (push) {
        auto r = pushforward_mu(e, PushforwardMap::genus2());
        out["pushforward"] = {{"mu", mu_to_json(r.mu)}, {"comp", comp_to_json(comp(r.mu))},
                              {"cancellations", r.report.size()}, {"report", events_to_json(r.report)}};
      }
      return Output{out};
    };
  });

  // growth -----------------------------------------------------------------
  auto* growth = app.add_subcommand("growth", "conjugacy-class growth of products from S, or T-infinity of a mu");
  std::vector<std::string> symbols;
  std::string tinf_path, policy = "canonical";
  std::optional<int> n_max_arg;
  bool gamma_t = false;
  growth->add_option("-s,--symbol", symbols, "an element of S (repeatable)");
  growth->add_option("--n-max", n_max_arg)->check(CLI::Range(0, 100000));
  growth->add_option("--tinf", tinf_path, "mu JSON: estimate T-infinity")->check(CLI::ExistingFile);
  growth->add_flag("--push", push, "with --tinf: push mu forward to genus 2 first");
  growth->add_flag("--gamma-t", gamma_t, "with --tinf: only Gamma_T for T = Comp");
  growth->add_option("--rep-policy", policy)->check(CLI::IsMember({"canonical", "as_given"}));
  add_pres(growth);
  growth->callback([&] {
    action = [&]() -> Output {
      if (n_max_arg) cfg.n_max = *n_max_arg;
      const GrowthOptions opts = cfg.growth();
      if (!tinf_path.empty()) {
        MuElement e = from_json_input([&] {
          Json j = read_json_file(tinf_path);
          // Accept the output of `mu` as well as a bare mu object.
          return mu_from_json(j.is_object() && !j.contains("g") && j.contains("mu") ? j["mu"] : j);
        });
        if (push) e = pushforward_mu(e, PushforwardMap::genus2()).mu;
        if (gamma_t) {
          auto c = comp(e);
          if (c.pairs.empty()) throw DomainError("Comp(mu) is empty");
          auto r = gamma_T(e.base(), c.pairs, cfg.n_max,
                           policy == "canonical" ? RepPolicy::canonical : RepPolicy::as_given, opts);
          Json subset = Json::array();
          for (const auto& s : r.subset) subset.push_back(s.to_string());
          return Output{Json{{"estimate", r.trace.tail_slope}, {"certified_lower", r.trace.certificate},
                             {"side", r.side}, {"subset", subset}, {"candidates", r.candidates},
                             {"trace", trace_to_json(r.trace)}},
                        0, trace_to_csv(r.trace)};
        }
        auto r = tinf_estimate(e, cfg.n_max, opts);
        return Output{tinf_json(r), 0, r.zero ? std::nullopt : std::optional(trace_to_csv(r.best.trace))};
      }
      Presentation p = pres();
      std::vector<ReducedWord> elems;
      for (const auto& s : symbols) elems.push_back(arg_word(p, s));
      SymbolSet S(p, elems);
      try {
        auto t = gamma_estimate(S, cfg.n_max, opts);
        Json out{{"presentation", p.name()}, {"symbols", symbols}};
        Json tj = trace_to_json(t);
        for (auto& [k, v] : tj.items()) out[k] = v;
        return Output{out, 0, trace_to_csv(t)};
      } catch (const BallLimit& e) {
        std::vector<std::size_t> partial = e.partial();
        Json rows = Json::array();
        for (std::size_t i = 1; i < partial.size(); ++i) rows.push_back({{"n", i}, {"nhat", partial[i]}});
        return Output{Json{{"error", e.what()}, {"partial", rows}}, kExitDomain};
      }
    };
  });

  // eggbeater --------------------------------------------------------------
  auto* egg = app.add_subcommand("eggbeater", "Gamma_{m,n}: si, mu, Comp, pushforward and bounds");
  EggbeaterInputs in;
  std::optional<long> word_len;
  bool verify = false, estimate = false, emit_curve = false;
  int table = 0;
  egg->add_option("--m", in.m);
  egg->add_option("--n", in.n);
  egg->add_option("--c0", in.c0, "constant of the entropy upper bound (user supplied)");
  egg->add_option("--k", in.k, "twist parameter of the upper bound");
  egg->add_option("--word-len", word_len, "word length in the upper bound (default m + n)");
  egg->add_option("--M", in.M, "Hofer norm M_l");
  egg->add_option("--delta", in.delta, "persistence constant delta (user supplied)");
  egg->add_option("--C", in.C, "persistence constant C (user supplied)");
  egg->add_flag("--verify", verify, "cross-check geometric mu against the closed form");
  egg->add_flag("--emit-curve", emit_curve, "print only the curve JSON of Gamma_{m,n}");
  egg->add_flag("--estimate-tinf", estimate, "estimate T-infinity by enumeration");
  egg->add_option("--n-max", n_max_arg)->check(CLI::Range(2, 100000));
  egg->add_option("--table", table, "si and minimality for all 1 <= m, n <= K")->check(CLI::Range(1, 50));
  egg->callback([&] {
    action = [&]() -> Output {
      if (n_max_arg) cfg.n_max = *n_max_arg;
      if (table > 0) {
        Json rows = Json::array();
        bool ok = true;
        for (int i = 1; i <= table; ++i)
          for (int j = 1; j <= table; ++j) {
            auto t0 = std::chrono::steady_clock::now();
            auto c = make_eggbeater_curve(i, j);
            std::size_t si = self_intersections(c).size();
            bool minimal = detect_bigons_monogons(c).empty();
            Json row{{"m", i}, {"n", j}, {"si", si}, {"expected", eggbeater_si(i, j)}, {"minimal", minimal}};
            bool good = static_cast<long>(si) == eggbeater_si(i, j) && minimal;
            if (verify) {
              bool same = mu_of_curve(c) == mu_eggbeater_closed_form(i, j);
              row["mu_matches"] = same;
              good = good && same;
            }
            row["seconds"] = seconds_since(t0);
            ok = ok && good;
            rows.push_back(row);
          }
        return Output{Json{{"rows", rows}, {"all_match", ok}}, ok ? 0 : kExitViolated};
      }
      if (emit_curve) return Output{curve_to_json(make_eggbeater_curve(in.m, in.n))};
      in.word_len = word_len.value_or(static_cast<long>(in.m) + in.n);
      EggbeaterReport rep = eggbeater_report(in);
      auto c = make_eggbeater_curve(in.m, in.n);
      MuElement e = mu_of_curve(c);
      Json out = report_to_json(rep);
      out["word"] = read_word(c).to_string();
      out["si_counted"] = self_intersections(c).size();
      Json discs = discs_summary(c);
      for (auto& [k, v] : discs.items()) out[k] = v;
      out["mu"] = mu_to_json(e);
      out["comp"] = comp_to_json(comp(e));
      auto pr = pushforward_mu(e, PushforwardMap::genus2());
      out["pushforward"] = {{"mu", mu_to_json(pr.mu)}, {"cancellations", pr.report.size()},
                            {"report", events_to_json(pr.report)}};
      int code = 0;
      if (verify) {
        bool same = e == mu_eggbeater_closed_form(in.m, in.n);
        out["mu_matches_closed_form"] = same;
        if (!same) code = kExitViolated;
      }
      if (estimate) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = tinf_estimate(e, cfg.n_max, cfg.growth());
        out["tinf_estimate"] = tinf_json(r);
        out["tinf_estimate"]["n_max"] = cfg.n_max;
        out["tinf_estimate"]["seconds"] = seconds_since(t0);
      }
      return Output{out, code};
    };
  });

  // bound ------------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "forcing inequalities");
  bound->require_subcommand(1);
  bound->fallthrough();
  OrbitClassData od;
  double tinf_value = -1, h = 0, K = 0;
  int compare_max = 20;
  auto* b_entropy = bound->add_subcommand("entropy", "(m/q) max{log(si+1)/16, log 2 / 2}");
  b_entropy->add_option("--q", od.q);
  b_entropy->add_option("--m", od.m);
  b_entropy->add_option("--si", od.si)->required();
  b_entropy->callback([&] {
    action = [&] {
      double v = entropy_bound(od);
      return Output{Json{{"q", od.q}, {"m", od.m}, {"si", od.si}, {"bound", v},
                         {"branch", entropy_branch(od) == EntropyBranch::self_intersection ? "si" : "log2/2"}}};
    };
  });
  auto* b_hom = bound->add_subcommand("homotopical", "T-infinity / q");
  b_hom->add_option("--q", od.q);
  b_hom->add_option("--tinf", tinf_value)->required();
  b_hom->callback([&] {
    action = [&] {
      od.tinf = tinf_value;
      return Output{Json{{"q", od.q}, {"tinf", tinf_value}, {"bound", homotopical_bound(od)}}};
    };
  });
  auto* b_gap = bound->add_subcommand("gap", "max(h_top - K, 0)");
  b_gap->add_option("--h-top", h, "h_top of the unperturbed map")->required();
  b_gap->add_option("--K", K)->required();
  b_gap->callback([&] { action = [&] { return Output{Json{{"h_top", h}, {"K", K}, {"floor", corollary_gap(h, K)}}}; }; });
  auto* b_cmp = bound->add_subcommand("compare", "log(ceil(mn/2)+1) > log(si+1)/16 for all m, n <= K");
  b_cmp->add_option("--max", compare_max)->check(CLI::Range(1, 1000));
  b_cmp->callback([&] {
    action = [&] {
      bool all = true;
      Json failures = Json::array();
      for (int i = 1; i <= compare_max; ++i)
        for (int j = 1; j <= compare_max; ++j) {
          double lhs = eggbeater_tinf_lower(i, j), rhs = std::log1p(static_cast<double>(eggbeater_si(i, j))) / 16;
          if (!(lhs > rhs)) {
            all = false;
            failures.push_back({{"m", i}, {"n", j}});
          }
        }
      OrbitClassData a{1, 1, 255, std::nullopt}, b{1, 1, 256, std::nullopt};
      bool crossover = entropy_branch(a) == EntropyBranch::log2_half &&
                       entropy_branch(b) == EntropyBranch::self_intersection;
      return Output{Json{{"max", compare_max}, {"holds", all}, {"failures", failures},
                         {"crossover_255_256", crossover}},
                    all && crossover ? 0 : kExitViolated};
    };
  });

  // barcode ----------------------------------------------------------------
  auto* barcode = app.add_subcommand("barcode", "bottleneck distance, delta-matchings, stability");
  barcode->require_subcommand(1);
  barcode->fallthrough();
  std::string f1, f2;
  double delta = 0, hofer = 0;
  std::optional<double> assert_hofer;
  auto files = [&](CLI::App* c) {
    c->add_option("first", f1)->required()->check(CLI::ExistingFile);
    c->add_option("second", f2)->required()->check(CLI::ExistingFile);
  };
  auto load = [&](const std::string& p) { return from_json_input([&] { return barcode_from_json(read_json_file(p)); }); };
  auto dist_json = [](double d) { return std::isinf(d) ? Json("inf") : Json(d); };
  auto* bc_b = barcode->add_subcommand("bottleneck", "exact bottleneck distance with a witness");
  files(bc_b);
  bc_b->add_option("--assert-hofer", assert_hofer, "exit 1 unless the distance is at most this");
  bc_b->callback([&] {
    action = [&] {
      Barcode A = load(f1), B = load(f2);
      auto r = bottleneck(A, B);
      Json out{{"distance", dist_json(r.distance)}, {"matching", matching_to_json(A, B, r.witness)}};
      int code = 0;
      if (assert_hofer) {
        auto s = stability_check(A, B, *assert_hofer);
        bool ok = s.verdict == Stability::consistent;
        out["hofer"] = *assert_hofer;
        out["stability"] = ok ? "consistent" : "violated";
        code = ok ? 0 : kExitViolated;
      }
      return Output{out, code};
    };
  });
  auto* bc_m = barcode->add_subcommand("match", "a delta-matching, if one exists");
  files(bc_m);
  bc_m->add_option("--delta", delta)->required();
  bc_m->callback([&] {
    action = [&] {
      Barcode A = load(f1), B = load(f2);
      auto r = delta_match(A, B, delta);
      Json out{{"delta", delta}, {"exists", static_cast<bool>(r)}};
      if (r) out["matching"] = matching_to_json(A, B, *r);
      return Output{out};
    };
  });
  auto* bc_s = barcode->add_subcommand("stability", "d_bot <= Hofer distance");
  files(bc_s);
  bc_s->add_option("--hofer", hofer)->required();
  bc_s->callback([&] {
    action = [&] {
      auto s = stability_check(load(f1), load(f2), hofer);
      bool ok = s.verdict == Stability::consistent;
      return Output{Json{{"distance", dist_json(s.distance)}, {"hofer", hofer},
                         {"verdict", ok ? "consistent" : "violated"}},
                    ok ? 0 : kExitViolated};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (!config_path.empty()) load_config(cfg, config_path);
    apply_env(cfg);
    if (!format.empty()) cfg.format = format;
    if (seed) cfg.seed = *seed;
    if (cfg.format != "json" && cfg.format != "text" && cfg.format != "csv")
      throw BadJson("config field \"format\" must be json, text or csv");
    Output out = action();
    if (cfg.format == "csv") {
      if (!out.csv) throw UsageError("csv output is only available for growth traces");
      std::cout << *out.csv;
    } else if (cfg.format == "text") {
      print_text(out.body, std::cout);
    } else {
      std::cout << out.body.dump(2) << '\n';
    }
    return out.code;
  } catch (const BadJson& e) {
    std::cerr << "malformed input: " << e.what() << '\n';
    return kExitBadJson;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const MalformedInput& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}
