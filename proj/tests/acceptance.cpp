// Acceptance runner: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs. Exit status is nonzero when any selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loopforge/barcodes.hpp"
#include "loopforge/bounds.hpp"
#include "loopforge/curves.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/group.hpp"
#include "loopforge/growth.hpp"
#include "loopforge/turaev.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

const Presentation F3 = Presentation::free(3);
const Presentation S2 = Presentation::surface(2);

ReducedWord W(const Presentation& p, const char* s) { return ReducedWord::parse(p, s); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string failed;

  void require(bool ok, const std::string& what) {
    if (!ok) failed += (failed.empty() ? "" : ", ") + what;
    pass = pass && ok;
  }
};

Letters random_word(std::mt19937_64& rng, int letter_count, int len) {
  std::uniform_int_distribution<int> L(0, letter_count - 1);
  Letters w;
  while (static_cast<int>(w.size()) < len) {
    Letter l = static_cast<Letter>(L(rng));
    if (!w.empty() && invert(w.back()) == l) continue;
    w.push_back(l);
  }
  return w;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  double worst = 0;
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto t0 = std::chrono::steady_clock::now();
      auto pts = self_intersections(make_eggbeater_curve(m, n));
      double s = seconds_since(t0);
      worst = std::max(worst, s);
      std::size_t expect = static_cast<std::size_t>(m * n + (m - 1) * (n - 1));
      o.require(pts.size() == expect, "si(" + std::to_string(m) + "," + std::to_string(n) + ")");
      o.require(s < 1.0, "time (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  o.note << "36 cases, slowest " << worst << " s";
}

void criterion2(Outcome& o) {
  std::size_t discs = 0;
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto d = detect_bigons_monogons(make_eggbeater_curve(m, n));
      discs += d.size();
      o.require(d.empty(), "discs on (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  o.note << "36 cases, " << discs << " bigons/monogons";
}

void criterion3(Outcome& o) {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      auto mu = mu_of_curve(make_eggbeater_curve(m, n));
      auto cf = mu_eggbeater_closed_form(m, n);
      o.require(mu == cf, "closed form (" + std::to_string(m) + "," + std::to_string(n) + ")");
    }
  auto ab = W(F3, "a b");
  auto expect = MuElement::from_terms(ab, {{W(F3, "a c A"), W(F3, "a C b"), 1}, {W(F3, "a C b"), W(F3, "a c A"), -1}});
  auto mu11 = mu_of_curve(make_eggbeater_curve(1, 1));
  o.require(mu11 == expect, "mu(ab)");
  o.note << "9 cases; mu(ab) = ";
  for (const auto& t : mu11.terms())
    o.note << (t.coefficient > 0 ? "+" : "-") << "[" << t.left.to_string() << "](x)[" << t.right.to_string() << "] ";
}

void criterion4(Outcome& o) {
  auto f = PushforwardMap::genus2();
  const int cases[][2] = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}};
  std::size_t events = 0;
  for (auto [m, n] : cases) {
    auto mu = mu_eggbeater_closed_form(m, n);
    auto r = pushforward_mu(mu, f);
    events += r.report.size();
    o.require(r.report.empty(), "cancellations (" + std::to_string(m) + "," + std::to_string(n) + ")");
    o.require(r.mu.terms().size() == mu.terms().size(), "term count (" + std::to_string(m) + "," + std::to_string(n) + ")");
  }
  int trivial = 0;
  for (int k = -10; k <= 10; ++k)
    if (is_identity(f_k_word(k))) ++trivial;
  o.require(trivial == 0, "f_k nontrivial");
  o.note << "5 pushforwards, " << events << " events; f_k trivial for " << trivial << " of 21 k";
}

void criterion5(Outcome& o) {
  auto f = PushforwardMap::genus2();
  auto i = [&](const char* s) { return f.apply(W(F3, s)); };
  for (int j = 1; j <= 3; ++j) {
    bool first = are_conjugate(i("c").pow(j), i("a C b").pow(j));
    bool second = are_conjugate(i("a C").pow(j), i("B c").pow(j));
    o.note << "j=" << j << ": [c]~[aC b] " << (first ? "true" : "false") << ", [aC]~[Bc] " << (second ? "true" : "false")
           << "; ";
    o.require(first, "i(c)^" + std::to_string(j) + " ~ i(aC b)^" + std::to_string(j));
    o.require(second, "i(aC)^" + std::to_string(j) + " ~ i(Bc)^" + std::to_string(j));
  }
}

void criterion6(Outcome& o) {
  clear_growth_cache();
  auto t0 = std::chrono::steady_clock::now();
  auto r = tinf_estimate(mu_eggbeater_closed_form(1, 1), 12);
  double s = seconds_since(t0);
  const double l2 = std::log(2.0);
  o.require(r.estimate >= l2 - 0.1 && r.estimate <= l2 + 0.05, "estimate window");
  o.require(r.certified_lower >= l2 - 0.15, "certified lower bound");
  o.require(s < 60, "runtime");
  o.note << "estimate " << r.estimate << ", certified " << r.certified_lower << ", log 2 = " << l2 << ", " << s << " s";
}

void criterion7(Outcome& o) {
  clear_growth_cache();
  auto r = tinf_estimate(mu_eggbeater_closed_form(2, 2), 9);
  const auto& c = r.best.trace.counts;
  o.require(c.size() == 10, "trace length");
  for (int n = 5; n <= 9 && n < static_cast<int>(c.size()); ++n) {
    double bound = std::pow(3.0, n) / n;
    o.require(static_cast<double>(c[n]) >= bound, "N(" + std::to_string(n) + ") >= 3^n/n");
  }
  o.require(r.estimate >= std::log(3.0) - 0.15, "estimate near log 3");
  o.note << "counts n=5..9:";
  for (int n = 5; n <= 9 && n < static_cast<int>(c.size()); ++n) o.note << " " << c[n];
  o.note << ", estimate " << r.estimate << ", tinf_lower " << eggbeater_tinf_lower(2, 2);
}

// Library class and oracle invariants must agree: same class implies equal
// traces and pinch images; distinct classes must be told apart by them or by
// a failed conjugator search.
struct ConjOracle {
  oracle::SurfaceOracle O{3};
  std::vector<oracle::Pinch> pinches = oracle::pinch_maps();

  bool same_invariants(const Letters& a, const Letters& b) const {
    auto ta = O.traces(a), tb = O.traces(b);
    for (std::size_t r = 0; r < ta.size(); ++r)
      if (std::fabs(ta[r] - tb[r]) > 1e-7L * (1 + std::fabs(ta[r]))) return false;
    for (const auto& p : pinches)
      if (oracle::f_cyclic_form(oracle::apply_pinch(p, a)) != oracle::f_cyclic_form(oracle::apply_pinch(p, b)))
        return false;
    return true;
  }

  bool agrees(const Letters& a, const Letters& b, bool lib) const {
    bool inv = same_invariants(a, b);
    if (lib) return inv;
    return !inv || !oracle::conjugate_by_search(O, a, b, 3);
  }
};

void criterion8(Outcome& o) {
  ConjOracle C;
  // Exhaustive word problem and conjugacy up to length 6.
  std::size_t words = 0, id_mismatch = 0, conj_mismatch = 0, searches = 0;
  std::map<Letters, Letters> rep_of;
  for (int len = 0; len <= 6; ++len)
    for (const auto& w : oracle::reduced_words(8, len)) {
      ++words;
      ReducedWord rw(S2, w);
      if (is_identity(rw) != C.O.is_identity(w)) ++id_mismatch;
      if (w.empty()) continue;
      auto [it, fresh] = rep_of.emplace(conj_canonical(rw).canonical.letters(), w);
      if (!fresh && !C.same_invariants(w, it->second)) ++conj_mismatch;
    }
  struct Keyed {
    std::vector<long double> tr;
    Letters w;
  };
  std::vector<Keyed> keyed;
  for (auto& [c, w] : rep_of) keyed.push_back({C.O.traces(w), w});
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) { return a.tr[0] < b.tr[0]; });
  for (std::size_t i = 0; i < keyed.size(); ++i)
    for (std::size_t j = i + 1; j < keyed.size(); ++j) {
      if (keyed[j].tr[0] - keyed[i].tr[0] > 1e-7L * (1 + std::fabs(keyed[i].tr[0]))) break;
      if (!C.same_invariants(keyed[i].w, keyed[j].w)) continue;
      ++searches;
      if (oracle::conjugate_by_search(C.O, keyed[i].w, keyed[j].w, 5)) ++conj_mismatch;
    }
  o.require(id_mismatch == 0, "exhaustive word problem");
  o.require(conj_mismatch == 0, "exhaustive conjugacy");
  o.note << words << " words, " << rep_of.size() << " classes, " << searches << " searches; ";

  // 10^4 sampled words of length <= 10.
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> len(0, 10), coin(0, 3), rot(0, 7), letter(0, 7);
  const Letters R = W(S2, "g1 g2 G1 G2 g3 g4 G3 G4").letters();
  std::size_t sampled_id = 0, sampled_conj = 0, trivial = 0, conjugate = 0;
  for (int i = 0; i < 10000; ++i) {
    Letters w;
    if (coin(rng) == 0) {
      // x r x^-1 with r a rotation of the relator or its inverse: trivial.
      Letters r = coin(rng) < 2 ? R : oracle::f_inverse(R);
      std::rotate(r.begin(), r.begin() + rot(rng), r.end());
      Letter x = static_cast<Letter>(letter(rng));
      w.push_back(x);
      w.insert(w.end(), r.begin(), r.end());
      w.push_back(invert(x));
      w = oracle::f_reduce(w);
    } else {
      w = random_word(rng, 8, len(rng));
    }
    bool lib = is_identity(ReducedWord(S2, w));
    trivial += lib;
    if (lib != C.O.is_identity(w)) ++sampled_id;

    Letters u = random_word(rng, 8, 1 + len(rng) % 10), v;
    switch (coin(rng)) {
      case 0:
        v = u;
        std::rotate(v.begin(), v.begin() + static_cast<long>(rng() % u.size()), v.end());
        v = oracle::f_reduce(v);
        break;
      case 1: {
        Letter x = static_cast<Letter>(letter(rng));
        v.push_back(x);
        v.insert(v.end(), u.begin(), u.end());
        v.push_back(invert(x));
        v = oracle::f_reduce(v);
        break;
      }
      default:
        v = random_word(rng, 8, static_cast<int>(u.size()));
    }
    bool c = are_conjugate(ReducedWord(S2, u), ReducedWord(S2, v));
    conjugate += c;
    if (!C.agrees(u, v, c)) ++sampled_conj;
  }
  o.require(sampled_id == 0, "sampled word problem");
  o.require(sampled_conj == 0, "sampled conjugacy");
  o.note << "10^4 samples (" << trivial << " trivial, " << conjugate << " conjugate pairs); ";

  // mu of Gamma_{2,2} under random subdivisions and basepoint slides.
  const auto base = make_eggbeater_curve(2, 2);
  const auto mu = mu_of_curve(base);
  std::size_t changed = 0, slides = 0;
  std::uniform_int_distribution<int> num(1, 97), subs(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    CurveDiagram c = base;
    for (int k = subs(rng); k > 0;) {
      // Points landing on a gate or another strand break general position; draw again.
      try {
        std::size_t seg = rng() % c.size();
        CurveDiagram next = c.subdivided(seg, mpq_class(num(rng), 98));
        CurveReading check(next, GateSystem::standard(next.atlas()));
        self_intersections(next);
        c = std::move(next);
        --k;
      } catch (const TransversalityError&) {
      } catch (const GeneralPositionError&) {
      }
    }
    if (coin(rng) < 2) {
      CurveReading r(c, GateSystem::standard(c.atlas()));
      auto pts = self_intersections(c);
      std::vector<std::size_t> clear;
      for (std::size_t b = 1; b < c.size(); ++b) {
        mpq_class t(static_cast<long>(b));
        bool ok = r.between(0, t).empty();
        for (const auto& y : pts) ok = ok && y.t > t;
        if (ok) clear.push_back(b);
      }
      if (!clear.empty()) {
        c = c.with_basepoint(clear[rng() % clear.size()]);
        ++slides;
      }
    }
    if (!(mu_of_curve(c) == mu)) ++changed;
  }
  o.require(changed == 0, "mu invariance");
  o.require(slides > 0, "basepoint slides exercised");
  o.note << "10^3 reparameterizations (" << slides << " with slides), " << changed << " changed mu";
}

void criterion9(Outcome& o) {
  auto orbit = [](long si) { return OrbitClassData{1, 1, si, std::nullopt}; };
  o.require(entropy_branch(orbit(255)) == EntropyBranch::log2_half, "si = 255 on the log 2 / 2 branch");
  o.require(entropy_branch(orbit(256)) == EntropyBranch::self_intersection, "si = 256 on the si branch");
  o.require(entropy_bound(orbit(256)) > std::log(2.0) / 2, "si = 256 exceeds log 2 / 2");
  o.require(std::fabs(entropy_bound(orbit(255)) - std::log(2.0) / 2) < 1e-15, "si = 255 equals log 2 / 2");
  int holds = 0;
  for (int m = 1; m <= 20; ++m)
    for (int n = 1; n <= 20; ++n) {
      long si = eggbeater_si(m, n);
      double lhs = std::log(static_cast<double>((m * n + 1) / 2 + 1));
      bool ok = eggbeater_tinf_lower(m, n) == lhs && lhs > std::log(static_cast<double>(si + 1)) / 16;
      holds += ok;
    }
  o.require(holds == 400, "comparison for all 400 (m, n)");
  o.note << "crossover between si = 255 and 256; comparison holds for " << holds << "/400";
}

Barcode random_barcode(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 8), coin(0, 5);
  std::uniform_real_distribution<double> pos(-10, 10), len(0.01, 8);
  std::vector<Bar> bars;
  for (int k = count(rng); k > 0; --k) {
    double a = pos(rng);
    bars.push_back({a, coin(rng) == 0 ? kInf : a + len(rng), 1});
  }
  return Barcode(bars);
}

void criterion10(Outcome& o) {
  std::mt19937_64 rng(424242);
  std::size_t violations = 0, finite = 0;
  for (int i = 0; i < 1000; ++i) {
    Barcode A = random_barcode(rng), B = random_barcode(rng), C = random_barcode(rng);
    double ab = bottleneck(A, B).distance, ba = bottleneck(B, A).distance;
    double bc = bottleneck(B, C).distance, ac = bottleneck(A, C).distance;
    if (bottleneck(A, A).distance != 0) ++violations;
    if (!(ab == ba || std::fabs(ab - ba) <= 1e-9)) ++violations;
    if (std::isfinite(ab) && std::isfinite(bc) && ac > ab + bc + 1e-9) ++violations;
    if (std::isfinite(ac)) ++finite;
  }
  o.require(violations == 0, "metric axioms");

  o.require(bottleneck(Barcode({{0, 4, 1}}), Barcode({{1, 3, 1}})).distance == 1.0, "d({(0,4]},{(1,3]}) = 1");
  o.require(bottleneck(Barcode({{0, 2, 1}}), Barcode()).distance == 1.0, "d({(0,2]}, empty) = 1");

  // A bar of length L = 2 delta M + 1 persists under a perturbation of Hofer
  // size below delta M and still has a partner of length >= 1; a perturbation
  // that destroys it must be reported as violating stability at that size.
  std::uniform_real_distribution<double> U(-1, 1);
  int scenarios = 0, consistent = 0, flagged = 0;
  for (double deltaM : {0.5, 2.0, 10.0, 75.0})
    for (int t = 0; t < 25; ++t) {
      const double L = 2 * deltaM + 1;
      Barcode phi({{0, L, 1}, {-3, kInf, 1}});
      const double h = deltaM * (0.5 + 0.49 * (U(rng) + 1) / 2);
      auto jig = [&] { return h * 0.999 * U(rng); };
      Barcode psi({{jig(), L + jig(), 1}, {-3 + jig(), kInf, 1}, {20 * L, 20 * L + h, 1}});
      ++scenarios;
      auto st = stability_check(phi, psi, h);
      auto bn = bottleneck(phi, psi);
      auto ep = phi.expanded(), es = psi.expanded();
      bool survived = false;
      for (auto [i, j] : bn.witness.pairs)
        if (!ep[i].infinite()) survived = es[j].length() >= 1;
      if (st.verdict == Stability::consistent && survived) ++consistent;

      Barcode killed({{-3 + jig(), kInf, 1}});
      if (stability_check(phi, killed, h).verdict == Stability::violated) ++flagged;
    }
  o.require(consistent == scenarios, "surviving bar scenarios");
  o.require(flagged == scenarios, "destroyed bar flagged");
  o.note << "1000 triples (" << finite << " finite d(A,C)), " << violations << " axiom violations; " << consistent
         << "/" << scenarios << " survival scenarios consistent, " << flagged << "/" << scenarios
         << " destroyed bars flagged";
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"self-intersection formula", criterion1},
      {"minimality certificates", criterion2},
      {"mu closed form", criterion3},
      {"non-cancellation under pushforward", criterion4},
      {"conjugacy relations of the embedding", criterion5},
      {"T-infinity of [ab]", criterion6},
      {"growth lower-bound shape", criterion7},
      {"oracle equivalence", criterion8},
      {"bound arithmetic", criterion9},
      {"bottleneck distance", criterion10},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  if (argc > 1 && (only < 1 || only > static_cast<int>(all.size()))) {
    std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], all.size());
    return 64;
  }
  int failures = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (only != 0 && only != static_cast<int>(k + 1)) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      all[k].run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    std::string note = o.note.str();
    if (!o.failed.empty()) note += " [failed: " + o.failed + "]";
    std::printf("%s %zu %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", k + 1, all[k].title, seconds_since(t0),
                note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
