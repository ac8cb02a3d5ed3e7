#include "loopforge/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "loopforge/errors.hpp"

namespace loopforge {

namespace {

void check(const OrbitClassData& d) {
  if (d.q < 1) throw DomainError("period q must be at least 1");
  if (d.m < 1) throw DomainError("multiplicity m must be at least 1");
  if (d.si < 0) throw DomainError("self-intersection number must be non-negative");
}

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be a positive number");
}

}  // namespace

EntropyBranch entropy_branch(const OrbitClassData& d) {
  check(d);
  return d.si + 1 > 256 ? EntropyBranch::self_intersection : EntropyBranch::log2_half;
}

double entropy_bound(const OrbitClassData& d) {
  check(d);
  if (d.si == 0) throw InapplicableTheorem("the entropy bound requires a nonzero self-intersection number");
  double term = entropy_branch(d) == EntropyBranch::self_intersection ? std::log1p(static_cast<double>(d.si)) / 16
                                                                     : std::log(2.0) / 2;
  return static_cast<double>(d.m) / static_cast<double>(d.q) * term;
}

double homotopical_bound(const OrbitClassData& d) {
  check(d);
  if (!d.tinf) throw DomainError("the homotopical bound needs a T-infinity value");
  if (!(*d.tinf >= 0)) throw DomainError("T-infinity must be non-negative");
  return *d.tinf / static_cast<double>(d.q);
}

long eggbeater_si(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("m and n must be positive");
  return static_cast<long>(m) * n + static_cast<long>(m - 1) * (n - 1);
}

double eggbeater_tinf_lower(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("m and n must be positive");
  long half = (static_cast<long>(m) * n + 1) / 2;
  return std::log(static_cast<double>(half + 1));
}

EggbeaterReport eggbeater_report(const EggbeaterInputs& in) {
  require_positive(in.c0, "c0");
  require_positive(in.k, "k");
  require_positive(in.M, "M");
  require_positive(in.delta, "delta");
  require_positive(in.C, "C");
  if (in.word_len < 1) throw DomainError("word length must be positive");
  EggbeaterReport r;
  r.inputs = in;
  r.si = eggbeater_si(in.m, in.n);
  r.si_bound = entropy_bound({1, 1, r.si, std::nullopt});
  r.si_term = std::log1p(static_cast<double>(r.si)) / 16;
  r.tinf_lower = eggbeater_tinf_lower(in.m, in.n);
  r.tinf_beats_si_term = r.tinf_lower > r.si_term;
  r.upper_bound = static_cast<double>(in.word_len) * std::log(in.c0 * in.k);
  r.persistence_radius = in.delta * in.M;
  r.persistent_lower = std::log(in.C * in.M * in.M);
  r.conditional_on = {"c0", "delta", "C"};
  return r;
}

double corollary_gap(double h_top_phi, double K) {
  if (!(K >= 0)) throw DomainError("K must be non-negative");
  return std::max(h_top_phi - K, 0.0);
}

}  // namespace loopforge
