#pragma once

// Right-hand sides of the forcing inequalities, and the eggbeater report that
// collects them for the family Gamma_{m,n}. Nothing here touches dynamics; the
// constants delta, C and c0 are taken as inputs.

#include <optional>
#include <string>
#include <vector>

namespace loopforge {

struct OrbitClassData {
  long q = 1;   // period
  long m = 1;   // multiplicity of the primitive class
  long si = 0;  // self-intersection number
  std::optional<double> tinf;
};

enum class EntropyBranch { log2_half, self_intersection };

// Which term of max{log(si+1)/16, log 2 / 2} is larger, decided on integers:
// the si term wins exactly when si + 1 > 2^8.
EntropyBranch entropy_branch(const OrbitClassData& d);
// (m/q) max{log(si+1)/16, log 2 / 2}; InapplicableTheorem when si = 0.
double entropy_bound(const OrbitClassData& d);
// tinf / q.
double homotopical_bound(const OrbitClassData& d);

long eggbeater_si(int m, int n);
// log(ceil(mn/2) + 1).
double eggbeater_tinf_lower(int m, int n);

struct EggbeaterInputs {
  int m = 1, n = 1;
  double c0 = 1, k = 1;
  long word_len = 1;
  double M = 1, delta = 1, C = 1;
};

struct EggbeaterReport {
  EggbeaterInputs inputs;
  long si = 0;
  double si_bound = 0;            // entropy_bound at q = m = 1
  double si_term = 0;             // log(si+1)/16
  double tinf_lower = 0;
  bool tinf_beats_si_term = false;
  double upper_bound = 0;         // word_len log(c0 k)
  double persistence_radius = 0;  // delta M
  double persistent_lower = 0;    // log(C M^2)
  std::vector<std::string> conditional_on;  // user-supplied constants
};

EggbeaterReport eggbeater_report(const EggbeaterInputs& in);

// max(h_top_phi - K, 0).
double corollary_gap(double h_top_phi, double K);

}  // namespace loopforge
