#pragma once

// Conjugacy-class growth of products: N^(n, S) counts the conjugacy classes
// of products of at most n factors from S. Gamma estimates and the T^inf
// estimator built on top of it.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/group.hpp"
#include "loopforge/turaev.hpp"

namespace loopforge {

struct GrowthOptions {
  // Cap on classes, and on the projected number of products in the next level.
  std::size_t max_classes = 10'000'000;
  // Longest product word allowed (sum of factor lengths); 0 disables the check.
  std::size_t max_word_len = 0;
};

class SymbolSet {
 public:
  SymbolSet(Presentation pres, std::vector<ReducedWord> elements);

  const Presentation& presentation() const { return pres_; }
  const std::vector<ReducedWord>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  // Order-independent identity used for caching.
  std::string key() const;

 private:
  Presentation pres_;
  std::vector<ReducedWord> elements_;
};

// Thrown when the enumeration would exceed the configured cap. Carries the
// counts N^(0..k) completed before giving up.
class BallLimit : public ResourceLimit {
 public:
  BallLimit(const std::string& what, std::vector<std::size_t> partial)
      : ResourceLimit(what), partial_(std::move(partial)) {}
  const std::vector<std::size_t>& partial() const { return partial_; }

 private:
  std::vector<std::size_t> partial_;
};

// N^(0..n_max, S). Results are cached per symbol set.
std::vector<std::size_t> nhat_counts(const SymbolSet& S, int n_max, const GrowthOptions& opts = {});
std::size_t nhat(int n, const SymbolSet& S, const GrowthOptions& opts = {});
// The classes themselves, sorted by canonical word.
std::vector<ConjClass> ball(int n, const SymbolSet& S, const GrowthOptions& opts = {});

void clear_growth_cache();

struct GrowthTrace {
  std::vector<std::size_t> counts;  // N^(0..n_max)
  std::vector<double> slopes;       // log N^(n) / n; slopes[0] = 0
  int window = 0;                   // points in the tail fit
  // Least-squares slope of log(n N^(n)) over the window. The factor n undoes
  // the 1/n of cyclic counting (about q^n / n necklaces for q free factors).
  double tail_slope = 0;
  double uncorrected_tail_slope = 0;  // same fit on log N^(n)
  double certificate = 0;             // log N^(n_max) / n_max
};

GrowthTrace trace_from_counts(std::vector<std::size_t> counts);
GrowthTrace gamma_estimate(const SymbolSet& S, int n_max, const GrowthOptions& opts = {});

// Representatives for g-equivalence classes: the canonical one, or the words
// exactly as supplied.
enum class RepPolicy { canonical, as_given };

struct GammaTResult {
  GrowthTrace trace;                 // minimizing trace
  int side = 0;                      // +1 for T_+, -1 for T_-
  std::vector<ReducedWord> subset;   // the minimizing subset, without g
  std::size_t candidates = 0;        // (side, subset) choices examined
};

GammaTResult gamma_T(const ReducedWord& g, const std::vector<std::pair<ReducedWord, ReducedWord>>& T, int n_max,
                     RepPolicy policy = RepPolicy::canonical, const GrowthOptions& opts = {});

struct TinfResult {
  double estimate = 0;          // tail slope of the maximizing trace
  double certified_lower = 0;   // its log N^(n_max) / n_max
  bool zero = false;            // mu had no positive terms
  std::vector<std::pair<ReducedWord, ReducedWord>> best_T;
  GammaTResult best;
};

TinfResult tinf_estimate(const MuElement& mu, int n_max, const GrowthOptions& opts = {});

// Largest #T accepted by gamma_T and tinf_estimate.
inline constexpr std::size_t kMaxTermSubset = 20;

}  // namespace loopforge
