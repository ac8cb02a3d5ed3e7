#pragma once

// Turaev's cobracket v and the refined invariant mu of a based loop, plus the
// pushforward of mu along a homomorphism into a surface group.

#include <string>
#include <utility>
#include <vector>

#include "loopforge/curves.hpp"
#include "loopforge/group.hpp"

namespace loopforge {

// left (x) right with an integer coefficient. For mu the sides are canonical
// representatives of g-equivalence classes; for v they are canonical cyclic
// words of conjugacy classes.
struct TensorTerm {
  ReducedWord left;
  ReducedWord right;
  long coefficient = 0;

  bool operator==(const TensorTerm&) const = default;
};

// Combines equal terms, drops zero coefficients and sorts by (left, right).
std::vector<TensorTerm> normalize_terms(std::vector<TensorTerm> terms);

// True when k(a,b) = -k(b,a) for every pair.
bool is_antisymmetric(const std::vector<TensorTerm>& normalized);

struct Cobracket {
  std::vector<TensorTerm> raw;    // two terms per intersection with nontrivial sides
  std::vector<TensorTerm> terms;  // normalized
};

Cobracket cobracket_v(const CurveDiagram& c, const GateSystem& gates);

class MuElement {
 public:
  MuElement() = default;
  // sum over pairs of [x]_g (x) [y]_g - [y]_g (x) [x]_g, with trivial classes
  // dropped.
  static MuElement from_pairs(const ReducedWord& g,
                              const std::vector<std::pair<ReducedWord, ReducedWord>>& pairs,
                              const GEquivOptions& opts = {});
  // Terms already in canonical form.
  static MuElement from_terms(const ReducedWord& g, std::vector<TensorTerm> terms);

  const ReducedWord& base() const { return g_; }
  const std::vector<TensorTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const MuElement& o) const { return g_ == o.g_ && terms_ == o.terms_; }

 private:
  ReducedWord g_;
  std::vector<TensorTerm> terms_;
};

MuElement mu_of_curve(const CurveDiagram& c, const GateSystem& gates);
MuElement mu_of_curve(const CurveDiagram& c);

// The double sums read off Gamma_{m,n}, base a^m b^n in F(a, b, c).
MuElement mu_eggbeater_closed_form(int m, int n);

struct Comp {
  std::vector<std::pair<ReducedWord, ReducedWord>> pairs;  // terms with k > 0
  std::vector<ReducedWord> plus;                          // distinct left sides
  std::vector<ReducedWord> minus;                         // distinct right sides
};

Comp comp(const MuElement& mu);

class PushforwardMap {
 public:
  PushforwardMap(Presentation source, Presentation target, std::vector<ReducedWord> images);
  // a -> g1 g3, b -> g3 g2 g1^-1 g2^-1, c -> g3 from F(a, b, c) to pi_1 of the
  // genus-2 surface.
  static PushforwardMap genus2();

  const Presentation& source() const { return source_; }
  const Presentation& target() const { return target_; }
  const std::vector<ReducedWord>& images() const { return images_; }

  ReducedWord apply(const ReducedWord& w) const;

 private:
  Presentation source_;
  Presentation target_;
  std::vector<ReducedWord> images_;
};

struct CancellationEvent {
  enum class Kind { vanished, merged, cancelled };
  Kind kind;
  std::vector<std::size_t> source_terms;  // indices into the source mu's terms
  std::string detail;
};

struct PushforwardResult {
  MuElement mu;
  std::vector<CancellationEvent> report;
};

PushforwardResult pushforward_mu(const MuElement& mu, const PushforwardMap& f,
                                 const GEquivOptions& opts = {});

std::string event_kind_name(CancellationEvent::Kind k);

// f_k = g^k (g1 g3 g1^-1) g^-k (g2 g1 g2^-1 g3^-1 g1^-1) in pi_1 of the genus-2
// surface, g = g1 g3 g3 g2 g1^-1 g2^-1 the image of ab. Non-triviality of
// every f_k is what keeps pushed-forward terms apart.
ReducedWord f_k_word(int k);

}  // namespace loopforge
