#pragma once

// Word arithmetic in free groups F_r and closed surface groups
// pi_1(S_g) = < g1..g2g | [g1,g2]...[g2g-1,g2g] >.
//
// Letters are encoded as 2*generator + (inverse ? 1 : 0), so the natural
// integer order is the documented lexicographic order
//   a < A < b < B < c < C   and   g1 < G1 < g2 < G2 < ...

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loopforge {

using Letter = std::uint16_t;

constexpr Letter make_letter(int generator, bool inverse) {
  return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr int generator_of(Letter l) { return l >> 1; }
constexpr bool is_inverse_letter(Letter l) { return (l & 1U) != 0; }
constexpr Letter invert(Letter l) { return static_cast<Letter>(l ^ 1U); }

using Letters = std::vector<Letter>;

enum class PresentationKind { free, surface };

struct RelatorTable;

class Presentation {
 public:
  static Presentation free(int rank);
  static Presentation surface(int genus);

  PresentationKind kind() const { return kind_; }
  bool is_surface() const { return kind_ == PresentationKind::surface; }
  // Number of generators: r for F_r, 2g for a genus-g surface group.
  int rank() const { return rank_; }
  int genus() const { return kind_ == PresentationKind::surface ? rank_ / 2 : 0; }
  int letter_count() const { return 2 * rank_; }

  // Empty for free presentations.
  Letters relator() const;
  const RelatorTable* relator_table() const { return table_.get(); }

  std::string token(Letter l) const;
  // Inverse of token(); throws MalformedInput on an unknown token.
  Letter parse_token(std::string_view tok) const;
  // "F3" or "S2"; parse_name accepts the same strings (and "surface:2",
  // "free:3").
  std::string name() const;
  static Presentation parse_name(std::string_view name);

  bool operator==(const Presentation& other) const {
    return kind_ == other.kind_ && rank_ == other.rank_;
  }

 private:
  Presentation(PresentationKind kind, int rank);

  PresentationKind kind_;
  int rank_;
  std::shared_ptr<const RelatorTable> table_;
};

// Cyclic permutations of the relator and its inverse, indexed by their
// first two letters. Every two-letter word occurs in at most one of them
// (all pieces have length 1), which is what makes Dehn's algorithm linear.
struct RelatorTable {
  int relator_length = 0;
  std::vector<Letters> rotations;
  // pair_index[x * letter_count + y] = rotation starting with x y, or -1.
  std::vector<int> pair_index;
  int letter_count = 0;

  int rotation_for(Letter x, Letter y) const {
    return pair_index[static_cast<std::size_t>(x) * letter_count + y];
  }
};

// A freely reduced word tied to its presentation.
class ReducedWord {
 public:
  ReducedWord() : pres_(Presentation::free(0)) {}
  explicit ReducedWord(Presentation pres) : pres_(std::move(pres)) {}
  // Freely reduces `letters`; throws MalformedInput on unknown generators.
  ReducedWord(Presentation pres, std::span<const Letter> letters);

  static ReducedWord parse(const Presentation& pres, std::string_view text);

  const Presentation& presentation() const { return pres_; }
  const Letters& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  ReducedWord inverse() const;
  ReducedWord pow(long k) const;
  ReducedWord conjugate_by(const ReducedWord& h) const;  // h w h^-1
  std::string to_string() const;

  friend ReducedWord operator*(const ReducedWord& a, const ReducedWord& b);

  bool operator==(const ReducedWord& o) const {
    return pres_ == o.pres_ && letters_ == o.letters_;
  }
  // Lexicographic in the letter order; presentations are assumed equal.
  std::strong_ordering operator<=>(const ReducedWord& o) const {
    return letters_ <=> o.letters_;
  }

 private:
  struct Trusted {};
  ReducedWord(Presentation pres, Letters letters, Trusted)
      : pres_(std::move(pres)), letters_(std::move(letters)) {}
  friend ReducedWord trusted_word(const Presentation&, Letters);

  Presentation pres_;
  Letters letters_;
};

// Length first, then lexicographic.
bool shortlex_less(const Letters& a, const Letters& b);

struct ConjClass {
  ReducedWord canonical;

  bool operator==(const ConjClass& o) const { return canonical == o.canonical; }
  auto operator<=>(const ConjClass& o) const { return canonical <=> o.canonical; }
  std::string to_string() const { return canonical.to_string(); }
};

struct GEquivClass {
  ReducedWord base_g;
  ReducedWord canonical_rep;

  bool operator==(const GEquivClass& o) const {
    return base_g == o.base_g && canonical_rep == o.canonical_rep;
  }
  std::string to_string() const { return canonical_rep.to_string(); }
};

// ---------------------------------------------------------------------------
// Operations

ReducedWord free_reduce(std::span<const Letter> w, const Presentation& pres);

// Dehn's algorithm: replaces every subword that is more than half of a cyclic
// permutation of the relator (or its inverse) by the shorter complement.
// Surface presentations only.
ReducedWord dehn_reduce(const ReducedWord& w);

bool is_identity(const ReducedWord& w);
bool same_element(const ReducedWord& a, const ReducedWord& b);

// Element normal form: the word itself for free groups; for surface groups
// the shortlex-least word reachable by Dehn reductions and half-relator
// flips.
ReducedWord normal_form(const ReducedWord& w);

ConjClass conj_canonical(const ReducedWord& w);
bool are_conjugate(const ReducedWord& a, const ReducedWord& b);

struct GEquivOptions {
  // Consecutive strict length increases needed to stop exploring one
  // direction. Defaults to 2|g| + |x|.
  std::optional<int> stall_window;
  int max_steps = 4096;
};

GEquivClass g_equiv_canonical(const ReducedWord& g, const ReducedWord& x,
                              const GEquivOptions& opts = {});

// Exact check that y = g^k x g^-k for some |k| <= max_power.
bool g_equivalent(const ReducedWord& g, const ReducedWord& x, const ReducedWord& y,
                  int max_power = 10);

// Cyclic-word helpers, exposed for tests and the growth enumerator.
Letters cyclically_reduce(Letters w);
Letters least_rotation(const Letters& w);

// Canonical cyclic word (letters only) for the conjugacy class of `w`, which
// must already be freely reduced. Same result as conj_canonical but without
// the ReducedWord wrapper; hot path of the ball enumeration.
Letters conj_canonical_letters(const Presentation& pres, const Letters& w);

// Length-bounded closure cap for surface-group canonical forms.
inline constexpr std::size_t kMaxClosureSize = 200000;

}  // namespace loopforge
