#include "loopforge/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <unordered_set>

#include "loopforge/errors.hpp"

namespace loopforge {

namespace {

std::shared_ptr<const RelatorTable> build_table(int genus) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const RelatorTable>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(genus); it != cache.end()) return it->second;

  auto t = std::make_shared<RelatorTable>();
  const int n = 4 * genus;
  t->relator_length = n;
  t->letter_count = 4 * genus;
  t->pair_index.assign(static_cast<std::size_t>(t->letter_count) * t->letter_count, -1);

  Letters rel;
  for (int i = 0; i < genus; ++i) {
    const int x = 2 * i, y = 2 * i + 1;
    rel.push_back(make_letter(x, false));
    rel.push_back(make_letter(y, false));
    rel.push_back(make_letter(x, true));
    rel.push_back(make_letter(y, true));
  }
  Letters inv(rel.rbegin(), rel.rend());
  for (auto& l : inv) l = invert(l);

  for (const Letters* base : {&rel, &inv}) {
    for (int s = 0; s < n; ++s) {
      Letters r(n);
      for (int j = 0; j < n; ++j) r[j] = (*base)[(s + j) % n];
      auto& slot = t->pair_index[static_cast<std::size_t>(r[0]) * t->letter_count + r[1]];
      if (slot != -1) throw Error("relator pieces longer than one letter");
      slot = static_cast<int>(t->rotations.size());
      t->rotations.push_back(std::move(r));
    }
  }
  cache.emplace(genus, t);
  return t;
}

void check_letters(std::span<const Letter> w, const Presentation& pres) {
  for (Letter l : w)
    if (generator_of(l) >= pres.rank())
      throw MalformedInput("letter references unknown generator " +
                           std::to_string(generator_of(l)));
}

Letters free_reduce_letters(std::span<const Letter> w) {
  Letters out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == invert(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

// Linear Dehn reduction. Input letters are consumed from a stack so that
// replacement letters get re-examined; the output is kept Dehn-reduced, so
// any new long match must end at the last letter.
Letters dehn_letters(const RelatorTable& t, std::span<const Letter> w) {
  const int n = t.relator_length;
  const int half = n / 2;
  Letters out;
  out.reserve(w.size());
  Letters pending(w.rbegin(), w.rend());
  while (!pending.empty()) {
    Letter l = pending.back();
    pending.pop_back();
    if (!out.empty() && out.back() == invert(l)) {
      out.pop_back();
      continue;
    }
    out.push_back(l);
    if (out.size() < 2) continue;
    const std::size_t sz = out.size();
    int q = t.rotation_for(out[sz - 2], out[sz - 1]);
    if (q < 0) continue;
    const Letters& r = t.rotations[q];
    int len = 2;
    while (len < n && static_cast<std::size_t>(len) < sz &&
           out[sz - 1 - len] == r[n - (len - 1)])
      ++len;
    if (len <= half) continue;
    // Matched suffix is r[n-len+2 .. n-1] r[0] r[1]; its complement in the
    // cyclic relator is r[2 .. n-len+1].
    out.resize(sz - len);
    for (int j = 2; j <= n - len + 1; ++j) pending.push_back(invert(r[j]));
  }
  return out;
}

// Length of the longest prefix of the cyclic word starting at i that agrees
// with a relator rotation, together with that rotation.
std::pair<int, int> cyclic_match(const RelatorTable& t, const Letters& w, std::size_t i) {
  const std::size_t m = w.size();
  if (m < 2) return {0, -1};
  int q = t.rotation_for(w[i], w[(i + 1) % m]);
  if (q < 0) return {0, -1};
  const Letters& r = t.rotations[q];
  const int lim = static_cast<int>(std::min<std::size_t>(m, t.relator_length));
  int len = 2;
  while (len < lim && w[(i + len) % m] == r[len]) ++len;
  return {len, q};
}

Letters rotate(const Letters& w, std::size_t i) {
  Letters r(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) r[j] = w[(i + j) % w.size()];
  return r;
}

// Replace the first `len` letters of w (which equal r[0..len)) by the inverse
// of the complementary part r[len..n).
Letters replace_prefix(const Letters& w, const Letters& r, int len) {
  const int n = static_cast<int>(r.size());
  Letters out;
  out.reserve(w.size() + n);
  for (int j = n - 1; j >= len; --j) out.push_back(invert(r[j]));
  out.insert(out.end(), w.begin() + len, w.end());
  return out;
}

Letters cyclic_dehn(const RelatorTable& t, Letters w) {
  const int half = t.relator_length / 2;
  for (;;) {
    w = cyclically_reduce(dehn_letters(t, w));
    bool changed = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto [len, q] = cyclic_match(t, w, i);
      if (len > half) {
        w = replace_prefix(rotate(w, i), t.rotations[q], len);
        changed = true;
        break;
      }
    }
    if (!changed) return w;
  }
}

struct LettersHash {
  std::size_t operator()(const Letters& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Letter l : w) h = (h ^ l) * 1099511628211ULL;
    return h;
  }
};

// Closure of a cyclic word under relator substitutions that keep its length
// within `kExcess` of the shortest length seen. Flipping a half relator keeps
// the length; expanding a (2g-1)-piece adds two letters, which is what lets
// chains of consecutive pieces be shifted across each other.
constexpr std::size_t kExcess = 2;

Letters surface_conj_canonical(const RelatorTable& t, const Letters& w) {
  const int half = t.relator_length / 2;
  Letters start = cyclic_dehn(t, cyclically_reduce(w));
  for (;;) {
    const std::size_t best = start.size();
    std::unordered_set<Letters, LettersHash> seen;
    std::deque<Letters> queue;
    Letters root = least_rotation(start);
    seen.insert(root);
    queue.push_back(root);
    bool restarted = false;
    while (!queue.empty() && !restarted) {
      Letters c = std::move(queue.front());
      queue.pop_front();
      for (std::size_t i = 0; i < c.size() && !restarted; ++i) {
        auto [len, q] = cyclic_match(t, c, i);
        for (int l = half - 1; l <= len && l >= 2; ++l) {
          Letters next = cyclically_reduce(free_reduce_letters(replace_prefix(rotate(c, i), t.rotations[q], l)));
          if (next.size() < best) {
            start = cyclic_dehn(t, std::move(next));
            restarted = true;
            break;
          }
          if (next.size() > best + kExcess) continue;
          Letters canon = least_rotation(next);
          if (seen.insert(canon).second) {
            if (seen.size() > kMaxClosureSize)
              throw ResourceLimit("conjugacy closure exceeded size cap");
            queue.push_back(std::move(canon));
          }
        }
      }
    }
    if (restarted) continue;
    Letters out;
    bool found = false;
    for (const auto& c : seen)
      if (c.size() == best && (!found || c < out)) {
        out = c;
        found = true;
      }
    return out;
  }
}

Letters surface_normal_form(const RelatorTable& t, const Letters& w) {
  const int half = t.relator_length / 2;
  Letters start = dehn_letters(t, w);
  for (;;) {
    std::unordered_set<Letters, LettersHash> seen;
    std::deque<Letters> queue;
    seen.insert(start);
    queue.push_back(start);
    bool restarted = false;
    while (!queue.empty() && !restarted) {
      Letters c = std::move(queue.front());
      queue.pop_front();
      if (c.size() < static_cast<std::size_t>(half)) continue;
      for (std::size_t i = 0; i + half <= c.size(); ++i) {
        int q = t.rotation_for(c[i], c[i + 1]);
        if (q < 0) continue;
        const Letters& r = t.rotations[q];
        int len = 2;
        while (len < half && c[i + len] == r[len]) ++len;
        if (len < half) continue;
        Letters flipped(c.begin(), c.begin() + i);
        for (int j = t.relator_length - 1; j >= half; --j) flipped.push_back(invert(r[j]));
        flipped.insert(flipped.end(), c.begin() + i + half, c.end());
        flipped = dehn_letters(t, flipped);
        if (flipped.size() < c.size()) {
          start = std::move(flipped);
          restarted = true;
          break;
        }
        if (flipped.size() > c.size()) continue;
        if (seen.insert(flipped).second) {
          if (seen.size() > kMaxClosureSize)
            throw ResourceLimit("normal form closure exceeded size cap");
          queue.push_back(std::move(flipped));
        }
      }
    }
    if (restarted) continue;
    return *std::min_element(seen.begin(), seen.end(),
                             [](const Letters& a, const Letters& b) { return shortlex_less(a, b); });
  }
}

void require_same(const Presentation& a, const Presentation& b) {
  if (!(a == b)) throw MalformedInput("words belong to different presentations");
}

}  // namespace

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(PresentationKind kind, int rank) : kind_(kind), rank_(rank) {
  if (kind == PresentationKind::surface) table_ = build_table(rank / 2);
}

Presentation Presentation::free(int rank) {
  if (rank < 0) throw DomainError("free group rank must be non-negative");
  return Presentation(PresentationKind::free, rank);
}

Presentation Presentation::surface(int genus) {
  if (genus < 2) throw DomainError("surface genus must be at least 2");
  return Presentation(PresentationKind::surface, 2 * genus);
}

Letters Presentation::relator() const {
  if (!table_) return {};
  return table_->rotations.front();
}

std::string Presentation::token(Letter l) const {
  const int g = generator_of(l);
  const bool inv = is_inverse_letter(l);
  if (kind_ == PresentationKind::surface || rank_ > 26)
    return std::string(inv ? "G" : "g") + std::to_string(g + 1);
  char ch = static_cast<char>('a' + g);
  return std::string(1, inv ? static_cast<char>(std::toupper(ch)) : ch);
}

Letter Presentation::parse_token(std::string_view tok) const {
  if (tok.empty()) throw MalformedInput("empty token");
  int gen = -1;
  bool inv = false;
  if ((tok[0] == 'g' || tok[0] == 'G') && tok.size() > 1 &&
      std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    inv = tok[0] == 'G';
    gen = std::stoi(std::string(tok.substr(1))) - 1;
  } else if (tok.size() == 1 && std::isalpha(static_cast<unsigned char>(tok[0])) &&
             kind_ == PresentationKind::free) {
    inv = std::isupper(static_cast<unsigned char>(tok[0])) != 0;
    gen = std::tolower(static_cast<unsigned char>(tok[0])) - 'a';
  }
  if (gen < 0 || gen >= rank_)
    throw MalformedInput("unknown generator token '" + std::string(tok) + "' for " + name());
  return make_letter(gen, inv);
}

std::string Presentation::name() const {
  if (kind_ == PresentationKind::surface) return "S" + std::to_string(genus());
  return "F" + std::to_string(rank_);
}

Presentation Presentation::parse_name(std::string_view s) {
  auto number = [&](std::string_view digits) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw MalformedInput("bad presentation name '" + std::string(s) + "'");
    return std::stoi(std::string(digits));
  };
  if (s.starts_with("surface:")) return surface(number(s.substr(8)));
  if (s.starts_with("free:")) return free(number(s.substr(5)));
  if (!s.empty() && s[0] == 'S') return surface(number(s.substr(1)));
  if (!s.empty() && s[0] == 'F') return free(number(s.substr(1)));
  throw MalformedInput("bad presentation name '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// ReducedWord

ReducedWord trusted_word(const Presentation& pres, Letters letters) {
  return ReducedWord(pres, std::move(letters), ReducedWord::Trusted{});
}

ReducedWord::ReducedWord(Presentation pres, std::span<const Letter> letters)
    : pres_(std::move(pres)) {
  check_letters(letters, pres_);
  letters_ = free_reduce_letters(letters);
}

ReducedWord ReducedWord::parse(const Presentation& pres, std::string_view text) {
  Letters out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '.' || text[i] == '*') {
      ++i;
      continue;
    }
    if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;  // "1" denotes the identity
      continue;
    }
    std::size_t j = i;
    if (text[i] == 'g' || text[i] == 'G') {
      ++j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i + 1) j = i + 1;
    } else {
      j = i + 1;
    }
    out.push_back(pres.parse_token(text.substr(i, j - i)));
    i = j;
  }
  return ReducedWord(pres, out);
}

ReducedWord ReducedWord::inverse() const {
  Letters inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l = invert(l);
  return trusted_word(pres_, std::move(inv));
}

ReducedWord ReducedWord::pow(long k) const {
  ReducedWord base = k < 0 ? inverse() : *this;
  ReducedWord out(pres_);
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = out * base;
  return out;
}

ReducedWord ReducedWord::conjugate_by(const ReducedWord& h) const {
  return h * *this * h.inverse();
}

std::string ReducedWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += pres_.token(letters_[i]);
  }
  return out;
}

ReducedWord operator*(const ReducedWord& a, const ReducedWord& b) {
  require_same(a.pres_, b.pres_);
  std::size_t k = 0;
  const auto& x = a.letters_;
  const auto& y = b.letters_;
  while (k < x.size() && k < y.size() && x[x.size() - 1 - k] == invert(y[k])) ++k;
  Letters out(x.begin(), x.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(k), y.end());
  return trusted_word(a.pres_, std::move(out));
}

bool shortlex_less(const Letters& a, const Letters& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// Operations

ReducedWord free_reduce(std::span<const Letter> w, const Presentation& pres) {
  return ReducedWord(pres, w);
}

ReducedWord dehn_reduce(const ReducedWord& w) {
  const auto* t = w.presentation().relator_table();
  if (!t) throw UnsupportedPresentation("Dehn reduction needs a surface presentation");
  return trusted_word(w.presentation(), dehn_letters(*t, w.letters()));
}

bool is_identity(const ReducedWord& w) {
  if (w.empty()) return true;
  const auto* t = w.presentation().relator_table();
  if (!t) return false;
  return dehn_letters(*t, w.letters()).empty();
}

bool same_element(const ReducedWord& a, const ReducedWord& b) {
  return is_identity(a * b.inverse());
}

ReducedWord normal_form(const ReducedWord& w) {
  const auto* t = w.presentation().relator_table();
  if (!t) return w;
  return trusted_word(w.presentation(), surface_normal_form(*t, w.letters()));
}

Letters cyclically_reduce(Letters w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == invert(w[hi - 1])) {
    ++lo;
    --hi;
  }
  return Letters(w.begin() + lo, w.begin() + hi);
}

Letters least_rotation(const Letters& w) {
  const std::size_t n = w.size();
  if (n < 2) return w;
  // Booth's algorithm.
  std::vector<long> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    Letter sj = w[j % n];
    long i = f[j - k - 1];
    while (i != -1 && sj != w[(k + i + 1) % n]) {
      if (sj < w[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && sj != w[(k + i + 1) % n]) {
      if (sj < w[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return rotate(w, k);
}

Letters conj_canonical_letters(const Presentation& pres, const Letters& w) {
  const auto* t = pres.relator_table();
  if (!t) return least_rotation(cyclically_reduce(w));
  return surface_conj_canonical(*t, w);
}


ConjClass conj_canonical(const ReducedWord& w) {
  return ConjClass{trusted_word(w.presentation(), conj_canonical_letters(w.presentation(), w.letters()))};
}

bool are_conjugate(const ReducedWord& a, const ReducedWord& b) {
  require_same(a.presentation(), b.presentation());
  return conj_canonical(a) == conj_canonical(b);
}

GEquivClass g_equiv_canonical(const ReducedWord& g, const ReducedWord& x, const GEquivOptions& opts) {
  require_same(g.presentation(), x.presentation());
  if (is_identity(x)) throw TrivialElement("g-equivalence class of the identity is reserved");
  const Presentation& pres = x.presentation();
  const auto* t = pres.relator_table();
  auto shorten = [&](const ReducedWord& w) {
    return t ? trusted_word(pres, dehn_letters(*t, w.letters())) : w;
  };

  const ReducedWord x0 = shorten(x);
  const ReducedWord gs = shorten(g);
  const int window = opts.stall_window.value_or(static_cast<int>(2 * gs.size() + x0.size()));
  if (window < 1) throw DomainError("stall window must be positive");

  std::vector<ReducedWord> orbit{x0};
  // If g commutes with x the orbit is a single point.
  const bool fixed = same_element(shorten(x0.conjugate_by(gs)), x0);
  if (!fixed) {
    for (const ReducedWord& step : {gs, gs.inverse()}) {
      ReducedWord cur = x0;
      int increases = 0;
      for (int k = 1; increases < window; ++k) {
        if (k > opts.max_steps) throw ResourceLimit("g-equivalence search exceeded step cap");
        ReducedWord next = shorten(cur.conjugate_by(step));
        increases = next.size() > cur.size() ? increases + 1 : 0;
        orbit.push_back(next);
        cur = std::move(next);
      }
    }
  }

  std::size_t min_len = orbit.front().size();
  for (const auto& w : orbit) min_len = std::min(min_len, w.size());
  const std::size_t slack = t ? static_cast<std::size_t>(t->relator_length / 2) : 0;
  std::optional<Letters> best;
  for (const auto& w : orbit) {
    if (w.size() > min_len + slack) continue;
    Letters nf = t ? surface_normal_form(*t, w.letters()) : w.letters();
    if (!best || shortlex_less(nf, *best)) best = std::move(nf);
  }
  return GEquivClass{g, trusted_word(pres, std::move(*best))};
}

bool g_equivalent(const ReducedWord& g, const ReducedWord& x, const ReducedWord& y, int max_power) {
  require_same(g.presentation(), x.presentation());
  require_same(x.presentation(), y.presentation());
  ReducedWord fwd = x, bwd = x;
  const ReducedWord gi = g.inverse();
  if (same_element(x, y)) return true;
  for (int k = 1; k <= max_power; ++k) {
    fwd = fwd.conjugate_by(g);
    bwd = bwd.conjugate_by(gi);
    if (same_element(fwd, y) || same_element(bwd, y)) return true;
  }
  return false;
}

}  // namespace loopforge
