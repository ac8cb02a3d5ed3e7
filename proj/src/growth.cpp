#include "loopforge/growth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

namespace loopforge {

namespace {

// ---------------------------------------------------------------------------
// Matrices over F_p, p = 2^61 - 1. Traces in a representation are exact
// conjugacy invariants, so two products with different trace keys are
// certainly not conjugate.

constexpr std::uint64_t kP = (1ULL << 61) - 1;

std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  while (r >= kP) r -= kP;
  return r;
}
std::uint64_t mulm(std::uint64_t a, std::uint64_t b) { return reduce(static_cast<unsigned __int128>(a) * b); }
std::uint64_t addm(std::uint64_t a, std::uint64_t b) { return (a + b) % kP; }
std::uint64_t subm(std::uint64_t a, std::uint64_t b) { return (a + kP - b) % kP; }
std::uint64_t powm(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulm(a, a))
    if (e & 1) r = mulm(r, a);
  return r;
}
std::uint64_t invm(std::uint64_t a) { return powm(a, kP - 2); }

struct M2 {
  std::uint64_t a = 1, b = 0, c = 0, d = 1;
  bool operator==(const M2&) const = default;
};

M2 mul(const M2& x, const M2& y) {
  return {addm(mulm(x.a, y.a), mulm(x.b, y.c)), addm(mulm(x.a, y.b), mulm(x.b, y.d)),
          addm(mulm(x.c, y.a), mulm(x.d, y.c)), addm(mulm(x.c, y.b), mulm(x.d, y.d))};
}
M2 add(const M2& x, const M2& y) { return {addm(x.a, y.a), addm(x.b, y.b), addm(x.c, y.c), addm(x.d, y.d)}; }
M2 scale(const M2& x, std::uint64_t s) { return {mulm(x.a, s), mulm(x.b, s), mulm(x.c, s), mulm(x.d, s)}; }
std::uint64_t det(const M2& x) { return subm(mulm(x.a, x.d), mulm(x.b, x.c)); }
std::uint64_t tr(const M2& x) { return addm(x.a, x.d); }
M2 inv(const M2& x) {
  std::uint64_t di = invm(det(x));
  return {mulm(x.d, di), mulm(kP - x.b, di) % kP, mulm(kP - x.c, di) % kP, mulm(x.a, di)};
}
M2 commutator(const M2& x, const M2& y) { return mul(mul(x, y), mul(inv(x), inv(y))); }

// All representations are evaluated as 3x3 matrices; 2x2 ones sit in the top
// left block. Traces of 2x2 matrices cannot tell a two-letter word from its
// reversal, which the 3x3 representations do.
struct M3 {
  std::array<std::uint64_t, 9> e{1, 0, 0, 0, 1, 0, 0, 0, 1};
  bool operator==(const M3&) const = default;
};

M3 mul(const M3& x, const M3& y) {
  M3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      unsigned __int128 acc = 0;
      for (int k = 0; k < 3; ++k) acc += static_cast<unsigned __int128>(x.e[3 * i + k]) * y.e[3 * k + j];
      r.e[3 * i + j] = static_cast<std::uint64_t>(acc % kP);
    }
  return r;
}
std::uint64_t tr(const M3& x) { return (x.e[0] + x.e[4] + x.e[8]) % kP; }
std::uint64_t minor(const M3& x, int r0, int r1, int c0, int c1) {
  return subm(mulm(x.e[3 * r0 + c0], x.e[3 * r1 + c1]), mulm(x.e[3 * r0 + c1], x.e[3 * r1 + c0]));
}
std::uint64_t det(const M3& x) {
  return addm(subm(mulm(x.e[0], minor(x, 1, 2, 1, 2)), mulm(x.e[1], minor(x, 1, 2, 0, 2))),
              mulm(x.e[2], minor(x, 1, 2, 0, 1)));
}
M3 inv(const M3& x) {
  const std::uint64_t di = invm(det(x));
  const int o[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  M3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      std::uint64_t c = minor(x, o[j][0], o[j][1], o[i][0], o[i][1]);
      if ((i + j) % 2) c = subm(0, c);
      r.e[3 * i + j] = mulm(c, di);
    }
  return r;
}
M3 embed(const M2& m) { return M3{{m.a, m.b, 0, m.c, m.d, 0, 0, 0, 1}}; }
M3 power(const M3& m, int k) {
  M3 r;
  for (int i = 0; i < k; ++i) r = mul(r, m);
  return r;
}

struct Rep {
  std::vector<M3> letter;  // indexed by Letter

  M3 eval(const Letters& w) const {
    M3 m;
    for (Letter l : w) m = mul(m, letter[l]);
    return m;
  }
};

std::vector<M2> surface_gl2(const Presentation& pres, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> U(1, kP - 1);
  auto random_gl2 = [&]() {
    for (;;) {
      M2 m{U(rng), U(rng), U(rng), U(rng)};
      if (det(m) != 0) return m;
    }
  };
  std::vector<M2> gens(pres.rank());
  const int g = pres.genus();
  for (;;) {
    M2 C;
    for (int i = 0; i + 1 < g; ++i) {
      gens[2 * i] = random_gl2();
      gens[2 * i + 1] = random_gl2();
      C = mul(C, commutator(gens[2 * i], gens[2 * i + 1]));
    }
    // Last pair: [A, B] = C^-1 =: D. Take X = A^-1 with tr X = tr XD, which
    // makes X and Y = XD conjugate, and B any solution of B X = Y B.
    M2 D = inv(C);
    std::uint64_t k = subm(1, D.d);
    if (k == 0) continue;
    M2 X{U(rng), U(rng), U(rng), 0};
    // X.a (1 - D.a) - X.b D.c - X.c D.b + X.d (1 - D.d) = 0
    std::uint64_t rest = subm(subm(mulm(X.a, subm(1, D.a)), mulm(X.b, D.c)), mulm(X.c, D.b));
    X.d = mulm(subm(0, rest), invm(k));
    if (det(X) == 0 || (X.b == 0 && X.c == 0 && X.a == X.d)) continue;
    M2 Y = mul(X, D);
    M2 Z = random_gl2();
    M2 B = add(add(mul(Y, Z), mul(Z, X)), scale(Z, subm(0, tr(X))));
    if (det(B) == 0 || !(mul(B, X) == mul(Y, B))) continue;
    gens[2 * g - 2] = inv(X);
    gens[2 * g - 1] = B;
    return gens;
  }
}

// Representation number `index`: 0 and 1 are 2x2, 2 and 3 are 3x3. For
// surface groups the 3x3 ones factor through a_i -> M_i, b_i -> M_i^k_i
// (or the roles swapped), which kills every commutator.
Rep make_rep(const Presentation& pres, int index) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL * (index + 1) + pres.rank());
  std::uniform_int_distribution<std::uint64_t> U(1, kP - 1);
  auto random_gl3 = [&]() {
    for (;;) {
      M3 m;
      for (auto& v : m.e) v = U(rng);
      if (det(m) != 0) return m;
    }
  };
  std::vector<M3> gens(pres.rank());
  if (index < 2) {
    if (pres.is_surface()) {
      auto g2 = surface_gl2(pres, rng);
      for (int i = 0; i < pres.rank(); ++i) gens[i] = embed(g2[i]);
    } else {
      for (auto& m : gens) {
        M2 x;
        do x = M2{U(rng), U(rng), U(rng), U(rng)};
        while (det(x) == 0);
        m = embed(x);
      }
    }
  } else if (!pres.is_surface()) {
    for (auto& m : gens) m = random_gl3();
  } else {
    std::uniform_int_distribution<int> K(0, 3);
    const int free_slot = index == 2 ? 0 : 1;
    for (int i = 0; i < pres.genus(); ++i) {
      M3 m = random_gl3();
      gens[2 * i + free_slot] = m;
      gens[2 * i + 1 - free_slot] = power(m, K(rng));
    }
  }
  Rep r;
  r.letter.resize(pres.letter_count());
  for (int i = 0; i < pres.rank(); ++i) {
    r.letter[make_letter(i, false)] = gens[i];
    r.letter[make_letter(i, true)] = inv(gens[i]);
  }
  if (pres.is_surface() && !(r.eval(pres.relator()) == M3{}))
    throw Error("internal: representation does not satisfy the relator");
  return r;
}

constexpr int kReps = 4;

const std::array<Rep, kReps>& reps_for(const Presentation& pres) {
  static std::mutex mu;
  static std::map<std::string, std::array<Rep, kReps>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(pres.name());
  if (it == cache.end()) {
    std::array<Rep, kReps> r;
    for (int i = 0; i < kReps; ++i) r[i] = make_rep(pres, i);
    it = cache.emplace(pres.name(), std::move(r)).first;
  }
  return it->second;
}

struct Key {
  std::array<std::uint64_t, kReps> t;
  bool operator==(const Key&) const = default;
};
struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0;
    for (auto v : k.t) h = h * 0x100000001b3ULL ^ v;
    return h;
  }
};

// ---------------------------------------------------------------------------
// Enumeration. Products of exactly k factors that are cyclic rotations of
// each other are conjugate, so only necklaces of factor indices are visited.

struct ClassRecord {
  std::string seq;  // factor indices
  Letters canonical;
  bool has_canonical = false;
  Letters cyclic;  // least rotation of the freely cyclically reduced word
  bool has_cyclic = false;
};

class Enumerator {
 public:
  Enumerator(const SymbolSet& S, const GrowthOptions& opts)
      : S_(S), opts_(opts), reps_(reps_for(S.presentation())) {
    for (const auto& s : S.elements()) {
      std::array<M3, kReps> m;
      for (int r = 0; r < kReps; ++r) m[r] = reps_[r].eval(s.letters());
      factor_.push_back(m);
      max_len_ = std::max(max_len_, s.size());
    }
    add_record(Key{{3, 3, 3, 3}}, std::string{});
    counts_.push_back(records_.size());
  }

  void run(int n_max) {
    const std::size_t q = S_.size();
    for (int k = static_cast<int>(counts_.size()); k <= n_max; ++k) {
      if (q > 0) {
        double projected = std::pow(static_cast<double>(q), k) / k;
        if (static_cast<double>(records_.size()) + projected > static_cast<double>(opts_.max_classes))
          throw BallLimit("ball enumeration would exceed " + std::to_string(opts_.max_classes) + " classes at n = " +
                              std::to_string(k),
                          counts_);
        if (opts_.max_word_len && max_len_ * k > opts_.max_word_len)
          throw BallLimit("products of " + std::to_string(k) + " factors exceed the word length cap", counts_);
        n_ = k;
        a_.assign(k + 1, 0);
        prefix_.assign(k + 1, {});
        gen(1, 1);
      }
      counts_.push_back(records_.size());
    }
  }

  const std::vector<std::size_t>& counts() const { return counts_; }

  std::vector<ConjClass> classes() {
    std::vector<ConjClass> out;
    for (auto& r : records_) out.push_back(ConjClass{ReducedWord(S_.presentation(), canonical(r))});
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  Letters word_of(const std::string& seq) const {
    Letters w;
    for (char c : seq) {
      const Letters& f = S_.elements()[static_cast<unsigned char>(c)].letters();
      w.insert(w.end(), f.begin(), f.end());
    }
    return w;
  }

  const Letters& canonical(ClassRecord& r) {
    if (!r.has_canonical) {
      r.canonical = conj_canonical_letters(S_.presentation(), ReducedWord(S_.presentation(), word_of(r.seq)).letters());
      r.has_canonical = true;
    }
    return r.canonical;
  }

  // Equal cyclic words are conjugate in any quotient of the free group, which
  // settles most collisions without the full canonical form.
  const Letters& cyclic(ClassRecord& r) {
    if (!r.has_cyclic) {
      r.cyclic = least_rotation(cyclically_reduce(free_reduce(word_of(r.seq), S_.presentation()).letters()));
      r.has_cyclic = true;
    }
    return r.cyclic;
  }

  void add_record(const Key& key, std::string seq) {
    buckets_[key].push_back(records_.size());
    ClassRecord r;
    r.seq = std::move(seq);
    records_.push_back(std::move(r));
  }

  void emit() {
    Key key;
    for (int r = 0; r < kReps; ++r) key.t[r] = tr(prefix_[n_][r]);
    std::string seq(n_, '\0');
    for (int i = 0; i < n_; ++i) seq[i] = static_cast<char>(a_[i + 1]);
    auto it = buckets_.find(key);
    if (it == buckets_.end()) {
      add_record(key, std::move(seq));
      return;
    }
    ClassRecord fresh;
    fresh.seq = seq;
    for (std::size_t idx : it->second)
      if (cyclic(records_[idx]) == cyclic(fresh)) return;
    const Letters& mine = canonical(fresh);
    for (std::size_t idx : it->second)
      if (canonical(records_[idx]) == mine) return;
    it->second.push_back(records_.size());
    records_.push_back(std::move(fresh));
  }

  void push(int t) {
    for (int r = 0; r < kReps; ++r) prefix_[t][r] = mul(prefix_[t - 1][r], factor_[a_[t]][r]);
  }

  // Fredricksen-Kessler-Maiorana generation of necklaces of length n_.
  void gen(int t, int p) {
    const int q = static_cast<int>(S_.size());
    if (t > n_) {
      if (n_ % p == 0) emit();
      return;
    }
    a_[t] = a_[t - p];
    push(t);
    gen(t + 1, p);
    for (int j = a_[t - p] + 1; j < q; ++j) {
      a_[t] = j;
      push(t);
      gen(t + 1, t);
    }
  }

  const SymbolSet& S_;
  GrowthOptions opts_;
  const std::array<Rep, kReps>& reps_;
  std::vector<std::array<M3, kReps>> factor_;
  std::size_t max_len_ = 0;
  std::vector<ClassRecord> records_;
  std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
  std::vector<std::size_t> counts_;
  int n_ = 0;
  std::vector<int> a_;
  std::vector<std::array<M3, kReps>> prefix_;
};

std::mutex g_cache_mu;
std::map<std::string, std::vector<std::size_t>> g_cache;

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  return den == 0 ? 0 : (n * sxy - sx * sy) / den;
}

}  // namespace

SymbolSet::SymbolSet(Presentation pres, std::vector<ReducedWord> elements)
    : pres_(std::move(pres)), elements_(std::move(elements)) {
  if (elements_.size() > 255) throw DomainError("at most 255 symbols are supported");
  for (const auto& e : elements_)
    if (!(e.presentation() == pres_)) throw MalformedInput("symbol " + e.to_string() + " is not in " + pres_.name());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (same_element(elements_[i], elements_[j]))
        throw DomainError("symbols " + elements_[i].to_string() + " and " + elements_[j].to_string() +
                          " are the same element");
}

std::string SymbolSet::key() const {
  std::vector<std::string> words;
  for (const auto& e : elements_) words.push_back(e.to_string());
  std::sort(words.begin(), words.end());
  std::string k = pres_.name();
  for (const auto& w : words) k += "|" + w;
  return k;
}

std::vector<std::size_t> nhat_counts(const SymbolSet& S, int n_max, const GrowthOptions& opts) {
  if (n_max < 0) throw DomainError("n must be non-negative");
  // Symbols are listed in a fixed order so the cache does not depend on the
  // caller's ordering.
  const std::string key = S.key();
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_cache.find(key);
    if (it != g_cache.end() && static_cast<int>(it->second.size()) > n_max)
      return {it->second.begin(), it->second.begin() + n_max + 1};
  }
  Enumerator e(S, opts);
  e.run(n_max);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto& slot = g_cache[key];
  if (slot.size() < e.counts().size()) slot = e.counts();
  return e.counts();
}

std::size_t nhat(int n, const SymbolSet& S, const GrowthOptions& opts) { return nhat_counts(S, n, opts).back(); }

std::vector<ConjClass> ball(int n, const SymbolSet& S, const GrowthOptions& opts) {
  if (n < 0) throw DomainError("n must be non-negative");
  Enumerator e(S, opts);
  e.run(n);
  return e.classes();
}

void clear_growth_cache() {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache.clear();
}

GrowthTrace trace_from_counts(std::vector<std::size_t> counts) {
  GrowthTrace t;
  const int n_max = static_cast<int>(counts.size()) - 1;
  if (n_max < 2) throw DomainError("growth estimates need n_max >= 2");
  t.counts = std::move(counts);
  t.slopes.push_back(0);
  for (int n = 1; n <= n_max; ++n) t.slopes.push_back(std::log(static_cast<double>(t.counts[n])) / n);
  t.window = std::max(2, (n_max + 2) / 3);
  std::vector<double> x, y, yc;
  for (int n = n_max - t.window + 1; n <= n_max; ++n) {
    x.push_back(n);
    double l = std::log(static_cast<double>(t.counts[n]));
    y.push_back(l);
    yc.push_back(l + std::log(static_cast<double>(n)));
  }
  t.uncorrected_tail_slope = fit_slope(x, y);
  // No growth at all over the window means Gamma = 0; the log n correction
  // would otherwise report a spurious positive slope.
  t.tail_slope = t.counts[n_max] == t.counts[n_max - t.window + 1] ? 0.0 : fit_slope(x, yc);
  t.certificate = t.slopes[n_max];
  return t;
}

GrowthTrace gamma_estimate(const SymbolSet& S, int n_max, const GrowthOptions& opts) {
  if (n_max < 2) throw DomainError("growth estimates need n_max >= 2");
  return trace_from_counts(nhat_counts(S, n_max, opts));
}

namespace {

std::vector<ReducedWord> distinct_elements(const std::vector<ReducedWord>& ws) {
  std::vector<ReducedWord> out;
  for (const auto& w : ws) {
    bool dup = false;
    for (const auto& o : out) dup = dup || same_element(o, w);
    if (!dup) out.push_back(w);
  }
  return out;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

GammaTResult gamma_T(const ReducedWord& g, const std::vector<std::pair<ReducedWord, ReducedWord>>& T, int n_max,
                     RepPolicy policy, const GrowthOptions& opts) {
  if (T.empty()) throw DomainError("T must be nonempty");
  if (T.size() > kMaxTermSubset)
    throw DomainError("#T = " + std::to_string(T.size()) + " exceeds " + std::to_string(kMaxTermSubset) +
                      "; pass an explicit subset S instead");
  auto rep = [&](const ReducedWord& x) {
    return policy == RepPolicy::canonical ? g_equiv_canonical(g, x).canonical_rep : x;
  };
  std::vector<ReducedWord> plus, minus;
  for (const auto& [l, r] : T) {
    plus.push_back(rep(l));
    minus.push_back(rep(r));
  }
  const std::size_t s = (T.size() + 1) / 2;
  GammaTResult best;
  bool have = false;
  for (int side : {1, -1}) {
    auto pool = distinct_elements(side > 0 ? plus : minus);
    if (pool.size() < s) continue;
    for_each_subset(pool.size(), s, [&](const std::vector<std::size_t>& idx) {
      std::vector<ReducedWord> subset;
      for (auto i : idx) subset.push_back(pool[i]);
      std::vector<ReducedWord> elems = subset;
      elems.push_back(g);
      SymbolSet S(g.presentation(), distinct_elements(elems));
      GrowthTrace tr = gamma_estimate(S, n_max, opts);
      ++best.candidates;
      if (!have || tr.tail_slope < best.trace.tail_slope) {
        best.trace = std::move(tr);
        best.side = side;
        best.subset = std::move(subset);
        have = true;
      }
    });
  }
  if (!have) throw DomainError("no subset of the required size in T_+ or T_-");
  return best;
}

TinfResult tinf_estimate(const MuElement& mu, int n_max, const GrowthOptions& opts) {
  TinfResult out;
  Comp c = comp(mu);
  if (c.pairs.empty()) {
    out.zero = true;
    return out;
  }
  if (c.pairs.size() > kMaxTermSubset)
    throw DomainError("#Comp = " + std::to_string(c.pairs.size()) + " exceeds " + std::to_string(kMaxTermSubset) +
                      "; use gamma_T with an explicit T");
  const std::size_t N = c.pairs.size();
  bool have = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << N); ++mask) {
    std::vector<std::pair<ReducedWord, ReducedWord>> T;
    for (std::size_t i = 0; i < N; ++i)
      if (mask >> i & 1) T.push_back(c.pairs[i]);
    GammaTResult r = gamma_T(mu.base(), T, n_max, RepPolicy::as_given, opts);
    if (!have || r.trace.tail_slope > out.estimate) {
      out.estimate = r.trace.tail_slope;
      out.certified_lower = r.trace.certificate;
      out.best_T = std::move(T);
      out.best = std::move(r);
      have = true;
    }
  }
  return out;
}

}  // namespace loopforge
