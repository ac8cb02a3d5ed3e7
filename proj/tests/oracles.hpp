#pragma once

// Independent reference implementations used only by the tests. Nothing here
// calls into the library's reduction or canonicalization code.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "loopforge/group.hpp"

namespace oracle {

using loopforge::Letter;
using loopforge::Letters;

// ---------------------------------------------------------------------------
// 2x2 matrices over long double.

struct Mat {
  long double a = 1, b = 0, c = 0, d = 1;
};

inline Mat mul(const Mat& x, const Mat& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}
inline Mat add(const Mat& x, const Mat& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
inline Mat scale(const Mat& x, long double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
inline long double det(const Mat& x) { return x.a * x.d - x.b * x.c; }
inline long double tr(const Mat& x) { return x.a + x.d; }
inline Mat inv(const Mat& x) {
  long double dt = det(x);
  return {x.d / dt, -x.b / dt, -x.c / dt, x.a / dt};
}
inline long double norm(const Mat& x) {
  return std::max({std::fabs(x.a), std::fabs(x.b), std::fabs(x.c), std::fabs(x.d)});
}

// A representation of the genus-2 surface group into GL2(R), built by
// choosing A1, B1 at random and solving [A2,B2] = [A1,B1]^-1.
struct SurfaceRep {
  std::array<Mat, 4> gens;
  std::array<Mat, 4> invs;

  static std::optional<SurfaceRep> try_make(std::mt19937_64& rng) {
    std::uniform_real_distribution<long double> U(-1.6L, 1.6L);
    auto random_sl2 = [&]() {
      Mat m;
      do {
        m.a = U(rng);
      } while (std::fabs(m.a) < 0.3L);
      m.b = U(rng);
      m.c = U(rng);
      m.d = (1 + m.b * m.c) / m.a;
      return m;
    };
    Mat A1 = random_sl2(), B1 = random_sl2();
    Mat C = mul(mul(A1, B1), mul(inv(A1), inv(B1)));
    Mat D = inv(C);
    // X = A2^-1 with tr(X) = tr(X D) and det X = 1.
    Mat M{1 - D.a, -D.b, -D.c, 1 - D.d};
    if (std::fabs(M.d) < 1e-3L) return std::nullopt;
    long double q = U(rng), r = U(rng);
    long double k = q * M.c + r * M.b;
    long double qa = M.a, qb = k, qc = (1 + q * r) * M.d;
    long double disc = qb * qb - 4 * qa * qc;
    if (disc < 0 || std::fabs(qa) < 1e-6L) return std::nullopt;
    long double p = (-qb + std::sqrt(disc)) / (2 * qa);
    long double s = -(p * M.a + q * M.c + r * M.b) / M.d;
    Mat X{p, q, r, s};
    if (std::fabs(det(X) - 1) > 1e-9L) return std::nullopt;
    Mat Y = mul(X, D);
    if (std::fabs(tr(X) * tr(X) - 4) < 1e-2L) return std::nullopt;
    // Any B with B X = Y B; B = Y Z + Z X - tr(X) Z for random Z.
    Mat Z{U(rng), U(rng), U(rng), U(rng)};
    Mat B = add(add(mul(Y, Z), mul(Z, X)), scale(Z, -tr(X)));
    long double db = det(B);
    if (std::fabs(db) < 1e-3L) return std::nullopt;
    B = scale(B, 1 / std::sqrt(std::fabs(db)));
    Mat A2 = inv(X), B2 = B;
    SurfaceRep rep;
    rep.gens = {A1, B1, A2, B2};
    for (int i = 0; i < 4; ++i) rep.invs[i] = inv(rep.gens[i]);
    Mat rel = rep.eval_raw({0, 2, 1, 3, 4, 6, 5, 7});
    if (norm(add(rel, scale(Mat{}, -1))) > 1e-9L) return std::nullopt;
    return rep;
  }

  static SurfaceRep make(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (;;)
      if (auto r = try_make(rng)) return *r;
  }

  Mat eval_raw(const Letters& w) const {
    Mat m;
    for (Letter l : w) m = mul(m, (l & 1) ? invs[l >> 1] : gens[l >> 1]);
    return m;
  }
};

// Two independent representations; an element is declared trivial iff both
// send it to the identity within a length-scaled tolerance.
struct SurfaceOracle {
  std::vector<SurfaceRep> reps;
  explicit SurfaceOracle(int count = 2) {
    for (int i = 0; i < count; ++i) reps.push_back(SurfaceRep::make(0x5eed + 977 * i));
  }

  bool is_identity(const Letters& w) const {
    for (const auto& r : reps) {
      Mat m = r.eval_raw(w);
      long double tol = 1e-10L * std::pow(4.0L, static_cast<long double>(w.size()) / 2);
      if (norm(add(m, scale(Mat{}, -1))) > tol) return false;
    }
    return true;
  }

  std::vector<long double> traces(const Letters& w) const {
    std::vector<long double> out;
    for (const auto& r : reps) out.push_back(tr(r.eval_raw(w)));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Free group F_2 on x (0), y (1): homomorphisms of the genus-2 group onto F_2
// that kill the relator, and an independent cyclic normal form.

inline Letters f_reduce(const Letters& w) {
  Letters out;
  for (Letter l : w) {
    if (!out.empty() && (out.back() ^ 1) == l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Letters f_inverse(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (auto& l : out) l ^= 1;
  return out;
}

inline Letters f_cyclic_form(Letters w) {
  w = f_reduce(w);
  while (w.size() >= 2 && (w.front() ^ 1) == w.back()) w = Letters(w.begin() + 1, w.end() - 1);
  Letters best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    Letters r(w.begin() + i, w.end());
    r.insert(r.end(), w.begin(), w.begin() + i);
    best = std::min(best, r);
  }
  return best;
}

using Pinch = std::array<Letters, 4>;

inline std::vector<Pinch> pinch_maps() {
  const Letters x{0}, y{2}, one{};
  auto cat = [](Letters a, const Letters& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  return {
      {x, y, y, x},
      {y, x, x, y},
      {x, one, y, one},
      {one, x, one, y},
      {x, one, one, y},
      {one, x, y, one},
      {x, y, y, cat(x, y)},
      {x, y, y, cat(x, cat(y, y))},
      {x, y, y, cat(x, f_inverse(y))},
  };
}

inline Letters apply_pinch(const Pinch& p, const Letters& w) {
  Letters out;
  for (Letter l : w) {
    const Letters& img = p[l >> 1];
    Letters piece = (l & 1) ? f_inverse(img) : img;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return f_reduce(out);
}

// Independent enumeration of all freely reduced words of a given length.
inline std::vector<Letters> reduced_words(int letter_count, int length) {
  std::vector<Letters> out{Letters{}};
  for (int k = 0; k < length; ++k) {
    std::vector<Letters> next;
    for (const auto& w : out)
      for (int l = 0; l < letter_count; ++l) {
        if (!w.empty() && (w.back() ^ 1) == l) continue;
        Letters v = w;
        v.push_back(static_cast<Letter>(l));
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

// Bounded conjugator search using the matrix oracle for the word problem.
inline bool conjugate_by_search(const SurfaceOracle& O, const Letters& a, const Letters& b,
                                int max_len) {
  for (int len = 0; len <= max_len; ++len)
    for (const auto& u : reduced_words(8, len)) {
      Letters w = u;
      w.insert(w.end(), a.begin(), a.end());
      Letters ui = f_inverse(u);
      w.insert(w.end(), ui.begin(), ui.end());
      Letters bi = f_inverse(b);
      w.insert(w.end(), bi.begin(), bi.end());
      if (O.is_identity(f_reduce(w))) return true;
    }
  return false;
}

}  // namespace oracle
