#include "loopforge/barcodes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "loopforge/errors.hpp"

namespace loopforge {

Barcode::Barcode(std::vector<Bar> bars) {
  std::map<std::pair<double, double>, long> acc;
  for (const auto& x : bars) {
    if (!std::isfinite(x.a)) throw DomainError("bar birth must be finite");
    if (std::isnan(x.b) || !(x.a < x.b))
      throw DomainError("bar (" + std::to_string(x.a) + ", " + std::to_string(x.b) + "] is empty");
    if (x.mult < 1) throw DomainError("bar multiplicity must be positive");
    acc[{x.a, x.b}] += x.mult;
  }
  for (const auto& [k, m] : acc) bars_.push_back({k.first, k.second, m});
}

std::size_t Barcode::total() const {
  std::size_t n = 0;
  for (const auto& x : bars_) n += static_cast<std::size_t>(x.mult);
  return n;
}

std::vector<Bar> Barcode::expanded() const {
  std::vector<Bar> out;
  for (const auto& x : bars_)
    for (long i = 0; i < x.mult; ++i) out.push_back({x.a, x.b, 1});
  return out;
}

Barcode direct_sum(const Barcode& x, const Barcode& y) {
  std::vector<Bar> all = x.bars();
  all.insert(all.end(), y.bars().begin(), y.bars().end());
  return Barcode(std::move(all));
}

namespace {

// Endpoint sup-distance; +inf unless both bars are finite or both infinite.
double endpoint_distance(const Bar& x, const Bar& y) {
  if (x.infinite() != y.infinite()) return kInf;
  double d = std::fabs(x.a - y.a);
  if (!x.infinite()) d = std::max(d, std::fabs(x.b - y.b));
  return d;
}

bool may_stay_unmatched(const Bar& x, double delta) { return !x.infinite() && x.length() <= 2 * delta; }

// Bipartite graph on (A + diagonal slots for B) x (B + diagonal slots for A);
// a perfect matching is exactly a delta-matching plus bookkeeping.
std::optional<Matching> match(const std::vector<Bar>& A, const std::vector<Bar>& B, double delta) {
  const std::size_t n = A.size(), m = B.size(), N = n + m;
  auto edge = [&](std::size_t i, std::size_t j) {
    if (i < n && j < m) return endpoint_distance(A[i], B[j]) <= delta;
    if (i < n) return j - m == i && may_stay_unmatched(A[i], delta);
    if (j < m) return i - n == j && may_stay_unmatched(B[j], delta);
    return true;
  };
  std::vector<std::size_t> owner(N, N);
  std::vector<char> seen;
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    // Starting at column i makes identical barcodes match bar to bar.
    for (std::size_t t = 0; t < N; ++t) {
      std::size_t j = (i + t) % N;
      if (seen[j] || !edge(i, j)) continue;
      seen[j] = 1;
      if (owner[j] == N || self(self, owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < N; ++i) {
    seen.assign(N, 0);
    if (!augment(augment, i)) return std::nullopt;
  }
  Matching out;
  for (std::size_t j = 0; j < m; ++j)
    if (owner[j] < n) out.pairs.push_back({owner[j], j});
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

}  // namespace

std::optional<Matching> delta_match(const Barcode& A, const Barcode& B, double delta) {
  if (std::isnan(delta) || delta < 0) throw DomainError("delta must be non-negative");
  return match(A.expanded(), B.expanded(), delta);
}

BottleneckResult bottleneck(const Barcode& A, const Barcode& B) {
  auto ea = A.expanded(), eb = B.expanded();
  auto infinite_count = [](const std::vector<Bar>& v) {
    return std::count_if(v.begin(), v.end(), [](const Bar& x) { return x.infinite(); });
  };
  BottleneckResult r;
  if (infinite_count(ea) != infinite_count(eb)) {
    r.distance = kInf;
    return r;
  }
  // The optimum is a pair distance or a half-length.
  std::vector<double> cand{0};
  for (const auto& x : ea)
    if (!x.infinite()) cand.push_back(x.length() / 2);
  for (const auto& y : eb)
    if (!y.infinite()) cand.push_back(y.length() / 2);
  for (const auto& x : ea)
    for (const auto& y : eb) {
      double d = endpoint_distance(x, y);
      if (d < kInf) cand.push_back(d);
    }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::size_t lo = 0, hi = cand.size() - 1;
  auto best = match(ea, eb, cand[hi]);
  if (!best) throw Error("internal: largest bottleneck candidate is not feasible");
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (auto m = match(ea, eb, cand[mid])) {
      hi = mid;
      best = std::move(m);
    } else {
      lo = mid + 1;
    }
  }
  r.distance = cand[hi];
  r.witness = std::move(*best);
  return r;
}

StabilityResult stability_check(const Barcode& A, const Barcode& B, double hofer) {
  if (std::isnan(hofer) || hofer < 0) throw DomainError("Hofer distance must be non-negative");
  StabilityResult r;
  r.distance = bottleneck(A, B).distance;
  r.hofer = hofer;
  r.verdict = r.distance <= hofer ? Stability::consistent : Stability::violated;
  return r;
}

}  // namespace loopforge
