#pragma once

// Barcodes of half-open bars (a, b], delta-matchings and the bottleneck
// distance.

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace loopforge {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bar {
  double a = 0;
  double b = kInf;  // +inf for (a, inf)
  long mult = 1;

  bool infinite() const { return b == kInf; }
  double length() const { return b - a; }
  bool operator==(const Bar&) const = default;
};

class Barcode {
 public:
  Barcode() = default;
  // Validates (a finite, a < b, mult >= 1), merges equal intervals and sorts
  // by (a, b).
  explicit Barcode(std::vector<Bar> bars);

  const std::vector<Bar>& bars() const { return bars_; }
  bool empty() const { return bars_.empty(); }
  // Number of bars counted with multiplicity.
  std::size_t total() const;
  // One entry per bar with multiplicity, in sorted order. Matchings index into
  // this list.
  std::vector<Bar> expanded() const;

  bool operator==(const Barcode&) const = default;

 private:
  std::vector<Bar> bars_;
};

Barcode direct_sum(const Barcode& x, const Barcode& y);

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (index in A, index in B), expanded
};

// A delta-matching if one exists.
std::optional<Matching> delta_match(const Barcode& A, const Barcode& B, double delta);

struct BottleneckResult {
  double distance = 0;  // +inf when the numbers of infinite bars differ
  Matching witness;     // a distance-matching; empty when distance is infinite
};

BottleneckResult bottleneck(const Barcode& A, const Barcode& B);

enum class Stability { consistent, violated };

struct StabilityResult {
  Stability verdict = Stability::consistent;
  double distance = 0;
  double hofer = 0;
};

// d_bot(A, B) <= hofer, or the data cannot come from the stability theorem.
StabilityResult stability_check(const Barcode& A, const Barcode& B, double hofer);

}  // namespace loopforge
