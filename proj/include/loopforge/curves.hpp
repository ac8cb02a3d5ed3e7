#pragma once

// Exact model of the eggbeater surface C_V' U C_H' as two width-2 cylinders
// [-1,1] x R/LZ glued along the squares
//   S_0 = [-1,1] x [-1,1]          and   S_1 = [-1,1] x [L/2-1, L/2+1]
// by VH_0(x,y) = (-y, x) and VH_1(x,y) = (y - L/2, -x + L/2).
//
// Curves are closed polylines with rational vertices. A segment is drawn in
// the chart of its start vertex; if the end vertex lives in the other chart
// it must lie in a gluing square and is converted. Between consecutive
// vertices y is unwrapped to the lift with |dy| < L/2.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/group.hpp"

namespace loopforge {

enum class Chart { V, H };

std::string chart_name(Chart c);
Chart parse_chart(const std::string& s);

struct RationalPoint {
  mpq_class x;
  mpq_class y;
  bool operator==(const RationalPoint& o) const { return x == o.x && y == o.y; }
};

struct Vertex {
  Chart chart;
  RationalPoint p;
};

class ChartAtlas {
 public:
  explicit ChartAtlas(mpq_class L = 8);

  const mpq_class& L() const { return L_; }

  // y reduced into [0, L).
  mpq_class wrap(const mpq_class& y) const;
  // Index of the gluing square containing p (closed squares), if any.
  std::optional<int> square_of(const RationalPoint& p) const;
  // Coordinates of p in the other chart; p must lie in a square.
  std::optional<RationalPoint> to_other(Chart from, const RationalPoint& p) const;
  std::optional<RationalPoint> convert(const Vertex& v, Chart target) const;

  // Linear part of the gluing from `from` to the other chart on square k,
  // as a row-major 2x2 integer matrix.
  static std::array<int, 4> gluing_linear(Chart from, int square);
  // Determinants of the linear parts of VH_0 and VH_1.
  std::pair<int, int> gluing_determinants() const;

 private:
  mpq_class L_;
};

struct Segment {
  Chart chart;
  RationalPoint a;  // start, in `chart`
  RationalPoint b;  // end, in `chart`, y unwrapped relative to a
};

class CurveDiagram {
 public:
  CurveDiagram(ChartAtlas atlas, std::vector<Vertex> vertices, std::size_t basepoint = 0);

  const ChartAtlas& atlas() const { return atlas_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t basepoint() const { return basepoint_; }
  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return vertices_.size(); }

  // Parameter along the curve measured from the basepoint: segment i at local
  // parameter s in [0,1] sits at ((i - basepoint) mod N) + s.
  mpq_class parameter(std::size_t segment, const mpq_class& s) const;

  CurveDiagram with_basepoint(std::size_t b) const;
  // Inserts a vertex at local parameter s of segment i (0 < s < 1).
  CurveDiagram subdivided(std::size_t segment, const mpq_class& s) const;

 private:
  ChartAtlas atlas_;
  std::vector<Vertex> vertices_;
  std::size_t basepoint_;
  std::vector<Segment> segments_;
};

struct IntersectionPoint {
  mpq_class t;        // earlier parameter
  mpq_class t_prime;  // later parameter
  std::size_t segment = 0;
  std::size_t segment_prime = 0;
  Chart chart = Chart::V;  // chart of `location`
  RationalPoint location;
  // Gluing square containing the point, or -1.
  int square = -1;
  // +1 if (tangent at t, tangent at t') is positively oriented.
  int sign = 0;
};

// A gate is a full-width transversal circle {y = level} in one chart.
// Crossing it in the +y direction appends `label`, in the -y direction its
// inverse.
struct Gate {
  Chart chart;
  mpq_class level;
  ReducedWord label;
};

class GateSystem {
 public:
  GateSystem(const ChartAtlas& atlas, std::vector<Gate> gates);
  // Gates realizing the free basis a, b, c of pi_1 of C_V' U C_H' (L > 4):
  // V at y = L/4 reads a; H at y = L/4 reads c; H at y = 3L/4 reads c^-1 b.
  static GateSystem standard(const ChartAtlas& atlas);

  const std::vector<Gate>& gates() const { return gates_; }
  const Presentation& presentation() const { return pres_; }

 private:
  std::vector<Gate> gates_;
  Presentation pres_;
};

struct GateCrossing {
  mpq_class t;
  ReducedWord letters;
};

// The ordered gate crossings of a curve. Words of sub-arcs are read off it.
class CurveReading {
 public:
  CurveReading(const CurveDiagram& c, const GateSystem& gates);

  const std::vector<GateCrossing>& crossings() const { return crossings_; }
  const ReducedWord& word() const { return word_; }
  // Word of the arc (t0, t1) with 0 <= t0 <= t1 <= N.
  ReducedWord between(const mpq_class& t0, const mpq_class& t1) const;
  // Word of the arc going forward from t0 to t1, wrapping through the
  // basepoint when t1 < t0.
  ReducedWord forward_arc(const mpq_class& t0, const mpq_class& t1) const;
  mpq_class length() const { return length_; }

 private:
  std::vector<GateCrossing> crossings_;
  ReducedWord word_;
  mpq_class length_;
};

std::vector<IntersectionPoint> self_intersections(const CurveDiagram& c);

ReducedWord read_word(const CurveDiagram& c, const GateSystem& gates);
ReducedWord read_word(const CurveDiagram& c);

// Based classes (a1, a2) of the two loops obtained by splitting at y.
std::pair<ReducedWord, ReducedWord> split_at(const CurveDiagram& c, const IntersectionPoint& y,
                                             const GateSystem& gates);
std::pair<ReducedWord, ReducedWord> split_at(const CurveReading& reading,
                                             const IntersectionPoint& y);

struct ArcInterval {
  mpq_class from;  // parameter where the arc starts
  mpq_class to;    // parameter where it ends, going forward (may wrap)
};

struct DiscCertificate {
  enum class Kind { monogon, bigon };
  Kind kind;
  std::vector<std::size_t> points;  // indices into self_intersections()
  std::vector<ArcInterval> arcs;
  ReducedWord boundary;  // trivial word of the boundary loop
};

// Monogon and bigon faces: one arc from an intersection point back to itself,
// or two arcs joining two intersection points, each arc reading the trivial
// word, so the disc they bound lies in the simply connected complement of the
// gates. Only innermost candidates are reported: a candidate whose arcs
// strictly contain the arcs of another is dropped.
std::vector<DiscCertificate> detect_bigons_monogons(const CurveDiagram& c, const GateSystem& gates);
std::vector<DiscCertificate> detect_bigons_monogons(const CurveDiagram& c);

// The homotopy version: every one- or two-arc loop that is null-homotopic,
// i.e. every singular monogon or bigon. By Hass-Scott a curve with excess
// self-intersection has one, so an empty result certifies minimal position.
std::vector<DiscCertificate> singular_discs(const CurveDiagram& c, const GateSystem& gates);

// The spiral representative of a^m b^n: m turns around C_V' drifting through
// 2m+1 radial levels spaced 1/(m+1), then n turns around C_H' with spacing
// 1/(n+1). Requires L > 4.
CurveDiagram make_eggbeater_curve(int m, int n, const ChartAtlas& atlas = ChartAtlas{});

// Exact rational helpers shared with the serializers.
std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(const std::string& s);

}  // namespace loopforge
