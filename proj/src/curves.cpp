#include "loopforge/curves.hpp"

#include <algorithm>
#include <cctype>

#include "loopforge/errors.hpp"

namespace loopforge {

namespace {

mpq_class floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(f);
}

mpq_class ceil_q(const mpq_class& q) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return mpq_class(c);
}

long to_long(const mpq_class& integral) { return mpz_class(integral.get_num()).get_si(); }

mpq_class cross(const mpq_class& ax, const mpq_class& ay, const mpq_class& bx, const mpq_class& by) {
  return ax * by - ay * bx;
}

RationalPoint lerp(const RationalPoint& a, const RationalPoint& b, const mpq_class& s) {
  return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)};
}

RationalPoint shifted(const RationalPoint& p, const mpq_class& dy) { return {p.x, p.y + dy}; }

struct Hit {
  mpq_class s;
  mpq_class u;
};

// Intersection of segments a0a1 and b0b1. Degenerate (zero-length) first
// segments are allowed; they come from clipping. Collinear overlaps of
// positive length raise GeneralPositionError.
std::optional<Hit> intersect(const RationalPoint& a0, const RationalPoint& a1, const RationalPoint& b0,
                             const RationalPoint& b1) {
  const mpq_class dax = a1.x - a0.x, day = a1.y - a0.y;
  const mpq_class dbx = b1.x - b0.x, dby = b1.y - b0.y;
  const mpq_class ex = b0.x - a0.x, ey = b0.y - a0.y;
  const mpq_class d = cross(dax, day, dbx, dby);
  if (d != 0) {
    mpq_class s = cross(ex, ey, dbx, dby) / d;
    mpq_class u = cross(ex, ey, dax, day) / d;
    if (s < 0 || s > 1 || u < 0 || u > 1) return std::nullopt;
    return Hit{s, u};
  }
  // Parallel. Only collinear configurations can meet.
  if (cross(ex, ey, dbx, dby) != 0) return std::nullopt;
  const mpq_class lb = dbx * dbx + dby * dby;
  auto proj_b = [&](const RationalPoint& p) -> mpq_class { return ((p.x - b0.x) * dbx + (p.y - b0.y) * dby) / lb; };
  if (dax == 0 && day == 0) {
    mpq_class u = proj_b(a0);
    if (u < 0 || u > 1) return std::nullopt;
    return Hit{0, u};
  }
  if (cross(ex, ey, dax, day) != 0) return std::nullopt;
  mpq_class u0 = proj_b(a0), u1 = proj_b(a1);
  mpq_class lo = std::max(mpq_class(0), std::min(u0, u1));
  mpq_class hi = std::min(mpq_class(1), std::max(u0, u1));
  if (lo > hi) return std::nullopt;
  if (lo < hi) throw GeneralPositionError("collinear overlapping strands");
  // Single touching point.
  mpq_class s = (lo - u0) / (u1 - u0);
  return Hit{s, lo};
}

std::pair<mpq_class, mpq_class> y_range(const Segment& s) {
  return {std::min(s.a.y, s.b.y), std::max(s.a.y, s.b.y)};
}

// Lifts j such that [lo1,hi1] and [lo2,hi2] + jL overlap.
std::pair<long, long> shift_range(const mpq_class& lo1, const mpq_class& hi1, const mpq_class& lo2,
                                  const mpq_class& hi2, const mpq_class& L) {
  return {to_long(ceil_q((lo1 - hi2) / L)), to_long(floor_q((hi1 - lo2) / L))};
}

int sgn(const mpq_class& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::pair<mpq_class, mpq_class> apply_linear(const std::array<int, 4>& m, const mpq_class& x,
                                             const mpq_class& y) {
  return {m[0] * x + m[1] * y, m[2] * x + m[3] * y};
}

struct RawHit {
  std::size_t i, j;
  mpq_class s, u;
  Chart chart;
  RationalPoint where;  // in `chart`
  std::pair<mpq_class, mpq_class> da, db;  // tangents, both in `chart`
};

}  // namespace

// ---------------------------------------------------------------------------

std::string chart_name(Chart c) { return c == Chart::V ? "V" : "H"; }

Chart parse_chart(const std::string& s) {
  if (s == "V" || s == "v") return Chart::V;
  if (s == "H" || s == "h") return Chart::H;
  throw MalformedInput("unknown chart '" + s + "'");
}

std::string rational_to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class parse_rational(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw MalformedInput("empty rational");
  auto valid_int = [](const std::string& t) {
    std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (k >= t.size()) return false;
    for (; k < t.size(); ++k)
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) return false;
    return true;
  };
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (ip.empty() || ip == "-" || ip == "+") ip += "0";
      if (!valid_int(ip) || (!fp.empty() && !valid_int(fp)) || (!fp.empty() && (fp[0] == '-' || fp[0] == '+')))
        throw MalformedInput("bad rational '" + raw + "'");
      mpz_class scale = 1;
      for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
      mpz_class frac = fp.empty() ? mpz_class(0) : mpz_class(fp);
      mpq_class v(mpz_class(ip[0] == '+' ? ip.substr(1) : ip));
      mpq_class f(frac, scale);
      f.canonicalize();
      return neg ? mpq_class(v - f) : mpq_class(v + f);
    }
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
      throw MalformedInput("bad rational '" + raw + "'");
    mpz_class d(den);
    if (d == 0) throw MalformedInput("zero denominator in '" + raw + "'");
    mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw MalformedInput("bad rational '" + raw + "'");
  }
}

// ---------------------------------------------------------------------------
// ChartAtlas

ChartAtlas::ChartAtlas(mpq_class L) : L_(std::move(L)) {
  L_.canonicalize();
  if (L_ <= 4) throw DomainError("cylinder length L must exceed 4 so the gluing squares are disjoint");
}

mpq_class ChartAtlas::wrap(const mpq_class& y) const { return y - floor_q(y / L_) * L_; }

std::optional<int> ChartAtlas::square_of(const RationalPoint& p) const {
  if (p.x < -1 || p.x > 1) return std::nullopt;
  mpq_class y = wrap(p.y);
  if (y <= 1 || y >= L_ - 1) return 0;
  mpq_class half = L_ / 2;
  if (y >= half - 1 && y <= half + 1) return 1;
  return std::nullopt;
}

std::optional<RationalPoint> ChartAtlas::to_other(Chart from, const RationalPoint& p) const {
  auto k = square_of(p);
  if (!k) return std::nullopt;
  mpq_class y = wrap(p.y);
  if (*k == 0 && y > 1) y -= L_;
  const mpq_class half = L_ / 2;
  if (from == Chart::V) {
    if (*k == 0) return RationalPoint{-y, p.x};
    return RationalPoint{y - half, -p.x + half};
  }
  if (*k == 0) return RationalPoint{y, -p.x};
  return RationalPoint{half - y, p.x + half};
}

std::optional<RationalPoint> ChartAtlas::convert(const Vertex& v, Chart target) const {
  if (v.chart == target) return v.p;
  return to_other(v.chart, v.p);
}

std::array<int, 4> ChartAtlas::gluing_linear(Chart from, int square) {
  if (from == Chart::V) return square == 0 ? std::array<int, 4>{0, -1, 1, 0} : std::array<int, 4>{0, 1, -1, 0};
  return square == 0 ? std::array<int, 4>{0, 1, -1, 0} : std::array<int, 4>{0, -1, 1, 0};
}

std::pair<int, int> ChartAtlas::gluing_determinants() const {
  auto det = [](const std::array<int, 4>& m) { return m[0] * m[3] - m[1] * m[2]; };
  return {det(gluing_linear(Chart::V, 0)), det(gluing_linear(Chart::V, 1))};
}

// ---------------------------------------------------------------------------
// CurveDiagram

CurveDiagram::CurveDiagram(ChartAtlas atlas, std::vector<Vertex> vertices, std::size_t basepoint)
    : atlas_(std::move(atlas)), vertices_(std::move(vertices)), basepoint_(basepoint) {
  const std::size_t n = vertices_.size();
  if (n < 2) throw DomainError("a closed curve needs at least two vertices");
  if (basepoint_ >= n) throw DomainError("basepoint index out of range");
  for (auto& v : vertices_) {
    if (v.p.x < -1 || v.p.x > 1) throw DomainError("vertex outside the chart strip |x| <= 1");
    v.p.x.canonicalize();
    v.p.y.canonicalize();
  }
  const mpq_class& L = atlas_.L();
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& v = vertices_[i];
    const Vertex& w = vertices_[(i + 1) % n];
    auto end = atlas_.convert(w, v.chart);
    if (!end)
      throw DomainError("consecutive vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                        " do not share a chart");
    mpq_class dy = end->y - v.p.y;
    dy -= floor_q(dy / L + mpq_class(1, 2)) * L;
    if (dy * 2 >= L || dy * 2 <= -L)
      throw DomainError("segment " + std::to_string(i) + " spans half the cylinder; add a vertex");
    RationalPoint b{end->x, v.p.y + dy};
    if (b == v.p) throw DomainError("degenerate segment " + std::to_string(i));
    segments_.push_back({v.chart, v.p, b});
  }
}

mpq_class CurveDiagram::parameter(std::size_t segment, const mpq_class& s) const {
  const std::size_t n = vertices_.size();
  return mpq_class(static_cast<long>((segment + n - basepoint_) % n)) + s;
}

CurveDiagram CurveDiagram::with_basepoint(std::size_t b) const { return CurveDiagram(atlas_, vertices_, b); }

CurveDiagram CurveDiagram::subdivided(std::size_t segment, const mpq_class& s) const {
  if (segment >= segments_.size() || s <= 0 || s >= 1) throw DomainError("bad subdivision");
  const Segment& seg = segments_[segment];
  RationalPoint p = lerp(seg.a, seg.b, s);
  p.y = atlas_.wrap(p.y);
  auto verts = vertices_;
  verts.insert(verts.begin() + static_cast<std::ptrdiff_t>(segment + 1), Vertex{seg.chart, p});
  std::size_t b = basepoint_ > segment ? basepoint_ + 1 : basepoint_;
  return CurveDiagram(atlas_, std::move(verts), b);
}

// ---------------------------------------------------------------------------
// Intersections

std::vector<IntersectionPoint> self_intersections(const CurveDiagram& c) {
  const auto& segs = c.segments();
  const auto& atlas = c.atlas();
  const mpq_class& L = atlas.L();
  const std::size_t n = segs.size();
  std::vector<RawHit> raw;

  auto adjacent_endpoint = [&](std::size_t i, std::size_t j, const mpq_class& s, const mpq_class& u) {
    return (s == 1 && u == 0 && (i + 1) % n == j) || (s == 0 && u == 1 && (j + 1) % n == i);
  };
  auto accept = [&](std::size_t i, std::size_t j, const mpq_class& s, const mpq_class& u) {
    if (adjacent_endpoint(i, j, s, u)) return false;
    if (s == 0 || s == 1 || u == 0 || u == 1)
      throw GeneralPositionError("a vertex lies on another strand (segments " + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
    return true;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Segment& A = segs[i];
      const Segment& B = segs[j];
      const auto da = std::make_pair(A.b.x - A.a.x, A.b.y - A.a.y);
      if (A.chart == B.chart) {
        auto [loA, hiA] = y_range(A);
        auto [loB, hiB] = y_range(B);
        auto [k0, k1] = shift_range(loA, hiA, loB, hiB, L);
        for (long k = k0; k <= k1; ++k) {
          mpq_class off = L * k;
          auto hit = intersect(A.a, A.b, shifted(B.a, off), shifted(B.b, off));
          if (!hit || !accept(i, j, hit->s, hit->u)) continue;
          raw.push_back({i, j, hit->s, hit->u, A.chart, lerp(A.a, A.b, hit->s), da,
                         {B.b.x - B.a.x, B.b.y - B.a.y}});
        }
        continue;
      }
      // Different charts: clip the V strand to each square lift, map it into
      // H, and intersect there.
      const bool a_is_v = A.chart == Chart::V;
      const Segment& Vs = a_is_v ? A : B;
      const Segment& Hs = a_is_v ? B : A;
      auto [loV, hiV] = y_range(Vs);
      auto [loH, hiH] = y_range(Hs);
      for (int sq = 0; sq < 2; ++sq) {
        const mpq_class center = sq == 0 ? mpq_class(0) : L / 2;
        auto [k0, k1] = shift_range(loV, hiV, center - 1, center + 1, L);
        for (long k = k0; k <= k1; ++k) {
          const mpq_class lo = center - 1 + L * k, hi = center + 1 + L * k;
          mpq_class s0, s1;
          const mpq_class dy = Vs.b.y - Vs.a.y;
          if (dy == 0) {
            if (Vs.a.y < lo || Vs.a.y > hi) continue;
            s0 = 0;
            s1 = 1;
          } else {
            mpq_class p = (lo - Vs.a.y) / dy, q = (hi - Vs.a.y) / dy;
            if (p > q) std::swap(p, q);
            s0 = std::max(mpq_class(0), p);
            s1 = std::min(mpq_class(1), q);
            if (s0 > s1) continue;
          }
          auto to_h = [&](const mpq_class& s) {
            RationalPoint v = lerp(Vs.a, Vs.b, s);
            v.y -= L * k;
            auto [X, Y] = apply_linear(ChartAtlas::gluing_linear(Chart::V, sq), v.x, v.y);
            if (sq == 1) {
              X -= L / 2;
              Y += L / 2;
            }
            return RationalPoint{X, Y};
          };
          RationalPoint p0 = to_h(s0), p1 = to_h(s1);
          const mpq_class ylo = std::min(p0.y, p1.y), yhi = std::max(p0.y, p1.y);
          auto [h0, h1] = shift_range(ylo, yhi, loH, hiH, L);
          for (long kh = h0; kh <= h1; ++kh) {
            mpq_class off = L * kh;
            auto hit = intersect(p0, p1, shifted(Hs.a, off), shifted(Hs.b, off));
            if (!hit) continue;
            mpq_class sv = s0 + hit->s * (s1 - s0);
            mpq_class uh = hit->u;
            mpq_class s = a_is_v ? sv : uh, u = a_is_v ? uh : sv;
            if (!accept(i, j, s, u)) continue;
            RationalPoint where = lerp(Vs.a, Vs.b, sv);
            auto dv = std::make_pair(Vs.b.x - Vs.a.x, Vs.b.y - Vs.a.y);
            auto dh = apply_linear(ChartAtlas::gluing_linear(Chart::H, sq), Hs.b.x - Hs.a.x, Hs.b.y - Hs.a.y);
            raw.push_back({i, j, s, u, Chart::V, where, a_is_v ? dv : dh, a_is_v ? dh : dv});
          }
        }
      }
    }

  std::vector<IntersectionPoint> out;
  for (const auto& h : raw) {
    IntersectionPoint p;
    mpq_class ti = c.parameter(h.i, h.s), tj = c.parameter(h.j, h.u);
    int orient = sgn(cross(h.da.first, h.da.second, h.db.first, h.db.second));
    if (orient == 0) throw GeneralPositionError("tangential intersection");
    if (ti < tj) {
      p.t = ti;
      p.t_prime = tj;
      p.segment = h.i;
      p.segment_prime = h.j;
      p.sign = orient;
    } else {
      p.t = tj;
      p.t_prime = ti;
      p.segment = h.j;
      p.segment_prime = h.i;
      p.sign = -orient;
    }
    p.chart = h.chart;
    p.location = {h.where.x, atlas.wrap(h.where.y)};
    p.square = atlas.square_of(p.location).value_or(-1);
    out.push_back(std::move(p));
  }

  // Triple points show up as two hits at the same surface point.
  auto key = [&](const IntersectionPoint& p) {
    RationalPoint q = p.location;
    Chart ch = p.chart;
    if (ch == Chart::H && p.square >= 0) {
      q = *atlas.to_other(Chart::H, q);
      ch = Chart::V;
    }
    return std::make_tuple(ch, q.x, atlas.wrap(q.y));
  };
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      if (key(out[a]) == key(out[b])) throw GeneralPositionError("triple point");

  std::sort(out.begin(), out.end(), [](const IntersectionPoint& x, const IntersectionPoint& y) {
    return x.t != y.t ? x.t < y.t : x.t_prime < y.t_prime;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Gates and word reading

GateSystem::GateSystem(const ChartAtlas& atlas, std::vector<Gate> gates)
    : gates_(std::move(gates)), pres_(Presentation::free(3)) {
  if (!gates_.empty()) pres_ = gates_.front().label.presentation();
  for (auto& g : gates_) {
    g.level = atlas.wrap(g.level);
    if (atlas.square_of({0, g.level})) throw DomainError("gates must avoid the gluing squares");
    if (!(g.label.presentation() == pres_)) throw DomainError("gate labels use different presentations");
  }
}

GateSystem GateSystem::standard(const ChartAtlas& atlas) {
  const Presentation F3 = Presentation::free(3);
  const mpq_class& L = atlas.L();
  return GateSystem(atlas, {
                               {Chart::V, L / 4, ReducedWord::parse(F3, "a")},
                               {Chart::H, L / 4, ReducedWord::parse(F3, "c")},
                               {Chart::H, 3 * L / 4, ReducedWord::parse(F3, "C b")},
                           });
}

CurveReading::CurveReading(const CurveDiagram& c, const GateSystem& gates) : word_(gates.presentation()) {
  const auto& segs = c.segments();
  const std::size_t n = segs.size();
  const mpq_class& L = c.atlas().L();
  length_ = mpq_class(static_cast<long>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (c.basepoint() + k) % n;
    const Segment& s = segs[i];
    auto [lo, hi] = y_range(s);
    for (const Gate& g : gates.gates()) {
      if (g.chart != s.chart) continue;
      long j0 = to_long(ceil_q((lo - g.level) / L)), j1 = to_long(floor_q((hi - g.level) / L));
      for (long j = j0; j <= j1; ++j) {
        mpq_class y = g.level + L * j;
        if (y == s.a.y || y == s.b.y)
          throw TransversalityError("curve touches a gate at a vertex (segment " + std::to_string(i) + ")");
        mpq_class u = (y - s.a.y) / (s.b.y - s.a.y);
        mpq_class x = s.a.x + u * (s.b.x - s.a.x);
        if (x == 1 || x == -1) throw TransversalityError("curve meets a gate endpoint");
        ReducedWord lab = s.b.y > s.a.y ? g.label : g.label.inverse();
        crossings_.push_back({mpq_class(static_cast<long>(k)) + u, lab});
      }
    }
  }
  std::stable_sort(crossings_.begin(), crossings_.end(),
                   [](const GateCrossing& a, const GateCrossing& b) { return a.t < b.t; });
  for (const auto& x : crossings_) word_ = word_ * x.letters;
}

ReducedWord CurveReading::between(const mpq_class& t0, const mpq_class& t1) const {
  ReducedWord w(word_.presentation());
  for (const auto& x : crossings_)
    if (x.t > t0 && x.t < t1) w = w * x.letters;
  return w;
}

ReducedWord CurveReading::forward_arc(const mpq_class& t0, const mpq_class& t1) const {
  if (t0 <= t1) return between(t0, t1);
  return between(t0, length_) * between(0, t1);
}

ReducedWord read_word(const CurveDiagram& c, const GateSystem& gates) { return CurveReading(c, gates).word(); }

ReducedWord read_word(const CurveDiagram& c) { return read_word(c, GateSystem::standard(c.atlas())); }

std::pair<ReducedWord, ReducedWord> split_at(const CurveReading& r, const IntersectionPoint& y) {
  if (y.sign == 0) throw GeneralPositionError("intersection without tangent orientation");
  for (const auto& x : r.crossings())
    if (x.t == y.t || x.t == y.t_prime) throw TransversalityError("intersection point lies on a gate");
  ReducedWord P = r.between(0, y.t);
  ReducedWord Q = r.between(y.t, y.t_prime);
  ReducedWord R = r.between(y.t_prime, r.length());
  ReducedWord loop_q = P * Q * P.inverse();
  ReducedWord loop_r = P * R;
  if (y.sign > 0) return {loop_q, loop_r};
  return {loop_r, loop_q};
}

std::pair<ReducedWord, ReducedWord> split_at(const CurveDiagram& c, const IntersectionPoint& y,
                                             const GateSystem& gates) {
  return split_at(CurveReading(c, gates), y);
}

// ---------------------------------------------------------------------------
// Monogon / bigon search

namespace {

// Arc [from, to] going forward on the circle of length len, as at most two
// plain intervals.
std::vector<std::pair<mpq_class, mpq_class>> plain(const ArcInterval& a, const mpq_class& len) {
  if (a.from <= a.to) return {{a.from, a.to}};
  return {{a.from, len}, {0, a.to}};
}

bool arcs_contained(const std::vector<ArcInterval>& inner, const std::vector<ArcInterval>& outer,
                    const mpq_class& len) {
  std::vector<std::pair<mpq_class, mpq_class>> out;
  for (const auto& a : outer)
    for (auto& p : plain(a, len)) out.push_back(p);
  for (const auto& a : inner)
    for (const auto& [lo, hi] : plain(a, len)) {
      bool inside = false;
      for (const auto& [olo, ohi] : out)
        if (olo <= lo && hi <= ohi) inside = true;
      if (!inside) return false;
    }
  return true;
}

}  // namespace

namespace {

std::vector<DiscCertificate> disc_candidates(const CurveDiagram& c, const GateSystem& gates, bool local_only) {
  const auto points = self_intersections(c);
  const CurveReading r(c, gates);
  const mpq_class len = r.length();
  std::vector<DiscCertificate> found;

  for (std::size_t a = 0; a < points.size(); ++a) {
    const auto& y = points[a];
    for (const ArcInterval& arc : {ArcInterval{y.t, y.t_prime}, ArcInterval{y.t_prime, y.t}}) {
      ReducedWord w = r.forward_arc(arc.from, arc.to);
      if (w.empty()) found.push_back({DiscCertificate::Kind::monogon, {a}, {arc}, w});
    }
  }

  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      struct P {
        mpq_class t;
        bool at_a;
      };
      std::vector<P> ps{{points[a].t, true}, {points[a].t_prime, true}, {points[b].t, false},
                        {points[b].t_prime, false}};
      std::sort(ps.begin(), ps.end(), [](const P& x, const P& y) { return x.t < y.t; });
      // Arcs between cyclically consecutive parameters joining a to b,
      // oriented from a to b.
      std::vector<std::pair<ArcInterval, ReducedWord>> arcs;
      for (std::size_t k = 0; k < 4; ++k) {
        const P& p = ps[k];
        const P& q = ps[(k + 1) % 4];
        if (p.at_a == q.at_a) continue;
        ArcInterval iv{p.t, q.t};
        ReducedWord w = r.forward_arc(iv.from, iv.to);
        arcs.push_back({iv, p.at_a ? w : w.inverse()});
      }
      for (std::size_t x = 0; x < arcs.size(); ++x)
        for (std::size_t z = x + 1; z < arcs.size(); ++z) {
          ReducedWord loop = arcs[x].second * arcs[z].second.inverse();
          if (local_only && !arcs[x].second.empty()) continue;
          if (loop.empty())
            found.push_back({DiscCertificate::Kind::bigon, {a, b}, {arcs[x].first, arcs[z].first}, loop});
        }
    }

  std::vector<DiscCertificate> innermost;
  for (std::size_t x = 0; x < found.size(); ++x) {
    bool dominated = false;
    for (std::size_t z = 0; z < found.size() && !dominated; ++z) {
      if (z == x) continue;
      bool in = arcs_contained(found[z].arcs, found[x].arcs, len);
      bool out = arcs_contained(found[x].arcs, found[z].arcs, len);
      if (in && !out) dominated = true;
    }
    if (!dominated) innermost.push_back(found[x]);
  }
  return innermost;
}

}  // namespace

std::vector<DiscCertificate> detect_bigons_monogons(const CurveDiagram& c, const GateSystem& gates) {
  return disc_candidates(c, gates, true);
}

std::vector<DiscCertificate> singular_discs(const CurveDiagram& c, const GateSystem& gates) {
  return disc_candidates(c, gates, false);
}

std::vector<DiscCertificate> detect_bigons_monogons(const CurveDiagram& c) {
  return detect_bigons_monogons(c, GateSystem::standard(c.atlas()));
}

// ---------------------------------------------------------------------------
// The spiral family

CurveDiagram make_eggbeater_curve(int m, int n, const ChartAtlas& atlas) {
  if (m < 1 || n < 1) throw DomainError("m and n must be positive");
  const mpq_class& L = atlas.L();
  const mpq_class half = L / 2;
  auto xv = [&](int p) -> mpq_class { return mpq_class(-1) + mpq_class(p + 1, m + 1); };
  auto xh = [&](int q) -> mpq_class { return mpq_class(1) - mpq_class(q + 1, n + 1); };
  std::vector<Vertex> vs;
  auto push = [&](Chart ch, mpq_class x, mpq_class y) {
    x.canonicalize();
    y.canonicalize();
    vs.push_back({ch, {x, atlas.wrap(y)}});
  };

  // V phase: level p runs through square p (S_0 for even p, S_1 for odd p).
  push(Chart::V, xv(0), -xh(2 * n));
  for (int p = 0; p < 2 * m; ++p) {
    push(Chart::V, xv(p), half * p + 1);
    push(Chart::V, xv(p + 1), half * (p + 1) - 1);
  }
  // Hand over to H inside S_0 at the point (x_{2m}, -X_0).
  push(Chart::H, xh(0), xv(2 * m));
  for (int q = 0; q < 2 * n; ++q) {
    push(Chart::H, xh(q), half * q + 1);
    push(Chart::H, xh(q + 1), half * (q + 1) - 1);
  }
  return CurveDiagram(atlas, std::move(vs), 0);
}

}  // namespace loopforge
