#include <doctest.h>

#include <random>

#include "loopforge/errors.hpp"
#include "loopforge/turaev.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

const Presentation F3 = Presentation::free(3);
const Presentation S2 = Presentation::surface(2);

ReducedWord W(const char* s) { return ReducedWord::parse(F3, s); }

ReducedWord ambn(int m, int n) { return W("a").pow(m) * W("b").pow(n); }

std::size_t expected_comp(int m, int n) { return static_cast<std::size_t>(m * n + (m - 1) * (n - 1)); }

// Distinct terms of Comp must already differ on conjugacy classes. A term and
// its own reverse may agree there; only the g-classes tell them apart.
bool separated_by_traces(const oracle::SurfaceOracle& O, const TensorTerm& s, const TensorTerm& t) {
  auto ts = O.traces(s.left.letters()), tt = O.traces(t.left.letters());
  auto us = O.traces(s.right.letters()), ut = O.traces(t.right.letters());
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (std::fabs(ts[i] - tt[i]) > 1e-6L || std::fabs(us[i] - ut[i]) > 1e-6L) return true;
  return false;
}

}  // namespace

TEST_CASE("term normalization") {
  std::vector<TensorTerm> t{{W("a"), W("b"), 1}, {W("b"), W("a"), -1}, {W("a"), W("b"), 2}, {W("c"), W("c"), 1},
                            {W("c"), W("c"), -1}};
  auto n = normalize_terms(t);
  REQUIRE(n.size() == 2);
  CHECK(n[0] == TensorTerm{W("a"), W("b"), 3});
  CHECK(n[1] == TensorTerm{W("b"), W("a"), -1});
  CHECK_FALSE(is_antisymmetric(n));
  CHECK(is_antisymmetric(normalize_terms({{W("a"), W("b"), 2}, {W("b"), W("a"), -2}})));

  // Trivial classes are zero symbols.
  auto mu = MuElement::from_pairs(W("a b"), {{W("a A"), W("b")}, {W("a"), ReducedWord(F3)}});
  CHECK(mu.is_zero());
}

TEST_CASE("cobracket v") {
  ChartAtlas A;
  auto gates = GateSystem::standard(A);
  Vertex v0{Chart::V, {0, 0}}, v1{Chart::V, {0, 3}}, v2{Chart::V, {0, 6}};
  CHECK(cobracket_v(CurveDiagram(A, {v0, v1, v2}), gates).terms.empty());

  auto v11 = cobracket_v(make_eggbeater_curve(1, 1), gates);
  ReducedWord c = conj_canonical(W("c")).canonical;
  ReducedWord acb = conj_canonical(W("a C b")).canonical;
  CHECK(v11.terms == normalize_terms({{c, acb, 1}, {acb, c, -1}}));

  auto v21 = cobracket_v(make_eggbeater_curve(2, 1), gates);
  CHECK(v21.raw.size() == 4);
  CHECK(is_antisymmetric(v21.terms));
}

TEST_CASE("mu of a curve") {
  auto mu11 = mu_of_curve(make_eggbeater_curve(1, 1));
  CHECK(mu11.base() == W("a b"));
  REQUIRE(mu11.terms().size() == 2);
  auto expect = MuElement::from_terms(
      W("a b"), {{W("a c A"), W("a C b"), 1}, {W("a C b"), W("a c A"), -1}});
  CHECK(mu11 == expect);

  ChartAtlas A;
  CHECK(mu_of_curve(CurveDiagram(A, {{Chart::V, {0, 0}}, {Chart::V, {0, 3}}, {Chart::V, {0, 6}}})).is_zero());

  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      auto mu = mu_of_curve(make_eggbeater_curve(m, n));
      CHECK(mu == mu_eggbeater_closed_form(m, n));
      CHECK(is_antisymmetric(mu.terms()));
      CHECK(mu.base() == ambn(m, n));
    }
}

TEST_CASE("split classes satisfy a2 ~ a1^-1 g") {
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      auto c = make_eggbeater_curve(m, n);
      CurveReading r(c, GateSystem::standard(c.atlas()));
      const ReducedWord& g = r.word();
      for (const auto& y : self_intersections(c)) {
        auto [a1, a2] = split_at(r, y);
        if (is_identity(a1.inverse() * g)) continue;
        CHECK(g_equiv_canonical(g, a2) == g_equiv_canonical(g, a1.inverse() * g));
      }
    }
}

TEST_CASE("mu is invariant under reparameterization") {
  auto c = make_eggbeater_curve(2, 3);
  auto mu = mu_of_curve(c);
  for (std::size_t seg = 0; seg < c.size(); seg += 2) CHECK(mu_of_curve(c.subdivided(seg, mpq_class(3, 11))) == mu);

  // Sliding the basepoint along arcs that cross no gate and no other strand.
  CurveReading r(c, GateSystem::standard(c.atlas()));
  auto pts = self_intersections(c);
  int slides = 0;
  for (std::size_t b = 1; b < c.size(); ++b) {
    mpq_class t(static_cast<long>(b));
    bool clear = r.between(0, t).empty();
    for (const auto& y : pts) clear = clear && y.t > t;
    if (!clear) continue;
    ++slides;
    CHECK(mu_of_curve(c.with_basepoint(b)) == mu);
  }
  CHECK(slides > 0);
}

TEST_CASE("closed form and Comp") {
  auto mu11 = mu_eggbeater_closed_form(1, 1);
  CHECK(mu11.terms().size() == 2);
  CHECK(comp(mu11).pairs.size() == 1);

  auto mu22 = mu_eggbeater_closed_form(2, 2);
  auto c22 = comp(mu22);
  CHECK(c22.pairs.size() == 5);
  CHECK(c22.plus.size() == 5);
  CHECK(c22.minus.size() == 5);

  for (int n = 1; n <= 4; ++n) CHECK(comp(mu_eggbeater_closed_form(1, n)).pairs.size() == static_cast<std::size_t>(n));

  CHECK(comp(MuElement{}).pairs.empty());
  CHECK_THROWS_AS(mu_eggbeater_closed_form(0, 1), DomainError);
}

TEST_CASE("pushforward map") {
  auto f = PushforwardMap::genus2();
  CHECK(f.apply(W("a")) == ReducedWord::parse(S2, "g1 g3"));
  CHECK(f.apply(W("b")) == ReducedWord::parse(S2, "g3 g2 G1 G2"));
  CHECK(f.apply(W("c")) == ReducedWord::parse(S2, "g3"));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> L(0, 5), len(0, 8);
  for (int trial = 0; trial < 200; ++trial) {
    Letters x, y;
    for (int i = len(rng); i > 0; --i) x.push_back(static_cast<Letter>(L(rng)));
    for (int i = len(rng); i > 0; --i) y.push_back(static_cast<Letter>(L(rng)));
    ReducedWord X(F3, x), Y(F3, y);
    CHECK(f.apply(X * Y) == f.apply(X) * f.apply(Y));
    CHECK(f.apply(X.inverse()) == f.apply(X).inverse());
  }

  Presentation F2 = Presentation::free(2);
  auto x = ReducedWord::parse(F2, "a"), yy = ReducedWord::parse(F2, "b"), one = ReducedWord(F2);
  CHECK_THROWS_AS(PushforwardMap(S2, F2, {x, yy, one, one}), DomainError);
  CHECK_NOTHROW(PushforwardMap(S2, F2, {x, yy, yy, x}));
  CHECK_THROWS_AS(PushforwardMap(F3, S2, {f.images()[0], f.images()[1]}), DomainError);
}

TEST_CASE("pushforward of mu into the genus-2 group") {
  auto f = PushforwardMap::genus2();
  oracle::SurfaceOracle O(3);

  auto r11 = pushforward_mu(mu_eggbeater_closed_form(1, 1), f);
  CHECK(r11.mu.terms().size() == 2);
  CHECK(r11.report.empty());

  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      auto mu = mu_eggbeater_closed_form(m, n);
      auto r = pushforward_mu(mu, f);
      CHECK(r.report.empty());
      CHECK(comp(r.mu).pairs.size() == expected_comp(m, n));
      CHECK(is_antisymmetric(r.mu.terms()));
      std::vector<TensorTerm> positive;
      for (const auto& [x, y] : comp(r.mu).pairs) positive.push_back({x, y, 1});
      for (std::size_t i = 0; i < positive.size(); ++i)
        for (std::size_t j = i + 1; j < positive.size(); ++j) CHECK(separated_by_traces(O, positive[i], positive[j]));
    }

  auto zero = pushforward_mu(MuElement{}, f);
  CHECK(zero.mu.is_zero());
  CHECK(zero.report.empty());

  CHECK_THROWS_AS(pushforward_mu(mu_eggbeater_closed_form(1, 1), PushforwardMap(F3, F3, {W("a"), W("b"), W("c")})),
                  DomainError);
}

TEST_CASE("pushforward detects merging") {
  // Sending c to 1 kills the second family of terms of mu(ab).
  Presentation S = Presentation::surface(2);
  PushforwardMap kill(F3, S, {ReducedWord::parse(S, "g1"), ReducedWord::parse(S, "g2"), ReducedWord(S)});
  auto r = pushforward_mu(mu_eggbeater_closed_form(1, 1), kill);
  CHECK(r.mu.is_zero());
  CHECK_FALSE(r.report.empty());

  // a and b sent to the same element: terms of mu(a^2 b^2) collide.
  PushforwardMap same(F3, S, {ReducedWord::parse(S, "g1"), ReducedWord::parse(S, "g1"), ReducedWord::parse(S, "g3")});
  auto r2 = pushforward_mu(mu_eggbeater_closed_form(2, 2), same);
  bool collided = false;
  for (const auto& e : r2.report) collided = collided || e.kind != CancellationEvent::Kind::vanished;
  CHECK(collided);
}

TEST_CASE("pushforward into genus 3 with supplied images") {
  Presentation S3 = Presentation::surface(3);
  PushforwardMap f(F3, S3,
                   {ReducedWord::parse(S3, "g1 g3"), ReducedWord::parse(S3, "g3 g2 G1 G2"), ReducedWord::parse(S3, "g3")});
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n <= 3; ++n) {
      auto r = pushforward_mu(mu_eggbeater_closed_form(m, n), f);
      CHECK(r.report.empty());
      CHECK(comp(r.mu).pairs.size() == expected_comp(m, n));
    }
}
