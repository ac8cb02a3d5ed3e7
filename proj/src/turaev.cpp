#include "loopforge/turaev.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "loopforge/errors.hpp"

namespace loopforge {

std::vector<TensorTerm> normalize_terms(std::vector<TensorTerm> terms) {
  std::map<std::pair<ReducedWord, ReducedWord>, long> acc;
  for (auto& t : terms) acc[{std::move(t.left), std::move(t.right)}] += t.coefficient;
  std::vector<TensorTerm> out;
  for (auto& [key, k] : acc)
    if (k != 0) out.push_back({key.first, key.second, k});
  return out;
}

bool is_antisymmetric(const std::vector<TensorTerm>& normalized) {
  std::map<std::pair<ReducedWord, ReducedWord>, long> k;
  for (const auto& t : normalized) k[{t.left, t.right}] += t.coefficient;
  for (const auto& [key, v] : k) {
    auto it = k.find({key.second, key.first});
    long w = it == k.end() ? 0 : it->second;
    if (v != -w) return false;
  }
  return true;
}

Cobracket cobracket_v(const CurveDiagram& c, const GateSystem& gates) {
  CurveReading reading(c, gates);
  Cobracket out;
  for (const auto& y : self_intersections(c)) {
    auto [a1, a2] = split_at(reading, y);
    if (is_identity(a1) || is_identity(a2)) continue;
    ReducedWord u1 = conj_canonical(a1).canonical;
    ReducedWord u2 = conj_canonical(a2).canonical;
    out.raw.push_back({u1, u2, 1});
    out.raw.push_back({u2, u1, -1});
  }
  out.terms = normalize_terms(out.raw);
  return out;
}

MuElement MuElement::from_pairs(const ReducedWord& g,
                                const std::vector<std::pair<ReducedWord, ReducedWord>>& pairs,
                                const GEquivOptions& opts) {
  std::vector<TensorTerm> terms;
  for (const auto& [x, y] : pairs) {
    if (!(x.presentation() == g.presentation()) || !(y.presentation() == g.presentation()))
      throw MalformedInput("mu terms and base word use different presentations");
    if (is_identity(x) || is_identity(y)) continue;
    ReducedWord cx = g_equiv_canonical(g, x, opts).canonical_rep;
    ReducedWord cy = g_equiv_canonical(g, y, opts).canonical_rep;
    terms.push_back({cx, cy, 1});
    terms.push_back({cy, cx, -1});
  }
  return from_terms(g, std::move(terms));
}

MuElement MuElement::from_terms(const ReducedWord& g, std::vector<TensorTerm> terms) {
  MuElement mu;
  mu.g_ = g;
  mu.terms_ = normalize_terms(std::move(terms));
  return mu;
}

MuElement mu_of_curve(const CurveDiagram& c, const GateSystem& gates) {
  CurveReading reading(c, gates);
  std::vector<std::pair<ReducedWord, ReducedWord>> pairs;
  for (const auto& y : self_intersections(c)) pairs.push_back(split_at(reading, y));
  return MuElement::from_pairs(reading.word(), pairs);
}

MuElement mu_of_curve(const CurveDiagram& c) { return mu_of_curve(c, GateSystem::standard(c.atlas())); }

MuElement mu_eggbeater_closed_form(int m, int n) {
  if (m < 1 || n < 1) throw DomainError("m and n must be positive");
  const Presentation F = Presentation::free(3);
  auto gen = [&](const char* s, int k) { return ReducedWord::parse(F, s).pow(k); };
  ReducedWord c = gen("c", 1);
  ReducedWord g = gen("a", m) * gen("b", n);
  std::vector<std::pair<ReducedWord, ReducedWord>> pairs;
  for (int i = 1; i <= m - 1; ++i)
    for (int k = 1; k <= n - 1; ++k)
      pairs.push_back({gen("a", i) * gen("b", k), gen("a", m) * gen("b", n - k) * gen("a", -i)});
  for (int i = 1; i <= m; ++i)
    for (int k = 0; k <= n - 1; ++k)
      pairs.push_back({gen("a", m) * gen("b", k) * c * gen("a", -i), gen("a", i) * c.inverse() * gen("b", n - k)});
  return MuElement::from_pairs(g, pairs);
}

Comp comp(const MuElement& mu) {
  Comp out;
  std::set<ReducedWord> plus, minus;
  for (const auto& t : mu.terms()) {
    if (t.coefficient <= 0) continue;
    out.pairs.push_back({t.left, t.right});
    if (plus.insert(t.left).second) out.plus.push_back(t.left);
    if (minus.insert(t.right).second) out.minus.push_back(t.right);
  }
  return out;
}

PushforwardMap::PushforwardMap(Presentation source, Presentation target, std::vector<ReducedWord> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.rank())
    throw DomainError("expected " + std::to_string(source_.rank()) + " generator images, got " +
                      std::to_string(images_.size()));
  for (const auto& w : images_)
    if (!(w.presentation() == target_)) throw DomainError("generator image outside the target group");
  if (source_.is_surface()) {
    Letters rel = source_.relator();
    if (!is_identity(apply(ReducedWord(source_, rel))))
      throw DomainError("generator images do not define a homomorphism: the relator maps to a nontrivial element");
  }
}

PushforwardMap PushforwardMap::genus2() {
  Presentation F = Presentation::free(3);
  Presentation S = Presentation::surface(2);
  return PushforwardMap(F, S,
                        {ReducedWord::parse(S, "g1 g3"), ReducedWord::parse(S, "g3 g2 G1 G2"),
                         ReducedWord::parse(S, "g3")});
}

ReducedWord PushforwardMap::apply(const ReducedWord& w) const {
  if (!(w.presentation() == source_)) throw MalformedInput("word is not in the source group");
  Letters out;
  for (Letter l : w.letters()) {
    const ReducedWord& img = images_[generator_of(l)];
    Letters piece = is_inverse_letter(l) ? img.inverse().letters() : img.letters();
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return ReducedWord(target_, out);
}

std::string event_kind_name(CancellationEvent::Kind k) {
  switch (k) {
    case CancellationEvent::Kind::vanished: return "vanished";
    case CancellationEvent::Kind::merged: return "merged";
    case CancellationEvent::Kind::cancelled: return "cancelled";
  }
  return "?";
}

PushforwardResult pushforward_mu(const MuElement& mu, const PushforwardMap& f, const GEquivOptions& opts) {
  if (!f.target().is_surface()) throw DomainError("pushforward target must be a surface group");
  PushforwardResult out;
  if (mu.is_zero()) {
    out.mu = MuElement::from_terms(mu.base().empty() ? ReducedWord(f.target()) : f.apply(mu.base()), {});
    return out;
  }
  if (!(mu.base().presentation() == f.source())) throw MalformedInput("mu is not over the map's source group");
  ReducedWord fg = f.apply(mu.base());

  std::map<std::pair<ReducedWord, ReducedWord>, std::vector<std::size_t>> groups;
  std::vector<TensorTerm> mapped;
  const auto& terms = mu.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    ReducedWord l = f.apply(terms[i].left), r = f.apply(terms[i].right);
    if (is_identity(l) || is_identity(r)) {
      out.report.push_back({CancellationEvent::Kind::vanished, {i},
                            "term " + std::to_string(i) + " maps to a trivial class"});
      continue;
    }
    ReducedWord cl = g_equiv_canonical(fg, l, opts).canonical_rep;
    ReducedWord cr = g_equiv_canonical(fg, r, opts).canonical_rep;
    groups[{cl, cr}].push_back(i);
    mapped.push_back({cl, cr, terms[i].coefficient});
  }
  for (const auto& [key, idx] : groups) {
    if (idx.size() < 2) continue;
    long total = 0;
    for (auto i : idx) total += terms[i].coefficient;
    std::string which;
    for (auto i : idx) which += (which.empty() ? "" : ", ") + std::to_string(i);
    auto kind = total == 0 ? CancellationEvent::Kind::cancelled : CancellationEvent::Kind::merged;
    out.report.push_back({kind, idx, "terms " + which + " map to " + key.first.to_string() + " (x) " +
                                         key.second.to_string()});
  }
  out.mu = MuElement::from_terms(fg, std::move(mapped));
  return out;
}

ReducedWord f_k_word(int k) {
  const Presentation S = Presentation::surface(2);
  ReducedWord g = ReducedWord::parse(S, "g1 g3 g3 g2 G1 G2");
  return g.pow(k) * ReducedWord::parse(S, "g1 g3 G1") * g.pow(-k) * ReducedWord::parse(S, "g2 g1 G2 G3 G1");
}

}  // namespace loopforge
