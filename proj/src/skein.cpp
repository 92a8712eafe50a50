#include "khs/skein.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace khs {

LaurentPoly LaurentPoly::mono(std::int64_t c, int e) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::loop_value() { return mono(-1, 2) + mono(-1, -2); }

std::int64_t LaurentPoly::coef(int e) const {
  auto it = t_.find(e);
  return it == t_.end() ? 0 : it->second;
}

void LaurentPoly::add_term(int e, std::int64_t c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh && (it->second += c) == 0) t_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [e1, c1] : a.t_)
    for (const auto& [e2, c2] : b.t_) p.add_term(e1 + e2, c1 * c2);
  return p;
}

LaurentPoly LaurentPoly::scaled(std::int64_t k) const {
  LaurentPoly p;
  for (const auto& [e, c] : t_) p.add_term(e, c * k);
  return p;
}

LaurentPoly LaurentPoly::shifted(int s) const {
  LaurentPoly p;
  for (const auto& [e, c] : t_) p.t_[e + s] = c;
  return p;
}

std::string LaurentPoly::text() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : t_) {
    if (!out.empty()) out += " + ";
    out += std::to_string(c) + "*A^" + std::to_string(e);
  }
  return out;
}

BasisElement BasisElement::of(const std::vector<Word>& classes) {
  std::map<Word, int, WordLess> count;
  for (const Word& w : classes) ++count[w];
  BasisElement b;
  b.parts.assign(count.begin(), count.end());
  return b;
}

int BasisElement::size() const {
  int n = 0;
  for (const auto& p : parts) n += p.second;
  return n;
}

bool operator<(const BasisElement& x, const BasisElement& y) {
  return std::lexicographical_compare(x.parts.begin(), x.parts.end(), y.parts.begin(), y.parts.end(),
                                      [](const auto& a, const auto& b) {
                                        if (word_less(a.first, b.first)) return true;
                                        if (word_less(b.first, a.first)) return false;
                                        return a.second < b.second;
                                      });
}

namespace {

// Contribution of one crossingless picture: trivial circles become loop values.
void add_picture(BracketExpansion& E, const std::vector<CurveClass>& circles, const LaurentPoly& weight) {
  LaurentPoly w = weight;
  std::vector<Word> rest;
  for (const CurveClass& c : circles) {
    if (c.kind == CurveKind::Trivial)
      w = w * LaurentPoly::loop_value();
    else
      rest.push_back(c.canonical);
  }
  if (w.zero()) return;
  LaurentPoly& slot = E[BasisElement::of(rest)];
  slot += w;
  if (slot.zero()) E.erase(BasisElement::of(rest));
}

void merge_into(BracketExpansion& into, const BracketExpansion& from) {
  for (const auto& [b, p] : from) {
    LaurentPoly& slot = into[b];
    slot += p;
    if (slot.zero()) into.erase(b);
  }
}

void recurse(const Diagram& D, const LaurentPoly& weight, BracketExpansion& out) {
  if (D.crossings() == 0) {
    std::vector<CurveClass> circles;
    for (const Loop& l : D.loops) circles.push_back(D.surface.classify(l.word));
    add_picture(out, circles, weight);
    return;
  }
  recurse(splice(D, 0, +1), weight.shifted(1), out);
  recurse(splice(D, 0, -1), weight.shifted(-1), out);
}

std::int64_t binom(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BracketExpansion kauffman_bracket(const Diagram& D, Exec exec) {
  const int c = D.crossings();
  const std::uint32_t masks = 1u << c;
  std::vector<BracketExpansion> part(masks);
  const bool par = exec == Exec::Parallel;
#pragma omp parallel for schedule(dynamic) if (par)
  for (std::int64_t m = 0; m < static_cast<std::int64_t>(masks); ++m) {
    const auto mask = static_cast<std::uint32_t>(m);
    const Smoothing sm = smooth_mask(D, mask);
    std::vector<CurveClass> circles;
    for (const Circle& C : sm.circles) circles.push_back(C.cls);
    add_picture(part[mask], circles, LaurentPoly::mono(1, c - 2 * __builtin_popcount(mask)));
  }
  BracketExpansion E;
  for (const auto& p : part) merge_into(E, p);
  return E;
}

BracketExpansion bracket_recursive(const Diagram& D) {
  BracketExpansion E;
  recurse(D, LaurentPoly::mono(1, 0), E);
  return E;
}

QCoefficients phi_expand(const BracketExpansion& E, const SurfaceModel& F) {
  QCoefficients Q;
  for (const auto& [b, p] : E) {
    std::vector<std::pair<GradingS, std::int64_t>> terms{{GradingS{}, 1}};
    for (const auto& [w, n] : b.parts) {
      std::vector<std::pair<GradingS, std::int64_t>> next;
      if (F.classify(w).kind == CurveKind::MoebiusBounding) {
        for (auto& [s, c] : terms) next.push_back({s, c << n});
      } else {
        for (const auto& [s, c] : terms)
          for (int k = 0; k <= n; ++k) {
            GradingS t = s;
            t.add(w, n - 2 * k);
            next.push_back({t, c * binom(n, k)});
          }
      }
      terms = std::move(next);
    }
    for (const auto& [s, c] : terms) {
      LaurentPoly& slot = Q[s];
      slot += p.scaled(c);
      if (slot.zero()) Q.erase(s);
    }
  }
  return Q;
}

LaurentPoly euler_characteristic(const HomologyTable& T, const GradingS& s) {
  LaurentPoly chi;
  for (const auto& [g, A] : T.groups) {
    if (!(g.s == s) || A.rank == 0) continue;
    const int half = (g.j - g.i) / 2;
    chi += LaurentPoly::mono(half % 2 ? -A.rank : A.rank, g.j);
  }
  return chi;
}

QCoefficients euler_characteristics(const HomologyTable& T) {
  QCoefficients Q;
  for (const auto& [g, A] : T.groups)
    if (!Q.count(g.s)) {
      LaurentPoly chi = euler_characteristic(T, g.s);
      if (!chi.zero()) Q[g.s] = chi;
    }
  return Q;
}

BracketExpansion recover_p(const QCoefficients& Q, const SurfaceModel& F) {
  if (!F.is_orientable()) throw std::invalid_argument("recover_p: surface must be orientable");
  QCoefficients rest = Q;
  BracketExpansion E;
  auto degree = [](const GradingS& s) {
    int d = 0;
    for (const auto& [w, k] : s.entries()) d += std::abs(k);
    return d;
  };
  while (!rest.empty()) {
    auto top = std::max_element(rest.begin(), rest.end(),
                                [&](const auto& x, const auto& y) { return degree(x.first) < degree(y.first); });
    std::vector<Word> classes;
    for (const auto& [w, k] : top->first.entries())
      for (int r = 0; r < std::abs(k); ++r) classes.push_back(w);
    const BasisElement b = BasisElement::of(classes);
    const LaurentPoly p = top->second;
    E[b] = p;
    for (const auto& [s, c] : phi_expand({{b, p}}, F)) {
      LaurentPoly& slot = rest[s];
      slot -= c;
      if (slot.zero()) rest.erase(s);
    }
    for (const auto& [s, c] : rest) {
      bool same_profile = degree(s) == b.size();
      for (const auto& [w, k] : s.entries()) {
        auto it = std::find_if(b.parts.begin(), b.parts.end(), [&](const auto& x) { return x.first == w; });
        same_profile &= it != b.parts.end() && it->second == std::abs(k);
      }
      if (same_profile) throw std::invalid_argument("recover_p: coefficients are not in the image of phi");
    }
  }
  return E;
}

BracketExpansion moebius_grouped_sums(const BracketExpansion& E, const SurfaceModel& F) {
  BracketExpansion out;
  for (const auto& [b, p] : E) {
    BasisElement base;
    int moeb = 0;
    for (const auto& part : b.parts) {
      if (F.classify(part.first).kind == CurveKind::MoebiusBounding)
        moeb += part.second;
      else
        base.parts.push_back(part);
    }
    LaurentPoly& slot = out[base];
    slot += p.scaled(std::int64_t{1} << moeb);
    if (slot.zero()) out.erase(base);
  }
  return out;
}

std::string basis_text(const BasisElement& b, const SurfaceModel& F) {
  if (b.parts.empty()) return "1";
  std::string out;
  for (const auto& [w, n] : b.parts) {
    if (!out.empty()) out += '*';
    const std::string t = F.word_text(w);
    out += w.size() > 1 ? "(" + t + ")" : t;
    out += "^" + std::to_string(n);
  }
  return out;
}

std::string bracket_text(const BracketExpansion& E, const SurfaceModel& F) {
  std::ostringstream out;
  for (const auto& [b, p] : E) out << basis_text(b, F) << " ; " << p.text() << '\n';
  return out.str();
}

}  // namespace khs
