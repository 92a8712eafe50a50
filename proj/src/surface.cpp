#include "khs/surface.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace khs {

bool word_less(const Word& x, const Word& y) {
  return std::lexicographical_compare(
      x.begin(), x.end(), y.begin(), y.end(),
      [](Letter a, Letter b) { return letter_code(a) < letter_code(b); });
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l.exp = -l.exp;
  return out;
}

Word concat(const Word& x, const Word& y) {
  Word out = x;
  out.insert(out.end(), y.begin(), y.end());
  return free_reduce(out);
}

namespace {

Word cyclic_core(Word w) {
  w = free_reduce(w);
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo].gen == w[hi - 1].gen && w[lo].exp == -w[hi - 1].exp) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
}

void min_rotation(const Word& w, Word& best, bool& have) {
  const size_t n = w.size();
  for (size_t r = 0; r < n; ++r) {
    Word rot(w.begin() + static_cast<long>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<long>(r));
    if (!have || word_less(rot, best)) {
      best = std::move(rot);
      have = true;
    }
  }
}

}  // namespace

Word reduce_cyclic(const Word& w) {
  Word core = cyclic_core(w);
  if (core.empty()) return core;
  Word best;
  bool have = false;
  min_rotation(core, best, have);
  min_rotation(inverse(core), best, have);
  return best;
}

SurfaceModel SurfaceModel::planar_holes(int holes) {
  if (holes < 0) throw std::invalid_argument("planar_holes: negative hole count");
  SurfaceModel F;
  F.cat_ = Catalogue::PlanarHoles;
  F.p0_ = holes;
  F.bands_.clear();
  F.attach_.clear();
  for (int k = 0; k < holes; ++k) {
    F.bands_.push_back({std::string(1, static_cast<char>('a' + k)), false});
    F.attach_.push_back(k);
    F.attach_.push_back(k);
  }
  return F;
}

SurfaceModel SurfaceModel::orientable(int genus, int boundary) {
  if (genus < 0 || boundary < 1)
    throw std::invalid_argument("orientable: need genus >= 0 and boundary >= 1");
  SurfaceModel F;
  F.cat_ = Catalogue::OrientableWithBoundary;
  F.p0_ = genus;
  F.p1_ = boundary;
  F.bands_.clear();
  F.attach_.clear();
  int k = 0;
  auto name = [&](int i) { return std::string(1, static_cast<char>('a' + i)); };
  for (int g = 0; g < genus; ++g, k += 2) {
    F.bands_.push_back({name(k), false});
    F.bands_.push_back({name(k + 1), false});
    F.attach_.insert(F.attach_.end(), {k, k + 1, k, k + 1});
  }
  for (int b = 1; b < boundary; ++b, ++k) {
    F.bands_.push_back({name(k), false});
    F.attach_.insert(F.attach_.end(), {k, k});
  }
  if (F.bands_.size() > 26) throw std::invalid_argument("orientable: too many bands");
  return F;
}

SurfaceModel SurfaceModel::moebius() {
  SurfaceModel F = planar_holes(0);
  F.cat_ = Catalogue::MoebiusBand;
  F.bands_ = {{"a", true}};
  F.attach_ = {0, 0};
  return F;
}

bool SurfaceModel::is_orientable() const {
  return std::none_of(bands_.begin(), bands_.end(), [](const Band& b) { return b.flipped; });
}

int SurfaceModel::generator(std::string_view id) const {
  for (size_t k = 0; k < bands_.size(); ++k)
    if (bands_[k].id == id) return static_cast<int>(k);
  return -1;
}

void SurfaceModel::check_word(const Word& w) const {
  for (Letter l : w)
    if (l.gen < 0 || l.gen >= generators() || (l.exp != 1 && l.exp != -1))
      throw std::invalid_argument("word uses a generator absent from the surface");
}

CurveClass SurfaceModel::classify(const Word& w) const {
  check_word(w);
  CurveClass c;
  c.canonical = reduce_cyclic(w);
  int flips = 0;
  for (Letter l : c.canonical)
    if (bands_[static_cast<size_t>(l.gen)].flipped) ++flips;
  c.sided = (flips % 2) ? -1 : 1;
  if (c.canonical.empty())
    c.kind = CurveKind::Trivial;
  else if (cat_ == Catalogue::MoebiusBand && c.canonical == Word{{0, 1}, {0, 1}})
    c.kind = CurveKind::MoebiusBounding;
  else
    c.kind = CurveKind::Unbounding;
  return c;
}

std::string SurfaceModel::word_text(const Word& w) const {
  std::string out;
  for (size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += bands_.at(static_cast<size_t>(w[k].gen)).id;
    if (w[k].exp < 0) out += '\'';
  }
  return out;
}

Word SurfaceModel::parse_word(std::string_view text) const {
  Word w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    // tokens are normally one generator each; "ab'" is accepted as shorthand
    size_t pos = 0;
    while (pos < tok.size()) {
      size_t best = 0;
      int gen = -1;
      for (size_t k = 0; k < bands_.size(); ++k) {
        const std::string& id = bands_[k].id;
        if (id.size() > best && tok.compare(pos, id.size(), id) == 0) {
          best = id.size();
          gen = static_cast<int>(k);
        }
      }
      if (gen < 0)
        throw std::invalid_argument("unknown generator '" + tok.substr(pos) + "'");
      pos += best;
      int exp = 1;
      if (pos < tok.size() && tok[pos] == '\'') {
        exp = -1;
        ++pos;
      }
      w.push_back({gen, exp});
    }
  }
  return w;
}

std::string SurfaceModel::header() const {
  switch (cat_) {
    case Catalogue::PlanarHoles:
      return "planar_holes " + std::to_string(p0_);
    case Catalogue::OrientableWithBoundary:
      return "orientable " + std::to_string(p0_) + " " + std::to_string(p1_);
    case Catalogue::MoebiusBand:
      return "moebius";
  }
  return {};
}

GradingS GradingS::single(const Word& canonical, int coef) {
  GradingS s;
  s.add(canonical, coef);
  return s;
}

int GradingS::coef(const Word& canonical) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), canonical,
                             [](const Entry& e, const Word& w) { return word_less(e.first, w); });
  return (it != e_.end() && it->first == canonical) ? it->second : 0;
}

void GradingS::add(const Word& canonical, int coef) {
  if (coef == 0) return;
  auto it = std::lower_bound(e_.begin(), e_.end(), canonical,
                             [](const Entry& e, const Word& w) { return word_less(e.first, w); });
  if (it != e_.end() && it->first == canonical) {
    it->second += coef;
    if (it->second == 0) e_.erase(it);
  } else {
    e_.insert(it, {canonical, coef});
  }
}

GradingS GradingS::operator+(const GradingS& o) const {
  GradingS out = *this;
  for (const auto& [w, c] : o.e_) out.add(w, c);
  return out;
}

GradingS GradingS::negate() const {
  GradingS out = *this;
  for (auto& e : out.e_) e.second = -e.second;
  return out;
}

GradingS GradingS::flip(const std::vector<int>& eps) const {
  if (eps.size() != e_.size()) throw std::invalid_argument("flip: sign vector size mismatch");
  GradingS out = *this;
  for (size_t k = 0; k < eps.size(); ++k) out.e_[k].second *= eps[k];
  return out;
}

std::string GradingS::text(const SurfaceModel& F) const {
  if (e_.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < e_.size(); ++k) {
    if (k) out += ',';
    out += F.word_text(e_[k].first);
    out += ':';
    if (e_[k].second > 0) out += '+';
    out += std::to_string(e_[k].second);
  }
  return out;
}

bool operator<(const GradingS& x, const GradingS& y) {
  return std::lexicographical_compare(
      x.e_.begin(), x.e_.end(), y.e_.begin(), y.e_.end(),
      [](const GradingS::Entry& a, const GradingS::Entry& b) {
        if (word_less(a.first, b.first)) return true;
        if (word_less(b.first, a.first)) return false;
        return a.second < b.second;
      });
}

GradingS grading_add(const GradingS& a, const GradingS& b) { return a + b; }
GradingS grading_negate(const GradingS& s) { return s.negate(); }
GradingS grading_flip(const GradingS& s, const std::vector<int>& eps) { return s.flip(eps); }

GradingS parse_grading(std::string_view text, const SurfaceModel& F) {
  GradingS s;
  std::string t(text);
  if (t == "0" || t.empty()) return s;
  size_t start = 0;
  while (start <= t.size()) {
    size_t comma = t.find(',', start);
    std::string item = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    size_t colon = item.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("grading entry without ':'");
    Word w = reduce_cyclic(F.parse_word(item.substr(0, colon)));
    s.add(w, std::stoi(item.substr(colon + 1)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

}  // namespace khs
