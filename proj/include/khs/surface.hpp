#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace khs {

struct Letter {
  int gen = 0;
  int exp = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

// a < a' < b < b' < ...
inline int letter_code(Letter l) { return 2 * l.gen + (l.exp < 0 ? 1 : 0); }

using Word = std::vector<Letter>;

bool word_less(const Word& x, const Word& y);
struct WordLess {
  bool operator()(const Word& x, const Word& y) const { return word_less(x, y); }
};

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& x, const Word& y);
// Freely and cyclically reduced, then minimal over all rotations of w and w^-1.
Word reduce_cyclic(const Word& w);

enum class CurveKind { Trivial, MoebiusBounding, Unbounding };

struct CurveClass {
  Word canonical;
  CurveKind kind = CurveKind::Trivial;
  int sided = 1;
  friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

enum class Catalogue { PlanarHoles, OrientableWithBoundary, MoebiusBand };

struct Band {
  std::string id;
  bool flipped = false;
  friend bool operator==(const Band&, const Band&) = default;
};

class SurfaceModel {
 public:
  SurfaceModel() = default;  // the disk
  static SurfaceModel planar_holes(int holes);
  static SurfaceModel orientable(int genus, int boundary);
  static SurfaceModel moebius();

  Catalogue catalogue() const { return cat_; }
  int param(int k) const { return k == 0 ? p0_ : p1_; }
  const std::vector<Band>& bands() const { return bands_; }
  const std::vector<int>& attachment() const { return attach_; }
  int generators() const { return static_cast<int>(bands_.size()); }
  bool is_orientable() const;

  int generator(std::string_view id) const;  // -1 if absent
  CurveClass classify(const Word& w) const;  // throws on foreign generators
  void check_word(const Word& w) const;

  std::string word_text(const Word& w) const;
  Word parse_word(std::string_view text) const;  // throws std::invalid_argument
  std::string header() const;                    // "planar_holes 2", ...

  friend bool operator==(const SurfaceModel&, const SurfaceModel&) = default;

 private:
  Catalogue cat_ = Catalogue::PlanarHoles;
  int p0_ = 0, p1_ = 0;
  std::vector<Band> bands_;
  std::vector<int> attach_;
};

// Psi grading: Unbounding class -> nonzero coefficient, sorted by canonical word.
class GradingS {
 public:
  using Entry = std::pair<Word, int>;
  GradingS() = default;
  static GradingS single(const Word& canonical, int coef);

  const std::vector<Entry>& entries() const { return e_; }
  bool empty() const { return e_.empty(); }
  int coef(const Word& canonical) const;

  void add(const Word& canonical, int coef);
  GradingS operator+(const GradingS& o) const;
  GradingS negate() const;
  // eps[k] applies to entries()[k]
  GradingS flip(const std::vector<int>& eps) const;

  std::string text(const SurfaceModel& F) const;  // "0" when empty

  friend bool operator==(const GradingS&, const GradingS&) = default;
  friend bool operator<(const GradingS& x, const GradingS& y);

 private:
  std::vector<Entry> e_;
};

GradingS grading_add(const GradingS& a, const GradingS& b);
GradingS grading_negate(const GradingS& s);
GradingS grading_flip(const GradingS& s, const std::vector<int>& eps);
GradingS parse_grading(std::string_view text, const SurfaceModel& F);

}  // namespace khs
