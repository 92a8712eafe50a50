#include <map>
#include <sstream>

#include "khs/diagram.hpp"

namespace khs {

ParseError::ParseError(int l, int c, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
      line(l),
      column(c) {}

namespace {

struct Cursor {
  const std::string& s;
  int line;
  size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  std::string token() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t' && s[pos] != '\r' && s[pos] != ':') ++pos;
    return s.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& msg, int column = -1) const {
    throw ParseError(line, column < 0 ? col() : column, msg);
  }
};

int to_int(Cursor& cur, const std::string& tok, int column) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    cur.fail("expected an integer, got '" + tok + "'", column);
  }
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  Diagram D;
  std::map<std::string, int> index;
  bool have_surface = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = raw.substr(0, raw.find('#'));
    Cursor cur{line, lineno};
    if (cur.done()) continue;
    const int kw_col = cur.col();
    const std::string kw = cur.token();
    if (kw == "surface") {
      if (have_surface) cur.fail("duplicate surface line", kw_col);
      const int col = (cur.skip_ws(), cur.col());
      const std::string kind = cur.token();
      if (kind == "planar_holes") {
        const int c2 = (cur.skip_ws(), cur.col());
        D.surface = SurfaceModel::planar_holes(to_int(cur, cur.token(), c2));
      } else if (kind == "orientable") {
        const int c2 = (cur.skip_ws(), cur.col());
        const int g = to_int(cur, cur.token(), c2);
        const int c3 = (cur.skip_ws(), cur.col());
        const int b = to_int(cur, cur.token(), c3);
        if (g < 0 || b < 1) cur.fail("orientable surface needs genus >= 0 and boundary >= 1", c2);
        D.surface = SurfaceModel::orientable(g, b);
      } else if (kind == "moebius") {
        D.surface = SurfaceModel::moebius();
      } else {
        cur.fail("unsupported surface '" + kind +
                     "': RP2 and closed surfaces unsupported: d^2=0 fails over Z, see paper Example 5.2",
                 col);
      }
      have_surface = true;
    } else if (!have_surface) {
      cur.fail("the first statement must be 'surface'", kw_col);
    } else if (kw == "crossing") {
      const int col = (cur.skip_ws(), cur.col());
      const std::string name = cur.token();
      if (name.empty()) cur.fail("crossing name expected", col);
      if (!D.edges.empty()) cur.fail("crossings must be declared before edges", kw_col);
      if (index.count(name)) cur.fail("duplicate crossing '" + name + "'", col);
      index[name] = D.crossings();
      D.names.push_back(name);
    } else if (kw == "edge" || kw == "loop") {
      Edge e;
      if (kw == "edge") {
        for (SlotRef* s : {&e.a, &e.b}) {
          const int col = (cur.skip_ws(), cur.col());
          const std::string ref = cur.token();
          const size_t dot = ref.rfind('.');
          if (dot == std::string::npos) cur.fail("slot reference must look like name.k", col);
          auto it = index.find(ref.substr(0, dot));
          if (it == index.end()) cur.fail("unknown crossing '" + ref.substr(0, dot) + "'", col);
          const std::string slot = ref.substr(dot + 1);
          if (slot.size() != 1 || slot[0] < '0' || slot[0] > '3')
            cur.fail("slot must be 0..3", col + static_cast<int>(dot) + 1);
          *s = {it->second, slot[0] - '0'};
        }
      }
      cur.skip_ws();
      if (cur.pos >= line.size() || line[cur.pos] != ':') cur.fail("expected ':'");
      ++cur.pos;
      const int wcol = (cur.skip_ws(), cur.col());
      try {
        e.word = D.surface.parse_word(line.substr(cur.pos));
      } catch (const std::invalid_argument& err) {
        cur.fail(err.what(), wcol);
      }
      if (kw == "edge")
        D.edges.push_back(std::move(e));
      else
        D.loops.push_back({std::move(e.word), {}});
    } else {
      cur.fail("unknown statement '" + kw + "'", kw_col);
    }
  }
  if (!have_surface) throw ParseError(lineno + 1, 1, "missing 'surface' line");
  try {
    D.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(lineno + 1, 1, err.what());
  }
  D.fill_marks();
  return D;
}

std::string emit_diagram(const Diagram& D) {
  std::ostringstream out;
  out << "surface " << D.surface.header() << "\n";
  for (const std::string& n : D.names) out << "crossing " << n << "\n";
  auto ref = [&](SlotRef s) { return D.names[static_cast<size_t>(s.crossing)] + "." + std::to_string(s.slot); };
  for (const Edge& e : D.edges) {
    out << "edge " << ref(e.a) << " " << ref(e.b) << " :";
    if (!e.word.empty()) out << " " << D.surface.word_text(e.word);
    out << "\n";
  }
  for (const Loop& l : D.loops) {
    out << "loop :";
    if (!l.word.empty()) out << " " << D.surface.word_text(l.word);
    out << "\n";
  }
  return out.str();
}

}  // namespace khs
