// khsurf: homology, bracket and verification for link diagrams on surfaces.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "khs/chainmaps.hpp"
#include "khs/diagram.hpp"
#include "khs/homology.hpp"
#include "khs/skein.hpp"
#include "khs/verify.hpp"

namespace {

using namespace khs;

constexpr int kOk = 0, kFailed = 1, kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Diagram load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_diagram(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

Coeff parse_coeff(const std::string& s) {
  if (s == "Z") return Coeff::Z;
  if (s == "Q") return Coeff::Q;
  if (s == "Z2") return Coeff::Z2;
  throw InputError("coefficients must be Z, Q or Z2");
}

int crossing_index(const Diagram& D, const std::string& name) {
  for (int k = 0; k < D.crossings(); ++k)
    if (D.names[static_cast<size_t>(k)] == name) return k;
  throw InputError("no crossing named '" + name + "'");
}

// "x1.2" -> (crossing, slot)
std::pair<int, int> parse_slot(const Diagram& D, const std::string& s) {
  const auto dot = s.rfind('.');
  if (dot == std::string::npos || dot + 2 != s.size() || s[dot + 1] < '0' || s[dot + 1] > '3')
    throw InputError("slot must look like <crossing>.<0-3>, got '" + s + "'");
  return {crossing_index(D, s.substr(0, dot)), s[dot + 1] - '0'};
}

Diagram apply_move(const Diagram& D, const std::string& move, const std::string& site) {
  try {
    if (move == "r1neg") {
      // "<crossing>.<slot>:<side>" for the edge leaving that slot, "loop<k>:<side>"
      const auto colon = site.rfind(':');
      if (colon == std::string::npos) throw InputError("r1neg site must be <slot>:<side> or loop<k>:<side>");
      const std::string where = site.substr(0, colon);
      const int side = std::stoi(site.substr(colon + 1));
      StrandRef ref;
      if (where.rfind("loop", 0) == 0) {
        ref = {true, std::stoi(where.substr(4)), false};
      } else {
        const auto [x, slot] = parse_slot(D, where);
        const auto [e, end] = D.slot_table()[static_cast<size_t>(SlotRef{x, slot}.index())];
        ref = {false, e, end == 1};
      }
      return apply_r1_neg(D, {ref, side});
    }
    if (move == "r2") {
      const auto [x, slot] = parse_slot(D, site);
      return apply_r2(D, corner_site(D, x, slot));
    }
    if (move == "r3") {
      std::vector<int> xs;
      std::istringstream ss(site);
      std::string name;
      while (std::getline(ss, name, ',')) xs.push_back(crossing_index(D, name));
      if (xs.size() != 3) throw InputError("r3 site must name three crossings: a,b,c");
      return apply_r3(D, {xs[0], xs[1], xs[2]});
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid site: ") + e.what());
  } catch (const std::out_of_range&) {
    throw InputError("invalid site: number out of range");
  }
  throw InputError("move must be r1neg, r2 or r3");
}

int report(const std::vector<CheckLine>& lines) {
  for (const CheckLine& l : lines) std::cout << check_text(l) << '\n';
  return all_pass(lines) ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Khovanov homology of link diagrams on surfaces"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "Disable OpenMP parallelism");

  std::string file, coeffs = "Z", dump, suite = "all", matrices, move, site, out;
  bool aggregate = false;

  auto* hom = app.add_subcommand("homology", "Print the homology table as TSV");
  hom->add_option("file", file, "Diagram file")->required();
  hom->add_option("--coefficients", coeffs, "Z, Q or Z2");
  hom->add_flag("--aggregate", aggregate, "Sum over s (handlebody table)");
  hom->add_option("--dump-matrices", dump, "Write the differential matrices to this path");

  auto* br = app.add_subcommand("bracket", "Print the Kauffman bracket in the skein basis");
  br->add_option("file", file, "Diagram file")->required();

  auto* eu = app.add_subcommand("euler", "Print the graded Euler characteristic per s");
  eu->add_option("file", file, "Diagram file")->required();

  auto* ver = app.add_subcommand("verify", "Check the structural identities");
  ver->add_option("file", file, "Diagram file");
  ver->add_option("--suite", suite, "d2, euler, reidemeister, les, duality or all");
  ver->add_option("--matrices", matrices, "Check d^2 = 0 on a matrix dump instead of a diagram");

  auto* mv = app.add_subcommand("moves", "Apply a Reidemeister move");
  mv->add_option("file", file, "Diagram file")->required();
  mv->add_option("--move", move, "r1neg, r2 or r3")->required();
  mv->add_option("--site", site, "r1neg: x1.2:0 or loop0:1; r2: x1.2; r3: x1,x2,x3")->required();
  mv->add_option("--out", out, "Output path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  const Exec exec = serial ? Exec::Serial : Exec::Parallel;

  try {
    if (*hom) {
      const Coeff c = parse_coeff(coeffs);
      const Diagram D = load(file);
      const Complex C(D, exec);
      if (!dump.empty()) write_out(dump, dump_matrices(C));
      const HomologyTable T = homology(C, c, exec);
      std::cout << (aggregate ? aggregate_tsv(aggregate_handlebody(T)) : table_tsv(T, D.surface));
      return kOk;
    }
    if (*br) {
      const Diagram D = load(file);
      std::cout << bracket_text(kauffman_bracket(D, exec), D.surface);
      return kOk;
    }
    if (*eu) {
      const Diagram D = load(file);
      for (const auto& [s, p] : euler_characteristics(homology(Complex(D, exec), Coeff::Z, exec)))
        std::cout << s.text(D.surface) << '\t' << p.text() << '\n';
      return kOk;
    }
    if (*ver) {
      if (!matrices.empty()) {
        try {
          return report(verify_d2(parse_matrices(read_file(matrices))));
        } catch (const ParseError& e) {
          throw InputError(matrices + ": " + e.what());
        }
      }
      if (file.empty()) throw InputError("verify needs a diagram file or --matrices");
      const auto s = parse_suite(suite);
      if (!s) throw InputError("unknown suite '" + suite + "'");
      return report(verify(load(file), *s, exec));
    }
    if (*mv) {
      write_out(out, emit_diagram(apply_move(load(file), move, site)));
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
