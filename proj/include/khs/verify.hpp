#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "khs/chainmaps.hpp"

namespace khs {

enum class Suite { D2, Euler, Reidemeister, Les, Duality, All };
std::optional<Suite> parse_suite(std::string_view name);

std::vector<CheckLine> verify_d2(const Complex& C);
std::vector<CheckLine> verify_euler(const Complex& C, Exec exec = Exec::Parallel);
std::vector<CheckLine> verify_reidemeister(const Diagram& D, Exec exec = Exec::Parallel);
std::vector<CheckLine> verify_les(const Diagram& D, Exec exec = Exec::Parallel);
std::vector<CheckLine> verify_duality(const Complex& C, Exec exec = Exec::Parallel);
std::vector<CheckLine> verify(const Diagram& D, Suite s, Exec exec = Exec::Parallel);

// Differential matrices as text:
//   matrix <j> <s> <i> <rows> <cols>
//   <row> <col> <value>        (one line per nonzero entry)
// Matrices of one block follow each other in increasing i.
std::string dump_matrices(const Complex& C);

struct MatrixDump {
  // (j, s text) -> i -> d_i : C_i -> C_{i-2}
  std::map<std::pair<int, std::string>, std::map<int, SparseMatrix>> blocks;
};
MatrixDump parse_matrices(const std::string& text);  // throws ParseError
std::vector<CheckLine> verify_d2(const MatrixDump& M);

}  // namespace khs
