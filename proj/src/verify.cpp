#include "khs/verify.hpp"

#include <sstream>

#include "khs/skein.hpp"

namespace khs {

namespace {

const std::string kWhole = "(*,*)";

std::string site_text(const Diagram& D, int x) { return D.names[static_cast<size_t>(x)]; }

void append(std::vector<CheckLine>& out, const std::vector<CheckLine>& more) {
  out.insert(out.end(), more.begin(), more.end());
}

std::vector<CheckLine> commute_lines(const std::string& name, const ChainMap& f) {
  const SparseMatrix L = f.target->global_differential() * f.M;
  const SparseMatrix R = (f.M * f.source->global_differential()).scaled(f.sign);
  return compare_by_block(name, *f.source, L, R);
}

bool ranks_match(const std::map<Grade, int>& a, const std::map<Grade, int>& b) { return a == b; }

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "d2") return Suite::D2;
  if (name == "euler") return Suite::Euler;
  if (name == "reidemeister") return Suite::Reidemeister;
  if (name == "les") return Suite::Les;
  if (name == "duality") return Suite::Duality;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

std::vector<CheckLine> verify_d2(const Complex& C) {
  std::vector<CheckLine> out;
  for (const Block& B : C.blocks()) {
    bool ok = true;
    for (const auto& [i, d] : B.d) {
      auto next = B.d.find(i - 2);
      if (next != B.d.end() && !(next->second * d).is_zero()) ok = false;
    }
    out.push_back({"d2", "(" + std::to_string(B.key.j) + "," + B.key.s.text(C.diagram().surface) + ")", ok});
  }
  return out;
}

std::vector<CheckLine> verify_euler(const Complex& C, Exec exec) {
  const SurfaceModel& F = C.diagram().surface;
  const QCoefficients chi = euler_characteristics(homology(C, Coeff::Z, exec));
  const QCoefficients q = phi_expand(bracket_recursive(C.diagram()), F);
  std::map<GradingS, bool> ok;
  for (const auto& [s, p] : chi) ok[s] = q.count(s) && q.at(s) == p;
  for (const auto& [s, p] : q) ok[s] = chi.count(s) && chi.at(s) == p;
  std::vector<CheckLine> out;
  for (const auto& [s, v] : ok) out.push_back({"euler", "(*," + s.text(F) + ")", v});
  out.push_back({"bracket-state-sum", kWhole, kauffman_bracket(C.diagram(), exec) == bracket_recursive(C.diagram())});
  return out;
}

std::vector<CheckLine> verify_les(const Diagram& D, Exec exec) {
  std::vector<CheckLine> out;
  for (int p = 0; p < D.crossings(); ++p) {
    const SkeinTriple t(D, p, exec);
    const std::string at = "@" + site_text(D, p);
    const ChainMap a = viro_alpha(t), b = viro_beta(t), gh = viro_gamma_hat(t), g = viro_gamma(t);
    append(out, commute_lines("alpha-chain" + at, a));
    append(out, commute_lines("beta-chain" + at, b));
    append(out, commute_lines("gamma-chain" + at, g));
    append(out, commute_lines("gamma_hat-anti" + at, gh));
    append(out, compare_by_block("beta-alpha-zero" + at, t.Dinf, b.M * a.M,
                                 SparseMatrix(static_cast<int>(t.D0.states()), static_cast<int>(t.Dinf.states()))));
    append(out, compare_by_block("gamma_hat-sign" + at, t.D0, gh.M, g.M * eta(t.D0).M));
    for (Coeff c : {Coeff::Q, Coeff::Z2}) {
      std::vector<CheckLine> lines = les_check(t, c, exec);
      for (CheckLine& l : lines) l.identity += at;
      append(out, lines);
    }
  }
  return out;
}

std::vector<CheckLine> verify_duality(const Complex& C, Exec exec) {
  const Diagram& D = C.diagram();
  const SurfaceModel& F = D.surface;
  const Complex Cm(mirror(D), exec);
  const HomologyTable T = homology(C, Coeff::Z, exec);
  std::vector<CheckLine> out = duality_check(T, homology(Cm, Coeff::Z, exec), F);

  const ChainMap phi = mirror_map(C, Cm);
  append(out, compare_by_block("mirror-square", C, phi.M * C.global_differential().transpose(), d_plus(Cm) * phi.M));
  const ChainMap g = g_map(C);
  append(out, compare_by_block("g-map", C, d_plus(C) * g.M, g.M * C.global_differential()));

  std::map<BlockKey, bool> sym;
  for (const auto& [gr, A] : T.groups) {
    const int k = static_cast<int>(gr.s.entries().size());
    bool ok = true;
    for (int bits = 0; bits < (1 << k); ++bits) {
      std::vector<int> eps(static_cast<size_t>(k));
      for (int q = 0; q < k; ++q) eps[static_cast<size_t>(q)] = (bits >> q) & 1 ? -1 : 1;
      if (!(T.at({gr.i, gr.j, gr.s.flip(eps)}) == A)) ok = false;
    }
    auto [it, fresh] = sym.try_emplace(BlockKey{gr.j, gr.s}, ok);
    if (!fresh) it->second = it->second && ok;
  }
  for (const auto& [key, ok] : sym)
    out.push_back({"sign-flip-symmetry", "(" + std::to_string(key.j) + "," + key.s.text(F) + ")", ok});
  return out;
}

std::vector<CheckLine> verify_reidemeister(const Diagram& D, Exec exec) {
  std::vector<CheckLine> out;
  const Complex C(D, exec);
  const HomologyTable T = homology(C, Coeff::Z, exec);
  const auto dimsQ = homology_dims(chains_of(C), Coeff::Q, exec);

  // first move, every edge or loop, both sides
  std::vector<StrandRef> strands;
  for (int e = 0; e < static_cast<int>(D.edges.size()); ++e) strands.push_back({false, e, false});
  for (int l = 0; l < static_cast<int>(D.loops.size()); ++l) strands.push_back({true, l, false});
  for (const StrandRef& s : strands)
    for (int side : {0, 1}) {
      const std::string at = std::string("@") + (s.loop ? "l" : "e") + std::to_string(s.index) + "s" + std::to_string(side);
      const Complex K(apply_r1_neg(D, {s, side}), exec);
      const ChainMap r = rho_I(C, K);
      append(out, commute_lines("rho_I-chain" + at, r));
      out.push_back({"rho_I-induced-iso" + at, kWhole, ranks_match(induced_ranks(r, Coeff::Q, exec), dimsQ)});
      out.push_back({"r1-table-iso" + at, kWhole, table_isomorphic(T, homology(K, Coeff::Z, exec), -1, -3)});
    }

  // second move, every corner
  for (int x = 0; x < D.crossings(); ++x)
    for (int slot = 0; slot < 4; ++slot) {
      R2Data R2;
      try {
        R2 = r2_construct(D, corner_site(D, x, slot));
      } catch (const std::invalid_argument&) {
        continue;
      }
      const std::string at = "@" + site_text(D, x) + "." + std::to_string(slot);
      const R2Frame Fr(R2.result, exec);
      const Complex& Dm = Fr.moved();
      const Complex& E = Fr.unmoved();
      const Complex& Dii = Fr.tw.Dinf;
      const ChainMap f = f_embed(Fr), g = g_embed(Fr), io = iota_embed(Fr), rho = rho_II(Fr);
      const ChainMap gam = viro_gamma(Fr.tw);
      const SparseMatrix dD = Dm.global_differential();
      append(out, compare_by_block("r2-eq_f" + at, E, dD * f.M,
                                   f.M * E.global_differential() + io.M * gam.M * eta(E).M));
      append(out, compare_by_block("r2-g-lemma" + at, Dii, dD * g.M,
                                   g.M * Dii.global_differential() - io.M * eta(Dii).M));
      append(out, commute_lines("rho_II-chain" + at, rho));
      out.push_back({"rho_II-induced-iso" + at, kWhole,
                     ranks_match(induced_ranks(rho, Coeff::Q, exec), homology_dims(chains_of(E), Coeff::Q, exec))});
      const ChainMap r1 = rho_I(Dii, Fr.tv.D0);
      append(out, compare_by_block("r2-square1" + at, Dii, viro_gamma_hat(Fr.tv).M * r1.M,
                                   eta(Fr.tv.Dinf).M * viro_alpha(Fr.tw).M));
      const ChainMap diff = map_sum(compose(rho, viro_beta(Fr.tw)), viro_alpha(Fr.tv), -1);
      out.push_back({"r2-square2" + at, kWhole, induced_ranks(diff, Coeff::Q, exec).empty()});
      append(out, compare_by_block("r2-square3" + at, E, r1.M * viro_gamma_hat(Fr.tw).M,
                                   viro_beta(Fr.tv).M * rho.M * eta(E).M));
      out.push_back({"r2-table-iso" + at, kWhole, table_isomorphic(T, homology(Dm, Coeff::Z, exec), 0, 0)});
    }

  // third move, every movable triangle
  for (const R3Site& site : find_r3_sites(D)) {
    const R3Data R3 = r3_construct(D, site);
    const std::string at = "@" + site_text(D, site.x) + "," + site_text(D, site.y) + "," + site_text(D, site.z);
    out.push_back({"r3-table-iso" + at, kWhole, table_isomorphic(T, homology(Complex(R3.result, exec), Coeff::Z, exec), 0, 0)});
    if (!R3.standard_form) continue;
    const R3Frame Fr(R3.source, R3.result, exec);
    const ChainMap r3 = rho_III(Fr);
    const Complex& X = Fr.t.Dp;
    const Complex& Y = Fr.tp.Dp;
    append(out, compare_by_block("rho_III-alpha" + at, Fr.t.Dinf, r3.M * viro_alpha(Fr.t).M,
                                 viro_alpha(Fr.tp).M * Fr.f.M));
    append(out, compare_by_block("rho_III-beta" + at, X, viro_beta(Fr.tp).M * r3.M, Fr.rho.M * viro_beta(Fr.t).M));
    out.push_back({"rho_III-chain" + at, kWhole,
                   Y.global_differential() * r3.M * Fr.sub == r3.M * X.global_differential() * Fr.sub});
    out.push_back({"rho_III-gamma-square" + at, kWhole,
                   Fr.f.M * viro_gamma_hat(Fr.t).M * Fr.sub_plus == viro_gamma_hat(Fr.tp).M * Fr.rho.M * Fr.sub_plus});
    const auto S = restrict_to(X, Fr.sub);
    out.push_back({"rho_III-subcomplex" + at, kWhole, S.has_value()});
    if (S) {
      const auto hx = homology_dims(chains_of(X), Coeff::Q, exec);
      out.push_back({"rho_III-subcomplex-homology" + at, kWhole, homology_dims(*S, Coeff::Q, exec) == hx});
      out.push_back({"rho_III-induced-iso" + at, kWhole,
                     induced_ranks(*S, chains_of(Y), r3.M * Fr.sub, 0, 0, Coeff::Q, exec) == hx});
    }
  }
  return out;
}

std::vector<CheckLine> verify(const Diagram& D, Suite s, Exec exec) {
  std::vector<CheckLine> out;
  const Complex C(D, exec);
  const auto want = [s](Suite x) { return s == x || s == Suite::All; };
  if (want(Suite::D2)) append(out, verify_d2(C));
  if (s == Suite::All && !all_pass(out)) return out;
  if (want(Suite::Euler)) append(out, verify_euler(C, exec));
  if (want(Suite::Reidemeister)) append(out, verify_reidemeister(D, exec));
  if (want(Suite::Les)) append(out, verify_les(D, exec));
  if (want(Suite::Duality)) append(out, verify_duality(C, exec));
  return out;
}

std::string dump_matrices(const Complex& C) {
  std::ostringstream out;
  for (const Block& B : C.blocks())
    for (const auto& [i, d] : B.d) {
      out << "matrix\t" << B.key.j << '\t' << B.key.s.text(C.diagram().surface) << '\t' << i << '\t' << d.rows()
          << '\t' << d.cols() << '\n';
      for (int c = 0; c < d.cols(); ++c)
        for (const auto& [r, v] : d.column(c)) out << r << ' ' << c << ' ' << v << '\n';
    }
  return out.str();
}

MatrixDump parse_matrices(const std::string& text) {
  MatrixDump M;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  SparseMatrix* cur = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("matrix\t", 0) == 0) {
      std::vector<std::string> f;
      std::istringstream ls(line);
      std::string tok;
      while (std::getline(ls, tok, '\t')) f.push_back(tok);
      if (f.size() != 6) throw ParseError(lineno, 1, "matrix header needs 5 tab-separated fields");
      try {
        const int j = std::stoi(f[1]), i = std::stoi(f[3]), rows = std::stoi(f[4]), cols = std::stoi(f[5]);
        if (rows < 0 || cols < 0) throw ParseError(lineno, 1, "negative matrix size");
        cur = &(M.blocks[{j, f[2]}][i] = SparseMatrix(rows, cols));
      } catch (const std::logic_error&) {
        throw ParseError(lineno, 1, "bad number in matrix header");
      }
      continue;
    }
    if (!cur) throw ParseError(lineno, 1, "entry before any matrix header");
    std::istringstream ls(line);
    long long r, c, v;
    if (!(ls >> r >> c >> v)) throw ParseError(lineno, 1, "entry must be '<row> <col> <value>'");
    if (r < 0 || r >= cur->rows() || c < 0 || c >= cur->cols())
      throw ParseError(lineno, 1, "entry outside the matrix");
    cur->push(static_cast<int>(r), static_cast<int>(c), v);
  }
  for (auto& [key, ms] : M.blocks)
    for (auto& [i, m] : ms) m.normalize();
  return M;
}

std::vector<CheckLine> verify_d2(const MatrixDump& M) {
  std::vector<CheckLine> out;
  for (const auto& [key, ms] : M.blocks) {
    bool ok = true;
    for (const auto& [i, d] : ms) {
      auto next = ms.find(i - 2);
      if (next == ms.end()) continue;
      if (next->second.cols() != d.rows() || !(next->second * d).is_zero()) ok = false;
    }
    out.push_back({"d2", "(" + std::to_string(key.first) + "," + key.second + ")", ok});
  }
  return out;
}

}  // namespace khs
