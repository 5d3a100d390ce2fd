#include "varred/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "varred/expr.hpp"

namespace varred {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

struct Line {
  std::size_t number;
  std::string key;
  std::string value;
};

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
  throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

std::vector<Line> key_value_lines(std::string_view text, std::string_view source) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line[0] == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail(source, number, "expected 'key: value'");
    out.push_back({number, trim(std::string_view(line).substr(0, colon)), trim(std::string_view(line).substr(colon + 1))});
  }
  return out;
}

std::size_t parse_count(const Line& l, std::string_view source) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(l.value, &pos);
    if (pos != l.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(source, l.number, "expected a nonnegative integer for '" + l.key + "'");
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t c = s.find(',', start);
    out.push_back(trim(std::string_view(s).substr(start, c == std::string::npos ? std::string::npos : c - start)));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

std::string rat_string(const Rational& q) { return q.get_str(); }

}  // namespace

SystemFile parse_system_file(std::string_view text, std::string_view source) {
  SystemFile f;
  std::optional<std::size_t> dim;
  std::map<std::size_t, std::pair<std::size_t, std::vector<std::string>>> rows;
  std::size_t blocks_line = 0;
  for (const Line& l : key_value_lines(text, source)) {
    if (l.key == "variable") {
      if (l.value.empty()) fail(source, l.number, "empty variable name");
      f.variable = l.value;
    } else if (l.key == "dimension") {
      dim = parse_count(l, source);
    } else if (l.key == "blocks") {
      std::istringstream is(l.value);
      std::size_t a = 0, b = 0;
      std::string rest;
      if (!(is >> a >> b) || (is >> rest)) fail(source, l.number, "expected 'blocks: d1 d2'");
      f.blocks = std::make_pair(a, b);
      blocks_line = l.number;
    } else if (l.key.rfind("row ", 0) == 0) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(l.key.substr(4));
      } catch (const std::exception&) {
        fail(source, l.number, "bad row index");
      }
      if (idx == 0) fail(source, l.number, "row indices start at 1");
      if (rows.count(idx)) fail(source, l.number, "duplicate row " + std::to_string(idx));
      rows[idx] = {l.number, split_commas(l.value)};
    } else {
      fail(source, l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!dim) throw ParseError(std::string(source) + ": missing 'dimension'");
  const std::size_t n = *dim;
  f.matrix = RatMat(n, n);
  if (rows.size() != n || (n > 0 && rows.rbegin()->first != n))
    throw ParseError(std::string(source) + ": expected rows 1.." + std::to_string(n));
  for (const auto& [idx, entry] : rows) {
    const auto& [number, cells] = entry;
    if (cells.size() != n)
      fail(source, number, "row " + std::to_string(idx) + " has " + std::to_string(cells.size()) + " entries, expected " +
                               std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      try {
        f.matrix(idx - 1, j) = parse_ratfun(cells[j], f.variable);
      } catch (const ParseError& e) {
        fail(source, number, "entry " + std::to_string(j + 1) + ": " + e.what());
      }
    }
  }
  if (f.blocks && f.blocks->first + f.blocks->second != n)
    fail(source, blocks_line, "block sizes do not sum to the dimension");
  return f;
}

std::string render_system_file(const SystemFile& f) {
  std::ostringstream os;
  const std::size_t n = f.matrix.rows();
  os << "variable: " << f.variable << "\n";
  os << "dimension: " << n << "\n";
  if (f.blocks) os << "blocks: " << f.blocks->first << " " << f.blocks->second << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << "row " << i + 1 << ":";
    for (std::size_t j = 0; j < n; ++j) os << (j ? ", " : " ") << f.matrix(i, j).to_string(f.variable);
    os << "\n";
  }
  return os.str();
}

HamiltonianSpec parse_hamiltonian_file(std::string_view text, std::string_view source) {
  std::optional<std::size_t> n;
  std::optional<std::pair<std::size_t, std::string>> ham, sigma;
  std::string var = "x";
  std::map<std::string, std::pair<std::size_t, std::string>> sol;
  for (const Line& l : key_value_lines(text, source)) {
    if (l.key == "n") {
      n = parse_count(l, source);
      if (*n == 0) fail(source, l.number, "n must be positive");
    } else if (l.key == "hamiltonian") {
      ham = {l.number, l.value};
    } else if (l.key == "variable") {
      var = l.value;
    } else if (l.key == "sigma") {
      sigma = {l.number, l.value};
    } else if (l.key.rfind("solution ", 0) == 0) {
      sol[trim(std::string_view(l.key).substr(9))] = {l.number, l.value};
    } else {
      fail(source, l.number, "unknown key '" + l.key + "'");
    }
  }
  if (!n) throw ParseError(std::string(source) + ": missing 'n'");
  if (!ham) throw ParseError(std::string(source) + ": missing 'hamiltonian'");
  if (!sigma) throw ParseError(std::string(source) + ": missing 'sigma'");
  auto names = canonical_names(*n);
  MPoly H;
  try {
    H = parse_mpoly(ham->second, names);
  } catch (const ParseError& e) {
    fail(source, ham->first, std::string("hamiltonian: ") + e.what());
  }
  ParticularSolution ps;
  for (const auto& name : names) {
    auto it = sol.find(name);
    if (it == sol.end()) throw ParseError(std::string(source) + ": missing 'solution " + name + "'");
    try {
      ps.phi.push_back(parse_ratfun(it->second.second, var));
    } catch (const ParseError& e) {
      fail(source, it->second.first, "solution " + name + ": " + e.what());
    }
  }
  for (const auto& [name, v] : sol)
    if (std::find(names.begin(), names.end(), name) == names.end())
      fail(source, v.first, "unknown solution component '" + name + "'");
  try {
    ps.sigma = parse_ratfun(sigma->second, var);
  } catch (const ParseError& e) {
    fail(source, sigma->first, std::string("sigma: ") + e.what());
  }
  try {
    return HamiltonianSpec::make(*n, std::move(H), std::move(ps), var);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string(source) + ": " + e.what());
  }
}

std::string render_hamiltonian_file(const HamiltonianSpec& spec) {
  std::ostringstream os;
  auto names = canonical_names(spec.n);
  os << "n: " << spec.n << "\n";
  os << "hamiltonian: " << spec.H.to_string(names) << "\n";
  os << "variable: " << spec.variable << "\n";
  for (std::size_t i = 0; i < names.size(); ++i)
    os << "solution " << names[i] << ": " << spec.solution.phi[i].to_string(spec.variable) << "\n";
  os << "sigma: " << spec.solution.sigma.to_string(spec.variable) << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out << content;
  if (!out) throw PreconditionError("write to '" + path + "' failed");
}

namespace {

std::string const_matrix_line(const ConstMat& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) {
        os << (first ? "" : " ") << "(" << i + 1 << "," << j + 1 << ")=" << rat_string(m(i, j));
        first = false;
      }
  return first ? "zero" : os.str();
}

std::string poles_string(const std::vector<Poly>& ps, std::string_view var) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : "; ") + p.to_string(var);
  return s.empty() ? "none" : s;
}

std::string sizes_string(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s.empty() ? "none" : s;
}

}  // namespace

std::string render_report_structured(const ReductionReport& r, std::string_view var) {
  std::ostringstream os;
  os << "section summary\n";
  os << "order: " << r.order << "\n";
  os << "dimension: " << r.final_matrix.rows() << "\n";
  os << "blocks: " << r.top << " " << r.tail << "\n";
  os << "verdict: " << r.verdict() << "\n";
  os << "abelian: " << (r.abelian ? "true" : "false") << "\n";
  os << "reduced-certified: " << (r.reduced_certified ? "true" : "false") << "\n";
  os << "final-lie-dimension: " << r.final_lie.dim() << "\n";
  os << "end summary\n";

  os << "section partial\n";
  os << "wei-norman-terms: " << r.partial_wei_norman_terms << "\n";
  os << "lie-dimension: " << r.partial_lie_dim << "\n";
  os << "diag-dimension: " << r.diag_dim << "\n";
  os << "sub-dimension: " << r.sub_dim << "\n";
  if (r.diag_generator) {
    os << "diag-coefficient: " << r.diag_generator->coeff.to_string(var) << "\n";
    os << "diag-generator: " << const_matrix_line(r.diag_generator->mat) << "\n";
  }
  os << "jordan-blocks: " << sizes_string(r.block_sizes) << "\n";
  std::string ev;
  for (const auto& e : r.psi_eigenvalues) ev += (ev.empty() ? "" : " ") + rat_string(e);
  os << "eigenvalues: " << (ev.empty() ? "0" : ev) << "\n";
  os << "end partial\n";

  os << "section steps\n";
  os << "count: " << r.steps.size() << "\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const auto& s = r.steps[i];
    os << "step " << i + 1 << ": kind=" << to_string(s.kind);
    if (s.chain) os << " chain=" << *s.chain + 1;
    if (s.position) os << " position=" << *s.position;
    if (s.solved_g) os << " g=" << s.solved_g->to_string(var);
    if (s.residual_L) os << " residual=" << s.residual_L->to_string(var);
    if (!s.new_poles.empty()) os << " poles=" << poles_string(s.new_poles, var);
    os << "\n";
  }
  os << "end steps\n";

  os << "section wei-norman\n";
  os << "terms: " << r.final_wei_norman.terms.size() << "\n";
  for (std::size_t i = 0; i < r.final_wei_norman.terms.size(); ++i) {
    const auto& t = r.final_wei_norman.terms[i];
    os << "coefficient " << i + 1 << ": " << t.coeff.to_string(var) << "\n";
    os << "matrix " << i + 1 << ": " << const_matrix_line(t.mat) << "\n";
  }
  os << "end wei-norman\n";

  os << "section lie\n";
  os << "dimension: " << r.final_lie.dim() << "\n";
  for (std::size_t i = 0; i < r.final_lie.dim(); ++i)
    for (std::size_t j = i + 1; j < r.final_lie.dim(); ++j) {
      if (r.final_lie.structure.empty()) break;
      const auto& c = r.final_lie.structure[i][j];
      std::string s;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) s += (s.empty() ? "" : " ") + rat_string(c[k]) + "*e" + std::to_string(k + 1);
      if (!s.empty()) os << "bracket e" << i + 1 << " e" << j + 1 << ": " << s << "\n";
    }
  if (r.witness) os << "witness: " << r.witness->first + 1 << " " << r.witness->second + 1 << "\n";
  os << "end lie\n";

  if (r.certificate) {
    os << "section certificate\n";
    os << "pair: " << r.certificate->first + 1 << " " << r.certificate->second + 1 << "\n";
    os << "bracket: " << const_matrix_line(r.certificate->bracket) << "\n";
    for (const auto& L : r.certificate->residuals) os << "residual: " << L.to_string(var) << "\n";
    os << "end certificate\n";
  }

  os << "section tower\n";
  if (r.tower_refusal) os << "refused: " << *r.tower_refusal << "\n";
  os << "length: " << r.tower.size() << "\n";
  for (const auto& t : r.tower) {
    os << "element " << t.name << ": depth=" << t.depth << " tag=" << t.recognized_as;
    if (t.argument) os << " argument=" << t.argument->to_string(var);
    os << " integrand=" << to_string(t.integrand, var) << "\n";
  }
  os << "end tower\n";

  os << "begin final-matrix\n";
  SystemFile sf;
  sf.variable = std::string(var);
  sf.matrix = r.final_matrix;
  if (r.tail > 0) sf.blocks = std::make_pair(r.top, r.tail);
  os << render_system_file(sf);
  os << "end final-matrix\n";
  return os.str();
}

std::string render_report_text(const ReductionReport& r, std::string_view var) {
  std::ostringstream os;
  os << "order " << r.order << " system of dimension " << r.final_matrix.rows() << "\n";
  if (r.tail > 0) {
    os << "partially reduced: " << r.partial_wei_norman_terms << " Wei-Norman terms, Lie algebra of dimension "
       << r.partial_lie_dim << " (projections: diagonal " << r.diag_dim << ", subdiagonal " << r.sub_dim << ")\n";
    os << "adjoint Jordan blocks: " << sizes_string(r.block_sizes) << "\n";
  }
  std::size_t residuals = 0, unresolved = 0;
  for (const auto& s : r.steps) {
    if (s.residual_L && !s.residual_L->is_zero()) ++residuals;
    if (s.kind == StepKind::Unresolved) ++unresolved;
  }
  os << "steps: " << r.steps.size() << " (" << residuals << " with simple-pole residuals, " << unresolved
     << " unresolved)\n";
  os << "final Wei-Norman decomposition:";
  for (const auto& t : r.final_wei_norman.terms) os << " [" << t.coeff.to_string(var) << "]";
  os << "\n";
  os << "final Lie algebra dimension: " << r.final_lie.dim() << ", " << (r.abelian ? "abelian" : "non-abelian")
     << "\n";
  if (r.certificate)
    os << "non-commuting pair: e" << r.certificate->first + 1 << ", e" << r.certificate->second + 1 << "\n";
  if (r.tower_refusal) {
    os << "tower: not built (" << *r.tower_refusal << ")\n";
  } else {
    os << "tower (" << r.tower.size() << " primitives):\n";
    for (const auto& t : r.tower) {
      os << "  " << t.name << " = integral of " << to_string(t.integrand, var) << "  [depth " << t.depth << ", "
         << t.recognized_as;
      if (t.argument) os << " of " << t.argument->to_string(var);
      os << "]\n";
    }
  }
  os << "reduced form certified: " << (r.reduced_certified ? "yes" : "no") << "\n";
  os << "verdict: " << r.verdict() << "\n";
  return os.str();
}

SystemFile final_matrix_from_report(std::string_view report_text) {
  const std::string_view begin = "begin final-matrix\n", end = "end final-matrix";
  std::size_t a = report_text.find(begin);
  std::size_t b = report_text.find(end);
  if (a == std::string_view::npos || b == std::string_view::npos || b < a)
    throw ParseError("report: no embedded final matrix");
  a += begin.size();
  return parse_system_file(report_text.substr(a, b - a), "<report final-matrix>");
}

}  // namespace varred
