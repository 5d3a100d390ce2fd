// One line per acceptance criterion; exit status 1 if any fails.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "properties.hpp"
#include "varred/expr.hpp"
#include "varred/fixtures.hpp"
#include "varred/integrate.hpp"
#include "varred/jordan.hpp"
#include "varred/lie.hpp"
#include "varred/reduction.hpp"
#include "varred/varequations.hpp"

using namespace varred;

namespace {

class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string detail() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + std::string("FAILED ") + f;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    return s;
  }

 private:
  std::vector<std::string> failures_, notes_;
};

std::vector<ConstMat> wn_mats(const WeiNormanDecomp& wn) {
  std::vector<ConstMat> m;
  for (const auto& t : wn.terms) m.push_back(t.mat);
  return m;
}

std::vector<std::size_t> rank_profile(const ConstMat& C) {
  std::vector<std::size_t> r;
  ConstMat p = C;
  for (std::size_t k = 0; k < C.rows() && !p.is_zero(); ++k) {
    r.push_back(rank(p));
    p = p * C;
  }
  return r;
}

bool nilpotent(const ConstMat& C) {
  ConstMat p = C;
  for (std::size_t k = 1; k < C.rows(); ++k) p = p * C;
  return p.is_zero();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

std::set<Poly> denominators(const WeiNormanDecomp& wn) {
  std::set<Poly> s;
  for (const auto& t : wn.terms) s.insert(t.coeff.den());
  return s;
}

// ---------------------------------------------------------------------------

Check criterion1() {
  Check c;
  RatMat A1 = fixtures::hh_A1();
  WeiNormanDecomp wn = wei_norman(A1);
  c.expect(wn.terms.size() == 2, "Wei-Norman terms " + std::to_string(wn.terms.size()) + " != 2");
  c.expect(wn.recompose(4, 4) == A1, "recomposition");
  if (wn.terms.size() == 2) {
    c.expect(wn.terms[0].coeff == parse_ratfun("2/x") && wn.terms[0].mat == fixtures::wn_M1(), "term 1 is 2/x * M1");
    c.expect(wn.terms[1].coeff == parse_ratfun("-12*x/(x^2 + 1)^2") && wn.terms[1].mat == fixtures::wn_M2(),
             "term 2 is -12x/(x^2+1)^2 * M2");
  }
  LieBasis L = lie_closure(wn_mats(wn));
  c.expect(L.dim() == 6, "Lie dimension " + std::to_string(L.dim()) + " != 6");
  c.note("terms " + std::to_string(wn.terms.size()) + ", Lie(A1) dimension " + std::to_string(L.dim()));
  return c;
}

Check criterion2() {
  Check c;
  RatMat R = apply_gauge(fixtures::hh_P1(), fixtures::hh_A1());
  c.expect(R == scale(fixtures::hh_D1(), parse_ratfun("5/(3*x)")), "P1[A1] == (5/(3x)) D1");
  c.expect(certify_monogenous_reduced(R), "certify_monogenous_reduced");
  LieBasis L = lie_closure(wn_mats(wei_norman(R)));
  c.expect(L.dim() == 1, "Lie dimension " + std::to_string(L.dim()) + " != 1");
  c.expect(is_abelian(L).abelian, "abelian");
  c.note("P1[A1] = (5/(3x)) D1, certified, Lie dimension " + std::to_string(L.dim()) + ", abelian");
  return c;
}

Check criterion3() {
  Check c;
  auto spec = fixtures::henon_heiles();
  auto sys = build_lve(spec, 3);
  c.expect(sys[0].matrix == fixtures::hh_A1(), "order 1 equals fixture A1");
  c.expect(sys[1].dim() == 14, "order 2 size " + std::to_string(sys[1].dim()));
  c.expect(sys[2].dim() == 34, "order 3 size " + std::to_string(sys[2].dim()));
  c.expect(lve_dimension(4, 2) == 14 && lve_dimension(4, 3) == 34, "lve_dimension");
  c.note("A1 matches; sizes " + std::to_string(sys[0].dim()) + ", " + std::to_string(sys[1].dim()) + ", " +
         std::to_string(sys[2].dim()));
  return c;
}

Check criterion4() {
  Check c;
  auto spec = fixtures::henon_heiles();
  auto sys = build_lve(spec, 2);
  GaugeMatrix P1 = fixtures::hh_P1();
  BlockSystem pr = reduce_diagonal(sys[1], P1, P1);
  RatMat Q2(14, 14);
  Q2.set_block(0, 0, sym_power_group(P1.P(), 2));
  Q2.set_block(10, 10, P1.P());
  c.expect(pr.gauge.P() == Q2, "Q2 == diag(Sym^2 P1, P1)");
  RatMat A1R = fixtures::hh_A1R();
  c.expect(pr.matrix.block(0, 0, 10, 10) == sym_power_algebra(A1R, 2), "upper diagonal block is sym^2 A1R");
  c.expect(pr.matrix.block(10, 10, 4, 4) == A1R, "lower diagonal block is A1R");

  ReductionReport r = reduce_subdiagonal(pr);
  c.expect(r.partial_lie_dim == 11, "partial Lie dimension " + std::to_string(r.partial_lie_dim));
  c.expect(r.diag_dim == 1 && r.sub_dim == 10,
           "diag/sub dimensions " + std::to_string(r.diag_dim) + "/" + std::to_string(r.sub_dim));
  c.expect(nilpotent(r.psi), "Psi nilpotent");
  auto blocks = nilpotent_jordan_chains(r.psi).block_sizes();
  c.expect(blocks == std::vector<std::size_t>{4, 4, 2}, "Psi blocks " + join(blocks));
  auto golden_blocks = nilpotent_jordan_chains(fixtures::hh_psi20()).block_sizes();
  c.expect(golden_blocks == blocks, "reference Psi blocks " + join(golden_blocks));

  c.expect(r.final_wei_norman.terms.size() == 1, "final Wei-Norman terms " +
                                                     std::to_string(r.final_wei_norman.terms.size()));
  if (r.final_wei_norman.terms.size() == 1) {
    RatFun xa = r.final_wei_norman.terms[0].coeff * RatFun::x();
    c.expect(xa.is_constant() && !xa.is_zero(), "final coefficient proportional to 1/x");
  }
  // final = (1/x) C with C constant
  RatMat xF = r.final_matrix;
  bool constant = true;
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = 0; j < 14; ++j) {
      xF(i, j) = xF(i, j) * RatFun::x();
      constant = constant && xF(i, j).is_constant();
    }
  c.expect(constant, "x * final matrix is constant");
  if (constant) {
    ConstMat C = to_constmat(xF);
    auto prof = rank_profile(C), golden = rank_profile(fixtures::hh_C0());
    c.expect(nilpotent(C), "C nilpotent");
    c.expect(prof == golden, "rank profile " + join(prof) + " vs reference " + join(golden));
    c.note("C rank profile " + join(prof));
  }
  c.expect(r.final_lie.dim() == 1, "final Lie dimension " + std::to_string(r.final_lie.dim()));
  c.expect(r.abelian, "abelian");
  c.expect(r.reduced_certified, "reduced-certified");
  c.expect(apply_gauge(r.total_gauge, sys[1].matrix) == r.final_matrix, "total gauge replays");
  c.note("Lie 11 = 1 + 10, Psi blocks " + join(blocks) + ", final (1/x) C, dimension 1, abelian, certified");
  return c;
}

std::optional<ReductionReport> g_order3;

const ReductionReport& order3() {
  if (!g_order3) {
    auto sys = build_lve(fixtures::henon_heiles(), 3);
    g_order3 = reduce_lve(sys, fixtures::hh_P1()).back();
  }
  return *g_order3;
}

Check criterion5() {
  Check c;
  const ReductionReport& r = order3();
  c.expect(r.partial_lie_dim == 38, "partial Lie dimension " + std::to_string(r.partial_lie_dim));
  c.expect(r.diag_dim == 1, "diagonal dimension " + std::to_string(r.diag_dim));
  c.expect(r.final_lie.dim() == 5, "final Lie dimension " + std::to_string(r.final_lie.dim()));
  c.expect(!r.abelian, "non-abelian");

  const auto& terms = r.final_wei_norman.terms;
  bool shift = false;
  if (terms.size() == 2) {
    const std::size_t n = terms[0].mat.rows();
    for (std::size_t t = 0; t < 2 && !shift; ++t) {
      std::vector<ConstMat> M = {terms[t].mat, terms[1 - t].mat};
      for (int k = 0; k < 3; ++k) M.push_back(bracket(M[0], M.back()));
      SpanTracker tr(n * n);
      bool independent = true;
      for (const auto& m : M) independent = tr.add(flatten(m)) && independent;
      if (!independent || !bracket(M[0], M[4]).is_zero()) continue;
      bool ideal_abelian = true;
      for (std::size_t i = 1; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) ideal_abelian = ideal_abelian && bracket(M[i], M[j]).is_zero();
      ConstMat ad(5, 5);
      for (std::size_t j = 0; j < 5; ++j) {
        auto co = tr.coordinates(flatten(bracket(M[0], M[j])));
        if (!co) continue;
        for (std::size_t i = 0; i < 5; ++i) ad(i, j) = (*co)[i];
      }
      shift = ideal_abelian && ad == fixtures::psi_shift5();
    }
  }
  c.expect(shift, "adjoint of the leading term is the 5x5 shift pattern");

  std::set<Poly> dens = denominators(r.final_wei_norman);
  std::set<Poly> want = {parse_ratfun("x").num(), parse_ratfun("x^2 + 1").num()};
  c.expect(dens == want, "residual coefficient denominators");
  c.expect(r.certificate.has_value(), "obstruction certificate emitted");
  if (r.certificate) {
    const auto& cert = *r.certificate;
    c.expect(!cert.bracket.is_zero() &&
                 cert.bracket == bracket(r.final_lie.basis[cert.first], r.final_lie.basis[cert.second]),
             "certificate bracket re-checks");
    for (const auto& L : cert.residuals) c.expect(!L.is_zero() && is_squarefree(L.den()), "residual simple poles");
  }
  c.expect(apply_gauge(r.total_gauge, r.initial) == r.final_matrix, "total gauge replays");
  std::string coeffs;
  for (const auto& t : terms) coeffs += (coeffs.empty() ? "" : ", ") + t.coeff.to_string();
  c.note("Lie 38 (diag 1) -> final dimension 5, non-abelian, coefficients " + coeffs);
  return c;
}

Check criterion6() {
  Check c;
  const ReductionReport& r = order3();
  auto tower = picard_vessiot_tower(r.final_matrix);
  c.expect(tower.size() == 5, "tower length " + std::to_string(tower.size()));
  std::vector<std::size_t> depths;
  for (const auto& t : tower) depths.push_back(t.depth);
  c.expect(depths == std::vector<std::size_t>{1, 1, 2, 3, 4}, "depths " + join(depths));
  std::set<Poly> dens;
  std::set<std::string> ladder;
  for (const auto& t : tower) {
    if (t.depth == 1 && t.integrand.size() == 1 && t.integrand.count("")) dens.insert(t.integrand.at("").den());
    if (t.depth > 1) ladder.insert(t.recognized_as);
  }
  std::set<Poly> want = {parse_ratfun("x").num(), parse_ratfun("x^2 + 1").num()};
  c.expect(dens == want, "depth-1 integrand denominators");
  c.expect(ladder == std::set<std::string>{"polylog-2", "polylog-3", "polylog-4"}, "ladder tags");
  c.note("depths " + join(depths) + ", tags log, log, polylog-2, polylog-3, polylog-4");
  c.note("transcendence degree 5 of the tower is not recomputed");
  return c;
}

Check criterion7() {
  Check c;
  auto add = [&](const char* name, const testing::SuiteResult& s) {
    c.expect(s.ok(), std::string(name) + ": " + std::to_string(s.failures) + "/" + std::to_string(s.cases) +
                         " failed, first: " + s.first_failure);
    c.note(std::string(name) + " " + std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases));
  };
  add("block identities", testing::block_identities(200, 41));
  add("gauge composition and Sym^2 morphism", testing::gauge_composition(100, 42));
  add("Hermite split", testing::hermite_reconstruction(500, 43));
  add("removal postcondition", testing::removal_postcondition(100, 44));
  add("LVE substitution oracle", testing::lve_substitution_oracle());
  add("closure bracket-word oracle", testing::closure_oracle(50, 6, 45));
  return c;
}

Check criterion8() {
  Check c;
  LieBasis L = lie_closure({fixtures::m0(), fixtures::m1()});
  AbelianResult ab = is_abelian(L);
  c.expect(L.dim() == 5, "dimension " + std::to_string(L.dim()));
  c.expect(!ab.abelian, "non-abelian");
  c.expect(!bracket(fixtures::m0(), fixtures::m1()).is_zero(), "[m0, m1] != 0");
  c.note("dimension " + std::to_string(L.dim()) + ", non-abelian");
  return c;
}

struct Criterion {
  int id;
  double limit_seconds;  // 0: no limit
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--criterion", only, "Run only these criteria")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, 1, criterion1},   {2, 1, criterion2},   {3, 5, criterion3}, {4, 60, criterion4},
      {5, 600, criterion5}, {6, 0, criterion6}, {7, 0, criterion7}, {8, 1, criterion8},
  };
  bool ok = true;
  for (const auto& cr : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = cr.limit_seconds == 0 || secs < cr.limit_seconds;
    if (!in_time) c.expect(false, "runtime over the limit");
    std::ostringstream line;
    line << "criterion " << cr.id << ": " << (c.ok() ? "PASS" : "FAIL") << " [" << std::fixed << std::setprecision(3)
         << secs << " s";
    if (cr.limit_seconds > 0) line << ", limit " << std::setprecision(0) << cr.limit_seconds << " s";
    line << "] " << c.detail();
    std::cout << line.str() << std::endl;
    ok = ok && c.ok();
  }
  return ok ? 0 : 1;
}
