#include "varred/reduction.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "varred/integrate.hpp"

namespace varred {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::DiagonalAssembly: return "diagonal-assembly";
    case StepKind::ChainRemoval: return "chain-removal";
    case StepKind::HermitePartial: return "hermite-partial";
    case StepKind::Unresolved: return "unresolved";
  }
  return "unknown";
}

std::string to_string(const FormalExpr& e, std::string_view var) {
  std::string s;
  for (const auto& [sym, c] : e) {
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs = "(" + c.to_string(var) + ")";
    s += sym.empty() ? cs : cs + "*" + sym;
  }
  return s.empty() ? "0" : s;
}

std::string ReductionReport::verdict() const {
  if (abelian) return "abelian";
  return reduced_certified ? "non-integrable" : "candidate obstruction";
}

// ---------------------------------------------------------------------------
// diagonal blocks

BlockSystem reduce_diagonal(const BlockSystem& Am, const GaugeMatrix& P1, const GaugeMatrix& P_prev) {
  const std::size_t N = P1.size();
  if (N == 0) throw PreconditionError("reduce_diagonal: empty first-order gauge");
  if (Am.top + Am.tail != Am.dim()) throw PreconditionError("reduce_diagonal: block sizes do not add up");
  if (binomial(N + Am.order - 1, N - 1) != Am.top)
    throw PreconditionError("reduce_diagonal: top block size does not match Sym^" + std::to_string(Am.order) +
                            " of a " + std::to_string(N) + "x" + std::to_string(N) + " gauge");
  if (P_prev.size() != Am.tail) throw PreconditionError("reduce_diagonal: previous-order gauge has the wrong size");

  GaugeMatrix Q;
  if (Am.order == 1) {
    Q = P1;
  } else {
    GaugeMatrix S(sym_power_group(P1.P(), Am.order), sym_power_group(P1.P_inv(), Am.order));
    Q = assemble_block_diag({S, P_prev});
  }
  BlockSystem out = Am;
  out.matrix = apply_gauge(Q, Am.matrix);
  out.gauge = Am.gauge * Q;
  return out;
}

// ---------------------------------------------------------------------------
// single generator removal

RatMat SubdiagonalDecomp::recompose() const {
  RatMat r = diag;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!beta[i].is_zero()) r += scale(basis[i], beta[i]);
  return r;
}

namespace {

RemovalResult eliminate(const RatMat& A, std::size_t d1, const ConstMat& B, const RatFun& beta, const RatFun& gamma) {
  RemovalResult out;
  ReductionStep& st = out.step;
  const std::size_t n = A.rows();
  if (beta.is_zero()) {
    st.kind = StepKind::ChainRemoval;
    st.gauge = GaugeMatrix::identity(n);
    st.solved_g = RatFun();
    st.removed_generator = B;
    out.matrix = A;
    return out;
  }
  if (auto g = solve_first_order_rational(gamma, beta)) {
    st.kind = StepKind::ChainRemoval;
    st.solved_g = *g;
    st.removed_generator = B;
    st.gauge = exp_sub_nilpotent(*g, B);
    out.matrix = apply_sub_gauge(A, *g, B, d1);
    return out;
  }
  if (gamma.is_zero()) {
    HermiteSplit hs = hermite_split(beta);
    st.kind = StepKind::HermitePartial;
    st.solved_g = hs.R;
    st.residual_L = hs.L;
    st.new_poles = pole_factors(hs.L);
    st.gauge = exp_sub_nilpotent(hs.R, B);
    out.matrix = hs.R.is_zero() ? A : apply_sub_gauge(A, hs.R, B, d1);
    return out;
  }
  st.kind = StepKind::Unresolved;
  st.gauge = GaugeMatrix::identity(n);
  out.matrix = A;
  return out;
}

}  // namespace

RemovalResult remove_generator(const SubdiagonalDecomp& A, std::size_t target, const std::vector<RatFun>& gamma) {
  if (target >= A.basis.size() || A.beta.size() != A.basis.size() || gamma.size() != A.basis.size())
    throw PreconditionError("remove_generator: inconsistent decomposition sizes");
  for (const auto& b : A.basis)
    if (!in_sub(b, A.d1)) throw PreconditionError("remove_generator: basis element outside the lower-left block");
  return eliminate(A.recompose(), A.d1, A.basis[target], A.beta[target], gamma[target]);
}

// ---------------------------------------------------------------------------
// coordinates in a subdiagonal basis

SubCoordinates::SubCoordinates(std::vector<ConstMat> basis, std::size_t d1) : basis_(std::move(basis)), d1_(d1) {
  const std::size_t K = basis_.size();
  if (K == 0) return;
  const std::size_t n = basis_[0].rows();
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = d1; i < n; ++i)
    for (std::size_t j = 0; j < d1; ++j) all.emplace_back(i, j);
  ConstMat V(K, all.size());
  for (std::size_t k = 0; k < K; ++k) {
    if (!in_sub(basis_[k], d1)) throw PreconditionError("SubCoordinates: basis element outside the lower-left block");
    for (std::size_t p = 0; p < all.size(); ++p) V(k, p) = basis_[k](all[p].first, all[p].second);
  }
  RrefResult rr = rref(V);
  if (rr.rank != K) throw PreconditionError("SubCoordinates: basis is linearly dependent");
  ConstMat MT(K, K);  // MT(j, k) = basis_k at pivot position j
  for (std::size_t j = 0; j < K; ++j) {
    positions_.push_back(all[rr.pivots[j]]);
    for (std::size_t k = 0; k < K; ++k) MT(j, k) = V(k, rr.pivots[j]);
  }
  inv_ = inverse(MT);
}

RatFun SubCoordinates::coefficient(const RatMat& A, std::size_t k) const {
  RatFun c;
  for (std::size_t j = 0; j < positions_.size(); ++j) {
    const Rational& w = inv_(k, j);
    if (sgn(w) == 0) continue;
    const RatFun& a = A(positions_[j].first, positions_[j].second);
    if (!a.is_zero()) c += a * w;
  }
  return c;
}

std::vector<RatFun> SubCoordinates::coefficients(const RatMat& A) const {
  std::vector<RatFun> out;
  for (std::size_t k = 0; k < basis_.size(); ++k) out.push_back(coefficient(A, k));
  return out;
}

// ---------------------------------------------------------------------------
// Jordan chains

std::vector<ReductionStep> reduce_jordan_block(RatMat& A, std::size_t d1, const SubCoordinates& coords,
                                               std::size_t first_index, std::size_t length, const RatFun& chain_gamma,
                                               bool include_kernel) {
  std::vector<ReductionStep> steps;
  if (first_index + length > coords.basis().size()) throw PreconditionError("reduce_jordan_block: chain out of range");
  const std::size_t lo = include_kernel ? 0 : 1;
  for (std::size_t s = length; s-- > lo;) {
    const std::size_t k = first_index + s;
    RatFun beta = coords.coefficient(A, k);
    RemovalResult r = eliminate(A, d1, coords.basis()[k], beta, chain_gamma);
    RatFun after = coords.coefficient(r.matrix, k);
    RatFun expected = r.step.kind == StepKind::ChainRemoval ? RatFun()
                      : r.step.kind == StepKind::HermitePartial ? *r.step.residual_L
                                                                : beta;
    if (after != expected) throw std::logic_error("reduce_jordan_block: eliminated coefficient did not vanish");
    r.step.position = s;
    A = std::move(r.matrix);
    steps.push_back(std::move(r.step));
  }
  return steps;
}

// ---------------------------------------------------------------------------
// certification and obstruction

bool certify_monogenous_reduced(const RatMat& A) {
  WeiNormanDecomp wn = wei_norman(A);
  if (wn.terms.size() != 1) return false;
  HermiteSplit hs = hermite_split(wn.terms[0].coeff);
  return !hs.L.is_zero() && hs.R.is_zero();
}

std::optional<ObstructionCertificate> detect_obstruction(const ReductionReport& report) {
  AbelianResult ab = is_abelian(report.final_lie);
  if (ab.abelian) return std::nullopt;
  ObstructionCertificate c;
  c.first = ab.witness->first;
  c.second = ab.witness->second;
  c.bracket = bracket(report.final_lie.basis[c.first], report.final_lie.basis[c.second]);
  for (const auto& t : report.final_wei_norman.terms) {
    RatFun L = hermite_split(t.coeff).L;
    if (!L.is_zero()) c.residuals.push_back(L);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Picard-Vessiot tower

namespace {

bool coefficient_has_simple_poles_only(const RatFun& f) {
  HermiteSplit hs = hermite_split(f);
  return hs.R.is_zero();
}

std::optional<Rational> proportional(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) return std::nullopt;
  RatFun q = a / b;
  if (!q.is_constant()) return std::nullopt;
  return q.constant_value();
}

std::optional<Rational> proportional(const FormalExpr& a, const FormalExpr& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<Rational> c;
  for (const auto& [sym, f] : a) {
    auto it = b.find(sym);
    if (it == b.end()) return std::nullopt;
    auto k = proportional(f, it->second);
    if (!k || (c && *c != *k)) return std::nullopt;
    c = k;
  }
  return c;
}

std::optional<Rational> value_at_zero(const RatFun& f) {
  Rational d = f.den().eval(Rational(0));
  if (sgn(d) == 0) return std::nullopt;
  return f.num().eval(Rational(0)) / d;
}

class Tower {
 public:
  std::vector<TowerElement> elements;

  FormalExpr integrate(const FormalExpr& e) {
    FormalExpr out;
    for (const auto& [sym, r] : e) {
      if (r.is_zero()) continue;
      if (sym.empty()) {
        HermiteSplit hs = hermite_split(r);
        if (!hs.R.is_zero()) add(out, "", hs.R);
        if (!hs.L.is_zero()) {
          auto [name, c] = primitive({{"", hs.L}});
          add(out, name, RatFun(c));
        }
      } else {
        auto [name, c] = primitive({{sym, r}});
        add(out, name, RatFun(c));
      }
    }
    return out;
  }

 private:
  static void add(FormalExpr& e, const std::string& sym, const RatFun& c) {
    RatFun& slot = e[sym];
    slot += c;
    if (slot.is_zero()) e.erase(sym);
  }

  const TowerElement* find(const std::string& name) const {
    for (const auto& t : elements)
      if (t.name == name) return &t;
    return nullptr;
  }

  std::pair<std::string, Rational> primitive(const FormalExpr& integrand) {
    for (const auto& t : elements)
      if (auto c = proportional(integrand, t.integrand)) return {t.name, *c};
    TowerElement t;
    t.integrand = integrand;
    t.name = "T" + std::to_string(elements.size() + 1);
    t.depth = 1;
    for (const auto& [sym, r] : integrand)
      if (!sym.empty()) t.depth = std::max(t.depth, find(sym)->depth + 1);
    classify(t);
    elements.push_back(t);
    return {t.name, Rational(1)};
  }

  // d log z = z'/z
  static RatFun log_derivative(const RatFun& z) { return z.derivative() / z; }

  void classify(TowerElement& t) const {
    if (t.integrand.size() != 1) return;
    const auto& [sym, r] = *t.integrand.begin();
    if (sym.empty()) {
      // r = c p'/p
      const Poly& d = r.den();
      if (d.is_constant()) return;
      if (proportional(r, RatFun(d.derivative(), d))) {
        t.recognized_as = "log";
        t.argument = RatFun(d);
      }
      return;
    }
    const TowerElement* base = find(sym);
    if (!base || !base->argument) return;
    RatFun z;
    std::size_t k = 0;
    if (base->recognized_as == "log") {
      // log u = log u(0) + log(1 - z) = const - Li_1(z) with z = 1 - u/u(0)
      auto u0 = value_at_zero(*base->argument);
      if (!u0 || sgn(*u0) == 0) return;
      z = RatFun(Rational(1)) - *base->argument * RatFun(1 / *u0);
      k = 2;
    } else if (base->recognized_as.rfind("polylog-", 0) == 0) {
      z = *base->argument;
      k = std::stoul(base->recognized_as.substr(8)) + 1;
    } else {
      return;
    }
    if (z.is_zero() || z.is_constant()) return;
    if (proportional(r, log_derivative(z))) {
      t.recognized_as = "polylog-" + std::to_string(k);
      t.argument = z;
    }
  }
};

struct LeadingStructure {
  std::size_t lead;
  std::vector<ConstMat> ideal;
};

std::optional<LeadingStructure> find_leading(const WeiNormanDecomp& wn, std::size_t lie_dim) {
  const std::size_t n = wn.terms[0].mat.rows();
  for (std::size_t t = 0; t < wn.terms.size(); ++t) {
    const ConstMat& Mt = wn.terms[t].mat;
    SpanTracker tr(n * n);
    std::vector<ConstMat> I;
    for (std::size_t j = 0; j < wn.terms.size(); ++j)
      if (j != t && tr.add(flatten(wn.terms[j].mat))) I.push_back(wn.terms[j].mat);
    for (std::size_t q = 0; q < I.size() && I.size() < lie_dim; ++q) {
      ConstMat c = bracket(Mt, I[q]);
      if (!c.is_zero() && tr.add(flatten(c))) I.push_back(std::move(c));
    }
    if (I.size() + 1 != lie_dim || tr.contains(flatten(Mt))) continue;
    bool abelian = true;
    for (std::size_t a = 0; a < I.size() && abelian; ++a)
      for (std::size_t b = a + 1; b < I.size() && abelian; ++b) abelian = bracket(I[a], I[b]).is_zero();
    if (!abelian) continue;
    ConstMat psi = adjoint_on_sub(Mt, I);
    if (!I.empty()) {
      ConstMat p = psi;
      for (std::size_t k = 1; k < I.size(); ++k) p = p * psi;
      if (!p.is_zero()) continue;
    }
    return LeadingStructure{t, std::move(I)};
  }
  return std::nullopt;
}

}  // namespace

std::vector<TowerElement> picard_vessiot_tower(const RatMat& final_matrix) {
  WeiNormanDecomp wn = wei_norman(final_matrix);
  if (wn.terms.empty()) return {};
  std::vector<ConstMat> mats;
  for (const auto& t : wn.terms) mats.push_back(t.mat);
  LieBasis L = lie_closure(mats, false);
  auto lead = find_leading(wn, L.dim());
  if (!lead)
    throw PreconditionError(
        "tower: no Wei-Norman term acts nilpotently on an abelian ideal complementing it (structure not nilpotent)");

  const RatFun& at = wn.terms[lead->lead].coeff;
  Tower tower;
  tower.integrate({{"", at}});

  const std::vector<ConstMat>& I = lead->ideal;
  if (I.empty()) return tower.elements;
  JordanChains jc = nilpotent_jordan_chains(adjoint_on_sub(wn.terms[lead->lead].mat, I));
  const std::size_t n = final_matrix.rows();
  std::vector<ConstMat> chain_mats;
  for (const auto& ch : jc.chains)
    for (const auto& v : ch) {
      ConstMat m(n, n);
      for (std::size_t i = 0; i < I.size(); ++i)
        if (sgn(v[i]) != 0) m += I[i].scaled(v[i]);
      chain_mats.push_back(std::move(m));
    }
  SpanTracker tr(n * n);
  for (const auto& m : chain_mats) tr.add(flatten(m));

  std::vector<FormalExpr> beta(chain_mats.size());
  for (std::size_t j = 0; j < wn.terms.size(); ++j) {
    if (j == lead->lead) continue;
    auto c = tr.coordinates(flatten(wn.terms[j].mat));
    if (!c) throw std::logic_error("tower: Wei-Norman term outside the ideal");
    for (std::size_t k = 0; k < c->size(); ++k)
      if (sgn((*c)[k]) != 0) beta[k][""] += wn.terms[j].coeff * (*c)[k];
  }

  std::size_t off = 0;
  for (const auto& ch : jc.chains) {
    for (std::size_t s = ch.size(); s-- > 0;) {
      FormalExpr g = tower.integrate(beta[off + s]);
      if (s == 0) continue;
      FormalExpr& next = beta[off + s - 1];
      for (const auto& [sym, c] : g) {
        RatFun& slot = next[sym];
        slot += c * at;
        if (slot.is_zero()) next.erase(sym);
      }
    }
    off += ch.size();
  }
  return tower.elements;
}

// ---------------------------------------------------------------------------
// driver

ReductionReport reduce_subdiagonal(const BlockSystem& sys) {
  ReductionReport rep;
  const RatMat& A = sys.matrix;
  const std::size_t n = A.rows();
  const std::size_t d1 = sys.tail == 0 ? n : sys.top;
  rep.order = sys.order;
  rep.initial = A;
  rep.partially_reduced = A;
  rep.top = sys.top;
  rep.tail = sys.tail;
  if (!is_block_lower_triangular(A, d1)) throw PreconditionError("reduce_subdiagonal: system is not block lower triangular");

  WeiNormanDecomp wn = wei_norman(A);
  rep.partial_wei_norman_terms = wn.terms.size();
  std::vector<ConstMat> gens;
  for (const auto& t : wn.terms) gens.push_back(t.mat);
  LieBasis partial = lie_closure(gens, false);
  rep.partial_lie_dim = partial.dim();

  RatMat cur = A;
  RatMat N(n, n);
  if (sys.tail > 0) {
    DiagSubSplit split = split_diag_sub(partial.basis, d1, sys.tail);
    rep.diag_dim = split.diag_basis.size();
    rep.sub_dim = split.sub_basis.size();

    WeiNormanDecomp wd = wei_norman(diag_part(A, d1));
    if (wd.terms.size() > 1)
      throw UnsupportedError("diagonal algebra not monogenous: " + std::to_string(wd.terms.size()) +
                             " independent diagonal coefficients");
    ConstMat D0(n, n);
    RatFun beta0;
    if (!wd.terms.empty()) {
      rep.diag_generator = wd.terms[0];
      D0 = wd.terms[0].mat;
      beta0 = wd.terms[0].coeff;
    }
    rep.psi = adjoint_on_sub(D0, split.sub_basis);

    struct Chain {
      Rational lambda;
      std::vector<QVector> vecs;
    };
    std::vector<Chain> chains;
    const std::size_t k = split.sub_basis.size();
    Poly chi = characteristic_polynomial(rep.psi);
    if (chi == Poly::monomial(Rational(1), k)) {
      for (auto& c : nilpotent_jordan_chains(rep.psi).chains) chains.push_back({Rational(0), std::move(c)});
    } else {
      for (auto& e : rational_jordan_chains(rep.psi)) {
        rep.psi_eigenvalues.push_back(e.eigenvalue);
        for (auto& c : e.chains.chains) chains.push_back({e.eigenvalue, std::move(c)});
      }
      std::stable_sort(chains.begin(), chains.end(),
                       [](const Chain& a, const Chain& b) { return a.vecs.size() > b.vecs.size(); });
    }

    std::vector<ConstMat> chain_mats;
    for (const auto& c : chains) {
      rep.block_sizes.push_back(c.vecs.size());
      for (const auto& v : c.vecs) {
        ConstMat m(n, n);
        for (std::size_t i = 0; i < k; ++i)
          if (sgn(v[i]) != 0) m += split.sub_basis[i].scaled(v[i]);
        chain_mats.push_back(std::move(m));
      }
    }
    SubCoordinates coords(std::move(chain_mats), d1);

    std::size_t off = 0;
    for (std::size_t ci = 0; ci < chains.size(); ++ci) {
      const std::size_t len = chains[ci].vecs.size();
      RatFun gamma = beta0 * chains[ci].lambda;
      for (auto& st : reduce_jordan_block(cur, d1, coords, off, len, gamma, true)) {
        st.chain = ci;
        if (st.solved_g && !st.solved_g->is_zero()) N += scale(coords.basis()[off + *st.position], *st.solved_g);
        rep.steps.push_back(std::move(st));
      }
      off += len;
    }
  } else {
    rep.diag_dim = partial.dim();
  }

  rep.final_matrix = cur;
  if (N.is_zero()) {
    rep.total_gauge = sys.gauge;
  } else {
    // products of lower-left blocks vanish, so the steps compose to Id + N
    rep.total_gauge = sys.gauge * GaugeMatrix(RatMat::identity(n) + N, RatMat::identity(n) - N);
  }

  rep.final_wei_norman = wei_norman(cur);
  std::vector<ConstMat> fg;
  for (const auto& t : rep.final_wei_norman.terms) fg.push_back(t.mat);
  rep.final_lie = lie_closure(fg, true);
  AbelianResult ab = is_abelian(rep.final_lie);
  rep.abelian = ab.abelian;
  rep.witness = ab.witness;

  try {
    rep.tower = picard_vessiot_tower(cur);
  } catch (const PreconditionError& e) {
    rep.tower_refusal = e.what();
  }

  bool simple = !rep.final_wei_norman.terms.empty();
  for (const auto& t : rep.final_wei_norman.terms) simple = simple && coefficient_has_simple_poles_only(t.coeff);
  rep.reduced_certified = certify_monogenous_reduced(cur) ||
                          (simple && !rep.tower_refusal && rep.tower.size() == rep.final_lie.dim());
  rep.certificate = detect_obstruction(rep);
  return rep;
}

std::vector<ReductionReport> reduce_lve(const std::vector<BlockSystem>& systems, const GaugeMatrix& P1) {
  std::vector<ReductionReport> out;
  for (const auto& sys : systems) {
    if (sys.order != out.size() + 1) throw PreconditionError("reduce_lve: systems must be orders 1, 2, ... in sequence");
    GaugeMatrix prev = out.empty() ? GaugeMatrix::identity(0) : out.back().total_gauge;
    BlockSystem pr = reduce_diagonal(sys, P1, prev);
    ReductionReport rep = reduce_subdiagonal(pr);
    ReductionStep diag;
    diag.kind = StepKind::DiagonalAssembly;
    diag.gauge = pr.gauge;
    rep.steps.insert(rep.steps.begin(), std::move(diag));
    rep.initial = sys.matrix;
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace varred
