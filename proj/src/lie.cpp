#include "varred/lie.hpp"

#include <algorithm>
#include <map>

#include "varred/factor.hpp"
#include "varred/integrate.hpp"

namespace varred {

RatMat WeiNormanDecomp::recompose(std::size_t rows, std::size_t cols) const {
  RatMat r(rows, cols);
  for (const auto& t : terms) r += scale(t.mat, t.coeff);
  return r;
}

namespace {

// Column layout of the partial-fraction frame.
struct Frame {
  struct PoleBlock {
    Poly factor;
    std::size_t max_mult;
    std::size_t offset;
  };
  std::vector<PoleBlock> poles;
  std::size_t poly_offset = 0;
  std::size_t poly_len = 0;  // number of polynomial-part columns

  std::size_t size() const { return poly_offset + poly_len; }

  // column of the coefficient of x^c / p^k
  std::size_t pole_column(std::size_t block, std::size_t k, std::size_t c) const {
    const auto& b = poles[block];
    const std::size_t d = b.factor.degree();
    return b.offset + (b.max_mult - k) * d + (d - 1 - c);
  }
  // column of x^c in the polynomial part (highest degree first)
  std::size_t poly_column(std::size_t c) const { return poly_offset + (poly_len - 1 - c); }
};

QVector frame_vector(const Frame& fr, const PFDecomp& pf) {
  QVector v(fr.size(), Rational(0));
  for (const auto& t : pf.terms) {
    std::size_t b = 0;
    while (fr.poles[b].factor != t.factor) ++b;
    for (std::size_t c = 0; c < t.numerator.size(); ++c) v[fr.pole_column(b, t.multiplicity, c)] = t.numerator.coeff(c);
  }
  for (std::size_t c = 0; c < pf.polynomial_part.size(); ++c) v[fr.poly_column(c)] = pf.polynomial_part.coeff(c);
  return v;
}

RatFun frame_function(const Frame& fr, const QVector& v) {
  RatFun f;
  std::vector<Rational> polyc(fr.poly_len, Rational(0));
  for (std::size_t c = 0; c < fr.poly_len; ++c) polyc[c] = v[fr.poly_column(c)];
  f += RatFun(Poly(std::move(polyc)));
  for (std::size_t b = 0; b < fr.poles.size(); ++b) {
    const auto& blk = fr.poles[b];
    for (std::size_t k = 1; k <= blk.max_mult; ++k) {
      std::vector<Rational> num(blk.factor.degree(), Rational(0));
      bool any = false;
      for (std::size_t c = 0; c < blk.factor.degree(); ++c) {
        num[c] = v[fr.pole_column(b, k, c)];
        any = any || sgn(num[c]) != 0;
      }
      if (any) f += RatFun(Poly(std::move(num)), pow(blk.factor, k));
    }
  }
  return f;
}

}  // namespace

WeiNormanDecomp wei_norman(const RatMat& A) {
  WeiNormanDecomp out;
  const std::size_t R = A.rows(), C = A.cols();

  std::vector<RatFun> uniq;
  std::map<RatFun, std::size_t> index;
  std::vector<std::size_t> where(R * C, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      const RatFun& e = A(i, j);
      if (e.is_zero()) continue;
      auto [it, fresh] = index.emplace(e, uniq.size());
      if (fresh) uniq.push_back(e);
      where[i * C + j] = it->second;
    }
  if (uniq.empty()) return out;

  // frame from all denominators
  std::map<Poly, std::vector<FactorPower>> den_factors;
  std::map<Poly, std::size_t> maxmult;
  std::size_t poly_len = 0;
  std::vector<PFDecomp> pfs;
  pfs.reserve(uniq.size());
  for (const auto& e : uniq) {
    auto it = den_factors.find(e.den());
    if (it == den_factors.end()) it = den_factors.emplace(e.den(), factor(e.den())).first;
    for (const auto& fp : it->second) maxmult[fp.factor] = std::max(maxmult[fp.factor], fp.multiplicity);
    pfs.push_back(partial_fractions(e));
    poly_len = std::max(poly_len, pfs.back().polynomial_part.size());
  }
  Frame fr;
  std::size_t off = 0;
  for (const auto& [p, m] : maxmult) {
    fr.poles.push_back({p, m, off});
    off += m * p.degree();
  }
  fr.poly_offset = off;
  fr.poly_len = poly_len;

  ConstMat V(uniq.size(), fr.size());
  std::vector<QVector> vecs;
  for (std::size_t u = 0; u < uniq.size(); ++u) {
    vecs.push_back(frame_vector(fr, pfs[u]));
    for (std::size_t c = 0; c < fr.size(); ++c) V(u, c) = vecs[u][c];
  }
  RrefResult rr = rref(V);
  out.dim_k_span = rr.rank;

  // scale of each basis element: coefficient = scale * (rref row)
  std::vector<Rational> scales(rr.rank, Rational(1));
  std::vector<RatFun> coeffs(rr.rank);
  for (std::size_t b = 0; b < rr.rank; ++b) {
    QVector row(fr.size());
    for (std::size_t c = 0; c < fr.size(); ++c) row[c] = rr.reduced(b, c);
    const std::size_t piv = rr.pivots[b];
    for (std::size_t k = 0; k < R * C; ++k) {
      if (where[k] == static_cast<std::size_t>(-1)) continue;
      const QVector& v = vecs[where[k]];
      if (sgn(v[piv]) == 0) continue;
      bool prop = true;
      for (std::size_t c = 0; c < fr.size() && prop; ++c) prop = (v[c] == v[piv] * row[c]);
      if (prop) {
        scales[b] = v[piv];
        break;
      }
    }
    QVector scaled = row;
    for (auto& c : scaled) c *= scales[b];
    coeffs[b] = frame_function(fr, scaled);
  }

  for (std::size_t b = 0; b < rr.rank; ++b) out.terms.push_back({coeffs[b], ConstMat(R, C)});
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) {
      std::size_t u = where[i * C + j];
      if (u == static_cast<std::size_t>(-1)) continue;
      for (std::size_t b = 0; b < rr.rank; ++b) {
        const Rational& c = vecs[u][rr.pivots[b]];
        if (sgn(c) != 0) out.terms[b].mat(i, j) = c / scales[b];
      }
    }
  return out;
}

std::optional<QVector> LieBasis::coordinates(const ConstMat& m) const {
  if (basis.empty()) {
    if (m.is_zero()) return QVector{};
    return std::nullopt;
  }
  SpanTracker tr(basis[0].rows() * basis[0].cols());
  for (const auto& b : basis) tr.add(flatten(b));
  return tr.coordinates(flatten(m));
}

LieBasis lie_closure(const std::vector<ConstMat>& gens, bool with_structure) {
  LieBasis out;
  out.gens = gens;
  if (gens.empty()) return out;
  const std::size_t n = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != n || g.cols() != n) throw PreconditionError("lie_closure: generators must be square of equal size");
  SpanTracker tr(n * n);
  for (const auto& g : gens)
    if (tr.add(flatten(g))) out.basis.push_back(g);

  std::size_t lo = 0, hi = out.basis.size();
  while (lo < hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < hi; ++j) {
        if (j == i || (j >= lo && j < i)) continue;
        ConstMat c = bracket(out.basis[i], out.basis[j]);
        if (c.is_zero()) continue;
        if (tr.add(flatten(c))) out.basis.push_back(std::move(c));
      }
    }
    lo = hi;
    hi = out.basis.size();
  }

  if (with_structure) {
    const std::size_t d = out.basis.size();
    out.structure.assign(d, std::vector<QVector>(d, QVector(d, Rational(0))));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        ConstMat c = bracket(out.basis[i], out.basis[j]);
        if (c.is_zero()) continue;
        auto co = tr.coordinates(flatten(c));
        if (!co) throw std::logic_error("lie_closure: bracket outside the closure");
        out.structure[i][j] = *co;
        for (auto& v : *co) v = -v;
        out.structure[j][i] = std::move(*co);
      }
  }
  return out;
}

template <class M>
static bool lower_tri(const M& m, std::size_t d1) {
  for (std::size_t i = 0; i < d1 && i < m.rows(); ++i)
    for (std::size_t j = d1; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

bool is_block_lower_triangular(const ConstMat& m, std::size_t d1) { return lower_tri(m, d1); }
bool is_block_lower_triangular(const RatMat& m, std::size_t d1) {
  for (std::size_t i = 0; i < d1 && i < m.rows(); ++i)
    for (std::size_t j = d1; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <class M>
static M diag_part_impl(const M& m, std::size_t d1) {
  M r = m;
  for (std::size_t i = d1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < d1; ++j) r(i, j) = 0;
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = d1; j < m.cols(); ++j) r(i, j) = 0;
  return r;
}

template <class M>
static M sub_part_impl(const M& m, std::size_t d1) {
  M r(m.rows(), m.cols());
  for (std::size_t i = d1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < d1; ++j) r(i, j) = m(i, j);
  return r;
}

ConstMat diag_part(const ConstMat& m, std::size_t d1) { return diag_part_impl(m, d1); }
ConstMat sub_part(const ConstMat& m, std::size_t d1) { return sub_part_impl(m, d1); }
RatMat diag_part(const RatMat& m, std::size_t d1) { return diag_part_impl(m, d1); }
RatMat sub_part(const RatMat& m, std::size_t d1) { return sub_part_impl(m, d1); }

bool in_sub(const ConstMat& m, std::size_t d1) { return sub_part(m, d1) == m; }

DiagSubSplit split_diag_sub(const std::vector<ConstMat>& basis, std::size_t d1, std::size_t d2) {
  DiagSubSplit out;
  out.d1 = d1;
  out.d2 = d2;
  if (basis.empty()) return out;
  const std::size_t n = d1 + d2;
  SpanTracker dt(n * n), st(n * n);
  for (const auto& b : basis) {
    if (b.rows() != n || b.cols() != n) throw PreconditionError("split_diag_sub: size does not match d1 + d2");
    if (!is_block_lower_triangular(b, d1))
      throw PreconditionError("split_diag_sub: matrix has a nonzero upper-right block");
    ConstMat d = diag_part(b, d1);
    ConstMat s = sub_part(b, d1);
    if (!d.is_zero() && dt.add(flatten(d))) out.diag_basis.push_back(std::move(d));
    if (!s.is_zero() && st.add(flatten(s))) out.sub_basis.push_back(std::move(s));
  }
  return out;
}

ConstMat adjoint_on_sub(const ConstMat& D, const std::vector<ConstMat>& sub_basis) {
  const std::size_t k = sub_basis.size();
  ConstMat out(k, k);
  if (k == 0) return out;
  SpanTracker tr(sub_basis[0].rows() * sub_basis[0].cols());
  for (const auto& b : sub_basis)
    if (!tr.add(flatten(b))) throw PreconditionError("adjoint_on_sub: basis is linearly dependent");
  for (std::size_t j = 0; j < k; ++j) {
    auto c = tr.coordinates(flatten(bracket(D, sub_basis[j])));
    if (!c) throw PreconditionError("adjoint_on_sub: bracket leaves the span of the basis");
    for (std::size_t i = 0; i < k; ++i) out(i, j) = (*c)[i];
  }
  return out;
}

AbelianResult is_abelian(const LieBasis& b) {
  AbelianResult r;
  const std::size_t d = b.basis.size();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      bool zero;
      if (!b.structure.empty()) {
        zero = std::all_of(b.structure[i][j].begin(), b.structure[i][j].end(),
                           [](const Rational& c) { return sgn(c) == 0; });
      } else {
        zero = bracket(b.basis[i], b.basis[j]).is_zero();
      }
      if (!zero) {
        r.abelian = false;
        r.witness = std::make_pair(i, j);
        return r;
      }
    }
  return r;
}

}  // namespace varred
