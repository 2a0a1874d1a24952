#pragma once

// Weighted-graded polynomial rings S = k[X_1..X_n] with deg X_i = a_i > 0,
// homogeneous polynomials, and graded quotient rings R = S/(p_1..p_m)
// realized slice by slice as quotient vector spaces. There are no Groebner
// bases anywhere: every question about R is answered inside a single graded
// slice by exact linear algebra.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gkoszul/errors.hpp"
#include "gkoszul/matrix.hpp"

namespace gkoszul {

struct WeightSystem {
  std::vector<int> weights;  // one positive weight per variable

  int degree(const std::vector<int>& exponents) const {
    int d = 0;
    for (std::size_t i = 0; i < exponents.size(); ++i) d += exponents[i] * weights[i];
    return d;
  }
  int max_weight() const {
    int w = 1;
    for (int a : weights) w = std::max(w, a);
    return w;
  }
};

struct Monomial {
  std::vector<int> exponents;
  int degree = 0;
};

// Homogeneous polynomial: all stored terms share the declared degree; the
// zero polynomial keeps the degree as a formal tag.
template <class F>
class HomPoly {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<std::vector<int>, Elem>;

  HomPoly() : degree_(0) {}
  explicit HomPoly(int degree) : degree_(degree) {}

  static HomPoly monomial(const F& field, const WeightSystem& ws, const std::vector<int>& exps,
                          Elem coeff) {
    HomPoly p(ws.degree(exps));
    if (!field.is_zero(coeff)) p.terms_[exps] = std::move(coeff);
    return p;
  }

  int degree() const { return degree_; }
  void set_degree(int d) { degree_ = d; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  void add_term(const F& field, const std::vector<int>& exps, const Elem& c) {
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      if (!field.is_zero(c)) terms_[exps] = c;
    } else {
      it->second = field.add(it->second, c);
      if (field.is_zero(it->second)) terms_.erase(it);
    }
  }

  std::string to_string(const F& field, const std::vector<std::string>& vars) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << field.to_string(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        os << "*" << vars[i];
        if (e[i] > 1) os << "^" << e[i];
      }
    }
    return os.str();
  }

 private:
  int degree_;
  Terms terms_;
};

template <class F>
HomPoly<F> poly_zero(int degree) {
  return HomPoly<F>(degree);
}

template <class F>
HomPoly<F> poly_add(const F& field, const HomPoly<F>& a, const HomPoly<F>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() != b.degree()) throw DegreeMismatch("poly_add: degrees differ");
  HomPoly<F> out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(field, e, c);
  return out;
}

template <class F>
HomPoly<F> poly_scale(const F& field, const HomPoly<F>& a, const typename F::Elem& s) {
  HomPoly<F> out(a.degree());
  if (field.is_zero(s)) return out;
  for (const auto& [e, c] : a.terms()) out.add_term(field, e, field.mul(c, s));
  return out;
}

template <class F>
HomPoly<F> poly_neg(const F& field, const HomPoly<F>& a) {
  return poly_scale(field, a, field.neg(field.one()));
}

template <class F>
HomPoly<F> poly_sub(const F& field, const HomPoly<F>& a, const HomPoly<F>& b) {
  return poly_add(field, a, poly_neg(field, b));
}

template <class F>
HomPoly<F> poly_multiply(const F& field, const HomPoly<F>& a, const HomPoly<F>& b) {
  HomPoly<F> out(a.degree() + b.degree());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(field, e, field.mul(ca, cb));
    }
  return out;
}

template <class F>
bool poly_eq(const F& field, const HomPoly<F>& a, const HomPoly<F>& b) {
  if (a.is_zero() && b.is_zero()) return true;
  if (a.is_zero() != b.is_zero()) return false;
  if (a.degree() != b.degree()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib)
    if (ia->first != ib->first || !field.eq(ia->second, ib->second)) return false;
  return true;
}

// d/dX_i, with the weighted degree dropping by a_i.
template <class F>
HomPoly<F> poly_derivative(const F& field, const WeightSystem& ws, const HomPoly<F>& a, int i) {
  HomPoly<F> out(a.degree() - ws.weights[i]);
  for (const auto& [e, c] : a.terms()) {
    if (e[i] == 0) continue;
    std::vector<int> e2 = e;
    e2[i] -= 1;
    out.add_term(field, e2, field.mul(c, field.from_int(e[i])));
  }
  return out;
}

// Determinant by Laplace expansion; fine for the small minors that occur
// (maximal minors of maps with ranks <= 4).
template <class F>
HomPoly<F> poly_determinant(const F& field, const std::vector<std::vector<HomPoly<F>>>& m) {
  std::size_t k = m.size();
  if (k == 0) {
    HomPoly<F> one(0);
    one.add_term(field, {}, field.one());
    return one;
  }
  if (k == 1) return m[0][0];
  int deg = 0;
  for (std::size_t i = 0; i < k; ++i) deg += m[i][i].degree();
  HomPoly<F> out(deg);
  for (std::size_t j = 0; j < k; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<HomPoly<F>>> sub(k - 1);
    for (std::size_t r = 1; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) sub[r - 1].push_back(m[r][c]);
    auto term = poly_multiply(field, m[0][j], poly_determinant(field, sub));
    out = poly_add(field, out, j % 2 == 0 ? term : poly_neg(field, term));
  }
  return out;
}

// The one-term polynomial "1" needs zero exponents of the right length.
template <class F>
HomPoly<F> poly_one(const F& field, int n_vars) {
  HomPoly<F> p(0);
  p.add_term(field, std::vector<int>(n_vars, 0), field.one());
  return p;
}

namespace detail {
inline void enumerate_exponents(const std::vector<int>& weights, int pos, int remaining,
                                std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == static_cast<int>(weights.size())) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e * weights[pos] <= remaining; ++e) {
    cur[pos] = e;
    enumerate_exponents(weights, pos + 1, remaining - e * weights[pos], cur, out);
  }
  cur[pos] = 0;
}
}  // namespace detail

// Ambient weighted ring data plus homogeneous relations defining
// R = S/(p_1..p_m). Immutable after construction; per-degree slice data is
// memoized behind a mutex so concurrent slice computations behave as if
// the cache were absent.
template <class F>
class WeightedRing {
 public:
  using Elem = typename F::Elem;
  using Poly = HomPoly<F>;

  WeightedRing(F field, WeightSystem ws, std::vector<std::string> var_names,
               std::vector<Poly> relations)
      : field_(std::move(field)),
        ws_(std::move(ws)),
        vars_(std::move(var_names)),
        relations_(std::move(relations)) {
    for (int a : ws_.weights)
      if (a < 1) throw ValidationError("weights must be positive");
    if (vars_.size() != ws_.weights.size())
      throw ValidationError("variable/weight count mismatch");
  }

  const F& field() const { return field_; }
  const WeightSystem& weight_system() const { return ws_; }
  int n_vars() const { return static_cast<int>(ws_.weights.size()); }
  const std::vector<std::string>& var_names() const { return vars_; }
  const std::vector<Poly>& relations() const { return relations_; }
  int window() const { return ws_.max_weight(); }

  // Monomials of weighted degree d in a fixed total order (graded-lex,
  // descending exponent sequences); deterministic across runs.
  const std::vector<std::vector<int>>& monomial_basis(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    return slice_locked(d).monomials;
  }

  int poly_dim(int d) const {
    if (d < 0) return 0;
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<int>(slice_locked(d).monomials.size());
  }

  int monomial_index(int d, const std::vector<int>& exps) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto& sd = slice_locked(d);
    auto it = sd.index.find(exps);
    if (it == sd.index.end()) throw std::logic_error("monomial_index: not in slice");
    return it->second;
  }

  // Chart of R_d = S_d / (relations)_d over the monomial coordinates.
  const QuotientChart<F>& chart(int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    return chart_locked(d);
  }

  int dim(int d) const {
    if (d < 0) return 0;
    return chart(d).dim();
  }

  // Coordinates of a polynomial of degree d in the S_d monomial basis.
  std::vector<Elem> poly_coords(const Poly& p, int d) const {
    std::lock_guard<std::mutex> lock(mu_);
    const auto& sd = slice_locked(d);
    std::vector<Elem> v(sd.monomials.size(), field_.zero());
    if (p.is_zero()) return v;
    if (p.degree() != d) throw DegreeMismatch("poly_coords: wrong degree");
    for (const auto& [e, c] : p.terms()) v[sd.index.at(e)] = c;
    return v;
  }

  // Quotient coordinates (normal form) of a polynomial in R_d.
  std::vector<Elem> reduce(const Poly& p, int d) const {
    auto v = poly_coords(p, d);
    return chart(d).project(field_, v);
  }

  // Multiplication by f as a matrix between quotient slices R_e -> R_{e+deg f}.
  // Cached; the cache key is the printed polynomial, so structurally equal
  // entries share one matrix.
  const Matrix<F>& mult_matrix(const Poly& f, int e) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::string key = f.to_string(field_, vars_) + "@" + std::to_string(e);
    auto it = mult_cache_.find(key);
    if (it != mult_cache_.end()) return it->second;
    const int d_tgt = e + f.degree();
    const auto& src_chart = chart_locked(e);
    const auto& src_sd = slice_locked(e);
    const auto& tgt_chart = chart_locked(d_tgt);
    const auto& tgt_sd = slice_locked(d_tgt);
    Matrix<F> m(field_, tgt_chart.dim(), src_chart.dim());
    if (!f.is_zero() && e >= 0 && d_tgt >= 0) {
      const auto& free_src = src_chart.free_coords();
      for (int j = 0; j < src_chart.dim(); ++j) {
        const auto& mu = src_sd.monomials[free_src[j]];
        // sparse product f * mu, then normal form in the target chart
        std::vector<Elem> col(tgt_chart.dim(), field_.zero());
        for (const auto& [te, tc] : f.terms()) {
          std::vector<int> prod(te.size());
          for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = te[i] + mu[i];
          int idx = tgt_sd.index.at(prod);
          accumulate_reduced(tgt_chart, idx, tc, col);
        }
        for (int i = 0; i < tgt_chart.dim(); ++i) m.at(i, j) = col[i];
      }
    }
    return mult_cache_.emplace(std::move(key), std::move(m)).first->second;
  }

 private:
  struct SliceData {
    std::vector<std::vector<int>> monomials;
    std::map<std::vector<int>, int> index;
    bool chart_ready = false;
    QuotientChart<F> chart;
  };

  SliceData& slice_locked(int d) const {
    auto it = slices_.find(d);
    if (it != slices_.end()) return it->second;
    SliceData sd;
    if (d >= 0) {
      std::vector<int> cur(ws_.weights.size(), 0);
      detail::enumerate_exponents(ws_.weights, 0, d, cur, sd.monomials);
      std::sort(sd.monomials.begin(), sd.monomials.end(),
                [](const std::vector<int>& a, const std::vector<int>& b) { return a > b; });
      for (int i = 0; i < static_cast<int>(sd.monomials.size()); ++i)
        sd.index[sd.monomials[i]] = i;
    }
    return slices_.emplace(d, std::move(sd)).first->second;
  }

  const QuotientChart<F>& chart_locked(int d) const {
    auto& sd = slice_locked(d);
    if (!sd.chart_ready) {
      Matrix<F> span = ideal_slice_locked(relations_, d);
      sd.chart = QuotientChart<F>(field_, static_cast<int>(sd.monomials.size()), span);
      sd.chart_ready = true;
    }
    return sd.chart;
  }

  // Columns spanning the degree-d piece of the ideal generated by gens,
  // in S_d monomial coordinates.
  Matrix<F> ideal_slice_locked(const std::vector<Poly>& gens, int d) const {
    const auto& sd = slice_locked(d);
    int n_cols = 0;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      int e = d - g.degree();
      if (e >= 0) n_cols += static_cast<int>(slice_locked(e).monomials.size());
    }
    Matrix<F> span(field_, static_cast<int>(sd.monomials.size()), n_cols);
    int col = 0;
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      int e = d - g.degree();
      if (e < 0) continue;
      for (const auto& mu : slice_locked(e).monomials) {
        for (const auto& [te, tc] : g.terms()) {
          std::vector<int> prod(te.size());
          for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = te[i] + mu[i];
          span.at(sd.index.at(prod), col) = field_.add(span.at(sd.index.at(prod), col), tc);
        }
        ++col;
      }
    }
    return span;
  }

  // col += c * (normal form of the idx-th ambient basis vector).
  void accumulate_reduced(const QuotientChart<F>& ch, int idx, const Elem& c,
                          std::vector<Elem>& col) const {
    int pk = index_in(ch.pivot_coords(), idx);
    if (pk < 0) {
      int fk = index_in(ch.free_coords(), idx);
      col[fk] = field_.add(col[fk], c);
      return;
    }
    const auto& rows = ch.span_rows();
    const auto& free = ch.free_coords();
    for (std::size_t j = 0; j < free.size(); ++j) {
      const Elem& r = rows.at(pk, free[j]);
      if (!field_.is_zero(r)) col[j] = field_.sub(col[j], field_.mul(c, r));
    }
  }

  static int index_in(const std::vector<int>& sorted, int v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) return -1;
    return static_cast<int>(it - sorted.begin());
  }

  friend struct RingOps;

  F field_;
  WeightSystem ws_;
  std::vector<std::string> vars_;
  std::vector<Poly> relations_;

  mutable std::mutex mu_;
  mutable std::map<int, SliceData> slices_;
  mutable std::map<std::string, Matrix<F>> mult_cache_;
};

template <class F>
using RingPtr = std::shared_ptr<const WeightedRing<F>>;

// Public form of the ideal slice: span of {monomial * gen} of degree d in
// S_d monomial coordinates.
struct RingOps {
  template <class F>
  static Matrix<F> ideal_slice(const WeightedRing<F>& ring,
                               const std::vector<HomPoly<F>>& gens, int d) {
    std::lock_guard<std::mutex> lock(ring.mu_);
    ring.slice_locked(d);
    return ring.ideal_slice_locked(gens, d);
  }
};

template <class F>
Matrix<F> ideal_slice(const WeightedRing<F>& ring, const std::vector<HomPoly<F>>& gens, int d) {
  return RingOps::ideal_slice(ring, gens, d);
}

// Truncated Hilbert series of a complete intersection,
// prod_j (1 - z^{b_j}) / prod_i (1 - z^{a_i}), as integer coefficients up to
// degree bound.
inline std::vector<std::int64_t> ci_hilbert_series(const std::vector<int>& weights,
                                                   const std::vector<int>& rel_degrees,
                                                   int bound) {
  std::vector<std::int64_t> s(bound + 1, 0);
  s[0] = 1;
  for (int b : rel_degrees) {
    std::vector<std::int64_t> t(bound + 1, 0);
    for (int d = 0; d <= bound; ++d) {
      t[d] = s[d];
      if (d >= b) t[d] -= s[d - b];
    }
    s.swap(t);
  }
  for (int a : weights) {
    // multiply by 1 + z^a + z^{2a} + ...
    for (int d = a; d <= bound; ++d) s[d] += s[d - a];
  }
  return s;
}

}  // namespace gkoszul
