#pragma once

// Exterior, symmetric and divided power modules over a free graded module,
// and the structure maps they carry:
//
//   * right multiplication (contraction) of the exterior algebra by dual
//     functionals, single and iterated; the iterated form
//     iota_{u_p} o ... o iota_{u_1} realizes x <- (u_1 ^ ... ^ u_p), which
//     agrees with the signed-determinant formula over permutations increasing
//     on two blocks (the test suite pins this sign exhaustively);
//   * left multiplication (wedge) by elements of the exterior algebra;
//   * the Koszul boundaries: on Lambda^q G (x) S_p(F)^* the dual-side action
//     z.f_j is the divided-power contraction (coefficient-free transpose of
//     multiplication by f_j), on Lambda^q G (x) S_p(F) it is symmetric
//     multiplication;
//   * the wedge boundaries on D_k(H) (x) Lambda^q G and S_p(H^*) (x)
//     Lambda^q G, with the divided-power formula lowering one multiplicity;
//   * the splice maps: full contraction by the rows of psi, and left wedge
//     by the wedge of columns of phi (an l x l minor expansion).
//
// Everything below also exists in a "cell" form carrying an extra H-factor
// on the left and an F-factor on the right, which is what the Koszul
// bicomplex grid is made of. Sector twist offsets (-sum tau_F on the dual
// F-side above the nu_psi splice, -sum tau_H east of the nu^phi splice) keep
// all four map families degree 0 while the plain sectors keep their naive
// twists.

#include <string>
#include <utility>
#include <vector>

#include "gkoszul/combinatorics.hpp"
#include "gkoszul/module.hpp"

namespace gkoszul {

namespace detail {

inline std::string join_labels(const std::vector<std::string>& base, const std::vector<int>& idx,
                               const char* sep) {
  if (idx.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += sep;
    out += base[idx[i]];
  }
  return out;
}

}  // namespace detail

// Lambda^k: basis = k-subsets of generators in lexicographic order; rank
// C(n,k); twist of a generator is the sum of constituent twists.
template <class F>
FreeGradedModule<F> exterior_power(const FreeGradedModule<F>& m, int k) {
  auto subs = subsets(m.rank(), k);
  std::vector<int> tw;
  std::vector<std::string> lb;
  for (const auto& s : subs) {
    int t = 0;
    for (int i : s) t += m.twists()[i];
    tw.push_back(t);
    lb.push_back(detail::join_labels(m.labels(), s, "^"));
  }
  return FreeGradedModule<F>(m.ring(), std::move(tw), std::move(lb));
}

// S_p: multiset basis in lexicographic order, rank C(rank+p-1, p).
template <class F>
FreeGradedModule<F> symmetric_power(const FreeGradedModule<F>& m, int p) {
  auto ms = multisets(m.rank(), p);
  std::vector<int> tw;
  std::vector<std::string> lb;
  for (const auto& s : ms) {
    int t = 0;
    for (int i : s) t += m.twists()[i];
    tw.push_back(t);
    lb.push_back(detail::join_labels(m.labels(), s, "."));
  }
  return FreeGradedModule<F>(m.ring(), std::move(tw), std::move(lb));
}

// D_p(M): same multiset labels as S_p(M^*) dualized; the canonical
// isomorphism D(M) = S(M^*)^* is the identity on these labels.
template <class F>
FreeGradedModule<F> divided_power(const FreeGradedModule<F>& m, int p) {
  auto ms = multisets(m.rank(), p);
  std::vector<int> tw;
  std::vector<std::string> lb;
  for (const auto& s : ms) {
    int t = 0;
    for (int i : s) t += m.twists()[i];
    tw.push_back(t);
    std::string l = "(";
    l += detail::join_labels(m.labels(), s, ".");
    l += ")";
    tw.back() = t;
    lb.push_back(l);
  }
  return FreeGradedModule<F>(m.ring(), std::move(tw), std::move(lb));
}

// Raw polynomial matrix without twist bookkeeping; used while assembling.
template <class F>
struct RawPolyMat {
  int rows = 0, cols = 0;
  std::vector<HomPoly<F>> a;

  RawPolyMat() = default;
  RawPolyMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
  HomPoly<F>& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const HomPoly<F>& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

template <class F>
RawPolyMat<F> raw_multiply(const F& field, const RawPolyMat<F>& x, const RawPolyMat<F>& y) {
  RawPolyMat<F> out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (int j = 0; j < y.cols; ++j) {
        if (y.at(k, j).is_zero()) continue;
        auto t = poly_multiply(field, x.at(i, k), y.at(k, j));
        if (out.at(i, j).is_zero() && out.at(i, j).terms().empty())
          out.at(i, j) = poly_add(field, HomPoly<F>(t.degree()), t);
        else
          out.at(i, j) = poly_add(field, out.at(i, j), t);
      }
    }
  return out;
}

// Single contraction on basis subsets: e_S <- u = sum_pos (-1)^pos u(g_{S[pos]}) e_{S minus pos}.
template <class F>
RawPolyMat<F> raw_contraction(const F& field, int n, const std::vector<HomPoly<F>>& u, int q) {
  auto src = subsets(n, q);
  auto dst = subsets(n, q - 1);
  std::map<std::vector<int>, int> dst_idx;
  for (int i = 0; i < static_cast<int>(dst.size()); ++i) dst_idx[dst[i]] = i;
  RawPolyMat<F> out(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (int j = 0; j < static_cast<int>(src.size()); ++j) {
    const auto& s = src[j];
    for (int pos = 0; pos < static_cast<int>(s.size()); ++pos) {
      if (u[s[pos]].is_zero()) continue;
      std::vector<int> rest;
      for (int t = 0; t < static_cast<int>(s.size()); ++t)
        if (t != pos) rest.push_back(s[t]);
      auto coeff = (pos % 2 == 0) ? u[s[pos]] : poly_neg(field, u[s[pos]]);
      auto& cell = out.at(dst_idx.at(rest), j);
      cell = cell.is_zero() ? coeff : poly_add(field, cell, coeff);
    }
  }
  return out;
}

// Iterated contraction by u_1, ..., u_p (u_1 applied first): the matrix of
// x <- (u_1 ^ ... ^ u_p) on Lambda^q.
template <class F>
RawPolyMat<F> raw_full_contraction(const F& field, int n_vars, int n,
                                   const std::vector<std::vector<HomPoly<F>>>& us, int q) {
  int nq = static_cast<int>(subsets(n, q).size());
  RawPolyMat<F> acc(nq, nq);
  for (int i = 0; i < nq; ++i) acc.at(i, i) = poly_one<F>(field, n_vars);
  int cur_q = q;
  for (const auto& u : us) {
    acc = raw_multiply(field, raw_contraction(field, n, u, cur_q), acc);
    --cur_q;
  }
  return acc;
}

namespace detail {

// Shift all twists of a module by s.
template <class F>
FreeGradedModule<F> shifted(const FreeGradedModule<F>& m, int s) {
  std::vector<int> tw = m.twists();
  for (int& t : tw) t += s;
  return FreeGradedModule<F>(m.ring(), std::move(tw), m.labels());
}

// The functional degree c with deg u_i = twist_i + c; DegreeMismatch when the
// entries do not assemble into a homogeneous functional.
template <class F>
int functional_degree(const FreeGradedModule<F>& m, const std::vector<HomPoly<F>>& u) {
  bool found = false;
  int c = 0;
  for (int i = 0; i < m.rank(); ++i) {
    if (u[i].is_zero()) continue;
    int ci = u[i].degree() - m.twists()[i];
    if (!found) {
      c = ci;
      found = true;
    } else if (ci != c) {
      throw DegreeMismatch("contraction: dual element is not homogeneous");
    }
  }
  return c;
}

}  // namespace detail

// Lambda^k -> Lambda^{k-1} (twisted by the functional degree).
template <class F>
HomogeneousMap<F> single_contraction(const FreeGradedModule<F>& g_module, int k,
                                     const std::vector<HomPoly<F>>& dual_elem) {
  const auto& field = g_module.ring()->field();
  if (static_cast<int>(dual_elem.size()) != g_module.rank())
    throw std::invalid_argument("single_contraction: functional size mismatch");
  int c = detail::functional_degree(g_module, dual_elem);
  auto raw = raw_contraction(field, g_module.rank(), dual_elem, k);
  auto src = exterior_power(g_module, k);
  auto tgt = detail::shifted(exterior_power(g_module, k - 1), -c);
  return HomogeneousMap<F>(src, tgt, std::move(raw.a));
}

// Lambda^k -> Lambda^{k-p}; iterated single contractions applied
// right-to-left over the wedge of functionals.
template <class F>
HomogeneousMap<F> full_contraction(const FreeGradedModule<F>& g_module, int k,
                                   const std::vector<std::vector<HomPoly<F>>>& dual_elems) {
  const auto& field = g_module.ring()->field();
  int shift = 0;
  for (const auto& u : dual_elems) shift -= detail::functional_degree(g_module, u);
  auto raw = raw_full_contraction(field, g_module.ring()->n_vars(), g_module.rank(), dual_elems, k);
  auto src = exterior_power(g_module, k);
  auto tgt = detail::shifted(exterior_power(g_module, k - static_cast<int>(dual_elems.size())),
                             shift);
  return HomogeneousMap<F>(src, tgt, std::move(raw.a));
}

// ---------------------------------------------------------------------------
// Cells: H-factor (x) Lambda^q G (x) F-factor, the building blocks of both
// generalized Koszul complex families and of the bicomplex grid.
// ---------------------------------------------------------------------------

enum class HSide { divided, dual_sym };  // D_i(H) west of the splice, S_i(H^*) east
enum class FSide { dual, plain };        // S_j(F)^* above the splice, S_j(F) below

struct CellShape {
  HSide hside = HSide::divided;
  int h_index = 0;
  int lambda_deg = 0;  // q
  FSide fside = FSide::plain;
  int f_index = 0;
};

// The pair of maps H --phi--> G --psi--> F all cells refer to. H or F may
// have rank zero, which degenerates the grid to a single complex family.
template <class F>
struct KoszulPair {
  HomogeneousMap<F> psi;  // G -> Fm
  HomogeneousMap<F> phi;  // H -> G

  const FreeGradedModule<F>& G() const { return psi.source(); }
  const FreeGradedModule<F>& Fm() const { return psi.target(); }
  const FreeGradedModule<F>& H() const { return phi.source(); }
  int n() const { return G().rank(); }
  int m() const { return Fm().rank(); }
  int l() const { return H().rank(); }

  int sum_tau_F() const {
    int s = 0;
    for (int t : Fm().twists()) s += t;
    return s;
  }
  int sum_tau_H() const {
    int s = 0;
    for (int t : H().twists()) s += t;
    return s;
  }

  // psi with phi absent: a rank-zero H.
  static KoszulPair from_psi(const HomogeneousMap<F>& psi) {
    FreeGradedModule<F> h(psi.source().ring(), {}, {});
    return KoszulPair{psi, HomogeneousMap<F>::zero(h, psi.source())};
  }
  // phi with psi absent: a rank-zero F.
  static KoszulPair from_phi(const HomogeneousMap<F>& phi) {
    FreeGradedModule<F> f(phi.source().ring(), {}, {});
    return KoszulPair{HomogeneousMap<F>::zero(phi.target(), f), phi};
  }
};

template <class F>
KoszulPair<F> make_pair_checked(const HomogeneousMap<F>& psi, const HomogeneousMap<F>& phi) {
  if (!map_is_zero_mod(compose(psi, phi)))
    throw CompositionNonzero("psi o phi != 0");
  return KoszulPair<F>{psi, phi};
}

template <class F>
FreeGradedModule<F> cell_module(const KoszulPair<F>& kp, const CellShape& c) {
  const auto& ring = kp.G().ring();
  if (c.lambda_deg < 0 || c.lambda_deg > kp.n() || c.h_index < 0 || c.f_index < 0)
    return FreeGradedModule<F>(ring, {}, {});
  auto hs = multisets(kp.l(), c.h_index);
  auto gs = subsets(kp.n(), c.lambda_deg);
  auto fs = multisets(kp.m(), c.f_index);
  int offset = 0;
  if (c.hside == HSide::dual_sym) offset -= kp.sum_tau_H();
  if (c.fside == FSide::dual) offset -= kp.sum_tau_F();
  std::vector<int> tw;
  std::vector<std::string> lb;
  tw.reserve(hs.size() * gs.size() * fs.size());
  for (const auto& h : hs)
    for (const auto& g : gs)
      for (const auto& f : fs) {
        int t = offset;
        for (int i : h) t += (c.hside == HSide::divided ? kp.H().twists()[i] : -kp.H().twists()[i]);
        for (int i : g) t += kp.G().twists()[i];
        for (int i : f)
          t += (c.fside == FSide::plain ? kp.Fm().twists()[i] : -kp.Fm().twists()[i]);
        tw.push_back(t);
        std::string l;
        if (c.h_index > 0)
          l += (c.hside == HSide::divided ? "D" : "S*") +
               detail::join_labels(kp.H().labels(), h, ".") + "|";
        l += detail::join_labels(kp.G().labels(), g, "^");
        if (c.f_index > 0)
          l += std::string("|") + (c.fside == FSide::dual ? "S*" : "S") +
               detail::join_labels(kp.Fm().labels(), f, ".");
        lb.push_back(l);
      }
  return FreeGradedModule<F>(ring, std::move(tw), std::move(lb));
}

namespace detail {

struct CellIndexer {
  std::vector<std::vector<int>> hs, gs, fs;
  std::map<std::vector<int>, int> hidx, gidx, fidx;

  CellIndexer(int l, int hi, int n, int q, int m, int fj) {
    hs = multisets(l, hi);
    gs = subsets(n, q);
    fs = multisets(m, fj);
    for (int i = 0; i < static_cast<int>(hs.size()); ++i) hidx[hs[i]] = i;
    for (int i = 0; i < static_cast<int>(gs.size()); ++i) gidx[gs[i]] = i;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) fidx[fs[i]] = i;
  }
  int size() const { return static_cast<int>(hs.size() * gs.size() * fs.size()); }
  int index(int h, int g, int f) const {
    return (h * static_cast<int>(gs.size()) + g) * static_cast<int>(fs.size()) + f;
  }
};

// multiset +/- one element, as sorted index vectors
inline std::vector<int> ms_minus(const std::vector<int>& ms, int pos) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(ms.size()); ++i)
    if (i != pos) out.push_back(ms[i]);
  return out;
}
inline std::vector<int> ms_plus(const std::vector<int>& ms, int v) {
  std::vector<int> out = ms;
  out.insert(std::lower_bound(out.begin(), out.end(), v), v);
  return out;
}
inline int ms_count(const std::vector<int>& ms, int v) {
  int c = 0;
  for (int x : ms) c += (x == v);
  return c;
}
// first position of value v in the sorted multiset
inline int ms_find(const std::vector<int>& ms, int v) {
  for (int i = 0; i < static_cast<int>(ms.size()); ++i)
    if (ms[i] == v) return i;
  return -1;
}

inline int shuffle_sign(const std::vector<int>& t, const std::vector<int>& s) {
  int inv = 0;
  for (int a : t)
    for (int b : s)
      if (a > b) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

inline std::vector<int> set_union_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// Vertical step out of a cell: the dual / plain Koszul boundary, or nu_psi
// when leaving S_0(F)^*. Returns the target shape alongside the map.
template <class F>
std::pair<CellShape, HomogeneousMap<F>> cell_vertical(const KoszulPair<F>& kp,
                                                      const CellShape& c) {
  const auto& field = kp.G().ring()->field();
  CellShape tgt = c;
  if (c.fside == FSide::dual && c.f_index == 0) {
    tgt.lambda_deg = c.lambda_deg - kp.m();
    tgt.fside = FSide::plain;
    tgt.f_index = 0;
  } else if (c.fside == FSide::dual) {
    tgt.lambda_deg = c.lambda_deg - 1;
    tgt.f_index = c.f_index - 1;
  } else {
    tgt.lambda_deg = c.lambda_deg - 1;
    tgt.f_index = c.f_index + 1;
  }
  auto src_mod = cell_module(kp, c);
  auto tgt_mod = cell_module(kp, tgt);
  if (src_mod.rank() == 0 || tgt_mod.rank() == 0)
    return {tgt, HomogeneousMap<F>::zero(src_mod, tgt_mod)};

  detail::CellIndexer si(kp.l(), c.h_index, kp.n(), c.lambda_deg, kp.m(), c.f_index);
  detail::CellIndexer ti(kp.l(), tgt.h_index, kp.n(), tgt.lambda_deg, kp.m(), tgt.f_index);
  std::vector<HomPoly<F>> entries(static_cast<std::size_t>(tgt_mod.rank()) * src_mod.rank());
  auto add = [&](int row, int col, const HomPoly<F>& p) {
    auto& e = entries[static_cast<std::size_t>(row) * src_mod.rank() + col];
    e = e.is_zero() && e.terms().empty() ? p : poly_add(field, e, p);
  };

  if (c.fside == FSide::dual && c.f_index == 0) {
    // nu_psi: full contraction by the rows of psi, identity on the H factor.
    std::vector<std::vector<HomPoly<F>>> rows;
    for (int k = 0; k < kp.m(); ++k) {
      std::vector<HomPoly<F>> u;
      for (int i = 0; i < kp.n(); ++i) u.push_back(kp.psi.entry(k, i));
      rows.push_back(std::move(u));
    }
    auto raw = raw_full_contraction(field, kp.G().ring()->n_vars(), kp.n(), rows, c.lambda_deg);
    for (int h = 0; h < static_cast<int>(si.hs.size()); ++h)
      for (int gs = 0; gs < static_cast<int>(si.gs.size()); ++gs)
        for (int gt = 0; gt < static_cast<int>(ti.gs.size()); ++gt)
          if (!raw.at(gt, gs).is_zero()) add(ti.index(h, gt, 0), si.index(h, gs, 0), raw.at(gt, gs));
    return {tgt, HomogeneousMap<F>(src_mod, tgt_mod, std::move(entries))};
  }

  const bool dual = (c.fside == FSide::dual);
  for (int h = 0; h < static_cast<int>(si.hs.size()); ++h)
    for (int g = 0; g < static_cast<int>(si.gs.size()); ++g) {
      const auto& s = si.gs[g];
      for (int f = 0; f < static_cast<int>(si.fs.size()); ++f) {
        const auto& alpha = si.fs[f];
        for (int pos = 0; pos < static_cast<int>(s.size()); ++pos) {
          int gi = s[pos];
          auto rest = detail::ms_minus(s, pos);
          int gt = ti.gidx.at(rest);
          for (int k = 0; k < kp.m(); ++k) {
            const auto& coeff = kp.psi.entry(k, gi);
            if (coeff.is_zero()) continue;
            std::vector<int> beta;
            if (dual) {
              int at = detail::ms_find(alpha, k);
              if (at < 0) continue;  // contraction kills the term
              beta = detail::ms_minus(alpha, at);
            } else {
              beta = detail::ms_plus(alpha, k);
            }
            auto signed_coeff = (pos % 2 == 0) ? coeff : poly_neg(field, coeff);
            add(ti.index(h, gt, ti.fidx.at(beta)), si.index(h, g, f), signed_coeff);
          }
        }
      }
    }
  return {tgt, HomogeneousMap<F>(src_mod, tgt_mod, std::move(entries))};
}

// Horizontal step out of a cell: the wedge boundary d_phi on either side of
// the splice, or nu^phi (left wedge by phi(h_1) ^ ... ^ phi(h_l)) when
// leaving D_0(H).
template <class F>
std::pair<CellShape, HomogeneousMap<F>> cell_horizontal(const KoszulPair<F>& kp,
                                                        const CellShape& c) {
  const auto& field = kp.G().ring()->field();
  CellShape tgt = c;
  if (c.hside == HSide::divided && c.h_index == 0) {
    tgt.hside = HSide::dual_sym;
    tgt.h_index = 0;
    tgt.lambda_deg = c.lambda_deg + kp.l();
  } else if (c.hside == HSide::divided) {
    tgt.h_index = c.h_index - 1;
    tgt.lambda_deg = c.lambda_deg + 1;
  } else {
    tgt.h_index = c.h_index + 1;
    tgt.lambda_deg = c.lambda_deg + 1;
  }
  auto src_mod = cell_module(kp, c);
  auto tgt_mod = cell_module(kp, tgt);
  if (src_mod.rank() == 0 || tgt_mod.rank() == 0)
    return {tgt, HomogeneousMap<F>::zero(src_mod, tgt_mod)};

  detail::CellIndexer si(kp.l(), c.h_index, kp.n(), c.lambda_deg, kp.m(), c.f_index);
  detail::CellIndexer ti(kp.l(), tgt.h_index, kp.n(), tgt.lambda_deg, kp.m(), tgt.f_index);
  std::vector<HomPoly<F>> entries(static_cast<std::size_t>(tgt_mod.rank()) * src_mod.rank());
  auto add = [&](int row, int col, const HomPoly<F>& p) {
    auto& e = entries[static_cast<std::size_t>(row) * src_mod.rank() + col];
    e = e.is_zero() && e.terms().empty() ? p : poly_add(field, e, p);
  };

  if (c.hside == HSide::divided && c.h_index == 0) {
    // nu^phi: wedge on the left by Phi = phi(h_1) ^ ... ^ phi(h_l); the
    // coefficient on e_T is the l x l minor of phi with rows T.
    auto ts = subsets(kp.n(), kp.l());
    for (const auto& t : ts) {
      std::vector<std::vector<HomPoly<F>>> minor(kp.l());
      for (int a = 0; a < kp.l(); ++a)
        for (int b = 0; b < kp.l(); ++b) minor[a].push_back(kp.phi.entry(t[a], b));
      auto coeff = kp.l() == 0 ? poly_one<F>(field, kp.G().ring()->n_vars())
                               : poly_determinant(field, minor);
      if (coeff.is_zero()) continue;
      for (int g = 0; g < static_cast<int>(si.gs.size()); ++g) {
        const auto& s = si.gs[g];
        bool disjoint = true;
        for (int x : t)
          if (index_of(s, x) >= 0) disjoint = false;
        if (!disjoint) continue;
        int sgn = detail::shuffle_sign(t, s);
        auto u = detail::set_union_sorted(t, s);
        auto signed_coeff = sgn == 1 ? coeff : poly_neg(field, coeff);
        for (int f = 0; f < static_cast<int>(si.fs.size()); ++f)
          add(ti.index(0, ti.gidx.at(u), f), si.index(0, g, f), signed_coeff);
      }
    }
    return {tgt, HomogeneousMap<F>(src_mod, tgt_mod, std::move(entries))};
  }

  const bool divided = (c.hside == HSide::divided);
  for (int h = 0; h < static_cast<int>(si.hs.size()); ++h) {
    const auto& beta = si.hs[h];
    for (int j = 0; j < kp.l(); ++j) {
      std::vector<int> beta2;
      if (divided) {
        int at = detail::ms_find(beta, j);
        if (at < 0) continue;  // divided power formula needs multiplicity
        beta2 = detail::ms_minus(beta, at);
      } else {
        beta2 = detail::ms_plus(beta, j);
      }
      int h2 = ti.hidx.at(beta2);
      for (int gi = 0; gi < kp.n(); ++gi) {
        const auto& coeff = kp.phi.entry(gi, j);
        if (coeff.is_zero()) continue;
        for (int g = 0; g < static_cast<int>(si.gs.size()); ++g) {
          const auto& s = si.gs[g];
          if (index_of(s, gi) >= 0) continue;
          int sgn = wedge_insert_sign(s, gi);
          auto u = detail::ms_plus(s, gi);
          auto signed_coeff = sgn == 1 ? coeff : poly_neg(field, coeff);
          for (int f = 0; f < static_cast<int>(si.fs.size()); ++f)
            add(ti.index(h2, ti.gidx.at(u), f), si.index(h, g, f), signed_coeff);
        }
      }
    }
  }
  return {tgt, HomogeneousMap<F>(src_mod, tgt_mod, std::move(entries))};
}

// ---------------------------------------------------------------------------
// Standalone spec operations, the trivial-factor specializations of cells.
// ---------------------------------------------------------------------------

// Koszul boundary of psi: Lambda^q G (x) S_p(F)^{(*)} -> next term. side
// 'dualized' moves p -> p-1 toward the splice, 'plain' moves p -> p+1.
enum class KoszulSide { dualized, plain };

template <class F>
HomogeneousMap<F> koszul_boundary(const HomogeneousMap<F>& psi, int q, int p, KoszulSide side) {
  auto kp = KoszulPair<F>::from_psi(psi);
  CellShape c;
  c.lambda_deg = q;
  c.f_index = p;
  c.fside = (side == KoszulSide::dualized) ? FSide::dual : FSide::plain;
  if (side == KoszulSide::dualized && p == 0)
    throw std::invalid_argument("koszul_boundary: p = 0 on the dual side is the splice");
  return cell_vertical(kp, c).second;
}

// Wedge boundary of phi on D_k(H) (x) Lambda^q G (divided side) or
// S_p(H^*) (x) Lambda^q G (symmetric side).
enum class WedgeSide { divided, dual_symmetric };

template <class F>
HomogeneousMap<F> wedge_boundary(const HomogeneousMap<F>& phi, int k_or_p, int q, WedgeSide side) {
  auto kp = KoszulPair<F>::from_phi(phi);
  CellShape c;
  c.lambda_deg = q;
  c.h_index = k_or_p;
  c.hside = (side == WedgeSide::divided) ? HSide::divided : HSide::dual_sym;
  if (side == WedgeSide::divided && k_or_p == 0)
    throw std::invalid_argument("wedge_boundary: k = 0 on the divided side is the splice");
  return cell_horizontal(kp, c).second;
}

// nu_psi at parameter t: Lambda^{t+m} G (x) S_0(F)^* -> Lambda^t G (x) S_0(F).
template <class F>
HomogeneousMap<F> splice_nu_psi(const HomogeneousMap<F>& psi, int t) {
  auto kp = KoszulPair<F>::from_psi(psi);
  CellShape c;
  c.lambda_deg = t + kp.m();
  c.fside = FSide::dual;
  c.f_index = 0;
  return cell_vertical(kp, c).second;
}

// nu^phi at parameter t: D_0(H) (x) Lambda^t G -> S_0(H^*) (x) Lambda^{t+l} G.
template <class F>
HomogeneousMap<F> splice_nu_phi(const HomogeneousMap<F>& phi, int t) {
  auto kp = KoszulPair<F>::from_phi(phi);
  CellShape c;
  c.lambda_deg = t;
  c.hside = HSide::divided;
  c.h_index = 0;
  return cell_horizontal(kp, c).second;
}

}  // namespace gkoszul
