#pragma once

// Finite free graded modules with per-generator degree twists, and maps
// between them given by matrices of weighted-homogeneous polynomials. The
// twist bookkeeping forces every map to be degree 0: entry (i,j) must be
// homogeneous of degree twist_source(j) - twist_target(i), checked at
// construction.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gkoszul/errors.hpp"
#include "gkoszul/ring.hpp"

namespace gkoszul {

template <class F>
class FreeGradedModule {
 public:
  FreeGradedModule() = default;
  FreeGradedModule(RingPtr<F> ring, std::vector<int> twists, std::vector<std::string> labels)
      : ring_(std::move(ring)), twists_(std::move(twists)), labels_(std::move(labels)) {
    if (labels_.empty() && !twists_.empty()) {
      for (std::size_t i = 0; i < twists_.size(); ++i) labels_.push_back("e" + std::to_string(i));
    }
  }

  static FreeGradedModule free(RingPtr<F> ring, int rank, int twist = 0,
                               const std::string& stem = "e") {
    std::vector<int> tw(rank, twist);
    std::vector<std::string> lb;
    for (int i = 0; i < rank; ++i) lb.push_back(stem + std::to_string(i));
    return FreeGradedModule(std::move(ring), std::move(tw), std::move(lb));
  }

  const RingPtr<F>& ring() const { return ring_; }
  int rank() const { return static_cast<int>(twists_.size()); }
  const std::vector<int>& twists() const { return twists_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int min_twist() const {
    int m = 0;
    bool first = true;
    for (int t : twists_) {
      if (first || t < m) m = t;
      first = false;
    }
    return m;
  }
  int max_twist() const {
    int m = 0;
    bool first = true;
    for (int t : twists_) {
      if (first || t > m) m = t;
      first = false;
    }
    return m;
  }

 private:
  RingPtr<F> ring_;
  std::vector<int> twists_;
  std::vector<std::string> labels_;
};

// Degreewise dual: twists negate, labels gain a star. An involution.
template <class F>
FreeGradedModule<F> graded_dual(const FreeGradedModule<F>& m) {
  std::vector<int> tw(m.twists());
  for (int& t : tw) t = -t;
  std::vector<std::string> lb;
  for (const auto& s : m.labels()) {
    if (s.size() >= 1 && s.back() == '*')
      lb.push_back(s.substr(0, s.size() - 1));
    else
      lb.push_back(s + "*");
  }
  return FreeGradedModule<F>(m.ring(), std::move(tw), std::move(lb));
}

template <class F>
class HomogeneousMap {
 public:
  using Poly = HomPoly<F>;

  HomogeneousMap() = default;

  // entries are row-major, rows indexed by target generators, columns by
  // source generators.
  HomogeneousMap(FreeGradedModule<F> source, FreeGradedModule<F> target,
                 std::vector<Poly> entries)
      : src_(std::move(source)), tgt_(std::move(target)), entries_(std::move(entries)) {
    const auto& field = src_.ring()->field();
    if (static_cast<int>(entries_.size()) != src_.rank() * tgt_.rank())
      throw std::invalid_argument("HomogeneousMap: entry count mismatch");
    for (int i = 0; i < tgt_.rank(); ++i)
      for (int j = 0; j < src_.rank(); ++j) {
        Poly& e = entries_[static_cast<std::size_t>(i) * src_.rank() + j];
        int want = src_.twists()[j] - tgt_.twists()[i];
        if (e.is_zero()) {
          e.set_degree(want);
        } else if (e.degree() != want) {
          throw DegreeMismatch("HomogeneousMap: entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ") has degree " + std::to_string(e.degree()) +
                               ", expected " + std::to_string(want));
        }
        (void)field;
      }
  }

  static HomogeneousMap zero(const FreeGradedModule<F>& source, const FreeGradedModule<F>& target) {
    std::vector<Poly> e(static_cast<std::size_t>(source.rank()) * target.rank());
    return HomogeneousMap(source, target, std::move(e));
  }

  static HomogeneousMap identity(const FreeGradedModule<F>& m) {
    std::vector<Poly> e(static_cast<std::size_t>(m.rank()) * m.rank());
    auto map = HomogeneousMap(m, m, std::move(e));
    const auto& field = m.ring()->field();
    for (int i = 0; i < m.rank(); ++i)
      map.entry_mut(i, i) = poly_one<F>(field, m.ring()->n_vars());
    return map;
  }

  const FreeGradedModule<F>& source() const { return src_; }
  const FreeGradedModule<F>& target() const { return tgt_; }

  const Poly& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * src_.rank() + j];
  }
  Poly& entry_mut(int i, int j) { return entries_[static_cast<std::size_t>(i) * src_.rank() + j]; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  HomogeneousMap scaled(int sign) const {
    const auto& field = src_.ring()->field();
    HomogeneousMap out = *this;
    if (sign == 1) return out;
    auto s = field.from_int(sign);
    for (auto& e : out.entries_) e = poly_scale(field, e, s);
    return out;
  }

  std::string describe() const {
    std::ostringstream os;
    os << tgt_.rank() << "x" << src_.rank() << " map";
    return os.str();
  }

 private:
  FreeGradedModule<F> src_, tgt_;
  std::vector<Poly> entries_;
};

// Zero test in R: the normal form of the polynomial in its degree slice
// vanishes. Plain is_zero() is the stronger statement "zero in S".
template <class F>
bool poly_is_zero_mod(const WeightedRing<F>& ring, const HomPoly<F>& p) {
  if (p.is_zero()) return true;
  if (p.degree() < 0) return false;
  const auto& field = ring.field();
  for (const auto& c : ring.reduce(p, p.degree()))
    if (!field.is_zero(c)) return false;
  return true;
}

template <class F>
bool map_is_zero_mod(const HomogeneousMap<F>& f);

// g after f, as polynomial matrices.
template <class F>
HomogeneousMap<F> compose(const HomogeneousMap<F>& g, const HomogeneousMap<F>& f) {
  const auto& field = f.source().ring()->field();
  if (g.source().rank() != f.target().rank())
    throw std::invalid_argument("compose: rank mismatch");
  std::vector<HomPoly<F>> entries(static_cast<std::size_t>(g.target().rank()) *
                                  f.source().rank());
  for (int i = 0; i < g.target().rank(); ++i)
    for (int j = 0; j < f.source().rank(); ++j) {
      HomPoly<F> acc(f.source().twists()[j] - g.target().twists()[i]);
      for (int k = 0; k < f.target().rank(); ++k) {
        if (g.entry(i, k).is_zero() || f.entry(k, j).is_zero()) continue;
        acc = poly_add(field, acc, poly_multiply(field, g.entry(i, k), f.entry(k, j)));
      }
      entries[static_cast<std::size_t>(i) * f.source().rank() + j] = std::move(acc);
    }
  return HomogeneousMap<F>(f.source(), g.target(), std::move(entries));
}

template <class F>
HomogeneousMap<F> map_add(const HomogeneousMap<F>& a, const HomogeneousMap<F>& b) {
  const auto& field = a.source().ring()->field();
  std::vector<HomPoly<F>> entries;
  entries.reserve(static_cast<std::size_t>(a.target().rank()) * a.source().rank());
  for (int i = 0; i < a.target().rank(); ++i)
    for (int j = 0; j < a.source().rank(); ++j)
      entries.push_back(poly_add(field, a.entry(i, j), b.entry(i, j)));
  return HomogeneousMap<F>(a.source(), a.target(), std::move(entries));
}

template <class F>
bool map_is_zero_mod(const HomogeneousMap<F>& f) {
  if (f.source().rank() == 0 || f.target().rank() == 0) return true;
  const auto& ring = *f.source().ring();
  for (int i = 0; i < f.target().rank(); ++i)
    for (int j = 0; j < f.source().rank(); ++j)
      if (!poly_is_zero_mod(ring, f.entry(i, j))) return false;
  return true;
}

// Transpose with dualized source and target; represents f^* between graded
// duals.
template <class F>
HomogeneousMap<F> dual_map(const HomogeneousMap<F>& f) {
  auto src = graded_dual(f.target());
  auto tgt = graded_dual(f.source());
  std::vector<HomPoly<F>> entries(static_cast<std::size_t>(tgt.rank()) * src.rank());
  for (int i = 0; i < tgt.rank(); ++i)
    for (int j = 0; j < src.rank(); ++j) entries[static_cast<std::size_t>(i) * src.rank() + j] =
        f.entry(j, i);
  return HomogeneousMap<F>(std::move(src), std::move(tgt), std::move(entries));
}

}  // namespace gkoszul
