#pragma once

// Presented graded modules (cokernels of degree-0 maps between free graded
// modules), maps induced on them by ambient maps, and indexed chain
// complexes of such modules. A free module is the special case of an empty
// presentation.

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gkoszul/module.hpp"

namespace gkoszul {

namespace detail {
inline std::uint64_t next_module_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}
}  // namespace detail

template <class F>
class PresentedModule {
 public:
  PresentedModule() : id_(0) {}

  explicit PresentedModule(FreeGradedModule<F> ambient)
      : ambient_(std::move(ambient)), id_(detail::next_module_id()) {}

  PresentedModule(FreeGradedModule<F> ambient, HomogeneousMap<F> presentation)
      : ambient_(std::move(ambient)),
        pres_(std::move(presentation)),
        id_(detail::next_module_id()) {
    if (pres_ && pres_->target().rank() != ambient_.rank())
      throw std::invalid_argument("PresentedModule: presentation does not land in ambient");
  }

  const FreeGradedModule<F>& ambient() const { return ambient_; }
  bool is_free() const { return !pres_.has_value(); }
  const HomogeneousMap<F>& presentation() const { return *pres_; }
  bool has_presentation() const { return pres_.has_value(); }
  std::uint64_t id() const { return id_; }
  int ambient_rank() const { return ambient_.rank(); }

 private:
  FreeGradedModule<F> ambient_;
  std::optional<HomogeneousMap<F>> pres_;
  std::uint64_t id_;
};

// A map of presented modules carried by a map between the ambient free
// modules. Well-definedness (the ambient map sends the source presentation's
// image into the target presentation's image) is certified on the generators
// of the presentation; see Engine::check_induced.
template <class F>
struct InducedMap {
  PresentedModule<F> source;
  PresentedModule<F> target;
  HomogeneousMap<F> ambient_map;
  std::uint64_t id = detail::next_module_id();
};

// Cochain complex: differentials run term i -> term i+1. first_position is
// the position label of terms[0]; by the gradation convention used
// throughout, factories set position 0 on the leftmost nonzero module
// (negative positions occur for the cokernel complexes of section-3 type).
template <class F>
class ChainComplex {
 public:
  ChainComplex() : first_(0) {}
  ChainComplex(int first_position, std::vector<PresentedModule<F>> terms,
               std::vector<InducedMap<F>> differentials)
      : first_(first_position), terms_(std::move(terms)), diffs_(std::move(differentials)) {
    if (!terms_.empty() && diffs_.size() + 1 != terms_.size())
      throw std::invalid_argument("ChainComplex: need one differential per adjacent pair");
  }

  int first_position() const { return first_; }
  int last_position() const { return first_ + static_cast<int>(terms_.size()) - 1; }
  bool has_position(int p) const { return p >= first_ && p <= last_position(); }

  const PresentedModule<F>& term(int p) const { return terms_[p - first_]; }
  // differential at position p: term(p) -> term(p+1)
  bool has_differential(int p) const { return p >= first_ && p < last_position(); }
  const InducedMap<F>& differential(int p) const { return diffs_[p - first_]; }

  const std::vector<PresentedModule<F>>& terms() const { return terms_; }
  const std::vector<InducedMap<F>>& differentials() const { return diffs_; }

 private:
  int first_;
  std::vector<PresentedModule<F>> terms_;
  std::vector<InducedMap<F>> diffs_;
};

// Replace every term at position < 0 with 0. Homology is unchanged at
// positions >= 1 and becomes the kernel of the outgoing map at position 0.
template <class F>
ChainComplex<F> truncate_nonneg(const ChainComplex<F>& cx) {
  if (cx.first_position() >= 0 || cx.terms().empty()) return cx;
  if (cx.last_position() < 0) return ChainComplex<F>();
  std::vector<PresentedModule<F>> terms;
  std::vector<InducedMap<F>> diffs;
  for (int p = 0; p <= cx.last_position(); ++p) {
    terms.push_back(cx.term(p));
    if (p < cx.last_position()) diffs.push_back(cx.differential(p));
  }
  return ChainComplex<F>(0, std::move(terms), std::move(diffs));
}

}  // namespace gkoszul
