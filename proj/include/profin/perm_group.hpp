#ifndef PROFIN_PERM_GROUP_HPP
#define PROFIN_PERM_GROUP_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "group_order.hpp"
#include "permutation.hpp"
#include "stabilizer_chain.hpp"

namespace profin
{

/// A permutation group given by generators, with a stabiliser chain that
/// certifies its order. Immutable after construction and cheap to copy.
///
/// Subgroups always live in the degree of their parent.
class PermGroup
{
public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> gens, const Limits &limits = {},
            std::span<const point_t> base_prefix = {})
    : degree_(degree)
  {
    if (degree == 0)
      throw invalid_input("degree must be positive");
    require_cap("degree", degree, limits.degree, "permutation degree");
    for (auto &g : gens) {
      if (g.degree() != degree)
        throw invalid_input("generator " + g.to_cycles() + " has degree " +
                            std::to_string(g.degree()) + ", expected " + std::to_string(degree));
      if (!g.is_identity())
        gens_.push_back(std::move(g));
    }
    chain_ = std::make_shared<const StabilizerChain>(degree, gens_, base_prefix);
    order_ = chain_->order();
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation> &generators() const noexcept { return gens_; }
  const StabilizerChain &chain() const noexcept { return *chain_; }
  const GroupOrder &order() const noexcept { return order_; }
  std::uint64_t size(std::uint64_t limit = UINT64_MAX) const { return order_.value(limit); }
  bool is_trivial() const noexcept { return order_.is_one(); }
  Permutation identity() const { return Permutation(degree_); }

  bool contains(const Permutation &g) const { return chain_->contains(g); }

  bool contains(const PermGroup &h) const
  {
    if (h.degree() != degree_)
      return false;
    for (auto &g : h.generators())
      if (!contains(g))
        return false;
    return true;
  }

  bool is_subgroup_of(const PermGroup &g) const { return g.contains(*this); }

  /// Same set of permutations.
  friend bool operator==(const PermGroup &a, const PermGroup &b)
  {
    return a.degree_ == b.degree_ && a.order_ == b.order_ && b.contains(a);
  }

  bool is_abelian() const
  {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (gens_[i] * gens_[j] != gens_[j] * gens_[i])
          return false;
    return true;
  }

  bool is_p_group(std::uint64_t p) const { return order_.is_p_power(p); }

  /// True when every generator of `h` conjugates into `h` under every generator here.
  bool normalizes(const PermGroup &h) const
  {
    for (auto &g : gens_)
      for (auto &x : h.generators())
        if (!h.contains(x.conjugate(g)))
          return false;
    return true;
  }

  PermGroup with_generators(std::span<const Permutation> extra, const Limits &limits = {}) const
  {
    std::vector<Permutation> gens = gens_;
    gens.insert(gens.end(), extra.begin(), extra.end());
    return PermGroup(degree_, std::move(gens), limits);
  }

  /// Orbit of `x` under the generators, in discovery order.
  std::vector<point_t> orbit(point_t x) const
  {
    std::vector<point_t> orb{x};
    std::vector<bool> seen(degree_, false);
    seen[x] = true;
    for (std::size_t k = 0; k < orb.size(); ++k)
      for (auto &g : gens_)
        if (!seen[g[orb[k]]]) {
          seen[g[orb[k]]] = true;
          orb.push_back(g[orb[k]]);
        }
    return orb;
  }

  /// orbit_id[x] = index of the orbit containing x; orbits numbered by smallest point.
  std::vector<std::uint32_t> orbit_ids() const
  {
    std::vector<std::uint32_t> id(degree_, UINT32_MAX);
    std::uint32_t next = 0;
    for (point_t x = 0; x < degree_; ++x) {
      if (id[x] != UINT32_MAX)
        continue;
      for (point_t y : orbit(x))
        id[y] = next;
      ++next;
    }
    return id;
  }

  bool is_transitive() const { return orbit(0).size() == degree_; }

  /// Points moved by at least one generator.
  std::vector<point_t> support() const
  {
    std::vector<point_t> s;
    for (point_t x = 0; x < degree_; ++x)
      for (auto &g : gens_)
        if (g[x] != x) {
          s.push_back(x);
          break;
        }
    return s;
  }

  /// Calls f on every element, in the fixed order given by the chain.
  template <class F>
  void for_each_element(F &&f, std::uint64_t limit = UINT64_MAX,
                        const char *cap = "enumeration") const
  {
    order_.value(limit, cap);
    Permutation id(degree_);
    enumerate(0, id, f);
  }

  std::vector<Permutation> elements(std::uint64_t limit = UINT64_MAX,
                                    const char *cap = "enumeration") const
  {
    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(order_.value(limit, cap)));
    for_each_element([&](const Permutation &g) { out.push_back(g); }, limit, cap);
    return out;
  }

  /// Uniformly random element (product of random transversal elements).
  template <class Rng> Permutation random_element(Rng &rng) const
  {
    Permutation g(degree_);
    for (auto &lv : chain_->levels()) {
      std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
      g = lv.transversal[pick(rng)] * g;
    }
    return g;
  }

private:
  template <class F> void enumerate(std::size_t level, const Permutation &prefix, F &f) const
  {
    const auto &levels = chain_->levels();
    if (level == levels.size()) {
      f(prefix);
      return;
    }
    for (auto &u : levels[level].transversal)
      enumerate(level + 1, u * prefix, f);
  }

  std::size_t degree_ = 1;
  std::vector<Permutation> gens_;
  std::shared_ptr<const StabilizerChain> chain_;
  GroupOrder order_;
};

/// Element-indexed view of a small group: id of each element in enumeration
/// order, with identity at index 0.
class ElementIndex
{
public:
  ElementIndex(const PermGroup &g, std::uint64_t limit, const char *cap = "enumeration")
  {
    elements_ = g.elements(limit, cap);
    auto id = std::find(elements_.begin(), elements_.end(), g.identity());
    std::iter_swap(elements_.begin(), id);
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_.emplace(elements_[i], static_cast<std::uint32_t>(i));
  }

  std::size_t size() const noexcept { return elements_.size(); }
  const Permutation &operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Permutation> &elements() const noexcept { return elements_; }

  std::uint32_t index_of(const Permutation &g) const
  {
    auto it = index_.find(g);
    if (it == index_.end())
      throw invalid_input("element " + g.to_cycles() + " not in indexed group");
    return it->second;
  }

  std::optional<std::uint32_t> find(const Permutation &g) const
  {
    auto it = index_.find(g);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
};

} // namespace profin

#endif
