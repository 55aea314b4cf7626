#ifndef PROFIN_STABILIZER_CHAIN_HPP
#define PROFIN_STABILIZER_CHAIN_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "group_order.hpp"
#include "permutation.hpp"

namespace profin
{

/// Base and strong generating set built by deterministic Schreier-Sims.
///
/// Level i stores the orbit of base point b_i under the stabiliser G^(i) of
/// b_0..b_{i-1}, together with an explicit transversal: transversal[k] maps
/// b_i to orbit[k]. New base points are always the smallest point moved by
/// the element that forces the extension.
class StabilizerChain
{
public:
  struct Level
  {
    point_t base_point = 0;
    std::vector<point_t> orbit;
    std::vector<std::int32_t> position;
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse;
    std::vector<std::size_t> generators; // indices into strong_generators()
  };

  explicit StabilizerChain(std::size_t degree, std::span<const point_t> base_prefix = {})
    : degree_(degree)
  {
    for (point_t b : base_prefix) {
      if (b >= degree)
        throw invalid_input("base point out of range");
      append_level(b);
    }
  }

  StabilizerChain(std::size_t degree, std::span<const Permutation> gens,
                  std::span<const point_t> base_prefix = {})
    : StabilizerChain(degree, base_prefix)
  {
    add_generators(gens);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t length() const noexcept { return levels_.size(); }
  const std::vector<Level> &levels() const noexcept { return levels_; }
  const Level &level(std::size_t i) const { return levels_.at(i); }
  const std::vector<Permutation> &strong_generators() const noexcept { return strong_; }

  std::vector<point_t> base() const
  {
    std::vector<point_t> b;
    for (auto &l : levels_)
      b.push_back(l.base_point);
    return b;
  }

  GroupOrder order() const
  {
    GroupOrder o;
    for (auto &l : levels_)
      o *= GroupOrder(l.orbit.size());
    return o;
  }

  /// Strips g through levels [start, length). Returns the residue and the
  /// level at which stripping stopped (length() when all levels passed).
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t start = 0) const
  {
    for (std::size_t l = start; l < levels_.size(); ++l) {
      const Level &lv = levels_[l];
      std::int32_t pos = lv.position[g[lv.base_point]];
      if (pos < 0)
        return {std::move(g), l};
      g = g * lv.inverse[static_cast<std::size_t>(pos)];
    }
    return {std::move(g), levels_.size()};
  }

  bool contains(const Permutation &g) const
  {
    if (g.degree() != degree_)
      throw invalid_input("degree mismatch in membership test");
    auto [h, l] = strip(g);
    return l == levels_.size() && h.is_identity();
  }

  /// Adds generators and restores the chain invariants.
  void add_generators(std::span<const Permutation> gens)
  {
    bool any = false;
    for (const Permutation &g : gens) {
      if (g.degree() != degree_)
        throw invalid_input("generator degree " + std::to_string(g.degree()) +
                            " does not match group degree " + std::to_string(degree_));
      if (g.is_identity() || contains(g))
        continue;
      insert_strong(g);
      any = true;
    }
    if (any)
      complete();
  }

  void add_generator(const Permutation &g) { add_generators(std::span<const Permutation>(&g, 1)); }

private:
  void append_level(point_t b)
  {
    Level lv;
    lv.base_point = b;
    lv.position.assign(degree_, -1);
    lv.orbit.push_back(b);
    lv.position[b] = 0;
    lv.transversal.emplace_back(degree_);
    lv.inverse.emplace_back(degree_);
    levels_.push_back(std::move(lv));
    dirty_.push_back(true);
  }

  // Adds h to the strong generators, extending the base if h fixes it.
  void insert_strong(const Permutation &h)
  {
    std::size_t j = 0;
    while (j < levels_.size() && h[levels_[j].base_point] == levels_[j].base_point)
      ++j;
    if (j == levels_.size()) {
      point_t moved = 0;
      while (h[moved] == moved)
        ++moved;
      append_level(moved);
    }
    strong_.push_back(h);
    for (std::size_t l = 0; l <= j; ++l)
      dirty_[l] = true;
  }

  void rebuild_level(std::size_t i)
  {
    Level &lv = levels_[i];
    lv.generators.clear();
    for (std::size_t s = 0; s < strong_.size(); ++s) {
      bool fixes = true;
      for (std::size_t l = 0; l < i && fixes; ++l)
        fixes = strong_[s][levels_[l].base_point] == levels_[l].base_point;
      if (fixes)
        lv.generators.push_back(s);
    }
    lv.orbit.assign(1, lv.base_point);
    std::fill(lv.position.begin(), lv.position.end(), -1);
    lv.position[lv.base_point] = 0;
    lv.transversal.assign(1, Permutation(degree_));
    lv.inverse.assign(1, Permutation(degree_));
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      for (std::size_t s : lv.generators) {
        point_t img = strong_[s][lv.orbit[k]];
        if (lv.position[img] >= 0)
          continue;
        lv.position[img] = static_cast<std::int32_t>(lv.orbit.size());
        lv.orbit.push_back(img);
        lv.transversal.push_back(lv.transversal[k] * strong_[s]);
        lv.inverse.push_back(lv.transversal.back().inverse());
      }
    }
  }

  void complete()
  {
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      auto ui = static_cast<std::size_t>(i);
      if (!dirty_[ui]) {
        --i;
        continue;
      }
      rebuild_level(ui);
      bool extended = false;
      const Level &lv = levels_[ui];
      for (std::size_t k = 0; k < lv.orbit.size() && !extended; ++k) {
        for (std::size_t s : lv.generators) {
          point_t img = strong_[s][lv.orbit[k]];
          Permutation y = lv.transversal[k] * strong_[s] *
                          lv.inverse[static_cast<std::size_t>(lv.position[img])];
          if (y.is_identity())
            continue;
          auto [h, j] = strip(std::move(y), ui + 1);
          if (j < levels_.size() || !h.is_identity()) {
            insert_strong(h);
            i = static_cast<std::ptrdiff_t>(j);
            extended = true;
            break;
          }
        }
      }
      if (!extended) {
        dirty_[ui] = false;
        --i;
      }
    }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<bool> dirty_;
  std::vector<Permutation> strong_;
};

} // namespace profin

#endif
