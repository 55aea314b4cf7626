#ifndef PROFIN_TOWER_HPP
#define PROFIN_TOWER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "hom.hpp"
#include "invariants.hpp"

namespace profin
{

/// A finite inverse system G_1 <- G_2 <- ... <- G_k. levels[0] is G_1 and
/// maps[i] is the surjection levels[i+1] -> levels[i].
struct Tower
{
  std::string family;
  std::vector<std::uint64_t> params;
  std::vector<PermGroup> levels;
  std::vector<GroupHom> maps;

  std::size_t depth() const noexcept { return levels.size(); }

  /// The composite G_i -> G_j for j <= i (0-based levels).
  GroupHom projection(std::size_t i, std::size_t j) const
  {
    if (j > i || i >= levels.size())
      throw invalid_input("projection must go from a level down to a lower one");
    GroupHom h(levels[i], levels[i], levels[i].generators());
    for (std::size_t l = i; l > j; --l)
      h = h.then(maps[l - 1]);
    return h;
  }

  void add_level(PermGroup g, std::vector<Permutation> images)
  {
    if (!levels.empty()) {
      GroupHom h(g, levels.back(), std::move(images));
      if (!h.is_surjective())
        throw error("internal: tower map to level " + std::to_string(levels.size()) +
                    " is not surjective");
      maps.push_back(std::move(h));
    }
    levels.push_back(std::move(g));
  }
};

namespace detail
{

inline void require_tower_prime(std::uint64_t p)
{
  if (!is_prime(p))
    throw invalid_input(std::to_string(p) + " is not prime");
}

inline void require_depth(std::size_t depth)
{
  if (depth == 0)
    throw invalid_input("tower depth must be at least 1");
}

// p^k as a degree, or cap_exceeded naming the attempted power.
inline std::uint64_t tower_degree(std::uint64_t p, std::size_t k, const Limits &limits)
{
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n > limits.degree / p)
      throw cap_exceeded("degree", limits.degree,
                         "tower degree " + std::to_string(p) + "^" + std::to_string(k));
    n *= p;
  }
  return n;
}

} // namespace detail

/// C_p <- C_{p^2} <- ... <- C_{p^depth}, each a single cycle; generator to generator.
inline Tower cyclic_tower(std::uint64_t p, std::size_t depth, const Limits &limits = {})
{
  detail::require_tower_prime(p);
  detail::require_depth(depth);
  detail::tower_degree(p, depth, limits);
  Tower t{"cyclic", {p, depth}, {}, {}};
  for (std::size_t k = 1; k <= depth; ++k) {
    PermGroup g = cyclic_group(ipow(p, static_cast<unsigned>(k)), limits);
    std::vector<Permutation> images;
    if (!t.levels.empty())
      images = t.levels.back().generators();
    t.add_level(std::move(g), std::move(images));
  }
  return t;
}

/// Sylow p-subgroups of Sym(p), Sym(p^2), ...: level k is C_p wr level k-1
/// on p^k points. The map to level k-1 is the action on the blocks of size p.
inline Tower wreath_tower(std::uint64_t p, std::size_t depth, const Limits &limits = {})
{
  detail::require_tower_prime(p);
  detail::require_depth(depth);
  detail::tower_degree(p, depth, limits);
  Tower t{"wreath", {p, depth}, {}, {}};
  const PermGroup cp = cyclic_group(p, limits);
  t.add_level(cp, {});
  for (std::size_t k = 2; k <= depth; ++k) {
    const std::size_t blocks = t.levels.back().degree();
    PermGroup g = wreath_imprimitive(cp, blocks, t.levels.back(), limits);
    std::vector<Permutation> images;
    for (auto &x : g.generators()) {
      std::vector<point_t> img(blocks);
      for (std::size_t b = 0; b < blocks; ++b)
        img[b] = static_cast<point_t>(x[static_cast<point_t>(b * p)] / p);
      images.emplace_back(std::move(img));
    }
    t.add_level(std::move(g), std::move(images));
  }
  return t;
}

/// G_1 = C_{p_1}; G_{i+1} = F_{p_{i+1}}^{d_i} extended by G_i, where d_i is the
/// degree of G_i and G_i permutes the coordinates. The map kills the translations.
inline Tower fitting_degenerate_tower(const std::vector<std::uint64_t> &primes,
                                      std::size_t depth, const Limits &limits = {})
{
  detail::require_depth(depth);
  if (depth > 4)
    throw invalid_input("Fitting-degenerate towers are limited to depth 4");
  if (primes.size() < depth)
    throw invalid_input("need one prime per level: " + std::to_string(primes.size()) +
                        " primes for depth " + std::to_string(depth));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    detail::require_tower_prime(primes[i]);
    if (i && primes[i] == primes[i - 1])
      throw invalid_input("consecutive primes must differ");
  }
  Tower t{"fitting-degenerate", {primes.begin(), primes.begin() + static_cast<long>(depth)}, {},
          {}};
  t.params.push_back(depth);
  t.add_level(cyclic_group(primes[0], limits), {});
  for (std::size_t k = 1; k < depth; ++k) {
    const PermGroup &prev = t.levels.back();
    const auto p = static_cast<std::uint32_t>(primes[k]);
    const std::size_t d = prev.degree();
    detail::tower_degree(p, d, limits);
    std::vector<fp::Matrix> mats;
    for (auto &x : prev.generators())
      mats.push_back(permutation_matrix(x, p));
    PermGroup g = affine_semidirect(p, d, mats, limits);
    std::vector<Permutation> images(d, prev.identity());
    images.insert(images.end(), prev.generators().begin(), prev.generators().end());
    t.add_level(std::move(g), std::move(images));
  }
  return t;
}

struct ObSequence
{
  std::vector<std::uint64_t> values;
  std::vector<std::uint64_t> star; // empty unless requested
  bool stable = false;             // last two values agree and OI_n is a full preimage
};

/// ob_{G_i}(n) for every level; optionally ob* as well.
inline ObSequence tower_ob_sequence(const Tower &t, std::uint64_t n, bool with_star = false,
                                    const Limits &limits = {})
{
  ObSequence r;
  std::vector<PermGroup> oi;
  for (std::size_t i = 0; i < t.depth(); ++i) {
    NormalLattice lat(t.levels[i], limits);
    PermGroup core = oblique_core(lat, intersection_of_small_normals(lat, n));
    r.values.push_back(t.levels[i].size() / core.size());
    if (with_star)
      r.star.push_back(ob_star_function(lat, n, limits));
    oi.push_back(std::move(core));
  }
  const std::size_t k = t.depth();
  if (k >= 2 && r.values[k - 1] == r.values[k - 2])
    r.stable = t.maps[k - 2].preimage(oi[k - 2]) == oi[k - 1];
  return r;
}

/// |G_i : F_i| where F_i = F(G_i) intersected with the preimages of F(G_j), j < i.
inline std::vector<std::uint64_t> tower_fitting_sequence(const Tower &t, const Limits &limits = {})
{
  std::vector<PermGroup> fit;
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < t.depth(); ++i) {
    fit.push_back(fitting(t.levels[i], limits));
    PermGroup f = fit.back();
    for (std::size_t j = 0; j < i; ++j)
      f = intersection(f, t.projection(i, j).preimage(fit[j]));
    out.push_back(t.levels[i].size() / f.size());
  }
  return out;
}

/// For each level, whether ob_{G_i}(n) <= bound for every (n, bound).
inline std::vector<bool> ji_certificate(const Tower &t,
                                        const std::vector<std::pair<std::uint64_t, std::uint64_t>> &eta,
                                        const Limits &limits = {})
{
  std::vector<bool> out;
  for (auto &g : t.levels) {
    if (eta.empty()) {
      out.push_back(true);
      continue;
    }
    NormalLattice lat(g, limits);
    bool ok = true;
    for (auto [n, bound] : eta)
      ok = ok && ob_function(lat, n) <= bound;
    out.push_back(ok);
  }
  return out;
}

} // namespace profin

#endif
