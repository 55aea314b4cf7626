#ifndef PROFIN_AUT_HPP
#define PROFIN_AUT_HPP

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fp_linear.hpp"
#include "hom.hpp"
#include "invariants.hpp"
#include "small_group.hpp"

namespace profin
{

/// Aut(G) for a small group G.
///
/// Automorphisms are found by backtracking over images of an irredundant
/// generating sequence s_1..s_k: the image of s_i must have the order of
/// s_i, and the partial assignment must extend to an injective homomorphism
/// on <s_1..s_i>, which is checked on the multiplication table. Each kept
/// automorphism is also validated as a GroupHom.
struct AutomorphismGroup
{
  CayleyTable table;
  std::vector<std::uint32_t> basis;                   // s_1..s_k as element indices
  std::vector<std::vector<std::uint32_t>> generators; // each maps element index -> index
  PermGroup group; // acting on the nontrivial elements, element i as point i-1

  /// Image of element index x under generator a.
  std::uint32_t apply(std::size_t a, std::uint32_t x) const { return generators[a][x]; }
};

namespace detail
{

class AutSearch
{
public:
  AutSearch(const CayleyTable &t, std::vector<std::uint32_t> basis, std::uint64_t node_limit)
    : t_(t), basis_(std::move(basis)), n_(t.size()), node_limit_(node_limit)
  {}

  // Calls f(map) for every automorphism.
  template <class F> void run(F &&f)
  {
    std::vector<std::uint32_t> map(n_, UNSET);
    map[0] = 0;
    std::vector<std::uint32_t> images;
    descend(0, map, images, f);
  }

private:
  static constexpr std::uint32_t UNSET = UINT32_MAX;

  // Extends `map` from <s_1..s_{i-1}> to <s_1..s_i> given the image of s_i.
  // Returns false on an inconsistency or a collision of images.
  bool extend(std::size_t i, std::vector<std::uint32_t> &map,
              const std::vector<std::uint32_t> &images) const
  {
    std::vector<bool> used(n_, false);
    std::vector<std::uint32_t> list;
    for (std::uint32_t x = 0; x < n_; ++x)
      if (map[x] != UNSET) {
        used[map[x]] = true;
        list.push_back(x);
      }
    for (std::size_t k = 0; k < list.size(); ++k)
      for (std::size_t j = 0; j <= i; ++j) {
        std::uint32_t y = t_.mul(list[k], basis_[j]);
        std::uint32_t img = t_.mul(map[list[k]], images[j]);
        if (map[y] == UNSET) {
          if (used[img])
            return false;
          used[img] = true;
          map[y] = img;
          list.push_back(y);
        } else if (map[y] != img) {
          return false;
        }
      }
    return true;
  }

  template <class F>
  void descend(std::size_t i, const std::vector<std::uint32_t> &map,
               std::vector<std::uint32_t> &images, F &f)
  {
    if (i == basis_.size()) {
      f(map);
      return;
    }
    const std::uint32_t want = t_.element_order(basis_[i]);
    for (std::uint32_t y = 1; y < n_; ++y) {
      if (t_.element_order(y) != want)
        continue;
      // the image of s_i lies outside the image of <s_1..s_{i-1}>
      if (std::find(map.begin(), map.end(), y) != map.end())
        continue;
      if (++nodes_ > node_limit_)
        throw cap_exceeded("enumeration", node_limit_, "automorphism search nodes");
      std::vector<std::uint32_t> next = map;
      images.push_back(y);
      if (extend(i, next, images))
        descend(i + 1, next, images, f);
      images.pop_back();
    }
  }

  const CayleyTable &t_;
  std::vector<std::uint32_t> basis_;
  std::size_t n_;
  std::uint64_t node_limit_;
  std::uint64_t nodes_ = 0;
};

// Greedy irredundant generating sequence, preferring elements of large order.
inline std::vector<std::uint32_t> irredundant_generators(const CayleyTable &t)
{
  std::vector<std::uint32_t> order(t.size());
  for (std::uint32_t i = 0; i < t.size(); ++i)
    order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return t.element_order(a) > t.element_order(b);
  });
  std::vector<std::uint32_t> gens;
  std::vector<bool> in = t.closure({});
  for (auto x : order)
    if (!in[x]) {
      gens.push_back(x);
      in = t.closure(gens);
    }
  return gens;
}

} // namespace detail

inline AutomorphismGroup automorphisms(const PermGroup &g, const Limits &limits = {})
{
  AutomorphismGroup aut{CayleyTable(g, limits.aut, "aut"), {}, {}, PermGroup()};
  const CayleyTable &t = aut.table;
  const std::size_t n = t.size();
  aut.basis = detail::irredundant_generators(t);

  const std::size_t degree = std::max<std::size_t>(1, n - 1);
  auto as_perm = [&](const std::vector<std::uint32_t> &map) {
    std::vector<point_t> img(degree);
    for (std::size_t i = 0; i < degree; ++i)
      img[i] = n > 1 ? map[i + 1] - 1 : 0;
    return Permutation(std::move(img));
  };

  StabilizerChain chain(degree);
  std::vector<Permutation> perms;
  detail::AutSearch search(t, aut.basis, limits.enumeration);
  search.run([&](const std::vector<std::uint32_t> &map) {
    Permutation a = as_perm(map);
    if (chain.contains(a))
      return;
    chain.add_generator(a);
    perms.push_back(std::move(a));
    aut.generators.push_back(map);
  });

  // certificate: each generator is a homomorphism G -> G
  for (auto &map : aut.generators) {
    std::vector<Permutation> images;
    for (auto &s : g.generators())
      images.push_back(t.elements()[map[t.elements().index_of(s)]]);
    GroupHom(g, g, std::move(images));
  }
  aut.group = PermGroup(degree, std::move(perms));
  return aut;
}

inline PermGroup aut_group_small(const PermGroup &g, const Limits &limits = {})
{
  return automorphisms(g, limits).group;
}

/// The largest dimension of an irreducible constituent of S/Phi(S) under the
/// linear group induced by Aut(S). Zero for the trivial group.
inline std::size_t c_invariant(const PermGroup &s, const Limits &limits = {})
{
  const std::uint64_t p = detail::prime_of_p_group(s, "c-invariant");
  if (!p)
    return 0;
  PermGroup phi = frattini_pgroup(s);
  const std::size_t d = (s.order() / phi.order()).valuation(p);
  require_cap("dimension", d, 8, "Frattini quotient dimension");
  AutomorphismGroup aut = automorphisms(s, limits);
  const CayleyTable &t = aut.table;
  const std::size_t n = t.size();

  // coset of Phi for every element, then coordinates of each coset
  std::vector<std::uint32_t> coset(n, UINT32_MAX);
  std::uint32_t cosets = 0;
  for (std::uint32_t x = 0; x < n; ++x) {
    if (coset[x] != UINT32_MAX)
      continue;
    phi.for_each_element([&](const Permutation &f) {
      coset[t.elements().index_of(f * t.elements()[x])] = cosets;
    });
    ++cosets;
  }

  // a basis of S/Phi: elements whose cosets are independent
  std::vector<std::uint32_t> basis;
  {
    std::vector<bool> reached(cosets, false);
    reached[coset[0]] = true;
    for (std::uint32_t x = 0; x < n && basis.size() < d; ++x) {
      if (reached[coset[x]])
        continue;
      basis.push_back(x);
      std::vector<std::uint32_t> gens(basis);
      auto in = t.closure(gens);
      for (std::uint32_t y = 0; y < n; ++y)
        if (in[y])
          reached[coset[y]] = true;
    }
  }
  std::unordered_map<std::uint32_t, fp::Vector> coords;
  {
    fp::Vector a(d, 0);
    for (;;) {
      std::uint32_t x = 0;
      for (std::size_t j = 0; j < d; ++j)
        for (std::uint32_t e = 0; e < a[j]; ++e)
          x = t.mul(x, basis[j]);
      coords.emplace(coset[x], a);
      std::size_t j = 0;
      while (j < d && a[j] == p - 1)
        a[j++] = 0;
      if (j == d)
        break;
      ++a[j];
    }
  }

  std::vector<fp::Matrix> mats;
  for (std::size_t a = 0; a < aut.generators.size(); ++a) {
    fp::Matrix m(d, d, static_cast<std::uint32_t>(p));
    for (std::size_t r = 0; r < d; ++r) {
      const fp::Vector &row = coords.at(coset[aut.apply(a, basis[r])]);
      for (std::size_t c = 0; c < d; ++c)
        m(r, c) = row[c];
    }
    mats.push_back(std::move(m));
  }
  auto dims = fp::composition_factor_dimensions(mats, d, static_cast<std::uint32_t>(p));
  return *std::max_element(dims.begin(), dims.end());
}

} // namespace profin

#endif
