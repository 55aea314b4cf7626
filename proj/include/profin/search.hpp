#ifndef PROFIN_SEARCH_HPP
#define PROFIN_SEARCH_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "perm_group.hpp"

namespace profin
{

/// Backtrack searches over the stabiliser chain of a group.
///
/// Every element g of G is written uniquely as u_{k-1} ... u_1 u_0 with u_i
/// a transversal element of level i, so the base images of g are fixed one
/// level at a time. A prune predicate sees the base images assigned so far
/// (images[i] is the image of base point i) and rejects partial images that
/// cannot extend to an element with the property.
namespace search
{

using Test = std::function<bool(const Permutation &)>;
using Prune = std::function<bool(std::size_t level, std::span<const point_t> images)>;

namespace detail
{

struct Dfs
{
  const StabilizerChain &chain;
  const std::vector<point_t> &base;
  const Test &test;
  const Prune &prune;
  std::vector<point_t> images;

  std::optional<Permutation> run(std::size_t level, const Permutation &partial)
  {
    const auto &levels = chain.levels();
    if (level == levels.size()) {
      if (test(partial))
        return partial;
      return std::nullopt;
    }
    const auto &lv = levels[level];
    for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
      images[level] = partial[lv.orbit[k]];
      if (prune && !prune(level, std::span<const point_t>(images.data(), level + 1)))
        continue;
      if (auto hit = run(level + 1, lv.transversal[k] * partial))
        return hit;
    }
    return std::nullopt;
  }
};

inline std::vector<point_t> orbit_under(std::size_t degree, point_t x,
                                        const std::vector<Permutation> &gens)
{
  std::vector<point_t> orb{x};
  std::vector<bool> seen(degree, false);
  seen[x] = true;
  for (std::size_t k = 0; k < orb.size(); ++k)
    for (auto &g : gens)
      if (!seen[g[orb[k]]]) {
        seen[g[orb[k]]] = true;
        orb.push_back(g[orb[k]]);
      }
  return orb;
}

} // namespace detail

/// First element of G (in chain order) passing `test`.
inline std::optional<Permutation> find_element(const PermGroup &g, const Test &test,
                                               const Prune &prune = {})
{
  auto base = g.chain().base();
  detail::Dfs dfs{g.chain(), base, test, prune, std::vector<point_t>(base.size())};
  return dfs.run(0, g.identity());
}

/// The subgroup {x in G : test(x)}; `test` must define a subgroup.
///
/// Levels are processed bottom-up. At level i the result's stabiliser
/// R^(i+1) is already known, and only base-point images outside the current
/// R^(i)-orbit of b_i need a subtree search. `known` is any subgroup
/// already known to lie inside the result.
inline PermGroup subgroup_search(const PermGroup &g, const Test &test, const Prune &prune = {},
                                 const PermGroup *known = nullptr)
{
  const StabilizerChain &chain = g.chain();
  const auto base = chain.base();
  const std::size_t k = base.size();
  const std::size_t n = g.degree();

  std::vector<Permutation> found;
  if (known && !known->is_trivial()) {
    StabilizerChain kc(n, known->generators(), base);
    found = kc.strong_generators();
  }

  auto fixes_prefix = [&](const Permutation &x, std::size_t i) {
    for (std::size_t l = 0; l < i; ++l)
      if (x[base[l]] != base[l])
        return false;
    return true;
  };

  std::vector<point_t> images(k);
  for (std::size_t i = k; i-- > 0;) {
    const auto &lv = chain.level(i);
    std::vector<Permutation> level_gens;
    for (auto &x : found)
      if (fixes_prefix(x, i))
        level_gens.push_back(x);
    std::vector<bool> covered(n, false);
    for (point_t y : detail::orbit_under(n, base[i], level_gens))
      covered[y] = true;

    for (std::size_t t = 1; t < lv.orbit.size(); ++t) {
      point_t gamma = lv.orbit[t];
      if (covered[gamma])
        continue;
      for (std::size_t l = 0; l < i; ++l)
        images[l] = base[l];
      images[i] = gamma;
      if (prune && !prune(i, std::span<const point_t>(images.data(), i + 1)))
        continue;
      detail::Dfs dfs{chain, base, test, prune, images};
      if (auto hit = dfs.run(i + 1, lv.transversal[t])) {
        found.push_back(*hit);
        level_gens.push_back(*hit);
        for (point_t y : detail::orbit_under(n, base[i], level_gens))
          covered[y] = true;
      }
    }
  }
  return PermGroup(n, std::move(found));
}

/// Prune accepting exactly the base-image prefixes realised by some element
/// of `target`; `target_chain` must have the searched group's base as prefix.
inline Prune membership_prune(std::shared_ptr<const StabilizerChain> target_chain)
{
  return [tc = std::move(target_chain)](std::size_t level, std::span<const point_t> images) {
    const std::size_t n = tc->degree();
    Permutation qinv(n);
    for (std::size_t m = 0; m <= level; ++m) {
      if (m >= tc->length())
        return true;
      const auto &lv = tc->level(m);
      point_t delta = qinv[images[m]];
      std::int32_t pos = lv.position[delta];
      if (pos < 0)
        return false;
      qinv = qinv * lv.inverse[static_cast<std::size_t>(pos)];
    }
    return true;
  };
}

/// Prune for maps that must carry the orbit partition of `from` onto that of
/// `to` (normalisers use from = to = H, conjugacy tests H -> K).
inline Prune orbit_partition_prune(const PermGroup &g, const PermGroup &from, const PermGroup &to)
{
  auto base = g.chain().base();
  auto fid = from.orbit_ids();
  auto tid = to.orbit_ids();
  std::vector<std::size_t> fsize(from.degree(), 0), tsize(to.degree(), 0);
  for (auto i : fid)
    ++fsize[i];
  for (auto i : tid)
    ++tsize[i];
  return [base, fid, tid, fsize, tsize](std::size_t level, std::span<const point_t> images) {
    point_t b = base[level], y = images[level];
    if (fsize[fid[b]] != tsize[tid[y]])
      return false;
    for (std::size_t a = 0; a < level; ++a) {
      bool same_from = fid[base[a]] == fid[b];
      bool same_to = tid[images[a]] == tid[y];
      if (same_from != same_to)
        return false;
    }
    return true;
  };
}

/// Prune for g with x^g = y, using cycle position offsets.
inline Prune cycle_prune(const PermGroup &g, const Permutation &x, const Permutation &y)
{
  struct Cycles
  {
    std::vector<std::uint32_t> id, pos, len;
  };
  auto cycles = [](const Permutation &p) {
    Cycles c;
    const std::size_t n = p.degree();
    c.id.assign(n, UINT32_MAX);
    c.pos.assign(n, 0);
    c.len.assign(n, 0);
    std::uint32_t next = 0;
    for (point_t i = 0; i < n; ++i) {
      if (c.id[i] != UINT32_MAX)
        continue;
      std::uint32_t k = 0;
      for (point_t j = i; c.id[j] == UINT32_MAX; j = p[j]) {
        c.id[j] = next;
        c.pos[j] = k++;
      }
      for (point_t j = i;;) {
        c.len[j] = k;
        j = p[j];
        if (j == i)
          break;
      }
      ++next;
    }
    return c;
  };
  auto base = g.chain().base();
  return [base, cx = cycles(x), cy = cycles(y)](std::size_t level,
                                               std::span<const point_t> images) {
    point_t b = base[level], im = images[level];
    if (cx.len[b] != cy.len[im])
      return false;
    for (std::size_t a = 0; a < level; ++a) {
      point_t ba = base[a], ia = images[a];
      bool same_x = cx.id[ba] == cx.id[b];
      bool same_y = cy.id[ia] == cy.id[im];
      if (same_x != same_y)
        return false;
      if (same_x) {
        std::uint32_t len = cx.len[b];
        std::uint32_t dx = (cx.pos[b] + len - cx.pos[ba]) % len;
        std::uint32_t dy = (cy.pos[im] + len - cy.pos[ia]) % len;
        if (dx != dy)
          return false;
      }
    }
    return true;
  };
}

inline Prune all_of(std::vector<Prune> prunes)
{
  return [ps = std::move(prunes)](std::size_t level, std::span<const point_t> images) {
    for (auto &p : ps)
      if (p && !p(level, images))
        return false;
    return true;
  };
}

} // namespace search

inline void require_same_degree(const PermGroup &a, const PermGroup &b)
{
  if (a.degree() != b.degree())
    throw invalid_input("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                        std::to_string(b.degree()));
}

inline void require_subgroup(const PermGroup &h, const PermGroup &g, const char *what)
{
  require_same_degree(h, g);
  if (!g.contains(h))
    throw invalid_input(std::string(what) + " is not a subgroup of the ambient group");
}

/// C_G(x). Contains <x> when x lies in G.
inline PermGroup centralizer(const PermGroup &g, const Permutation &x)
{
  if (x.degree() != g.degree())
    throw invalid_input("degree mismatch in centralizer");
  if (x.is_identity())
    return g;
  std::optional<PermGroup> cyc;
  if (g.contains(x))
    cyc.emplace(g.degree(), std::vector<Permutation>{x});
  return search::subgroup_search(
    g, [&](const Permutation &c) { return x * c == c * x; }, search::cycle_prune(g, x, x),
    cyc ? &*cyc : nullptr);
}

/// C_G(H) for any group H of the same degree.
inline PermGroup centralizer(const PermGroup &g, const PermGroup &h)
{
  require_same_degree(g, h);
  std::vector<search::Prune> prunes;
  for (auto &x : h.generators())
    prunes.push_back(search::cycle_prune(g, x, x));
  return search::subgroup_search(
    g,
    [&](const Permutation &c) {
      for (auto &x : h.generators())
        if (x * c != c * x)
          return false;
      return true;
    },
    search::all_of(std::move(prunes)));
}

inline PermGroup center(const PermGroup &g) { return centralizer(g, g); }

/// N_G(H); H must be a subgroup of G.
inline PermGroup normalizer(const PermGroup &g, const PermGroup &h)
{
  require_subgroup(h, g, "normalizer argument");
  if (h.is_trivial() || g.normalizes(h))
    return g;
  return search::subgroup_search(
    g,
    [&](const Permutation &c) {
      for (auto &x : h.generators())
        if (!h.contains(x.conjugate(c)))
          return false;
      return true;
    },
    search::orbit_partition_prune(g, h, h), &h);
}

/// A ∩ B, searched in the smaller group with exact partial-membership pruning.
inline PermGroup intersection(const PermGroup &a, const PermGroup &b)
{
  require_same_degree(a, b);
  const PermGroup &small = a.order().log() <= b.order().log() ? a : b;
  const PermGroup &other = &small == &a ? b : a;
  if (other.contains(small))
    return small;
  if (small.contains(other))
    return other;
  auto base = small.chain().base();
  auto tc = std::make_shared<const StabilizerChain>(other.degree(), other.generators(), base);
  return search::subgroup_search(
    small, [&](const Permutation &c) { return tc->contains(c); }, search::membership_prune(tc));
}

/// Some g in G with H^g = K, if one exists.
inline std::optional<Permutation> conjugating_element(const PermGroup &g, const PermGroup &h,
                                                      const PermGroup &k)
{
  require_same_degree(g, h);
  require_same_degree(g, k);
  if (h.order() != k.order())
    return std::nullopt;
  return search::find_element(
    g,
    [&](const Permutation &c) {
      for (auto &x : h.generators())
        if (!k.contains(x.conjugate(c)))
          return false;
      return true;
    },
    search::orbit_partition_prune(g, h, k));
}

/// Some g in G with x^g = y, if one exists.
inline std::optional<Permutation> element_conjugator(const PermGroup &g, const Permutation &x,
                                                     const Permutation &y)
{
  return search::find_element(
    g, [&](const Permutation &c) { return x.conjugate(c) == y; }, search::cycle_prune(g, x, y));
}

} // namespace profin

#endif
