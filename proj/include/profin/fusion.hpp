#ifndef PROFIN_FUSION_HPP
#define PROFIN_FUSION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "hom.hpp"
#include "invariants.hpp"
#include "small_group.hpp"

namespace profin
{

struct SubgroupClass
{
  PermGroup representative;
  std::uint64_t order = 1;
  std::size_t size = 0;                 // number of S-conjugates
  std::vector<std::size_t> subgroups;   // indices into FusionTable::subgroups
};

struct Automizer
{
  std::uint64_t order = 1;              // |N_G(P)| / |C_G(P)|
  std::vector<Permutation> generators;  // elements of N_G(P) inducing the automorphisms
};

/// Subgroups of a Sylow p-subgroup S up to S-conjugacy, with their G-fusion.
///
/// `fused_to[i]` is the smallest class id G-conjugate to class i, and
/// `witness[i]` an element g with rep(i)^g = rep(fused_to[i]).
struct FusionTable
{
  PermGroup ambient;
  PermGroup sylow;
  std::uint64_t p = 0;
  CayleyTable table;                    // of S
  std::vector<SmallSubgroup> subgroups; // every subgroup of S
  std::vector<std::size_t> class_of;    // subgroup index -> class id
  std::vector<SubgroupClass> s_classes;

  std::vector<std::size_t> fused_to;
  std::vector<Permutation> witness;
  std::vector<Automizer> automizers;

  bool completed() const noexcept { return fused_to.size() == s_classes.size(); }

  bool fused(std::size_t i, std::size_t j) const { return fused_to.at(i) == fused_to.at(j); }

  /// Some g in G with rep(i)^g = rep(j), for fused classes.
  Permutation conjugator(std::size_t i, std::size_t j) const
  {
    if (!fused(i, j))
      throw invalid_input("classes " + std::to_string(i) + " and " + std::to_string(j) +
                          " are not fused");
    return witness[i] * witness[j].inverse();
  }
};

/// N_G(P)/C_G(P) as automorphisms of P.
inline Automizer automizer(const PermGroup &g, const PermGroup &p)
{
  require_subgroup(p, g, "automizer argument");
  Automizer a;
  if (p.is_trivial())
    return a;
  PermGroup n = normalizer(g, p);
  PermGroup c = centralizer(n, p);
  a.order = (n.order() / c.order()).value();
  for (auto &x : n.generators()) {
    if (c.contains(x))
      continue;
    for (auto &y : p.generators())
      if (!p.contains(y.conjugate(x)))
        throw error("internal: normaliser element does not induce an automorphism");
    a.generators.push_back(x);
  }
  return a;
}

namespace detail
{

inline PermGroup small_subgroup_group(const CayleyTable &t, const SmallSubgroup &h)
{
  return t.subgroup(h.generators);
}

inline std::vector<bool> conjugate_mask(const CayleyTable &t, const std::vector<bool> &h,
                                        std::uint32_t s)
{
  std::vector<bool> r(h.size(), false);
  for (std::uint32_t x = 0; x < h.size(); ++x)
    if (h[x])
      r[t.conj(x, s)] = true;
  return r;
}

} // namespace detail

/// Every subgroup of S = sylow(G, p), grouped into S-conjugacy classes.
inline FusionTable subgroup_classes_of_sylow(const PermGroup &g, std::uint64_t p,
                                             const Limits &limits = {})
{
  PermGroup s = sylow(g, p, limits);
  require_cap("sylow_subgroups", s.size(), limits.sylow_subgroups, "Sylow subgroup order");
  FusionTable ft{g, s, p, CayleyTable(s, limits.sylow_subgroups, "sylow_subgroups"), {}, {}, {},
                 {}, {}, {}};
  const CayleyTable &t = ft.table;
  ft.subgroups = all_subgroups(t, limits.enumeration);

  std::map<std::vector<bool>, std::size_t> id;
  for (std::size_t i = 0; i < ft.subgroups.size(); ++i)
    id.emplace(ft.subgroups[i].members, i);

  std::vector<std::uint32_t> sgens;
  for (auto &x : s.generators())
    sgens.push_back(t.elements().index_of(x));

  ft.class_of.assign(ft.subgroups.size(), SIZE_MAX);
  for (std::size_t i = 0; i < ft.subgroups.size(); ++i) {
    if (ft.class_of[i] != SIZE_MAX)
      continue;
    SubgroupClass cls;
    const std::size_t cid = ft.s_classes.size();
    cls.subgroups.push_back(i);
    ft.class_of[i] = cid;
    for (std::size_t k = 0; k < cls.subgroups.size(); ++k)
      for (auto x : sgens) {
        std::size_t j =
          id.at(detail::conjugate_mask(t, ft.subgroups[cls.subgroups[k]].members, x));
        if (ft.class_of[j] == SIZE_MAX) {
          ft.class_of[j] = cid;
          cls.subgroups.push_back(j);
        }
      }
    cls.representative = detail::small_subgroup_group(t, ft.subgroups[i]);
    cls.order = ft.subgroups[i].order;
    cls.size = cls.subgroups.size();
    ft.s_classes.push_back(std::move(cls));
  }
  return ft;
}

/// Decides G-conjugacy between the class representatives by backtrack search
/// and records witnesses and automizers.
inline FusionTable &g_fusion(FusionTable &ft)
{
  const PermGroup &g = ft.ambient;
  const std::size_t k = ft.s_classes.size();
  ft.fused_to.assign(k, SIZE_MAX);
  ft.witness.assign(k, g.identity());
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < k; ++i) {
    const PermGroup &pi = ft.s_classes[i].representative;
    for (std::size_t r : roots) {
      if (ft.s_classes[r].order != ft.s_classes[i].order)
        continue;
      if (auto c = conjugating_element(g, pi, ft.s_classes[r].representative)) {
        ft.fused_to[i] = r;
        ft.witness[i] = *c;
        break;
      }
    }
    if (ft.fused_to[i] == SIZE_MAX) {
      ft.fused_to[i] = i;
      roots.push_back(i);
    }
  }
  ft.automizers.clear();
  for (auto &cls : ft.s_classes)
    ft.automizers.push_back(automizer(g, cls.representative));
  return ft;
}

inline FusionTable fusion_table(const PermGroup &g, std::uint64_t p, const Limits &limits = {})
{
  FusionTable ft = subgroup_classes_of_sylow(g, p, limits);
  g_fusion(ft);
  return ft;
}

/// One p-local step: restrict conjugation by a generator of N_G(R) to a
/// subgroup of R.
struct LocalStep
{
  std::size_t local = 0;      // index into AlperinResult::locals
  std::size_t generator = 0;  // index into the generators of N_G(R)
  std::size_t target = 0;     // S-class of the image subgroup
};

struct FusionChain
{
  std::size_t from = 0, to = 0; // S-class ids, fused in G
  std::vector<LocalStep> steps;
  Permutation element;          // product of the step conjugators; rep(from)^element = rep(to)
};

struct LocalSubgroup
{
  std::size_t subgroup = 0;            // index into FusionTable::subgroups
  std::vector<Permutation> normalizer; // generators of N_G(R)
};

struct AlperinResult
{
  bool holds = false;
  std::vector<LocalSubgroup> locals;
  std::vector<FusionChain> chains;
};

/// Checks that G-fusion in S is generated by the normalisers of fully
/// normalised subgroups R <= S (one per G-class), restricted to subgroups of R.
///
/// The subgroups of S form the nodes; from each fully normalised R and each
/// generator a of N_G(R) there is an edge Q -> Q^a for every Q <= R. The
/// connected pieces of this graph are compared with the G-fusion classes, and
/// for every fused class a chain of local steps is extracted and verified.
inline AlperinResult alperin_closure_check(const FusionTable &ft)
{
  if (!ft.completed())
    throw invalid_input("fusion table is not completed");
  const PermGroup &g = ft.ambient;
  const CayleyTable &t = ft.table;
  const std::size_t nsub = ft.subgroups.size();
  const std::size_t k = ft.s_classes.size();
  AlperinResult res;

  std::map<std::vector<bool>, std::size_t> id;
  for (std::size_t i = 0; i < nsub; ++i)
    id.emplace(ft.subgroups[i].members, i);

  auto ns_order = [&](std::size_t sub) {
    std::uint64_t c = 0;
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      bool norm = true;
      for (auto h : ft.subgroups[sub].generators)
        if (!ft.subgroups[sub].members[t.conj(h, x)]) {
          norm = false;
          break;
        }
      c += norm;
    }
    return c;
  };

  // a fully normalised subgroup per G-class: largest N_S(R) among S-conjugates
  for (std::size_t root = 0; root < k; ++root) {
    if (ft.fused_to[root] != root)
      continue;
    std::size_t best = SIZE_MAX;
    std::uint64_t best_n = 0;
    for (std::size_t c = 0; c < k; ++c)
      if (ft.fused_to[c] == root) {
        std::size_t sub = ft.s_classes[c].subgroups[0];
        std::uint64_t n = ns_order(sub);
        if (n > best_n) {
          best_n = n;
          best = sub;
        }
      }
    PermGroup r = detail::small_subgroup_group(t, ft.subgroups[best]);
    PermGroup n = normalizer(g, r);
    if (n.order().p_part(ft.p).value() != best_n)
      throw error("internal: chosen local subgroup is not fully normalised");
    res.locals.push_back({best, n.generators()});
  }

  // edges, with parent pointers from a BFS per start node
  struct Edge
  {
    std::size_t to, local, gen;
  };
  std::vector<std::vector<Edge>> adj(nsub);
  for (std::size_t l = 0; l < res.locals.size(); ++l) {
    const auto &rmask = ft.subgroups[res.locals[l].subgroup].members;
    for (std::size_t a = 0; a < res.locals[l].normalizer.size(); ++a) {
      const Permutation &x = res.locals[l].normalizer[a];
      std::vector<std::uint32_t> img(t.size(), UINT32_MAX);
      for (std::uint32_t y = 0; y < t.size(); ++y)
        if (rmask[y])
          img[y] = t.elements().index_of(t.elements()[y].conjugate(x));
      for (std::size_t q = 0; q < nsub; ++q) {
        const auto &qm = ft.subgroups[q].members;
        bool inside = true;
        for (std::uint32_t y = 0; y < t.size() && inside; ++y)
          inside = !qm[y] || rmask[y];
        if (!inside)
          continue;
        std::vector<bool> m(t.size(), false);
        for (std::uint32_t y = 0; y < t.size(); ++y)
          if (qm[y])
            m[img[y]] = true;
        adj[q].push_back({id.at(m), l, a});
      }
    }
  }

  res.holds = true;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t start = ft.s_classes[c].subgroups[0];
    std::vector<std::size_t> parent(nsub, SIZE_MAX);
    std::vector<Edge> via(nsub);
    std::vector<std::size_t> queue{start};
    parent[start] = start;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto &e : adj[queue[i]])
        if (parent[e.to] == SIZE_MAX) {
          parent[e.to] = queue[i];
          via[e.to] = e;
          queue.push_back(e.to);
        }
    // reachable classes must be exactly the G-fused classes
    std::vector<bool> reach(k, false);
    for (auto q : queue)
      reach[ft.class_of[q]] = true;
    for (std::size_t d = 0; d < k; ++d)
      if (reach[d] != (ft.fused_to[d] == ft.fused_to[c]))
        res.holds = false;
    if (ft.fused_to[c] == c)
      continue;

    const std::size_t target = ft.s_classes[ft.fused_to[c]].subgroups[0];
    if (parent[target] == SIZE_MAX)
      continue;
    FusionChain chain;
    chain.from = c;
    chain.to = ft.fused_to[c];
    for (std::size_t v = target; v != start; v = parent[v])
      chain.steps.push_back({via[v].local, via[v].gen, ft.class_of[v]});
    std::reverse(chain.steps.begin(), chain.steps.end());
    chain.element = g.identity();
    for (auto &s : chain.steps)
      chain.element = chain.element * res.locals[s.local].normalizer[s.generator];
    // verify: rep(from)^element = rep(to)
    const PermGroup &from = ft.s_classes[c].representative;
    const PermGroup &to = ft.s_classes[chain.to].representative;
    for (auto &y : from.generators())
      if (!to.contains(y.conjugate(chain.element)))
        res.holds = false;
    res.chains.push_back(std::move(chain));
  }
  return res;
}

inline AlperinResult alperin_closure_check(const PermGroup &g, std::uint64_t p,
                                           const Limits &limits = {})
{
  return alperin_closure_check(fusion_table(g, p, limits));
}

/// Automizer orders of the class representatives agree in G and in
/// G/O_{p'}(G).
inline bool p_prime_kernel_invariance(const FusionTable &ft, const Limits &limits = {})
{
  const PermGroup &g = ft.ambient;
  PrimeSet others;
  for (auto q : g.order().primes())
    if (q != ft.p)
      others.insert(q);
  PermGroup k = pi_core(g, others, limits);
  if (k.is_trivial())
    return true;
  auto [quo, hom] = quotient_action(g, k, limits);
  for (auto &cls : ft.s_classes)
    if (automizer(g, cls.representative).order != automizer(quo, hom.image(cls.representative)).order)
      return false;
  return true;
}

inline bool p_prime_kernel_invariance(const PermGroup &g, std::uint64_t p, const Limits &limits = {})
{
  return p_prime_kernel_invariance(subgroup_classes_of_sylow(g, p, limits), limits);
}

} // namespace profin

#endif
