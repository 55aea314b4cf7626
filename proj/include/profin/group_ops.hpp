#ifndef PROFIN_GROUP_OPS_HPP
#define PROFIN_GROUP_OPS_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "perm_group.hpp"
#include "search.hpp"

namespace profin
{

inline PermGroup join(const PermGroup &a, const PermGroup &b)
{
  require_same_degree(a, b);
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return PermGroup(a.degree(), std::move(gens));
}

inline PermGroup join(std::size_t degree, std::span<const PermGroup> groups)
{
  std::vector<Permutation> gens;
  for (auto &h : groups) {
    if (h.degree() != degree)
      throw invalid_input("degree mismatch in join");
    gens.insert(gens.end(), h.generators().begin(), h.generators().end());
  }
  return PermGroup(degree, std::move(gens));
}

inline bool is_normal(const PermGroup &g, const PermGroup &n)
{
  return n.degree() == g.degree() && g.contains(n) && g.normalizes(n);
}

namespace detail
{

// Closure under conjugation by `g` without checking that xs lie in g.
inline PermGroup normal_closure_unchecked(const PermGroup &g, std::vector<Permutation> xs)
{
  const std::size_t n = g.degree();
  std::vector<Permutation> gens;
  StabilizerChain chain(n);
  for (auto &x : xs)
    if (!chain.contains(x)) {
      chain.add_generator(x);
      gens.push_back(x);
    }
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (auto &s : g.generators()) {
      Permutation y = gens[i].conjugate(s);
      if (!chain.contains(y)) {
        chain.add_generator(y);
        gens.push_back(std::move(y));
      }
    }
  return PermGroup(n, std::move(gens));
}

} // namespace detail

/// Smallest normal subgroup of G containing xs.
inline PermGroup normal_closure(const PermGroup &g, std::span<const Permutation> xs)
{
  for (auto &x : xs) {
    if (x.degree() != g.degree())
      throw invalid_input("degree mismatch in normal closure");
    if (!g.contains(x))
      throw invalid_input("element " + x.to_cycles() + " is not in the group");
  }
  return detail::normal_closure_unchecked(g, {xs.begin(), xs.end()});
}

inline PermGroup normal_closure(const PermGroup &g, const PermGroup &h)
{
  return normal_closure(g, h.generators());
}

/// [A, B] for subgroups A, B normalised by G; computed as the normal closure in G.
inline PermGroup commutator_subgroup(const PermGroup &g, const PermGroup &a, const PermGroup &b)
{
  std::vector<Permutation> comms;
  for (auto &x : a.generators())
    for (auto &y : b.generators())
      comms.push_back(Permutation::commutator(x, y));
  return detail::normal_closure_unchecked(g, std::move(comms));
}

inline PermGroup derived_subgroup(const PermGroup &g) { return commutator_subgroup(g, g, g); }

/// G = G^(0) > G' > G'' > ... ending at the first repeated term.
inline std::vector<PermGroup> derived_series(const PermGroup &g)
{
  std::vector<PermGroup> series{g};
  for (;;) {
    PermGroup next = derived_subgroup(series.back());
    if (next.order() == series.back().order())
      return series;
    series.push_back(std::move(next));
  }
}

/// G = gamma_1 > gamma_2 = [G,G] > gamma_3 = [gamma_2, G] > ..., ending at the stable term.
inline std::vector<PermGroup> lower_central_series(const PermGroup &g)
{
  std::vector<PermGroup> series{g};
  for (;;) {
    PermGroup next = commutator_subgroup(g, series.back(), g);
    if (next.order() == series.back().order())
      return series;
    series.push_back(std::move(next));
  }
}

inline bool is_perfect(const PermGroup &g) { return derived_subgroup(g).order() == g.order(); }
inline bool is_solvable(const PermGroup &g) { return derived_series(g).back().is_trivial(); }
inline bool is_nilpotent(const PermGroup &g)
{
  return lower_central_series(g).back().is_trivial();
}

/// Subgroup generated by the p-th powers of G's generators together with G';
/// equals G'G^p, and is the Frattini subgroup when G is a p-group.
inline PermGroup derived_times_pth_powers(const PermGroup &g, std::uint64_t p)
{
  std::vector<Permutation> xs;
  for (auto &x : g.generators()) {
    xs.push_back(x.pow(static_cast<std::int64_t>(p)));
    for (auto &y : g.generators())
      xs.push_back(Permutation::commutator(x, y));
  }
  return detail::normal_closure_unchecked(g, std::move(xs));
}

struct ConjugacyClass
{
  Permutation representative;
  std::uint64_t size = 0;
  std::vector<std::uint32_t> members; // indices into ConjugacyClasses::elements
};

/// Element-level conjugacy class decomposition of a group of bounded order.
struct ConjugacyClasses
{
  ElementIndex elements;
  std::vector<std::uint32_t> class_of;
  std::vector<ConjugacyClass> classes;

  std::size_t count() const noexcept { return classes.size(); }
};

inline ConjugacyClasses conjugacy_classes(const PermGroup &g, const Limits &limits = {})
{
  ConjugacyClasses cc{ElementIndex(g, limits.enumeration), {}, {}};
  const std::size_t n = cc.elements.size();
  cc.class_of.assign(n, UINT32_MAX);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (cc.class_of[i] != UINT32_MAX)
      continue;
    auto id = static_cast<std::uint32_t>(cc.classes.size());
    ConjugacyClass cls{cc.elements[i], 0, {i}};
    cc.class_of[i] = id;
    for (std::size_t k = 0; k < cls.members.size(); ++k)
      for (auto &s : g.generators()) {
        std::uint32_t j = cc.elements.index_of(cc.elements[cls.members[k]].conjugate(s));
        if (cc.class_of[j] == UINT32_MAX) {
          cc.class_of[j] = id;
          cls.members.push_back(j);
        }
      }
    cls.size = cls.members.size();
    cc.classes.push_back(std::move(cls));
  }
  return cc;
}

namespace detail
{

inline Permutation p_part_power(const Permutation &x, std::uint64_t p)
{
  std::uint64_t o = x.order();
  while (o % p == 0)
    o /= p;
  return x.pow(static_cast<std::int64_t>(o));
}

} // namespace detail

/// A Sylow p-subgroup of G by normaliser ascent.
///
/// P grows from the trivial group. A few seeded random p-elements are tried
/// first as cheap extensions of P; when they fail, P is extended inside
/// N_G(P), whose quotient by P has order divisible by p while P is not Sylow.
inline PermGroup sylow(const PermGroup &g, std::uint64_t p, const Limits &limits = {})
{
  if (!is_prime(p))
    throw invalid_input(std::to_string(p) + " is not prime");
  const GroupOrder target = g.order().p_part(p);
  PermGroup P = PermGroup::trivial(g.degree());
  if (target.is_one())
    return P;
  std::mt19937_64 rng(limits.seed ^ (0x9e3779b97f4a7c15ull * p));

  auto extend = [&](const Permutation &z) {
    std::vector<Permutation> gens = P.generators();
    gens.push_back(z);
    return PermGroup(g.degree(), std::move(gens));
  };

  while (!(P.order() == target)) {
    bool grown = false;
    for (int attempt = 0; attempt < 8 && !grown; ++attempt) {
      Permutation z = detail::p_part_power(g.random_element(rng), p);
      if (z.is_identity() || P.contains(z))
        continue;
      PermGroup q = extend(z);
      if (q.is_p_group(p)) {
        P = std::move(q);
        grown = true;
      }
    }
    if (grown)
      continue;

    PermGroup N = normalizer(g, P);
    std::optional<Permutation> z;
    for (int attempt = 0; attempt < 64 && !z; ++attempt) {
      Permutation y = detail::p_part_power(N.random_element(rng), p);
      if (!P.contains(y))
        z = y;
    }
    if (!z)
      z = search::find_element(N, [&](const Permutation &y) {
        return !P.contains(y) && P.contains(y.pow(static_cast<std::int64_t>(
                                   ipow(p, N.order().valuation(p)))));
      });
    if (!z)
      throw error("Sylow ascent stalled; normaliser contains no p-element outside P");
    P = extend(detail::p_part_power(*z, p));
  }
  return P;
}

} // namespace profin

#endif
