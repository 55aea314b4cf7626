#ifndef PROFIN_INVARIANTS_HPP
#define PROFIN_INVARIANTS_HPP

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "group_ops.hpp"
#include "normal_lattice.hpp"

namespace profin
{

using PrimeSet = std::set<std::uint64_t>;

namespace detail
{

inline bool is_pi_number(const GroupOrder &o, const PrimeSet &pi)
{
  for (auto p : o.primes())
    if (!pi.count(p))
      return false;
  return true;
}

inline std::uint64_t prime_of_p_group(const PermGroup &s, const char *what)
{
  auto primes = s.order().primes();
  if (primes.size() > 1)
    throw invalid_input(std::string(what) + " requires a p-group, got order " +
                        s.order().to_string());
  return primes.empty() ? 0 : primes.front();
}

} // namespace detail

/// O_pi(G): the largest normal pi-subgroup.
inline PermGroup pi_core(const NormalLattice &lat, const PrimeSet &pi)
{
  std::size_t best = lat.trivial();
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (detail::is_pi_number(lat[i].group.order(), pi))
      best = i; // sorted by order, and the largest is unique
  return lat[best].group;
}

/// O^pi(G): the smallest normal subgroup with pi-quotient.
inline PermGroup pi_residual(const NormalLattice &lat, const PrimeSet &pi)
{
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (detail::is_pi_number(GroupOrder(lat[i].index), pi))
      return lat[i].group;
  return lat.ambient();
}

inline PermGroup pi_core(const PermGroup &g, const PrimeSet &pi, const Limits &limits = {})
{
  return pi_core(NormalLattice(g, limits), pi);
}

inline PermGroup pi_residual(const PermGroup &g, const PrimeSet &pi, const Limits &limits = {})
{
  return pi_residual(NormalLattice(g, limits), pi);
}

/// O^p(G) without the lattice: normal closure of the Sylow q-subgroups, q != p.
inline PermGroup p_residual(const PermGroup &g, std::uint64_t p, const Limits &limits = {})
{
  std::vector<Permutation> gens;
  for (auto q : g.order().primes())
    if (q != p) {
      PermGroup s = sylow(g, q, limits);
      gens.insert(gens.end(), s.generators().begin(), s.generators().end());
    }
  return detail::normal_closure_unchecked(g, std::move(gens));
}

/// F(G), the join of the p-cores.
inline PermGroup fitting(const NormalLattice &lat)
{
  std::size_t f = lat.trivial();
  for (auto p : lat.ambient().order().primes())
    f = lat.join(f, lat.id(pi_core(lat, {p})));
  return lat[f].group;
}

inline PermGroup fitting(const PermGroup &g, const Limits &limits = {})
{
  return fitting(NormalLattice(g, limits));
}

/// Q is perfect and Q/Z(Q) is simple. `lat` is the normal lattice of Q.
inline bool is_quasisimple(const NormalLattice &lat)
{
  const PermGroup &q = lat.ambient();
  if (q.is_trivial() || !is_perfect(q))
    return false;
  PermGroup z = center(q);
  for (std::size_t i = 0; i < lat.top(); ++i)
    if (!z.contains(lat[i].group))
      return false;
  return true;
}

namespace detail
{

// Components of G are found inside maximal normal subgroups, recursively.
// Subgroups already visited are remembered by their element set.
struct ComponentSearch
{
  const Limits &limits;
  ElementIndex index;
  std::set<std::vector<bool>> visited;
  std::vector<PermGroup> found;

  ComponentSearch(const PermGroup &g, const Limits &l) : limits(l), index(g, l.lattice, "lattice") {}

  void visit(const PermGroup &n)
  {
    if (n.is_trivial() || is_solvable(n))
      return;
    std::vector<bool> key(index.size(), false);
    n.for_each_element([&](const Permutation &x) { key[index.index_of(x)] = true; });
    if (!visited.insert(std::move(key)).second)
      return;
    NormalLattice lat(n, limits);
    if (is_quasisimple(lat)) {
      found.push_back(n);
      return;
    }
    for (std::size_t m : lat.maximal_below(lat.top()))
      visit(lat[m].group);
  }
};

} // namespace detail

/// The subnormal quasisimple subgroups of G.
inline std::vector<PermGroup> components(const PermGroup &g, const Limits &limits = {})
{
  g.order().value(limits.lattice, "lattice");
  detail::ComponentSearch search(g, limits);
  search.visit(g);
  return std::move(search.found);
}

/// E(G), the join of the components.
inline PermGroup layer(const PermGroup &g, const std::vector<PermGroup> &comps)
{
  return join(g.degree(), comps);
}

inline PermGroup layer(const PermGroup &g, const Limits &limits = {})
{
  return layer(g, components(g, limits));
}

/// F*(G) = F(G)E(G).
inline PermGroup generalized_fitting(const PermGroup &g, const Limits &limits = {})
{
  return join(fitting(g, limits), layer(g, limits));
}

/// Phi^<|(G): the meet of the maximal normal subgroups.
inline PermGroup frattini_normal(const NormalLattice &lat)
{
  if (lat.size() == 1)
    return lat.ambient();
  return lat[lat.meet_all(lat.maximal_below(lat.top()))].group;
}

inline PermGroup frattini_normal(const PermGroup &g, const Limits &limits = {})
{
  return frattini_normal(NormalLattice(g, limits));
}

/// Phi(S) = S'S^p for a p-group S.
inline PermGroup frattini_pgroup(const PermGroup &s)
{
  std::uint64_t p = detail::prime_of_p_group(s, "Frattini subgroup");
  return p ? derived_times_pth_powers(s, p) : s;
}

/// d(S) = log_p |S : Phi(S)|, the minimal number of generators of a p-group.
inline unsigned p_group_rank(const PermGroup &s)
{
  std::uint64_t p = detail::prime_of_p_group(s, "rank");
  return p ? (s.order() / frattini_pgroup(s).order()).valuation(p) : 0u;
}

/// Number of steps G > Phi^<|(G) > Phi^<|(Phi^<|(G)) > ... until the trivial group.
inline unsigned phi_lhd_height(const PermGroup &g, const Limits &limits = {})
{
  unsigned h = 0;
  for (PermGroup cur = g; !cur.is_trivial(); ++h)
    cur = frattini_normal(cur, limits);
  return h;
}

/// I^<|_n(G): the meet of the normal subgroups of index at most n.
inline std::size_t small_normals_meet(const NormalLattice &lat, std::uint64_t n)
{
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (lat[i].index <= n)
      ids.push_back(i);
  return lat.meet_all(ids);
}

inline PermGroup intersection_of_small_normals(const NormalLattice &lat, std::uint64_t n)
{
  return lat[small_normals_meet(lat, n)].group;
}

/// Ob_G(H) = H meet every normal K not contained in H (G itself when none).
inline PermGroup oblique_core(const NormalLattice &lat, const PermGroup &h)
{
  require_subgroup(h, lat.ambient(), "oblique core argument");
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < lat.size(); ++i)
    if (!h.contains(lat[i].group))
      ids.push_back(i);
  return intersection(h, lat[lat.meet_all(ids)].group);
}

/// Ob*_G(H) = H meet every subgroup K normalised by H with K not inside H.
///
/// Each such K contains some x outside H and hence <x^H>, which is itself
/// such a subgroup; so it suffices to meet the closures <x^H>, x in G \ H.
inline PermGroup strong_oblique_core(const PermGroup &g, const PermGroup &h,
                                     const Limits &limits = {})
{
  require_subgroup(h, g, "strong oblique core argument");
  ElementIndex idx(g, limits.obstar, "obstar");
  std::vector<bool> done(idx.size(), false);
  PermGroup r = h;
  for (std::size_t i = 0; i < idx.size() && !r.is_trivial(); ++i) {
    if (done[i] || h.contains(idx[i]))
      continue;
    // <x^H> only depends on the H-class of x
    std::vector<std::uint32_t> orbit{static_cast<std::uint32_t>(i)};
    done[i] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (auto &s : h.generators()) {
        auto j = idx.index_of(idx[orbit[k]].conjugate(s));
        if (!done[j]) {
          done[j] = true;
          orbit.push_back(j);
        }
      }
    PermGroup c = detail::normal_closure_unchecked(h, {idx[i]});
    if (!c.contains(r))
      r = intersection(r, c);
  }
  return r;
}

/// ob_G(n) = |G : Ob_G(I^<|_n(G))|.
inline std::uint64_t ob_function(const NormalLattice &lat, std::uint64_t n)
{
  PermGroup core = oblique_core(lat, intersection_of_small_normals(lat, n));
  return lat.ambient().size() / core.size();
}

/// ob*_G(n) = |G : Ob*_G(I^<|_n(G))|.
inline std::uint64_t ob_star_function(const NormalLattice &lat, std::uint64_t n,
                                      const Limits &limits = {})
{
  PermGroup core = strong_oblique_core(lat.ambient(), intersection_of_small_normals(lat, n), limits);
  return lat.ambient().size() / core.size();
}

struct TateResult
{
  bool derived = false;          // G' meet S = K' meet S
  bool derived_pth_powers = false; // G'G^p meet S = K'K^p meet S
  bool derived_residual = false; // G'O^p(G) meet S = K'O^p(K) meet S
  bool residual = false;         // O^p(G) meet S = O^p(K) meet S

  bool agree() const
  {
    return derived == derived_pth_powers && derived == derived_residual && derived == residual;
  }
  bool all() const { return derived && derived_pth_powers && derived_residual && residual; }
};

/// Evaluates the four transfer-control conditions for S <= K <= G with S a
/// Sylow p-subgroup of G (taken inside K). In each case the K-side group is
/// contained in the G-side group, so equality is decided by orders.
inline TateResult tate_check(const PermGroup &g, const PermGroup &k, std::uint64_t p,
                             const Limits &limits = {})
{
  require_subgroup(k, g, "K");
  if (!is_prime(p))
    throw invalid_input(std::to_string(p) + " is not prime");
  PermGroup s = sylow(k, p, limits);
  if (!(s.order() == g.order().p_part(p)))
    throw invalid_input("K does not contain a Sylow " + std::to_string(p) + "-subgroup of G");

  auto same = [&](const PermGroup &a, const PermGroup &b) {
    return intersection(a, s).order() == intersection(b, s).order();
  };
  PermGroup gd = derived_subgroup(g), kd = derived_subgroup(k);
  PermGroup gr = p_residual(g, p, limits), kr = p_residual(k, p, limits);
  TateResult t;
  t.derived = same(gd, kd);
  t.derived_pth_powers = same(derived_times_pth_powers(g, p), derived_times_pth_powers(k, p));
  t.derived_residual = same(join(gd, gr), join(kd, kr));
  t.residual = same(gr, kr);
  return t;
}

/// G has a normal p'-Hall subgroup (a normal p-complement).
inline bool is_p_prime_normal(const NormalLattice &lat, std::uint64_t p)
{
  const std::uint64_t want = lat.ambient().order().p_prime_part(p).value();
  for (auto &m : lat.members())
    if (m.order == want)
      return true;
  return false;
}

inline bool is_p_prime_normal(const PermGroup &g, std::uint64_t p, const Limits &limits = {})
{
  return is_p_prime_normal(NormalLattice(g, limits), p);
}

struct ComponentOrbits
{
  std::size_t orbits = 0;     // S-orbits on the components of order divisible by p
  unsigned rank_bound = 0;    // d(S)
  bool holds = false;
};

inline ComponentOrbits component_orbit_check(const PermGroup &g, std::uint64_t p,
                                             const std::vector<PermGroup> &comps,
                                             const Limits &limits = {})
{
  std::vector<PermGroup> cp;
  for (auto &q : comps)
    if (q.order().valuation(p))
      cp.push_back(q);
  PermGroup s = sylow(g, p, limits);

  std::vector<std::size_t> parent(cp.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t i) {
    while (parent[i] != i)
      i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < cp.size(); ++i)
    for (auto &x : s.generators()) {
      std::vector<Permutation> conj;
      for (auto &y : cp[i].generators())
        conj.push_back(y.conjugate(x));
      PermGroup image(g.degree(), std::move(conj));
      for (std::size_t j = 0; j < cp.size(); ++j)
        if (image == cp[j])
          parent[root(i)] = root(j);
    }

  ComponentOrbits r;
  for (std::size_t i = 0; i < cp.size(); ++i)
    r.orbits += root(i) == i;
  r.rank_bound = p_group_rank(s);
  r.holds = r.orbits <= r.rank_bound;
  return r;
}

inline ComponentOrbits component_orbit_check(const PermGroup &g, std::uint64_t p,
                                             const Limits &limits = {})
{
  return component_orbit_check(g, p, components(g, limits), limits);
}

/// Sum of the base-b digits of n.
inline std::uint64_t digit_sum(std::uint64_t n, std::uint64_t b)
{
  if (b < 2)
    throw invalid_input("digit sum base must be at least 2");
  std::uint64_t s = 0;
  for (; n; n /= b)
    s += n % b;
  return s;
}

} // namespace profin

#endif
