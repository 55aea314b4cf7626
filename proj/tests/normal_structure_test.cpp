#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracle.hpp"
#include "profin/aut.hpp"
#include "profin/constructions.hpp"
#include "profin/group_spec.hpp"
#include "profin/hom.hpp"
#include "profin/invariants.hpp"
#include "profin/report.hpp"

using namespace profin;

namespace
{

Permutation cyc(const char *text, std::size_t degree) { return Permutation::from_cycles(text, degree); }

PermGroup group(std::size_t degree, std::initializer_list<const char *> gens)
{
  std::vector<Permutation> xs;
  for (auto *g : gens)
    xs.push_back(cyc(g, degree));
  return PermGroup(degree, xs);
}

bool is_power_of(std::size_t n, std::uint64_t p)
{
  while (n % p == 0)
    n /= p;
  return n == 1;
}

bool subset_of(const oracle::Subset &a, const oracle::Subset &b)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i])
      return false;
  return true;
}

oracle::Subset meet(oracle::Subset a, const oracle::Subset &b)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] = a[i] && b[i];
  return a;
}

// A corpus group together with its brute-force element table and normal subgroups.
struct Brute
{
  PermGroup g;
  std::vector<oracle::Perm> elements;
  oracle::Table t;
  std::set<oracle::Subset> normals;

  explicit Brute(const std::string &spec) : g(build_group(spec))
  {
    elements = oracle::closure(g.degree(), corpus::raw_generators(g));
    t = oracle::table_of(elements);
    normals = oracle::normal_subgroups(t);
  }

  oracle::Subset of(const PermGroup &h) const { return corpus::members(elements, h); }

  PermGroup to_group(const oracle::Subset &s) const
  {
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (s[i])
        gens.emplace_back(elements[i]);
    return PermGroup(g.degree(), gens);
  }

  oracle::Subset whole() const { return oracle::Subset(t.n, true); }

  // largest normal subgroup whose order is a power of p
  oracle::Subset p_core(std::uint64_t p) const
  {
    oracle::Subset best = *normals.begin();
    for (auto &n : normals)
      if (is_power_of(oracle::count(n), p) && oracle::count(n) > oracle::count(best))
        best = n;
    return best;
  }

  // smallest normal subgroup with quotient of p-power order
  oracle::Subset p_residual(std::uint64_t p) const
  {
    oracle::Subset best = whole();
    for (auto &n : normals)
      if (is_power_of(t.n / oracle::count(n), p) && oracle::count(n) < oracle::count(best))
        best = n;
    return best;
  }

  oracle::Subset small_normals(std::uint64_t n) const
  {
    oracle::Subset r = whole();
    for (auto &k : normals)
      if (t.n / oracle::count(k) <= n)
        r = meet(r, k);
    return r;
  }

  oracle::Subset oblique(const oracle::Subset &h) const
  {
    oracle::Subset r = h;
    for (auto &k : normals)
      if (!subset_of(k, h))
        r = meet(r, k);
    return r;
  }
};

std::vector<std::string> small_corpus(std::uint64_t max_order)
{
  std::vector<std::string> out;
  for (auto &s : corpus::groups())
    if (build_group(s).size() <= max_order)
      out.push_back(s);
  return out;
}

} // namespace

TEST(NormalLattice, Examples)
{
  auto orders = [](const PermGroup &g) {
    std::vector<std::uint64_t> o;
    NormalLattice lat(g, {});
    for (auto &m : lat.members())
      o.push_back(m.group.size());
    return o;
  };
  EXPECT_EQ(orders(symmetric_group(4)), (std::vector<std::uint64_t>{1, 4, 12, 24}));
  EXPECT_EQ(orders(alternating_group(5)), (std::vector<std::uint64_t>{1, 60}));
  EXPECT_EQ(orders(cyclic_group(6)), (std::vector<std::uint64_t>{1, 2, 3, 6}));
}

TEST(NormalLattice, EqualsBruteForceOnCorpus)
{
  for (auto &s : corpus::groups()) {
    Brute b(s);
    NormalLattice lat(b.g, {});
    std::set<oracle::Subset> got;
    for (auto &m : lat.members()) {
      EXPECT_TRUE(b.g.normalizes(m.group)) << s;
      got.insert(b.of(m.group));
    }
    EXPECT_EQ(got, b.normals) << s;
    EXPECT_EQ(lat.size(), b.normals.size()) << s;
  }
}

TEST(NormalLattice, MeetAndJoinAreLatticeOperations)
{
  for (auto &s : small_corpus(200)) {
    Brute b(s);
    NormalLattice lat(b.g, {});
    for (std::size_t i = 0; i < lat.size(); ++i)
      for (std::size_t j = 0; j < lat.size(); ++j) {
        auto mi = b.of(lat[i].group), mj = b.of(lat[j].group);
        EXPECT_EQ(b.of(lat[lat.meet(i, j)].group), meet(mi, mj)) << s;
        EXPECT_EQ(b.of(lat[lat.join(i, j)].group), oracle::product(b.t, mi, mj)) << s;
        EXPECT_EQ(lat.leq(i, j), subset_of(mi, mj)) << s;
      }
  }
}

TEST(PiCore, Examples)
{
  EXPECT_EQ(pi_core(symmetric_group(4), {2}).size(), 4u);
  EXPECT_EQ(pi_core(symmetric_group(3), {3}).size(), 3u);
  EXPECT_TRUE(pi_core(symmetric_group(4), {5}).is_trivial());
  EXPECT_EQ(pi_residual(symmetric_group(4), {2}), alternating_group(4));
  EXPECT_EQ(pi_residual(symmetric_group(3), {3}), symmetric_group(3));
  EXPECT_TRUE(pi_residual(symmetric_group(4), {2, 3, 5}).is_trivial());
}

TEST(PiCore, CoresAndResidualsMatchOracle)
{
  for (auto &s : corpus::groups()) {
    Brute b(s);
    NormalLattice lat(b.g, {});
    for (auto p : b.g.order().primes()) {
      EXPECT_EQ(b.of(pi_core(lat, {p})), b.p_core(p)) << s << " p=" << p;
      EXPECT_EQ(b.of(pi_residual(lat, {p})), b.p_residual(p)) << s << " p=" << p;
      EXPECT_EQ(p_residual(b.g, p), pi_residual(lat, {p})) << s << " p=" << p;
    }
  }
}

TEST(Fitting, Examples)
{
  auto s4 = symmetric_group(4);
  EXPECT_EQ(fitting(s4).size(), 4u);
  EXPECT_TRUE(components(s4).empty());
  EXPECT_EQ(generalized_fitting(s4).size(), 4u);

  auto s5 = symmetric_group(5);
  auto c5 = components(s5);
  ASSERT_EQ(c5.size(), 1u);
  EXPECT_EQ(c5[0], alternating_group(5));
  EXPECT_TRUE(fitting(s5).is_trivial());
  EXPECT_EQ(generalized_fitting(s5).size(), 60u);

  auto a5a5 = direct_product(alternating_group(5), alternating_group(5));
  EXPECT_EQ(components(a5a5).size(), 2u);
  EXPECT_EQ(layer(a5a5).size(), 3600u);
}

TEST(Fitting, EqualsProductOfPCoresFromOracle)
{
  for (auto &s : corpus::groups()) {
    Brute b(s);
    oracle::Subset f = *b.normals.begin();
    for (auto p : b.g.order().primes())
      f = oracle::product(b.t, f, b.p_core(p));
    EXPECT_EQ(b.of(fitting(b.g)), f) << s;
  }
}

TEST(Fitting, GeneralizedFittingIsSelfCentralizing)
{
  for (auto &s : corpus::groups()) {
    Brute b(s);
    auto fs = b.of(generalized_fitting(b.g));
    EXPECT_TRUE(subset_of(oracle::centralizer(b.t, fs), fs)) << s;
    if (b.t.n > 1)
      EXPECT_GT(oracle::count(fs), 1u) << s;
  }
}

TEST(Fitting, ComponentsCommuteWithEachOtherAndWithFitting)
{
  for (auto &s : corpus::groups()) {
    Brute b(s);
    auto comps = components(b.g);
    auto f = b.of(fitting(b.g));
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto ci = b.of(comps[i]);
      EXPECT_TRUE(oracle::commute(b.t, ci, f)) << s;
      for (std::size_t j = i + 1; j < comps.size(); ++j)
        EXPECT_TRUE(oracle::commute(b.t, ci, b.of(comps[j]))) << s;
      // quasisimple: perfect, and Q/Z(Q) simple
      EXPECT_TRUE(is_perfect(comps[i])) << s;
      EXPECT_TRUE(is_quasisimple(NormalLattice(comps[i], {}))) << s;
    }
  }
}

TEST(Fitting, FStarGroupCriterion)
{
  for (auto &s : corpus::groups()) {
    auto g = build_group(s);
    if (!(generalized_fitting(g) == g))
      continue;
    auto f = fitting(g);
    auto e = layer(g);
    auto [gf, pf] = quotient_action(g, f);
    EXPECT_TRUE(is_perfect(gf)) << s;
    auto [ge, pe] = quotient_action(g, e);
    EXPECT_TRUE(is_nilpotent(ge)) << s;
  }
}

TEST(Frattini, Examples)
{
  EXPECT_EQ(frattini_normal(symmetric_group(3)), alternating_group(3));
  auto d8 = dihedral_group(4);
  EXPECT_EQ(frattini_pgroup(d8).size(), 2u);
  EXPECT_EQ(frattini_pgroup(d8), center(d8));
  EXPECT_EQ(p_group_rank(d8), 2u);
  for (unsigned k = 1; k <= 6; ++k)
    EXPECT_EQ(phi_lhd_height(cyclic_group(ipow(2, k))), k);
  EXPECT_THROW(frattini_pgroup(symmetric_group(3)), invalid_input);
}

TEST(Frattini, PGroupFrattiniIsIntersectionOfMaximalSubgroups)
{
  for (auto &s : {"dihedral(4)", "dihedral(8)", "wreath(cyclic(2), 2, cyclic(2))", "wreath(cyclic(3), 3, cyclic(3))",
                  "sylow_of(sym(6), 2)", "direct(cyclic(4), cyclic(2))", "wreath(cyclic(2), 4, cyclic(4))"}) {
    Brute b(s);
    auto subs = oracle::all_subgroups(b.t);
    EXPECT_EQ(b.of(frattini_pgroup(b.g)), oracle::frattini(b.t, subs)) << s;
  }
}

TEST(Frattini, NormalFrattiniIsMonotoneUnderNormality)
{
  for (auto &s : small_corpus(400)) {
    Brute b(s);
    auto phi = b.of(frattini_normal(b.g));
    for (auto &n : b.normals) {
      auto h = b.to_group(n);
      EXPECT_TRUE(subset_of(b.of(frattini_normal(h)), phi)) << s;
    }
  }
}

TEST(Frattini, TrivialNormalFrattiniMeansProductOfSimpleGroups)
{
  for (auto &s : corpus::groups()) {
    auto g = build_group(s);
    NormalLattice lat(g, {});
    if (!frattini_normal(lat).is_trivial())
      continue;
    auto mins = lat.minimal_normal();
    EXPECT_EQ(lat.join_all(mins), lat.top()) << s;
    for (auto m : mins)
      EXPECT_EQ(NormalLattice(lat[m].group, {}).size(), g.is_trivial() ? 1u : 2u) << s;
  }
}

TEST(ObliqueCore, Examples)
{
  NormalLattice s4(symmetric_group(4), {});
  EXPECT_EQ(intersection_of_small_normals(s4, 2), alternating_group(4));
  EXPECT_EQ(oblique_core(s4, alternating_group(4)), alternating_group(4));
  EXPECT_EQ(oblique_core(s4, symmetric_group(4)), symmetric_group(4));
  EXPECT_EQ(ob_function(s4, 2), 2u);
  EXPECT_EQ(ob_function(s4, 1), 1u);
  NormalLattice c8(cyclic_group(8), {});
  EXPECT_EQ(ob_function(c8, 5), 4u);
}

TEST(ObliqueCore, MatchesOracleAndIsMonotone)
{
  for (auto &s : small_corpus(800)) {
    Brute b(s);
    NormalLattice lat(b.g, {});
    std::uint64_t prev = 0;
    for (std::uint64_t n = 1; n <= 12; ++n) {
      auto in = b.small_normals(n);
      EXPECT_EQ(b.of(intersection_of_small_normals(lat, n)), in) << s;
      auto core = b.oblique(in);
      EXPECT_EQ(ob_function(lat, n), b.t.n / oracle::count(core)) << s << " n=" << n;
      EXPECT_GE(ob_function(lat, n), b.t.n / oracle::count(in)) << s;
      EXPECT_GE(ob_function(lat, n), prev) << s;
      prev = ob_function(lat, n);
    }
  }
}

TEST(ObliqueCore, StrongCoreMatchesSubgroupScan)
{
  for (auto &s : small_corpus(120)) {
    Brute b(s);
    NormalLattice lat(b.g, {});
    auto subs = oracle::all_subgroups(b.t);
    for (std::uint64_t n : {1, 2, 3, 4, 6, 8}) {
      auto h = b.small_normals(n);
      oracle::Subset r = h;
      for (auto &k : subs) {
        if (subset_of(k, h))
          continue;
        bool normalised = true;
        for (std::uint32_t x = 0; x < b.t.n && normalised; ++x)
          for (std::uint32_t y = 0; y < b.t.n && normalised; ++y)
            normalised = !(h[x] && k[y]) || k[b.t.conj(y, x)];
        if (normalised)
          r = meet(r, k);
      }
      auto hg = intersection_of_small_normals(lat, n);
      auto star = strong_oblique_core(b.g, hg);
      EXPECT_EQ(b.of(star), r) << s << " n=" << n;
      EXPECT_TRUE(oblique_core(lat, hg).contains(star)) << s;
      EXPECT_GE(ob_star_function(lat, n), ob_function(lat, n)) << s;
    }
  }
}

TEST(ObliqueCore, QuotientMonotonicity)
{
  for (auto &s : small_corpus(400)) {
    auto g = build_group(s);
    NormalLattice lat(g, {});
    for (auto &m : lat.members()) {
      auto [q, pi] = quotient_action(g, m.group);
      NormalLattice ql(q, {});
      for (std::uint64_t n = 1; n <= 8; ++n) {
        auto oi = oblique_core(lat, intersection_of_small_normals(lat, n));
        auto oq = oblique_core(ql, intersection_of_small_normals(ql, n));
        EXPECT_TRUE(oq.contains(pi.image(oi))) << s << " n=" << n;
      }
    }
  }
}

TEST(ObliqueCore, StrongCoreRespectsCap)
{
  Limits l;
  l.obstar = 100;
  NormalLattice s5(symmetric_group(5), l);
  EXPECT_THROW(ob_star_function(s5, 2, l), cap_exceeded);
}

TEST(Tate, Examples)
{
  auto s4 = symmetric_group(4);
  auto t = tate_check(s4, sylow(s4, 2), 2);
  EXPECT_FALSE(t.derived || t.derived_pth_powers || t.derived_residual || t.residual);
  auto s3 = symmetric_group(3);
  EXPECT_TRUE(tate_check(s3, group(3, {"(1 2)"}), 2).all());
  EXPECT_TRUE(tate_check(s4, s4, 2).all());
  EXPECT_THROW(tate_check(s4, group(4, {"(1 2 3)"}), 2), invalid_input);
}

TEST(Tate, FourConditionsAgreeAndMatchPPrimeNormality)
{
  std::mt19937_64 rng(1);
  for (auto &s : small_corpus(800)) {
    auto g = build_group(s);
    auto elems = g.elements();
    for (auto p : g.order().primes()) {
      auto sp = sylow(g, p);
      std::vector<PermGroup> ks{sp, normalizer(g, sp), g};
      for (int r = 0; r < 3; ++r) {
        std::vector<Permutation> gens = sp.generators();
        gens.push_back(elems[rng() % elems.size()]);
        ks.emplace_back(g.degree(), gens);
      }
      for (auto &k : ks) {
        auto t = tate_check(g, k, p);
        EXPECT_TRUE(t.agree()) << s << " p=" << p << " |K|=" << k.size();
      }
      EXPECT_EQ(tate_check(g, sp, p).all(), is_p_prime_normal(g, p)) << s << " p=" << p;
    }
  }
}

TEST(PPrimeNormal, ExamplesAndOracle)
{
  EXPECT_TRUE(is_p_prime_normal(symmetric_group(3), 2));
  EXPECT_FALSE(is_p_prime_normal(symmetric_group(4), 2));
  EXPECT_TRUE(is_p_prime_normal(dihedral_group(8), 2));
  for (auto &s : corpus::groups()) {
    Brute b(s);
    for (auto p : b.g.order().primes()) {
      std::uint64_t pp = b.t.n;
      while (pp % p == 0)
        pp /= p;
      bool brute = false;
      for (auto &n : b.normals)
        brute = brute || oracle::count(n) == pp;
      EXPECT_EQ(is_p_prime_normal(b.g, p), brute) << s;
    }
  }
}

TEST(Automorphisms, OrdersMatchBruteForce)
{
  for (auto &s : {"cyclic(8)", "cyclic(12)", "sym(3)", "sym(4)", "dihedral(4)", "dihedral(6)", "alt(4)",
                  "direct(cyclic(2), cyclic(2))", "direct(cyclic(4), cyclic(2))", "direct(cyclic(3), cyclic(3))",
                  "wreath(cyclic(2), 2, cyclic(2))", "direct(sym(3), cyclic(2))"}) {
    Brute b(s);
    auto brute = oracle::automorphisms(b.t);
    EXPECT_EQ(aut_group_small(b.g).size(), brute.size()) << s;
  }
  EXPECT_EQ(aut_group_small(alternating_group(5)).size(), 120u);
}

TEST(Automorphisms, AutIsAPermutationGroupOnNontrivialElements)
{
  auto a = automorphisms(dihedral_group(4));
  EXPECT_EQ(a.group.degree(), 7u);
  EXPECT_EQ(a.group.size(), 8u);
  EXPECT_THROW(automorphisms(symmetric_group(6)), cap_exceeded);
}

TEST(CInvariant, Examples)
{
  for (unsigned p : {2u, 3u}) {
    EXPECT_EQ(c_invariant(direct_product(cyclic_group(p), cyclic_group(p))), 2u);
    EXPECT_EQ(c_invariant(direct_product(cyclic_group(p * p), cyclic_group(p))), 1u);
    for (unsigned k = 1; k <= 3; ++k)
      EXPECT_EQ(c_invariant(cyclic_group(ipow(p, k))), 1u);
  }
}

TEST(CInvariant, MatchesCharacteristicSubgroupScan)
{
  for (auto &s : {"cyclic(4)", "direct(cyclic(2), cyclic(2))", "direct(cyclic(4), cyclic(2))", "dihedral(4)",
                  "direct(cyclic(4), cyclic(4))", "wreath(cyclic(2), 2, cyclic(2))", "direct(cyclic(9), cyclic(3))",
                  "direct(dihedral(4), cyclic(2))", "sylow_of(sym(6), 2)", "wreath(cyclic(3), 3, cyclic(3))"}) {
    Brute b(s);
    auto p = b.g.order().primes()[0];
    EXPECT_EQ(c_invariant(b.g), oracle::characteristic_c(b.t, static_cast<unsigned>(p))) << s;
  }
}

TEST(ComponentOrbits, Examples)
{
  auto g = build_group("wreath(alt(5), 2, cyclic(2))");
  auto r = component_orbit_check(g, 2);
  EXPECT_EQ(r.orbits, 1u);
  EXPECT_GE(r.rank_bound, 1u);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(digit_sum(5, 2), 2u);
  EXPECT_EQ(digit_sum(9, 3), 1u);
}

TEST(InvariantReport, KeysAreUniqueAndTagged)
{
  InvariantReport r("sym(4)");
  r.set("order", std::uint64_t{24}, "build_group");
  r.set("ob", std::vector<std::uint64_t>{1, 2}, "ob_function");
  EXPECT_THROW(r.set("order", std::uint64_t{1}, "x"), invalid_input);
  auto j = r.to_json();
  EXPECT_EQ(j["group"], "sym(4)");
  EXPECT_EQ(j["invariants"]["order"], 24);
  EXPECT_EQ(j["provenance"]["ob"], "ob_function");
  EXPECT_EQ(j.dump(), r.to_json().dump());
}
