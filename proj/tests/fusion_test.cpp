#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracle.hpp"
#include "profin/constructions.hpp"
#include "profin/fusion.hpp"
#include "profin/group_spec.hpp"

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

// Fusion of subgroups of S recomputed from the full multiplication table of G.
struct BruteFusion
{
  std::vector<oracle::Perm> elements;
  oracle::Table t;
  oracle::Subset s;
  std::vector<oracle::Subset> subgroups;

  BruteFusion(const PermGroup &g, const PermGroup &sylow)
  {
    elements = oracle::closure(g.degree(), corpus::raw_generators(g));
    t = oracle::table_of(elements);
    s = corpus::members(elements, sylow);
    auto all = oracle::all_subgroups(t, s);
    subgroups.assign(all.begin(), all.end());
  }

  bool conjugate_in(const oracle::Subset &where, const oracle::Subset &a, const oracle::Subset &b) const
  {
    for (std::uint32_t g = 0; g < t.n; ++g)
      if (where[g] && oracle::conjugate(t, a, g) == b)
        return true;
    return false;
  }

  std::size_t class_count(const oracle::Subset &where) const
  {
    std::vector<bool> seen(subgroups.size(), false);
    std::size_t n = 0;
    for (std::size_t i = 0; i < subgroups.size(); ++i) {
      if (seen[i])
        continue;
      ++n;
      for (std::size_t j = i; j < subgroups.size(); ++j)
        if (!seen[j] && conjugate_in(where, subgroups[i], subgroups[j]))
          seen[j] = true;
    }
    return n;
  }

  std::size_t automizer_order(const oracle::Subset &p) const
  {
    std::size_t n = 0, c = 0;
    for (std::uint32_t g = 0; g < t.n; ++g) {
      if (oracle::conjugate(t, p, g) == p)
        ++n;
      bool central = true;
      for (std::uint32_t x = 0; x < t.n && central; ++x)
        central = !p[x] || t.conj(x, g) == x;
      c += central;
    }
    return n / c;
  }
};

const std::vector<std::pair<std::string, std::uint64_t>> &fusion_cases()
{
  static const std::vector<std::pair<std::string, std::uint64_t>> cases = {
    {"sym(3)", 2},           {"sym(3)", 3},        {"sym(4)", 2},        {"sym(4)", 3},
    {"alt(4)", 2},           {"alt(5)", 2},        {"alt(5)", 3},        {"sym(5)", 2},
    {"dihedral(6)", 2},      {"dihedral(5)", 2},   {"cyclic(4)", 2},     {"direct(sym(3), cyclic(3))", 3},
    {"wreath(sym(3), 2, cyclic(2))", 2}, {"wreath(sym(3), 2, cyclic(2))", 3},
    {"direct(alt(4), cyclic(2))", 2},    {"affine(3, 2, [[0,1],[1,0]], [[1,1],[0,1]])", 2},
    {"affine(3, 2, [[0,1],[1,0]], [[1,1],[0,1]])", 3}, {"sym(6)", 3}, {"alt(6)", 2},
  };
  return cases;
}

} // namespace

TEST(SubgroupClasses, Examples)
{
  auto ft = subgroup_classes_of_sylow(symmetric_group(4), 2);
  EXPECT_EQ(ft.subgroups.size(), 10u);
  EXPECT_EQ(ft.s_classes.size(), 8u);
  auto f3 = subgroup_classes_of_sylow(symmetric_group(3), 3);
  ASSERT_EQ(f3.s_classes.size(), 2u);
  EXPECT_EQ(f3.s_classes[0].order, 1u);
  EXPECT_EQ(f3.s_classes[1].order, 3u);
  EXPECT_EQ(subgroup_classes_of_sylow(cyclic_group(4), 2).s_classes.size(), 3u);
}

TEST(SubgroupClasses, MatchBruteForce)
{
  for (auto &[spec, p] : fusion_cases()) {
    auto g = build_group(spec);
    auto ft = fusion_table(g, p);
    BruteFusion b(g, ft.sylow);
    EXPECT_EQ(ft.subgroups.size(), b.subgroups.size()) << spec << " p=" << p;
    EXPECT_EQ(ft.s_classes.size(), b.class_count(b.s)) << spec << " p=" << p;
    std::size_t total = 0;
    for (std::size_t i = 0; i < ft.s_classes.size(); ++i) {
      total += ft.s_classes[i].size;
      auto ri = corpus::members(b.elements, ft.s_classes[i].representative);
      for (std::size_t j = i + 1; j < ft.s_classes.size(); ++j)
        EXPECT_FALSE(b.conjugate_in(b.s, ri, corpus::members(b.elements, ft.s_classes[j].representative)))
          << spec;
    }
    EXPECT_EQ(total, ft.subgroups.size()) << spec;
  }
}

TEST(GFusion, MatchesBruteForceAndWitnessesVerify)
{
  for (auto &[spec, p] : fusion_cases()) {
    auto g = build_group(spec);
    auto ft = fusion_table(g, p);
    BruteFusion b(g, ft.sylow);
    oracle::Subset all(b.t.n, true);
    EXPECT_EQ(std::set<std::size_t>(ft.fused_to.begin(), ft.fused_to.end()).size(), b.class_count(all))
      << spec << " p=" << p;
    const std::size_t k = ft.s_classes.size();
    for (std::size_t i = 0; i < k; ++i) {
      auto ri = corpus::members(b.elements, ft.s_classes[i].representative);
      EXPECT_LE(ft.fused_to[i], i);
      for (std::size_t j = 0; j < k; ++j) {
        auto rj = corpus::members(b.elements, ft.s_classes[j].representative);
        bool brute = b.conjugate_in(all, ri, rj);
        ASSERT_EQ(ft.fused(i, j), brute) << spec << " " << i << "," << j;
        if (brute) {
          auto c = ft.conjugator(i, j);
          EXPECT_TRUE(g.contains(c));
          for (auto &x : ft.s_classes[i].representative.generators())
            EXPECT_TRUE(ft.s_classes[j].representative.contains(x.conjugate(c)));
        }
      }
    }
  }
}

TEST(Automizer, Examples)
{
  auto s4 = symmetric_group(4);
  EXPECT_EQ(automizer(s4, group(4, {"(1 2)(3 4)", "(1 3)(2 4)"})).order, 6u);
  EXPECT_EQ(automizer(symmetric_group(3), group(3, {"(1 2)"})).order, 1u);
  EXPECT_EQ(automizer(s4, PermGroup::trivial(4)).order, 1u);
}

TEST(Automizer, OrdersMatchBruteForceAndAreBounded)
{
  for (auto &[spec, p] : fusion_cases()) {
    auto g = build_group(spec);
    auto ft = fusion_table(g, p);
    BruteFusion b(g, ft.sylow);
    for (std::size_t i = 0; i < ft.s_classes.size(); ++i) {
      const auto &rep = ft.s_classes[i].representative;
      auto brute = b.automizer_order(corpus::members(b.elements, rep));
      EXPECT_EQ(ft.automizers[i].order, brute) << spec << " class " << i;
      EXPECT_EQ(normalizer(g, rep).size() % ft.automizers[i].order, 0u);
      auto ns = normalizer(ft.sylow, rep).size() / centralizer(ft.sylow, rep).size();
      EXPECT_GE(ft.automizers[i].order, ns);
    }
  }
}

TEST(Alperin, Examples)
{
  auto r = alperin_closure_check(symmetric_group(4), 2);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.chains.empty());
  EXPECT_TRUE(alperin_closure_check(alternating_group(5), 2).holds);
  // normal Sylow: everything is controlled by N_G(S) = G
  EXPECT_TRUE(alperin_closure_check(alternating_group(4), 2).holds);
}

TEST(Alperin, HoldsWithVerifiedChainsOnCorpus)
{
  for (auto &[spec, p] : fusion_cases()) {
    auto g = build_group(spec);
    auto ft = fusion_table(g, p);
    auto r = alperin_closure_check(ft);
    EXPECT_TRUE(r.holds) << spec << " p=" << p;
    std::size_t nonroot = 0;
    for (std::size_t i = 0; i < ft.s_classes.size(); ++i)
      nonroot += ft.fused_to[i] != i;
    EXPECT_EQ(r.chains.size(), nonroot) << spec;
    for (auto &c : r.chains) {
      // replay the chain independently of the stored product
      Permutation x = g.identity();
      for (auto &s : c.steps) {
        const auto &loc = r.locals.at(s.local);
        auto rg = detail::small_subgroup_group(ft.table, ft.subgroups[loc.subgroup]);
        EXPECT_TRUE(normalizer(g, rg).contains(loc.normalizer.at(s.generator)));
        x = x * loc.normalizer.at(s.generator);
      }
      EXPECT_EQ(x, c.element);
      for (auto &y : ft.s_classes[c.from].representative.generators())
        EXPECT_TRUE(ft.s_classes[c.to].representative.contains(y.conjugate(x))) << spec;
    }
    // each local subgroup is fully normalised
    for (auto &loc : r.locals) {
      auto rg = detail::small_subgroup_group(ft.table, ft.subgroups[loc.subgroup]);
      auto ng = normalizer(g, rg);
      EXPECT_EQ(normalizer(ft.sylow, rg).order(), ng.order().p_part(p)) << spec;
    }
  }
}

TEST(PPrimeKernel, Invariance)
{
  EXPECT_TRUE(p_prime_kernel_invariance(direct_product(symmetric_group(3), cyclic_group(3)), 3));
  EXPECT_TRUE(p_prime_kernel_invariance(symmetric_group(3), 2));
  EXPECT_TRUE(p_prime_kernel_invariance(symmetric_group(4), 2));
  for (auto &[spec, p] : fusion_cases())
    EXPECT_TRUE(p_prime_kernel_invariance(build_group(spec), p)) << spec << " p=" << p;
}

TEST(FusionTable, SylowCapIsEnforced)
{
  Limits l;
  l.sylow_subgroups = 8;
  EXPECT_THROW(fusion_table(symmetric_group(6), 2, l), cap_exceeded);
}
