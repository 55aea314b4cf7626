#include <gtest/gtest.h>

#include "profin/constructions.hpp"
#include "profin/tower.hpp"

using namespace profin;

namespace
{

std::vector<std::uint64_t> orders(const Tower &t)
{
  std::vector<std::uint64_t> o;
  for (auto &g : t.levels)
    o.push_back(g.size());
  return o;
}

// p^s for the largest s with p^s <= min(n, p^k)
std::uint64_t expected_cyclic_ob(std::uint64_t p, unsigned k, std::uint64_t n)
{
  std::uint64_t q = 1;
  for (unsigned s = 0; s < k && q * p <= n; ++s)
    q *= p;
  return q;
}

void check_maps(const Tower &t)
{
  ASSERT_EQ(t.maps.size() + 1, t.depth());
  for (std::size_t i = 0; i + 1 < t.depth(); ++i) {
    const auto &m = t.maps[i];
    EXPECT_EQ(m.domain(), t.levels[i + 1]);
    EXPECT_EQ(m.codomain(), t.levels[i]);
    EXPECT_TRUE(m.is_surjective());
    EXPECT_EQ(m.kernel().order() * m.image_order(), m.domain().order());
  }
  // composites agree with stepwise evaluation
  for (std::size_t i = 0; i < t.depth(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      auto h = t.projection(i, j);
      for (auto &x : t.levels[i].generators()) {
        Permutation y = x;
        for (std::size_t l = i; l > j; --l)
          y = t.maps[l - 1](y);
        EXPECT_EQ(h(x), y);
      }
    }
}

} // namespace

TEST(CyclicTower, Orders)
{
  EXPECT_EQ(orders(cyclic_tower(2, 3)), (std::vector<std::uint64_t>{2, 4, 8}));
  EXPECT_EQ(orders(cyclic_tower(3, 2)), (std::vector<std::uint64_t>{3, 9}));
  check_maps(cyclic_tower(2, 5));
  check_maps(cyclic_tower(5, 3));
}

TEST(CyclicTower, RejectsBadParameters)
{
  EXPECT_THROW(cyclic_tower(4, 3), invalid_input);
  EXPECT_THROW(cyclic_tower(2, 0), invalid_input);
  EXPECT_THROW(cyclic_tower(2, 13), cap_exceeded);
}

TEST(WreathTower, OrdersFollowLegendre)
{
  EXPECT_EQ(orders(wreath_tower(2, 3)), (std::vector<std::uint64_t>{2, 8, 128}));
  EXPECT_EQ(orders(wreath_tower(3, 2)), (std::vector<std::uint64_t>{3, 81}));
  for (std::uint64_t p : {2, 3, 5}) {
    auto t = wreath_tower(p, p == 2 ? 5 : 3);
    check_maps(t);
    for (std::size_t k = 1; k <= t.depth(); ++k) {
      std::uint64_t n = ipow(p, static_cast<unsigned>(k));
      GroupOrder expected(1);
      for (unsigned e = legendre(n, p); e > 0; --e)
        expected *= GroupOrder(p);
      EXPECT_EQ(t.levels[k - 1].order(), expected);
      EXPECT_EQ(t.levels[k - 1].degree(), n);
    }
  }
}

TEST(WreathTower, LevelsAreSylowSubgroupsOfSymmetricGroups)
{
  auto t = wreath_tower(2, 3);
  auto s8 = symmetric_group(8);
  auto s = sylow(s8, 2);
  auto c = conjugating_element(s8, s, t.levels[2]);
  ASSERT_TRUE(c.has_value());
  for (auto &x : s.generators())
    EXPECT_TRUE(t.levels[2].contains(x.conjugate(*c)));
}

TEST(FittingDegenerateTower, Orders)
{
  auto t2 = fitting_degenerate_tower({2, 3}, 2);
  EXPECT_EQ(orders(t2), (std::vector<std::uint64_t>{2, 18}));
  EXPECT_EQ(fitting(t2.levels[1]).size(), 9u);
  check_maps(t2);
  auto t3 = fitting_degenerate_tower({2, 3, 2}, 3);
  EXPECT_EQ(t3.levels[2].size(), 9216u);
  EXPECT_EQ(t3.levels[2].degree(), 512u);
  EXPECT_EQ(fitting(t3.levels[2]).size(), 512u);
  check_maps(t3);
}

TEST(FittingDegenerateTower, CoresAreFaithful)
{
  std::vector<std::uint64_t> primes{2, 3, 2};
  auto t = fitting_degenerate_tower(primes, 3);
  for (std::size_t i = 1; i < t.depth(); ++i) {
    NormalLattice lat(t.levels[i], {});
    auto v = pi_core(lat, {primes[i]});
    EXPECT_EQ(v.order(), GroupOrder(ipow(primes[i], static_cast<unsigned>(t.levels[i - 1].degree()))));
    EXPECT_EQ(v, t.maps[i - 1].kernel());
    EXPECT_TRUE(pi_core(lat, {primes[i - 1]}).is_trivial());
  }
}

TEST(FittingDegenerateTower, RejectsBadParameters)
{
  EXPECT_THROW(fitting_degenerate_tower({2, 2}, 2), invalid_input);
  EXPECT_THROW(fitting_degenerate_tower({2, 3}, 3), invalid_input);
  EXPECT_THROW(fitting_degenerate_tower({2, 3, 2, 3, 2}, 5), invalid_input);
  EXPECT_THROW(fitting_degenerate_tower({2, 3, 2, 3}, 4), cap_exceeded);
}

TEST(ObSequence, CyclicTowerMatchesPowerFormula)
{
  auto a = tower_ob_sequence(cyclic_tower(2, 6), 5, true);
  EXPECT_EQ(a.values, (std::vector<std::uint64_t>{2, 4, 4, 4, 4, 4}));
  EXPECT_EQ(a.star, a.values);
  EXPECT_TRUE(a.stable);
  auto b = tower_ob_sequence(cyclic_tower(3, 4), 10);
  EXPECT_EQ(b.values.back(), 9u);
  EXPECT_TRUE(b.stable);
  for (std::uint64_t p : {2, 3, 5}) {
    unsigned depth = p == 2 ? 5 : 3;
    auto t = cyclic_tower(p, depth);
    for (std::uint64_t n = 1; n <= 30; ++n) {
      auto s = tower_ob_sequence(t, n);
      for (unsigned k = 1; k <= depth; ++k)
        EXPECT_EQ(s.values[k - 1], expected_cyclic_ob(p, k, n)) << p << " " << k << " " << n;
    }
  }
}

TEST(ObSequence, TrivialAtOneAndMonotoneAlongTowers)
{
  std::vector<Tower> towers{cyclic_tower(2, 4), wreath_tower(2, 3), wreath_tower(3, 2),
                            fitting_degenerate_tower({2, 3}, 2), fitting_degenerate_tower({3, 2}, 2)};
  for (auto &t : towers) {
    auto one = tower_ob_sequence(t, 1, true);
    for (auto v : one.values)
      EXPECT_EQ(v, 1u);
    for (std::uint64_t n = 1; n <= 10; ++n) {
      auto s = tower_ob_sequence(t, n);
      for (std::size_t i = 1; i < s.values.size(); ++i)
        EXPECT_GE(s.values[i], s.values[i - 1]) << t.family << " n=" << n;
    }
  }
}

TEST(ObSequence, ObliqueCoresMapIntoLowerLevels)
{
  std::vector<Tower> towers{cyclic_tower(3, 3), wreath_tower(2, 3), fitting_degenerate_tower({2, 3}, 2)};
  for (auto &t : towers)
    for (std::size_t i = 0; i + 1 < t.depth(); ++i) {
      NormalLattice upper(t.levels[i + 1], {}), lower(t.levels[i], {});
      for (std::uint64_t n = 1; n <= 8; ++n) {
        auto oi = oblique_core(upper, intersection_of_small_normals(upper, n));
        auto ol = oblique_core(lower, intersection_of_small_normals(lower, n));
        EXPECT_TRUE(ol.contains(t.maps[i].image(oi))) << t.family << " n=" << n;
      }
    }
}

TEST(FittingSequence, Values)
{
  EXPECT_EQ(tower_fitting_sequence(fitting_degenerate_tower({2, 3, 2}, 3)),
            (std::vector<std::uint64_t>{1, 2, 18}));
  for (auto &t : {cyclic_tower(2, 4), cyclic_tower(3, 3)})
    for (auto v : tower_fitting_sequence(t))
      EXPECT_EQ(v, 1u);
  for (auto &t : {wreath_tower(2, 3), wreath_tower(3, 2)})
    for (auto v : tower_fitting_sequence(t))
      EXPECT_EQ(v, 1u);
}

TEST(JiCertificate, Values)
{
  auto t = cyclic_tower(2, 5);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> eta;
  for (std::uint64_t n = 1; n <= 16; ++n)
    eta.emplace_back(n, n);
  for (bool b : ji_certificate(t, eta))
    EXPECT_TRUE(b);
  EXPECT_EQ(ji_certificate(t, {{5, 2}}), (std::vector<bool>{true, false, false, false, false}));
  for (bool b : ji_certificate(t, {}))
    EXPECT_TRUE(b);
}
