//------------------------------------------------------------------------------
//
//   Copyright 2026 The manetkey Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "manet/example.hpp"
#include "manet/poly.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace {

using manet::Errc;
using manet::Point;
using manet::PrimeField;
using manet::SymmetricBivariatePoly;
using manet::UnivariatePoly;
using testutil::error_code;

PrimeField const F83(83);

std::vector<std::vector<std::int64_t>> const kN1{{5, 5, 0}, {5, 8, 3}, {0, 3, 0}};

TEST(UnivariatePolyTest, EvaluatesByHorner)
{
  auto const p = UnivariatePoly::from_values(F83, {27, 2, 63});
  EXPECT_EQ(p(F83(0)).value(), 27u);

  auto const f0z = UnivariatePoly::from_values(F83, {24, 24});  // F(0, z)
  EXPECT_EQ(f0z(F83(21)).value(), 30u);
  EXPECT_EQ(f0z(F83(57)).value(), 64u);
}

TEST(UnivariatePolyTest, TrimsTrailingZeros)
{
  auto const p = UnivariatePoly::from_values(F83, {1, 2, 0, 83});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(UnivariatePoly(F83).degree(), -1);
  EXPECT_EQ(UnivariatePoly(F83).to_string(), "0");
  EXPECT_EQ(UnivariatePoly::from_values(F83, {27, 2, 63}).to_string(), "63x^2 + 2x + 27");
  EXPECT_EQ(UnivariatePoly::from_values(F83, {30, -1, 46}).to_string(), "46x^2 + 82x + 30");
}

TEST(UnivariatePolyTest, RejectsForeignEvaluationPoint)
{
  auto const p = UnivariatePoly::from_values(F83, {1, 1});
  EXPECT_EQ(error_code([&] { (void)p(PrimeField(89)(3)); }), Errc::modulus_mismatch);
}

TEST(BivariatePolyTest, EvaluatesAtOriginAndIsSymmetric)
{
  auto const F = manet::example::implicit_poly();
  EXPECT_EQ(F(F83(0), F83(0)).value(), 24u);

  manet::Rng rng(3);
  for (int i = 0; i < 200; ++i)
  {
    auto a = F83(manet::uniform_below(rng, 83));
    auto b = F83(manet::uniform_below(rng, 83));
    ASSERT_EQ(F(a, b), F(b, a));
  }
}

TEST(BivariatePolyTest, MatchesTermSumOracle)
{
  auto const n1 = SymmetricBivariatePoly::from_values(F83, kN1);
  EXPECT_EQ(n1(F83(1), F83(1)).value(), oracle::bivariate_term_sum(kN1, 1, 1, 83));
  EXPECT_EQ(n1(F83(1), F83(1)).value(), 29u);
  for (std::uint64_t x = 0; x < 83; x += 7)
  {
    for (std::uint64_t z = 0; z < 83; z += 5)
    {
      ASSERT_EQ(n1(F83(x), F83(z)).value(), oracle::bivariate_term_sum(kN1, x, z, 83));
    }
  }
}

TEST(BivariatePolyTest, FixZ)
{
  auto const polys = manet::example::founder_polys();
  EXPECT_EQ(polys[0].fix_z(F83(21)), UnivariatePoly::from_values(F83, {27, 2, 63}));
  EXPECT_EQ(polys[1].fix_z(F83(63)), UnivariatePoly::from_values(F83, {15, 39, 66}));

  auto const F = manet::example::implicit_poly();
  EXPECT_EQ(F.fix_z(F83(0)).coefficient(0), F.constant_term());
}

TEST(BivariatePolyTest, RejectsAsymmetricMatrix)
{
  EXPECT_EQ(error_code([] { SymmetricBivariatePoly::from_values(F83, {{1, 2}, {3, 4}}); }),
            Errc::not_symmetric);
  EXPECT_EQ(error_code([] { SymmetricBivariatePoly::from_values(F83, {{1, 2}}); }), Errc::not_symmetric);
}

TEST(BivariatePolyTest, RandomIsSymmetricDeterministicAndShaped)
{
  manet::Rng a(42), b(42);
  auto const p = SymmetricBivariatePoly::random(F83, 3, a);
  auto const q = SymmetricBivariatePoly::random(F83, 3, b);
  EXPECT_EQ(p, q);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_LE(p.degree(), 2);
  for (std::size_t i = 0; i < 3; ++i)
  {
    for (std::size_t j = 0; j < 3; ++j)
    {
      EXPECT_EQ(p.coefficient(i, j), p.coefficient(j, i));
    }
  }
  EXPECT_EQ(error_code([&] { SymmetricBivariatePoly::random(F83, 0, a); }), Errc::invalid_threshold);
}

TEST(BivariatePolyTest, PartialEvaluationAgreesWithFullEvaluation)
{
  manet::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial)
  {
    auto const F  = SymmetricBivariatePoly::random(F83, 1 + trial % 5, rng);
    auto const z0 = F83(manet::uniform_below(rng, 83));
    auto const row = F.fix_z(z0);
    EXPECT_LE(row.degree(), static_cast<int>(F.size()) - 1);
    for (int k = 0; k < 10; ++k)
    {
      auto const x0 = F83(manet::uniform_below(rng, 83));
      ASSERT_EQ(row(x0), F(x0, z0));
    }
  }
}

TEST(LagrangeTest, ReferenceShares)
{
  std::vector<Point> three{{F83(21), F83(30)}, {F83(57), F83(64)}, {F83(63), F83(42)}};
  EXPECT_EQ(manet::lagrange_at_zero(three).value(), 24u);

  // F(0, z) = 24z + 24 is only linear, so two shares are enough
  std::vector<Point> two{{F83(21), F83(30)}, {F83(31), F83(21)}};
  EXPECT_EQ(manet::lagrange_at_zero(two).value(), oracle::line_intercept(21, 30, 31, 21, 83));
  EXPECT_EQ(manet::lagrange_at_zero(two).value(), 24u);

  std::vector<Point> one{{F83(9), F83(77)}};
  EXPECT_EQ(manet::lagrange_at_zero(one).value(), 77u);
}

TEST(LagrangeTest, Errors)
{
  std::vector<Point> dup{{F83(21), F83(30)}, {F83(21), F83(31)}};
  EXPECT_EQ(error_code([&] { (void)manet::lagrange_at_zero(dup); }), Errc::duplicate_abscissa);
  EXPECT_EQ(error_code([] { (void)manet::lagrange_at_zero({}); }), Errc::arity);
}

TEST(LagrangeTest, RecoversConstantTermOfRandomPolynomials)
{
  manet::Rng rng(17);
  for (PrimeField field : {PrimeField(83), PrimeField(2305843009213693951ull)})
  {
    for (int trial = 0; trial < 1000; ++trial)
    {
      std::size_t const t = 1 + manet::uniform_below(rng, 6);
      std::vector<manet::FieldElement> coeffs;
      for (std::size_t i = 0; i < t; ++i)
      {
        coeffs.push_back(field(manet::uniform_below(rng, field.modulus())));
      }
      UnivariatePoly const p(field, coeffs);

      std::vector<Point> points;
      while (points.size() < t)
      {
        auto x = field(1 + manet::uniform_below(rng, field.modulus() - 1));
        if (std::none_of(points.begin(), points.end(), [&](Point const &pt) { return pt.x == x; }))
        {
          points.push_back({x, p(x)});
        }
      }
      ASSERT_EQ(manet::lagrange_at_zero(points), coeffs[0]);
      ASSERT_EQ(manet::interpolate(points), p);
    }
  }
}

// Shamir (2, n) over Z_83: a single share is consistent with every secret,
// since for each candidate s exactly one line through (0, s) hits the share.
TEST(ShamirTest, SingleShareLeavesSecretUndetermined)
{
  for (std::uint64_t x = 1; x < 83; ++x)
  {
    for (std::uint64_t y = 0; y < 83; y += 11)
    {
      for (std::uint64_t s = 0; s < 83; ++s)
      {
        int completions = 0;
        for (std::uint64_t a1 = 0; a1 < 83; ++a1)
        {
          completions += (s + a1 * x) % 83 == y ? 1 : 0;
        }
        ASSERT_EQ(completions, 1);
      }
    }
  }
}

TEST(ShamirTest, AnyTOfNSharesReconstruct)
{
  manet::Rng rng(23);
  for (int trial = 0; trial < 200; ++trial)
  {
    std::size_t const t = 1 + manet::uniform_below(rng, 4);
    std::size_t const n = t + manet::uniform_below(rng, 4);
    auto const        secret = F83(manet::uniform_below(rng, 83));
    std::vector<manet::FieldElement> coeffs{secret};
    for (std::size_t i = 1; i < t; ++i)
    {
      coeffs.push_back(F83(manet::uniform_below(rng, 83)));
    }
    UnivariatePoly const P(F83, coeffs);
    std::vector<Point>   shares;
    for (std::uint64_t b = 1; b <= n; ++b)
    {
      shares.push_back({F83(b), P(F83(b))});
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(t), true);
    do
    {
      std::vector<Point> subset;
      for (std::size_t i = 0; i < n; ++i)
      {
        if (pick[i])
        {
          subset.push_back(shares[i]);
        }
      }
      ASSERT_EQ(manet::lagrange_at_zero(subset), secret);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
}

}  // namespace
