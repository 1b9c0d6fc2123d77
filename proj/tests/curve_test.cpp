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

#include "manet/curve.hpp"
#include "manet/example.hpp"
#include "manet/random.hpp"
#include "manet/wire.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

namespace {

using manet::Curve;
using manet::CurvePoint;
using manet::Errc;
using testutil::error_code;

Curve const       kCurve(83, 0, 1);
oracle::Ec const  kOracle{83, 0, 1};
CurvePoint const  Q = kCurve.point(38, 50);

oracle::Pt to_oracle(CurvePoint const &p)
{
  if (p.is_infinity())
  {
    return std::nullopt;
  }
  return std::make_pair(p.x(), p.y());
}

TEST(CurveTest, ValidatesPoints)
{
  EXPECT_NO_THROW(kCurve.point(38, 50));
  EXPECT_NO_THROW(kCurve.point(11, 81));
  EXPECT_FALSE(kOracle.on_curve(0, 5));
  EXPECT_EQ(error_code([] { (void)kCurve.point(0, 5); }), Errc::invalid_point);
  EXPECT_EQ(error_code([] { Curve c(83, 0, 0); }), Errc::singular_curve);
}

TEST(CurveTest, AddHandlesIdentityAndInverse)
{
  EXPECT_EQ(Q + kCurve.infinity(), Q);
  EXPECT_EQ(kCurve.infinity() + Q, Q);
  EXPECT_TRUE((Q + kCurve.point(38, 83 - 50)).is_infinity());
  EXPECT_TRUE((Q + (-Q)).is_infinity());
}

TEST(CurveTest, CommitmentSumIsPublicKey)
{
  auto const sum = kCurve.point(18, 43) + kCurve.point(57, 41) + kCurve.point(68, 64) + kCurve.point(48, 55);
  EXPECT_EQ(sum, kCurve.point(11, 81));
}

TEST(CurveTest, RejectsMixedCurves)
{
  Curve const other(89, 0, 1);
  auto const  p = other.point(0, 1);
  EXPECT_EQ(error_code([&] { (void)(Q + p); }), Errc::params_mismatch);
}

TEST(CurveTest, ScalarMulReferenceValues)
{
  EXPECT_EQ(manet::scalar_mul(24, Q), kCurve.point(11, 81));
  EXPECT_EQ(manet::scalar_mul(5, Q), kCurve.point(18, 43));
  EXPECT_EQ(manet::scalar_mul(30, kCurve.point(50, 70)), kCurve.point(6, 47));
  EXPECT_TRUE(manet::scalar_mul(0, Q).is_infinity());
}

TEST(CurveTest, ScalarMulMatchesRepeatedAddition)
{
  CurvePoint acc = kCurve.infinity();
  for (std::uint64_t k = 0; k <= 200; ++k)
  {
    ASSERT_EQ(manet::scalar_mul(k, Q), acc) << k;
    ASSERT_EQ(to_oracle(manet::scalar_mul(k, Q)), kOracle.repeat(k, to_oracle(Q))) << k;
    acc = acc + Q;
  }
}

TEST(CurveTest, PointOrder)
{
  EXPECT_EQ(manet::point_order(kCurve.infinity()), 1u);
  // y^2 = x^3 + 1 over F_83 has 84 points and Q generates all of them
  EXPECT_EQ(kOracle.group_size(), 84u);
  EXPECT_EQ(manet::point_order(Q), 84u);
  EXPECT_EQ(error_code([] { (void)manet::point_order(Q, 10); }), Errc::order_not_found);
}

TEST(CurveTest, PointOrderDividesGroupOrder)
{
  oracle::Ec const ec{97, 2, 3};
  Curve const      curve(97, 2, 3);
  auto const       n = ec.group_size();
  for (std::uint64_t x = 0; x < 97; ++x)
  {
    for (std::uint64_t y = 0; y < 97; ++y)
    {
      if (ec.on_curve(x, y))
      {
        auto const order = manet::point_order(curve.point(x, y));
        ASSERT_EQ(n % order, 0u);
        ASSERT_EQ(ec.repeat(order, std::make_pair(x, y)), std::nullopt);
      }
    }
  }
}

TEST(CurveTest, GroupLaws)
{
  manet::Rng rng(9);
  for (int i = 0; i < 1000; ++i)
  {
    auto const m = manet::uniform_below(rng, 1000);
    auto const n = manet::uniform_below(rng, 1000);
    auto const l = manet::uniform_below(rng, 1000);
    auto const P = manet::scalar_mul(m, Q);
    auto const R = manet::scalar_mul(n, Q);
    auto const S = manet::scalar_mul(l, Q);
    ASSERT_EQ(manet::scalar_mul(m + n, Q), P + R);
    ASSERT_EQ(P + R, R + P);
    ASSERT_EQ((P + R) + S, P + (R + S));
    ASSERT_EQ(manet::scalar_mul(m, R), manet::scalar_mul(n, P));
    for (auto const &pt : {P + R, manet::scalar_mul(m, R)})
    {
      if (!pt.is_infinity())
      {
        ASSERT_TRUE(kOracle.on_curve(pt.x(), pt.y()));
      }
    }
  }
}

TEST(EcdhTest, ReferenceSessionKey)
{
  auto const a = manet::ecdh_session_key(30, kCurve.point(50, 70));
  EXPECT_EQ(a.shared_point, kCurve.point(6, 47));
  EXPECT_EQ(a.sk, 53u);
  auto const b = manet::ecdh_session_key(64, kCurve.point(35, 31));
  EXPECT_EQ(b.shared_point, kCurve.point(6, 47));
  EXPECT_EQ(b.sk, 53u);
}

TEST(EcdhTest, SessionKeyIsReducedModP)
{
  manet::Rng rng(4);
  for (int i = 0; i < 200; ++i)
  {
    auto const k = 1 + manet::uniform_below(rng, 83);
    if (manet::scalar_mul(k, Q).is_infinity())
    {
      continue;
    }
    auto const key = manet::ecdh_session_key(k, Q);
    ASSERT_EQ(key.sk, (key.shared_point.x() + key.shared_point.y()) % 83);
  }
}

TEST(EcdhTest, RefusesDegenerateSharedPoint)
{
  EXPECT_EQ(error_code([] { (void)manet::ecdh_session_key(84, Q); }), Errc::degenerate_key);
  EXPECT_EQ(error_code([] { (void)manet::ecdh_session_key(3, kCurve.infinity()); }), Errc::degenerate_key);
}

TEST(CurveWireTest, PointAndParamsRoundTrip)
{
  EXPECT_EQ(Q.to_string(), "(38,50)");
  EXPECT_EQ(kCurve.infinity().to_string(), "INF");
  EXPECT_EQ(manet::wire::point_from_string("(11,81)", kCurve), kCurve.point(11, 81));
  EXPECT_TRUE(manet::wire::point_from_string("INF", kCurve).is_infinity());
  EXPECT_EQ(error_code([] { (void)manet::wire::point_from_string("(0,5)", kCurve); }), Errc::invalid_point);
  EXPECT_EQ(error_code([] { (void)manet::wire::point_from_string("11,81", kCurve); }), Errc::parse);

  auto const params = manet::example::params();
  auto const j      = manet::wire::to_json(params);
  EXPECT_EQ(j.dump(), R"({"Qx":38,"Qy":50,"a":0,"b":1,"p":83,"q":83})");
  EXPECT_EQ(manet::wire::params_from_json(j), params);
}

}  // namespace
