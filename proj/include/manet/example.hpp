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
#pragma once

// The four-node reference network: y^2 = x^3 + 1 over F_83, Q = (38,50),
// shares in Z_83, t = 3, and four fixed founder polynomials.

#include "manet/curve.hpp"
#include "manet/gf.hpp"
#include "manet/poly.hpp"
#include "manet/simnet.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace manet::example {

constexpr std::uint64_t kPrime     = 83;
constexpr std::size_t   kThreshold = 3;

inline CurveParams params()
{
  return CurveParams::make(kPrime, 0, 1, 38, 50, kPrime);
}

inline PrimeField field()
{
  return PrimeField(kPrime);
}

inline std::vector<std::string> founders()
{
  return {"Node1", "Node2", "Node3", "Node4"};
}

/// Matrix form of c_xz + c_x (x + z) + c_xz2 (x^2 z + x z^2) + c_0.
inline SymmetricBivariatePoly founder_poly(std::int64_t c0, std::int64_t c1, std::int64_t cxz,
                                           std::int64_t cx2z)
{
  return SymmetricBivariatePoly::from_values(field(), {{c0, c1, 0}, {c1, cxz, cx2z}, {0, cx2z, 0}});
}

/// N1..N4.
inline std::vector<SymmetricBivariatePoly> founder_polys()
{
  return {founder_poly(5, 5, 8, 3), founder_poly(9, 8, 3, 5), founder_poly(6, 3, 5, 8),
          founder_poly(4, 8, 4, 2)};
}

// Expected checkpoints. Rows are lowest degree first with negative
// coefficients already reduced mod 83.

inline constexpr std::array<std::uint64_t, 4> kHashes{21, 57, 63, 31};

/// kRows[i][j] = F_i(x, h_j) as {c0, c1, c2}.
inline constexpr std::array<std::array<std::array<std::uint64_t, 3>, 4>, 4> kRows{{
    {{{27, 2, 63}, {41, 82, 5}, {71, 49, 23}, {77, 65, 10}}},
    {{{11, 35, 22}, {50, 73, 36}, {15, 39, 66}, {8, 9, 72}}},
    {{{69, 67, 2}, {11, 52, 41}, {29, 32, 6}, {16, 44, 82}}},
    {{{6, 61, 42}, {45, 11, 31}, {10, 64, 43}, {3, 62, 62}}},
}};

/// S_j(x) for each node: 46x^2 - x + 30, 30x^2 + 52x + 64, -28x^2 + 18x - 41,
/// -23x^2 + 14x + 21.
inline constexpr std::array<std::array<std::uint64_t, 3>, 4> kShareRows{{
    {30, 82, 46},
    {64, 52, 30},
    {42, 18, 55},
    {21, 14, 60},
}};

inline constexpr std::array<std::uint64_t, 4>                            kShares{30, 64, 42, 21};
inline constexpr std::uint64_t                                           kSecret = 24;
inline constexpr std::array<std::pair<std::uint64_t, std::uint64_t>, 4> kCommitments{
    {{18, 43}, {57, 41}, {68, 64}, {48, 55}}};
inline constexpr std::pair<std::uint64_t, std::uint64_t> kPublicKey{11, 81};
inline constexpr std::pair<std::uint64_t, std::uint64_t> kNode1Public{35, 31};
inline constexpr std::pair<std::uint64_t, std::uint64_t> kNode2Public{50, 70};
inline constexpr std::pair<std::uint64_t, std::uint64_t> kSharedPoint{6, 47};
inline constexpr std::uint64_t                           kSessionKey = 53;
inline constexpr char const                             *kMessage    = "hello";
inline constexpr std::array<std::uint32_t, 2>            kCiphertext{0x95c88604u, 0x1745f2d7u};

/// The implicit F = 18x^2z + 18xz^2 + 20xz + 24x + 24z + 24.
inline SymmetricBivariatePoly implicit_poly()
{
  return founder_poly(24, 24, 20, 18);
}

/// Form the network with the pinned polynomials, open a share-static session
/// Node1-Node2, send "hello", reconstruct from Node1..Node3.
inline simnet::Scenario scenario(std::uint64_t seed = 0)
{
  using simnet::Action;
  using simnet::ActionKind;
  simnet::Scenario s{params(), kThreshold, founders(), seed, {}, std::nullopt};
  s.script = {
      Action{ActionKind::form_network, {}, {}, {}, dkg::SessionMode::share_static, {}},
      Action{ActionKind::session, "Node1", "Node2", {}, dkg::SessionMode::share_static, {}},
      Action{ActionKind::send, "Node1", "Node2", {}, dkg::SessionMode::share_static, kMessage},
      Action{ActionKind::reconstruct, {}, {}, {"Node1", "Node2", "Node3"}, dkg::SessionMode::share_static, {}},
  };
  return simnet::inject_contributions(std::move(s), founder_polys());
}

}  // namespace manet::example
