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

// Dealerless key distribution over a symmetric bivariate polynomial
// F(x,z) = sum_i F_i(x,z). Founder i sends row F_i(x, h_j) to every node j,
// node j sums its rows into S_j(x) = F(x, h_j) and holds the share
// s_j = S_j(0) = F(0, h_j) of the implicit secret s = F(0,0). The public key
// is PK = s * Q, obtained as the sum of the commitments Y_i = F_i(0,0) * Q.

#include "manet/curve.hpp"
#include "manet/error.hpp"
#include "manet/gf.hpp"
#include "manet/poly.hpp"
#include "manet/random.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace manet::dkg {

inline std::array<std::uint8_t, 28> sha224(std::string_view bytes)
{
  std::array<std::uint8_t, 28> digest{};
  unsigned int                 len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha224(), nullptr) != 1 ||
      len != digest.size())
  {
    throw std::runtime_error("SHA-224 digest failed");
  }
  return digest;
}

/// Hash-to-residue: SHA-224 of the label bytes read as one big-endian integer,
/// reduced mod `field`.
inline FieldElement htr(std::string_view label, PrimeField const &field)
{
  if (label.empty())
  {
    throw Error(Errc::invalid_id, "node label must not be empty");
  }
  auto const           digest = sha224(label);
  std::uint64_t const  q      = field.modulus();
  unsigned __int128    acc    = 0;
  for (auto byte : digest)
  {
    acc = ((acc << 8u) | byte) % q;
  }
  return field(static_cast<std::uint64_t>(acc));
}

struct NodeId
{
  std::string  label;
  FieldElement hash_point;

  static NodeId make(std::string label, PrimeField const &field)
  {
    auto h = htr(label, field);
    return {std::move(label), h};
  }

  friend bool operator==(NodeId const &, NodeId const &) = default;
};

/// Rejects any two ids that hash to the same point.
inline void check_distinct(std::span<NodeId const> ids)
{
  for (std::size_t i = 0; i < ids.size(); ++i)
  {
    for (std::size_t j = 0; j < i; ++j)
    {
      if (ids[i].hash_point == ids[j].hash_point)
      {
        throw Error(Errc::collision, ids[i].label + " and " + ids[j].label + " both hash to " +
                                         std::to_string(ids[i].hash_point.value()));
      }
    }
  }
}

struct Contribution
{
  NodeId                 owner;
  SymmetricBivariatePoly poly;
  CurvePoint             commitment;  // Y_i = F_i(0,0) * Q
};

/// Wraps a founder's polynomial with its commitment. Fails if the polynomial
/// lives outside the share field Z_q or exceeds degree t-1.
inline Contribution contribution_from(NodeId owner, SymmetricBivariatePoly poly, std::size_t t,
                                      CurveParams const &params)
{
  if (poly.field().modulus() != params.order)
  {
    throw Error(Errc::invalid_contribution, "polynomial of " + owner.label + " is not over Z_q");
  }
  if (poly.degree() >= static_cast<int>(t))
  {
    throw Error(Errc::invalid_contribution, "polynomial of " + owner.label + " has degree " +
                                                std::to_string(poly.degree()) + " > t-1");
  }
  auto commitment = scalar_mul(poly.constant_term().value(), params.generator);
  return {std::move(owner), std::move(poly), std::move(commitment)};
}

inline Contribution make_contribution(NodeId owner, std::size_t t, CurveParams const &params, Rng &rng)
{
  auto poly = SymmetricBivariatePoly::random(PrimeField(params.order), t, rng);
  return contribution_from(std::move(owner), std::move(poly), t, params);
}

struct ShareMessage
{
  NodeId         from;
  NodeId         to;
  UnivariatePoly row;         // F_i(x, h_to)
  CurvePoint     commitment;  // Y_i
};

/// One message per roster member, the owner included.
inline std::vector<ShareMessage> share_messages(Contribution const &c, std::span<NodeId const> roster)
{
  check_distinct(roster);
  std::vector<ShareMessage> out;
  out.reserve(roster.size());
  for (auto const &to : roster)
  {
    out.push_back({c.owner, to, c.poly.fix_z(to.hash_point), c.commitment});
  }
  return out;
}

struct NodeKeyMaterial
{
  NodeId         id;
  UnivariatePoly row;    // S_j(x) = F(x, h_j)
  FieldElement   share;  // s_j = S_j(0)
  CurvePoint     public_key;
};

/// Sums the rows addressed to `node`. Requires exactly one distinct message
/// from each of `founder_count` founders; identical re-deliveries are dropped.
inline NodeKeyMaterial aggregate(NodeId const &node, std::span<ShareMessage const> inbox,
                                 std::size_t founder_count, CurveParams const &params)
{
  PrimeField const                           field(params.order);
  std::map<std::string, ShareMessage const *> by_sender;
  for (auto const &msg : inbox)
  {
    if (msg.to != node)
    {
      throw Error(Errc::incomplete_round, "message for " + msg.to.label + " in inbox of " + node.label);
    }
    if (msg.commitment.curve() != params.curve)
    {
      throw Error(Errc::invalid_commitment, "commitment from " + msg.from.label + " is on another curve");
    }
    auto [it, inserted] = by_sender.emplace(msg.from.label, &msg);
    if (!inserted)
    {
      if (it->second->commitment != msg.commitment)
      {
        throw Error(Errc::invalid_commitment, "conflicting commitments from " + msg.from.label);
      }
      if (it->second->row != msg.row)
      {
        throw Error(Errc::incomplete_round, "conflicting rows from " + msg.from.label);
      }
    }
  }
  if (by_sender.size() != founder_count)
  {
    throw Error(Errc::incomplete_round, node.label + " holds rows from " +
                                            std::to_string(by_sender.size()) + " of " +
                                            std::to_string(founder_count) + " founders");
  }

  UnivariatePoly row(field);
  CurvePoint     pk = params.curve.infinity();
  // walk in inbox order so the sums do not depend on label ordering
  std::map<std::string, bool> seen;
  for (auto const &msg : inbox)
  {
    if (seen[msg.from.label])
    {
      continue;
    }
    seen[msg.from.label] = true;
    row += msg.row;
    pk = pk + msg.commitment;
  }
  auto share = row(field.zero());
  return {node, std::move(row), share, std::move(pk)};
}

struct ShareValue
{
  NodeId       id;
  FieldElement share;
};

/// s = F(0,0) from at least t shares.
inline FieldElement reconstruct_secret(std::span<ShareValue const> shares, std::size_t t)
{
  if (shares.size() < t || shares.empty())
  {
    throw Error(Errc::threshold_not_met, std::to_string(shares.size()) + " shares for threshold " +
                                             std::to_string(t));
  }
  std::vector<Point> points;
  points.reserve(shares.size());
  for (auto const &s : shares)
  {
    points.push_back({s.id.hash_point, s.share});
  }
  return lagrange_at_zero(points);
}

// -- admission --------------------------------------------------------------
//
// By symmetry S_i(h_new) = F(h_new, h_i) = F(h_i, h_new) = S_new(h_i), so t
// helpers each evaluating their row at h_new hand the newcomer t points of
// its own row S_new(x) = F(x, h_new).

struct AdmissionValue
{
  NodeId       helper;
  FieldElement value;  // S_helper(h_new)
  CurvePoint   public_key;
};

inline AdmissionValue admission_value(NodeKeyMaterial const &helper, NodeId const &newcomer)
{
  return {helper.id, helper.row(newcomer.hash_point), helper.public_key};
}

inline NodeKeyMaterial complete_admission(NodeId const &newcomer, std::span<AdmissionValue const> values,
                                          std::size_t t)
{
  if (values.size() < t || values.empty())
  {
    throw Error(Errc::threshold_not_met, std::to_string(values.size()) + " helpers for threshold " +
                                             std::to_string(t));
  }
  std::vector<NodeId> ids{newcomer};
  for (auto const &v : values)
  {
    ids.push_back(v.helper);
  }
  check_distinct(ids);

  std::vector<Point> points;
  for (std::size_t i = 0; i < t; ++i)
  {
    points.push_back({values[i].helper.hash_point, values[i].value});
  }
  auto row = interpolate(points);
  for (auto const &v : values)
  {
    if (row(v.helper.hash_point) != v.value)
    {
      throw Error(Errc::corrupt_helper, "value from " + v.helper.label + " disagrees with the others");
    }
    if (v.public_key != values.front().public_key)
    {
      throw Error(Errc::corrupt_helper, "helper " + v.helper.label + " reports a different public key");
    }
  }
  auto share = row(row.field().zero());
  return {newcomer, std::move(row), share, values.front().public_key};
}

inline NodeKeyMaterial admit_node(NodeId const &newcomer, std::span<NodeKeyMaterial const> helpers,
                                  std::size_t t)
{
  std::vector<AdmissionValue> values;
  values.reserve(helpers.size());
  for (auto const &h : helpers)
  {
    values.push_back(admission_value(h, newcomer));
  }
  return complete_admission(newcomer, values, t);
}

// -- pairwise sessions ------------------------------------------------------

enum class SessionMode
{
  ephemeral,     // fresh a in [1, q), publish a * Q
  share_static,  // publish s_j * Q
};

inline std::string_view to_string(SessionMode mode) noexcept
{
  return mode == SessionMode::ephemeral ? "ephemeral" : "share-static";
}

inline std::optional<SessionMode> parse_session_mode(std::string_view text) noexcept
{
  if (text == "ephemeral")
  {
    return SessionMode::ephemeral;
  }
  if (text == "share-static")
  {
    return SessionMode::share_static;
  }
  return std::nullopt;
}

/// The local half of a Diffie-Hellman exchange. `secret` never leaves the node.
struct SessionOffer
{
  std::uint64_t secret;
  CurvePoint    public_value;
};

inline SessionOffer session_offer(NodeKeyMaterial const &me, SessionMode mode, CurveParams const &params,
                                  Rng &rng)
{
  std::uint64_t secret = me.share.value();
  if (mode == SessionMode::ephemeral)
  {
    secret = 1 + uniform_below(rng, params.order - 1);
  }
  return {secret, scalar_mul(secret, params.generator)};
}

inline SessionKey complete_session(SessionOffer const &mine, CurvePoint const &peer_public)
{
  try
  {
    return ecdh_session_key(mine.secret, peer_public);
  }
  catch (Error const &e)
  {
    if (e.code() == Errc::degenerate_key)
    {
      throw Error(Errc::session_refused, e.what());
    }
    throw;
  }
}

inline SessionKey establish_session(NodeKeyMaterial const &me, CurvePoint const &peer_public,
                                    SessionMode mode, CurveParams const &params, Rng &rng)
{
  return complete_session(session_offer(me, mode, params, rng), peer_public);
}

}  // namespace manet::dkg
