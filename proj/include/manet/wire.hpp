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

// Canonical JSON forms. Field elements are decimal strings, polynomials are
// arrays of them lowest degree first, points are "(x,y)" or "INF", and curve
// parameters are {p, a, b, Qx, Qy, q}.

#include "manet/curve.hpp"
#include "manet/dkg.hpp"
#include "manet/error.hpp"
#include "manet/gf.hpp"
#include "manet/poly.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

namespace manet::wire {

using json = nlohmann::json;

inline std::uint64_t parse_u64(std::string_view text)
{
  std::uint64_t value = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
  {
    throw Error(Errc::parse, "not a decimal integer: '" + std::string(text) + "'");
  }
  return value;
}

/// Accepts a JSON number or a decimal string.
inline std::uint64_t u64_from(json const &j)
{
  if (j.is_number_unsigned())
  {
    return j.get<std::uint64_t>();
  }
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
  {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  if (j.is_string())
  {
    return parse_u64(j.get<std::string>());
  }
  throw Error(Errc::parse, "expected a nonnegative integer, got " + j.dump());
}

inline json to_json(FieldElement const &e)
{
  return std::to_string(e.value());
}

inline json to_json(UnivariatePoly const &p)
{
  json out = json::array();
  for (auto const &c : p.coefficients())
  {
    out.push_back(to_json(c));
  }
  return out;
}

inline UnivariatePoly poly_from_json(json const &j, PrimeField const &field)
{
  if (!j.is_array())
  {
    throw Error(Errc::parse, "polynomial must be an array of coefficients");
  }
  std::vector<FieldElement> coeffs;
  for (auto const &c : j)
  {
    auto const v = u64_from(c);
    if (v >= field.modulus())
    {
      throw Error(Errc::parse, "coefficient " + std::to_string(v) + " is not reduced");
    }
    coeffs.push_back(field(v));
  }
  return {field, std::move(coeffs)};
}

inline json to_json(SymmetricBivariatePoly const &p)
{
  json out = json::array();
  for (auto const &row : p.coefficients())
  {
    json r = json::array();
    for (auto const &c : row)
    {
      r.push_back(to_json(c));
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Matrix entries may be signed integers; they are reduced into the field.
inline SymmetricBivariatePoly bivariate_from_json(json const &j, PrimeField const &field)
{
  if (!j.is_array())
  {
    throw Error(Errc::parse, "bivariate polynomial must be a matrix");
  }
  SymmetricBivariatePoly::Matrix m;
  for (auto const &row : j)
  {
    if (!row.is_array())
    {
      throw Error(Errc::parse, "bivariate polynomial must be a matrix");
    }
    auto &out = m.emplace_back();
    for (auto const &c : row)
    {
      if (c.is_number_integer())
      {
        out.push_back(field.from_signed(c.get<std::int64_t>()));
      }
      else
      {
        out.push_back(field(u64_from(c)));
      }
    }
  }
  return {field, std::move(m)};
}

inline json to_json(CurvePoint const &p)
{
  return p.to_string();
}

inline CurvePoint point_from_string(std::string_view text, Curve const &curve)
{
  if (text == "INF")
  {
    return curve.infinity();
  }
  if (text.size() < 5 || text.front() != '(' || text.back() != ')')
  {
    throw Error(Errc::parse, "point must be \"(x,y)\" or \"INF\": '" + std::string(text) + "'");
  }
  auto const inner = text.substr(1, text.size() - 2);
  auto const comma = inner.find(',');
  if (comma == std::string_view::npos)
  {
    throw Error(Errc::parse, "point must be \"(x,y)\" or \"INF\": '" + std::string(text) + "'");
  }
  auto const x = parse_u64(inner.substr(0, comma));
  auto const y = parse_u64(inner.substr(comma + 1));
  if (x >= curve.field().modulus() || y >= curve.field().modulus())
  {
    throw Error(Errc::invalid_point, "coordinates of " + std::string(text) + " are not reduced");
  }
  return curve.point(x, y);
}

inline CurvePoint point_from_json(json const &j, Curve const &curve)
{
  if (!j.is_string())
  {
    throw Error(Errc::parse, "point must be a string");
  }
  return point_from_string(j.get<std::string>(), curve);
}

inline json to_json(CurveParams const &params)
{
  auto const &c = params.curve;
  return json{{"p", c.field().modulus()},          {"a", c.a().value()},
              {"b", c.b().value()},                {"Qx", params.generator.x()},
              {"Qy", params.generator.y()},        {"q", params.order}};
}

inline CurveParams params_from_json(json const &j)
{
  for (auto const *key : {"p", "a", "b", "Qx", "Qy", "q"})
  {
    if (!j.contains(key))
    {
      throw Error(Errc::parse, std::string("curve parameters lack '") + key + "'");
    }
  }
  return CurveParams::make(u64_from(j["p"]), u64_from(j["a"]), u64_from(j["b"]), u64_from(j["Qx"]),
                           u64_from(j["Qy"]), u64_from(j["q"]));
}

/// {type, from, to, payload}
inline json envelope(std::string_view type, std::string_view from, std::string_view to, json payload)
{
  return json{{"type", type}, {"from", from}, {"to", to}, {"payload", std::move(payload)}};
}

inline json to_json(dkg::ShareMessage const &m)
{
  return envelope("share", m.from.label, m.to.label,
                  json{{"row", to_json(m.row)}, {"commitment", to_json(m.commitment)}});
}

inline dkg::ShareMessage share_from_json(json const &j, PrimeField const &field, Curve const &curve)
{
  if (j.value("type", "") != "share")
  {
    throw Error(Errc::parse, "not a share message");
  }
  auto const &payload = j.at("payload");
  return {dkg::NodeId::make(j.at("from").get<std::string>(), field),
          dkg::NodeId::make(j.at("to").get<std::string>(), field), poly_from_json(payload.at("row"), field),
          point_from_json(payload.at("commitment"), curve)};
}

}  // namespace manet::wire
