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

#include "manet/error.hpp"
#include "manet/gf.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

namespace manet {

class CurvePoint;

/// Short Weierstrass curve y^2 = x^3 + ax + b over F_p.
class Curve
{
public:
  Curve(std::uint64_t p, std::uint64_t a, std::uint64_t b)
    : field_(p)
    , a_(field_(a))
    , b_(field_(b))
  {
    auto const four   = field_(4);
    auto const twenty_seven = field_(27);
    if ((four * a_.pow(3) + twenty_seven * b_.pow(2)).is_zero())
    {
      throw Error(Errc::singular_curve, "4a^3 + 27b^2 = 0 mod " + std::to_string(p));
    }
  }

  PrimeField const &field() const noexcept
  {
    return field_;
  }
  FieldElement const &a() const noexcept
  {
    return a_;
  }
  FieldElement const &b() const noexcept
  {
    return b_;
  }

  bool contains(FieldElement const &x, FieldElement const &y) const
  {
    return y * y == x.pow(3) + a_ * x + b_;
  }

  /// Validated affine point; coordinates are reduced mod p first.
  CurvePoint point(std::uint64_t x, std::uint64_t y) const;
  CurvePoint infinity() const noexcept;

  friend bool operator==(Curve const &, Curve const &) = default;

private:
  PrimeField   field_;
  FieldElement a_;
  FieldElement b_;
};

/// Either the point at infinity or an affine point known to lie on its curve.
class CurvePoint
{
public:
  struct Affine
  {
    FieldElement x;
    FieldElement y;
    friend bool  operator==(Affine const &, Affine const &) = default;
  };

  Curve const &curve() const noexcept
  {
    return curve_;
  }

  bool is_infinity() const noexcept
  {
    return !coords_.has_value();
  }

  /// Throws on the point at infinity.
  Affine const &affine() const
  {
    if (!coords_)
    {
      throw Error(Errc::invalid_point, "point at infinity has no affine coordinates");
    }
    return *coords_;
  }

  std::uint64_t x() const
  {
    return affine().x.value();
  }
  std::uint64_t y() const
  {
    return affine().y.value();
  }

  CurvePoint operator-() const
  {
    if (!coords_)
    {
      return *this;
    }
    return CurvePoint(curve_, Affine{coords_->x, -coords_->y});
  }

  friend CurvePoint operator+(CurvePoint const &lhs, CurvePoint const &rhs);

  friend bool operator==(CurvePoint const &, CurvePoint const &) = default;

  /// "(x,y)" or "INF".
  std::string to_string() const
  {
    if (!coords_)
    {
      return "INF";
    }
    return "(" + std::to_string(coords_->x.value()) + "," + std::to_string(coords_->y.value()) + ")";
  }

  friend std::ostream &operator<<(std::ostream &os, CurvePoint const &p)
  {
    return os << p.to_string();
  }

private:
  friend class Curve;

  CurvePoint(Curve curve, std::optional<Affine> coords)
    : curve_(std::move(curve))
    , coords_(std::move(coords))
  {}

  Curve                 curve_;
  std::optional<Affine> coords_;
};

inline CurvePoint Curve::point(std::uint64_t x, std::uint64_t y) const
{
  auto const fx = field_(x);
  auto const fy = field_(y);
  if (!contains(fx, fy))
  {
    throw Error(Errc::invalid_point, "(" + std::to_string(fx.value()) + "," +
                                         std::to_string(fy.value()) + ") is not on the curve");
  }
  return CurvePoint(*this, CurvePoint::Affine{fx, fy});
}

inline CurvePoint Curve::infinity() const noexcept
{
  return CurvePoint(*this, std::nullopt);
}

/// Affine chord-and-tangent addition.
inline CurvePoint operator+(CurvePoint const &lhs, CurvePoint const &rhs)
{
  if (lhs.curve_ != rhs.curve_)
  {
    throw Error(Errc::params_mismatch, "adding points from different curves");
  }
  if (!lhs.coords_)
  {
    return rhs;
  }
  if (!rhs.coords_)
  {
    return lhs;
  }
  auto const &[x1, y1] = *lhs.coords_;
  auto const &[x2, y2] = *rhs.coords_;
  auto const &field    = lhs.curve_.field();

  FieldElement slope = field.zero();
  if (x1 == x2)
  {
    if ((y1 + y2).is_zero())
    {
      return lhs.curve_.infinity();
    }
    // doubling; y1 != 0 here since y1 == y2 and y1 + y2 != 0
    slope = (field(3) * x1 * x1 + lhs.curve_.a()) / (field(2) * y1);
  }
  else
  {
    slope = (y2 - y1) / (x2 - x1);
  }
  auto const x3 = slope * slope - x1 - x2;
  auto const y3 = slope * (x1 - x3) - y1;
  return CurvePoint(lhs.curve_, CurvePoint::Affine{x3, y3});
}

inline CurvePoint point_add(CurvePoint const &lhs, CurvePoint const &rhs)
{
  return lhs + rhs;
}

/// k * P by left-to-right double-and-add. The scalar is a plain integer and is
/// never reduced by any group order.
inline CurvePoint scalar_mul(std::uint64_t k, CurvePoint const &point)
{
  CurvePoint acc = point.curve().infinity();
  for (int bit = 63; bit >= 0; --bit)
  {
    acc = acc + acc;
    if ((k >> bit) & 1u)
    {
      acc = acc + point;
    }
  }
  return acc;
}

/// Smallest k >= 1 with k * P = INF, found by repeated addition. Only meant for
/// desk-scale curves; gives up after `max_iterations` steps.
inline std::uint64_t point_order(CurvePoint const &point, std::uint64_t max_iterations = 1u << 24u)
{
  std::uint64_t order = 1;
  CurvePoint    acc   = point;
  while (!acc.is_infinity())
  {
    if (order >= max_iterations)
    {
      throw Error(Errc::order_not_found,
                  "no order found within " + std::to_string(max_iterations) + " additions");
    }
    acc = acc + point;
    ++order;
  }
  return order;
}

/// Public group description: the curve, the generator Q, and the order q of
/// the group it generates as supplied by the caller.
struct CurveParams
{
  Curve         curve;
  CurvePoint    generator;
  std::uint64_t order;

  static CurveParams make(std::uint64_t p, std::uint64_t a, std::uint64_t b, std::uint64_t qx,
                          std::uint64_t qy, std::uint64_t order)
  {
    Curve curve(p, a, b);
    auto  generator = curve.point(qx, qy);
    return {curve, generator, order};
  }

  friend bool operator==(CurveParams const &, CurveParams const &) = default;
};

struct SessionKey
{
  CurvePoint    shared_point;
  std::uint64_t sk;
};

/// R = my_secret * their_public and sk = (R_x + R_y) mod p. A shared point at
/// infinity has no coordinates to derive from and is refused.
inline SessionKey ecdh_session_key(std::uint64_t my_secret, CurvePoint const &their_public)
{
  if (their_public.is_infinity())
  {
    throw Error(Errc::degenerate_key, "peer public value is the point at infinity");
  }
  auto shared = scalar_mul(my_secret, their_public);
  if (shared.is_infinity())
  {
    throw Error(Errc::degenerate_key, "shared point is the point at infinity");
  }
  auto const &r = shared.affine();
  return {shared, (r.x + r.y).value()};
}

}  // namespace manet
