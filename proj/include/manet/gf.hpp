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

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

namespace manet {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept
{
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept
{
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0)
  {
    if (exp & 1u)
    {
      result = mul_mod(result, base, m);
    }
    base = mul_mod(base, base, m);
    exp >>= 1u;
  }
  return result;
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for all
/// 64-bit inputs.
inline bool is_prime(std::uint64_t n) noexcept
{
  if (n < 2)
  {
    return false;
  }
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : bases)
  {
    if (n % b == 0)
    {
      return n == b;
    }
  }
  std::uint64_t d = n - 1;
  unsigned     s = 0;
  while ((d & 1u) == 0)
  {
    d >>= 1u;
    ++s;
  }
  for (auto b : bases)
  {
    std::uint64_t x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1)
    {
      continue;
    }
    bool composite = true;
    for (unsigned r = 1; r < s; ++r)
    {
      x = mul_mod(x, x, n);
      if (x == n - 1)
      {
        composite = false;
        break;
      }
    }
    if (composite)
    {
      return false;
    }
  }
  return true;
}

}  // namespace detail

class FieldElement;

/// Handle on the prime field Z_q. Primality is checked once, at construction;
/// copies are cheap and compare equal iff the moduli agree.
class PrimeField
{
public:
  explicit PrimeField(std::uint64_t modulus)
    : modulus_(modulus)
  {
    if (modulus >= (std::uint64_t{1} << 63u))
    {
      throw Error(Errc::invalid_params, "modulus must be below 2^63");
    }
    if (!detail::is_prime(modulus))
    {
      throw Error(Errc::not_prime, std::to_string(modulus) + " is not prime");
    }
  }

  std::uint64_t modulus() const noexcept
  {
    return modulus_;
  }

  FieldElement operator()(std::uint64_t value) const noexcept;
  FieldElement from_signed(std::int64_t value) const noexcept;
  FieldElement zero() const noexcept;
  FieldElement one() const noexcept;

  friend bool operator==(PrimeField const &, PrimeField const &) = default;

private:
  std::uint64_t modulus_;
};

/// A canonical residue in [0, q).
class FieldElement
{
public:
  FieldElement(PrimeField field, std::uint64_t value) noexcept
    : field_(field)
    , value_(value % field.modulus())
  {}

  std::uint64_t value() const noexcept
  {
    return value_;
  }

  PrimeField const &field() const noexcept
  {
    return field_;
  }

  bool is_zero() const noexcept
  {
    return value_ == 0;
  }

  FieldElement &operator+=(FieldElement const &other)
  {
    check(other);
    std::uint64_t const q = field_.modulus();
    // value_ < q and other < q, so the sum is below 2q and fits for q < 2^63
    value_ = (value_ >= q - other.value_) ? value_ - (q - other.value_) : value_ + other.value_;
    return *this;
  }

  FieldElement &operator-=(FieldElement const &other)
  {
    check(other);
    value_ = (value_ >= other.value_) ? value_ - other.value_
                                      : field_.modulus() - (other.value_ - value_);
    return *this;
  }

  FieldElement &operator*=(FieldElement const &other)
  {
    check(other);
    value_ = detail::mul_mod(value_, other.value_, field_.modulus());
    return *this;
  }

  FieldElement operator-() const noexcept
  {
    return FieldElement(field_, value_ == 0 ? 0 : field_.modulus() - value_);
  }

  /// Multiplicative inverse by the extended Euclidean algorithm.
  FieldElement inverse() const
  {
    if (value_ == 0)
    {
      throw Error(Errc::division_by_zero, "zero has no inverse");
    }
    __int128 r0 = field_.modulus(), r1 = value_;
    __int128 t0 = 0, t1 = 1;
    while (r1 != 0)
    {
      __int128 const quot = r0 / r1;
      __int128 const r2   = r0 - quot * r1;
      __int128 const t2   = t0 - quot * t1;
      r0                  = r1;
      r1                  = r2;
      t0                  = t1;
      t1                  = t2;
    }
    if (t0 < 0)
    {
      t0 += field_.modulus();
    }
    return FieldElement(field_, static_cast<std::uint64_t>(t0));
  }

  FieldElement &operator/=(FieldElement const &other)
  {
    return *this *= other.inverse();
  }

  FieldElement pow(std::uint64_t exponent) const noexcept
  {
    return FieldElement(field_, detail::pow_mod(value_, exponent, field_.modulus()));
  }

  friend FieldElement operator+(FieldElement a, FieldElement const &b)
  {
    return a += b;
  }
  friend FieldElement operator-(FieldElement a, FieldElement const &b)
  {
    return a -= b;
  }
  friend FieldElement operator*(FieldElement a, FieldElement const &b)
  {
    return a *= b;
  }
  friend FieldElement operator/(FieldElement a, FieldElement const &b)
  {
    return a /= b;
  }

  friend bool operator==(FieldElement const &a, FieldElement const &b) noexcept
  {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream &operator<<(std::ostream &os, FieldElement const &e)
  {
    return os << e.value_;
  }

private:
  void check(FieldElement const &other) const
  {
    if (field_ != other.field_)
    {
      throw Error(Errc::modulus_mismatch, "operands in Z_" + std::to_string(field_.modulus()) +
                                              " and Z_" + std::to_string(other.field_.modulus()));
    }
  }

  PrimeField    field_;
  std::uint64_t value_;
};

inline FieldElement PrimeField::operator()(std::uint64_t value) const noexcept
{
  return FieldElement(*this, value);
}

inline FieldElement PrimeField::from_signed(std::int64_t value) const noexcept
{
  auto const q = static_cast<std::int64_t>(modulus_);
  auto       r = value % q;
  if (r < 0)
  {
    r += q;
  }
  return FieldElement(*this, static_cast<std::uint64_t>(r));
}

inline FieldElement PrimeField::zero() const noexcept
{
  return FieldElement(*this, 0);
}

inline FieldElement PrimeField::one() const noexcept
{
  return FieldElement(*this, 1);
}

inline FieldElement inv(FieldElement const &a)
{
  return a.inverse();
}

}  // namespace manet
