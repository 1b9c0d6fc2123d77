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
#include "manet/random.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace manet {

/// Polynomial in one variable over Z_q, coefficients lowest degree first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class UnivariatePoly
{
public:
  explicit UnivariatePoly(PrimeField field)
    : field_(field)
  {}

  UnivariatePoly(PrimeField field, std::vector<FieldElement> coeffs)
    : field_(field)
    , coeffs_(std::move(coeffs))
  {
    for (auto const &c : coeffs_)
    {
      if (c.field() != field_)
      {
        throw Error(Errc::modulus_mismatch, "coefficient outside the polynomial's field");
      }
    }
    trim();
  }

  static UnivariatePoly from_values(PrimeField field, std::vector<std::int64_t> const &values)
  {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(values.size());
    for (auto v : values)
    {
      coeffs.push_back(field.from_signed(v));
    }
    return UnivariatePoly(field, std::move(coeffs));
  }

  PrimeField const &field() const noexcept
  {
    return field_;
  }

  std::vector<FieldElement> const &coefficients() const noexcept
  {
    return coeffs_;
  }

  /// Coefficient of x^power; zero past the stored length.
  FieldElement coefficient(std::size_t power) const
  {
    return power < coeffs_.size() ? coeffs_[power] : field_.zero();
  }

  /// Degree, with -1 for the zero polynomial.
  int degree() const noexcept
  {
    return static_cast<int>(coeffs_.size()) - 1;
  }

  FieldElement operator()(FieldElement const &x) const
  {
    if (x.field() != field_)
    {
      throw Error(Errc::modulus_mismatch, "evaluation point outside the polynomial's field");
    }
    FieldElement acc = field_.zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    {
      acc = acc * x + *it;
    }
    return acc;
  }

  UnivariatePoly &operator+=(UnivariatePoly const &other)
  {
    if (other.field_ != field_)
    {
      throw Error(Errc::modulus_mismatch, "adding polynomials over different fields");
    }
    if (other.coeffs_.size() > coeffs_.size())
    {
      coeffs_.resize(other.coeffs_.size(), field_.zero());
    }
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    {
      coeffs_[i] += other.coeffs_[i];
    }
    trim();
    return *this;
  }

  friend UnivariatePoly operator+(UnivariatePoly a, UnivariatePoly const &b)
  {
    return a += b;
  }

  friend bool operator==(UnivariatePoly const &a, UnivariatePoly const &b) noexcept
  {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

  /// Human form, highest degree first, e.g. "63x^2 + 2x + 27".
  std::string to_string() const
  {
    if (coeffs_.empty())
    {
      return "0";
    }
    std::ostringstream out;
    bool               first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;)
    {
      auto const v = coeffs_[i].value();
      if (v == 0)
      {
        continue;
      }
      if (!first)
      {
        out << " + ";
      }
      first = false;
      if (v != 1 || i == 0)
      {
        out << v;
      }
      if (i >= 1)
      {
        out << 'x';
      }
      if (i >= 2)
      {
        out << '^' << i;
      }
    }
    return out.str();
  }

private:
  void trim()
  {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
    {
      coeffs_.pop_back();
    }
  }

  PrimeField                field_;
  std::vector<FieldElement> coeffs_;
};

/// F(x,z) = sum c[a][b] x^a z^b with c[a][b] = c[b][a], stored densely as a
/// t x t matrix so each variable has degree at most t-1.
class SymmetricBivariatePoly
{
public:
  using Matrix = std::vector<std::vector<FieldElement>>;

  /// Rejects a non-square or non-symmetric matrix.
  SymmetricBivariatePoly(PrimeField field, Matrix coeffs)
    : field_(field)
    , coeffs_(std::move(coeffs))
  {
    std::size_t const t = coeffs_.size();
    if (t == 0)
    {
      throw Error(Errc::invalid_threshold, "bivariate polynomial needs t >= 1");
    }
    for (std::size_t a = 0; a < t; ++a)
    {
      if (coeffs_[a].size() != t)
      {
        throw Error(Errc::not_symmetric, "coefficient matrix is not square");
      }
      for (auto const &c : coeffs_[a])
      {
        if (c.field() != field_)
        {
          throw Error(Errc::modulus_mismatch, "coefficient outside the polynomial's field");
        }
      }
    }
    for (std::size_t a = 0; a < t; ++a)
    {
      for (std::size_t b = a + 1; b < t; ++b)
      {
        if (coeffs_[a][b] != coeffs_[b][a])
        {
          throw Error(Errc::not_symmetric, "coefficient of x^" + std::to_string(a) + " z^" +
                                               std::to_string(b) + " differs from its transpose");
        }
      }
    }
  }

  static SymmetricBivariatePoly from_values(PrimeField                                    field,
                                            std::vector<std::vector<std::int64_t>> const &values)
  {
    Matrix m;
    for (auto const &row : values)
    {
      auto &out = m.emplace_back();
      for (auto v : row)
      {
        out.push_back(field.from_signed(v));
      }
    }
    return {field, std::move(m)};
  }

  /// Fresh polynomial with uniform coefficients; only the upper triangle is
  /// drawn, the lower one mirrors it.
  static SymmetricBivariatePoly random(PrimeField field, std::size_t t, Rng &rng)
  {
    if (t == 0)
    {
      throw Error(Errc::invalid_threshold, "threshold must be at least 1");
    }
    Matrix m(t, std::vector<FieldElement>(t, field.zero()));
    for (std::size_t a = 0; a < t; ++a)
    {
      for (std::size_t b = a; b < t; ++b)
      {
        m[a][b] = field(uniform_below(rng, field.modulus()));
        m[b][a] = m[a][b];
      }
    }
    return {field, std::move(m)};
  }

  PrimeField const &field() const noexcept
  {
    return field_;
  }

  /// Matrix dimension t; degree in each variable is at most t-1.
  std::size_t size() const noexcept
  {
    return coeffs_.size();
  }

  Matrix const &coefficients() const noexcept
  {
    return coeffs_;
  }

  FieldElement const &coefficient(std::size_t x_power, std::size_t z_power) const
  {
    return coeffs_.at(x_power).at(z_power);
  }

  FieldElement constant_term() const
  {
    return coeffs_[0][0];
  }

  /// Largest power of x with a nonzero coefficient, -1 for the zero polynomial.
  int degree() const noexcept
  {
    for (std::size_t a = coeffs_.size(); a-- > 0;)
    {
      for (auto const &c : coeffs_[a])
      {
        if (!c.is_zero())
        {
          return static_cast<int>(a);
        }
      }
    }
    return -1;
  }

  FieldElement operator()(FieldElement const &x, FieldElement const &z) const
  {
    return fix_z(z)(x);
  }

  /// Partial evaluation F(x, z0) as a polynomial in x.
  UnivariatePoly fix_z(FieldElement const &z0) const
  {
    if (z0.field() != field_)
    {
      throw Error(Errc::modulus_mismatch, "partial evaluation point outside the field");
    }
    std::vector<FieldElement> out;
    out.reserve(coeffs_.size());
    for (auto const &row : coeffs_)
    {
      out.push_back(UnivariatePoly(field_, row)(z0));
    }
    return {field_, std::move(out)};
  }

  SymmetricBivariatePoly &operator+=(SymmetricBivariatePoly const &other)
  {
    if (other.field_ != field_)
    {
      throw Error(Errc::modulus_mismatch, "adding polynomials over different fields");
    }
    std::size_t const t = std::max(size(), other.size());
    coeffs_.resize(t);
    for (auto &row : coeffs_)
    {
      row.resize(t, field_.zero());
    }
    for (std::size_t a = 0; a < other.size(); ++a)
    {
      for (std::size_t b = 0; b < other.size(); ++b)
      {
        coeffs_[a][b] += other.coeffs_[a][b];
      }
    }
    return *this;
  }

  friend SymmetricBivariatePoly operator+(SymmetricBivariatePoly a, SymmetricBivariatePoly const &b)
  {
    return a += b;
  }

  friend bool operator==(SymmetricBivariatePoly const &, SymmetricBivariatePoly const &) = default;

private:
  PrimeField field_;
  Matrix     coeffs_;
};

struct Point
{
  FieldElement x;
  FieldElement y;
};

namespace detail {

inline void check_points(std::span<Point const> points)
{
  if (points.empty())
  {
    throw Error(Errc::arity, "interpolation needs at least one point");
  }
  auto const &field = points.front().x.field();
  for (std::size_t i = 0; i < points.size(); ++i)
  {
    if (points[i].x.field() != field || points[i].y.field() != field)
    {
      throw Error(Errc::modulus_mismatch, "interpolation points over different fields");
    }
    for (std::size_t j = 0; j < i; ++j)
    {
      if (points[i].x == points[j].x)
      {
        throw Error(Errc::duplicate_abscissa,
                    "abscissa " + std::to_string(points[i].x.value()) + " appears twice");
      }
    }
  }
}

}  // namespace detail

/// Value at zero of the unique polynomial of degree < |points| through the
/// points: sum y_j * prod_{m != j} x_m / (x_m - x_j).
inline FieldElement lagrange_at_zero(std::span<Point const> points)
{
  detail::check_points(points);
  auto const  &field = points.front().x.field();
  FieldElement acc   = field.zero();
  for (std::size_t j = 0; j < points.size(); ++j)
  {
    FieldElement num = field.one();
    FieldElement den = field.one();
    for (std::size_t m = 0; m < points.size(); ++m)
    {
      if (m == j)
      {
        continue;
      }
      num *= points[m].x;
      den *= points[m].x - points[j].x;
    }
    acc += points[j].y * num / den;
  }
  return acc;
}

/// Full coefficients of the interpolating polynomial of degree < |points|.
inline UnivariatePoly interpolate(std::span<Point const> points)
{
  detail::check_points(points);
  auto const       &field = points.front().x.field();
  std::size_t const n     = points.size();

  std::vector<FieldElement> result(n, field.zero());
  for (std::size_t j = 0; j < n; ++j)
  {
    // basis numerator prod_{m != j} (x - x_m), built up one factor at a time
    std::vector<FieldElement> basis{field.one()};
    FieldElement              den = field.one();
    for (std::size_t m = 0; m < n; ++m)
    {
      if (m == j)
      {
        continue;
      }
      std::vector<FieldElement> next(basis.size() + 1, field.zero());
      for (std::size_t i = 0; i < basis.size(); ++i)
      {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * points[m].x;
      }
      basis = std::move(next);
      den *= points[j].x - points[m].x;
    }
    FieldElement const scale = points[j].y / den;
    for (std::size_t i = 0; i < basis.size(); ++i)
    {
      result[i] += basis[i] * scale;
    }
  }
  return {field, std::move(result)};
}

}  // namespace manet
