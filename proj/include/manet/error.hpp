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

#include <stdexcept>
#include <string>
#include <string_view>

namespace manet {

enum class Errc
{
  // gf
  not_prime,
  modulus_mismatch,
  division_by_zero,
  // poly
  invalid_threshold,
  not_symmetric,
  duplicate_abscissa,
  arity,
  // curve
  singular_curve,
  invalid_point,
  params_mismatch,
  order_not_found,
  degenerate_key,
  // tea
  framing,
  invalid_params,
  insufficient_data,
  attack_failed,
  // dkg
  invalid_id,
  collision,
  incomplete_round,
  invalid_commitment,
  threshold_not_met,
  corrupt_helper,
  session_refused,
  // simnet
  invalid_contribution,
  invalid_scenario,
  unknown_node,
  parse,
};

constexpr std::string_view to_string(Errc code) noexcept
{
  switch (code)
  {
  case Errc::not_prime: return "not-prime";
  case Errc::modulus_mismatch: return "modulus-mismatch";
  case Errc::division_by_zero: return "division-by-zero";
  case Errc::invalid_threshold: return "invalid-threshold";
  case Errc::not_symmetric: return "not-symmetric";
  case Errc::duplicate_abscissa: return "duplicate-abscissa";
  case Errc::arity: return "arity";
  case Errc::singular_curve: return "singular-curve";
  case Errc::invalid_point: return "invalid-point";
  case Errc::params_mismatch: return "params-mismatch";
  case Errc::order_not_found: return "order-not-found";
  case Errc::degenerate_key: return "degenerate-key";
  case Errc::framing: return "framing";
  case Errc::invalid_params: return "invalid-params";
  case Errc::insufficient_data: return "insufficient-data";
  case Errc::attack_failed: return "attack-failed";
  case Errc::invalid_id: return "invalid-id";
  case Errc::collision: return "collision";
  case Errc::incomplete_round: return "incomplete-round";
  case Errc::invalid_commitment: return "invalid-commitment";
  case Errc::threshold_not_met: return "threshold-not-met";
  case Errc::corrupt_helper: return "corrupt-helper";
  case Errc::session_refused: return "session-refused";
  case Errc::invalid_contribution: return "invalid-contribution";
  case Errc::invalid_scenario: return "invalid-scenario";
  case Errc::unknown_node: return "unknown-node";
  case Errc::parse: return "parse";
  }
  return "unknown";
}

/// Every failure raised by the library. The code is stable and is what the
/// simulator writes into FAILURE events; the message is for humans.
class Error : public std::runtime_error
{
public:
  Error(Errc code, std::string const &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what)
    , code_(code)
  {}

  Errc code() const noexcept
  {
    return code_;
  }

private:
  Errc code_;
};

}  // namespace manet
