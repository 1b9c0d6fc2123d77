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

#include <cstdint>
#include <random>

namespace manet {

using Rng = std::mt19937_64;

/// Uniform draw from [0, bound). std::uniform_int_distribution is
/// implementation-defined, which would make transcripts differ between
/// standard libraries, so reduction is done here by rejection.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound)
{
  if (bound <= 1)
  {
    return 0;
  }
  std::uint64_t const limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t       draw  = rng();
  while (draw >= limit)
  {
    draw = rng();
  }
  return draw % bound;
}

inline std::uint32_t random_word(Rng &rng)
{
  return static_cast<std::uint32_t>(rng() >> 32u);
}

}  // namespace manet
