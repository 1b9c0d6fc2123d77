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

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace manet::tea {

constexpr std::uint32_t kDelta = 0x9E3779B9u;

struct Key
{
  std::array<std::uint32_t, 4> words{};
  friend bool operator==(Key const &, Key const &) = default;
  friend auto operator<=>(Key const &, Key const &) = default;
};

struct Block
{
  std::uint32_t left{};
  std::uint32_t right{};
  friend bool   operator==(Block const &, Block const &) = default;
};

/// Word width and cycle count. Width 32 with 32 cycles is standard TEA;
/// narrower widths keep the 4/5 shifts and use the low w bits of delta.
struct Params
{
  unsigned width  = 32;
  unsigned cycles = 32;

  static Params standard() noexcept
  {
    return {};
  }

  static Params reduced(unsigned width, unsigned cycles)
  {
    if (width != 8 && width != 16 && width != 32)
    {
      throw Error(Errc::invalid_params, "word width must be 8, 16 or 32");
    }
    return {width, cycles};
  }

  std::uint32_t mask() const noexcept
  {
    return width >= 32 ? 0xFFFFFFFFu : ((1u << width) - 1u);
  }

  std::uint32_t delta() const noexcept
  {
    return kDelta & mask();
  }

  friend bool operator==(Params const &, Params const &) = default;
};

/// F(M, Ka, Kb, sum) = ((M << 4) + Ka) ^ (M + sum) ^ ((M >> 5) + Kb), all mod 2^w.
inline std::uint32_t round_function(std::uint32_t m, std::uint32_t ka, std::uint32_t kb,
                                    std::uint32_t sum, std::uint32_t mask) noexcept
{
  return ((((m << 4u) & mask) + ka) & mask) ^ ((m + sum) & mask) ^ (((m >> 5u) + kb) & mask);
}

inline Block encrypt_block(Block block, Key const &key, Params const &params = Params::standard())
{
  std::uint32_t const mask = params.mask();
  std::uint32_t const k0 = key.words[0] & mask, k1 = key.words[1] & mask;
  std::uint32_t const k2 = key.words[2] & mask, k3 = key.words[3] & mask;
  std::uint32_t       l = block.left & mask, r = block.right & mask;
  std::uint32_t       sum = 0;
  for (unsigned c = 0; c < params.cycles; ++c)
  {
    sum = (sum + params.delta()) & mask;
    l   = (l + round_function(r, k0, k1, sum, mask)) & mask;
    r   = (r + round_function(l, k2, k3, sum, mask)) & mask;
  }
  return {l, r};
}

inline Block decrypt_block(Block block, Key const &key, Params const &params = Params::standard())
{
  std::uint32_t const mask = params.mask();
  std::uint32_t const k0 = key.words[0] & mask, k1 = key.words[1] & mask;
  std::uint32_t const k2 = key.words[2] & mask, k3 = key.words[3] & mask;
  std::uint32_t       l = block.left & mask, r = block.right & mask;
  std::uint32_t       sum = static_cast<std::uint32_t>(params.delta() * params.cycles) & mask;
  for (unsigned c = 0; c < params.cycles; ++c)
  {
    r   = (r - round_function(l, k2, k3, sum, mask)) & mask;
    l   = (l - round_function(r, k0, k1, sum, mask)) & mask;
    sum = (sum - params.delta()) & mask;
  }
  return {l, r};
}

// -- message framing --------------------------------------------------------

enum class KeyExpansion
{
  low_word,    // (sk, 0, 0, 0), bits above 32 spill into K[1]
  replicated,  // (sk, sk, sk, sk), low 32 bits
};

enum class ByteOrder
{
  big,
  little,
};

/// How a session key and a byte message map onto TEA. Buffers are ECB with
/// zero padding: not a secure mode, only the one that matches the worked
/// example.
struct Convention
{
  KeyExpansion expansion = KeyExpansion::low_word;
  ByteOrder    order     = ByteOrder::big;
  unsigned     cycles    = 64;

  friend bool operator==(Convention const &, Convention const &) = default;
};

/// Reproduces the reference "hello" ciphertext 0x95c88604 0x1745f2d7 under
/// sk = 53 (found by `search_conventions`).
constexpr Convention kMessageConvention{KeyExpansion::low_word, ByteOrder::big, 64};

inline std::string to_string(Convention const &c)
{
  return std::string(c.expansion == KeyExpansion::low_word ? "key=(sk,0,0,0)" : "key=(sk,sk,sk,sk)") +
         (c.order == ByteOrder::big ? " order=big-endian" : " order=little-endian") +
         " padding=zero cycles=" + std::to_string(c.cycles);
}

inline Key derive_key(std::uint64_t sk, KeyExpansion expansion = kMessageConvention.expansion)
{
  auto const low = static_cast<std::uint32_t>(sk);
  if (expansion == KeyExpansion::replicated)
  {
    return Key{{low, low, low, low}};
  }
  return Key{{low, static_cast<std::uint32_t>(sk >> 32u), 0, 0}};
}

namespace detail {

inline std::uint32_t load_word(std::uint8_t const *p, ByteOrder order) noexcept
{
  if (order == ByteOrder::big)
  {
    return (std::uint32_t{p[0]} << 24u) | (std::uint32_t{p[1]} << 16u) | (std::uint32_t{p[2]} << 8u) |
           std::uint32_t{p[3]};
  }
  return (std::uint32_t{p[3]} << 24u) | (std::uint32_t{p[2]} << 16u) | (std::uint32_t{p[1]} << 8u) |
         std::uint32_t{p[0]};
}

inline void store_word(std::uint32_t w, std::uint8_t *p, ByteOrder order) noexcept
{
  for (unsigned i = 0; i < 4; ++i)
  {
    unsigned const shift = order == ByteOrder::big ? 24u - 8u * i : 8u * i;
    p[i]                 = static_cast<std::uint8_t>(w >> shift);
  }
}

}  // namespace detail

/// Zero-pads to a multiple of 8 bytes and packs each chunk into a block.
inline std::vector<Block> pack_blocks(std::span<std::uint8_t const> bytes, ByteOrder order)
{
  std::vector<std::uint8_t> padded(bytes.begin(), bytes.end());
  padded.resize((padded.size() + 7u) / 8u * 8u, 0);
  std::vector<Block> blocks;
  blocks.reserve(padded.size() / 8u);
  for (std::size_t i = 0; i < padded.size(); i += 8)
  {
    blocks.push_back({detail::load_word(&padded[i], order), detail::load_word(&padded[i + 4], order)});
  }
  return blocks;
}

inline std::vector<std::uint8_t> unpack_blocks(std::span<Block const> blocks, ByteOrder order)
{
  std::vector<std::uint8_t> out(blocks.size() * 8u);
  for (std::size_t i = 0; i < blocks.size(); ++i)
  {
    detail::store_word(blocks[i].left, &out[8 * i], order);
    detail::store_word(blocks[i].right, &out[8 * i + 4], order);
  }
  return out;
}

inline std::vector<Block> encrypt_blocks(std::span<Block const> blocks, Key const &key,
                                         unsigned cycles)
{
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (auto const &b : blocks)
  {
    out.push_back(encrypt_block(b, key, {32, cycles}));
  }
  return out;
}

inline std::vector<Block> decrypt_blocks(std::span<Block const> blocks, Key const &key,
                                         unsigned cycles)
{
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (auto const &b : blocks)
  {
    out.push_back(decrypt_block(b, key, {32, cycles}));
  }
  return out;
}

inline std::vector<std::uint8_t> encrypt_buffer(std::span<std::uint8_t const> message, Key const &key,
                                                Convention const &conv = kMessageConvention)
{
  auto const blocks = pack_blocks(message, conv.order);
  return unpack_blocks(encrypt_blocks(blocks, key, conv.cycles), conv.order);
}

enum class Framing
{
  binary,
  text,  // strip trailing zero bytes left by the padding
};

inline std::vector<std::uint8_t> decrypt_buffer(std::span<std::uint8_t const> ciphertext,
                                                Key const &key, Framing framing = Framing::binary,
                                                Convention const &conv = kMessageConvention)
{
  if (ciphertext.size() % 8u != 0)
  {
    throw Error(Errc::framing, "ciphertext length " + std::to_string(ciphertext.size()) +
                                   " is not a multiple of 8");
  }
  auto const blocks = pack_blocks(ciphertext, conv.order);
  auto       out    = unpack_blocks(decrypt_blocks(blocks, key, conv.cycles), conv.order);
  if (framing == Framing::text)
  {
    while (!out.empty() && out.back() == 0)
    {
      out.pop_back();
    }
  }
  return out;
}

inline std::vector<std::uint8_t> as_bytes(std::string_view text)
{
  return {text.begin(), text.end()};
}

/// "0x95c88604 0x1745f2d7 ..." with two lowercase 8-digit words per block.
inline std::string to_hex(std::span<Block const> blocks)
{
  std::string out;
  char        buf[12];
  for (auto const &b : blocks)
  {
    for (auto w : {b.left, b.right})
    {
      std::snprintf(buf, sizeof(buf), "0x%08x", static_cast<unsigned>(w));
      if (!out.empty())
      {
        out += ' ';
      }
      out += buf;
    }
  }
  return out;
}

/// Parses whitespace- or comma-separated 32-bit words ("0x" optional, hex
/// digits case-insensitive), two per block. A token of 8k digits is read as
/// k consecutive words.
inline std::vector<Block> blocks_from_hex(std::string_view text)
{
  std::vector<std::uint32_t> words;
  std::size_t                i = 0;
  while (i < text.size())
  {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\n' || text[i] == '\t'))
    {
      ++i;
    }
    if (i >= text.size())
    {
      break;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '\n' && text[j] != '\t')
    {
      ++j;
    }
    auto token = text.substr(i, j - i);
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X'))
    {
      token.remove_prefix(2);
    }
    // a run of 8k digits is k words
    std::size_t const width = token.size() > 8 && token.size() % 8 == 0 ? 8 : token.size();
    for (std::size_t at = 0; at < token.size() || token.empty(); at += width)
    {
      auto const    digits = token.substr(at, width);
      std::uint32_t value  = 0;
      auto const [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
      if (digits.empty() || digits.size() > 8 || ec != std::errc{} || ptr != digits.data() + digits.size())
      {
        throw Error(Errc::parse, "bad hex word '" + std::string(text.substr(i, j - i)) + "'");
      }
      words.push_back(value);
    }
    i = j;
  }
  if (words.size() % 2 != 0)
  {
    throw Error(Errc::framing, "odd number of 32-bit words");
  }
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < words.size(); k += 2)
  {
    blocks.push_back({words[k], words[k + 1]});
  }
  return blocks;
}

/// Every convention in the matrix {key expansion} x {byte order} x {32, 64
/// cycles} under which `plaintext` encrypts to `expected`.
inline std::vector<Convention> search_conventions(std::string_view plaintext, std::uint64_t sk,
                                                  std::span<Block const> expected)
{
  std::vector<Convention> hits;
  for (auto expansion : {KeyExpansion::low_word, KeyExpansion::replicated})
  {
    for (auto order : {ByteOrder::big, ByteOrder::little})
    {
      for (unsigned cycles : {32u, 64u})
      {
        Convention const conv{expansion, order, cycles};
        auto const       bytes = as_bytes(plaintext);
        auto const cipher = encrypt_blocks(pack_blocks(bytes, order), derive_key(sk, expansion), cycles);
        if (std::equal(cipher.begin(), cipher.end(), expected.begin(), expected.end()))
        {
          hits.push_back(conv);
        }
      }
    }
  }
  return hits;
}

// -- key equivalence and recovery ------------------------------------------

/// The class of keys that differ only in the top bits of (K0,K1) and/or
/// (K2,K3). Flipping both top bits of a keyed pair cancels inside the XOR of
/// the two keyed adders, so all four encrypt identically.
inline std::array<Key, 4> equivalent_keys(Key const &key) noexcept
{
  constexpr std::uint32_t msb = 0x80000000u;
  auto                    a   = key;
  a.words[0] ^= msb;
  a.words[1] ^= msb;
  auto b = key;
  b.words[2] ^= msb;
  b.words[3] ^= msb;
  auto both = a;
  both.words[2] ^= msb;
  both.words[3] ^= msb;
  return {key, a, b, both};
}

/// A plaintext block with its output after a single cycle (two rounds).
struct KnownPair
{
  Block plaintext;
  Block ciphertext;
};

struct KeyHalves
{
  std::uint32_t k0;
  std::uint32_t k1;
  friend bool   operator==(KeyHalves const &, KeyHalves const &) = default;
  friend auto   operator<=>(KeyHalves const &, KeyHalves const &) = default;
};

/// Recovers (K0, K1) of one-cycle TEA at width w <= 16. After one cycle the
/// left word is L1 = L0 + F(R0, K0, K1, delta), so for each guess of K0 the
/// first pair pins K1 = ((L1 - L0) ^ ((R0 << 4) + K0) ^ (R0 + delta)) - (R0 >> 5);
/// a guess survives if every other pair yields the same K1.
inline std::vector<KeyHalves> key_recovery_attack(std::span<KnownPair const> pairs,
                                                  Params const              &params)
{
  if (pairs.size() < 2)
  {
    throw Error(Errc::insufficient_data, "need at least 2 known pairs, got " + std::to_string(pairs.size()));
  }
  if (params.width > 16 || params.cycles != 1)
  {
    throw Error(Errc::invalid_params, "attack needs one cycle at width <= 16");
  }
  std::uint32_t const mask  = params.mask();
  std::uint32_t const delta = params.delta();

  auto solve_k1 = [&](KnownPair const &pair, std::uint32_t k0) {
    std::uint32_t const l0 = pair.plaintext.left & mask;
    std::uint32_t const r0 = pair.plaintext.right & mask;
    std::uint32_t const l1 = pair.ciphertext.left & mask;
    std::uint32_t const x  = ((l1 - l0) & mask) ^ (((r0 << 4u) + k0) & mask) ^ ((r0 + delta) & mask);
    return (x - (r0 >> 5u)) & mask;
  };

  std::vector<KeyHalves> survivors;
  for (std::uint32_t k0 = 0; k0 <= mask; ++k0)
  {
    std::uint32_t const k1 = solve_k1(pairs[0], k0);
    bool                ok = true;
    for (std::size_t i = 1; i < pairs.size() && ok; ++i)
    {
      ok = solve_k1(pairs[i], k0) == k1;
    }
    if (ok)
    {
      survivors.push_back({k0, k1});
    }
  }
  if (survivors.empty())
  {
    throw Error(Errc::attack_failed, "no key guess is consistent with all pairs");
  }
  return survivors;
}

}  // namespace manet::tea
