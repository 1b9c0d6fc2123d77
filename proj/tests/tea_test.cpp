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

#include "manet/random.hpp"
#include "manet/tea.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <set>

namespace {

namespace tea = manet::tea;
using manet::Errc;
using testutil::error_code;

tea::Key random_key(manet::Rng &rng)
{
  return {{manet::random_word(rng), manet::random_word(rng), manet::random_word(rng), manet::random_word(rng)}};
}

tea::Block random_block(manet::Rng &rng)
{
  return {manet::random_word(rng), manet::random_word(rng)};
}

TEST(TeaTest, ZeroVectorMatchesRoundByRoundTranscription)
{
  auto const expected = oracle::tea_by_rounds(0, 0, {0, 0, 0, 0});
  auto const c        = tea::encrypt_block({0, 0}, tea::Key{});
  EXPECT_EQ(c.left, expected.first);
  EXPECT_EQ(c.right, expected.second);
  // frozen regression vector
  EXPECT_EQ(c, (tea::Block{0x41ea3a0au, 0x94baa940u}));
}

TEST(TeaTest, AgreesWithRoundByRoundTranscriptionOnRandomInputs)
{
  manet::Rng rng(1);
  for (int i = 0; i < 2000; ++i)
  {
    auto const k = random_key(rng);
    auto const b = random_block(rng);
    auto const c = tea::encrypt_block(b, k);
    ASSERT_EQ(std::make_pair(c.left, c.right), oracle::tea_by_rounds(b.left, b.right, k.words));
  }
}

TEST(TeaTest, RoundTrip)
{
  manet::Rng rng(2);
  for (int i = 0; i < 10000; ++i)
  {
    auto const k = random_key(rng);
    auto const b = random_block(rng);
    ASSERT_EQ(tea::decrypt_block(tea::encrypt_block(b, k), k), b);
  }
}

TEST(TeaTest, ReducedWidthRoundTrip)
{
  manet::Rng rng(3);
  auto const params = tea::Params::reduced(8, 32);
  for (int i = 0; i < 10000; ++i)
  {
    auto const k = random_key(rng);
    tea::Block const b{manet::random_word(rng) & 0xFFu, manet::random_word(rng) & 0xFFu};
    auto const       c = tea::encrypt_block(b, k, params);
    ASSERT_LE(c.left, 0xFFu);
    ASSERT_LE(c.right, 0xFFu);
    ASSERT_EQ(tea::decrypt_block(c, k, params), b);
  }
  EXPECT_EQ(error_code([] { (void)tea::Params::reduced(12, 1); }), Errc::invalid_params);
}

TEST(TeaTest, ZeroCyclesIsIdentity)
{
  auto const     params = tea::Params::reduced(16, 0);
  tea::Key const k{{1, 2, 3, 4}};
  EXPECT_EQ(tea::encrypt_block({0x1234, 0xABCD}, k, params), (tea::Block{0x1234, 0xABCD}));
  EXPECT_EQ(tea::decrypt_block({0x1234, 0xABCD}, k, params), (tea::Block{0x1234, 0xABCD}));
}

TEST(TeaTest, MsbFlipOfFirstKeyPairIsInvisible)
{
  manet::Rng rng(4);
  for (int i = 0; i < 10000; ++i)
  {
    auto const k  = random_key(rng);
    auto       k2 = k;
    k2.words[0] ^= 0x80000000u;
    k2.words[1] ^= 0x80000000u;
    auto const b = random_block(rng);
    ASSERT_EQ(tea::encrypt_block(b, k), tea::encrypt_block(b, k2));
  }
}

TEST(TeaTest, EquivalentKeys)
{
  manet::Rng rng(5);
  for (int i = 0; i < 1000; ++i)
  {
    auto const k   = random_key(rng);
    auto const cls = tea::equivalent_keys(k);
    EXPECT_EQ(cls[0], k);
    EXPECT_EQ(std::set<tea::Key>(cls.begin(), cls.end()).size(), 4u);
    auto const b = random_block(rng);
    auto const c = tea::encrypt_block(b, k);
    for (auto const &member : cls)
    {
      ASSERT_EQ(tea::encrypt_block(b, member), c);
    }
  }
}

TEST(TeaBufferTest, RoundTripAndFraming)
{
  auto const key    = tea::derive_key(53);
  auto const cipher = tea::encrypt_buffer(tea::as_bytes("hello"), key);
  EXPECT_EQ(cipher.size(), 8u);
  auto const plain = tea::decrypt_buffer(cipher, key, tea::Framing::text);
  EXPECT_EQ(std::string(plain.begin(), plain.end()), "hello");
  EXPECT_EQ(tea::decrypt_buffer(cipher, key).size(), 8u);

  EXPECT_TRUE(tea::encrypt_buffer({}, key).empty());
  EXPECT_TRUE(tea::decrypt_buffer({}, key).empty());

  std::vector<std::uint8_t> const truncated(cipher.begin(), cipher.begin() + 7);
  EXPECT_EQ(error_code([&] { (void)tea::decrypt_buffer(truncated, key); }), Errc::framing);
}

TEST(TeaBufferTest, ReferenceCiphertext)
{
  std::vector<tea::Block> const expected{{0x95c88604u, 0x1745f2d7u}};
  auto const hits = tea::search_conventions("hello", 53, expected);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0], tea::kMessageConvention);

  auto const cipher = tea::encrypt_buffer(tea::as_bytes("hello"), tea::derive_key(53));
  auto const blocks = tea::pack_blocks(cipher, tea::ByteOrder::big);
  EXPECT_EQ(tea::to_hex(blocks), "0x95c88604 0x1745f2d7");
  // independent check: 128 rounds (64 cycles) of the round-by-round form
  EXPECT_EQ(oracle::tea_by_rounds(0x68656c6cu, 0x6f000000u, {53, 0, 0, 0}, 128),
            std::make_pair(0x95c88604u, 0x1745f2d7u));
}

TEST(TeaBufferTest, DeriveKey)
{
  EXPECT_EQ(tea::derive_key(53), tea::derive_key(53));
  EXPECT_EQ(tea::derive_key(53), (tea::Key{{53, 0, 0, 0}}));
  EXPECT_EQ(tea::derive_key(0), tea::Key{});
  EXPECT_EQ(tea::derive_key(53, tea::KeyExpansion::replicated), (tea::Key{{53, 53, 53, 53}}));
}

TEST(TeaBufferTest, HexParsing)
{
  auto const blocks = tea::blocks_from_hex("0x95c88604 1745F2D7");
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0], (tea::Block{0x95c88604u, 0x1745f2d7u}));
  EXPECT_EQ(tea::blocks_from_hex("0x95c886041745f2d7"), blocks);
  EXPECT_EQ(tea::blocks_from_hex("0000000000000000").size(), 1u);
  EXPECT_EQ(error_code([] { (void)tea::blocks_from_hex("0x1"); }), Errc::framing);
  EXPECT_EQ(error_code([] { (void)tea::blocks_from_hex("123456789"); }), Errc::parse);
  EXPECT_EQ(error_code([] { (void)tea::blocks_from_hex("0xzz 0x1"); }), Errc::parse);
}

TEST(TeaBufferTest, RandomTextRoundTrip)
{
  manet::Rng rng(6);
  for (int i = 0; i < 1000; ++i)
  {
    std::string text(manet::uniform_below(rng, 40), ' ');
    for (auto &ch : text)
    {
      ch = static_cast<char>(32 + manet::uniform_below(rng, 95));
    }
    auto const key    = tea::derive_key(manet::uniform_below(rng, 1000));
    auto const cipher = tea::encrypt_buffer(tea::as_bytes(text), key);
    ASSERT_EQ(cipher.size() % 8, 0u);
    auto const plain = tea::decrypt_buffer(cipher, key, tea::Framing::text);
    ASSERT_EQ(std::string(plain.begin(), plain.end()), text);
  }
}

TEST(TeaAttackTest, RecoversHiddenHalvesAtWidth8)
{
  manet::Rng rng(7);
  auto const params = tea::Params::reduced(8, 1);
  for (int trial = 0; trial < 50; ++trial)
  {
    tea::Key const key{{manet::random_word(rng) & 0xFFu, manet::random_word(rng) & 0xFFu,
                        manet::random_word(rng) & 0xFFu, manet::random_word(rng) & 0xFFu}};
    std::vector<tea::KnownPair> pairs;
    for (int i = 0; i < 4; ++i)
    {
      tea::Block const p{manet::random_word(rng) & 0xFFu, manet::random_word(rng) & 0xFFu};
      pairs.push_back({p, tea::encrypt_block(p, key, params)});
    }
    auto const found = tea::key_recovery_attack(pairs, params);
    EXPECT_NE(std::find(found.begin(), found.end(), tea::KeyHalves{key.words[0], key.words[1]}), found.end());
    EXPECT_NE(std::find(found.begin(), found.end(),
                        tea::KeyHalves{key.words[0] ^ 0x80u, key.words[1] ^ 0x80u}),
              found.end());
  }
}

TEST(TeaAttackTest, Errors)
{
  auto const                  params = tea::Params::reduced(8, 1);
  std::vector<tea::KnownPair> one{{{1, 2}, {3, 4}}};
  EXPECT_EQ(error_code([&] { (void)tea::key_recovery_attack(one, params); }), Errc::insufficient_data);

  std::vector<tea::KnownPair> wide{{{1, 2}, {3, 4}}, {{5, 6}, {7, 8}}};
  EXPECT_EQ(error_code([&] { (void)tea::key_recovery_attack(wide, tea::Params::standard()); }),
            Errc::invalid_params);

  // same plaintext, different ciphertexts: no key explains both
  std::vector<tea::KnownPair> contradictory{{{1, 2}, {3, 4}}, {{1, 2}, {9, 4}}};
  EXPECT_EQ(error_code([&] { (void)tea::key_recovery_attack(contradictory, params); }),
            Errc::attack_failed);
}

TEST(TeaAttackTest, Width16)
{
  manet::Rng     rng(8);
  auto const     params = tea::Params::reduced(16, 1);
  tea::Key const key{{0x1234, 0xBEEF, 0x0F0F, 0x7777}};
  std::vector<tea::KnownPair> pairs;
  for (int i = 0; i < 8; ++i)
  {
    tea::Block const p{manet::random_word(rng) & 0xFFFFu, manet::random_word(rng) & 0xFFFFu};
    pairs.push_back({p, tea::encrypt_block(p, key, params)});
  }
  auto const found = tea::key_recovery_attack(pairs, params);
  EXPECT_NE(std::find(found.begin(), found.end(), tea::KeyHalves{0x1234, 0xBEEF}), found.end());
}

}  // namespace
