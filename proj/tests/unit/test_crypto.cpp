#include <gtest/gtest.h>

#include <random>
#include <set>

#include "reference.hpp"
#include "secnpu/crypto/aes.hpp"
#include "secnpu/crypto/block.hpp"
#include "secnpu/crypto/otp.hpp"

namespace {

using namespace secnpu::crypto;
using secnpu::testing::openssl_aes_ecb;
using secnpu::testing::textbook_key_schedule;

std::vector<std::uint8_t> random_bytes(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& b : v) b = static_cast<std::uint8_t>(rng());
  return v;
}

TEST(Aes, Fips197KeyExpansionRoundOne) {
  const auto key = from_hex("2b7e151628aed2a6abf7158809cf4f3c");
  const auto rk = key_expansion(key, AesVariant::Aes128);
  EXPECT_EQ(to_hex(rk.round_keys()[0]), "a0fafe1788542cb123a339392a6c7605");
  EXPECT_EQ(to_hex(rk.round_keys()[9]), "d014f9a8c9ee2589e13f0cc8b6630ca6");
  EXPECT_EQ(to_hex(rk.whitening_key()), "2b7e151628aed2a6abf7158809cf4f3c");
}

TEST(Aes, Fips197AppendixCVectors) {
  const auto plain = word_from_hex("00112233445566778899aabbccddeeff");
  struct Case {
    const char* key;
    AesVariant v;
    const char* cipher;
  };
  const Case cases[] = {
      {"000102030405060708090a0b0c0d0e0f", AesVariant::Aes128, "69c4e0d86a7b0430d8cdb78070b4c55a"},
      {"000102030405060708090a0b0c0d0e0f1011121314151617", AesVariant::Aes192, "dda97ca4864cdfe06eaf70a0ec0d7191"},
      {"000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f", AesVariant::Aes256,
       "8ea2b7ca516745bfeafc49904b496089"},
  };
  for (const auto& c : cases) {
    const auto key = from_hex(c.key);
    EXPECT_EQ(to_hex(aes_encrypt(plain, key_expansion(key, c.v))), c.cipher);
  }
}

TEST(Aes, SboxMatchesLiteralTable) {
  // Spot values from the standard's table.
  EXPECT_EQ(sbox(0x00), 0x63);
  EXPECT_EQ(sbox(0x53), 0xED);
  EXPECT_EQ(sbox(0xFF), 0x16);
  std::set<int> image;
  for (int x = 0; x < 256; ++x) image.insert(sbox(static_cast<std::uint8_t>(x)));
  EXPECT_EQ(image.size(), 256u);
}

TEST(Aes, RandomVectorsMatchOpenSsl) {
  std::mt19937_64 rng(11);
  for (auto v : {AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256}) {
    for (int i = 0; i < 200; ++i) {
      const auto key = random_bytes(rng, key_length(v));
      const auto p = load_word(random_bytes(rng, 16));
      const auto rk = key_expansion(key, v);
      ASSERT_EQ(aes_encrypt(p, rk), openssl_aes_ecb(key, p));
      const auto ref = textbook_key_schedule(key);
      ASSERT_EQ(static_cast<int>(ref.size()), rk.rounds() + 1);
      for (int r = 0; r <= rk.rounds(); ++r) ASSERT_EQ(rk.schedule_key(r), ref[r]);
    }
  }
}

TEST(Aes, RoundKeysExcludeWhitening) {
  const std::vector<std::uint8_t> key(32, 0x5A);
  const auto rk = key_expansion(key, AesVariant::Aes256);
  EXPECT_EQ(rk.round_keys().size(), 14u);
  EXPECT_EQ(rk.round_keys().front(), rk.schedule_key(1));
}

TEST(Aes, WrongKeyLengthThrows) {
  const std::vector<std::uint8_t> key(15, 0);
  EXPECT_THROW(key_expansion(key, AesVariant::Aes128), std::invalid_argument);
  const std::vector<std::uint8_t> k24(24, 0);
  EXPECT_THROW(key_expansion(k24, AesVariant::Aes256), std::invalid_argument);
  EXPECT_EQ(variant_for_key_length(24), AesVariant::Aes192);
  EXPECT_THROW(variant_for_key_length(20), std::invalid_argument);
  EXPECT_EQ(parse_variant("aes192"), AesVariant::Aes192);
}

TEST(Block, RejectsRaggedSizes) {
  EXPECT_THROW(DataBlock(std::vector<std::uint8_t>{}), std::invalid_argument);
  EXPECT_THROW(DataBlock(std::vector<std::uint8_t>(17)), std::invalid_argument);
  const DataBlock b = DataBlock::zeros(64);
  EXPECT_EQ(b.sub_block_count(), 4u);
  EXPECT_EQ(DataBlock::from_sub_blocks(b.sub_blocks()), b);
}

TEST(Otp, CombKeySetSizes) {
  EXPECT_EQ(comb_key_set_size(AesVariant::Aes128), 1024u);
  EXPECT_EQ(comb_key_set_size(AesVariant::Aes192), 4096u);
  EXPECT_EQ(comb_key_set_size(AesVariant::Aes256), 16384u);
}

TEST(Otp, CounterWordLayout) {
  const auto c = CounterTuple::make(0x1000, 0x2A);
  EXPECT_EQ(to_hex(c.counter_word()), "0000000000001000000000000000002a");
  EXPECT_THROW(CounterTuple::make(0x1001, 1), std::invalid_argument);
  EXPECT_THROW(CounterTuple::make(0, 1ULL << 56), std::invalid_argument);
  const auto top = CounterTuple::make(0, (1ULL << 56) - 1);
  EXPECT_THROW(top.next_version(), std::overflow_error);
  EXPECT_EQ(c.next_version().vn, 0x2Bu);
}

TEST(Otp, CtrOtpIsAesOfCounter) {
  std::mt19937_64 rng(3);
  const auto key = random_bytes(rng, 16);
  const auto rk = key_expansion(key, AesVariant::Aes128);
  const auto c = CounterTuple::make(64 * 77, 9);
  EXPECT_EQ(ctr_otp(c, rk).value, openssl_aes_ecb(key, c.counter_word()));
}

TEST(Otp, FoldMatchesManualXor) {
  std::mt19937_64 rng(5);
  const auto key = random_bytes(rng, 24);
  const auto rk = key_expansion(key, AesVariant::Aes192);
  const auto ref = textbook_key_schedule(key);
  for (std::uint32_t mask : {1u, 0x3u, 0x801u, 0xFFFu, 0x555u}) {
    Word128 expect{};
    for (int i = 0; i < 12; ++i)
      if (mask & (1u << i)) expect = xor128(expect, ref[i + 1]);
    EXPECT_EQ(fold_round_keys(rk, mask), expect);
  }
  EXPECT_EQ(fold_round_keys(rk, 0), Word128{});
}

TEST(Otp, SelectCombKeysDistinctAndDeterministic) {
  std::mt19937_64 rng(7);
  const auto rk = key_expansion(random_bytes(rng, 16), AesVariant::Aes128);
  for (std::size_t n : {1u, 4u, 32u, 200u}) {
    const auto a = select_comb_keys(rk, n, 99);
    const auto b = select_comb_keys(rk, n, 99);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), n);
    std::set<std::uint32_t> masks;
    std::set<Word128> values;
    for (const auto& k : a) {
      EXPECT_NE(k.subset_mask, 0u);
      EXPECT_LT(k.subset_mask, 1024u);
      EXPECT_EQ(k.value, fold_round_keys(rk, k.subset_mask));
      masks.insert(k.subset_mask);
      values.insert(k.value);
    }
    EXPECT_EQ(masks.size(), n);
    EXPECT_EQ(values.size(), n);
  }
  EXPECT_NE(select_comb_keys(rk, 4, 1), select_comb_keys(rk, 4, 2));
}

TEST(Otp, SelectCombKeysBounds) {
  const auto rk = key_expansion(std::vector<std::uint8_t>(16, 1), AesVariant::Aes128);
  EXPECT_THROW(select_comb_keys(rk, 0, 1), std::invalid_argument);
  EXPECT_THROW(select_comb_keys(rk, 1024, 1), std::invalid_argument);
  // Every nonzero subset: the draw budget covers the coupon-collector tail.
  EXPECT_EQ(select_comb_keys(rk, 1023, 1).size(), 1023u);
}

TEST(Otp, SelectionPolicy) {
  const auto a = CounterTuple::make(0, 1), b = CounterTuple::make(64, 1);
  EXPECT_EQ(selection_seed(5, a, SelectionPolicy::PerSession), 5u);
  EXPECT_EQ(selection_seed(5, a, SelectionPolicy::PerSession), selection_seed(5, b, SelectionPolicy::PerSession));
  EXPECT_NE(selection_seed(5, a, SelectionPolicy::PerCounter), selection_seed(5, b, SelectionPolicy::PerCounter));
}

TEST(Otp, EncryptDecryptRoundTripAndDistinctPads) {
  std::mt19937_64 rng(13);
  for (auto v : {AesVariant::Aes128, AesVariant::Aes192, AesVariant::Aes256}) {
    const auto rk = key_expansion(random_bytes(rng, key_length(v)), v);
    for (int i = 0; i < 50; ++i) {
      const std::size_t size = 16 * (1 + rng() % 8);
      const DataBlock plain(random_bytes(rng, size));
      const auto ctr = CounterTuple::make(size * (rng() % 4096), rng() % (1ULL << 56), size);
      const auto seed = rng();
      for (auto pol : {SelectionPolicy::PerCounter, SelectionPolicy::PerSession}) {
        const auto cipher = encrypt_block(plain, ctr, rk, seed, pol);
        EXPECT_EQ(decrypt_block(cipher, ctr, rk, seed, pol), plain);
      }
      const auto pads = derive_block_otps(ctr, rk, plain.sub_block_count(), seed);
      std::set<Word128> distinct;
      for (const auto& p : pads) distinct.insert(p.value);
      EXPECT_EQ(distinct.size(), pads.size());
    }
  }
}

TEST(Otp, SharedModeReusesOnePad) {
  const auto rk = key_expansion(std::vector<std::uint8_t>(16, 3), AesVariant::Aes128);
  const auto ctr = CounterTuple::make(128, 4);
  const auto c = encrypt_block_shared_otp(DataBlock::zeros(64), ctr, rk);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c.sub_block(i), ctr_otp(ctr, rk).value);
}

TEST(Otp, Splitmix64KnownValues) {
  // First outputs of the reference generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0x6E789E6AA1B965F4ULL);
}

}  // namespace
