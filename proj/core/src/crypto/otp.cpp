#include "secnpu/crypto/otp.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace secnpu::crypto {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void store_be64(std::uint64_t v, std::uint8_t* out) {
  for (int i = 7; i >= 0; --i) {
    out[i] = static_cast<std::uint8_t>(v & 0xFF);
    v >>= 8;
  }
}

void check_counter(const CounterTuple& c) {
  if (c.vn_bits == 0 || c.vn_bits > 64) throw std::invalid_argument("CounterTuple: vn_bits must be in [1, 64]");
  if (c.vn_bits < 64 && (c.vn >> c.vn_bits) != 0) {
    throw std::invalid_argument("CounterTuple: vn " + std::to_string(c.vn) + " exceeds " +
                                std::to_string(c.vn_bits) + " bits");
  }
}

DataBlock xor_with_otps(const DataBlock& in, const std::vector<Otp>& otps) {
  DataBlock out = in;
  for (std::size_t i = 0; i < otps.size(); ++i) out.set_sub_block(i, xor128(in.sub_block(i), otps[i].value));
  return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterTuple CounterTuple::make(std::uint64_t pa, std::uint64_t vn, std::uint64_t block_bytes, unsigned vn_bits) {
  if (block_bytes == 0) throw std::invalid_argument("CounterTuple: block size must be positive");
  if (pa % block_bytes != 0) {
    throw std::invalid_argument("CounterTuple: pa " + std::to_string(pa) + " is not aligned to " +
                                std::to_string(block_bytes) + " bytes");
  }
  CounterTuple c{pa, vn, vn_bits};
  check_counter(c);
  return c;
}

CounterTuple CounterTuple::next_version() const {
  check_counter(*this);
  const std::uint64_t limit = vn_bits == 64 ? ~0ULL : ((1ULL << vn_bits) - 1);
  if (vn == limit) throw std::overflow_error("CounterTuple: version number space exhausted");
  return CounterTuple{pa, vn + 1, vn_bits};
}

Word128 CounterTuple::counter_word() const {
  Word128 w{};
  store_be64(pa, w.data());
  store_be64(vn, w.data() + 8);
  return w;
}

Otp ctr_otp(const CounterTuple& counter, const RoundKeySet& keys) {
  check_counter(counter);
  return Otp{aes_encrypt(counter.counter_word(), keys)};
}

std::uint64_t comb_key_set_size(AesVariant variant) { return 1ULL << round_count(variant); }

Word128 fold_round_keys(const RoundKeySet& keys, std::uint32_t mask) {
  Word128 acc{};
  const auto rk = keys.round_keys();
  for (std::size_t i = 0; i < rk.size(); ++i)
    if (mask & (1U << i)) acc = xor128(acc, rk[i]);
  return acc;
}

std::vector<CombKey> select_comb_keys(const RoundKeySet& keys, std::size_t n, std::uint64_t seed) {
  const std::uint64_t space = comb_key_set_size(keys.variant());
  if (n < 1 || n > space - 1) {
    throw std::invalid_argument("select_comb_keys: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(space - 1) + "]");
  }
  std::vector<bool> mask_used(space, false);
  std::set<Word128> values_used;
  std::vector<CombKey> out;
  out.reserve(n);

  const std::uint64_t base = splitmix64(seed);
  const std::uint64_t budget = 64 * static_cast<std::uint64_t>(n);
  for (std::uint64_t attempt = 0; attempt < budget && out.size() < n; ++attempt) {
    const std::uint64_t draw = splitmix64(base + attempt * kGolden);
    const auto mask = static_cast<std::uint32_t>(1 + draw % (space - 1));
    if (mask_used[mask]) continue;
    mask_used[mask] = true;
    Word128 value = fold_round_keys(keys, mask);
    if (!values_used.insert(value).second) continue;
    out.push_back(CombKey{mask, value});
  }
  if (out.size() < n) {
    throw DerivationError("select_comb_keys: found only " + std::to_string(out.size()) + " distinct keys of " +
                          std::to_string(n) + " after " + std::to_string(budget) + " draws");
  }
  return out;
}

std::uint64_t selection_seed(std::uint64_t seed, const CounterTuple& counter, SelectionPolicy policy) {
  if (policy == SelectionPolicy::PerSession) return seed;
  return splitmix64(seed ^ splitmix64(counter.pa ^ splitmix64(counter.vn)));
}

std::vector<Otp> derive_block_otps(const CounterTuple& counter, const RoundKeySet& keys, std::size_t n,
                                   std::uint64_t seed, SelectionPolicy policy) {
  const Otp shared = ctr_otp(counter, keys);
  const auto combs = select_comb_keys(keys, n, selection_seed(seed, counter, policy));
  std::vector<Otp> otps;
  otps.reserve(n);
  for (const auto& ck : combs) otps.push_back(Otp{xor128(shared.value, ck.value)});
  return otps;
}

DataBlock encrypt_block(const DataBlock& plain, const CounterTuple& counter, const RoundKeySet& keys,
                        std::uint64_t seed, SelectionPolicy policy) {
  return xor_with_otps(plain, derive_block_otps(counter, keys, plain.sub_block_count(), seed, policy));
}

DataBlock decrypt_block(const DataBlock& cipher, const CounterTuple& counter, const RoundKeySet& keys,
                        std::uint64_t seed, SelectionPolicy policy) {
  return xor_with_otps(cipher, derive_block_otps(counter, keys, cipher.sub_block_count(), seed, policy));
}

DataBlock encrypt_block_shared_otp(const DataBlock& plain, const CounterTuple& counter, const RoundKeySet& keys) {
  const Otp shared = ctr_otp(counter, keys);
  return xor_with_otps(plain, std::vector<Otp>(plain.sub_block_count(), shared));
}

}  // namespace secnpu::crypto
