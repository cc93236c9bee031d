#include "secnpu/crypto/aes.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <string>

namespace secnpu::crypto {
namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
  return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1B : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  for (int i = 0; i < 8; ++i) {
    if (b & 1) p ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return p;
}

// x^254 == x^-1 in GF(2^8); maps 0 to 0.
constexpr std::uint8_t gf_inverse(std::uint8_t x) {
  std::uint8_t result = 1;
  std::uint8_t base = x;
  for (unsigned e = 254; e != 0; e >>= 1) {
    if (e & 1) result = gf_mul(result, base);
    base = gf_mul(base, base);
  }
  return result;
}

constexpr std::uint8_t rotl8(std::uint8_t x, int n) {
  return static_cast<std::uint8_t>((x << n) | (x >> (8 - n)));
}

constexpr std::uint8_t sbox_algebraic(std::uint8_t x) {
  std::uint8_t b = gf_inverse(x);
  return static_cast<std::uint8_t>(b ^ rotl8(b, 1) ^ rotl8(b, 2) ^ rotl8(b, 3) ^ rotl8(b, 4) ^ 0x63);
}

// Built at compile time from the field definition, not transcribed.
constexpr std::array<std::uint8_t, 256> kSbox = [] {
  std::array<std::uint8_t, 256> t{};
  for (int i = 0; i < 256; ++i) t[static_cast<std::size_t>(i)] = sbox_algebraic(static_cast<std::uint8_t>(i));
  return t;
}();

static_assert(kSbox[0x00] == 0x63 && kSbox[0x53] == 0xED, "S-box generation");

using Column = std::array<std::uint8_t, 4>;

Column sub_word(Column w) {
  for (auto& b : w) b = kSbox[b];
  return w;
}

void add_round_key(Word128& s, const Word128& k) {
  for (std::size_t i = 0; i < 16; ++i) s[i] ^= k[i];
}

void sub_bytes(Word128& s) {
  for (auto& b : s) b = kSbox[b];
}

// State is column-major: byte (row r, column c) lives at s[4c + r].
void shift_rows(Word128& s) {
  Word128 t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s[static_cast<std::size_t>(4 * c + r)] = t[static_cast<std::size_t>(4 * ((c + r) % 4) + r)];
}

void mix_columns(Word128& s) {
  for (std::size_t c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = static_cast<std::uint8_t>(xtime(a0) ^ (xtime(a1) ^ a1) ^ a2 ^ a3);
    col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ (xtime(a2) ^ a2) ^ a3);
    col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ (xtime(a3) ^ a3));
    col[3] = static_cast<std::uint8_t>((xtime(a0) ^ a0) ^ a1 ^ a2 ^ xtime(a3));
  }
}

}  // namespace

std::uint8_t sbox(std::uint8_t x) { return kSbox[x]; }

std::string_view to_string(AesVariant v) {
  switch (v) {
    case AesVariant::Aes128: return "aes128";
    case AesVariant::Aes192: return "aes192";
    case AesVariant::Aes256: return "aes256";
  }
  return "unknown";
}

AesVariant parse_variant(std::string_view text) {
  std::string t;
  for (char c : text)
    if (std::isalnum(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "aes128" || t == "128") return AesVariant::Aes128;
  if (t == "aes192" || t == "192") return AesVariant::Aes192;
  if (t == "aes256" || t == "256") return AesVariant::Aes256;
  throw std::invalid_argument("unknown AES variant '" + std::string(text) + "'");
}

AesVariant variant_for_key_length(std::size_t bytes) {
  switch (bytes) {
    case 16: return AesVariant::Aes128;
    case 24: return AesVariant::Aes192;
    case 32: return AesVariant::Aes256;
    default: throw std::invalid_argument("no AES variant with a " + std::to_string(bytes) + "-byte key");
  }
}

RoundKeySet key_expansion(std::span<const std::uint8_t> initial_key, AesVariant variant) {
  const std::size_t nk_bytes = key_length(variant);
  if (initial_key.size() != nk_bytes) {
    throw std::invalid_argument("key_expansion: " + std::string(to_string(variant)) + " needs a " +
                                std::to_string(nk_bytes) + "-byte key, got " + std::to_string(initial_key.size()));
  }
  const std::size_t nk = nk_bytes / 4;
  const std::size_t nr = static_cast<std::size_t>(round_count(variant));
  const std::size_t total_words = 4 * (nr + 1);

  std::vector<Column> w(total_words);
  for (std::size_t i = 0; i < nk; ++i)
    for (std::size_t j = 0; j < 4; ++j) w[i][j] = initial_key[4 * i + j];

  std::uint8_t rcon = 0x01;
  for (std::size_t i = nk; i < total_words; ++i) {
    Column temp = w[i - 1];
    if (i % nk == 0) {
      std::rotate(temp.begin(), temp.begin() + 1, temp.end());
      temp = sub_word(temp);
      temp[0] ^= rcon;
      rcon = xtime(rcon);
    } else if (nk > 6 && i % nk == 4) {
      temp = sub_word(temp);
    }
    for (std::size_t j = 0; j < 4; ++j) w[i][j] = w[i - nk][j] ^ temp[j];
  }

  std::vector<Word128> schedule(nr + 1);
  for (std::size_t r = 0; r <= nr; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t j = 0; j < 4; ++j) schedule[r][4 * c + j] = w[4 * r + c][j];
  return RoundKeySet(variant, std::move(schedule));
}

Word128 aes_encrypt(const Word128& plain, const RoundKeySet& keys) {
  Word128 s = plain;
  const int nr = keys.rounds();
  add_round_key(s, keys.schedule_key(0));
  for (int round = 1; round < nr; ++round) {
    sub_bytes(s);
    shift_rows(s);
    mix_columns(s);
    add_round_key(s, keys.schedule_key(round));
  }
  sub_bytes(s);
  shift_rows(s);
  add_round_key(s, keys.schedule_key(nr));
  return s;
}

}  // namespace secnpu::crypto
