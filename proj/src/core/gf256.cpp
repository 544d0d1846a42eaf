#include "core/gf256.hpp"

#include <array>
#include <stdexcept>

namespace raidlab {
namespace gf {

namespace {

struct Tables {
  std::array<uint8_t, 256> log{};
  std::array<uint8_t, 512> exp{};  // doubled so mul can skip the mod 255
  Tables() {
    unsigned x = 1;
    for (unsigned i = 0; i < 255; ++i) {
      exp[i] = static_cast<uint8_t>(x);
      log[x] = static_cast<uint8_t>(i);
      x <<= 1;
      if (x & 0x100) x ^= kPoly;
    }
    for (unsigned i = 255; i < 512; ++i) exp[i] = exp[i - 255];
    log[0] = 0;  // unused; mul handles zero explicitly
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

const uint8_t* log_table() { return tables().log.data(); }
const uint8_t* exp_table() { return tables().exp.data(); }

uint8_t mul(uint8_t a, uint8_t b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = tables();
  return t.exp[unsigned(t.log[a]) + unsigned(t.log[b])];
}

uint8_t inv(uint8_t a) {
  if (a == 0) throw std::domain_error("gf256: zero has no inverse");
  const Tables& t = tables();
  return t.exp[255 - t.log[a]];
}

uint8_t div(uint8_t a, uint8_t b) {
  if (b == 0) throw std::domain_error("gf256: division by zero");
  if (a == 0) return 0;
  const Tables& t = tables();
  return t.exp[unsigned(t.log[a]) + 255 - unsigned(t.log[b])];
}

uint8_t pow(uint8_t a, unsigned e) {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const Tables& t = tables();
  return t.exp[(unsigned(t.log[a]) * (e % 255u)) % 255u];
}

uint8_t mul_noluts(uint8_t a, uint8_t b) {
  unsigned acc = 0, aa = a;
  for (unsigned bit = 0; bit < 8; ++bit) {
    if (b & (1u << bit)) acc ^= aa << bit;
  }
  for (int bit = 15; bit >= 8; --bit) {
    if (acc & (1u << bit)) acc ^= kPoly << (bit - 8);
  }
  return static_cast<uint8_t>(acc);
}

}  // namespace gf

void xor_into(Block& dst, const Block& src) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

void mul_add_into(Block& dst, const Block& src, uint8_t coeff) {
  if (coeff == 0) return;
  if (coeff == 1) {
    xor_into(dst, src);
    return;
  }
  for (size_t i = 0; i < dst.size(); ++i) dst[i] ^= gf::mul(coeff, src[i]);
}

bool is_zero(const Block& b) {
  for (uint8_t v : b)
    if (v != 0) return false;
  return true;
}

}  // namespace raidlab
