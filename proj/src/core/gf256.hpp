#ifndef RAIDLAB_GF256_HPP
#define RAIDLAB_GF256_HPP

#include <cstdint>
#include <vector>

namespace raidlab {
namespace gf {

// Arithmetic in GF(2^8) with the primitive polynomial
// x^8 + x^4 + x^3 + x^2 + 1 (0x11D).  Addition is XOR.  Multiplication
// goes through 256-entry log/antilog tables built once at startup.

constexpr unsigned kPoly = 0x11D;

const uint8_t* log_table();
const uint8_t* exp_table();

inline uint8_t add(uint8_t a, uint8_t b) { return a ^ b; }

uint8_t mul(uint8_t a, uint8_t b);
uint8_t inv(uint8_t a);          // throws std::domain_error on a == 0
uint8_t div(uint8_t a, uint8_t b);
uint8_t pow(uint8_t a, unsigned e);

// Slow-path product by shift-and-reduce, kept for table validation.
uint8_t mul_noluts(uint8_t a, uint8_t b);

}  // namespace gf

// A block is a fixed-length byte string; all blocks in one stripe share
// the same length.
using Block = std::vector<uint8_t>;

void xor_into(Block& dst, const Block& src);
void mul_add_into(Block& dst, const Block& src, uint8_t coeff);  // dst ^= coeff*src
bool is_zero(const Block& b);

}  // namespace raidlab

#endif
