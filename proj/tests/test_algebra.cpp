#include <doctest.h>

#include "core/fieldmatrix.hpp"
#include "core/gf256.hpp"
#include "core/rng.hpp"

using namespace raidlab;

TEST_CASE("gf256 identity and annihilator") {
  for (unsigned x = 0; x < 256; ++x) {
    CHECK(gf::mul(uint8_t(x), 1) == uint8_t(x));
    CHECK(gf::mul(uint8_t(x), 0) == 0);
  }
}

TEST_CASE("gf256 table product matches repeated-doubling oracle") {
  // 2*128 = x * x^7 = x^8 reduced by 0x11D -> 0x1D.
  CHECK(gf::mul(2, 128) == gf::mul_noluts(2, 128));
  CHECK(gf::mul(2, 128) == 0x1D);
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b)
      CHECK(gf::mul(uint8_t(a), uint8_t(b)) == gf::mul_noluts(uint8_t(a), uint8_t(b)));
}

TEST_CASE("gf256 field axioms") {
  Xoshiro256 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    uint8_t a = uint8_t(rng.next_u64());
    uint8_t b = uint8_t(rng.next_u64());
    uint8_t c = uint8_t(rng.next_u64());
    CHECK(gf::mul(a, b) == gf::mul(b, a));
    CHECK(gf::mul(a, gf::mul(b, c)) == gf::mul(gf::mul(a, b), c));
    CHECK(gf::mul(a, uint8_t(b ^ c)) == uint8_t(gf::mul(a, b) ^ gf::mul(a, c)));
  }
  for (unsigned a = 1; a < 256; ++a)
    CHECK(gf::mul(uint8_t(a), gf::inv(uint8_t(a))) == 1);
  CHECK_THROWS(gf::inv(0));
}

TEST_CASE("matrix rank basics") {
  CHECK(FieldMatrix::identity(3).rank() == 3);
  FieldMatrix zero(2, 4);
  CHECK(zero.rank() == 0);
}

TEST_CASE("vandermonde 3x3 on distinct nonzero points has full rank") {
  // Oracle: det = prod_{i<j} (x_j - x_i) != 0 for distinct points.
  uint8_t pts[3] = {3, 7, 19};
  FieldMatrix m(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(size_t(r), size_t(c)) = gf::pow(pts[c], unsigned(r));
  uint8_t det_oracle = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      det_oracle = gf::mul(det_oracle, uint8_t(pts[j] ^ pts[i]));
  CHECK(det_oracle != 0);
  CHECK(m.rank() == 3);
}

TEST_CASE("solve: identity system returns rhs; 1x1 system divides") {
  std::vector<Block> rhs = {{10, 20}, {30, 40}};
  auto sol = FieldMatrix::identity(2).solve(rhs);
  CHECK(sol == rhs);

  FieldMatrix a(1, 1);
  a.at(0, 0) = 7;
  std::vector<Block> b = {{gf::mul(7, 99)}};
  auto x = a.solve(b);
  CHECK(x[0][0] == 99);
}

TEST_CASE("solve round-trip property: apply-then-solve is identity") {
  Xoshiro256 rng(42);
  int solved = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 1 + rng.next_below(4);  // up to 4x4
    FieldMatrix a(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) a.at(r, c) = uint8_t(rng.next_u64());
    if (a.rank() != n) continue;
    std::vector<Block> x(n, Block(8));
    for (auto& blk : x)
      for (auto& byte : blk) byte = uint8_t(rng.next_u64());
    // rhs = A x
    std::vector<Block> rhs(n, Block(8, 0));
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) mul_add_into(rhs[r], x[c], a.at(r, c));
    auto sol = a.solve(rhs);
    CHECK(sol == x);
    // substituting back reproduces rhs exactly
    std::vector<Block> back(n, Block(8, 0));
    for (size_t r = 0; r < n; ++r)
      for (size_t c = 0; c < n; ++c) mul_add_into(back[r], sol[c], a.at(r, c));
    CHECK(back == rhs);
    ++solved;
  }
  CHECK(solved > 900);  // random matrices over GF(256) are rarely singular
}

TEST_CASE("singular system reports an error") {
  FieldMatrix a(2, 2);
  a.at(0, 0) = 5;
  a.at(0, 1) = 9;
  a.at(1, 0) = 5;
  a.at(1, 1) = 9;
  std::vector<Block> rhs = {{1}, {2}};
  CHECK_THROWS_AS(a.solve(rhs), SingularMatrixError);
}

TEST_CASE("xor of a block with itself is zero") {
  Block b = {1, 2, 3, 255};
  Block c = b;
  xor_into(c, b);
  CHECK(is_zero(c));
}
