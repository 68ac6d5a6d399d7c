#pragma once

// Bit-exact partial-product models for the two recodings. The traces expose
// every selected row so tests can check the array shape, not just the final
// product; the *_product helpers skip the trace for bulk simulation.

#include <cstdint>
#include <vector>

#include "ent/encoding.hpp"
#include "ent/errors.hpp"

namespace ent {

// One selected partial product, already shifted into place.
struct PartialProductRow {
  std::int64_t value = 0;
  int source_digit_index = 0;
  int digit = 0;  // the radix-4 digit that selected this row
};

// Full multiplier trace: the rows sum to product.
struct MultiplyTrace {
  std::vector<PartialProductRow> rows;
  std::int64_t product = 0;

  std::size_t row_count() const { return rows.size(); }
};

namespace detail {
// digit * b * 4^index without shifting negative values.
inline std::int64_t pp_row(int digit, std::int64_t b, int index) {
  return static_cast<std::int64_t>(digit) * b *
         (std::int64_t{1} << (2 * index));
}
}  // namespace detail

// Booth multiplier: one row per recoded digit of a, each in
// {0, +-b, +-2b} shifted by two bits per position.
inline MultiplyTrace mbe_multiply(const SignedWord& a, const SignedWord& b) {
  if (a.width != b.width)
    throw shape_error("operand widths differ: " + std::to_string(a.width) +
                      " vs " + std::to_string(b.width));
  const MbeDigits da = mbe_recode(a);
  MultiplyTrace t;
  t.rows.reserve(da.size());
  for (std::size_t i = 0; i < da.size(); ++i) {
    const int d = da.digits[i];
    const std::int64_t row = detail::pp_row(d, b.value, static_cast<int>(i));
    t.rows.push_back({row, static_cast<int>(i), d});
    t.product += row;
  }
  return t;
}

// Carry-chain multiplier: one row per encoded digit (digit set {-1,0,1,2},
// so rows are in {0, +-b', 2b'}), plus one extra row when the unsigned chain
// carried out. b' carries the sign of a.
inline MultiplyTrace ent_multiply_encoded(const EncodedOperand& ea,
                                          const SignedWord& b) {
  if (ea.width != b.width)
    throw shape_error("operand widths differ: " + std::to_string(ea.width) +
                      " vs " + std::to_string(b.width));
  const std::int64_t bs = ea.sign ? -b.value : b.value;
  const int n = ea.digit_count();
  MultiplyTrace t;
  t.rows.reserve(static_cast<std::size_t>(n) + (ea.carry_out ? 1 : 0));
  for (int i = 0; i < n; ++i) {
    const int d = ea.digit(i).value();
    const std::int64_t row = detail::pp_row(d, bs, i);
    t.rows.push_back({row, i, d});
    t.product += row;
  }
  if (ea.carry_out) {
    const std::int64_t row = detail::pp_row(1, bs, n);
    t.rows.push_back({row, n, 1});
    t.product += row;
  }
  return t;
}

// Convenience wrapper: encode a on the fly, then multiply.
inline MultiplyTrace ent_multiply(const SignedWord& a, const SignedWord& b) {
  return ent_multiply_encoded(ent_encode_signed(a), b);
}

// Traceless product paths for the cycle-stepped simulator. Same arithmetic,
// no allocation.
inline std::int64_t mbe_product(const SignedWord& a, const SignedWord& b) {
  std::int64_t acc = 0;
  const int digits = a.width / 2;
  for (int i = 0; i < digits; ++i) {
    const bool hi = a.bit(2 * i + 1);
    const bool mid = a.bit(2 * i);
    const bool lo = a.bit(2 * i - 1);
    acc += detail::pp_row(-2 * hi + mid + lo, b.value, i);
  }
  return acc;
}

inline std::int64_t ent_product(const EncodedOperand& ea, std::int64_t b) {
  const std::int64_t bs = ea.sign ? -b : b;
  std::int64_t acc = 0;
  const int n = ea.digit_count();
  for (int i = 0; i < n; ++i)
    acc += detail::pp_row(ea.digit(i).value(), bs, i);
  if (ea.carry_out) acc += detail::pp_row(1, bs, n);
  return acc;
}

}  // namespace ent
