#pragma once

// Radix-4 operand recodings used by tensor-engine multipliers: classic
// modified Booth recoding (digit set {-2..2}, three control lines per digit)
// and the carry-chain recoding that maps an n-bit operand onto n/2 two-bit
// signed digits {-1,0,1,2} plus one carry bit, n+1 encoded bits in total.

#include <cstdint>
#include <string>
#include <vector>

#include "ent/errors.hpp"

namespace ent {

inline constexpr int kMinWidth = 4;
inline constexpr int kMaxWidth = 32;

inline void check_width(int n) {
  if (n < kMinWidth || n > kMaxWidth || n % 2 != 0)
    throw width_error("unsupported operand width " + std::to_string(n) +
                      " (need an even width in [" + std::to_string(kMinWidth) +
                      ", " + std::to_string(kMaxWidth) + "])");
}

// An n-bit two's-complement integer. Width must be even and in [4, 32].
struct SignedWord {
  std::int64_t value = 0;
  int width = 8;

  SignedWord() = default;
  SignedWord(std::int64_t v, int n) : value(v), width(n) {
    check_width(n);
    const std::int64_t lo = -(std::int64_t{1} << (n - 1));
    const std::int64_t hi = (std::int64_t{1} << (n - 1)) - 1;
    if (v < lo || v > hi)
      throw range_error("value " + std::to_string(v) + " does not fit in " +
                        std::to_string(n) + " signed bits");
  }

  // Bit i of the two's-complement pattern; bit(-1) is defined as 0.
  bool bit(int i) const {
    if (i < 0) return false;
    if (i >= 63) return value < 0;
    return (static_cast<std::uint64_t>(value) >> i) & 1u;
  }
};

// Booth selector control lines for one radix-4 digit.
struct MbeControl {
  bool neg = false;  // selected multiple is negated
  bool se = false;   // shift-enable complement, low for the x2 digits
  bool ce = false;   // high iff |digit| == 2
};

// Control lines for one overlapped 3-bit window (hi = a_{2i+1}, mid = a_{2i},
// lo = a_{2i-1}). Note the triple does not fully determine the digit: the
// digit value itself stays the ground truth for arithmetic.
inline MbeControl mbe_controls(bool hi, bool mid, bool lo) {
  MbeControl c;
  c.neg = hi && (!mid || !lo);
  c.se = !((!hi && mid && lo) || (hi && !mid && !lo));
  c.ce = !((mid != lo) || c.se);
  return c;
}

// Booth-recoded operand: ceil(n/2) radix-4 digits in [-2, 2], LSB first.
struct MbeDigits {
  std::vector<std::int8_t> digits;
  std::vector<MbeControl> controls;
  int width = 0;

  std::size_t size() const { return digits.size(); }

  // Reconstructs the source value, sum of m_i * 4^i.
  std::int64_t value() const {
    std::int64_t acc = 0;
    for (std::size_t i = digits.size(); i-- > 0;)
      acc = acc * 4 + digits[i];
    return acc;
  }
};

// Overlapped 3-bit scan: m_i = -2*a_{2i+1} + a_{2i} + a_{2i-1}.
inline MbeDigits mbe_recode(const SignedWord& x) {
  check_width(x.width);
  MbeDigits out;
  out.width = x.width;
  const int n = x.width / 2;
  out.digits.reserve(n);
  out.controls.reserve(n);
  for (int i = 0; i < n; ++i) {
    const bool hi = x.bit(2 * i + 1);
    const bool mid = x.bit(2 * i);
    const bool lo = x.bit(2 * i - 1);
    out.digits.push_back(static_cast<std::int8_t>(-2 * hi + mid + lo));
    out.controls.push_back(mbe_controls(hi, mid, lo));
  }
  return out;
}

// One two-bit digit of the carry-chain encoding. Codes 00/01/10/11 stand for
// the digit values 0/1/2/-1.
struct EnDigit {
  std::uint8_t code = 0;

  int value() const { return code == 3 ? -1 : static_cast<int>(code); }
  bool operator==(const EnDigit&) const = default;
};

// Input/output bundle of one encoder cell.
struct EncoderCellIO {
  std::uint8_t a = 0;  // 2-bit unsigned digit in [0, 3]
  bool cin = false;
  EnDigit code_out;
  bool cout = false;
};

// One step of the carry chain: a + cin == 4*cout + code_out.value().
// The code is a mod-4 increment of the raw digit; the carry needs one
// AND-OR over the digit bits.
inline EncoderCellIO ent_encoder_cell(std::uint8_t a, bool cin) {
  EncoderCellIO io;
  io.a = static_cast<std::uint8_t>(a & 3u);
  io.cin = cin;
  io.code_out.code = static_cast<std::uint8_t>((io.a + (cin ? 1 : 0)) & 3u);
  const bool a1 = (io.a >> 1) & 1u;
  const bool a0 = io.a & 1u;
  io.cout = (a1 && a0) || (a1 && cin);
  return io;
}

// Carry-chain-encoded operand: n/2 two-bit digit codes (LSB first), one
// carry-out bit, and a sign bit used by the signed-magnitude form. Encoded
// bit count is n + 1 either way: the carry and the sign share the top
// position and are never both set.
struct EncodedOperand {
  std::uint32_t codes = 0;  // digit i packed at bits [2i, 2i+1]
  bool carry_out = false;
  bool sign = false;
  int width = 8;

  int digit_count() const { return width / 2; }
  int encoded_bits() const { return width + 1; }

  EnDigit digit(int i) const {
    return EnDigit{static_cast<std::uint8_t>((codes >> (2 * i)) & 3u)};
  }

  std::vector<EnDigit> digits() const {
    std::vector<EnDigit> out(digit_count());
    for (int i = 0; i < digit_count(); ++i) out[i] = digit(i);
    return out;
  }

  // carry_out * 4^N + sum of w_i * 4^i.
  std::int64_t magnitude() const {
    const int n = digit_count();
    std::int64_t acc = carry_out ? 1 : 0;
    for (int i = n; i-- > 0;)
      acc = acc * 4 + digit(i).value();
    return acc;
  }

  bool operator==(const EncodedOperand&) const = default;
};

// Encodes an unsigned value. The lowest two bits pass through unencoded
// (their code equals the raw digit); every higher digit goes through one
// chained encoder cell. The final carry becomes carry_out.
inline EncodedOperand ent_encode_unsigned(std::uint64_t v, int n) {
  check_width(n);
  if (n < 64 && v >= (std::uint64_t{1} << n))
    throw range_error("value " + std::to_string(v) + " does not fit in " +
                      std::to_string(n) + " unsigned bits");
  EncodedOperand out;
  out.width = n;
  const int digits = n / 2;

  const auto a0 = static_cast<std::uint8_t>(v & 3u);
  out.codes = a0;
  bool carry = ((a0 >> 1) & a0 & 1u) != 0;

  for (int i = 1; i < digits; ++i) {
    const auto ai = static_cast<std::uint8_t>((v >> (2 * i)) & 3u);
    const EncoderCellIO cell = ent_encoder_cell(ai, carry);
    out.codes |= static_cast<std::uint32_t>(cell.code_out.code) << (2 * i);
    carry = cell.cout;
  }
  out.carry_out = carry;
  return out;
}

// Sign-magnitude form for two's-complement operands: the magnitude goes
// through the unsigned chain, the sign occupies the (n+1)-th bit. For
// |x| <= 2^(n-1) the chain never produces a carry-out, so the top bit is
// free for the sign.
inline EncodedOperand ent_encode_signed(const SignedWord& x) {
  const std::uint64_t mag =
      x.value < 0 ? static_cast<std::uint64_t>(-x.value)
                  : static_cast<std::uint64_t>(x.value);
  EncodedOperand out = ent_encode_unsigned(mag, x.width);
  out.sign = x.value < 0;
  return out;
}

// Redundant-to-binary conversion, the decode oracle for both encode paths.
inline std::int64_t ent_decode(const EncodedOperand& e) {
  const std::int64_t mag = e.magnitude();
  return e.sign ? -mag : mag;
}

enum class Scheme { Mbe, Ours };

// Encoder bank shape for an n-bit operand: how many cell-level encoders a
// bank needs and how wide the encoded operand is.
struct EncoderFootprint {
  int encoder_count = 0;
  int bit_width = 0;
  bool operator==(const EncoderFootprint&) const = default;
};

// Booth: ceil(n/2) encoders, 3 bits per digit. Carry-chain: one fewer
// encoder (the bottom digit passes through) and n+1 bits total.
inline EncoderFootprint encoded_width(int n, Scheme scheme) {
  check_width(n);
  const int digits = n / 2;
  if (scheme == Scheme::Mbe) return {digits, 3 * digits};
  return {digits - 1, n + 1};
}

}  // namespace ent
