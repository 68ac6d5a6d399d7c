#pragma once

// Cycle-stepped GEMM simulation for the five engine organizations. Each
// kernel walks real cycles and issues the same multiplies the hardware
// would, through the mode's recoding path, so results are bit-exact against
// a plain integer matmul and cycle totals can be checked against the closed
// forms in cycle_count().

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ent/arch.hpp"
#include "ent/encoding.hpp"
#include "ent/errors.hpp"
#include "ent/multiplier.hpp"

namespace ent {

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int8_t> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0) {
    if (r <= 0 || c <= 0) throw shape_error("matrix dimensions must be positive");
  }
  std::int8_t& at(int i, int j) { return data[std::size_t(i) * cols + j]; }
  std::int8_t at(int i, int j) const { return data[std::size_t(i) * cols + j]; }
};

struct Int64Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> data;

  Int64Matrix() = default;
  Int64Matrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * c, 0) {}
  std::int64_t& at(int i, int j) { return data[std::size_t(i) * cols + j]; }
  std::int64_t at(int i, int j) const { return data[std::size_t(i) * cols + j]; }
  bool operator==(const Int64Matrix&) const = default;
};

// Deterministic fill from the raw mt19937 stream, one byte per element.
inline IntMatrix random_matrix(int rows, int cols, std::uint32_t seed) {
  IntMatrix m(rows, cols);
  std::mt19937 gen(seed);
  for (auto& v : m.data) v = static_cast<std::int8_t>(gen() & 0xFFu);
  return m;
}

// Plain triple-loop matmul, the correctness oracle for every engine.
inline Int64Matrix matmul_reference(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows)
    throw shape_error("inner dimensions differ: " + std::to_string(a.cols) +
                      " vs " + std::to_string(b.rows));
  Int64Matrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      const std::int64_t av = a.at(i, k);
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) += av * b.at(k, j);
    }
  return c;
}

struct SimStats {
  std::int64_t cycles = 0;
  std::int64_t mac_ops = 0;
  std::int64_t encoder_invocations = 0;
  std::int64_t operand_register_bits = 0;
  int accumulator_width = 0;
};

struct GemmResult {
  Int64Matrix c;
  SimStats stats;
};

namespace detail {
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}
}  // namespace detail

class Simulator {
 public:
  explicit Simulator(const ArchConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    if (cfg_.arrays > 1 && cfg_.kind != ArchKind::Cube3D)
      throw config_error("multiple arrays are only modeled for the cube");
  }

  const ArchConfig& config() const { return cfg_; }

  // Closed-form cycle total for an M x K x N GEMM tiled by the array edge.
  // Derivations, with Mt = ceil(M/S) etc. and summing per-tile costs:
  //   matrix2d    kt per tile                    -> Mt*Nt*K
  //   array1d2d   mt per tile                    -> Nt*Kt*M
  //   systolic-os mt+nt+kt-2 per tile            -> Kt*Nt*M + Mt*Kt*N
  //                                                 + Mt*Nt*K - 2*Mt*Nt*Kt
  //   systolic-ws kt preload + mt+nt+kt-2 stream -> os + Mt*Nt*K
  //   cube3d      one cycle per tile triple      -> ceil(Mt*Kt*Nt / arrays)
  static std::int64_t cycle_count(const ArchConfig& cfg, int m, int k, int n) {
    cfg.validate();
    if (m <= 0 || k <= 0 || n <= 0)
      throw shape_error("GEMM dimensions must be positive");
    const std::int64_t s = cfg.size;
    const std::int64_t mt = detail::ceil_div(m, s);
    const std::int64_t kt = detail::ceil_div(k, s);
    const std::int64_t nt = detail::ceil_div(n, s);
    switch (cfg.kind) {
      case ArchKind::Matrix2D: return mt * nt * k;
      case ArchKind::Array1D2D: return nt * kt * m;
      case ArchKind::SystolicOS:
        return kt * nt * m + mt * kt * n + mt * nt * k - 2 * mt * nt * kt;
      case ArchKind::SystolicWS:
        return kt * nt * m + mt * kt * n + 2 * mt * nt * k - 2 * mt * nt * kt;
      case ArchKind::Cube3D:
        return detail::ceil_div(mt * kt * nt, cfg.arrays);
    }
    return 0;
  }

  GemmResult run_gemm(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows)
      throw shape_error("inner dimensions differ: " + std::to_string(a.cols) +
                        " vs " + std::to_string(b.rows));
    const int m = a.rows, k = a.cols, n = b.cols;
    const int s = cfg_.size;

    c_ = Int64Matrix(m, n);
    st_ = SimStats{};
    st_.operand_register_bits =
        cfg_.pipelined_transfer()
            ? cfg_.multiplier_count() * cfg_.operand_lane_width()
            : 0;
    st_.accumulator_width = cfg_.accumulator_width_bits();

    if (cfg_.kind == ArchKind::Cube3D) {
      run_cube(a, b);
    } else {
      for (int m0 = 0; m0 < m; m0 += s)
        for (int n0 = 0; n0 < n; n0 += s)
          for (int k0 = 0; k0 < k; k0 += s)
            run_tile(a, b, m0, k0, n0);
    }

    st_.mac_ops = std::int64_t(m) * k * n;
    if (cfg_.mode == OperandMode::Baseline)
      st_.encoder_invocations = st_.mac_ops;  // recoder inside every PE
    return {std::move(c_), st_};
  }

 private:
  // Loads one A tile through the boundary encoders. For the carry-chain
  // mode the encoded forms are kept and reused for every product in the
  // tile; Booth recoding is stateless so only the invocation count is kept.
  void load_a_tile(const IntMatrix& a, int m0, int k0, int mt, int kt) {
    if (cfg_.mode == OperandMode::Baseline) return;
    st_.encoder_invocations += std::int64_t(mt) * kt;
    if (cfg_.mode != OperandMode::EnTOurs) return;
    enc_.assign(std::size_t(mt) * kt, EncodedOperand{});
    for (int i = 0; i < mt; ++i)
      for (int p = 0; p < kt; ++p)
        enc_[std::size_t(i) * kt + p] =
            ent_encode_signed(SignedWord(a.at(m0 + i, k0 + p), 8));
  }

  std::int64_t product(const IntMatrix& a, const IntMatrix& b, int i, int k,
                       int j, int i0, int k0, int kt) const {
    switch (cfg_.mode) {
      case OperandMode::Baseline:
        return std::int64_t(a.at(i, k)) * b.at(k, j);
      case OperandMode::EnTMbe:
        return mbe_product(SignedWord(a.at(i, k), 8), SignedWord(b.at(k, j), 8));
      case OperandMode::EnTOurs:
        return ent_product(enc_[std::size_t(i - i0) * kt + (k - k0)],
                           b.at(k, j));
    }
    return 0;
  }

  void run_tile(const IntMatrix& a, const IntMatrix& b, int m0, int k0,
                int n0) {
    const int s = cfg_.size;
    const int mt = std::min(s, a.rows - m0);
    const int kt = std::min(s, a.cols - k0);
    const int nt = std::min(s, b.cols - n0);
    load_a_tile(a, m0, k0, mt, kt);

    switch (cfg_.kind) {
      case ArchKind::Matrix2D:
        // Broadcast unit: one k-slice feeds all S*S PEs per cycle.
        for (int t = 0; t < kt; ++t) {
          for (int i = 0; i < mt; ++i)
            for (int j = 0; j < nt; ++j)
              c_.at(m0 + i, n0 + j) +=
                  product(a, b, m0 + i, k0 + t, n0 + j, m0, k0, kt);
          ++st_.cycles;
        }
        break;

      case ArchKind::Array1D2D:
        // Row of dot-product columns: one A row against all B columns per
        // cycle, each column reduced through its adder tree.
        for (int t = 0; t < mt; ++t) {
          for (int j = 0; j < nt; ++j)
            for (int p = 0; p < kt; ++p)
              c_.at(m0 + t, n0 + j) +=
                  product(a, b, m0 + t, k0 + p, n0 + j, m0, k0, kt);
          ++st_.cycles;
        }
        break;

      case ArchKind::SystolicOS:
        // Output-stationary wavefront: PE(i,j) sees the k-th operand pair
        // at cycle i + j + k.
        for (int t = 0; t < mt + nt + kt - 2; ++t) {
          for (int i = 0; i < mt; ++i)
            for (int j = 0; j < nt; ++j) {
              const int p = t - i - j;
              if (p >= 0 && p < kt)
                c_.at(m0 + i, n0 + j) +=
                    product(a, b, m0 + i, k0 + p, n0 + j, m0, k0, kt);
            }
          ++st_.cycles;
        }
        break;

      case ArchKind::SystolicWS:
        // Weight-stationary: kt cycles to preload the B tile into the PE
        // grid, then activations stream through a wavefront where PE(p,j)
        // touches row i at cycle i + p + j.
        st_.cycles += kt;
        for (int t = 0; t < mt + nt + kt - 2; ++t) {
          for (int p = 0; p < kt; ++p)
            for (int j = 0; j < nt; ++j) {
              const int i = t - p - j;
              if (i >= 0 && i < mt)
                c_.at(m0 + i, n0 + j) +=
                    product(a, b, m0 + i, k0 + p, n0 + j, m0, k0, kt);
            }
          ++st_.cycles;
        }
        break;

      case ArchKind::Cube3D:
        break;  // handled by run_cube
    }
  }

  void run_cube(const IntMatrix& a, const IntMatrix& b) {
    const int s = cfg_.size;
    std::int64_t tiles = 0;
    for (int m0 = 0; m0 < a.rows; m0 += s)
      for (int n0 = 0; n0 < b.cols; n0 += s)
        for (int k0 = 0; k0 < a.cols; k0 += s) {
          const int mt = std::min(s, a.rows - m0);
          const int kt = std::min(s, a.cols - k0);
          const int nt = std::min(s, b.cols - n0);
          load_a_tile(a, m0, k0, mt, kt);
          // One cycle computes the whole mt x kt x nt tile in s^3 PEs.
          for (int i = 0; i < mt; ++i)
            for (int p = 0; p < kt; ++p)
              for (int j = 0; j < nt; ++j)
                c_.at(m0 + i, n0 + j) +=
                    product(a, b, m0 + i, k0 + p, n0 + j, m0, k0, kt);
          ++tiles;
        }
    st_.cycles = detail::ceil_div(tiles, cfg_.arrays);
  }

  ArchConfig cfg_;
  Int64Matrix c_;
  SimStats st_;
  std::vector<EncodedOperand> enc_;
};

}  // namespace ent
