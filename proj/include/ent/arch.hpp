#pragma once

// Microarchitecture descriptors for the five tensor-core organizations and
// the structural quantities that depend only on the configuration, not on
// the workload: lane widths, multiplier/encoder counts, accumulator width.

#include <cstdint>
#include <string>

#include "ent/errors.hpp"

namespace ent {

enum class ArchKind {
  Matrix2D,    // broadcast matrix unit, one k-slice per cycle
  Array1D2D,   // 1-D PE row with adder tree, one output row per cycle
  SystolicOS,  // 2-D output-stationary systolic array
  SystolicWS,  // 2-D weight-stationary systolic array
  Cube3D,      // 3-D cube, one full tile triple per cycle
};

enum class OperandMode {
  Baseline,  // raw 8-bit operands, recoder inside every multiplier
  EnTMbe,    // Booth recoding hoisted to the array boundary
  EnTOurs,   // carry-chain recoding hoisted to the array boundary
};

inline const char* to_string(ArchKind k) {
  switch (k) {
    case ArchKind::Matrix2D: return "matrix2d";
    case ArchKind::Array1D2D: return "array1d2d";
    case ArchKind::SystolicOS: return "systolic-os";
    case ArchKind::SystolicWS: return "systolic-ws";
    case ArchKind::Cube3D: return "cube3d";
  }
  return "?";
}

inline const char* to_string(OperandMode m) {
  switch (m) {
    case OperandMode::Baseline: return "baseline";
    case OperandMode::EnTMbe: return "ent-mbe";
    case OperandMode::EnTOurs: return "ent-ours";
  }
  return "?";
}

inline ArchKind parse_arch_kind(const std::string& s) {
  if (s == "matrix2d") return ArchKind::Matrix2D;
  if (s == "array1d2d") return ArchKind::Array1D2D;
  if (s == "systolic-os") return ArchKind::SystolicOS;
  if (s == "systolic-ws") return ArchKind::SystolicWS;
  if (s == "cube3d") return ArchKind::Cube3D;
  throw config_error("unknown architecture kind '" + s + "'");
}

inline OperandMode parse_operand_mode(const std::string& s) {
  if (s == "baseline") return OperandMode::Baseline;
  if (s == "ent-mbe") return OperandMode::EnTMbe;
  if (s == "ent-ours") return OperandMode::EnTOurs;
  throw config_error("unknown operand mode '" + s + "'");
}

// A concrete engine instance. size is the tile edge S: 2-D organizations
// compute S x S x S tile MACs, the cube computes size^3 per array.
struct ArchConfig {
  ArchKind kind = ArchKind::SystolicOS;
  int size = 16;
  OperandMode mode = OperandMode::Baseline;
  double clock_mhz = 500.0;
  int arrays = 1;  // parallel arrays / cube cores

  void validate() const {
    if (size < 4 || size > 128)
      throw config_error("array size " + std::to_string(size) +
                         " out of range [4, 128]");
    if (arrays < 1)
      throw config_error("array count must be positive");
    if (clock_mhz <= 0.0)
      throw config_error("clock must be positive");
  }

  // True when operands ripple PE-to-PE and need per-PE operand registers.
  bool pipelined_transfer() const {
    return kind == ArchKind::SystolicOS || kind == ArchKind::SystolicWS ||
           kind == ArchKind::Cube3D;
  }

  // Bits per operand lane entering a multiplier.
  int operand_lane_width() const {
    switch (mode) {
      case OperandMode::Baseline: return 8;
      case OperandMode::EnTMbe: return 12;  // 4 digits x 3 control lines
      case OperandMode::EnTOurs: return 9;  // 8 + 1 redundant carry/sign
    }
    return 0;
  }

  std::int64_t multiplier_count() const {
    const std::int64_t s = size;
    const std::int64_t per =
        kind == ArchKind::Cube3D ? s * s * s
        : kind == ArchKind::Array1D2D ? s * s
                                      : s * s;
    return per * arrays;
  }

  // Boundary encoder banks (EnT modes only): one per streamed-in lane.
  // 2-D organizations stream S lanes, the cube streams an S x S face.
  std::int64_t boundary_encoder_count() const {
    if (mode == OperandMode::Baseline) return 0;
    const std::int64_t s = size;
    return (kind == ArchKind::Cube3D ? s * s : s) * arrays;
  }

  // Accumulator registers: per-PE for the stationary-output organizations,
  // one per output lane for the row/weight-stationary ones.
  std::int64_t accumulator_count() const {
    const std::int64_t s = size;
    switch (kind) {
      case ArchKind::Matrix2D:
      case ArchKind::SystolicOS:
      case ArchKind::Cube3D: return s * s * arrays;
      case ArchKind::Array1D2D:
      case ArchKind::SystolicWS: return s * arrays;
    }
    return 0;
  }

  // 8x8 products are 16 bits; a length-size dot chain adds log2(size) bits.
  int accumulator_width_bits() const {
    int lg = 0;
    while ((1 << lg) < size) ++lg;
    return 16 + lg;
  }
};

}  // namespace ent
