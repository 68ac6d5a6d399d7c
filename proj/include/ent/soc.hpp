#pragma once

// img2col-lowered workload descriptors, tiled buffer-access counting over
// the benchmark SoC (global buffer + activation/weight buffers + TCU +
// SIMD post-processor), and per-category energy estimation. Block powers
// are active-state powers; energy per active cycle is power/frequency.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ent/arch.hpp"
#include "ent/cost_model.hpp"
#include "ent/errors.hpp"
#include "ent/simulator.hpp"

namespace ent {

struct LayerDescriptor {
  enum class Kind { Conv, Fc };
  Kind kind = Kind::Conv;
  std::string name;
  // conv fields
  int c_in = 0, c_out = 0, h = 0, w = 0, kernel = 1, stride = 1, pad = 0;
  // fc fields
  int in_dim = 0, out_dim = 0;

  void validate() const {
    if (kind == Kind::Conv) {
      if (c_in <= 0 || c_out <= 0 || h <= 0 || w <= 0 || kernel <= 0 ||
          stride <= 0 || pad < 0)
        throw layer_error("conv layer '" + name + "' has non-positive dims");
    } else {
      if (in_dim <= 0 || out_dim <= 0)
        throw layer_error("fc layer '" + name + "' has non-positive dims");
    }
  }
};

struct GemmDims {
  std::int64_t m = 0, k = 0, n = 0;
  bool operator==(const GemmDims&) const = default;
};

// Lowering: weights become the M x K matrix (one row per output channel),
// unrolled receptive fields become the K x N activation matrix.
inline GemmDims img2col_dims(const LayerDescriptor& l) {
  l.validate();
  if (l.kind == LayerDescriptor::Kind::Fc)
    return {l.out_dim, l.in_dim, 1};
  const int h_out = (l.h + 2 * l.pad - l.kernel) / l.stride + 1;
  const int w_out = (l.w + 2 * l.pad - l.kernel) / l.stride + 1;
  if (h_out <= 0 || w_out <= 0)
    throw layer_error("conv layer '" + l.name + "' has no output pixels");
  return {l.c_out, std::int64_t(l.c_in) * l.kernel * l.kernel,
          std::int64_t(h_out) * w_out};
}

struct SocConfig {
  int global_buffer_kb = 256;
  int act_weight_buffer_kb = 64;  // each of the two operand buffers
  ArchConfig tcu;
  int simd_alus = 32;
  double frequency_mhz = 500.0;

  void validate() const {
    tcu.validate();
    if (global_buffer_kb <= 0 || act_weight_buffer_kb <= 0)
      throw config_error("buffer sizes must be positive");
    if (simd_alus <= 0) throw config_error("SIMD ALU count must be positive");
    if (frequency_mhz <= 0.0) throw config_error("frequency must be positive");
  }
};

// Element-count ledger for one layer under the documented tiling policy:
// output tiles outer, K inner; weights re-streamed per column-tile sweep,
// activations per row-tile sweep; operands staged to their buffer once if
// the whole matrix fits, otherwise once per re-streaming sweep.
struct AccessCounts {
  std::int64_t weight_reads = 0;
  std::int64_t weight_writes = 0;
  std::int64_t act_reads = 0;
  std::int64_t act_writes = 0;
  std::int64_t gb_reads = 0;
  std::int64_t gb_writes = 0;
  std::int64_t encoder_activations = 0;
  std::int64_t tcu_cycles = 0;
  std::int64_t simd_ops = 0;
  std::int64_t simd_cycles = 0;

  AccessCounts& operator+=(const AccessCounts& o) {
    weight_reads += o.weight_reads;
    weight_writes += o.weight_writes;
    act_reads += o.act_reads;
    act_writes += o.act_writes;
    gb_reads += o.gb_reads;
    gb_writes += o.gb_writes;
    encoder_activations += o.encoder_activations;
    tcu_cycles += o.tcu_cycles;
    simd_ops += o.simd_ops;
    simd_cycles += o.simd_cycles;
    return *this;
  }
  bool operator==(const AccessCounts&) const = default;
};

inline AccessCounts count_accesses(const LayerDescriptor& layer,
                                   const SocConfig& soc) {
  soc.validate();
  const GemmDims d = img2col_dims(layer);
  const std::int64_t s = soc.tcu.size;
  const std::int64_t mt = detail::ceil_div(d.m, s);
  const std::int64_t nt = detail::ceil_div(d.n, s);
  const std::int64_t buf_elems = std::int64_t(soc.act_weight_buffer_kb) * 1024;

  AccessCounts c;
  c.weight_reads = nt * d.m * d.k;  // each weight tile re-read per n-tile
  c.act_reads = mt * d.k * d.n;     // each act tile re-read per m-tile
  const std::int64_t w_stage =
      d.m * d.k <= buf_elems ? d.m * d.k : nt * d.m * d.k;
  const std::int64_t a_stage =
      d.k * d.n <= buf_elems ? d.k * d.n : mt * d.k * d.n;
  c.weight_writes = w_stage;
  c.act_writes = a_stage + d.m * d.n;  // stage-in plus results for next layer
  c.gb_reads = w_stage + a_stage;
  c.gb_writes = d.m * d.n;
  if (soc.tcu.mode != OperandMode::Baseline)
    c.encoder_activations = c.weight_reads;  // every entry recoded per entry
  c.tcu_cycles = Simulator::cycle_count(soc.tcu, int(d.m), int(d.k), int(d.n));
  c.simd_ops = d.m * d.n;
  c.simd_cycles = detail::ceil_div(c.simd_ops, soc.simd_alus);
  return c;
}

// Per-category energies in joules. Additivity holds by construction: the
// total is the sum of the stored categories.
struct EnergyReport {
  double gb_read_j = 0.0;
  double gb_write_j = 0.0;
  double act_read_j = 0.0;
  double act_write_j = 0.0;
  double weight_read_j = 0.0;
  double weight_write_j = 0.0;
  double tcu_j = 0.0;
  double simd_j = 0.0;

  double total_j() const {
    return gb_read_j + gb_write_j + act_read_j + act_write_j + weight_read_j +
           weight_write_j + tcu_j + simd_j;
  }
  double compute_fraction() const {
    const double t = total_j();
    return t > 0.0 ? (tcu_j + simd_j) / t : 0.0;
  }
  EnergyReport& operator+=(const EnergyReport& o) {
    gb_read_j += o.gb_read_j;
    gb_write_j += o.gb_write_j;
    act_read_j += o.act_read_j;
    act_write_j += o.act_write_j;
    weight_read_j += o.weight_read_j;
    weight_write_j += o.weight_write_j;
    tcu_j += o.tcu_j;
    simd_j += o.simd_j;
    return *this;
  }
};

namespace detail {
// Elements a buffer port moves per active cycle: the array consumption
// rate, S lanes for the 2-D organizations and a full face for the cube.
inline std::int64_t port_width(const ArchConfig& tcu) {
  const std::int64_t s = tcu.size;
  return tcu.kind == ArchKind::Cube3D ? s * s * tcu.arrays : s;
}
}  // namespace detail

inline EnergyReport estimate_layer_energy(const LayerDescriptor& layer,
                                          const SocConfig& soc,
                                          const CostTable& table) {
  const AccessCounts c = count_accesses(layer, soc);
  const std::int64_t port = detail::port_width(soc.tcu);
  const double sec_per_cycle = 1.0 / (soc.frequency_mhz * 1e6);
  const auto cycles = [port](std::int64_t elems) {
    return static_cast<double>(detail::ceil_div(elems, port));
  };

  EnergyReport e;
  e.gb_read_j = cycles(c.gb_reads) * table.global_buffer.read_power_w *
                sec_per_cycle;
  e.gb_write_j = cycles(c.gb_writes) * table.global_buffer.write_power_w *
                 sec_per_cycle;
  e.act_read_j = cycles(c.act_reads) * table.activation_buffer.read_power_w *
                 sec_per_cycle;
  e.act_write_j = cycles(c.act_writes) * table.activation_buffer.write_power_w *
                  sec_per_cycle;
  e.weight_read_j = cycles(c.weight_reads) * table.weight_buffer.read_power_w *
                    sec_per_cycle;
  e.weight_write_j = cycles(c.weight_writes) *
                     table.weight_buffer.write_power_w * sec_per_cycle;
  // TCU power already includes the boundary encoders and their output
  // registers, so encoder activity is not priced twice.
  e.tcu_j = static_cast<double>(c.tcu_cycles) *
            estimate(soc.tcu, table).power_w * sec_per_cycle;
  e.simd_j = static_cast<double>(c.simd_cycles) * table.simd.power_w *
             sec_per_cycle;
  return e;
}

inline EnergyReport estimate_inference_energy(
    const std::vector<LayerDescriptor>& network, const SocConfig& soc,
    const CostTable& table) {
  soc.validate();
  EnergyReport total;
  for (const auto& layer : network)
    total += estimate_layer_energy(layer, soc, table);
  return total;
}

// Same network on the same engine in all three operand modes.
struct ModeComparison {
  EnergyReport baseline;
  EnergyReport ent_mbe;
  EnergyReport ent_ours;

  double reduction_mbe() const {
    return 1.0 - ent_mbe.total_j() / baseline.total_j();
  }
  double reduction_ours() const {
    return 1.0 - ent_ours.total_j() / baseline.total_j();
  }
};

inline ModeComparison compare_modes(const std::vector<LayerDescriptor>& network,
                                    SocConfig soc, const CostTable& table) {
  ModeComparison out;
  soc.tcu.mode = OperandMode::Baseline;
  out.baseline = estimate_inference_energy(network, soc, table);
  soc.tcu.mode = OperandMode::EnTMbe;
  out.ent_mbe = estimate_inference_energy(network, soc, table);
  soc.tcu.mode = OperandMode::EnTOurs;
  out.ent_ours = estimate_inference_energy(network, soc, table);
  return out;
}

// ---- Layer-list JSON ----------------------------------------------------

inline void to_json(nlohmann::json& j, const LayerDescriptor& l) {
  if (l.kind == LayerDescriptor::Kind::Conv) {
    j = {{"kind", "conv"},     {"name", l.name},     {"c_in", l.c_in},
         {"c_out", l.c_out},   {"h", l.h},           {"w", l.w},
         {"kernel", l.kernel}, {"stride", l.stride}, {"pad", l.pad}};
  } else {
    j = {{"kind", "fc"},
         {"name", l.name},
         {"in_dim", l.in_dim},
         {"out_dim", l.out_dim}};
  }
}

inline void from_json(const nlohmann::json& j, LayerDescriptor& l) {
  const std::string kind = j.at("kind").get<std::string>();
  l.name = j.value("name", "");
  if (kind == "conv") {
    l.kind = LayerDescriptor::Kind::Conv;
    j.at("c_in").get_to(l.c_in);
    j.at("c_out").get_to(l.c_out);
    j.at("h").get_to(l.h);
    j.at("w").get_to(l.w);
    j.at("kernel").get_to(l.kernel);
    l.stride = j.value("stride", 1);
    l.pad = j.value("pad", 0);
  } else if (kind == "fc") {
    l.kind = LayerDescriptor::Kind::Fc;
    j.at("in_dim").get_to(l.in_dim);
    j.at("out_dim").get_to(l.out_dim);
  } else {
    throw layer_error("unknown layer kind '" + kind + "'");
  }
  l.validate();
}

inline std::vector<LayerDescriptor> load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open network file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw io_error("cannot parse '" + path + "': " + e.what());
  }
  if (!j.is_array())
    throw io_error("network file '" + path + "' must be a JSON array");
  std::vector<LayerDescriptor> net;
  net.reserve(j.size());
  for (const auto& item : j) net.push_back(item.get<LayerDescriptor>());
  return net;
}

}  // namespace ent
