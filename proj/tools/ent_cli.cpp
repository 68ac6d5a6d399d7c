// Command-line front end: encode inspection, exhaustive/sampled verification
// runs, cycle-stepped simulations, cost/efficiency sweeps, and SoC energy
// reports, all emitted as deterministic CSV.
//
// Exit codes: 0 success, 2 validation/config error, 3 verification failure,
// 4 I/O error.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ent/ent.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitIo = 4;

// Relative outputs land in ENT_OUTPUT_DIR when set, else the cwd.
std::filesystem::path resolve_output(const std::string& name) {
  std::filesystem::path p(name);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("ENT_OUTPUT_DIR"))
    return std::filesystem::path(dir) / p;
  return p;
}

std::ofstream open_output(const std::string& name) {
  const auto path = resolve_output(name);
  std::ofstream out(path);
  if (!out) throw ent::io_error("cannot write '" + path.string() + "'");
  std::cout << "writing " << path.string() << "\n";
  return out;
}

std::string fmt(double v, const char* spec = "%.6f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

ent::ArchKind kind_from_flag(const std::string& s) {
  return ent::parse_arch_kind(s);
}

std::vector<ent::ArchKind> kinds_from_flag(const std::string& s) {
  if (s == "all") return ent::all_arch_kinds();
  std::vector<ent::ArchKind> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(kind_from_flag(item));
  return out;
}

std::vector<ent::OperandMode> modes_from_flag(const std::string& s) {
  if (s == "all")
    return {ent::OperandMode::Baseline, ent::OperandMode::EnTMbe,
            ent::OperandMode::EnTOurs};
  std::vector<ent::OperandMode> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(ent::parse_operand_mode(item));
  return out;
}

ent::CostTable table_from_flag(const std::string& path) {
  if (path.empty()) return ent::default_cost_table();
  std::ifstream in(path);
  if (!in) throw ent::io_error("cannot open cost table '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    return j.get<ent::CostTable>();
  } catch (const nlohmann::json::exception& e) {
    throw ent::table_error("bad cost table '" + path + "': " + e.what());
  }
}

// ---- encode -------------------------------------------------------------

struct EncodeArgs {
  std::int64_t value = 0;
  int width = 8;
  std::string scheme = "ours";
  bool unsigned_mode = false;
};

int cmd_encode(const EncodeArgs& a) {
  if (a.scheme == "mbe") {
    if (a.unsigned_mode)
      throw ent::config_error("--unsigned applies to the ours scheme only");
    const ent::MbeDigits d = ent::mbe_recode(ent::SignedWord(a.value, a.width));
    std::string list = "{";
    for (std::size_t i = d.size(); i-- > 0;) {
      list += std::to_string(int(d.digits[i]));
      if (i != 0) list += ",";
    }
    list += "}";
    const ent::EncoderFootprint fp = ent::encoded_width(a.width, ent::Scheme::Mbe);
    std::cout << list << "\n"
              << "scheme=mbe width=" << a.width
              << " encoded_bits=" << fp.bit_width
              << " encoders=" << fp.encoder_count << "\n"
              << "value=" << d.value() << "\n";
    return kExitOk;
  }
  if (a.scheme != "ours")
    throw ent::config_error("unknown scheme '" + a.scheme + "'");

  ent::EncodedOperand e;
  if (a.unsigned_mode) {
    if (a.value < 0)
      throw ent::range_error("unsigned encode of a negative value");
    e = ent::ent_encode_unsigned(static_cast<std::uint64_t>(a.value), a.width);
  } else {
    e = ent::ent_encode_signed(ent::SignedWord(a.value, a.width));
  }
  // Braced form: top bit first (sign in signed mode, carry in unsigned),
  // then digits MSB -> LSB.
  std::string list = "{";
  list += std::to_string(a.unsigned_mode ? int(e.carry_out) : int(e.sign));
  for (int i = e.digit_count(); i-- > 0;)
    list += "," + std::to_string(e.digit(i).value());
  list += "}";
  const ent::EncoderFootprint fp = ent::encoded_width(a.width, ent::Scheme::Ours);
  std::cout << list << "\n"
            << "scheme=ours width=" << a.width
            << " encoded_bits=" << fp.bit_width
            << " encoders=" << fp.encoder_count << "\n"
            << "sign=" << int(e.sign) << " carry_out=" << int(e.carry_out)
            << " decoded=" << ent::ent_decode(e) << "\n";
  return kExitOk;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  int width = 8;
  bool exhaustive = false;
  std::int64_t sampled = 0;
  std::uint32_t seed = 12345;
};

int cmd_verify(const VerifyArgs& a) {
  ent::check_width(a.width);
  if (a.exhaustive && a.sampled > 0)
    throw ent::config_error("choose one of --exhaustive / --sampled");
  if (!a.exhaustive && a.sampled <= 0)
    throw ent::config_error("need --exhaustive or --sampled N");
  if (a.exhaustive && a.width > 12)
    throw ent::config_error("exhaustive verification supported up to width 12; use --sampled");

  const std::int64_t lo = -(std::int64_t{1} << (a.width - 1));
  const std::int64_t hi = (std::int64_t{1} << (a.width - 1)) - 1;
  std::int64_t products = 0, roundtrips = 0, mismatches = 0;

  // Round-trip every representable value regardless of sampling choice.
  for (std::int64_t v = lo; v <= hi; ++v) {
    const ent::SignedWord x(v, a.width);
    if (ent::ent_decode(ent::ent_encode_signed(x)) != v) ++mismatches;
    if (ent::mbe_recode(x).value() != v) ++mismatches;
    ++roundtrips;
  }
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << a.width); ++v) {
    const auto e = ent::ent_encode_unsigned(v, a.width);
    if (ent::ent_decode(e) != std::int64_t(v)) ++mismatches;
    ++roundtrips;
  }

  const auto check_pair = [&](std::int64_t av, std::int64_t bv) {
    const ent::SignedWord sa(av, a.width), sb(bv, a.width);
    const std::int64_t want = av * bv;
    if (ent::mbe_product(sa, sb) != want) ++mismatches;
    if (ent::ent_product(ent::ent_encode_signed(sa), bv) != want) ++mismatches;
    ++products;
  };

  if (a.exhaustive) {
    for (std::int64_t av = lo; av <= hi; ++av)
      for (std::int64_t bv = lo; bv <= hi; ++bv) check_pair(av, bv);
  } else {
    std::mt19937 gen(a.seed);
    const std::uint64_t span = (std::uint64_t{1} << a.width);
    const auto draw = [&] {
      const std::uint64_t r =
          (std::uint64_t(gen()) << 32) | gen();
      return lo + std::int64_t(r % span);
    };
    for (std::int64_t i = 0; i < a.sampled; ++i) check_pair(draw(), draw());
  }

  std::cout << "width " << a.width << ": " << products
            << " products checked, " << roundtrips << " roundtrips checked, "
            << mismatches << " mismatches\n";
  return mismatches == 0 ? kExitOk : kExitVerifyFail;
}

// ---- sim ----------------------------------------------------------------

struct SimArgs {
  std::string kinds = "all";
  std::string modes = "all";
  int size = 16;
  int arrays = 1;
  std::string gemm = "16x16x16";
  std::uint32_t seed = 12345;
  std::string out = "ent_sim.csv";
};

int cmd_sim(const SimArgs& a) {
  int m = 0, k = 0, n = 0;
  if (std::sscanf(a.gemm.c_str(), "%dx%dx%d", &m, &k, &n) != 3 || m <= 0 ||
      k <= 0 || n <= 0)
    throw ent::config_error("--gemm must look like MxKxN");

  const ent::IntMatrix ma = ent::random_matrix(m, k, a.seed);
  const ent::IntMatrix mb = ent::random_matrix(k, n, a.seed + 1);
  const ent::Int64Matrix ref = ent::matmul_reference(ma, mb);

  auto out = open_output(a.out);
  out << "kind,size,mode,m,k,n,cycles,closed_form_cycles,mac_ops,"
         "encoder_invocations,operand_register_bits,accumulator_width,"
         "result_ok\n";
  bool all_ok = true;
  for (ent::ArchKind kind : kinds_from_flag(a.kinds)) {
    for (ent::OperandMode mode : modes_from_flag(a.modes)) {
      ent::ArchConfig cfg;
      cfg.kind = kind;
      cfg.size = a.size;
      cfg.mode = mode;
      cfg.arrays = kind == ent::ArchKind::Cube3D ? a.arrays : 1;
      ent::Simulator sim(cfg);
      const ent::GemmResult r = sim.run_gemm(ma, mb);
      const std::int64_t closed = ent::Simulator::cycle_count(cfg, m, k, n);
      const bool ok = r.c == ref && r.stats.cycles == closed;
      all_ok = all_ok && ok;
      out << ent::to_string(kind) << ',' << a.size << ','
          << ent::to_string(mode) << ',' << m << ',' << k << ',' << n << ','
          << r.stats.cycles << ',' << closed << ',' << r.stats.mac_ops << ','
          << r.stats.encoder_invocations << ','
          << r.stats.operand_register_bits << ','
          << r.stats.accumulator_width << ',' << (ok ? 1 : 0) << '\n';
      std::cout << ent::to_string(kind) << " " << ent::to_string(mode)
                << ": cycles " << r.stats.cycles
                << (ok ? "" : "  MISMATCH") << "\n";
    }
  }
  return all_ok ? kExitOk : kExitVerifyFail;
}

// ---- cost ---------------------------------------------------------------

struct CostArgs {
  std::string kinds = "all";
  std::string modes = "all";
  std::string sizes = "16,32,64";
  double clock_mhz = 500.0;
  std::string table_path;
  std::string out = "ent_cost.csv";
};

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw ent::config_error("empty size list");
  return out;
}

void write_report_row(std::ostream& out, const ent::EfficiencyReport& r) {
  out << ent::to_string(r.config.kind) << ',' << r.config.size << ','
      << ent::to_string(r.config.mode) << ',' << fmt(r.gops, "%.1f") << ','
      << fmt(r.area_mm2) << ',' << fmt(r.power_w) << ','
      << fmt(r.area_eff, "%.3f") << ',' << fmt(r.energy_eff, "%.3f") << ','
      << fmt(r.up_ratio_area) << ',' << fmt(r.up_ratio_energy) << ','
      << r.counts.multipliers << ',' << r.counts.boundary_encoders << ','
      << r.counts.encoders_saved << '\n';
}

int cmd_cost(const CostArgs& a) {
  const ent::CostTable table = table_from_flag(a.table_path);
  auto out = open_output(a.out);
  out << "kind,size,mode,gops,area_mm2,power_w,area_eff,energy_eff,"
         "up_ratio_area,up_ratio_energy,multipliers,boundary_encoders,"
         "encoders_saved\n";
  for (ent::ArchKind kind : kinds_from_flag(a.kinds))
    for (int size : parse_sizes(a.sizes))
      for (ent::OperandMode mode : modes_from_flag(a.modes)) {
        ent::ArchConfig cfg;
        cfg.kind = kind;
        cfg.size = size;
        cfg.mode = mode;
        cfg.clock_mhz = a.clock_mhz;
        write_report_row(out, ent::estimate(cfg, table));
      }
  return kExitOk;
}

// ---- sweep --------------------------------------------------------------

struct SweepArgs {
  std::string sizes = "16,32,64";
  double clock_mhz = 500.0;
  std::string table_path;
  std::string out = "ent_sweep.csv";
  std::string avg_out = "ent_sweep_avg.csv";
};

int cmd_sweep(const SweepArgs& a) {
  const ent::CostTable table = table_from_flag(a.table_path);
  const ent::SweepResult sw = ent::up_ratio_sweep(
      ent::all_arch_kinds(), parse_sizes(a.sizes), table, a.clock_mhz);

  auto out = open_output(a.out);
  out << "scale,kind,size,mode,gops,area_mm2,power_w,area_eff,energy_eff,"
         "up_ratio_area,up_ratio_energy,multipliers,boundary_encoders,"
         "encoders_saved\n";
  for (const auto& e : sw.entries) {
    out << e.scale << ',';
    write_report_row(out, e.report);
  }

  auto avg = open_output(a.avg_out);
  avg << "scale,mode,avg_up_ratio_area,avg_up_ratio_energy\n";
  for (const auto& row : sw.averages) {
    avg << row.scale << ',' << ent::to_string(row.mode) << ','
        << fmt(row.up_ratio_area) << ',' << fmt(row.up_ratio_energy) << '\n';
    if (row.mode != ent::OperandMode::Baseline)
      std::cout << "scale " << row.scale << " " << ent::to_string(row.mode)
                << ": avg area up-ratio " << fmt(100.0 * row.up_ratio_area, "%.3f")
                << "%, avg energy up-ratio "
                << fmt(100.0 * row.up_ratio_energy, "%.3f") << "%\n";
  }
  return kExitOk;
}

// ---- soc ----------------------------------------------------------------

struct SocArgs {
  std::string network;
  std::string kind = "matrix2d";
  int size = 32;
  int arrays = 1;
  std::string modes = "all";
  double frequency_mhz = 500.0;
  std::string table_path;
  std::string out = "ent_soc.csv";
};

int cmd_soc(const SocArgs& a) {
  if (a.network.empty()) throw ent::config_error("--network is required");
  const ent::CostTable table = table_from_flag(a.table_path);
  const auto net = ent::load_network(a.network);

  ent::SocConfig soc;
  soc.tcu.kind = kind_from_flag(a.kind);
  soc.tcu.size = a.size;
  soc.tcu.arrays = a.arrays;
  soc.tcu.clock_mhz = a.frequency_mhz;
  soc.frequency_mhz = a.frequency_mhz;
  soc.global_buffer_kb = table.global_buffer.capacity_kb;
  soc.act_weight_buffer_kb = table.activation_buffer.capacity_kb;
  soc.simd_alus = table.simd.alus;

  soc.tcu.mode = ent::OperandMode::Baseline;
  const ent::EnergyReport base = ent::estimate_inference_energy(net, soc, table);

  const std::string net_name =
      std::filesystem::path(a.network).stem().string();
  auto out = open_output(a.out);
  out << "network,kind,size,arrays,mode,gb_read_j,gb_write_j,act_read_j,"
         "act_write_j,weight_read_j,weight_write_j,tcu_j,simd_j,total_j,"
         "compute_fraction,reduction_vs_baseline\n";
  for (ent::OperandMode mode : modes_from_flag(a.modes)) {
    soc.tcu.mode = mode;
    const ent::EnergyReport e =
        mode == ent::OperandMode::Baseline
            ? base
            : ent::estimate_inference_energy(net, soc, table);
    const double reduction = 1.0 - e.total_j() / base.total_j();
    out << net_name << ',' << a.kind << ',' << a.size << ',' << a.arrays << ','
        << ent::to_string(mode) << ',' << fmt(e.gb_read_j, "%.9e") << ','
        << fmt(e.gb_write_j, "%.9e") << ',' << fmt(e.act_read_j, "%.9e") << ','
        << fmt(e.act_write_j, "%.9e") << ',' << fmt(e.weight_read_j, "%.9e")
        << ',' << fmt(e.weight_write_j, "%.9e") << ','
        << fmt(e.tcu_j, "%.9e") << ',' << fmt(e.simd_j, "%.9e") << ','
        << fmt(e.total_j(), "%.9e") << ',' << fmt(e.compute_fraction()) << ','
        << fmt(reduction) << '\n';
    std::cout << net_name << " " << a.kind << " " << ent::to_string(mode)
              << ": total " << fmt(e.total_j() * 1e3, "%.4f") << " mJ, "
              << "compute fraction " << fmt(e.compute_fraction(), "%.3f")
              << ", reduction " << fmt(100.0 * reduction, "%.2f") << "%\n";
  }
  return kExitOk;
}

// ---- table dump ---------------------------------------------------------

int cmd_dump_table(const std::string& out_name) {
  auto out = open_output(out_name);
  const nlohmann::json j = ent::default_cost_table();
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EN-T tensor-engine encoding and cost model toolkit"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* c_enc = app.add_subcommand("encode", "Recode one operand and print it");
  c_enc->add_option("value", enc.value, "Operand value")->required();
  c_enc->add_option("--width", enc.width, "Operand bit width");
  c_enc->add_option("--scheme", enc.scheme, "ours | mbe");
  c_enc->add_flag("--unsigned", enc.unsigned_mode, "Unsigned carry-chain form");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Check recoded products against plain integer products");
  c_ver->add_option("--width", ver.width, "Operand bit width");
  c_ver->add_flag("--exhaustive", ver.exhaustive, "All operand pairs");
  c_ver->add_option("--sampled", ver.sampled, "Number of random pairs");
  c_ver->add_option("--seed", ver.seed, "Sample seed");

  SimArgs sim;
  auto* c_sim = app.add_subcommand("sim", "Cycle-stepped GEMM simulation");
  c_sim->add_option("--kind", sim.kinds, "Kinds (comma list or 'all')");
  c_sim->add_option("--mode", sim.modes, "Modes (comma list or 'all')");
  c_sim->add_option("--size", sim.size, "Array edge S");
  c_sim->add_option("--arrays", sim.arrays, "Cube array count");
  c_sim->add_option("--gemm", sim.gemm, "Problem size MxKxN");
  c_sim->add_option("--seed", sim.seed, "Operand seed");
  c_sim->add_option("--out", sim.out, "CSV output path");

  CostArgs cost;
  auto* c_cost = app.add_subcommand("cost", "Area/power/efficiency estimates");
  c_cost->add_option("--kinds", cost.kinds, "Kinds (comma list or 'all')");
  c_cost->add_option("--modes", cost.modes, "Modes (comma list or 'all')");
  c_cost->add_option("--sizes", cost.sizes, "Array sizes, comma list");
  c_cost->add_option("--clock-mhz", cost.clock_mhz, "Clock in MHz");
  c_cost->add_option("--cost-table", cost.table_path, "Cost table JSON override");
  c_cost->add_option("--out", cost.out, "CSV output path");

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep", "Scale sweep with per-scale averages");
  c_sweep->add_option("--sizes", sweep.sizes, "2-D scales, comma list (cube uses scale/4)");
  c_sweep->add_option("--clock-mhz", sweep.clock_mhz, "Clock in MHz");
  c_sweep->add_option("--cost-table", sweep.table_path, "Cost table JSON override");
  c_sweep->add_option("--out", sweep.out, "CSV output path");
  c_sweep->add_option("--avg-out", sweep.avg_out, "Averages CSV output path");

  SocArgs soc;
  auto* c_soc = app.add_subcommand("soc", "SoC inference energy estimates");
  c_soc->add_option("--network", soc.network, "Layer-list JSON path")->required();
  c_soc->add_option("--kind", soc.kind, "TCU kind");
  c_soc->add_option("--size", soc.size, "TCU array edge");
  c_soc->add_option("--arrays", soc.arrays, "Array count (cube)");
  c_soc->add_option("--mode", soc.modes, "Modes (comma list or 'all')");
  c_soc->add_option("--frequency-mhz", soc.frequency_mhz, "SoC frequency");
  c_soc->add_option("--cost-table", soc.table_path, "Cost table JSON override");
  c_soc->add_option("--out", soc.out, "CSV output path");

  std::string dump_out = "cost_table.json";
  auto* c_dump = app.add_subcommand("dump-table", "Write the default cost table as JSON");
  c_dump->add_option("--out", dump_out, "JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (c_enc->parsed()) return cmd_encode(enc);
    if (c_ver->parsed()) return cmd_verify(ver);
    if (c_sim->parsed()) return cmd_sim(sim);
    if (c_cost->parsed()) return cmd_cost(cost);
    if (c_sweep->parsed()) return cmd_sweep(sweep);
    if (c_soc->parsed()) return cmd_soc(soc);
    if (c_dump->parsed()) return cmd_dump_table(dump_out);
  } catch (const ent::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ent::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
