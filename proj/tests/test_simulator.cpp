#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "ent/simulator.hpp"

using namespace ent;

namespace {
ArchConfig make(ArchKind k, int s, OperandMode m, int arrays = 1) {
  ArchConfig c;
  c.kind = k;
  c.size = s;
  c.mode = m;
  c.arrays = arrays;
  return c;
}

const OperandMode kAllModes[] = {OperandMode::Baseline, OperandMode::EnTMbe,
                                 OperandMode::EnTOurs};
}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(make(ArchKind::Matrix2D, 2, OperandMode::Baseline).validate(),
                  config_error);
  CHECK_THROWS_AS(
      make(ArchKind::Matrix2D, 256, OperandMode::Baseline).validate(),
      config_error);
  CHECK_NOTHROW(make(ArchKind::Cube3D, 4, OperandMode::EnTOurs).validate());
  CHECK_THROWS_AS(parse_arch_kind("array2d"), config_error);
  CHECK_THROWS_AS(parse_operand_mode("fast"), config_error);
  for (ArchKind k : {ArchKind::Matrix2D, ArchKind::Array1D2D,
                     ArchKind::SystolicOS, ArchKind::SystolicWS,
                     ArchKind::Cube3D})
    CHECK(parse_arch_kind(to_string(k)) == k);

  // multiple arrays are a cube-only concept in the timing model
  CHECK_THROWS_AS(
      Simulator(make(ArchKind::SystolicOS, 16, OperandMode::Baseline, 2)),
      config_error);
  CHECK_NOTHROW(Simulator(make(ArchKind::Cube3D, 8, OperandMode::Baseline, 2)));
}

TEST_CASE("square-tile closed forms") {
  const int s = 16;
  CHECK(Simulator::cycle_count(make(ArchKind::SystolicOS, s,
                                    OperandMode::Baseline), s, s, s) ==
        3 * s - 2);  // 46
  CHECK(Simulator::cycle_count(make(ArchKind::SystolicWS, s,
                                    OperandMode::Baseline), s, s, s) ==
        4 * s - 2);  // 62
  CHECK(Simulator::cycle_count(make(ArchKind::Matrix2D, s,
                                    OperandMode::Baseline), s, s, s) == s);
  CHECK(Simulator::cycle_count(make(ArchKind::Array1D2D, s,
                                    OperandMode::Baseline), s, s, s) == s);
  CHECK(Simulator::cycle_count(make(ArchKind::Cube3D, s,
                                    OperandMode::Baseline), s, s, s) == 1);
}

TEST_CASE("ragged closed forms, S=4 on 10x7x5") {
  // Mt=3, Kt=2, Nt=2
  const auto cc = [](ArchKind k, int arrays = 1) {
    return Simulator::cycle_count(make(k, 4, OperandMode::Baseline, arrays),
                                  10, 7, 5);
  };
  CHECK(cc(ArchKind::Matrix2D) == 42);   // Mt*Nt*K
  CHECK(cc(ArchKind::Array1D2D) == 40);  // Nt*Kt*M
  CHECK(cc(ArchKind::SystolicOS) == 88);
  CHECK(cc(ArchKind::SystolicWS) == 130);
  CHECK(cc(ArchKind::Cube3D) == 12);     // Mt*Kt*Nt tiles
  CHECK(cc(ArchKind::Cube3D, 2) == 6);
  CHECK(cc(ArchKind::Cube3D, 5) == 3);
}

TEST_CASE("stepped simulation matches the closed forms") {
  for (ArchKind kind : {ArchKind::Matrix2D, ArchKind::Array1D2D,
                        ArchKind::SystolicOS, ArchKind::SystolicWS,
                        ArchKind::Cube3D}) {
    for (int s : {4, 8}) {
      for (auto [m, k, n] : {std::tuple{10, 7, 5}, {8, 8, 8}, {17, 3, 23}}) {
        const ArchConfig cfg = make(kind, s, OperandMode::Baseline);
        Simulator sim(cfg);
        const GemmResult r =
            sim.run_gemm(random_matrix(m, k, 5), random_matrix(k, n, 6));
        INFO(to_string(kind) << " S=" << s << " " << m << "x" << k << "x" << n);
        CHECK(r.stats.cycles == Simulator::cycle_count(cfg, m, k, n));
      }
    }
  }
}

TEST_CASE("tiny GEMMs") {
  IntMatrix a(1, 1), b(1, 1);
  a.at(0, 0) = 3;
  b.at(0, 0) = -5;
  for (ArchKind kind : {ArchKind::Matrix2D, ArchKind::SystolicWS,
                        ArchKind::Cube3D}) {
    Simulator sim(make(kind, 4, OperandMode::EnTOurs));
    const GemmResult r = sim.run_gemm(a, b);
    CHECK(r.c.at(0, 0) == -15);
  }
}

TEST_CASE("identity times random equals random") {
  IntMatrix eye(32, 32);
  for (int i = 0; i < 32; ++i) eye.at(i, i) = 1;
  const IntMatrix b = random_matrix(32, 32, 7);
  Simulator sim(make(ArchKind::SystolicOS, 16, OperandMode::EnTOurs));
  const GemmResult r = sim.run_gemm(eye, b);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) REQUIRE(r.c.at(i, j) == b.at(i, j));
}

TEST_CASE("all kinds and modes agree with the reference") {
  const IntMatrix a = random_matrix(40, 33, 11);
  const IntMatrix b = random_matrix(33, 27, 12);
  const Int64Matrix ref = matmul_reference(a, b);
  for (ArchKind kind : {ArchKind::Matrix2D, ArchKind::Array1D2D,
                        ArchKind::SystolicOS, ArchKind::SystolicWS,
                        ArchKind::Cube3D}) {
    for (OperandMode mode : kAllModes) {
      Simulator sim(make(kind, 16, mode));
      INFO(to_string(kind) << " " << to_string(mode));
      REQUIRE(sim.run_gemm(a, b).c == ref);
    }
  }
}

TEST_CASE("results independent of tile edge") {
  const IntMatrix a = random_matrix(21, 18, 31);
  const IntMatrix b = random_matrix(18, 14, 32);
  const Int64Matrix ref = matmul_reference(a, b);
  for (int s : {4, 8, 16, 32}) {
    Simulator sim(make(ArchKind::SystolicWS, s, OperandMode::EnTOurs));
    REQUIRE(sim.run_gemm(a, b).c == ref);
  }
}

TEST_CASE("stats: mac ops and encoder invocations") {
  const IntMatrix a = random_matrix(10, 7, 1);
  const IntMatrix b = random_matrix(7, 5, 2);

  Simulator base(make(ArchKind::Matrix2D, 4, OperandMode::Baseline));
  const SimStats sb = base.run_gemm(a, b).stats;
  CHECK(sb.mac_ops == 10 * 7 * 5);
  CHECK(sb.encoder_invocations == sb.mac_ops);  // one recode inside every MAC

  for (OperandMode mode : {OperandMode::EnTMbe, OperandMode::EnTOurs}) {
    Simulator ent_sim(make(ArchKind::Matrix2D, 4, mode));
    const SimStats se = ent_sim.run_gemm(a, b).stats;
    CHECK(se.mac_ops == sb.mac_ops);
    CHECK(se.encoder_invocations == 2 * 10 * 7);  // Nt * M * K tile entries
  }
}

TEST_CASE("stats: operand registers and accumulator width") {
  const IntMatrix a = random_matrix(16, 16, 3);
  const IntMatrix b = random_matrix(16, 16, 4);

  const auto stats = [&](ArchKind k, int s, OperandMode m) {
    Simulator sim(make(k, s, m));
    return sim.run_gemm(a, b).stats;
  };

  CHECK(stats(ArchKind::Matrix2D, 16, OperandMode::EnTOurs)
            .operand_register_bits == 0);  // broadcast, not pipelined
  CHECK(stats(ArchKind::Array1D2D, 16, OperandMode::EnTMbe)
            .operand_register_bits == 0);
  CHECK(stats(ArchKind::SystolicOS, 16, OperandMode::Baseline)
            .operand_register_bits == 256 * 8);
  CHECK(stats(ArchKind::SystolicOS, 16, OperandMode::EnTMbe)
            .operand_register_bits == 256 * 12);
  CHECK(stats(ArchKind::SystolicOS, 16, OperandMode::EnTOurs)
            .operand_register_bits == 256 * 9);

  CHECK(stats(ArchKind::SystolicOS, 16, OperandMode::Baseline)
            .accumulator_width == 20);
  CHECK(stats(ArchKind::SystolicOS, 32, OperandMode::Baseline)
            .accumulator_width == 21);
  CHECK(stats(ArchKind::SystolicOS, 64, OperandMode::Baseline)
            .accumulator_width == 22);
}

TEST_CASE("cube arrays split the tile stream") {
  const IntMatrix a = random_matrix(16, 16, 8);
  const IntMatrix b = random_matrix(16, 16, 9);
  const Int64Matrix ref = matmul_reference(a, b);
  Simulator one(make(ArchKind::Cube3D, 4, OperandMode::EnTOurs, 1));
  Simulator two(make(ArchKind::Cube3D, 4, OperandMode::EnTOurs, 2));
  const GemmResult r1 = one.run_gemm(a, b);
  const GemmResult r2 = two.run_gemm(a, b);
  CHECK(r1.stats.cycles == 64);
  CHECK(r2.stats.cycles == 32);
  CHECK(r1.c == ref);
  CHECK(r2.c == ref);
}

TEST_CASE("shape mismatch rejected") {
  Simulator sim(make(ArchKind::Matrix2D, 8, OperandMode::Baseline));
  CHECK_THROWS_AS(
      sim.run_gemm(random_matrix(4, 5, 1), random_matrix(6, 4, 2)),
      shape_error);
}

TEST_CASE("random_matrix is seed-deterministic") {
  const IntMatrix a = random_matrix(9, 9, 42);
  const IntMatrix b = random_matrix(9, 9, 42);
  const IntMatrix c = random_matrix(9, 9, 43);
  CHECK(a.data == b.data);
  CHECK(a.data != c.data);
}
