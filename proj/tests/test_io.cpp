#include <cstdlib>
#include <cstring>
#include <filesystem>

#include <gtest/gtest.h>

#include "dduet/driver.hpp"
#include "test_support.hpp"

namespace dduet {
namespace {

using io::json;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

std::string schema_message(const std::string& text) {
  try {
    io::parse_config(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    return e.what();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return {};
}

TEST(Config, ZakharovDefaults) {
  const auto cfg = io::parse_config(R"({"system": "zakharov"})");
  EXPECT_EQ(cfg.driver, io::Driver::Zakharov);
  EXPECT_EQ(cfg.points[0], 1024);
  EXPECT_DOUBLE_EQ(cfg.lengths[0], 100.0);
  EXPECT_DOUBLE_EQ(cfg.schedule.c_step, 0.5);
  EXPECT_DOUBLE_EQ(cfg.schedule.gamma_exp, 2.0);
  EXPECT_DOUBLE_EQ(cfg.schedule.beta_exp, 2.0);
  EXPECT_EQ(cfg.initial.kind, "zero");
  EXPECT_EQ(cfg.seed, 0u);
}

TEST(Config, KgsDefaults) {
  const auto cfg = io::parse_config(R"({"system": "kgs", "schedule": {"c_step": 0.25}})");
  EXPECT_EQ(cfg.points, (std::array<int, 3>{32, 32, 32}));
  EXPECT_DOUBLE_EQ(cfg.lengths[1], 16.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(cfg.schedule.gamma_exp, 4.0);
  EXPECT_DOUBLE_EQ(cfg.schedule.beta_exp, 4.0);
  EXPECT_DOUBLE_EQ(cfg.schedule.c_step, 0.25);
}

TEST(Config, FullKgsConfig) {
  const auto cfg = io::parse_config(R"({
    "system": "kgs", "seed": 9, "t_end": 0.5,
    "grid": {"n": [8, 16, 32], "length": 10},
    "couplings": {"alpha": -1, "beta": 2, "gamma": 0.5},
    "initial": {"kind": "plane_wave", "amplitude": 0.1, "k": [0, 1, 0]},
    "picard": {"substeps": 8, "tol": 1e-9, "max_iter": 30},
    "output": {"dir": "d", "prefix": "p"}})");
  EXPECT_EQ(cfg.points, (std::array<int, 3>{8, 16, 32}));
  EXPECT_EQ(cfg.lengths, (std::array<double, 3>{10, 10, 10}));
  EXPECT_EQ(cfg.couplings, (kgs::Couplings{-1, 2, 0.5}));
  EXPECT_EQ(cfg.initial.k, (std::array<int, 3>{0, 1, 0}));
  EXPECT_EQ(cfg.picard.substeps, 8);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.prefix, "p");
}

TEST(Config, UnknownKeyNamesItsPath) {
  EXPECT_NE(schema_message(R"({"system": "zakharov", "schedule": {"betta": 2}})").find("schedule.betta"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"system": "zakharov", "colour": 1})").find("colour"), std::string::npos);
}

TEST(Config, TypeErrorsNameTheirPath) {
  EXPECT_NE(schema_message(R"({"system": "kgs", "couplings": {"alpha": "one"}})").find("couplings.alpha"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"system": "zakharov", "picard": {"substeps": 2.5}})").find("picard.substeps"),
            std::string::npos);
  EXPECT_NE(schema_message(R"({"system": "zakharov", "grid": {"n": 100}})").find("grid.n"), std::string::npos);
  EXPECT_NE(schema_message(R"({"system": "zakharov", "schedule": {"c_step": 2}})").find("schedule"),
            std::string::npos);
}

TEST(Config, RejectsMalformedDocuments) {
  schema_message("{");
  schema_message("[]");
  schema_message(R"({"system": "heat"})");
  schema_message(R"({"system": "zakharov", "t_end": -1})");
  schema_message(R"({"system": "zakharov", "initial": {"kind": "plane_wave"}})");
  schema_message(R"({"system": "kgs", "initial": {"kind": "soliton"}})");
  schema_message(R"({"system": "zakharov", "sweep": {}})");
  schema_message(R"({"system": "zakharov", "couplings": {"sign": 0.5}})");
}

TEST(Config, SweepTriplesRespectTheExponentRange) {
  const auto cfg = io::parse_config(
      R"({"system": "estimate_sweep", "seed": 4, "sweep": {"kind": "W", "triples": [[0.3, 0.35]], "lattices": [16, 32]}})");
  ASSERT_EQ(cfg.sweep.triples.size(), 1u);
  EXPECT_DOUBLE_EQ(cfg.sweep.triples[0].sum(), 1.0);
  EXPECT_EQ(cfg.sweep.seed, 4u);
  EXPECT_NE(schema_message(R"({"system": "estimate_sweep", "sweep": {"triples": [[0.2, 0.3, 0.3]]}})")
                .find("sweep.triples[0]"),
            std::string::npos);
  const auto relaxed = io::parse_config(
      R"({"system": "estimate_sweep", "sweep": {"triples": [[0.2, 0.3, 0.3]], "enforce_range": false}})");
  EXPECT_DOUBLE_EQ(relaxed.sweep.triples[0].e0, 0.2);
  schema_message(R"({"system": "estimate_sweep", "sweep": {"kind": "W", "triples": [[0.3, 0.3, 0.3]]}})");
  schema_message(R"({"system": "estimate_sweep", "sweep": {"lattices": [15]}})");
}

TEST(Checkpoint, ZakharovRoundTripIsBitExact) {
  const Grid1D g(64, 20.0);
  const auto s = zakharov::rough_data(g, 12);
  const zakharov::Model model{-1.0};
  const auto c = io::to_checkpoint(s, model, 77);
  const auto back = io::decode(io::encode(c));
  EXPECT_EQ(io::encode(back), io::encode(c));
  const auto s2 = io::zakharov_state(back);
  EXPECT_EQ(back.seed, 77u);
  EXPECT_EQ(io::zakharov_model(back).coupling_sign, -1.0);
  EXPECT_EQ(s2.grid(), g);
  for (std::size_t j = 0; j < g.size(); ++j) {
    EXPECT_EQ(std::memcmp(&s2.u[j], &s.u[j], sizeof(cplx)), 0);
    EXPECT_EQ(s2.wave.n[j].real(), to_physical(s.wave.n)[j].real());
  }
}

TEST(Checkpoint, KgsFileRoundTripIsBitExact) {
  const Grid3D g({8, 4, 8}, {5.0, 6.0, 7.0});
  auto s = kgs::rough_data(g, 5, {2.0, -1.0, 0.5});
  s.time = 1.25;
  const auto path = (std::filesystem::temp_directory_path() / "dduet_io_test.ckpt").string();
  io::save_checkpoint(io::to_checkpoint(s, 5), path);
  const auto c = io::load_checkpoint(path);
  const auto s2 = io::kgs_state(c);
  EXPECT_EQ(s2.time, 1.25);
  EXPECT_EQ(s2.couplings, s.couplings);
  EXPECT_EQ(s2.grid(), g);
  EXPECT_EQ(testing_support::max_diff(s2.u, s.u), 0.0);
  EXPECT_EQ(testing_support::max_diff(s2.wave.nt, s.wave.nt), 0.0);
  EXPECT_EQ(io::encode(io::to_checkpoint(s2, 5)), io::encode(c));
  std::filesystem::remove(path);
}

TEST(Checkpoint, HeaderIsLittleEndian) {
  const Grid1D g(8, 4.0);
  const auto bytes = io::encode(io::to_checkpoint(zakharov::rough_data(g, 1), {}, 0));
  EXPECT_EQ(bytes.size(), io::kHeaderBytes + 4 * 8 * 8);
  EXPECT_EQ(bytes.substr(0, 8), std::string("DDUET01\0", 8));
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 1);   // version
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 1);  // zakharov
  EXPECT_EQ(static_cast<unsigned char>(bytes[20]), 8);  // points[0]
}

TEST(Checkpoint, CorruptFilesAreRejected) {
  const Grid1D g(16, 4.0);
  const auto bytes = io::encode(io::to_checkpoint(zakharov::rough_data(g, 1), {}, 0));
  EXPECT_EQ(code_of([&] { io::decode("DDUET02" + bytes.substr(7)); }), ErrorCode::BadMagic);
  EXPECT_EQ(code_of([&] { io::decode(""); }), ErrorCode::BadMagic);
  EXPECT_EQ(code_of([&] { io::decode(bytes.substr(0, bytes.size() - 8)); }), ErrorCode::DimsMismatch);
  EXPECT_EQ(code_of([&] { io::decode(bytes.substr(0, 20)); }), ErrorCode::DimsMismatch);
  EXPECT_EQ(code_of([&] { io::decode(bytes + "x"); }), ErrorCode::DimsMismatch);
  std::string v2 = bytes;
  v2[8] = 2;
  EXPECT_EQ(code_of([&] { io::decode(v2); }), ErrorCode::VersionMismatch);
  std::string tag = bytes;
  tag[12] = 9;
  EXPECT_EQ(code_of([&] { io::decode(tag); }), ErrorCode::SystemMismatch);
  EXPECT_EQ(code_of([] { io::load_checkpoint("/nonexistent/dir/x.ckpt"); }), ErrorCode::Io);
}

TEST(Checkpoint, CrossSystemLoadIsRejected) {
  const auto z = io::decode(io::encode(io::to_checkpoint(zakharov::rough_data(Grid1D(16, 4.0), 1), {}, 0)));
  EXPECT_EQ(code_of([&] { io::kgs_state(z); }), ErrorCode::SystemMismatch);
  const Grid3D g({4, 4, 4}, {3.0, 3.0, 3.0});
  const auto k = io::decode(io::encode(io::to_checkpoint(kgs::rough_data(g, 1), 0)));
  EXPECT_EQ(code_of([&] { io::zakharov_state(k); }), ErrorCode::SystemMismatch);
}

TEST(Output, DoublesRoundTripThroughText) {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-310, 0.0}) EXPECT_EQ(std::strtod(io::format_double(x).c_str(), nullptr), x);
}

class OutputDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "dduet_io_out";
    std::filesystem::remove_all(dir_);
    setenv("DDUET_OUTPUT_DIR", dir_.c_str(), 1);
  }
  void TearDown() override {
    unsetenv("DDUET_OUTPUT_DIR");
    std::filesystem::remove_all(dir_);
  }
  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::filesystem::path dir_;
};

TEST_F(OutputDir, RunCsvIsDeterministicAndOverridden) {
  const auto cfg = io::parse_config(R"({"system": "zakharov", "seed": 3, "t_end": 0.3,
      "grid": {"n": 128, "length": 30}, "initial": {"kind": "rough"}, "output": {"dir": "elsewhere"}})");
  EXPECT_EQ(driver::output_dir(cfg), dir_.string());
  const auto first = driver::run(cfg);
  const std::string csv = read("run.csv");
  driver::run(cfg);
  EXPECT_EQ(read("run.csv"), csv);
  EXPECT_EQ(csv.rfind("# seed=3\n# system=zakharov\nt,dt,mass,hamiltonian,n_norm,picard_iters,retries\n", 0), 0u);
  EXPECT_EQ(first.status, RunStatus::Completed);
  EXPECT_EQ(first.summary["steps"].get<std::size_t>() + 4, static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "run.json"));

  const auto c = io::load_checkpoint((dir_ / "run.ckpt").string());
  EXPECT_DOUBLE_EQ(c.time, 0.3);
  const auto report = driver::verify(c);
  EXPECT_TRUE(report["finite"].get<bool>());
  EXPECT_NEAR(report["mass"].get<double>(), 1.0, 1e-5);
}

TEST_F(OutputDir, ZeroDataRunLogsZeroNorms) {
  const auto cfg = io::parse_config(R"({"system": "zakharov", "t_end": 1, "grid": {"n": 64, "length": 20}})");
  driver::run(cfg);
  std::istringstream csv(read("run.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    ASSERT_EQ(cols.size(), 7u);
    EXPECT_EQ(cols[2], "0");
    EXPECT_EQ(cols[3], "0");
    EXPECT_EQ(cols[4], "0");
  }
  EXPECT_GE(rows, 3);
}

TEST_F(OutputDir, SolitonSummaryReportsSmallDrift) {
  const auto cfg = io::parse_config(R"({"system": "zakharov", "seed": 2,
      "initial": {"kind": "soliton", "eta": 1, "speed": 0.5}, "output": {"prefix": "sol"}})");
  const auto out = driver::run(cfg);
  const auto summary = json::parse(read("sol.json"));
  EXPECT_EQ(summary["status"], "completed");
  EXPECT_EQ(summary["seed"], 2);
  EXPECT_LE(summary["mass_drift"].get<double>(), 1e-6);
  EXPECT_DOUBLE_EQ(summary["t_final"].get<double>(), 1.0);
  EXPECT_TRUE(summary["bound_c"].is_number());
  EXPECT_EQ(summary, out.summary);
}

TEST_F(OutputDir, SweepWritesOneRowPerCell) {
  const auto cfg = io::parse_config(R"({"system": "estimate_sweep", "seed": 2,
      "sweep": {"triples": [[0.3, 0.3, 0.3], [0.4, 0.4, 0.4]], "lattices": [8, 16], "samples": 1}})");
  driver::sweep(cfg);
  const std::string csv = read("run_sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3 + 4);
  EXPECT_EQ(code_of([&] { driver::run(cfg); }), ErrorCode::SchemaError);
  EXPECT_EQ(code_of([] { driver::sweep(io::parse_config(R"({"system": "kgs"})")); }), ErrorCode::SchemaError);
}

}  // namespace
}  // namespace dduet
