// dduet command line: run, sweep, verify, info.
//
// Exit codes: 0 ok, 1 usage, 2 schema or invalid config value, 3 Picard
// iteration did not contract, 4 step size underflow, 5 i/o or checkpoint format.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dduet/driver.hpp"

namespace {

enum Exit { kOk = 0, kUsage = 1, kSchema = 2, kNoContraction = 3, kStepUnderflow = 4, kIo = 5 };

int exit_code(dduet::ErrorCode code) {
  using dduet::ErrorCode;
  switch (code) {
    case ErrorCode::NoContraction: return kNoContraction;
    case ErrorCode::StepUnderflow: return kStepUnderflow;
    case ErrorCode::Io:
    case ErrorCode::BadMagic:
    case ErrorCode::VersionMismatch:
    case ErrorCode::DimsMismatch:
    case ErrorCode::SystemMismatch: return kIo;
    default: return kSchema;
  }
}

int exit_code(dduet::RunStatus status) {
  switch (status) {
    case dduet::RunStatus::Completed: return kOk;
    case dduet::RunStatus::NoContraction: return kNoContraction;
    case dduet::RunStatus::StepUnderflow: return kStepUnderflow;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dduet: Zakharov and Klein-Gordon-Schrodinger solvers and estimate lab"};
  app.require_subcommand(1);

  std::string config_path, checkpoint_path;
  auto* run = app.add_subcommand("run", "advance a zakharov or kgs configuration");
  run->add_option("config", config_path, "JSON configuration")->required();
  auto* sweep = app.add_subcommand("sweep", "run an estimate_sweep configuration");
  sweep->add_option("config", config_path, "JSON configuration")->required();
  auto* verify = app.add_subcommand("verify", "recompute mass, energy and n-norm of a checkpoint");
  verify->add_option("checkpoint", checkpoint_path, "checkpoint file")->required();
  auto* info = app.add_subcommand("info", "print a checkpoint header");
  info->add_option("checkpoint", checkpoint_path, "checkpoint file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed() || sweep->parsed()) {
      const auto cfg = dduet::io::load_config(config_path);
      const auto out = run->parsed() ? dduet::driver::run(cfg) : dduet::driver::sweep(cfg);
      std::cout << out.summary.dump(2) << "\n";
      if (out.status != dduet::RunStatus::Completed)
        std::cerr << "error: " << out.summary.value("message", std::string()) << "\n";
      return exit_code(out.status);
    }
    const auto ckpt = dduet::io::load_checkpoint(checkpoint_path);
    if (info->parsed()) {
      std::cout << dduet::driver::info(ckpt).dump(2) << "\n";
      return kOk;
    }
    const auto report = dduet::driver::verify(ckpt);
    std::cout << report.dump(2) << "\n";
    return report["finite"].get<bool>() ? kOk : kIo;
  } catch (const dduet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
}
