#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include "dduet/io.hpp"

namespace dduet::driver {

using io::json;

/// DDUET_OUTPUT_DIR, when set and nonempty, replaces the configured directory.
inline std::string output_dir(const io::RunConfig& cfg) {
  const char* env = std::getenv("DDUET_OUTPUT_DIR");
  return (env != nullptr && *env != '\0') ? std::string(env) : cfg.output_dir;
}

inline zakharov::ZakharovState initial_zakharov(const io::RunConfig& cfg) {
  const auto& in = cfg.initial;
  if (in.kind == "checkpoint") return io::zakharov_state(io::load_checkpoint(in.path));
  const Grid1D g(cfg.points[0], cfg.lengths[0]);
  if (in.kind == "soliton") {
    const double x0 = std::isnan(in.x0) ? 0.5 * g.length : in.x0;
    return zakharov::soliton(in.eta, in.speed, x0, g);
  }
  if (in.kind == "rough") return zakharov::rough_data(g, cfg.seed, {in.epsilon, in.u_mass, in.wave_norm});
  return {0.0, Field<Grid1D>(g), WavePair<Grid1D>(Field<Grid1D>(g), Field<Grid1D>(g))};
}

inline kgs::KGSState initial_kgs(const io::RunConfig& cfg) {
  const auto& in = cfg.initial;
  if (in.kind == "checkpoint") return io::kgs_state(io::load_checkpoint(in.path));
  const Grid3D g(cfg.points, cfg.lengths);
  if (in.kind == "plane_wave") return kgs::plane_wave(in.amplitude, in.k, g, cfg.couplings);
  if (in.kind == "rough")
    return kgs::rough_data(g, cfg.seed, cfg.couplings, {in.epsilon, in.u_mass, in.wave_norm});
  return {0.0, Field<Grid3D>(g), WavePair<Grid3D>(Field<Grid3D>(g), Field<Grid3D>(g)), cfg.couplings};
}

struct Outcome {
  json summary;
  RunStatus status = RunStatus::Completed;
};

namespace detail {

inline std::string prepare(const io::RunConfig& cfg) {
  const std::string dir = output_dir(cfg);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::Io, "cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

template <class State, class Options>
Outcome finish_run(const io::RunConfig& cfg, const State& initial, const Options& options,
                   std::function<io::Checkpoint(const State&)> checkpoint) {
  using Traits = SystemTraits<State>;
  const std::string dir = prepare(cfg);
  const auto start = std::chrono::steady_clock::now();
  const double t_end = initial.time + cfg.t_end;
  const RunResult<State> result = run(initial, t_end, cfg.schedule, cfg.picard, options);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string base = dir + "/" + cfg.prefix;
  const std::string system = to_string(Traits::kind);
  io::write_text(base + ".csv", io::run_csv(result.log, cfg.seed, system));
  io::save_checkpoint(checkpoint(result.final_state), base + ".ckpt");

  const BoundFit fit = bound_check(result.log, Traits::mass(initial), Traits::n_norm(initial));
  Outcome out;
  out.status = result.status;
  out.summary = {{"system", system},
                 {"seed", cfg.seed},
                 {"status", to_string(result.status)},
                 {"message", result.message},
                 {"steps", result.log.records.size() - 1},
                 {"t_final", result.final_state.time},
                 {"mass_drift", result.log.max_mass_drift()},
                 {"bound_c", fit.c},
                 {"bound_base", fit.base},
                 {"bound_pass", fit.pass},
                 {"wall_time_s", wall},
                 {"csv", base + ".csv"},
                 {"checkpoint", base + ".ckpt"}};
  io::write_text(base + ".json", out.summary.dump(2) + "\n");
  return out;
}

}  // namespace detail

/// Runs the globalizer from the configured data; writes <prefix>.csv, .ckpt and .json.
inline Outcome run(const io::RunConfig& cfg) {
  if (cfg.driver == io::Driver::Zakharov) {
    const auto s0 = initial_zakharov(cfg);
    const zakharov::Model model = cfg.initial.kind == "checkpoint"
                                      ? io::zakharov_model(io::load_checkpoint(cfg.initial.path))
                                      : zakharov::Model{cfg.coupling_sign};
    return detail::finish_run<zakharov::ZakharovState, zakharov::Model>(
        cfg, s0, model, [&](const zakharov::ZakharovState& s) { return io::to_checkpoint(s, model, cfg.seed); });
  }
  if (cfg.driver == io::Driver::KGS) {
    const auto s0 = initial_kgs(cfg);
    return detail::finish_run<kgs::KGSState, SystemTraits<kgs::KGSState>::Options>(
        cfg, s0, {}, [&](const kgs::KGSState& s) { return io::to_checkpoint(s, cfg.seed); });
  }
  throw Error(ErrorCode::SchemaError, "system: estimate_sweep configs run with the sweep subcommand");
}

/// Runs the exponent sweep; writes <prefix>_sweep.csv and <prefix>.json.
inline Outcome sweep(const io::RunConfig& cfg) {
  require(cfg.driver == io::Driver::EstimateSweep, ErrorCode::SchemaError,
          "system: the sweep subcommand needs system estimate_sweep");
  const std::string dir = detail::prepare(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto rows = lab::exponent_sweep(cfg.sweep);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string base = dir + "/" + cfg.prefix;
  io::write_text(base + "_sweep.csv", io::sweep_csv(rows, cfg.sweep));
  Outcome out;
  out.summary = {{"system", "estimate_sweep"},
                 {"seed", cfg.seed},
                 {"kind", lab::to_string(cfg.sweep.kind)},
                 {"rows", rows.size()},
                 {"wall_time_s", wall},
                 {"csv", base + "_sweep.csv"}};
  io::write_text(base + ".json", out.summary.dump(2) + "\n");
  return out;
}

/// Recomputes the invariants of a stored state.
inline json verify(const io::Checkpoint& c) {
  json out = {{"system", to_string(c.system)}, {"time", c.time}, {"seed", c.seed}};
  double mass, n_norm, energy;
  if (c.system == System::Zakharov) {
    const auto s = io::zakharov_state(c);
    mass = zakharov::mass(s.u);
    n_norm = w_norm(s.wave);
    energy = SystemTraits<zakharov::ZakharovState>::hamiltonian(s, io::zakharov_model(c));
  } else {
    const auto s = io::kgs_state(c);
    mass = kgs::mass(s.u);
    n_norm = g_norm(s.wave);
    energy = SystemTraits<kgs::KGSState>::hamiltonian(s, {});
    if (s.couplings.beta != 0.0) out["conserved_energy"] = kgs::conserved_energy(s);
  }
  out["mass"] = mass;
  out["n_norm"] = n_norm;
  out["hamiltonian"] = std::isfinite(energy) ? json(energy) : json(nullptr);
  bool finite = std::isfinite(mass) && std::isfinite(n_norm);
  for (const auto* v : {&c.re_u, &c.im_u, &c.n, &c.nt})
    for (double x : *v) finite = finite && std::isfinite(x);
  out["finite"] = finite;
  return out;
}

inline json info(const io::Checkpoint& c) {
  return {{"format_version", io::kCheckpointVersion},
          {"system", to_string(c.system)},
          {"axes", c.axes},
          {"points", c.points},
          {"lengths", c.lengths},
          {"couplings", c.couplings},
          {"time", c.time},
          {"seed", c.seed}};
}

}  // namespace dduet::driver
