#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dduet/error.hpp"
#include "dduet/estimate_lab.hpp"
#include "dduet/globalizer.hpp"
#include "dduet/kgs.hpp"
#include "dduet/zakharov.hpp"

namespace dduet::io {

using json = nlohmann::json;

enum class Driver { Zakharov, KGS, EstimateSweep };

inline const char* to_string(Driver d) {
  switch (d) {
    case Driver::Zakharov: return "zakharov";
    case Driver::KGS: return "kgs";
    case Driver::EstimateSweep: return "estimate_sweep";
  }
  return "?";
}

struct InitialSpec {
  std::string kind = "zero";  // zero | soliton | rough | plane_wave | checkpoint
  double eta = 1.0;
  double speed = 0.5;
  double x0 = std::numeric_limits<double>::quiet_NaN();  // default: mid-period
  double epsilon = 0.01;
  double u_mass = 1.0;
  double wave_norm = 1.0;
  double amplitude = 1.0;
  std::array<int, 3> k{1, 0, 0};
  std::string path;
};

struct RunConfig {
  Driver driver = Driver::Zakharov;
  std::array<int, 3> points{1024, 1, 1};
  std::array<double, 3> lengths{100.0, 0.0, 0.0};
  kgs::Couplings couplings{};
  double coupling_sign = 1.0;
  InitialSpec initial;
  ScheduleParams schedule = ScheduleParams::defaults(System::Zakharov);
  PicardParams picard;
  double t_end = 1.0;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  std::string prefix = "run";
  lab::SweepConfig sweep;
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (path.empty() ? std::string("<root>") : path) + ": " + what);
}

// Typed access to one JSON object; finish() rejects keys that were never read.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) schema_error(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key, double fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) schema_error(sub(key), "expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) schema_error(sub(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) schema_error(sub(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) schema_error(sub(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (!take(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_array()) schema_error(sub(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) schema_error(sub(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  /// A number or an array of three numbers.
  std::array<double, 3> triple(const std::string& key, std::array<double, 3> fallback) {
    if (has(key) && j_.at(key).is_number()) {
      const double x = number(key, 0.0);
      return {x, x, x};
    }
    if (!has(key)) return fallback;
    const auto v = numbers(key, {});
    if (v.size() != 3) schema_error(sub(key), "expected a number or three numbers");
    return {v[0], v[1], v[2]};
  }

  const json* child(const std::string& key) {
    if (!take(key)) return nullptr;
    return &j_.at(key);
  }

  std::string sub(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) schema_error(sub(it.key()), "unknown key");
  }

 private:
  bool take(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline int as_int(std::int64_t v, const std::string& path, std::int64_t lo) {
  if (v < lo || v > (1 << 30)) schema_error(path, "value out of range");
  return static_cast<int>(v);
}

inline lab::FormKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "S") return lab::FormKind::S;
  if (s == "Sprime") return lab::FormKind::Sprime;
  if (s == "W") return lab::FormKind::W;
  schema_error(path, "expected S, Sprime or W");
}

inline lab::Family parse_family(const std::string& s, const std::string& path) {
  if (s == "gaussian") return lab::Family::Gaussian;
  if (s == "characteristic") return lab::Family::Characteristic;
  if (s == "random_phase") return lab::Family::RandomPhase;
  schema_error(path, "expected gaussian, characteristic or random_phase");
}

inline void parse_sweep(const json& j, const std::string& path, lab::SweepConfig& sweep) {
  ObjectReader r(j, path);
  sweep.kind = parse_kind(r.string("kind", "S"), r.sub("kind"));
  sweep.family = parse_family(r.string("family", "characteristic"), r.sub("family"));
  sweep.samples = as_int(r.integer("samples", 3), r.sub("samples"), 1);
  sweep.threads = static_cast<unsigned>(as_int(r.integer("threads", 0), r.sub("threads"), 0));
  const bool enforce = r.boolean("enforce_range", true);
  const auto policy = enforce ? lab::RangePolicy::Enforce : lab::RangePolicy::Override;

  sweep.lattice_sizes.clear();
  for (double n : r.numbers("lattices", {64, 128, 256})) {
    if (n != std::floor(n) || n < 2 || int(n) % 2) schema_error(r.sub("lattices"), "lattice sizes must be even integers");
    sweep.lattice_sizes.push_back(static_cast<int>(n));
  }

  sweep.triples.clear();
  const json* triples = r.child("triples");
  const std::size_t arity = sweep.kind == lab::FormKind::W ? 2 : 3;
  if (triples == nullptr) {
    const double t = 1.0 / 3.0;
    sweep.triples = {arity == 3 ? lab::ExponentTriple::schrodinger(t, t, t) : lab::ExponentTriple::wave(t, t)};
  } else {
    if (!triples->is_array() || triples->empty()) schema_error(r.sub("triples"), "expected a nonempty array");
    for (std::size_t i = 0; i < triples->size(); ++i) {
      const std::string p = r.sub("triples") + "[" + std::to_string(i) + "]";
      const json& t = (*triples)[i];
      if (!t.is_array() || t.size() != arity) schema_error(p, "expected " + std::to_string(arity) + " exponents");
      std::vector<double> e;
      for (const auto& x : t) {
        if (!x.is_number()) schema_error(p, "expected numbers");
        e.push_back(x.get<double>());
      }
      try {
        sweep.triples.push_back(arity == 3 ? lab::ExponentTriple::schrodinger(e[0], e[1], e[2], policy)
                                           : lab::ExponentTriple::wave(e[0], e[1], policy));
      } catch (const Error& err) {
        schema_error(p, err.what());
      }
    }
  }
  r.finish();
}

}  // namespace detail

/// Parses and validates a JSON run configuration; unknown keys and wrong types
/// raise SchemaError naming the key path.
inline RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    detail::schema_error("", std::string("malformed JSON: ") + e.what());
  }
  detail::ObjectReader root(doc, "");
  RunConfig cfg;
  const std::string system = root.string("system", "");
  if (system == "zakharov") cfg.driver = Driver::Zakharov;
  else if (system == "kgs") cfg.driver = Driver::KGS;
  else if (system == "estimate_sweep") cfg.driver = Driver::EstimateSweep;
  else detail::schema_error("system", "expected zakharov, kgs or estimate_sweep");

  if (cfg.driver == Driver::KGS) {
    cfg.points = {32, 32, 32};
    const double L = 16.0 * std::numbers::pi;
    cfg.lengths = {L, L, L};
    cfg.schedule = ScheduleParams::defaults(System::KGS);
  }
  cfg.seed = static_cast<std::uint64_t>(root.integer("seed", 0));
  if (doc.contains("seed") && doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() < 0)
    detail::schema_error("seed", "must be nonnegative");
  cfg.t_end = root.number("t_end", 1.0);
  if (!(cfg.t_end > 0.0)) detail::schema_error("t_end", "must be positive");

  if (const json* g = root.child("grid")) {
    detail::ObjectReader r(*g, "grid");
    if (cfg.driver == Driver::Zakharov) {
      cfg.points[0] = detail::as_int(r.integer("n", cfg.points[0]), "grid.n", 2);
      cfg.lengths[0] = r.number("length", cfg.lengths[0]);
    } else {
      std::array<double, 3> n{double(cfg.points[0]), double(cfg.points[1]), double(cfg.points[2])};
      n = r.triple("n", n);
      for (int a = 0; a < 3; ++a) {
        if (n[a] != std::floor(n[a])) detail::schema_error("grid.n", "expected integers");
        cfg.points[a] = detail::as_int(static_cast<std::int64_t>(n[a]), "grid.n", 2);
      }
      cfg.lengths = r.triple("length", cfg.lengths);
    }
    r.finish();
    const int axes = cfg.driver == Driver::Zakharov ? 1 : 3;
    for (int a = 0; a < axes; ++a) {
      if (cfg.points[a] & (cfg.points[a] - 1)) detail::schema_error("grid.n", "must be a power of two");
      if (!(cfg.lengths[a] > 0.0) || !std::isfinite(cfg.lengths[a]))
        detail::schema_error("grid.length", "must be positive");
    }
  }

  if (const json* c = root.child("couplings")) {
    detail::ObjectReader r(*c, "couplings");
    if (cfg.driver == Driver::Zakharov) {
      cfg.coupling_sign = r.number("sign", 1.0);
      if (cfg.coupling_sign != 1.0 && cfg.coupling_sign != -1.0) detail::schema_error("couplings.sign", "expected 1 or -1");
    } else {
      cfg.couplings.alpha = r.number("alpha", 1.0);
      cfg.couplings.beta = r.number("beta", 1.0);
      cfg.couplings.gamma = r.number("gamma", 1.0);
    }
    r.finish();
  }

  if (const json* i = root.child("initial")) {
    detail::ObjectReader r(*i, "initial");
    InitialSpec& in = cfg.initial;
    in.kind = r.string("kind", "zero");
    if (in.kind == "soliton") {
      in.eta = r.number("eta", in.eta);
      in.speed = r.number("speed", in.speed);
      in.x0 = r.number("x0", in.x0);
    } else if (in.kind == "rough") {
      in.epsilon = r.number("epsilon", in.epsilon);
      in.u_mass = r.number("u_mass", in.u_mass);
      in.wave_norm = r.number("wave_norm", in.wave_norm);
    } else if (in.kind == "plane_wave") {
      in.amplitude = r.number("amplitude", in.amplitude);
      const auto k = r.numbers("k", {1, 0, 0});
      if (k.size() != 3) detail::schema_error("initial.k", "expected three integers");
      for (int a = 0; a < 3; ++a) in.k[a] = static_cast<int>(k[a]);
    } else if (in.kind == "checkpoint") {
      in.path = r.string("path", "");
      if (in.path.empty()) detail::schema_error("initial.path", "checkpoint path required");
    } else if (in.kind != "zero") {
      detail::schema_error("initial.kind", "expected zero, soliton, rough, plane_wave or checkpoint");
    }
    const bool one_d = cfg.driver == Driver::Zakharov;
    if ((in.kind == "soliton" && !one_d) || (in.kind == "plane_wave" && one_d))
      detail::schema_error("initial.kind", in.kind + " is not available for " + to_string(cfg.driver));
    r.finish();
  }

  if (const json* s = root.child("schedule")) {
    detail::ObjectReader r(*s, "schedule");
    ScheduleParams& p = cfg.schedule;
    p.gamma_exp = r.number("gamma_exp", p.gamma_exp);
    p.beta_exp = r.number("beta_exp", p.beta_exp);
    p.delta_exp = r.number("delta_exp", p.delta_exp);
    p.c_step = r.number("c_step", p.c_step);
    p.min_step = r.number("min_step", p.min_step);
    r.finish();
    try {
      p.validate();
    } catch (const Error& e) {
      detail::schema_error("schedule", e.what());
    }
  }

  if (const json* p = root.child("picard")) {
    detail::ObjectReader r(*p, "picard");
    cfg.picard.substeps = detail::as_int(r.integer("substeps", cfg.picard.substeps), "picard.substeps", 2);
    cfg.picard.tol = r.number("tol", cfg.picard.tol);
    cfg.picard.max_iter = detail::as_int(r.integer("max_iter", cfg.picard.max_iter), "picard.max_iter", 1);
    r.finish();
    if (!(cfg.picard.tol > 0.0)) detail::schema_error("picard.tol", "must be positive");
  }

  if (const json* o = root.child("output")) {
    detail::ObjectReader r(*o, "output");
    cfg.output_dir = r.string("dir", cfg.output_dir);
    cfg.prefix = r.string("prefix", cfg.prefix);
    r.finish();
  }

  if (const json* s = root.child("sweep")) {
    if (cfg.driver != Driver::EstimateSweep) detail::schema_error("sweep", "only valid for estimate_sweep");
    detail::parse_sweep(*s, "sweep", cfg.sweep);
  } else if (cfg.driver == Driver::EstimateSweep) {
    detail::parse_sweep(json::object(), "sweep", cfg.sweep);
  }
  cfg.sweep.seed = cfg.seed;
  root.finish();
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// 17 significant digits: round-trips every double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string run_csv(const RunLog& log, std::uint64_t seed, const std::string& system) {
  std::string out = "# seed=" + std::to_string(seed) + "\n# system=" + system + "\n";
  out += "t,dt,mass,hamiltonian,n_norm,picard_iters,retries\n";
  for (const auto& r : log.records) {
    out += format_double(r.time) + "," + format_double(r.dt) + "," + format_double(r.mass) + "," +
           format_double(r.hamiltonian) + "," + format_double(r.n_norm) + "," + std::to_string(r.picard_iters) +
           "," + std::to_string(r.retries) + "\n";
  }
  return out;
}

inline std::string sweep_csv(const std::vector<lab::SweepRow>& rows, const lab::SweepConfig& cfg) {
  std::string out = "# seed=" + std::to_string(cfg.seed) + "\n# kind=" + lab::to_string(cfg.kind) +
                    " family=" + lab::to_string(cfg.family) + "\n";
  out += "triple,e0,e1,e2,exponent_sum,side,lattice,ratio,growth\n";
  for (const auto& r : rows) {
    const char* side = r.side < 0 ? "below" : (r.side > 0 ? "above" : "threshold");
    out += std::to_string(r.triple_index) + "," + format_double(r.exps.e0) + "," + format_double(r.exps.e1) + "," +
           format_double(r.exps.e2) + "," + format_double(r.exps.sum()) + "," + side + "," +
           std::to_string(r.lattice) + "," + format_double(r.ratio) + "," + format_double(r.growth) + "\n";
  }
  return out;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot write " + path);
  out << text;
  require(static_cast<bool>(out), ErrorCode::Io, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Checkpoints
//
//   bytes  0..7   "DDUET01\0"
//   u32           format version
//   u32           system tag (1 zakharov, 2 kgs)
//   u32           number of axes
//   u32 x 3       points per axis (1 for unused axes)
//   f64 x 3       period per axis (0 for unused axes)
//   f64 x 3       alpha, beta, gamma (zakharov: the coupling sign in all three)
//   f64           time
//   u64           seed
//   f64 x 4P      Re u, Im u, n, dn/dt in physical order, P = product of points
// All integers and floats little-endian.

inline constexpr char kMagic[8] = {'D', 'D', 'U', 'E', 'T', '0', '1', '\0'};
inline constexpr std::uint32_t kCheckpointVersion = 1;
inline constexpr std::size_t kHeaderBytes = 8 + 4 * 6 + 8 * 3 + 8 * 3 + 8 + 8;

struct Checkpoint {
  System system = System::Zakharov;
  std::uint32_t axes = 1;
  std::array<std::uint32_t, 3> points{1, 1, 1};
  std::array<double, 3> lengths{0.0, 0.0, 0.0};
  std::array<double, 3> couplings{1.0, 1.0, 1.0};
  double time = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> re_u, im_u, n, nt;

  std::size_t size() const { return std::size_t(points[0]) * points[1] * points[2]; }
};

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}
inline void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}
inline void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Cursor {
 public:
  explicit Cursor(const std::string& bytes) : b_(bytes) {}
  bool has(std::size_t n) const { return pos_ + n <= b_.size(); }
  std::uint64_t u64() { return read(8); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(read(4)); }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return b_.size() - pos_; }

 private:
  std::uint64_t read(int n) {
    std::uint64_t v = 0;
    for (int b = 0; b < n; ++b) v |= std::uint64_t(static_cast<unsigned char>(b_[pos_ + b])) << (8 * b);
    pos_ += n;
    return v;
  }
  const std::string& b_;
  std::size_t pos_ = 0;
};

template <PeriodicGrid G>
void append_field(std::vector<double>& re, std::vector<double>* im, const Field<G>& f) {
  const Field<G> p = to_physical(f);
  for (const auto& z : p.values()) {
    re.push_back(z.real());
    if (im) im->push_back(z.imag());
  }
}

}  // namespace detail

inline std::string encode(const Checkpoint& c) {
  const std::size_t P = c.size();
  require(c.re_u.size() == P && c.im_u.size() == P && c.n.size() == P && c.nt.size() == P,
          ErrorCode::DimsMismatch, "checkpoint payload does not match its dims");
  std::string out(kMagic, kMagic + 8);
  detail::put_u32(out, kCheckpointVersion);
  detail::put_u32(out, c.system == System::Zakharov ? 1u : 2u);
  detail::put_u32(out, c.axes);
  for (auto p : c.points) detail::put_u32(out, p);
  for (double l : c.lengths) detail::put_f64(out, l);
  for (double x : c.couplings) detail::put_f64(out, x);
  detail::put_f64(out, c.time);
  detail::put_u64(out, c.seed);
  for (const auto* v : {&c.re_u, &c.im_u, &c.n, &c.nt})
    for (double x : *v) detail::put_f64(out, x);
  return out;
}

inline Checkpoint decode(const std::string& bytes) {
  require(bytes.size() >= 8 && std::equal(kMagic, kMagic + 8, bytes.begin()), ErrorCode::BadMagic,
          "not a checkpoint (bad magic)");
  require(bytes.size() >= kHeaderBytes, ErrorCode::DimsMismatch, "checkpoint header truncated");
  detail::Cursor cur(bytes);
  cur.u64();  // magic
  Checkpoint c;
  const std::uint32_t version = cur.u32();
  require(version == kCheckpointVersion, ErrorCode::VersionMismatch,
          "checkpoint version " + std::to_string(version) + ", expected " + std::to_string(kCheckpointVersion));
  const std::uint32_t tag = cur.u32();
  require(tag == 1 || tag == 2, ErrorCode::SystemMismatch, "unknown system tag " + std::to_string(tag));
  c.system = tag == 1 ? System::Zakharov : System::KGS;
  c.axes = cur.u32();
  for (auto& p : c.points) p = cur.u32();
  require((c.axes == 1 && c.system == System::Zakharov && c.points[1] == 1 && c.points[2] == 1) ||
              (c.axes == 3 && c.system == System::KGS),
          ErrorCode::DimsMismatch, "axis count does not match the system");
  for (auto& l : c.lengths) l = cur.f64();
  for (auto& x : c.couplings) x = cur.f64();
  c.time = cur.f64();
  c.seed = cur.u64();
  const std::size_t P = c.size();
  require(P > 0 && cur.remaining() == 4 * 8 * P, ErrorCode::DimsMismatch,
          "payload holds " + std::to_string(cur.remaining()) + " bytes, dims need " + std::to_string(32 * P));
  for (auto* v : {&c.re_u, &c.im_u, &c.n, &c.nt}) {
    v->resize(P);
    for (auto& x : *v) x = cur.f64();
  }
  return c;
}

inline Checkpoint to_checkpoint(const zakharov::ZakharovState& s, const zakharov::Model& m, std::uint64_t seed) {
  Checkpoint c;
  c.system = System::Zakharov;
  c.axes = 1;
  c.points = {static_cast<std::uint32_t>(s.grid().n), 1, 1};
  c.lengths = {s.grid().length, 0.0, 0.0};
  c.couplings = {m.coupling_sign, m.coupling_sign, m.coupling_sign};
  c.time = s.time;
  c.seed = seed;
  detail::append_field(c.re_u, &c.im_u, s.u);
  detail::append_field(c.n, nullptr, s.wave.n);
  detail::append_field(c.nt, nullptr, s.wave.nt);
  return c;
}

inline Checkpoint to_checkpoint(const kgs::KGSState& s, std::uint64_t seed) {
  Checkpoint c;
  c.system = System::KGS;
  c.axes = 3;
  const auto& g = s.grid();
  c.points = {std::uint32_t(g.n[0]), std::uint32_t(g.n[1]), std::uint32_t(g.n[2])};
  c.lengths = g.length;
  c.couplings = {s.couplings.alpha, s.couplings.beta, s.couplings.gamma};
  c.time = s.time;
  c.seed = seed;
  detail::append_field(c.re_u, &c.im_u, s.u);
  detail::append_field(c.n, nullptr, s.wave.n);
  detail::append_field(c.nt, nullptr, s.wave.nt);
  return c;
}

namespace detail {

template <PeriodicGrid G>
Field<G> complex_field(const G& g, const std::vector<double>& re, const std::vector<double>& im) {
  Field<G> f(g);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = cplx(re[j], im[j]);
  return f;
}

template <PeriodicGrid G>
Field<G> real_field(const G& g, const std::vector<double>& re) {
  Field<G> f(g);
  for (std::size_t j = 0; j < f.size(); ++j) f[j] = re[j];
  return f;
}

}  // namespace detail

inline zakharov::ZakharovState zakharov_state(const Checkpoint& c) {
  require(c.system == System::Zakharov, ErrorCode::SystemMismatch, "checkpoint holds a kgs state");
  const Grid1D g(static_cast<int>(c.points[0]), c.lengths[0]);
  return {c.time, detail::complex_field(g, c.re_u, c.im_u),
          WavePair<Grid1D>(detail::real_field(g, c.n), detail::real_field(g, c.nt))};
}

inline zakharov::Model zakharov_model(const Checkpoint& c) { return {c.couplings[2]}; }

inline kgs::KGSState kgs_state(const Checkpoint& c) {
  require(c.system == System::KGS, ErrorCode::SystemMismatch, "checkpoint holds a zakharov state");
  const Grid3D g({int(c.points[0]), int(c.points[1]), int(c.points[2])}, c.lengths);
  return {c.time, detail::complex_field(g, c.re_u, c.im_u),
          WavePair<Grid3D>(detail::real_field(g, c.n), detail::real_field(g, c.nt)),
          kgs::Couplings{c.couplings[0], c.couplings[1], c.couplings[2]}};
}

inline void save_checkpoint(const Checkpoint& c, const std::string& path) { write_text(path, encode(c)); }

inline Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot read checkpoint " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return decode(ss.str());
}

}  // namespace dduet::io
