#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "kitaev/ed.hpp"
#include "kitaev/error.hpp"
#include "kitaev/io.hpp"
#include "kitaev/model.hpp"
#include "kitaev/mzm.hpp"
#include "kitaev/topo.hpp"
#include "kitaev/vqe.hpp"

namespace kitaev::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// flags -> key/value settings

class Settings {
 public:
  explicit Settings(CLI::App* app) : app_(app) {
    app_->add_option("--config", config_path_, "key = value file; flags override it");
  }

  void option(const std::string& flag, const std::string& key,
              const std::string& help) {
    auto* o = app_->add_option(flag, text_[flag], help);
    entries_.push_back({key, flag, o, false});
  }
  void list(const std::string& flag, const std::string& key,
            const std::string& help) {
    auto* o = app_->add_option(flag, lists_[flag], help)->delimiter(',');
    entries_.push_back({key, flag, o, true});
  }
  void flag(const std::string& flag, const std::string& key,
            const std::string& help) {
    auto* o = app_->add_flag(flag, help);
    flags_.push_back({key, o});
  }

  io::KeyValueConfig resolve() const {
    io::KeyValueConfig cfg;
    if (!config_path_.empty()) cfg = io::KeyValueConfig::load(config_path_);
    for (const auto& e : entries_) {
      if (e.opt->count() == 0) continue;
      if (!e.is_list) {
        cfg.set(e.key, text_.at(e.flag));
        continue;
      }
      std::string joined;
      for (const auto& v : lists_.at(e.flag)) {
        if (!joined.empty()) joined += ',';
        joined += v;
      }
      cfg.set(e.key, joined);
    }
    for (const auto& [key, opt] : flags_) {
      if (opt->count() > 0) cfg.set(key, "true");
    }
    return cfg;
  }

 private:
  struct Entry {
    std::string key;
    std::string flag;
    CLI::Option* opt;
    bool is_list;
  };
  CLI::App* app_;
  std::string config_path_;
  std::map<std::string, std::string> text_;
  std::map<std::string, std::vector<std::string>> lists_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, CLI::Option*>> flags_;
};

void add_common(Settings& s) {
  s.option("--n", "n_sites", "number of sites");
  s.option("--jx", "jx", "spin coupling Jx");
  s.option("--jy", "jy", "spin coupling Jy");
  s.option("--jz", "jz", "spin coupling Jz");
  s.option("--hz", "hz", "field hz");
  s.option("--t", "t", "hopping t");
  s.option("--delta-pair", "delta", "pairing Delta");
  s.option("--v", "v", "interaction V");
  s.option("--mu", "mu", "chemical potential mu");
  s.option("--boundary", "boundary", "open | periodic");
  s.option("--seed", "seed", "random seed");
  s.option("--out", "out", "output directory");
  s.option("--threads", "threads", "worker cap");
}

void add_vqe_options(Settings& s) {
  s.option("--layers", "layers", "ansatz layers M");
  s.option("--trials", "trials", "random restarts");
  s.option("--gradient", "gradient", "adjoint | finite-difference");
  s.option("--anneal-steps", "anneal_steps", "annealing steps per trial");
}

// ---------------------------------------------------------------------------
// typed access

std::string require(const io::KeyValueConfig& c, const std::string& key) {
  auto v = c.get(key);
  if (!v) throw UsageError("missing required setting '" + key + "'");
  return *v;
}

int get_int(const io::KeyValueConfig& c, const std::string& key, int fallback) {
  return c.get_int(key).value_or(fallback);
}

double get_double(const io::KeyValueConfig& c, const std::string& key,
                  double fallback) {
  return c.get_double(key).value_or(fallback);
}

bool get_bool(const io::KeyValueConfig& c, const std::string& key, bool fallback) {
  const auto v = c.get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw InvalidArgument("setting '" + key + "': expected true or false");
}

int parse_parity(const std::string& text) {
  if (text == "even" || text == "+1" || text == "1") return 1;
  if (text == "odd" || text == "-1") return -1;
  throw InvalidArgument("parity must be 'even' or 'odd', got '" + text + "'");
}

std::vector<double> get_double_list(const io::KeyValueConfig& c,
                                    const std::string& key) {
  std::vector<double> out;
  const auto v = c.get(key);
  if (!v) return out;
  std::stringstream ss(*v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    io::KeyValueConfig one;
    one.set(key, item);
    out.push_back(*one.get_double(key));
  }
  return out;
}

model::ParameterPoint parameter_point(const io::KeyValueConfig& c, bool need_n) {
  if (need_n) require(c, "n_sites");
  std::string text;
  for (const char* k : {"jx", "jy", "jz", "hz", "t", "delta", "v", "mu",
                        "n_sites", "boundary"}) {
    if (auto v = c.get(k)) text += std::string(k) + " = " + *v + "\n";
  }
  return model::parameter_point_from_text(text);
}

json couplings_json(const model::CouplingSet& cs) {
  const auto& s = cs.spin();
  const auto& f = cs.fermion();
  return {{"jx", s.jx}, {"jy", s.jy}, {"jz", s.jz}, {"hz", s.hz},
          {"t", f.t},   {"delta", f.delta}, {"v", f.v}, {"mu", f.mu}};
}

json point_json(const model::ParameterPoint& p) {
  return {{"n_sites", p.n_sites},
          {"boundary", model::to_string(p.boundary)},
          {"couplings", couplings_json(p.couplings)}};
}

vqe::VqeConfig vqe_config(const io::KeyValueConfig& c, json& echo) {
  vqe::VqeConfig v;
  v.layers = get_int(c, "layers", v.layers);
  v.trials = get_int(c, "trials", v.trials);
  v.seed = static_cast<std::uint64_t>(get_int(c, "seed", static_cast<int>(v.seed)));
  v.threads = get_int(c, "threads", v.threads);
  v.anneal.steps = get_int(c, "anneal_steps", v.anneal.steps);
  if (auto g = c.get("gradient")) v.gradient = vqe::parse_gradient_method(*g);
  if (v.layers < 1 || v.trials < 1 || v.threads < 1) {
    throw InvalidArgument("layers, trials and threads must be positive");
  }
  echo["layers"] = v.layers;
  echo["trials"] = v.trials;
  echo["seed"] = v.seed;
  echo["threads"] = v.threads;
  echo["gradient"] = vqe::to_string(v.gradient);
  echo["anneal"] = {{"steps", v.anneal.steps},
                    {"initial_temperature", v.anneal.initial_temperature},
                    {"cooling", v.anneal.cooling},
                    {"step_size", v.anneal.step_size}};
  echo["bfgs"] = {{"tolerance", v.bfgs.tolerance},
                  {"max_iterations", v.bfgs.max_iterations}};
  return v;
}

// ---------------------------------------------------------------------------
// output files and manifest

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return out.str();
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

class Output {
 public:
  Output(const io::KeyValueConfig& c, std::string command)
      : dir_(c.get("out").value_or(".")),
        command_(std::move(command)),
        started_(utc_now()),
        t0_(std::chrono::steady_clock::now()) {
    fs::create_directories(dir_);
  }

  const fs::path& dir() const { return dir_; }

  void write(const std::string& name, const std::string& contents) {
    io::write_file((dir_ / name).string(), contents);
    files_.push_back({{"file", name}, {"sha256", sha256_hex(contents)}});
  }

  void write_json(const std::string& name, const json& j) {
    write(name, j.dump(2) + "\n");
  }

  void finish(const json& config) {
    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0_)
                            .count();
    json m = {{"schema", "kitaev.manifest/1"},
              {"command", command_},
              {"version", KITAEV_VERSION},
              {"config", config},
              {"started_utc", started_},
              {"wall_seconds", wall},
              {"outputs", files_}};
    io::write_file((dir_ / "manifest.json").string(), m.dump(2) + "\n");
  }

 private:
  fs::path dir_;
  std::string command_;
  std::string started_;
  std::chrono::steady_clock::time_point t0_;
  json files_ = json::array();
};

json result_header(const std::string& schema, const json& config) {
  return {{"schema", schema}, {"manifest", "manifest.json"}, {"config", config}};
}

std::string fmt(double x) { return io::format_double(x); }

json nullable_int(const std::optional<int>& v) {
  return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------------------
// commands

int cmd_vqe(const io::KeyValueConfig& c) {
  const auto pp = parameter_point(c, true);
  const int parity = parse_parity(c.get("parity").value_or("even"));
  const bool compare = get_bool(c, "compare_ed", false);
  json config = point_json(pp);
  config["parity"] = parity;
  config["compare_ed"] = compare;
  const auto vc = vqe_config(c, config);

  Output out(c, "vqe");
  const auto r = vqe::optimize(pp.couplings, pp.n_sites, vc, parity);

  std::string csv = "# kitaev.vqe_trials/1\ntrial,energy,anneal_energy,iterations,evaluations,converged\n";
  json trials = json::array();
  for (std::size_t i = 0; i < r.trials.size(); ++i) {
    const auto& t = r.trials[i];
    csv += std::to_string(i) + "," + fmt(t.energy) + "," + fmt(t.anneal_energy) + "," +
           std::to_string(t.iterations) + "," + std::to_string(t.evaluations) + "," +
           (t.converged ? "1" : "0") + "\n";
    trials.push_back({{"energy", t.energy}, {"converged", t.converged}});
  }

  json res = result_header("kitaev.vqe/1", config);
  res["energy"] = r.energy;
  res["best_trial"] = r.best_trial;
  res["converged"] = r.converged;
  res["parity_measured"] = r.parity_measured;
  res["trials"] = trials;
  res["angles_file"] = "angles.txt";
  if (compare) {
    const auto sp = ed::diagonalize(pp.couplings, pp.n_sites, model::Boundary::Open);
    res["ed_energy"] = sp.ground_energy(parity);
    res["error"] = r.energy - sp.ground_energy(parity);
  }

  out.write("trials.csv", csv);
  out.write("angles.txt",
            vqe::angles_to_text({pp.n_sites, vc.layers, parity, r.angles}));
  out.write_json("vqe.json", res);
  out.finish(config);
  if (!r.converged) std::cerr << "warning: best trial did not converge\n";
  std::cout << "energy " << fmt(r.energy) << "\n";
  return kExitOk;
}

struct WindingOutcome {
  std::optional<int> winding;
  std::string status = "ok";
  std::string message;
};

template <class F>
WindingOutcome guarded_winding(F&& f) {
  WindingOutcome o;
  try {
    o.winding = f();
  } catch (const IllDefinedWinding& e) {
    o.status = "ill_defined";
    o.message = e.what();
  } catch (const InconsistentWinding& e) {
    o.status = "inconsistent";
    o.message = e.what();
  } catch (const DegenerateGroundState& e) {
    o.status = "degenerate";
    o.message = e.what();
  }
  return o;
}

int cmd_winding(const io::KeyValueConfig& c) {
  const auto pp = parameter_point(c, true);
  const auto deltas = get_double_list(c, "damping");
  if (deltas.empty()) throw UsageError("missing required setting 'damping' (--delta)");
  const auto angles_path = c.get("angles");
  const std::string gs_kind = c.get("gs").value_or(angles_path ? "vqe" : "ed");
  if (gs_kind != "vqe" && gs_kind != "ed") throw UsageError("--gs must be 'vqe' or 'ed'");
  if (gs_kind == "vqe" && !angles_path) throw UsageError("--gs vqe needs --angles");
  const int parity = parse_parity(c.get("parity").value_or("even"));
  const bool compare = get_bool(c, "compare_ed", gs_kind == "ed");

  topo::GreenConfig base;
  base.t_delta = get_double(c, "tdelta", base.t_delta);
  base.dt = get_double(c, "dt", base.dt);
  base.boundary = pp.boundary;
  base.threads = get_int(c, "threads", 1);
  if (auto b = c.get("backend")) base.overlap.backend = topo::parse_backend(*b);
  if (auto s = c.get_int("shots")) {
    if (*s < 1) throw InvalidArgument("shots must be positive");
    base.overlap.shots = static_cast<std::uint64_t>(*s);
  }
  base.overlap.seed = static_cast<std::uint64_t>(get_int(c, "seed", 1));

  json config = point_json(pp);
  config["damping"] = deltas;
  config["tdelta"] = base.t_delta;
  config["dt"] = base.dt;
  config["gs"] = gs_kind;
  config["parity"] = parity;
  config["backend"] = topo::to_string(base.overlap.backend);
  config["shots"] = base.overlap.shots ? json(*base.overlap.shots) : json(nullptr);
  config["seed"] = base.overlap.seed;
  config["threads"] = base.threads;
  config["compare_ed"] = compare;

  std::optional<ed::Spectrum> sp;
  if (gs_kind == "ed" || compare) {
    sp.emplace(ed::diagonalize(pp.couplings, pp.n_sites, pp.boundary));
  }
  qsim::StateVector gs(pp.n_sites);
  if (gs_kind == "ed") {
    gs = sp->state(parity);
  } else {
    const auto af = vqe::load_angles(*angles_path);
    if (af.n_sites != pp.n_sites) {
      throw InvalidArgument("angle file is for " + std::to_string(af.n_sites) + " sites");
    }
    config["angles"] = *angles_path;
    config["layers"] = af.layers;
    config["parity"] = af.parity;
    gs = vqe::prepare(af.n_sites, af.layers, af.angles, af.parity);
  }

  Output out(c, "winding");
  json results = json::array();
  bool ill = false;
  std::optional<int> first;
  bool same = true;
  for (double delta : deltas) {
    auto cfg = base;
    cfg.delta = delta;
    cfg.validate();
    if (auto w = cfg.warning()) std::cerr << "warning: " << *w << "\n";
    const auto zk = topo::pipeline_zk(gs, pp.couplings, cfg);
    const auto diag = topo::analyze_winding(zk);
    const auto o = guarded_winding([&] { return topo::winding(zk).winding; });

    const std::string name = "zk_delta_" + fmt(delta) + ".csv";
    std::string csv = "# kitaev.zk/1\nk,re_z,im_z,abs_z,increment\n";
    for (std::size_t i = 0; i < zk.momenta.size(); ++i) {
      csv += fmt(zk.momenta[i]) + "," + fmt(zk.values[i].real()) + "," +
             fmt(zk.values[i].imag()) + "," + fmt(std::abs(zk.values[i])) + "," +
             fmt(diag.increments[i]) + "\n";
    }
    out.write(name, csv);

    json r = {{"delta", delta},
              {"cutoff", cfg.cutoff()},
              {"steps", cfg.steps()},
              {"winding", nullable_int(o.winding)},
              {"status", o.status},
              {"raw_angle", diag.raw_angle},
              {"min_abs", diag.min_abs},
              {"zk_file", name}};
    if (!o.message.empty()) r["message"] = o.message;
    if (compare) {
      const auto ref = guarded_winding([&] {
        return ed::exact_winding(*sp, delta, cfg.cutoff(), parity).winding;
      });
      r["ed_winding"] = nullable_int(ref.winding);
      r["ed_status"] = ref.status;
    }
    results.push_back(r);

    if (!o.winding) {
      ill = true;
      std::cerr << "delta " << fmt(delta) << ": " << o.message << "\n";
    } else {
      if (first && *first != *o.winding) same = false;
      if (!first) first = o.winding;
      std::cout << "delta " << fmt(delta) << " winding " << *o.winding << "\n";
    }
  }

  json res = result_header("kitaev.winding/1", config);
  res["results"] = results;
  res["consistent"] = !ill && same;
  out.write_json("winding.json", res);
  out.finish(config);
  return ill ? kExitIllDefined : kExitOk;
}

int cmd_mzm(const io::KeyValueConfig& c) {
  const auto pp = parameter_point(c, true);
  const std::string source = c.get("source").value_or("ed");
  if (source != "ed" && source != "vqe") throw UsageError("--source must be 'ed' or 'vqe'");
  json config = point_json(pp);
  config["source"] = source;
  if (pp.boundary != model::Boundary::Open) {
    throw InvalidArgument("mzm profiles are defined for the open chain");
  }

  mzm::MzmProfile p;
  if (source == "ed") {
    p = mzm::profile_ed(pp.couplings, pp.n_sites);
  } else {
    const auto backend = mzm::parse_backend(c.get("backend").value_or("circuit"));
    config["backend"] = mzm::to_string(backend);
    const auto vc = vqe_config(c, config);
    p = mzm::profile(pp.couplings, pp.n_sites, vc, backend);
  }
  const auto ref = mzm::tb_svd(pp.couplings, pp.n_sites);

  Output out(c, "mzm");
  std::string csv = "# kitaev.mzm/1\nsite,amplitude_s,amplitude_a,tb_s,tb_a\n";
  for (int j = 0; j < pp.n_sites; ++j) {
    csv += std::to_string(j + 1) + "," + fmt(p.amplitude_s[j]) + "," +
           fmt(p.amplitude_a[j]) + "," + fmt(ref.profile_s(j)) + "," +
           fmt(ref.profile_a(j)) + "\n";
  }
  out.write("mzm.csv", csv);

  json res = result_header("kitaev.mzm/1", config);
  res["energy_even"] = p.energy_plus;
  res["energy_odd"] = p.energy_minus;
  res["converged"] = p.converged;
  res["tb_singular_values"] =
      std::vector<double>(ref.singular_values.data(),
                          ref.singular_values.data() + ref.singular_values.size());
  res["tb_warning"] = ref.warning ? json(*ref.warning) : json(nullptr);
  res["profile_file"] = "mzm.csv";
  out.write_json("mzm.json", res);
  out.finish(config);
  if (!p.converged) std::cerr << "warning: a VQE run did not converge\n";
  if (ref.warning) std::cerr << "warning: " << *ref.warning << "\n";
  return kExitOk;
}

int cmd_tb(const io::KeyValueConfig& c) {
  const auto pp = parameter_point(c, false);
  const int k_points = get_int(c, "k_points", 64);
  json config = point_json(pp);
  config["k_points"] = k_points;
  const auto& cs = pp.couplings;

  Output out(c, "tb");
  std::string csv = "# kitaev.tb/1\nk,epsilon,delta,phi,energy\n";
  double gap = std::numeric_limits<double>::infinity();
  for (double k : topo::momentum_grid(k_points)) {
    const auto [e, d] = topo::tb_pseudo_vector(cs, k);
    const double xi = topo::tb_bogolon_energy(cs, k);
    gap = std::min(gap, xi);
    csv += fmt(k) + "," + fmt(e) + "," + fmt(d) + "," + fmt(std::atan2(d, e)) + "," +
           fmt(xi) + "\n";
  }
  out.write("tb.csv", csv);

  const auto ref = mzm::tb_svd(cs, pp.n_sites);
  std::string svd = "# kitaev.tb_svd/1\nsite,u1,v1,singular_value\n";
  for (int j = 0; j < pp.n_sites; ++j) {
    svd += std::to_string(j + 1) + "," + fmt(ref.profile_s(j)) + "," +
           fmt(ref.profile_a(j)) + "," + fmt(ref.singular_values(j)) + "\n";
  }
  out.write("svd.csv", svd);

  const auto o = guarded_winding([&] { return topo::tb_winding(cs); });
  json res = result_header("kitaev.tb/1", config);
  res["winding"] = nullable_int(o.winding);
  res["status"] = o.status;
  res["grid_gap"] = gap;
  res["ground_energy_periodic"] = topo::tb_ground_energy(cs, pp.n_sites);
  res["tb_warning"] = ref.warning ? json(*ref.warning) : json(nullptr);
  out.write_json("tb.json", res);
  out.finish(config);
  if (ref.warning) std::cerr << "warning: " << *ref.warning << "\n";
  if (!o.winding) {
    std::cerr << o.message << "\n";
    return kExitIllDefined;
  }
  std::cout << "winding " << *o.winding << "\n";
  return kExitOk;
}

int cmd_ed(const io::KeyValueConfig& c) {
  const auto pp = parameter_point(c, true);
  const int levels = get_int(c, "levels", 4);
  const auto deltas = get_double_list(c, "damping");
  const double t_delta = get_double(c, "tdelta", 5.0);
  const int parity = parse_parity(c.get("parity").value_or("even"));
  const auto cache = c.get("cache");
  json config = point_json(pp);
  config["levels"] = levels;
  config["damping"] = deltas;
  config["tdelta"] = t_delta;
  config["parity"] = parity;
  config["cache"] = cache ? json(*cache) : json(nullptr);
  if (levels < 1) throw InvalidArgument("levels must be positive");

  const auto sp = cache ? ed::diagonalize_cached(pp.couplings, pp.n_sites, pp.boundary, *cache)
                        : ed::diagonalize(pp.couplings, pp.n_sites, pp.boundary);
  Output out(c, "ed");
  json res = result_header("kitaev.ed/1", config);
  for (int p : {1, -1}) {
    const auto& e = sp.sector(p).energies;
    const int m = std::min<int>(levels, static_cast<int>(e.size()));
    res[p > 0 ? "energies_even" : "energies_odd"] =
        std::vector<double>(e.data(), e.data() + m);
  }
  res["ground_energy_even"] = sp.ground_energy(1);
  res["ground_energy_odd"] = sp.ground_energy(-1);
  res["lowest_parity"] = sp.lowest_parity();

  bool ill = false;
  json windings = json::array();
  for (double delta : deltas) {
    const double cutoff = t_delta / delta;
    const auto o = guarded_winding(
        [&] { return ed::exact_winding(sp, delta, cutoff, parity).winding; });
    const auto inf = guarded_winding(
        [&] { return ed::exact_winding(sp, delta, ed::kInfiniteTime, parity).winding; });
    windings.push_back({{"delta", delta},
                        {"cutoff", cutoff},
                        {"winding", nullable_int(o.winding)},
                        {"status", o.status},
                        {"winding_infinite_cutoff", nullable_int(inf.winding)}});
    if (!o.winding) ill = true;
  }
  res["windings"] = windings;
  out.write_json("ed.json", res);
  out.finish(config);
  std::cout << "ground even " << fmt(sp.ground_energy(1)) << " odd "
            << fmt(sp.ground_energy(-1)) << "\n";
  return ill ? kExitIllDefined : kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Kitaev chain simulation toolkit"};
  app.set_version_flag("--version", KITAEV_VERSION);
  app.require_subcommand(1);

  auto* vqe_app = app.add_subcommand("vqe", "parity-resolved variational ground state");
  Settings vqe_s(vqe_app);
  add_common(vqe_s);
  add_vqe_options(vqe_s);
  vqe_s.option("--parity", "parity", "even | odd");
  vqe_s.flag("--compare-ed", "compare_ed", "add the exact block ground energy");

  auto* wind_app = app.add_subcommand("winding", "many-body winding number from the circuit pipeline");
  Settings wind_s(wind_app);
  add_common(wind_s);
  wind_s.list("--delta", "damping", "damping factor(s)");
  wind_s.option("--tdelta", "tdelta", "cutoff T times delta");
  wind_s.option("--dt", "dt", "Trotter step");
  wind_s.option("--gs", "gs", "vqe | ed");
  wind_s.option("--angles", "angles", "angle file for --gs vqe");
  wind_s.option("--backend", "backend", "direct | hadamard-test");
  wind_s.option("--shots", "shots", "shots per ancilla readout");
  wind_s.option("--parity", "parity", "ground-state parity for --gs ed");
  wind_s.flag("--compare-ed", "compare_ed", "add the exact winding");

  auto* mzm_app = app.add_subcommand("mzm", "Majorana zero-mode profile");
  Settings mzm_s(mzm_app);
  add_common(mzm_s);
  add_vqe_options(mzm_s);
  mzm_s.option("--source", "source", "ed | vqe");
  mzm_s.option("--backend", "backend", "direct | circuit");

  auto* tb_app = app.add_subcommand("tb", "tight-binding tables and references");
  Settings tb_s(tb_app);
  add_common(tb_s);
  tb_s.option("--delta", "delta", "pairing Delta (same as --delta-pair)");
  tb_s.option("--k-points", "k_points", "momentum grid size");

  auto* ed_app = app.add_subcommand("ed", "exact-diagonalization reference");
  Settings ed_s(ed_app);
  add_common(ed_s);
  ed_s.list("--delta", "damping", "damping factor(s) for the exact winding");
  ed_s.option("--tdelta", "tdelta", "cutoff T times delta");
  ed_s.option("--levels", "levels", "levels per parity sector");
  ed_s.option("--parity", "parity", "ground-state parity for the winding");
  ed_s.option("--cache", "cache", "spectrum cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (vqe_app->parsed()) return cmd_vqe(vqe_s.resolve());
    if (wind_app->parsed()) return cmd_winding(wind_s.resolve());
    if (mzm_app->parsed()) return cmd_mzm(mzm_s.resolve());
    if (tb_app->parsed()) return cmd_tb(tb_s.resolve());
    if (ed_app->parsed()) return cmd_ed(ed_s.resolve());
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedSize& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IllDefinedWinding& e) {
    std::cerr << "ill-defined: " << e.what() << "\n";
    return kExitIllDefined;
  } catch (const InconsistentWinding& e) {
    std::cerr << "ill-defined: " << e.what() << "\n";
    return kExitIllDefined;
  } catch (const DegenerateGroundState& e) {
    std::cerr << "ill-defined: " << e.what() << "\n";
    return kExitIllDefined;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace kitaev::cli
