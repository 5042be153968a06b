#include "obsint/scenarios.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "obsint/error.hpp"
#include "obsint/freq.hpp"
#include "obsint/kalman.hpp"
#include "obsint/observer.hpp"
#include "obsint/plot.hpp"
#include "obsint/signals.hpp"

namespace fs = std::filesystem;

namespace obsint {

namespace {

using Defaults = std::map<std::string, std::string>;

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt::format("{}", v[i]);
  return out;
}

Defaults common(double duration, double window) {
  return {{"scenario.duration", fmt::format("{}", duration)},
          {"scenario.dt", "0.001"},
          {"scenario.record_every", duration >= 1000 ? "100" : "10"},
          {"scenario.seed", "1"},
          {"scenario.settle", "20"},
          {"scenario.trailing_window", fmt::format("{}", window)}};
}

Defaults integ_defaults(int which, double duration) {
  Defaults d = common(duration, duration >= 2000 ? 1000 : duration / 2);
  d["noise.random.mean"] = "0";
  d["noise.random.variance"] = "0.01";
  d["noise.random.sample_dt"] = "0";
  d["noise.pulse.amplitude"] = "0.5";
  d["noise.pulse.period"] = "2";
  d["noise.pulse.width"] = "1";
  d["noise.pulse.phase_delay"] = "0";
  d["noise.pulse.width_units"] = "seconds";
  d["signal.bias"] = "0";
  d["baseline.kf.q"] = "1e-4";
  d["baseline.kf.r"] = "-1";
  d["baseline.kf.p0"] = "1";
  if (which == 1) {
    d["observer.k"] = "2, 2.7783";
    d["observer.p"] = "2";
    d["observer.eps"] = "0.1667";
    d["observer.x0"] = "0.5, 2";
    d["signal.base"] = "a02";
    d["truth.names"] = "a01, a02";
    d["baseline.kf.x0"] = "0, 1";
  } else {
    d["observer.k"] = "0.5, 2.5, 3";
    d["observer.p"] = "3";
    d["observer.eps"] = "0.4";
    d["observer.x0"] = "0.1, -1.1, 0.1";
    d["signal.base"] = "a03";
    d["truth.names"] = "a01, a02, a03";
    d["baseline.kf.x0"] = "0, 1, 0";
    d["scenario.settle"] = "30";
  }
  return d;
}

Defaults bode_defaults(int which) {
  Defaults d;
  d["bode.k"] = which == 1 ? "0.1, 3, 2" : "0.01, 0.1, 3, 2";
  d["bode.p"] = which == 1 ? "2" : "3";
  d["bode.eps"] = "0.1, 0.2";
  d["bode.omega_min"] = "0.001";
  d["bode.omega_max"] = "1000";
  d["bode.points"] = "400";
  d["bode.tol"] = "0.05";
  return d;
}

Defaults quad_defaults(double duration) {
  Defaults d = common(duration, duration >= 1000 ? 500 : duration / 2);
  d["scenario.settle"] = "10";
  const QuadSimConfig q = QuadSimConfig::published();
  const auto& p = q.params;
  d["quad.m"] = fmt::format("{}", p.m);
  d["quad.g"] = fmt::format("{}", p.g);
  d["quad.l"] = fmt::format("{}", p.l);
  d["quad.Jx"] = fmt::format("{}", p.Jx);
  d["quad.Jy"] = fmt::format("{}", p.Jy);
  d["quad.Jz"] = fmt::format("{}", p.Jz);
  d["quad.b"] = fmt::format("{}", p.b);
  d["quad.k"] = fmt::format("{}", p.k);
  d["quad.drag.translational"] = "0.01, 0.01, 0.01";
  d["quad.drag.rotational"] = "0.012, 0.012, 0.012";
  d["quad.dist.amp"] = join({q.dist.amp.begin(), q.dist.amp.end()});
  d["quad.dist.freq"] = join({q.dist.freq.begin(), q.dist.freq.end()});
  d["quad.ref.h0"] = "30";
  d["quad.ref.a"] = "5";
  d["quad.ref.km"] = "0.005";
  d["quad.gains.kp1"] = "16";
  d["quad.gains.kp2"] = "8";
  d["quad.gains.ka1"] = "28";
  d["quad.gains.ka2"] = "8";
  d["quad.pos.k"] = "6, 11, 6";
  d["quad.pos.eps_rate"] = "5";
  d["quad.pos.eps_inv_max"] = "5";
  d["quad.att.k"] = "0.1, 2, 1";
  d["quad.att.eps"] = fmt::format("{}", 1.0 / 3.0);
  d["quad.x0"] = join({q.x0_interleaved.begin(), q.x0_interleaved.end()});
  d["quad.pos.x0"] = join({q.pos_obs_x0.begin(), q.pos_obs_x0.end()});
  d["quad.att.x0"] = join({q.att_obs_x0.begin(), q.att_obs_x0.end()});
  d["quad.noise.random.mean"] = "0";
  d["quad.noise.random.variance"] = "0.001";
  d["quad.noise.random.sample_dt"] = "0";
  d["quad.noise.pulse.amplitude"] = "0.001";
  d["quad.noise.pulse.period"] = "1";
  d["quad.noise.pulse.width"] = "1";
  d["quad.noise.pulse.phase_delay"] = "0";
  d["quad.noise.pulse.width_units"] = "seconds";
  d["quad.dhat_mode"] = "twin";
  d["quad.actuation"] = "body";
  d["baseline.kf.q"] = "1e-4";
  d["baseline.kf.p0"] = "1";
  return d;
}

WidthUnits parse_units(const std::string& s) {
  if (s == "seconds") return WidthUnits::seconds;
  if (s == "percent") return WidthUnits::percent;
  throw Error("pulse width_units must be 'seconds' or 'percent', got '" + s + "'");
}

NoiseSpec noise_from(const Config& c, const std::string& prefix, double dt, std::uint64_t seed) {
  NoiseSpec n;
  const double var = c.num(prefix + "random.variance");
  const double mean = c.num(prefix + "random.mean");
  if (var > 0.0 || mean != 0.0) {
    const double sdt = c.num(prefix + "random.sample_dt");
    n.random = RandomNoise{mean, var, seed, sdt > 0.0 ? sdt : dt};
  }
  const double amp = c.num(prefix + "pulse.amplitude");
  if (amp != 0.0) {
    n.pulse = PulseNoise{amp, c.num(prefix + "pulse.period"), c.num(prefix + "pulse.width"),
                         c.num(prefix + "pulse.phase_delay"), parse_units(c.str(prefix + "pulse.width_units"))};
  }
  n.validate();
  return n;
}

template <std::size_t N>
std::array<double, N> fixed(const Config& c, const std::string& key) {
  const auto v = c.list(key);
  if (v.size() != N) throw Error(fmt::format("config key '{}' needs {} values, got {}", key, N, v.size()));
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

void stamp(RunRecord& rec, const Config& cfg) {
  rec.metadata["config_hash"] = fmt::format("{:016x}", cfg.hash());
  if (cfg.has("scenario.seed")) rec.metadata["seed"] = cfg.str("scenario.seed");
}

void write_config(const Config& cfg, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "# resolved configuration, hash " << fmt::format("{:016x}", cfg.hash()) << "\n" << cfg.dump();
}

// ---------------------------------------------------------------------------

ScenarioResult run_integ(const std::string& name, const Config& cfg, const fs::path& out) {
  const double dt = cfg.num("scenario.dt");
  const double duration = cfg.num("scenario.duration");
  const int every = static_cast<int>(cfg.integer("scenario.record_every"));
  const auto seed = static_cast<std::uint64_t>(cfg.integer("scenario.seed"));

  auto k = cfg.list("observer.k");
  const int n = static_cast<int>(k.size());
  const int p = static_cast<int>(cfg.integer("observer.p"));
  const ObserverSpec spec(ObserverGainSet{n, p, k, cfg.num("observer.eps")});
  const auto names = split_names(cfg.str("truth.names"));
  if (static_cast<int>(names.size()) != n) throw Error("truth.names needs one name per observer state");

  const NoiseSpec noise = noise_from(cfg, "noise.", dt, seed);
  const SignalSource src(cfg.str("signal.base"), noise, cfg.num("signal.bias"));
  const RunRecord obs = run(spec, [&](double t) { return src.sample(t); }, cfg.list("observer.x0"), duration, dt, every);

  double r = cfg.num("baseline.kf.r");
  if (r < 0.0) r = noise.random ? noise.random->variance : 0.0;
  const KfModel model = KfModel::chain(n, p, cfg.num("baseline.kf.q"), r);
  const RunRecord kf =
      run_baseline(model, src, cfg.list("baseline.kf.x0"), duration, dt, every, cfg.num("baseline.kf.p0"));

  std::vector<std::string> cols{"t", "a"};
  for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("x{}", i));
  for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("truth_x{}", i));
  for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("kf{}", i));
  for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("err_x{}", i));
  for (int i = 1; i <= n; ++i) cols.push_back(fmt::format("kf_err_x{}", i));
  RunRecord rec(cols);
  std::vector<double> row(cols.size());
  for (std::size_t r_ = 0; r_ < obs.rows(); ++r_) {
    const double t = obs.at(r_, 0);
    row[0] = t;
    row[1] = obs.at(r_, 1);
    for (int i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const double truth = analytic_truth(names[u], t);
      const double x = obs.at(r_, 2 + u);
      const double kv = kf.at(r_, 2 + u);
      row[2 + u] = x;
      row[2 + n + u] = truth;
      row[2 + 2 * n + u] = kv;
      row[2 + 3 * n + u] = x - truth;
      row[2 + 4 * n + u] = kv - truth;
    }
    rec.add_row(row);
  }
  stamp(rec, cfg);

  ScenarioResult res;
  res.metrics = integrator_metrics(rec, cfg.num("scenario.settle"), cfg.num("scenario.trailing_window"));
  if (!out.empty()) {
    export_csv(rec, out / "data.csv");
    const auto t = rec.column(0);
    Panel est{name + ": estimates", "t (s)", "", false, {}};
    Panel err{"estimation error", "t (s)", "", false, {}};
    for (int i = 1; i < p; ++i) {
      est.series.push_back({fmt::format("observer x{}", i), t, rec.column(fmt::format("x{}", i)), false, i - 1});
      est.series.push_back({fmt::format("truth x{}", i), t, rec.column(fmt::format("truth_x{}", i)), true, i - 1});
      est.series.push_back({fmt::format("KF x{}", i), t, rec.column(fmt::format("kf{}", i)), false, i + 2});
      err.series.push_back({fmt::format("observer x{}", i), t, rec.column(fmt::format("err_x{}", i)), false, i - 1});
      err.series.push_back({fmt::format("KF x{}", i), t, rec.column(fmt::format("kf_err_x{}", i)), false, i + 2});
    }
    write_svg({est, err}, out / "plot.svg");
    res.files = {out / "data.csv", out / "plot.svg"};
  }
  res.record = std::move(rec);
  return res;
}

ScenarioResult run_bode(const std::string& name, const Config& cfg, const fs::path& out) {
  const auto k = cfg.list("bode.k");
  const int n = static_cast<int>(k.size());
  const int p = static_cast<int>(cfg.integer("bode.p"));
  const auto omega = log_grid(cfg.num("bode.omega_min"), cfg.num("bode.omega_max"),
                              static_cast<int>(cfg.integer("bode.points")));
  ScenarioResult res;
  bool first = true;
  for (double eps : cfg.list("bode.eps")) {
    const ObserverGainSet g{n, p, k, eps};
    if (auto why = lemma1_violation(g)) throw Error("gain validity condition violated: " + *why);
    RunRecord rec = bode_record(g, omega);
    stamp(rec, cfg);
    for (int j = 1; j <= n; ++j) {
      res.metrics[fmt::format("bandwidth_j{}_eps{}", j, eps)] = usable_bandwidth(g, j, omega, cfg.num("bode.tol"));
      const std::vector<double> w1{1.0};
      res.metrics[fmt::format("deviation_w1_j{}_eps{}", j, eps)] = passband_error(g, j, w1)[0];
    }
    if (!out.empty()) {
      const auto stem = fmt::format("bode_eps{}", eps);
      export_csv(rec, out / (stem + ".csv"));
      auto panels = bode_panels(g, omega);
      panels[0].title = name + ": " + panels[0].title;
      write_svg(panels, out / (stem + ".svg"));
      res.files.push_back(out / (stem + ".csv"));
      res.files.push_back(out / (stem + ".svg"));
    }
    if (first) res.record = std::move(rec);
    first = false;
  }
  return res;
}

ScenarioResult run_quad(const std::string& name, const Config& cfg, const fs::path& out) {
  const QuadSimConfig q = quad_config(cfg);
  ScenarioResult res;
  RunRecord rec;
  std::string failure;
  double failed_at = -1.0;
  try {
    simulate_closed_loop(q, rec);
  } catch (const DivergenceError& e) {
    failure = e.what();
    failed_at = e.time();
  }
  stamp(rec, cfg);
  const double settle = cfg.num("scenario.settle");
  const double window = cfg.num("scenario.trailing_window");
  if (failure.empty()) {
    res.metrics = quad_metrics(rec, settle, window);
  }
  res.metrics["diverged"] = failure.empty() ? 0.0 : 1.0;
  if (!failure.empty()) res.metrics["diverged_at"] = failed_at;
  if (!out.empty()) {
    export_csv(rec, out / "data.csv");
    const auto t = rec.column(0);
    Panel pos{name + ": position", "t (s)", "m", false, {}};
    for (const char* c : {"x", "y", "z", "zd"}) pos.series.push_back({c, t, rec.column(c), std::string(c) == "zd"});
    Panel att{"attitude: truth (solid), observer (dashed)", "t (s)", "rad", false, {}};
    int ci = 0;
    for (const char* c : {"psi", "theta", "phi"}) {
      att.series.push_back({c, t, rec.column(c), false, ci});
      att.series.push_back({std::string("est_") + c, t, rec.column(std::string("est_") + c), true, ci});
      ++ci;
    }
    Panel rot{"rotor forces", "t (s)", "N", false, {}};
    for (const char* c : {"F1", "F2", "F3", "F4"}) rot.series.push_back({c, t, rec.column(c), false});
    write_svg({pos, att, rot}, out / "plot.svg");
    res.files = {out / "data.csv", out / "plot.svg"};
  }
  res.record = std::move(rec);
  if (!failure.empty()) {
    if (!out.empty()) {
      write_metrics(res.metrics, out / "metrics.txt", name);
      write_config(cfg, out / "config.txt");
    }
    throw Error(name + ": " + failure +
                (out.empty() ? "" : "; partial data written to " + out.string()) +
                ". Smaller quad.pos/att eps or quad.actuation = direct change the loop; see README.");
  }
  return res;
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  return {{"integ1-100s", "onefold integrator on cos t with non-zero-mean noise, 100 s"},
          {"integ1-2000s", "onefold integrator against the KF baseline, 2000 s"},
          {"integ2-100s", "double integrator on -sin t with non-zero-mean noise, 100 s"},
          {"integ2-2000s", "double integrator against the KF baseline, 2000 s"},
          {"bode-diffint", "Bode sweep, n = 3, p = 2, eps in {0.1, 0.2}"},
          {"bode-diffdouble", "Bode sweep, n = 4, p = 3, eps in {0.1, 0.2}"},
          {"quad-50s", "quadrotor closed loop, 50 s"},
          {"quad-1000s", "quadrotor closed loop, 1000 s"}};
}

Config default_config(const std::string& s) {
  if (s == "integ1-100s") return Config(integ_defaults(1, 100));
  if (s == "integ1-2000s") return Config(integ_defaults(1, 2000));
  if (s == "integ2-100s") return Config(integ_defaults(2, 100));
  if (s == "integ2-2000s") return Config(integ_defaults(2, 2000));
  if (s == "bode-diffint") return Config(bode_defaults(1));
  if (s == "bode-diffdouble") return Config(bode_defaults(2));
  if (s == "quad-50s") return Config(quad_defaults(50));
  if (s == "quad-1000s") return Config(quad_defaults(1000));
  throw Error("unknown scenario '" + s + "' (try 'obsint list')");
}

QuadSimConfig quad_config(const Config& c) {
  QuadSimConfig q;
  auto& p = q.params;
  p.m = c.num("quad.m");
  p.g = c.num("quad.g");
  p.l = c.num("quad.l");
  p.Jx = c.num("quad.Jx");
  p.Jy = c.num("quad.Jy");
  p.Jz = c.num("quad.Jz");
  p.b = c.num("quad.b");
  p.k = c.num("quad.k");
  const auto dt_ = fixed<3>(c, "quad.drag.translational");
  const auto dr = fixed<3>(c, "quad.drag.rotational");
  p.kx = dt_[0], p.ky = dt_[1], p.kz = dt_[2];
  p.kpsi = dr[0], p.ktheta = dr[1], p.kphi = dr[2];
  p.validate();
  q.dist.amp = fixed<6>(c, "quad.dist.amp");
  q.dist.freq = fixed<6>(c, "quad.dist.freq");
  q.ref = ReferenceTrajectory{c.num("quad.ref.h0"), c.num("quad.ref.a"), c.num("quad.ref.km")};
  q.gains = ControlGains{c.num("quad.gains.kp1"), c.num("quad.gains.kp2"), c.num("quad.gains.ka1"),
                         c.num("quad.gains.ka2")};
  q.pos_k = c.list("quad.pos.k");
  q.pos_eps_rate = c.num("quad.pos.eps_rate");
  q.pos_eps_inv_max = c.num("quad.pos.eps_inv_max");
  q.att_k = c.list("quad.att.k");
  q.att_eps = c.num("quad.att.eps");
  q.x0_interleaved = fixed<12>(c, "quad.x0");
  q.pos_obs_x0 = fixed<9>(c, "quad.pos.x0");
  q.att_obs_x0 = fixed<9>(c, "quad.att.x0");
  q.dt = c.num("scenario.dt");
  q.duration = c.num("scenario.duration");
  q.record_every = static_cast<int>(c.integer("scenario.record_every"));
  q.seed = static_cast<std::uint64_t>(c.integer("scenario.seed"));
  q.pos_noise = noise_from(c, "quad.noise.", q.dt, 0);
  q.rate_noise = q.pos_noise;
  q.dhat = parse_dhat_mode(c.str("quad.dhat_mode"));
  q.actuation = parse_actuation(c.str("quad.actuation"));
  q.kf_q = c.num("baseline.kf.q");
  q.kf_p0 = c.num("baseline.kf.p0");
  return q;
}

Metrics integrator_metrics(const RunRecord& rec, double settle, double window) {
  Metrics m;
  const auto t = rec.column(0);
  const double t_end = t.back();
  const double from = t_end - window;
  for (int i = 1; rec.has_column(fmt::format("err_x{}", i)); ++i) {
    const auto e = rec.column(fmt::format("err_x{}", i));
    const auto ke = rec.column(fmt::format("kf_err_x{}", i));
    double mx = 0.0;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (t[r] >= settle) mx = std::max(mx, std::abs(e[r]));
    }
    m[fmt::format("rms_err_x{}", i)] = rms(t, e, settle);
    m[fmt::format("max_abs_err_x{}", i)] = mx;
    m[fmt::format("kf_rms_err_x{}", i)] = rms(t, ke, settle);
    m[fmt::format("final_err_x{}", i)] = e.back();
    m[fmt::format("kf_final_err_x{}", i)] = ke.back();
    const double s = trend_slope(t, e, from);
    const double ks = trend_slope(t, ke, from);
    m[fmt::format("slope_err_x{}", i)] = s;
    m[fmt::format("kf_slope_err_x{}", i)] = ks;
    m[fmt::format("drift_ratio_x{}", i)] = std::abs(ks) / std::max(std::abs(s), 1e-300);
  }
  return m;
}

Metrics quad_metrics(const RunRecord& rec, double settle, double window) {
  Metrics m;
  const auto t = rec.column(0);
  const std::size_t last = rec.rows() - 1;
  const double from = t.back() - window;
  const double ex = rec.at(last, rec.index_of("x")) - rec.at(last, rec.index_of("xd"));
  const double ey = rec.at(last, rec.index_of("y")) - rec.at(last, rec.index_of("yd"));
  const double ez = rec.at(last, rec.index_of("z")) - rec.at(last, rec.index_of("zd"));
  m["final_pos_err"] = std::sqrt(ex * ex + ey * ey + ez * ez);
  m["final_pos_err_to_hover_target"] =
      std::hypot(rec.at(last, rec.index_of("x")), rec.at(last, rec.index_of("y")),
                 rec.at(last, rec.index_of("z")) - 30.0);
  double att_final = 0.0, est_err = 0.0, slope = 0.0, kf_slope = 0.0;
  for (const std::string a : {"psi", "theta", "phi"}) {
    const auto truth = rec.column(a);
    const auto est = rec.column("est_" + a);
    const auto kf = rec.column("kf_" + a);
    std::vector<double> e(t.size()), ke(t.size());
    double mx = 0.0;
    for (std::size_t r = 0; r < t.size(); ++r) {
      e[r] = est[r] - truth[r];
      ke[r] = kf[r] - truth[r];
      if (t[r] >= settle) mx = std::max(mx, std::abs(e[r]));
    }
    const double s = trend_slope(t, e, from);
    const double ks = trend_slope(t, ke, from);
    m["final_abs_" + a] = std::abs(truth.back());
    m["max_est_err_" + a] = mx;
    m["slope_est_err_" + a] = s;
    m["kf_slope_err_" + a] = ks;
    att_final = std::max(att_final, std::abs(truth.back()));
    est_err = std::max(est_err, mx);
    slope = std::max(slope, std::abs(s));
    kf_slope = std::max(kf_slope, std::abs(ks));
  }
  m["final_att_max"] = att_final;
  m["max_att_est_err"] = est_err;
  m["max_att_slope"] = slope;
  m["max_kf_att_slope"] = kf_slope;
  double sat = 0.0;
  for (double v : rec.column("saturated")) sat += v;
  m["saturated_fraction"] = sat / static_cast<double>(rec.rows());
  return m;
}

void write_metrics(const Metrics& m, const fs::path& path, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  if (!header.empty()) out << "# " << header << "\n";
  for (const auto& [k, v] : m) out << k << " = " << fmt::format("{}", v) << "\n";
}

Metrics read_metrics(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  Metrics m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw Error("malformed metrics line: " + line);
    m[line.substr(0, eq)] = std::stod(line.substr(eq + 3));
  }
  return m;
}

ScenarioResult run_scenario(const std::string& name, const Config& cfg, const fs::path& out_dir) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
  ScenarioResult res;
  if (name.rfind("integ", 0) == 0) {
    res = run_integ(name, cfg, out_dir);
  } else if (name.rfind("bode", 0) == 0) {
    res = run_bode(name, cfg, out_dir);
  } else if (name.rfind("quad", 0) == 0) {
    res = run_quad(name, cfg, out_dir);
  } else {
    throw Error("unknown scenario '" + name + "' (try 'obsint list')");
  }
  if (!out_dir.empty()) {
    Metrics m = res.metrics;
    write_metrics(m, out_dir / "metrics.txt", fmt::format("{} config_hash={:016x}", name, cfg.hash()));
    write_config(cfg, out_dir / "config.txt");
    res.files.push_back(out_dir / "metrics.txt");
    res.files.push_back(out_dir / "config.txt");
  }
  return res;
}

}  // namespace obsint
