#include "brwa/cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <thread>

#include "brwa/algebra.hpp"
#include "brwa/analytic.hpp"
#include "brwa/cli/csv.hpp"
#include "brwa/oracle.hpp"
#include "brwa/serialize.hpp"
#include "brwa/thermo.hpp"

namespace brwa::cli {
namespace {

using Json = nlohmann::ordered_json;

// Tolerances fixed by the identities themselves rather than by the config.
constexpr double kNormDrift = 1e-10;
constexpr double kHeatBalance = 1e-7;
constexpr double kChainScalar = 1e-9;
constexpr double kCurvatureStep = 1e-4;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string shortest(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

Json mode_entry(const std::string& label, const DerivedParams& d) {
  return {{"label", label}, {"params", d.source}, {"derived", d}};
}

// Running maximum for "value <= tolerance" checks.
struct MaxCheck {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;

  void see(double value) {
    if (std::isnan(value)) {
      worst = value;
    } else if (!std::isnan(worst)) {
      worst = std::max(worst, value);
    }
  }
  [[nodiscard]] CheckResult result() const {
    return {name, worst, tolerance, !std::isnan(worst) && worst <= tolerance};
  }
};

class Runner {
 public:
  Runner(RunRecord& record, const RunConfig& cfg) : record_(record), cfg_(cfg) {}

  void execute() {
    switch (cfg_.command) {
      case Command::verify_algebra:
        verify_algebra_command();
        break;
      case Command::evolve:
        evolve_command();
        break;
      case Command::chain_check:
        chain_command();
        break;
      case Command::sweep:
        sweep_command();
        break;
      case Command::multimode:
        multimode_command();
        break;
      case Command::thermo:
        thermo_command();
        break;
    }
  }

  std::vector<Table> tables;

 private:
  [[nodiscard]] SqueezeGuard guard() const { return {cfg_.tolerances.guard}; }

  std::optional<DerivedParams> derived_mode() {
    if (!cfg_.mode) return std::nullopt;
    const DerivedParams d = derive_params(*cfg_.mode);
    record_.derived.push_back(mode_entry("mode", d));
    return d;
  }

  void add(const CheckResult& c) { record_.checks.push_back(c); }
  void add(const MaxCheck& c) { record_.checks.push_back(c.result()); }

  void verify_algebra_command() {
    const FockBasis basis(cfg_.cutoff);
    const InteriorProjector interior(basis, cfg_.interior.value_or(std::max(1, cfg_.cutoff - 4)));
    const AlgebraReport report = verify_algebra(basis, interior, cfg_.tolerances.identity);
    record_.reports["algebra"] = report;
    Table table{"algebra", {"relation", "family", "residual", "passed"}, {}};
    for (const auto& r : report.relations) {
      const bool ok = r.residual <= report.tolerance;
      table.add_row({r.relation, r.source, r.residual, std::string(ok ? "true" : "false")});
      add(CheckResult{"algebra: " + r.relation, r.residual, report.tolerance, ok});
    }
    tables.push_back(std::move(table));
  }

  void evolve_command() {
    const auto d = derived_mode();
    const double gamma = cfg_.gamma ? *cfg_.gamma : d->Gamma;
    record_.diagnostics["Gamma"] = gamma;
    const FockBasis basis(cfg_.cutoff);
    const VacuumSqueezer squeezer(basis);
    const double tol = cfg_.tolerances.oracle;

    Table oracle{"evolve", {"t", "overlap", "n_a", "n_b", "entropy"}, {}};
    Table closed{"evolve_analytic", oracle.columns, {}};
    MaxCheck overlap_check{"overlap vs 1/cosh(Gamma t)", tol};
    MaxCheck occupation_check{"occupation vs sinh^2(Gamma t), relative", tol};
    MaxCheck balance{"n_a - n_b", tol};
    MaxCheck entropy_check{"reduced entropy vs closed form", tol};
    MaxCheck norm{"norm drift", kNormDrift};
    TruncationDiagnostics worst_tail;

    // Rows are kept even if the guard stops the run part-way.
    struct Flush {
      Runner& r;
      Table& a;
      Table& b;
      ~Flush() {
        r.tables.push_back(std::move(a));
        r.tables.push_back(std::move(b));
      }
    } flush{*this, oracle, closed};

    for (const double t : cfg_.time.samples()) {
      const StateVector psi = squeezer.state(gamma, t, guard());
      const SqueezeTrajectory traj(gamma, t);
      const double na = number_expectation(psi, basis, Mode::a);
      const double nb = number_expectation(psi, basis, Mode::b);
      const double s = reduced_entropy(psi, basis, Mode::b);
      const double exact_n = occupation(traj);
      const double exact_s = entropy_expectation(traj);
      oracle.add_row({t, psi(0).real(), na, nb, s});
      closed.add_row({t, vacuum_overlap(traj), exact_n, exact_n, exact_s});

      overlap_check.see(std::abs(psi(0) - vacuum_overlap(traj)));
      occupation_check.see(std::max(std::abs(na - exact_n), std::abs(nb - exact_n)) / (1.0 + exact_n));
      balance.see(std::abs(na - nb));
      entropy_check.see(std::abs(s - exact_s));
      norm.see(std::abs(psi.norm() - 1.0));
      const TruncationDiagnostics tail = truncation_tail(psi, basis);
      if (tail.tail_mass >= worst_tail.tail_mass) worst_tail = tail;
    }
    record_.diagnostics["truncation"] = worst_tail;
    for (const auto* c : {&overlap_check, &occupation_check, &balance, &entropy_check, &norm}) add(*c);
    add(CheckResult{"truncation tail", worst_tail.tail_mass, 1e-6,
                    worst_tail.verdict != TruncationVerdict::fail});
  }

  void chain_command() {
    derived_mode();
    const FockBasis basis(cfg_.cutoff);
    ChainReport report = interaction_chain_check(*cfg_.mode, cfg_.chain_t, basis, guard());
    report.identity_tolerance = cfg_.tolerances.oracle;
    report.scalar_tolerance = kChainScalar;
    record_.reports["chain"] = report;

    Table table{"chain", {"step", "residual", "tolerance", "passed"}, {}};
    const auto row = [&](const std::string& step, double residual, double tolerance) {
      const bool ok = residual <= tolerance;
      table.add_row({step, residual, tolerance, std::string(ok ? "true" : "false")});
      add(CheckResult{"chain: " + step, residual, tolerance, ok});
    };
    row("frame_conjugation", report.frame_residual, report.identity_tolerance);
    row("vacuum_phase", report.vacuum_phase_residual, report.identity_tolerance);
    row("interaction_amplitude", report.interaction_residual, report.identity_tolerance);
    row("final_scalar", report.final_residual, report.scalar_tolerance);
    tables.push_back(std::move(table));
  }

  struct SweepPoint {
    DerivedParams d;
    double overlap = 0.0;
    double occupation = 0.0;
    double entropy = 0.0;
    std::string error;
  };

  void sweep_command() {
    std::vector<SweepPoint> points;
    for (const double g : cfg_.sweep.g) {
      for (const double wa : cfg_.sweep.omega_a) {
        for (const double wb : cfg_.sweep.omega_b) {
          const ModeParams p{wa, wb, g};
          try {
            validate(p);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("sweep point: ") + e.what());
          }
          points.push_back({derive_params(p), 0.0, 0.0, 0.0, {}});
        }
      }
    }
    const FockBasis basis(cfg_.cutoff);
    const std::vector<double> times = cfg_.time.samples();
    for (const auto& pt : points) guard().check(pt.d.Gamma * cfg_.time.t_max, basis);

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
      for (std::size_t i = next++; i < points.size(); i = next++) {
        SweepPoint& pt = points[i];
        try {
          const VacuumSqueezer squeezer(basis);
          for (const double t : times) {
            const StateVector psi = squeezer.state(pt.d.Gamma, t, guard());
            const SqueezeTrajectory traj(pt.d.Gamma, t);
            const double n = occupation(traj);
            pt.overlap = std::max(pt.overlap, std::abs(psi(0) - vacuum_overlap(traj)));
            pt.occupation = std::max(
                pt.occupation, std::abs(number_expectation(psi, basis, Mode::a) - n) / (1.0 + n));
            pt.entropy = std::max(
                pt.entropy, std::abs(reduced_entropy(psi, basis, Mode::b) - entropy_expectation(traj)));
          }
        } catch (const std::exception& e) {
          pt.error = e.what();
        }
      }
    };
    unsigned threads = cfg_.sweep.threads > 0 ? static_cast<unsigned>(cfg_.sweep.threads)
                                              : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
    {
      std::vector<std::jthread> pool;
      for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
      work();
    }

    Table table{"sweep",
                {"g", "omega_a", "omega_b", "omega_plus", "omega_minus", "A", "B", "theta", "alpha",
                 "Gamma", "E", "calE", "max_overlap_error", "max_occupation_error",
                 "max_entropy_error"},
                {}};
    const double tol = cfg_.tolerances.oracle;
    MaxCheck overlap{"sweep: overlap vs 1/cosh(Gamma t)", tol};
    MaxCheck occ{"sweep: occupation vs sinh^2(Gamma t), relative", tol};
    MaxCheck ent{"sweep: reduced entropy vs closed form", tol};
    for (const auto& pt : points) {
      if (!pt.error.empty()) throw Error("sweep point failed: " + pt.error);
      const DerivedParams& d = pt.d;
      record_.derived.push_back(mode_entry("g=" + shortest(d.source.g) + ",omega_a=" +
                                               shortest(d.source.omega_a) +
                                               ",omega_b=" + shortest(d.source.omega_b),
                                           d));
      table.add_row({d.source.g, d.source.omega_a, d.source.omega_b, d.omega_plus, d.omega_minus,
                     d.A, d.B, d.theta, d.alpha, d.Gamma, d.E, d.calE, pt.overlap, pt.occupation,
                     pt.entropy});
      overlap.see(pt.overlap);
      occ.see(pt.occupation);
      ent.see(pt.entropy);
    }
    tables.push_back(std::move(table));
    for (const auto* c : {&overlap, &occ, &ent}) add(*c);
  }

  void multimode_command() {
    const std::vector<double> times = cfg_.time.samples();
    if (!cfg_.modes.empty()) {
      ModeSet set;
      for (const auto& m : cfg_.modes) set.add(m.label, m.params);
      for (const auto& [label, d] : set.modes()) record_.derived.push_back(mode_entry(label, d));

      Table table{"multimode", {"t", "exponent", "survival", "entropy"}, {}};
      CheckResult monotone_t{"survival non-increasing in t", 0.0, 0.0, true};
      double previous = 1.0;
      for (const double t : times) {
        const Survival s = survival_product(set, t);
        table.add_row({t, s.exponent, s.value, total_entropy(set, t)});
        const double rise = s.value - previous;
        if (rise > 0.0) {
          monotone_t.passed = false;
          monotone_t.value = std::max(monotone_t.value, rise);
        }
        previous = s.value;
      }
      tables.push_back(std::move(table));
      add(monotone_t);

      // Appending modes (in label order) never raises the survival.
      CheckResult monotone_k{"survival non-increasing in mode count", 0.0, 0.0, true};
      ModeSet prefix;
      double last = 1.0;
      for (const auto& [label, d] : set.modes()) {
        prefix.add(label, d.source);
        const double value = survival_product(prefix, cfg_.time.t_max).value;
        if (value > last) {
          monotone_k.passed = false;
          monotone_k.value = std::max(monotone_k.value, value - last);
        }
        last = value;
      }
      add(monotone_k);
    }
    if (cfg_.dispersion) {
      Table table{"dispersion", {"t", "exponent", "survival", "refinement"}, {}};
      MaxCheck refinement{"quadrature refinement, relative", cfg_.tolerances.oracle};
      for (const double t : times) {
        const SurvivalIntegral s = survival_integral(*cfg_.dispersion, t);
        table.add_row({t, s.exponent, s.survival, s.refinement});
        refinement.see(s.refinement / std::max(1.0, std::abs(s.exponent)));
      }
      tables.push_back(std::move(table));
      add(refinement);
    }
  }

  void thermo_command() {
    const auto d = derived_mode();
    const double gamma = cfg_.gamma ? *cfg_.gamma : d->Gamma;
    const double energy = cfg_.energy ? *cfg_.energy : d->E;
    record_.diagnostics["Gamma"] = gamma;
    record_.diagnostics["E"] = energy;

    Table table{"thermo", {"t", "theta", "E", "beta", "n", "S", "F", "heat_residual"}, {}};
    MaxCheck stationarity{"dF/dtheta at stationary beta, scaled", cfg_.tolerances.identity};
    MaxCheck bose{"Bose occupation vs sinh^2, relative", cfg_.tolerances.identity};
    MaxCheck heat{"heat balance dE = dS/beta, relative", kHeatBalance};
    CheckResult curvature{"d2F/dtheta2 > 0 at stationarity", 0.0, 0.0, true};
    bool any_curvature = false;
    for (const double t : cfg_.time.samples()) {
      const ThermoPoint p = thermo_point(gamma, energy, t, cfg_.dt);
      table.add_row({p.t, p.theta, p.E, cell(p.beta), p.n, p.S, p.F, cell(p.heat_residual)});
      if (p.beta) {
        const double scale = std::max(1.0, std::sinh(2.0 * p.theta) * p.E);
        stationarity.see(std::abs(stationarity_residual(p.theta, p.E, *p.beta)) / scale);
        bose.see(std::abs(bose_occupation(p.E, *p.beta) - p.n) / (1.0 + p.n));
        const double h = std::min(kCurvatureStep, 0.5 * p.theta);
        const double c = free_energy_curvature_fd(p.theta, p.E, *p.beta, h);
        if (!any_curvature || c < curvature.value) curvature.value = c;
        any_curvature = true;
        if (!(c > 0.0)) curvature.passed = false;
      }
      if (p.heat_residual) heat.see(*p.heat_residual);
    }
    tables.push_back(std::move(table));
    for (const auto* c : {&stationarity, &bose, &heat}) add(*c);
    if (any_curvature) add(curvature);
  }

  RunRecord& record_;
  const RunConfig& cfg_;
};

}  // namespace

bool RunRecord::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json RunRecord::to_json() const {
  Json j;
  j["tool"] = "brwa";
  j["version"] = kToolVersion;
  j["command"] = command_name(config.command);
  j["started"] = started;
  j["finished"] = finished;
  j["config"] = config.snapshot;
  j["cutoff"] = config.cutoff;
  j["derived"] = derived;
  auto checks_json = Json::array();
  for (const auto& c : checks) {
    checks_json.push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
  }
  j["checks"] = checks_json;
  j["all_passed"] = all_passed();
  j["reports"] = reports;
  j["diagnostics"] = diagnostics;
  j["partial"] = partial;
  if (!error.empty()) j["error"] = error;
  auto files = Json::array();
  for (const auto& f : outputs) {
    files.push_back({{"file", f.file}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  }
  j["outputs"] = files;
  j["exit_code"] = exit_code;
  return j;
}

std::filesystem::path resolve_output_directory(const RunConfig& config, const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  if (!config.output.directory.empty()) return config.output.directory;
  return "brwa-out";
}

RunRecord run(const RunConfig& config, const std::filesystem::path& directory) {
  RunRecord record;
  record.config = config;
  record.directory = directory;
  record.started = utc_now();

  Runner runner(record, config);
  try {
    runner.execute();
  } catch (const Error& e) {
    // Guard refusals, degenerate parameters, bad config.
    record.partial = true;
    record.error = e.what();
    record.exit_code = kConfigError;
  } catch (const std::invalid_argument& e) {
    record.partial = true;
    record.error = e.what();
    record.exit_code = kConfigError;
  }
  if (record.exit_code == kSuccess && !record.all_passed()) record.exit_code = kCheckFailed;

  std::filesystem::create_directories(directory);
  for (const auto& table : runner.tables) {
    const auto emit = [&](const std::string& file, const std::string& bytes) {
      write_file(directory / file, bytes);
      record.outputs.push_back({file, sha256_hex(bytes), bytes.size()});
    };
    if (config.output.csv) emit(table.name + ".csv", to_csv(table));
    if (config.output.json) emit(table.name + ".json", to_json_rows(table).dump(2) + "\n");
  }
  record.finished = utc_now();
  write_file(directory / "record.json", record.to_json().dump(2) + "\n");
  return record;
}

}  // namespace brwa::cli
