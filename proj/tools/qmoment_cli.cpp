// qmoment: run verification suites and boundary scans from the command line.
//
//   qmoment verify    --space double|conjclass|fused|stratum|hpn --n N
//   qmoment roundtrip --n N
//   qmoment forms     --n N
//   qmoment boundary  --ts 0.5,0.2,0.1
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmoment/suites.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qmoment;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string space = "double";
  std::string face = "sigma01";
  std::size_t n = 1;
  std::size_t samples = 50;
  std::uint64_t seed = 42;
  double h = 1e-3;
  double h_first = 1e-5;
  unsigned threads = 0;
  Tolerances tol;
  std::string output;
  std::string format = "json";
  bool allow_large_n = false;
  std::vector<double> ts;

  SampleConfig sample_config() const {
    SampleConfig c;
    c.n = n;
    c.samples = samples;
    c.seed = seed;
    c.h_second = h;
    c.h_first = h_first;
    c.threads = threads;
    return c;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_rank(const RunConfig& cfg) {
  if (cfg.n == 0) throw UsageError("--n must be at least 1");
  if (cfg.n > 3) {
    if (!cfg.allow_large_n) throw UsageError("--n above 3 requires --allow-large-n");
    std::cerr << "warning: n = " << cfg.n << " is outside the tested range; runs may be slow\n";
  }
  if (cfg.samples == 0) throw UsageError("--samples must be at least 1");
  if (!(cfg.h > 0.0) || !(cfg.h_first > 0.0)) throw UsageError("step sizes must be positive");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json check_json(const VerificationReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["max_residual"] = r.max_residual;
  j["mean_residual"] = r.mean_residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

ordered_json suite_json(const Suite& s, const RunConfig& cfg, const std::string& space) {
  ordered_json j;
  j["suite"] = s.name;
  j["space"] = space;
  j["n"] = cfg.n;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["h"] = cfg.h;
  j["h_first"] = cfg.h_first;
  j["pass"] = s.pass();
  j["checks"] = ordered_json::array();
  for (const auto& c : s.checks) j["checks"].push_back(check_json(c));
  j["conformance_notes"] = s.notes;
  j["timestamp"] = utc_timestamp();
  return j;
}

std::string suite_text(const Suite& s, const RunConfig& cfg, const std::string& space) {
  std::ostringstream os;
  os << "suite " << s.name << "  space " << space << "  n " << cfg.n << "  samples " << cfg.samples << "  seed "
     << cfg.seed << "\n";
  os << std::left << std::setw(40) << "check" << std::right << std::setw(14) << "max" << std::setw(14) << "mean"
     << std::setw(12) << "tolerance" << "  result\n";
  for (const auto& c : s.checks) {
    os << std::left << std::setw(40) << c.name << std::right << std::scientific << std::setprecision(3)
       << std::setw(14) << c.max_residual << std::setw(14) << c.mean_residual << std::setw(12) << c.tolerance
       << (c.pass ? "  PASS" : "  FAIL") << "\n";
    os << std::defaultfloat;
  }
  for (const auto& note : s.notes) os << "note: " << note << "\n";
  os << (s.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw UsageError("cannot open output file " + cfg.output);
  out << body;
}

int report_suite(const Suite& s, const RunConfig& cfg, const std::string& space) {
  if (cfg.format == "csv") throw UsageError("csv output is only available for boundary scans");
  emit(cfg, cfg.format == "text" ? suite_text(s, cfg, space) : suite_json(s, cfg, space).dump(2) + "\n");
  return s.pass() ? kPass : kFail;
}

int cmd_verify(const RunConfig& cfg) {
  check_rank(cfg);
  const std::string space = cfg.space == "stratum" ? "stratum[" + cfg.face + "]" : cfg.space;
  return report_suite(verify_suite(cfg.space, cfg.sample_config(), cfg.tol, cfg.face), cfg, space);
}

int cmd_roundtrip(const RunConfig& cfg) {
  check_rank(cfg);
  return report_suite(roundtrip_suite(cfg.sample_config(), cfg.tol), cfg, "hpn");
}

int cmd_forms(const RunConfig& cfg) {
  check_rank(cfg);
  return report_suite(forms_suite(cfg.sample_config(), cfg.tol), cfg, "hpn");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Observational: always exits 0 once the scan has run.
int cmd_boundary(const RunConfig& cfg) {
  check_rank(cfg);
  if (cfg.ts.empty()) throw UsageError("--ts needs at least one value");
  for (double t : cfg.ts)
    if (!(t > 0.0)) throw UsageError("--ts values must be positive");
  const auto rows = boundary_coefficient_scan(cfg.ts, cfg.n, cfg.h_first);
  const auto agreement = check_boundary_scan(rows, cfg.tol.forms_fd);
  const auto notes = hpn_conformance_notes();
  if (cfg.format == "json") {
    ordered_json j;
    j["suite"] = "boundary";
    j["space"] = "hpn";
    j["n"] = cfg.n;
    j["h"] = cfg.h_first;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"t", r.t}, {"lambda", r.lambda}, {"closed_form", r.closed_form},
                           {"fd_pullback", r.fd_pullback}, {"printed", r.printed}});
    j["checks"] = ordered_json::array({check_json(agreement)});
    j["conformance_notes"] = notes;
    j["timestamp"] = utc_timestamp();
    emit(cfg, j.dump(2) + "\n");
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "# " << notes.at(2) << "\n";
    os << "t,lambda,closed_form,fd_pullback,printed\n";
    for (const auto& r : rows)
      os << fmt(r.t) << "," << fmt(r.lambda) << "," << fmt(r.closed_form) << "," << fmt(r.fd_pullback) << ","
         << fmt(r.printed) << "\n";
    emit(cfg, os.str());
  } else {
    Suite s{"boundary", {agreement}, notes};
    emit(cfg, suite_text(s, cfg, "hpn"));
  }
  return kPass;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool sampled) {
  sub->set_help_flag("--help", "print this help message and exit");  // -h would clash with --h
  sub->add_option("--n", cfg.n, "rank n of Sp(n); HP^n for hpn suites");
  sub->add_flag("--allow-large-n", cfg.allow_large_n, "permit n > 3");
  sub->add_option("--output,-o", cfg.output, "write the report to a file instead of stdout");
  sub->add_option("--h-first", cfg.h_first, "step for first derivatives")->capture_default_str();
  if (!sampled) return;
  sub->add_option("--samples", cfg.samples, "number of seeded samples per check")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
  sub->add_option("--h", cfg.h, "step for the exterior derivative of omega")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "worker threads (default: QMOMENT_THREADS or hardware)");
  sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--tol-axiom-one", cfg.tol.axiom_one)->capture_default_str();
  sub->add_option("--tol-axiom-two", cfg.tol.axiom_two)->capture_default_str();
  sub->add_option("--tol-axiom-three", cfg.tol.axiom_three)->capture_default_str();
  sub->add_option("--tol-equivariance", cfg.tol.equivariance)->capture_default_str();
  sub->add_option("--tol-roundtrip", cfg.tol.roundtrip)->capture_default_str();
  sub->add_option("--tol-forms", cfg.tol.forms_exact, "chart vs homogeneous")->capture_default_str();
  sub->add_option("--tol-forms-fd", cfg.tol.forms_fd, "closed forms vs FD pullback")->capture_default_str();
  sub->add_option("--tol-moment", cfg.tol.moment)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-Hamiltonian structures for Sp(n) and on HP^n: verification suites and scans"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* verify = app.add_subcommand("verify", "run the axiom suite on one space");
  add_common(verify, cfg, true);
  verify->add_option("--space", cfg.space, "space to verify")
      ->required()
      ->check(CLI::IsMember(space_kinds()));
  verify->add_option("--face", cfg.face, "stratum face")->check(CLI::IsMember({"sigma01", "sigma1"}))->capture_default_str();

  auto* roundtrip = app.add_subcommand("roundtrip", "map_F/map_G roundtrips and equivariance on HP^n");
  add_common(roundtrip, cfg, true);
  auto* forms = app.add_subcommand("forms", "chart, homogeneous and FD-pullback 2-forms on HP^n");
  add_common(forms, cfg, true);

  auto* boundary = app.add_subcommand("boundary", "dx13 dx14 coefficient along [t,1,0,...,0]");
  add_common(boundary, cfg, false);
  boundary->add_option("--ts", cfg.ts, "comma-separated t values")->delimiter(',')->required();
  boundary->add_option("--format", cfg.format, "scan format")->check(CLI::IsMember({"csv", "json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*roundtrip || *forms) {
    if (roundtrip->count("--samples") == 0 && forms->count("--samples") == 0) cfg.samples = 100;
  }
  if (*boundary && boundary->count("--format") == 0) cfg.format = "csv";

  try {
    if (*verify) return cmd_verify(cfg);
    if (*roundtrip) return cmd_roundtrip(cfg);
    if (*forms) return cmd_forms(cfg);
    return cmd_boundary(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
