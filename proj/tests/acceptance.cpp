// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.
//
//   acceptance --cli path/to/qmoment

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "json.hpp"
#include "qmoment/qmoment.hpp"

using namespace qmoment;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;

  void add(const VerificationReport& r, const std::string& where = "") {
    if (r.pass) return;
    pass = false;
    std::ostringstream os;
    os << (where.empty() ? "" : where + " ") << r.name << " max=" << r.max_residual << " tol=" << r.tolerance;
    failures.push_back(os.str());
  }
  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    failures.push_back(what);
  }
};

std::string at_n(std::size_t n) { return "n=" + std::to_string(n); }

SampleConfig config(std::size_t n, std::size_t samples) {
  SampleConfig c;
  c.n = n;
  c.samples = samples;
  c.seed = 42;
  c.h_second = 1e-3;
  c.h_first = 1e-5;
  return c;
}

void three_axioms(Outcome& o, const QHSpace& space, std::size_t n, const std::string& label) {
  const SampleConfig c = config(n, 50);
  const std::string where = label + " " + at_n(n);
  o.add(check_axiom_one(space, c, 1e-4), where);
  o.add(check_axiom_two(space, c, 1e-6), where);
  o.add(check_axiom_three(space, c, 1e-5), where);
}

Outcome criterion_1() {
  Outcome o;
  o.add(check_samples("quaternion_associativity_norm", config(1, 1000), 1e-12, [](Rng& rng, std::size_t) {
    const Quaternion a = rng.gaussian_quaternion(), b = rng.gaussian_quaternion(), c = rng.gaussian_quaternion();
    const double assoc = ((a * b) * c - a * (b * c)).norm();
    const double mult = std::abs((a * b).norm() - a.norm() * b.norm());
    return std::max(assoc, mult);
  }));
  for (std::size_t n = 1; n <= 3; ++n) {
    o.add(check_samples("complex_embedding_roundtrip", config(n, 100), 1e-14, [n](Rng& rng, std::size_t) {
      const QuatMatrix m = rng.gaussian_matrix(n, n);
      return max_abs_diff(complex_unembed(complex_embed(m)), m);
    }), at_n(n));
    o.add(check_samples("exp_lands_in_group", config(n, 100), 1e-10, [n](Rng& rng, std::size_t) {
      return membership_residual(mat_exp(random_algebra(n, rng).matrix()));
    }), at_n(n));
  }
  return o;
}

Outcome criterion_2() {
  Outcome o;
  for (std::size_t n = 1; n <= 2; ++n) three_axioms(o, DoubleSpace(n), n, "double");
  return o;
}

Outcome criterion_3() {
  Outcome o;
  three_axioms(o, *conjclass_make(generic_torus_point(2).to_group()), 2, "conjclass");
  three_axioms(o, *fuse_double(std::make_shared<DoubleSpace>(1)), 1, "fused double");
  return o;
}

Outcome criterion_4() {
  Outcome o;
  for (std::size_t n = 1; n <= 2; ++n) {
    three_axioms(o, StratumSpace(AlcoveFace::sigma01(n)), n, "stratum sigma01");
    o.add(check_stratum_representatives(AlcoveFace::sigma01(n), config(n, 50), 1e-10), at_n(n));
  }
  return o;
}

Outcome criterion_5() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) o.add(check_centralizer_dimensions(n), at_n(n));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const SampleConfig c = config(n, 100);
    o.add(check_roundtrip_FG(c, 1e-10), at_n(n));
    o.add(check_roundtrip_GF(c, 1e-10), at_n(n));
    o.add(check_G_equivariance(c, 1e-10), at_n(n));
    o.add(check_projective_invariance(c, 1e-10), at_n(n));
  }
  return o;
}

Outcome criterion_7() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const SampleConfig c = config(n, 100);
    o.add(check_form_agreement(FormPair::chart_homogeneous, c, 1e-8), at_n(n));
    o.add(check_form_agreement(FormPair::chart_fd, c, 1e-4), at_n(n));
    o.add(check_form_agreement(FormPair::homogeneous_fd, c, 1e-4), at_n(n));
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    const SampleConfig c = config(n, 100);
    o.add(check_moment_consistency(c, 1e-8), at_n(n));
    o.add(check_moment_at_base(c, 1e-6), at_n(n));
    for (auto side : {BoundarySide::head, BoundarySide::tail}) {
      o.add(check_cauchy_omega(side, c, 0.9), at_n(n));
      o.add(check_cauchy_moment(side, c, 0.9), at_n(n));
    }
  }
  return o;
}

// ---- CLI-driven criteria ----------------------------------------------------

struct CliRun {
  int exit_code = -1;
  std::string output;
};

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CliRun run_cli(const std::string& cli, const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto out = std::filesystem::current_path() / ("acceptance_run_" + std::to_string(counter++) + ".out");
  std::filesystem::remove(out);
  const std::string cmd = (env.empty() ? "" : env + " ") + "\"" + cli + "\" " + args + " --output \"" + out.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = read_file(out);
  std::filesystem::remove(out);
  return r;
}

bool has_note(const nlohmann::json& notes, const std::string& key) {
  for (const auto& n : notes)
    if (n.get<std::string>().find(key) != std::string::npos) return true;
  return false;
}

Outcome criterion_9(const std::string& cli) {
  Outcome o;
  const std::vector<std::string> keys = {"map_G orientation", "torus entry", "boundary limit"};
  const std::vector<std::string> commands = {"verify --space hpn --n 1", "verify --space hpn --n 2",
                                             "verify --space hpn --n 3", "roundtrip --n 2", "forms --n 2"};
  for (const auto& args : commands) {
    const CliRun r = run_cli(cli, args + " --samples 20");
    o.require(r.exit_code == 0, "'" + args + "' exit " + std::to_string(r.exit_code));
    try {
      const auto j = nlohmann::json::parse(r.output);
      for (const auto& key : keys) o.require(has_note(j.at("conformance_notes"), key), "'" + args + "' lacks note: " + key);
    } catch (const std::exception& e) {
      o.require(false, "'" + args + "' report not parseable: " + e.what());
    }
  }

  const CliRun scan = run_cli(cli, "boundary --ts 5,2,1,0.5,0.3,0.2,0.1,0.05");
  o.require(scan.exit_code == 0, "boundary exit " + std::to_string(scan.exit_code));
  std::istringstream lines(scan.output);
  std::string line;
  bool header = false;
  std::size_t rows = 0;
  std::vector<double> residuals;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      o.require(line == "t,lambda,closed_form,fd_pullback,printed", "boundary header: " + line);
      continue;
    }
    double t = 0, lambda = 0, closed = 0, fd = 0, printed = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &lambda, &closed, &fd, &printed) != 5) {
      o.require(false, "boundary row: " + line);
      continue;
    }
    ++rows;
    if (t >= 0.2 && t <= 5.0) residuals.push_back(std::abs(closed - fd));
  }
  o.require(rows == 8, "boundary rows: " + std::to_string(rows));
  o.add(make_report("boundary_closed_form_vs_fd", residuals, 1e-4));
  return o;
}

std::string strip_timestamp(const std::string& s) {
  std::istringstream in(s);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << "\n";
  return out.str();
}

Outcome criterion_10(const std::string& cli) {
  Outcome o;
  const std::vector<std::string> commands = {"verify --space double --n 2 --samples 30 --seed 7",
                                             "verify --space hpn --n 2 --samples 30 --seed 7",
                                             "verify --space stratum --n 2 --samples 30 --seed 7",
                                             "roundtrip --n 3 --samples 40 --seed 11"};
  for (const auto& args : commands) {
    const CliRun a = run_cli(cli, args, "QMOMENT_THREADS=1");
    const CliRun b = run_cli(cli, args, "QMOMENT_THREADS=4");
    const CliRun c = run_cli(cli, args, "QMOMENT_THREADS=4");
    o.require(!a.output.empty(), "'" + args + "' produced no report");
    o.require(strip_timestamp(a.output) == strip_timestamp(b.output), "'" + args + "' differs between 1 and 4 threads");
    o.require(strip_timestamp(b.output) == strip_timestamp(c.output), "'" + args + "' differs between repeated runs");
  }
  // In-process: per-sample residual vectors are identical across thread counts.
  SampleConfig c1 = config(2, 40);
  SampleConfig c4 = c1;
  c1.threads = 1;
  c4.threads = 4;
  const DoubleSpace d(2);
  o.require(check_axiom_one(d, c1).residuals == check_axiom_one(d, c4).residuals, "axiom_one residuals depend on threads");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  if (cli.empty()) {
    std::cerr << "usage: acceptance --cli <path to qmoment>\n";
    return 2;
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"algebraic substrate", criterion_1},
      {"double of Sp(n) is quasi-Hamiltonian, n=1,2", criterion_2},
      {"generic Sp(2) conjugacy class and fused double of Sp(1)", criterion_3},
      {"stratum X01, n=1,2, and representative independence", criterion_4},
      {"centralizer dimensions at sigma0/sigma01/sigma1, n=1,2,3", criterion_5},
      {"map_F/map_G roundtrips, equivariance, projective invariance", criterion_6},
      {"chart, homogeneous and FD-pullback 2-forms agree on HP^n", criterion_7},
      {"moment consistency and smooth extension to the boundary", criterion_8},
      {"conformance notes in hpn reports; boundary scan columns agree", [&] { return criterion_9(cli); }},
      {"deterministic reports under QMOMENT_THREADS 1 and 4", [&] { return criterion_10(cli); }},
  };

  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << (k + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[k].first << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << "\n";
  return all ? 0 : 1;
}
