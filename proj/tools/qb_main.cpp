// qb: exponential systems on quasicrystal node sets.
//
// Each subcommand reads a spectrum config (JSON), applies command line
// overrides, runs, and writes a CSV table plus a JSON report, both stamped
// with the config hash. Exit codes: 0 all checks passed, 1 a check failed
// or a solver gave up, 2 malformed input.

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qb/errors.hpp"
#include "qb/runner.hpp"
#include "qb/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qb::InputError("cannot read spectrum config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "lo:hi" with signed integers
std::pair<long long, long long> parse_range(const std::string& text,
                                            const std::string& flag) {
  const auto colon = text.find(':', text.empty() || text[0] != '-' ? 0 : 1);
  std::size_t used = 0;
  try {
    const long long lo = std::stoll(text.substr(0, colon), &used);
    if (colon == std::string::npos || used != colon)
      throw std::invalid_argument("range");
    const long long hi = std::stoll(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("range");
    return {lo, hi};
  } catch (const std::exception&) {
    throw qb::InputError(flag + ": expected lo:hi, got '" + text + "'");
  }
}

struct Cli {
  std::string spectrum_path;
  std::string n_range, a_range;
  std::vector<long long> window_sizes, radii;
  std::string perturb;
  double tol = -1.0, half_width = -1.0, grid_step = -1.0;
  long long seed = -1, kernels = -1, sample_radius = -1, eval_radius = -1;
  bool exact = false;
  std::string out_csv, out_json;
};

void add_common(CLI::App* sub, Cli& a) {
  sub->add_option("-s,--spectrum", a.spectrum_path,
                  "spectrum config file (JSON)")
      ->required();
  sub->add_option("--out-csv", a.out_csv, "CSV output path (default <cmd>.csv)");
  sub->add_option("--out-json", a.out_json,
                  "JSON report path (default <cmd>.json)");
}

qb::RunConfig assemble(const Cli& a, const std::string& subcommand) {
  qb::RunConfig c = qb::load_config(read_file(a.spectrum_path));
  c.subcommand = subcommand;
  if (!a.n_range.empty()) {
    std::tie(c.n_lo, c.n_hi) = parse_range(a.n_range, "--n-range");
    c.n_range_explicit = true;
  }
  if (!a.a_range.empty())
    std::tie(c.a_lo, c.a_hi) = parse_range(a.a_range, "--a-range");
  if (!a.window_sizes.empty()) c.mean_window_sizes = a.window_sizes;
  if (!a.radii.empty()) c.radii = a.radii;
  if (!a.perturb.empty()) c.perturb = a.perturb;
  if (a.tol > 0.0) c.tol = a.tol;
  if (a.seed >= 0) c.seed = static_cast<std::uint64_t>(a.seed);
  if (a.kernels > 0) c.kernels = static_cast<int>(a.kernels);
  if (a.half_width > 0.0) c.synth_half_width = a.half_width;
  if (a.sample_radius > 0) c.sample_radius = a.sample_radius;
  if (a.eval_radius > 0) c.eval_radius = a.eval_radius;
  if (a.grid_step > 0.0) c.grid_step = a.grid_step;
  if (a.exact) c.exact = true;
  if (!a.out_csv.empty()) c.out_csv = a.out_csv;
  if (!a.out_json.empty()) c.out_json = a.out_json;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exponential systems on quasicrystal node sets"};
  app.set_version_flag("--version", std::string("qb ") + qb::kVersion);
  app.require_subcommand(1);
  Cli a;

  CLI::App* construct = app.add_subcommand(
      "construct", "enumerate the node set by spectrum blocks");
  add_common(construct, a);
  construct->add_option("--n-range", a.n_range, "block range lo:hi");

  CLI::App* verify = app.add_subcommand(
      "verify", "check separation, boundedness and window-mean conditions");
  add_common(verify, a);
  verify->add_option("--n-range", a.n_range,
                     "block range lo:hi (default derived from --a-range)");
  verify->add_option("--a-range", a.a_range, "window start range lo:hi");
  verify->add_option("--window-sizes", a.window_sizes,
                     "mean window sizes, strictly increasing");
  verify->add_flag("--exact", a.exact,
                   "exact comparisons (rational measure only)");

  CLI::App* certify = app.add_subcommand(
      "certify", "finite-section eigenvalue sweep over value windows");
  add_common(certify, a);
  certify->add_option("--radii", a.radii, "window radii, strictly increasing");
  certify->add_option("--perturb", a.perturb, "none | near-duplicate")
      ->check(CLI::IsMember({"none", "near-duplicate"}));
  certify->add_option("--tol", a.tol, "eigensolver residual tolerance");

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "sample a random bandlimited signal and reconstruct it");
  add_common(reconstruct, a);
  reconstruct->add_option("--tol", a.tol, "CG relative residual target");
  reconstruct->add_option("--seed", a.seed, "synthesis RNG seed");
  reconstruct->add_option("--kernels", a.kernels, "number of kernel terms");
  reconstruct->add_option("--half-width", a.half_width,
                          "kernel centers drawn from [-T, T]");
  reconstruct->add_option("--sample-radius", a.sample_radius,
                          "sampling nodes from [-R, R]");
  reconstruct->add_option("--eval-radius", a.eval_radius,
                          "interior error window [-r, r]");
  reconstruct->add_option("--grid-step", a.grid_step, "evaluation grid step");

  CLI::App* duality = app.add_subcommand(
      "duality", "paired multiband/interval sweeps with boundary audit");
  add_common(duality, a);
  duality->add_option("--radii", a.radii, "window radii, strictly increasing");
  duality->add_option("--tol", a.tol, "eigensolver residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    const qb::RunOutcome out = qb::run(assemble(a, sub));
    std::fprintf(out.exit_code == 0 ? stdout : stderr, "%s\n",
                 out.summary.c_str());
    return out.exit_code;
  } catch (const qb::InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  }
}
