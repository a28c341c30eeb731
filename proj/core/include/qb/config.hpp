#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qb/qnum.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// Everything a batch run needs: the spectrum description plus subcommand
// parameters.  Defaults are explicit here so the emitted provenance block
// always lists every effective value.
struct RunConfig {
  // spectrum description, pre-normalization
  AlphaInput alpha_in;
  mpq_class beta = 1;
  RawCombo combo;
  std::optional<CommensurableDecl> commensurable;

  // subcommand and its parameters
  std::string subcommand = "construct";
  long long n_lo = -100;
  long long n_hi = 100;
  // verify derives its own block window from the a-range unless the n-range
  // was given explicitly
  bool n_range_explicit = false;
  std::vector<long long> mean_window_sizes = {100, 1000, 10000};
  long long a_lo = -100000;
  long long a_hi = 100000;
  std::vector<long long> radii = {25, 50, 100};
  std::string perturb = "none";  // none | near-duplicate
  double tol = 1e-10;
  std::uint64_t seed = 12345;
  int kernels = 40;
  double synth_half_width = 20.0;
  long long sample_radius = 30;
  long long eval_radius = 10;
  double grid_step = 0.01;
  bool exact = false;

  std::string out_csv;   // empty: <subcommand>.csv
  std::string out_json;  // empty: <subcommand>.json
};

// Parses the JSON config text (spectrum schema plus optional "run" block).
// Malformed input raises InputError with a field-specific message.
RunConfig load_config(const std::string& json_text);

// Canonical serialization: sorted keys, every default spelled out, exact
// rationals as strings.  load_config(canonical_config_json(c)) round-trips
// to an equivalent config, and the provenance hash is taken over this text.
std::string canonical_config_json(const RunConfig& c);

// FNV-1a 64 over the canonical serialization, as fixed-width hex.
std::string config_hash(const RunConfig& c);

// Normalization pipeline: rescale lengths, evaluate the combo, validate the
// {0,1} range, and merge into a Spectrum.
struct SessionSpectrum {
  Alpha alpha;
  Spectrum spectrum;
  SessionSpectrum(Alpha a, Spectrum s)
      : alpha(std::move(a)), spectrum(std::move(s)) {}
};
SessionSpectrum build_spectrum(const RunConfig& c);

// Canonical normalized spectrum document: alpha, merged bands with exact
// endpoints, and the measure.  Parseable back via load_spectrum_json.
std::string spectrum_to_json(const Spectrum& s, const Alpha& alpha);
SessionSpectrum load_spectrum_json(const std::string& json_text);

}  // namespace qb
