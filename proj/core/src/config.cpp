#include "qb/config.hpp"

#include "json.hpp"

#include <utility>

#include "qb/errors.hpp"
#include "qb/numutil.hpp"

namespace qb {

namespace {

using nlohmann::json;

mpq_class parse_mpq(const std::string& text, const std::string& where) {
  if (text.empty()) throw InputError(where + ": empty rational");
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw InputError(where + ": not a rational: '" + text + "'");
  if (q.get_den() == 0) throw InputError(where + ": zero denominator");
  q.canonicalize();
  return q;
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::string need_string(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) throw InputError(where + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

long long need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer())
    throw InputError(where + ": '" + key + "' must be an integer");
  return v.get<long long>();
}

AlphaInput parse_alpha_input(const json& j) {
  if (!j.is_object()) throw InputError("alpha: must be an object");
  AlphaInput in;
  const std::string kind = need_string(j, "kind", "alpha");
  if (kind == "sqrt") {
    in.kind = AlphaInput::Kind::Sqrt;
    in.rational = parse_mpq(need_string(j, "value", "alpha"), "alpha.value");
  } else if (kind == "golden") {
    in.kind = AlphaInput::Kind::Golden;
  } else if (kind == "decimal") {
    in.kind = AlphaInput::Kind::Decimal;
    in.decimal_digits = need_string(j, "value", "alpha");
  } else if (kind == "rational") {
    in.kind = AlphaInput::Kind::Rational;
    in.rational = parse_mpq(need_string(j, "value", "alpha"), "alpha.value");
  } else {
    throw InputError("alpha: unknown kind '" + kind + "'");
  }
  return in;
}

json alpha_input_to_json(const AlphaInput& in) {
  json j;
  switch (in.kind) {
    case AlphaInput::Kind::Sqrt:
      j["kind"] = "sqrt";
      j["value"] = mpq_str(in.rational);
      break;
    case AlphaInput::Kind::Golden:
      j["kind"] = "golden";
      break;
    case AlphaInput::Kind::Decimal:
      j["kind"] = "decimal";
      j["value"] = in.decimal_digits;
      break;
    case AlphaInput::Kind::Rational:
      j["kind"] = "rational";
      j["value"] = mpq_str(in.rational);
      break;
  }
  return j;
}

std::vector<long long> parse_int_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw InputError(where + ": must be a non-empty array of integers");
  std::vector<long long> out;
  for (const auto& e : v) {
    if (!e.is_number_integer())
      throw InputError(where + ": entries must be integers");
    out.push_back(e.get<long long>());
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1])
      throw InputError(where + ": entries must be strictly increasing");
  return out;
}

void parse_run_block(const json& j, RunConfig& c) {
  static const char* const known[] = {
      "subcommand", "n_lo",          "n_hi",        "n_range_explicit",
      "mean_window_sizes", "a_lo",   "a_hi",        "radii",
      "perturb",    "tol",           "seed",        "kernels",
      "synth_half_width", "sample_radius", "eval_radius", "grid_step",
      "exact"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || (it.key() == k);
    if (!ok) throw InputError("run: unknown field '" + it.key() + "'");
  }
  if (j.contains("subcommand")) c.subcommand = need_string(j, "subcommand", "run");
  if (j.contains("n_lo")) {
    c.n_lo = need_int(j, "n_lo", "run");
    c.n_range_explicit = true;
  }
  if (j.contains("n_hi")) {
    c.n_hi = need_int(j, "n_hi", "run");
    c.n_range_explicit = true;
  }
  if (j.contains("n_range_explicit")) {
    if (!j.at("n_range_explicit").is_boolean())
      throw InputError("run: 'n_range_explicit' must be a boolean");
    c.n_range_explicit = j.at("n_range_explicit").get<bool>();
  }
  if (j.contains("mean_window_sizes"))
    c.mean_window_sizes = parse_int_list(j.at("mean_window_sizes"),
                                         "run.mean_window_sizes");
  if (j.contains("a_lo")) c.a_lo = need_int(j, "a_lo", "run");
  if (j.contains("a_hi")) c.a_hi = need_int(j, "a_hi", "run");
  if (j.contains("radii")) c.radii = parse_int_list(j.at("radii"), "run.radii");
  if (j.contains("perturb")) c.perturb = need_string(j, "perturb", "run");
  if (j.contains("tol")) {
    if (!j.at("tol").is_number()) throw InputError("run: 'tol' must be a number");
    c.tol = j.at("tol").get<double>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw InputError("run: 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("kernels"))
    c.kernels = static_cast<int>(need_int(j, "kernels", "run"));
  if (j.contains("synth_half_width")) {
    if (!j.at("synth_half_width").is_number())
      throw InputError("run: 'synth_half_width' must be a number");
    c.synth_half_width = j.at("synth_half_width").get<double>();
  }
  if (j.contains("sample_radius")) c.sample_radius = need_int(j, "sample_radius", "run");
  if (j.contains("eval_radius")) c.eval_radius = need_int(j, "eval_radius", "run");
  if (j.contains("grid_step")) {
    if (!j.at("grid_step").is_number())
      throw InputError("run: 'grid_step' must be a number");
    c.grid_step = j.at("grid_step").get<double>();
  }
  if (j.contains("exact")) {
    if (!j.at("exact").is_boolean()) throw InputError("run: 'exact' must be a boolean");
    c.exact = j.at("exact").get<bool>();
  }
}

void validate(const RunConfig& c) {
  static const char* const subs[] = {"construct", "verify", "certify",
                                     "reconstruct", "duality"};
  bool ok = false;
  for (const char* s : subs) ok = ok || (c.subcommand == s);
  if (!ok) throw InputError("unknown subcommand '" + c.subcommand + "'");
  if (c.perturb != "none" && c.perturb != "near-duplicate")
    throw InputError("perturb must be 'none' or 'near-duplicate'");
  if (c.n_lo > c.n_hi) throw InputError("n range is empty");
  if (c.a_lo > c.a_hi) throw InputError("a range is empty");
  if (!(c.tol > 0.0)) throw InputError("tol must be positive");
  if (c.kernels < 1) throw InputError("kernels must be >= 1");
  if (!(c.synth_half_width > 0.0)) throw InputError("synth_half_width must be positive");
  if (c.sample_radius <= 0 || c.eval_radius <= 0)
    throw InputError("radii must be positive");
  if (!(c.grid_step > 0.0)) throw InputError("grid_step must be positive");
  for (long long r : c.radii)
    if (r <= 0) throw InputError("radii must be positive");
  for (long long n : c.mean_window_sizes)
    if (n <= 0) throw InputError("mean window sizes must be positive");
  if (c.combo.terms.empty()) throw InputError("terms: at least one term required");
}

}  // namespace

RunConfig load_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config: top level must be an object");

  RunConfig c;
  c.alpha_in = parse_alpha_input(need(j, "alpha", "config"));
  c.beta = parse_mpq(need_string(j, "beta", "config"), "beta");

  const json& terms = need(j, "terms", "config");
  if (!terms.is_array() || terms.empty())
    throw InputError("terms: must be a non-empty array");
  for (const auto& t : terms) {
    RawTerm rt;
    rt.coeff = parse_mpq(need_string(t, "coeff", "term"), "term.coeff");
    const json& lo = need(t, "lo", "term");
    rt.lo_u = parse_mpq(need_string(lo, "u", "term.lo"), "term.lo.u");
    rt.lo_v = need_int(lo, "v", "term.lo");
    const json& len = need(t, "len", "term");
    rt.len.n = need_int(len, "n", "term.len");
    rt.len.m = need_int(len, "m", "term.len");
    c.combo.terms.push_back(std::move(rt));
  }

  if (j.contains("commensurable")) {
    const json& cm = j.at("commensurable");
    CommensurableDecl decl;
    decl.g = parse_mpq(need_string(cm, "g", "commensurable"), "commensurable.g");
    decl.alpha_over_g = parse_mpq(need_string(cm, "alpha_over_g", "commensurable"),
                                  "commensurable.alpha_over_g");
    decl.beta_over_g = parse_mpq(need_string(cm, "beta_over_g", "commensurable"),
                                 "commensurable.beta_over_g");
    c.commensurable = std::move(decl);
  }

  if (j.contains("run")) {
    if (!j.at("run").is_object()) throw InputError("run: must be an object");
    parse_run_block(j.at("run"), c);
  }
  validate(c);
  return c;
}

std::string canonical_config_json(const RunConfig& c) {
  json j;
  j["alpha"] = alpha_input_to_json(c.alpha_in);
  j["beta"] = mpq_str(c.beta);
  json terms = json::array();
  for (const auto& t : c.combo.terms) {
    json jt;
    jt["coeff"] = mpq_str(t.coeff);
    jt["lo"] = {{"u", mpq_str(t.lo_u)}, {"v", t.lo_v}};
    jt["len"] = {{"n", t.len.n}, {"m", t.len.m}};
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  if (c.commensurable) {
    j["commensurable"] = {{"g", mpq_str(c.commensurable->g)},
                          {"alpha_over_g", mpq_str(c.commensurable->alpha_over_g)},
                          {"beta_over_g", mpq_str(c.commensurable->beta_over_g)}};
  }
  j["run"] = {{"subcommand", c.subcommand},
              {"n_lo", c.n_lo},
              {"n_hi", c.n_hi},
              {"n_range_explicit", c.n_range_explicit},
              {"mean_window_sizes", c.mean_window_sizes},
              {"a_lo", c.a_lo},
              {"a_hi", c.a_hi},
              {"radii", c.radii},
              {"perturb", c.perturb},
              {"tol", c.tol},
              {"seed", c.seed},
              {"kernels", c.kernels},
              {"synth_half_width", c.synth_half_width},
              {"sample_radius", c.sample_radius},
              {"eval_radius", c.eval_radius},
              {"grid_step", c.grid_step},
              {"exact", c.exact}};
  return j.dump();
}

std::string config_hash(const RunConfig& c) {
  return fnv1a64_hex(canonical_config_json(c));
}

SessionSpectrum build_spectrum(const RunConfig& c) {
  NormalForm nf =
      rescale_to_normal_form(c.alpha_in, c.beta, c.combo, c.commensurable);
  Spectrum s = normalize_combo(nf.combo, nf.alpha);
  return SessionSpectrum(std::move(nf.alpha), std::move(s));
}

namespace {

json qnum_to_json(const QNum& x) {
  return {{"u", mpq_str(x.u)}, {"v", x.v}};
}

QNum qnum_from_json(const json& j, const std::string& where) {
  return QNum(parse_mpq(need_string(j, "u", where), where + ".u"),
              need_int(j, "v", where));
}

}  // namespace

std::string spectrum_to_json(const Spectrum& s, const Alpha& alpha) {
  json j;
  switch (alpha.kind()) {
    case AlphaKind::Sqrt:
      j["alpha"] = {{"kind", "sqrt"}, {"value", mpq_str(alpha.radicand())}};
      break;
    case AlphaKind::Golden:
      j["alpha"] = {{"kind", "golden"}};
      break;
    case AlphaKind::Decimal:
      j["alpha"] = {{"kind", "decimal"},
                    {"approx", mpq_str(alpha.decimal_approx())},
                    {"uncertainty", mpq_str(alpha.decimal_uncertainty())},
                    {"sig_digits", alpha.sig_digits()}};
      break;
  }
  json bands = json::array();
  for (const auto& b : s.bands())
    bands.push_back({{"lo", qnum_to_json(b.lo)}, {"hi", qnum_to_json(b.hi)}});
  j["bands"] = std::move(bands);
  j["measure"] = qnum_to_json(s.measure());
  return j.dump(2) + "\n";
}

SessionSpectrum load_spectrum_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spectrum: invalid JSON: ") + e.what());
  }
  const json& ja = need(j, "alpha", "spectrum");
  const std::string kind = need_string(ja, "kind", "spectrum.alpha");
  Alpha alpha = Alpha::golden();
  if (kind == "sqrt") {
    alpha = Alpha::sqrt_of(parse_mpq(need_string(ja, "value", "spectrum.alpha"),
                                     "spectrum.alpha.value"));
  } else if (kind == "golden") {
    alpha = Alpha::golden();
  } else if (kind == "decimal") {
    alpha = Alpha::decimal_exact(
        parse_mpq(need_string(ja, "approx", "spectrum.alpha"), "alpha.approx"),
        parse_mpq(need_string(ja, "uncertainty", "spectrum.alpha"),
                  "alpha.uncertainty"),
        static_cast<int>(need_int(ja, "sig_digits", "spectrum.alpha")));
  } else {
    throw InputError("spectrum.alpha: unknown kind '" + kind + "'");
  }
  const json& jb = need(j, "bands", "spectrum");
  if (!jb.is_array() || jb.empty())
    throw InputError("spectrum: 'bands' must be a non-empty array");
  std::vector<Interval> bands;
  for (const auto& b : jb)
    bands.push_back(Interval{qnum_from_json(need(b, "lo", "band"), "band.lo"),
                             qnum_from_json(need(b, "hi", "band"), "band.hi")});
  Spectrum s = Spectrum::from_bands(std::move(bands), alpha);
  return SessionSpectrum(std::move(alpha), std::move(s));
}

}  // namespace qb
