#include "qb/runner.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "qb/avdonin.hpp"
#include "qb/duality.hpp"
#include "qb/errors.hpp"
#include "qb/numutil.hpp"
#include "qb/sampling.hpp"
#include "qb/spectral.hpp"
#include "qb/version.hpp"

namespace qb {

namespace {

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open output file: " + path);
  out << content;
  if (!out.good()) throw InputError("failed writing output file: " + path);
}

std::string csv_header(const RunConfig& c, const Alpha& alpha,
                       const std::string& columns) {
  std::string h;
  h += "# provenance: config=" + config_hash(c) + " version=" + kVersion +
       " precision=" + alpha.describe() + "\n";
  h += columns + "\n";
  return h;
}

json provenance_json(const RunConfig& c, const Alpha& alpha) {
  json p;
  p["config"] = json::parse(canonical_config_json(c));
  p["config_hash"] = config_hash(c);
  p["version"] = kVersion;
  p["precision"] = alpha.describe();
  return p;
}

void emit(const RunConfig& c, const Alpha& alpha, const std::string& csv,
          const json& result) {
  const std::string csv_path =
      c.out_csv.empty() ? c.subcommand + ".csv" : c.out_csv;
  const std::string json_path =
      c.out_json.empty() ? c.subcommand + ".json" : c.out_json;
  write_file(csv_path, csv);
  json doc;
  doc["provenance"] = provenance_json(c, alpha);
  doc["result"] = result;
  write_file(json_path, doc.dump(2) + "\n");
}

std::string fd(double x) { return format_double(x); }

RunOutcome run_construct(const RunConfig& c, const SessionSpectrum& ss) {
  const NodeSet nodes =
      partition_enumerate(ss.spectrum, ss.alpha, c.n_lo, c.n_hi);
  std::string csv = csv_header(c, ss.alpha, "j,n,u,v,float64_value");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    csv += std::to_string(nodes.global_index(i)) + "," +
           std::to_string(nodes.block_n[i]) + "," + nodes.values[i].u.get_str() +
           "," + std::to_string(nodes.values[i].v) + "," +
           fd(nodes.approx[i]) + "\n";
  }
  json result;
  result["node_count"] = nodes.size();
  result["n_lo"] = c.n_lo;
  result["n_hi"] = c.n_hi;
  result["j_first"] = nodes.j0;
  result["j_last"] = nodes.j0 + static_cast<long long>(nodes.size()) - 1;
  result["measure"] = {{"u", ss.spectrum.measure().u.get_str()},
                       {"v", ss.spectrum.measure().v}};
  if (nodes.size() >= 2) {
    const QNum gap = min_gap(nodes, ss.alpha);
    result["min_gap"] = {{"exact", qnum_to_string(gap)},
                         {"float64", fd(qnum_to_double(gap, ss.alpha))}};
  }
  emit(c, ss.alpha, csv, result);
  return {0, "constructed " + std::to_string(nodes.size()) + " nodes in blocks [" +
                 std::to_string(c.n_lo) + ", " + std::to_string(c.n_hi) + "]"};
}

RunOutcome run_verify(const RunConfig& c, const SessionSpectrum& ss) {
  long long n_lo = c.n_lo, n_hi = c.n_hi;
  if (!c.n_range_explicit) {
    // block window sized so the global index range covers every window mean
    const double mes_d = qnum_to_double(ss.spectrum.measure(), ss.alpha);
    const long long n_max = c.mean_window_sizes.back();
    n_lo = static_cast<long long>(
               std::floor(static_cast<double>(c.a_lo) / mes_d)) -
           64;
    n_hi = static_cast<long long>(
               std::ceil(static_cast<double>(c.a_hi + n_max) / mes_d)) +
           64;
  }
  const AvdoninReport rep =
      check_conditions(ss.spectrum, ss.alpha, n_lo, n_hi, c.mean_window_sizes,
                       c.a_lo, c.a_hi, c.exact);

  std::string csv = csv_header(c, ss.alpha, "N,sup_deviation,threshold");
  for (const auto& row : rep.table)
    csv += std::to_string(row.N) + "," + fd(row.sup_deviation) + "," +
           fd(rep.threshold) + "\n";

  json result;
  result["separation_gap"] = fd(rep.separation_gap);
  result["verdict_separation"] = rep.verdict_a;
  result["delta_sup"] = fd(rep.delta_sup);
  result["delta_sup_half_window"] = fd(rep.delta_sup_half);
  result["verdict_bounded"] = rep.verdict_b;
  result["c_estimate"] = fd(rep.c_estimate);
  result["N_used"] = rep.N_used;
  result["sup_block_deviation"] = fd(rep.sup_block_deviation);
  result["threshold"] = fd(rep.threshold);
  result["margin"] = fd(rep.margin);
  result["verdict_mean"] = rep.verdict_c;
  result["trend_nonincreasing"] = rep.trend_nonincreasing;
  result["exact_mode"] = rep.exact_mode;
  result["block_window"] = {{"n_lo", n_lo}, {"n_hi", n_hi}};
  json table = json::array();
  for (const auto& row : rep.table)
    table.push_back({{"N", row.N},
                     {"c", fd(row.c)},
                     {"sup_deviation", fd(row.sup_deviation)}});
  result["table"] = std::move(table);
  const bool pass = rep.verdict_a && rep.verdict_b && rep.verdict_c;
  result["pass"] = pass;
  emit(c, ss.alpha, csv, result);
  std::ostringstream msg;
  msg << (pass ? "conditions hold" : "conditions FAILED") << ": gap "
      << fd(rep.separation_gap) << ", sup|delta| " << fd(rep.delta_sup)
      << ", mean margin " << fd(rep.margin) << " at N=" << rep.N_used;
  return {pass ? 0 : 1, msg.str()};
}

RunOutcome run_certify(const RunConfig& c, const SessionSpectrum& ss) {
  const Perturb mode =
      c.perturb == "near-duplicate" ? Perturb::NearDuplicate : Perturb::None;
  const auto rows =
      window_sweep(ss.spectrum, ss.alpha, c.radii, LatticeSide::Primal, mode,
                   c.tol);

  std::string csv = csv_header(c, ss.alpha, "R,lambda_min,lambda_max,cond");
  for (const auto& r : rows)
    csv += std::to_string(r.window_radius) + "," + fd(r.lambda_min) + "," +
           fd(r.lambda_max) + "," + fd(r.cond) + "\n";

  double cond_lo = rows.front().cond, cond_hi = rows.front().cond;
  bool positive = true, interlaced = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cond_lo = std::min(cond_lo, rows[i].cond);
    cond_hi = std::max(cond_hi, rows[i].cond);
    positive = positive && rows[i].lambda_min > 0.0;
    if (i > 0) {
      interlaced = interlaced && rows[i].lambda_min <= rows[i - 1].lambda_min &&
                   rows[i].lambda_max >= rows[i - 1].lambda_max;
    }
  }
  const double drift = cond_lo > 0.0 ? cond_hi / cond_lo
                                     : std::numeric_limits<double>::infinity();

  json result;
  json jrows = json::array();
  for (const auto& r : rows)
    jrows.push_back({{"R", r.window_radius},
                     {"dim", r.dim},
                     {"lambda_min", fd(r.lambda_min)},
                     {"lambda_max", fd(r.lambda_max)},
                     {"cond", fd(r.cond)},
                     {"residual_tolerance", fd(r.residual_tolerance)}});
  result["rows"] = std::move(jrows);
  result["cond_drift"] = fd(drift);
  result["lambda_min_positive"] = positive;
  result["interlacing"] = interlaced;
  result["perturb"] = c.perturb;

  // the near-duplicate mode exists to exhibit collapse; it reports only
  const bool judged = (mode == Perturb::None);
  const bool pass = !judged || (positive && interlaced && drift < 2.0);
  result["pass"] = pass;
  emit(c, ss.alpha, csv, result);
  std::ostringstream msg;
  if (judged)
    msg << (pass ? "finite sections stable" : "finite sections UNSTABLE")
        << ": cond drift " << fd(drift) << " over " << rows.size() << " radii";
  else
    msg << "near-duplicate probe: lambda_min " << fd(rows.back().lambda_min)
        << " at R=" << rows.back().window_radius;
  return {pass ? 0 : 1, msg.str()};
}

RunOutcome run_reconstruct(const RunConfig& c, const SessionSpectrum& ss) {
  const SpectrumKernel ker(ss.spectrum, ss.alpha);
  const BandlimitedSignal f =
      synthesize_random(ss.spectrum, c.kernels, c.synth_half_width, c.seed);
  const auto nodes =
      window_values(ss.spectrum, ss.alpha, c.sample_radius, LatticeSide::Primal);
  const auto samples = sample_signal(f, ker, nodes, ss.alpha);
  ReconstructionResult rec =
      reconstruct(samples, nodes, ss.spectrum, ss.alpha, c.tol);

  // interpolation quality at the nodes
  const auto resampled = sample_signal(rec.reconstruction, ker, nodes, ss.alpha);
  CompensatedSum num, den;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    num.add(std::norm(resampled[i] - samples[i]));
    den.add(std::norm(samples[i]));
  }
  const double interp_rel =
      den.value() > 0.0 ? std::sqrt(num.value() / den.value()) : 0.0;

  const double elo = -static_cast<double>(c.eval_radius);
  const double ehi = static_cast<double>(c.eval_radius);
  rec.interior_rel_error =
      interior_error(f, rec.reconstruction, ker, elo, ehi, c.grid_step);
  rec.grid_step = c.grid_step;

  std::string csv =
      csv_header(c, ss.alpha, "t,re_f,im_f,re_f_tilde,im_f_tilde");
  const auto steps =
      static_cast<std::size_t>(std::ceil((ehi - elo) / c.grid_step));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t =
        (i == steps) ? ehi : elo + c.grid_step * static_cast<double>(i);
    const auto fv = eval_signal(f, ker, t);
    const auto gv = eval_signal(rec.reconstruction, ker, t);
    csv += fd(t) + "," + fd(fv.real()) + "," + fd(fv.imag()) + "," +
           fd(gv.real()) + "," + fd(gv.imag()) + "\n";
  }

  json result;
  result["node_count"] = nodes.size();
  result["cg_iterations"] = rec.cg_iterations;
  result["cg_residual"] = fd(rec.cg_residual);
  result["interior_rel_error"] = fd(rec.interior_rel_error);
  result["interpolation_rel_error"] = fd(interp_rel);
  result["energy"] = fd(signal_energy(f, ker));
  result["eval_interval"] = {fd(elo), fd(ehi)};
  result["grid_step"] = fd(c.grid_step);
  const bool pass = rec.cg_residual <= c.tol && interp_rel <= 10.0 * c.tol;
  result["pass"] = pass;
  emit(c, ss.alpha, csv, result);
  std::ostringstream msg;
  msg << (pass ? "reconstruction solved" : "reconstruction FAILED") << ": "
      << nodes.size() << " nodes, " << rec.cg_iterations
      << " CG iterations, interior error " << fd(rec.interior_rel_error);
  return {pass ? 0 : 1, msg.str()};
}

json audit_to_json(const BoundaryAuditReport& audit, const Alpha& alpha) {
  json cases = json::array();
  for (const auto& bc : audit.cases)
    cases.push_back(
        {{"cut_window_on", bc.window_on_p2 ? "p2" : "p1"},
         {"free_coord", bc.free_coord},
         {"det_coord", bc.det_coord},
         {"projection", qnum_to_string(bc.projection)},
         {"projection_float64", fd(qnum_to_double(bc.projection, alpha))},
         {"endpoint", qnum_to_string(bc.endpoint)},
         {"exact_hit", bc.exact_hit},
         {"closed_end", bc.closed_end},
         {"included", bc.included}});
  return {{"cases", std::move(cases)},
          {"exact_hits", audit.exact_hits},
          {"resolved_exactly", audit.resolved_exactly}};
}

RunOutcome run_duality(const RunConfig& c, const SessionSpectrum& ss) {
  const DualityReport rep =
      duality_experiment(ss.spectrum, ss.alpha, c.radii, c.tol);

  std::string csv =
      csv_header(c, ss.alpha, "side,R,lambda_min,lambda_max,cond");
  for (const auto& r : rep.primal)
    csv += "multiband," + std::to_string(r.window_radius) + "," +
           fd(r.lambda_min) + "," + fd(r.lambda_max) + "," + fd(r.cond) + "\n";
  for (const auto& r : rep.dual)
    csv += "interval," + std::to_string(r.window_radius) + "," +
           fd(r.lambda_min) + "," + fd(r.lambda_max) + "," + fd(r.cond) + "\n";

  json result;
  result["radii"] = rep.radii;
  result["primal_drift"] = fd(rep.primal_drift);
  result["dual_drift"] = fd(rep.dual_drift);
  result["primal_plateau"] = rep.primal_plateau;
  result["dual_plateau"] = rep.dual_plateau;
  result["paired_plateau"] = rep.paired_plateau;
  result["primal_density"] = fd(rep.primal_density);
  result["dual_density"] = fd(rep.dual_density);
  result["primal_audit"] = audit_to_json(rep.primal_audit, ss.alpha);
  result["dual_audit"] = audit_to_json(rep.dual_audit, ss.alpha);
  const bool audits_exact =
      rep.primal_audit.resolved_exactly == rep.primal_audit.cases.size() &&
      rep.dual_audit.resolved_exactly == rep.dual_audit.cases.size();
  const bool pass = rep.primal_plateau && rep.dual_plateau && audits_exact;
  result["pass"] = pass;
  emit(c, ss.alpha, csv, result);
  std::ostringstream msg;
  msg << (pass ? "paired sweeps consistent" : "paired sweeps INCONSISTENT")
      << ": drifts " << fd(rep.primal_drift) << " / " << fd(rep.dual_drift)
      << ", boundary cases " << rep.primal_audit.cases.size() << "+"
      << rep.dual_audit.cases.size() << " all exact";
  return {pass ? 0 : 1, msg.str()};
}

}  // namespace

RunOutcome run(const RunConfig& c) {
  try {
    const SessionSpectrum ss = build_spectrum(c);
    if (c.subcommand == "construct") return run_construct(c, ss);
    if (c.subcommand == "verify") return run_verify(c, ss);
    if (c.subcommand == "certify") return run_certify(c, ss);
    if (c.subcommand == "reconstruct") return run_reconstruct(c, ss);
    if (c.subcommand == "duality") return run_duality(c, ss);
    return {2, "unknown subcommand '" + c.subcommand + "'"};
  } catch (const InputError& e) {
    return {2, std::string("input error: ") + e.what()};
  } catch (const Error& e) {
    return {1, std::string("run failed: ") + e.what()};
  } catch (const std::exception& e) {
    return {1, std::string("run failed: ") + e.what()};
  }
}

}  // namespace qb
