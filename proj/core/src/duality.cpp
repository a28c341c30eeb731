#include "qb/duality.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "qb/errors.hpp"
#include "qb/nodeset.hpp"

namespace qb {

namespace {

constexpr double kFloatProximity = 1e-9;

// Appends the audit cases for one (sweep coordinate, endpoint) pair.  The
// solved coordinate s enters the projection with rational coefficient d, so
// the two integers bracketing (endpoint - shift)/d are the only candidates
// that can be float-close.
void audit_endpoint(const SweepGeometry& plan, const mpq_class& d,
                    long long t, const QNum& endpoint, bool closed_end,
                    const std::vector<Interval>& windows, const Alpha& alpha,
                    BoundaryAuditReport& out) {
  auto wcoef = [&](const Vec2q& v) -> const QNum& {
    return plan.window_on_p2 ? v.y : v.x;
  };
  const QNum shift = qnum_scale(wcoef(plan.free_vec), t);
  const QNum num = endpoint - shift;
  const double s_real = qnum_to_double(num, alpha) / d.get_d();
  const auto s_base = static_cast<long long>(std::floor(s_real));
  for (long long s = s_base - 1; s <= s_base + 2; ++s) {
    const QNum proj = shift + qnum_scale(wcoef(plan.det_vec), s);
    const double dist = std::abs(qnum_to_double(proj - endpoint, alpha));
    if (dist >= kFloatProximity) continue;
    BoundaryCase bc;
    bc.window_on_p2 = plan.window_on_p2;
    bc.free_coord = t;
    bc.det_coord = s;
    bc.projection = proj;
    bc.endpoint = endpoint;
    bc.closed_end = closed_end;
    bc.exact_hit = (proj == endpoint);
    bool inside = false;
    for (const Interval& w : windows)
      if (interval_contains(w, proj, alpha)) {
        inside = true;
        break;
      }
    bc.included = inside;
    if (bc.exact_hit) ++out.exact_hits;
    ++out.resolved_exactly;
    out.cases.push_back(std::move(bc));
  }
}

double density_at(const Spectrum& s, const Alpha& alpha, long long radius,
                  LatticeSide side) {
  const auto vals = window_values(s, alpha, radius, side);
  return static_cast<double>(vals.size()) / (2.0 * static_cast<double>(radius));
}

double cond_drift(const std::vector<SpectralBounds>& rows) {
  double lo = rows.front().cond, hi = rows.front().cond;
  for (const auto& r : rows) {
    lo = std::min(lo, r.cond);
    hi = std::max(hi, r.cond);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

BoundaryAuditReport boundary_audit(const Lattice2& lat, bool window_on_p2,
                                   const std::vector<Interval>& windows,
                                   long long sweep_lo, long long sweep_hi,
                                   const Alpha& alpha) {
  if (windows.empty()) throw InputError("boundary_audit: no windows");
  if (sweep_lo > sweep_hi) throw InputError("boundary_audit: empty sweep range");
  const SweepGeometry plan = sweep_geometry(lat, window_on_p2);
  auto wcoef = [&](const Vec2q& v) -> const QNum& {
    return window_on_p2 ? v.y : v.x;
  };
  const mpq_class d = wcoef(plan.det_vec).u;

  BoundaryAuditReport out;
  for (long long t = sweep_lo; t <= sweep_hi; ++t) {
    for (const Interval& band : windows) {
      audit_endpoint(plan, d, t, band.lo, true, windows, alpha, out);
      audit_endpoint(plan, d, t, band.hi, false, windows, alpha, out);
    }
  }
  return out;
}

DualityReport duality_experiment(const Spectrum& s, const Alpha& alpha,
                                 const std::vector<long long>& radii,
                                 double tol) {
  if (radii.empty()) throw InputError("duality_experiment: no radii");
  DualityReport rep;
  rep.radii = radii;

  // the two sweeps are independent; immutable shared inputs
  auto primal_task = std::async(std::launch::async, [&]() {
    return window_sweep(s, alpha, radii, LatticeSide::Primal, Perturb::None,
                        tol);
  });
  rep.dual = window_sweep(s, alpha, radii, LatticeSide::Dual, Perturb::None,
                          tol);
  rep.primal = primal_task.get();

  const long long rmax = radii.back();
  rep.primal_density = density_at(s, alpha, rmax, LatticeSide::Primal);
  rep.dual_density = density_at(s, alpha, rmax, LatticeSide::Dual);
  rep.primal_drift = cond_drift(rep.primal);
  rep.dual_drift = cond_drift(rep.dual);
  rep.primal_plateau = rep.primal_drift < 2.0;
  rep.dual_plateau = rep.dual_drift < 2.0;
  rep.paired_plateau = rep.primal_plateau == rep.dual_plateau;

  const Lattice2 gamma = gamma_lattice(alpha);
  const Lattice2 gstar = dual_lattice(gamma, alpha);
  const QNum mes = s.measure();
  const std::vector<Interval> wi = {Interval{QNum(0LL), mes}};
  std::vector<Interval> ws = s.bands();
  const long long audit_range = rmax + 8;
  rep.primal_audit =
      boundary_audit(gamma, true, wi, -audit_range, audit_range, alpha);
  rep.dual_audit =
      boundary_audit(gstar, false, ws, -audit_range, audit_range, alpha);
  return rep;
}

}  // namespace qb
