#pragma once

#include <cstddef>
#include <vector>

#include "qb/lattice.hpp"
#include "qb/qnum.hpp"
#include "qb/spectral.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// One lattice point whose windowed projection lands within float distance
// 1e-9 of a window endpoint.  Membership is always decided by the exact
// half-open test, never by the float distance.
struct BoundaryCase {
  bool window_on_p2 = true;  // which cut the point belongs to
  long long free_coord = 0;  // swept basis coordinate
  long long det_coord = 0;   // solved basis coordinate
  QNum projection;           // exact windowed projection of the point
  QNum endpoint;             // the nearby endpoint
  bool closed_end = false;   // endpoint is a band lo, the included side
  bool exact_hit = false;    // projection == endpoint exactly
  bool included = false;     // exact membership in the half-open window
};

struct BoundaryAuditReport {
  std::vector<BoundaryCase> cases;
  std::size_t exact_hits = 0;
  // Every case is settled by exact comparison; kept explicit so reports
  // can state it without re-deriving.
  std::size_t resolved_exactly = 0;
};

// Scans the sweep range for lattice points float-close to any window
// endpoint and resolves each membership exactly.
BoundaryAuditReport boundary_audit(const Lattice2& lat, bool window_on_p2,
                                   const std::vector<Interval>& windows,
                                   long long sweep_lo, long long sweep_hi,
                                   const Alpha& alpha);

// Side-by-side finite-section experiment: conditioning of the exponential
// system on the multiband side (nodes cut by I = [0, mes S), Gram over S)
// against the interval side (nodes cut by S, Gram over I).  Finite sections
// cannot decide either Riesz-basis property; the paired tables are a
// consistency experiment, and the report language stays descriptive.
struct DualityReport {
  std::vector<long long> radii;
  std::vector<SpectralBounds> primal;  // multiband side
  std::vector<SpectralBounds> dual;    // interval side
  double primal_density = 0.0;         // nodes per unit at the largest radius
  double dual_density = 0.0;
  double primal_drift = 0.0;           // max cond / min cond over radii
  double dual_drift = 0.0;
  bool primal_plateau = false;         // drift < 2
  bool dual_plateau = false;
  bool paired_plateau = false;
  BoundaryAuditReport primal_audit;    // cut window I on p2
  BoundaryAuditReport dual_audit;      // cut window S on p1
};

DualityReport duality_experiment(const Spectrum& s, const Alpha& alpha,
                                 const std::vector<long long>& radii,
                                 double tol);

}  // namespace qb
