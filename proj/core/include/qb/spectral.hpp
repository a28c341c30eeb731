#pragma once

#include <cstddef>
#include <vector>

#include "qb/gram.hpp"
#include "qb/qnum.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// Extremal eigenvalue bounds of a finite Gram section.  cond is
// lambda_max / lambda_min for positive lambda_min and +inf otherwise.
struct SpectralBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double cond = 0.0;
  long long window_radius = 0;
  double residual_tolerance = 0.0;
  std::size_t dim = 0;
};

// Dense Hermitian eigensolve for dim <= 2000; Lanczos with full
// reorthogonalization beyond.  Extremal residuals are checked against
// tol * norm_bound(); failure raises NumericError.
SpectralBounds spectral_bounds(const GramMatrix& g, double tol);

// Lanczos extremal estimates, exposed for cross-validation against the
// dense path.  Throws NumericError if residual bounds fail to reach
// tol * norm_bound() within the iteration cap.
SpectralBounds lanczos_extremal(const GramMatrix& g, double tol,
                                std::size_t max_iter);

enum class LatticeSide { Primal, Dual };
enum class Perturb { None, NearDuplicate };

// Finite-section sweep over nested value windows [-R, R].  For the primal
// side the nodes come from the cut-and-project set with cut window
// I = [0, mes S) and the Gram window is S; for the dual side the nodes use
// cut window S and Gram window I.  Nesting makes lambda_min non-increasing
// and lambda_max non-decreasing in R (eigenvalue interlacing).
//
// Perturb::NearDuplicate appends one extra node at lambda0 + 1/10000 where
// lambda0 is the node nearest zero, collapsing lambda_min.
std::vector<SpectralBounds> window_sweep(const Spectrum& s, const Alpha& alpha,
                                         const std::vector<long long>& radii,
                                         LatticeSide side, Perturb perturb,
                                         double tol);

// Node values of the chosen lattice side with value in [-R, R], sorted
// exactly; helper shared by the sweep, sampling and duality drivers.
std::vector<QNum> window_values(const Spectrum& s, const Alpha& alpha,
                                long long radius, LatticeSide side);

}  // namespace qb
