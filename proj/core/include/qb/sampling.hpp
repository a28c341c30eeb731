#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qb/fourier.hpp"
#include "qb/gram.hpp"
#include "qb/qnum.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// A finite kernel combination f(t) = sum_j a_j K(t - c_j), K the transformed
// indicator of the spectrum.  Such f lies in the corresponding Paley-Wiener
// space by construction, and evaluation, sampling and norms are closed-form.
struct BandlimitedSignal {
  std::vector<double> centers;
  std::vector<std::complex<double>> coeffs;
};

// K kernels with centers uniform in [-t_half, t_half] and unit-variance
// complex Gaussian coefficients; mt19937_64 stream with a hand-rolled
// Box-Muller map keeps the draw identical across platforms.
BandlimitedSignal synthesize_random(const Spectrum& s, int k, double t_half,
                                    std::uint64_t seed);

std::complex<double> eval_signal(const BandlimitedSignal& f,
                                 const SpectrumKernel& kernel, double t);

// Pointwise values of f at exact nodes, each node rounded once.
std::vector<std::complex<double>> sample_signal(const BandlimitedSignal& f,
                                                const SpectrumKernel& kernel,
                                                const std::vector<QNum>& nodes,
                                                const Alpha& alpha);

struct ReconstructionResult {
  std::vector<std::complex<double>> coefficients;  // one per sampling node
  double cg_residual = 0.0;                        // relative, at exit
  std::size_t cg_iterations = 0;
  double interior_rel_error = 0.0;  // filled by the driver that owns the grid
  double grid_step = 0.0;
  BandlimitedSignal reconstruction;  // centers are the rounded nodes
};

// Solves G a = samples by conjugate gradients (G Hermitian positive
// definite for distinct separated nodes) to relative residual <= tol.
// Stagnation raises NumericError carrying a condition estimate.
ReconstructionResult reconstruct(const std::vector<std::complex<double>>& samples,
                                 const std::vector<QNum>& nodes,
                                 const Spectrum& s, const Alpha& alpha,
                                 double tol);

// Relative L2 distance between f and g on a uniform trapezoid grid over
// [lo, hi]: sqrt(sum w |f-g|^2 / sum w |f|^2).  Zero denominator with a
// nonzero numerator reports 1.
double interior_error(const BandlimitedSignal& f, const BandlimitedSignal& g,
                      const SpectrumKernel& kernel, double lo, double hi,
                      double grid_step);

// ||f||^2 = a^H G_c a with G_c the kernel Gram over the centers.
double signal_energy(const BandlimitedSignal& f, const SpectrumKernel& kernel);

}  // namespace qb
