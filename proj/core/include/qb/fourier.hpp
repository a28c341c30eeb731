#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qb/qnum.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// Fourier transform convention: fhat(t) = integral f(x) e^{2 pi i t x} dx.
// For a finite union of bands S the transform of its indicator is entire and
// evaluates stably band by band as e^{i pi t (a+b)} * len * sinc(t * len),
// sinc(x) = sin(pi x) / (pi x).  At t = 0 this is mes S.

// Caches double-rounded band data for a spectrum so repeated evaluations
// avoid touching exact arithmetic.  Endpoints are rounded once on build.
class SpectrumKernel {
 public:
  SpectrumKernel(const Spectrum& s, const Alpha& alpha);

  // Value of the transformed indicator at frequency offset t.
  std::complex<double> operator()(double t) const;

  double measure() const { return mes_; }
  std::size_t band_count() const { return len_.size(); }

 private:
  std::vector<double> sum_;  // a_j + b_j per band
  std::vector<double> len_;  // b_j - a_j per band
  double mes_ = 0.0;
};

// One-shot convenience wrapper; prefer SpectrumKernel in loops.
std::complex<double> ft_indicator(const Spectrum& s, double t,
                                  const Alpha& alpha);

}  // namespace qb
