#include "qb/fourier.hpp"

#include <cmath>

#include "qb/errors.hpp"

namespace qb {

namespace {

// sin(pi x) / (pi x), continuous through 0.  The series branch keeps full
// relative accuracy where the quotient would lose digits.
double sinc_pi(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-6) {
    const double z = M_PI * x;
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0);
  }
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

SpectrumKernel::SpectrumKernel(const Spectrum& s, const Alpha& alpha) {
  const auto& bands = s.bands();
  if (bands.empty()) throw InputError("SpectrumKernel: empty spectrum");
  sum_.reserve(bands.size());
  len_.reserve(bands.size());
  for (const auto& b : bands) {
    const QNum sum = b.lo + b.hi;
    const QNum len = b.hi - b.lo;
    sum_.push_back(qnum_to_double(sum, alpha));
    const double l = qnum_to_double(len, alpha);
    if (!(l > 0.0)) throw NumericError("SpectrumKernel: degenerate band");
    len_.push_back(l);
    mes_ += l;
  }
}

std::complex<double> SpectrumKernel::operator()(double t) const {
  if (!std::isfinite(t)) throw InputError("SpectrumKernel: non-finite t");
  if (t == 0.0) return {mes_, 0.0};
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t j = 0; j < len_.size(); ++j) {
    const double phase = M_PI * t * sum_[j];
    const double mag = len_[j] * sinc_pi(t * len_[j]);
    acc += std::complex<double>(mag * std::cos(phase), mag * std::sin(phase));
  }
  return acc;
}

std::complex<double> ft_indicator(const Spectrum& s, double t,
                                  const Alpha& alpha) {
  return SpectrumKernel(s, alpha)(t);
}

}  // namespace qb
