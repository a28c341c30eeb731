#include "qb/sampling.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qb/errors.hpp"
#include "qb/numutil.hpp"
#include "qb/spectral.hpp"

namespace qb {

namespace {

// 53-bit uniform in [0, 1); the raw engine output is identical everywhere,
// unlike the distribution adapters in <random>.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Box-Muller pair; u1 is nudged away from zero to keep the log finite.
void gaussian_pair(std::mt19937_64& rng, double& z0, double& z1) {
  double u1 = uniform01(rng);
  if (u1 == 0.0) u1 = 0x1p-53;
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  z0 = r * std::cos(2.0 * M_PI * u2);
  z1 = r * std::sin(2.0 * M_PI * u2);
}

}  // namespace

BandlimitedSignal synthesize_random(const Spectrum& s, int k, double t_half,
                                    std::uint64_t seed) {
  if (k < 1) throw InputError("synthesize_random: need at least one kernel");
  if (!(t_half > 0.0)) throw InputError("synthesize_random: window must be positive");
  (void)s;  // the signal lives in the space of s through its kernel
  BandlimitedSignal f;
  f.centers.reserve(static_cast<std::size_t>(k));
  f.coeffs.reserve(static_cast<std::size_t>(k));
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i)
    f.centers.push_back((2.0 * uniform01(rng) - 1.0) * t_half);
  for (int i = 0; i < k; ++i) {
    double z0 = 0, z1 = 0;
    gaussian_pair(rng, z0, z1);
    // unit-variance complex Gaussian: each part has variance 1/2
    f.coeffs.emplace_back(z0 * M_SQRT1_2, z1 * M_SQRT1_2);
  }
  return f;
}

std::complex<double> eval_signal(const BandlimitedSignal& f,
                                 const SpectrumKernel& kernel, double t) {
  CompensatedSum re, im;
  for (std::size_t j = 0; j < f.centers.size(); ++j) {
    const std::complex<double> term = f.coeffs[j] * kernel(t - f.centers[j]);
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

std::vector<std::complex<double>> sample_signal(const BandlimitedSignal& f,
                                                const SpectrumKernel& kernel,
                                                const std::vector<QNum>& nodes,
                                                const Alpha& alpha) {
  std::vector<std::complex<double>> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes)
    out.push_back(eval_signal(f, kernel, qnum_to_double(node, alpha)));
  return out;
}

ReconstructionResult reconstruct(const std::vector<std::complex<double>>& samples,
                                 const std::vector<QNum>& nodes,
                                 const Spectrum& s, const Alpha& alpha,
                                 double tol) {
  if (samples.size() != nodes.size())
    throw InputError("reconstruct: sample/node count mismatch");
  if (nodes.empty()) throw InputError("reconstruct: no nodes");
  if (!(tol > 0.0)) throw InputError("reconstruct: tolerance must be positive");

  const GramMatrix g = gram_from_values(nodes, s, alpha);
  const std::size_t n = nodes.size();

  auto norm2 = [](const std::vector<std::complex<double>>& x) {
    CompensatedSum acc;
    for (const auto& v : x) acc.add(std::norm(v));
    return acc.value();
  };
  auto dot_re = [](const std::vector<std::complex<double>>& a,
                   const std::vector<std::complex<double>>& b) {
    // <a, b> real part; G is Hermitian PD so the CG scalars are real
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i)
      acc.add((std::conj(a[i]) * b[i]).real());
    return acc.value();
  };

  ReconstructionResult res;
  res.coefficients.assign(n, {0.0, 0.0});

  const double rhs_norm = std::sqrt(norm2(samples));
  if (rhs_norm == 0.0) {
    res.cg_residual = 0.0;
    res.reconstruction.centers.reserve(n);
    for (const auto& node : nodes)
      res.reconstruction.centers.push_back(qnum_to_double(node, alpha));
    res.reconstruction.coeffs = res.coefficients;
    return res;
  }

  std::vector<std::complex<double>> x(n, {0.0, 0.0});
  std::vector<std::complex<double>> r = samples;  // r = b - G*0
  std::vector<std::complex<double>> p = r;
  std::vector<std::complex<double>> gp(n);
  double rr = norm2(r);
  const double target = tol * rhs_norm;
  const std::size_t cap = 40 * n + 200;
  double best = std::sqrt(rr);
  std::size_t since_best = 0;
  std::size_t it = 0;

  while (std::sqrt(rr) > target) {
    if (it >= cap || since_best > 200) {
      std::string detail = "reconstruct: CG stagnated at relative residual " +
                           format_double(std::sqrt(rr) / rhs_norm);
      try {
        const SpectralBounds est = spectral_bounds(g, 1e-8);
        detail += ", condition estimate " + format_double(est.cond);
      } catch (...) {
        detail += ", condition estimate unavailable";
      }
      throw NumericError(detail);
    }
    g.apply(p.data(), gp.data());
    const double pgp = dot_re(p, gp);
    if (!(pgp > 0.0))
      throw NumericError("reconstruct: Gram lost positive definiteness");
    const double alpha_k = rr / pgp;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha_k * p[i];
      r[i] -= alpha_k * gp[i];
    }
    const double rr_next = norm2(r);
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
    ++it;
    const double cur = std::sqrt(rr);
    if (cur < best * 0.999999) {
      best = cur;
      since_best = 0;
    } else {
      ++since_best;
    }
  }

  res.coefficients = std::move(x);
  res.cg_residual = std::sqrt(rr) / rhs_norm;
  res.cg_iterations = it;
  res.reconstruction.centers.reserve(n);
  for (const auto& node : nodes)
    res.reconstruction.centers.push_back(qnum_to_double(node, alpha));
  res.reconstruction.coeffs = res.coefficients;
  return res;
}

double interior_error(const BandlimitedSignal& f, const BandlimitedSignal& g,
                      const SpectrumKernel& kernel, double lo, double hi,
                      double grid_step) {
  if (!(grid_step > 0.0)) throw InputError("interior_error: grid step must be positive");
  if (!(hi > lo)) throw InputError("interior_error: empty interval");
  const auto steps = static_cast<std::size_t>(std::ceil((hi - lo) / grid_step));
  CompensatedSum num, den;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = (i == steps) ? hi : lo + grid_step * static_cast<double>(i);
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    const std::complex<double> fv = eval_signal(f, kernel, t);
    const std::complex<double> gv = eval_signal(g, kernel, t);
    num.add(w * std::norm(fv - gv));
    den.add(w * std::norm(fv));
  }
  if (den.value() == 0.0) return num.value() == 0.0 ? 0.0 : 1.0;
  return std::sqrt(num.value() / den.value());
}

double signal_energy(const BandlimitedSignal& f, const SpectrumKernel& kernel) {
  // a^H G_c a with G_c[j][k] = K(c_j - c_k); the quadratic form is real
  CompensatedSum acc;
  const std::size_t n = f.centers.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> term =
          std::conj(f.coeffs[j]) * kernel(f.centers[j] - f.centers[k]) *
          f.coeffs[k];
      acc.add(term.real());
    }
  return acc.value();
}

}  // namespace qb
