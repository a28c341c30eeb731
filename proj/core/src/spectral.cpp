#include "qb/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "qb/errors.hpp"
#include "qb/lattice.hpp"
#include "qb/nodeset.hpp"

namespace qb {

namespace {

using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>;

double vec_norm(const std::vector<std::complex<double>>& x) {
  double acc = 0.0;
  for (const auto& v : x) acc += std::norm(v);
  return std::sqrt(acc);
}

// Deterministic start vector; splitmix64 stream keeps it generic enough to
// overlap every eigenvector in practice.
std::vector<std::complex<double>> lanczos_start(std::size_t n) {
  std::vector<std::complex<double>> v(n);
  std::uint64_t s = 0x9e3779b97f4a7c15ull;
  auto next = [&s]() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  for (auto& c : v) {
    const double re = static_cast<double>(next() >> 11) * 0x1p-53 - 0.5;
    const double im = static_cast<double>(next() >> 11) * 0x1p-53 - 0.5;
    c = {re, im};
  }
  const double nrm = vec_norm(v);
  for (auto& c : v) c /= nrm;
  return v;
}

SpectralBounds dense_bounds(const GramMatrix& g, double tol) {
  const auto n = static_cast<Eigen::Index>(g.dim());
  Eigen::Map<const CMat> m(g.data().data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NumericError("spectral_bounds: dense eigensolver failed");

  SpectralBounds out;
  out.dim = g.dim();
  out.residual_tolerance = tol;
  out.lambda_min = solver.eigenvalues()(0);
  out.lambda_max = solver.eigenvalues()(n - 1);

  const double scale = g.norm_bound();
  for (const Eigen::Index idx : {Eigen::Index{0}, n - 1}) {
    const Eigen::VectorXcd x = solver.eigenvectors().col(idx);
    const double resid =
        (m * x - solver.eigenvalues()(idx) * x).norm();
    if (!(resid <= tol * std::max(scale, 1.0)))
      throw NumericError("spectral_bounds: residual check failed");
  }
  out.cond = out.lambda_min > 0.0
                 ? out.lambda_max / out.lambda_min
                 : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

SpectralBounds lanczos_extremal(const GramMatrix& g, double tol,
                                std::size_t max_iter) {
  const std::size_t n = g.dim();
  if (n == 0) throw InputError("lanczos_extremal: empty matrix");
  const std::size_t cap = std::min(max_iter, n);
  const double scale = std::max(g.norm_bound(), 1.0);

  std::vector<std::vector<std::complex<double>>> basis;
  basis.reserve(cap);
  basis.push_back(lanczos_start(n));
  std::vector<double> a, b;  // tridiagonal diag / offdiag
  std::vector<std::complex<double>> w(n);

  SpectralBounds out;
  out.dim = n;
  out.residual_tolerance = tol;

  for (std::size_t k = 0; k < cap; ++k) {
    g.apply(basis[k].data(), w.data());
    // full reorthogonalization keeps the basis clean at this scale
    for (std::size_t pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        std::complex<double> proj{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= proj * q[i];
        if (&q == &basis[k] && pass == 0) {
          // alpha_k comes from the first projection onto q_k
          if (a.size() == k) a.push_back(proj.real());
        }
      }
    }
    const double beta = vec_norm(w);
    const bool last = (k + 1 == cap) || beta <= 1e-14 * scale;

    // Ritz values of the current tridiagonal section
    const auto m = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = a[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        t(i, i + 1) = b[static_cast<std::size_t>(i)];
        t(i + 1, i) = b[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ts(t);
    if (ts.info() != Eigen::Success)
      throw NumericError("lanczos_extremal: tridiagonal solve failed");
    out.lambda_min = ts.eigenvalues()(0);
    out.lambda_max = ts.eigenvalues()(m - 1);
    // residual bound beta * |last eigenvector component|
    const double r_min = beta * std::abs(ts.eigenvectors()(m - 1, 0));
    const double r_max = beta * std::abs(ts.eigenvectors()(m - 1, m - 1));
    if ((r_min <= tol * scale && r_max <= tol * scale) || beta <= 1e-14 * scale) {
      out.cond = out.lambda_min > 0.0
                     ? out.lambda_max / out.lambda_min
                     : std::numeric_limits<double>::infinity();
      return out;
    }
    if (last) break;
    b.push_back(beta);
    auto q = w;
    for (auto& c : q) c /= beta;
    basis.push_back(std::move(q));
  }
  throw NumericError("lanczos_extremal: no convergence within iteration cap");
}

SpectralBounds spectral_bounds(const GramMatrix& g, double tol) {
  if (g.dim() == 0) throw InputError("spectral_bounds: empty matrix");
  if (g.dim() <= 2000) return dense_bounds(g, tol);
  return lanczos_extremal(g, tol, 600);
}

std::vector<QNum> window_values(const Spectrum& s, const Alpha& alpha,
                                long long radius, LatticeSide side) {
  if (radius <= 0) throw InputError("window_values: radius must be positive");
  const Lattice2 gamma = gamma_lattice(alpha);
  const QNum mes = s.measure();
  const long long pad =
      6 + static_cast<long long>(std::ceil(std::abs(qnum_to_double(mes, alpha)))) +
      static_cast<long long>(std::ceil(std::abs(qnum_to_double(s.hi(), alpha)))) +
      static_cast<long long>(std::ceil(std::abs(qnum_to_double(s.lo(), alpha))));

  NodeSet nodes;
  if (side == LatticeSide::Primal) {
    const Interval window{QNum(0LL), mes};
    nodes = cut_project_primal(gamma, window, -radius - pad, radius + pad, alpha);
  } else {
    const Lattice2 dual = dual_lattice(gamma, alpha);
    nodes = cut_project_dual(dual, s, -radius - pad, radius + pad, alpha);
  }

  const QNum lo(-radius), hi(radius);
  std::vector<QNum> out;
  out.reserve(nodes.size());
  for (const auto& v : nodes.values) {
    if (qnum_less(v, lo, alpha)) continue;
    if (qnum_less(hi, v, alpha)) continue;
    out.push_back(v);
  }
  if (out.empty())
    throw NumericError("window_values: no nodes in the requested window");
  return out;  // input was sorted; the filtered copy stays sorted
}

std::vector<SpectralBounds> window_sweep(const Spectrum& s, const Alpha& alpha,
                                         const std::vector<long long>& radii,
                                         LatticeSide side, Perturb perturb,
                                         double tol) {
  if (radii.empty()) throw InputError("window_sweep: no radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw InputError("window_sweep: radii must increase");

  const QNum mes = s.measure();
  const Spectrum window_i =
      Spectrum::from_bands({Interval{QNum(0LL), mes}}, alpha);
  const Spectrum& gram_window = (side == LatticeSide::Primal) ? s : window_i;

  std::vector<SpectralBounds> out;
  out.reserve(radii.size());
  for (const long long r : radii) {
    std::vector<QNum> vals = window_values(s, alpha, r, side);
    if (perturb == Perturb::NearDuplicate) {
      // node nearest zero, resolved exactly on float ties
      std::size_t best = 0;
      double best_abs = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double a = std::abs(qnum_to_double(vals[i], alpha));
        if (a < best_abs) {
          best_abs = a;
          best = i;
        }
      }
      QNum dup = vals[best] + QNum(mpq_class(1, 10000));
      vals.push_back(std::move(dup));
    }
    const GramMatrix g = gram_from_values(vals, gram_window, alpha);
    SpectralBounds sb = spectral_bounds(g, tol);
    sb.window_radius = r;
    out.push_back(sb);
  }
  return out;
}

}  // namespace qb
