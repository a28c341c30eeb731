#include "qb/gram.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "qb/errors.hpp"
#include "qb/numutil.hpp"

namespace qb {

namespace {

int thread_count_from_env() {
  const char* raw = std::getenv("QB_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min(v, 64L));
}

}  // namespace

double GramMatrix::norm_bound() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    CompensatedSum row;
    for (std::size_t c = 0; c < dim_; ++c) row.add(std::abs(at(r, c)));
    worst = std::max(worst, row.value());
  }
  return worst;
}

void GramMatrix::apply(const std::complex<double>* x,
                       std::complex<double>* y) const {
  for (std::size_t r = 0; r < dim_; ++r) {
    CompensatedSum re, im;
    const std::complex<double>* row = data_.data() + r * dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
      const std::complex<double> term = row[c] * x[c];
      re.add(term.real());
      im.add(term.imag());
    }
    y[r] = {re.value(), im.value()};
  }
}

std::vector<std::complex<double>> GramMatrix::apply(
    const std::vector<std::complex<double>>& x) const {
  if (x.size() != dim_) throw InputError("GramMatrix::apply: size mismatch");
  std::vector<std::complex<double>> y(dim_);
  apply(x.data(), y.data());
  return y;
}

GramMatrix gram_from_values(const std::vector<QNum>& values, const Spectrum& s,
                            const Alpha& alpha) {
  if (values.empty()) throw InputError("gram: empty node list");

  // Exact duplicates would make the Gram singular by construction.
  {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return qnum_less(values[a], values[b], alpha);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (values[order[i - 1]] == values[order[i]])
        throw InputError("gram: duplicate node value");
    }
  }

  const SpectrumKernel kernel(s, alpha);
  GramMatrix g;
  g.dim_ = values.size();
  g.diag_ = kernel.measure();
  g.data_.assign(g.dim_ * g.dim_, {0.0, 0.0});

  const std::size_t n = g.dim_;
  auto fill_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t j = first; j < n; j += stride) {
      g.data_[j * n + j] = {g.diag_, 0.0};
      for (std::size_t k = j + 1; k < n; ++k) {
        const double t = qnum_to_double(values[j] - values[k], alpha);
        const std::complex<double> v = kernel(t);
        g.data_[j * n + k] = v;
        g.data_[k * n + j] = std::conj(v);
      }
    }
  };

  const int threads = std::min<int>(thread_count_from_env(),
                                    static_cast<int>(n));
  if (threads <= 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(fill_rows, static_cast<std::size_t>(t),
                        static_cast<std::size_t>(threads));
    for (auto& th : pool) th.join();
  }
  return g;
}

GramMatrix gram(const NodeSet& nodes, const Spectrum& s, const Alpha& alpha) {
  return gram_from_values(nodes.values, s, alpha);
}

}  // namespace qb
