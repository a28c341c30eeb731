#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qb/fourier.hpp"
#include "qb/nodeset.hpp"
#include "qb/qnum.hpp"
#include "qb/spectrum.hpp"

namespace qb {

// Gram matrix of the exponential system {e^{2 pi i lambda x}} restricted to a
// spectrum window: G[j][k] = ft_indicator(S, lambda_j - lambda_k).  Node
// differences are formed exactly and rounded to double once per pair, so the
// matrix is Hermitian by construction with diagonal mes S.
//
// Assembly honours the QB_THREADS environment variable (row-interleaved
// partition; output is byte-identical for any thread count).
class GramMatrix {
 public:
  std::size_t dim() const { return dim_; }

  std::complex<double> at(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  // Row-major dense storage.
  const std::vector<std::complex<double>>& data() const { return data_; }

  // Common diagonal value, the measure of the window spectrum.
  double diagonal() const { return diag_; }

  // Max absolute row sum; upper bound on the spectral radius.
  double norm_bound() const;

  // y = G x with compensated per-row accumulation.
  void apply(const std::complex<double>* x, std::complex<double>* y) const;
  std::vector<std::complex<double>> apply(
      const std::vector<std::complex<double>>& x) const;

 private:
  std::size_t dim_ = 0;
  double diag_ = 0.0;
  std::vector<std::complex<double>> data_;

  friend GramMatrix gram_from_values(const std::vector<QNum>& values,
                                     const Spectrum& s, const Alpha& alpha);
};

// Builds the Gram matrix for an explicit node list (order preserved).
// Exact duplicate values make the system singular by construction and are
// rejected with InputError.
GramMatrix gram_from_values(const std::vector<QNum>& values, const Spectrum& s,
                            const Alpha& alpha);

GramMatrix gram(const NodeSet& nodes, const Spectrum& s, const Alpha& alpha);

}  // namespace qb
