#pragma once

#include <cstddef>
#include <cstdint>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qb {

/// Neumaier-compensated sequential sum. Deterministic for a fixed input order.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise (cascade) summation over a span; deterministic and O(log n) error growth.
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

/// FNV-1a 64-bit hash, used for provenance config hashes.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Shortest exact decimal formatting for doubles ("%.17g" fallback),
/// used where byte-stable artifacts are required.
std::string format_double(double x);

} // namespace qb
