#include "qb/numutil.hpp"

#include <cmath>
#include <cstdio>

namespace qb {

namespace {

template <class T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.size() <= 8) {
        T s{};
        for (const T& x : xs) s += x;
        return s;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_impl(xs.subspan(0, half)) + pairwise_impl(xs.subspan(half));
}

} // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
    return pairwise_impl(xs);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

std::string format_double(double x) {
    // Shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) return std::string(buf);
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf);
}

} // namespace qb
