#pragma once

#include "qb/lattice.hpp"
#include "qb/spectrum.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qb {

/// A finite family of nodes with exact values. Two layouts share the type:
///   - blocked: grouped by block index n ascending, n_lo..n_hi, with
///     offsets[i] the first position of block n_lo+i (offsets has one extra
///     trailing entry = size). The running count s(n) carries the global
///     anchor j0 = s(n_lo - 1), so indices agree across windows.
///   - flat: sorted ascending by value; block_n holds the free lattice
///     coordinate each node came from.
struct NodeSet {
    std::vector<QNum> values;
    std::vector<long long> block_n;
    std::vector<double> approx;  // advisory, one rounding from exact
    bool blocked = false;
    long long n_lo = 0;
    long long n_hi = -1;
    long long j0 = 0;
    std::vector<std::size_t> offsets;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }

    /// Running count s(n) = j0 + #{nodes in blocks n_lo..n}; blocked only.
    long long s(long long n) const;
    /// Global index of the node stored at position i.
    long long global_index(std::size_t i) const {
        return j0 + static_cast<long long>(i);
    }
};

/// Geometry of a cut sweep: the free basis coordinate is enumerated, the
/// other is solved from the window, which requires its windowed projection
/// coefficient to be rational nonzero (throws NumericError otherwise).
struct SweepGeometry {
    Vec2q free_vec;
    Vec2q det_vec;
    bool window_on_p2 = true;
};
SweepGeometry sweep_geometry(const Lattice2& lat, bool window_on_p2);

/// Lambda(L, I): values p1(gamma) over lattice points gamma with p2(gamma)
/// in I. The free basis coordinate sweeps [lo, hi]; the other coordinate is
/// solved from the window exactly. Output flat, sorted, duplicate-checked.
NodeSet cut_project_primal(const Lattice2& lat, const Interval& window,
                           long long lo, long long hi, const Alpha& alpha);

/// Lambda*(L, S): same with the roles of p1 and p2 swapped and a multiband
/// window.
NodeSet cut_project_dual(const Lattice2& lat, const Spectrum& window,
                         long long lo, long long hi, const Alpha& alpha);

/// Blocks Lambda_n = (S intersect (n*alpha + Z)) + n for n in [n_lo, n_hi],
/// concatenated in increasing n, ascending inside each block. The global
/// anchor fixes s(-1) = 0, so j0 = s(n_lo - 1) is a sum of phi values.
NodeSet partition_enumerate(const Spectrum& s, const Alpha& alpha, long long n_lo,
                            long long n_hi);

/// s(n_lo - 1) under the global anchor s(-1) = 0.
long long partition_anchor(const Spectrum& s, const Alpha& alpha, long long n_lo);

struct PartitionReport {
    bool equal = false;
    std::size_t dual_count = 0;
    std::size_t partition_count = 0;
    std::string detail;  // first discrepancy if any
};

/// The construction oracle: cut_project_dual(dual_lat, s, range) and
/// partition_enumerate(s, range) must agree as sets, by exact value.
/// dual_lat is the dual of the source lattice (dual_lattice(gamma_lattice)).
PartitionReport verify_partition(const Lattice2& dual_lat, const Spectrum& s,
                                 long long lo, long long hi, const Alpha& alpha);

/// Post-filter keeping nodes with lo <= value < hi; layout preserved.
NodeSet restrict_to_values(const NodeSet& ns, const QNum& lo, const QNum& hi,
                           const Alpha& alpha);

/// Flat sorted-by-value copy (blocked metadata dropped, block_n carried).
NodeSet sorted_by_value(const NodeSet& ns, const Alpha& alpha);

/// Smallest gap between consecutive sorted values; needs >= 2 nodes.
QNum min_gap(const NodeSet& ns, const Alpha& alpha);

} // namespace qb
