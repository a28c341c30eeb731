#pragma once

#include "qb/nodeset.hpp"

#include <vector>

namespace qb {

/// Deviations delta_j = lambda_j - j/mes over a blocked node set, aligned
/// with the set's global indices. When mes is rational the deltas are also
/// kept exactly and the exact verification paths become available.
struct DeltaSeq {
    NodeSet nodes;
    std::vector<double> delta;
    QNum mes;
    double sup_abs = 0;
    bool exact = false;
    std::vector<QNum> delta_exact;

    long long j_min() const { return nodes.j0; }
    long long j_max() const { return nodes.j0 + static_cast<long long>(nodes.size()) - 1; }
};

DeltaSeq deltas(const NodeSet& nodes, const QNum& mes, const Alpha& alpha);

/// Condition (a): minimum consecutive gap of the sorted values.
struct GapReport {
    QNum gap_exact;
    double gap = 0;
    bool positive = false;
};

GapReport separation_gap(const NodeSet& nodes, const Alpha& alpha);

/// Witness for s_n = n*mes + psi(n*alpha) + const with bounded psi:
/// e_n = s_n - n*mes, const_estimate = midrange, sup_dev = sup |e_n - const|.
/// stable means sup_dev grew by less than 5% from the half window.
struct BoundednessReport {
    double sup_dev = 0;
    double const_estimate = 0;
    double sup_dev_half = 0;
    bool stable = false;
};

BoundednessReport s_sequence_boundedness(const Spectrum& s, const Alpha& alpha,
                                         long long n_lo, long long n_hi);

/// Block n's delta sum against its closed form tau1(n*alpha) - S2(n), with
/// S2(n) = (s_n - s_{n-1}) * ((s_{n-1} + s_n - 1)/(2 mes) - n).
struct BlockSumCheck {
    double lhs = 0;
    double rhs = 0;
    double abs_err = 0;
    bool exact_mode = false;  // sides compared exactly; abs_err then exact
};

BlockSumCheck block_sum_identity(const Spectrum& s, const Alpha& alpha,
                                 const DeltaSeq& ds, long long n);

struct MeanRow {
    long long N = 0;
    double c = 0;
    double sup_deviation = 0;
};

struct AvdoninReport {
    // condition (a)
    double separation_gap = 0;
    bool verdict_a = false;
    // condition (b)
    double delta_sup = 0;
    double delta_sup_half = 0;
    bool verdict_b = false;
    // condition (c)
    double c_estimate = 0;
    long long N_used = 0;
    double sup_block_deviation = 0;
    double threshold = 0;  // 1/(4 mes)
    double margin = 0;     // (threshold - sup)/threshold at N_used
    bool verdict_c = false;
    std::vector<MeanRow> table;
    bool trend_nonincreasing = false;
    bool exact_mode = false;
};

/// Condition (c): for each N in the grid, c is the grand mean of all
/// length-N window averages of delta over a in [a_lo, a_hi] (indices are
/// global), and the sup over a of |window mean - c| is compared against
/// 1/(4 mes). Pass needs some N with >= 10% margin. With use_exact and
/// rational mes every comparison is exact.
AvdoninReport avdonin_mean_condition(const DeltaSeq& ds, const Alpha& alpha,
                                     const std::vector<long long>& N_grid,
                                     long long a_lo, long long a_hi,
                                     bool use_exact = false);

/// Full conditions (a)-(c) driver over one enumeration window.
AvdoninReport check_conditions(const Spectrum& s, const Alpha& alpha, long long n_lo,
                               long long n_hi, const std::vector<long long>& N_grid,
                               long long a_lo, long long a_hi,
                               bool use_exact = false);

} // namespace qb
