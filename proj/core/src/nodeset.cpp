#include "qb/nodeset.hpp"

#include "qb/errors.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace qb {

long long NodeSet::s(long long n) const {
    if (!blocked) throw NumericError("s(n) is defined for blocked node sets");
    if (n < n_lo - 1 || n > n_hi) throw NumericError("s(n): n outside window");
    if (n == n_lo - 1) return j0;
    return j0 + static_cast<long long>(offsets[static_cast<std::size_t>(n - n_lo) + 1]);
}

namespace {

// floor(x / d) for rational d != 0, exact.
long long floor_div_rational(const QNum& x, const mpq_class& d, const Alpha& alpha) {
    if (sgn(d) == 0) throw NumericError("division by zero");
    if (sgn(d) < 0) return floor_div_rational(-x, -d, alpha);
    const mpz_class& p = d.get_num();
    const mpz_class& q = d.get_den();
    // x/d = (x*q)/p with p, q positive integers.
    mpz_class vq = to_mpz(x.v) * q;
    if (!vq.fits_slong_p() || !p.fits_slong_p())
        throw NumericError("floor_div_rational: coefficients out of range");
    return alpha.floor_scaled(x.u * mpq_class(q), vq.get_si(), p.get_si());
}

long long ceil_div_rational(const QNum& x, const mpq_class& d, const Alpha& alpha) {
    return -floor_div_rational(-x, d, alpha);
}

} // namespace

SweepGeometry sweep_geometry(const Lattice2& lat, bool window_on_p2) {
    auto wcoef = [&](const Vec2q& v) -> const QNum& { return window_on_p2 ? v.y : v.x; };
    const QNum& c2 = wcoef(lat.v2());
    if (c2.v == 0 && sgn(c2.u) != 0) return {lat.v1(), lat.v2(), window_on_p2};
    const QNum& c1 = wcoef(lat.v1());
    if (c1.v == 0 && sgn(c1.u) != 0) return {lat.v2(), lat.v1(), window_on_p2};
    throw NumericError("cut-and-project sweep needs a basis vector whose "
                       "windowed projection coefficient is rational nonzero");
}

namespace {

NodeSet cut_project(const Lattice2& lat, const std::vector<Interval>& window,
                    bool window_on_p2, long long lo, long long hi,
                    const Alpha& alpha) {
    NodeSet out;
    out.blocked = false;
    out.n_lo = lo;
    out.n_hi = hi;
    if (lo > hi) return out;

    SweepGeometry plan = sweep_geometry(lat, window_on_p2);
    auto wcoef = [&](const Vec2q& v) -> const QNum& { return window_on_p2 ? v.y : v.x; };
    auto ocoef = [&](const Vec2q& v) -> const QNum& { return window_on_p2 ? v.x : v.y; };
    const QNum& wf = wcoef(plan.free_vec);
    const mpq_class d = wcoef(plan.det_vec).u;  // rational by plan
    const QNum& of = ocoef(plan.free_vec);
    const QNum& od = ocoef(plan.det_vec);

    for (long long t = lo; t <= hi; ++t) {
        QNum shift = qnum_scale(wf, t);
        for (const Interval& band : window) {
            // integers s with band.lo <= w_free*t + d*s < band.hi
            QNum a = band.lo - shift, b = band.hi - shift;
            long long s_first, s_last;
            if (sgn(d) > 0) {
                s_first = ceil_div_rational(a, d, alpha);
                s_last = ceil_div_rational(b, d, alpha) - 1;
            } else {
                s_first = floor_div_rational(b, d, alpha) + 1;
                s_last = floor_div_rational(a, d, alpha);
            }
            for (long long s = s_first; s <= s_last; ++s) {
                out.values.push_back(qnum_scale(of, t) + qnum_scale(od, s));
                out.block_n.push_back(t);
            }
        }
    }

    std::vector<std::size_t> order(out.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return qnum_less(out.values[i], out.values[j], alpha);
    });
    NodeSet sorted;
    sorted.blocked = false;
    sorted.n_lo = lo;
    sorted.n_hi = hi;
    sorted.values.reserve(order.size());
    sorted.block_n.reserve(order.size());
    sorted.approx.reserve(order.size());
    for (std::size_t i : order) {
        if (!sorted.values.empty() && sorted.values.back() == out.values[i])
            throw NumericError("projection not injective: duplicate value " +
                               qnum_to_string(out.values[i]));
        sorted.values.push_back(std::move(out.values[i]));
        sorted.block_n.push_back(out.block_n[i]);
        sorted.approx.push_back(qnum_to_double(sorted.values.back(), alpha));
    }
    return sorted;
}

} // namespace

NodeSet cut_project_primal(const Lattice2& lat, const Interval& window, long long lo,
                           long long hi, const Alpha& alpha) {
    return cut_project(lat, {window}, true, lo, hi, alpha);
}

NodeSet cut_project_dual(const Lattice2& lat, const Spectrum& window, long long lo,
                         long long hi, const Alpha& alpha) {
    return cut_project(lat, window.bands(), false, lo, hi, alpha);
}

long long partition_anchor(const Spectrum& s, const Alpha& alpha, long long n_lo) {
    long long j0 = 0;
    if (n_lo - 1 >= 0)
        for (long long k = 0; k <= n_lo - 1; ++k)
            j0 += phi(s, QNum(mpq_class(0), k), alpha);
    else
        for (long long k = n_lo; k <= -1; ++k)
            j0 -= phi(s, QNum(mpq_class(0), k), alpha);
    return j0;
}

NodeSet partition_enumerate(const Spectrum& s, const Alpha& alpha, long long n_lo,
                            long long n_hi) {
    if (n_lo > n_hi) throw InputError("partition_enumerate: empty block range");
    NodeSet out;
    out.blocked = true;
    out.n_lo = n_lo;
    out.n_hi = n_hi;
    out.j0 = partition_anchor(s, alpha, n_lo);

    out.offsets.push_back(0);
    for (long long n = n_lo; n <= n_hi; ++n) {
        QNum x(mpq_class(0), n);  // n*alpha
        for (const Interval& band : s.bands()) {
            long long k_first = qnum_ceil(band.lo - x, alpha);
            long long k_last = qnum_ceil(band.hi - x, alpha) - 1;
            for (long long k = k_first; k <= k_last; ++k) {
                out.values.emplace_back(to_mpq(k + n), n);
                out.block_n.push_back(n);
                out.approx.push_back(qnum_to_double(out.values.back(), alpha));
            }
        }
        out.offsets.push_back(out.values.size());
    }
    return out;
}

NodeSet sorted_by_value(const NodeSet& ns, const Alpha& alpha) {
    std::vector<std::size_t> order(ns.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return qnum_less(ns.values[i], ns.values[j], alpha);
    });
    NodeSet out;
    out.blocked = false;
    out.n_lo = ns.n_lo;
    out.n_hi = ns.n_hi;
    for (std::size_t i : order) {
        out.values.push_back(ns.values[i]);
        out.block_n.push_back(ns.block_n[i]);
        out.approx.push_back(ns.approx[i]);
    }
    return out;
}

PartitionReport verify_partition(const Lattice2& lat, const Spectrum& s, long long lo,
                                 long long hi, const Alpha& alpha) {
    PartitionReport rep;
    NodeSet dual = cut_project_dual(lat, s, lo, hi, alpha);
    NodeSet part = sorted_by_value(partition_enumerate(s, alpha, lo, hi), alpha);
    rep.dual_count = dual.size();
    rep.partition_count = part.size();
    std::size_t m = std::min(dual.size(), part.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (dual.values[i] != part.values[i]) {
            rep.detail = "first mismatch at sorted position " + std::to_string(i) +
                         ": cut-project " + qnum_to_string(dual.values[i]) +
                         " vs partition " + qnum_to_string(part.values[i]);
            return rep;
        }
    }
    if (dual.size() != part.size()) {
        rep.detail = "counts differ: cut-project " + std::to_string(dual.size()) +
                     " vs partition " + std::to_string(part.size());
        return rep;
    }
    rep.equal = true;
    return rep;
}

NodeSet restrict_to_values(const NodeSet& ns, const QNum& lo, const QNum& hi,
                           const Alpha& alpha) {
    NodeSet flat = ns.blocked ? sorted_by_value(ns, alpha) : ns;
    NodeSet out;
    out.blocked = false;
    out.n_lo = flat.n_lo;
    out.n_hi = flat.n_hi;
    for (std::size_t i = 0; i < flat.size(); ++i) {
        const QNum& x = flat.values[i];
        if (qnum_compare(lo, x, alpha) != Ordering::Greater &&
            qnum_less(x, hi, alpha)) {
            out.values.push_back(flat.values[i]);
            out.block_n.push_back(flat.block_n[i]);
            out.approx.push_back(flat.approx[i]);
        }
    }
    return out;
}

QNum min_gap(const NodeSet& ns, const Alpha& alpha) {
    if (ns.size() < 2) throw NumericError("min_gap needs at least two nodes");
    NodeSet flat = ns.blocked ? sorted_by_value(ns, alpha) : ns;
    QNum best = flat.values[1] - flat.values[0];
    for (std::size_t i = 2; i < flat.size(); ++i) {
        QNum gap = flat.values[i] - flat.values[i - 1];
        if (qnum_less(gap, best, alpha)) best = gap;
    }
    return best;
}

} // namespace qb
