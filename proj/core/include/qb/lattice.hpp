#pragma once

#include "qb/qnum.hpp"

namespace qb {

struct Vec2q {
    QNum x;
    QNum y;
};

inline bool operator==(const Vec2q& a, const Vec2q& b) {
    return a.x == b.x && a.y == b.y;
}

/// Exact inner product; throws NumericError if a coordinate product leaves
/// the u + v*alpha class (only possible for decimal alpha).
QNum dot(const Vec2q& a, const Vec2q& b, const Alpha& alpha);

/// A full-rank planar lattice {a*v1 + b*v2 : a, b integers} with exact
/// coordinates. Immutable after construction.
class Lattice2 {
public:
    static Lattice2 from_basis(Vec2q v1, Vec2q v2, const Alpha& alpha);

    const Vec2q& v1() const { return v1_; }
    const Vec2q& v2() const { return v2_; }
    const QNum& det() const { return det_; }

    Vec2q point(long long a, long long b) const {
        return {qnum_scale(v1_.x, a) + qnum_scale(v2_.x, b),
                qnum_scale(v1_.y, a) + qnum_scale(v2_.y, b)};
    }

private:
    Vec2q v1_, v2_;
    QNum det_;
    Lattice2(Vec2q v1, Vec2q v2, QNum det)
        : v1_(std::move(v1)), v2_(std::move(v2)), det_(std::move(det)) {}
};

/// The cut-and-project source lattice {(n(1+alpha) - m, m - n*alpha)}:
/// basis v1 = (1+alpha, -alpha), v2 = (-1, 1). Its determinant is 1 for
/// every alpha.
Lattice2 gamma_lattice(const Alpha& alpha);

/// Basis w1, w2 with <v_i, w_j> = delta_ij, computed exactly. Requires a
/// rational determinant (true for gamma_lattice and the integer lattice).
Lattice2 dual_lattice(const Lattice2& lat, const Alpha& alpha);

inline const QNum& p1(const Vec2q& v) { return v.x; }
inline const QNum& p2(const Vec2q& v) { return v.y; }

} // namespace qb
