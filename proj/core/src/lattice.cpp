#include "qb/lattice.hpp"

#include "qb/errors.hpp"

namespace qb {

QNum dot(const Vec2q& a, const Vec2q& b, const Alpha& alpha) {
    return qnum_mul(a.x, b.x, alpha) + qnum_mul(a.y, b.y, alpha);
}

Lattice2 Lattice2::from_basis(Vec2q v1, Vec2q v2, const Alpha& alpha) {
    QNum det = qnum_mul(v1.x, v2.y, alpha) - qnum_mul(v1.y, v2.x, alpha);
    if (qnum_sign(det, alpha) == 0)
        throw InputError("lattice basis is singular");
    return Lattice2(std::move(v1), std::move(v2), std::move(det));
}

Lattice2 gamma_lattice(const Alpha& alpha) {
    Vec2q v1{QNum(mpq_class(1), 1), QNum(mpq_class(0), -1)};
    Vec2q v2{QNum(-1), QNum(1)};
    return Lattice2::from_basis(std::move(v1), std::move(v2), alpha);
}

namespace {

// x / d for rational d != 0; exact, v-part must stay an integer.
QNum div_rational(const QNum& x, const mpq_class& d) {
    mpq_class v = to_mpq(x.v) / d;
    if (v.get_den() != 1)
        throw NumericError("exact division leaves the u + v*alpha class");
    mpz_class vz(v.get_num());
    if (!vz.fits_slong_p()) throw NumericError("division result out of range");
    return {x.u / d, vz.get_si()};
}

} // namespace

Lattice2 dual_lattice(const Lattice2& lat, const Alpha& alpha) {
    const QNum& det = lat.det();
    if (det.v != 0)
        throw NumericError("dual basis requires a rational determinant, got " +
                           qnum_to_string(det));
    // Columns of the inverse of the basis-row matrix.
    Vec2q w1{div_rational(lat.v2().y, det.u), div_rational(-lat.v2().x, det.u)};
    Vec2q w2{div_rational(-lat.v1().y, det.u), div_rational(lat.v1().x, det.u)};
    return Lattice2::from_basis(std::move(w1), std::move(w2), alpha);
}

} // namespace qb
