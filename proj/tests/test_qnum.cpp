#include "doctest.h"

#include <cmath>

#include "qb/errors.hpp"
#include "qb/qnum.hpp"

using namespace qb;

namespace {
const char* kSqrt2Digits =
    "1.41421356237309504880168872420969807856967187537694807317667973799073247"
    "8462107038850387534327641572735013846230912297025";
}

TEST_SUITE("qnum") {

TEST_CASE("sqrt alpha sign and order") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  CHECK(a.sign_of(mpq_class(-1), 1) == 1);   // sqrt2 - 1 > 0
  CHECK(a.sign_of(mpq_class(3), -2) == 1);   // 3 - 2 sqrt2 > 0
  CHECK(a.sign_of(mpq_class(-3), 2) == -1);  // 2 sqrt2 - 3 < 0
  CHECK(a.sign_of(mpq_class(0), 0) == 0);
  CHECK(qnum_less(QNum(mpq_class(0), 1), QNum(mpq_class(3, 2)), a));
  CHECK(!qnum_less(QNum(mpq_class(3, 2)), QNum(mpq_class(0), 1), a));
  CHECK(qnum_compare(QNum(mpq_class(1), 1), QNum(mpq_class(1), 1), a) ==
        Ordering::Equal);
}

TEST_CASE("floor frac and scaled floor") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  CHECK(qnum_floor(QNum(mpq_class(0), 1), a) == 1);
  CHECK(qnum_floor(QNum(mpq_class(0), -1), a) == -2);
  CHECK(qnum_ceil(QNum(mpq_class(0), 1), a) == 2);
  CHECK(qnum_floor_div(QNum(mpq_class(0), 10), 3, a) == 4);  // 14.14/3
  const QNum fr = qnum_frac(QNum(mpq_class(0), -1), a);
  CHECK(fr.v == -1);
  CHECK(fr.u == 2);  // -sqrt2 + 2 in [0,1)
  CHECK(a.floor_scaled(mpq_class(0), 1, 1) == 1);
}

TEST_CASE("exact products stay in the class") {
  const Alpha s2 = Alpha::sqrt_of(mpq_class(2));
  const QNum r = qnum_mul(QNum(mpq_class(0), 1), QNum(mpq_class(0), 1), s2);
  CHECK(r == QNum(mpq_class(2), 0));
  const Alpha g = Alpha::golden();
  const QNum gg = qnum_mul(QNum(mpq_class(0), 1), QNum(mpq_class(0), 1), g);
  CHECK(gg == QNum(mpq_class(1), 1));  // phi^2 = phi + 1
}

TEST_CASE("decimal alpha agrees with symbolic sqrt2") {
  const Alpha dec = Alpha::decimal(kSqrt2Digits);
  const Alpha sym = Alpha::sqrt_of(mpq_class(2));
  CHECK(dec.kind() == AlphaKind::Decimal);
  CHECK(dec.sign_of(mpq_class(-1), 1) == sym.sign_of(mpq_class(-1), 1));
  CHECK(dec.sign_of(mpq_class(3), -2) == sym.sign_of(mpq_class(3), -2));
  CHECK(qnum_floor(QNum(mpq_class(0), 7), dec) ==
        qnum_floor(QNum(mpq_class(0), 7), sym));
  CHECK(std::abs(dec.to_double() - sym.to_double()) < 1e-15);
}

TEST_CASE("decimal alpha raises when the enclosure cannot decide") {
  const Alpha dec = Alpha::decimal(kSqrt2Digits);
  // u = -midpoint makes u + alpha smaller than the declared uncertainty
  const mpq_class mid = dec.decimal_approx();
  CHECK_THROWS_AS((void)dec.sign_of(-mid, 1), PrecisionError);
}

TEST_CASE("round once to double") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  const double x = qnum_to_double(QNum(mpq_class(1), 2), a);
  CHECK(x == doctest::Approx(1.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("string form") {
  CHECK(qnum_to_string(QNum(mpq_class(3, 2), 1)) == "3/2+1*a");
  CHECK(qnum_to_string(QNum(mpq_class(-1, 2))) == "-1/2");
  CHECK(qnum_to_string(QNum(mpq_class(0), -2)) == "0-2*a");
}

TEST_CASE("golden vs sqrt5 relation") {
  // golden = (1 + sqrt5)/2: 2*golden - 1 squares to 5
  const Alpha g = Alpha::golden();
  const QNum t{mpq_class(-1), 2};  // 2 phi - 1
  const QNum sq = qnum_mul(t, t, g);
  CHECK(sq == QNum(mpq_class(5), 0));
}

}  // TEST_SUITE
