#include "doctest.h"

#include "qb/errors.hpp"
#include "qb/spectrum.hpp"

using namespace qb;

namespace {
Spectrum s1(const Alpha& a) {
  return Spectrum::from_bands({{QNum(0ll), QNum(1ll)}}, a);
}
Spectrum s2(const Alpha& a) {
  return Spectrum::from_bands(
      {{QNum(0ll), QNum(1ll)}, {QNum(2ll), QNum(to_mpq(2), 1)}}, a);
}
}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("bands merge when touching") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  const Spectrum s = Spectrum::from_bands(
      {{QNum(0ll), QNum(1ll)}, {QNum(1ll), QNum(2ll)}}, a);
  CHECK(s.bands().size() == 1);
  CHECK(s.measure() == QNum(2ll));
}

TEST_CASE("membership is half open") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  const Spectrum s = s2(a);
  CHECK(spectrum_contains(s, QNum(0ll), a));
  CHECK(!spectrum_contains(s, QNum(1ll), a));
  CHECK(spectrum_contains(s, QNum(2ll), a));
  CHECK(!spectrum_contains(s, QNum(to_mpq(2), 1), a));  // 2 + sqrt2 is the open end
  CHECK(s.measure() == QNum(to_mpq(1), 1));
}

TEST_CASE("normalize accepts holes and rejects overlap weight") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  IndicatorCombo combo;
  combo.terms.push_back({mpq_class(1), {QNum(mpq_class(-1, 2)), QNum(mpq_class(5, 2), 1)}});
  combo.terms.push_back({mpq_class(-1), {QNum(mpq_class(3, 10)), QNum(mpq_class(13, 10))}});
  const Spectrum s = normalize_combo(combo, a);
  REQUIRE(s.bands().size() == 2);
  CHECK(s.bands()[0].lo == QNum(mpq_class(-1, 2)));
  CHECK(s.bands()[0].hi == QNum(mpq_class(3, 10)));
  CHECK(s.bands()[1].lo == QNum(mpq_class(13, 10)));
  CHECK(s.bands()[1].hi == QNum(mpq_class(5, 2), 1));

  IndicatorCombo bad;
  bad.terms.push_back({mpq_class(1), {QNum(0ll), QNum(2ll)}});
  bad.terms.push_back({mpq_class(1), {QNum(1ll), QNum(3ll)}});
  CHECK_THROWS_AS((void)normalize_combo(bad, a), InputError);
}

TEST_CASE("phi counts shifted integer hits") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  const Spectrum s = s2(a);
  CHECK(phi(s, QNum(0ll), a) == 3);               // hits at 0, 2, 3
  CHECK(phi(s, QNum(mpq_class(1, 2)), a) == 2);   // hits at 1/2, 5/2
  CHECK(phi(s1(a), QNum(to_mpq(0), 5), a) == 1);
  // 1-periodicity
  for (int k = -3; k <= 3; ++k)
    CHECK(phi(s, QNum(to_mpq(k), 1), a) == phi(s, QNum(to_mpq(0), 1), a));
}

TEST_CASE("combo measure needs an integer alpha part") {
  const Alpha a = Alpha::sqrt_of(mpq_class(2));
  IndicatorCombo combo;
  combo.terms.push_back({mpq_class(1, 2), {QNum(0ll), QNum(to_mpq(0), 1)}});
  CHECK_THROWS_AS((void)combo_measure(combo), NumericError);
  IndicatorCombo ok;
  ok.terms.push_back({mpq_class(2), {QNum(0ll), QNum(to_mpq(0), 1)}});
  CHECK(combo_measure(ok) == QNum(to_mpq(0), 2));
}

TEST_CASE("rescale sqrt alpha by rational beta") {
  AlphaInput in;
  in.kind = AlphaInput::Kind::Sqrt;
  in.rational = 8;
  RawCombo raw;
  RawTerm t;
  t.coeff = 1;
  t.lo_u = 0;
  t.lo_v = 0;
  t.len = {1, 0};  // one band of length sqrt8
  raw.terms.push_back(t);
  const NormalForm nf = rescale_to_normal_form(in, mpq_class(2), raw);
  CHECK(nf.alpha.kind() == AlphaKind::Sqrt);
  CHECK(nf.alpha.radicand() == mpq_class(2));  // sqrt(8)/2 = sqrt2
  REQUIRE(nf.combo.terms.size() == 1);
  CHECK(nf.combo.terms[0].iv.hi == QNum(to_mpq(0), 1));
}

TEST_CASE("golden with nonunit beta falls back to decimal") {
  AlphaInput in;
  in.kind = AlphaInput::Kind::Golden;
  RawCombo raw;
  RawTerm t;
  t.coeff = 1;
  t.lo_u = 0;
  t.lo_v = 0;
  t.len = {1, 0};
  raw.terms.push_back(t);
  const NormalForm nf = rescale_to_normal_form(in, mpq_class(3), raw);
  CHECK(nf.alpha.kind() == AlphaKind::Decimal);
  CHECK(nf.alpha.to_double() ==
        doctest::Approx(1.618033988749894848 / 3.0).epsilon(1e-14));
}

TEST_CASE("rational alpha needs a commensurable declaration") {
  AlphaInput in;
  in.kind = AlphaInput::Kind::Rational;
  in.rational = mpq_class(3, 2);
  RawCombo raw;
  RawTerm t;
  t.coeff = 1;
  t.lo_u = 0;
  t.lo_v = 0;
  t.len = {0, 1};
  raw.terms.push_back(t);
  CHECK_THROWS_AS((void)rescale_to_normal_form(in, mpq_class(1), raw),
                  InputError);
  CommensurableDecl decl;
  decl.g = mpq_class(1, 2);
  decl.alpha_over_g = 3;
  decl.beta_over_g = 2;
  const NormalForm nf = rescale_to_normal_form(in, mpq_class(1), raw, decl);
  // every length becomes rational; the session constant is a placeholder
  for (const auto& term : nf.combo.terms) {
    CHECK(term.iv.lo.v == 0);
    CHECK(term.iv.hi.v == 0);
  }
}

}  // TEST_SUITE
