#include "qb/spectrum.hpp"

#include "qb/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace qb {

bool interval_contains(const Interval& iv, const QNum& x, const Alpha& alpha) {
    return qnum_compare(iv.lo, x, alpha) != Ordering::Greater &&
           qnum_less(x, iv.hi, alpha);
}

Spectrum Spectrum::from_bands(std::vector<Interval> bands, const Alpha& alpha) {
    if (bands.empty()) throw InputError("spectrum needs at least one band");
    for (const Interval& b : bands)
        if (!qnum_less(b.lo, b.hi, alpha))
            throw InputError("empty or reversed band [" + qnum_to_string(b.lo) +
                             ", " + qnum_to_string(b.hi) + ")");
    std::sort(bands.begin(), bands.end(), [&](const Interval& a, const Interval& b) {
        return qnum_less(a.lo, b.lo, alpha);
    });
    std::vector<Interval> merged;
    merged.push_back(bands.front());
    for (std::size_t i = 1; i < bands.size(); ++i) {
        Interval& prev = merged.back();
        switch (qnum_compare(bands[i].lo, prev.hi, alpha)) {
        case Ordering::Less:
            throw InputError("overlapping bands at " + qnum_to_string(bands[i].lo));
        case Ordering::Equal:
            prev.hi = bands[i].hi;  // touching: [a,b) u [b,c) = [a,c)
            break;
        case Ordering::Greater:
            merged.push_back(bands[i]);
            break;
        }
    }
    QNum mes;
    for (const Interval& b : merged) mes = mes + interval_length(b);
    return Spectrum(std::move(merged), std::move(mes));
}

bool spectrum_contains(const Spectrum& s, const QNum& x, const Alpha& alpha) {
    for (const Interval& b : s.bands()) {
        if (qnum_less(x, b.lo, alpha)) return false;  // bands sorted
        if (qnum_less(x, b.hi, alpha)) return true;
    }
    return false;
}

IndicatorCombo combo_of(const Spectrum& s) {
    IndicatorCombo c;
    for (const Interval& b : s.bands()) c.terms.push_back({mpq_class(1), b});
    return c;
}

Spectrum normalize_combo(const IndicatorCombo& combo, const Alpha& alpha) {
    if (combo.terms.empty()) throw InputError("empty indicator combination");
    std::vector<QNum> cuts;
    for (const ComboTerm& t : combo.terms) {
        if (!qnum_less(t.iv.lo, t.iv.hi, alpha))
            throw InputError("empty or reversed interval in combination");
        cuts.push_back(t.iv.lo);
        cuts.push_back(t.iv.hi);
    }
    std::sort(cuts.begin(), cuts.end(),
              [&](const QNum& a, const QNum& b) { return qnum_less(a, b, alpha); });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<Interval> bands;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        // The cell [cuts[i], cuts[i+1]) never straddles a term endpoint, so
        // membership is decided by the left edge alone.
        mpq_class value = 0;
        for (const ComboTerm& t : combo.terms)
            if (qnum_compare(t.iv.lo, cuts[i], alpha) != Ordering::Greater &&
                qnum_less(cuts[i], t.iv.hi, alpha))
                value += t.coeff;
        if (value == 0) continue;
        if (value != 1)
            throw InputError("not an indicator function: value " + value.get_str() +
                             " on [" + qnum_to_string(cuts[i]) + ", " +
                             qnum_to_string(cuts[i + 1]) + ")");
        bands.push_back({cuts[i], cuts[i + 1]});
    }
    if (bands.empty())
        throw InputError("indicator combination vanishes everywhere");
    return Spectrum::from_bands(std::move(bands), alpha);
}

QNum combo_measure(const IndicatorCombo& combo) {
    mpq_class u = 0, v = 0;
    for (const ComboTerm& t : combo.terms) {
        QNum len = interval_length(t.iv);
        u += t.coeff * len.u;
        v += t.coeff * to_mpq(len.v);
    }
    if (v.get_den() != 1)
        throw NumericError("combination measure leaves the u + v*alpha class");
    mpz_class vz(v.get_num());
    if (!vz.fits_slong_p())
        throw NumericError("combination measure alpha-part out of range");
    return {u, vz.get_si()};
}

long long phi(const Spectrum& s, const QNum& x, const Alpha& alpha) {
    // #{k : x - k in [a, b)} = #{k in (x-b, x-a]} = floor(x-a) - floor(x-b)
    long long count = 0;
    for (const Interval& b : s.bands())
        count += qnum_floor(x - b.lo, alpha) - qnum_floor(x - b.hi, alpha);
    return count;
}

namespace {

mpq_class mpq_from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return mpq_class(0);
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
    mpq_class q(z);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0)
        q *= mpq_class(scale);
    else
        q /= mpq_class(scale);
    return q;
}

// (1 + sqrt 5) / (2 beta) as an exact enclosure, for the golden-with-rescale
// fallback where the result leaves the symbolic catalog.
Alpha golden_over(const mpq_class& beta) {
    const mpfr_prec_t p = 512;
    mpfr_t lo, hi, t;
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    mpfr_init2(t, p);
    mpfr_sqrt_ui(lo, 5, MPFR_RNDD);
    mpfr_add_ui(lo, lo, 1, MPFR_RNDD);
    mpq_class twob = 2 * beta;
    mpfr_set_q(t, twob.get_mpq_t(), MPFR_RNDU);
    mpfr_div(lo, lo, t, MPFR_RNDD);
    mpfr_sqrt_ui(hi, 5, MPFR_RNDU);
    mpfr_add_ui(hi, hi, 1, MPFR_RNDU);
    mpfr_set_q(t, twob.get_mpq_t(), MPFR_RNDD);
    mpfr_div(hi, hi, t, MPFR_RNDU);
    mpq_class qlo = mpq_from_mpfr(lo), qhi = mpq_from_mpfr(hi);
    mpfr_clears(lo, hi, t, static_cast<mpfr_ptr>(nullptr));
    mpq_class mid = (qlo + qhi) / 2;
    mpq_class unc = qhi - qlo;
    if (sgn(unc) <= 0) {
        mpz_class p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, 500);
        unc = mpq_class(mpz_class(1), p2);
    }
    return Alpha::decimal_exact(mid, unc, 150);
}

} // namespace

NormalForm rescale_to_normal_form(const AlphaInput& alpha_in, const mpq_class& beta,
                                  const RawCombo& raw,
                                  const std::optional<CommensurableDecl>& comm) {
    if (raw.terms.empty()) throw InputError("empty combination");

    if (comm) {
        if (alpha_in.kind != AlphaInput::Kind::Rational)
            throw InputError("commensurable declaration requires a rational alpha");
        if (sgn(comm->g) <= 0)
            throw InputError("commensurable generator must be positive");
        if (alpha_in.rational != comm->g * comm->alpha_over_g)
            throw InputError("commensurable declaration inconsistent with alpha");
        if (beta != comm->g * comm->beta_over_g)
            throw InputError("commensurable declaration inconsistent with beta");
        // Everything is a rational multiple of g; divide it out. Lengths
        // become plain rationals, so the session alpha is free: use the
        // configured default.
        Alpha a = Alpha::golden();
        IndicatorCombo combo;
        for (const RawTerm& t : raw.terms) {
            if (t.lo_v != 0)
                throw InputError("alpha-part endpoints are meaningless for "
                                 "rational alpha; give endpoints as rationals");
            mpq_class lo = t.lo_u / comm->g;
            mpq_class len =
                to_mpq(t.len.n) * comm->alpha_over_g + to_mpq(t.len.m) * comm->beta_over_g;
            if (sgn(len) <= 0) throw InputError("nonpositive band length");
            combo.terms.push_back(
                {t.coeff, {QNum(lo, 0), QNum(lo + len, 0)}});
        }
        return {a, std::move(combo)};
    }

    if (alpha_in.kind == AlphaInput::Kind::Rational)
        throw InputError("rational alpha requires a declared commensurable "
                         "reduction; rational dependence is never inferred");
    if (sgn(beta) <= 0)
        throw InputError("beta must be a positive rational");

    Alpha a = [&] {
        switch (alpha_in.kind) {
        case AlphaInput::Kind::Sqrt:
            // alpha/beta = sqrt(r)/beta = sqrt(r/beta^2), still in catalog.
            return Alpha::sqrt_of(alpha_in.rational / (beta * beta));
        case AlphaInput::Kind::Golden:
            return beta == 1 ? Alpha::golden() : golden_over(beta);
        case AlphaInput::Kind::Decimal: {
            Alpha d = Alpha::decimal(alpha_in.decimal_digits);
            if (beta == 1) return d;
            return Alpha::decimal_exact(d.decimal_approx() / beta,
                                        d.decimal_uncertainty() / beta,
                                        d.sig_digits());
        }
        case AlphaInput::Kind::Rational: break;
        }
        throw InputError("unknown alpha kind");
    }();

    IndicatorCombo combo;
    for (const RawTerm& t : raw.terms) {
        if (t.len.n == 0 && t.len.m == 0) throw InputError("zero band length");
        QNum lo(t.lo_u / beta, t.lo_v);
        QNum len(to_mpq(t.len.m), t.len.n);  // (n*alpha + m*beta)/beta
        if (qnum_sign(len, a) <= 0)
            throw InputError("nonpositive band length " + qnum_to_string(len));
        combo.terms.push_back({t.coeff, {lo, lo + len}});
    }
    return {a, std::move(combo)};
}

} // namespace qb
