#include "qb/qnum.hpp"

#include "qb/errors.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <deque>
#include <sstream>
#include <utility>

namespace qb {

namespace {

// Non-copyable RAII mpfr value.
class MpfrVal {
public:
    explicit MpfrVal(mpfr_prec_t prec) { mpfr_init2(x_, prec); }
    ~MpfrVal() { mpfr_clear(x_); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }

private:
    mpfr_t x_;
};

int sgn_q(const mpq_class& q) { return sgn(q); }

// sign of p + q*sqrt(r), with p, q rational and sqrt(r) irrational.
int sign_p_plus_q_sqrt_r(const mpq_class& p, const mpq_class& q, const mpq_class& r) {
    int sp = sgn_q(p), sq = sgn_q(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Opposite signs: compare p^2 against q^2 * r. Equality would make
    // sqrt(r) rational, which the constructor has excluded.
    mpq_class lhs = p * p;
    mpq_class rhs = q * q * r;
    if (lhs == rhs)
        throw NumericError("sign_p_plus_q_sqrt_r: radicand is a rational square");
    return (lhs > rhs) ? sp : sq;
}

bool is_rational_square(const mpq_class& r) {
    return mpz_perfect_square_p(r.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(r.get_den().get_mpz_t());
}

long long mpz_to_ll_checked(const mpz_class& z, const char* what) {
    if (!z.fits_slong_p())
        throw NumericError(std::string(what) + ": value out of 64-bit range");
    return z.get_si();
}

} // namespace

struct Alpha::Impl {
    AlphaKind kind;
    mpq_class radicand;     // Sqrt
    mpq_class approx;       // Decimal: exact rational value of the given digits
    mpq_class uncertainty;  // Decimal: one unit in the last place
    int sig_digits = 0;
    mpfr_prec_t cap_bits = 0;  // Decimal: escalation cap (4x input digits)

    // Cached enclosures [lo, hi] of alpha at a ladder of precisions.
    std::deque<MpfrVal> lo_cache, hi_cache;
    std::deque<mpfr_prec_t> prec_ladder;

    void fill_interval(mpfr_ptr lo, mpfr_ptr hi) const {
        MpfrVal t(mpfr_get_prec(lo));
        switch (kind) {
        case AlphaKind::Sqrt:
            mpfr_set_q(t.get(), radicand.get_mpq_t(), MPFR_RNDD);
            mpfr_sqrt(lo, t.get(), MPFR_RNDD);
            mpfr_set_q(t.get(), radicand.get_mpq_t(), MPFR_RNDU);
            mpfr_sqrt(hi, t.get(), MPFR_RNDU);
            break;
        case AlphaKind::Golden:
            mpfr_sqrt_ui(lo, 5, MPFR_RNDD);
            mpfr_add_ui(lo, lo, 1, MPFR_RNDD);
            mpfr_div_ui(lo, lo, 2, MPFR_RNDD);
            mpfr_sqrt_ui(hi, 5, MPFR_RNDU);
            mpfr_add_ui(hi, hi, 1, MPFR_RNDU);
            mpfr_div_ui(hi, hi, 2, MPFR_RNDU);
            break;
        case AlphaKind::Decimal: {
            mpq_class a_lo = approx - uncertainty;
            mpq_class a_hi = approx + uncertainty;
            mpfr_set_q(lo, a_lo.get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(hi, a_hi.get_mpq_t(), MPFR_RNDU);
            break;
        }
        }
    }

    void build_caches() {
        for (mpfr_prec_t p = 64; p <= 4096; p *= 2) {
            if (kind == AlphaKind::Decimal && cap_bits > 0 && p / 2 > cap_bits) break;
            prec_ladder.push_back(p);
            lo_cache.emplace_back(p);
            hi_cache.emplace_back(p);
            fill_interval(lo_cache.back().get(), hi_cache.back().get());
        }
    }

    // Enclosure of (u + v*alpha)/d into lo/hi (both preallocated at the same prec).
    void enclose(const mpq_class& u, long long v, long long d,
                 mpfr_srcptr a_lo, mpfr_srcptr a_hi, mpfr_ptr lo, mpfr_ptr hi) const {
        MpfrVal t(mpfr_get_prec(lo));
        // lower bound
        mpfr_mul_si(lo, (v >= 0) ? a_lo : a_hi, v, MPFR_RNDD);
        mpfr_set_q(t.get(), u.get_mpq_t(), MPFR_RNDD);
        mpfr_add(lo, lo, t.get(), MPFR_RNDD);
        if (d != 1) mpfr_div_si(lo, lo, d, MPFR_RNDD);
        // upper bound
        mpfr_mul_si(hi, (v >= 0) ? a_hi : a_lo, v, MPFR_RNDU);
        mpfr_set_q(t.get(), u.get_mpq_t(), MPFR_RNDU);
        mpfr_add(hi, hi, t.get(), MPFR_RNDU);
        if (d != 1) mpfr_div_si(hi, hi, d, MPFR_RNDU);
    }
};

Alpha Alpha::sqrt_of(const mpq_class& r) {
    if (sgn(r) <= 0)
        throw InputError("alpha sqrt radicand must be positive");
    mpq_class rc = r;
    rc.canonicalize();
    if (is_rational_square(rc))
        throw InputError("alpha sqrt radicand must not be a rational square");
    auto impl = std::make_shared<Impl>();
    impl->kind = AlphaKind::Sqrt;
    impl->radicand = rc;
    impl->build_caches();
    return Alpha(std::move(impl));
}

Alpha Alpha::golden() {
    auto impl = std::make_shared<Impl>();
    impl->kind = AlphaKind::Golden;
    impl->build_caches();
    return Alpha(std::move(impl));
}

Alpha Alpha::decimal(const std::string& digits) {
    std::string s = digits;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    std::string int_part, frac_part;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw InputError("malformed decimal alpha: two dots");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            (seen_dot ? frac_part : int_part) += s[i];
        } else {
            throw InputError("malformed decimal alpha: unexpected character");
        }
    }
    if (int_part.empty() && frac_part.empty())
        throw InputError("malformed decimal alpha: no digits");

    std::string all = int_part + frac_part;
    std::size_t first_sig = all.find_first_not_of('0');
    int sig = (first_sig == std::string::npos)
                  ? 0
                  : static_cast<int>(all.size() - first_sig);
    if (sig < 100)
        throw InputError("decimal alpha needs >= 100 significant digits, got " +
                         std::to_string(sig));

    mpz_class num(all.empty() ? "0" : all, 10);
    mpz_class den = 1;
    for (std::size_t k = 0; k < frac_part.size(); ++k) den *= 10;
    mpq_class approx(num, den);
    approx.canonicalize();
    if (neg) approx = -approx;

    auto impl = std::make_shared<Impl>();
    impl->kind = AlphaKind::Decimal;
    impl->approx = approx;
    impl->uncertainty = mpq_class(mpz_class(1), den);
    impl->sig_digits = sig;
    impl->cap_bits = static_cast<mpfr_prec_t>(4.0 * sig * 3.3220 + 64);
    impl->build_caches();
    return Alpha(std::move(impl));
}

Alpha Alpha::decimal_exact(const mpq_class& approx, const mpq_class& uncertainty,
                           int sig_digits) {
    if (sgn(uncertainty) <= 0)
        throw InputError("decimal alpha uncertainty must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = AlphaKind::Decimal;
    impl->approx = approx;
    impl->uncertainty = uncertainty;
    impl->sig_digits = sig_digits;
    impl->cap_bits = static_cast<mpfr_prec_t>(4.0 * sig_digits * 3.3220 + 64);
    impl->build_caches();
    return Alpha(std::move(impl));
}

AlphaKind Alpha::kind() const { return impl_->kind; }

const mpq_class& Alpha::radicand() const {
    if (impl_->kind != AlphaKind::Sqrt)
        throw NumericError("radicand() requires a Sqrt alpha");
    return impl_->radicand;
}

const mpq_class& Alpha::decimal_approx() const {
    if (impl_->kind != AlphaKind::Decimal)
        throw NumericError("decimal_approx() requires a Decimal alpha");
    return impl_->approx;
}

const mpq_class& Alpha::decimal_uncertainty() const {
    if (impl_->kind != AlphaKind::Decimal)
        throw NumericError("decimal_uncertainty() requires a Decimal alpha");
    return impl_->uncertainty;
}

int Alpha::sig_digits() const { return impl_->sig_digits; }

double Alpha::to_double() const { return value_of(mpq_class(0), 1); }

std::string Alpha::describe() const {
    std::ostringstream os;
    switch (impl_->kind) {
    case AlphaKind::Sqrt:
        os << "sqrt(" << impl_->radicand.get_str() << ")";
        break;
    case AlphaKind::Golden:
        os << "(1+sqrt(5))/2";
        break;
    case AlphaKind::Decimal:
        os << "decimal[" << impl_->sig_digits << " digits] ~ " << to_double();
        break;
    }
    return os.str();
}

bool Alpha::operator==(const Alpha& other) const {
    if (impl_ == other.impl_) return true;
    if (impl_->kind != other.impl_->kind) return false;
    switch (impl_->kind) {
    case AlphaKind::Sqrt: return impl_->radicand == other.impl_->radicand;
    case AlphaKind::Golden: return true;
    case AlphaKind::Decimal:
        return impl_->approx == other.impl_->approx &&
               impl_->uncertainty == other.impl_->uncertainty;
    }
    return false;
}

int Alpha::sign_of(const mpq_class& u, long long v) const {
    if (v == 0) return sgn_q(u);
    switch (impl_->kind) {
    case AlphaKind::Sqrt:
        return sign_p_plus_q_sqrt_r(u, to_mpq(v), impl_->radicand);
    case AlphaKind::Golden: {
        // u + v*(1+sqrt5)/2 = (u + v/2) + (v/2)*sqrt5
        mpq_class vh = to_mpq(v);
        vh /= 2;
        return sign_p_plus_q_sqrt_r(u + vh, vh, mpq_class(5));
    }
    case AlphaKind::Decimal: {
        for (std::size_t lvl = 0; lvl < impl_->prec_ladder.size(); ++lvl) {
            mpfr_prec_t p = impl_->prec_ladder[lvl];
            MpfrVal lo(p), hi(p);
            impl_->enclose(u, v, 1, impl_->lo_cache[lvl].get(),
                           impl_->hi_cache[lvl].get(), lo.get(), hi.get());
            if (mpfr_sgn(lo.get()) > 0) return 1;
            if (mpfr_sgn(hi.get()) < 0) return -1;
            if (mpfr_zero_p(lo.get()) && mpfr_zero_p(hi.get())) return 0;
        }
        throw PrecisionError(
            "cannot decide sign of " + u.get_str() + " + " + std::to_string(v) +
            "*alpha at the declared alpha precision (" +
            std::to_string(impl_->sig_digits) + " digits, escalation capped)");
    }
    }
    throw NumericError("unreachable alpha kind");
}

int Alpha::sign_of_q(const mpq_class& u, const mpq_class& v) const {
    if (sgn(v) == 0) return sgn_q(u);
    switch (impl_->kind) {
    case AlphaKind::Sqrt:
        return sign_p_plus_q_sqrt_r(u, v, impl_->radicand);
    case AlphaKind::Golden: {
        mpq_class vh = v / 2;
        return sign_p_plus_q_sqrt_r(u + vh, vh, mpq_class(5));
    }
    case AlphaKind::Decimal: {
        // Clear v's denominator (positive), then reuse the integer-v path.
        const mpz_class& num = v.get_num();
        if (!num.fits_slong_p())
            throw NumericError("sign_of_q: alpha coefficient out of range");
        return sign_of(u * mpq_class(v.get_den()), num.get_si());
    }
    }
    throw NumericError("unreachable alpha kind");
}

long long Alpha::floor_scaled(const mpq_class& u, long long v, long long d) const {
    if (d <= 0) throw NumericError("floor_scaled: divisor must be positive");
    if (v == 0) {
        mpq_class q = u / to_mpq(d);
        mpz_class f;
        mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return mpz_to_ll_checked(f, "floor");
    }
    // v != 0: for symbolic kinds the value is irrational, so the floor is
    // determined at some finite precision; for decimal alpha the cap applies.
    std::size_t lvl = 0;
    mpfr_prec_t p = 64;
    while (true) {
        if (lvl < impl_->prec_ladder.size()) {
            p = impl_->prec_ladder[lvl];
            MpfrVal lo(p), hi(p);
            impl_->enclose(u, v, d, impl_->lo_cache[lvl].get(),
                           impl_->hi_cache[lvl].get(), lo.get(), hi.get());
            mpz_class flo, fhi;
            mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDD);
            mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDD);
            if (flo == fhi) return mpz_to_ll_checked(flo, "floor");
            ++lvl;
            continue;
        }
        // Beyond the cache ladder.
        if (impl_->kind == AlphaKind::Decimal)
            throw PrecisionError(
                "cannot decide floor at the declared alpha precision (" +
                std::to_string(impl_->sig_digits) + " digits)");
        p *= 2;
        if (p > (mpfr_prec_t(1) << 20))
            throw NumericError("floor: precision escalation failed to converge");
        MpfrVal alo(p), ahi(p), lo(p), hi(p);
        impl_->fill_interval(alo.get(), ahi.get());
        impl_->enclose(u, v, d, alo.get(), ahi.get(), lo.get(), hi.get());
        mpz_class flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDD);
        mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDD);
        if (flo == fhi) return mpz_to_ll_checked(flo, "floor");
    }
}

double Alpha::value_of(const mpq_class& u, long long v) const {
    const mpfr_prec_t p = 128;
    MpfrVal a(p), x(p), t(p);
    switch (impl_->kind) {
    case AlphaKind::Sqrt:
        mpfr_set_q(t.get(), impl_->radicand.get_mpq_t(), MPFR_RNDN);
        mpfr_sqrt(a.get(), t.get(), MPFR_RNDN);
        break;
    case AlphaKind::Golden:
        mpfr_sqrt_ui(a.get(), 5, MPFR_RNDN);
        mpfr_add_ui(a.get(), a.get(), 1, MPFR_RNDN);
        mpfr_div_ui(a.get(), a.get(), 2, MPFR_RNDN);
        break;
    case AlphaKind::Decimal:
        mpfr_set_q(a.get(), impl_->approx.get_mpq_t(), MPFR_RNDN);
        break;
    }
    mpfr_mul_si(x.get(), a.get(), v, MPFR_RNDN);
    mpfr_set_q(t.get(), u.get_mpq_t(), MPFR_RNDN);
    mpfr_add(x.get(), x.get(), t.get(), MPFR_RNDN);
    return mpfr_get_d(x.get(), MPFR_RNDN);
}

int qnum_sign(const QNum& x, const Alpha& alpha) { return alpha.sign_of(x.u, x.v); }

Ordering qnum_compare(const QNum& a, const QNum& b, const Alpha& alpha) {
    if (a.v == b.v && a.u == b.u) return Ordering::Equal;
    int s = alpha.sign_of(a.u - b.u, a.v - b.v);
    if (s < 0) return Ordering::Less;
    if (s > 0) return Ordering::Greater;
    return Ordering::Equal;
}

bool qnum_less(const QNum& a, const QNum& b, const Alpha& alpha) {
    return qnum_compare(a, b, alpha) == Ordering::Less;
}

long long qnum_floor(const QNum& x, const Alpha& alpha) {
    return alpha.floor_scaled(x.u, x.v, 1);
}

long long qnum_floor_div(const QNum& x, long long d, const Alpha& alpha) {
    return alpha.floor_scaled(x.u, x.v, d);
}

QNum qnum_frac(const QNum& x, const Alpha& alpha) {
    return x - QNum(qnum_floor(x, alpha));
}

double qnum_to_double(const QNum& x, const Alpha& alpha) {
    return alpha.value_of(x.u, x.v);
}

QNum qnum_mul(const QNum& a, const QNum& b, const Alpha& alpha) {
    mpq_class u, vq;
    mpq_class av = to_mpq(a.v), bv = to_mpq(b.v);
    if (a.v == 0 || b.v == 0) {
        // No alpha^2 term, so this works for every alpha kind.
        u = a.u * b.u;
        vq = a.u * bv + b.u * av;
    } else
        switch (alpha.kind()) {
        case AlphaKind::Sqrt:
            u = a.u * b.u + av * bv * alpha.radicand();
            vq = a.u * bv + b.u * av;
            break;
        case AlphaKind::Golden:
            // alpha^2 = alpha + 1
            u = a.u * b.u + av * bv;
            vq = a.u * bv + b.u * av + av * bv;
            break;
        case AlphaKind::Decimal:
            throw NumericError("qnum_mul: products of two irrationals "
                               "unavailable for decimal alpha");
        }
    if (vq.get_den() != 1)
        throw NumericError("qnum_mul: product leaves the u + v*alpha class");
    return {u, mpz_to_ll_checked(mpz_class(vq.get_num()), "qnum_mul")};
}

std::string qnum_to_string(const QNum& x) {
    std::ostringstream os;
    os << x.u.get_str();
    if (x.v > 0) os << "+" << x.v << "*a";
    if (x.v < 0) os << x.v << "*a";
    return os.str();
}

} // namespace qb
