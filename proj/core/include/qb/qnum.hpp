#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <utility>

namespace qb {

// gmpxx lacks long long overloads; on this target long is just as wide.
static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
inline mpq_class to_mpq(long long v) { return mpq_class(static_cast<long>(v)); }
inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }

/// How the session constant alpha is specified.
enum class AlphaKind {
    Sqrt,    ///< square root of a positive non-square rational
    Golden,  ///< (1 + sqrt 5) / 2
    Decimal  ///< high-precision decimal, >= 100 significant digits
};

/// The session constant alpha: an irrational real fixed for the lifetime of a
/// computation. Numbers of the form u + v*alpha (u rational, v integer) then
/// have a unique representation, and sign / floor / comparison are decidable:
/// exactly for the symbolic kinds, and up to the declared input precision for
/// decimal alphas (with escalation capped at 4x the input digits).
///
/// Immutable and cheaply copyable; safe for concurrent read-only use.
class Alpha {
public:
    /// alpha = sqrt(r), r a positive non-square rational.
    static Alpha sqrt_of(const mpq_class& r);
    /// alpha = (1 + sqrt 5) / 2.
    static Alpha golden();
    /// alpha given as a decimal string with >= 100 significant digits.
    static Alpha decimal(const std::string& digits);
    /// Internal decimal form from an exact rational midpoint and uncertainty.
    static Alpha decimal_exact(const mpq_class& approx, const mpq_class& uncertainty,
                               int sig_digits);

    AlphaKind kind() const;
    /// Radicand for Sqrt kind.
    const mpq_class& radicand() const;
    /// Exact rational midpoint for Decimal kind.
    const mpq_class& decimal_approx() const;
    /// Half-width of the declared enclosure for Decimal kind.
    const mpq_class& decimal_uncertainty() const;
    int sig_digits() const;

    double to_double() const;
    std::string describe() const;

    /// sign of u + v*alpha.
    int sign_of(const mpq_class& u, long long v) const;
    /// sign of u + v*alpha with rational v (exact-mean paths).
    int sign_of_q(const mpq_class& u, const mpq_class& v) const;
    /// floor of (u + v*alpha) / d, d >= 1.
    long long floor_scaled(const mpq_class& u, long long v, long long d) const;
    /// (u + v*alpha) rounded once to double.
    double value_of(const mpq_class& u, long long v) const;

    bool operator==(const Alpha& other) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit Alpha(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Exact real of the form u + v*alpha. Representation is unique for
/// irrational alpha, so equality is coefficient-wise and needs no context;
/// ordering, floor and conversion to double take the session Alpha.
struct QNum {
    mpq_class u{};
    long long v = 0;

    QNum() = default;
    QNum(mpq_class ru, long long av) : u(std::move(ru)), v(av) {}
    explicit QNum(mpq_class r) : u(std::move(r)), v(0) {}
    explicit QNum(long long r) : u(to_mpq(r)), v(0) {}

    bool is_rational() const { return v == 0; }
};

inline QNum operator+(const QNum& a, const QNum& b) { return {a.u + b.u, a.v + b.v}; }
inline QNum operator-(const QNum& a, const QNum& b) { return {a.u - b.u, a.v - b.v}; }
inline QNum operator-(const QNum& a) { return {-a.u, -a.v}; }
inline bool operator==(const QNum& a, const QNum& b) { return a.v == b.v && a.u == b.u; }
inline bool operator!=(const QNum& a, const QNum& b) { return !(a == b); }

/// a * k with integer k (the only scalar multiple that stays in the class).
inline QNum qnum_scale(const QNum& a, long long k) {
    return {a.u * to_mpq(k), a.v * k};
}

enum class Ordering { Less, Equal, Greater };

int qnum_sign(const QNum& x, const Alpha& alpha);
Ordering qnum_compare(const QNum& a, const QNum& b, const Alpha& alpha);
bool qnum_less(const QNum& a, const QNum& b, const Alpha& alpha);

long long qnum_floor(const QNum& x, const Alpha& alpha);
inline long long qnum_ceil(const QNum& x, const Alpha& alpha) {
    return -qnum_floor(-x, alpha);
}
/// floor(x / d) for positive integer d.
long long qnum_floor_div(const QNum& x, long long d, const Alpha& alpha);
/// x - floor(x), in [0, 1).
QNum qnum_frac(const QNum& x, const Alpha& alpha);

double qnum_to_double(const QNum& x, const Alpha& alpha);

/// Exact product. Defined for the quadratic kinds (alpha^2 is a + b*alpha
/// with rational a, b); throws NumericError for Decimal alpha or when the
/// product's alpha-coefficient is not an integer.
QNum qnum_mul(const QNum& a, const QNum& b, const Alpha& alpha);

/// "u" or "u+v*a" / "u-v*a"; exact, for reports and error messages.
std::string qnum_to_string(const QNum& x);

} // namespace qb
