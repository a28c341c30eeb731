#pragma once

#include "qb/qnum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qb {

/// Semi-closed interval [lo, hi).
struct Interval {
    QNum lo;
    QNum hi;
};

inline QNum interval_length(const Interval& iv) { return iv.hi - iv.lo; }

/// lo <= x < hi, decided exactly.
bool interval_contains(const Interval& iv, const QNum& x, const Alpha& alpha);

/// One term of a rational linear combination of interval indicators.
struct ComboTerm {
    mpq_class coeff;
    Interval iv;
};

struct IndicatorCombo {
    std::vector<ComboTerm> terms;
};

/// A finite disjoint union of half-open intervals [a_j, b_j) with
/// a_1 < b_1 < a_2 < ... (touching bands are merged on construction).
/// Immutable after construction.
class Spectrum {
public:
    static Spectrum from_bands(std::vector<Interval> bands, const Alpha& alpha);

    const std::vector<Interval>& bands() const { return bands_; }
    const QNum& measure() const { return measure_; }
    const QNum& lo() const { return bands_.front().lo; }
    const QNum& hi() const { return bands_.back().hi; }

private:
    std::vector<Interval> bands_;
    QNum measure_;
    Spectrum(std::vector<Interval> bands, QNum measure)
        : bands_(std::move(bands)), measure_(std::move(measure)) {}
};

bool spectrum_contains(const Spectrum& s, const QNum& x, const Alpha& alpha);

/// The coefficient-1 combination whose normalization is s itself.
IndicatorCombo combo_of(const Spectrum& s);

/// Evaluates the combination on the cell partition cut by all endpoints,
/// checks it is {0,1}-valued, and merges the value-1 cells into bands.
Spectrum normalize_combo(const IndicatorCombo& combo, const Alpha& alpha);

/// Sum of coeff * length over the raw terms; throws NumericError if the
/// alpha-coefficient of the total is not an integer.
QNum combo_measure(const IndicatorCombo& combo);

/// Number of integers k with x - k in s; exact, 1-periodic in x.
long long phi(const Spectrum& s, const QNum& x, const Alpha& alpha);

/// How alpha arrives in an input file, before normalization. The Rational
/// kind is only legal together with a declared commensurable reduction.
struct AlphaInput {
    enum class Kind { Sqrt, Golden, Decimal, Rational };
    Kind kind = Kind::Sqrt;
    mpq_class rational;          // Sqrt: radicand; Rational: the value
    std::string decimal_digits;  // Decimal
};

/// Band lengths enter as integer pairs (n, m) meaning n*alpha + m*beta.
struct LengthPair {
    long long n = 0;
    long long m = 0;
};

struct RawTerm {
    mpq_class coeff;
    mpq_class lo_u;
    long long lo_v = 0;
    LengthPair len;
};

struct RawCombo {
    std::vector<RawTerm> terms;
};

/// Declared rational dependence alpha = g*a, beta = g*b (a, b rational).
struct CommensurableDecl {
    mpq_class g;
    mpq_class alpha_over_g;
    mpq_class beta_over_g;
};

struct NormalForm {
    Alpha alpha;
    IndicatorCombo combo;
};

/// Rescales coordinates so the length lattice becomes Z*alpha' + Z with
/// alpha' irrational:
///   - sqrt(r) alpha, rational beta > 0: exact, alpha' = sqrt(r / beta^2);
///   - decimal alpha: exact rescale of the declared digits;
///   - golden alpha with beta != 1: alpha' falls back to a 150-digit decimal;
///   - declared commensurable (rational alpha): rescale by the generator g,
///     alpha' is the golden ratio and every length has zero alpha-part.
/// beta <= 0 and undeclared rational alpha are rejected.
NormalForm rescale_to_normal_form(const AlphaInput& alpha_in, const mpq_class& beta,
                                  const RawCombo& raw,
                                  const std::optional<CommensurableDecl>& comm = {});

} // namespace qb
