#pragma once

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cq {

using Rational = mpq_class;

// Exponent stored doubled so q^{1/2} etc. are exact.
struct HalfInt {
    long doubled = 0;

    static constexpr HalfInt of(long v) { return HalfInt{2 * v}; }
    static constexpr HalfInt half(long twice) { return HalfInt{twice}; }

    constexpr bool is_integer() const { return doubled % 2 == 0; }
    long as_integer() const;

    constexpr HalfInt operator+(HalfInt o) const { return {doubled + o.doubled}; }
    constexpr HalfInt operator-(HalfInt o) const { return {doubled - o.doubled}; }
    constexpr HalfInt operator-() const { return {-doubled}; }
    constexpr HalfInt& operator+=(HalfInt o) { doubled += o.doubled; return *this; }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string to_string() const;
};

// (ea, eq, et); ordering is lexicographic in that order.
struct Exponent {
    HalfInt a, q, t;
    constexpr Exponent operator+(const Exponent& o) const { return {a + o.a, q + o.q, t + o.t}; }
    constexpr Exponent operator-(const Exponent& o) const { return {a - o.a, q - o.q, t - o.t}; }
    constexpr auto operator<=>(const Exponent&) const = default;
};

class LaurentPoly {
public:
    using TermMap = std::map<Exponent, Rational>;

    LaurentPoly() = default;
    LaurentPoly(long c);  // NOLINT: implicit constants are convenient in formulas
    LaurentPoly(const Rational& c);  // NOLINT

    static LaurentPoly monomial(const Exponent& e, const Rational& c = 1);
    static LaurentPoly monomial(long ea, long eq, long et, const Rational& c = 1);
    static LaurentPoly a() { return monomial(1, 0, 0); }
    static LaurentPoly q() { return monomial(0, 1, 0); }
    static LaurentPoly t() { return monomial(0, 0, 1); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const Rational& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    LaurentPoly& operator*=(const Rational& c);
    friend LaurentPoly operator+(LaurentPoly x, const LaurentPoly& y) { return x += y; }
    friend LaurentPoly operator-(LaurentPoly x, const LaurentPoly& y) { return x -= y; }
    friend LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y);
    LaurentPoly operator-() const;
    friend bool operator==(const LaurentPoly& x, const LaurentPoly& y) { return x.terms_ == y.terms_; }

    LaurentPoly pow(unsigned k) const;
    LaurentPoly shifted(const Exponent& e) const;  // multiply by a monomial

    // Lexicographically least / greatest exponent; requires nonzero.
    Exponent low() const;
    Exponent high() const;
    HalfInt min_exp(char var) const;
    HalfInt max_exp(char var) const;

    bool all_integer_coeffs() const;
    bool all_nonneg_coeffs() const;

    // Keep only terms with the given exponent in `var`, with that exponent removed.
    LaurentPoly coeff_of(char var, HalfInt e) const;
    // Set a variable to zero; fails if it occurs to a negative power.
    LaurentPoly at_zero(char var) const;
    // Evaluate a variable at 1.
    LaurentPoly at_one(char var) const;
    LaurentPoly swap_qt() const;

    std::string to_string() const;

private:
    TermMap terms_;
};

// Exact division by a nonzero polynomial; nullopt if the quotient is not a Laurent polynomial.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den);

// Image of one variable: coeff * a^a q^q t^t.
struct MonomialImage {
    Rational coeff = 1;
    Exponent e;
};

struct Substitution {
    MonomialImage a{1, {HalfInt::of(1), {}, {}}};
    MonomialImage q{1, {{}, HalfInt::of(1), {}}};
    MonomialImage t{1, {{}, {}, HalfInt::of(1)}};

    static Substitution identity() { return {}; }
    // this ∘ inner : first apply inner, then this.
    Substitution after(const Substitution& inner) const;
};

LaurentPoly substitute(const LaurentPoly& p, const Substitution& s);

class QSeries {
public:
    QSeries() = default;
    explicit QSeries(HalfInt trunc) : trunc_(trunc) {}
    // Terms of p with q-exponent above trunc are dropped.
    static QSeries from_poly(const LaurentPoly& p, HalfInt trunc);

    HalfInt trunc() const { return trunc_; }
    const std::map<HalfInt, LaurentPoly>& coeffs() const { return coeffs_; }
    LaurentPoly coeff(HalfInt qexp) const;
    void add_coeff(HalfInt qexp, const LaurentPoly& c);  // c in (a,t) only
    bool is_zero() const { return coeffs_.empty(); }
    // Conservative lower bound used for truncation bookkeeping (never above 0).
    HalfInt low_bound() const;

    LaurentPoly to_poly() const;
    QSeries truncated(HalfInt t) const;

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries x, const QSeries& y) { return x += y; }
    friend QSeries operator-(QSeries x, const QSeries& y) { return x -= y; }
    friend QSeries operator*(const QSeries& x, const QSeries& y);
    QSeries operator*(const LaurentPoly& p) const;  // p may involve q
    friend bool operator==(const QSeries& x, const QSeries& y) {
        return x.trunc_ == y.trunc_ && x.coeffs_ == y.coeffs_;
    }

    // Apply `sub` termwise. The q image must carry a positive q-power; terms
    // beyond the truncation are assumed to have nonnegative a- and t-exponents.
    QSeries substituted(const Substitution& sub) const;

    bool all_integer_coeffs() const;
    bool all_nonneg_coeffs() const;
    std::string to_string() const;

private:
    std::map<HalfInt, LaurentPoly> coeffs_;
    HalfInt trunc_{};
};

QSeries series_div_geometric(const QSeries& s, int b);
QSeries series_mul_one_minus_q(const QSeries& s, int b);

struct Discrepancy {
    HalfInt qexp;
    LaurentPoly lhs, rhs;
};
// First q-degree <= order where p and r differ. Throws if order exceeds a truncation.
std::optional<Discrepancy> first_discrepancy(const QSeries& p, const QSeries& r, HalfInt order);
bool equal_upto(const QSeries& p, const QSeries& r, HalfInt order);

nlohmann::json to_json(const LaurentPoly& p);
nlohmann::json to_json(const QSeries& s);
LaurentPoly poly_from_json(const nlohmann::json& j);
QSeries series_from_json(const nlohmann::json& j);

// Parses the canonical printed form (e.g. "1 + 3/2 a q^-1 t^(1/2)").
LaurentPoly parse_poly(const std::string& text);

}  // namespace cq
