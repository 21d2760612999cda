#include "cq/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace cq {

long HalfInt::as_integer() const
{
    if (!is_integer())
        throw std::domain_error("half-integer exponent where an integer was required");
    return doubled / 2;
}

std::string HalfInt::to_string() const
{
    if (is_integer())
        return std::to_string(doubled / 2);
    return "(" + std::to_string(doubled) + "/2)";
}

namespace {

HalfInt& component(Exponent& e, char var)
{
    switch (var) {
    case 'a': return e.a;
    case 'q': return e.q;
    case 't': return e.t;
    }
    throw std::invalid_argument(std::string("unknown variable ") + var);
}

HalfInt component(const Exponent& e, char var)
{
    return component(const_cast<Exponent&>(e), var);
}

// x * h where both are half-integers; must land on the half-integer grid.
HalfInt mul_exp(HalfInt x, HalfInt h)
{
    long prod = x.doubled * h.doubled;
    if (prod % 2 != 0)
        throw std::domain_error("substitution needs exponents finer than half-integers");
    return HalfInt{prod / 2};
}

Rational rational_pow(const Rational& c, HalfInt e)
{
    if (c == 1)
        return 1;
    if (!e.is_integer())
        throw std::domain_error("half-integer power of a non-unit coefficient");
    long k = e.as_integer();
    Rational base = k < 0 ? Rational(1) / c : c;
    Rational r = 1;
    for (long i = 0; i < std::abs(k); ++i)
        r *= base;
    return r;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) : LaurentPoly(Rational(c)) {}

LaurentPoly::LaurentPoly(const Rational& c)
{
    if (c != 0)
        terms_.emplace(Exponent{}, c);
}

LaurentPoly LaurentPoly::monomial(const Exponent& e, const Rational& c)
{
    LaurentPoly p;
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::monomial(long ea, long eq, long et, const Rational& c)
{
    return monomial({HalfInt::of(ea), HalfInt::of(eq), HalfInt::of(et)}, c);
}

Rational LaurentPoly::coeff(const Exponent& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& x, const LaurentPoly& y)
{
    LaurentPoly r;
    Rational prod;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_) {
            prod = cx * cy;
            r.add_term(ex + ey, prod);
        }
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o)
{
    *this = *this * o;
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r = *this;
    r *= Rational(-1);
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const
{
    LaurentPoly r(1), base = *this;
    while (k) {
        if (k & 1)
            r *= base;
        k >>= 1;
        if (k)
            base *= base;
    }
    return r;
}

LaurentPoly LaurentPoly::shifted(const Exponent& s) const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), e + s, c);
    return r;
}

Exponent LaurentPoly::low() const
{
    if (terms_.empty())
        throw std::domain_error("low() of zero polynomial");
    return terms_.begin()->first;
}

Exponent LaurentPoly::high() const
{
    if (terms_.empty())
        throw std::domain_error("high() of zero polynomial");
    return terms_.rbegin()->first;
}

HalfInt LaurentPoly::min_exp(char var) const
{
    if (terms_.empty())
        throw std::domain_error("min_exp() of zero polynomial");
    HalfInt m = component(terms_.begin()->first, var);
    for (const auto& [e, c] : terms_)
        m = std::min(m, component(e, var));
    return m;
}

HalfInt LaurentPoly::max_exp(char var) const
{
    if (terms_.empty())
        throw std::domain_error("max_exp() of zero polynomial");
    HalfInt m = component(terms_.begin()->first, var);
    for (const auto& [e, c] : terms_)
        m = std::max(m, component(e, var));
    return m;
}

bool LaurentPoly::all_integer_coeffs() const
{
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& kv) { return kv.second.get_den() == 1; });
}

bool LaurentPoly::all_nonneg_coeffs() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

LaurentPoly LaurentPoly::coeff_of(char var, HalfInt x) const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        if (component(e, var) == x) {
            Exponent f = e;
            component(f, var) = HalfInt{};
            r.terms_.emplace(f, c);
        }
    return r;
}

LaurentPoly LaurentPoly::at_zero(char var) const
{
    if (!is_zero() && min_exp(var) < HalfInt{})
        throw std::domain_error(std::string("cannot set ") + var + " = 0 with negative powers present");
    return coeff_of(var, HalfInt{});
}

LaurentPoly LaurentPoly::at_one(char var) const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_) {
        Exponent f = e;
        component(f, var) = HalfInt{};
        r.add_term(f, c);
    }
    return r;
}

LaurentPoly LaurentPoly::swap_qt() const
{
    LaurentPoly r;
    for (const auto& [e, c] : terms_)
        r.terms_.emplace(Exponent{e.a, e.t, e.q}, c);
    return r;
}

std::string LaurentPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::vector<std::pair<Exponent, Rational>> v(terms_.begin(), terms_.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
        const Exponent &e = x.first, &f = y.first;
        return std::tie(e.q, e.a, e.t) < std::tie(f.q, f.a, f.t);
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : v) {
        Rational mag = abs(c);
        if (first)
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        first = false;
        std::string mono;
        auto put = [&](char var, HalfInt x) {
            if (x.doubled == 0)
                return;
            if (!mono.empty())
                mono += ' ';
            mono += var;
            if (x.doubled != 2)
                mono += "^" + x.to_string();
        };
        put('a', e.a);
        put('q', e.q);
        put('t', e.t);
        if (mono.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += mono;
        else
            out += mag.get_str() + " " + mono;
    }
    return out;
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly& num, const LaurentPoly& den)
{
    if (den.is_zero())
        throw std::domain_error("division by zero polynomial");
    if (num.is_zero())
        return LaurentPoly{};
    // Work from the top. Degrees add in every variable separately, so an exact
    // quotient lives in a finite box; leaving it means there is no quotient.
    const Exponent floor = num.low() - den.low();
    const Exponent dlead = den.high();
    auto box_lo = [&](char v) { return num.min_exp(v) - den.min_exp(v); };
    auto box_hi = [&](char v) { return num.max_exp(v) - den.max_exp(v); };
    const Exponent lo{box_lo('a'), box_lo('q'), box_lo('t')}, hi{box_hi('a'), box_hi('q'), box_hi('t')};
    const Rational dc = den.terms().rbegin()->second;
    LaurentPoly rem = num, quot;
    while (!rem.is_zero()) {
        Exponent e = rem.high() - dlead;
        if (e < floor || e.a < lo.a || e.q < lo.q || e.t < lo.t || e.a > hi.a || e.q > hi.q || e.t > hi.t)
            return std::nullopt;
        Rational c = rem.terms().rbegin()->second / dc;
        LaurentPoly step = den.shifted(e);
        step *= c;
        rem -= step;
        quot.add_term(e, c);
    }
    return quot;
}

Substitution Substitution::after(const Substitution& inner) const
{
    auto apply = [&](const MonomialImage& m) {
        LaurentPoly img = substitute(LaurentPoly::monomial(m.e, m.coeff), *this);
        const auto& [e, c] = *img.terms().begin();
        return MonomialImage{c, e};
    };
    return {apply(inner.a), apply(inner.q), apply(inner.t)};
}

LaurentPoly substitute(const LaurentPoly& p, const Substitution& s)
{
    for (const MonomialImage* m : {&s.a, &s.q, &s.t})
        if (m->coeff == 0)
            throw std::domain_error("substitution image must be nonzero");
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) {
        Exponent out{};
        Rational coeff = c;
        auto image = [&](const MonomialImage& m, HalfInt x) {
            out.a += mul_exp(x, m.e.a);
            out.q += mul_exp(x, m.e.q);
            out.t += mul_exp(x, m.e.t);
            coeff *= rational_pow(m.coeff, x);
        };
        image(s.a, e.a);
        image(s.q, e.q);
        image(s.t, e.t);
        r.add_term(out, coeff);
    }
    return r;
}

// ---------------------------------------------------------------- QSeries

QSeries QSeries::from_poly(const LaurentPoly& p, HalfInt trunc)
{
    QSeries s(trunc);
    for (const auto& [e, c] : p.terms()) {
        if (e.q > trunc)
            continue;
        s.add_coeff(e.q, LaurentPoly::monomial(Exponent{e.a, {}, e.t}, c));
    }
    return s;
}

LaurentPoly QSeries::coeff(HalfInt qexp) const
{
    if (qexp > trunc_)
        throw std::out_of_range("coefficient beyond truncation q^" + trunc_.to_string());
    auto it = coeffs_.find(qexp);
    return it == coeffs_.end() ? LaurentPoly{} : it->second;
}

void QSeries::add_coeff(HalfInt qexp, const LaurentPoly& c)
{
    if (qexp > trunc_ || c.is_zero())
        return;
    auto& slot = coeffs_[qexp];
    slot += c;
    if (slot.is_zero())
        coeffs_.erase(qexp);
}

HalfInt QSeries::low_bound() const
{
    if (coeffs_.empty())
        return HalfInt{};
    return std::min(HalfInt{}, coeffs_.begin()->first);
}

LaurentPoly QSeries::to_poly() const
{
    LaurentPoly r;
    for (const auto& [qe, c] : coeffs_)
        r += c.shifted({{}, qe, {}});
    return r;
}

QSeries QSeries::truncated(HalfInt t) const
{
    QSeries r(std::min(t, trunc_));
    for (const auto& [qe, c] : coeffs_)
        if (qe <= r.trunc_)
            r.coeffs_.emplace(qe, c);
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o)
{
    *this = truncated(o.trunc_);
    for (const auto& [qe, c] : o.coeffs_)
        add_coeff(qe, c);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o)
{
    *this = truncated(o.trunc_);
    for (const auto& [qe, c] : o.coeffs_)
        add_coeff(qe, -c);
    return *this;
}

QSeries operator*(const QSeries& x, const QSeries& y)
{
    HalfInt tr = std::min(x.trunc_ + y.low_bound(), y.trunc_ + x.low_bound());
    QSeries r(tr);
    for (const auto& [ex, cx] : x.coeffs_)
        for (const auto& [ey, cy] : y.coeffs_)
            if (ex + ey <= tr)
                r.add_coeff(ex + ey, cx * cy);
    return r;
}

QSeries QSeries::operator*(const LaurentPoly& p) const
{
    if (p.is_zero())
        return QSeries(trunc_);
    // A polynomial factor is known exactly; only its lowest q-power moves the horizon.
    QSeries r(trunc_ + p.min_exp('q'));
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly at = LaurentPoly::monomial(Exponent{e.a, {}, e.t}, c);
        for (const auto& [qe, cs] : coeffs_)
            r.add_coeff(qe + e.q, cs * at);
    }
    return r;
}

QSeries QSeries::substituted(const Substitution& sub) const
{
    HalfInt qa = sub.a.e.q, qt = sub.t.e.q, qq = sub.q.e.q;
    if (qq.doubled <= 0)
        throw std::domain_error("series substitution needs q mapped to a positive q-power");
    if (qa < HalfInt{} || qt < HalfInt{})
        throw std::domain_error("series substitution with negative q-power in a or t image");
    // Unknown terms start at q^{trunc + 1/2}; they land at or above qq*(trunc+1/2).
    HalfInt unseen = mul_exp(trunc_ + HalfInt{1}, qq);
    QSeries r(unseen - HalfInt{1});
    for (const auto& [qe, c] : coeffs_) {
        LaurentPoly img = substitute(c.shifted({{}, qe, {}}), sub);
        for (const auto& [e, v] : img.terms())
            r.add_coeff(e.q, LaurentPoly::monomial(Exponent{e.a, {}, e.t}, v));
    }
    return r;
}

bool QSeries::all_integer_coeffs() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.all_integer_coeffs(); });
}

bool QSeries::all_nonneg_coeffs() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const auto& kv) { return kv.second.all_nonneg_coeffs(); });
}

std::string QSeries::to_string() const
{
    std::string s = to_poly().to_string();
    return s + " + O(q^" + (trunc_ + HalfInt{1}).to_string() + ")";
}

QSeries series_div_geometric(const QSeries& s, int b)
{
    if (b < 0)
        throw std::invalid_argument("series_div_geometric: b must be nonnegative");
    QSeries cur = s;
    for (int step = 0; step < b; ++step) {
        // Running sums along each residue of the doubled exponent mod 2.
        QSeries next(cur.trunc());
        for (long parity : {0L, 1L}) {
            LaurentPoly acc;
            HalfInt start{};
            bool any = false;
            for (const auto& [qe, c] : cur.coeffs())
                if (((qe.doubled % 2) + 2) % 2 == parity) {
                    start = qe;
                    any = true;
                    break;
                }
            if (!any)
                continue;
            for (HalfInt e = start; e <= cur.trunc(); e += HalfInt{2}) {
                acc += cur.coeff(e);
                next.add_coeff(e, acc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

QSeries series_mul_one_minus_q(const QSeries& s, int b)
{
    LaurentPoly f = (LaurentPoly(1) - LaurentPoly::q()).pow(static_cast<unsigned>(b));
    QSeries r = s * f;
    return r;
}

std::optional<Discrepancy> first_discrepancy(const QSeries& p, const QSeries& r, HalfInt order)
{
    if (order > p.trunc() || order > r.trunc())
        throw std::out_of_range("comparison order q^" + order.to_string() +
                                " exceeds a series truncation");
    std::map<HalfInt, int> keys;
    for (const auto& kv : p.coeffs())
        keys[kv.first];
    for (const auto& kv : r.coeffs())
        keys[kv.first];
    for (const auto& [qe, unused] : keys) {
        if (qe > order)
            break;
        LaurentPoly x = p.coeff(qe), y = r.coeff(qe);
        if (!(x == y))
            return Discrepancy{qe, x, y};
    }
    return std::nullopt;
}

bool equal_upto(const QSeries& p, const QSeries& r, HalfInt order)
{
    return !first_discrepancy(p, r, order).has_value();
}

// ---------------------------------------------------------------- JSON

nlohmann::json to_json(const LaurentPoly& p)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        arr.push_back({{"a2", e.a.doubled}, {"q2", e.q.doubled}, {"t2", e.t.doubled}, {"c", c.get_str()}});
    return arr;
}

nlohmann::json to_json(const QSeries& s)
{
    return {{"trunc2", s.trunc().doubled}, {"terms", to_json(s.to_poly())}};
}

LaurentPoly poly_from_json(const nlohmann::json& j)
{
    LaurentPoly p;
    for (const auto& term : j) {
        Exponent e{HalfInt{term.at("a2").get<long>()}, HalfInt{term.at("q2").get<long>()},
                   HalfInt{term.at("t2").get<long>()}};
        Rational c(term.at("c").get<std::string>());
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

QSeries series_from_json(const nlohmann::json& j)
{
    return QSeries::from_poly(poly_from_json(j.at("terms")), HalfInt{j.at("trunc2").get<long>()});
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& s;
    std::size_t i = 0;

    void skip() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool done() { skip(); return i >= s.size(); }
    [[noreturn]] void fail(const std::string& why)
    {
        throw std::invalid_argument("parse_poly: " + why + " at offset " + std::to_string(i));
    }

    long integer()
    {
        skip();
        std::size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+'))
            ++j;
        std::size_t digits = j;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        if (j == digits)
            fail("expected integer");
        long v = std::stol(s.substr(i, j - i));
        i = j;
        return v;
    }

    HalfInt exponent()
    {
        skip();
        if (i < s.size() && s[i] == '(') {
            ++i;
            long num = integer();
            skip();
            if (i >= s.size() || s[i] != '/')
                fail("expected /2");
            ++i;
            if (integer() != 2)
                fail("only halves are allowed");
            skip();
            if (i >= s.size() || s[i] != ')')
                fail("expected )");
            ++i;
            return HalfInt{num};
        }
        return HalfInt::of(integer());
    }

    // One term without its sign.
    void term(LaurentPoly& out, bool negative)
    {
        skip();
        Rational c = 1;
        bool numeric = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            numeric = true;
            std::size_t j = i;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
                ++j;
            c = Rational(s.substr(i, j - i));
            c.canonicalize();
            i = j;
        }
        Exponent e{};
        bool any = false;
        for (;;) {
            skip();
            if (i >= s.size() || (s[i] != 'a' && s[i] != 'q' && s[i] != 't'))
                break;
            char var = s[i++];
            HalfInt x = HalfInt::of(1);
            if (i < s.size() && s[i] == '^') {
                ++i;
                x = exponent();
            }
            component(e, var) += x;
            any = true;
        }
        if (!any && !numeric)
            fail("empty term");
        out.add_term(e, negative ? Rational(-c) : c);
    }
};

}  // namespace

LaurentPoly parse_poly(const std::string& text)
{
    Parser p{text};
    LaurentPoly out;
    if (p.done())
        p.fail("empty input");
    bool negative = false;
    p.skip();
    if (text[p.i] == '-') {
        negative = true;
        ++p.i;
    }
    for (;;) {
        p.term(out, negative);
        if (p.done())
            break;
        char op = text[p.i];
        if (op != '+' && op != '-')
            p.fail("expected + or -");
        negative = op == '-';
        ++p.i;
    }
    return out;
}

}  // namespace cq
