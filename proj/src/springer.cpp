#include "cq/springer.hpp"

#include <algorithm>
#include <numeric>

namespace cq {

namespace {

long mod(long x, long n) { return ((x % n) + n) % n; }

std::string vec_str(const std::vector<long>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i]);
    return s + ")";
}

}  // namespace

Cocharacter::Cocharacter(std::vector<long> v) : mu(std::move(v))
{
    if (mu.empty())
        throw std::invalid_argument("cocharacter must be nonempty");
    if (std::accumulate(mu.begin(), mu.end(), 0L) != 0)
        throw std::invalid_argument("cocharacter entries must sum to zero: " + vec_str(mu));
}

std::string Cocharacter::to_string() const { return vec_str(mu); }

std::vector<long> a_stat(const Cocharacter& c)
{
    const auto& mu = c.mu;
    const long n = c.n();
    long lo = *std::min_element(mu.begin(), mu.end());
    long k = 0;  // 0-based position of the last minimum
    for (long i = 0; i < n; ++i)
        if (mu[i] == lo)
            k = i;
    std::vector<long> a;
    for (long i = k + 1; i < n; ++i)
        a.push_back(mu[i] - lo - 1);
    for (long i = 0; i < k; ++i)
        a.push_back(mu[i] - lo);
    return a;
}

Cocharacter a_stat_inverse(const std::vector<long>& a)
{
    const long n = static_cast<long>(a.size()) + 1;
    if (std::any_of(a.begin(), a.end(), [](long x) { return x < 0; }))
        throw std::invalid_argument("a-statistic entries must be nonnegative");
    const long total = std::accumulate(a.begin(), a.end(), 0L);
    // With the last minimum at position k (1-based) the zero-sum condition reads
    // n*mu_k + (n - k) + |a| = 0; exactly one k makes this integral.
    for (long k = 1; k <= n; ++k) {
        long num = (n - k) + total;
        if (num % n != 0)
            continue;
        long base = -num / n;
        std::vector<long> mu(n);
        mu[k - 1] = base;
        for (long j = 1; j <= n - k; ++j)
            mu[k - 1 + j] = base + 1 + a[j - 1];
        for (long i = 1; i < k; ++i)
            mu[i - 1] = base + a[n - k + i - 1];
        return Cocharacter(mu);
    }
    throw std::logic_error("a_stat_inverse: no position satisfies the zero-sum condition");
}

Cocharacter iota(const Cocharacter& c)
{
    std::vector<long> v(c.mu.rbegin(), c.mu.rend());
    for (long& x : v)
        x = -x;
    return Cocharacter(v);
}

std::vector<long> shifted_weights(const Cocharacter& c)
{
    const long n = c.n();
    std::vector<long> w(n);
    for (long i = 1; i <= n; ++i)
        w[i - 1] = n * c.mu[i - 1] + n - i;
    return w;
}

GammaModule mu_to_delta(const Cocharacter& c, const GermParams& p)
{
    p.require_coprime("mu_to_delta");
    if (c.n() != p.n)
        throw std::invalid_argument("cocharacter length differs from n");
    std::vector<long> g(p.n);
    for (long w : shifted_weights(c)) {
        long x = w + p.delta();
        if (x < 0)
            throw NotInDomain(c.to_string() + " gives a negative generator");
        g[mod(x, p.n)] = x;
    }
    try {
        GammaModule m(p, Ambient::S, g);
        if (m.codim() != p.delta())
            throw NotInDomain(c.to_string() + " gives codimension " + std::to_string(m.codim()));
        return m;
    } catch (const NotInDomain&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw NotInDomain(c.to_string() + ": " + e.what());
    }
}

bool in_domain(const Cocharacter& c, const GermParams& p)
{
    try {
        mu_to_delta(c, p);
        return true;
    } catch (const NotInDomain&) {
        return false;
    }
}

std::vector<Cocharacter> valid_cocharacters(const GermParams& p)
{
    p.require_coprime("valid_cocharacters");
    // |a| <= delta bounds the search
    std::vector<Cocharacter> out;
    std::vector<long> a(p.n - 1, 0);
    auto rec = [&](auto&& self, std::size_t i, long left) -> void {
        if (i == a.size()) {
            Cocharacter c = a_stat_inverse(a);
            if (in_domain(c, p))
                out.push_back(c);
            return;
        }
        for (long x = 0; x <= left; ++x) {
            a[i] = x;
            self(self, i + 1, left - x);
        }
        a[i] = 0;
    };
    rec(rec, 0, p.delta());
    return out;
}

long gap_stat(const GammaModule& m)
{
    if (m.ambient().kind != Ambient::S || m.codim() != m.params().delta())
        throw std::invalid_argument("gap_stat needs a module of Z>=0 with codimension delta");
    return m.params().delta() - m.min();
}

GammaModule gm_dual(const GammaModule& m)
{
    const GermParams& p = m.params();
    if (m.ambient().kind != Ambient::S || m.codim() != p.delta())
        throw std::invalid_argument("gm_dual needs a module of Z>=0 with codimension delta");
    std::vector<long> g(p.n);
    for (long k : m.genvec()) {
        long x = p.d * (p.n - 1) - k;
        if (x < 0)
            throw std::logic_error("dual generator is negative");
        g[mod(x, p.n)] = x;
    }
    GammaModule dual(p, Ambient::S, g);
    if (dual.codim() != p.delta())
        throw std::logic_error("dual module has the wrong codimension");
    return dual;
}

std::vector<HikitaRow> hikita_table(const GermParams& p)
{
    std::vector<HikitaRow> rows;
    for (const auto& c : valid_cocharacters(p)) {
        auto a = a_stat(c);
        GammaModule m = mu_to_delta(c, p);
        rows.push_back({c, a, std::accumulate(a.begin(), a.end(), 0L), shifted_weights(c), m, m.min()});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const HikitaRow& x, const HikitaRow& y) {
        return std::tie(x.a_size, x.a) < std::tie(y.a_size, y.a);
    });
    return rows;
}

nlohmann::json to_json(const HikitaRow& r)
{
    return {{"mu", r.mu.mu}, {"a", r.a},          {"a_size", r.a_size},
            {"weights", r.weights}, {"module", r.module.label()}, {"min", r.min}};
}

}  // namespace cq
