#include "cq/symfunc.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace cq {

// ---------------------------------------------------------------- partitions

std::vector<Partition> partitions(int n)
{
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int left, int cap) -> void {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, cap); p >= 1; --p) {
            cur.push_back(p);
            self(self, left - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

Partition conjugate(const Partition& la)
{
    Partition c;
    for (int j = 1; !la.empty() && j <= la[0]; ++j)
        c.push_back(static_cast<int>(std::count_if(la.begin(), la.end(), [&](int x) { return x >= j; })));
    return c;
}

long n_stat(const Partition& la)
{
    long s = 0;
    for (std::size_t i = 0; i < la.size(); ++i)
        s += static_cast<long>(i) * la[i];
    return s;
}

Rational z_factor(const Partition& la)
{
    mpz_class z = 1;
    std::map<int, int> mult;
    for (int p : la) {
        z *= p;
        ++mult[p];
    }
    for (auto [p, m] : mult)
        for (int i = 2; i <= m; ++i)
            z *= i;
    return Rational(z);
}

long hook_count(const Partition& la)
{
    // hook length formula
    Partition c = conjugate(la);
    int n = std::accumulate(la.begin(), la.end(), 0);
    mpz_class num = 1, den = 1;
    for (int i = 2; i <= n; ++i)
        num *= i;
    for (std::size_t i = 0; i < la.size(); ++i)
        for (int j = 0; j < la[i]; ++j)
            den *= (la[i] - j - 1) + (c[j] - static_cast<int>(i) - 1) + 1;
    return mpz_class(num / den).get_si();
}

std::string to_string(const Partition& la)
{
    std::string s = "[";
    for (std::size_t i = 0; i < la.size(); ++i)
        s += (i ? "," : "") + std::to_string(la[i]);
    return s + "]";
}

Partition hook(int n, int k)
{
    Partition h{n - k};
    h.insert(h.end(), k, 1);
    return h;
}

namespace {

int size_of(const Partition& la) { return std::accumulate(la.begin(), la.end(), 0); }

void require_partition(const Partition& la)
{
    for (std::size_t i = 0; i < la.size(); ++i)
        if (la[i] <= 0 || (i && la[i] > la[i - 1]))
            throw std::invalid_argument("not a partition: " + to_string(la));
}

// Border-strip removal on beta numbers.
long mn_rec(std::vector<int> beta, const Partition& rho, std::size_t idx)
{
    if (idx == rho.size())
        return 1;
    const int r = rho[idx];
    long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int b = beta[i], target = b - r;
        if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end())
            continue;
        int between = static_cast<int>(std::count_if(beta.begin(), beta.end(),
                                                      [&](int x) { return x > target && x < b; }));
        std::vector<int> next = beta;
        next[i] = target;
        long sub = mn_rec(next, rho, idx + 1);
        total += (between % 2 ? -sub : sub);
    }
    return total;
}

// Remove horizontal strips of size mu[idx], mu[idx-1], ... from the shape.
long kostka_rec(const Partition& shape, const Partition& mu, int idx, std::map<std::pair<Partition, int>, long>& memo)
{
    if (idx < 0)
        return shape.empty() ? 1 : 0;
    auto key = std::make_pair(shape, idx);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    long total = 0;
    Partition inner(shape.size());
    const int m = mu[idx];
    auto rec = [&](auto&& self, std::size_t row, int removed) -> void {
        if (row == shape.size()) {
            if (removed != m)
                return;
            Partition nu;
            for (int x : inner)
                if (x > 0)
                    nu.push_back(x);
            total += kostka_rec(nu, mu, idx - 1, memo);
            return;
        }
        int lo = row + 1 < shape.size() ? shape[row + 1] : 0;
        for (int v = shape[row]; v >= lo; --v) {
            if (removed + shape[row] - v > m)
                break;
            inner[row] = v;
            self(self, row + 1, removed + shape[row] - v);
        }
    };
    rec(rec, 0, 0);
    memo[key] = total;
    return total;
}

}  // namespace

long character(const Partition& la, const Partition& rho)
{
    if (size_of(la) != size_of(rho))
        throw std::invalid_argument("character: size mismatch");
    std::vector<int> beta;
    const int l = static_cast<int>(la.size());
    for (int i = 0; i < l; ++i)
        beta.push_back(la[i] + (l - 1 - i));
    return mn_rec(beta, rho, 0);
}

long kostka(const Partition& la, const Partition& mu)
{
    if (size_of(la) != size_of(mu))
        return 0;
    std::map<std::pair<Partition, int>, long> memo;
    return kostka_rec(la, mu, static_cast<int>(mu.size()) - 1, memo);
}

// ---------------------------------------------------------------- SymFunc

LaurentPoly SymFunc::coeff(const Partition& la) const
{
    auto it = coeffs_.find(la);
    return it == coeffs_.end() ? LaurentPoly{} : it->second;
}

void SymFunc::add(const Partition& la, const LaurentPoly& c)
{
    if (size_of(la) != n_)
        throw std::invalid_argument("partition " + cq::to_string(la) + " has the wrong size");
    if (c.is_zero())
        return;
    auto& slot = coeffs_[la];
    slot += c;
    if (slot.is_zero())
        coeffs_.erase(la);
}

SymFunc& SymFunc::operator+=(const SymFunc& o)
{
    if (o.n_ != n_)
        throw std::invalid_argument("degree mismatch");
    for (const auto& [la, c] : o.coeffs_)
        add(la, c);
    return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& o)
{
    if (o.n_ != n_)
        throw std::invalid_argument("degree mismatch");
    for (const auto& [la, c] : o.coeffs_)
        add(la, -c);
    return *this;
}

SymFunc& SymFunc::operator*=(const LaurentPoly& c)
{
    *this = map_coeffs([&](const LaurentPoly& x) { return x * c; });
    return *this;
}

std::string SymFunc::to_string() const
{
    if (coeffs_.empty())
        return "0";
    std::string s;
    // descending lexicographic, s_n first
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        if (!s.empty())
            s += " + ";
        std::string c = it->second.to_string();
        if (c != "1")
            s += "(" + c + ") ";
        s += "s" + cq::to_string(it->first);
    }
    return s;
}

SymFunc basis_element(Basis kind, const Partition& la)
{
    require_partition(la);
    const int n = size_of(la);
    if (n > kMaxBasisDegree)
        throw std::invalid_argument("degree " + std::to_string(n) + " exceeds the supported maximum");
    SymFunc f(n);
    for (const auto& nu : partitions(n)) {
        long c = 0;
        switch (kind) {
        case Basis::Schur: c = nu == la; break;
        case Basis::Homogeneous: c = kostka(nu, la); break;
        case Basis::Elementary: c = kostka(conjugate(nu), la); break;
        case Basis::Power: c = character(nu, la); break;
        }
        f.add(nu, LaurentPoly(c));
    }
    return f;
}

LaurentPoly hall_pair(const SymFunc& f, const SymFunc& g)
{
    if (f.degree() != g.degree())
        throw std::invalid_argument("hall_pair: degree mismatch");
    LaurentPoly s;
    for (const auto& [la, c] : f.coeffs())
        s += c * g.coeff(la);
    return s;
}

SymFunc omega(const SymFunc& f)
{
    SymFunc r(f.degree());
    for (const auto& [la, c] : f.coeffs())
        r.add(conjugate(la), c);
    return r;
}

std::map<Partition, LaurentPoly> to_power_sums(const SymFunc& f)
{
    std::map<Partition, LaurentPoly> out;
    for (const auto& rho : partitions(f.degree())) {
        LaurentPoly c;
        for (const auto& [la, v] : f.coeffs())
            c += v * LaurentPoly(Rational(character(la, rho)));
        c *= Rational(1) / z_factor(rho);
        if (!c.is_zero())
            out.emplace(rho, c);
    }
    return out;
}

namespace {

LaurentPoly one_minus(long eq, long et) { return 1 - LaurentPoly::monomial(0, eq, et); }

LaurentPoly star_weight(const Partition& rho)
{
    const int n = size_of(rho);
    LaurentPoly w(z_factor(rho) * ((n - static_cast<int>(rho.size())) % 2 ? -1 : 1));
    for (int r : rho)
        w *= one_minus(r, 0) * one_minus(0, r);
    return w;
}

}  // namespace

LaurentPoly star_pair(const SymFunc& f, const SymFunc& g)
{
    if (f.degree() != g.degree())
        throw std::invalid_argument("star_pair: degree mismatch");
    auto pf = to_power_sums(f), pg = to_power_sums(g);
    LaurentPoly s;
    for (const auto& [rho, c] : pf) {
        auto it = pg.find(rho);
        if (it != pg.end())
            s += c * it->second * star_weight(rho);
    }
    return s;
}

// ---------------------------------------------------------------- H-tilde

namespace {

struct Cell {
    int row, col;  // 0-based, row 0 is the bottom (French)
    int arm, leg;
};

// Sum over fillings with content nu of q^inv t^maj.
LaurentPoly filling_sum(const Partition& mu, const Partition& nu)
{
    const Partition mc = conjugate(mu);
    std::vector<Cell> cells;  // reading order: top row first, left to right
    for (int r = static_cast<int>(mu.size()) - 1; r >= 0; --r)
        for (int c = 0; c < mu[r]; ++c)
            cells.push_back({r, c, mu[r] - c - 1, mc[c] - r - 1});
    const std::size_t n = cells.size();
    std::vector<std::vector<int>> index(mu.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto& row = index[cells[i].row];
        if (row.size() <= static_cast<std::size_t>(cells[i].col))
            row.resize(cells[i].col + 1);
        row[cells[i].col] = static_cast<int>(i);
    }
    // attacking pairs (i before j in reading order)
    std::vector<std::pair<int, int>> attacks;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Cell &u = cells[i], &v = cells[j];
            if (u.row == v.row || (u.row == v.row + 1 && u.col > v.col))
                attacks.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }

    std::vector<int> word;
    for (std::size_t k = 0; k < nu.size(); ++k)
        word.insert(word.end(), nu[k], static_cast<int>(k) + 1);
    std::map<std::pair<long, long>, long> tally;
    do {
        long inv = 0, maj = 0;
        for (auto [i, j] : attacks)
            inv += word[i] > word[j];
        for (std::size_t i = 0; i < n; ++i) {
            const Cell& u = cells[i];
            if (u.row == 0)
                continue;
            if (word[i] > word[index[u.row - 1][u.col]]) {
                maj += u.leg + 1;
                inv -= u.arm;
            }
        }
        ++tally[{inv, maj}];
    } while (std::next_permutation(word.begin(), word.end()));

    LaurentPoly out;
    for (auto [e, c] : tally)
        out.add_term({{}, HalfInt::of(e.first), HalfInt::of(e.second)}, Rational(c));
    return out;
}

SymFunc compute_htilde(const Partition& mu)
{
    const int n = size_of(mu);
    auto parts = partitions(n);  // decreasing lex, refines dominance
    std::map<Partition, LaurentPoly> mono;
    for (const auto& nu : parts)
        mono[nu] = filling_sum(mu, nu);
    SymFunc h(n);
    std::vector<std::pair<Partition, LaurentPoly>> solved;
    for (const auto& la : parts) {
        LaurentPoly c = mono[la];
        for (const auto& [ka, a] : solved)
            c -= a * LaurentPoly(Rational(kostka(ka, la)));
        solved.emplace_back(la, c);
        h.add(la, c);
    }
    return h;
}

std::mutex memo_mutex;
std::map<Partition, SymFunc> memo;
MacdonaldCache* disk_cache = nullptr;

}  // namespace

void set_macdonald_cache(MacdonaldCache* cache)
{
    std::lock_guard lock(memo_mutex);
    disk_cache = cache;
}

void verify_htilde(const Partition& mu, const SymFunc& h)
{
    const int n = size_of(mu);
    auto fail = [&](const std::string& why) {
        throw std::logic_error("H-tilde" + to_string(mu) + " failed check: " + why);
    };
    if (h.degree() != n)
        fail("degree");
    if (!(h.coeff(Partition{n}) == LaurentPoly(1)))
        fail("<s_n, H> != 1");
    for (const auto& [la, c] : h.coeffs())
        if (!c.all_integer_coeffs() || !c.all_nonneg_coeffs() || c.min_exp('q') < HalfInt{} ||
            c.min_exp('t') < HalfInt{} || c.max_exp('a') != HalfInt{})
            fail("coefficient of s" + to_string(la) + " is not in N[q,t]");
    for (const auto& la : partitions(n))
        if (!(h.coeff(la).at_one('q').at_one('t') == LaurentPoly(hook_count(la))))
            fail("q=t=1 specialization at s" + to_string(la));
}

SymFunc macdonald_Htilde(const Partition& mu)
{
    require_partition(mu);
    const int n = size_of(mu);
    if (n > kMaxMacdonaldDegree)
        throw std::invalid_argument("H-tilde only supported up to degree " + std::to_string(kMaxMacdonaldDegree));
    MacdonaldCache* cache;
    {
        std::lock_guard lock(memo_mutex);
        if (auto it = memo.find(mu); it != memo.end())
            return it->second;
        cache = disk_cache;
    }
    SymFunc h(n);
    bool from_disk = cache && cache->lookup(mu, h);
    if (from_disk) {
        verify_htilde(mu, h);
    } else {
        h = compute_htilde(mu);
        verify_htilde(mu, h);
        if (cache)
            cache->store(mu, h);
    }
    std::lock_guard lock(memo_mutex);
    memo.emplace(mu, h);  // concurrent duplicates compute identical values
    return h;
}

namespace {

// Binomial factors of <H_mu, H_mu>_*, each with positive leading coefficient.
std::vector<LaurentPoly> norm_factors(const Partition& mu, Rational& sign)
{
    std::vector<LaurentPoly> out;
    sign = 1;
    const Partition mc = conjugate(mu);
    for (std::size_t r = 0; r < mu.size(); ++r)
        for (int c = 0; c < mu[r]; ++c) {
            long arm = mu[r] - c - 1, leg = mc[c] - static_cast<long>(r) - 1;
            for (LaurentPoly f : {LaurentPoly::monomial(0, arm, 0) - LaurentPoly::monomial(0, 0, leg + 1),
                                  LaurentPoly::monomial(0, 0, leg) - LaurentPoly::monomial(0, arm + 1, 0)}) {
                if (f.terms().rbegin()->second < 0) {
                    f *= Rational(-1);
                    sign = -sign;
                }
                out.push_back(f);
            }
        }
    return out;
}

}  // namespace

LaurentPoly htilde_star_norm(const Partition& mu)
{
    Rational sign;
    LaurentPoly w(1);
    for (const auto& f : norm_factors(mu, sign))
        w *= f;
    w *= sign;
    return w;
}

LaurentPoly nabla_eigenvalue(const Partition& mu)
{
    return LaurentPoly::monomial(0, n_stat(conjugate(mu)), n_stat(mu));
}

SymFunc nabla_pow(const SymFunc& f, int k)
{
    const int n = f.degree();
    if (n == 0)
        return f;
    auto parts = partitions(n);

    struct Term {
        LaurentPoly num;
        std::vector<LaurentPoly> den;
        SymFunc h;
    };
    std::vector<Term> terms;
    for (const auto& mu : parts) {
        Term term{LaurentPoly{}, {}, macdonald_Htilde(mu)};
        term.num = star_pair(f, term.h);
        if (term.num.is_zero())
            continue;
        LaurentPoly ev = nabla_eigenvalue(mu);
        const auto& [e, c] = *ev.terms().begin();
        term.num = term.num.shifted({e.a, HalfInt{e.q.doubled * k}, HalfInt{e.t.doubled * k}});
        Rational sign;
        for (auto& b : norm_factors(mu, sign)) {
            if (auto quot = divide_exact(term.num, b))
                term.num = *quot;
            else
                term.den.push_back(b);
        }
        term.num *= sign;
        terms.push_back(std::move(term));
    }

    // common denominator: each distinct factor at its largest multiplicity
    std::vector<std::pair<LaurentPoly, int>> common;
    for (const auto& t : terms) {
        std::vector<std::pair<LaurentPoly, int>> local;
        for (const auto& b : t.den) {
            auto it = std::find_if(local.begin(), local.end(), [&](auto& x) { return x.first == b; });
            if (it == local.end())
                local.emplace_back(b, 1);
            else
                ++it->second;
        }
        for (auto& [b, m] : local) {
            auto it = std::find_if(common.begin(), common.end(), [&](auto& x) { return x.first == b; });
            if (it == common.end())
                common.emplace_back(b, m);
            else
                it->second = std::max(it->second, m);
        }
    }

    SymFunc total(n);
    for (auto& t : terms) {
        LaurentPoly scale = t.num;
        for (auto [b, m] : common) {
            int have = static_cast<int>(std::count(t.den.begin(), t.den.end(), b));
            scale *= b.pow(static_cast<unsigned>(m - have));
        }
        total += t.h * scale;
    }
    return total.map_coeffs([&](const LaurentPoly& c) {
        LaurentPoly x = c;
        for (auto [b, m] : common)
            for (int i = 0; i < m; ++i) {
                auto quot = divide_exact(x, b);
                if (!quot)
                    throw std::logic_error("nabla: coefficient not divisible by " + b.to_string());
                x = *quot;
            }
        return x;
    });
}

LaurentPoly psi(const SymFunc& f)
{
    const int n = f.degree();
    LaurentPoly s;
    for (int k = 0; k < n; ++k)
        s += LaurentPoly::monomial(k, 0, 0) * f.coeff(hook(n, k));
    return (1 + LaurentPoly::a()) * s;
}

// ---------------------------------------------------------------- cache

MacdonaldCache::MacdonaldCache(std::filesystem::path path) : path_(std::move(path))
{
    std::ifstream in(path_);
    if (!in)
        return;
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception&) {
        return;  // unreadable cache is treated as empty and rewritten on the next store
    }
    if (doc.value("version", 0) == kVersion && doc.contains("entries") && doc["entries"].is_object())
        entries_ = doc["entries"];
}

std::string MacdonaldCache::key(const Partition& mu) { return std::to_string(size_of(mu)) + ":" + to_string(mu); }

std::size_t MacdonaldCache::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<std::string> MacdonaldCache::keys() const
{
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (auto it = entries_.begin(); it != entries_.end(); ++it)
        out.push_back(it.key());
    return out;
}

bool MacdonaldCache::lookup(const Partition& mu, SymFunc& out) const
{
    std::lock_guard lock(mutex_);
    auto it = entries_.find(key(mu));
    if (it == entries_.end())
        return false;
    SymFunc h(size_of(mu));
    for (auto c = it->begin(); c != it->end(); ++c)
        h.add(nlohmann::json::parse(c.key()).get<Partition>(), poly_from_json(c.value()));
    out = h;
    return true;
}

void MacdonaldCache::store(const Partition& mu, const SymFunc& h)
{
    std::lock_guard lock(mutex_);
    nlohmann::json e = nlohmann::json::object();
    for (const auto& [la, c] : h.coeffs())
        e[nlohmann::json(la).dump()] = to_json(c);
    entries_[key(mu)] = e;
    flush_locked();
}

void MacdonaldCache::clear()
{
    std::lock_guard lock(mutex_);
    entries_ = nlohmann::json::object();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

void MacdonaldCache::flush_locked() const
{
    if (path_.has_parent_path())
        std::filesystem::create_directories(path_.parent_path());
    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        out << nlohmann::json{{"version", kVersion}, {"entries", entries_}}.dump();
    }
    std::filesystem::rename(tmp, path_);
}

}  // namespace cq
