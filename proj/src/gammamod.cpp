#include "cq/gammamod.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cq {

namespace {

long mod(long x, long n) { return ((x % n) + n) % n; }

}  // namespace

GermParams::GermParams(long n_, long d_) : n(n_), d(d_)
{
    if (n <= 0 || d <= 0)
        throw std::invalid_argument("n and d must be positive");
}

long GermParams::g() const { return std::gcd(n, d); }

void GermParams::require_coprime(const char* what) const
{
    if (!coprime())
        throw std::invalid_argument(std::string(what) + " requires coprime (n,d), got (" +
                                    std::to_string(n) + "," + std::to_string(d) + ")");
}

AmbientModule AmbientModule::make(const GermParams& p, Ambient kind)
{
    AmbientModule a;
    a.kind = kind;
    a.minvec.resize(p.n);
    if (kind == Ambient::S) {
        std::iota(a.minvec.begin(), a.minvec.end(), 0L);
        return a;
    }
    p.require_coprime("ambient module R");
    for (long j = 0; j < p.n; ++j)
        a.minvec[mod(j * p.d, p.n)] = j * p.d;
    return a;
}

bool AmbientModule::contains(long k) const
{
    if (k < 0)
        return false;
    return k >= minvec[mod(k, static_cast<long>(minvec.size()))];
}

GammaModule::GammaModule(const GermParams& p, Ambient kind, std::vector<long> genvec)
    : params_(p), ambient_(AmbientModule::make(p, kind)), genvec_(std::move(genvec))
{
    const long n = p.n, d = p.d;
    if (static_cast<long>(genvec_.size()) != n)
        throw std::invalid_argument("genvec must have length n");
    for (long i = 0; i < n; ++i) {
        if (mod(genvec_[i], n) != i || genvec_[i] < ambient_.minvec[i])
            throw std::invalid_argument("genvec entry " + std::to_string(i) + " is not in the ambient class");
        if (genvec_[mod(i + d, n)] > genvec_[i] + d)
            throw std::invalid_argument("genvec is not closed under +d");
    }
}

GammaModule GammaModule::ambient_module(const GermParams& p, Ambient kind)
{
    return GammaModule(p, kind, AmbientModule::make(p, kind).minvec);
}

bool GammaModule::contains(long k) const
{
    return k >= 0 && k >= genvec_[mod(k, params_.n)];
}

long GammaModule::codim() const
{
    long s = 0;
    for (long i = 0; i < params_.n; ++i)
        s += (genvec_[i] - ambient_.minvec[i]) / params_.n;
    return s;
}

long GammaModule::min() const { return *std::min_element(genvec_.begin(), genvec_.end()); }

long GammaModule::max_gen() const { return *std::max_element(genvec_.begin(), genvec_.end()); }

GammaModule GammaModule::shifted(long j) const
{
    std::vector<long> g(params_.n);
    for (long i = 0; i < params_.n; ++i)
        g[mod(genvec_[i] + j, params_.n)] = genvec_[i] + j;
    return GammaModule(params_, ambient_.kind, std::move(g));
}

std::string GammaModule::label() const
{
    // Entries are listed starting from the class that a shift into codim delta makes residue 0.
    const long n = params_.n;
    long offset = ambient_.kind == Ambient::S ? codim() - params_.delta() : 0;
    std::string s = "Δ_{";
    for (long i = 0; i < n; ++i) {
        if (i)
            s += ',';
        s += std::to_string(genvec_[mod(i + offset, n)]);
    }
    return s + "}";
}

std::vector<GammaModule> enumerate_modules(const GermParams& p, Ambient kind, long ell)
{
    if (ell < 0)
        throw std::invalid_argument("codimension must be nonnegative");
    if (kind == Ambient::R)
        p.require_coprime("enumeration over R");
    const long n = p.n, d = p.d;
    const AmbientModule amb = AmbientModule::make(p, kind);
    std::vector<GammaModule> out;
    std::vector<long> g(n, -1);

    // Closure test for the pair (i, i+d) once both are assigned.
    auto closed_at = [&](long i) {
        long j = mod(i + d, n), h = mod(i - d, n);
        if (g[j] >= 0 && g[j] > g[i] + d)
            return false;
        if (g[h] >= 0 && g[i] > g[h] + d)
            return false;
        return true;
    };

    auto dfs = [&](auto&& self, long i, long budget) -> void {
        if (i == n - 1) {
            g[i] = amb.minvec[i] + n * budget;
            if (closed_at(i))
                out.emplace_back(p, kind, g);
            g[i] = -1;
            return;
        }
        for (long c = 0; c <= budget; ++c) {
            g[i] = amb.minvec[i] + n * c;
            if (closed_at(i))
                self(self, i + 1, budget - c);
        }
        g[i] = -1;
    };
    dfs(dfs, 0, ell);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<GammaModule> fundamental_domain(const GermParams& p)
{
    p.require_coprime("fundamental domain");
    // 0 in Δ forces Γ(R) ⊆ Δ, so codim is at most δ.
    std::vector<GammaModule> out;
    for (long ell = 0; ell <= p.delta(); ++ell)
        for (auto& m : enumerate_modules(p, Ambient::S, ell))
            if (m.genvec()[0] == 0)
                out.push_back(std::move(m));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> generators(const GammaModule& m)
{
    std::vector<long> out;
    for (long x : m.genvec())
        if (!m.contains(x - m.params().d))
            out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> cogenerators(const GammaModule& m)
{
    const long n = m.params().n, d = m.params().d;
    std::vector<long> out;
    for (long x : m.genvec()) {
        long k = x - n;
        if (k >= 0 && m.contains(k + d))
            out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> syzygies(const GammaModule& m)
{
    const long n = m.params().n, d = m.params().d;
    m.params().require_coprime("syzygies");
    // Degrees where the +n and +d chains from two generators first meet:
    // k, k-n, k-d in Δ but k-n-d not. These are the -1 terms of (1-x^n)(1-x^d)·H_Δ(x).
    std::vector<long> out;
    for (long k = 0; k <= m.max_gen() + n + d; ++k)
        if (m.contains(k) && m.contains(k - n) && m.contains(k - d) && !m.contains(k - n - d))
            out.push_back(k);
    return out;
}

long gaps_above(const GammaModule& m, long x)
{
    long count = 0;
    for (long k = std::max(x + 1, 0L); k < m.max_gen(); ++k)
        if (m.ambient().contains(k) && !m.contains(k))
            ++count;
    return count;
}

long cell_dim(const GammaModule& m)
{
    long dim = 0;
    for (long g : generators(m))
        dim += gaps_above(m, g);
    for (long s : syzygies(m))
        dim -= gaps_above(m, s);
    if (dim < 0)
        throw std::logic_error("negative cell dimension for " + m.label());
    return dim;
}

long xi_count(const GammaModule& m, long k)
{
    auto gens = generators(m);
    if (!std::binary_search(gens.begin(), gens.end(), k))
        throw std::invalid_argument(std::to_string(k) + " is not a generator of " + m.label());
    const long d = m.params().d;
    return std::count_if(m.genvec().begin(), m.genvec().end(), [&](long j) { return k - d < j && j < k; });
}

long lambda_count(const GammaModule& m, long k)
{
    auto cogens = cogenerators(m);
    if (!std::binary_search(cogens.begin(), cogens.end(), k))
        throw std::invalid_argument(std::to_string(k) + " is not a cogenerator of " + m.label());
    const long n = m.params().n, d = m.params().d;
    return std::count_if(m.genvec().begin(), m.genvec().end(),
                         [&](long j) { return k + n < j && j < k + n + d; });
}

LaurentPoly pi_gen(const GammaModule& m)
{
    LaurentPoly prod(1);
    for (long k : generators(m))
        prod *= 1 + LaurentPoly::monomial(1, 0, xi_count(m, k));
    return prod;
}

LaurentPoly pi_cogen(const GammaModule& m)
{
    LaurentPoly prod(1);
    for (long k : cogenerators(m))
        prod *= 1 + LaurentPoly::monomial(1, -1, lambda_count(m, k));
    return prod;
}

std::vector<GammaModule> nested_pairs(const GammaModule& m, long count)
{
    const long n = m.params().n;
    if (count < 0 || count > n)
        throw std::invalid_argument("nested pair size must lie in [0, n]");
    // Δ' sits between Δ + {n, d} and Δ: drop a subset of the generators.
    auto gens = generators(m);
    std::vector<GammaModule> out;
    const std::size_t r = gens.size();
    for (unsigned long mask = 0; mask < (1UL << r); ++mask) {
        if (__builtin_popcountl(mask) != count)
            continue;
        std::vector<long> g = m.genvec();
        for (std::size_t i = 0; i < r; ++i)
            if (mask >> i & 1)
                g[mod(gens[i], n)] += n;
        out.emplace_back(m.params(), m.ambient().kind, std::move(g));
    }
    std::sort(out.begin(), out.end());
    return out;
}

long nested_dim(const GammaModule& outer, const GammaModule& inner)
{
    const long n = outer.params().n, d = outer.params().d;
    if (!(outer.params() == inner.params()) || outer.ambient().kind != inner.ambient().kind)
        throw std::invalid_argument("nested_dim: modules live over different data");
    for (long i = 0; i < n; ++i) {
        long x = outer.genvec()[i], y = inner.genvec()[i];
        bool ok = y >= x && (y == x || (y == x + n && !outer.contains(x - n) && !outer.contains(x - d)));
        if (!ok)
            throw std::invalid_argument("nested_dim: " + inner.label() + " is not nested in " + outer.label());
    }
    long dim = 0;
    for (long g : generators(outer))
        dim += inner.contains(g) ? gaps_above(inner, g) : gaps_above(outer, g);
    for (long s : syzygies(outer))
        dim -= gaps_above(inner, s);
    if (dim < 0)
        throw std::logic_error("negative nested cell dimension");
    return dim;
}

std::pair<GammaModule, long> shift_normalize(const GammaModule& m)
{
    if (m.ambient().kind != Ambient::S)
        throw std::invalid_argument("shift_normalize works over Z>=0");
    long j = m.min();
    return {m.shifted(-j), j};
}

nlohmann::json to_json(const GammaModule& m)
{
    return {{"n", m.params().n},
            {"d", m.params().d},
            {"ambient", m.ambient().kind == Ambient::S ? "S" : "R"},
            {"genvec", m.genvec()}};
}

GammaModule module_from_json(const nlohmann::json& j)
{
    std::string amb = j.at("ambient").get<std::string>();
    if (amb != "S" && amb != "R")
        throw std::invalid_argument("ambient must be S or R");
    return GammaModule(GermParams(j.at("n").get<long>(), j.at("d").get<long>()),
                       amb == "S" ? Ambient::S : Ambient::R, j.at("genvec").get<std::vector<long>>());
}

}  // namespace cq
