#pragma once

#include "cq/exactpoly.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace cq {

using Partition = std::vector<int>;

std::vector<Partition> partitions(int n);  // lexicographically decreasing
Partition conjugate(const Partition& la);
long n_stat(const Partition& la);  // sum (i-1) la_i
Rational z_factor(const Partition& la);
long hook_count(const Partition& la);  // number of standard tableaux
std::string to_string(const Partition& la);
Partition hook(int n, int k);  // (n-k, 1^k)

// Character value chi^la at cycle type rho, by Murnaghan-Nakayama.
long character(const Partition& la, const Partition& rho);
// Number of semistandard tableaux of shape la and content mu.
long kostka(const Partition& la, const Partition& mu);

// Degree-n symmetric function in Schur coordinates.
class SymFunc {
public:
    explicit SymFunc(int n = 0) : n_(n) {}

    int degree() const { return n_; }
    const std::map<Partition, LaurentPoly>& coeffs() const { return coeffs_; }
    LaurentPoly coeff(const Partition& la) const;
    void add(const Partition& la, const LaurentPoly& c);

    SymFunc& operator+=(const SymFunc& o);
    SymFunc& operator-=(const SymFunc& o);
    SymFunc& operator*=(const LaurentPoly& c);
    friend SymFunc operator+(SymFunc x, const SymFunc& y) { return x += y; }
    friend SymFunc operator-(SymFunc x, const SymFunc& y) { return x -= y; }
    friend SymFunc operator*(SymFunc x, const LaurentPoly& c) { return x *= c; }
    friend bool operator==(const SymFunc& x, const SymFunc& y) { return x.n_ == y.n_ && x.coeffs_ == y.coeffs_; }

    // apply a map to every coefficient
    template <class F>
    SymFunc map_coeffs(F&& f) const
    {
        SymFunc r(n_);
        for (const auto& [la, c] : coeffs_)
            r.add(la, f(c));
        return r;
    }

    std::string to_string() const;

private:
    int n_;
    std::map<Partition, LaurentPoly> coeffs_;
};

enum class Basis { Schur, Homogeneous, Elementary, Power };
constexpr int kMaxBasisDegree = 8;
constexpr int kMaxMacdonaldDegree = 6;

SymFunc basis_element(Basis kind, const Partition& la);
LaurentPoly hall_pair(const SymFunc& f, const SymFunc& g);
SymFunc omega(const SymFunc& f);

// Coefficients in the power-sum basis: f = sum_rho c_rho p_rho.
std::map<Partition, LaurentPoly> to_power_sums(const SymFunc& f);
// <p_rho, p_sigma>_* = delta (-1)^{n - l(rho)} z_rho prod (1 - q^rho_i)(1 - t^rho_i)
LaurentPoly star_pair(const SymFunc& f, const SymFunc& g);

// Modified Macdonald polynomial, computed from the inversion/major-index
// filling formula and converted to Schur coordinates.
SymFunc macdonald_Htilde(const Partition& mu);
// Expected <H_mu, H_mu>_* as a product of binomials.
LaurentPoly htilde_star_norm(const Partition& mu);
// Cheap consistency checks run before anything is cached; throws on failure.
void verify_htilde(const Partition& mu, const SymFunc& h);

// nabla eigenvalue t^{n(mu)} q^{n(mu')}
LaurentPoly nabla_eigenvalue(const Partition& mu);
SymFunc nabla_pow(const SymFunc& f, int k);

// (1 + a) sum_k a^k <s_{(n-k,1^k)}, f>
LaurentPoly psi(const SymFunc& f);

// Disk cache of H-tilde Schur coefficients. Reads once, writes atomically.
class MacdonaldCache {
public:
    static constexpr int kVersion = 1;

    explicit MacdonaldCache(std::filesystem::path path);

    const std::filesystem::path& path() const { return path_; }
    std::size_t size() const;
    std::vector<std::string> keys() const;
    bool lookup(const Partition& mu, SymFunc& out) const;
    void store(const Partition& mu, const SymFunc& h);
    void clear();
    static std::string key(const Partition& mu);

private:
    void flush_locked() const;

    std::filesystem::path path_;
    mutable std::mutex mutex_;
    nlohmann::json entries_ = nlohmann::json::object();
};

// Optional persistent cache consulted by macdonald_Htilde (in-memory memo always on).
void set_macdonald_cache(MacdonaldCache* cache);

}  // namespace cq
