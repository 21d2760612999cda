#pragma once

#include "cq/exactpoly.hpp"

#include <nlohmann/json.hpp>

#include <utility>
#include <vector>

namespace cq {

struct GermParams {
    long n = 1, d = 1;

    GermParams() = default;
    GermParams(long n_, long d_);

    long g() const;
    long branches() const { return g(); }
    long delta() const { return (n * d - n - d + g()) / 2; }
    bool coprime() const { return g() == 1; }
    void require_coprime(const char* what) const;
    bool operator==(const GermParams&) const = default;
};

enum class Ambient { S, R };

struct AmbientModule {
    Ambient kind = Ambient::S;
    std::vector<long> minvec;

    static AmbientModule make(const GermParams& p, Ambient kind);
    bool contains(long k) const;  // k in Gamma(E)
};

// A subset of Z>=0 stable under +n and +d, stored by its least element per residue class.
class GammaModule {
public:
    GammaModule(const GermParams& p, Ambient kind, std::vector<long> genvec);
    static GammaModule ambient_module(const GermParams& p, Ambient kind);

    const GermParams& params() const { return params_; }
    const AmbientModule& ambient() const { return ambient_; }
    const std::vector<long>& genvec() const { return genvec_; }

    bool contains(long k) const;
    long codim() const;
    long min() const;
    long max_gen() const;
    GammaModule shifted(long j) const;

    bool operator==(const GammaModule& o) const { return params_ == o.params_ && genvec_ == o.genvec_ && ambient_.kind == o.ambient_.kind; }
    bool operator<(const GammaModule& o) const { return genvec_ < o.genvec_; }

    // Listed by class: "Δ_{5,0,4}".
    std::string label() const;

private:
    GermParams params_;
    AmbientModule ambient_;
    std::vector<long> genvec_;
};

std::vector<GammaModule> enumerate_modules(const GermParams& p, Ambient kind, long ell);
// Modules of Z>=0 containing 0 (every module is a shift of exactly one of these).
std::vector<GammaModule> fundamental_domain(const GermParams& p);

std::vector<long> generators(const GammaModule& m);
std::vector<long> cogenerators(const GammaModule& m);
std::vector<long> syzygies(const GammaModule& m);

// |Gamma(E)_{>x} \ m|
long gaps_above(const GammaModule& m, long x);
long cell_dim(const GammaModule& m);

long xi_count(const GammaModule& m, long k);
long lambda_count(const GammaModule& m, long k);

// prod over Gen of (1 + a t^xi)
LaurentPoly pi_gen(const GammaModule& m);
// prod over Cogen of (1 + a q^-1 t^lambda)
LaurentPoly pi_cogen(const GammaModule& m);

std::vector<GammaModule> nested_pairs(const GammaModule& m, long count);
long nested_dim(const GammaModule& outer, const GammaModule& inner);

std::pair<GammaModule, long> shift_normalize(const GammaModule& m);

nlohmann::json to_json(const GammaModule& m);
GammaModule module_from_json(const nlohmann::json& j);

}  // namespace cq
