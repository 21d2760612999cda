#pragma once

#include "cq/gammamod.hpp"

#include <string>
#include <vector>

namespace cq {

// Integer n-vector with zero sum.
struct Cocharacter {
    std::vector<long> mu;

    explicit Cocharacter(std::vector<long> v);
    long n() const { return static_cast<long>(mu.size()); }
    bool operator==(const Cocharacter&) const = default;
    std::string to_string() const;
};

std::vector<long> a_stat(const Cocharacter& mu);
Cocharacter a_stat_inverse(const std::vector<long>& a);
Cocharacter iota(const Cocharacter& mu);

// (n*mu_i + n - i) for i = 1..n
std::vector<long> shifted_weights(const Cocharacter& mu);

struct NotInDomain : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
// Throws NotInDomain when the generator set is not a module of codimension delta.
GammaModule mu_to_delta(const Cocharacter& mu, const GermParams& p);
bool in_domain(const Cocharacter& mu, const GermParams& p);
std::vector<Cocharacter> valid_cocharacters(const GermParams& p);

long gap_stat(const GammaModule& m);
GammaModule gm_dual(const GammaModule& m);

struct HikitaRow {
    Cocharacter mu;
    std::vector<long> a;
    long a_size;
    std::vector<long> weights;
    GammaModule module;
    long min;
};
std::vector<HikitaRow> hikita_table(const GermParams& p);
nlohmann::json to_json(const HikitaRow& row);

}  // namespace cq
