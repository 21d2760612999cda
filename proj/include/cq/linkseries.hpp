#pragma once

#include "cq/exactpoly.hpp"
#include "cq/gammamod.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cq {

// PsiRaw: t^2-graded, the form produced by the module sums.
// Xbar: t-graded (t^2 -> t). OrsUnreduced / OrsReduced: link-homology normalizations.
enum class Convention { PsiRaw, Xbar, OrsUnreduced, OrsReduced };
std::string to_string(Convention c);

struct KhrSeries {
    GermParams params;
    QSeries value;
    Convention convention = Convention::PsiRaw;
};

// Throws std::logic_error unless every coefficient is a nonnegative integer.
void require_positive(const KhrSeries& s, const std::string& what);

// Sum over I^l(S), l <= qmax. Also assembled from the fundamental domain; the two must agree.
KhrSeries psi_quot_series(const GermParams& p, long qmax, unsigned parallelism = 0);
KhrSeries psi_quot_series_from_domain(const GermParams& p, long qmax);
// Sum over I^l(R), l <= qmax.
KhrSeries psi_hilb_series(const GermParams& p, long qmax, unsigned parallelism = 0);
// Sum over the fundamental domain by codimension (a finite sum).
KhrSeries pic_series(const GermParams& p, long qmax);
// (1+a)/(1-q) sum_D q^area t^dim Pi^Cogen(a q^-1, t), in Xbar form.
KhrSeries cogen_series(const GermParams& p, long qmax);
// sum_D q^area t^dim Pi^Gen(a,t) and sum_D q^area t^dim Pi^Cogen(a q^-1, t)
LaurentPoly gen_sum(const GermParams& p);
LaurentPoly cogen_sum(const GermParams& p);

// Xbar_{n,nk} from nabla^k p_{1^n}, in the pinned normalization:
// t^delta * Psi(omega nabla^k p_{1^n})|_{t -> 1/t} / (1-q)^n.
KhrSeries khr_nabla(long n, long k, long qmax);
// Psi(nabla^k p_{1^n}) / (1-q)^n with no further normalization; kept for comparison.
KhrSeries khr_nabla_bare(long n, long k, long qmax);

enum class Side { Hilb, Quot };
KhrSeries asymptotic_series(Side side, long n, long qmax);

// t^delta * sum_D q^area t^{-dim}
LaurentPoly catalan_poly(const GermParams& p);

// Xbar <-> PsiRaw, Xbar/PsiRaw -> Ors*, OrsReduced <-> OrsUnreduced.
KhrSeries convert(const KhrSeries& s, Convention target);
// Same, validating the link metadata: e = (n-1)d, b = gcd(n,d).
KhrSeries convert(const KhrSeries& s, Convention target, long e, long n, long b);

struct GenCogenRow {
    GammaModule module;
    long area, dim;
    std::vector<long> gens;  // Gen \ {0}
    LaurentPoly pi_gen_reduced;  // Pi^Gen / (1+a)
    std::vector<long> cogens;
    LaurentPoly pi_cogen_b;  // Pi^Cogen in the variable b (printed as a)
};
std::vector<GenCogenRow> gen_cogen_table(const GermParams& p);
nlohmann::json to_json(const GenCogenRow& r);

enum class CheckStatus { Pass, Fail, ConjecturalPass, ConjecturalFail };
std::string to_string(CheckStatus s);

struct CheckReport {
    std::string check;
    long n = 0, d = 0, qmax = 0;
    CheckStatus status = CheckStatus::Pass;
    std::optional<Discrepancy> first_discrepancy;
    std::string note;

    bool ok() const { return status == CheckStatus::Pass || status == CheckStatus::ConjecturalPass; }
};
nlohmann::json to_json(const CheckReport& r);

long default_qmax(const GermParams& p, bool symmetry_check);

// Hilb(q,t) against Quot(q, q^{1/2} t); theorem for n <= 3, conjectural otherwise.
CheckReport check_hilb_vs_quot(const GermParams& p, long qmax, unsigned parallelism = 0);
CheckReport check_gen_vs_cogen(const GermParams& p);
CheckReport check_catalan_symmetry(const GermParams& p);
// Node y^2 = x^2 and cusp y^2 = x^3 from their printed motivic classes.
CheckReport check_node_example(long qmax);
CheckReport check_cusp_example(long qmax);
CheckReport check_a0_symmetry(const GermParams& p, long qmax);
// Hilb and Quot against their d -> infinity products in q-degrees <= d - 1.
// Quot is compared after t^2 -> q t^2 (its limit is only (q,t)-adic).
CheckReport check_asymptotic(const GermParams& p, Side side);
// khr_nabla against the three reference series.
CheckReport check_nabla_targets(long qmax);

// Reference series used by the checks.
QSeries nabla_target(long n, long k, long qmax);

}  // namespace cq
