#include "cq/linkseries.hpp"

#include "cq/symfunc.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace cq {

namespace {

const LaurentPoly A = LaurentPoly::a(), Q = LaurentPoly::q(), T = LaurentPoly::t();

LaurentPoly mono(long ea, long eq, long et) { return LaurentPoly::monomial(ea, eq, et); }

Substitution t_power(HalfInt e)
{
    Substitution s;
    s.t = {1, {{}, {}, e}};
    return s;
}

const Substitution t_squared = t_power(HalfInt::of(2));
const Substitution t_root = t_power(HalfInt::half(1));

template <class F>
QSeries map_series(const QSeries& s, F&& f)
{
    QSeries out(s.trunc());
    for (const auto& [e, c] : s.coeffs())
        out.add_coeff(e, f(c));
    return out;
}

QSeries at_a_zero(const QSeries& s)
{
    return map_series(s, [](const LaurentPoly& c) { return c.at_zero('a'); });
}

// s / (1 - q^step)
QSeries divide_one_minus(const QSeries& s, HalfInt step)
{
    QSeries out(s.trunc());
    if (s.is_zero())
        return out;
    std::map<HalfInt, LaurentPoly> acc;
    for (HalfInt x = s.coeffs().begin()->first; x <= s.trunc(); x += HalfInt::half(1)) {
        LaurentPoly c = s.coeff(x);
        if (auto it = acc.find(x - step); it != acc.end())
            c += it->second;
        if (!c.is_zero()) {
            acc[x] = c;
            out.add_coeff(x, c);
        }
    }
    return out;
}

QSeries divide_coeffs(const QSeries& s, const LaurentPoly& den)
{
    return map_series(s, [&](const LaurentPoly& c) {
        auto r = divide_exact(c, den);
        if (!r)
            throw std::logic_error("series coefficient " + c.to_string() + " not divisible by " + den.to_string());
        return *r;
    });
}

unsigned worker_count(unsigned parallelism, std::size_t jobs)
{
    unsigned n = parallelism ? parallelism : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

// Module contribution t^{2 dim} Pi^Gen(a, t^2).
LaurentPoly psi_term(const GammaModule& m)
{
    return mono(0, 0, 2 * cell_dim(m)) * substitute(pi_gen(m), t_squared);
}

// Sum of psi_term over I^l(E), one q-degree per job; jobs are summed in order.
KhrSeries module_sum(const GermParams& p, Ambient kind, long qmax, unsigned parallelism)
{
    p.require_coprime("module series");
    if (qmax < 0)
        throw std::invalid_argument("qmax must be nonnegative");
    std::vector<LaurentPoly> by_degree(qmax + 1);
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (long ell; (ell = next++) <= qmax;) {
            try {
                LaurentPoly c;
                for (const auto& m : enumerate_modules(p, kind, ell))
                    c += psi_term(m);
                by_degree[ell] = c;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                error = std::current_exception();
            }
        }
    };
    unsigned workers = worker_count(parallelism, by_degree.size());
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(work);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
    QSeries s(HalfInt::of(qmax));
    for (long ell = 0; ell <= qmax; ++ell)
        s.add_coeff(HalfInt::of(ell), by_degree[ell]);
    KhrSeries out{p, s, Convention::PsiRaw};
    require_positive(out, "module series");
    return out;
}

LaurentPoly prefactor(long power) { return mono(power, -power, 0); }  // (a q^-1)^power

CheckReport make_report(std::string check, const GermParams& p, long qmax)
{
    CheckReport r;
    r.check = std::move(check);
    r.n = p.n;
    r.d = p.d;
    r.qmax = qmax;
    return r;
}

// Records the first discrepancy (if any) and sets the status.
void compare_into(CheckReport& r, const QSeries& lhs, const QSeries& rhs, HalfInt order, bool conjectural,
                  const std::string& what)
{
    if (r.first_discrepancy)
        return;
    auto disc = first_discrepancy(lhs, rhs, order);
    if (disc) {
        r.first_discrepancy = disc;
        r.status = conjectural ? CheckStatus::ConjecturalFail : CheckStatus::Fail;
        r.note = what;
    } else {
        r.status = conjectural ? CheckStatus::ConjecturalPass : CheckStatus::Pass;
    }
}

void compare_polys_into(CheckReport& r, const LaurentPoly& lhs, const LaurentPoly& rhs, const std::string& what)
{
    if (r.first_discrepancy)
        return;
    if (lhs == rhs) {
        r.status = CheckStatus::Pass;
        return;
    }
    // report the lowest q-degree that differs
    LaurentPoly diff = lhs - rhs;
    HalfInt e = diff.min_exp('q');
    r.first_discrepancy = Discrepancy{e, lhs.coeff_of('q', e), rhs.coeff_of('q', e)};
    r.status = CheckStatus::Fail;
    r.note = what;
}

QSeries geometric(const LaurentPoly& ratio_t, long step, long qmax)
{
    // sum_j (q^step ratio_t)^j up to q^qmax
    LaurentPoly s, term = 1;
    for (long j = 0; j * step <= qmax; ++j) {
        s += term.shifted({{}, HalfInt::of(j * step), {}});
        term *= ratio_t;
    }
    return QSeries::from_poly(s, HalfInt::of(qmax));
}

}  // namespace

std::string to_string(Convention c)
{
    switch (c) {
    case Convention::PsiRaw: return "psi-raw";
    case Convention::Xbar: return "xbar";
    case Convention::OrsUnreduced: return "ors-unreduced";
    case Convention::OrsReduced: return "ors-reduced";
    }
    return "?";
}

void require_positive(const KhrSeries& s, const std::string& what)
{
    if (!s.value.all_integer_coeffs())
        throw std::logic_error(what + ": non-integer coefficient in " + s.value.to_string());
    if (!s.value.all_nonneg_coeffs())
        throw std::logic_error(what + ": negative coefficient in " + s.value.to_string());
}

KhrSeries psi_quot_series(const GermParams& p, long qmax, unsigned parallelism)
{
    KhrSeries direct = module_sum(p, Ambient::S, qmax, parallelism);
    KhrSeries viaD = psi_quot_series_from_domain(p, qmax);
    if (!(direct.value == viaD.value))
        throw std::logic_error("quot series: module enumeration and fundamental-domain sums differ");
    return direct;
}

KhrSeries psi_quot_series_from_domain(const GermParams& p, long qmax)
{
    p.require_coprime("quot series");
    LaurentPoly sum;
    for (const auto& m : fundamental_domain(p))
        sum += mono(0, m.codim(), 0) * psi_term(m);
    QSeries s = series_div_geometric(QSeries::from_poly(sum, HalfInt::of(qmax)), 1);
    return {p, s, Convention::PsiRaw};
}

KhrSeries psi_hilb_series(const GermParams& p, long qmax, unsigned parallelism)
{
    return module_sum(p, Ambient::R, qmax, parallelism);
}

KhrSeries pic_series(const GermParams& p, long qmax)
{
    p.require_coprime("pic series");
    LaurentPoly sum;
    for (const auto& m : fundamental_domain(p))
        sum += mono(0, m.codim(), 0) * psi_term(m);
    KhrSeries out{p, QSeries::from_poly(sum, HalfInt::of(qmax)), Convention::PsiRaw};
    require_positive(out, "pic series");
    return out;
}

LaurentPoly gen_sum(const GermParams& p)
{
    p.require_coprime("gen sum");
    LaurentPoly s;
    for (const auto& m : fundamental_domain(p))
        s += mono(0, m.codim(), cell_dim(m)) * pi_gen(m);
    return s;
}

LaurentPoly cogen_sum(const GermParams& p)
{
    p.require_coprime("cogen sum");
    LaurentPoly s;
    for (const auto& m : fundamental_domain(p))
        s += mono(0, m.codim(), cell_dim(m)) * pi_cogen(m);
    return s;
}

KhrSeries cogen_series(const GermParams& p, long qmax)
{
    LaurentPoly num = (1 + A) * cogen_sum(p);
    if (num.min_exp('q') < HalfInt{})
        throw std::logic_error("cogen series: negative q-powers did not cancel");
    KhrSeries out{p, series_div_geometric(QSeries::from_poly(num, HalfInt::of(qmax)), 1), Convention::Xbar};
    require_positive(out, "cogen series");
    return out;
}

namespace {

void require_nabla_range(long n, long k)
{
    if (n < 1 || n > 5)
        throw std::invalid_argument("khr_nabla supports 1 <= n <= 5");
    if (k < 1)
        throw std::invalid_argument("khr_nabla needs k >= 1");
}

SymFunc nabla_p1n(long n, long k)
{
    return nabla_pow(basis_element(Basis::Power, Partition(n, 1)), static_cast<int>(k));
}

}  // namespace

KhrSeries khr_nabla(long n, long k, long qmax)
{
    require_nabla_range(n, k);
    GermParams p(n, n * k);
    LaurentPoly num = psi(omega(nabla_p1n(n, k)));
    num = substitute(num, t_power(HalfInt::of(-1))).shifted({{}, {}, HalfInt::of(p.delta())});
    if (num.min_exp('t') < HalfInt{} || num.min_exp('q') < HalfInt{})
        throw std::logic_error("khr_nabla: numerator is not a polynomial: " + num.to_string());
    KhrSeries out{p, series_div_geometric(QSeries::from_poly(num, HalfInt::of(qmax)), static_cast<int>(n)),
                  Convention::Xbar};
    require_positive(out, "khr_nabla");
    return out;
}

KhrSeries khr_nabla_bare(long n, long k, long qmax)
{
    require_nabla_range(n, k);
    LaurentPoly num = psi(nabla_p1n(n, k));
    return {GermParams(n, n * k), series_div_geometric(QSeries::from_poly(num, HalfInt::of(qmax)), static_cast<int>(n)),
            Convention::Xbar};
}

QSeries nabla_target(long n, long k, long qmax)
{
    const HalfInt tr = HalfInt::of(qmax);
    auto over = [&](const LaurentPoly& num, int power) {
        return series_div_geometric(QSeries::from_poly(num, tr), power);
    };
    if (n == 2 && k == 1)
        return over((1 + A) * (1 - Q + Q * T + A * T), 2);
    if (n == 2 && k == 2)
        return over(1 + Q * (T - 1) + Q * Q * (T * T - T), 2);
    if (n == 3 && k == 1)
        return over(1 + Q * T, 1) + over(Q * T * T + 2 * Q * Q * T * T, 2) + over(Q.pow(3) * T.pow(3), 3);
    throw std::invalid_argument("no reference series for this (n,k)");
}

CheckReport check_nabla_targets(long qmax)
{
    CheckReport r = make_report("nabla_targets", GermParams(2, 2), qmax);
    // the two later references are printed at a = 0 only
    compare_into(r, khr_nabla(2, 1, qmax).value, nabla_target(2, 1, qmax), HalfInt::of(qmax), false, "X(2,2)");
    compare_into(r, at_a_zero(khr_nabla(2, 2, qmax).value), nabla_target(2, 2, qmax), HalfInt::of(qmax), false,
                 "X(2,4) at a=0");
    compare_into(r, at_a_zero(khr_nabla(3, 1, qmax).value), nabla_target(3, 1, qmax), HalfInt::of(qmax), false,
                 "X(3,3) at a=0");
    return r;
}

KhrSeries asymptotic_series(Side side, long n, long qmax)
{
    if (n < 1)
        throw std::invalid_argument("asymptotic series needs n >= 1");
    QSeries s = QSeries::from_poly(1, HalfInt::of(qmax));
    for (long k = 1; k <= n; ++k) {
        LaurentPoly t2k = mono(0, 0, 2 * k - 2);
        if (side == Side::Hilb) {
            s = s * (1 + A * mono(0, k - 1, 0) * t2k);
            s = s * geometric(t2k, k, qmax);
        } else {
            s = s * (1 + A * t2k);
            s = s * geometric(t2k, 1, qmax);
        }
    }
    return {GermParams(n, 1), s.truncated(HalfInt::of(qmax)), Convention::PsiRaw};
}

LaurentPoly catalan_poly(const GermParams& p)
{
    p.require_coprime("catalan_poly");
    LaurentPoly s;
    for (const auto& m : fundamental_domain(p))
        s += mono(0, m.codim(), p.delta() - cell_dim(m));
    return s;
}

KhrSeries convert(const KhrSeries& s, Convention target)
{
    if (s.convention == target)
        throw std::invalid_argument("series is already in the " + to_string(target) + " convention");
    const GermParams& p = s.params;
    const long e = (p.n - 1) * p.d, m = e - p.n;
    auto ors_sub = [] {
        Substitution sub;
        sub.a = {1, {HalfInt::of(2), {}, HalfInt::of(1)}};
        sub.q = {1, {{}, HalfInt::of(2), {}}};
        sub.t = {1, {{}, HalfInt::of(2), HalfInt::of(2)}};
        return sub;
    }();
    // (1+a)/(1-q) evaluated after the substitution, relative to the prefactor step a q^-1
    const LaurentPoly ratio_num = mono(-1, 1, 0) * (1 + mono(2, 0, 1));
    switch (s.convention) {
    case Convention::PsiRaw:
        if (target == Convention::Xbar)
            return {p, s.value.substituted(t_root), target};
        return convert(convert(s, Convention::Xbar), target);
    case Convention::Xbar:
        if (target == Convention::PsiRaw)
            return {p, s.value.substituted(t_squared), target};
        if (target == Convention::OrsUnreduced)
            return {p, s.value.substituted(ors_sub) * prefactor(m), target};
        {
            QSeries x = divide_coeffs(series_mul_one_minus_q(s.value, 1), 1 + A);
            return {p, x.substituted(ors_sub) * prefactor(m + 1), target};
        }
    case Convention::OrsReduced:
        if (target == Convention::OrsUnreduced)
            return {p, divide_one_minus(s.value * ratio_num, HalfInt::of(2)), target};
        break;
    case Convention::OrsUnreduced:
        if (target == Convention::OrsReduced)
            return {p, divide_coeffs(s.value * (mono(1, -1, 0) * (1 - Q * Q)), 1 + mono(2, 0, 1)), target};
        break;
    }
    throw std::invalid_argument("cannot convert " + to_string(s.convention) + " to " + to_string(target) +
                                ": the link normalizations are not invertible with half-integer exponents");
}

KhrSeries convert(const KhrSeries& s, Convention target, long e, long n, long b)
{
    const GermParams& p = s.params;
    if (n != p.n || b != p.g() || e != (p.n - 1) * p.d)
        throw std::invalid_argument("link metadata (e=" + std::to_string(e) + ", n=" + std::to_string(n) +
                                    ", b=" + std::to_string(b) + ") does not match the torus link T(" +
                                    std::to_string(p.n) + "," + std::to_string(p.d) + ")");
    return convert(s, target);
}

std::vector<GenCogenRow> gen_cogen_table(const GermParams& p)
{
    p.require_coprime("gen/cogen table");
    std::vector<GenCogenRow> rows;
    for (const auto& m : fundamental_domain(p)) {
        GenCogenRow r{m, m.codim(), cell_dim(m), generators(m), {}, cogenerators(m), 1};
        r.gens.erase(std::remove(r.gens.begin(), r.gens.end(), 0L), r.gens.end());
        r.pi_gen_reduced = *divide_exact(pi_gen(m), 1 + A);
        for (long k : r.cogens)
            r.pi_cogen_b *= 1 + A * mono(0, 0, lambda_count(m, k));
        rows.push_back(std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](const GenCogenRow& x, const GenCogenRow& y) {
        return std::tie(y.area, y.dim) < std::tie(x.area, x.dim);
    });
    return rows;
}

nlohmann::json to_json(const GenCogenRow& r)
{
    return {{"module", r.module.label()},
            {"genvec", r.module.genvec()},
            {"area", r.area},
            {"dim", r.dim},
            {"gen_nonzero", r.gens},
            {"pi_gen_over_1_plus_a", r.pi_gen_reduced.to_string()},
            {"cogen", r.cogens},
            {"pi_cogen_b", r.pi_cogen_b.to_string()}};
}

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::ConjecturalPass: return "conjectural-pass";
    case CheckStatus::ConjecturalFail: return "conjectural-fail";
    }
    return "?";
}

nlohmann::json to_json(const CheckReport& r)
{
    nlohmann::json j{{"check", r.check},
                     {"n", r.n},
                     {"d", r.d},
                     {"qmax", r.qmax},
                     {"status", to_string(r.status)},
                     {"first_discrepancy", nullptr}};
    if (r.first_discrepancy)
        j["first_discrepancy"] = {{"q", r.first_discrepancy->qexp.to_string()},
                                  {"lhs", r.first_discrepancy->lhs.to_string()},
                                  {"rhs", r.first_discrepancy->rhs.to_string()}};
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

long default_qmax(const GermParams& p, bool symmetry_check)
{
    return symmetry_check ? 2 * p.delta() + 4 : p.delta() + 5;
}

CheckReport check_hilb_vs_quot(const GermParams& p, long qmax, unsigned parallelism)
{
    CheckReport r = make_report("hilb_vs_quot", p, qmax);
    const bool conjectural = p.n > 3;
    QSeries hilb = psi_hilb_series(p, qmax, parallelism).value;
    Substitution half_q;  // t -> q^{1/2} t, i.e. t^2 -> q t^2
    half_q.t = {1, {{}, HalfInt::half(1), HalfInt::of(1)}};
    QSeries quot = psi_quot_series(p, qmax, parallelism).value.substituted(half_q);
    compare_into(r, hilb, quot, HalfInt::of(qmax), conjectural, "Hilb(q,t) vs Quot(q,q^(1/2)t)");
    if (conjectural)
        r.note = r.note.empty() ? "conjectural case (n > 3)" : r.note + "; conjectural case (n > 3)";
    return r;
}

CheckReport check_gen_vs_cogen(const GermParams& p)
{
    CheckReport r = make_report("gen_vs_cogen", p, 0);
    compare_polys_into(r, gen_sum(p), (1 + A) * cogen_sum(p), "Gen sum vs (1+a) Cogen sum");
    return r;
}

CheckReport check_catalan_symmetry(const GermParams& p)
{
    CheckReport r = make_report("catalan_symmetry", p, 0);
    LaurentPoly c = catalan_poly(p);
    compare_polys_into(r, c, c.swap_qt(), "C(q,t) vs C(t,q)");
    return r;
}

CheckReport check_node_example(long qmax)
{
    CheckReport r = make_report("node", GermParams(2, 2), qmax);
    const HalfInt tr = HalfInt::of(qmax);
    const LaurentPoly gm = T * T - 1;  // [G_m]
    QSeries hilb(tr), quot(tr);
    hilb.add_coeff({}, 1);
    for (long l = 0; l <= qmax; ++l) {
        if (l >= 1)
            hilb.add_coeff(HalfInt::of(l), l + (l - 1) * gm);
        quot.add_coeff(HalfInt::of(l), (l + 1) + l * gm);
    }
    QSeries pic = QSeries::from_poly(1 + Q * gm, tr);
    Substitution half_q;
    half_q.t = {1, {{}, HalfInt::half(1), HalfInt::of(1)}};
    compare_into(r, hilb, quot.substituted(half_q), tr, false, "Hilb(q,t) vs Quot(q,q^(1/2)t)");
    compare_into(r, quot, series_div_geometric(pic, 2), tr, false, "Quot vs Pic/(1-q)^2");
    QSeries expect(tr);
    for (long l = 0; l <= qmax; ++l)
        expect.add_coeff(HalfInt::of(l), 1 + l * T);
    compare_into(r, quot.substituted(t_root), expect, tr, false, "Quot with t^2 -> t vs sum q^l (1 + l t)");
    return r;
}

CheckReport check_cusp_example(long qmax)
{
    const GermParams p(2, 3);
    CheckReport r = make_report("cusp", p, qmax);
    const HalfInt tr = HalfInt::of(qmax);
    const LaurentPoly p1 = 1 + T * T;  // [P^1]
    QSeries hilb(tr), quot(tr);
    for (long l = 0; l <= qmax; ++l) {
        hilb.add_coeff(HalfInt::of(l), l >= 2 ? p1 : LaurentPoly(1));
        quot.add_coeff(HalfInt::of(l), l >= 1 ? p1 : LaurentPoly(1));
    }
    QSeries pic = QSeries::from_poly(1 + Q * T * T, tr);
    KhrSeries h = psi_hilb_series(p, qmax), q = psi_quot_series(p, qmax), pc = pic_series(p, qmax);
    compare_into(r, at_a_zero(h.value), hilb, tr, false, "Hilb at a=0");
    compare_into(r, at_a_zero(q.value), quot, tr, false, "Quot at a=0");
    compare_into(r, at_a_zero(pc.value), pic, tr, false, "Pic at a=0");
    compare_into(r, q.value, series_div_geometric(pc.value, 1), tr, false, "Quot vs Pic/(1-q)");
    return r;
}

CheckReport check_a0_symmetry(const GermParams& p, long qmax)
{
    const long delta = p.delta();
    if (qmax < 2 * delta + 1)
        throw std::invalid_argument("a0-symmetry needs qmax >= 2*delta + 1 = " + std::to_string(2 * delta + 1));
    CheckReport r = make_report("a0_symmetry", p, qmax);
    QSeries f = series_mul_one_minus_q(at_a_zero(psi_hilb_series(p, qmax).value), 1);
    LaurentPoly g;
    for (const auto& [e, c] : f.coeffs()) {
        if (e > HalfInt::of(2 * delta) && e <= f.trunc()) {
            r.status = CheckStatus::Fail;
            r.first_discrepancy = Discrepancy{e - HalfInt::of(delta), c, {}};
            r.note = "support outside [-delta, delta]";
            return r;
        }
        g += c.shifted({{}, e - HalfInt::of(delta), {}});
    }
    Substitution inv;  // q -> q^-1 t^-2
    inv.q = {1, {{}, HalfInt::of(-1), HalfInt::of(-2)}};
    compare_polys_into(r, g, substitute(g, inv), "q^-delta (1-q) Hilb vs its image under q -> q^-1 t^-2");
    return r;
}

CheckReport check_asymptotic(const GermParams& p, Side side)
{
    const long order = p.d - 1;
    CheckReport r = make_report(side == Side::Hilb ? "asymptotic_hilb" : "asymptotic_quot", p, order);
    QSeries finite = (side == Side::Hilb ? psi_hilb_series(p, order) : psi_quot_series(p, order)).value;
    QSeries limit = asymptotic_series(side, p.n, order).value;
    if (side == Side::Quot) {
        // The Quot limit converges (q,t)-adically; it is compared in the grading where it is
        // used against Hilb, t^2 -> q t^2, in which it is q-adic.
        Substitution half_q;
        half_q.t = {1, {{}, HalfInt::half(1), HalfInt::of(1)}};
        finite = finite.substituted(half_q);
        limit = limit.substituted(half_q);
    }
    compare_into(r, finite, limit, HalfInt::of(order), false, "finite d vs d -> infinity product");
    if (r.first_discrepancy && r.first_discrepancy->qexp == HalfInt::of(order) && order >= 1)
        r.note += " (agrees through q-degree d-2)";
    return r;
}

}  // namespace cq
