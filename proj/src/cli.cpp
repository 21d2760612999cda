#include "cq/cli.hpp"

#include "cq/dyckpath.hpp"
#include "cq/linkseries.hpp"
#include "cq/springer.hpp"
#include "cq/symfunc.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <memory>
#include <ostream>

namespace cq::cli {

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::json;

GermParams coprime_params(const RunConfig& c)
{
    if (c.n < 1)
        throw UsageError("--n: must be a positive integer");
    if (c.d < 1)
        throw UsageError("--d: must be a positive integer");
    GermParams p(c.n, c.d);
    if (!p.coprime())
        throw UsageError("--d: (n,d) = (" + std::to_string(c.n) + "," + std::to_string(c.d) +
                         ") must be coprime for '" + c.command + " " + c.kind + "'");
    return p;
}

long qmax_or(const RunConfig& c, long fallback) { return c.qmax.value_or(fallback); }

// Column-aligned plain-text table.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    auto display_width = [](const std::string& s) {
        std::size_t w = 0;
        for (unsigned char ch : s)
            w += (ch & 0xC0) != 0x80;  // count UTF-8 code points
        return w;
    };
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i)
                width.push_back(0);
            width[i] = std::max(width[i], display_width(r[i]));
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size())
                line += std::string(width[i] - display_width(r[i]) + 2, ' ');
        }
        out << line << '\n';
    }
}

std::string join(const std::vector<long>& v, const char* open = "{", const char* close = "}")
{
    std::string s = open;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + close;
}

// ---------------------------------------------------------------- series

int emit_series(const RunConfig& c, const std::string& name, const KhrSeries& s, std::ostream& out)
{
    if (c.format == Format::Json) {
        out << Json{{"series", name},
                    {"n", s.params.n},
                    {"d", s.params.d},
                    {"qmax", c.qmax ? Json(*c.qmax) : Json(nullptr)},
                    {"convention", to_string(s.convention)},
                    {"value", to_json(s.value)},
                    {"text", s.value.to_string()}}
                   .dump()
            << '\n';
    } else {
        out << name << " n=" << s.params.n << " d=" << s.params.d << " [" << to_string(s.convention) << "]\n"
            << s.value.to_string() << '\n';
    }
    return kExitOk;
}

KhrSeries as_requested(const RunConfig& c, KhrSeries s)
{
    if (!c.raw && s.convention == Convention::PsiRaw)
        return convert(s, Convention::Xbar);
    if (c.raw && s.convention == Convention::Xbar)
        return convert(s, Convention::PsiRaw);
    return s;
}

int run_series(const RunConfig& c, std::ostream& out)
{
    if (c.kind == "nabla") {
        if (c.n < 1 || c.n > 5)
            throw UsageError("--n: nabla series need 1 <= n <= 5");
        if (c.k < 1)
            throw UsageError("--k: must be at least 1");
        GermParams p(c.n, c.n * c.k);
        return emit_series(c, "nabla", as_requested(c, khr_nabla(c.n, c.k, qmax_or(c, p.delta() + 5))), out);
    }
    if (c.kind == "asymptotic") {
        if (c.n < 1)
            throw UsageError("--n: must be a positive integer");
        Side side = c.side == "quot" ? Side::Quot : Side::Hilb;
        KhrSeries s = asymptotic_series(side, c.n, qmax_or(c, 10));
        return emit_series(c, "asymptotic-" + c.side, as_requested(c, s), out);
    }
    GermParams p = coprime_params(c);
    if (c.kind == "catalan") {
        LaurentPoly cat = catalan_poly(p);
        if (c.format == Format::Json)
            out << Json{{"series", "catalan"}, {"n", p.n}, {"d", p.d}, {"value", to_json(cat)}, {"text", cat.to_string()}}
                       .dump()
                << '\n';
        else
            out << "catalan n=" << p.n << " d=" << p.d << "\n" << cat.to_string() << '\n';
        return kExitOk;
    }
    const long qmax = qmax_or(c, default_qmax(p, false));
    KhrSeries s;
    if (c.kind == "quot")
        s = psi_quot_series(p, qmax, c.parallelism);
    else if (c.kind == "hilb")
        s = psi_hilb_series(p, qmax, c.parallelism);
    else if (c.kind == "pic")
        s = pic_series(p, qmax);
    else if (c.kind == "cogen")
        s = cogen_series(p, qmax);
    else
        throw UsageError("series: unknown kind '" + c.kind + "'");
    return emit_series(c, c.kind, as_requested(c, s), out);
}

// ---------------------------------------------------------------- checks

int emit_reports(const RunConfig& c, const std::vector<CheckReport>& reports, std::ostream& out)
{
    bool ok = true;
    Json all = Json::array();
    for (const auto& r : reports) {
        ok = ok && r.ok();
        all.push_back(to_json(r));
        if (c.format == Format::Text) {
            out << r.check << " n=" << r.n << " d=" << r.d << " qmax=" << r.qmax << ": " << to_string(r.status);
            if (r.first_discrepancy)
                out << "\n  first discrepancy at q^" << r.first_discrepancy->qexp.to_string() << " ("
                    << r.note << ")\n  lhs: " << r.first_discrepancy->lhs.to_string()
                    << "\n  rhs: " << r.first_discrepancy->rhs.to_string();
            else if (!r.note.empty())
                out << " (" << r.note << ")";
            out << '\n';
        }
    }
    if (c.format == Format::Json)
        out << (all.size() == 1 ? all[0] : all).dump() << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

int run_check(const RunConfig& c, std::ostream& out)
{
    std::vector<CheckReport> reports;
    if (c.kind == "node") {
        reports.push_back(check_node_example(qmax_or(c, 15)));
    } else if (c.kind == "cusp") {
        reports.push_back(check_cusp_example(qmax_or(c, 15)));
    } else if (c.kind == "nabla-vs-cogen-targets") {
        reports.push_back(check_nabla_targets(qmax_or(c, 12)));
    } else {
        GermParams p = coprime_params(c);
        if (c.kind == "hilb-vs-quot")
            reports.push_back(check_hilb_vs_quot(p, qmax_or(c, default_qmax(p, false)), c.parallelism));
        else if (c.kind == "gen-vs-cogen")
            reports.push_back(check_gen_vs_cogen(p));
        else if (c.kind == "catalan-symmetry")
            reports.push_back(check_catalan_symmetry(p));
        else if (c.kind == "a0-symmetry") {
            long qmax = qmax_or(c, default_qmax(p, true));
            if (qmax < 2 * p.delta() + 1)
                throw UsageError("--qmax: a0-symmetry needs at least 2*delta + 1 = " +
                                 std::to_string(2 * p.delta() + 1));
            reports.push_back(check_a0_symmetry(p, qmax));
        } else if (c.kind == "asymptotic") {
            reports.push_back(check_asymptotic(p, Side::Hilb));
            reports.push_back(check_asymptotic(p, Side::Quot));
        } else
            throw UsageError("check: unknown kind '" + c.kind + "'");
    }
    return emit_reports(c, reports, out);
}

// ---------------------------------------------------------------- tables

int run_table(const RunConfig& c, std::ostream& out)
{
    GermParams p = coprime_params(c);
    Json rows = Json::array();
    std::vector<std::vector<std::string>> text;
    if (c.kind == "hikita") {
        text.push_back({"mu", "a(mu)", "|a(mu)|", "(n mu_i + n - i)", "module", "min"});
        for (const auto& r : hikita_table(p)) {
            rows.push_back(to_json(r));
            text.push_back({join(r.mu.mu, "(", ")"), join(r.a, "(", ")"), std::to_string(r.a_size),
                            join(r.weights, "(", ")"), r.module.label(), std::to_string(r.min)});
        }
    } else if (c.kind == "gen-cogen") {
        text.push_back({"module", "q^area t^dim", "Gen\\{0}", "Pi^Gen/(1+a)", "Cogen", "Pi^Cogen(b)"});
        for (const auto& r : gen_cogen_table(p)) {
            rows.push_back(to_json(r));
            std::string b = r.pi_cogen_b.to_string();
            for (std::size_t i; (i = b.find('a')) != std::string::npos;)
                b[i] = 'b';
            text.push_back({r.module.label(), LaurentPoly::monomial(0, r.area, r.dim).to_string(), join(r.gens),
                            r.pi_gen_reduced.to_string(), join(r.cogens), b});
        }
    } else if (c.kind == "rowmotion") {
        text.push_back({"module", "path", "rowmotion"});
        for (const auto& m : fundamental_domain(p)) {
            GammaModule r = rowmotion(m);
            rows.push_back({{"module", m.label()}, {"genvec", m.genvec()}, {"path", to_dyck(m).steps()},
                            {"rowmotion", r.label()}, {"rowmotion_genvec", r.genvec()}});
            text.push_back({m.label(), to_dyck(m).steps(), r.label()});
        }
    } else {
        throw UsageError("table: unknown kind '" + c.kind + "'");
    }
    if (c.format == Format::Json)
        out << Json{{"table", c.kind}, {"n", p.n}, {"d", p.d}, {"rows", rows}}.dump() << '\n';
    else
        print_table(out, text);
    return kExitOk;
}

// ---------------------------------------------------------------- convert

int run_convert(const RunConfig& c, std::ostream& out)
{
    if (c.n < 1 || c.d < 1)
        throw UsageError("--n/--d: must be positive integers");
    GermParams p(c.n, c.d);
    KhrSeries x;
    if (p.coprime()) {
        x = convert(psi_quot_series(p, qmax_or(c, default_qmax(p, false)), c.parallelism), Convention::Xbar);
    } else if (c.d % c.n == 0) {
        if (c.n > 5)
            throw UsageError("--n: torus links T(n,nk) are supported for n <= 5");
        x = khr_nabla(c.n, c.d / c.n, qmax_or(c, p.delta() + 5));
    } else {
        throw UsageError("--d: need d coprime to n or divisible by n");
    }
    Convention target = c.kind == "ors-reduced" ? Convention::OrsReduced : Convention::OrsUnreduced;
    return emit_series(c, c.kind, convert(x, target, (p.n - 1) * p.d, p.n, p.g()), out);
}

// ---------------------------------------------------------------- cache

int run_cache(const RunConfig& c, std::ostream& out)
{
    MacdonaldCache cache(c.cache_path);
    if (c.kind == "clear") {
        std::size_t before = cache.size();
        cache.clear();
        if (c.format == Format::Json)
            out << Json{{"cache", cache.path().string()}, {"removed", before}}.dump() << '\n';
        else
            out << "cleared " << before << " entries from " << cache.path().string() << '\n';
        return kExitOk;
    }
    if (c.format == Format::Json) {
        out << Json{{"cache", cache.path().string()},
                    {"version", MacdonaldCache::kVersion},
                    {"exists", std::filesystem::exists(cache.path())},
                    {"entries", cache.keys()}}
                   .dump()
            << '\n';
    } else {
        out << "cache " << cache.path().string() << " (version " << MacdonaldCache::kVersion << "): "
            << cache.size() << " entries\n";
        for (const auto& k : cache.keys())
            out << "  " << k << '\n';
    }
    return kExitOk;
}

int dispatch(const RunConfig& c, std::ostream& out)
{
    if (c.command == "cache")
        return run_cache(c, out);
    // nabla-based commands consult the disk cache
    std::unique_ptr<MacdonaldCache> cache;
    if (!c.cache_path.empty()) {
        cache = std::make_unique<MacdonaldCache>(c.cache_path);
        set_macdonald_cache(cache.get());
    }
    struct Reset {
        ~Reset() { set_macdonald_cache(nullptr); }
    } reset;
    if (c.command == "series")
        return run_series(c, out);
    if (c.command == "check")
        return run_check(c, out);
    if (c.command == "table")
        return run_table(c, out);
    if (c.command == "convert")
        return run_convert(c, out);
    throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace

std::filesystem::path default_cache_path()
{
    if (const char* env = std::getenv("CURVEQUOT_CACHE"); env && *env)
        return env;
    return std::filesystem::current_path() / "curvequot-cache" / "htilde.json";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        return dispatch(cfg, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "check failed: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    std::string format = "text", cache;
    CLI::App app{"Generating series of plane curve germs y^n = x^d and their link invariants"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "n in y^n = x^d");
        sub->add_option("--d", cfg.d, "d in y^n = x^d");
        sub->add_option("--qmax", cfg.qmax, "truncation order in q")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--cache", cache, "H-tilde cache file (default $CURVEQUOT_CACHE or ./curvequot-cache)");
        sub->add_option("-j,--parallelism", cfg.parallelism, "worker threads, 0 = auto");
    };

    auto* series = app.add_subcommand("series", "compute a generating series");
    series->add_option("kind", cfg.kind, "series kind")
        ->required()
        ->check(CLI::IsMember({"quot", "hilb", "pic", "cogen", "nabla", "catalan", "asymptotic"}));
    add_common(series);
    series->add_option("--k", cfg.k, "nabla power (d = n k)");
    series->add_option("--side", cfg.side, "asymptotic side")->check(CLI::IsMember({"hilb", "quot"}));
    series->add_flag("--raw", cfg.raw, "print the t^2-graded form instead of the t-graded one");

    auto* check = app.add_subcommand("check", "run an identity or conjecture check");
    check->add_option("kind", cfg.kind, "check kind")
        ->required()
        ->check(CLI::IsMember({"hilb-vs-quot", "gen-vs-cogen", "catalan-symmetry", "node", "cusp", "a0-symmetry",
                               "asymptotic", "nabla-vs-cogen-targets"}));
    add_common(check);

    auto* table = app.add_subcommand("table", "print a combinatorial table");
    table->add_option("kind", cfg.kind, "table kind")->required()->check(CLI::IsMember({"gen-cogen", "hikita", "rowmotion"}));
    add_common(table);

    auto* conv = app.add_subcommand("convert", "express the torus link series in link-homology conventions");
    conv->add_option("kind", cfg.kind, "target")->required()->check(CLI::IsMember({"ors-reduced", "ors-unreduced"}));
    add_common(conv);

    auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the H-tilde cache");
    cache_cmd->add_option("kind", cfg.kind, "action")->required()->check(CLI::IsMember({"status", "clear"}));
    add_common(cache_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    for (auto* sub : {series, check, table, conv, cache_cmd})
        if (sub->parsed())
            cfg.command = sub->get_name();
    cfg.format = format == "json" ? Format::Json : Format::Text;
    if (!cache.empty())
        cfg.cache_path = cache;
    else if (cfg.command == "cache" || cfg.kind == "nabla" || cfg.kind == "nabla-vs-cogen-targets" ||
             (cfg.command == "convert" && cfg.n > 0 && cfg.d % cfg.n == 0))
        cfg.cache_path = default_cache_path();
    return run(cfg, out, err);
}

}  // namespace cq::cli
