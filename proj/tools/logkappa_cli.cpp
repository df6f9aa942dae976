#include <CLI11.hpp>
#include <json.hpp>

#include <logkappa/bounds.hpp>
#include <logkappa/estimators.hpp>
#include <logkappa/explicit_formula.hpp>
#include <logkappa/oracle.hpp>
#include <logkappa/splitting.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::ordered_json;
using namespace logkappa;

// All JSON numbers carry 15 significant digits: round through %.15g before
// serialization so output is reproducible text.
double round15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

IntPolynomial parse_poly(const std::string& csv) {
    std::vector<cpp_int> c;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto b = tok.find_first_not_of(" \t");
        auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("--poly: empty coefficient");
        c.emplace_back(tok.substr(b, e - b + 1));
    }
    if (c.empty()) throw std::invalid_argument("--poly: no coefficients");
    return IntPolynomial(std::move(c));
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct CommonOpts {
    std::string format = "json";
    int threads = 1;
    std::string override_path;
};

std::optional<OverrideTable> load_overrides(const CommonOpts& c) {
    if (c.override_path.empty()) return std::nullopt;
    return parse_override_file(c.override_path);
}

int cmd_estimate(const std::string& poly_csv, const std::string& field_disc,
                 double X, const std::string& method, std::string bound_kind,
                 std::optional<double> sigma_opt, const CommonOpts& common) {
    Timer timer;
    if (poly_csv.empty())
        throw std::invalid_argument("estimate: --poly is required (splitting needs a polynomial)");
    std::optional<cpp_int> user_disc;
    if (!field_disc.empty()) user_disc = cpp_int(field_disc);
    auto K = make_field(parse_poly(poly_csv), user_disc);
    auto ov = load_overrides(common);
    const OverrideTable* ovp = ov ? &*ov : nullptr;
    if (K.n == 1) bound_kind = "none";

    double estimate = 0;
    if (method == "f") {
        estimate = f_estimator(K, X, common.threads, ovp).value;
    } else if (method == "a") {
        estimate = euler_comparison_sum(K, X, common.threads, ovp);
    } else if (method == "g") {
        double xi;
        if (std::modf(X, &xi) != 0.0)
            throw std::invalid_argument("estimate: method g requires an even integer X");
        estimate = averaged_comparison_sum(K, static_cast<std::uint64_t>(X), common.threads, ovp);
    } else {
        throw std::invalid_argument("estimate: --method must be one of f, g, a");
    }

    bool carries_bound = (method == "f") && bound_kind != "none";
    double bound = 0;
    double sigma_used = 0;
    if (carries_bound) {
        double sigma = sigma_opt ? *sigma_opt : 1.0 + 1.0 / std::sqrt(K.log_delta_upper);
        if (bound_kind == "thm1") {
            bound = thm1_bound(K.log_delta_upper, K.n, X, false);
        } else if (bound_kind == "thm1-beta") {
            bound = thm1_bound(K.log_delta_upper, K.n, X, true);
        } else if (bound_kind == "thm2") {
            double S = prime_ideal_sigma_sum(K, X, sigma, common.threads, ovp);
            bound = sigma_bound({K.log_delta_upper, K.n, K.r1, X, sigma, S});
            sigma_used = sigma;
        } else if (bound_kind == "corollary") {
            double S = prime_ideal_sigma_sum(K, X, 1.5, common.threads, ovp);
            bound = corollary_bound(K.log_delta_upper, K.n, K.r1, X, S);
            sigma_used = 1.5;
        } else {
            throw std::invalid_argument("estimate: unknown --bound kind");
        }
    }

    if (common.format == "tsv") {
        std::cout << "method\tX\testimate\tbound_kind\tbound\tlog_delta_used\tn\tr1\twall_time\n";
        std::cout << method << '\t' << fmt15(X) << '\t' << fmt15(estimate) << '\t'
                  << (carries_bound ? bound_kind : std::string("none")) << '\t'
                  << (carries_bound ? fmt15(bound) : std::string("-")) << '\t'
                  << fmt15(K.log_delta_upper) << '\t' << K.n << '\t' << K.r1 << '\t'
                  << fmt15(timer.seconds()) << '\n';
        return 0;
    }
    json out;
    out["method"] = method;
    out["X"] = round15(X);
    out["estimate"] = round15(estimate);
    out["bound_kind"] = carries_bound ? bound_kind : "none";
    if (carries_bound) {
        out["bound"] = round15(bound);
        if (sigma_used != 0) out["sigma"] = round15(sigma_used);
    }
    out["log_delta_used"] = round15(K.log_delta_upper);
    out["n"] = K.n;
    out["r1"] = K.r1;
    if (!K.irreducibility_certified) out["irreducibility_certified"] = false;
    out["wall_time"] = round15(timer.seconds());
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_minimal_x(double log10_disc, int degree, double target, const std::string& kind,
                  const CommonOpts& common) {
    BoundKind bk;
    if (kind == "thm1")
        bk = BoundKind::thm1;
    else if (kind == "thm1-beta")
        bk = BoundKind::thm1_beta;
    else
        throw std::invalid_argument("minimal-x: --kind must be thm1 or thm1-beta");
    double log_delta = log10_disc * std::log(10.0);
    auto res = minimal_X(log_delta, degree, target, bk);
    if (common.format == "tsv") {
        std::cout << "log10_disc\tdegree\tkind\ttarget\tX\tbound_at_X\tbound_at_Xm1\n";
        std::cout << fmt15(log10_disc) << '\t' << degree << '\t' << kind << '\t' << fmt15(target)
                  << '\t' << res.X << '\t' << fmt15(res.bound_at_X) << '\t'
                  << (std::isnan(res.bound_at_Xm1) ? std::string("-") : fmt15(res.bound_at_Xm1))
                  << '\n';
        return 0;
    }
    json out;
    out["log10_disc"] = round15(log10_disc);
    out["degree"] = degree;
    out["kind"] = kind;
    out["target"] = round15(target);
    out["X"] = res.X;
    out["bound_at_X"] = round15(res.bound_at_X);
    if (!std::isnan(res.bound_at_Xm1)) out["bound_at_Xm1"] = round15(res.bound_at_Xm1);
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_table1(const CommonOpts& common) {
    auto t = minimal_X_table();
    if (common.format == "tsv") {
        std::cout << "delta";
        for (int n : t.degrees) std::cout << "\tn=" << n;
        std::cout << '\n';
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
            std::cout << "10^" << t.delta_exponents[i];
            for (auto& cell : t.cells[i]) {
                if (cell)
                    std::cout << '\t' << *cell;
                else
                    std::cout << "\t--";
            }
            std::cout << '\n';
        }
        return 0;
    }
    json out;
    out["degrees"] = t.degrees;
    json rows = json::array();
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        json row;
        row["delta"] = "10^" + std::to_string(t.delta_exponents[i]);
        json cells = json::array();
        for (auto& cell : t.cells[i]) {
            if (cell)
                cells.push_back(*cell);
            else
                cells.push_back(nullptr);
        }
        row["cells"] = std::move(cells);
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_split(const std::string& poly_csv, const std::string& field_disc, double X,
              const CommonOpts& common) {
    if (poly_csv.empty()) throw std::invalid_argument("split: --poly is required");
    std::optional<cpp_int> user_disc;
    if (!field_disc.empty()) user_disc = cpp_int(field_disc);
    auto K = make_field(parse_poly(poly_csv), user_disc);
    auto ov = load_overrides(common);
    const OverrideTable* ovp = ov ? &*ov : nullptr;

    struct Row {
        std::uint64_t p;
        std::string factors;
        bool index_divisor;
    };
    std::vector<Row> rows;
    for (std::uint32_t p : primes_below(X)) {
        try {
            auto ls = split_prime(K, p, ovp);
            std::string fs;
            for (auto& [f, e] : ls.factors) {
                if (!fs.empty()) fs += ' ';
                fs += std::to_string(f) + "^" + std::to_string(e);
            }
            rows.push_back({p, fs, ls.index_divisor});
        } catch (const UnsupportedIndexDivisor&) {
            rows.push_back({p, "?", true}); // diagnostic dump keeps going
        }
    }
    if (common.format == "tsv") {
        std::cout << "p\tfactors\tindex_divisor\n";
        for (auto& r : rows)
            std::cout << r.p << '\t' << r.factors << '\t' << (r.index_divisor ? "true" : "false")
                      << '\n';
        return 0;
    }
    json out;
    json arr = json::array();
    for (auto& r : rows) {
        json row;
        row["p"] = r.p;
        row["factors"] = r.factors;
        row["index_divisor"] = r.index_divisor;
        arr.push_back(std::move(row));
    }
    out["splittings"] = std::move(arr);
    std::cout << out.dump() << '\n';
    return 0;
}

int cmd_verify(const std::string& check, std::string zeros_path, double sigma, double X,
               double prime_cutoff, std::size_t zero_count, const CommonOpts& common) {
    if (zeros_path.empty()) {
        const char* env = std::getenv("ZETA_ZEROS_FILE");
        if (env) zeros_path = env;
    }
    if (zeros_path.empty()) {
        std::cerr << "verify: no zeros file (--zeros or ZETA_ZEROS_FILE)\n";
        return 2;
    }
    ZeroDataset zeros = load_zeros(zeros_path);
    if (zero_count > 0 && zero_count < zeros.gammas.size())
        zeros.gammas.resize(zero_count);

    json out;
    out["check"] = check;
    bool pass = false;
    if (check == "weil") {
        auto r = weil_residual(zeros, sigma, X, prime_cutoff);
        pass = r.residual <= r.tail_estimate;
        out["s"] = round15(sigma);
        out["x"] = round15(X);
        out["zeros_used"] = r.zero_count;
        out["prime_cutoff"] = round15(prime_cutoff);
        out["lhs"] = round15(r.lhs);
        out["rhs"] = round15(r.rhs);
        out["residual"] = round15(r.residual);
        out["tail_budget"] = round15(r.tail_estimate);
    } else if (check == "stark") {
        auto r = stark_sum_check(zeros, sigma, prime_cutoff);
        pass = r.residual <= r.tail_budget;
        out["sigma"] = round15(sigma);
        out["zeros_used"] = zeros.gammas.size();
        out["prime_cutoff"] = round15(prime_cutoff);
        out["lhs"] = round15(r.lhs);
        out["rhs"] = round15(r.rhs);
        out["residual"] = round15(r.residual);
        out["tail_budget"] = round15(r.tail_budget);
    } else if (check == "zerosum") {
        auto r = zeta_zero_sum_constant(zeros);
        pass = r.partial <= r.target && r.target <= r.partial + r.tail_bound;
        out["zeros_used"] = zeros.gammas.size();
        out["partial"] = round15(r.partial);
        out["tail_bound"] = round15(r.tail_bound);
        out["target"] = round15(r.target);
    } else {
        throw std::invalid_argument("verify: --check must be weil, stark, or zerosum");
    }
    out["pass"] = pass;
    if (common.format == "tsv") {
        std::string keys, vals;
        for (auto& [k, v] : out.items()) {
            if (!keys.empty()) {
                keys += '\t';
                vals += '\t';
            }
            keys += k;
            vals += v.is_string() ? v.get<std::string>()
                                  : (v.is_boolean() ? (v.get<bool>() ? "true" : "false")
                                                    : (v.is_number_float() ? fmt15(v.get<double>())
                                                                           : v.dump()));
        }
        std::cout << keys << '\n' << vals << '\n';
    } else {
        std::cout << out.dump() << '\n';
    }
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"GRH-conditional approximation of log kappa_K from prime splitting"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string poly_csv, field_disc, method = "f", bound_kind = "thm1-beta";
    double X = 0;
    std::optional<double> sigma_opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "json or tsv")
            ->check(CLI::IsMember({"json", "tsv"}))
            ->capture_default_str();
        sub->add_option("--threads", common.threads, "worker threads for the splitting pass")
            ->check(CLI::Range(1, 256))
            ->capture_default_str();
        sub->add_option("--override", common.override_path,
                        "splitting override file (lines: p: f1^e1 f2^e2 ...)");
    };

    auto* est = app.add_subcommand("estimate", "estimate log kappa_K from splitting data");
    est->add_option("--poly", poly_csv, "monic defining polynomial, ascending coefficients, comma-separated");
    est->add_option("--field-disc", field_disc, "known fundamental discriminant (big integer)");
    est->add_option("--x", X, "prime cutoff X")->required();
    est->add_option("--method", method, "estimator: f (sharpened), g (averaged), a (plain)")
        ->check(CLI::IsMember({"f", "g", "a"}))
        ->capture_default_str();
    est->add_option("--bound", bound_kind, "certified bound to attach")
        ->check(CLI::IsMember({"thm1", "thm1-beta", "thm2", "corollary", "none"}))
        ->capture_default_str();
    double sigma_val = 0;
    auto* sflag = est->add_option("--sigma", sigma_val, "sigma for the thm2 bound (default 1 + 1/sqrt(log D))");
    add_common(est);

    auto* mx = app.add_subcommand("minimal-x", "least X certifying |f_K(X) - log kappa_K| < target");
    double log10_disc = 0, target = 0.5 * std::log(2.0);
    int degree = 2;
    std::string kind = "thm1-beta";
    mx->add_option("--log10-disc", log10_disc, "log10 of the discriminant bound")->required();
    mx->add_option("--degree", degree, "field degree n")->required();
    mx->add_option("--target", target, "error target")->capture_default_str();
    mx->add_option("--kind", kind, "thm1 or thm1-beta")
        ->check(CLI::IsMember({"thm1", "thm1-beta"}))
        ->capture_default_str();
    add_common(mx);

    auto* tb = app.add_subcommand("table1", "minimal-X grid over (disc, degree)");
    add_common(tb);

    auto* sp = app.add_subcommand("split", "dump splitting data for p < X");
    sp->add_option("--poly", poly_csv, "monic defining polynomial, ascending, comma-separated");
    sp->add_option("--field-disc", field_disc, "known fundamental discriminant");
    sp->add_option("--x", X, "prime cutoff X")->required();
    add_common(sp);

    auto* vf = app.add_subcommand("verify", "numerical checks against zeta-zero data");
    std::string check, zeros_path;
    double sigma_verify = 0, x_verify = 20.0, prime_cutoff = 1e7;
    std::size_t zero_count = 0;
    vf->add_option("--check", check, "weil, stark, or zerosum")
        ->check(CLI::IsMember({"weil", "stark", "zerosum"}))
        ->required();
    vf->add_option("--zeros", zeros_path, "zeros file (fallback: ZETA_ZEROS_FILE)");
    vf->add_option("--sigma", sigma_verify, "s (weil) or sigma (stark); defaults 1.5 / 2");
    vf->add_option("--x", x_verify, "plateau cutoff X for weil")->capture_default_str();
    vf->add_option("--prime-cutoff", prime_cutoff, "prime sum cutoff")->capture_default_str();
    vf->add_option("--zero-count", zero_count, "use only the first N zeros");
    add_common(vf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // keep --help/--version at 0, but fold CLI11's parse-failure codes
        // into the stable exit contract (2 = usage/input error)
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (est->parsed()) {
            if (sflag->count() > 0) sigma_opt = sigma_val;
            return cmd_estimate(poly_csv, field_disc, X, method, bound_kind, sigma_opt, common);
        }
        if (mx->parsed()) return cmd_minimal_x(log10_disc, degree, target, kind, common);
        if (tb->parsed()) return cmd_table1(common);
        if (sp->parsed()) return cmd_split(poly_csv, field_disc, X, common);
        if (vf->parsed()) {
            double sg = sigma_verify != 0 ? sigma_verify : (check == "stark" ? 2.0 : 1.5);
            return cmd_verify(check, zeros_path, sg, x_verify, prime_cutoff, zero_count, common);
        }
    } catch (const UnsupportedIndexDivisor& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
