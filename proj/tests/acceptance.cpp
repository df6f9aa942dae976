// Acceptance gate: one line per criterion, exit 0 iff every criterion holds.
// Run via ctest (test name "acceptance") or directly from the build tree.

#include <logkappa/bounds.hpp>
#include <logkappa/estimators.hpp>
#include <logkappa/explicit_formula.hpp>
#include <logkappa/number_field.hpp>
#include <logkappa/oracle.hpp>
#include <logkappa/primes.hpp>
#include <logkappa/splitting.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using namespace logkappa;

struct Gate {
    bool ok = true;
    std::vector<std::string> notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string fmt(double v, int prec = 6) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

const std::string zeros_file = std::string(LOGKAPPA_DATA_DIR) + "/zeta_zeros_1000.txt";

// ---- criterion 1: the minimal-X grid reproduces the reference values ----
void criterion_table(Gate& g) {
    auto t = minimal_X_table();
    const long expect[6][5] = {
        {1619, 1632, -1, -1, -1},        {3169, 3181, 3194, -1, -1},
        {6838, 6850, 6861, -1, -1},      {21619, 21629, 21639, 21665, -1},
        {56332, 56341, 56351, 56374, 56445}, {156151, 156160, 156169, 156191, 156256},
    };
    g.check(t.cells.size() == 6, "six discriminant rows");
    int populated = 0, dashes = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        g.check(t.cells[i].size() == 5, "five degree columns");
        for (std::size_t j = 0; j < 5; ++j) {
            const auto& cell = t.cells[i][j];
            if (expect[i][j] < 0) {
                g.check(!cell.has_value(), "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                               ") should be empty");
                ++dashes;
            } else {
                ++populated;
                if (!cell) {
                    g.check(false, "cell (" + std::to_string(i) + "," + std::to_string(j) +
                                       ") unexpectedly empty");
                } else {
                    g.check(static_cast<long>(*cell) == expect[i][j],
                            "cell (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                std::to_string(*cell) + ", reference " +
                                std::to_string(expect[i][j]));
                }
            }
        }
    }
    g.check(populated == 22 && dashes == 8, "population count 22 + 8");
    g.note("populated cells: " + std::to_string(populated) +
           ", empty cells: " + std::to_string(dashes));
}

// ---- criterion 2: certified containment on 20 quadratic fields ----
void criterion_fields(Gate& g) {
    const std::int64_t discs[20] = {-3, -4,  -7, -8, -11,   -15, -23, -163, -1003, -9995,
                                    5,  8,   12, 13, 17,    21,  24,  28,   2021,  9949};
    double worst_margin = 0;
    for (std::int64_t d : discs) {
        auto K = quadratic_field(cpp_int(d));
        for (double X : {1e4, 1e5}) {
            auto rep = validate(K, X, 'f');
            bool contained = rep.error <= rep.certified_bound;
            g.check(rep.pass.has_value() && *rep.pass && contained,
                    "d=" + std::to_string(d) + ", X=" + fmt(X) + ": |" + fmt(rep.estimate, 12) +
                        " - " + fmt(rep.truth, 12) + "| = " + fmt(rep.error) + " vs bound " +
                        fmt(rep.certified_bound));
            if (rep.certified_bound > 0)
                worst_margin = std::max(worst_margin, rep.error / rep.certified_bound);
        }
    }
    g.note("20 fields (10 imaginary, 10 real) at X = 1e4 and 1e5; worst error/bound = " +
           fmt(worst_margin));
}

// ---- criterion 3: sigma-family dominance and the frozen 1.5 specialization ----
void criterion_sigma(Gate& g) {
    struct Shape {
        int exp10;
        int n;
    };
    const Shape shapes[20] = {{5, 2},   {5, 6},   {10, 2},  {10, 6},  {10, 10},
                              {20, 2},  {20, 6},  {20, 10}, {50, 2},  {50, 6},
                              {50, 10}, {50, 20}, {100, 2}, {100, 6}, {100, 10},
                              {100, 20}, {100, 50}, {200, 2}, {200, 20}, {200, 50}};
    const double Xs[3] = {1e3, 1e4, 1e6};
    const double Ss[3] = {0.0, 0.3, 1.7};
    for (int i = 0; i < 20; ++i) {
        double L = shapes[i].exp10 * std::log(10.0);
        int n = shapes[i].n;
        int r1 = (i % 3 == 0) ? 0 : (i % 3 == 1) ? 1 : n;
        double X = Xs[i % 3];
        double S = Ss[(i / 3) % 3];
        double sigma_star = 1.0 + 1.0 / std::sqrt(L);
        std::string tag = "grid point " + std::to_string(i) + " (log10 D = " +
                          std::to_string(shapes[i].exp10) + ", n = " + std::to_string(n) + ")";
        double at_star = sigma_bound({L, n, r1, X, sigma_star, S});
        double plain = thm1_bound(L, n, X, true);
        g.check(at_star > 0, tag + ": sigma bound positive");
        g.check(at_star <= plain, tag + ": sigma bound " + fmt(at_star) +
                                      " should not exceed the main bound " + fmt(plain));
        double cor = corollary_bound(L, n, r1, X, S);
        double at_15 = sigma_bound({L, n, r1, X, 1.5, S});
        g.check(std::abs(cor - at_15) <= 1e-12 * at_15,
                tag + ": frozen sigma = 1.5 form differs: " + fmt(cor, 17) + " vs " + fmt(at_15, 17));
    }
    g.note("20 grid points: sigma = 1 + 1/sqrt(log D) dominance and sigma = 1.5 specialization");
}

// ---- criterion 4: explicit-formula residual within budget, shrinking in zeros ----
void criterion_weil(Gate& g) {
    auto zeros = load_zeros(zeros_file);
    g.check(zeros.gammas.size() >= 1000, "at least 1000 zeros loaded");
    for (double X : {20.0, 50.0}) {
        auto r100 = weil_residual(zeros, 1.5, X, 1e6, 100);
        auto r1000 = weil_residual(zeros, 1.5, X, 1e6, 1000);
        g.check(r1000.zero_count == 1000, "X=" + fmt(X) + ": 1000 zeros used");
        g.check(r100.residual <= r100.tail_estimate,
                "X=" + fmt(X) + ", 100 zeros: residual " + fmt(r100.residual) + " vs budget " +
                    fmt(r100.tail_estimate));
        g.check(r1000.residual <= r1000.tail_estimate,
                "X=" + fmt(X) + ", 1000 zeros: residual " + fmt(r1000.residual) + " vs budget " +
                    fmt(r1000.tail_estimate));
        g.check(r1000.residual < r100.residual,
                "X=" + fmt(X) + ": residual should shrink with more zeros (" +
                    fmt(r1000.residual) + " vs " + fmt(r100.residual) + ")");
        g.note("s=1.5, X=" + fmt(X) + ": residual " + fmt(r100.residual) + " (100 zeros) -> " +
               fmt(r1000.residual) + " (1000 zeros), budget " + fmt(r1000.tail_estimate));
    }
}

// ---- criterion 5: zero-sum constant bracketing and the Stark-style identity ----
void criterion_zerosum(Gate& g) {
    auto zeros = load_zeros(zeros_file);
    g.check(zeros.gammas.size() >= 1000, "at least 1000 zeros loaded");
    auto zs = zeta_zero_sum_constant(zeros);
    g.check(zs.partial <= 0.023095 && 0.023095 <= zs.partial + zs.tail_bound,
            "0.023095 should lie in [partial, partial + tail] = [" + fmt(zs.partial, 9) + ", " +
                fmt(zs.partial + zs.tail_bound, 9) + "]");
    g.check(zs.partial <= zs.target && zs.target <= zs.partial + zs.tail_bound,
            "exact constant " + fmt(zs.target, 12) + " bracketed");
    g.note("zero-sum constant: partial " + fmt(zs.partial, 9) + " + tail " + fmt(zs.tail_bound, 9) +
           " brackets " + fmt(zs.target, 9));
    auto st = stark_sum_check(zeros, 2.0);
    g.check(st.residual <= st.tail_budget, "stark sigma=2: residual " + fmt(st.residual) +
                                               " vs budget " + fmt(st.tail_budget));
    g.note("stark sigma=2: residual " + fmt(st.residual) + " within budget " + fmt(st.tail_budget));
}

// ---- criterion 6: character path == factorization path on every quadratic field ----
void criterion_split_agreement(Gate& g) {
    auto primes = primes_below(1e4);
    long fields = 0;
    unsigned long long comparisons = 0;
    int mismatches = 0;
    for (std::int64_t d = -9999; d <= 9999; ++d) {
        if (d == 0 || d == 1 || !is_fundamental_discriminant(cpp_int(d))) continue;
        auto K = quadratic_field(cpp_int(d));
        auto Kg = K;
        Kg.fundamental_disc.reset(); // forces the factorization path
        ++fields;
        for (std::uint32_t p : primes) {
            auto a = split_prime(K, p);
            auto b = split_prime(Kg, p);
            if (a.factors != b.factors || a.index_divisor != b.index_divisor) {
                if (++mismatches <= 5)
                    g.check(false, "paths disagree at d=" + std::to_string(d) +
                                       ", p=" + std::to_string(p));
                continue;
            }
            if (!a.index_divisor) {
                int total = 0;
                for (auto& [f, e] : a.factors) total += f * e;
                if (total != 2) {
                    g.check(false, "sum e_i f_i != 2 at d=" + std::to_string(d) +
                                       ", p=" + std::to_string(p));
                    ++mismatches;
                }
            }
            ++comparisons;
        }
    }
    g.check(mismatches == 0, std::to_string(mismatches) + " disagreements");
    g.check(fields > 6000, "expected more than 6000 fundamental discriminants, saw " +
                               std::to_string(fields));
    g.note(std::to_string(fields) + " fields x " + std::to_string(primes.size()) +
           " primes, " + std::to_string(comparisons) + " agreeing splittings");
    g.check(dedekind_index_divisor(IntPolynomial(std::vector<cpp_int>{3, 0, 1}), 2),
            "x^2 + 3: 2 divides the index");
    g.check(!dedekind_index_divisor(IntPolynomial(std::vector<cpp_int>{1, 0, 1}), 2),
            "x^2 + 1: 2 does not divide the index");
}

// ---- criterion 7: command output invariant under the thread count ----
struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LOGKAPPA_CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult r;
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string strip_wall_time(const std::string& s) {
    static const std::regex re("\"wall_time\":[^,}]*");
    return std::regex_replace(s, re, "\"wall_time\":_");
}

void criterion_determinism(Gate& g) {
    std::string ov_path = "acceptance_override.txt";
    {
        std::ofstream ov(ov_path);
        ov << "2: 1^1 1^1 1^1\n";
    }
    const std::vector<std::string> cmds = {
        "estimate --poly 1,1,0,1 --x 30000 --method f --bound thm1-beta",
        "estimate --poly 1,0,1 --x 10000 --method f --bound thm2",
        "estimate --poly 1,0,1 --x 10000 --method g",
        "estimate --poly -8,-2,-1,1 --x 2000 --method a --override " + ov_path,
        "table1 --format tsv",
        "split --poly 1,1,0,1 --x 1000 --format tsv",
        "verify --check zerosum --zeros " + zeros_file,
    };
    for (const auto& cmd : cmds) {
        auto one = run_cli(cmd + " --threads 1");
        auto four = run_cli(cmd + " --threads 4");
        g.check(one.exit_code == 0 && four.exit_code == 0, cmd + ": exit codes " +
                    std::to_string(one.exit_code) + " / " + std::to_string(four.exit_code));
        g.check(strip_wall_time(one.out) == strip_wall_time(four.out),
                cmd + ": output differs between --threads 1 and --threads 4");
    }
    g.note(std::to_string(cmds.size()) + " commands byte-identical modulo wall_time");
}

// ---- criterion 8: large-X behaviour of the main bound at log10 D = 100, n = 2 ----
void criterion_asymptotic(Gate& g) {
    double L = 100.0 * std::log(10.0);
    int n = 2;
    double sL2 = (std::sqrt(L) + 2.0) * (std::sqrt(L) + 2.0);
    const double xs[4] = {1e20, 1e50, 1e100, 1e180};
    double prev = std::numeric_limits<double>::infinity();
    double last = 0;
    std::string seq;
    for (double X : xs) {
        double b = thm1_bound(L, n, X, true);
        double coherent = b * std::sqrt(X) * std::log(3.0 * X) / sL2;
        g.check(std::isfinite(coherent) && coherent > 0, "ratio finite at X=" + fmt(X));
        g.check(coherent < prev, "ratio should decrease towards its limit at X=" + fmt(X));
        prev = coherent;
        last = coherent;
        if (!seq.empty()) seq += " -> ";
        seq += fmt(coherent, 7);
    }
    g.check(last < 2.35, "limit ratio " + fmt(last, 7) + " should fall below 2.35");
    g.note("bound * sqrt(X) log(3X) / (sqrt(log D) + 2)^2: " + seq + " (limit 2.325)");
    double b180 = thm1_bound(L, n, 1e180, true);
    double by_logd = b180 * std::sqrt(1e180) * std::log(3e180) / L;
    g.note("for contrast, normalizing by log D alone gives " + fmt(by_logd, 7) +
           " (limit " + fmt(bound_C0 * sL2 / L, 7) + ", above 2.35): the constant is only "
           "attained against (sqrt(log D) + 2)^2");
}

} // namespace

int main() {
    struct Entry {
        int number;
        const char* what;
        void (*fn)(Gate&);
    };
    const Entry entries[] = {
        {1, "minimal-X table matches the reference grid", criterion_table},
        {2, "certified containment on 20 quadratic fields", criterion_fields},
        {3, "sigma-family dominance and sigma=1.5 specialization", criterion_sigma},
        {4, "explicit-formula residual within budget", criterion_weil},
        {5, "zero-sum constant bracketing and Stark identity", criterion_zerosum},
        {6, "character and factorization splitting paths agree", criterion_split_agreement},
        {7, "outputs invariant under thread count", criterion_determinism},
        {8, "large-X ratio of the main bound", criterion_asymptotic},
    };
    int failed = 0;
    for (const auto& e : entries) {
        Gate g;
        auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn(g);
        } catch (const std::exception& ex) {
            g.ok = false;
            g.notes.push_back(std::string("FAILED: unexpected exception: ") + ex.what());
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (e.number == 1 && dt >= 60.0) {
            g.ok = false;
            g.notes.push_back("FAILED: table took " + fmt(dt) + " s, budget is 60 s");
        }
        std::printf("[%s] criterion %d: %s (%.1f s)\n", g.ok ? "PASS" : "FAIL", e.number, e.what,
                    dt);
        for (const auto& nline : g.notes) std::printf("       %s\n", nline.c_str());
        if (!g.ok) ++failed;
    }
    if (failed == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d of 8 criteria FAILED\n", failed);
    return 1;
}
