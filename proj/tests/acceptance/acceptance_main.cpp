// Acceptance run: one PASS/FAIL line per criterion, indented detail underneath.
// Exit status is 0 only when every criterion passes; with --report-only it is 0 unless a
// criterion could not be evaluated at all (exit 3).

#include "zreg/cli/suites.hpp"
#include "zreg/kernel/properties.hpp"

#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>

using namespace zreg;

namespace {

struct Criterion {
    int number = 0;
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    [[nodiscard]] bool pass() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    void add(const Check& c) { checks.push_back(c); }
    void add(const std::vector<Check>& v) { checks.insert(checks.end(), v.begin(), v.end()); }
};

std::string line(const Check& c) {
    std::string s = std::string(c.pass ? "ok   " : "FAIL ") + c.id;
    if (!c.value.empty()) s += ": " + c.value;
    if (!c.expected.empty() && !c.pass) s += " (expected " + c.expected + ")";
    if (!c.detail.empty()) s += "; " + c.detail;
    return s;
}

Criterion virasoro() {
    Criterion c{1, "Virasoro central term on M(1), weight <= 6, m in {1,2,3}", {}, {}};
    for (long m = 1; m <= 3; ++m) {
        c.add(virasoro_central_check(m, 12, false));
        c.add(virasoro_central_check(m, 12, true));
    }
    return c;
}

Criterion neveu_schwarz() {
    Criterion c{2, "Neveu-Schwarz relations with c = 3/2 on W, weight <= 5, and the corrected G central term", {}, {}};
    c.add(ns_relation_checks(10, 2));
    c.add(central_family_checks(CentralFamily::NS, 0, 0, 3, 10));
    c.notes.push_back("the corrected G-bracket central term is measured as m^2/2 against the displayed m^2/12 * 3/2 = m^2/8");
    return c;
}

Criterion central_monomials() {
    Criterion c{3, "Pure-monomial central terms ss0, ss2 (r,s in {1,2}), ss4 (r,s in {0,1,2})", {}, {}};
    for (long r = 1; r <= 2; ++r)
        for (long s = 1; s <= 2; ++s) c.add(central_family_checks(CentralFamily::BosonSS0, r, s, 3, 8));
    for (long r = 1; r <= 2; ++r)
        for (long s = 1; s <= 2; ++s) c.add(central_family_checks(CentralFamily::FermionSS2, r, s, 3, 8));
    for (long r = 0; r <= 2; ++r)
        for (long s = 0; s <= 2; ++s) c.add(central_family_checks(CentralFamily::OddSS4, r, s, 3, 8));
    c.notes.push_back("every defect is scalar and a single monomial of the displayed degree; ss0 matches exactly");
    c.notes.push_back("ss2 measures -1/4 times the displayed form; ss4 measures (-1)^{r+s} times it");
    return c;
}

Criterion brackets() {
    Criterion c{4, "Symbolic bracket formulas (y-powers <= 2, |x-degree| <= 2) and 200-case property suites", {}, {}};
    c.add(bracket_identity_checks(2, 2));
    c.add(symbolic_property_checks(200));
    c.notes.push_back("odd/D^- bracket is checked with its arguments in the order that holds; the displayed order is pinned as failing");
    return c;
}

Criterion projectivity() {
    Criterion c{5, "Projectivity: scalar defects for all generator pairs r,s <= 2, |m| <= 2, weight <= 5, stable at 6", {}, {}};
    c.add(projectivity_check(2, 2, 10, 12));
    return c;
}

Criterion zeta() {
    Criterion c{6, "zeta and Hurwitz values", {}, {}};
    SuiteConfig cfg;
    cfg.order = 12;
    c.add(suite_zeta(cfg).checks);
    return c;
}

const SuiteReport& dirichlet_report() {
    static const SuiteReport r = [] {
        SuiteConfig cfg;
        cfg.moduli = {3, 4, 5, 7, 8, 12};
        cfg.order = 12;
        return suite_dirichlet(cfg);
    }();
    return r;
}

bool is_twisted_row(const Check& c) { return c.id.rfind("twisted", 0) == 0; }

Criterion dirichlet() {
    Criterion c{7, "Dirichlet suite for N in {3,4,5,7,8,12}", {}, {}};
    for (const auto& k : dirichlet_report().checks)
        if (!is_twisted_row(k)) c.add(k);
    return c;
}

Criterion twisted() {
    Criterion c{8, "chi-twisted operators for N = 5", {}, {}};
    for (const auto& k : dirichlet_report().checks)
        if (is_twisted_row(k)) c.add(k);
    c.add(twisted_center_checks(5, 1, 1, 1));
    c.notes.push_back("the trivial-central-term check is evaluated on every primitive 4-tuple with nontrivial product; 0 of them vanish");
    return c;
}

Criterion iterates() {
    Criterion c{9, "Iterate bridge for both free pairs, x-order 6, weight <= 4", {}, {}};
    c.add(iterate_check(FreeGenerator::Boson, FreeGenerator::Boson, 6, 8));
    c.add(iterate_check(FreeGenerator::Fermion, FreeGenerator::Fermion, 6, 8));
    return c;
}

Criterion characters() {
    Criterion c{10, "Characters, eta quotient and level-two quasimodular identities", {}, {}};
    c.add(trace_check(CharacterSector::Boson, 2, Rational(5), RamondPrefactor::Displayed));
    c.add(trace_check(CharacterSector::NSFermion, 2, Rational(9, 2), RamondPrefactor::Displayed));
    c.add(trace_check(CharacterSector::RamondFermion, 2, Rational(4), RamondPrefactor::Displayed));
    auto eta = eta_quotient_check(20);
    c.add(detail::bool_check("eta quotient order 20", "\\frac{\\eta(q)^2}{\\eta(q^2) \\eta(q^{1/2})}", eta.pass(),
                             std::to_string(eta.compared) + " coefficients"));
    SuiteConfig cfg;
    cfg.order = 12;
    for (const auto& k : suite_quasimod(cfg).checks)
        if (k.id.rfind("form4", 0) == 0) c.add(k);
    cfg.order = 20;
    for (const auto& k : suite_quasimod(cfg).checks)
        if (k.id.rfind("form3", 0) == 0) c.add(k);
    cfg.order = 24;
    for (const auto& k : suite_quasimod(cfg).checks)
        if (k.id.rfind("form6", 0) == 0) c.add(k);
    return c;
}

Criterion kernel() {
    Criterion c{11, "Kernel property suites, 1000 cases each", {}, {}};
    for (const auto& p : kernel_properties(1000))
        c.add(detail::bool_check(p.name, "exact arithmetic", p.pass(),
                                 std::to_string(p.cases - p.failures) + "/" + std::to_string(p.cases) +
                                     (p.first_failure.empty() ? "" : ", first failure " + p.first_failure)));
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    bool report_only = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--report-only") == 0) {
            report_only = true;
        } else {
            std::cerr << "usage: acceptance [--report-only]\n";
            return 2;
        }
    }
    std::vector<std::function<Criterion()>> all = {virasoro, neveu_schwarz, central_monomials, brackets, projectivity, zeta,
                                                   dirichlet, twisted,       iterates,          characters, kernel};
    int passed = 0;
    bool internal = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c;
        try {
            c = all[i]();
        } catch (const std::exception& e) {
            std::cout << "FAIL " << (i + 1) << " (internal error: " << e.what() << ")\n" << std::flush;
            internal = true;
            continue;
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        passed += c.pass() ? 1 : 0;
        long ok = std::count_if(c.checks.begin(), c.checks.end(), [](const Check& k) { return k.pass; });
        std::cout << (c.pass() ? "PASS " : "FAIL ") << c.number << " " << c.title << "\n";
        std::cout << "    " << ok << "/" << c.checks.size() << " checks, " << std::fixed << std::setprecision(1) << secs << "s\n";
        for (const auto& k : c.checks) std::cout << "    " << line(k) << "\n";
        for (const auto& n : c.notes) std::cout << "    note: " << n << "\n";
        std::cout << std::flush;
    }
    std::cout << passed << "/" << all.size() << " criteria passed\n";
    if (internal) return 3;
    if (report_only) return 0;
    return passed == static_cast<int>(all.size()) ? 0 : 1;
}
