// zreg: command-line verification driver. Reports are exact; --json emits schemaVersion 1.

#include "zreg/cli/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>

using namespace zreg;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
    SuiteConfig cfg;
    std::vector<long> modulus;
    bool json = false;
    bool approx = false;
    std::string ramond = "paper";
    std::vector<std::string> suites;
};

std::string decimal(const Rational& r) {
    std::ostringstream os;
    os << std::setprecision(12) << r.to_double();
    return os.str();
}

// ----------------------------------------------------------------- check reports

struct Row {
    Check check;
    Json data;  // command-specific attachments
};

Json check_json(const Row& row, bool approx) {
    const Check& c = row.check;
    Json j;
    j["id"] = c.id;
    j["anchor"] = c.anchor;
    j["pass"] = c.pass;
    j["detail"] = c.detail;
    if (!c.value.empty()) j["value"] = c.value;
    if (!c.expected.empty()) j["expected"] = c.expected;
    if (approx && c.numeric) j["approx"] = decimal(*c.numeric);
    if (!row.data.is_null()) j["data"] = row.data;
    return j;
}

struct Section {
    std::string suite;
    std::vector<Row> rows;
    double seconds = 0;
};

std::vector<Row> rows_of(const std::vector<Check>& checks) {
    std::vector<Row> out;
    for (const auto& c : checks) out.push_back({c, Json()});
    return out;
}

Json config_json(const Options& o) {
    return {{"maxWeight", o.cfg.max_weight}, {"maxPower", o.cfg.max_power}, {"seriesOrder", o.cfg.order},
            {"xRange", o.cfg.x_range},       {"mRange", o.cfg.m_range},     {"cases", o.cfg.cases},
            {"moduli", o.cfg.moduli},        {"ramondPrefactor", o.ramond}};
}

int emit_report(const std::string& command, const std::vector<Section>& sections, const Options& o) {
    long total = 0, failed = 0;
    for (const auto& s : sections)
        for (const auto& r : s.rows) {
            ++total;
            failed += r.check.pass ? 0 : 1;
        }
    if (o.json) {
        Json out;
        out["schemaVersion"] = kSchemaVersion;
        out["command"] = command;
        out["config"] = config_json(o);
        out["suites"] = Json::array();
        for (const auto& s : sections) {
            Json js;
            js["suite"] = s.suite;
            js["checks"] = Json::array();
            long sf = 0;
            for (const auto& r : s.rows) {
                js["checks"].push_back(check_json(r, o.approx));
                sf += r.check.pass ? 0 : 1;
            }
            js["summary"] = {{"checks", s.rows.size()}, {"passed", static_cast<long>(s.rows.size()) - sf}, {"failed", sf}};
            js["timing"] = {{"seconds", s.seconds}};
            out["suites"].push_back(js);
        }
        out["summary"] = {{"checks", total}, {"passed", total - failed}, {"failed", failed}, {"pass", failed == 0}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& s : sections) {
            std::cout << "[" << s.suite << "]\n";
            for (const auto& r : s.rows) {
                const Check& c = r.check;
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.id;
                if (!c.value.empty()) std::cout << "  value " << c.value;
                if (!c.expected.empty()) std::cout << "  expected " << c.expected;
                if (o.approx && c.numeric) std::cout << "  ~" << decimal(*c.numeric);
                std::cout << "\n";
                if (!c.detail.empty()) std::cout << "     " << c.detail << "\n";
                std::cout << "     anchor: " << c.anchor << "\n";
            }
        }
        std::cout << (total - failed) << "/" << total << " checks passed\n";
    }
    return failed == 0 && total > 0 ? 0 : 1;
}

// ------------------------------------------------------------------------ tables

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::optional<Rational>> numeric;  // per row, for --approx
};

int emit_table(const Table& t, const Options& o) {
    if (o.json) {
        Json out;
        out["schemaVersion"] = kSchemaVersion;
        out["table"] = t.name;
        out["rows"] = Json::array();
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            Json row;
            for (std::size_t c = 0; c < t.columns.size(); ++c) row[t.columns[c]] = t.rows[i][c];
            if (o.approx && t.numeric[i]) row["approx"] = decimal(*t.numeric[i]);
            out["rows"].push_back(row);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    for (std::size_t c = 0; c < t.columns.size(); ++c) std::cout << (c ? "\t" : "") << t.columns[c];
    if (o.approx) std::cout << "\tapprox";
    std::cout << "\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t c = 0; c < t.rows[i].size(); ++c) std::cout << (c ? "\t" : "") << t.rows[i][c];
        if (o.approx) std::cout << "\t" << (t.numeric[i] ? decimal(*t.numeric[i]) : "");
        std::cout << "\n";
    }
    return 0;
}

Table zeta_table(long max_n) {
    Table t{"zeta", {"n", "value"}, {}, {}};
    for (long n = 1; n <= max_n; ++n) {
        Rational v = zeta_neg(n);
        t.rows.push_back({std::to_string(-n), v.to_string()});
        t.numeric.emplace_back(v);
    }
    return t;
}

Table l_value_table(long modulus, long max_m) {
    Table t{"l-values", {"character", "parity", "m", "n", "value"}, {}, {}};
    for (const auto& chi : primitive_characters(modulus)) {
        if (chi.is_trivial()) continue;
        for (long m = 1; m <= max_m; ++m) {
            Cyclotomic v = l_value_neg(chi, m);
            t.rows.push_back({chi.label(), chi.is_even() ? "even" : "odd", std::to_string(m), std::to_string(1 - m), v.to_string()});
            t.numeric.push_back(v.is_rational() ? std::optional<Rational>(v.rational_value()) : std::nullopt);
        }
    }
    return t;
}

Table eisenstein_table(long k, long order) {
    Table t{"eisenstein", {"n", "coefficient"}, {}, {}};
    auto g = eisenstein(k, order);
    for (long n = 0; n <= order; ++n) {
        t.rows.push_back({std::to_string(n), g.coeff(n).to_string()});
        t.numeric.emplace_back(g.coeff(n));
    }
    return t;
}

FockSpace parse_space(const std::string& s) {
    if (s == "heisenberg") return FockSpace::heisenberg();
    if (s == "ns") return FockSpace::ns();
    if (s == "ns-fermions") return FockSpace::ns_fermions();
    if (s == "ramond") return FockSpace::ramond(true);
    if (s == "ramond-fermions") return FockSpace::ramond_fermions(false);
    throw std::invalid_argument("unknown space: " + s);
}

Table fock_dims_table(const std::string& space, long max_weight) {
    Table t{"fock-dims", {"weight", "dimension"}, {}, {}};
    FockSpace sp = parse_space(space);
    bool half = sp.fermions == FermionSector::NS;
    for (long w2 = 0; w2 <= 2 * max_weight; w2 += half ? 1 : 2) {
        auto n = static_cast<long>(fock_basis(sp, w2).size());
        t.rows.push_back({Rational(w2, 2).to_string(), std::to_string(n)});
        t.numeric.emplace_back(Rational(n));
    }
    return t;
}

Table operator_matrix_table(const std::string& family, long r, const Rational& m, bool corrected, long max_weight) {
    FamilySpec spec;
    FockSpace sp = FockSpace::heisenberg();
    if (family == "L") {
        spec.family = Family::Boson;
    } else if (family == "Lf") {
        spec.family = Family::Fermion;
        sp = FockSpace::ns_fermions();
    } else if (family == "G") {
        spec.family = Family::Odd;
        sp = FockSpace::ns();
    } else {
        throw std::invalid_argument("unknown family: " + family + " (L, Lf, G)");
    }
    spec.r = r;
    spec.index2 = (m * Rational(2)).to_long();
    if (!(m * Rational(2)).is_integer()) throw std::invalid_argument("mode index must be a multiple of 1/2");
    if (corrected) spec = zeta_correct(spec);
    auto op = family_operator<Rational>(spec);
    Table t{"operator-matrix", {"operator", "column", "row", "entry"}, {}, {}};
    for (const auto& s : fock_basis_upto(sp, 2 * max_weight))
        for (const auto& [img, c] : op(s)) {
            if (c.is_zero()) continue;
            t.rows.push_back({spec.label(), s.to_string(), img.to_string(), c.to_string()});
            t.numeric.emplace_back(c);
        }
    return t;
}

// --------------------------------------------------------------- check commands

CentralFamily parse_central(const std::string& f) {
    for (auto x : {CentralFamily::Virasoro, CentralFamily::NS, CentralFamily::BosonSS0, CentralFamily::FermionSS2, CentralFamily::OddSS4})
        if (f == central_family_name(x)) return x;
    throw std::invalid_argument("unknown family: " + f);
}

Section symbolic_section(const std::string& which, const Options& o) {
    Section s{"symbolic", {}, 0};
    std::vector<std::string> ids;
    if (which == "all") {
        for (const auto& b : bracket_identities()) ids.push_back(b.id);
    } else {
        ids.push_back(which);
    }
    for (const auto& id : ids) {
        auto rep = verify_symbolic_bracket(id, o.cfg.max_power, o.cfg.x_range);
        Json ex = Json::array();
        for (const auto& e : rep.examples)
            ex.push_back({{"check", rep.check},
                          {"indices", {{"m", e.m.to_string()}, {"n", e.n.to_string()}, {"powers", e.powers}}},
                          {"lhs", e.lhs},
                          {"rhs", e.rhs},
                          {"pass", false}});
        Check c = detail::bool_check("bracket-" + id, rep.anchor, rep.pass(),
                                     std::to_string(rep.compared) + " coefficients, " + std::to_string(rep.mismatches) + " mismatches");
        s.rows.push_back({c, ex.empty() ? Json() : Json{{"mismatches", ex}}});
    }
    if (which == "all") {
        auto props = symbolic_property_checks(o.cfg.cases);
        for (auto& p : rows_of(props)) s.rows.push_back(p);
    }
    return s;
}

Section commutator_section(const std::string& family, long r, long sidx, const Options& o) {
    Section s{"commutators", {}, 0};
    long w2 = 2 * o.cfg.max_weight;
    if (family == "projectivity") {
        s.rows = rows_of({projectivity_check(std::max(r, sidx), o.cfg.m_range, w2, w2 + 2)});
    } else if (family == "ns-relations") {
        s.rows = rows_of(ns_relation_checks(w2, o.cfg.m_range));
    } else if (family == "virasoro-corrected") {
        for (long m = 1; m <= o.cfg.m_range; ++m) s.rows.push_back({virasoro_central_check(m, w2, true), Json()});
    } else if (family == "twisted") {
        if (o.modulus.size() != 1) throw std::invalid_argument("twisted: give exactly one --modulus");
        s.rows = rows_of(twisted_center_checks(o.modulus.front(), r, sidx, o.cfg.m_range));
    } else {
        s.rows = rows_of(central_family_checks(parse_central(family), r, sidx, o.cfg.m_range, w2));
    }
    return s;
}

Json series_table(const QSeries& q) {
    Json t = Json::array();
    for (const auto& [n, c] : q.terms()) t.push_back({Rational(n, q.den()).to_string(), c.to_string()});
    return t;
}

Row comparison_row(const SeriesComparison& c, const std::string& anchor) {
    std::string detail = std::to_string(c.compared) + " coefficients";
    if (c.first_mismatch) detail += ", first mismatch at q^" + c.first_mismatch->to_string();
    Row row{detail::bool_check(c.name, anchor, c.pass(), detail), Json()};
    if (!c.pass()) row.data = {{"lhs", series_table(c.lhs)}, {"rhs", series_table(c.rhs)}};
    return row;
}

Section quasimod_section(const std::string& identity, const std::vector<long>& js, long order) {
    Section s{"quasimod", {}, 0};
    if (identity == "form3" || identity == "form4") {
        for (long j : js)
            s.rows.push_back(identity == "form3" ? comparison_row(quasimod_form3_check(j, order), "\\frac{F_{2j}^{(2)}(q)}{2^{2j-1}}")
                                                 : comparison_row(level_two_identity(j, order), "F^{(2)}_{2j}(q^2)"));
    } else if (identity == "eta") {
        s.rows.push_back(comparison_row(eta_quotient_check(order), "\\frac{\\eta(q)^2}{\\eta(q^2) \\eta(q^{1/2})}"));
    } else if (identity == "form6") {
        auto m = quasimod_form6_check(js, order);
        std::ostringstream id, os;
        id << "form6 j=(";
        for (std::size_t i = 0; i < js.size(); ++i) id << (i ? "," : "") << js[i];
        id << ") order " << order;
        os << "w=" << m.weight << ", " << m.constraints << " constraints, " << m.unknowns << " unknowns, residual " << m.residual;
        Row row{detail::bool_check(id.str(), "can be expressed as a linear combination of", m.pass(), os.str()), Json()};
        Json coeffs = Json::array();
        for (const auto& c : m.coefficients) coeffs.push_back(c.to_string());
        row.data = {{"weight", m.weight}, {"coefficients", coeffs}, {"surplus", m.surplus()}};
        s.rows.push_back(row);
    } else {
        throw std::invalid_argument("unknown identity: " + identity + " (form3, form4, form6, eta)");
    }
    return s;
}

Section characters_section(const std::string& sector, long vars, long max_weight2, const Options& o) {
    auto sec = parse_sector(sector);
    if (!sec) throw std::invalid_argument("unknown sector: " + sector);
    Rational w(max_weight2, 2);
    Section s{"characters", {}, 0};
    Row row{trace_check(*sec, vars, w, o.cfg.ramond), Json()};
    auto ch = generalized_character(*sec, vars, w, o.cfg.ramond);
    Json terms = Json::array();
    for (const auto& [e, c] : ch.body.terms()) {
        Json ex = Json::array();
        for (std::size_t i = 0; i < e.size(); ++i) ex.push_back(Rational(e[i], ch.body.dens()[i]).to_string());
        terms.push_back({{"exponents", ex}, {"coefficient", c.to_string()}});
    }
    Json pre = Json::array();
    for (const auto& p : ch.prefactor) pre.push_back(p.to_string());
    row.data = {{"variables", ch.body.vars()}, {"prefactor", pre}, {"terms", terms}};
    s.rows.push_back(row);
    return s;
}

Section iterate_section(const std::vector<std::string>& pairs, long x_order, long max_weight) {
    Section s{"iterates", {}, 0};
    auto gen = [](const std::string& x) {
        if (x == "boson") return FreeGenerator::Boson;
        if (x == "fermion") return FreeGenerator::Fermion;
        throw std::invalid_argument("unknown generator: " + x + " (boson, fermion)");
    };
    for (const auto& p : pairs) {
        auto comma = p.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("pair must be u,v: " + p);
        s.rows.push_back({iterate_check(gen(p.substr(0, comma)), gen(p.substr(comma + 1)), x_order, 2 * max_weight), Json()});
    }
    return s;
}

template <class F>
Section timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    Section s = f();
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

std::vector<Section> suite_sections(const SuiteConfig& cfg) {
    std::vector<Section> out;
    for (const auto& r : run_suites(cfg)) out.push_back({r.suite, rows_of(r.checks), r.seconds});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of regularized operator identities"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value file mirroring the flags; flags override it");

    Options o;
    app.add_option("--max-weight", o.cfg.max_weight, "Fock window weight bound")->check(CLI::PositiveNumber);
    app.add_option("--max-power", o.cfg.max_power, "largest y-power in symbolic checks")->check(CLI::PositiveNumber);
    app.add_option("--order,--series-order", o.cfg.order, "series order")->check(CLI::PositiveNumber);
    app.add_option("--x-range", o.cfg.x_range, "largest |x-degree| in symbolic checks")->check(CLI::PositiveNumber);
    app.add_option("--m-range", o.cfg.m_range, "largest |m| in commutator checks")->check(CLI::PositiveNumber);
    app.add_option("--cases", o.cfg.cases, "randomized cases per property")->check(CLI::PositiveNumber);
    app.add_option("--modulus,--moduli", o.modulus, "character moduli")->check(CLI::PositiveNumber);
    app.add_option("--workers", o.cfg.workers, "suite worker threads (0: hardware)");
    app.add_option("--ramond-prefactor", o.ramond, "Ramond vacuum exponents")->check(CLI::IsMember({"paper", "standard"}));
    app.add_option("--suites", o.suites, "suite names for run")->delimiter(',')->check(CLI::IsMember(suite_names()));
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_flag("--approx", o.approx, "add a decimal column for display");

    std::string which = "all";
    auto* vs = app.add_subcommand("verify-symbolic", "symbolic bracket identities");
    std::vector<std::string> bracket_ids = {"all"};
    for (const auto& b : bracket_identities()) bracket_ids.push_back(b.id);
    vs->add_option("--which", which, "identity id")->check(CLI::IsMember(bracket_ids));

    std::string family = "ss0";
    long r = 1, s = 1;
    auto* vc = app.add_subcommand("verify-commutators", "central terms and projectivity on Fock windows");
    vc->add_option("--family", family, "virasoro, virasoro-corrected, ns, ss0, ss2, ss4, ns-relations, projectivity, twisted")
        ->check(CLI::IsMember({"virasoro", "virasoro-corrected", "ns", "ss0", "ss2", "ss4", "ns-relations", "projectivity", "twisted"}));
    vc->add_option("--r", r)->check(CLI::NonNegativeNumber);
    vc->add_option("--s", s)->check(CLI::NonNegativeNumber);

    long max_n = 5;
    auto* zt = app.add_subcommand("zeta-table", "zeta(-n) for n <= max-n");
    zt->add_option("--max-n", max_n)->check(CLI::PositiveNumber);

    long max_m = 1;
    auto* lv = app.add_subcommand("l-values", "L(1-m, chi) for primitive characters");
    lv->add_option("--max-m", max_m)->check(CLI::PositiveNumber);

    long k = 2;
    auto* es = app.add_subcommand("eisenstein", "coefficients of G_k");
    es->add_option("--k", k);

    app.add_subcommand("dirichlet-identities", "Gauss twists, partial fractions, twisted modes");

    std::string sector = "ns";
    long vars = 2;
    std::string char_weight;
    auto* ch = app.add_subcommand("characters", "generalized characters: trace against product");
    ch->add_option("--sector", sector)->check(CLI::IsMember({"boson", "ns", "ramond", "full"}));
    ch->add_option("--vars", vars)->check(CLI::PositiveNumber);
    ch->add_option("--weight", char_weight, "weight bound, may be half-integral (default: --max-weight)");

    std::string identity = "form3";
    std::vector<long> js;
    auto* qm = app.add_subcommand("quasimod-check", "level-two Eisenstein identities");
    qm->add_option("--identity", identity)->check(CLI::IsMember({"form3", "form4", "form6", "eta"}));
    qm->add_option("--j", js, "index list")->check(CLI::PositiveNumber);

    std::vector<std::string> pairs = {"boson,boson", "fermion,fermion"};
    long x_order = 6;
    auto* it = app.add_subcommand("iterate-check", "iterate vertex operators for free pairs");
    it->add_option("--pair", pairs, "u,v with u, v in {boson, fermion}")->delimiter(';');
    it->add_option("--x-order", x_order)->check(CLI::PositiveNumber);

    auto* all = app.add_subcommand("all", "every suite");
    auto* run = app.add_subcommand("run", "selected suites (--suites)");

    std::string space = "heisenberg";
    auto* fd = app.add_subcommand("fock-dims", "graded dimensions of a Fock space");
    fd->add_option("--space", space)->check(CLI::IsMember({"heisenberg", "ns", "ns-fermions", "ramond", "ramond-fermions"}));

    std::string op_family = "L";
    std::string op_m = "0";
    bool corrected = false;
    auto* om = app.add_subcommand("operator-matrix", "nonzero matrix entries of a family operator");
    om->add_option("--family", op_family)->check(CLI::IsMember({"L", "Lf", "G"}));
    om->add_option("--r", r)->check(CLI::NonNegativeNumber);
    om->add_option("--m", op_m, "mode index, e.g. 0, -2, 1/2");
    om->add_flag("--corrected", corrected, "apply the zeta correction at m = 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        o.cfg.ramond = o.ramond == "standard" ? RamondPrefactor::Standard : RamondPrefactor::Displayed;
        if (!o.modulus.empty()) o.cfg.moduli = o.modulus;
        o.cfg.suites = o.suites;

        if (*vs) return emit_report("verify-symbolic", {timed([&] { return symbolic_section(which, o); })}, o);
        if (*vc) return emit_report("verify-commutators", {timed([&] { return commutator_section(family, r, s, o); })}, o);
        if (*zt) return emit_table(zeta_table(max_n), o);
        if (*lv) {
            if (o.modulus.size() != 1) throw std::invalid_argument("l-values: give exactly one --modulus");
            return emit_table(l_value_table(o.modulus.front(), max_m), o);
        }
        if (*es) return emit_table(eisenstein_table(k, o.cfg.order), o);
        if (app.got_subcommand("dirichlet-identities")) {
            SuiteConfig c = o.cfg;
            c.suites = {"dirichlet"};
            return emit_report("dirichlet-identities", suite_sections(c), o);
        }
        if (*ch) {
            long w2 = 2 * o.cfg.max_weight;
            if (!char_weight.empty()) {
                Rational w = Rational::parse(char_weight);
                if (!(w * Rational(2)).is_integer() || w < Rational(0)) throw std::invalid_argument("--weight must be a nonnegative multiple of 1/2");
                w2 = (w * Rational(2)).to_long();
            }
            return emit_report("characters", {timed([&] { return characters_section(sector, vars, w2, o); })}, o);
        }
        if (*qm) {
            if (js.empty()) js = identity == "form6" ? std::vector<long>{1, 1} : std::vector<long>{1, 2, 3};
            return emit_report("quasimod-check", {timed([&] { return quasimod_section(identity, js, o.cfg.order); })}, o);
        }
        if (*it) return emit_report("iterate-check", {timed([&] { return iterate_section(pairs, x_order, o.cfg.max_weight); })}, o);
        if (*all) {
            SuiteConfig c = o.cfg;
            c.suites.clear();
            return emit_report("all", suite_sections(c), o);
        }
        if (*run) {
            if (o.suites.empty()) throw std::invalid_argument("run: --suites is required");
            return emit_report("run", suite_sections(o.cfg), o);
        }
        if (*fd) return emit_table(fock_dims_table(space, o.cfg.max_weight), o);
        if (*om) return emit_table(operator_matrix_table(op_family, r, Rational::parse(op_m), corrected, o.cfg.max_weight), o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
