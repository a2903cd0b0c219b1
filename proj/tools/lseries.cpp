// lseries: Dirichlet series and L-function comparison toolkit.
//
// Subcommands: eval, zeros, hamburger, laplace-reconstruct, characters.
// Machine output is a JSON envelope on stdout; data files (zero CSVs) land
// in the output directory. Exit codes: 0 success, 2 input error,
// 3 numerical-integrity flag raised, 4 hypotheses inapplicable.

#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lseries/hamburger.hpp"
#include "lseries/io.hpp"
#include "lseries/laplace_reconstruct.hpp"
#include "lseries/report_json.hpp"
#include "lseries/zeros.hpp"

using nlohmann::ordered_json;
using namespace lseries;
using Cx = std::complex<double>;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string out_dir = ".";
    long seed = 0;
    bool no_timestamp = false;
};

ordered_json make_meta(const Options& opt) {
    ordered_json meta;
    meta["tool"] = "lseries";
    meta["version"] = kVersion;
    if (opt.no_timestamp) {
        meta["timestamp"] = "";
    } else {
        const auto now = std::chrono::system_clock::now();
        const auto t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
        meta["timestamp"] = buf;
    }
    meta["seed"] = opt.seed;
    return meta;
}

void emit(const Options& opt, ordered_json payload) {
    ordered_json envelope;
    envelope["meta"] = make_meta(opt);
    envelope.update(payload);
    std::cout << envelope.dump(2) << "\n";
}

/// "a+bi" / "a-bi" / "a" / "bi" with optional signs.
Cx parse_complex(const std::string& text) {
    std::string s = text;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw Error("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split at the last +/- that is not an exponent sign or leading
        for (std::size_t pos = s.size(); pos-- > 1;) {
            if ((s[pos] == '+' || s[pos] == '-') &&
                s[pos - 1] != 'e' && s[pos - 1] != 'E') {
                const double re = std::stod(s.substr(0, pos));
                std::string imtxt = s.substr(pos);
                if (imtxt == "+") imtxt = "1";
                if (imtxt == "-") imtxt = "-1";
                return {re, std::stod(imtxt)};
            }
        }
        if (s.empty() || s == "+") return {0.0, 1.0};
        if (s == "-") return {0.0, -1.0};
        return {0.0, std::stod(s)};
    }
    return {std::stod(s), 0.0};
}

/// Selector grammar: "zeta" | "1.0" | "q.index" | "q.even" | "q.odd".
/// Imprimitive characters come back as detector-grade induced descriptors.
LFunctionDescriptor resolve_selector(const std::string& selector) {
    if (selector == "zeta" || selector == "1.0") return zeta_descriptor();
    const auto dot = selector.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= selector.size())
        throw Error("selector must be 'zeta' or 'q.index' (got '" + selector +
                    "')");
    const auto q = std::stoull(selector.substr(0, dot));
    const std::string rest = selector.substr(dot + 1);
    DirichletCharacter chi;
    if (rest == "even" || rest == "odd") {
        const int want = rest == "odd" ? 1 : 0;
        bool found = false;
        for (const auto& cand : characters_mod(q)) {
            if (cand.is_principal() || cand.parity != want) continue;
            chi = cand;
            found = true;
            break;
        }
        if (!found)
            throw Error("no non-principal " + rest + " character mod " +
                        std::to_string(q));
    } else {
        chi = character(q, std::stoull(rest));
    }
    if (chi.modulus == 1) return zeta_descriptor();
    if (chi.is_principal())
        throw Error("principal characters mod q > 1 have no completed path; "
                    "pick a non-principal index");
    if (!chi.primitive) return induced_descriptor(chi);
    return to_comparison_form(chi).first;
}

ordered_json complex_json(Cx v) { return {v.real(), v.imag()}; }

int cmd_eval(const Options& opt, const std::string& selector,
             const std::string& s_text, std::size_t series_terms) {
    auto d = resolve_selector(selector);
    const Cx s = parse_complex(s_text);
    ordered_json out;
    out["selector"] = d.id;
    out["s"] = complex_json(s);
    if (series_terms > 0) {
        auto series = d.series(series_terms);
        series.sigma_a_hint = 1.0;
        auto r = evaluate(series, s, series_terms);
        out["mode"] = "series";
        out["value"] = complex_json(r.value);
        if (r.tail_bound) out["tail_bound"] = *r.tail_bound;
        else out["tail_bound"] = "unknown";
    } else {
        out["mode"] = "analytic";
        out["value"] = complex_json(d.value(s));
        // documented evaluation target of the Hurwitz backbone
        out["tail_bound"] = 1e-10;
    }
    if (d.kind == LFunctionDescriptor::Kind::character && d.chi.primitive &&
        !d.chi.is_principal()) {
        out["functional_equation_residual"] = functional_equation_residual(d, s);
    }
    emit(opt, out);
    return 0;
}

int cmd_zeros(const Options& opt, const std::string& selector, double T,
              std::string out_file, double grid_step) {
    auto d = resolve_selector(selector);
    auto list = critical_line_zeros(d, T, grid_step);
    if (out_file.empty())
        out_file = opt.out_dir + "/zeros_" + d.id + ".csv";
    {
        std::ofstream os(out_file);
        if (!os) throw Error("cannot open output file " + out_file);
        write_zero_csv(os, list);
    }
    ordered_json out;
    out["selector"] = d.id;
    out["T"] = T;
    out["count"] = list.total_multiplicity();
    out["rectangle_cross_check"] =
        list.off_line_or_missed ? "MISMATCH" : "consistent";
    out["csv"] = out_file;
    out["zeros"] = to_json(list)["zeros"];
    if (list.off_line_or_missed) out["diagnostic"] = list.diagnostic;
    emit(opt, out);
    return list.off_line_or_missed ? 3 : 0;
}

int cmd_hamburger(const Options& opt, const std::string& sel1,
                  const std::string& sel2, std::size_t n_max, double T,
                  double tol, std::optional<std::uint64_t> external_N) {
    auto d1 = resolve_selector(sel1);
    auto d2 = resolve_selector(sel2);
    auto verdict = ratio_polynomial_test(d1, d2, n_max, 1e-9, external_N);
    ordered_json out;
    out["pair"] = {d1.id, d2.id};
    out["verdict"] = to_json(verdict);
    if (verdict.status == VerdictStatus::Inapplicable) {
        emit(opt, out);
        return 4;
    }
    if (verdict.status == VerdictStatus::Verified) {
        auto dual = dual_polynomial_check(verdict, d1, d2, n_max);
        out["dual_check"] = {{"pass", dual.pass},
                             {"worst_deviation", dual.worst_deviation}};
        if (!dual.pass) out["dual_check"]["fail_index"] = dual.fail_index;
    }
    int exit_code = 0;
    if (T > 0.0 && d1.has_entire_completion() && d2.has_entire_completion()) {
        auto z1 = critical_line_zeros(d1, T);
        auto z2 = critical_line_zeros(d2, T);
        auto cmp = compare_zero_multisets(z1, z2, tol);
        out["zero_comparison"] = to_json(cmp);
        out["pole_witnesses"] = ordered_json::array();
        for (const auto& w : certify_pole_witnesses(d1, cmp.only_in_2, tol))
            out["pole_witnesses"].push_back({{"ordinate", w.ordinate},
                                             {"certified", w.certified}});
        out["plot_data"] = ordered_json::array();
        for (const auto* list : {&z1, &z2}) {
            const std::string path =
                opt.out_dir + "/zeros_" + list->descriptor_id + ".csv";
            std::ofstream os(path);
            if (os) write_zero_csv(os, *list);
            out["plot_data"].push_back(path);
            if (list->off_line_or_missed) exit_code = 3;
        }
    }
    emit(opt, out);
    return exit_code;
}

int cmd_laplace(const Options& opt, const std::string& measure_file, double a,
                double b, double epsilon, int degree) {
    std::ifstream is(measure_file);
    if (!is) throw Error("cannot open measure file " + measure_file);
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("measure file parse failure: ") + e.what());
    }
    const auto mu = measure_from_json(doc);
    const double tv = total_variation(mu);

    ordered_json out;
    out["measure_file"] = measure_file;
    out["interval"] = {a, b};
    out["epsilon"] = epsilon;
    out["degree"] = degree;
    out["total_variation"] = tv;
    if (mu.atoms.empty()) {
        out["estimate"] = complex_json(0.0);
        out["error_bound"] = 0.0;
        out["true_mass"] = complex_json(0.0);
        out["within_bound"] = true;
        out["boundary_ambiguous"] = false;
        emit(opt, out);
        return 0;
    }
    auto samples = sample_laplace(mu, degree);
    auto res = interval_mass_from_laplace(samples, a, b, epsilon, tv);
    const Cx truth = interval_mass_direct(mu, a, b);
    out["estimate"] = complex_json(res.estimate);
    out["error_bound"] = res.error_bound;
    out["sup_gap"] = res.sup_gap;
    out["true_mass"] = complex_json(truth);
    out["within_bound"] = std::abs(res.estimate - truth) <= res.error_bound;
    out["boundary_ambiguous"] = boundary_ambiguous(mu, a, b, epsilon);
    emit(opt, out);
    return 0;
}

int cmd_characters(const Options& opt, std::uint64_t q) {
    ordered_json out;
    out["modulus"] = q;
    out["characters"] = ordered_json::array();
    for (const auto& chi : characters_mod(q)) {
        ordered_json c;
        c["index"] = chi.index;
        c["parity"] = chi.parity;
        c["conductor"] = chi.conductor;
        c["primitive"] = chi.primitive;
        c["values"] = ordered_json::array();
        for (std::uint64_t a = 0; a < q; ++a) {
            if (chi.angle[a])
                c["values"].push_back({chi.angle[a]->num(), chi.angle[a]->den()});
            else
                c["values"].push_back(nullptr);
        }
        out["characters"].push_back(std::move(c));
    }
    emit(opt, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet series and L-function comparison toolkit"};
    app.set_config("--config", "", "key = value configuration file");
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--out-dir", opt.out_dir, "directory for emitted data files")
        ->envname("LSERIES_OUT_DIR");
    app.add_option("--seed", opt.seed, "seed recorded in the output header");
    app.add_flag("--no-timestamp", opt.no_timestamp,
                 "blank the timestamp header field");

    // eval
    std::string sel, s_text = "2";
    std::size_t series_terms = 0;
    auto* eval = app.add_subcommand("eval", "evaluate an L-function at s");
    eval->add_option("selector", sel, "zeta | q.index | q.even | q.odd")
        ->required();
    eval->add_option("--s", s_text, "complex point, e.g. 0.5+3i")->required();
    eval->add_option("--series", series_terms,
                     "truncated-series mode with this many terms");

    // zeros
    std::string zsel, zout;
    double T = 30.0, grid_step = 0.05;
    auto* zeros = app.add_subcommand("zeros", "critical-line zero list");
    zeros->add_option("selector", zsel)->required();
    zeros->add_option("--T", T, "height bound (documented ceiling 60)")
        ->check(CLI::Range(1e-6, 60.0))
        ->required();
    zeros->add_option("--out", zout, "CSV path (default out-dir/zeros_<id>.csv)");
    zeros->add_option("--grid-step", grid_step, "initial scan step");

    // hamburger
    std::string hsel1, hsel2;
    std::size_t n_max = 64;
    double hT = 0.0, htol = 1e-4;
    std::uint64_t next_n = 0;
    auto* ham = app.add_subcommand(
        "hamburger", "ratio polynomial test plus zero comparison");
    ham->add_option("selector1", hsel1)->required();
    ham->add_option("selector2", hsel2)->required();
    ham->add_option("--n-max", n_max, "coefficient truncation");
    ham->add_option("--T", hT, "zero comparison height (0 = skip)");
    ham->add_option("--tol", htol, "zero matching tolerance")
        ->check(CLI::PositiveNumber);
    auto* nopt = ham->add_option("--N", next_n,
                                 "external N override (detector-only mode)");

    // laplace-reconstruct
    std::string measure_file;
    double la = 1.0, lb = 1.3, leps = 0.01;
    int ldegree = 400;
    auto* lap = app.add_subcommand("laplace-reconstruct",
                                   "interval mass from Laplace samples");
    lap->add_option("measure", measure_file, "measure JSON file")->required();
    lap->add_option("--a", la, "interval left endpoint")->required();
    lap->add_option("--b", lb, "interval right endpoint")->required();
    lap->add_option("--epsilon", leps, "mollifier ramp width")
        ->required()
        ->check(CLI::PositiveNumber);
    lap->add_option("--degree", ldegree, "Bernstein degree")
        ->check(CLI::PositiveNumber);

    // characters
    std::uint64_t cq = 1;
    auto* chars = app.add_subcommand("characters", "character registry mod q");
    chars->add_option("--q", cq, "modulus")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return cmd_eval(opt, sel, s_text, series_terms);
        if (zeros->parsed()) return cmd_zeros(opt, zsel, T, zout, grid_step);
        if (ham->parsed()) {
            std::optional<std::uint64_t> external_N;
            if (nopt->count() > 0) external_N = next_n;
            return cmd_hamburger(opt, hsel1, hsel2, n_max, hT, htol, external_N);
        }
        if (lap->parsed())
            return cmd_laplace(opt, measure_file, la, lb, leps, ldegree);
        if (chars->parsed()) return cmd_characters(opt, cq);
    } catch (const InapplicableError& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return 4;
    } catch (const BoundaryError& e) {
        std::cerr << "numerical integrity: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
