// multisle command line front end.  Subcommands map one-to-one onto library
// entry points; everything prints a single JSON object (or CSV with
// --format csv) so runs diff cleanly.
//
// Exit codes: 0 success, 2 bad usage / validation, 3 numerical failure.

#include <multisle/errors.hpp>
#include <multisle/euler.hpp>
#include <multisle/fomin.hpp>
#include <multisle/hypergeometric.hpp>
#include <multisle/pairings.hpp>
#include <multisle/ust.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;

namespace {

// 15 significant digits everywhere so golden files stay stable
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

json jnum(double v) { return json::parse(num(v)); }

void emit(const json& j, const std::string& format) {
    if (format == "csv") {
        std::string head, row;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!head.empty()) { head += ','; row += ','; }
            head += it.key();
            row += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
        }
        std::printf("%s\n%s\n", head.c_str(), row.c_str());
    } else {
        std::printf("%s\n", j.dump().c_str());
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for multiple-SLE crossing quantities"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* cross = app.add_subcommand("crossing", "chordal crossing probability at cross-ratio r");
    cross->fallthrough();
    double cr_r = 0.5, cr_kappa = 6.0;
    cross->add_option("--r", cr_r, "cross-ratio in [0,1]")->required();
    cross->add_option("--kappa", cr_kappa, "SLE parameter in (0,8)")->required();

    auto* pair = app.add_subcommand("pairings", "non-crossing pairings of 2n boundary points");
    pair->fallthrough();
    int pr_n = 2;
    bool pr_count = false;
    pair->add_option("--n", pr_n, "number of chords")->required();
    pair->add_flag("--count", pr_count, "print the Catalan count only");

    auto* fom = app.add_subcommand("fomin", "inverse-square pair determinant and nested density");
    fom->fallthrough();
    std::vector<double> fo_x, fo_y;
    fom->add_option("--x", fo_x, "strand sources, increasing")->required()->expected(-1);
    fom->add_option("--y", fo_y, "strand targets, outermost first")->required()->expected(-1);

    auto* ustc = app.add_subcommand("ust", "period-determinant partition function at kappa = 8");
    ustc->fallthrough();
    std::vector<double> us_x;
    double us_tol = 1e-12;
    ustc->add_option("--x", us_x, "marked boundary points, increasing, even count >= 4")
        ->required()
        ->expected(-1);
    ustc->add_option("--tol", us_tol, "quadrature tolerance");

    // remaining subcommands are registered up front so usage text is
    // complete; they come online with their modules
    for (const char* name : {"hexagon", "euler", "verify", "mc"}) {
        auto* sub = app.add_subcommand(name, "not implemented yet");
        sub->fallthrough();
        sub->callback([name] { throw std::invalid_argument(std::string(name) + ": not implemented yet"); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cross->parsed()) {
        double psi = multisle::chordal_crossing(cr_r, cr_kappa);
        emit(json{{"r", jnum(cr_r)}, {"kappa", jnum(cr_kappa)}, {"psi", jnum(psi)}}, format);
        return 0;
    }
    if (fom->parsed()) {
        json out{{"x", json::array()}, {"y", json::array()}};
        for (double v : fo_x) out["x"].push_back(jnum(v));
        for (double v : fo_y) out["y"].push_back(jnum(v));
        out["determinant"] = jnum(multisle::fomin_determinant(fo_x, fo_y));
        try {
            out["density"] = jnum(multisle::fomin_density(fo_x, fo_y));
        } catch (const std::invalid_argument&) {
            out["density"] = nullptr; // sources and targets are not nested
        }
        emit(out, format);
        return 0;
    }
    if (ustc->parsed()) {
        json out{{"x", json::array()}};
        for (double v : us_x) out["x"].push_back(jnum(v));
        out["psi"] = jnum(multisle::psi_ust(us_x, us_tol));
        auto rec = multisle::verify_omega_recursion(us_x, 1e-4, 1e-5, us_tol);
        json jr{{"h", jnum(rec.h)}, {"residuals", json::array()},
                {"max_residual", jnum(rec.max_residual)}, {"pass", rec.pass}};
        for (double r : rec.residuals) jr["residuals"].push_back(jnum(r));
        out["recursion"] = jr;
        if (us_x.size() >= 6) {
            auto dr = multisle::verify_drift_identity(us_x, 1e-4, 1e-5, us_tol);
            out["drift"] = json{{"h", jnum(dr.h)},
                                {"residual", jnum(dr.residual)},
                                {"companion_residual", jnum(dr.companion_residual)},
                                {"pass", dr.pass}};
        } else {
            out["drift"] = nullptr; // needs at least three curves
        }
        emit(out, format);
        return 0;
    }
    if (pair->parsed()) {
        if (pr_count) {
            emit(json{{"n", pr_n}, {"catalan", multisle::catalan(pr_n)}}, format);
            return 0;
        }
        json arr = json::array();
        for (const auto& p : multisle::enumerate_noncrossing_pairings(pr_n)) {
            json chords = json::array();
            for (auto [a, b] : p.pair_list()) chords.push_back({a, b});
            arr.push_back(chords);
        }
        emit(json{{"n", pr_n}, {"count", arr.size()}, {"pairings", arr}}, format);
        return 0;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const multisle::numerical_error& e) {
        std::fprintf(stderr, "multisle: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "multisle: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "multisle: %s\n", e.what());
        return 3;
    }
}
