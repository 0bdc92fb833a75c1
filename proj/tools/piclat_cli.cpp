#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "piclat/suites.hpp"

using namespace piclat;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_compute(const ComputeRequest& req, const std::string& format) {
    Json env = compute(req);
    if (format == "md")
        std::cout << envelope_markdown(env);
    else
        std::cout << env.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"picard groups of moduli of G-bundles on curves"};
    app.require_subcommand(1);

    ComputeRequest req;
    std::string datum_file, format = "json";
    long delta = 0;
    auto* comp = app.add_subcommand("compute", "compute one quantity for one group");
    comp->add_option("--group", req.group, "group spec, e.g. SL:4/mu:2, GL:3, torus:2 x Sp:4");
    comp->add_option("--datum-file", datum_file, "custom root datum file");
    comp->add_option("--g", req.g, "genus")->check(CLI::NonNegativeNumber);
    comp->add_option("--n", req.n, "number of marked points")->check(CLI::NonNegativeNumber);
    auto* dopt = comp->add_option("--delta", delta, "multiple of the shorthand generator of pi1");
    auto* vopt = comp->add_option("--delta-vec", req.delta_vec, "explicit lift, comma separated");
    dopt->excludes(vopt);
    comp->add_option("--quantity", req.quantity, "quantity")->check(CLI::IsMember(compute_quantities()));
    comp->add_option("--format", format)->check(CLI::IsMember({"json", "md"}));
    comp->add_flag("--rigidified", req.rigidified);
    comp->add_option("--char", req.characteristic, "characteristic of the base field");

    TableOptions topt;
    std::string tformat = "md";
    auto* tab = app.add_subcommand("table", "family table, engine against closed forms");
    tab->add_option("--family", topt.family)->required()->check(CLI::IsMember({"A", "BC", "D", "E", "FG", "tori"}));
    tab->add_option("--nmin", topt.nmin);
    tab->add_option("--nmax", topt.nmax);
    tab->add_option("--lmin", topt.lmin);
    tab->add_option("--lmax", topt.lmax);
    tab->add_option("--dim", topt.dim);
    tab->add_option("--g", topt.g);
    tab->add_option("--dmax", topt.dmax);
    tab->add_option("--format", tformat)->check(CLI::IsMember({"json", "md"}));

    std::string suite = "all";
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*comp) {
            if (!datum_file.empty()) req.datum_text = slurp(datum_file);
            if (req.group.empty() && req.datum_text.empty()) throw Error("ParseError", "--group or --datum-file required");
            if (*dopt) req.delta = delta;
            return run_compute(req, format);
        }
        if (*tab) {
            auto rows = family_table(topt, worker_threads());
            bool ok = true;
            for (const auto& r : rows) ok = ok && r.ok;
            if (tformat == "json")
                std::cout << table_json(topt.family, rows).dump(2) << "\n";
            else
                std::cout << table_markdown(topt.family, rows);
            return ok ? 0 : 4;
        }
        if (*ver) {
            SuiteResult r = run_suite(suite, worker_threads());
            std::cout << r.name << ": " << r.passed << " passed, " << r.failed << " failed (" << r.seconds << " s)\n";
            for (const auto& f : r.failures) std::cout << "  " << f << "\n";
            return r.ok() ? 0 : 5;
        }
    } catch (const Error& e) {
        std::cerr << "error " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error Internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
