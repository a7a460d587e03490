// fdbruno — partition-indexed chain rule engine for higher-order derivatives
// of composite maps, with exact-series, free-algebra, and difference-sum
// verification suites.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdb/chain_rule.hpp"
#include "fdb/free_algebra.hpp"
#include "fdb/function_spec.hpp"
#include "fdb/multilinear.hpp"
#include "fdb/partitions.hpp"
#include "fdb/strict_diff.hpp"
#include "fdb/verify.hpp"

namespace {

std::vector<double> parse_csv_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("empty vector literal: " + csv);
    return out;
}

std::vector<fdb::Rat> parse_csv_rationals(const std::string& csv) {
    std::vector<fdb::Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(fdb::rat_from_string(item));
    if (out.empty()) throw std::invalid_argument("empty vector literal: " + csv);
    return out;
}

// semicolon-separated list of comma-separated vectors
std::vector<std::vector<double>> parse_dirs(const std::string& s) {
    std::vector<std::vector<double>> dirs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) dirs.push_back(parse_csv_doubles(item));
    return dirs;
}

int run_bell(int n) {
    std::cout << fdb::bell(n).str() << "\n";
    return 0;
}

int run_partitions(int n, const std::string& format) {
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        fdb::PartitionStream stream(n);
        while (auto p = stream.next()) arr.push_back(p->blocks);
        std::cout << arr.dump() << "\n";
    } else {
        fdb::PartitionStream stream(n);
        while (auto p = stream.next()) std::cout << p->to_string() << "\n";
    }
    return 0;
}

int run_compose(const std::string& f_path, const std::string& g_path, const std::string& x_csv,
                int order, const std::string& ring, const std::string& format) {
    if (format != "json")
        throw std::invalid_argument("compose emits the tower schema; only --format json exists");
    if (ring != "float64" && ring != "exact")
        throw std::invalid_argument("--ring must be float64 or exact");
    auto f_spec = fdb::parse_function_spec_file(f_path);
    auto g_spec = fdb::parse_function_spec_file(g_path);

    nlohmann::ordered_json out;
    if (ring == "exact") {
        if (!f_spec.exact_capable() || !g_spec.exact_capable())
            throw std::invalid_argument(
                "exact ring requires polynomial/linear specs (exp/sin/cos are float-only)");
        auto x = parse_csv_rationals(x_csv);
        auto f_t = fdb::build_tower_exact(f_spec, x, order);
        auto g_t = fdb::build_tower_exact(g_spec, f_t.value, order);
        out = fdb::tower_to_json(fdb::compose_towers(g_t, f_t, order));
    } else {
        auto x = parse_csv_doubles(x_csv);
        auto f_t = fdb::build_tower(f_spec, x, order);
        auto g_t = fdb::build_tower(g_spec, f_t.value, order);
        out = fdb::tower_to_json(fdb::compose_towers(g_t, f_t, order));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_diff_check(const std::string& f_path, const std::string& x_csv, int order, double h,
                   bool richardson, const std::string& dirs_str, const std::string& format) {
    auto spec = fdb::parse_function_spec_file(f_path);
    auto x = parse_csv_doubles(x_csv);
    auto bb = fdb::black_box(spec);
    if (static_cast<int>(x.size()) != bb.in_dim)
        throw std::invalid_argument("diff-check: base point dimension mismatch");

    std::vector<std::vector<double>> dirs;
    if (dirs_str.empty()) {
        // default: the normalized all-ones direction, repeated
        std::vector<double> d(bb.in_dim, 1.0 / std::sqrt(static_cast<double>(bb.in_dim)));
        dirs.assign(order, d);
    } else {
        dirs = parse_dirs(dirs_str);
        if (static_cast<int>(dirs.size()) != order)
            throw std::invalid_argument("diff-check: need exactly --order directions");
    }

    fdb::EstimateOptions opt;
    opt.richardson = richardson;
    if (h > 0) opt.h = h;
    auto est = fdb::estimate_derivative(bb, x, dirs, opt);

    auto tower = fdb::build_tower(spec, x, order);
    std::vector<double> chain =
        order == 0 ? tower.value : fdb::eval(tower.derivs[order - 1], dirs);

    double scale = 0.0, gap = 0.0;
    for (std::size_t j = 0; j < chain.size(); ++j) {
        scale = std::max(scale, std::abs(chain[j]));
        gap = std::max(gap, std::abs(est.value[j] - chain[j]));
    }
    double rel = gap / std::max(scale, 1e-300);

    if (format == "json") {
        nlohmann::ordered_json j;
        j["order"] = order;
        j["h"] = est.h_used;
        j["richardson"] = richardson;
        j["estimate"] = est.value;
        j["chain_rule"] = chain;
        j["relative_error"] = rel;
        j["evaluations"] = est.evals;
        j["digits_lost"] = est.digits_lost;
        j["cancellation_warning"] = est.cancellation_warning;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "estimate   :";
        for (double v : est.value) std::cout << " " << v;
        std::cout << "\nchain rule :";
        for (double v : chain) std::cout << " " << v;
        std::cout << "\nrel error  : " << rel << "  (h=" << est.h_used
                  << ", evals=" << est.evals << ")\n";
        if (est.cancellation_warning)
            std::cout << "warning: ~" << est.digits_lost << " decimal digits lost to cancellation\n";
    }
    return 0;
}

int run_series_check(const std::string& suite, int vars, int cap, int trials,
                     std::uint64_t seed) {
    fdb::RunReport rep;
    if (suite == "leibniz")
        rep = fdb::series_suite_leibniz(vars, cap, trials, seed);
    else if (suite == "split")
        rep = fdb::series_suite_split(vars, cap, trials, seed);
    else if (suite == "alg7")
        rep = fdb::series_suite_alg7(vars, cap, trials, seed);
    else
        throw std::invalid_argument("unknown suite: " + suite);
    std::cout << fdb::report_to_text(rep);
    return rep.ok() ? 0 : 1;
}

int run_lemma2(int n, bool dump) {
    auto lhs = fdb::lemma2_lhs(n);
    auto rhs = fdb::lemma2_rhs(n);
    bool ok = lhs == rhs;
    if (dump) {
        const std::string base = "lemma2_n" + std::to_string(n) + "_";
        std::ofstream(base + "lhs.txt") << lhs.to_string() << "\n";
        std::ofstream(base + "rhs.txt") << rhs.to_string() << "\n";
        std::cout << "wrote " << base << "lhs.txt and " << base << "rhs.txt\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_verify_all(std::uint64_t seed, const std::string& format) {
    auto reports = fdb::run_all(seed);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.ok();
    if (format == "json") {
        std::cout << fdb::reports_to_json(reports);
    } else {
        for (const auto& r : reports) std::cout << fdb::report_to_text(r);
        std::cout << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fdbruno: higher-order derivative composition via the partition chain rule.\n"
        "Seeded subcommands draw cases from splitmix64 (increment 0x9E3779B97F4A7C15,\n"
        "mix constants 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB, shifts 30/27/31);\n"
        "bounded draws are next() mod n, so case streams are portable."};
    app.require_subcommand(1);

    int n = 0, order = 1, vars = 3, cap = 6, trials = 100;
    double h = 0.0;
    bool richardson = false, dump = false;
    std::uint64_t seed = 42;
    std::string format = "json", ring = "float64", suite;
    std::string f_path, g_path, x_csv, dirs_str;

    auto* bell_cmd = app.add_subcommand("bell", "print |H({0..n-1})|");
    bell_cmd->add_option("--n", n, "ground-set size")->required()->check(CLI::NonNegativeNumber);

    auto* part_cmd = app.add_subcommand("partitions", "enumerate set partitions");
    part_cmd->add_option("--n", n, "ground-set size")->required()->check(CLI::NonNegativeNumber);
    part_cmd->add_option("--format", format, "json|text (default json)");

    auto* compose_cmd =
        app.add_subcommand("compose", "tower of g o f at x (f inner, g outer)");
    compose_cmd->add_option("--f", f_path, "inner function spec (JSON file)")->required();
    compose_cmd->add_option("--g", g_path, "outer function spec (JSON file)")->required();
    compose_cmd->add_option("--x", x_csv, "base point, comma-separated")->required();
    compose_cmd->add_option("--order", order, "tower order N")->required()
        ->check(CLI::NonNegativeNumber);
    compose_cmd->add_option("--format", format, "json (tower schema)");
    compose_cmd->add_option("--ring", ring, "float64|exact (default float64)");

    auto* diff_cmd = app.add_subcommand(
        "diff-check", "difference-sum derivative estimate vs the chain-rule value");
    diff_cmd->set_help_flag("--help", "print help");  // frees -h for the step flag
    diff_cmd->add_option("--f", f_path, "function spec (JSON file)")->required();
    diff_cmd->add_option("--x", x_csv, "base point, comma-separated")->required();
    diff_cmd->add_option("--order", order, "derivative order n")->required()
        ->check(CLI::NonNegativeNumber);
    diff_cmd->add_option("--h", h, "step scale (default eps^(1/(n+2)), or eps^(1/(n+3)) with --richardson)");
    diff_cmd->add_flag("--richardson", richardson, "one-level Richardson extrapolation");
    diff_cmd->add_option("--dirs", dirs_str,
                         "directions as 'v1,...;v2,...' (default: normalized all-ones, repeated)");
    diff_cmd->add_option("--format", format, "json|text (default json)");

    auto* series_cmd = app.add_subcommand("series-check", "exact functional-calculus suites");
    series_cmd->add_option("--suite", suite, "leibniz|split|alg7")->required();
    series_cmd->add_option("--vars", vars, "max variables (default 3)");
    series_cmd->add_option("--cap", cap, "max degree cap (default 6)");
    series_cmd->add_option("--trials", trials, "number of seeded cases (default 100)");
    series_cmd->add_option("--seed", seed, "splitmix64 seed (default 42)");

    auto* lemma2_cmd =
        app.add_subcommand("lemma2", "expand and compare both sides of the cover identity");
    lemma2_cmd->add_option("--n", n, "ground-set size (0..4)")->required()
        ->check(CLI::NonNegativeNumber);
    lemma2_cmd->add_flag("--dump", dump, "write canonical serializations of both sides");

    auto* verify_cmd =
        app.add_subcommand("verify-all", "run every acceptance suite and report");
    verify_cmd->add_option("--seed", seed, "splitmix64 seed (default 42)");
    verify_cmd->add_option("--format", format, "json|text (default json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*bell_cmd) return run_bell(n);
        if (*part_cmd) return run_partitions(n, format);
        if (*compose_cmd) return run_compose(f_path, g_path, x_csv, order, ring, format);
        if (*diff_cmd) return run_diff_check(f_path, x_csv, order, h, richardson, dirs_str, format);
        if (*series_cmd) return run_series_check(suite, vars, cap, trials, seed);
        if (*lemma2_cmd) return run_lemma2(n, dump);
        if (*verify_cmd) return run_verify_all(seed, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
