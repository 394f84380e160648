#include "drshift/cli_core.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

namespace {

struct CommonFlags {
    std::string format = "table";
    std::string out_path;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.format, "Output format: table, csv, json");
    cmd->add_option("--out", flags.out_path, "Write the report to a file instead of stdout");
    cmd->add_option("--threads", flags.threads, "Worker cap (DR_ENTROPY_THREADS also caps)");
}

int run_with_output(const CommonFlags& flags, drshift::RunConfig& cfg,
                    const std::function<int(std::ostream&)>& body) {
    try {
        cfg.format = drshift::parse_format(flags.format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return drshift::kExitParseError;
    }
    cfg.threads = flags.threads;
    if (flags.out_path.empty()) return body(std::cout);
    std::ofstream out(flags.out_path);
    if (!out) {
        std::cerr << "error: cannot open " << flags.out_path << "\n";
        return drshift::kExitParseError;
    }
    return body(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy computations for graph and ultragraph shift spaces"};
    app.require_subcommand(1);

    auto* entropy = app.add_subcommand("entropy", "Entropy pipelines");
    entropy->require_subcommand(1);

    // entropy finite
    std::string finite_builtin, finite_file;
    drshift::RunConfig finite_cfg;
    CommonFlags finite_flags;
    auto* finite = entropy->add_subcommand("finite", "Finite graph: path counting and spectral");
    finite->add_option("--builtin", finite_builtin, "Builtin family, e.g. rose:3, cycle:4");
    finite->add_option("--file", finite_file, "Graph file");
    finite->add_option("--nmax", finite_cfg.n_max, "Largest path length");
    finite->add_option("--tol", finite_cfg.tol, "Spectral tolerance");
    add_common(finite, finite_flags);

    // entropy rowfinite
    std::string rowfinite_builtin;
    drshift::RunConfig rowfinite_cfg;
    CommonFlags rowfinite_flags;
    std::vector<std::int64_t> budgets;
    auto* rowfinite = entropy->add_subcommand("rowfinite", "Supremum over finite truncations");
    rowfinite->add_option("--builtin", rowfinite_builtin, "Builtin family, e.g. ladder, rose_inf")
        ->required();
    rowfinite->add_option("--budgets", budgets, "Edge budgets (ascending)")->delimiter(',');
    rowfinite->add_option("--tol", rowfinite_cfg.tol, "Spectral tolerance");
    add_common(rowfinite, rowfinite_flags);

    // entropy cover
    std::string cover_builtin;
    drshift::RunConfig cover_cfg;
    cover_cfg.n_max = 16;
    CommonFlags cover_flags;
    auto* cover = entropy->add_subcommand("cover", "Open-cover entropy");
    cover->add_option("--builtin", cover_builtin, "renewal:m or a finite builtin")->required();
    cover->add_option("--nmax", cover_cfg.n_max, "Number of join levels");
    cover->add_option("--depth", cover_cfg.depth, "Word-cover depth for finite builtins");
    add_common(cover, cover_flags);

    // verify
    std::string suite;
    drshift::RunConfig verify_cfg;
    CommonFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "Property suites");
    verify->add_option("suite", suite, "sep-span | cover-lemmas | metrics | zebra | counterexamples")
        ->required();
    verify->add_option("--seed", verify_cfg.seed, "Sampling seed");
    verify->add_option("--nmax", verify_cfg.n_max, "Horizon for the zebra suite");
    add_common(verify, verify_flags);

    CLI11_PARSE(app, argc, argv);

    if (finite->parsed()) {
        if (finite_builtin.empty() == finite_file.empty()) {
            std::cerr << "error: pass exactly one of --builtin or --file\n";
            return drshift::kExitParseError;
        }
        bool is_file = !finite_file.empty();
        return run_with_output(finite_flags, finite_cfg, [&](std::ostream& out) {
            return drshift::cmd_entropy_finite(is_file ? finite_file : finite_builtin, is_file,
                                               finite_cfg, out, std::cerr);
        });
    }
    if (rowfinite->parsed()) {
        if (!budgets.empty()) rowfinite_cfg.budgets = budgets;
        return run_with_output(rowfinite_flags, rowfinite_cfg, [&](std::ostream& out) {
            return drshift::cmd_entropy_rowfinite(rowfinite_builtin, rowfinite_cfg, out, std::cerr);
        });
    }
    if (cover->parsed()) {
        return run_with_output(cover_flags, cover_cfg, [&](std::ostream& out) {
            return drshift::cmd_entropy_cover(cover_builtin, cover_cfg, out, std::cerr);
        });
    }
    if (verify->parsed()) {
        return run_with_output(verify_flags, verify_cfg, [&](std::ostream& out) {
            return drshift::cmd_verify(suite, verify_cfg, out, std::cerr);
        });
    }
    return drshift::kExitParseError;
}
