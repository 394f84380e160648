#include "drshift/cli_core.hpp"

#include "drshift/cover_entropy.hpp"
#include "drshift/graph_entropy.hpp"
#include "drshift/graph_file.hpp"
#include "drshift/parallel.hpp"
#include "drshift/verify_suites.hpp"

#include <cmath>
#include <sstream>

namespace drshift {

namespace {

Ultragraph resolve_graph(const std::string& source, bool is_file) {
    return is_file ? load_graph_file(source) : make_builtin(source);
}

int renewal_param(const std::string& builtin) {
    auto colon = builtin.find(':');
    if (colon == std::string::npos) return 1;
    return std::stoi(builtin.substr(colon + 1));
}

} // namespace

int cmd_entropy_finite(const std::string& source, bool is_file, const RunConfig& cfg,
                       std::ostream& out, std::ostream& err) {
    Ultragraph g;
    try {
        g = resolve_graph(source, is_file);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    if (g->edge_count() == kInfinite || !g->is_graph()) {
        err << "error: 'entropy finite' needs a finite graph\n";
        return kExitParseError;
    }
    FiniteGraph fg = finite_subgraph(g, g->edge_count());
    PathcountEntropy counting = finite_graph_entropy_pathcount(fg, cfg.n_max);
    SpectralEstimate spectral = finite_graph_entropy_spectral(fg, cfg.tol);

    ReportTable t;
    t.name = "finite graph entropy: " + g->family_name();
    t.columns = {"n", "paths", "h_n"};
    for (int n = 1; n <= cfg.n_max; ++n) {
        t.add_row({std::to_string(n), count_paths(fg, n).count.str(),
                   format_double(counting.h_sequence[static_cast<std::size_t>(n - 1)])});
    }
    double bound = std::log(static_cast<double>(fg.edge_count())) / cfg.n_max + cfg.tol;
    bool agree = counting.estimate >= spectral.log_lo() - bound &&
                 counting.estimate <= spectral.log_hi() + bound;
    t.summary = {
        {"pathcount_estimate", format_double(counting.estimate)},
        {"spectral_log_lo", format_double(spectral.log_lo())},
        {"spectral_log_hi", format_double(spectral.log_hi())},
        {"agreement_bound", format_double(bound)},
        {"agreement", agree ? "ok" : "FAILED"},
    };
    write_report(out, t, cfg.format);
    return agree ? kExitOk : kExitDisagreement;
}

int cmd_entropy_rowfinite(const std::string& builtin, const RunConfig& cfg, std::ostream& out,
                          std::ostream& err) {
    Ultragraph g;
    try {
        g = make_builtin(builtin);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }
    // per-budget truncations are independent; the merge is ordered by index
    std::vector<FiltrationRow> rows(cfg.budgets.size());
    parallel_for_index(cfg.budgets.size(), thread_cap(cfg.threads), [&](std::size_t i) {
        FiltrationReport one = rowfinite_entropy_sup(g, {cfg.budgets[i]}, cfg.tol);
        rows[i] = one.rows.front();
    });
    FiltrationReport report;
    report.divergence_threshold = 0.01;
    bool have_sup = false;
    std::vector<double> increments;
    for (auto& row : rows) {
        if (!row.skipped) {
            if (!have_sup) {
                report.sup_lo = row.lo;
                report.sup_hi = row.hi;
                have_sup = true;
            } else {
                double prev = report.sup_lo;
                report.sup_lo = std::max(report.sup_lo, row.lo);
                report.sup_hi = std::max(report.sup_hi, row.hi);
                increments.push_back(report.sup_lo - prev);
            }
        }
        row.sup_lo = report.sup_lo;
        row.sup_hi = report.sup_hi;
        report.rows.push_back(row);
    }
    if (increments.size() >= 2)
        report.diverging = increments[increments.size() - 1] > report.divergence_threshold &&
                           increments[increments.size() - 2] > report.divergence_threshold;

    ReportTable t;
    t.name = "row-finite supremum: " + g->family_name();
    t.columns = {"budget", "entropy_lo", "entropy_hi", "running_sup"};
    for (const auto& row : report.rows) {
        if (row.skipped) {
            t.add_row({std::to_string(row.budget), "skipped", "skipped",
                       format_double(row.sup_lo)});
        } else {
            t.add_row({std::to_string(row.budget), format_double(row.lo), format_double(row.hi),
                       format_double(row.sup_lo)});
        }
    }
    t.summary = {
        {"sup_lo", format_double(report.sup_lo)},
        {"sup_hi", format_double(report.sup_hi)},
        {"diverging", report.diverging ? "yes" : "no"},
    };
    write_report(out, t, cfg.format);
    return kExitOk;
}

int cmd_entropy_cover(const std::string& builtin, const RunConfig& cfg, std::ostream& out,
                      std::ostream& err) {
    try {
        Cover alpha;
        GraphShiftSystem sys(make_builtin(builtin), MetricChoice::CanonicalDx);
        bool is_renewal = builtin.rfind("renewal", 0) == 0;
        BigInt renewal_m_count = 0;
        if (is_renewal) {
            RenewalCover rc = renewal_cover(renewal_param(builtin));
            alpha = std::move(rc.cover);
            renewal_m_count = rc.member_count;
        } else {
            alpha = word_cover(sys.graph(), cfg.depth);
        }
        CoverEntropyResult run = cover_entropy_estimate(alpha, sys, cfg.n_max);

        ReportTable t;
        t.name = "cover entropy: " + sys.graph()->family_name();
        t.columns = {"n", "N(alpha_n, X_n)", "a_n/n", "running_inf"};
        for (std::size_t n = 1; n < run.sequence.counts.size(); ++n) {
            t.add_row({std::to_string(n), run.sequence.counts[n].str(),
                       format_double(run.sequence.ratios[n - 1]),
                       format_double(run.sequence.running_inf[n - 1])});
        }
        bool doubling_ok = true;
        if (is_renewal) {
            for (std::size_t n = 1; n < run.sequence.counts.size(); ++n)
                doubling_ok = doubling_ok &&
                              run.sequence.counts[n] == 2 * run.sequence.counts[n - 1];
            t.summary.emplace_back("M", renewal_m_count.str());
            t.summary.emplace_back("doubling", doubling_ok ? "exact" : "FAILED");
        }
        t.summary.emplace_back("estimate", format_double(run.estimate));
        t.summary.emplace_back("subadditive", run.sequence.subadditive ? "yes" : "no");
        write_report(out, t, cfg.format);
        if (!doubling_ok || !run.sequence.subadditive) return kExitDisagreement;
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitParseError;
    }
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
    verify::SuiteResult result;
    if (suite == "counterexamples") {
        result = verify::counterexamples();
    } else if (suite == "sep-span") {
        result = verify::sep_span(cfg.seed);
    } else if (suite == "cover-lemmas") {
        result = verify::cover_lemmas();
    } else if (suite == "metrics") {
        result = verify::metrics();
    } else if (suite == "zebra") {
        result = verify::zebra(cfg.n_max);
    } else {
        err << "unknown verify suite: " << suite
            << " (expected sep-span, cover-lemmas, metrics, zebra, counterexamples)\n";
        return kExitParseError;
    }
    for (const auto& line : result.lines)
        out << (line.ok ? "[ok]   " : "[FAIL] ") << line.text << "\n";
    out << "suite " << result.suite << ": " << (result.ok ? "pass" : "FAIL") << "\n";
    return result.ok ? kExitOk : kExitVerifyFailed;
}

} // namespace drshift
