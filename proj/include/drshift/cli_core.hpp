#pragma once

#include "drshift/report_io.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace drshift {

// Exit codes: 0 ok, 1 verification failure, 2 parse/usage error,
// 3 cross-pipeline disagreement (an internal inconsistency).
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitDisagreement = 3;

struct RunConfig {
    int n_max = 12;
    std::vector<int> eps_exponents = {1, 2, 3};
    int depth = 1; // cover word depth
    std::vector<std::int64_t> budgets = {2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    double tol = 1e-9;
    OutputFormat format = OutputFormat::Table;
    unsigned seed = 12345;
    int threads = 0; // 0 = auto (DR_ENTROPY_THREADS caps)
};

int cmd_entropy_finite(const std::string& source, bool is_file, const RunConfig& cfg,
                       std::ostream& out, std::ostream& err);
int cmd_entropy_rowfinite(const std::string& builtin, const RunConfig& cfg, std::ostream& out,
                          std::ostream& err);
int cmd_entropy_cover(const std::string& builtin, const RunConfig& cfg, std::ostream& out,
                      std::ostream& err);
int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out,
               std::ostream& err);

} // namespace drshift
