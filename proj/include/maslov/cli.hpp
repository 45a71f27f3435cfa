#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maslov/io.hpp"
#include "maslov/qm.hpp"

namespace maslov {

enum ExitCode : int {
    exit_ok = 0,
    exit_property_failure = 1,
    exit_invalid_input = 2,
    exit_resolution_failure = 3,
};

int exit_code_for(ErrorCode code);

struct RunTolerances {
    double mu = default_mu_tol;
    double slack = default_slack;
    double det = 1e-8;
    double chain = 1e-8;
    double pjp = 1e-7;
};

/// Mirrors the config file keys one to one.
struct RunConfig {
    std::size_t n = 1;
    std::uint64_t seed = 1;
    double scale = 1.0;
    std::size_t steps = default_steps;
    CorpusKind corpus = CorpusKind::Mixed;
    SuiteSizes sizes;
    RunTolerances tolerances;
    int m_max = default_m_max;
    std::optional<double> d_hat;
    std::optional<double> baseline_defect;
    /// Defect output of an earlier run; relative to the config file.
    std::optional<std::string> baseline_file;
    bool with_mu = false;
    std::string format = "json";
    std::optional<std::string> out;
};

/// Unknown keys, sizes below 1 and negative tolerances are InvalidArgument.
/// A baseline_file is read and folded into baseline_defect.
RunConfig parse_run_config(const Json& j, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

CorpusConfig corpus_of(const RunConfig& rc);
SuiteConfig suite_of(const RunConfig& rc);

Json report_to_json(const RunConfig& rc, const SuiteResult& result);

/// Entry point behind the maslov executable; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace maslov
