#include "maslov/cli.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"

namespace maslov {

namespace {

template<typename T>
void read_key(const Json& j, const char* key, T& into) {
    if (!j.contains(key))
        return;
    try {
        into = j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw Error(ErrorCode::InvalidArgument, std::string("config: bad value for \"") + key + "\"");
    }
}

template<typename T>
void read_optional(const Json& j, const char* key, std::optional<T>& into) {
    if (!j.contains(key) || j.at(key).is_null())
        return;
    T v{};
    read_key(j, key, v);
    into = v;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object())
        throw Error(ErrorCode::InvalidArgument, "config: " + where + " must be an object");
    for (const auto& [key, value] : j.items())
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
            throw Error(ErrorCode::InvalidArgument, "config: unknown key \"" + key + "\" in " + where);
}

void require_size(std::size_t v, const char* what) {
    if (v < 1)
        throw Error(ErrorCode::InvalidArgument, std::string("config: ") + what + " must be at least 1");
}

void require_nonnegative(double v, const char* what) {
    if (!(v >= 0.0))
        throw Error(ErrorCode::InvalidArgument, std::string("config: ") + what + " must be non-negative");
}

std::string dump(const Json& j) {
    return to_canonical_json(j);
}

Json error_json(const Error& e) {
    Json j;
    j["error"] = std::string(to_string(e.code()));
    j["message"] = e.detail();
    return j;
}

CoverElement load_path(const std::string& file) {
    return path_from_json(read_json_file(file));
}

} // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::RefinementNeeded:
    case ErrorCode::StepTooLarge:
    case ErrorCode::NotNearInteger:
    case ErrorCode::NoConvergence:
        return exit_resolution_failure;
    default:
        return exit_invalid_input;
    }
}

RunConfig parse_run_config(const Json& j, const std::filesystem::path& base_dir) {
    reject_unknown(j,
                   {"n", "seed", "scale", "steps", "corpus", "sizes", "tolerances", "m_max", "d_hat",
                    "baseline_defect", "baseline_file", "with_mu", "format", "out"},
                   "config");
    RunConfig rc;
    read_key(j, "n", rc.n);
    read_key(j, "seed", rc.seed);
    read_key(j, "scale", rc.scale);
    read_key(j, "steps", rc.steps);
    if (j.contains("corpus")) {
        std::string kind;
        read_key(j, "corpus", kind);
        rc.corpus = corpus_kind_from_string(kind);
    }
    if (j.contains("sizes")) {
        const Json& s = j["sizes"];
        reject_unknown(s,
                       {"det_restriction", "conjugation", "positive_conjugation", "iota_vanishing", "pjp",
                        "homogeneity", "uniqueness", "defect"},
                       "sizes");
        read_key(s, "det_restriction", rc.sizes.det_restriction);
        read_key(s, "conjugation", rc.sizes.conjugation);
        read_key(s, "positive_conjugation", rc.sizes.positive_conjugation);
        read_key(s, "iota_vanishing", rc.sizes.iota_vanishing);
        read_key(s, "pjp", rc.sizes.pjp);
        read_key(s, "homogeneity", rc.sizes.homogeneity);
        read_key(s, "uniqueness", rc.sizes.uniqueness);
        read_key(s, "defect", rc.sizes.defect);
    }
    if (j.contains("tolerances")) {
        const Json& t = j["tolerances"];
        reject_unknown(t, {"mu", "slack", "det", "chain", "pjp"}, "tolerances");
        read_key(t, "mu", rc.tolerances.mu);
        read_key(t, "slack", rc.tolerances.slack);
        read_key(t, "det", rc.tolerances.det);
        read_key(t, "chain", rc.tolerances.chain);
        read_key(t, "pjp", rc.tolerances.pjp);
    }
    read_key(j, "m_max", rc.m_max);
    read_optional(j, "d_hat", rc.d_hat);
    read_optional(j, "baseline_defect", rc.baseline_defect);
    read_optional(j, "baseline_file", rc.baseline_file);
    read_key(j, "with_mu", rc.with_mu);
    read_key(j, "format", rc.format);
    read_optional(j, "out", rc.out);

    require_size(rc.n, "n");
    if (rc.steps < 2)
        throw Error(ErrorCode::InvalidArgument, "config: steps must be at least 2");
    if (!(rc.scale > 0.0))
        throw Error(ErrorCode::InvalidArgument, "config: scale must be positive");
    for (std::size_t v : {rc.sizes.det_restriction, rc.sizes.conjugation, rc.sizes.positive_conjugation,
                          rc.sizes.iota_vanishing, rc.sizes.pjp, rc.sizes.homogeneity, rc.sizes.uniqueness,
                          rc.sizes.defect})
        require_size(v, "every corpus size");
    require_nonnegative(rc.tolerances.mu, "tolerances.mu");
    require_nonnegative(rc.tolerances.slack, "tolerances.slack");
    require_nonnegative(rc.tolerances.det, "tolerances.det");
    require_nonnegative(rc.tolerances.chain, "tolerances.chain");
    require_nonnegative(rc.tolerances.pjp, "tolerances.pjp");
    if (rc.m_max < 0 || rc.m_max > m_max_limit)
        throw Error(ErrorCode::InvalidArgument, "config: m_max must lie in [0, 20]");
    if (rc.d_hat && !(*rc.d_hat > 0.0))
        throw Error(ErrorCode::InvalidArgument, "config: d_hat must be positive");
    if (rc.format != "json" && rc.format != "csv")
        throw Error(ErrorCode::InvalidArgument, "config: format must be json or csv");

    if (rc.baseline_file) {
        std::filesystem::path p(*rc.baseline_file);
        if (p.is_relative())
            p = base_dir / p;
        const Json b = read_json_file(p);
        if (!b.contains("max_defect") || !b["max_defect"].is_number())
            throw Error(ErrorCode::InvalidArgument, "baseline file has no numeric max_defect");
        const double v = b["max_defect"].get<double>();
        rc.baseline_defect = rc.baseline_defect ? std::max(*rc.baseline_defect, v) : v;
    }
    if (rc.baseline_defect)
        require_nonnegative(*rc.baseline_defect, "baseline_defect");
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_json_file(path), path.parent_path());
}

CorpusConfig corpus_of(const RunConfig& rc) {
    return {rc.n, rc.seed, rc.scale, rc.steps, rc.corpus};
}

SuiteConfig suite_of(const RunConfig& rc) {
    SuiteConfig s;
    s.base.corpus = corpus_of(rc);
    s.base.mu.m_max = rc.m_max;
    s.base.mu.tol = rc.tolerances.mu;
    s.base.slack = rc.tolerances.slack;
    s.base.det_tol = rc.tolerances.det;
    s.base.chain_tol = rc.tolerances.chain;
    s.base.pjp_tol = rc.tolerances.pjp;
    s.sizes = rc.sizes;
    s.d_hat = rc.d_hat.value_or(0.0);
    s.baseline_defect = rc.baseline_defect;
    return s;
}

Json report_to_json(const RunConfig& rc, const SuiteResult& result) {
    Json j;
    Json checks = Json::array();
    for (const auto& r : result.report.checks)
        checks.push_back(record_to_json(r));
    j["checks"] = std::move(checks);
    Json corpus = corpus_to_json(corpus_of(rc));
    Json sizes;
    sizes["det_restriction"] = rc.sizes.det_restriction;
    sizes["conjugation"] = rc.sizes.conjugation;
    sizes["positive_conjugation"] = rc.sizes.positive_conjugation;
    sizes["iota_vanishing"] = rc.sizes.iota_vanishing;
    sizes["pjp"] = rc.sizes.pjp;
    sizes["homogeneity"] = rc.sizes.homogeneity;
    sizes["uniqueness"] = rc.sizes.uniqueness;
    sizes["defect"] = rc.sizes.defect;
    corpus["sizes"] = std::move(sizes);
    corpus["m_max"] = rc.m_max;
    corpus["d_hat"] = result.d_hat_used;
    j["corpus"] = std::move(corpus);
    j["baseline_defect"] = result.defect.max_defect;
    j["committed_baseline"] = rc.baseline_defect ? Json(*rc.baseline_defect) : Json(nullptr);
    j["pass"] = result.report.all_pass();
    return j;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotation numbers and the homogeneous quasimorphism on the universal cover of Sp(2n)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "maslov 1.0");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a path file");
    std::string gen_kind;
    std::vector<double> theta;
    std::size_t gen_n = 1;
    double gen_scale = 1.0;
    std::uint64_t gen_seed = 1;
    std::size_t gen_samples = default_steps + 1;
    std::string gen_out = "-";
    gen->add_option("kind", gen_kind, "phase | spd | hamiltonian | shear | unitary | mixed | identity")
        ->required()
        ->check(CLI::IsMember({"phase", "spd", "hamiltonian", "shear", "unitary", "mixed", "identity"}));
    gen->add_option("--theta", theta, "Phase angles in radians (one, or one per dimension)");
    gen->add_option("--n", gen_n, "Half dimension")->check(CLI::PositiveNumber);
    gen->add_option("--scale", gen_scale, "Entry scale for random generators")->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed, "Seed for random generators");
    gen->add_option("--samples", gen_samples, "Number of samples including both endpoints")
        ->check(CLI::Range(std::size_t{3}, max_steps + 1));
    gen->add_option("--out", gen_out, "Output file, - for stdout");

    // file-based subcommands
    std::string in_file;
    auto* validate = app.add_subcommand("validate", "Check a path file");
    validate->add_option("--in", in_file, "Path file")->required();
    auto* rho = app.add_subcommand("rho", "Lifted rotation angle of a path file");
    rho->add_option("--in", in_file, "Path file")->required();
    auto* loop = app.add_subcommand("loop", "Maslov index of a loop file");
    loop->add_option("--in", in_file, "Path file")->required();

    auto* mu_cmd = app.add_subcommand("mu", "Homogenized rotation number of a path file");
    MuOptions mu_opts;
    double mu_d_hat = 0.0;
    mu_cmd->add_option("--in", in_file, "Path file")->required();
    mu_cmd->add_option("--m-max", mu_opts.m_max, "Maximum number of doublings")->check(CLI::Range(0, m_max_limit));
    mu_cmd->add_option("--tol", mu_opts.tol, "Stop once consecutive levels differ by at most tol/2")
        ->check(CLI::NonNegativeNumber);
    mu_cmd->add_option("--d-hat", mu_d_hat, "Defect estimate for err_bound (default n)")
        ->check(CLI::PositiveNumber);

    // config-based subcommands
    std::string config_file;
    std::string format;
    std::string out_file;
    auto* defect = app.add_subcommand("defect", "Defect scan over a seeded corpus");
    defect->add_option("--config", config_file, "Run config JSON")->required();
    defect->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    defect->add_option("--out", out_file, "Output file, - for stdout");
    auto* report = app.add_subcommand("report", "Run the full property suite");
    report->add_option("--config", config_file, "Run config JSON")->required();
    report->add_option("--out", out_file, "Output file, - for stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid_input;
    }

    try {
        if (*gen) {
            const std::size_t steps = gen_samples - 1;
            CoverElement g = identity_path(gen_n, steps);
            if (gen_kind == "phase") {
                if (theta.empty())
                    throw Error(ErrorCode::InvalidArgument, "gen phase: --theta is required");
                if (theta.size() == 1 && gen_n > 1)
                    theta.assign(gen_n, theta.front());
                if (gen->count("--n") && theta.size() != gen_n)
                    throw Error(ErrorCode::InvalidArgument, "gen phase: --theta needs 1 or n values");
                g = gen_phase_path(theta, steps);
            } else if (gen_kind == "spd") {
                g = iota(random_spd_symplectic(gen_n, gen_scale, gen_seed), steps);
            } else if (gen_kind == "hamiltonian") {
                g = gen_random_hamiltonian_path(gen_n, gen_scale, gen_seed, steps);
            } else if (gen_kind == "shear") {
                g = gen_shear_path(gen_n, steps);
            } else if (gen_kind == "unitary") {
                g = gen_unitary_path(random_unitary_recipe(gen_n, gen_seed), steps);
            } else if (gen_kind == "mixed") {
                g = gen_mixed_path(gen_n, gen_scale, gen_seed, steps);
            }
            write_text(gen_out, dump(path_to_json(g)), out);
            return exit_ok;
        }
        if (*validate) {
            Json j;
            try {
                const CoverElement g = load_path(in_file);
                double worst = 0.0;
                for (const auto& s : g.samples()) {
                    const auto check = is_symplectic(s);
                    worst = std::max(worst, check.residual / check.tolerance);
                }
                j["valid"] = true;
                j["n"] = g.n();
                j["steps"] = g.steps();
                j["max_symplectic_residual_ratio"] = worst;
            } catch (const Error& e) {
                j["valid"] = false;
                j["error"] = std::string(to_string(e.code()));
                j["message"] = e.detail();
                out << dump(j);
                return exit_code_for(e.code());
            }
            out << dump(j);
            return exit_ok;
        }
        if (*rho) {
            const CoverElement g = load_path(in_file);
            const LiftedAngle a = lifted_angle(g);
            Json j;
            j["rho"] = a.value;
            j["steps"] = a.step_count;
            j["max_step"] = a.max_step;
            j["expected_angle"] = g.meta().expected_angle ? Json(*g.meta().expected_angle) : Json(nullptr);
            out << dump(j);
            return exit_ok;
        }
        if (*loop) {
            const CoverElement g = load_path(in_file);
            Json j;
            j["index"] = loop_index(g);
            j["angle"] = lifted_angle(g).value;
            out << dump(j);
            return exit_ok;
        }
        if (*mu_cmd) {
            const CoverElement g = load_path(in_file);
            if (mu_d_hat > 0.0)
                mu_opts.d_hat = mu_d_hat;
            out << dump(mu_to_json(mu(g, mu_opts)));
            return exit_ok;
        }
        if (*defect) {
            const RunConfig rc = load_run_config(config_file);
            const std::string fmt = format.empty() ? rc.format : format;
            const std::string target = !out_file.empty() ? out_file : rc.out.value_or("-");
            MuOptions opts;
            opts.m_max = rc.m_max;
            opts.tol = rc.tolerances.mu;
            opts.d_hat = rc.d_hat;
            const DefectScan scan = defect_scan(corpus_of(rc), rc.sizes.defect, rc.with_mu, opts);
            write_text(target, fmt == "csv" ? defect_to_csv(scan) : dump(defect_to_json(corpus_of(rc), scan)), out);
            return exit_ok;
        }
        if (*report) {
            const RunConfig rc = load_run_config(config_file);
            const std::string target = !out_file.empty() ? out_file : rc.out.value_or("-");
            const SuiteResult result = run_property_suite(suite_of(rc));
            write_text(target, dump(report_to_json(rc, result)), out);
            return result.report.all_pass() ? exit_ok : exit_property_failure;
        }
    } catch (const Error& e) {
        err << dump(error_json(e));
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid_input;
    }
    return exit_invalid_input;
}

} // namespace maslov
