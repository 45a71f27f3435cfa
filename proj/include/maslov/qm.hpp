#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maslov/config.hpp"
#include "maslov/cover.hpp"
#include "maslov/rotation.hpp"

namespace maslov {

// Homogenization ------------------------------------------------------------

/// arg det(I + M) continued along s -> I + sM from s = 0; for |M| < 1 this is
/// the sum of the principal arguments of the eigenvalues of I + M.
double continued_arg_det(const ComplexMatrix& m);

/// rho(x~ y~) - rho(x~) - rho(y~) in turns. It only depends on the images
/// x, y in Sp(2n): with M v = Z v + W conj(v), Z_xy = Z_x (I + A_x B_y) Z_y for
/// A_x = Z_x^{-1} W_x and B_y = conj(W_y) Z_y^{-1}, and the lift of
/// arg det(I + A_x B_y) starting from the identity is continued_arg_det.
double rotation_cocycle(const RealMatrix& x, const RealMatrix& y);

/// Streams c(x^j, x) for j = 1, 2, ... The matrix powers are never formed:
/// A_{x^j} obeys A_{j+1} = (Z + A_j conj(W))^{-1} (W + A_j conj(Z)), which
/// only involves bounded quantities.
class PowerCocycle {
public:
    explicit PowerCocycle(const RealMatrix& x);

    double next();
    /// W = 0: x is unitary and every cocycle value vanishes.
    bool unitary() const noexcept { return unitary_; }

private:
    ComplexMatrix z_, w_, z_conj_, w_conj_, b_, a_;
    bool unitary_ = false;
};

/// a_m = rho(g^(2^m)) / 2^m for m = 0..m_max, using
/// rho(g^k) = k rho(g) + sum_{j<k} c(x^j, x) with x the endpoint of g.
std::vector<double> homogenization_sequence(const CoverElement& g, int m_max = default_m_max);

struct MuOptions {
    int m_max = default_m_max;
    double tol = default_mu_tol;
    std::optional<double> d_hat;  // defaults to n
};

struct MuValue {
    double value = 0.0;     // turns
    int m_used = 0;
    double err_bound = 0.0; // d_hat / 2^m_used
    bool converged = false;
};

/// Homogenized rotation number: stops at the first m with
/// |a_m - a_{m-1}| <= tol/2, or at m_max. Elements whose endpoint is unitary
/// return a_0 at m = 0.
MuValue mu(const CoverElement& g, const MuOptions& options = {});

// Corpora -------------------------------------------------------------------

enum class CorpusKind { Mixed, Unitary, Spd, Hamiltonian };

std::string_view to_string(CorpusKind kind);
CorpusKind corpus_kind_from_string(std::string_view s);

struct CorpusConfig {
    std::size_t n = 1;
    std::uint64_t seed = 1;
    double scale = 1.0;
    std::size_t steps = default_steps;
    CorpusKind kind = CorpusKind::Mixed;
};

/// Element for an explicit item seed. Mixed alternates on the seed's low bit
/// between gen_mixed_path and gen_random_hamiltonian_path.
CoverElement corpus_element(const CorpusConfig& cfg, std::uint64_t item_seed, std::size_t steps);

/// Item seed of element `index` in the named stream.
std::uint64_t corpus_seed(const CorpusConfig& cfg, std::string_view stream, std::uint64_t index);

// Defect --------------------------------------------------------------------

struct DefectSample {
    std::uint64_t g_seed = 0;
    std::uint64_t h_seed = 0;
    double defect = 0.0;               // |rho(gh) - rho(g) - rho(h)|
    std::optional<double> mu_defect;   // |mu(gh) - mu(g) - mu(h)|
};

struct DefectScan {
    std::vector<DefectSample> samples;
    double max_defect = 0.0;
    std::optional<double> max_mu_defect;
};

DefectScan defect_scan(const CorpusConfig& cfg, std::size_t count, bool with_mu = false,
                       const MuOptions& mu_options = {});

// Property suite --------------------------------------------------------------

struct PropertyRecord {
    std::string name;
    std::size_t samples = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct PropertyReport {
    std::vector<PropertyRecord> checks;

    bool all_pass() const;
};

PropertyRecord make_record(std::string name, std::size_t samples, double max_violation, double tolerance);

struct CheckConfig {
    CorpusConfig corpus;
    std::size_t count = 10;
    MuOptions mu;
    double slack = default_slack;
    double d_hat = 1.0;           // a-priori defect bound used in tolerances
    double det_tol = 1e-8;
    double chain_tol = 1e-8;
    double pjp_tol = 1e-7;
};

/// |exp(2 pi i mu) - det_u(endpoint)| over random unitary paths.
PropertyRecord check_det_restriction(const CheckConfig& cfg);

/// Conjugation invariance and antisymmetry under inversion.
std::vector<PropertyRecord> check_conjugation(const CheckConfig& cfg);

/// |mu(iota(Q P Q^T)) - mu(iota(P))| for unitary Q.
PropertyRecord check_positive_conjugation(const CheckConfig& cfg);

/// |a_m(iota(P))| at every truncation level, plus the matrix-level chain
/// J0 P^{-1} J0^{-1} in the positive set and iota of it equal to the
/// conjugated inverse path.
std::vector<PropertyRecord> check_iota_vanishing(const CheckConfig& cfg);

/// |P J0 P - J0|_F / (1 + |P|_F^2) over random P.
PropertyRecord check_pjp(const CheckConfig& cfg);

/// |mu(g^k) - k mu(g)| <= (k+1) err_bound + slack, one record per k.
std::vector<PropertyRecord> check_homogeneity(const CheckConfig& cfg,
                                              const std::vector<std::uint64_t>& ks = {2, 3, 5});

/// |mu(u iota(P)) - mu(u)| <= d_hat + slack.
PropertyRecord check_uniqueness_consistency(const CheckConfig& cfg);

struct SuiteSizes {
    std::size_t det_restriction = 100;
    std::size_t conjugation = 50;
    std::size_t positive_conjugation = 100;
    std::size_t iota_vanishing = 100;
    std::size_t pjp = 1000;
    std::size_t homogeneity = 50;
    std::size_t uniqueness = 50;
    std::size_t defect = 1000;
};

struct SuiteConfig {
    CheckConfig base;
    SuiteSizes sizes;
    double d_hat = 0.0;                       // <= 0 means n
    std::optional<double> baseline_defect;    // committed regression baseline
};

struct SuiteResult {
    PropertyReport report;
    DefectScan defect;
    double d_hat_used = 0.0;
};

SuiteResult run_property_suite(const SuiteConfig& cfg);

} // namespace maslov
