#include "maslov/qm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "maslov/lu.hpp"
#include "maslov/rng.hpp"

namespace maslov {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ComplexMatrix conj(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out(i, j) = std::conj(m(i, j));
    return out;
}

// Z^{-1} W
ComplexMatrix left_ratio(const ComplexMatrix& z, const ComplexMatrix& w) {
    return LuFactor<Complex>(z).solve(w);
}

// conj(W) Z^{-1}, via its transpose Z^{-T} conj(W)^T
ComplexMatrix right_ratio(const ComplexMatrix& z, const ComplexMatrix& w) {
    return LuFactor<Complex>(z.transpose()).solve(conj(w).transpose()).transpose();
}

bool negligible(const ComplexMatrix& w, const ComplexMatrix& z) {
    return max_abs(w) <= 1e-14 * std::max(1.0, max_abs(z));
}

// Accumulates arg(d(s1) / d(s0)), bisecting until each increment is small.
double arg_increment(const std::function<Complex(double)>& det_at, double s0, Complex d0, double s1,
                     Complex d1, int depth) {
    const double inc = std::arg(d1 / d0);
    if (std::abs(inc) <= std::numbers::pi / 8.0)
        return inc;
    if (depth == 48)
        throw Error(ErrorCode::NoConvergence, "continued_arg_det: determinant path not resolved");
    const double mid = 0.5 * (s0 + s1);
    const Complex dm = det_at(mid);
    return arg_increment(det_at, s0, d0, mid, dm, depth + 1) +
           arg_increment(det_at, mid, dm, s1, d1, depth + 1);
}

void require_m_max(int m_max) {
    if (m_max < 0 || m_max > m_max_limit)
        throw Error(ErrorCode::InvalidArgument, "m_max must lie in [0, 20]");
}

void require_genuine(const CoverElement& g) {
    if (g.scale_only())
        throw Error(ErrorCode::InvalidArgument, "homogenization needs genuine symplectic samples");
}

double mu_value(const CoverElement& g, const MuOptions& options) {
    return mu(g, options).value;
}

// Checks evaluate mu with the check's own d_hat so err_bound matches the tolerance.
MuOptions options_of(const CheckConfig& cfg) {
    MuOptions o = cfg.mu;
    o.d_hat = cfg.d_hat;
    return o;
}

} // namespace

double continued_arg_det(const ComplexMatrix& m) {
    const ComplexMatrix id = ComplexMatrix::identity(m.dim());
    const std::function<Complex(double)> det_at = [&](double s) {
        const Complex d = complex_det(id + m * Complex(s));
        if (d == Complex{})
            throw Error(ErrorCode::Singular, "continued_arg_det: I + sM singular");
        return d;
    };
    return arg_increment(det_at, 0.0, Complex(1.0), 1.0, det_at(1.0), 0);
}

double rotation_cocycle(const RealMatrix& x, const RealMatrix& y) {
    if (x.dim() != y.dim())
        throw Error(ErrorCode::DimensionMismatch, "rotation_cocycle: dimensions differ");
    const ComplexMatrix zx = linear_block(x);
    const ComplexMatrix wx = antilinear_block(x);
    const ComplexMatrix zy = linear_block(y);
    const ComplexMatrix wy = antilinear_block(y);
    if (negligible(wx, zx) || negligible(wy, zy))
        return 0.0;
    return continued_arg_det(left_ratio(zx, wx) * right_ratio(zy, wy)) / two_pi;
}

PowerCocycle::PowerCocycle(const RealMatrix& x)
    : z_(linear_block(x)), w_(antilinear_block(x)), z_conj_(conj(z_)), w_conj_(conj(w_)),
      b_(z_.dim()), a_(z_.dim()) {
    unitary_ = negligible(w_, z_);
    if (!unitary_) {
        b_ = right_ratio(z_, w_);
        a_ = left_ratio(z_, w_);
    }
}

double PowerCocycle::next() {
    if (unitary_)
        return 0.0;
    const double c = continued_arg_det(a_ * b_) / two_pi;
    // x^{j+1} = x^j x has blocks Z_j Z + W_j conj(W) and Z_j W + W_j conj(Z).
    a_ = LuFactor<Complex>(z_ + a_ * w_conj_).solve(w_ + a_ * z_conj_);
    return c;
}

std::vector<double> homogenization_sequence(const CoverElement& g, int m_max) {
    require_m_max(m_max);
    require_genuine(g);
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(m_max) + 1);
    const double base = lifted_angle(g).value;
    seq.push_back(base);
    PowerCocycle cocycle(g.endpoint());
    double acc = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        const std::uint64_t lo = std::uint64_t{1} << (m - 1);
        const std::uint64_t hi = std::uint64_t{1} << m;
        for (std::uint64_t j = lo; j < hi; ++j)
            acc += cocycle.next();
        seq.push_back(base + acc / static_cast<double>(hi));
    }
    return seq;
}

MuValue mu(const CoverElement& g, const MuOptions& options) {
    require_m_max(options.m_max);
    require_genuine(g);
    const double d_hat = options.d_hat.value_or(static_cast<double>(g.n()));
    if (!(d_hat > 0.0))
        throw Error(ErrorCode::InvalidArgument, "mu: d_hat must be positive");

    const double base = lifted_angle(g).value;
    PowerCocycle cocycle(g.endpoint());
    if (cocycle.unitary())
        return {base, 0, d_hat, true};

    double prev = base;
    double acc = 0.0;
    for (int m = 1; m <= options.m_max; ++m) {
        const std::uint64_t lo = std::uint64_t{1} << (m - 1);
        const std::uint64_t hi = std::uint64_t{1} << m;
        for (std::uint64_t j = lo; j < hi; ++j)
            acc += cocycle.next();
        const double a = base + acc / static_cast<double>(hi);
        if (std::abs(a - prev) <= options.tol / 2.0)
            return {a, m, d_hat / static_cast<double>(hi), true};
        prev = a;
    }
    return {prev, options.m_max, d_hat / std::ldexp(1.0, options.m_max), false};
}

// Corpora --------------------------------------------------------------------

std::string_view to_string(CorpusKind kind) {
    switch (kind) {
    case CorpusKind::Mixed: return "mixed";
    case CorpusKind::Unitary: return "unitary";
    case CorpusKind::Spd: return "spd";
    case CorpusKind::Hamiltonian: return "hamiltonian";
    }
    return "mixed";
}

CorpusKind corpus_kind_from_string(std::string_view s) {
    for (CorpusKind k : {CorpusKind::Mixed, CorpusKind::Unitary, CorpusKind::Spd, CorpusKind::Hamiltonian})
        if (to_string(k) == s)
            return k;
    throw Error(ErrorCode::InvalidArgument, "unknown corpus kind: " + std::string(s));
}

CoverElement corpus_element(const CorpusConfig& cfg, std::uint64_t item_seed, std::size_t steps) {
    switch (cfg.kind) {
    case CorpusKind::Unitary:
        return gen_unitary_path(random_unitary_recipe(cfg.n, item_seed), steps);
    case CorpusKind::Spd:
        return iota(random_spd_symplectic(cfg.n, cfg.scale, item_seed), steps);
    case CorpusKind::Hamiltonian:
        return gen_random_hamiltonian_path(cfg.n, cfg.scale, item_seed, steps);
    case CorpusKind::Mixed:
        break;
    }
    if (item_seed & 1U)
        return gen_random_hamiltonian_path(cfg.n, cfg.scale, item_seed, steps);
    return gen_mixed_path(cfg.n, cfg.scale, item_seed, steps);
}

std::uint64_t corpus_seed(const CorpusConfig& cfg, std::string_view stream, std::uint64_t index) {
    return derive_seed(cfg.seed, stream, index);
}

// Defect ---------------------------------------------------------------------

DefectScan defect_scan(const CorpusConfig& cfg, std::size_t count, bool with_mu, const MuOptions& mu_options) {
    if (count == 0)
        throw Error(ErrorCode::InvalidArgument, "defect_scan: count must be at least 1");
    DefectScan scan;
    scan.samples.reserve(count);
    if (with_mu)
        scan.max_mu_defect = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        DefectSample s;
        s.g_seed = corpus_seed(cfg, "defect-g", i);
        s.h_seed = corpus_seed(cfg, "defect-h", i);
        with_refinement(
            [&](std::size_t steps) {
                const CoverElement g = corpus_element(cfg, s.g_seed, steps);
                const CoverElement h = corpus_element(cfg, s.h_seed, steps);
                const CoverElement gh = path_product(g, h);
                s.defect = std::abs(lifted_angle(gh).value - lifted_angle(g).value - lifted_angle(h).value);
                if (with_mu)
                    s.mu_defect = std::abs(mu_value(gh, mu_options) - mu_value(g, mu_options) -
                                           mu_value(h, mu_options));
                return 0;
            },
            cfg.steps);
        scan.max_defect = std::max(scan.max_defect, s.defect);
        if (s.mu_defect)
            scan.max_mu_defect = std::max(*scan.max_mu_defect, *s.mu_defect);
        scan.samples.push_back(s);
    }
    return scan;
}

// Property suite -------------------------------------------------------------

bool PropertyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const PropertyRecord& r) { return r.pass; });
}

PropertyRecord make_record(std::string name, std::size_t samples, double max_violation, double tolerance) {
    // NaN violations fail.
    return {std::move(name), samples, max_violation, tolerance, max_violation <= tolerance};
}

PropertyRecord check_det_restriction(const CheckConfig& cfg) {
    const MuOptions opts = options_of(cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto recipe = random_unitary_recipe(cfg.corpus.n, corpus_seed(cfg.corpus, "det-restriction", i));
        const double gap = with_refinement(
            [&](std::size_t steps) {
                const CoverElement g = gen_unitary_path(recipe, steps);
                const double value = mu_value(g, opts);
                const Complex det = det_u(UnitarySymplectic::from_orthogonal(g.endpoint()));
                return std::abs(std::polar(1.0, two_pi * value) - det);
            },
            cfg.corpus.steps);
        worst = std::max(worst, gap);
    }
    return make_record("det_restriction", cfg.count, worst, cfg.det_tol);
}

std::vector<PropertyRecord> check_conjugation(const CheckConfig& cfg) {
    const MuOptions opts = options_of(cfg);
    double worst_conj = 0.0;
    double worst_inv = 0.0;
    double bound = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::uint64_t gs = corpus_seed(cfg.corpus, "conjugation-g", i);
        const std::uint64_t hs = corpus_seed(cfg.corpus, "conjugation-h", i);
        with_refinement(
            [&](std::size_t steps) {
                const CoverElement g = corpus_element(cfg.corpus, gs, steps);
                const CoverElement h = corpus_element(cfg.corpus, hs, steps);
                const CoverElement conj_g = path_product(path_product(h, g), path_inverse(h));
                const CoverElement inv_g = path_inverse(g);
                const MuValue mg = mu(g, opts);
                const MuValue mc = mu(conj_g, opts);
                const MuValue mi = mu(inv_g, opts);
                worst_conj = std::max(worst_conj, std::abs(mc.value - mg.value));
                worst_inv = std::max(worst_inv, std::abs(mi.value + mg.value));
                bound = std::max({bound, mg.err_bound, mc.err_bound, mi.err_bound});
                return 0;
            },
            cfg.corpus.steps);
    }
    const double tol = 2.0 * bound + cfg.slack;
    return {make_record("conjugation_invariance", cfg.count, worst_conj, tol),
            make_record("inverse_antisymmetry", cfg.count, worst_inv, tol)};
}

PropertyRecord check_positive_conjugation(const CheckConfig& cfg) {
    const MuOptions opts = options_of(cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::uint64_t qs = corpus_seed(cfg.corpus, "positive-conjugation-q", i);
        const std::uint64_t ps = corpus_seed(cfg.corpus, "positive-conjugation-p", i);
        const RealMatrix q = random_unitary_symplectic(cfg.corpus.n, qs).embed();
        const SpdSymplectic p = random_spd_symplectic(cfg.corpus.n, cfg.corpus.scale, ps);
        const SpdSymplectic qpq = SpdSymplectic::from(symmetrize(q * p.mat() * q.transpose()), 10.0);
        const double gap = with_refinement(
            [&](std::size_t steps) {
                return std::abs(mu_value(iota(qpq, steps), opts) - mu_value(iota(p, steps), opts));
            },
            cfg.corpus.steps);
        worst = std::max(worst, gap);
    }
    return make_record("positive_conjugation", cfg.count, worst, cfg.slack);
}

std::vector<PropertyRecord> check_iota_vanishing(const CheckConfig& cfg) {
    const std::size_t n = cfg.corpus.n;
    const RealMatrix j = standard_j(n);
    const RealMatrix j_inv = -j;
    double worst_level = 0.0;
    double worst_chain = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const SpdSymplectic p = random_spd_symplectic(n, cfg.corpus.scale, corpus_seed(cfg.corpus, "iota", i));
        const CoverElement g = with_refinement([&](std::size_t steps) { return iota(p, steps); }, cfg.corpus.steps);
        for (double a : homogenization_sequence(g, cfg.mu.m_max))
            worst_level = std::max(worst_level, std::abs(a));

        // J0 P^{-1} J0^{-1} is again in the positive set and its canonical path
        // is the pointwise conjugated inverse of iota(P).
        double chain = 0.0;
        try {
            const SpdSymplectic pc =
                SpdSymplectic::from(symmetrize(j * real_inverse(p.mat()) * j_inv), 10.0);
            const CoverElement gc = iota(pc, g.steps());
            for (std::size_t k = 0; k < g.samples().size(); ++k) {
                const RealMatrix expected = j * real_inverse(g.samples()[k]) * j_inv;
                const double gap = frobenius_norm(gc.samples()[k] - expected) /
                                   std::max(1.0, frobenius_norm(expected));
                chain = std::max(chain, gap);
            }
        } catch (const Error&) {
            chain = std::numeric_limits<double>::infinity();
        }
        worst_chain = std::max(worst_chain, chain);
    }
    return {make_record("iota_vanishing", cfg.count, worst_level, cfg.slack),
            make_record("iota_chain", cfg.count, worst_chain, cfg.chain_tol)};
}

PropertyRecord check_pjp(const CheckConfig& cfg) {
    const RealMatrix j = standard_j(cfg.corpus.n);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const SpdSymplectic p = random_spd_symplectic(cfg.corpus.n, cfg.corpus.scale, corpus_seed(cfg.corpus, "pjp", i));
        const double norm = frobenius_norm(p.mat());
        worst = std::max(worst, frobenius_norm(p.mat() * j * p.mat() - j) / (1.0 + norm * norm));
    }
    return make_record("pjp", cfg.count, worst, cfg.pjp_tol);
}

std::vector<PropertyRecord> check_homogeneity(const CheckConfig& cfg, const std::vector<std::uint64_t>& ks) {
    const MuOptions opts = options_of(cfg);
    std::vector<PropertyRecord> out;
    for (std::uint64_t k : ks) {
        double worst_excess = -std::numeric_limits<double>::infinity();
        double worst_gap = 0.0;
        double tol_at_worst = cfg.slack;
        for (std::size_t i = 0; i < cfg.count; ++i) {
            const std::uint64_t gs = corpus_seed(cfg.corpus, "homogeneity", i);
            with_refinement(
                [&](std::size_t steps) {
                    const CoverElement g = corpus_element(cfg.corpus, gs, steps);
                    const CoverElement gk = path_power(g, k);
                    const MuValue a = mu(g, opts);
                    const MuValue b = mu(gk, opts);
                    const double gap = std::abs(b.value - static_cast<double>(k) * a.value);
                    const double tol =
                        static_cast<double>(k + 1) * std::max(a.err_bound, b.err_bound) + cfg.slack;
                    if (gap - tol > worst_excess) {
                        worst_excess = gap - tol;
                        worst_gap = gap;
                        tol_at_worst = tol;
                    }
                    return 0;
                },
                cfg.corpus.steps);
        }
        out.push_back(make_record("homogeneity_k" + std::to_string(k), cfg.count, worst_gap, tol_at_worst));
    }
    return out;
}

PropertyRecord check_uniqueness_consistency(const CheckConfig& cfg) {
    const MuOptions opts = options_of(cfg);
    double worst = 0.0;
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const auto recipe = random_unitary_recipe(cfg.corpus.n, corpus_seed(cfg.corpus, "uniqueness-u", i));
        const SpdSymplectic p =
            random_spd_symplectic(cfg.corpus.n, cfg.corpus.scale, corpus_seed(cfg.corpus, "uniqueness-p", i));
        const double gap = with_refinement(
            [&](std::size_t steps) {
                const CoverElement u = gen_unitary_path(recipe, steps);
                const CoverElement g = path_product(u, iota(p, steps));
                return std::abs(mu_value(g, opts) - mu_value(u, opts));
            },
            cfg.corpus.steps);
        worst = std::max(worst, gap);
    }
    return make_record("uniqueness_consistency", cfg.count, worst, cfg.d_hat + cfg.slack);
}

SuiteResult run_property_suite(const SuiteConfig& cfg) {
    SuiteResult out;
    const double n = static_cast<double>(cfg.base.corpus.n);
    double d_hat = cfg.d_hat > 0.0 ? cfg.d_hat : n;
    if (cfg.baseline_defect)
        d_hat = std::max(d_hat, *cfg.baseline_defect);
    out.d_hat_used = d_hat;

    CheckConfig base = cfg.base;
    base.d_hat = d_hat;
    auto with_count = [&](std::size_t count) {
        CheckConfig c = base;
        c.count = count;
        return c;
    };
    auto add = [&](std::vector<PropertyRecord> records) {
        for (auto& r : records)
            out.report.checks.push_back(std::move(r));
    };

    add({check_det_restriction(with_count(cfg.sizes.det_restriction))});
    add(check_iota_vanishing(with_count(cfg.sizes.iota_vanishing)));
    add({check_pjp(with_count(cfg.sizes.pjp))});
    add({check_positive_conjugation(with_count(cfg.sizes.positive_conjugation))});
    add(check_homogeneity(with_count(cfg.sizes.homogeneity)));
    add(check_conjugation(with_count(cfg.sizes.conjugation)));
    add({check_uniqueness_consistency(with_count(cfg.sizes.uniqueness))});

    out.defect = defect_scan(base.corpus, cfg.sizes.defect);
    // Exact-arithmetic bound for the rotation cocycle is n/4 turns.
    add({make_record("defect_bound", cfg.sizes.defect, out.defect.max_defect, d_hat + base.slack)});
    if (cfg.baseline_defect)
        add({make_record("defect_regression", cfg.sizes.defect, out.defect.max_defect, *cfg.baseline_defect + 1e-9)});
    return out;
}

} // namespace maslov
