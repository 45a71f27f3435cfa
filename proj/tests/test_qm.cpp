#include "doctest.h"

#include "maslov/qm.hpp"
#include "support.hpp"

using namespace maslov;
using testing::Draw;
using testing::to_eigen;

namespace {

constexpr double pi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::InvalidArgument;
}

RealMatrix matrix_power(const RealMatrix& x, int k) {
    RealMatrix out = RealMatrix::identity(x.dim());
    for (int i = 0; i < k; ++i)
        out = out * x;
    return out;
}

CheckConfig small_config(std::size_t n, std::size_t count) {
    CheckConfig c;
    c.corpus.n = n;
    c.corpus.seed = 99;
    c.count = count;
    c.d_hat = static_cast<double>(n);
    return c;
}

} // namespace

TEST_CASE("continued_arg_det sums principal eigenvalue arguments") {
    Draw draw(41);
    for (int trial = 0; trial < 200; ++trial) {
        const auto dim = static_cast<Eigen::Index>(draw.index(1, 4));
        Eigen::MatrixXcd m = draw.complex_matrix(dim);
        // Spectral radius below 1 so every 1 + lambda stays in the right half plane.
        const double radius = m.eigenvalues().cwiseAbs().maxCoeff();
        m *= draw.uniform(0.1, 0.99) / radius;
        double expect = 0.0;
        for (const Complex l : Eigen::VectorXcd(m.eigenvalues()))
            expect += std::arg(1.0 + l);
        ComplexMatrix mm(static_cast<std::size_t>(dim));
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                mm(i, j) = m(i, j);
        CHECK(std::abs(continued_arg_det(mm) - expect) <= 1e-11);
    }
}

TEST_CASE("continued_arg_det follows the branch past pi") {
    // Three eigenvalues near -1 + i*0.9 spiral det past the principal branch.
    const std::vector<Complex> d(4, Complex(-0.6, 0.75));
    const ComplexMatrix m = ComplexMatrix::diagonal(d);
    const double expect = 4.0 * std::arg(Complex(0.4, 0.75));
    CHECK(expect > pi);
    CHECK(std::abs(continued_arg_det(m) - expect) <= 1e-12);
}

TEST_CASE("rotation cocycle equals the defect of lifted angles") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 1 + seed % 3;
        const CoverElement g = gen_mixed_path(n, 1.0, seed, 256);
        const CoverElement h = gen_random_hamiltonian_path(n, 1.0, seed + 1000, 256);
        const double direct = with_refinement(
            [&](std::size_t steps) {
                const CoverElement gs = g.regenerate(steps);
                const CoverElement hs = h.regenerate(steps);
                return lifted_angle(path_product(gs, hs)).value - lifted_angle(gs).value - lifted_angle(hs).value;
            },
            256);
        const double c = rotation_cocycle(g.endpoint(), h.endpoint());
        CHECK(std::abs(c - direct) <= 1e-9);
        CHECK(std::abs(c) < static_cast<double>(n) / 4.0);
    }
}

TEST_CASE("PowerCocycle streams the cocycle of successive powers") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const std::size_t n = 1 + seed % 3;
        const RealMatrix x = gen_mixed_path(n, 0.7, seed, 64).endpoint();
        PowerCocycle stream(x);
        for (int j = 1; j <= 6; ++j)
            CHECK(std::abs(stream.next() - rotation_cocycle(matrix_power(x, j), x)) <= 1e-9);
    }
    PowerCocycle unitary(random_unitary_symplectic(2, 3).embed());
    CHECK(unitary.unitary());
    CHECK(unitary.next() == 0.0);
}

TEST_CASE("homogenization sequence matches literal renormalized powers") {
    // Two independent routes to a_m for small m: pointwise renormalized powers
    // with lifted angles, and the endpoint cocycle recursion.
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t n = 1 + seed % 2;
        const CoverElement g = gen_mixed_path(n, 0.6, seed, 256);
        const std::vector<double> seq = homogenization_sequence(g, 4);
        for (int m = 0; m <= 4; ++m) {
            const std::uint64_t k = std::uint64_t{1} << m;
            const double literal = with_refinement(
                [&](std::size_t steps) { return lifted_angle(path_power(g.regenerate(steps), k, true)).value; },
                256);
            CHECK(std::abs(seq[m] - literal / static_cast<double>(k)) <= 1e-9);
        }
    }
}

TEST_CASE("mu on the standard examples") {
    SUBCASE("identity") {
        const MuValue v = mu(identity_path(2, 8));
        CHECK(v.value == 0.0);
        CHECK(v.m_used == 0);
        CHECK(v.converged);
        CHECK(v.err_bound == 2.0);
    }
    SUBCASE("positive set vanishes at every level") {
        const SpdSymplectic p = SpdSymplectic::from(RealMatrix{{9.0, 0.0}, {0.0, 1.0 / 9.0}});
        for (double a : homogenization_sequence(iota(p, 64), 12))
            CHECK(std::abs(a) <= 1e-9);
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
            for (double a : homogenization_sequence(iota(random_spd_symplectic(1 + seed % 3, 2.0, seed), 64), 12))
                CHECK(std::abs(a) <= 1e-12);
    }
    SUBCASE("phase pi/3") {
        const MuValue v = mu(gen_phase_path(std::vector<double>{pi / 3}, 16));
        CHECK(std::abs(v.value - 1.0 / 6.0) <= 1e-12);
        CHECK(v.converged);
    }
    SUBCASE("shear tends to zero like atan2(-2^m, 2) / 2^m") {
        const std::vector<double> seq = homogenization_sequence(gen_shear_path(1, 256), 12);
        for (int m = 0; m <= 12; ++m) {
            const double k = std::ldexp(1.0, m);
            CHECK(std::abs(seq[m] - std::atan2(-k, 2.0) / (2 * pi * k)) <= 1e-9);
        }
        const MuValue v = mu(gen_shear_path(1, 256));
        CHECK(std::abs(v.value) <= v.err_bound);
    }
}

TEST_CASE("mu equals the lifted angle on unitary paths") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const CoverElement g = gen_unitary_path(random_unitary_recipe(1 + seed % 3, seed), 256);
        CHECK(std::abs(mu(g).value - lifted_angle(g).value) <= 1e-9);
    }
}

TEST_CASE("mu stopping rule and options") {
    const CoverElement g = gen_mixed_path(2, 1.0, 8, 256);
    const MuValue loose = mu(g, {12, 1e-2, std::nullopt});
    CHECK(loose.converged);
    CHECK(loose.m_used < 12);
    CHECK(loose.err_bound == doctest::Approx(2.0 / std::ldexp(1.0, loose.m_used)));
    const MuValue capped = mu(g, {3, 0.0, 0.5});
    CHECK(capped.m_used == 3);
    CHECK(capped.err_bound == 0.5 / 8.0);
    CHECK(capped.value == homogenization_sequence(g, 3).back());

    CHECK(code_of([&] { mu(g, {21, 1e-6, std::nullopt}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { mu(g, {12, 1e-6, -1.0}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { mu(path_power(g, 2, true)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("mu under powers, conjugation and inversion") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t n = 1 + seed % 2;
        const MuOptions opts{12, 0.0, static_cast<double>(n)};
        const CoverElement g = gen_mixed_path(n, 0.8, seed, 256);
        const CoverElement h = gen_random_hamiltonian_path(n, 0.8, seed + 50, 256);
        const MuValue mg = mu(g, opts);
        const double bound = mg.err_bound;
        CHECK(std::abs(mu(path_power(g, 3), opts).value - 3.0 * mg.value) <= 4.0 * bound + 1e-6);
        CHECK(std::abs(mu(path_product(path_product(h, g), path_inverse(h)), opts).value - mg.value) <=
              2.0 * bound + 1e-6);
        CHECK(std::abs(mu(path_inverse(g), opts).value + mg.value) <= 2.0 * bound + 1e-6);
    }
}

TEST_CASE("corpus elements are reproducible from their seed") {
    CorpusConfig cfg;
    cfg.n = 2;
    const std::uint64_t s = corpus_seed(cfg, "stream", 4);
    CHECK(s == corpus_seed(cfg, "stream", 4));
    CHECK(s != corpus_seed(cfg, "stream", 5));
    CHECK(s != corpus_seed(cfg, "other", 4));
    const CoverElement a = corpus_element(cfg, s, 32);
    const CoverElement b = corpus_element(cfg, s, 32);
    CHECK(a.endpoint() == b.endpoint());
    CHECK(corpus_kind_from_string("spd") == CorpusKind::Spd);
    CHECK(code_of([] { corpus_kind_from_string("zoo"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("defect scan") {
    CorpusConfig unitary;
    unitary.n = 2;
    unitary.kind = CorpusKind::Unitary;
    const DefectScan u = defect_scan(unitary, 20);
    CHECK(u.samples.size() == 20);
    CHECK(u.max_defect <= 1e-9);

    CorpusConfig mixed;
    mixed.n = 1;
    const DefectScan a = defect_scan(mixed, 30, true);
    const DefectScan b = defect_scan(mixed, 30, true);
    CHECK(a.max_defect == b.max_defect);
    CHECK(a.max_defect < 0.25);
    REQUIRE(a.max_mu_defect.has_value());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].defect >= 0.0);
        CHECK(a.samples[i].defect == b.samples[i].defect);
    }
    CHECK(code_of([&] { defect_scan(mixed, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("commuting pairs have small mu defect") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const MuOptions opts{12, 0.0, 1.0};
        const CoverElement g = gen_mixed_path(1, 1.0, seed, 256);
        const CoverElement g2 = path_power(g, 2);
        const CoverElement g3 = path_product(g, g2);
        const MuValue a = mu(g, opts), b = mu(g2, opts), c = mu(g3, opts);
        const double bound = std::max({a.err_bound, b.err_bound, c.err_bound});
        // Homogeneity on powers gives 3 + 1 + 2 bound units.
        CHECK(std::abs(c.value - a.value - b.value) <= 6.0 * bound + 1e-9);
    }
}

TEST_CASE("property checks pass on small corpora") {
    for (std::size_t n = 1; n <= 2; ++n) {
        const CheckConfig cfg = small_config(n, 6);
        CHECK(check_det_restriction(cfg).pass);
        CHECK(check_positive_conjugation(cfg).pass);
        CHECK(check_pjp(cfg).pass);
        CHECK(check_uniqueness_consistency(cfg).pass);
        for (const auto& r : check_iota_vanishing(cfg))
            CHECK_MESSAGE(r.pass, r.name);
        for (const auto& r : check_conjugation(cfg))
            CHECK_MESSAGE(r.pass, r.name);
        for (const auto& r : check_homogeneity(cfg))
            CHECK_MESSAGE(r.pass, r.name);
    }
}

TEST_CASE("zero tolerances fail the checks") {
    CheckConfig cfg = small_config(1, 5);
    cfg.det_tol = 0.0;
    cfg.slack = 0.0;
    const PropertyRecord r = check_det_restriction(cfg);
    CHECK(r.max_violation > 0.0);
    CHECK_FALSE(r.pass);
    const PropertyRecord q = make_record("x", 1, std::nan(""), 1.0);
    CHECK_FALSE(q.pass);
}

TEST_CASE("suite uses the larger of configured and baseline defect") {
    SuiteConfig s;
    s.base = small_config(1, 2);
    s.sizes = {2, 2, 2, 2, 2, 2, 2, 5};
    s.baseline_defect = 3.0;
    const SuiteResult r = run_property_suite(s);
    CHECK(r.d_hat_used == 3.0);
    CHECK(r.report.all_pass());
    CHECK(r.report.checks.back().name == "defect_regression");
}
