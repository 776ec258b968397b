#include "doctest.h"

#include "eigensurf/eigensurface.hpp"
#include "eigensurf/synth.hpp"
#include "support.hpp"

using namespace eigensurf;

TEST_SUITE("eigensurface") {

TEST_CASE("window grid counts") {
    auto g = window_grid(5, 5, 5);
    CHECK(g.row_positions == 1);
    CHECK(g.col_positions == 1);

    g = window_grid(100, 100, 40);
    CHECK(g.row_positions == 61);
    CHECK(g.col_positions == 61);

    g = window_grid(200, 100, 40);
    CHECK(g.row_positions == 161);
    CHECK(g.col_positions == 61);

    CHECK_THROWS_AS(window_grid(5, 5, 6), InputError);
    CHECK_THROWS_AS(window_grid(5, 5, 1), InputError);
}

TEST_CASE("window sums on small cases") {
    const Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(4, 4);
    CHECK(window_eigen_sum(zeros, SpectralMode::eigen_sum) == 0.0);
    CHECK(window_eigen_sum(zeros, SpectralMode::singular_sum) == 0.0);

    // Rank one: eigenvalues {3, 0, 0}.
    const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 3);
    CHECK(window_eigen_sum(ones, SpectralMode::eigen_sum) == doctest::Approx(3.0));
    CHECK(window_eigen_sum_spectral(ones) == doctest::Approx(3.0));
    CHECK(window_eigen_sum(ones, SpectralMode::singular_sum) == doctest::Approx(3.0));

    // Characteristic polynomial l^2 - 5 l - 2: roots sum to 5.
    Eigen::MatrixXd a(2, 2);
    a << 1, 2, 3, 4;
    const double disc = std::sqrt(25.0 + 8.0);
    CHECK(window_eigen_sum(a, SpectralMode::eigen_sum) == doctest::Approx(5.0));
    CHECK(window_eigen_sum_spectral(a) ==
          doctest::Approx(std::abs((5.0 + disc) / 2 + (5.0 - disc) / 2)));

    // Negative trace: modulus is taken.
    CHECK(window_eigen_sum(-a, SpectralMode::eigen_sum) == doctest::Approx(5.0));

    CHECK_THROWS_AS(window_eigen_sum(Eigen::MatrixXd::Ones(2, 3), SpectralMode::eigen_sum),
                    InputError);
}

TEST_CASE("trace identity and nuclear-norm dominance on random windows") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const long k = 2 + static_cast<long>(rng() % 9);
        const auto w = testing::random_matrix(rng, k, k);
        const double via_trace = window_eigen_sum(w, SpectralMode::eigen_sum);
        CHECK(std::abs(via_trace - std::abs(testing::naive_trace(w))) <= 1e-9);
        CHECK(std::abs(window_eigen_sum_spectral(w) - via_trace) <= 1e-9);
        const double nuclear = window_eigen_sum(w, SpectralMode::singular_sum);
        CHECK(nuclear == doctest::Approx(testing::nuclear_norm_oracle(w)).epsilon(1e-8));
        CHECK(nuclear >= via_trace - 1e-9);
    }
}

TEST_CASE("diagonal fixture: ridge of height 2k on r == s") {
    const long k = 40;
    auto a = synth::diagonal(100, 100);
    auto e = build_eigensurface(a.values(), k, SpectralMode::eigen_sum);
    CHECK(e.rows() == 61);
    CHECK(e.cols() == 61);
    CHECK(e.origin() == GridPoint{1, 1});
    CHECK(e.window_size() == k);
    for (long r = 1; r <= 61; ++r)
        for (long s = 1; s <= 61; ++s)
            CHECK(e.at(r, s) == (r == s ? 2.0 * k : double(k)));
}

TEST_CASE("scaling the matrix scales the surface; normalized surfaces coincide") {
    auto a = synth::diagonal(100, 100);
    auto b = synth::diagonal(100, 100, 2.0);
    for (auto mode : {SpectralMode::eigen_sum, SpectralMode::singular_sum}) {
        auto ea = build_eigensurface(a.values(), 40, mode);
        auto eb = build_eigensurface(b.values(), 40, mode);
        CHECK((eb.values() - 2.0 * ea.values()).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((normalize_surface(ea).values() - normalize_surface(eb).values())
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
    }
}

TEST_CASE("positive homogeneity on random matrices") {
    std::mt19937_64 rng(8);
    const auto m = testing::random_matrix(rng, 15, 12);
    for (double c : {0.5, 3.0, 17.25}) {
        for (auto mode : {SpectralMode::eigen_sum, SpectralMode::singular_sum}) {
            auto e = build_eigensurface(m, 4, mode);
            auto ec = build_eigensurface(c * m, 4, mode);
            CHECK((ec.values() - c * e.values()).cwiseAbs().maxCoeff() <=
                  1e-9 * (1 + e.values().cwiseAbs().maxCoeff() * c));
        }
    }
}

TEST_CASE("constant matrix gives a constant surface") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(10, 8, 1.5);
    auto e = build_eigensurface(m, 3, SpectralMode::eigen_sum);
    CHECK(e.values().isApproxToConstant(4.5));
}

TEST_CASE("worker count does not change the surface") {
    std::mt19937_64 rng(1);
    const auto m = testing::random_matrix(rng, 60, 50);
    auto serial = build_eigensurface(m, 7, SpectralMode::singular_sum);
    WorkerPool pool(6);
    auto parallel = build_eigensurface(m, 7, SpectralMode::singular_sum, &pool);
    CHECK(serial.values() == parallel.values());
}

TEST_CASE("normalize_surface") {
    Eigen::MatrixXd v(2, 2);
    v << 0, 5, 10, 5;
    Eigen::MatrixXd expected(2, 2);
    expected << 0, 0.5, 1, 0.5;
    CHECK(normalize_surface(Surface(v)).values() == expected);

    CHECK(normalize_surface(Surface(Eigen::MatrixXd::Constant(3, 3, 7.0))).values() ==
          Eigen::MatrixXd::Zero(3, 3));

    std::mt19937_64 rng(4);
    Surface s(testing::random_matrix(rng, 9, 9), {2, 3}, 5);
    auto n1 = normalize_surface(s);
    CHECK(n1.origin() == GridPoint{2, 3});
    CHECK(n1.window_size() == 5);
    CHECK(n1.values().minCoeff() == 0.0);
    CHECK(n1.values().maxCoeff() == 1.0);
    CHECK(normalize_surface(n1).values() == n1.values());

    Surface affine((2.5 * s.values().array() - 40.0).matrix());
    CHECK((normalize_surface(affine).values() - n1.values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("anti-diagonal fixture pattern") {
    const long k = 40;
    auto c = build_eigensurface(synth::diagonal(100, 100).values(), k, SpectralMode::eigen_sum);
    auto d = build_eigensurface(synth::anti_diagonal(100, 100).values(), k, SpectralMode::eigen_sum);
    for (long r = 1; r <= c.rows(); ++r)
        for (long s = 1; s <= c.cols(); ++s) {
            const double v = d.at(r, s);
            CHECK((v == double(k) || v == double(k + 1)));
            // Window (r, s) meets the anti-diagonal i + j = 101 on its own diagonal iff
            // r + s + 2t = 101 for some t in [0, k), i.e. r + s odd and within range.
            const long twice_t = 101 - r - s;
            const bool crosses = twice_t % 2 == 0 && twice_t >= 0 && twice_t / 2 < k;
            CHECK(v == (crosses ? double(k + 1) : double(k)));
        }
}

} // TEST_SUITE
