#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "magshell/qforms.hpp"

#include "testutil.hpp"

using namespace magshell;

namespace {

std::mt19937 rng(77031u);

Vec3 random_unit() {
    std::normal_distribution<double> g;
    Vec3 v(g(rng), g(rng), g(rng));
    while (v.norm() < 1e-6) v = Vec3(g(rng), g(rng), g(rng));
    return v.normalized();
}

Mat2 random_H() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat2 H;
    H << u(rng), u(rng), u(rng), u(rng);
    return H;
}

MaterialModel model() {
    MaterialModel m;
    m.p = 4.0;
    m.coupling = 1.0;
    return m;
}

} // namespace

TEST_CASE("embed assembles the block matrix and its trace") {
    CHECK(embed(Mat2::Zero(), Vec3::Zero()).norm() == 0.0);
    Mat3 D = embed(Mat2::Identity(), Vec3::UnitZ());
    CHECK((D - Vec3(1.0, 1.0, 2.0).asDiagonal().toDenseMatrix()).norm() < 1e-15);
    for (int t = 0; t < 20; ++t) {
        Mat2 H = random_H();
        Vec3 c = Vec3::Random();
        CHECK(embed(H, c).trace() == doctest::Approx(H.trace() + 2.0 * c[2]).epsilon(1e-13));
        CHECK((embed(H, c) - embed(H, c).transpose()).norm() ==
              doctest::Approx((Mat2(H - H.transpose())).norm()).epsilon(1e-12));
    }
}

TEST_CASE("zero H minimizes to zero with zero corrector") {
    MaterialModel m = model();
    auto rk = q2_penalized(m, Mat2::Zero(), random_unit(), 10.0);
    CHECK(rk.value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(rk.argmin_c.norm() < 1e-12);
    auto ri = q2_incompressible(m, Mat2::Zero(), random_unit());
    CHECK(ri.value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ri.argmin_c.norm() < 1e-12);
}

TEST_CASE("closed-form solvers match the brute-force oracles") {
    MaterialModel m = model();
    for (int t = 0; t < 25; ++t) {
        Mat2 H = random_H();
        Vec3 nu = random_unit();
        double k = std::pow(10.0, t % 3);
        auto exact = q2_penalized(m, H, nu, k);
        auto brute = q2_penalized_bruteforce(m, H, nu, k);
        CHECK(rel_err(exact.value, brute.value, 1e-9) < 1e-6);
        auto exact_i = q2_incompressible(m, H, nu);
        auto brute_i = q2_incompressible_bruteforce(m, H, nu);
        CHECK(rel_err(exact_i.value, brute_i.value, 1e-9) < 1e-6);
    }
}

TEST_CASE("incompressible argmin satisfies the trace constraint exactly") {
    MaterialModel m = model();
    for (int t = 0; t < 50; ++t) {
        Mat2 H = random_H();
        auto r = q2_incompressible(m, H, random_unit());
        CHECK(r.argmin_c[2] == doctest::Approx(-0.5 * H.trace()).epsilon(1e-14));
        CHECK(embed(H, r.argmin_c).trace() == doctest::Approx(0.0).epsilon(1e-13));
    }
}

TEST_CASE("relaxation ordering: Q2^k never exceeds Q2^inc") {
    MaterialModel m = model();
    for (int t = 0; t < 100; ++t) {
        Mat2 H = random_H();
        Vec3 nu = random_unit();
        for (double k : {1.0, 10.0, 100.0, 1000.0}) {
            double qk = q2_penalized(m, H, nu, k).value;
            double qi = q2_incompressible(m, H, nu).value;
            CHECK(qk <= qi * (1.0 + 1e-12) + 1e-14);
        }
    }
}

TEST_CASE("penalized value is nondecreasing in k") {
    MaterialModel m = model();
    for (int t = 0; t < 20; ++t) {
        Mat2 H = random_H();
        Vec3 nu = random_unit();
        double prev = -1.0;
        for (double k : {1.0, 10.0, 100.0, 1000.0}) {
            double qk = q2_penalized(m, H, nu, k).value;
            CHECK(qk >= prev - 1e-12);
            prev = qk;
        }
    }
}

TEST_CASE("gap closes as k grows and the normalized gap stays bounded") {
    MaterialModel m = model();
    for (int t = 0; t < 20; ++t) {
        Mat2 H = random_H();
        if (H.norm() < 0.1) continue;
        Vec3 nu = random_unit();
        double qi = q2_incompressible(m, H, nu).value;
        double prev_gap = std::numeric_limits<double>::max();
        for (double k : {1.0, 10.0, 100.0, 1000.0}) {
            double gap = qi - q2_penalized(m, H, nu, k).value;
            CHECK(gap >= -1e-12);
            CHECK(gap <= prev_gap + 1e-12);
            prev_gap = gap;
        }
    }
    // empirical constant of the gap inequality over many samples
    double chat = 0.0;
    for (int t = 0; t < 1000; ++t) {
        Mat2 H = random_H();
        if (H.norm() < 1e-3) continue;
        chat = std::max(chat, check_gap(model(), H, random_unit(), 100.0));
    }
    CHECK(chat < 100.0);
    CHECK(chat >= 0.0);
    CHECK_THROWS(check_gap(model(), Mat2::Zero(), Vec3::UnitZ(), 100.0));
}

TEST_CASE("homogeneity and argmin linearity in H") {
    MaterialModel m = model();
    for (int t = 0; t < 20; ++t) {
        Mat2 H = random_H();
        Vec3 nu = random_unit();
        double s = 1.7;
        CHECK(q2_penalized(m, s * H, nu, 50.0).value ==
              doctest::Approx(s * s * q2_penalized(m, H, nu, 50.0).value).epsilon(1e-10));
        CHECK(q2_incompressible(m, s * H, nu).value ==
              doctest::Approx(s * s * q2_incompressible(m, H, nu).value).epsilon(1e-10));

        Mat2 H2 = random_H();
        Vec3 c1 = q2_penalized(m, H, nu, 50.0).argmin_c;
        Vec3 c2 = q2_penalized(m, H2, nu, 50.0).argmin_c;
        Vec3 c12 = q2_penalized(m, H + H2, nu, 50.0).argmin_c;
        CHECK((c12 - c1 - c2).norm() < 1e-10 * (1.0 + c12.norm()));
    }
}

TEST_CASE("tensor cache returns the same object for quantized directions") {
    TensorCache cache(model());
    auto a = cache.at(Vec3::UnitZ());
    auto b = cache.at(Vec3(1e-9, 0.0, 1.0).normalized());
    CHECK(a.get() == b.get());
    auto c = cache.at(Vec3::UnitX());
    CHECK(a.get() != c.get());
    CHECK(c->quadratic(Mat3::Identity()) == doctest::Approx(q3(model(), Mat3::Identity(), Vec3::UnitX())));
}
