#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "magshell/maxwell.hpp"

#include "testutil.hpp"
#include "magshell/ratefit.hpp"

using namespace magshell;

namespace {

// Exact continuum magnetostatic energies of the uniformly magnetized unit-square
// film omega x (-h/2, h/2), m = e3, from the face-charge double integral
// (computed independently by adaptive quadrature of the closed-form rectangle
// potential; see the plate limit of Theorem-style checks below).
struct PlateOracle {
    double h;
    double energy; // (1/2) int |grad psi|^2, unrescaled
};
const PlateOracle kPlateOracle[] = {
    {0.2, 0.069419},
    {0.1, 0.040254},
    {0.05, 0.022025},
};

MagnetizationField permuted_flipped(const MagnetizationField& f) {
    // lattice-compatible rigid motion: (x,y,z) -> (y, -x, z), components rotated
    MagnetizationField g;
    g.n = {f.n[1], f.n[0], f.n[2]};
    g.spacing = Vec3(f.spacing[1], f.spacing[0], f.spacing[2]);
    g.origin = Vec3(f.origin[1], -(f.origin[0] + f.n[0] * f.spacing[0]), f.origin[2]);
    g.values.assign(g.size(), Vec3::Zero());
    g.mask.assign(g.size(), 0);
    for (int i = 0; i < f.n[0]; ++i)
        for (int j = 0; j < f.n[1]; ++j)
            for (int k = 0; k < f.n[2]; ++k) {
                // cell (i,j,k) -> (j, n0-1-i, k)
                auto dst = g.idx(j, f.n[0] - 1 - i, k);
                auto src = f.idx(i, j, k);
                g.mask[dst] = f.mask[src];
                Vec3 v = f.values[src];
                g.values[dst] = Vec3(v[1], -v[0], v[2]);
            }
    return g;
}

} // namespace

TEST_CASE("zero magnetization gives a zero stray field") {
    MagnetizationField f;
    f.n = {8, 8, 8};
    f.spacing = Vec3::Constant(0.1);
    f.values.assign(f.size(), Vec3::Zero());
    f.mask.assign(f.size(), 0);
    StrayField s = solve_stray(f);
    CHECK(s.energy == 0.0);
    for (const auto& g : s.grad) CHECK(g.norm() == 0.0);
}

TEST_CASE("field validation catches broken saturation") {
    MagnetizationField f;
    f.n = {4, 4, 4};
    f.spacing = Vec3::Constant(0.1);
    f.values.assign(f.size(), Vec3::Zero());
    f.mask.assign(f.size(), 0);
    f.mask[0] = 1; // |value| = 0 on mask
    CHECK_THROWS(solve_stray(f));
    f.mask[0] = 0;
    f.values[3] = Vec3(0.5, 0.0, 0.0); // nonzero off mask
    CHECK_THROWS(f.validate());
    CHECK_THROWS(solve_stray(f, 1.2)); // padding too small
}

TEST_CASE("uniformly magnetized ball reproduces the demagnetizing factor 1/3") {
    MagnetizationField f = MagnetizationField::ball(0.5, Vec3::UnitZ(), 48);
    double volume = 0;
    for (auto m : f.mask) volume += m ? f.cell_volume() : 0.0;
    CHECK(rel_err(volume, 4.0 / 3.0 * M_PI * 0.125) < 0.02);
    StrayField s = solve_stray(f, 2.0); // effective resolution 96^3
    CHECK(rel_err(s.energy, volume / 6.0) < 0.05);
    // stability with the solved field
    CHECK(2.0 * s.energy <= f.source_norm_sq() * (1.0 + 1e-10));
}

TEST_CASE("flat films match the exact continuum energies") {
    for (const auto& po : kPlateOracle) {
        int nz = 8;
        MagnetizationField f = MagnetizationField::slab(1.0, 1.0, po.h, Vec3::UnitZ(), 48, nz);
        StrayField s = solve_stray(f, 2.0);
        CHECK(rel_err(s.energy, po.energy) < 0.02);
    }
}

TEST_CASE("in-plane uniform magnetization of a thin film costs almost nothing") {
    // rescaled energies per unit midsurface area vanish as h -> 0 (the side-wall
    // charges contribute O(h log 1/h)); the normal orientation stays near 1/2
    double prev = 1e300;
    for (double h : {0.2, 0.1, 0.05}) {
        MagnetizationField f = MagnetizationField::slab(1.0, 1.0, h, Vec3::UnitX(), 32, 6);
        double e = mag_energy_rescaled(f, h);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 0.15);
    MagnetizationField n = MagnetizationField::slab(1.0, 1.0, 0.05, Vec3::UnitZ(), 32, 6);
    CHECK(prev < 0.3 * mag_energy_rescaled(n, 0.05));
}

TEST_CASE("weak form holds to round-off and the potential has zero mean") {
    MagnetizationField f = MagnetizationField::ball(0.4, Vec3(1, 1, 1), 16);
    StrayField s = solve_stray(f, 2.0);
    CHECK(weak_form_residual(f, s, 3) < 1e-10);
    double mean = 0;
    for (double v : s.psi) mean += v;
    CHECK(std::abs(mean / s.psi.size()) < 1e-12);
}

TEST_CASE("variational characterization: the solved potential minimizes the defect") {
    MagnetizationField f = MagnetizationField::ball(0.4, Vec3::UnitZ(), 12);
    StrayField s = solve_stray(f, 2.0);
    const std::size_t nc = s.psi.size();

    // phi = psi: zero slack
    CHECK(variational_slack(f, s, s.psi) == doctest::Approx(0.0).epsilon(1e-12));

    // phi = 0: slack equals int |chi m|^2 - D(psi) >= 0
    std::vector<double> zero(nc, 0.0);
    double slack0 = variational_slack(f, s, zero);
    CHECK(slack0 >= 0.0);
    CHECK(rel_err(slack0, 2.0 * s.energy) < 1e-6);

    // random perturbations of psi: nonnegative slack
    std::mt19937 rng(5u);
    std::normal_distribution<double> g;
    for (int t = 0; t < 3; ++t) {
        std::vector<double> phi = s.psi;
        for (auto& v : phi) v += 0.05 * g(rng);
        CHECK(variational_slack(f, s, phi) >= -1e-12);
    }
}

TEST_CASE("energy is invariant under lattice-compatible rigid motions") {
    MagnetizationField f = MagnetizationField::ball(0.4, Vec3(0.3, -0.5, 0.8), 20);
    // make it asymmetric: cut away an octant
    for (int i = 0; i < f.n[0] / 2; ++i)
        for (int j = 0; j < f.n[1] / 2; ++j)
            for (int k = 0; k < f.n[2] / 2; ++k) {
                f.mask[f.idx(i, j, k)] = 0;
                f.values[f.idx(i, j, k)] = Vec3::Zero();
            }
    MagnetizationField g = permuted_flipped(f);
    double e1 = solve_stray(f, 2.0).energy;
    double e2 = solve_stray(g, 2.0).energy;
    CHECK(std::abs(e1 - e2) <= 1e-10 * (1.0 + std::abs(e1)));
}

TEST_CASE("superposition: disjoint sources add linearly in the gradient") {
    MagnetizationField a;
    a.n = {16, 16, 16};
    a.spacing = Vec3::Constant(0.1);
    a.origin = Vec3::Constant(-0.8);
    a.values.assign(a.size(), Vec3::Zero());
    a.mask.assign(a.size(), 0);
    MagnetizationField b = a, ab = a;
    for (int i = 2; i < 6; ++i)
        for (int j = 2; j < 6; ++j)
            for (int k = 2; k < 6; ++k) {
                a.mask[a.idx(i, j, k)] = 1;
                a.values[a.idx(i, j, k)] = Vec3::UnitZ();
                ab.mask[ab.idx(i, j, k)] = 1;
                ab.values[ab.idx(i, j, k)] = Vec3::UnitZ();
            }
    for (int i = 10; i < 14; ++i)
        for (int j = 10; j < 14; ++j)
            for (int k = 10; k < 14; ++k) {
                b.mask[b.idx(i, j, k)] = 1;
                b.values[b.idx(i, j, k)] = Vec3::UnitX();
                ab.mask[ab.idx(i, j, k)] = 1;
                ab.values[ab.idx(i, j, k)] = Vec3::UnitX();
            }
    StrayField sa = solve_stray(a, 2.0), sb = solve_stray(b, 2.0), sab = solve_stray(ab, 2.0);
    double err = 0, scale = 0;
    for (std::size_t t = 0; t < sa.grad.size(); ++t) {
        err = std::max(err, (sa.grad[t] + sb.grad[t] - sab.grad[t]).norm());
        scale = std::max(scale, sab.grad[t].norm());
    }
    CHECK(err <= 1e-10 * (1.0 + scale));
}

TEST_CASE("rescaled energy input validation") {
    MagnetizationField f = MagnetizationField::slab(1.0, 1.0, 0.1, Vec3::UnitZ(), 8, 2);
    CHECK_THROWS(mag_energy_rescaled(f, 0.0));
    CHECK_THROWS(mag_energy_rescaled(f, -1.0));
}
