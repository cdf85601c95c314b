#include "magshell/qforms.hpp"

#include <cmath>
#include <stdexcept>

namespace magshell {

Mat3 embed(const Mat2& H, const Vec3& c) {
    Mat3 G = Mat3::Zero();
    G.topLeftCorner<2, 2>() = H;
    G(0, 2) += c[0];
    G(1, 2) += c[1];
    G(2, 0) += c[0];
    G(2, 1) += c[1];
    G(2, 2) += 2.0 * c[2];
    return G;
}

namespace {

double q3k(const MaterialModel& model, const Mat3& G, const Vec3& nu, double k) {
    double tr = G.trace();
    return q3(model, G, nu) + k * tr * tr;
}

double q3k_bilinear(const MaterialModel& model, const Mat3& G1, const Mat3& G2, const Vec3& nu,
                    double k) {
    return q3_bilinear(model, G1, G2, nu) + k * G1.trace() * G2.trace();
}

Mat3 lift(const Vec3& c) { return embed(Mat2::Zero(), c); }

} // namespace

QformResult q2_penalized(const MaterialModel& model, const Mat2& H, const Vec3& nu, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("q2_penalized: k must be positive");
    const Mat3 E0 = embed(H, Vec3::Zero());
    Mat3 B;
    Vec3 rhs;
    for (int i = 0; i < 3; ++i) {
        Mat3 Li = lift(Vec3::Unit(i));
        rhs[i] = -q3k_bilinear(model, E0, Li, nu, k);
        for (int j = i; j < 3; ++j) {
            B(i, j) = q3k_bilinear(model, Li, lift(Vec3::Unit(j)), nu, k);
            B(j, i) = B(i, j);
        }
    }
    Eigen::LDLT<Mat3> ldlt(B);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::runtime_error("q2_penalized: stationarity system not positive definite");
    QformResult r;
    r.argmin_c = ldlt.solve(rhs);
    r.value = q3k(model, embed(H, r.argmin_c), nu, k);
    return r;
}

QformResult q2_incompressible(const MaterialModel& model, const Mat2& H, const Vec3& nu) {
    const double c3 = -0.5 * H.trace();
    const Mat3 E0 = embed(H, Vec3(0.0, 0.0, c3));
    Mat2 B;
    Vec2 rhs;
    for (int i = 0; i < 2; ++i) {
        Mat3 Li = lift(Vec3::Unit(i));
        rhs[i] = -q3_bilinear(model, E0, Li, nu);
        for (int j = i; j < 2; ++j) {
            B(i, j) = q3_bilinear(model, Li, lift(Vec3::Unit(j)), nu);
            B(j, i) = B(i, j);
        }
    }
    Eigen::LDLT<Mat2> ldlt(B);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw std::runtime_error("q2_incompressible: stationarity system not positive definite");
    Vec2 cp = ldlt.solve(rhs);
    QformResult r;
    r.argmin_c = Vec3(cp[0], cp[1], c3);
    r.value = q3(model, embed(H, r.argmin_c), nu);
    return r;
}

double check_gap(const MaterialModel& model, const Mat2& H, const Vec3& nu, double k) {
    double h2 = H.squaredNorm();
    if (!(h2 > 0.0)) throw std::invalid_argument("check_gap: H must be nonzero");
    double qk = q2_penalized(model, H, nu, k).value;
    double qinc = q2_incompressible(model, H, nu).value;
    return (qinc - qk) * std::sqrt(k) / h2;
}

namespace {

// Coarse-to-fine grid descent for the oracle minimizers. `dims` restricts the
// scan to the free coordinates (the trace constraint fixes c3 for Q2^inc).
template <class F>
Vec3 grid_descent(const F& f, Vec3 center, std::array<bool, 3> free_dim, double halfwidth,
                  int passes) {
    Vec3 best = center;
    double fbest = f(best);
    double w = halfwidth;
    const int m = 10; // 21 points per free axis and pass
    for (int pass = 0; pass < passes; ++pass) {
        double step = w / m;
        Vec3 base = best;
        int i0 = free_dim[0] ? -m : 0, i1 = free_dim[0] ? m : 0;
        int j0 = free_dim[1] ? -m : 0, j1 = free_dim[1] ? m : 0;
        int k0 = free_dim[2] ? -m : 0, k1 = free_dim[2] ? m : 0;
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                for (int k = k0; k <= k1; ++k) {
                    Vec3 c = base + step * Vec3(i, j, k);
                    double v = f(c);
                    if (v < fbest) {
                        fbest = v;
                        best = c;
                    }
                }
        w = 2.0 * step; // bracket the new best by two old steps
    }
    return best;
}

} // namespace

QformResult q2_penalized_bruteforce(const MaterialModel& model, const Mat2& H, const Vec3& nu,
                                    double k) {
    auto f = [&](const Vec3& c) { return q3k(model, embed(H, c), nu, k); };
    Vec3 best = grid_descent(f, Vec3::Zero(), {true, true, true}, 5.0, 9);
    QformResult r;
    r.argmin_c = best;
    r.value = f(best);
    return r;
}

QformResult q2_incompressible_bruteforce(const MaterialModel& model, const Mat2& H,
                                         const Vec3& nu) {
    const double c3 = -0.5 * H.trace();
    auto f = [&](const Vec3& c) { return q3(model, embed(H, Vec3(c[0], c[1], c3)), nu); };
    Vec3 best = grid_descent(f, Vec3(0, 0, c3), {true, true, false}, 5.0, 9);
    QformResult r;
    r.argmin_c = Vec3(best[0], best[1], c3);
    r.value = f(best);
    return r;
}

std::shared_ptr<const ElasticTensor> TensorCache::at(const Vec3& nu) const {
    std::array<long, 3> key{std::lround(nu[0] * 1e6), std::lround(nu[1] * 1e6),
                            std::lround(nu[2] * 1e6)};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto t = std::make_shared<const ElasticTensor>(model_, nu.normalized());
    cache_.emplace(key, t);
    return t;
}

} // namespace magshell
