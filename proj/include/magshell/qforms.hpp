#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "magshell/material.hpp"

namespace magshell {

/// The 3x3 matrix [[H, 0'], [(0')^T, 0]] + c (x) e3 + e3 (x) c.
Mat3 embed(const Mat2& H, const Vec3& c);

struct QformResult {
    double value = 0.0;
    Vec3 argmin_c = Vec3::Zero();
};

/// Q2^k(H, nu) = min over c of Q3(embed(H,c), nu) + k tr(embed(H,c))^2, by the
/// 3x3 symmetric positive-definite stationarity solve.
QformResult q2_penalized(const MaterialModel& model, const Mat2& H, const Vec3& nu, double k);

/// Q2^inc(H, nu): same minimum constrained to tr(embed(H,c)) = 0. The trace fixes
/// (c)3 = -tr(H)/2; the remaining in-plane pair comes from a 2x2 solve.
QformResult q2_incompressible(const MaterialModel& model, const Mat2& H, const Vec3& nu);

/// Consistency functional of the penalization gap: (Q2^inc - Q2^k) sqrt(k) / |H|^2.
/// Nonnegative (the penalized minimum relaxes the trace constraint) and bounded
/// over nu, H by the constant of the gap inequality. Rejects H = 0.
double check_gap(const MaterialModel& model, const Mat2& H, const Vec3& nu, double k);

/// Brute-force minimizers used only as test oracles: coarse grid scan over
/// c in [-5,5]^3 (or the trace-constrained plane) followed by local refinement.
QformResult q2_penalized_bruteforce(const MaterialModel& model, const Mat2& H, const Vec3& nu,
                                    double k);
QformResult q2_incompressible_bruteforce(const MaterialModel& model, const Mat2& H, const Vec3& nu);

/// Cache of elastic tensors keyed by nu quantized to a 1e-6 grid. Insertion is
/// idempotent; reads outnumber writes in reduced-energy loops.
class TensorCache {
public:
    explicit TensorCache(const MaterialModel& model) : model_(model) {}
    std::shared_ptr<const ElasticTensor> at(const Vec3& nu) const;

private:
    MaterialModel model_;
    mutable std::mutex mutex_;
    mutable std::map<std::array<long, 3>, std::shared_ptr<const ElasticTensor>> cache_;
};

} // namespace magshell
