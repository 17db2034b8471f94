#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gslope {

using Vec = std::vector<double>;

// Validated Slope weight vector: non-increasing, nonnegative, lambda_1 > 0.
class OrderedWeights {
public:
    explicit OrderedWeights(Vec lambdas);
    static OrderedWeights constant(std::size_t p, double c);

    const Vec& values() const { return lambdas_; }
    std::size_t size() const { return lambdas_.size(); }
    double operator[](std::size_t j) const { return lambdas_[j]; }

private:
    Vec lambdas_;
};

// Decomposition of a vector into descending amplitude order plus signs,
// invertible exactly. Ties broken by original index (stable).
struct SortPermutation {
    std::vector<std::size_t> order;  // order[k] = original index of k-th largest |u|
    std::vector<double> signs;       // sign of u at original index (0 -> +1)

    static SortPermutation from(const Vec& u);
    // |u| sorted descending.
    Vec sorted_abs(const Vec& u) const;
    // Inverse map: places sorted-space values back with original signs/order.
    Vec restore(const Vec& sorted_values) const;
};

// Sum_j lambda_j |theta|^down_j.
double slope_norm(const OrderedWeights& w, const Vec& theta);

// Exact dual norm: max_k (sum_{j<=k} |v|^down_j) / (sum_{j<=k} lambda_j).
double slope_dual_norm(const OrderedWeights& w, const Vec& v);

// argmin over non-increasing nonnegative vectors of 0.5 * ||y - theta||^2.
// Stack-based pool-adjacent-violators, linear time, with a terminal clamp
// at zero.
Vec isotonic_nonneg(const Vec& y);

// argmin_z 0.5 * ||u - z||^2 + t * slope_norm(w, z), via sort + isotonic fit
// of |u|^down - t*lambda + sign/order restoration.
Vec prox_slope(const OrderedWeights& w, const Vec& u, double t);

// Projection onto {v : slope_dual_norm(w, v) <= r}, by Moreau decomposition:
// theta - prox_slope(w, theta, r).
Vec project_dual_ball(const OrderedWeights& w, const Vec& theta, double r);

// Lambda(lambda, s) = sqrt(sum_{j<=s} lambda_j^2), s in 1..p.
double capital_lambda(const OrderedWeights& w, int s);

// Weights file: one float per line, validated on load.
OrderedWeights read_weights_file(const std::string& path);
void write_weights_file(const std::string& path, const OrderedWeights& w);

}  // namespace gslope
