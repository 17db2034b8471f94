#include "gslope/ordered_l1.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace gslope {

OrderedWeights::OrderedWeights(Vec lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw std::invalid_argument("weights: empty");
    if (lambdas_.front() <= 0.0) throw std::invalid_argument("weights: lambda_1 must be positive");
    for (std::size_t j = 0; j < lambdas_.size(); ++j) {
        if (!(lambdas_[j] >= 0.0)) throw std::invalid_argument("weights: negative or NaN entry");
        if (j > 0 && lambdas_[j] > lambdas_[j - 1]) {
            throw std::invalid_argument("weights: must be non-increasing");
        }
    }
}

OrderedWeights OrderedWeights::constant(std::size_t p, double c) {
    return OrderedWeights(Vec(p, c));
}

SortPermutation SortPermutation::from(const Vec& u) {
    SortPermutation sp;
    sp.order.resize(u.size());
    std::iota(sp.order.begin(), sp.order.end(), std::size_t{0});
    std::stable_sort(sp.order.begin(), sp.order.end(), [&u](std::size_t a, std::size_t b) {
        return std::abs(u[a]) > std::abs(u[b]);
    });
    sp.signs.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) sp.signs[i] = u[i] < 0.0 ? -1.0 : 1.0;
    return sp;
}

Vec SortPermutation::sorted_abs(const Vec& u) const {
    Vec out(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) out[k] = std::abs(u[order[k]]);
    return out;
}

Vec SortPermutation::restore(const Vec& sorted_values) const {
    Vec out(sorted_values.size());
    for (std::size_t k = 0; k < sorted_values.size(); ++k) {
        out[order[k]] = signs[order[k]] * sorted_values[k];
    }
    return out;
}

namespace {

Vec abs_sorted_desc(const Vec& v) {
    Vec a(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) a[i] = std::abs(v[i]);
    std::sort(a.begin(), a.end(), std::greater<>());
    return a;
}

}  // namespace

double slope_norm(const OrderedWeights& w, const Vec& theta) {
    if (theta.size() != w.size()) throw std::invalid_argument("slope_norm: length mismatch");
    Vec a = abs_sorted_desc(theta);
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += w[j] * a[j];
    return s;
}

double slope_dual_norm(const OrderedWeights& w, const Vec& v) {
    if (v.size() != w.size()) throw std::invalid_argument("slope_dual_norm: length mismatch");
    Vec a = abs_sorted_desc(v);
    double cum_v = 0.0, cum_l = 0.0, best = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        cum_v += a[k];
        cum_l += w[k];
        best = std::max(best, cum_v / cum_l);  // cum_l > 0 since lambda_1 > 0
    }
    return best;
}

Vec isotonic_nonneg(const Vec& y) {
    const std::size_t n = y.size();
    // pool stack only grows to the number of active pools, so memory traffic
    // stays near one read of y plus one write of the result
    struct Pool {
        double sum;
        double value;
        std::size_t len;
    };
    std::vector<Pool> pools;
    pools.reserve(64);
    for (std::size_t i = 0; i < n; ++i) {
        Pool p{y[i], y[i], 1};
        while (!pools.empty() && pools.back().value <= p.value) {
            p.sum += pools.back().sum;
            p.len += pools.back().len;
            p.value = p.sum / static_cast<double>(p.len);
            pools.pop_back();
        }
        pools.push_back(p);
    }
    Vec out(n);
    std::size_t i = 0;
    for (const Pool& p : pools) {
        const double v = std::max(p.value, 0.0);
        for (std::size_t j = 0; j < p.len; ++j) out[i++] = v;
    }
    return out;
}

Vec prox_slope(const OrderedWeights& w, const Vec& u, double t) {
    if (u.size() != w.size()) throw std::invalid_argument("prox_slope: length mismatch");
    if (!(t > 0.0)) throw std::invalid_argument("prox_slope: step must be positive");
    const auto sp = SortPermutation::from(u);
    Vec a = sp.sorted_abs(u);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= t * w[j];
    return sp.restore(isotonic_nonneg(a));
}

Vec project_dual_ball(const OrderedWeights& w, const Vec& theta, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("project_dual_ball: radius must be positive");
    Vec shrunk = prox_slope(w, theta, r);
    Vec out(theta.size());
    for (std::size_t j = 0; j < theta.size(); ++j) out[j] = theta[j] - shrunk[j];
    return out;
}

double capital_lambda(const OrderedWeights& w, int s) {
    if (s < 1 || s > static_cast<int>(w.size())) {
        throw std::invalid_argument("capital_lambda: s out of range");
    }
    double sq = 0.0;
    for (int j = 0; j < s; ++j) sq += w[j] * w[j];
    return std::sqrt(sq);
}

OrderedWeights read_weights_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weights file: " + path);
    Vec lambdas;
    double x;
    while (in >> x) lambdas.push_back(x);
    return OrderedWeights(std::move(lambdas));
}

void write_weights_file(const std::string& path, const OrderedWeights& w) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write weights file: " + path);
    out.precision(17);
    for (double l : w.values()) out << l << '\n';
}

}  // namespace gslope
