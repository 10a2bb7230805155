#include "ellopt/sphere_quad.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ellopt {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess, then Newton on P_n.
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // largest root first; mirror for exact symmetry
        nodes[static_cast<std::size_t>(i)] = x;
        weights[static_cast<std::size_t>(i)] = w;
        nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

QuadratureRule circle_rule(int n) {
    if (n < 4) throw std::invalid_argument("circle_rule: need n >= 4");
    QuadratureRule rule;
    rule.dimension = 2;
    rule.nodes.reserve(static_cast<std::size_t>(n));
    rule.weights.assign(static_cast<std::size_t>(n), 2.0 * kPi / static_cast<double>(n));
    for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        rule.nodes.emplace_back(std::cos(theta), std::sin(theta));
    }
    return rule;
}

QuadratureRule sphere_rule(int n_polar) {
    if (n_polar < 4) throw std::invalid_argument("sphere_rule: need n_polar >= 4");
    std::vector<double> u, wu;
    gauss_legendre(n_polar, u, wu);
    const int n_az = 2 * n_polar;
    const double w_az = 2.0 * kPi / static_cast<double>(n_az);
    QuadratureRule rule;
    rule.dimension = 3;
    rule.nodes.reserve(static_cast<std::size_t>(n_polar * n_az));
    rule.weights.reserve(static_cast<std::size_t>(n_polar * n_az));
    for (int i = 0; i < n_polar; ++i) {
        const double ui = u[static_cast<std::size_t>(i)];
        const double s = std::sqrt(std::max(0.0, 1.0 - ui * ui));
        for (int j = 0; j < n_az; ++j) {
            const double psi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_az);
            rule.nodes.emplace_back(s * std::cos(psi), s * std::sin(psi), ui);
            rule.weights.push_back(wu[static_cast<std::size_t>(i)] * w_az);
        }
    }
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(const Vec&)>& field) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double v = field(rule.nodes[i]);
        if (!std::isfinite(v)) throw NumericalDomainError(rule.nodes[i]);
        acc += rule.weights[i] * v;
    }
    return acc;
}

int escalated_resolution(int base, double condition_number, bool* capped) {
    int factor = 1;
    double threshold = 1e8;
    while (condition_number > threshold && factor < 8) {
        factor *= 2;
        threshold *= 100.0;
    }
    if (capped != nullptr) *capped = (condition_number > threshold && factor >= 8);
    return base * factor;
}

namespace {
std::mutex cache_mutex;
std::map<std::pair<int, int>, QuadratureRule> rule_cache;

const QuadratureRule& cached_rule(int kind, int n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto key = std::make_pair(kind, n);
    auto it = rule_cache.find(key);
    if (it == rule_cache.end()) it = rule_cache.emplace(key, kind == 2 ? circle_rule(n) : sphere_rule(n)).first;
    return it->second;
}
}  // namespace

const QuadratureRule& cached_circle_rule(int n) { return cached_rule(2, n); }
const QuadratureRule& cached_sphere_rule(int n_polar) { return cached_rule(3, n_polar); }

}  // namespace ellopt
