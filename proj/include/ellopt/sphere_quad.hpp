#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "ellopt/spd_geometry.hpp"

// Deterministic quadrature on S^1 and S^2. Rules are immutable after
// construction and integrate is pure, so concurrent use is safe.

namespace ellopt {

struct NumericalDomainError : std::runtime_error {
    Vec node;
    explicit NumericalDomainError(const Vec& where)
        : std::runtime_error("integrand is not finite at a quadrature node"), node(where) {}
};

struct QuadratureRule {
    int dimension = 0;  // ambient dimension d; nodes live on S^{d-1}
    std::vector<Vec> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

// n equally spaced angles on S^1, weight 2pi/n each. Spectrally accurate
// for smooth periodic integrands. Requires n >= 4.
QuadratureRule circle_rule(int n);

// Product rule on S^2: Gauss-Legendre with n_polar points in cos(phi) times
// 2*n_polar uniform azimuths; 2*n_polar^2 nodes total. Requires n_polar >= 4.
QuadratureRule sphere_rule(int n_polar);

double integrate(const QuadratureRule& rule, const std::function<double(const Vec&)>& field);

// Gauss-Legendre nodes/weights on [-1, 1] (exactly symmetric about 0).
// Exposed for the panel integrations in the energy module.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Default resolutions; all closed-form checks in the test suite pass at
// 1e-10 with these.
inline constexpr int kDefaultCircleN = 512;
inline constexpr int kDefaultSpherePolarN = 32;

// Resolution escalation for near-degenerate matrices: the base resolution
// is doubled per decade of condition number beyond 1e8, capped at 8x.
// `capped` is set when the cap binds.
int escalated_resolution(int base, double condition_number, bool* capped);

// Shared cache for the default-family rules (keyed by kind and resolution).
const QuadratureRule& cached_circle_rule(int n);
const QuadratureRule& cached_sphere_rule(int n_polar);

}  // namespace ellopt
