#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pairlab {

// Model catalog for the weighted nonlinear least-squares engine.
//
//   gaussian_floor        p = {amp, center, sigma, floor}
//                         y = amp*exp(-(x-center)^2/(2 sigma^2)) + floor
//   triple_gaussian_floor p = {amp_m, amp_0, amp_p, center, dt, sigma, floor}
//                         peaks at center-dt, center, center+dt, common sigma
//   sinusoid              p = {amp, visibility, phase0, omega}
//                         y = amp*(1 + visibility*cos(omega*x + phase0))
//   power_quadratic       p = {coeff},  y = coeff*x^2
//   sigmoid_saturation    p = {a},      y = a*x^2/(1 + a*x^2)
//   line                  p = {intercept, slope}
enum class ModelId {
    gaussian_floor,
    triple_gaussian_floor,
    sinusoid,
    power_quadratic,
    sigmoid_saturation,
    line,
};

ModelId model_from_string(const std::string& name);  // rejects unknown ids
const char* to_string(ModelId id);
std::size_t model_param_count(ModelId id);
std::vector<std::string> model_param_names(ModelId id);

double model_eval(ModelId id, std::span<const double> params, double x);
// returns y and fills grad[j] = dy/dparams[j]
double model_eval_grad(ModelId id, std::span<const double> params, double x,
                       std::span<double> grad);

struct FitResult {
    std::vector<double> params;
    std::vector<double> std_errs;
    std::vector<double> covariance;  // row-major n x n
    double residual_norm = 0.0;      // sqrt(chi^2) at the optimum
    double chi2 = 0.0;
    bool converged = false;
    int iterations = 0;
    std::string diagnostic;

    double cov(std::size_t i, std::size_t j) const {
        return covariance[i * params.size() + j];
    }
};

// Damped Gauss-Newton (Levenberg-Marquardt schedule: lambda starts at 1e-3,
// x10 on a rejected step, x0.3 on an accepted one; stops on relative parameter
// change < 1e-10 or gradient norm < 1e-12, max 200 iterations). Covariance is
// inv(J^T W J) scaled by chi^2/dof when dof > 0.
FitResult nlls_fit(ModelId id, std::span<const double> x, std::span<const double> y,
                   std::span<const double> sigma_y, std::span<const double> init);

// sigma for Poisson counts: sqrt(n), floored at 1 for empty bins
std::vector<double> poisson_sigmas(std::span<const std::uint64_t> counts);

}  // namespace pairlab
