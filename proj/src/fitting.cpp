#include "pairlab/fitting.hpp"

#include "pairlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace pairlab {

namespace {

constexpr double kLambda0 = 1e-3;
constexpr double kLambdaUp = 10.0;
constexpr double kLambdaDown = 0.3;
constexpr double kLambdaMax = 1e14;
constexpr double kParamTol = 1e-10;
constexpr double kGradTol = 1e-12;
constexpr int kMaxIterations = 200;

// Cholesky solve of (A + lambda*diag(A)) x = b for small dense SPD systems.
bool solve_damped(std::vector<double> a, std::vector<double> b, std::size_t n,
                  double lambda, std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
        a[i * n + i] *= (1.0 + lambda);
        if (a[i * n + i] <= 0.0) a[i * n + i] = lambda > 0 ? lambda : 1e-30;
    }
    // in-place Cholesky
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (s <= 0.0) return false;
                a[i * n + i] = std::sqrt(s);
            } else {
                a[i * n + j] = s / a[j * n + j];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
        b[i] = s / a[i * n + i];
    }
    x.assign(n, 0.0);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= a[k * n + ii] * x[k];
        x[ii] = s / a[ii * n + ii];
    }
    return true;
}

// inverse of an SPD matrix via Cholesky; returns false when singular
bool invert_spd(const std::vector<double>& a_in, std::size_t n, std::vector<double>& inv) {
    inv.assign(n * n, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        std::vector<double> x;
        if (!solve_damped(a_in, e, n, 0.0, x)) return false;
        for (std::size_t i = 0; i < n; ++i) inv[i * n + col] = x[i];
    }
    return true;
}

double gauss(double x, double c, double s) {
    const double z = (x - c) / s;
    return std::exp(-0.5 * z * z);
}

}  // namespace

ModelId model_from_string(const std::string& name) {
    if (name == "gaussian_floor") return ModelId::gaussian_floor;
    if (name == "triple_gaussian_floor") return ModelId::triple_gaussian_floor;
    if (name == "sinusoid") return ModelId::sinusoid;
    if (name == "power_quadratic" || name == "quadratic") return ModelId::power_quadratic;
    if (name == "sigmoid_saturation" || name == "sigmoid") return ModelId::sigmoid_saturation;
    if (name == "line") return ModelId::line;
    throw AnalysisError("unknown model id '" + name + "'");
}

const char* to_string(ModelId id) {
    switch (id) {
        case ModelId::gaussian_floor: return "gaussian_floor";
        case ModelId::triple_gaussian_floor: return "triple_gaussian_floor";
        case ModelId::sinusoid: return "sinusoid";
        case ModelId::power_quadratic: return "power_quadratic";
        case ModelId::sigmoid_saturation: return "sigmoid_saturation";
        case ModelId::line: return "line";
    }
    throw AnalysisError("unknown model id");
}

std::size_t model_param_count(ModelId id) {
    switch (id) {
        case ModelId::gaussian_floor: return 4;
        case ModelId::triple_gaussian_floor: return 7;
        case ModelId::sinusoid: return 4;
        case ModelId::power_quadratic: return 1;
        case ModelId::sigmoid_saturation: return 1;
        case ModelId::line: return 2;
    }
    throw AnalysisError("unknown model id");
}

std::vector<std::string> model_param_names(ModelId id) {
    switch (id) {
        case ModelId::gaussian_floor:
            return {"amp", "center", "sigma", "floor"};
        case ModelId::triple_gaussian_floor:
            return {"amp_m", "amp_0", "amp_p", "center", "dt", "sigma", "floor"};
        case ModelId::sinusoid:
            return {"amp", "visibility", "phase0", "omega"};
        case ModelId::power_quadratic:
            return {"coeff"};
        case ModelId::sigmoid_saturation:
            return {"a"};
        case ModelId::line:
            return {"intercept", "slope"};
    }
    throw AnalysisError("unknown model id");
}

double model_eval_grad(ModelId id, std::span<const double> p, double x,
                       std::span<double> grad) {
    switch (id) {
        case ModelId::gaussian_floor: {
            const double amp = p[0], c = p[1], s = p[2], f0 = p[3];
            const double z = (x - c) / s;
            const double e = std::exp(-0.5 * z * z);
            if (!grad.empty()) {
                grad[0] = e;
                grad[1] = amp * e * z / s;
                grad[2] = amp * e * z * z / s;
                grad[3] = 1.0;
            }
            return amp * e + f0;
        }
        case ModelId::triple_gaussian_floor: {
            const double am = p[0], a0 = p[1], ap = p[2];
            const double c = p[3], dt = p[4], s = p[5], f0 = p[6];
            const double cm = c - dt, cp = c + dt;
            const double zm = (x - cm) / s, z0 = (x - c) / s, zp = (x - cp) / s;
            const double em = std::exp(-0.5 * zm * zm);
            const double e0 = std::exp(-0.5 * z0 * z0);
            const double ep = std::exp(-0.5 * zp * zp);
            if (!grad.empty()) {
                grad[0] = em;
                grad[1] = e0;
                grad[2] = ep;
                grad[3] = (am * em * zm + a0 * e0 * z0 + ap * ep * zp) / s;
                grad[4] = (-am * em * zm + ap * ep * zp) / s;
                grad[5] = (am * em * zm * zm + a0 * e0 * z0 * z0 + ap * ep * zp * zp) / s;
                grad[6] = 1.0;
            }
            return am * em + a0 * e0 + ap * ep + f0;
        }
        case ModelId::sinusoid: {
            const double amp = p[0], vis = p[1], ph0 = p[2], omega = p[3];
            const double arg = omega * x + ph0;
            const double c = std::cos(arg), s = std::sin(arg);
            if (!grad.empty()) {
                grad[0] = 1.0 + vis * c;
                grad[1] = amp * c;
                grad[2] = -amp * vis * s;
                grad[3] = -amp * vis * s * x;
            }
            return amp * (1.0 + vis * c);
        }
        case ModelId::power_quadratic: {
            if (!grad.empty()) grad[0] = x * x;
            return p[0] * x * x;
        }
        case ModelId::sigmoid_saturation: {
            const double ax2 = p[0] * x * x;
            const double den = 1.0 + ax2;
            if (!grad.empty()) grad[0] = x * x / (den * den);
            return ax2 / den;
        }
        case ModelId::line: {
            if (!grad.empty()) {
                grad[0] = 1.0;
                grad[1] = x;
            }
            return p[0] + p[1] * x;
        }
    }
    throw AnalysisError("unknown model id");
}

double model_eval(ModelId id, std::span<const double> p, double x) {
    return model_eval_grad(id, p, x, {});
}

FitResult nlls_fit(ModelId id, std::span<const double> x, std::span<const double> y,
                   std::span<const double> sy, std::span<const double> init) {
    const std::size_t n = x.size();
    const std::size_t np = model_param_count(id);
    if (y.size() != n || sy.size() != n) throw AnalysisError("nlls_fit: size mismatch");
    if (n < np) throw AnalysisError("nlls_fit: fewer data points than parameters");
    if (init.size() != np) throw AnalysisError("nlls_fit: wrong init size");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]) || !std::isfinite(sy[i])) {
            throw AnalysisError("nlls_fit: non-finite input");
        }
        if (!(sy[i] > 0)) throw AnalysisError("nlls_fit: sigma_y must be positive");
    }

    FitResult res;
    res.params.assign(init.begin(), init.end());

    std::vector<double> grad(np), jt_r(np), normal(np * np), step;
    std::vector<double> trial(np);

    auto chi2_of = [&](std::span<const double> p) {
        double c2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = (y[i] - model_eval(id, p, x[i])) / sy[i];
            c2 += r * r;
        }
        return c2;
    };

    auto build_normal = [&](std::span<const double> p, double& c2) {
        std::fill(jt_r.begin(), jt_r.end(), 0.0);
        std::fill(normal.begin(), normal.end(), 0.0);
        c2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double fy = model_eval_grad(id, p, x[i], grad);
            const double w = 1.0 / sy[i];
            const double r = (y[i] - fy) * w;
            c2 += r * r;
            for (std::size_t a = 0; a < np; ++a) {
                const double ja = grad[a] * w;
                jt_r[a] += ja * r;
                for (std::size_t b = 0; b <= a; ++b) {
                    normal[a * np + b] += ja * grad[b] * w;
                }
            }
        }
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = a + 1; b < np; ++b) {
                normal[a * np + b] = normal[b * np + a];
            }
        }
    };

    double lambda = kLambda0;
    double c2 = 0.0;
    build_normal(res.params, c2);
    bool stop = false;

    while (res.iterations < kMaxIterations && !stop) {
        ++res.iterations;

        double gnorm = 0.0;
        for (double g : jt_r) gnorm = std::max(gnorm, std::abs(g));
        if (gnorm < kGradTol) {
            res.converged = true;
            break;
        }

        if (!solve_damped(normal, jt_r, np, lambda, step)) {
            lambda *= kLambdaUp;
            if (lambda > kLambdaMax) {
                res.diagnostic = "singular normal matrix";
                break;
            }
            continue;
        }

        double rel_change = 0.0;
        for (std::size_t a = 0; a < np; ++a) {
            trial[a] = res.params[a] + step[a];
            rel_change = std::max(rel_change,
                                  std::abs(step[a]) /
                                      std::max(1e-30, std::abs(res.params[a]) + std::abs(step[a])));
        }
        const double c2_trial = chi2_of(trial);
        if (std::isfinite(c2_trial) && c2_trial <= c2) {
            res.params = trial;
            lambda = std::max(1e-14, lambda * kLambdaDown);
            build_normal(res.params, c2);
            c2 = c2_trial;
            if (rel_change < kParamTol) {
                res.converged = true;
                break;
            }
        } else {
            lambda *= kLambdaUp;
            if (lambda > kLambdaMax) {
                res.diagnostic = "damping exhausted";
                break;
            }
        }
    }
    if (res.iterations >= kMaxIterations && !res.converged) {
        res.diagnostic = "iteration limit reached";
    }

    build_normal(res.params, c2);
    res.chi2 = c2;
    res.residual_norm = std::sqrt(c2);

    // covariance = inv(J^T W J), scaled by reduced chi^2 when dof > 0
    std::vector<double> inv;
    if (invert_spd(normal, np, inv)) {
        const double dof = static_cast<double>(n) - static_cast<double>(np);
        const double scale = dof > 0 ? c2 / dof : 1.0;
        res.covariance.assign(np * np, 0.0);
        res.std_errs.assign(np, 0.0);
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = 0; b < np; ++b) {
                res.covariance[a * np + b] = inv[a * np + b] * scale;
            }
            res.std_errs[a] = std::sqrt(std::max(0.0, res.covariance[a * np + a]));
        }
    } else {
        res.covariance.assign(np * np, std::numeric_limits<double>::quiet_NaN());
        res.std_errs.assign(np, std::numeric_limits<double>::quiet_NaN());
        res.converged = false;
        if (res.diagnostic.empty()) res.diagnostic = "singular covariance";
    }
    return res;
}

std::vector<double> poisson_sigmas(std::span<const std::uint64_t> counts) {
    std::vector<double> s(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        s[i] = counts[i] > 0 ? std::sqrt(static_cast<double>(counts[i])) : 1.0;
    }
    return s;
}

}  // namespace pairlab
