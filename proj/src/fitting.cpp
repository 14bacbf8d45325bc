#include "scarif/fitting.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace scarif {

namespace {

// Design column order. The intercept comes first so that, for degenerate
// inputs, the feature columns are the ones reported as dependent.
enum Column { kIntercept = 0, kCores, kMemory, kYear };
constexpr const char* kColumnNames[] = {"intercept", "cpu_cores", "memory_gb", "year_since_2000"};

// Relative residual below which a column counts as a combination of the
// columns before it.
constexpr double kDependenceTolerance = 1e-9;

double offset_for(const std::map<Vendor, double>& offsets, Vendor v) {
    auto it = offsets.find(v);
    return it == offsets.end() ? 0.0 : it->second;
}

double feature(const ServerConfig& c, Column col) {
    switch (col) {
        case kIntercept: return 1.0;
        case kCores: return static_cast<double>(c.cpu_core_count);
        case kMemory: return c.memory_gb;
        case kYear: return static_cast<double>(c.release_year - kBaseYear);
    }
    return 0.0;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

// Classical Gram-Schmidt with re-orthogonalisation, visiting columns in index
// order. Returns the names of columns that lie in the span of earlier ones.
std::vector<std::string> dependent_columns(const Eigen::MatrixXd& design, const std::vector<Column>& cols) {
    std::vector<std::string> dependent;
    std::vector<Eigen::VectorXd> basis;
    for (Eigen::Index j = 0; j < design.cols(); ++j) {
        const double norm = design.col(j).norm();
        if (norm == 0.0) {
            dependent.emplace_back(kColumnNames[cols[j]]);
            continue;
        }
        Eigen::VectorXd v = design.col(j) / norm;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) v -= q.dot(v) * q;
        }
        const double residual = v.norm();
        if (residual < kDependenceTolerance) {
            dependent.emplace_back(kColumnNames[cols[j]]);
        } else {
            basis.push_back(v / residual);
        }
    }
    return dependent;
}

}  // namespace

double sum_squared_residuals(std::span<const FitSample> samples, const ModelCoefficients& coeffs) {
    double ssr = 0.0;
    for (const auto& s : samples) {
        // Computed directly rather than via embodied_server so that
        // below-regime predictions still contribute.
        const ServerConfig& c = s.config;
        const double predicted = coeffs.k1 * c.cpu_core_count + coeffs.k2 * c.ssd_gb + coeffs.k3 * c.hdd_gb +
                                 coeffs.k4 * c.memory_gb + coeffs.k5 * (c.release_year - kBaseYear) +
                                 coeffs.intercept_for(c.vendor);
        const double r = s.reported_kg - predicted;
        ssr += r * r;
    }
    return ssr;
}

FitResult fit(std::span<const FitSample> samples, const FitOptions& options) {
    if (!std::isfinite(options.k2) || !std::isfinite(options.k3) || options.k2 < 0.0 || options.k3 < 0.0) {
        throw InvalidInput("fixed k2/k3 must be finite and non-negative");
    }

    std::vector<Column> cols;
    if (!options.fixed_intercept) cols.push_back(kIntercept);
    cols.insert(cols.end(), {kCores, kMemory, kYear});

    const auto n = static_cast<Eigen::Index>(samples.size());
    const auto p = static_cast<Eigen::Index>(cols.size());
    if (n < p) {
        throw InsufficientSamples("insufficient samples: " + std::to_string(n) + " given, at least " +
                                  std::to_string(p) + " required for " + std::to_string(p) + " free parameters");
    }

    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd target(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        s.config.validate();
        if (!std::isfinite(s.reported_kg)) throw InvalidInput("reported carbon must be finite");
        for (Eigen::Index j = 0; j < p; ++j) design(i, j) = feature(s.config, cols[j]);
        double y = s.reported_kg - options.k2 * s.config.ssd_gb - options.k3 * s.config.hdd_gb -
                   offset_for(options.vendor_offsets, s.config.vendor);
        if (options.fixed_intercept) y -= *options.fixed_intercept;
        target(i) = y;
    }

    if (auto dep = dependent_columns(design, cols); !dep.empty()) {
        throw DegenerateFit(dep, "rank-deficient design; dependent columns: " + join(dep));
    }

    // Column equilibration, then normal equations.
    Eigen::VectorXd scale = design.colwise().norm().cwiseInverse().transpose();
    Eigen::MatrixXd scaled = design * scale.asDiagonal();
    Eigen::MatrixXd normal = scaled.transpose() * scaled;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(normal);
    const auto& ev = eig.eigenvalues();  // ascending
    const double condition = ev(0) > 0.0 ? ev(p - 1) / ev(0) : std::numeric_limits<double>::infinity();
    if (!(condition <= options.max_condition)) {
        Eigen::Index worst = 0;
        eig.eigenvectors().col(0).cwiseAbs().maxCoeff(&worst);
        std::vector<std::string> dep{kColumnNames[cols[worst]]};
        throw DegenerateFit(dep, "ill-conditioned design (condition estimate " + std::to_string(condition) +
                                     "); nearly dependent column: " + dep.front());
    }

    Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() != Eigen::Success) {
        throw DegenerateFit({}, "normal equations could not be factorised");
    }
    Eigen::VectorXd beta = scale.asDiagonal() * ldlt.solve(scaled.transpose() * target);

    FitResult result;
    result.n_samples = samples.size();
    ModelCoefficients& c = result.coefficients;
    c.k2 = options.k2;
    c.k3 = options.k3;
    c.d = options.fixed_intercept.value_or(0.0);
    c.vendor_offsets = options.vendor_offsets;
    for (Eigen::Index j = 0; j < p; ++j) {
        switch (cols[j]) {
            case kIntercept: c.d = beta(j); break;
            case kCores: c.k1 = beta(j); break;
            case kMemory: c.k4 = beta(j); break;
            case kYear: c.k5 = beta(j); break;
        }
    }

    Eigen::VectorXd residuals = target - design * beta;
    result.residuals.assign(residuals.data(), residuals.data() + residuals.size());
    result.rmse = std::sqrt(residuals.squaredNorm() / static_cast<double>(n));
    return result;
}

ValidationSummary validate_against_fixture(std::span<const double> predictions,
                                           std::span<const DellFixtureRow> fixture) {
    if (predictions.size() != fixture.size()) {
        throw InvalidInput("prediction count " + std::to_string(predictions.size()) + " does not match fixture size " +
                           std::to_string(fixture.size()));
    }
    ValidationSummary summary;
    if (fixture.empty()) return summary;

    std::vector<double> reported;
    reported.reserve(fixture.size());
    summary.per_record_error_over_sigma.reserve(fixture.size());
    for (std::size_t i = 0; i < fixture.size(); ++i) {
        const double sigma = fixture[i].sigma_kg();
        if (!(sigma > 0.0)) throw InvalidInput("fixture row " + std::to_string(fixture[i].index) + " has no spread");
        summary.per_record_error_over_sigma.push_back(std::abs(predictions[i] - fixture[i].reported_kg) / sigma);
        reported.push_back(fixture[i].reported_kg);
    }
    const auto& ratios = summary.per_record_error_over_sigma;
    summary.max_ratio = *std::ranges::max_element(ratios);
    summary.mean_ratio = std::accumulate(ratios.begin(), ratios.end(), 0.0) / static_cast<double>(ratios.size());
    summary.mean_relative_error = mean_relative_error(predictions, reported);
    return summary;
}

double mean_relative_error(std::span<const double> predictions, std::span<const double> reported) {
    if (predictions.size() != reported.size()) throw InvalidInput("prediction and reported lengths differ");
    if (reported.empty()) throw InvalidInput("no values to compare");
    double sum = 0.0;
    for (std::size_t i = 0; i < reported.size(); ++i) {
        if (!(reported[i] > 0.0)) throw InvalidInput("reported values must be > 0");
        sum += std::abs(predictions[i] - reported[i]) / reported[i];
    }
    return sum / static_cast<double>(reported.size());
}

}  // namespace scarif
