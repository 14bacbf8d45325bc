#pragma once

// Least-squares calibration of the server model and the validation metrics
// used against vendor-reported data.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "scarif/dataset.hpp"
#include "scarif/model.hpp"

namespace scarif {

struct FitSample {
    ServerConfig config;
    double reported_kg = 0.0;
};

struct FitOptions {
    double k2 = 0.16;  // held fixed
    double k3 = 0.04;  // held fixed
    std::optional<double> fixed_intercept;  // nullopt: d is a free parameter
    std::map<Vendor, double> vendor_offsets;  // subtracted from targets, copied to the result
    double max_condition = 1e10;
};

struct FitResult {
    ModelCoefficients coefficients;
    std::vector<double> residuals;  // reported - predicted, input order
    double rmse = 0.0;
    std::size_t n_samples = 0;
};

/// Fits k1, k4, k5 (and d unless fixed) by unweighted least squares.
/// Throws InsufficientSamples when there are fewer samples than free
/// parameters, DegenerateFit when the design is rank deficient or
/// ill-conditioned.
FitResult fit(std::span<const FitSample> samples, const FitOptions& options = {});

double sum_squared_residuals(std::span<const FitSample> samples, const ModelCoefficients& coeffs);

struct ValidationSummary {
    std::vector<double> per_record_error_over_sigma;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    double mean_relative_error = 0.0;
};

/// |prediction - reported| / sigma per row, with sigma = halfwidth / 0.4.
ValidationSummary validate_against_fixture(std::span<const double> predictions,
                                           std::span<const DellFixtureRow> fixture);

double mean_relative_error(std::span<const double> predictions, std::span<const double> reported);

}  // namespace scarif
