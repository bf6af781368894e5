#pragma once

#include <Eigen/Dense>

#include "magsense/dataset.hpp"

namespace magsense::models {

struct GRBFConfig {
    int center_count = 200;
    double lambda = 1e-8;
    int input_axes = 3;  // 2 = (Bx, Bz), 3 = (Bx, By, Bz)
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian radial basis function regression from sensor readings to forces.
/// Centers come from farthest-point sampling over the normalized reading
/// space; the kernel width is the median pairwise center distance; weights
/// solve the ridge-regularized normal equations.
struct GRBFModel {
    Eigen::MatrixXd centers;  // K x D, normalized input space
    double kernel_width = 1.0;
    Eigen::MatrixXd weights;  // (K+1) x 2, bias row last
    Eigen::VectorXd input_mean, input_std;    // D
    Eigen::Vector2d output_mean, output_std;  // (Fx, Fz)
    int input_axes = 3;
    std::string trained_on_id;
    Split trained_split = Split::train;

    // Predicted (Fx, Fz) in newtons for a reading in gauss.
    Eigen::Vector2d predict(const Vec3& reading_gauss) const;
};

GRBFModel grbf_fit(const Dataset& dataset, const GRBFConfig& config, Split split = Split::train);

void grbf_save(const GRBFModel& model, const std::string& path, const std::string& manifest_hash);
GRBFModel grbf_load(const std::string& path);

}  // namespace magsense::models
