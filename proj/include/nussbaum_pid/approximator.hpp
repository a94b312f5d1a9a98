#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nussbaum_pid {

/// Gaussian RBF network layout. Centers sit on the main diagonal of the input
/// hypercube: node j has every coordinate equal to the j-th point of an even
/// grid over [center_min, center_max].
struct RbfLayout {
    std::size_t nodes = 20;
    double center_min = -12.5;
    double center_max = 12.5;
    double width = 1.0;
    std::size_t input_dim = 8;
};

void validate(const RbfLayout &layout);

/// Shared coordinate of center `j`.
double center_coordinate(const RbfLayout &layout, std::size_t j);

/// All centers, each an input_dim-vector.
std::vector<std::vector<double>> centers(const RbfLayout &layout);

/// phi_j(x) = exp(-0.5 |x - c_j|^2 / width), written into `out` (size nodes).
void basis_vector(const RbfLayout &layout, std::span<const double> x, std::span<double> out);
std::vector<double> basis_vector(const RbfLayout &layout, std::span<const double> x);

/// Analytic gradient of phi_j with respect to x.
std::vector<double> basis_gradient(const RbfLayout &layout, std::span<const double> x, std::size_t j);

/// psi_hat^T phi. Throws std::invalid_argument on length mismatch.
double network_output(std::span<const double> psi_hat, std::span<const double> phi);

}  // namespace nussbaum_pid
