#include "nussbaum_pid/approximator.hpp"

#include <cmath>
#include <stdexcept>

namespace nussbaum_pid {

void validate(const RbfLayout &layout) {
    if (layout.nodes < 1) {
        throw std::invalid_argument("network: nodes must be >= 1");
    }
    if (!(layout.center_min < layout.center_max)) {
        throw std::invalid_argument("network: center_min must be below center_max");
    }
    if (!(layout.width > 0.0) || !std::isfinite(layout.width)) {
        throw std::invalid_argument("network: width must be positive");
    }
    if (layout.input_dim < 1) {
        throw std::invalid_argument("network: input_dim must be >= 1");
    }
}

double center_coordinate(const RbfLayout &layout, std::size_t j) {
    if (layout.nodes == 1) {
        return 0.5 * (layout.center_min + layout.center_max);
    }
    const double span = layout.center_max - layout.center_min;
    return layout.center_min + span * static_cast<double>(j) / static_cast<double>(layout.nodes - 1);
}

std::vector<std::vector<double>> centers(const RbfLayout &layout) {
    std::vector<std::vector<double>> out;
    out.reserve(layout.nodes);
    for (std::size_t j = 0; j < layout.nodes; ++j) {
        out.emplace_back(layout.input_dim, center_coordinate(layout, j));
    }
    return out;
}

void basis_vector(const RbfLayout &layout, std::span<const double> x, std::span<double> out) {
    if (x.size() != layout.input_dim || out.size() != layout.nodes) {
        throw std::invalid_argument("basis_vector: dimension mismatch");
    }
    for (std::size_t j = 0; j < layout.nodes; ++j) {
        const double c = center_coordinate(layout, j);
        double dist_sq = 0.0;
        for (double xi : x) {
            dist_sq += (xi - c) * (xi - c);
        }
        out[j] = std::exp(-0.5 * dist_sq / layout.width);
    }
}

std::vector<double> basis_vector(const RbfLayout &layout, std::span<const double> x) {
    std::vector<double> phi(layout.nodes);
    basis_vector(layout, x, phi);
    return phi;
}

std::vector<double> basis_gradient(const RbfLayout &layout, std::span<const double> x, std::size_t j) {
    const auto phi = basis_vector(layout, x);
    const double c = center_coordinate(layout, j);
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        grad[i] = -(x[i] - c) / layout.width * phi[j];
    }
    return grad;
}

double network_output(std::span<const double> psi_hat, std::span<const double> phi) {
    if (psi_hat.size() != phi.size()) {
        throw std::invalid_argument("network_output: length mismatch");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        acc += psi_hat[j] * phi[j];
    }
    return acc;
}

}  // namespace nussbaum_pid
