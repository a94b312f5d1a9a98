#include "nussbaum_pid/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace nussbaum_pid {

std::vector<ModelSample> draw_model_samples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> speed(-10.0, 10.0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<ModelSample> out(count);
    for (auto &s : out) {
        s.q = {angle(rng), angle(rng)};
        s.dq = {speed(rng), speed(rng)};
        s.x = {unit(rng), unit(rng)};
    }
    return out;
}

namespace {

struct SampleProbe {
    double asymmetry;
    double eig_min;
    double eig_max;
    double skew;
    double gravity_norm;
    double gravity_component;
    double gradient_error;
};

SampleProbe probe(const RobotParams &p, const ModelSample &s, CoriolisFn coriolis) {
    const Mat2 m = mass_matrix(p, s.q);
    const auto eig = symmetric_eigenvalues(m);
    const Mat2 n = mass_matrix_rate(p, s.q, s.dq) - 2.0 * coriolis(p, s.q, s.dq);
    const Vec2 g = gravity_vector(p, s.q);

    auto potential = [&p, &s](const Vec2 &offset) {
        return mechanical_energy(p, {s.q + offset, Vec2{}}).potential;
    };
    const double h = gradient_step;
    const double d0 = (potential({h, 0.0}) - potential({-h, 0.0})) / (2.0 * h);
    const double d1 = (potential({0.0, h}) - potential({0.0, -h})) / (2.0 * h);

    return {std::abs(m(0, 1) - m(1, 0)),
            eig[0],
            eig[1],
            std::abs(quadratic_form(s.x, n, s.x)),
            norm(g),
            std::max(std::abs(g[0]), std::abs(g[1])),
            std::max(std::abs(g[0] - d0), std::abs(g[1] - d1))};
}

ModelPropertyStats empty_stats() {
    ModelPropertyStats st;
    st.min_eigenvalue = std::numeric_limits<double>::infinity();
    return st;
}

}  // namespace

ModelPropertyStats evaluate_model_properties(const RobotParams &p, std::span<const ModelSample> samples,
                                             CoriolisFn coriolis) {
    double asym = 0.0, eig_min = std::numeric_limits<double>::infinity(), eig_max = 0.0;
    double skew = 0.0, grav = 0.0, comp = 0.0, grad = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    #pragma omp parallel for default(none) shared(p, samples, coriolis, n) \
        reduction(max : asym, eig_max, skew, grav, comp, grad) reduction(min : eig_min)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const SampleProbe r = probe(p, samples[static_cast<std::size_t>(i)], coriolis);
        asym = std::max(asym, r.asymmetry);
        eig_min = std::min(eig_min, r.eig_min);
        eig_max = std::max(eig_max, r.eig_max);
        skew = std::max(skew, r.skew);
        grav = std::max(grav, r.gravity_norm);
        comp = std::max(comp, r.gravity_component);
        grad = std::max(grad, r.gradient_error);
    }
    return {asym, eig_min, eig_max, skew, grav, comp, grad};
}

ModelPropertyStats evaluate_model_properties_serial(const RobotParams &p, std::span<const ModelSample> samples,
                                                    CoriolisFn coriolis) {
    ModelPropertyStats st = empty_stats();
    for (const ModelSample &s : samples) {
        const SampleProbe r = probe(p, s, coriolis);
        st.max_asymmetry = std::max(st.max_asymmetry, r.asymmetry);
        st.min_eigenvalue = std::min(st.min_eigenvalue, r.eig_min);
        st.max_eigenvalue = std::max(st.max_eigenvalue, r.eig_max);
        st.max_skew_residual = std::max(st.max_skew_residual, r.skew);
        st.max_gravity_norm = std::max(st.max_gravity_norm, r.gravity_norm);
        st.max_gravity_component = std::max(st.max_gravity_component, r.gravity_component);
        st.max_gravity_gradient_error = std::max(st.max_gravity_gradient_error, r.gradient_error);
    }
    return st;
}

}  // namespace nussbaum_pid
