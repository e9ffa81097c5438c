// types.hpp — small value types shared across the library: uniformly sampled
// functions with linear interpolation, piecewise linear/constant interpolants
// on arbitrary node sets, and the complex scalar alias.

#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lossyrom {

using cplx = std::complex<double>;

// Function stored as dense samples on a uniform grid over [0, t_max],
// evaluated by linear interpolation.  Immutable after construction.
struct SampledFunction {
    double t_max = 1.0;
    std::vector<double> values;  // n_samples values at T_k = k*t_max/(n-1)

    SampledFunction() = default;
    SampledFunction(double t_max_, std::vector<double> v)
        : t_max(t_max_), values(std::move(v)) {
        if (t_max <= 0.0) throw std::invalid_argument("SampledFunction: t_max must be positive");
        if (values.size() < 2) throw std::invalid_argument("SampledFunction: need at least 2 samples");
    }

    std::size_t size() const { return values.size(); }
    double step() const { return t_max / double(values.size() - 1); }
    double node(std::size_t k) const { return double(k) * step(); }

    double operator()(double t) const {
        const double h = step();
        const double x = std::clamp(t, 0.0, t_max) / h;
        const auto k = std::min(std::size_t(x), values.size() - 2);
        const double w = x - double(k);
        return (1.0 - w) * values[k] + w * values[k + 1];
    }
};

// Piecewise linear function through (nodes[k], values[k]) with strictly
// increasing nodes; constant extension outside the node range.
struct PiecewiseLinear {
    std::vector<double> nodes;
    std::vector<double> values;

    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> n, std::vector<double> v)
        : nodes(std::move(n)), values(std::move(v)) {
        if (nodes.size() != values.size() || nodes.size() < 2)
            throw std::invalid_argument("PiecewiseLinear: node/value size mismatch");
        for (std::size_t k = 1; k < nodes.size(); ++k)
            if (!(nodes[k] > nodes[k - 1]))
                throw std::invalid_argument("PiecewiseLinear: nodes must be strictly increasing");
    }

    double operator()(double t) const {
        if (t <= nodes.front()) return values.front();
        if (t >= nodes.back()) return values.back();
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
        const auto k = std::size_t(it - nodes.begin()) - 1;
        const double w = (t - nodes[k]) / (nodes[k + 1] - nodes[k]);
        return (1.0 - w) * values[k] + w * values[k + 1];
    }
};

// Piecewise constant function: value[k] on [breaks[k], breaks[k+1]), with
// values.size() + 1 == breaks.size(); the last interval is closed.
struct PiecewiseConstant {
    std::vector<double> breaks;
    std::vector<double> values;

    PiecewiseConstant() = default;
    PiecewiseConstant(std::vector<double> b, std::vector<double> v)
        : breaks(std::move(b)), values(std::move(v)) {
        if (breaks.size() != values.size() + 1 || values.empty())
            throw std::invalid_argument("PiecewiseConstant: size mismatch");
        for (std::size_t k = 1; k < breaks.size(); ++k)
            if (!(breaks[k] > breaks[k - 1]))
                throw std::invalid_argument("PiecewiseConstant: breaks must be strictly increasing");
    }

    double operator()(double t) const {
        if (t <= breaks.front()) return values.front();
        if (t >= breaks.back()) return values.back();
        const auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
        return values[std::size_t(it - breaks.begin()) - 1];
    }
};

}  // namespace lossyrom
