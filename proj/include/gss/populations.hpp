#pragma once

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gss/graph.hpp"

namespace gss {

enum class StylizedKind { Centre, Corner, Polar, Vortex };

inline StylizedKind stylized_kind_from(const std::string& s) {
    if (s == "centre" || s == "center") return StylizedKind::Centre;
    if (s == "corner") return StylizedKind::Corner;
    if (s == "polar") return StylizedKind::Polar;
    if (s == "vortex") return StylizedKind::Vortex;
    throw std::invalid_argument("unknown stylized population kind: " + s);
}

inline const char* to_string(StylizedKind k) {
    switch (k) {
        case StylizedKind::Centre: return "centre";
        case StylizedKind::Corner: return "corner";
        case StylizedKind::Polar: return "polar";
        default: return "vortex";
    }
}

/// The four 3x3 stylized populations, row-major.
inline std::vector<double> stylized_3x3(StylizedKind kind) {
    switch (kind) {
        case StylizedKind::Centre: return {1, 2, 1, 2, 3, 2, 1, 2, 1};
        case StylizedKind::Corner: return {3, 2.5, 2, 2.5, 2, 1.5, 2, 1.5, 1};
        case StylizedKind::Polar: return {3, 2, 1, 2, 1, 2, 1, 2, 3};
        case StylizedKind::Vortex: return {3, 2, 3, 2, 1, 2, 3, 2, 3};
    }
    throw std::invalid_argument("stylized_3x3: unknown kind");
}

/// L x L generalizations: affine in a named grid distance, linearly rescaled
/// to [lo, hi]. At L = 3 with range [1, 3] these reproduce the 3x3 matrices
/// exactly. centre decreases away from the grid centre, vortex increases;
/// corner decreases along row+col; polar is the fold |row+col-(L+1)|.
inline std::vector<double> stylized_grid(StylizedKind kind, int side, double lo, double hi) {
    if (side < 3) throw std::invalid_argument("stylized_grid: side must be >= 3");
    if (!(lo < hi)) throw std::invalid_argument("stylized_grid: need lo < hi");
    const double c0 = (side + 1) / 2.0;
    std::vector<double> raw(static_cast<std::size_t>(side) * side);
    for (int r = 1; r <= side; ++r)
        for (int c = 1; c <= side; ++c) {
            double v = 0.0;
            switch (kind) {
                case StylizedKind::Centre: v = -(std::abs(r - c0) + std::abs(c - c0)); break;
                case StylizedKind::Corner: v = -static_cast<double>(r + c); break;
                case StylizedKind::Polar: v = std::abs(r + c - (side + 1)); break;
                case StylizedKind::Vortex: v = std::abs(r - c0) + std::abs(c - c0); break;
            }
            raw[static_cast<std::size_t>(r - 1) * side + (c - 1)] = v;
        }
    double mn = raw[0], mx = raw[0];
    for (double v : raw) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    const double scale = (hi - lo) / (mx - mn);
    for (double& v : raw) v = lo + (v - mn) * scale;
    return raw;
}

/// Spatial population: unit coordinates, y-values, inclusion probabilities
/// and the rook contiguity relation.
struct SpatialPopulation {
    std::string id;
    std::vector<std::array<double, 2>> coords;
    std::vector<double> y;
    std::vector<double> pi;
    Graph contiguity;

    int n_units() const { return static_cast<int>(y.size()); }
    double total() const {
        double t = 0.0;
        for (double v : y) t += v;
        return t;
    }
};

/// Grid population with integer coordinates (x = col, y = row) and rook
/// contiguity. pi is left empty; attach it separately.
inline SpatialPopulation grid_population(int side, std::vector<double> y, std::string id = {}) {
    if (static_cast<int>(y.size()) != side * side)
        throw std::invalid_argument("grid_population: y length must be side*side");
    SpatialPopulation pop;
    pop.id = std::move(id);
    pop.y = std::move(y);
    pop.coords.reserve(static_cast<std::size_t>(side) * side);
    for (int r = 1; r <= side; ++r)
        for (int c = 1; c <= side; ++c)
            pop.coords.push_back({static_cast<double>(c - 1), static_cast<double>(r - 1)});
    pop.contiguity = rook_contiguity(GridLayout(side, side));
    return pop;
}

/// 400 units evenly spread over the unit square (cell centres of a 20x20
/// lattice) with y = 3(x1+x2) + sin(6(x1+x2)).
inline SpatialPopulation sintrend() {
    const int side = 20;
    SpatialPopulation pop;
    pop.id = "sintrend";
    pop.coords.reserve(static_cast<std::size_t>(side) * side);
    pop.y.reserve(static_cast<std::size_t>(side) * side);
    for (int r = 1; r <= side; ++r)
        for (int c = 1; c <= side; ++c) {
            const double x1 = (c - 0.5) / side;
            const double x2 = (r - 0.5) / side;
            pop.coords.push_back({x1, x2});
            const double s = x1 + x2;
            pop.y.push_back(3.0 * s + std::sin(6.0 * s));
        }
    pop.contiguity = rook_contiguity(GridLayout(side, side));
    return pop;
}

/// One centre unit at ratio times the common probability, everything summing
/// to n: (N-1) p + ratio p = n.
inline std::vector<double> inclusion_probs(int n_units, int n, double center_ratio, int center_unit) {
    if (n_units < 1 || n < 1 || n > n_units) throw std::invalid_argument("inclusion_probs: bad N or n");
    if (!(center_ratio > 0.0)) throw std::invalid_argument("inclusion_probs: ratio must be positive");
    if (center_unit < 1 || center_unit > n_units)
        throw std::invalid_argument("inclusion_probs: center unit out of range");
    const double base = n / (n_units - 1.0 + center_ratio);
    const double center = center_ratio * base;
    if (base > 1.0 || center > 1.0 || !(base > 0.0))
        throw std::invalid_argument("inclusion_probs: probabilities leave (0,1]");
    std::vector<double> pi(static_cast<std::size_t>(n_units), base);
    pi[static_cast<std::size_t>(center_unit - 1)] = center;
    return pi;
}

/// Export: unit,x1,x2,y,pi (pi column empty when unset).
inline void write_population_csv(std::ostream& os, const SpatialPopulation& pop) {
    os << "unit,x1,x2,y,pi\n";
    for (int i = 0; i < pop.n_units(); ++i) {
        os << (i + 1) << "," << pop.coords[static_cast<std::size_t>(i)][0] << ","
           << pop.coords[static_cast<std::size_t>(i)][1] << "," << pop.y[static_cast<std::size_t>(i)];
        os << ",";
        if (!pop.pi.empty()) os << pop.pi[static_cast<std::size_t>(i)];
        os << "\n";
    }
}

}  // namespace gss
