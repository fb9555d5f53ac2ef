#pragma once

// Brute-force linear-programming oracle for the test suite: enumerate every
// basic feasible point of a small polytope (n <= 6) by activating each
// n-subset of constraints, then pick the best.  Independent of the simplex
// implementation under test.

#include <lingdist/simplex.hpp>

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace lp_oracle {

inline constexpr double kFeasibilityTolerance = 1e-7;

// Gaussian elimination with partial pivoting; empty result on singularity.
inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-10) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            const double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k)
                a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline bool satisfies(const std::vector<double>& x,
                      const lingdist::LinearConstraint& c) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
        lhs += c.coefficients[j] * x[j];
    switch (c.sense) {
        case lingdist::ConstraintSense::less_equal:
            return lhs <= c.bound + kFeasibilityTolerance;
        case lingdist::ConstraintSense::greater_equal:
            return lhs >= c.bound - kFeasibilityTolerance;
        case lingdist::ConstraintSense::equal:
            return std::abs(lhs - c.bound) <= kFeasibilityTolerance;
    }
    return false;
}

// All vertices of {x >= 0, constraints}: every choice of n active rows
// (equalities always active, nonnegativity rows included) that solves to a
// point satisfying everything.
inline std::vector<std::vector<double>> enumerate_vertices(
    std::size_t n, const std::vector<lingdist::LinearConstraint>& constraints) {
    std::vector<lingdist::LinearConstraint> rows = constraints;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> axis(n, 0.0);
        axis[j] = 1.0;
        rows.push_back({axis, lingdist::ConstraintSense::greater_equal, 0.0});
    }

    std::vector<std::size_t> always;
    std::vector<std::size_t> optional_rows;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].sense == lingdist::ConstraintSense::equal)
            always.push_back(r);
        else
            optional_rows.push_back(r);
    }
    if (always.size() > n) return {};

    std::vector<std::vector<double>> vertices;
    std::vector<std::size_t> chosen;
    const std::size_t need = n - always.size();

    auto emit = [&]() {
        std::vector<std::vector<double>> a;
        std::vector<double> b;
        for (std::size_t r : always) {
            a.push_back(rows[r].coefficients);
            b.push_back(rows[r].bound);
        }
        for (std::size_t r : chosen) {
            a.push_back(rows[r].coefficients);
            b.push_back(rows[r].bound);
        }
        const auto x = solve_square(std::move(a), std::move(b));
        if (!x) return;
        for (const auto& row : rows)
            if (!satisfies(*x, row)) return;
        for (const auto& seen : vertices) {
            double gap = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                gap = std::max(gap, std::abs(seen[j] - (*x)[j]));
            if (gap < 1e-7) return;
        }
        vertices.push_back(*x);
    };

    auto recurse = [&](auto&& self, std::size_t from) -> void {
        if (chosen.size() == need) {
            emit();
            return;
        }
        for (std::size_t i = from; i < optional_rows.size(); ++i) {
            chosen.push_back(optional_rows[i]);
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
    return vertices;
}

struct Best {
    std::vector<double> point;
    double objective = 0.0;
};

inline std::optional<Best> best_vertex(
    const std::vector<double>& objective,
    const std::vector<lingdist::LinearConstraint>& constraints) {
    const auto vertices = enumerate_vertices(objective.size(), constraints);
    std::optional<Best> best;
    for (const auto& v : vertices) {
        double value = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j)
            value += objective[j] * v[j];
        if (!best || value > best->objective) best = Best{v, value};
    }
    return best;
}

}  // namespace lp_oracle
