#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lingdist {

enum class ConstraintSense { less_equal, greater_equal, equal };

// One linear restriction a . x (<=, >=, =) bound over decision variables
// that are implicitly nonnegative.
struct LinearConstraint {
    std::vector<double> coefficients;
    ConstraintSense sense = ConstraintSense::less_equal;
    double bound = 0.0;
};

// Raised when a decision stage cannot produce a result (infeasible weight
// region, degenerate data), as opposed to malformed input.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearProgramResult {
    std::vector<double> solution;
    double objective = 0.0;
};

inline constexpr double kPivotTolerance = 1e-9;

// Dense two-phase simplex over x >= 0.  Bland's rule (smallest eligible
// index enters, smallest basic index leaves on ratio ties) makes every run
// deterministic and cycle-free.  Meant for the small, well-scaled programs
// that attribute-weight elicitation produces.
inline LinearProgramResult maximize_linear(
    std::span<const double> objective,
    std::span<const LinearConstraint> constraints) {
    const std::size_t n = objective.size();
    if (n == 0)
        throw std::invalid_argument("maximize_linear: no decision variables");
    for (const auto& c : constraints)
        if (c.coefficients.size() != n)
            throw std::invalid_argument(
                "maximize_linear: constraint has " +
                std::to_string(c.coefficients.size()) + " coefficients for " +
                std::to_string(n) + " variables");

    // Rows normalized to nonnegative right-hand sides.
    struct Row {
        std::vector<double> a;
        ConstraintSense sense;
        double b;
    };
    std::vector<Row> rows;
    rows.reserve(constraints.size());
    for (const auto& c : constraints) {
        Row r{c.coefficients, c.sense, c.bound};
        if (r.b < 0.0) {
            for (double& v : r.a) v = -v;
            r.b = -r.b;
            if (r.sense == ConstraintSense::less_equal)
                r.sense = ConstraintSense::greater_equal;
            else if (r.sense == ConstraintSense::greater_equal)
                r.sense = ConstraintSense::less_equal;
        }
        rows.push_back(std::move(r));
    }

    std::size_t slacks = 0;
    std::size_t surpluses = 0;
    std::size_t artificials = 0;
    for (const auto& r : rows) {
        if (r.sense == ConstraintSense::less_equal) ++slacks;
        if (r.sense == ConstraintSense::greater_equal) ++surpluses;
        if (r.sense != ConstraintSense::less_equal) ++artificials;
    }

    std::size_t m = rows.size();
    const std::size_t columns = n + slacks + surpluses + artificials;
    const std::size_t first_artificial = n + slacks + surpluses;
    std::vector<std::vector<double>> table(m, std::vector<double>(columns, 0.0));
    std::vector<double> rhs(m, 0.0);
    std::vector<std::size_t> basis(m, 0);

    std::size_t next_slack = n;
    std::size_t next_surplus = n + slacks;
    std::size_t next_artificial = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) table[i][j] = rows[i].a[j];
        rhs[i] = rows[i].b;
        switch (rows[i].sense) {
            case ConstraintSense::less_equal:
                table[i][next_slack] = 1.0;
                basis[i] = next_slack++;
                break;
            case ConstraintSense::greater_equal:
                table[i][next_surplus++] = -1.0;
                table[i][next_artificial] = 1.0;
                basis[i] = next_artificial++;
                break;
            case ConstraintSense::equal:
                table[i][next_artificial] = 1.0;
                basis[i] = next_artificial++;
                break;
        }
    }

    auto pivot = [&](std::size_t row, std::size_t col) {
        const double scale = table[row][col];
        for (double& v : table[row]) v /= scale;
        rhs[row] /= scale;
        table[row][col] = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const double factor = table[i][col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < columns; ++j)
                table[i][j] -= factor * table[row][j];
            table[i][col] = 0.0;
            rhs[i] -= factor * rhs[row];
        }
        basis[row] = col;
    };

    // Runs simplex iterations for one phase; columns at enterable and
    // beyond may not enter the basis.
    auto run = [&](const std::vector<double>& cost, std::size_t enterable) {
        for (;;) {
            std::size_t enter = columns;
            for (std::size_t j = 0; j < enterable && enter == columns; ++j) {
                double reduced = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    reduced -= cost[basis[i]] * table[i][j];
                if (reduced > kPivotTolerance) enter = j;
            }
            if (enter == columns) return;
            std::size_t leave = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (table[i][enter] <= kPivotTolerance) continue;
                const double ratio = rhs[i] / table[i][enter];
                if (ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave == m)
                throw SolveError("maximize_linear: objective is unbounded");
            pivot(leave, enter);
        }
    };

    if (artificials > 0) {
        std::vector<double> phase_one(columns, 0.0);
        for (std::size_t j = first_artificial; j < columns; ++j)
            phase_one[j] = -1.0;
        run(phase_one, columns);
        double residue = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (basis[i] >= first_artificial) residue += rhs[i];
        if (residue > kPivotTolerance)
            throw SolveError("maximize_linear: constraints are infeasible");
        // Any artificial still basic sits at zero: pivot it onto a real
        // column, or drop its row as redundant.
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < first_artificial) continue;
            std::size_t col = columns;
            for (std::size_t j = 0; j < first_artificial && col == columns; ++j)
                if (std::abs(table[i][j]) > kPivotTolerance) col = j;
            if (col != columns) {
                pivot(i, col);
            } else {
                table.erase(table.begin() + static_cast<std::ptrdiff_t>(i));
                rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(i));
                basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                --m;
                --i;
            }
        }
    }

    std::vector<double> phase_two(columns, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase_two[j] = objective[j];
    run(phase_two, first_artificial);

    LinearProgramResult result;
    result.solution.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) result.solution[basis[i]] = rhs[i];
    for (std::size_t j = 0; j < n; ++j)
        result.objective += objective[j] * result.solution[j];
    return result;
}

}  // namespace lingdist
