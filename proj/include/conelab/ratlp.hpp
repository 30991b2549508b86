#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

// Thrown when a cone enumeration is asked for more variables than the
// double description pass is rated for.
class DeskScaleError : public std::runtime_error {
public:
    explicit DeskScaleError(const std::string& what) : std::runtime_error(what) {}
};

enum class LpStatus { Feasible, Infeasible, Optimal, Unbounded };

// Constraint system over num_vars variables:
//   eq_rows[r]   . x  =  eq_rhs[r]
//   ge_rows[r]   . x  >= ge_rhs[r]
//   x_i >= 0 where nonneg[i], otherwise x_i free
// If objective is present the system is solved as maximize objective . x.
struct LinearSystem {
    int num_vars = 0;
    Mat eq_rows;
    Vec eq_rhs;
    Mat ge_rows;
    Vec ge_rhs;
    std::optional<Vec> objective;
    std::vector<bool> nonneg;  // empty means all nonneg

    void check_shape() const;
    bool var_nonneg(int i) const { return nonneg.empty() ? true : nonneg.at(i); }
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Vec witness;            // feasible point (Feasible/Optimal/Unbounded)
    Vec ray;                // improving ray when Unbounded
    Vec certificate;        // Farkas multipliers when Infeasible: eq rows then ge rows
    Rational objective_value;
};

LpOutcome solve(const LinearSystem& system);

// Exact substitution checks; used by tests and the CLI --verify path.
bool witness_satisfies(const LinearSystem& system, const Vec& x);
bool certificate_refutes(const LinearSystem& system, const Vec& mult);

struct ConeMembership {
    bool member = false;
    Vec coefficients;   // lambda >= 0 with sum lambda_g g == target
    Vec certificate;    // w with w.g <= 0 for all g and w.target > 0
};

// generators given as rows; target in the same dimension.
ConeMembership cone_member(const Mat& generators, const Vec& target);

// Extreme rays of {lambda >= 0, M lambda = 0}, M given as rows over
// num_vars variables. Output rays are primitive integer vectors.
// Soft limit: num_vars <= 64 (throws DeskScaleError beyond).
Mat extreme_rays(const Mat& M, int num_vars);

}  // namespace conelab
