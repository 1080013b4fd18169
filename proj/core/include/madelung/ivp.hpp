#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "madelung/grid.hpp"

namespace madelung {

using State2 = std::array<double, 2>;

// Second-order ODE written as a first-order system of dimension 2,
// dy/dx = rhs(x, y). Scalar problems embed as {y, 0}.
using Rhs2 = std::function<State2(double, const State2&)>;

struct IvpProblem {
    Rhs2 rhs;
    double initial_point = 0.0;
    State2 initial_state{0.0, 0.0};
    int direction = +1;  // +1 or -1
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double blowup_threshold = 1e8;  // Theta; must exceed max(|initial value|, 1)
    double max_step = 0.0;          // 0 = auto: |end - initial_point| / 16
};

enum class Termination { ReachedEnd, BlowupDetected, StepUnderflow };

struct IvpResult {
    // Trajectory at accepted steps, nodes ascending regardless of direction.
    GridFunction value;
    GridFunction derivative;
    Termination terminated_by = Termination::ReachedEnd;
    int direction = +1;

    // Threshold-crossing coordinate, strictly beyond the last trajectory node
    // in the direction of integration. The authoritative singular point comes
    // from refine_blowup.
    std::optional<double> blowup_estimate;

    // Quartic dense-output segments covering [initial_point, last step end].
    struct DenseSegment {
        double x0 = 0.0;
        double h = 0.0;
        State2 r1{}, r2{}, r3{}, r4{}, r5{};
    };
    std::vector<DenseSegment> segments;

    // Step-doubling defect per accepted step: |two half steps - one full
    // step| / h, the verified local-error density of the trajectory.
    std::vector<State2> step_defects;

    // Right-hand side evaluated at every trajectory node (same order as the
    // node arrays); supplies exact second derivatives for resampling.
    std::vector<State2> node_rhs;

    State2 eval(double x) const;

    // Value component between nodes via C2 piecewise-quintic Hermite fitted
    // to (value, derivative, rhs) node data; falls back to the dense
    // segments beyond the last node. Smooth enough to finite-difference.
    double eval_value(double x) const;
    double eval_derivative(double x) const { return eval(x)[1]; }

    // Same interpolant evaluated in extended precision, for consumers that
    // amplify node-level rounding (Gibbs exponents divided by small T).
    long double eval_value_fine(double x) const;

    // Coordinate of the last dense segment's far end (>= last node).
    double dense_end() const;
};

// Adaptive Dormand-Prince 5(4) with PI step control and continuous output.
// Step sizes come from the embedded 4(5) error estimate; every accepted step
// is then re-taken as two half steps, the step-doubling difference verifies
// the local error, and the Richardson combination of the two results is what
// the trajectory propagates. Integrates until `end`, until max(|y_i|)
// crosses the blow-up threshold, or until the step size underflows.
//
// Throws NonFiniteRhs if the right-hand side goes non-finite while the state
// is still below the threshold; std::invalid_argument on precondition
// violations (tolerances, threshold, end on the wrong side).
IvpResult integrate_ivp(const IvpProblem& problem, double end);

// Tail model U(x) ~ -strength * ln(x* - x) + C near a finite-coordinate
// divergence; `strength` comes from the dominant balance of the ODE.
struct LogDivergence {
    double strength = 0.0;
};

// Least-squares fit of the log-divergence model to the trajectory tail.
// Returns the singular coordinate x*, strictly beyond the last node.
//
// Throws FitFailed when the tail has fewer than 8 usable nodes or does not
// diverge monotonically; std::invalid_argument if the result did not
// terminate in BlowupDetected.
double refine_blowup(const IvpResult& result, const LogDivergence& model);

}  // namespace madelung
