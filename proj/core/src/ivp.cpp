#include "madelung/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "madelung/errors.hpp"

namespace madelung {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-minus-4th order weights for the embedded error estimate.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;
// Continuous-output weights (quartic interpolant).
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

bool finite(const State2& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

double max_abs(const State2& y) { return std::max(std::abs(y[0]), std::abs(y[1])); }

State2 axpy(const State2& y, double h, const State2& k) {
    return {y[0] + h * k[0], y[1] + h * k[1]};
}

State2 dense_eval(const IvpResult::DenseSegment& s, double x) {
    const double th = (x - s.x0) / s.h;
    const double th1 = 1.0 - th;
    State2 u;
    for (int i = 0; i < 2; ++i)
        u[i] = s.r1[i] + th * (s.r2[i] + th1 * (s.r3[i] + th * (s.r4[i] + th1 * s.r5[i])));
    return u;
}

double min_step(double x, double span) {
    return 4.0 * std::numeric_limits<double>::epsilon() *
           std::max({1.0, std::abs(x), 0.01 * std::abs(span)});
}

struct StepOut {
    State2 y5{};      // fifth-order endpoint
    State2 k7{};      // FSAL stage, f(x+h, y5)
    State2 err{};     // embedded 4(5) error estimate
    IvpResult::DenseSegment seg;
    bool finite = false;
};

// One Dormand-Prince step of signed size hs from (x, y) with k1 = f(x, y).
StepOut dp_step(const Rhs2& f, double x, const State2& y, const State2& k1, double hs) {
    StepOut o;
    const State2 k2 = f(x + c2 * hs, axpy(y, hs * a21, k1));
    const State2 k3 = f(x + c3 * hs, {y[0] + hs * (a31 * k1[0] + a32 * k2[0]),
                                      y[1] + hs * (a31 * k1[1] + a32 * k2[1])});
    const State2 k4 = f(x + c4 * hs, {y[0] + hs * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                                      y[1] + hs * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1])});
    const State2 k5 =
        f(x + c5 * hs, {y[0] + hs * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                        y[1] + hs * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1])});
    const State2 k6 = f(
        x + hs,
        {y[0] + hs * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
         y[1] + hs * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1])});
    for (int i = 0; i < 2; ++i)
        o.y5[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    o.k7 = f(x + hs, o.y5);

    if (!finite(k2) || !finite(k3) || !finite(k4) || !finite(k5) || !finite(k6) ||
        !finite(o.k7) || !finite(o.y5))
        return o;
    o.finite = true;

    for (int i = 0; i < 2; ++i)
        o.err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                         e7 * o.k7[i]);

    o.seg.x0 = x;
    o.seg.h = hs;
    for (int i = 0; i < 2; ++i) {
        const double ydiff = o.y5[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        o.seg.r1[i] = y[i];
        o.seg.r2[i] = ydiff;
        o.seg.r3[i] = bspl;
        o.seg.r4[i] = ydiff - hs * o.k7[i] - bspl;
        o.seg.r5[i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                            d7 * o.k7[i]);
    }
    return o;
}

}  // namespace

State2 IvpResult::eval(double x) const {
    if (segments.empty()) throw std::invalid_argument("IvpResult::eval: no dense data");
    // Segments are stored in integration order; binary search on start points.
    const double dir = static_cast<double>(direction);
    std::size_t lo = 0, hi = segments.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (dir * (x - segments[mid].x0) >= 0.0)
            lo = mid;
        else
            hi = mid - 1;
    }
    return dense_eval(segments[lo], x);
}

namespace {

// Two-point quintic Hermite on (value, derivative, second derivative) data.
template <typename Real>
Real quintic_hermite(Real x0, Real x1, Real f0, Real d0, Real s0, Real f1, Real d1, Real s1,
                     Real x) {
    const Real h = x1 - x0;
    const Real t = (x - x0) / h;
    const Real t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const Real h0 = Real(1) - Real(10) * t3 + Real(15) * t4 - Real(6) * t5;
    const Real h1 = t - Real(6) * t3 + Real(8) * t4 - Real(3) * t5;
    const Real h2 = Real(0.5) * (t2 - Real(3) * t3 + Real(3) * t4 - t5);
    const Real h3 = Real(10) * t3 - Real(15) * t4 + Real(6) * t5;
    const Real h4 = Real(-4) * t3 + Real(7) * t4 - Real(3) * t5;
    const Real h5 = Real(0.5) * (t3 - Real(2) * t4 + t5);
    return f0 * h0 + h * d0 * h1 + h * h * s0 * h2 + f1 * h3 + h * d1 * h4 + h * h * s1 * h5;
}

}  // namespace

template <typename Real>
static Real hermite_value_at(const IvpResult& r, double x) {
    const auto& nodes = r.value.nodes;
    const std::size_t n = nodes.size();
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x >= nodes[mid])
            lo = mid;
        else
            hi = mid;
    }
    return quintic_hermite<Real>(nodes[lo], nodes[hi], r.value.values[lo],
                                 r.derivative.values[lo], r.node_rhs[lo][1], r.value.values[hi],
                                 r.derivative.values[hi], r.node_rhs[hi][1], x);
}

double IvpResult::eval_value(double x) const {
    const std::size_t n = value.nodes.size();
    if (n < 2 || node_rhs.size() != n || x < value.nodes.front() || x > value.nodes.back())
        return eval(x)[0];
    return hermite_value_at<double>(*this, x);
}

long double IvpResult::eval_value_fine(double x) const {
    const std::size_t n = value.nodes.size();
    if (n < 2 || node_rhs.size() != n || x < value.nodes.front() || x > value.nodes.back())
        return eval(x)[0];
    return hermite_value_at<long double>(*this, x);
}

double IvpResult::dense_end() const {
    if (segments.empty()) throw std::invalid_argument("IvpResult::dense_end: no dense data");
    return segments.back().x0 + segments.back().h;
}

IvpResult integrate_ivp(const IvpProblem& problem, double end) {
    if (!problem.rhs) throw std::invalid_argument("integrate_ivp: missing rhs");
    if (!(problem.abs_tol > 0.0) || !(problem.rel_tol > 0.0))
        throw std::invalid_argument("integrate_ivp: tolerances must be positive");
    if (problem.direction != 1 && problem.direction != -1)
        throw std::invalid_argument("integrate_ivp: direction must be +1 or -1");
    const double theta = problem.blowup_threshold;
    if (!(theta > std::max(std::abs(problem.initial_state[0]), 1.0)))
        throw std::invalid_argument("integrate_ivp: blow-up threshold too small");
    const double dir = static_cast<double>(problem.direction);
    const double span = end - problem.initial_point;
    if (!(dir * span > 0.0))
        throw std::invalid_argument("integrate_ivp: end is not ahead of the initial point");

    const double atol = problem.abs_tol, rtol = problem.rel_tol;
    const double hmax = (problem.max_step > 0.0) ? problem.max_step : std::abs(span) / 16.0;

    const auto& f = problem.rhs;
    double x = problem.initial_point;
    State2 y = problem.initial_state;
    State2 k1 = f(x, y);
    if (!finite(k1)) throw NonFiniteRhs("integrate_ivp: rhs non-finite at the initial point");

    std::vector<double> xs{x};
    std::vector<State2> ys{y};
    std::vector<State2> fs{k1};

    IvpResult out;
    out.direction = problem.direction;

    // Initial step size heuristic.
    double h;
    {
        const double sc0 = atol + rtol * std::abs(y[0]);
        const double sc1 = atol + rtol * std::abs(y[1]);
        const double dn0 = std::max(std::abs(y[0]) / sc0, std::abs(y[1]) / sc1);
        const double dn1 = std::max(std::abs(k1[0]) / sc0, std::abs(k1[1]) / sc1);
        double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 * std::abs(span) : 0.01 * dn0 / dn1;
        h0 = std::min(h0, hmax);
        const State2 ye = axpy(y, dir * h0, k1);
        const State2 ke = f(x + dir * h0, ye);
        double h1 = hmax;
        if (finite(ke)) {
            const double dn2 =
                std::max(std::abs(ke[0] - k1[0]) / sc0, std::abs(ke[1] - k1[1]) / sc1) / h0;
            const double dmax = std::max(dn1, dn2);
            h1 = (dmax <= 1e-15) ? std::max(1e-6 * std::abs(span), h0 * 1e-3)
                                 : std::pow(0.01 / dmax, 0.2);
        } else {
            h0 = 1e-6 * hmax;
        }
        h = std::min({100.0 * h0, h1, hmax});
    }

    constexpr double safety = 0.9, pi_beta = 0.04, expo = 0.2 - pi_beta * 0.75;
    constexpr double fac_min = 0.2, fac_max = 5.0;
    double fac_old = 1e-4;
    bool last_reject_nonfinite = false;

    constexpr long max_steps = 10'000'000;
    for (long step = 0;; ++step) {
        if (step >= max_steps)
            throw std::runtime_error("integrate_ivp: step budget exhausted");
        if (std::abs(h) < min_step(x, span)) {
            if (last_reject_nonfinite)
                throw NonFiniteRhs("integrate_ivp: rhs non-finite below the blow-up threshold");
            out.terminated_by = Termination::StepUnderflow;
            break;
        }

        h = std::min(h, hmax);
        double hs = dir * h;  // signed step
        bool clamped = false;
        if (dir * (x + hs - end) >= 0.0 || dir * (x + 1.01 * hs - end) > 0.0) {
            hs = end - x;
            clamped = true;
        }

        // Full step: supplies the embedded error estimate for step control.
        const StepOut full = dp_step(f, x, y, k1, hs);
        if (!full.finite) {
            last_reject_nonfinite = true;
            h = 0.5 * std::abs(hs);
            continue;
        }

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(full.y5[i]));
            err = std::max(err, std::abs(full.err[i]) / sc);
        }

        const double fac11 = std::pow(std::max(err, 1e-30), expo);
        if (err <= 1.0) {
            // Step doubling: re-take the step as two halves, verify the
            // defect, and propagate the Richardson combination.
            const StepOut half1 = dp_step(f, x, y, k1, 0.5 * hs);
            if (!half1.finite) {
                last_reject_nonfinite = true;
                h = 0.5 * std::abs(hs);
                continue;
            }
            const StepOut half2 = dp_step(f, x + 0.5 * hs, half1.y5, half1.k7, 0.5 * hs);
            if (!half2.finite) {
                last_reject_nonfinite = true;
                h = 0.5 * std::abs(hs);
                continue;
            }
            last_reject_nonfinite = false;

            State2 ynew, defect;
            for (int i = 0; i < 2; ++i) {
                const double diff = half2.y5[i] - full.y5[i];
                ynew[i] = half2.y5[i] + diff / 31.0;  // fifth-order Richardson
                defect[i] = std::abs(diff) / std::abs(hs);
            }
            out.segments.push_back(half1.seg);
            out.segments.push_back(half2.seg);
            out.step_defects.push_back(defect);

            if (max_abs(ynew) >= theta) {
                // Bisect the crossing of the max-norm through the threshold.
                auto at = [&](double xi) {
                    return dense_eval(dir * (xi - (x + 0.5 * hs)) < 0.0 ? half1.seg : half2.seg,
                                      xi);
                };
                double lo = 0.0, hi = 1.0;
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (max_abs(at(x + mid * hs)) >= theta)
                        hi = mid;
                    else
                        lo = mid;
                }
                out.blowup_estimate = x + hi * hs;
                out.terminated_by = Termination::BlowupDetected;
                break;
            }

            x = x + hs;
            y = ynew;
            k1 = f(x, y);
            if (!finite(k1))
                throw NonFiniteRhs("integrate_ivp: rhs non-finite at an accepted node");
            xs.push_back(x);
            ys.push_back(y);
            fs.push_back(k1);

            if (clamped || dir * (x - end) >= 0.0) {
                out.terminated_by = Termination::ReachedEnd;
                break;
            }

            double fac = fac11 / std::pow(fac_old, pi_beta);
            fac = std::clamp(fac / safety, 1.0 / fac_max, 1.0 / fac_min);
            h = std::abs(hs) / fac;
            fac_old = std::max(err, 1e-4);
        } else {
            h = std::abs(hs) / std::min(1.0 / fac_min, fac11 / safety);
        }
    }

    // GridFunction requires >= 3 nodes; densify degenerate trajectories.
    if (xs.size() < 3 && !out.segments.empty()) {
        auto lookup = [&](double xi) {
            for (const auto& seg : out.segments) {
                if (dir * (xi - seg.x0) >= 0.0 && dir * (xi - (seg.x0 + seg.h)) <= 0.0)
                    return dense_eval(seg, xi);
            }
            return dense_eval(out.segments.back(), xi);
        };
        const double far = out.segments.back().x0 + out.segments.back().h;
        std::vector<double> fill_x;
        std::vector<State2> fill_y, fill_f;
        for (double t : {0.25, 0.5, 0.75}) {
            const double xi = xs.front() + t * (far - xs.front());
            fill_x.push_back(xi);
            fill_y.push_back(lookup(xi));
            const State2 fi = f(xi, fill_y.back());
            fill_f.push_back(finite(fi) ? fi : fs.back());
        }
        xs.insert(xs.begin() + 1, fill_x.begin(), fill_x.end());
        ys.insert(ys.begin() + 1, fill_y.begin(), fill_y.end());
        fs.insert(fs.begin() + 1, fill_f.begin(), fill_f.end());
    }

    const std::size_t n = xs.size();
    out.value.nodes.resize(n);
    out.value.values.resize(n);
    out.derivative.nodes.resize(n);
    out.derivative.values.resize(n);
    out.node_rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (problem.direction > 0) ? i : n - 1 - i;
        out.value.nodes[i] = xs[j];
        out.value.values[i] = ys[j][0];
        out.derivative.nodes[i] = xs[j];
        out.derivative.values[i] = ys[j][1];
        out.node_rhs[i] = fs[j];
    }
    out.value.validate();
    out.derivative.validate();
    return out;
}

double refine_blowup(const IvpResult& result, const LogDivergence& model) {
    if (result.terminated_by != Termination::BlowupDetected)
        throw std::invalid_argument("refine_blowup: result did not detect a blow-up");
    const double s = model.strength;
    if (!(s > 0.0)) throw std::invalid_argument("refine_blowup: strength must be positive");

    // Orient so the divergence is approached from the left at the last node.
    const bool forward = result.direction > 0;
    const std::size_t n = result.value.size();
    auto node = [&](std::size_t i) {
        const double x = forward ? result.value.nodes[i] : result.value.nodes[n - 1 - i];
        return forward ? x : -x;
    };
    auto val = [&](std::size_t i) {
        return forward ? result.value.values[i] : result.value.values[n - 1 - i];
    };
    auto deriv = [&](std::size_t i) {
        const double v =
            forward ? result.derivative.values[i] : result.derivative.values[n - 1 - i];
        return forward ? v : -v;
    };

    const double x_last = node(n - 1);
    const double v_last = deriv(n - 1);
    if (!(v_last > 0.0)) throw FitFailed("refine_blowup: tail is not diverging");
    const double d_hat = s / v_last;

    // Walk back while the estimated gap stays within the model window.
    std::size_t first = n - 1;
    while (first > 0) {
        const double v = deriv(first - 1);
        if (!(v > 0.0) || s / v > 1e6 * d_hat) break;
        --first;
        if (n - first >= 4096) break;
    }
    const std::size_t count = n - first;
    if (count < 8) throw FitFailed("refine_blowup: fewer than 8 usable tail nodes");
    for (std::size_t i = first + 1; i < n; ++i) {
        if (!(val(i) > val(i - 1)))
            throw FitFailed("refine_blowup: tail values are not strictly increasing");
    }

    // Least-squares misfit of U = -s ln(x* - x) + C, C eliminated analytically.
    auto misfit = [&](double log_d) {
        const double d = std::exp(log_d);
        double mean = 0.0;
        for (std::size_t i = first; i < n; ++i)
            mean += val(i) + s * std::log(d + (x_last - node(i)));
        mean /= static_cast<double>(count);
        double sse = 0.0;
        for (std::size_t i = first; i < n; ++i) {
            const double g = val(i) + s * std::log(d + (x_last - node(i))) - mean;
            sse += g * g;
        }
        return sse;
    };

    // Coarse log-space scan, then golden-section refinement.
    const double lo0 = std::log(d_hat) - std::log(1e3);
    const double hi0 = std::log(d_hat) + std::log(1e3);
    const int scan = 512;
    double best = lo0, best_sse = misfit(lo0);
    for (int i = 1; i <= scan; ++i) {
        const double t = lo0 + (hi0 - lo0) * i / scan;
        const double sse = misfit(t);
        if (sse < best_sse) {
            best_sse = sse;
            best = t;
        }
    }
    const double cell = (hi0 - lo0) / scan;
    double a = best - cell, b = best + cell;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = misfit(x1), f2 = misfit(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = misfit(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = misfit(x2);
        }
    }
    const double d_opt = std::exp(0.5 * (a + b));
    const double x_star = x_last + d_opt;
    return forward ? x_star : -x_star;
}

}  // namespace madelung
