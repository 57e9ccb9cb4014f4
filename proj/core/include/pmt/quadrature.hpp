#pragma once

#include <array>
#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

#include "pmt/error.hpp"

namespace pmt {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

/// Tolerance not reached within the subdivision cap.
class QuadratureError : public NumericalError {
  public:
    QuadratureError(double best_estimate, double achieved_error)
        : NumericalError("adaptive quadrature did not converge: estimate " +
                         std::to_string(best_estimate) + ", achieved error " +
                         std::to_string(achieved_error)),
          best_estimate_(best_estimate),
          achieved_error_(achieved_error) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

  private:
    double best_estimate_;
    double achieved_error_;
};

namespace detail {

// 15-point Gauss-Kronrod abscissae / weights; the 7-point Gauss rule uses
// the odd-indexed abscissae.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The range is first cut into `initial_panels` equal panels so narrow peaks
/// cannot hide between the nodes of a single rule; the panel with the largest
/// error estimate is then bisected until the summed estimate is below
/// `abs_tol`. Nodes never touch the endpoints.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol,
                           std::size_t initial_panels = 64, std::size_t max_panels = 20000) {
    std::vector<detail::Panel> heap;
    heap.reserve(initial_panels * 2);
    QuadratureResult result;
    const double width = (b - a) / static_cast<double>(initial_panels);
    for (std::size_t i = 0; i < initial_panels; ++i) {
        const double lo = a + width * static_cast<double>(i);
        const double hi = i + 1 == initial_panels ? b : lo + width;
        heap.push_back(detail::gauss_kronrod(f, lo, hi));
    }
    std::make_heap(heap.begin(), heap.end());
    result.evaluations = 15 * initial_panels;

    auto resum = [&](double& value, double& error) {
        value = 0.0;
        error = 0.0;
        for (const auto& p : heap) {
            value += p.value;
            error += p.error;
        }
    };
    double value = 0.0, error = 0.0;
    resum(value, error);

    while (error > abs_tol) {
        if (heap.size() >= max_panels) throw QuadratureError(value, error);
        std::pop_heap(heap.begin(), heap.end());
        const auto worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& half : {detail::gauss_kronrod(f, worst.a, mid),
                                 detail::gauss_kronrod(f, mid, worst.b)}) {
            heap.push_back(half);
            std::push_heap(heap.begin(), heap.end());
        }
        result.evaluations += 30;
        resum(value, error);
    }
    result.value = value;
    result.abs_error = error;
    return result;
}

}  // namespace pmt
