#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "kahan.hpp"

namespace logkappa {

namespace detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (positive half; symmetric).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr std::array<double, 8> gk_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr std::array<double, 4> gauss_weights = {0.129484966168870, 0.279705391489277,
                                                        0.381830050505119, 0.417959183673469};

template <typename F>
inline void gk15(const F& f, double a, double b, double& kronrod, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fk = 0.0, fg = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        double v;
        if (i == 7) {
            v = f(c);
        } else {
            v = f(c - h * gk_nodes[i]) + f(c + h * gk_nodes[i]);
        }
        fk += gk_weights[i] * v;
        if (i % 2 == 1) fg += gauss_weights[i / 2] * v;
    }
    kronrod = fk * h;
    err = std::abs((fk - fg) * h);
}

} // namespace detail

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    std::size_t panels = 0;
};

// Adaptive integration of f over [a, b]: pre-segment at max_panel_width (the
// oscillation scale), then bisect any panel whose 15-vs-7 point discrepancy
// exceeds its proportional share of abs_tol. Deterministic: traversal order
// and the final left-to-right compensated sum are input-only.
template <typename F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol,
                           double max_panel_width = 0.0) {
    QuadratureResult out;
    if (!(b > a)) return out;
    double total = b - a;
    std::size_t presegments = 1;
    if (max_panel_width > 0 && max_panel_width < total) {
        presegments = static_cast<std::size_t>(std::ceil(total / max_panel_width));
        if (presegments > 200000) presegments = 200000;
    }
    struct Panel {
        double a, b;
        int depth;
    };
    std::vector<Panel> stack;
    for (std::size_t i = presegments; i-- > 0;) {
        double pa = a + total * (static_cast<double>(i) / presegments);
        double pb = a + total * (static_cast<double>(i + 1) / presegments);
        stack.push_back({pa, pb, 0});
    }
    KahanSum value;
    double err_total = 0.0;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double v, e;
        detail::gk15(f, p.a, p.b, v, e);
        double share = abs_tol * (p.b - p.a) / total;
        if (e <= share || p.depth >= 40 || out.panels > 400000) {
            value.add(v);
            err_total += e;
            ++out.panels;
        } else {
            double mid = 0.5 * (p.a + p.b);
            stack.push_back({mid, p.b, p.depth + 1});
            stack.push_back({p.a, mid, p.depth + 1});
        }
    }
    out.value = value.value();
    out.error_estimate = err_total;
    return out;
}

} // namespace logkappa
