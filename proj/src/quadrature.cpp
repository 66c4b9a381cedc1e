#include "thetasieve/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace thetasieve {

namespace {

std::vector<double> cut_points(double lo, double hi, std::span<const double> breakpoints)
{
    std::vector<double> pts{lo, hi};
    for (double b : breakpoints) {
        if (b > lo && b < hi) {
            pts.push_back(b);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <unsigned Points, class F>
double gauss(F&& f, double a, double b)
{
    return boost::math::quadrature::gauss<double, Points>::integrate(f, a, b);
}

template <class F>
QuadratureResult composite(F&& f, double a, double b, double max_length)
{
    QuadratureResult r;
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / max_length)));
    const double len = (b - a) / static_cast<double>(pieces);
    for (std::size_t i = 0; i < pieces; ++i) {
        const double l = a + static_cast<double>(i) * len;
        const double h = i + 1 == pieces ? b : l + len;
        const double fine = gauss<20>(f, l, h);
        const double coarse = gauss<10>(f, l, h);
        r.value += fine;
        r.error += std::abs(fine - coarse);
    }
    return r;
}

} // namespace

GaussNodes GaussNodes::piecewise(double lo, double hi, std::span<const double> breakpoints, double max_length)
{
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    GaussNodes g;
    const auto pts = cut_points(lo, hi, breakpoints);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto pieces =
            std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((pts[k + 1] - pts[k]) / max_length)));
        const double len = (pts[k + 1] - pts[k]) / static_cast<double>(pieces);
        for (std::size_t i = 0; i < pieces; ++i) {
            const double l = pts[k] + static_cast<double>(i) * len;
            const double half = 0.5 * len;
            const double mid = l + half;
            // boost stores the nonnegative half of a symmetric rule.
            for (std::size_t j = 0; j < abscissa.size(); ++j) {
                if (abscissa[j] == 0.0) {
                    g.nodes.push_back(mid);
                    g.weights.push_back(half * weights[j]);
                    continue;
                }
                g.nodes.push_back(mid - half * abscissa[j]);
                g.weights.push_back(half * weights[j]);
                g.nodes.push_back(mid + half * abscissa[j]);
                g.weights.push_back(half * weights[j]);
            }
        }
    }
    return g;
}

QuadratureResult integrate_smooth(const std::function<double(double)>& f, double lo, double hi,
                                  std::span<const double> breakpoints, double max_length)
{
    QuadratureResult total;
    const auto pts = cut_points(lo, hi, breakpoints);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const auto r = composite(f, pts[k], pts[k + 1], max_length);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

QuadratureResult integrate_abs(const std::function<double(double)>& f, double lo, double hi,
                               std::span<const double> breakpoints, double scan_step)
{
    const auto pts = cut_points(lo, hi, breakpoints);
    std::vector<double> cuts;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k];
        const double b = pts[k + 1];
        cuts.push_back(a);
        const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / scan_step)));
        const double h = (b - a) / static_cast<double>(steps);
        // Sample just inside the piece so one-sided limits at the ends are used.
        double prev_t = a;
        double prev = f(a);
        for (std::size_t i = 1; i <= steps; ++i) {
            const double t = i == steps ? b : a + static_cast<double>(i) * h;
            const double v = f(t);
            if ((prev < 0.0 && v > 0.0) || (prev > 0.0 && v < 0.0)) {
                double l = prev_t;
                double r = t;
                const bool left_negative = prev < 0.0;
                for (int it = 0; it < 100 && r - l > 1e-15 * std::max(1.0, std::abs(l)); ++it) {
                    const double m = 0.5 * (l + r);
                    if ((f(m) < 0.0) == left_negative) {
                        l = m;
                    } else {
                        r = m;
                    }
                }
                cuts.push_back(0.5 * (l + r));
            }
            prev_t = t;
            prev = v;
        }
    }
    cuts.push_back(hi);

    QuadratureResult total;
    auto absf = [&](double t) { return std::abs(f(t)); };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] <= cuts[k]) {
            continue;
        }
        const auto r = composite(absf, cuts[k], cuts[k + 1], 0.05);
        total.value += r.value;
        total.error += r.error;
    }
    return total;
}

} // namespace thetasieve
