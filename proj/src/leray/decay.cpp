#include "lpflow/leray/decay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

std::vector<double> LambdaLadder::values() const {
    if (count < 1 || !(start > 0.0) || !(factor > 1.0)) {
        throw std::invalid_argument("lambda ladder needs start > 0, factor > 1, count >= 1");
    }
    std::vector<double> v;
    double x = start;
    for (int i = 0; i < count; ++i, x *= factor) v.push_back(x);
    return v;
}

LambdaLadder LambdaLadder::parse(const std::string& text) {
    LambdaLadder l;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> l.start >> c1 >> l.factor >> c2 >> l.count) || c1 != ':' || c2 != ':' || !in.eof()) {
        throw std::invalid_argument("lambda ladder must look like start:factor:count, got '" + text + "'");
    }
    l.values();
    return l;
}

std::string LambdaLadder::str() const {
    return format_double(start) + ":" + format_double(factor) + ":" + std::to_string(count);
}

void check_ladder(const std::vector<double>& lambdas, const GridSpec& grid, bool whole_space) {
    if (lambdas.size() < 4) throw std::invalid_argument("lambda ladder needs at least 4 points for a fit");
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > lambdas[i - 1])) throw std::invalid_argument("lambda ladder must increase strictly");
    }
    if (whole_space && lambdas.back() > grid.half_width() / 8.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("largest lambda " + format_double(lambdas.back()) +
                                    " exceeds L/8 = " + format_double(grid.half_width() / 8.0));
    }
}

LineFit fit_loglog(const std::vector<double>& lambdas, const std::vector<double>& values, double floor) {
    const std::size_t n = lambdas.size();
    if (n < 2 || values.size() != n) throw std::invalid_argument("fit needs matching samples, at least 2");
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(lambdas[i]);
        y[i] = std::log(std::max(std::abs(values[i]), floor));
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double rss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - (fit.intercept + fit.slope * x[i]);
            rss += e * e;
        }
        fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

DecayReport make_decay_report(std::string label, std::vector<double> lambdas, std::vector<double> values,
                              double window_radius, bool whole_box, bool truncated) {
    DecayReport rep;
    rep.label = std::move(label);
    rep.lambdas = std::move(lambdas);
    rep.values = std::move(values);
    rep.window_radius = window_radius;
    rep.whole_box = whole_box;
    rep.truncated = truncated;
    std::size_t used = rep.lambdas.size();
    if (truncated && used >= 6) used -= 2;
    const std::vector<double> lx(rep.lambdas.begin(), rep.lambdas.begin() + static_cast<std::ptrdiff_t>(used));
    const std::vector<double> vy(rep.values.begin(), rep.values.begin() + static_cast<std::ptrdiff_t>(used));
    const LineFit fit = fit_loglog(lx, vy);
    rep.slope = fit.slope;
    rep.intercept = fit.intercept;
    rep.slope_band = 2.0 * fit.slope_stderr;

    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
        if (rep.lambdas[i] <= 1.0) continue;
        const double q = rep.lambdas[i] * std::abs(rep.values[i]) / std::log(rep.lambdas[i]);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    rep.log_ratio = (hi > 0.0 && lo > 0.0) ? hi / lo : kInf;
    rep.log_corrected_bounded = rep.log_ratio < 3.0;
    return rep;
}

CsvTable DecayReport::to_csv() const {
    CsvTable t({"lambda", "value"});
    t.comment("label=" + label);
    t.comment("slope=" + format_double(slope) + " band=" + format_double(slope_band) +
              " intercept=" + format_double(intercept));
    t.comment("log_ratio=" + format_double(log_ratio) +
              " log_corrected_bounded=" + (log_corrected_bounded ? "1" : "0") +
              " truncated=" + (truncated ? "1" : "0"));
    t.comment("window_radius=" + format_double(window_radius) + " whole_box=" + (whole_box ? "1" : "0"));
    for (std::size_t i = 0; i < lambdas.size(); ++i) t.add_row({lambdas[i], values[i]});
    return t;
}

DecayReport gamma_lowfreq_decay(const LerayKernel& kernel, const std::vector<double>& lambdas) {
    const GridSpec& grid = kernel.samples.grid();
    check_ladder(lambdas, grid, true);
    const AlignedVector<Complex> symbol = kernel_symbol(kernel);
    std::vector<double> values;
    AlignedVector<Complex> work(symbol.size());
    for (double lambda : lambdas) {
        kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
            work[s] = chi(lambda * std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])) * symbol[s];
        });
        const auto g = fft::samples_from_transform(grid, work);
        values.push_back(kernels::deterministic_sum(g.size(), [&](std::size_t i) { return std::abs(g[i]); }) *
                         grid.cell_volume());
    }
    const auto& ix = kernel.indices;
    return make_decay_report("gamma" + std::to_string(ix[0]) + std::to_string(ix[1]) + std::to_string(ix[2]),
                             lambdas, std::move(values), grid.window_radius(), true);
}

}  // namespace lpflow
