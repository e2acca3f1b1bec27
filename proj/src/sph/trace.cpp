#include "lpflow/sph/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"
#include "lpflow/core/norms.hpp"
#include "lpflow/core/profile.hpp"

namespace lpflow {

const char* mode_name(TraceMode mode) { return mode == TraceMode::weak ? "weak" : "strong"; }

TraceMode parse_mode(const std::string& name) {
    if (name == "weak") return TraceMode::weak;
    if (name == "strong") return TraceMode::strong;
    throw std::invalid_argument("mode must be weak or strong, got '" + name + "'");
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::non_member: return "non_member";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

DualFamily DualFamily::standard(const GridSpec& grid, double lambda_min) {
    DualFamily fam;
    const int d = grid.dim();
    fam.width = std::max(lambda_min / 4.0, 2.0 * grid.spacing());
    const double w = fam.width;
    const double diag = 1.0 / std::sqrt(static_cast<double>(d));
    const double norm = std::pow(2.0 * std::numbers::pi * w * w, -0.5 * d);
    for (int i = -2; i <= 2; ++i) {
        Vec3 c{0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) c[static_cast<std::size_t>(a)] = i * w * diag;
        fam.centres.push_back(c);
        AlignedVector<double> g(grid.nodes());
        kernels::for_each_node(grid, [&](std::size_t n, const Vec3& x) {
            double r2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double dx = x[static_cast<std::size_t>(a)] - c[static_cast<std::size_t>(a)];
                r2 += dx * dx;
            }
            g[n] = norm * std::exp(-0.5 * r2 / (w * w));
        });
        fam.l1_norms.push_back(kernels::deterministic_sum(g.size(), [&](std::size_t n) { return g[n]; }) *
                               grid.cell_volume());
        Spectrum s(grid, 1);
        fft::forward(grid, g, s.component(0));
        fam.spectra.push_back(std::move(s));
    }
    return fam;
}

DecayReport lowpass_trace(const Field& f, const std::vector<double>& lambdas, TraceMode mode,
                          bool whole_space) {
    if (mode == TraceMode::strong) {
        // The dual family is not used in strong mode.
        return lowpass_trace(f, lambdas, mode, DualFamily{}, whole_space);
    }
    check_ladder(lambdas, f.grid(), whole_space);
    return lowpass_trace(f, lambdas, mode, DualFamily::standard(f.grid(), lambdas.front()), whole_space);
}

DecayReport lowpass_trace(const Field& f, const std::vector<double>& lambdas, TraceMode mode,
                          const DualFamily& family, bool whole_space) {
    const GridSpec& grid = f.grid();
    check_ladder(lambdas, grid, whole_space);
    const auto spec = f.spectrum();
    const std::size_t ns = grid.spectral_nodes();
    const std::size_t nh = grid.half_points();
    const int comps = f.components();

    std::vector<double> radius(ns);
    kernels::for_each_mode(grid, [&](std::size_t s, const Vec3& xi) {
        radius[s] = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    });
    const double mean_scale = 1.0 / std::sqrt(static_cast<double>(grid.nodes()));

    std::vector<double> values, zero_mode;
    std::vector<std::vector<double>> pairings;
    for (double lambda : lambdas) {
        // chi(0) = 1: the zero mode passes every low-pass filter untouched.
        double zm = 0.0;
        for (int c = 0; c < comps; ++c) {
            const double m = spec->component(c)[0].real() * mean_scale;
            zm += m * m;
        }
        zero_mode.push_back(std::sqrt(zm));

        if (mode == TraceMode::weak) {
            // Parseval over the half spectrum: interior columns count twice.
            std::vector<double> row;
            double best = 0.0;
            for (const auto& phi : family.spectra) {
                double mag2 = 0.0;
                for (int c = 0; c < comps; ++c) {
                    const auto fc = spec->component(c);
                    const auto pc = phi.component(0);
                    const double p = kernels::deterministic_sum(ns, [&](std::size_t s) {
                                         const double w = radius[s] * lambda >= kChiSupport ? 0.0 : chi(lambda * radius[s]);
                                         if (w == 0.0) return 0.0;
                                         const std::size_t col = s % nh;
                                         const double mult = (col == 0 || col == nh - 1) ? 1.0 : 2.0;
                                         return mult * w * (fc[s] * std::conj(pc[s])).real();
                                     }) *
                                     grid.cell_volume();
                    row.push_back(p);
                    mag2 += p * p;
                }
                best = std::max(best, std::sqrt(mag2));
            }
            pairings.push_back(std::move(row));
            values.push_back(best);
        } else {
            Spectrum low = *spec;
            for (int c = 0; c < comps; ++c) {
                auto lc = low.component(c);
                kernels::parallel_for(ns, [&](std::size_t s) { lc[s] *= chi(lambda * radius[s]); });
            }
            const Field lf = Field::from_spectrum(low, f.rank());
            values.push_back(lp_norm(lf, kInf, Region::window));
        }
    }
    DecayReport rep = make_decay_report(std::string("lowpass-") + mode_name(mode), lambdas, std::move(values),
                                        grid.window_radius(), false);
    rep.pairings = std::move(pairings);
    rep.zero_mode = std::move(zero_mode);
    return rep;
}

ShClassification classify_sph(const DecayReport& report, TraceMode mode) {
    ShClassification out;
    out.mode = mode;
    out.evidence = report;
    out.accumulation = report.zero_mode;
    if (report.values.empty()) return out;
    double ref = 0.0;
    for (double v : report.values) ref = std::max(ref, std::abs(v));
    const double terminal = std::abs(report.values.back());
    if (ref <= kTraceFloor) {
        out.verdict = Verdict::member;
    } else if (report.slope < kMemberSlope && terminal < kMemberFraction * ref) {
        out.verdict = Verdict::member;
    } else if (terminal > kNonMemberFraction * ref) {
        out.verdict = Verdict::non_member;
    } else {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

}  // namespace lpflow
