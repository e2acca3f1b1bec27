#include "lpflow/flows/drift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lpflow {

const char* drift_verdict_name(DriftVerdict v) {
    return v == DriftVerdict::condition_ii_holds ? "condition_ii_holds" : "violated";
}

std::vector<double> drift_ladder(const GridSpec& grid) {
    const double unit = grid.half_width() / std::numbers::pi;
    return {0.5 * unit, unit, 2.0 * unit, 4.0 * unit, 8.0 * unit};
}

namespace {

double euclid(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> mean_shift(const Field& now, const Field& start) {
    auto a = component_means(now);
    const auto b = component_means(start);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

}  // namespace

DriftReport drift_detector(const std::vector<Snapshot>& trajectory, const std::vector<double>& lambdas,
                           TraceMode mode, bool check_b) {
    if (trajectory.empty() || trajectory.front().t != 0.0) {
        throw std::invalid_argument("drift detection needs the t = 0 snapshot first");
    }
    if (trajectory.size() < 3) throw std::invalid_argument("drift detection needs at least three snapshots");
    const Snapshot& first = trajectory.front();
    const bool with_b = check_b && first.b.has_value();

    DriftReport rep;
    double scale = sup_norm(first.u);
    if (with_b) scale = std::max(scale, sup_norm(*first.b));
    // The absolute floor keeps u0 = 0 runs from demanding bit-exact zeros.
    rep.threshold = std::max(1e-8 * scale, 1e-14);

    bool u_bad = false;
    bool b_bad = false;
    for (const Snapshot& snap : trajectory) {
        DriftEntry e;
        e.t = snap.t;
        const Field du = snap.u - first.u;
        e.u = classify_sph(lowpass_trace(du, lambdas, mode, false), mode);
        e.zero_u = mean_shift(snap.u, first.u);
        rep.max_zero_u = std::max(rep.max_zero_u, euclid(e.zero_u));
        if (e.u.verdict == Verdict::non_member) {
            if (!u_bad) rep.reasons.push_back("u drift not in S'_h at t = " + format_double(snap.t));
            u_bad = true;
        }
        if (with_b) {
            if (!snap.b) throw std::invalid_argument("snapshot lacks the magnetic field");
            const Field db = *snap.b - *first.b;
            e.b = classify_sph(lowpass_trace(db, lambdas, mode, false), mode);
            e.zero_b = mean_shift(*snap.b, *first.b);
            rep.max_zero_b = std::max(rep.max_zero_b, euclid(e.zero_b));
            if (e.b->verdict == Verdict::non_member) {
                if (!b_bad) rep.reasons.push_back("b drift not in S'_h at t = " + format_double(snap.t));
                b_bad = true;
            }
        }
        rep.entries.push_back(std::move(e));
    }
    if (rep.max_zero_u > rep.threshold) {
        rep.reasons.push_back("u zero mode moved by " + format_double(rep.max_zero_u));
        u_bad = true;
    }
    rep.verdict_u = u_bad ? DriftVerdict::violated : DriftVerdict::condition_ii_holds;
    if (with_b) {
        if (rep.max_zero_b > rep.threshold) {
            rep.reasons.push_back("b zero mode moved by " + format_double(rep.max_zero_b));
            b_bad = true;
        }
        rep.verdict_b = b_bad ? DriftVerdict::violated : DriftVerdict::condition_ii_holds;
    }
    rep.verdict = (u_bad || b_bad) ? DriftVerdict::violated : DriftVerdict::condition_ii_holds;
    return rep;
}

CsvTable DriftReport::to_csv() const {
    const bool with_b = verdict_b.has_value();
    std::vector<std::string> header{"t", "u_verdict", "u_slope", "u_terminal", "u_zero_norm"};
    if (with_b) {
        for (const char* h : {"b_verdict", "b_slope", "b_terminal", "b_zero_norm"}) header.emplace_back(h);
    }
    CsvTable t(header);
    t.comment("verdict=" + std::string(drift_verdict_name(verdict)));
    t.comment("verdict_u=" + std::string(drift_verdict_name(verdict_u)));
    if (with_b) t.comment("verdict_b=" + std::string(drift_verdict_name(*verdict_b)));
    t.comment("threshold=" + format_double(threshold));
    for (const auto& r : reasons) t.comment("reason=" + r);
    auto terminal = [](const ShClassification& c) {
        return c.evidence.values.empty() ? 0.0 : c.evidence.values.back();
    };
    for (const auto& e : entries) {
        std::vector<CsvCell> row{e.t, std::string(verdict_name(e.u.verdict)), e.u.evidence.slope, terminal(e.u),
                                 euclid(e.zero_u)};
        if (with_b) {
            row.emplace_back(std::string(verdict_name(e.b->verdict)));
            row.emplace_back(e.b->evidence.slope);
            row.emplace_back(terminal(*e.b));
            row.emplace_back(euclid(e.zero_b));
        }
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace lpflow
