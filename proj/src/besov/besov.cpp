#include "lpflow/besov/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpflow/core/kernels.hpp"

namespace lpflow {

bool supercritical(const BesovParams& params, int dim) {
    const double critical = std::isinf(params.p) ? 0.0 : dim / params.p;
    return params.s < critical || (params.s == critical && params.r == 1.0);
}

double lr_aggregate(const std::vector<double>& values, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (double v : values) s += std::pow(std::abs(v), r);
    return std::pow(s, 1.0 / r);
}

namespace {

void validate(const BesovParams& params) {
    if (!(params.p >= 1.0) || !(params.r >= 1.0)) {
        throw std::invalid_argument("Besov exponents p and r must lie in [1, inf]");
    }
}

double zero_mode_weight(const Field& field) {
    double worst = 0.0;
    for (double m : component_means(field)) worst = std::max(worst, std::abs(m));
    return worst;
}

}  // namespace

BesovNormReport besov_norm(const Field& field, const DyadicPartition& partition,
                           const BesovParams& params) {
    validate(params);
    BesovNormReport rep;
    rep.params = params;
    const Spectrum spec = spectrum_of(field);
    const int lo = params.homogeneous ? partition.m_min : -1;
    const int hi = params.homogeneous ? partition.m_max : partition.top;

    if (params.homogeneous) {
        const double scale = std::max(1.0, sup_norm(field));
        rep.zero_mode_excluded = zero_mode_weight(field) > 1e-12 * scale;
    }

    rep.contributions.resize(static_cast<std::size_t>(hi - lo + 1));
    for (int m = lo; m <= hi; ++m) {
        const Field block = Field::from_spectrum(dyadic_block(spec, partition, m, params.homogeneous), field.rank());
        auto& c = rep.contributions[static_cast<std::size_t>(m - lo)];
        c.m = m;
        c.block_norm = lp_norm(block, params.p, params.region);
        c.weighted = std::exp2(m * params.s) * c.block_norm;
    }

    std::vector<double> weighted;
    for (const auto& c : rep.contributions) weighted.push_back(c.weighted);
    rep.total = lr_aggregate(weighted, params.r);

    if (rep.total > 0.0 && weighted.size() >= 2) {
        const std::vector<double> top(weighted.end() - 2, weighted.end());
        const double share = std::isinf(params.r)
                                  ? lr_aggregate(top, params.r) / rep.total
                                  : std::pow(lr_aggregate(top, params.r) / rep.total, params.r);
        rep.truncated = share > 0.01;
    }
    return rep;
}

CsvTable BesovNormReport::to_csv() const {
    CsvTable t({"m", "block_norm", "weighted"});
    t.comment("s=" + format_double(params.s) + " p=" + format_double(params.p) +
              " r=" + format_double(params.r) + " homogeneous=" + (params.homogeneous ? "1" : "0"));
    t.comment("total=" + format_double(total) + " truncated=" + (truncated ? "1" : "0") +
              " zero_mode_excluded=" + (zero_mode_excluded ? "1" : "0"));
    for (const auto& c : contributions) {
        t.add_row({std::int64_t{c.m}, c.block_norm, c.weighted});
    }
    return t;
}

Reconstruction homogeneous_reconstruct(const Field& field, const DyadicPartition& partition) {
    const Spectrum spec = spectrum_of(field);
    Spectrum sum(spec.grid, spec.components);
    for (int m = partition.m_min; m <= partition.m_max; ++m) {
        const Spectrum block = dyadic_block(spec, partition, m, true);
        kernels::axpy(Complex(1.0), block.coeffs, sum.coeffs);
    }
    Reconstruction out{Field::from_spectrum(sum, field.rank()), field};
    out.residual -= out.reconstructed;
    return out;
}

}  // namespace lpflow
