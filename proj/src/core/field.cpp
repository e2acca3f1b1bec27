#include "lpflow/core/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpflow/core/fft.hpp"
#include "lpflow/core/kernels.hpp"

namespace lpflow {

int component_count(Rank rank, int dim) {
    switch (rank) {
        case Rank::scalar: return 1;
        case Rank::vector: return dim;
        case Rank::tensor: return dim * dim;
    }
    return 1;
}

Rank rank_for_components(int components, int dim) {
    if (components == 1) return Rank::scalar;
    if (components == dim) return Rank::vector;
    if (components == dim * dim) return Rank::tensor;
    throw std::invalid_argument("no field rank has " + std::to_string(components) + " components");
}

const char* rank_name(Rank rank) {
    switch (rank) {
        case Rank::scalar: return "scalar";
        case Rank::vector: return "vector";
        case Rank::tensor: return "tensor";
    }
    return "?";
}

Field::Field(const GridSpec& grid, Rank rank)
    : grid_(grid),
      rank_(rank),
      components_(component_count(rank, grid.dim())),
      samples_(grid.nodes() * static_cast<std::size_t>(components_), 0.0) {}

Field Field::from_function(const GridSpec& grid, const std::function<double(const Vec3&)>& f) {
    Field out(grid, Rank::scalar);
    auto s = out.samples();
    kernels::for_each_node(grid, [&](std::size_t i, const Vec3& x) { s[i] = f(x); });
    return out;
}

Field Field::from_spectrum(const Spectrum& spectrum) {
    return from_spectrum(spectrum, rank_for_components(spectrum.components, spectrum.grid.dim()));
}

Field Field::from_spectrum(const Spectrum& spectrum, Rank rank) {
    Field out(spectrum.grid, rank);
    if (out.components_ != spectrum.components) {
        throw std::invalid_argument("spectrum component count does not match the requested rank");
    }
    for (int c = 0; c < spectrum.components; ++c) {
        fft::inverse(spectrum.grid, spectrum.component(c), out.component(c));
    }
    return out;
}

std::span<double> Field::component(int c) {
    spectrum_.reset();
    return {samples_.data() + static_cast<std::size_t>(c) * grid_.nodes(), grid_.nodes()};
}

std::span<const double> Field::component(int c) const {
    return {samples_.data() + static_cast<std::size_t>(c) * grid_.nodes(), grid_.nodes()};
}

std::span<double> Field::samples() {
    spectrum_.reset();
    return samples_;
}

std::shared_ptr<const Spectrum> Field::spectrum() const {
    if (spectrum_) return spectrum_;
    return std::make_shared<const Spectrum>(spectrum_of(*this));
}

bool Field::has_provenance(const std::string& note) const {
    return std::find(provenance_.begin(), provenance_.end(), note) != provenance_.end();
}

namespace {
void check_compatible(const Field& a, const Field& b) {
    if (!(a.grid() == b.grid()) || a.components() != b.components()) {
        throw std::invalid_argument("fields live on different grids or have different ranks");
    }
}
}  // namespace

Field& Field::operator+=(const Field& o) {
    check_compatible(*this, o);
    kernels::axpy(1.0, o.samples(), samples());
    return *this;
}

Field& Field::operator-=(const Field& o) {
    check_compatible(*this, o);
    kernels::axpy(-1.0, o.samples(), samples());
    return *this;
}

Field& Field::operator*=(double a) {
    auto s = samples();
    kernels::parallel_for(s.size(), [&](std::size_t i) { s[i] *= a; });
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }

Spectrum spectrum_of(const Field& field) {
    if (field.has_spectrum()) return *field.spectrum();
    const auto s = field.samples();
    const bool finite = kernels::deterministic_max(s.size(), [&](std::size_t i) {
                            return std::isfinite(s[i]) ? 0.0 : 1.0;
                        }) == 0.0;
    if (!finite) throw std::domain_error("field samples contain NaN or Inf");
    Spectrum out(field.grid(), field.components());
    for (int c = 0; c < field.components(); ++c) {
        fft::forward(field.grid(), field.component(c), out.component(c));
    }
    return out;
}

Field transform(const Field& field) {
    Field out = field;
    if (!out.spectrum_) out.spectrum_ = std::make_shared<const Spectrum>(spectrum_of(field));
    return out;
}

Field inverse_transform(const Field& field) {
    const auto spec = field.spectrum();
    Field out = Field::from_spectrum(*spec, field.rank());
    for (const auto& note : field.provenance()) out.add_provenance(note);
    return out;
}

std::vector<double> component_means(const Field& field) {
    std::vector<double> means(static_cast<std::size_t>(field.components()));
    for (int c = 0; c < field.components(); ++c) {
        const auto s = field.component(c);
        means[static_cast<std::size_t>(c)] =
            kernels::deterministic_sum(s.size(), [&](std::size_t i) { return s[i]; }) /
            static_cast<double>(s.size());
    }
    return means;
}

Field outer(const Field& u, const Field& v) {
    if (u.rank() != Rank::vector || v.rank() != Rank::vector || !(u.grid() == v.grid())) {
        throw std::invalid_argument("outer product needs two vector fields on one grid");
    }
    const int d = u.grid().dim();
    Field out(u.grid(), Rank::tensor);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            kernels::multiply(u.component(k), v.component(l), out.component(k * d + l));
        }
    }
    return out;
}

double max_abs_difference(const Field& a, const Field& b) {
    check_compatible(a, b);
    const auto x = a.samples();
    const auto y = b.samples();
    return kernels::deterministic_max(x.size(), [&](std::size_t i) { return std::abs(x[i] - y[i]); });
}

double sup_norm(const Field& f) {
    const auto x = f.samples();
    return kernels::deterministic_max(x.size(), [&](std::size_t i) { return std::abs(x[i]); });
}

}  // namespace lpflow
