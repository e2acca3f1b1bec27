#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lpflow/core/grid.hpp"

namespace lpflow {

enum class Rank { scalar, vector, tensor };

int component_count(Rank rank, int dim);
Rank rank_for_components(int components, int dim);
const char* rank_name(Rank rank);

/// Half-spectrum coefficients of every component, stored component-major.
struct Spectrum {
    GridSpec grid;
    int components = 1;
    AlignedVector<Complex> coeffs;

    Spectrum() = default;
    Spectrum(const GridSpec& g, int comps)
        : grid(g), components(comps), coeffs(g.spectral_nodes() * static_cast<std::size_t>(comps)) {}

    std::span<Complex> component(int c) {
        return {coeffs.data() + static_cast<std::size_t>(c) * grid.spectral_nodes(), grid.spectral_nodes()};
    }
    std::span<const Complex> component(int c) const {
        return {coeffs.data() + static_cast<std::size_t>(c) * grid.spectral_nodes(), grid.spectral_nodes()};
    }
};

/// Sampled scalar, vector or tensor field on a grid. Tensor component (k, l)
/// lives at index k * d + l. A spectrum may be cached; any mutable access to
/// the samples drops it.
class Field {
public:
    Field() = default;
    Field(const GridSpec& grid, Rank rank);

    static Field from_function(const GridSpec& grid, const std::function<double(const Vec3&)>& f);
    static Field from_spectrum(const Spectrum& spectrum);
    static Field from_spectrum(const Spectrum& spectrum, Rank rank);

    const GridSpec& grid() const { return grid_; }
    Rank rank() const { return rank_; }
    int components() const { return components_; }

    std::span<double> component(int c);
    std::span<const double> component(int c) const;
    std::span<double> samples();
    std::span<const double> samples() const { return samples_; }

    /// Cached spectrum if present, otherwise computed on the fly (not stored).
    std::shared_ptr<const Spectrum> spectrum() const;
    bool has_spectrum() const { return spectrum_ != nullptr; }

    const std::vector<std::string>& provenance() const { return provenance_; }
    void add_provenance(std::string note) { provenance_.push_back(std::move(note)); }
    bool has_provenance(const std::string& note) const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

private:
    friend Field transform(const Field&);
    GridSpec grid_;
    Rank rank_ = Rank::scalar;
    int components_ = 1;
    AlignedVector<double> samples_;
    std::shared_ptr<const Spectrum> spectrum_;
    std::vector<std::string> provenance_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Copy of `field` with its spectrum cached. Throws std::domain_error on
/// NaN or Inf samples. Transforming an already-transformed field is a no-op.
Field transform(const Field& field);
/// Field rebuilt from its spectrum (samples recomputed, spectrum dropped).
Field inverse_transform(const Field& field);

Spectrum spectrum_of(const Field& field);

/// Mean of each component over the box.
std::vector<double> component_means(const Field& field);

/// Tensor product u (x) v of two vector fields, component (k, l) = u_k v_l.
Field outer(const Field& u, const Field& v);

double max_abs_difference(const Field& a, const Field& b);
double sup_norm(const Field& f);

}  // namespace lpflow
