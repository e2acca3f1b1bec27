#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lpflow/core/field.hpp"

namespace lpflow {

enum class ZeroModePolicy { zero, identity, passthrough };

/// Symbols odd in xi (derivatives) cannot be represented on the Nyquist plane
/// of a real field, so those modes are dropped. Even symbols keep them.
enum class Parity { even, odd };

/// Fourier multiplier sigma(D). A scalar symbol acts on every component; a
/// matrix symbol with `rows` x `cols` entries maps `cols` input components to
/// `rows` outputs, out_r = sum_c sigma_rc in_c.
struct MultiplierSymbol {
    int rows = 1;
    int cols = 1;
    /// Writes rows*cols row-major entries for frequency xi.
    std::function<void(const Vec3& xi, Complex* out)> eval;
    std::optional<int> degree;
    ZeroModePolicy zero_mode = ZeroModePolicy::zero;
    Parity parity = Parity::even;
    std::string name;

    bool is_scalar() const { return rows == 1 && cols == 1; }
    Complex scalar(const Vec3& xi) const {
        Complex v;
        eval(xi, &v);
        return v;
    }
};

MultiplierSymbol scalar_symbol(std::string name, std::function<Complex(const Vec3&)> f,
                               std::optional<int> degree, ZeroModePolicy zero_mode,
                               Parity parity = Parity::even);

namespace symbols {
MultiplierSymbol identity();
/// i xi_j
MultiplierSymbol derivative(int j);
/// -|xi|^2
MultiplierSymbol laplacian();
/// xi_a xi_b / |xi|^2
MultiplierSymbol riesz_pair(int a, int b);
/// Id - xi xi^T / |xi|^2, a d x d matrix symbol.
MultiplierSymbol leray(int dim, ZeroModePolicy zero_mode = ZeroModePolicy::identity);
/// divergence of a vector field: 1 x d matrix of i xi_k
MultiplierSymbol divergence(int dim);
/// gradient of a scalar: d x 1 matrix of i xi_j
MultiplierSymbol gradient(int dim);
/// row-wise divergence of a tensor, (D f)_l = sum_k i xi_k f_kl, d x d^2
MultiplierSymbol tensor_divergence(int dim);
/// chi(lambda |xi|)
MultiplierSymbol lowpass(double lambda);
}  // namespace symbols

/// Largest |sigma(2 xi) - 2^deg sigma(xi)| / max(1, |sigma|) over grid xi != 0.
double homogeneity_defect(const MultiplierSymbol& symbol, const GridSpec& grid);

Spectrum apply_multiplier(const Spectrum& in, const MultiplierSymbol& symbol);
Field apply_multiplier(const Field& field, const MultiplierSymbol& symbol);

/// Applies a radial real profile g(|xi|) to every component.
Spectrum apply_radial(const Spectrum& in, const std::function<double(double)>& g);
Field apply_radial(const Field& field, const std::function<double(double)>& g);

inline constexpr const char* kZeroModePassthrough = "zero-mode passthrough";

}  // namespace lpflow
