#include "lpflow/core/fft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "lpflow/core/kernels.hpp"

namespace lpflow::fft {
namespace {

struct PlanKey {
    int dim;
    std::size_t points;
    bool forward;
    bool operator<(const PlanKey& o) const {
        return std::tie(dim, points, forward) < std::tie(o.dim, o.points, o.forward);
    }
};

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::map<PlanKey, fftw_plan>& plan_cache() {
    static std::map<PlanKey, fftw_plan> cache;
    return cache;
}

void init_threads_once() {
    static const bool done = [] {
        fftw_init_threads();
        return true;
    }();
    (void)done;
}

fftw_plan get_plan(const GridSpec& grid, bool forward) {
    std::lock_guard lock(plan_mutex());
    init_threads_once();
    const PlanKey key{grid.dim(), grid.points(), forward};
    auto& cache = plan_cache();
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    int n[3];
    for (int a = 0; a < grid.dim(); ++a) n[a] = static_cast<int>(grid.points());
    AlignedVector<double> real(grid.nodes());
    AlignedVector<Complex> cplx(grid.spectral_nodes());
    fftw_plan_with_nthreads(omp_get_max_threads());
    fftw_plan plan;
    auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
    if (forward) {
        plan = fftw_plan_dft_r2c(grid.dim(), n, real.data(), c, FFTW_ESTIMATE);
    } else {
        plan = fftw_plan_dft_c2r(grid.dim(), n, c, real.data(), FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    cache.emplace(key, plan);
    return plan;
}

bool aligned(const void* p) { return reinterpret_cast<std::uintptr_t>(p) % 64 == 0; }

}  // namespace

void forward(const GridSpec& grid, std::span<const double> samples, std::span<Complex> spectrum) {
    if (samples.size() != grid.nodes() || spectrum.size() != grid.spectral_nodes()) {
        throw std::invalid_argument("fft::forward: buffer sizes do not match the grid");
    }
    fftw_plan plan = get_plan(grid, true);
    // r2c does not modify its input, but the new-array interface wants a
    // mutable pointer with planner alignment.
    if (aligned(samples.data()) && aligned(spectrum.data())) {
        fftw_execute_dft_r2c(plan, const_cast<double*>(samples.data()),
                             reinterpret_cast<fftw_complex*>(spectrum.data()));
    } else {
        AlignedVector<double> in(samples.begin(), samples.end());
        AlignedVector<Complex> out(spectrum.size());
        fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
        std::copy(out.begin(), out.end(), spectrum.begin());
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(grid.nodes()));
    kernels::parallel_for(spectrum.size(), [&](std::size_t i) { spectrum[i] *= scale; });
}

void inverse(const GridSpec& grid, std::span<const Complex> spectrum, std::span<double> samples) {
    if (samples.size() != grid.nodes() || spectrum.size() != grid.spectral_nodes()) {
        throw std::invalid_argument("fft::inverse: buffer sizes do not match the grid");
    }
    fftw_plan plan = get_plan(grid, false);
    // c2r overwrites its input.
    AlignedVector<Complex> work(spectrum.begin(), spectrum.end());
    if (aligned(samples.data())) {
        fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(work.data()), samples.data());
    } else {
        AlignedVector<double> out(samples.size());
        fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(work.data()), out.data());
        std::copy(out.begin(), out.end(), samples.begin());
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(grid.nodes()));
    kernels::parallel_for(samples.size(), [&](std::size_t i) { samples[i] *= scale; });
}

double continuous_scale(const GridSpec& grid) {
    return grid.cell_volume() * std::sqrt(static_cast<double>(grid.nodes()));
}

double centre_phase(const GridSpec& grid, std::size_t flat) {
    const auto k = grid.wavenumbers(flat);
    const std::int64_t s = k[0] + k[1] + k[2];
    return (s % 2 == 0) ? 1.0 : -1.0;
}

AlignedVector<Complex> continuous_transform(const GridSpec& grid, std::span<const double> samples) {
    AlignedVector<Complex> out(grid.spectral_nodes());
    forward(grid, samples, out);
    const double scale = continuous_scale(grid);
    kernels::parallel_for(out.size(),
                          [&](std::size_t s) { out[s] *= scale * centre_phase(grid, s); });
    return out;
}

AlignedVector<double> samples_from_transform(const GridSpec& grid, std::span<const Complex> ft) {
    AlignedVector<Complex> coeff(ft.begin(), ft.end());
    const double scale = 1.0 / continuous_scale(grid);
    kernels::parallel_for(coeff.size(),
                          [&](std::size_t s) { coeff[s] *= scale * centre_phase(grid, s); });
    AlignedVector<double> out(grid.nodes());
    inverse(grid, coeff, out);
    return out;
}

void clear_plans() {
    std::lock_guard lock(plan_mutex());
    for (auto& [key, plan] : plan_cache()) fftw_destroy_plan(plan);
    plan_cache().clear();
}

}  // namespace lpflow::fft
