#pragma once

#include <string>
#include <vector>

#include "lpflow/core/field.hpp"
#include "lpflow/core/multiplier.hpp"
#include "lpflow/leray/decay.hpp"
#include "lpflow/leray/gamma.hpp"

namespace lpflow {

/// P = Id - xi xi^T / |xi|^2 away from 0. The default zero-mode policy keeps
/// the mean and records the choice in the field's provenance.
Field leray_project(const Field& u, ZeroModePolicy zero_mode = ZeroModePolicy::passthrough);
Spectrum leray_project(const Spectrum& u, ZeroModePolicy zero_mode = ZeroModePolicy::passthrough);

Field divergence(const Field& u);
Field gradient(const Field& g);

enum class PdivBackend { spectral, pakpark };
const char* backend_name(PdivBackend b);
PdivBackend parse_backend(const std::string& name);

/// Projected divergence of a tensor field, [P D f]_j.
///  spectral: P applied to (D f)_j = sum_k d_k f_kj, zero mode annihilated.
///  pakpark:  chi(D) D f + sum_kl Gamma_jkl * f_kl for the low frequencies
///            plus (Id - chi(D)) P D f for the rest.
/// Throws std::invalid_argument if the pakpark backend gets no kernels or
/// kernels built on another grid.
Field pdiv(const Field& f, PdivBackend backend = PdivBackend::spectral,
           const LerayKernelSet* kernels = nullptr);
Spectrum pdiv_spectral(const Spectrum& f);

/// Weak low-pass trace of the projected divergence of a bounded tensor field.
DecayReport pdiv_sph_certificate(const Field& f, const std::vector<double>& lambdas,
                                 bool whole_space = true);

}  // namespace lpflow
