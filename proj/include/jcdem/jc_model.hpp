#pragma once

#include <array>
#include <complex>

#include "jcdem/density_matrix.hpp"
#include "jcdem/linalg.hpp"

namespace jcdem {

// Basis ordering for the joint atom-field space (single source of truth):
//   index = level * (n_max + 1) + n
// with level 0 = ground |1>, level 1 = excited |2>, n = photon number 0..n_max.
enum class AtomLevel : Index { Ground = 0, Excited = 1 };

inline Index basis_index(AtomLevel level, Index n, Index n_max)
{
    return static_cast<Index>(level) * (n_max + 1) + n;
}

inline Dims joint_dims(Index n_max) { return Dims{2, n_max + 1}; }

/// Resonant JC parameters, hbar = 1.
struct ModelParams {
    double g = 1.0;
    double omega0 = 1.0;

    void validate() const;
};

/// Coherent field |theta> truncated to photon numbers 0..n_max.
struct FieldConfig {
    std::complex<double> theta{0.0, 0.0};
    Index n_max = 1;
    double tail_tol = 1e-12;

    /// Picks n_max = truncation_dim(|theta|^2, tail_tol).
    static FieldConfig coherent(std::complex<double> theta, double tail_tol = 1e-12);
    static FieldConfig from_mean_photons(double mean_photons, double tail_tol = 1e-12);

    double mean_photons() const { return std::norm(theta); }
    void validate() const;
};

/// Diagonal atom state lambda0 |1><1| + lambda1 |2><2|.
struct AtomState {
    double lambda0 = 0.7;
    double lambda1 = 0.3;

    static AtomState from_ground_weight(double lambda0) { return {lambda0, 1.0 - lambda0}; }
    void validate() const;
    DensityMatrix density() const;
};

/// Eigen-pair of H restricted to span{|2,n>, |1,n+1>}.
struct DressedBlock {
    Index n = 0;
    std::array<double, 2> phases{};  // omega0 (n + 1/2) + Omega_n, omega0 (n + 1/2) - Omega_n
    Eigen::Matrix2cd vectors;        // columns pair with phases; rows are (|2,n>, |1,n+1>)
};

struct ClosedFormCoeffs {
    double s = 0;
    double c = 1;
    double e1 = 0;
    double e4 = 0;
    double e2_mag = 0;
    double e3_mag = 0;
};

/// Omega_n = g sqrt(n + 1).
inline double rabi_frequency(Index n, double g) { return g * std::sqrt(static_cast<double>(n) + 1.0); }

/// Poisson weight e^{-mean} mean^n / n!, evaluated in log space.
double poisson_weight(double mean_photons, Index n);

/// Smallest N whose Poisson tail sum_{n>N} p_n is below tail_tol, plus 5 guard levels.
Index truncation_dim(double mean_photons, double tail_tol);

/// Amplitudes e^{-|theta|^2/2} theta^n / sqrt(n!), n = 0..n_max, renormalized to unit norm.
ComplexVector coherent_amplitudes(std::complex<double> theta, Index n_max);
DensityMatrix coherent_state(std::complex<double> theta, Index n_max);

DressedBlock dressed_block(Index n, const ModelParams& params);

/// U_t = exp(-i t H) on the truncated space, assembled block by block.
/// |1,0> carries e^{+i t omega0/2}; |2,n_max> has no partner inside the cutoff and
/// evolves with its free phase only.
ComplexMatrix propagator(double t, const ModelParams& params, Index n_max);

/// Precomputed initial state rho (x) omega; state(t) = U_t (rho (x) omega) U_t^H.
class JcEvolution {
public:
    JcEvolution(const AtomState& atom, const FieldConfig& field, const ModelParams& params);

    DensityMatrix state(double t) const;
    const DensityMatrix& initial() const { return initial_; }
    Index n_max() const { return n_max_; }
    Dims dims() const { return joint_dims(n_max_); }

private:
    ModelParams params_;
    Index n_max_;
    DensityMatrix initial_;
};

DensityMatrix evolve(const AtomState& atom, const FieldConfig& field, const ModelParams& params,
                     double t);

/// c(t) = e^{-|theta|^2} sum_{n <= n_max} |theta|^{2n}/n! cos^2(Omega_n t).
double transition_probability_closed(double t, double mean_photons, double g, Index n_max);

/// s(t), c(t), e1..e4 as printed. e2/e3 are kept by magnitude.
ClosedFormCoeffs closed_form_coeffs(double t, const AtomState& atom, const FieldConfig& field,
                                    const ModelParams& params);

} // namespace jcdem
