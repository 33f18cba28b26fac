#pragma once

#include <utility>

#include "jcdem/density_matrix.hpp"
#include "jcdem/jc_model.hpp"

namespace jcdem {

enum class LogBase { E, Two };

/// Eigenvalues in [-kNegativeEigenTol, kEigenClip] count as zero in entropy sums;
/// anything below -kNegativeEigenTol is an invalid state.
inline constexpr double kEigenClip = 1e-12;
inline constexpr double kNegativeEigenTol = 1e-10;
/// Slack used by the Araki-Lieb bounds.
inline constexpr double kArakiLiebSlack = 1e-8;

/// -sum p log p over a spectrum, in the requested base.
double spectral_entropy(const RealVector& eigenvalues, LogBase base = LogBase::E);

double von_neumann_entropy(const DensityMatrix& rho, LogBase base = LogBase::E);

/// S(sigma|rho) = tr sigma (log sigma - log rho). Returns +infinity when the
/// support of sigma is not contained in the support of rho.
double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho,
                        LogBase base = LogBase::E);

struct ArakiLiebMargins {
    double lower = 0;  // s_joint - |s_atom - s_field|
    double upper = 0;  // s_atom + s_field - s_joint
};

struct EntropyReport {
    double s_atom = 0;
    double s_field = 0;
    double s_joint = 0;
    double dem = 0;
    bool araki_lieb_ok = true;
    ArakiLiebMargins al_margins;
};

/// Mutual-entropy degree of entanglement S(rho_A) + S(rho_F) - S(sigma), with marginals
/// taken by partial trace.
EntropyReport dem_exact(const DensityMatrix& joint, Dims dims, LogBase base = LogBase::E);

/// -e1 log e1 - e4 log e4 + |e2| log|e2| + |e3| log|e3|, with 0 log 0 = 0.
double dem_closed_form(const ClosedFormCoeffs& coeffs, LogBase base = LogBase::E);

/// |S(A) - S(F)| <= S(joint) <= S(A) + S(F), each with kArakiLiebSlack.
std::pair<bool, ArakiLiebMargins> araki_lieb_check(const DensityMatrix& joint, Dims dims,
                                                   LogBase base = LogBase::E);

} // namespace jcdem
