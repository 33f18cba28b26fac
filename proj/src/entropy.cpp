#include "jcdem/entropy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace jcdem {

namespace {

// Weight of sigma allowed outside supp(rho) before the divergence is reported.
constexpr double kSupportTol = 1e-12;

double to_base(double nats, LogBase base)
{
    return base == LogBase::Two ? nats / std::numbers::ln2 : nats;
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

ArakiLiebMargins margins_of(double s_atom, double s_field, double s_joint)
{
    return {s_joint - std::abs(s_atom - s_field), s_atom + s_field - s_joint};
}

bool margins_ok(const ArakiLiebMargins& m)
{
    return m.lower >= -kArakiLiebSlack && m.upper >= -kArakiLiebSlack;
}

} // namespace

double spectral_entropy(const RealVector& eigenvalues, LogBase base)
{
    double nats = 0.0;
    for (Index k = 0; k < eigenvalues.size(); ++k) {
        const double p = eigenvalues(k);
        if (p < -kNegativeEigenTol) {
            throw NumericalError("entropy: eigenvalue " + std::to_string(p) +
                                 " below tolerance, not a valid state");
        }
        if (p > kEigenClip) {
            nats -= p * std::log(p);
        }
    }
    return to_base(std::max(nats, 0.0), base);
}

double von_neumann_entropy(const DensityMatrix& rho, LogBase base)
{
    return spectral_entropy(hermitian_eigenvalues(rho.matrix()), base);
}

double relative_entropy(const DensityMatrix& sigma, const DensityMatrix& rho, LogBase base)
{
    if (sigma.dim() != rho.dim()) {
        throw DimensionError("relative_entropy: dimension mismatch " + std::to_string(sigma.dim()) +
                             " vs " + std::to_string(rho.dim()));
    }
    const auto es = hermitian_eigensystem(sigma.matrix());
    const auto er = hermitian_eigensystem(rho.matrix());
    const Eigen::MatrixXd overlap = (es.eigenvectors.adjoint() * er.eigenvectors).cwiseAbs2();

    for (const auto* spectrum : {&es.eigenvalues, &er.eigenvalues}) {
        if (spectrum->size() > 0 && (*spectrum)(0) < -kNegativeEigenTol) {
            throw NumericalError("relative_entropy: argument has a negative eigenvalue");
        }
    }

    double nats = 0.0;
    double outside = 0.0;
    for (Index i = 0; i < es.eigenvalues.size(); ++i) {
        const double lam = es.eigenvalues(i);
        if (lam <= kEigenClip) {
            continue;
        }
        nats += lam * std::log(lam);
        for (Index j = 0; j < er.eigenvalues.size(); ++j) {
            const double mu = er.eigenvalues(j);
            if (mu > kEigenClip) {
                nats -= lam * overlap(i, j) * std::log(mu);
            } else {
                outside += lam * overlap(i, j);
            }
        }
    }
    if (outside > kSupportTol) {
        return std::numeric_limits<double>::infinity();
    }
    return to_base(nats, base);
}

EntropyReport dem_exact(const DensityMatrix& joint, Dims dims, LogBase base)
{
    EntropyReport r;
    r.s_atom = von_neumann_entropy(partial_trace(joint, dims, Subsystem::Atom), base);
    r.s_field = von_neumann_entropy(partial_trace(joint, dims, Subsystem::Field), base);
    r.s_joint = von_neumann_entropy(joint, base);
    r.dem = r.s_atom + r.s_field - r.s_joint;
    r.al_margins = margins_of(r.s_atom, r.s_field, r.s_joint);
    r.araki_lieb_ok = margins_ok(r.al_margins);
    return r;
}

double dem_closed_form(const ClosedFormCoeffs& coeffs, LogBase base)
{
    const double nats = -xlogx(coeffs.e1) - xlogx(coeffs.e4) + xlogx(std::abs(coeffs.e2_mag)) +
                        xlogx(std::abs(coeffs.e3_mag));
    return to_base(nats, base);
}

std::pair<bool, ArakiLiebMargins> araki_lieb_check(const DensityMatrix& joint, Dims dims,
                                                   LogBase base)
{
    const EntropyReport r = dem_exact(joint, dims, base);
    return {r.araki_lieb_ok, r.al_margins};
}

} // namespace jcdem
