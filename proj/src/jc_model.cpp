#include "jcdem/jc_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/SparseCore>

namespace jcdem {

namespace {

constexpr Index kGuardLevels = 5;

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

// sum_{n > N} p_n by direct summation; terms past the mode decay geometrically.
double poisson_tail(double mean_photons, Index N)
{
    double tail = 0.0;
    for (Index n = N + 1;; ++n) {
        const double term = poisson_weight(mean_photons, n);
        tail += term;
        if (static_cast<double>(n) > mean_photons &&
            (term == 0.0 || term <= tail * 1e-17)) {
            break;
        }
    }
    return tail;
}

} // namespace

void ModelParams::validate() const
{
    require(std::isfinite(g) && g > 0.0, "ModelParams: g must be positive");
    require(std::isfinite(omega0) && omega0 >= 0.0, "ModelParams: omega0 must be >= 0");
}

FieldConfig FieldConfig::coherent(std::complex<double> theta, double tail_tol)
{
    FieldConfig f;
    f.theta = theta;
    f.tail_tol = tail_tol;
    f.n_max = truncation_dim(std::norm(theta), tail_tol);
    return f;
}

FieldConfig FieldConfig::from_mean_photons(double mean_photons, double tail_tol)
{
    require(std::isfinite(mean_photons) && mean_photons >= 0.0,
            "FieldConfig: mean photon number must be >= 0");
    return coherent({std::sqrt(mean_photons), 0.0}, tail_tol);
}

void FieldConfig::validate() const
{
    require(n_max >= 1, "FieldConfig: n_max must be >= 1");
    require(tail_tol > 0.0 && tail_tol < 1.0, "FieldConfig: tail_tol must lie in (0,1)");
    require(std::isfinite(theta.real()) && std::isfinite(theta.imag()),
            "FieldConfig: theta must be finite");
    require(poisson_tail(mean_photons(), n_max) < tail_tol,
            "FieldConfig: Poisson tail beyond n_max exceeds tail_tol");
}

void AtomState::validate() const
{
    require(lambda0 >= 0.0 && lambda0 <= 1.0, "AtomState: lambda0 must lie in [0,1]");
    require(lambda1 >= 0.0 && lambda1 <= 1.0, "AtomState: lambda1 must lie in [0,1]");
    require(std::abs(lambda0 + lambda1 - 1.0) <= 1e-12, "AtomState: weights must sum to 1");
}

DensityMatrix AtomState::density() const
{
    ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
    rho(static_cast<Index>(AtomLevel::Ground), static_cast<Index>(AtomLevel::Ground)) = lambda0;
    rho(static_cast<Index>(AtomLevel::Excited), static_cast<Index>(AtomLevel::Excited)) = lambda1;
    return DensityMatrix(rho);
}

double poisson_weight(double mean_photons, Index n)
{
    if (mean_photons == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    const double k = static_cast<double>(n);
    return std::exp(-mean_photons + k * std::log(mean_photons) - std::lgamma(k + 1.0));
}

Index truncation_dim(double mean_photons, double tail_tol)
{
    require(mean_photons >= 0.0, "truncation_dim: mean photon number must be >= 0");
    require(tail_tol > 0.0 && tail_tol < 1.0, "truncation_dim: tail_tol must lie in (0,1)");
    Index N = 0;
    while (!(poisson_tail(mean_photons, N) < tail_tol)) {
        ++N;
    }
    return N + kGuardLevels;
}

ComplexVector coherent_amplitudes(std::complex<double> theta, Index n_max)
{
    require(n_max >= 0, "coherent_amplitudes: n_max must be >= 0");
    const double r2 = std::norm(theta);
    const double phase = std::arg(theta);
    ComplexVector amp(n_max + 1);
    for (Index n = 0; n <= n_max; ++n) {
        const double k = static_cast<double>(n);
        double mag = 0.0;
        if (r2 == 0.0) {
            mag = n == 0 ? 1.0 : 0.0;
        } else {
            mag = std::exp(0.5 * (k * std::log(r2) - std::lgamma(k + 1.0)) - 0.5 * r2);
        }
        amp(n) = std::polar(mag, k * phase);
    }
    amp /= amp.norm();
    return amp;
}

DensityMatrix coherent_state(std::complex<double> theta, Index n_max)
{
    return DensityMatrix::pure(coherent_amplitudes(theta, n_max));
}

DressedBlock dressed_block(Index n, const ModelParams& params)
{
    require(n >= 0, "dressed_block: n must be >= 0");
    const double free = params.omega0 * (static_cast<double>(n) + 0.5);
    const double rabi = rabi_frequency(n, params.g);
    DressedBlock b;
    b.n = n;
    b.phases = {free + rabi, free - rabi};
    const double h = std::numbers::sqrt2 / 2.0;
    b.vectors << h, h,
                 h, -h;
    return b;
}

ComplexMatrix propagator(double t, const ModelParams& params, Index n_max)
{
    require(std::isfinite(t), "propagator: t must be finite");
    require(n_max >= 0, "propagator: n_max must be >= 0");
    const Index dim = 2 * (n_max + 1);
    const std::complex<double> I(0.0, 1.0);
    ComplexMatrix U = ComplexMatrix::Zero(dim, dim);

    const Index g0 = basis_index(AtomLevel::Ground, 0, n_max);
    U(g0, g0) = std::exp(I * t * params.omega0 / 2.0);

    for (Index n = 0; n < n_max; ++n) {
        const DressedBlock b = dressed_block(n, params);
        Eigen::Matrix2cd block = Eigen::Matrix2cd::Zero();
        for (int j = 0; j < 2; ++j) {
            block += std::exp(-I * t * b.phases[static_cast<std::size_t>(j)]) *
                     (b.vectors.col(j) * b.vectors.col(j).adjoint());
        }
        const std::array<Index, 2> idx{basis_index(AtomLevel::Excited, n, n_max),
                                       basis_index(AtomLevel::Ground, n + 1, n_max)};
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                U(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]) = block(r, c);
            }
        }
    }

    const Index edge = basis_index(AtomLevel::Excited, n_max, n_max);
    U(edge, edge) = std::exp(-I * t * params.omega0 * (static_cast<double>(n_max) + 0.5));
    return U;
}

JcEvolution::JcEvolution(const AtomState& atom, const FieldConfig& field,
                         const ModelParams& params)
    : params_(params), n_max_(field.n_max)
{
    atom.validate();
    field.validate();
    params.validate();
    initial_ = DensityMatrix::product(atom.density(), coherent_state(field.theta, field.n_max));
}

DensityMatrix JcEvolution::state(double t) const
{
    // U_t has at most two non-zeros per row.
    const Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor> U =
        propagator(t, params_, n_max_).sparseView();
    const ComplexMatrix left = U * initial_.matrix();
    const ComplexMatrix rho = (U * left.adjoint()).adjoint();
    return DensityMatrix(rho);
}

DensityMatrix evolve(const AtomState& atom, const FieldConfig& field, const ModelParams& params,
                     double t)
{
    return JcEvolution(atom, field, params).state(t);
}

namespace {

struct TrigSums {
    double cos2 = 0;
    double sin2 = 0;
    double sin_double = 0;
};

TrigSums trig_sums(double t, double mean_photons, double g, Index n_max)
{
    TrigSums out;
    for (Index n = 0; n <= n_max; ++n) {
        const double w = poisson_weight(mean_photons, n);
        const double phase = rabi_frequency(n, g) * t;
        const double cs = std::cos(phase);
        const double sn = std::sin(phase);
        out.cos2 += w * cs * cs;
        out.sin2 += w * sn * sn;
        out.sin_double += w * std::sin(2.0 * phase);
    }
    return out;
}

} // namespace

double transition_probability_closed(double t, double mean_photons, double g, Index n_max)
{
    return trig_sums(t, mean_photons, g, n_max).cos2;
}

ClosedFormCoeffs closed_form_coeffs(double t, const AtomState& atom, const FieldConfig& field,
                                    const ModelParams& params)
{
    const TrigSums sums = trig_sums(t, field.mean_photons(), params.g, field.n_max);
    ClosedFormCoeffs k;
    k.c = sums.cos2;
    k.s = sums.sin2;
    k.e1 = atom.lambda0 * k.s + atom.lambda1 * k.c;
    k.e4 = atom.lambda0 * k.c + atom.lambda1 * k.s;
    k.e2_mag = 0.5 * std::abs(atom.lambda1 - atom.lambda0) * std::abs(sums.sin_double);
    k.e3_mag = k.e2_mag;
    return k;
}

} // namespace jcdem
