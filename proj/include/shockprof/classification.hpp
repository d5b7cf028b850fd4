#pragma once

#include <complex>

#include "shockprof/model_core.hpp"

namespace shockprof {

/// Coefficients of the discriminant polynomial P(z, eps) = a3 z^3 + a2 z^2 + a1 z + a0,
/// whose sign at z = v^2 is the sign of the node/focus discriminant.
struct PCoefficients {
    double a0, a1, a2, a3;
};

PCoefficients p_coefficients(double eps);
double p_eval(double z, double eps);

/// Critical dissipation value where the middle root reaches 1/8 (~0.710290).
double epsilon_hat();

/// Reduced discriminant factor of P in z: disc_z(P) = 1296 eps^5 (4 - eps)^3 * this.
double discriminant_factor(double eps);

/// Sorted real roots of P(., eps); three distinct roots for eps in (0, 1].
struct CubicRoots {
    double w1, w2, w3;
    double eps;
};

CubicRoots cubic_roots(double eps);

/// Upper boundary of the lower node region, defined on (0, 1].
double separatrix_q1(double eps);
/// Lower boundary of the upper node region, defined on (0, epsilon_hat()).
double separatrix_q2(double eps);

enum class RegionLabel { NodeBelow, Focus, NodeAbove, Separatrix1, Separatrix2 };

const char* to_string(RegionLabel r);
bool is_node(RegionLabel r);

inline constexpr double separatrix_band = 1e-10;

/// Region of (eps, q_tilde) in (0,1] x (3/4,1). Computed by both the sign of
/// P(v+^2, eps) and comparison against the separatrices; InternalInconsistency
/// if they disagree outside the separatrix band.
RegionLabel classify(double eps, double q_tilde);

/// Eigenvalues of B#(psi, eps)^-1 A(psi).
struct Spectrum {
    std::complex<double> lambda1; // larger real part (or positive imaginary part)
    std::complex<double> lambda2;
    double trace;
    double det;
    double discriminant; // trace^2 - 4 det

    bool is_saddle() const { return lambda1.imag() == 0.0 && lambda1.real() > 0.0 && lambda2.real() < 0.0; }
    bool is_attractor() const { return lambda1.real() < 0.0 && lambda2.real() < 0.0; }
    bool is_complex() const { return discriminant < 0.0; }
};

Spectrum spectrum_of(const Mat2& m);
Spectrum spectrum_from(double trace, double det);

/// Spectrum of B#^-1 A at psi, from the closed forms of det B# and
/// trace(adj(B#) A). Throws SingularBsharp on the singular locus.
Spectrum local_spectrum(GodunovState psi, double eps);

} // namespace shockprof
