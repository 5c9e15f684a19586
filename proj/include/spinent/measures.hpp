#pragma once

#include "spinent/matrix.hpp"

#include <span>

namespace spinent {

/// Expectation values <I^x>, <I^y>, <I^z> of one spin.
struct PolarizationVector {
	double px = 0.0;
	double py = 0.0;
	double pz = 0.0;
	double magnitude = 0.0;
};

/// Entanglement of one spin pair, computed from the state and predicted from the polarization.
struct EntanglementSample {
	double concurrence = 0.0;
	double entropy = 0.0;
	double c_from_polarization = 0.0;
	double s_from_polarization = 0.0;
};

/// Values within this distance outside [0, 1] are treated as roundoff and clamped.
inline constexpr double kClampTolerance = 1e-10;

/// Polarization of site k (1-based). Throws SiteOutOfRange.
PolarizationVector polarization(const DensityMatrix& rho, int k, int n);

/// Sum over sites of the polarization magnitude.
double total_polarization(const DensityMatrix& rho, int n);

/// Sum over sites of <I^z_k>; conserved by the flip-flop Hamiltonian without drive.
double total_polarization_z(const DensityMatrix& rho, int n);

/**
 * Wootters concurrence of the pair (m, site) after tracing out the rest.
 *
 * The spin-flipped state is (sigma^y x sigma^y) rho* (sigma^y x sigma^y) with
 * the conjugate taken in the computational basis. The values lambda_k are the
 * singular values of sqrt(rho) sqrt(rho~), whose squares are the eigenvalues
 * of the Hermitian matrix sqrt(rho) rho~ sqrt(rho); this never touches a
 * non-symmetric eigensolver.
 */
double concurrence(const DensityMatrix& rho, int m, int site, int n);

/// Concurrence of a two-qubit (4 x 4) density matrix.
double concurrence(const DensityMatrix& pair);

/// sqrt(1 - (2 p)^2) for a single-spin polarization magnitude p in [0, 1/2].
double concurrence_from_polarization(double p1);

/// -Tr(rho_r log2 rho_r) of the reduction to `subsystem`.
double entanglement_entropy(const DensityMatrix& rho, std::span<const int> subsystem, int n);
double entanglement_entropy(const DensityMatrix& rho, std::initializer_list<int> subsystem, int n);

/// Base-2 entropy of a density matrix spectrum; eigenvalues <= 1e-12 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);

/// Binary entropy of x = (1 + sqrt(1 - c^2)) / 2.
double entropy_from_concurrence(double c);

/// 1 - (1+2p)/2 log2(1+2p) - (1-2p)/2 log2(1-2p)
double entropy_from_polarization(double p1);

/// 2 ln 2 - (1+p) ln(1+p) - (1-p) ln(1-p), natural logarithm, p in [0, 1].
double noninteracting_entropy(double p);

/// All four pair quantities; the polarization side uses site m.
EntanglementSample entanglement_sample(const DensityMatrix& rho, int m, int site, int n);

} // namespace spinent
