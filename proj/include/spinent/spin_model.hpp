#pragma once

#include "spinent/matrix.hpp"

#include <Eigen/Dense>

#include <vector>

namespace spinent {

enum class CouplingLaw {
	InverseCube,     ///< D_jk = d12 / |j-k|^3
	NearestNeighbor, ///< D_jk = d12 for |j-k| = 1, else 0
	Explicit,        ///< user supplied symmetric matrix
};

enum class DipolarModel {
	FullSecular, ///< ZZ plus transverse exchange
	ZzOnly,      ///< weak-coupling truncation, sum D_jk I^z_j I^z_k
};

/// Transverse part of the secular dipolar coupling.
enum class TransverseForm {
	FlipFlop,      ///< I+_j I-_k + I-_j I+_k, conserves total I^z
	DoubleQuantum, ///< I+_j I+_k + I-_j I-_k, for comparison runs only
};

/**
 * Physical description of a spin chain run.
 *
 * Frequencies are angular and expressed in units of the nearest-neighbour
 * coupling d12 (which defaults to 1). Sites are 1-based.
 */
struct ChainSpec {
	int n = 2;
	double d12 = 1.0;
	CouplingLaw coupling_law = CouplingLaw::InverseCube;
	/// n x n, symmetric, zero diagonal. Only read when coupling_law == Explicit.
	Eigen::MatrixXd explicit_couplings;
	std::vector<int> irradiated;
	/// One drive amplitude per irradiated site, or a single value shared by all of them.
	std::vector<double> omega1;
	/// Per-site resonance offsets; empty means all zero.
	std::vector<double> offsets;
	DipolarModel model = DipolarModel::FullSecular;
	/// Overall scale of the secular dipolar term.
	double kappa = 1.5;
	/// Weight of I^z_j I^z_k relative to the transverse term in the secular form.
	double zz_weight = 1.0;
	TransverseForm transverse = TransverseForm::FlipFlop;

	/// Throws ConfigError naming the first invalid field.
	void validate() const;
	/// Drive amplitude on `site` (0 when not irradiated).
	double drive_on(int site) const;
};

/// Single spin-1/2 operators. I^x = sigma^x / 2 etc.
struct SpinOperatorSet {
	ComplexMatrix ix;
	ComplexMatrix iy;
	ComplexMatrix iz;
	ComplexMatrix iplus;
	ComplexMatrix iminus;
};

const SpinOperatorSet& spin_half();

/// Pauli sigma^y, used by the spin-flip in the concurrence.
const ComplexMatrix& pauli_y();

/// identity x ... x op (at site k) x ... x identity on n spins.
ComplexMatrix site_operator(const ComplexMatrix& op, int k, int n);

/// a at site j times b at site k (j != k) without a dense matrix product.
ComplexMatrix pair_operator(const ComplexMatrix& a, int j, const ComplexMatrix& b, int k, int n);

/// Sum over k of I^z_k.
ComplexMatrix total_iz(int n);

/// Symmetric n x n matrix of D_jk.
Eigen::MatrixXd couplings(const ChainSpec& spec);

/// kappa * sum_{j<k} D_jk [w I^z_j I^z_k - (1/4) T_jk] with T the transverse form.
ComplexMatrix build_secular_dipolar(const ChainSpec& spec);

/// sum_{j<k} D_jk I^z_j I^z_k
ComplexMatrix build_zz(const ChainSpec& spec);

/// Rotating-frame Hamiltonian: drives along x on the irradiated sites, offsets along z,
/// plus the dipolar part selected by spec.model.
ComplexMatrix build_hamiltonian(const ChainSpec& spec);

} // namespace spinent
