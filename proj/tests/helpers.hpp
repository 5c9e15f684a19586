#pragma once

#include "spinent/matrix.hpp"

#include <cmath>
#include <random>

namespace spinent::testing {

inline constexpr Complex kI{0.0, 1.0};

inline ComplexMatrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
	std::normal_distribution<double> nd;
	Eigen::MatrixXcd m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
	for (Eigen::Index i = 0; i < m.rows(); ++i) {
		for (Eigen::Index j = 0; j < m.cols(); ++j) {
			m(i, j) = Complex(nd(rng), nd(rng));
		}
	}
	return ComplexMatrix(std::move(m));
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
	const ComplexMatrix a = random_matrix(dim, rng);
	return Complex(0.5) * (a + a.adjoint());
}

/// A A^dagger normalised to unit trace.
inline DensityMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
	const ComplexMatrix a = random_matrix(dim, rng);
	Eigen::MatrixXcd rho = a.eigen() * a.eigen().adjoint();
	rho /= rho.trace();
	rho = 0.5 * (rho + rho.adjoint()).eval();
	return DensityMatrix(ComplexMatrix(std::move(rho)));
}

inline Eigen::VectorXcd random_state_vector(std::size_t dim, std::mt19937_64& rng) {
	std::normal_distribution<double> nd;
	Eigen::VectorXcd psi(static_cast<Eigen::Index>(dim));
	for (Eigen::Index i = 0; i < psi.size(); ++i) {
		psi(i) = Complex(nd(rng), nd(rng));
	}
	return psi.normalized();
}

inline DensityMatrix projector(const Eigen::VectorXcd& psi) {
	return DensityMatrix(ComplexMatrix(psi * psi.adjoint()));
}

} // namespace spinent::testing
