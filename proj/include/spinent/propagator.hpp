#pragma once

#include "spinent/matrix.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace spinent {

/// Ascending, finite, non-negative sample times in units of 1/D12 (tau = D12 t).
class TimeGrid {
public:
	explicit TimeGrid(std::vector<double> points);
	/// `count` evenly spaced points from first to last inclusive.
	static TimeGrid linspace(double first, double last, std::size_t count);

	const std::vector<double>& points() const noexcept { return points_; }
	std::size_t size() const noexcept { return points_.size(); }
	double operator[](std::size_t i) const { return points_[i]; }

private:
	std::vector<double> points_;
};

struct EvolutionResult {
	TimeGrid grid;
	std::vector<DensityMatrix> states;
};

/**
 * Exact propagation under a time-independent Hamiltonian.
 *
 * The eigendecomposition of h is computed once at construction; each time
 * point is then evaluated independently as U(tau) rho0 U(tau)^dagger with
 * U(tau) = exp(-i h tau). Pure initial states are carried as a state vector
 * and expanded to a projector on output, which keeps dim 256 runs cheap.
 *
 * A Propagator is immutable after construction and may be shared across
 * threads.
 */
class Propagator {
public:
	explicit Propagator(const ComplexMatrix& h);

	const HermitianEigen& decomposition() const noexcept { return eig_; }
	std::size_t dim() const noexcept { return eig_.eigenvectors.dim(); }

	ComplexMatrix unitary(double tau) const { return evolve_unitary(eig_, tau); }

	/// State at a single time. Throws DimensionMismatch on a dimension mismatch.
	DensityMatrix state_at(const DensityMatrix& rho0, double tau) const;

	/// Calls visit(i, tau_i, rho(tau_i)) for each grid point in order without storing the states.
	void for_each(const DensityMatrix& rho0, const TimeGrid& grid,
	              const std::function<void(std::size_t, double, const DensityMatrix&)>& visit) const;

private:
	struct Prepared {
		// pure route: coefficients of the state vector in the eigenbasis
		std::optional<Eigen::VectorXcd> vector;
		// mixed route: rho0 in the eigenbasis
		Eigen::MatrixXcd matrix;
	};

	Prepared prepare(const DensityMatrix& rho0) const;
	DensityMatrix advance(const Prepared& prepared, double tau) const;

	HermitianEigen eig_;
};

/// Evolves rho0 over every grid point and keeps all states.
EvolutionResult evolve(const ComplexMatrix& h, const DensityMatrix& rho0, const TimeGrid& grid);

} // namespace spinent
