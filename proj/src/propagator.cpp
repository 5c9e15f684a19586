#include "spinent/propagator.hpp"

#include "spinent/errors.hpp"

#include <cmath>
#include <string>

namespace spinent {

namespace {

// A density matrix closer than this to unit purity is propagated as a state vector.
constexpr double kPureTolerance = 1e-12;

} // namespace

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
	if (points_.empty()) {
		throw DomainError("time grid is empty");
	}
	for (std::size_t i = 0; i < points_.size(); ++i) {
		if (!std::isfinite(points_[i])) {
			throw DomainError("time grid point " + std::to_string(i) + " is not finite");
		}
		if (i > 0 && !(points_[i] > points_[i - 1])) {
			throw DomainError("time grid must be strictly ascending at point " + std::to_string(i));
		}
	}
	if (points_.front() < 0.0) {
		throw DomainError("time grid must start at tau >= 0");
	}
}

TimeGrid TimeGrid::linspace(double first, double last, std::size_t count) {
	if (count == 0) {
		throw DomainError("time grid needs at least one point");
	}
	if (count == 1) {
		return TimeGrid({first});
	}
	std::vector<double> pts(count);
	const double step = (last - first) / static_cast<double>(count - 1);
	for (std::size_t i = 0; i < count; ++i) {
		pts[i] = first + step * static_cast<double>(i);
	}
	pts.back() = last;
	return TimeGrid(std::move(pts));
}

Propagator::Propagator(const ComplexMatrix& h) : eig_(hermitian_eigen(h)) {}

Propagator::Prepared Propagator::prepare(const DensityMatrix& rho0) const {
	if (rho0.dim() != dim()) {
		throw DimensionMismatch("state dimension " + std::to_string(rho0.dim()) +
		                        " does not match Hamiltonian dimension " + std::to_string(dim()));
	}
	const Eigen::MatrixXcd& v = eig_.eigenvectors.eigen();
	const Eigen::MatrixXcd& rho = rho0.matrix().eigen();
	Prepared out;
	if (std::abs(rho0.purity() - 1.0) < kPureTolerance) {
		// rho = |psi><psi| so any column with a non-zero diagonal is psi up to a phase
		Eigen::Index pivot = 0;
		rho.diagonal().real().maxCoeff(&pivot);
		const Eigen::VectorXcd psi = rho.col(pivot) / std::sqrt(rho(pivot, pivot).real());
		out.vector = v.adjoint() * psi;
	} else {
		out.matrix = v.adjoint() * rho * v;
	}
	return out;
}

DensityMatrix Propagator::advance(const Prepared& prepared, double tau) const {
	const Eigen::MatrixXcd& v = eig_.eigenvectors.eigen();
	const Eigen::VectorXd& energies = eig_.eigenvalues;
	const Eigen::Index d = energies.size();
	Eigen::VectorXcd phases(d);
	for (Eigen::Index k = 0; k < d; ++k) {
		phases(k) = std::polar(1.0, -energies(k) * tau);
	}
	if (prepared.vector) {
		const Eigen::VectorXcd psi = v * (phases.array() * prepared.vector->array()).matrix();
		return DensityMatrix(ComplexMatrix(psi * psi.adjoint()));
	}
	const Eigen::MatrixXcd rotated = phases.asDiagonal() * prepared.matrix * phases.conjugate().asDiagonal();
	Eigen::MatrixXcd rho = v * rotated * v.adjoint();
	rho = 0.5 * (rho + rho.adjoint()).eval();
	return DensityMatrix(ComplexMatrix(std::move(rho)));
}

DensityMatrix Propagator::state_at(const DensityMatrix& rho0, double tau) const {
	const Prepared prepared = prepare(rho0);
	// U(0) is the identity; skip the round trip through the eigenbasis
	return tau == 0.0 ? rho0 : advance(prepared, tau);
}

void Propagator::for_each(const DensityMatrix& rho0, const TimeGrid& grid,
                          const std::function<void(std::size_t, double, const DensityMatrix&)>& visit) const {
	const Prepared prepared = prepare(rho0);
	for (std::size_t i = 0; i < grid.size(); ++i) {
		if (grid[i] == 0.0) {
			visit(i, grid[i], rho0);
		} else {
			visit(i, grid[i], advance(prepared, grid[i]));
		}
	}
}

EvolutionResult evolve(const ComplexMatrix& h, const DensityMatrix& rho0, const TimeGrid& grid) {
	const Propagator propagator(h);
	EvolutionResult result{grid, {}};
	result.states.reserve(grid.size());
	propagator.for_each(rho0, grid, [&](std::size_t, double, const DensityMatrix& rho) { result.states.push_back(rho); });
	return result;
}

} // namespace spinent
