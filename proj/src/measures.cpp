#include "spinent/measures.hpp"

#include "spinent/errors.hpp"
#include "spinent/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spinent {

namespace {

constexpr double kImaginaryTolerance = 1e-11;
constexpr double kEigenvalueFloor = 1e-12;

// Clamps values within kClampTolerance of [lo, hi]; anything further out is a bug upstream.
double clamp_checked(double value, double lo, double hi, const char* what) {
	if (!std::isfinite(value) || value < lo - kClampTolerance || value > hi + kClampTolerance) {
		throw DomainError(std::string(what) + " value " + std::to_string(value) + " outside [" + std::to_string(lo) +
		                  ", " + std::to_string(hi) + "]");
	}
	return std::clamp(value, lo, hi);
}

double require_magnitude(double p1) {
	if (!std::isfinite(p1) || p1 < -kClampTolerance || p1 > 0.5 + kClampTolerance) {
		throw DomainError("polarization magnitude " + std::to_string(p1) + " outside [0, 1/2]");
	}
	return std::clamp(p1, 0.0, 0.5);
}

// -x log2 x with 0 log 0 = 0
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double real_trace(const ComplexMatrix& a, const ComplexMatrix& b) {
	const Complex value = trace_of_product(a, b);
	if (std::abs(value.imag()) > kImaginaryTolerance) {
		throw NotHermitian("expectation value has imaginary part " + std::to_string(value.imag()));
	}
	return value.real();
}

const ComplexMatrix& spin_flip() {
	static const ComplexMatrix yy = kron(pauli_y(), pauli_y());
	return yy;
}

} // namespace

PolarizationVector polarization(const DensityMatrix& rho, int k, int n) {
	if (k < 1 || k > n) {
		throw SiteOutOfRange("site " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
	}
	const DensityMatrix single = partial_trace(rho, {k}, n);
	const SpinOperatorSet& s = spin_half();
	PolarizationVector p;
	p.px = real_trace(single.matrix(), s.ix);
	p.py = real_trace(single.matrix(), s.iy);
	p.pz = real_trace(single.matrix(), s.iz);
	p.magnitude = std::sqrt(p.px * p.px + p.py * p.py + p.pz * p.pz);
	return p;
}

double total_polarization(const DensityMatrix& rho, int n) {
	double total = 0.0;
	for (int k = 1; k <= n; ++k) {
		total += polarization(rho, k, n).magnitude;
	}
	return total;
}

double total_polarization_z(const DensityMatrix& rho, int n) {
	double total = 0.0;
	for (int k = 1; k <= n; ++k) {
		total += polarization(rho, k, n).pz;
	}
	return total;
}

double concurrence(const DensityMatrix& pair) {
	if (pair.dim() != 4) {
		throw DimensionMismatch("concurrence needs a two-qubit state, got dimension " + std::to_string(pair.dim()));
	}
	const ComplexMatrix root = psd_sqrt(pair);
	// sqrt(rho~) = (sy x sy) sqrt(rho)* (sy x sy)
	const ComplexMatrix root_flipped = spin_flip() * root.conjugate() * spin_flip();
	const Eigen::MatrixXcd product = (root * root_flipped).eigen();
	Eigen::JacobiSVD<Eigen::MatrixXcd> svd(product);
	const Eigen::VectorXd& lambda = svd.singularValues(); // descending
	const double c = lambda(0) - lambda(1) - lambda(2) - lambda(3);
	return std::clamp(clamp_checked(c, -1.0, 1.0, "concurrence"), 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho, int m, int site, int n) {
	if (m == site) {
		throw DuplicateSite("concurrence needs two distinct sites, got " + std::to_string(m) + " twice");
	}
	return concurrence(partial_trace(rho, {m, site}, n));
}

double concurrence_from_polarization(double p1) {
	const double p = require_magnitude(p1);
	return std::sqrt((1.0 - 2.0 * p) * (1.0 + 2.0 * p));
}

double von_neumann_entropy(const DensityMatrix& rho) {
	const HermitianEigen eig = hermitian_eigen(rho.matrix());
	if (eig.eigenvalues(0) < -kPsdTolerance) {
		throw NotPSD("reduced state has eigenvalue " + std::to_string(eig.eigenvalues(0)));
	}
	double s = 0.0;
	for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
		const double lambda = eig.eigenvalues(k);
		if (lambda > kEigenvalueFloor) {
			s -= xlog2x(lambda);
		}
	}
	return clamp_checked(s, 0.0, static_cast<double>(rho.sites()), "entropy");
}

double entanglement_entropy(const DensityMatrix& rho, std::span<const int> subsystem, int n) {
	return von_neumann_entropy(partial_trace(rho, subsystem, n));
}

double entanglement_entropy(const DensityMatrix& rho, std::initializer_list<int> subsystem, int n) {
	return entanglement_entropy(rho, std::span<const int>(subsystem.begin(), subsystem.size()), n);
}

double entropy_from_concurrence(double c) {
	if (!std::isfinite(c) || c < -kClampTolerance || c > 1.0 + kClampTolerance) {
		throw DomainError("concurrence " + std::to_string(c) + " outside [0, 1]");
	}
	const double cc = std::clamp(c, 0.0, 1.0);
	const double x = 0.5 * (1.0 + std::sqrt((1.0 - cc) * (1.0 + cc)));
	return clamp_checked(-xlog2x(x) - xlog2x(1.0 - x), 0.0, 1.0, "entropy");
}

double entropy_from_polarization(double p1) {
	const double p = require_magnitude(p1);
	const double up = 1.0 + 2.0 * p;
	const double down = 1.0 - 2.0 * p;
	return clamp_checked(1.0 - 0.5 * xlog2x(up) - 0.5 * xlog2x(down), 0.0, 1.0, "entropy");
}

double noninteracting_entropy(double p) {
	if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
		throw DomainError("polarization " + std::to_string(p) + " outside [0, 1]");
	}
	auto xlnx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
	return 2.0 * std::numbers::ln2 - xlnx(1.0 + p) - xlnx(1.0 - p);
}

EntanglementSample entanglement_sample(const DensityMatrix& rho, int m, int site, int n) {
	const DensityMatrix pair = partial_trace(rho, {m, site}, n);
	const double p1 = polarization(rho, m, n).magnitude;
	EntanglementSample sample;
	sample.concurrence = concurrence(pair);
	sample.entropy = entanglement_entropy(rho, {m}, n);
	sample.c_from_polarization = concurrence_from_polarization(p1);
	sample.s_from_polarization = entropy_from_polarization(p1);
	return sample;
}

} // namespace spinent
