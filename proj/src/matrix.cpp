#include "spinent/matrix.hpp"

#include "spinent/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace spinent {

namespace {

constexpr double kDensityTolerance = 1e-12;

void require_finite(const Eigen::MatrixXcd& m) {
	for (Eigen::Index j = 0; j < m.cols(); ++j) {
		for (Eigen::Index i = 0; i < m.rows(); ++i) {
			const Complex z = m(i, j);
			if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
				throw NonFiniteValue("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
				                     ") is not finite");
			}
		}
	}
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
	if (a.dim() != b.dim()) {
		throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a.dim()) + " and " +
		                        std::to_string(b.dim()) + " differ");
	}
}

} // namespace

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
	if (m_.rows() < 1 || m_.rows() != m_.cols()) {
		throw DimensionMismatch("matrix must be square with dim >= 1, got " + std::to_string(m_.rows()) + "x" +
		                        std::to_string(m_.cols()));
	}
	require_finite(m_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
	const auto d = static_cast<Eigen::Index>(dim);
	return ComplexMatrix(Eigen::MatrixXcd::Identity(d, d));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) {
	const auto d = static_cast<Eigen::Index>(dim);
	return ComplexMatrix(Eigen::MatrixXcd::Zero(d, d));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
	const auto d = static_cast<Eigen::Index>(values.size());
	Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
	for (Eigen::Index i = 0; i < d; ++i) {
		m(i, i) = values[static_cast<std::size_t>(i)];
	}
	return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> values) {
	return diagonal(std::span<const Complex>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::from_rows(std::size_t dim, std::initializer_list<Complex> entries) {
	if (entries.size() != dim * dim) {
		throw DimensionMismatch("expected " + std::to_string(dim * dim) + " entries, got " +
		                        std::to_string(entries.size()));
	}
	const auto d = static_cast<Eigen::Index>(dim);
	Eigen::MatrixXcd m(d, d);
	auto it = entries.begin();
	for (Eigen::Index i = 0; i < d; ++i) {
		for (Eigen::Index j = 0; j < d; ++j) {
			m(i, j) = *it++;
		}
	}
	return ComplexMatrix(std::move(m));
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(m_.adjoint()); }

ComplexMatrix ComplexMatrix::conjugate() const { return ComplexMatrix(m_.conjugate()); }

double ComplexMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

double ComplexMatrix::hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_dim(a, b, "sum");
	return ComplexMatrix(a.m_ + b.m_);
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_dim(a, b, "difference");
	return ComplexMatrix(a.m_ - b.m_);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_dim(a, b, "product");
	return ComplexMatrix(a.m_ * b.m_);
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return ComplexMatrix(s * a.m_); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_dim(a, b, "comparison");
	return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
	require_same_dim(a, b, "trace of product");
	// Tr(ab) = sum_ij a_ij b_ji
	return (a.eigen().array() * b.eigen().transpose().array()).sum();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
	const std::size_t dim = m_.dim();
	if (!std::has_single_bit(dim)) {
		throw DimensionMismatch("density matrix dimension " + std::to_string(dim) + " is not a power of two");
	}
	sites_ = std::countr_zero(dim);
	if (const double defect = m_.hermiticity_defect(); defect > kDensityTolerance) {
		throw NotHermitian("density matrix is not Hermitian (defect " + std::to_string(defect) + ")");
	}
	const Complex tr = m_.trace();
	if (std::abs(tr - Complex(1.0, 0.0)) > kDensityTolerance) {
		throw DomainError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
	}
}

double DensityMatrix::purity() const { return m_.eigen().squaredNorm(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
	const auto da = static_cast<Eigen::Index>(a.dim());
	const auto db = static_cast<Eigen::Index>(b.dim());
	Eigen::MatrixXcd out(da * db, da * db);
	for (Eigen::Index i = 0; i < da; ++i) {
		for (Eigen::Index j = 0; j < da; ++j) {
			out.block(i * db, j * db, db, db) = a.eigen()(i, j) * b.eigen();
		}
	}
	return ComplexMatrix(std::move(out));
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
	if (const double defect = h.hermiticity_defect(); !(defect < kHermitianTolerance)) {
		throw NotHermitian("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
	}
	const Eigen::MatrixXcd symmetric = 0.5 * (h.eigen() + h.eigen().adjoint());
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(symmetric);
	if (solver.info() != Eigen::Success) {
		throw ConvergenceFailure("Hermitian eigensolver did not converge");
	}
	return HermitianEigen{solver.eigenvalues(), ComplexMatrix(solver.eigenvectors())};
}

ComplexMatrix evolve_unitary(const HermitianEigen& decomposition, double t) {
	const Eigen::MatrixXcd& v = decomposition.eigenvectors.eigen();
	Eigen::VectorXcd phases(decomposition.eigenvalues.size());
	for (Eigen::Index k = 0; k < phases.size(); ++k) {
		phases(k) = std::polar(1.0, -decomposition.eigenvalues(k) * t);
	}
	return ComplexMatrix(v * phases.asDiagonal() * v.adjoint());
}

ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t) { return evolve_unitary(hermitian_eigen(h), t); }

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep, int n) {
	if (n < 1 || rho.dim() != (std::size_t{1} << n)) {
		throw DimensionMismatch("density matrix of dimension " + std::to_string(rho.dim()) +
		                        " does not describe " + std::to_string(n) + " spins");
	}
	std::vector<bool> kept(static_cast<std::size_t>(n) + 1, false);
	for (const int site : keep) {
		if (site < 1 || site > n) {
			throw SiteOutOfRange("site " + std::to_string(site) + " outside [1, " + std::to_string(n) + "]");
		}
		if (kept[static_cast<std::size_t>(site)]) {
			throw DuplicateSite("site " + std::to_string(site) + " listed twice");
		}
		kept[static_cast<std::size_t>(site)] = true;
	}
	std::vector<int> env;
	for (int site = 1; site <= n; ++site) {
		if (!kept[static_cast<std::size_t>(site)]) {
			env.push_back(site);
		}
	}

	const std::size_t keep_dim = std::size_t{1} << keep.size();
	const std::size_t env_dim = std::size_t{1} << env.size();
	// bit of `site` within a full basis index
	auto shift = [n](int site) { return n - site; };

	std::vector<std::size_t> keep_part(keep_dim, 0);
	for (std::size_t a = 0; a < keep_dim; ++a) {
		for (std::size_t q = 0; q < keep.size(); ++q) {
			const std::size_t bit = (a >> (keep.size() - 1 - q)) & 1U;
			keep_part[a] |= bit << shift(keep[q]);
		}
	}
	std::vector<std::size_t> env_part(env_dim, 0);
	for (std::size_t e = 0; e < env_dim; ++e) {
		for (std::size_t q = 0; q < env.size(); ++q) {
			const std::size_t bit = (e >> (env.size() - 1 - q)) & 1U;
			env_part[e] |= bit << shift(env[q]);
		}
	}

	const Eigen::MatrixXcd& full = rho.matrix().eigen();
	const auto kd = static_cast<Eigen::Index>(keep_dim);
	Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(kd, kd);
	for (std::size_t a = 0; a < keep_dim; ++a) {
		for (std::size_t b = 0; b < keep_dim; ++b) {
			Complex acc = 0.0;
			for (const std::size_t e : env_part) {
				acc += full(static_cast<Eigen::Index>(keep_part[a] | e), static_cast<Eigen::Index>(keep_part[b] | e));
			}
			out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
		}
	}
	return DensityMatrix(ComplexMatrix(std::move(out)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep, int n) {
	return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()), n);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& rho) {
	const HermitianEigen eig = hermitian_eigen(rho);
	if (eig.eigenvalues(0) < -kPsdTolerance) {
		throw NotPSD("matrix has eigenvalue " + std::to_string(eig.eigenvalues(0)) + " below -1e-10");
	}
	const Eigen::VectorXd roots = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
	const Eigen::MatrixXcd& v = eig.eigenvectors.eigen();
	const Eigen::MatrixXcd root = v * roots.cast<Complex>().asDiagonal() * v.adjoint();
	return ComplexMatrix(0.5 * (root + root.adjoint()));
}

} // namespace spinent
