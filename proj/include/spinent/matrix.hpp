#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spinent {

using Complex = std::complex<double>;

/**
 * Dense square complex matrix. Every operator and state in the library is
 * carried by one of these.
 *
 * Construction rejects empty, non-square and non-finite input, so a
 * ComplexMatrix in hand is always a well-formed dim x dim array of finite
 * numbers. Values are immutable once built.
 */
class ComplexMatrix {
public:
	explicit ComplexMatrix(Eigen::MatrixXcd entries);

	static ComplexMatrix identity(std::size_t dim);
	static ComplexMatrix zero(std::size_t dim);
	static ComplexMatrix diagonal(std::span<const Complex> values);
	static ComplexMatrix diagonal(std::initializer_list<Complex> values);
	/// Row-major list of dim*dim entries.
	static ComplexMatrix from_rows(std::size_t dim, std::initializer_list<Complex> entries);

	std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
	Complex operator()(std::size_t row, std::size_t col) const {
		return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
	}
	const Eigen::MatrixXcd& eigen() const noexcept { return m_; }

	ComplexMatrix adjoint() const;
	ComplexMatrix conjugate() const;
	Complex trace() const { return m_.trace(); }

	/// Largest absolute entry.
	double max_abs() const;
	double frobenius() const { return m_.norm(); }
	/// max |a_ij - conj(a_ji)|
	double hermiticity_defect() const;

	friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
	friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
	friend ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }

private:
	Eigen::MatrixXcd m_;
};

/// Commutator [a, b] = ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Max absolute entry of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Trace-one Hermitian matrix on a 2^n dimensional spin space.
 *
 * The constructor checks hermiticity and unit trace (to 1e-12). Positivity is
 * not checked eagerly because it needs a full eigendecomposition; psd_sqrt and
 * the spectral measures enforce it where it matters.
 */
class DensityMatrix {
public:
	explicit DensityMatrix(ComplexMatrix m);

	const ComplexMatrix& matrix() const noexcept { return m_; }
	std::size_t dim() const noexcept { return m_.dim(); }
	/// Number of spins, log2(dim).
	int sites() const noexcept { return sites_; }
	/// Tr(rho^2)
	double purity() const;

private:
	ComplexMatrix m_;
	int sites_ = 0;
};

/// Spectral decomposition h = V diag(eigenvalues) V^dagger, eigenvalues ascending.
struct HermitianEigen {
	Eigen::VectorXd eigenvalues;
	ComplexMatrix eigenvectors;
};

/// Tolerance used to certify an input as Hermitian.
inline constexpr double kHermitianTolerance = 1e-10;
/// Eigenvalues in [-kPsdTolerance, 0) are treated as roundoff and clamped to zero.
inline constexpr double kPsdTolerance = 1e-10;

/// Kronecker product; entry (i*b.dim+k, j*b.dim+l) = a(i,j) b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Throws NotHermitian if |h - h^dagger|_max >= 1e-10, ConvergenceFailure if the solver fails.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// exp(-i h t) through the spectral decomposition of h.
ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t);
ComplexMatrix evolve_unitary(const HermitianEigen& decomposition, double t);

/**
 * Reduced density matrix on the sites in `keep` (1-based, site 1 is the most
 * significant bit of the basis index). The result is ordered as `keep` is:
 * keep = {2, 1} yields the pair with the sites swapped.
 *
 * Throws SiteOutOfRange, DuplicateSite, or DimensionMismatch when rho is not
 * 2^n dimensional.
 */
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep, int n);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep, int n);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Throws NotPSD if an eigenvalue is below -1e-10.
ComplexMatrix psd_sqrt(const ComplexMatrix& rho);
inline ComplexMatrix psd_sqrt(const DensityMatrix& rho) { return psd_sqrt(rho.matrix()); }

} // namespace spinent
