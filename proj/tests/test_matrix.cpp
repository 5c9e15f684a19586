#include "helpers.hpp"

#include "spinent/errors.hpp"
#include "spinent/matrix.hpp"
#include "spinent/spin_model.hpp"
#include "spinent/states.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

using namespace spinent;
using spinent::testing::kI;

namespace {

// Determinant of a small real matrix by partial-pivot elimination; test-only oracle.
double determinant(Eigen::MatrixXd a) {
	const Eigen::Index n = a.rows();
	double det = 1.0;
	for (Eigen::Index c = 0; c < n; ++c) {
		Eigen::Index pivot = c;
		for (Eigen::Index r = c + 1; r < n; ++r) {
			if (std::abs(a(r, c)) > std::abs(a(pivot, c))) {
				pivot = r;
			}
		}
		if (a(pivot, c) == 0.0) {
			return 0.0;
		}
		if (pivot != c) {
			a.row(pivot).swap(a.row(c));
			det = -det;
		}
		det *= a(c, c);
		for (Eigen::Index r = c + 1; r < n; ++r) {
			a.row(r) -= (a(r, c) / a(c, c)) * a.row(c);
		}
	}
	return det;
}

// Real roots of det(h - x I) on [lo, hi] by scanning for sign changes and bisecting.
std::vector<double> characteristic_roots(const Eigen::MatrixXd& h, double lo, double hi) {
	const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(h.rows(), h.cols());
	auto p = [&](double x) { return determinant(h - x * id); };
	std::vector<double> roots;
	const double step = 1e-3;
	double x0 = lo;
	double p0 = p(x0);
	for (double x1 = lo + step; x1 <= hi; x1 += step) {
		const double p1 = p(x1);
		if (p0 == 0.0) {
			roots.push_back(x0);
		} else if (p0 * p1 < 0.0) {
			double a = x0;
			double b = x1;
			for (int i = 0; i < 200; ++i) {
				const double m = 0.5 * (a + b);
				(p(a) * p(m) <= 0.0 ? b : a) = m;
			}
			roots.push_back(0.5 * (a + b));
		}
		x0 = x1;
		p0 = p1;
	}
	return roots;
}

// exp(-i h t) by Taylor series; test-only oracle for small, well-scaled inputs.
Eigen::MatrixXcd series_exp(const Eigen::MatrixXcd& h, double t) {
	const Eigen::MatrixXcd a = -kI * t * h;
	Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
	Eigen::MatrixXcd sum = term;
	for (int k = 1; k < 80; ++k) {
		term = (term * a / static_cast<double>(k)).eval();
		sum += term;
	}
	return sum;
}

} // namespace

TEST_CASE("ComplexMatrix rejects malformed input") {
	CHECK_THROWS_AS(ComplexMatrix(Eigen::MatrixXcd(2, 3)), DimensionMismatch);
	CHECK_THROWS_AS(ComplexMatrix(Eigen::MatrixXcd(0, 0)), DimensionMismatch);
	Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
	bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
	CHECK_THROWS_AS(ComplexMatrix{bad}, NonFiniteValue);
	bad(0, 1) = Complex(0.0, std::numeric_limits<double>::infinity());
	CHECK_THROWS_AS(ComplexMatrix{bad}, NonFiniteValue);
}

TEST_CASE("kron") {
	SUBCASE("identity") {
		CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4)) ==
		      0.0);
	}
	SUBCASE("diagonal") {
		const ComplexMatrix k = kron(ComplexMatrix::diagonal({1.0, -1.0}), ComplexMatrix::identity(2));
		CHECK(max_abs_diff(k, ComplexMatrix::diagonal({1.0, 1.0, -1.0, -1.0})) == 0.0);
	}
	SUBCASE("sigma_y x sigma_y is antidiagonal (-1, 1, 1, -1)") {
		// (0 -i; i 0) x (0 -i; i 0): row 0 picks (-i)(-i) = -1 at column 3, etc.
		const ComplexMatrix expected =
		    ComplexMatrix::from_rows(4, {0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0});
		CHECK(max_abs_diff(kron(pauli_y(), pauli_y()), expected) == 0.0);
	}
	SUBCASE("index layout") {
		std::mt19937_64 rng(7);
		const ComplexMatrix a = testing::random_matrix(2, rng);
		const ComplexMatrix b = testing::random_matrix(3, rng);
		const ComplexMatrix k = kron(a, b);
		REQUIRE(k.dim() == 6);
		for (std::size_t i = 0; i < 2; ++i)
			for (std::size_t j = 0; j < 2; ++j)
				for (std::size_t p = 0; p < 3; ++p)
					for (std::size_t q = 0; q < 3; ++q)
						CHECK(k(i * 3 + p, j * 3 + q) == a(i, j) * b(p, q));
	}
}

TEST_CASE("kron properties on random inputs") {
	std::mt19937_64 rng(42);
	for (int trial = 0; trial < 50; ++trial) {
		const ComplexMatrix a = testing::random_matrix(2, rng);
		const ComplexMatrix b = testing::random_matrix(2, rng);
		const ComplexMatrix c = testing::random_matrix(2, rng);
		CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-14);
		CHECK(std::abs(kron(a, b).trace() - a.trace() * b.trace()) < 1e-12);
	}
}

TEST_CASE("hermitian_eigen") {
	SUBCASE("diagonal input sorts ascending") {
		const HermitianEigen e = hermitian_eigen(ComplexMatrix::diagonal({3.0, 1.0, 2.0}));
		CHECK(e.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-15));
		CHECK(e.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-15));
		CHECK(e.eigenvalues(2) == doctest::Approx(3.0).epsilon(1e-15));
	}
	SUBCASE("pauli x") {
		const HermitianEigen e = hermitian_eigen(ComplexMatrix::from_rows(2, {0, 1, 1, 0}));
		CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
		CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
	}
	SUBCASE("two-spin Hamiltonian matches characteristic polynomial roots") {
		ChainSpec spec;
		spec.n = 2;
		spec.irradiated = {1, 2};
		spec.omega1 = {0.5};
		const ComplexMatrix h = build_hamiltonian(spec);
		REQUIRE(h.eigen().imag().cwiseAbs().maxCoeff() == 0.0);
		const std::vector<double> roots = characteristic_roots(h.eigen().real(), -3.0, 3.0);
		REQUIRE(roots.size() == 4);
		const HermitianEigen e = hermitian_eigen(h);
		for (std::size_t k = 0; k < 4; ++k) {
			CHECK(std::abs(e.eigenvalues(static_cast<Eigen::Index>(k)) - roots[k]) < 1e-10);
		}
	}
	SUBCASE("decomposition invariants on random Hermitian matrices") {
		std::mt19937_64 rng(3);
		for (std::size_t dim : {1u, 2u, 4u, 8u, 16u, 64u}) {
			const ComplexMatrix h = testing::random_hermitian(dim, rng);
			const HermitianEigen e = hermitian_eigen(h);
			const Eigen::MatrixXcd& v = e.eigenvectors.eigen();
			const auto d = static_cast<Eigen::Index>(dim);
			CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
			const Eigen::MatrixXcd back = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
			CHECK((back - h.eigen()).norm() / h.frobenius() < 1e-10);
			for (Eigen::Index k = 1; k < d; ++k) {
				CHECK(e.eigenvalues(k) >= e.eigenvalues(k - 1));
			}
		}
	}
	SUBCASE("non-Hermitian input is rejected") {
		CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::from_rows(2, {0, 1, 0, 0})), NotHermitian);
		CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::from_rows(2, {0, 1.0 + 1e-9, 1, 0})), NotHermitian);
	}
}

TEST_CASE("evolve_unitary") {
	std::mt19937_64 rng(11);
	const ComplexMatrix h = testing::random_hermitian(4, rng);

	SUBCASE("t = 0 is the identity") { CHECK(max_abs_diff(evolve_unitary(h, 0.0), ComplexMatrix::identity(4)) < 1e-14); }
	SUBCASE("diagonal generator") {
		const double w = 1.7;
		const double t = 0.9;
		const ComplexMatrix u = evolve_unitary(ComplexMatrix::diagonal({w / 2, -w / 2}), t);
		CHECK(std::abs(u(0, 0) - std::polar(1.0, -w * t / 2)) < 1e-15);
		CHECK(std::abs(u(1, 1) - std::polar(1.0, w * t / 2)) < 1e-15);
		CHECK(std::abs(u(0, 1)) < 1e-15);
	}
	SUBCASE("half sigma_x for t = pi is -i sigma_x") {
		const ComplexMatrix sx_half = spin_half().ix;
		const ComplexMatrix u = evolve_unitary(sx_half, std::numbers::pi);
		const ComplexMatrix expected = ComplexMatrix::from_rows(2, {0, -kI, -kI, 0});
		CHECK(max_abs_diff(u, expected) < 1e-14);
		CHECK((series_exp(sx_half.eigen(), std::numbers::pi) - u.eigen()).cwiseAbs().maxCoeff() < 1e-13);
	}
	SUBCASE("agrees with the Taylor series oracle") {
		const Eigen::MatrixXcd reference = series_exp(h.eigen(), 0.7);
		CHECK((reference - evolve_unitary(h, 0.7).eigen()).cwiseAbs().maxCoeff() < 1e-12);
	}
	SUBCASE("unitarity and group law") {
		const ComplexMatrix u1 = evolve_unitary(h, 0.37);
		const ComplexMatrix u2 = evolve_unitary(h, 1.91);
		CHECK(max_abs_diff(u1.adjoint() * u1, ComplexMatrix::identity(4)) < 1e-10);
		CHECK(max_abs_diff(u1 * u2, evolve_unitary(h, 0.37 + 1.91)) < 1e-10);
	}
}

TEST_CASE("partial_trace") {
	SUBCASE("product state factors") {
		const DensityMatrix r = partial_trace(rho_plus(2), {1}, 2);
		CHECK(max_abs_diff(r.matrix(), ComplexMatrix::diagonal({1.0, 0.0})) == 0.0);
	}
	SUBCASE("Bell state reduces to the maximally mixed state") {
		Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
		psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
		const DensityMatrix r = partial_trace(testing::projector(psi), {1}, 2);
		CHECK(max_abs_diff(r.matrix(), Complex(0.5) * ComplexMatrix::identity(2)) < 1e-15);
	}
	SUBCASE("first factor of a random product") {
		std::mt19937_64 rng(5);
		for (int trial = 0; trial < 20; ++trial) {
			const DensityMatrix a = testing::random_density(2, rng);
			const DensityMatrix b = testing::random_density(2, rng);
			const DensityMatrix ab(kron(a.matrix(), b.matrix()));
			CHECK(max_abs_diff(partial_trace(ab, {1}, 2).matrix(), a.matrix()) < 1e-12);
			CHECK(max_abs_diff(partial_trace(ab, {2}, 2).matrix(), b.matrix()) < 1e-12);
		}
	}
	SUBCASE("keep order permutes the subsystem") {
		std::mt19937_64 rng(9);
		const DensityMatrix a = testing::random_density(2, rng);
		const DensityMatrix b = testing::random_density(2, rng);
		const DensityMatrix c = testing::random_density(2, rng);
		const DensityMatrix abc(kron(kron(a.matrix(), b.matrix()), c.matrix()));
		CHECK(max_abs_diff(partial_trace(abc, {3, 1}, 3).matrix(), kron(c.matrix(), a.matrix())) < 1e-12);
		CHECK(max_abs_diff(partial_trace(abc, {1, 2, 3}, 3).matrix(), abc.matrix()) == 0.0);
	}
	SUBCASE("trace and positivity are preserved") {
		std::mt19937_64 rng(13);
		const DensityMatrix rho = testing::random_density(16, rng);
		for (const auto& keep : std::vector<std::vector<int>>{{1}, {2, 4}, {4, 3, 1}, {}}) {
			const DensityMatrix r = partial_trace(rho, keep, 4);
			CHECK(r.dim() == (std::size_t{1} << keep.size()));
			CHECK(std::abs(r.matrix().trace() - Complex(1.0)) < 1e-12);
			CHECK(hermitian_eigen(r.matrix()).eigenvalues(0) >= -1e-10);
		}
	}
	SUBCASE("errors") {
		CHECK_THROWS_AS(partial_trace(rho_plus(3), {0}, 3), SiteOutOfRange);
		CHECK_THROWS_AS(partial_trace(rho_plus(3), {4}, 3), SiteOutOfRange);
		CHECK_THROWS_AS(partial_trace(rho_plus(3), {2, 2}, 3), DuplicateSite);
		CHECK_THROWS_AS(partial_trace(rho_plus(3), {1}, 2), DimensionMismatch);
	}
}

TEST_CASE("psd_sqrt") {
	SUBCASE("scaled identity") {
		CHECK(max_abs_diff(psd_sqrt(Complex(0.25) * ComplexMatrix::identity(4)),
		                   Complex(0.5) * ComplexMatrix::identity(4)) < 1e-15);
	}
	SUBCASE("projector is its own root") {
		std::mt19937_64 rng(17);
		const DensityMatrix p = testing::projector(testing::random_state_vector(4, rng));
		CHECK(max_abs_diff(psd_sqrt(p), p.matrix()) < 1e-7);
	}
	SUBCASE("diagonal") {
		CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal({0.64, 0.36, 0.0, 0.0})),
		                   ComplexMatrix::diagonal({0.8, 0.6, 0.0, 0.0})) < 1e-15);
	}
	SUBCASE("square reconstructs random states") {
		std::mt19937_64 rng(19);
		for (int trial = 0; trial < 20; ++trial) {
			const DensityMatrix rho = testing::random_density(8, rng);
			const ComplexMatrix root = psd_sqrt(rho);
			CHECK(root.hermiticity_defect() < 1e-14);
			CHECK((root * root - rho.matrix()).frobenius() < 1e-9);
		}
	}
	SUBCASE("small negative eigenvalues are clamped, larger ones rejected") {
		const ComplexMatrix nearly = ComplexMatrix::diagonal({1.0, -5e-11});
		CHECK(psd_sqrt(nearly)(1, 1) == Complex(0.0));
		CHECK_THROWS_AS(psd_sqrt(ComplexMatrix::diagonal({1.0, -1e-9})), NotPSD);
	}
}

TEST_CASE("DensityMatrix validation") {
	CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(3)), DimensionMismatch);
	CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(2)), DomainError);
	CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::from_rows(2, {0.5, 0.1, 0.0, 0.5})), NotHermitian);
	const DensityMatrix ok(Complex(0.5) * ComplexMatrix::identity(2));
	CHECK(ok.sites() == 1);
	CHECK(ok.purity() == doctest::Approx(0.5));
}
