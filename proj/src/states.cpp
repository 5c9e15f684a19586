#include "spinent/states.hpp"

#include "spinent/errors.hpp"

#include <string>

namespace spinent {

DensityMatrix product_state(std::span<const int> bits) {
	if (bits.empty() || bits.size() > 12) {
		throw DimensionMismatch("product state needs between 1 and 12 sites");
	}
	std::size_t index = 0;
	for (const int b : bits) {
		if (b != 0 && b != 1) {
			throw DomainError("product state bits must be 0 or 1, got " + std::to_string(b));
		}
		// up (1) is the first basis vector, i.e. a 0 in the index
		index = (index << 1U) | static_cast<std::size_t>(1 - b);
	}
	const auto dim = static_cast<Eigen::Index>(std::size_t{1} << bits.size());
	Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
	m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
	return DensityMatrix(ComplexMatrix(std::move(m)));
}

DensityMatrix product_state(std::initializer_list<int> bits) {
	return product_state(std::span<const int>(bits.begin(), bits.size()));
}

DensityMatrix rho_plus(int n) {
	const std::vector<int> bits(static_cast<std::size_t>(std::max(n, 0)), 1);
	return product_state(bits);
}

DensityMatrix rho_minus(int n) {
	std::vector<int> bits(static_cast<std::size_t>(std::max(n, 0)), 1);
	if (!bits.empty()) {
		bits.front() = 0;
	}
	return product_state(bits);
}

DensityMatrix pseudopure(const DensityMatrix& pure, double epsilon) {
	if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
		throw DomainError("pseudopure weight must lie in [0, 1]");
	}
	const std::size_t dim = pure.dim();
	const ComplexMatrix mixed = Complex((1.0 - epsilon) / static_cast<double>(dim)) * ComplexMatrix::identity(dim);
	return DensityMatrix(mixed + Complex(epsilon) * pure.matrix());
}

} // namespace spinent
