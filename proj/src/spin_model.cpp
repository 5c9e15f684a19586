#include "spinent/spin_model.hpp"

#include "spinent/errors.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <string>

namespace spinent {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_site(int k, int n) {
	if (k < 1 || k > n) {
		throw SiteOutOfRange("site " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
	}
}

// Kronecker chain over n sites where `pick(site)` returns the 2x2 factor.
template <typename Pick>
ComplexMatrix chain_product(int n, Pick pick) {
	ComplexMatrix out = pick(1);
	for (int site = 2; site <= n; ++site) {
		out = kron(out, pick(site));
	}
	return out;
}

} // namespace

void ChainSpec::validate() const {
	if (n < 2) {
		throw ConfigError("chain.n", "spin count must be at least 2, got " + std::to_string(n));
	}
	if (n > 12) {
		throw ConfigError("chain.n", "spin count above 12 is not supported");
	}
	if (!std::isfinite(d12)) {
		throw ConfigError("chain.d12", "coupling must be finite");
	}
	if (coupling_law == CouplingLaw::Explicit) {
		if (explicit_couplings.rows() != n || explicit_couplings.cols() != n) {
			throw ConfigError("chain.couplings", "explicit coupling matrix must be " + std::to_string(n) + "x" +
			                                         std::to_string(n));
		}
		if (!explicit_couplings.allFinite()) {
			throw ConfigError("chain.couplings", "coupling constants must be finite");
		}
		for (int j = 0; j < n; ++j) {
			if (explicit_couplings(j, j) != 0.0) {
				throw ConfigError("chain.couplings", "diagonal entries must be zero");
			}
			for (int k = j + 1; k < n; ++k) {
				if (explicit_couplings(j, k) != explicit_couplings(k, j)) {
					throw ConfigError("chain.couplings", "coupling matrix must be symmetric");
				}
			}
		}
	}
	std::set<int> seen;
	for (const int site : irradiated) {
		if (site < 1 || site > n) {
			throw ConfigError("chain.irradiated",
			                  "site " + std::to_string(site) + " outside [1, " + std::to_string(n) + "]");
		}
		if (!seen.insert(site).second) {
			throw ConfigError("chain.irradiated", "site " + std::to_string(site) + " listed twice");
		}
	}
	if (!irradiated.empty() && omega1.size() != 1 && omega1.size() != irradiated.size()) {
		throw ConfigError("chain.omega1", "expected one amplitude or one per irradiated site");
	}
	for (const double w : omega1) {
		if (!std::isfinite(w) || w < 0.0) {
			throw ConfigError("chain.omega1", "drive amplitudes must be finite and non-negative");
		}
	}
	if (!offsets.empty() && offsets.size() != static_cast<std::size_t>(n)) {
		throw ConfigError("chain.offsets", "expected one offset per site");
	}
	for (const double off : offsets) {
		if (!std::isfinite(off)) {
			throw ConfigError("chain.offsets", "offsets must be finite");
		}
	}
	if (!std::isfinite(kappa)) {
		throw ConfigError("chain.kappa", "must be finite");
	}
	if (!std::isfinite(zz_weight)) {
		throw ConfigError("chain.zz_weight", "must be finite");
	}
}

double ChainSpec::drive_on(int site) const {
	for (std::size_t q = 0; q < irradiated.size(); ++q) {
		if (irradiated[q] == site) {
			if (omega1.empty()) {
				return 0.0;
			}
			return omega1.size() == 1 ? omega1.front() : omega1[q];
		}
	}
	return 0.0;
}

const SpinOperatorSet& spin_half() {
	static const SpinOperatorSet ops = [] {
		const ComplexMatrix ix = ComplexMatrix::from_rows(2, {0.0, 0.5, 0.5, 0.0});
		const ComplexMatrix iy = ComplexMatrix::from_rows(2, {0.0, -0.5 * kI, 0.5 * kI, 0.0});
		const ComplexMatrix iz = ComplexMatrix::diagonal({0.5, -0.5});
		return SpinOperatorSet{ix, iy, iz, ix + kI * iy, ix - kI * iy};
	}();
	return ops;
}

const ComplexMatrix& pauli_y() {
	static const ComplexMatrix sy = ComplexMatrix::from_rows(2, {0.0, -kI, kI, 0.0});
	return sy;
}

ComplexMatrix site_operator(const ComplexMatrix& op, int k, int n) {
	require_site(k, n);
	if (op.dim() != 2) {
		throw DimensionMismatch("site operator must be 2x2");
	}
	const ComplexMatrix id = ComplexMatrix::identity(2);
	return chain_product(n, [&](int site) { return site == k ? op : id; });
}

ComplexMatrix pair_operator(const ComplexMatrix& a, int j, const ComplexMatrix& b, int k, int n) {
	require_site(j, n);
	require_site(k, n);
	if (j == k) {
		throw DuplicateSite("pair operator needs two distinct sites, got " + std::to_string(j) + " twice");
	}
	if (a.dim() != 2 || b.dim() != 2) {
		throw DimensionMismatch("site operators must be 2x2");
	}
	const ComplexMatrix id = ComplexMatrix::identity(2);
	return chain_product(n, [&](int site) { return site == j ? a : (site == k ? b : id); });
}

ComplexMatrix total_iz(int n) {
	const std::size_t dim = std::size_t{1} << n;
	std::vector<Complex> diag(dim);
	for (std::size_t idx = 0; idx < dim; ++idx) {
		// bit value 0 is spin up (+1/2)
		const int down = std::popcount(idx);
		diag[idx] = 0.5 * (n - 2 * down);
	}
	return ComplexMatrix::diagonal(diag);
}

Eigen::MatrixXd couplings(const ChainSpec& spec) {
	if (spec.coupling_law == CouplingLaw::Explicit) {
		return spec.explicit_couplings;
	}
	Eigen::MatrixXd d = Eigen::MatrixXd::Zero(spec.n, spec.n);
	for (int j = 0; j < spec.n; ++j) {
		for (int k = 0; k < spec.n; ++k) {
			const int gap = std::abs(j - k);
			if (gap == 0) {
				continue;
			}
			if (spec.coupling_law == CouplingLaw::InverseCube) {
				d(j, k) = spec.d12 / (static_cast<double>(gap) * gap * gap);
			} else if (gap == 1) {
				d(j, k) = spec.d12;
			}
		}
	}
	return d;
}

ComplexMatrix build_secular_dipolar(const ChainSpec& spec) {
	spec.validate();
	const SpinOperatorSet& s = spin_half();
	const Eigen::MatrixXd d = couplings(spec);
	ComplexMatrix h = ComplexMatrix::zero(std::size_t{1} << spec.n);
	for (int j = 1; j <= spec.n; ++j) {
		for (int k = j + 1; k <= spec.n; ++k) {
			const double djk = d(j - 1, k - 1);
			if (djk == 0.0) {
				continue;
			}
			const ComplexMatrix transverse =
			    spec.transverse == TransverseForm::FlipFlop
			        ? pair_operator(s.iplus, j, s.iminus, k, spec.n) + pair_operator(s.iminus, j, s.iplus, k, spec.n)
			        : pair_operator(s.iplus, j, s.iplus, k, spec.n) + pair_operator(s.iminus, j, s.iminus, k, spec.n);
			const ComplexMatrix zz = pair_operator(s.iz, j, s.iz, k, spec.n);
			h = h + Complex(spec.kappa * djk) * (Complex(spec.zz_weight) * zz - Complex(0.25) * transverse);
		}
	}
	return h;
}

ComplexMatrix build_zz(const ChainSpec& spec) {
	spec.validate();
	const Eigen::MatrixXd d = couplings(spec);
	const std::size_t dim = std::size_t{1} << spec.n;
	std::vector<Complex> diag(dim, 0.0);
	for (std::size_t idx = 0; idx < dim; ++idx) {
		double energy = 0.0;
		for (int j = 1; j <= spec.n; ++j) {
			const double zj = ((idx >> (spec.n - j)) & 1U) ? -0.5 : 0.5;
			for (int k = j + 1; k <= spec.n; ++k) {
				const double zk = ((idx >> (spec.n - k)) & 1U) ? -0.5 : 0.5;
				energy += d(j - 1, k - 1) * zj * zk;
			}
		}
		diag[idx] = energy;
	}
	return ComplexMatrix::diagonal(diag);
}

ComplexMatrix build_hamiltonian(const ChainSpec& spec) {
	spec.validate();
	const SpinOperatorSet& s = spin_half();
	ComplexMatrix h = spec.model == DipolarModel::FullSecular ? build_secular_dipolar(spec) : build_zz(spec);
	for (const int site : spec.irradiated) {
		const double w = spec.drive_on(site);
		if (w != 0.0) {
			h = h + Complex(w) * site_operator(s.ix, site, spec.n);
		}
	}
	for (std::size_t q = 0; q < spec.offsets.size(); ++q) {
		if (spec.offsets[q] != 0.0) {
			h = h + Complex(spec.offsets[q]) * site_operator(s.iz, static_cast<int>(q) + 1, spec.n);
		}
	}
	return h;
}

} // namespace spinent
