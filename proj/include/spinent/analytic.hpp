#pragma once

#include "spinent/propagator.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

namespace spinent {

/// Which product state the closed form starts from.
enum class InitialBranch {
	Plus,  ///< all spins up
	Minus, ///< site 1 down, the rest up
};

/// Denominator in the cosine argument of the x component: 3 D12 t r / 4 or / 8.
enum class XArgument { Quarter, Eighth };

struct AnalyticParams {
	double omega1_over_d12 = 0.0;
	InitialBranch branch = InitialBranch::Plus;
	XArgument x_argument = XArgument::Quarter;
	/// Multiplier on the y component amplitude; 1 reproduces the closed form as usually quoted.
	double y_scale = 1.0;
};

struct AnalyticPolarization {
	double px1 = 0.0;
	double py1 = 0.0;
	double pz1 = 0.0;
	double magnitude = 0.0;
};

/**
 * Closed-form site-1 polarization of an equally driven two-spin pair.
 *
 * With u = 8 w / 3, r = sqrt(1 + u^2) and a = 3 tau / 8:
 *
 *   px = -+ (2w/3) / r^2 (cos(3 tau r / 4) - 1)          [x_argument = Quarter]
 *   py = -+ (2w/3) / r   cos(a) sin(a r)                 (times y_scale)
 *   pz = +- 1/2 [cos(a) cos(a r) +- sin(a) sin(a r) / r]
 *
 * Upper signs for the Plus branch. The inner sign of pz follows the branch,
 * which is what makes the all-up state stationary without a drive.
 */
AnalyticPolarization analytic_polarization(const AnalyticParams& params, double tau);

struct CalibrationOptions {
	double kappa_min = 1.0;
	double kappa_max = 2.0;
	std::size_t kappa_steps = 51;
	double zz_min = 0.0;
	double zz_max = 2.0;
	std::size_t zz_steps = 21;
	std::vector<InitialBranch> branches{InitialBranch::Plus, InitialBranch::Minus};
};

struct OmegaResidual {
	double omega1 = 0.0;
	double residual_x = 0.0; ///< max | |px numeric| - |px closed form| |
	double residual_z = 0.0;
	double residual_y = 0.0; ///< after applying the fitted y scale
};

/// Best fit of the secular convention for one family of Hamiltonians.
struct ConventionFit {
	double kappa = 0.0;
	double zz_weight = 1.0;
	XArgument x_argument = XArgument::Quarter;
	/// max over the x and z magnitude residuals, all drives, branches and times
	double residual = 0.0;
	/// same residual for the variant that was not selected
	double rejected_residual = 0.0;
	double y_scale = 1.0;
	/// y residual with the closed form taken as quoted (y_scale = 1), magnitudes
	double y_residual_unscaled = 0.0;
	std::vector<OmegaResidual> per_omega;
};

struct CalibrationReport {
	std::vector<double> omega1_values;
	std::vector<InitialBranch> branches;
	double tau_min = 0.0;
	double tau_max = 0.0;
	std::size_t points = 0;
	/// kappa and zz_weight both fitted
	ConventionFit fitted;
	/// zz_weight held at 1, only kappa fitted
	ConventionFit standard_form;
};

/**
 * Compares numerically propagated two-spin site-1 polarizations with the
 * closed form and finds the secular convention that reproduces it.
 *
 * kappa is scanned over [kappa_min, kappa_max] and zz_weight over
 * [zz_min, zz_max] on a grid, then refined locally. Both x-argument variants
 * are scored and the one with the lower residual is selected. Residuals are
 * measured on component magnitudes so an overall handedness convention does
 * not count against a variant.
 */
CalibrationReport calibrate_convention(const TimeGrid& grid, std::span<const double> omega1_values,
                                       const CalibrationOptions& options = {});

/// Max x/z magnitude residual of the closed form against numerical propagation for one convention.
double convention_residual(const TimeGrid& grid, std::span<const double> omega1_values,
                           std::span<const InitialBranch> branches, double kappa, double zz_weight,
                           XArgument x_argument);

std::string format_report(const CalibrationReport& report);
nlohmann::json to_json(const CalibrationReport& report);

const char* to_string(XArgument variant);
const char* to_string(InitialBranch branch);

} // namespace spinent
