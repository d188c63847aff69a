#pragma once

#include <roundtable/errors.hpp>
#include <roundtable/models.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace roundtable {

/// One observation: the FoV shown and the Radian or Radius the participant
/// chose, tagged with its scenario.
struct Sample {
    double fov_deg = 0.0;
    double value = 0.0;
    int scenario = 0;
    ModelTarget target = ModelTarget::Radian;
};

struct OrderVerdict {
    int order = 0;
    bool monotone = false;
    bool negligible_leading = false;  // fit collapsed to a lower order
    double rss = 0.0;
};

struct FitResult {
    std::vector<double> coefficients;  // ascending powers
    int selected_order = 0;
    double rss = 0.0;
    std::vector<OrderVerdict> candidates;  // in scan order, highest first
};

/// Ordinary least squares with the order-selection rule: scan from max_order
/// down and keep the highest-order fit whose curve is monotonic on [0, 180];
/// degree 1 is always accepted. A candidate whose leading coefficient is
/// numerically negligible collapses to the next lower order. Throws
/// Error{DegenerateDesign} when every x is identical and
/// Error{InsufficientData} when there are fewer than max_order + 1 distinct
/// x values.
FitResult fit_monotone_poly(std::span<const double> xs, std::span<const double> ys,
                            int max_order);
FitResult fit_monotone_poly(std::span<const Sample> samples, int max_order);

/// Exact verdict for polynomials of order <= 3 via derivative-root analysis,
/// cross-checked by derivative sign sampling at 0.1-degree steps.
bool monotone_on_range(std::span<const double> coefficients_ascending, double lo, double hi);

/// Plain least squares of the given degree (no monotonicity rule); ascending
/// coefficients.
std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys, int order);

double polyval(std::span<const double> coefficients_ascending, double x);

/// Product-moment correlation. Throws Error{ZeroVariance} when either input
/// is constant, Error{InvalidInput} for mismatched or short inputs (< 3).
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Rank correlation: Pearson on average ranks (ties share the mean rank).
double spearman(std::span<const double> xs, std::span<const double> ys);

/// Average ranks (1-based); tied values all receive the mean of the ranks
/// they occupy.
std::vector<double> average_ranks(std::span<const double> values);

/// Reads observation rows from CSV with header fov_deg,scenario,target,value.
/// Throws Error{MalformedCsv} on any structural problem.
std::vector<Sample> read_samples_csv(std::istream& in);

/// Packages a fit as a placement model (schema roundtable.model/1).
PlacementModel fit_to_model(const FitResult& fit, ModelTarget target, int scenario);

}  // namespace roundtable
