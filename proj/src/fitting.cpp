#include <roundtable/fitting.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

namespace roundtable {

double polyval(std::span<const double> coefficients, double x) {
    double value = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        value = value * x + *it;
    }
    return value;
}

namespace {

// Least squares on the x-scaled Vandermonde via Householder QR. Scaling x to
// [-1, 1]-ish keeps the system well conditioned for the degrees used here;
// the coefficients are rescaled back afterwards (exact transformation).
std::vector<double> solve_least_squares(std::span<const double> xs,
                                        std::span<const double> ys, int order) {
    const size_t m = xs.size();
    const size_t n = static_cast<size_t>(order) + 1;

    double scale = 0.0;
    for (double x : xs) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;

    std::vector<double> a(m * n);
    for (size_t i = 0; i < m; ++i) {
        const double t = xs[i] / scale;
        double p = 1.0;
        for (size_t j = 0; j < n; ++j) {
            a[i * n + j] = p;
            p *= t;
        }
    }
    std::vector<double> b(ys.begin(), ys.end());

    // Householder reduction of A to upper-triangular, applied to b in step.
    for (size_t k = 0; k < n; ++k) {
        double norm = 0.0;
        for (size_t i = k; i < m; ++i) norm += a[i * n + k] * a[i * n + k];
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        if (a[k * n + k] > 0.0) norm = -norm;

        std::vector<double> v(m - k);
        v[0] = a[k * n + k] - norm;
        for (size_t i = k + 1; i < m; ++i) v[i - k] = a[i * n + k];
        double vnorm2 = 0.0;
        for (double vi : v) vnorm2 += vi * vi;
        if (vnorm2 == 0.0) continue;

        for (size_t j = k; j < n; ++j) {
            double dot = 0.0;
            for (size_t i = k; i < m; ++i) dot += v[i - k] * a[i * n + j];
            const double f = 2.0 * dot / vnorm2;
            for (size_t i = k; i < m; ++i) a[i * n + j] -= f * v[i - k];
        }
        double dot = 0.0;
        for (size_t i = k; i < m; ++i) dot += v[i - k] * b[i];
        const double f = 2.0 * dot / vnorm2;
        for (size_t i = k; i < m; ++i) b[i] -= f * v[i - k];
    }

    // Back substitution.
    std::vector<double> c(n, 0.0);
    for (size_t k = n; k-- > 0;) {
        double sum = b[k];
        for (size_t j = k + 1; j < n; ++j) sum -= a[k * n + j] * c[j];
        c[k] = sum / a[k * n + k];
    }

    // Undo the x scaling.
    double p = 1.0;
    for (size_t j = 0; j < n; ++j) {
        c[j] /= p;
        p *= scale;
    }
    return c;
}

double residual_sum_of_squares(std::span<const double> xs, std::span<const double> ys,
                               std::span<const double> coefficients) {
    double rss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - polyval(coefficients, xs[i]);
        rss += r * r;
    }
    return rss;
}

// True when the signs of `values` never flip; magnitudes below zero_eps are
// treated as zero so evaluation noise near a grazing root cannot fake a
// crossing.
bool no_sign_change(std::span<const double> values, double zero_eps) {
    int seen = 0;
    for (double v : values) {
        const int s = std::abs(v) <= zero_eps ? 0 : (v > 0.0 ? 1 : -1);
        if (s == 0) continue;
        if (seen != 0 && s != seen) return false;
        seen = s;
    }
    return true;
}

// Evaluation-noise floor for a polynomial over [lo, hi]: a few ulps of the
// largest term.
double eval_noise_floor(std::span<const double> coefficients, double lo, double hi) {
    const double span = std::max(std::abs(lo), std::abs(hi));
    double largest_term = 0.0;
    double p = 1.0;
    for (double c : coefficients) {
        largest_term = std::max(largest_term, std::abs(c) * p);
        p *= span;
    }
    return 1e-12 * largest_term;
}

bool monotone_by_roots(std::span<const double> c, double lo, double hi) {
    // Derivative coefficients (degree <= 2 for the supported orders).
    std::vector<double> d;
    for (size_t j = 1; j < c.size(); ++j) d.push_back(static_cast<double>(j) * c[j]);
    while (d.size() > 3) d.pop_back();  // unreachable for order <= 3, defensive trim

    std::vector<double> roots;
    if (d.size() == 3 && d[2] != 0.0) {
        const double disc = d[1] * d[1] - 4.0 * d[2] * d[0];
        if (disc > 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-d[1] - s) / (2.0 * d[2]));
            roots.push_back((-d[1] + s) / (2.0 * d[2]));
        }
        // disc == 0: double root, the derivative touches zero without
        // changing sign; disc < 0: no real root.
    } else if (d.size() >= 2 && d[1] != 0.0) {
        roots.push_back(-d[0] / d[1]);
    }

    std::vector<double> cuts{lo};
    for (double r : roots) {
        if (r > lo && r < hi) cuts.push_back(r);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> mids;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        mids.push_back(polyval(d, (cuts[i] + cuts[i + 1]) / 2.0));
    }
    return no_sign_change(mids, eval_noise_floor(d, lo, hi));
}

bool monotone_by_sampling(std::span<const double> c, double lo, double hi) {
    std::vector<double> d;
    for (size_t j = 1; j < c.size(); ++j) d.push_back(static_cast<double>(j) * c[j]);
    const double step = 0.1;
    std::vector<double> values;
    for (double x = lo; x < hi + step / 2.0; x += step) {
        values.push_back(polyval(d, std::min(x, hi)));
    }
    return no_sign_change(values, eval_noise_floor(d, lo, hi));
}

}  // namespace

bool monotone_on_range(std::span<const double> coefficients, double lo, double hi) {
    if (coefficients.size() > 4) {
        throw Error(ErrorCode::InvalidInput, "monotonicity analysis supports order <= 3");
    }
    if (!(lo < hi)) {
        throw Error(ErrorCode::InvalidInput, "empty range");
    }
    if (coefficients.size() <= 2) return true;  // constants and lines
    return monotone_by_roots(coefficients, lo, hi) &&
           monotone_by_sampling(coefficients, lo, hi);
}

std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys,
                            int order) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorCode::InvalidInput, "x/y length mismatch");
    }
    if (order < 0 || xs.size() < static_cast<size_t>(order) + 1) {
        throw Error(ErrorCode::InsufficientData, "need at least order + 1 points");
    }
    return solve_least_squares(xs, ys, order);
}

FitResult fit_monotone_poly(std::span<const double> xs, std::span<const double> ys,
                            int max_order) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorCode::InvalidInput, "x/y length mismatch");
    }
    if (max_order < 1 || max_order > 3) {
        throw Error(ErrorCode::InvalidInput, "max_order must be in 1..3");
    }
    for (double y : ys) {
        if (!std::isfinite(y)) throw Error(ErrorCode::InvalidInput, "non-finite value");
    }

    const std::set<double> distinct(xs.begin(), xs.end());
    if (distinct.size() <= 1) {
        throw Error(ErrorCode::DegenerateDesign, "all FoV values are identical");
    }
    if (distinct.size() < static_cast<size_t>(max_order) + 1) {
        throw Error(ErrorCode::InsufficientData,
                    "need at least max_order + 1 distinct FoV values");
    }

    double x_scale = 0.0, y_scale = 0.0;
    for (double x : xs) x_scale = std::max(x_scale, std::abs(x));
    for (double y : ys) y_scale = std::max(y_scale, std::abs(y));

    FitResult result;
    for (int order = max_order; order >= 1; --order) {
        const std::vector<double> c = solve_least_squares(xs, ys, order);
        OrderVerdict verdict;
        verdict.order = order;
        verdict.rss = residual_sum_of_squares(xs, ys, c);

        // A leading coefficient that contributes nothing at the scale of the
        // data means the true fit lives at a lower order.
        const double lead = std::abs(c.back()) * std::pow(x_scale, order);
        verdict.negligible_leading = order > 1 && lead <= 1e-9 * std::max(1.0, y_scale);
        verdict.monotone =
            !verdict.negligible_leading && (order == 1 || monotone_on_range(c, 0.0, 180.0));
        result.candidates.push_back(verdict);

        if (verdict.monotone) {
            result.coefficients = c;
            result.selected_order = order;
            result.rss = verdict.rss;
            return result;
        }
    }
    // Unreachable: degree 1 is always monotone.
    throw Error(ErrorCode::InvalidInput, "no monotone candidate");
}

FitResult fit_monotone_poly(std::span<const Sample> samples, int max_order) {
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const Sample& s : samples) {
        xs.push_back(s.fov_deg);
        ys.push_back(s.value);
    }
    return fit_monotone_poly(xs, ys, max_order);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorCode::InvalidInput, "x/y length mismatch");
    }
    if (xs.size() < 3) {
        throw Error(ErrorCode::InvalidInput, "need at least 3 observations");
    }
    const double n = static_cast<double>(xs.size());
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw Error(ErrorCode::ZeroVariance, "correlation needs variance in both inputs");
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const size_t n = values.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw Error(ErrorCode::InvalidInput, "x/y length mismatch");
    }
    const std::vector<double> rx = average_ranks(xs);
    const std::vector<double> ry = average_ranks(ys);
    return pearson(rx, ry);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto first = field.find_first_not_of(" \t\r");
        const auto last = field.find_last_not_of(" \t\r");
        fields.push_back(first == std::string::npos ? ""
                                                    : field.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_double(const std::string& text, int line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedCsv,
                    "line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
}

}  // namespace

std::vector<Sample> read_samples_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::MalformedCsv, "empty input");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);
    const std::vector<std::string> expected{"fov_deg", "scenario", "target", "value"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected) {
        throw Error(ErrorCode::MalformedCsv,
                    "header must be exactly: fov_deg,scenario,target,value");
    }

    std::vector<Sample> samples;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw Error(ErrorCode::MalformedCsv,
                        "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                            std::to_string(fields.size()));
        }
        Sample s;
        s.fov_deg = parse_double(fields[0], line_no);
        const double scenario = parse_double(fields[1], line_no);
        if (scenario != std::floor(scenario)) {
            throw Error(ErrorCode::MalformedCsv,
                        "line " + std::to_string(line_no) + ": scenario must be an integer");
        }
        s.scenario = static_cast<int>(scenario);
        try {
            s.target = model_target_from_string(fields[2]);
        } catch (const Error&) {
            throw Error(ErrorCode::MalformedCsv,
                        "line " + std::to_string(line_no) + ": target must be radian or radius");
        }
        s.value = parse_double(fields[3], line_no);
        samples.push_back(s);
    }
    return samples;
}

PlacementModel fit_to_model(const FitResult& fit, ModelTarget target, int scenario) {
    PlacementModel model;
    model.target = target;
    model.scenario = scenario;
    model.coefficients = fit.coefficients;
    return model;
}

}  // namespace roundtable
