#pragma once

#include <span>
#include <vector>

namespace triplewell {

/// Uniform grid on [-half_box, +half_box] with an odd number of points, so the
/// center point sits exactly at 0. The actual step is half_box/m <= target_step.
std::vector<double> uniform_symmetric_grid(double half_box, double target_step);

/// Composite Simpson rule; uses a 5/8-12/-1 end correction when the interval
/// count is odd. Requires at least 3 samples.
double simpson(std::span<const double> f, double h);

/// Running integral I[i] = int_{x0}^{x_i} f dx with Simpson-level (h^4) accuracy
/// at every node, not just the even ones.
std::vector<double> cumulative_simpson(std::span<const double> f, double h);

/// 4th-order centered first derivative of uniformly sampled data, with
/// one-sided 5-point stencils at the edges.
std::vector<double> derivative(std::span<const double> f, double h);

/// One-sided 5-point first derivative at the front (at_front=true) or back.
double edge_derivative(std::span<const double> f, double h, bool at_front);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Magnitude tracked in log space with an explicit sign; survives values far
/// outside double range.
struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;
    double value() const;
};

/// Lowest eigenvalues of the symmetric tridiagonal matrix (diag, sub).
/// Returns all eigenvalues in ascending order.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& sub);

/// Inverse iteration for the eigenvector of (diag, sub) nearest `shift`,
/// deflated against `orthogonal_to`. Returns a unit vector (euclidean norm).
std::vector<double> tridiagonal_eigenvector(
    const std::vector<double>& diag, const std::vector<double>& sub,
    double shift, const std::vector<std::vector<double>>& orthogonal_to = {});

}  // namespace triplewell
