#include "triplewell/numerics.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

namespace triplewell {

std::vector<double> uniform_symmetric_grid(double half_box, double target_step) {
    if (!(half_box > 0) || !(target_step > 0))
        throw std::invalid_argument("uniform_symmetric_grid: positive half_box and step required");
    const auto m = static_cast<std::size_t>(std::ceil(half_box / target_step - 1e-12));
    const double h = half_box / static_cast<double>(m);
    std::vector<double> grid(2 * m + 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = (static_cast<double>(i) - static_cast<double>(m)) * h;
    return grid;
}

double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("simpson: need at least 3 samples");
    double sum = 0.0;
    std::size_t last = n - 1;
    if (last % 2 != 0) {
        // odd interval count: 3-point Newton-Cotes correction on the last interval
        sum += h / 12.0 * (-f[n - 3] + 8.0 * f[n - 2] + 5.0 * f[n - 1]);
        last -= 1;
    }
    double odd = 0.0, even = 0.0;
    for (std::size_t i = 1; i < last; i += 2) odd += f[i];
    for (std::size_t i = 2; i < last; i += 2) even += f[i];
    sum += h / 3.0 * (f[0] + f[last] + 4.0 * odd + 2.0 * even);
    return sum;
}

std::vector<double> cumulative_simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3) throw std::invalid_argument("cumulative_simpson: need at least 3 samples");
    std::vector<double> acc(n, 0.0);
    // even nodes by full Simpson pairs, odd nodes by the half-pair rule from
    // the parabola through the three nearest samples
    for (std::size_t i = 2; i < n; i += 2)
        acc[i] = acc[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    for (std::size_t i = 1; i < n; i += 2) {
        if (i + 1 < n)
            acc[i] = acc[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1]);
        else
            acc[i] = acc[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i]);
    }
    return acc;
}

double edge_derivative(std::span<const double> f, double h, bool at_front) {
    if (f.size() < 5) throw std::invalid_argument("edge_derivative: need 5 samples");
    if (at_front)
        return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    const std::size_t n = f.size();
    return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
}

std::vector<double> derivative(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw std::invalid_argument("derivative: need at least 5 samples");
    std::vector<double> d(n);
    d[0] = edge_derivative(f, h, true);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    d[n - 1] = edge_derivative(f, h, false);
    return d;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need matching samples, at least 2");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    return fit;
}

double SignedLog::value() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(log_abs);
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& sub) {
    const auto m = static_cast<Eigen::Index>(diag.size());
    if (sub.size() + 1 != diag.size())
        throw std::invalid_argument("tridiagonal_eigenvalues: size mismatch");
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(sub.data(), m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(d, s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("tridiagonal_eigenvalues: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

namespace {

// LU with partial pivoting for a tridiagonal system; fill-in adds one
// superdiagonal. Solves (T - shift I) x = b in place.
void shifted_tridiagonal_solve(const std::vector<double>& diag,
                               const std::vector<double>& sub, double shift,
                               std::vector<double>& b) {
    const std::size_t m = diag.size();
    std::vector<double> dl(m, 0.0), dm(m, 0.0), du1(m, 0.0), du2(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        dm[i] = diag[i] - shift;
        if (i > 0) dl[i] = sub[i - 1];
        if (i + 1 < m) du1[i] = sub[i];
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (std::abs(dl[k + 1]) > std::abs(dm[k])) {
            std::swap(dm[k], dl[k + 1]);
            std::swap(du1[k], dm[k + 1]);
            std::swap(du2[k], du1[k + 1]);
            std::swap(b[k], b[k + 1]);
        }
        if (dm[k] == 0.0) dm[k] = std::numeric_limits<double>::epsilon();
        const double factor = dl[k + 1] / dm[k];
        dm[k + 1] -= factor * du1[k];
        du1[k + 1] -= factor * du2[k];
        b[k + 1] -= factor * b[k];
    }
    if (dm[m - 1] == 0.0) dm[m - 1] = std::numeric_limits<double>::epsilon();
    for (std::size_t i = m; i-- > 0;) {
        double v = b[i];
        if (i + 1 < m) v -= du1[i] * b[i + 1];
        if (i + 2 < m) v -= du2[i] * b[i + 2];
        b[i] = v / dm[i];
    }
}

}  // namespace

std::vector<double> tridiagonal_eigenvector(
    const std::vector<double>& diag, const std::vector<double>& sub,
    double shift, const std::vector<std::vector<double>>& orthogonal_to) {
    const std::size_t m = diag.size();
    std::vector<double> v(m);
    for (std::size_t i = 0; i < m; ++i)
        v[i] = 1.0 + 1e-3 * std::sin(static_cast<double>(i + 1));
    auto deflate = [&](std::vector<double>& w) {
        for (const auto& q : orthogonal_to) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += w[i] * q[i];
            for (std::size_t i = 0; i < m; ++i) w[i] -= dot * q[i];
        }
    };
    auto normalize = [&](std::vector<double>& w) {
        double norm = 0.0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("tridiagonal_eigenvector: breakdown");
        for (double& x : w) x /= norm;
    };
    deflate(v);
    normalize(v);
    for (int it = 0; it < 4; ++it) {
        shifted_tridiagonal_solve(diag, sub, shift, v);
        deflate(v);
        normalize(v);
    }
    return v;
}

}  // namespace triplewell
