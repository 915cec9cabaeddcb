#include "timeseed/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace timeseed {

ScalingFit scaling_fit(const std::vector<int>& sizes,
                       const std::vector<double>& values, int mu) {
    if (mu < 1) throw ConfigError("scaling_fit: mu must be at least 1");
    if (sizes.size() != values.size())
        throw ConfigError("scaling_fit: sizes and values disagree in length");
    if (sizes.size() < static_cast<std::size_t>(mu) + 1)
        throw ConfigError("scaling_fit: need at least mu+1 = " +
                          std::to_string(mu + 1) + " samples, got " +
                          std::to_string(sizes.size()));
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1) throw ConfigError("scaling_fit: sizes must be positive");
        for (std::size_t j = i + 1; j < sizes.size(); ++j)
            if (sizes[i] == sizes[j])
                throw ConfigError("scaling_fit: sizes must be distinct, " +
                                  std::to_string(sizes[i]) + " repeats");
    }

    const auto rows = static_cast<Eigen::Index>(sizes.size());
    const Eigen::Index cols = mu + 1;
    Eigen::MatrixXd design(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        double term = 1.0;
        for (Eigen::Index c = 0; c < cols; ++c) {
            design(r, c) = term;
            term /= static_cast<double>(sizes[static_cast<std::size_t>(r)]);
        }
    }
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index r = 0; r < rows; ++r)
        rhs(r) = values[static_cast<std::size_t>(r)];

    const Eigen::VectorXd coeff = design.colPivHouseholderQr().solve(rhs);

    ScalingFit fit;
    fit.mu = mu;
    fit.coefficients.assign(coeff.data(), coeff.data() + coeff.size());
    fit.extrapolated = fit.coefficients.front();
    fit.residual =
        std::sqrt((design * coeff - rhs).squaredNorm() / static_cast<double>(rows));
    return fit;
}

}  // namespace timeseed
