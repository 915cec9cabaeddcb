#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "timeseed/analysis.hpp"
#include "timeseed/integrator.hpp"
#include "timeseed/model.hpp"

namespace timeseed {

/// One sweep axis.  The name selects how cell values bind to parameters:
///   "coupling"     -> coupling strength
///   "detuning"     -> Omega_B = Omega_A - value (two-ensemble grids)
///   "delta_omega"  -> rebuild a uniform detuning ladder of the same size,
///                     keeping Omega_max = base front ensemble's Omega
///   "omega_a"      -> front ensemble's Omega
struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double value(int i) const;
    void validate() const;
};

enum class Metric { DeltaObs, Variance, OmegaObs, Amplitude };

struct GridSpec {
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    NetworkParams base;
    Metric metric = Metric::DeltaObs;

    int rows() const { return axis1.count; }
    int cols() const { return axis2 ? axis2->count : 1; }
    void validate() const;
    /// Parameters of one grid cell (row-major index).
    NetworkParams cell_params(int i1, int i2) const;
};

struct GridResult {
    GridSpec spec;
    std::vector<double> values;     ///< row-major, NaN for incomplete cells
    std::vector<bool> completed;

    std::size_t cells() const { return values.size(); }
    double at(int i1, int i2) const;
    bool done() const;
};

/// Evaluates every cell: instantiate parameters, integrate from `initial`
/// (polarized when empty), apply the metric.  Cells are pure functions of
/// their parameters, evaluated on `threads` workers and merged by index, so
/// the result is bit-identical to sequential evaluation.  Per-cell failures
/// leave NaN in the cell rather than aborting the grid.
GridResult run_grid(const GridSpec& spec, const IntegrationConfig& cfg,
                    const std::optional<BlochState>& initial = {},
                    int threads = 1);

/// Fills only cells whose completed flag is false (resume after a partial
/// run).
void resume_grid(GridResult& result, const IntegrationConfig& cfg,
                 const std::optional<BlochState>& initial = {},
                 int threads = 1);

/// Grid file layout: one JSON header line (version, spec, completion mask)
/// followed by CSV rows "axis1,axis2,value" (axis2 empty for 1-D grids).
/// Values are written with 17 significant digits so save/load round-trips
/// exactly.
void save_grid(const GridResult& result, std::ostream& out);
void save_grid(const GridResult& result, const std::string& path);
GridResult load_grid(std::istream& in);
GridResult load_grid(const std::string& path);

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

}  // namespace timeseed
