#include "actisleep/model.hpp"

#include <cmath>
#include <numeric>

namespace actisleep {

void PipelineConfig::validate() const {
    if (!(epoch_seconds > 0.0) || !std::isfinite(epoch_seconds))
        throw ConfigError("epoch_seconds must be positive and finite");
    if (!std::isfinite(threshold))
        throw ConfigError("threshold must be finite");
    if (!(onset_run_minutes > 0.0) || !(offset_run_minutes > 0.0))
        throw ConfigError("onset/offset run lengths must be positive");
    double sum = 0.0;
    for (double w : context_weights) {
        if (!std::isfinite(w)) throw ConfigError("context weight is not finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        throw ConfigError("context weights must sum to 1");
    if (!(validity_fraction >= 0.0) || !(validity_fraction <= 1.0))
        throw ConfigError("validity_fraction must lie in [0, 1]");
    if (!(lower_quantile >= 0.0) || !(lower_quantile < upper_quantile) || !(upper_quantile <= 1.0))
        throw ConfigError("quantiles must satisfy 0 <= lower < upper <= 1");
}

PipelineConfig default_config() {
    return PipelineConfig{};
}

}  // namespace actisleep
