#pragma once

#include <algorithm>
#include <cmath>

#include "lwlp/circle.hpp"

namespace testutil {

/// max_m |f[m] - g[m]| relative to max(1, max |f|).
inline double rel_error(const lwlp::SampledFunction& f, const lwlp::SampledFunction& g)
{
    double scale = 1.0, err = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m)
        scale = std::max(scale, std::abs(f[m]));
    for (std::size_t m = 0; m < f.size(); ++m)
        err = std::max(err, std::abs(f[m] - g[m]));
    return err / scale;
}

} // namespace testutil
