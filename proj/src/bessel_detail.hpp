#pragma once

#include "kapteyn/bessel.hpp"

namespace kapteyn::detail {

// exp(log_scale) * J_n(nz). The scale is folded into the leading term so
// callers multiplying by t^n never see an intermediate overflow.
SeriesEvalReport scaled_jn_series(int n, ComplexValue z, double tol,
                                  double log_scale);

}  // namespace kapteyn::detail
