#pragma once

#include "piezobeam/model.hpp"

// Array-valued source evaluation shared by the model quadratures, the
// right-hand side, and the probes.  Kept out of the public headers: callers
// there go through SourceModel::operator() or the integrator.
namespace piezobeam::detail {

struct SourceFields {
  Field f1, f2, potential;
};

SourceFields source_fields(const SourceModel& s, const Field& v, const Field& p);

}  // namespace piezobeam::detail
