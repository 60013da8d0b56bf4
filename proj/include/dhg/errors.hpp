#pragma once

#include <stdexcept>
#include <string>

namespace dhg {

// All mathematical failure modes derive from Error so callers can map them
// to a single exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define DHG_DEFINE_ERROR(Name)                              \
  struct Name : Error {                                     \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

DHG_DEFINE_ERROR(NonInvertibleDifference);
DHG_DEFINE_ERROR(DegenerateSplitting);
DHG_DEFINE_ERROR(NonPositiveBasis);
DHG_DEFINE_ERROR(NonRegularQuotient);
DHG_DEFINE_ERROR(TooSmall);
DHG_DEFINE_ERROR(DegenerateTriangle);
DHG_DEFINE_ERROR(BlackTriangleDegenerate);
DHG_DEFINE_ERROR(BasePoint);
DHG_DEFINE_ERROR(InterpolationIllConditioned);
DHG_DEFINE_ERROR(EmptyKernel);
DHG_DEFINE_ERROR(SingularAtTriangle);
DHG_DEFINE_ERROR(InconsistentSection);
DHG_DEFINE_ERROR(RegularityViolation);
DHG_DEFINE_ERROR(ZeroProlongation);
DHG_DEFINE_ERROR(ChiInconsistent);
DHG_DEFINE_ERROR(TransformsCollide);
DHG_DEFINE_ERROR(NotAPolygon);
DHG_DEFINE_ERROR(EigenlineDegenerate);

#undef DHG_DEFINE_ERROR

}  // namespace dhg
