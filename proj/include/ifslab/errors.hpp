#pragma once

#include <stdexcept>
#include <string>

namespace ifslab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define IFSLAB_DEFINE_ERROR(Name)                                             \
    struct Name : Error {                                                     \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}    \
    }

IFSLAB_DEFINE_ERROR(SingularSystem);
IFSLAB_DEFINE_ERROR(SingularLinearPart);
IFSLAB_DEFINE_ERROR(NotSimilarity);
IFSLAB_DEFINE_ERROR(NotBounded);
IFSLAB_DEFINE_ERROR(NotApplicable);
IFSLAB_DEFINE_ERROR(NoFeasibleCone);
IFSLAB_DEFINE_ERROR(DepthTooSmall);
IFSLAB_DEFINE_ERROR(NoContractiveDepth);
IFSLAB_DEFINE_ERROR(NotTrapping);
IFSLAB_DEFINE_ERROR(BudgetExceeded);
IFSLAB_DEFINE_ERROR(EmptyInput);
IFSLAB_DEFINE_ERROR(UnsupportedDimension);
IFSLAB_DEFINE_ERROR(NestingViolation);
IFSLAB_DEFINE_ERROR(SchemaError);
IFSLAB_DEFINE_ERROR(RegionOutsideDisk);

#undef IFSLAB_DEFINE_ERROR

} // namespace ifslab
