#pragma once

#include <stdexcept>
#include <string>

namespace gll {

/// Base of every domain error raised by the library. Precondition
/// violations on plain arguments use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GLL_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

GLL_DEFINE_ERROR(NonUnit);
GLL_DEFINE_ERROR(AnchorOutOfRange);
GLL_DEFINE_ERROR(OracleScaleExceeded);
GLL_DEFINE_ERROR(NotInKernel);
GLL_DEFINE_ERROR(NotAdmissible);
GLL_DEFINE_ERROR(NoWitness);
GLL_DEFINE_ERROR(ContextMismatch);
GLL_DEFINE_ERROR(ModelTooSmall);
GLL_DEFINE_ERROR(NoSuchGenerator);
GLL_DEFINE_ERROR(ImageTooLarge);
GLL_DEFINE_ERROR(NotEnumerated);
GLL_DEFINE_ERROR(EnumerationCapExceeded);

#undef GLL_DEFINE_ERROR

}  // namespace gll
