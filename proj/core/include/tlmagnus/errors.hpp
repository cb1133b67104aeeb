#pragma once

#include <stdexcept>
#include <string>

namespace tlm {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid inputs (bad parameters, malformed files, misuse).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical procedures that could not deliver the requested accuracy.
class NumericalError : public Error {
 public:
  using Error::Error;
};

#define TLM_DECLARE_ERROR(Name, Base) \
  class Name : public Base {          \
   public:                            \
    using Base::Base;                 \
  }

TLM_DECLARE_ERROR(NotSpecialUnitary, ValidationError);
TLM_DECLARE_ERROR(ParameterOutOfRange, ValidationError);
TLM_DECLARE_ERROR(NonPeriodicDrive, ValidationError);
TLM_DECLARE_ERROR(DomainError, ValidationError);
TLM_DECLARE_ERROR(ConfigError, ValidationError);

TLM_DECLARE_ERROR(SeriesNotConverged, NumericalError);
TLM_DECLARE_ERROR(QuadratureFailure, NumericalError);
TLM_DECLARE_ERROR(GridTooCoarse, NumericalError);
TLM_DECLARE_ERROR(GPViolation, NumericalError);
TLM_DECLARE_ERROR(CrossingInStencil, NumericalError);
TLM_DECLARE_ERROR(StepSizeUnderflow, NumericalError);

#undef TLM_DECLARE_ERROR

}  // namespace tlm
