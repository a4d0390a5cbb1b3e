#pragma once

#include <stdexcept>
#include <string>

#include "pcm/complex.hpp"

namespace pcm {

// Base class for every failure reported by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PCM_DEFINE_ERROR(Name) \
  class Name : public Error {  \
   public:                     \
    using Error::Error;        \
  }

PCM_DEFINE_ERROR(InvalidInput);
PCM_DEFINE_ERROR(ParseError);
PCM_DEFINE_ERROR(DegreeOutOfRange);
PCM_DEFINE_ERROR(NonConvergence);
PCM_DEFINE_ERROR(ZeroInput);
PCM_DEFINE_ERROR(SolverFailure);
PCM_DEFINE_ERROR(OutsideDisk);
PCM_DEFINE_ERROR(NotEquallySpaced);
PCM_DEFINE_ERROR(WrongDegree);
PCM_DEFINE_ERROR(DegenerateCriticalValues);
PCM_DEFINE_ERROR(ZeroU);
PCM_DEFINE_ERROR(BranchSelectionFailure);
PCM_DEFINE_ERROR(AmbiguousFiber);
PCM_DEFINE_ERROR(SelfIntersection);
PCM_DEFINE_ERROR(WrongCase);
PCM_DEFINE_ERROR(UnsupportedInput);

#undef PCM_DEFINE_ERROR

// Step bisection bottomed out during branch tracking; carries the point on
// the continuation path where the fiber roots collided.
class StepCollapse : public Error {
 public:
  StepCollapse(const std::string& what, Complex where)
      : Error(what), where_(where) {}
  Complex where() const { return where_; }

 private:
  Complex where_;
};

}  // namespace pcm
