#pragma once

#include <stdexcept>
#include <string>

namespace calr {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point lies on the focal segment where the elliptic radius degenerates to 0.
class DegeneratePoint : public Error {
 public:
  using Error::Error;
};

/// A per-mode quantity left the representable double range.
class OverflowGuard : public Error {
 public:
  using Error::Error;
};

class SourceInsideShell : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a source singularity.
class SingularPoint : public Error {
 public:
  using Error::Error;
};

class TooFewCoefficients : public Error {
 public:
  using Error::Error;
};

class EigensolveFailure : public Error {
 public:
  using Error::Error;
};

/// Two sampled curves come closer than the Nystrom kernel can resolve.
class CurveOverlap : public Error {
 public:
  using Error::Error;
};

}  // namespace calr
