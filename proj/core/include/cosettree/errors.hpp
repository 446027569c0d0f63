#ifndef COSETTREE_ERRORS_HPP
#define COSETTREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cosettree {

/// Base class of all input-validation failures. Anything derived from Error
/// means the caller handed us something outside a documented precondition;
/// internal invariant violations use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonTorsionInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedComparison : public Error {
 public:
  using Error::Error;
};

class InfiniteGroup : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidTree : public Error {
 public:
  using Error::Error;
};

class NodeNotInTree : public Error {
 public:
  using Error::Error;
};

class NotCosetTree : public Error {
 public:
  using Error::Error;
};

class NotGroupTree : public Error {
 public:
  using Error::Error;
};

class StructureMismatch : public Error {
 public:
  using Error::Error;
};

class MalformedSpec : public Error {
 public:
  using Error::Error;
};

class BadCuts : public Error {
 public:
  using Error::Error;
};

class NotTame : public Error {
 public:
  using Error::Error;
};

class HorizonTooSmall : public Error {
 public:
  using Error::Error;
};

class NotTameTier : public Error {
 public:
  using Error::Error;
};

class UnsupportedExpression : public Error {
 public:
  using Error::Error;
};

/// Carries a human-readable position ("file.json: nodes.2[3]: ...") in what().
class ParseError : public Error {
 public:
  ParseError(const std::string& position, const std::string& message)
      : Error(position + ": " + message), position_(position) {}

  const std::string& position() const { return position_; }

 private:
  std::string position_;
};

}  // namespace cosettree

#endif  // COSETTREE_ERRORS_HPP
