#pragma once

#include <stdexcept>
#include <string>

namespace lagtor {

// Exit-code classes used by the CLI: input errors map to 1, RefineNeeded
// to 2, internal failures and failed checks to 3.
enum class ErrorClass { Input, Refine, Internal };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

private:
  ErrorClass cls_;
};

// Enclosure arithmetic cannot certify the sign of a nonzero difference.
class RefineNeeded : public Error {
public:
  explicit RefineNeeded(const std::string& what)
      : Error(ErrorClass::Refine, what) {}
};

class BasisMismatch : public Error {
public:
  explicit BasisMismatch(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class DimensionMismatch : public Error {
public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class GroupMismatch : public Error {
public:
  explicit GroupMismatch(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class NotAMember : public Error {
public:
  explicit NotAMember(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class NotPrimitive : public Error {
public:
  explicit NotPrimitive(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class NotSubmodule : public Error {
public:
  explicit NotSubmodule(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class CapacityTooSmall : public Error {
public:
  explicit CapacityTooSmall(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class NonPositiveResult : public Error {
public:
  explicit NonPositiveResult(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class DomainViolation : public Error {
public:
  explicit DomainViolation(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class NotEquivalent : public Error {
public:
  explicit NotEquivalent(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class InputError : public Error {
public:
  explicit InputError(const std::string& what)
      : Error(ErrorClass::Input, what) {}
};

class IterationLimit : public Error {
public:
  explicit IterationLimit(const std::string& what)
      : Error(ErrorClass::Internal, what) {}
};

class StateSpaceCap : public Error {
public:
  explicit StateSpaceCap(const std::string& what)
      : Error(ErrorClass::Internal, what) {}
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& what)
      : Error(ErrorClass::Internal, what) {}
};

inline void internal_check(bool ok, const char* what) {
  if (!ok) throw InternalError(what);
}

}  // namespace lagtor
