#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fragmerge {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UniverseMismatch : public Error {
 public:
  UniverseMismatch() : Error("operands are defined over different universes") {}
};

class UniverseTooLarge : public Error {
 public:
  UniverseTooLarge(std::size_t atoms, std::size_t cap)
      : Error("universe of " + std::to_string(atoms) +
              " atoms exceeds the enumeration cap of " + std::to_string(cap)),
        atoms_(atoms), cap_(cap) {}
  std::size_t atoms() const { return atoms_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t atoms_;
  std::size_t cap_;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  NotSymmetric(std::string witness_a, std::string witness_b)
      : Error("boolean function is not symmetric: inputs " + witness_a +
              " and " + witness_b + " have equal weight but different outputs"),
        witness_a_(std::move(witness_a)), witness_b_(std::move(witness_b)) {}
  const std::string& witness_a() const { return witness_a_; }
  const std::string& witness_b() const { return witness_b_; }

 private:
  std::string witness_a_;
  std::string witness_b_;
};

class NotReproducing : public Error {
 public:
  explicit NotReproducing(std::string witness)
      : Error("boolean function is not 0-/1-reproducing: input " + witness +
              " maps to the opposite value"),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at position " + std::to_string(position) + ": " +
              what),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAtom : public Error {
 public:
  explicit UnknownAtom(std::string name)
      : Error("unknown atom '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Raised when a model set is expected to be closed under a boolean function
// but is not. The witness is a tuple of interpretations (as bit patterns)
// whose pointwise image falls outside the set.
class NotClosed : public Error {
 public:
  NotClosed(std::vector<std::uint32_t> witness, const std::string& rendered)
      : Error("model set is not closed: " + rendered),
        witness_(std::move(witness)) {}
  const std::vector<std::uint32_t>& witness() const { return witness_; }

 private:
  std::vector<std::uint32_t> witness_;
};

class NoSyntacticFragment : public Error {
 public:
  NoSyntacticFragment()
      : Error("fragment has no syntactic clause class; cannot synthesize") {}
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class InconsistentBase : public Error {
 public:
  using Error::Error;
};

class InvalidDistance : public Error {
 public:
  using Error::Error;
};

class MappingViolation : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SpaceTooLarge : public Error {
 public:
  using Error::Error;
};

class UnknownFixture : public Error {
 public:
  explicit UnknownFixture(const std::string& id)
      : Error("unknown fixture '" + id + "'") {}
};

}  // namespace fragmerge
