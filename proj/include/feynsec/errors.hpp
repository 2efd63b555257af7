#pragma once

#include <stdexcept>
#include <string>

namespace feynsec {

// Exit codes used by the command line front end.
enum class ErrorKind { Parse = 2, Domain = 3, Strategy = 4, Internal = 5 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(ErrorKind::Parse, w) {}
};

// Bad kinematics, topology, divergent input, branch cuts.
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};

struct TopologyError : DomainError {
  explicit TopologyError(const std::string& w) : DomainError("topology: " + w) {}
};

struct KinematicsError : DomainError {
  explicit KinematicsError(const std::string& w) : DomainError("kinematics: " + w) {}
};

struct DivergenceError : DomainError {
  explicit DivergenceError(const std::string& w) : DomainError("divergence: " + w) {}
};

struct IllegalMoveError : DomainError {
  explicit IllegalMoveError(const std::string& w) : DomainError("illegal move: " + w) {}
};

struct StrategyError : Error {
  explicit StrategyError(const std::string& w) : Error(ErrorKind::Strategy, w) {}
};

struct InternalError : Error {
  explicit InternalError(const std::string& w) : Error(ErrorKind::Internal, w) {}
};

}  // namespace feynsec
