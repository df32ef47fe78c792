#pragma once

#include <stdexcept>
#include <string>

namespace lsmjoin {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A read or write against a run, spill or CSV file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

// Bytes on disk (or inside an index value) do not decode.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

// Invalid storage/index/join configuration, detected before any I/O.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Infeasible workload or cost-model parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Two join methods disagreed on the result of the same join.
class CorrectnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsmjoin
