// SPDX-License-Identifier: Apache-2.0
//
// mmct: multi-stream MIMO mapping and link-level toolkit
// Copyright (C) 2026 The mmct authors
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace mmct {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameter set (mapper tuple, MCS, scenario, resource overflow).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class MappingError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

// Receiver-side inconsistency between a grid and the mapping that produced it.
class CorruptionError : public Error {
 public:
  using Error::Error;
};

class FramingError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmct
