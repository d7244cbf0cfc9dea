// Copyright 2026 The orthodyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace orthodyn {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Transform = Eigen::Isometry3d;

inline constexpr int kNumChains = 3;

template <typename T>
using PerChain = std::array<T, kNumChains>;

// Error kinds double as the machine-readable tag printed by the CLI.
enum class ErrorKind {
  kParse,
  kValidation,
  kOutOfWorkspace,
  kChainSingular,
  kNumerical,
  kUsage,
  kIo,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::kParse, what) {}
};

// Names the offending field so config authors can find it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(ErrorKind::kValidation, field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class OutOfWorkspace : public Error {
 public:
  // `which_arcsine` is 1 for the q3 arcsine and 2 for the q2 arcsine, 0 when
  // not applicable (e.g. a path endpoint failing for another reason).
  OutOfWorkspace(int chain, int which_arcsine, const std::string& what)
      : Error(ErrorKind::kOutOfWorkspace, what),
        chain_(chain),
        which_arcsine_(which_arcsine) {}
  int chain() const { return chain_; }
  int which_arcsine() const { return which_arcsine_; }

 private:
  int chain_;
  int which_arcsine_;
};

class ChainSingular : public Error {
 public:
  ChainSingular(int chain, const std::string& what)
      : Error(ErrorKind::kChainSingular, what), chain_(chain) {}
  int chain() const { return chain_; }

 private:
  int chain_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::kNumerical, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

inline bool all_finite(const Vec3& v) { return v.allFinite(); }

}  // namespace orthodyn
