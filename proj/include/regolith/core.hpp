// Copyright 2026 The Regolith Authors.
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
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace regolith {

inline constexpr std::string_view kLibraryVersion = "0.1.0";
// Bumped whenever any serialized document changes shape.
inline constexpr int kSchemaVersion = 1;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorKind {
  kInvalidInput,
  kRange,
  kNotFound,
  kGeometry,
  kEmptyModel,
  kConditioning,
  kIo,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid_input";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kNotFound: return "not_found";
    case ErrorKind::kGeometry: return "geometry";
    case ErrorKind::kEmptyModel: return "empty_model";
    case ErrorKind::kConditioning: return "conditioning";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

/// Base error for everything thrown by the library. `fields()` names the
/// offending inputs when the failure can be attributed to them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> fields = {})
      : std::runtime_error(message), kind_(kind), fields_(std::move(fields)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& fields() const noexcept { return fields_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> fields_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message,
                        std::vector<std::string> fields = {})
      : Error(ErrorKind::kInvalidInput, message, std::move(fields)) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& message,
                      std::vector<std::string> fields = {})
      : Error(ErrorKind::kRange, message, std::move(fields)) {}
};

class NotFound : public Error {
 public:
  explicit NotFound(const std::string& message)
      : Error(ErrorKind::kNotFound, message) {}
};

class GeometryError : public Error {
 public:
  explicit GeometryError(const std::string& message)
      : Error(ErrorKind::kGeometry, message) {}
};

class EmptyModelError : public Error {
 public:
  explicit EmptyModelError(const std::string& message)
      : Error(ErrorKind::kEmptyModel, message) {}
};

class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& message)
      : Error(ErrorKind::kConditioning, message) {}
};

class IoError : public Error {
 public:
  IoError(const std::string& message, std::string path)
      : Error(ErrorKind::kIo, message, {path}) {}
};

inline void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw InvalidInput(std::string(name) + " must be finite", {name});
  }
}

// ---------------------------------------------------------------------------
// Reproducible randomness
// ---------------------------------------------------------------------------

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
template <typename Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Wheel indexing
// ---------------------------------------------------------------------------

/// Wheel-leg order used by every per-wheel array in the library.
enum class Wheel : int { kFL = 0, kFR = 1, kRL = 2, kRR = 3 };

inline constexpr std::size_t kWheelCount = 4;
inline constexpr std::array<Wheel, kWheelCount> kAllWheels = {
    Wheel::kFL, Wheel::kFR, Wheel::kRL, Wheel::kRR};

template <typename T>
using PerWheel = std::array<T, kWheelCount>;

constexpr std::size_t index(Wheel w) { return static_cast<std::size_t>(w); }

constexpr bool is_left(Wheel w) { return w == Wheel::kFL || w == Wheel::kRL; }
constexpr bool is_front(Wheel w) { return w == Wheel::kFL || w == Wheel::kFR; }

/// The wheel on the other side of the body midline.
constexpr Wheel mirror_of(Wheel w) {
  switch (w) {
    case Wheel::kFL: return Wheel::kFR;
    case Wheel::kFR: return Wheel::kFL;
    case Wheel::kRL: return Wheel::kRR;
    case Wheel::kRR: return Wheel::kRL;
  }
  return w;
}

inline std::string_view wheel_name(Wheel w) {
  switch (w) {
    case Wheel::kFL: return "FL";
    case Wheel::kFR: return "FR";
    case Wheel::kRL: return "RL";
    case Wheel::kRR: return "RR";
  }
  return "?";
}

inline Wheel wheel_from_name(std::string_view name) {
  for (Wheel w : kAllWheels) {
    if (wheel_name(w) == name) return w;
  }
  throw NotFound("unknown wheel '" + std::string(name) + "'");
}

}  // namespace regolith
