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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "regolith/core.hpp"

namespace regolith::bo {

enum class DimKind {
  kContinuous,  // affine map of [lower, upper] onto [0, 1]
  kSign,        // two-valued: lower below 0.5, upper at or above
};

inline std::string_view to_string(DimKind k) {
  return k == DimKind::kContinuous ? "continuous" : "sign";
}

inline DimKind dim_kind_from_string(std::string_view s) {
  if (s == "continuous") return DimKind::kContinuous;
  if (s == "sign") return DimKind::kSign;
  throw InvalidInput("unknown dimension kind '" + std::string(s) + "'", {"kind"});
}

struct Dim {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  DimKind kind = DimKind::kContinuous;

  bool operator==(const Dim&) const = default;
};

/// Ordered, named box the optimizer searches after normalization to [0, 1]^d.
class ParamSpace {
 public:
  ParamSpace() = default;
  explicit ParamSpace(std::vector<Dim> dims) : dims_(std::move(dims)) { validate(); }

  std::size_t d() const { return dims_.size(); }
  const std::vector<Dim>& dims() const { return dims_; }
  const Dim& operator[](std::size_t i) const { return dims_.at(i); }

  void validate() const {
    std::vector<std::string> bad;
    std::set<std::string> seen;
    for (const Dim& dim : dims_) {
      if (!(std::isfinite(dim.lower) && std::isfinite(dim.upper) && dim.lower < dim.upper)) {
        bad.push_back(dim.name);
      }
      if (!seen.insert(dim.name).second) bad.push_back(dim.name);
    }
    if (!bad.empty()) throw InvalidInput("invalid parameter space dimensions", bad);
  }

  /// Physical value to unit coordinate. Throws RangeError naming every
  /// out-of-bounds dimension.
  std::vector<double> normalize(const std::vector<double>& values) const {
    check_size(values.size());
    std::vector<double> x(d());
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < d(); ++i) {
      const Dim& dim = dims_[i];
      const double v = values[i];
      if (dim.kind == DimKind::kSign) {
        if (v == dim.lower) {
          x[i] = 0.0;
        } else if (v == dim.upper) {
          x[i] = 1.0;
        } else {
          bad.push_back(dim.name);
        }
        continue;
      }
      if (!(v >= dim.lower && v <= dim.upper)) {
        bad.push_back(dim.name);
        continue;
      }
      x[i] = (v - dim.lower) / (dim.upper - dim.lower);
    }
    if (!bad.empty()) throw RangeError("values outside the parameter space", bad);
    return x;
  }

  /// Unit coordinate to physical value. Throws RangeError naming every
  /// coordinate outside [0, 1].
  std::vector<double> denormalize(const std::vector<double>& x) const {
    check_size(x.size());
    std::vector<double> values(d());
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < d(); ++i) {
      const Dim& dim = dims_[i];
      if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
        bad.push_back(dim.name);
        continue;
      }
      if (dim.kind == DimKind::kSign) {
        values[i] = x[i] < 0.5 ? dim.lower : dim.upper;
      } else {
        values[i] = dim.lower + x[i] * (dim.upper - dim.lower);
      }
    }
    if (!bad.empty()) throw RangeError("coordinates outside the unit cube", bad);
    return values;
  }

  bool operator==(const ParamSpace&) const = default;

 private:
  void check_size(std::size_t n) const {
    if (n != d()) {
      throw InvalidInput("expected " + std::to_string(d()) + " coordinates, got " +
                         std::to_string(n));
    }
  }

  std::vector<Dim> dims_;
};

inline bool in_unit_cube(const std::vector<double>& x) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return true;
}

}  // namespace regolith::bo
