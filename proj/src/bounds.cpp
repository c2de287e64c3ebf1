// Copyright 2026 The peekdec Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "peekdec/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace peekdec {

namespace {

void check_args(int latency, int order, int delta) {
  if (latency < 1) throw std::invalid_argument("latency must be >= 1");
  if (order < 1) throw std::invalid_argument("order must be >= 1");
  if (delta < 1) throw std::invalid_argument("diameter must be >= 1");
}

// effective diameter: order-n dependencies stretch a move by n-1 steps
inline int effective(int order, int delta) { return delta + order - 1; }

}  // namespace

std::optional<double> optimal_gamma(int latency, int order, int delta) {
  check_args(latency, order, delta);
  const int d = effective(order, delta);
  if (latency < d) return std::nullopt;
  const double L = latency;
  return std::pow(d / (L + 1), 1.0 / (L - d + 1));
}

std::optional<double> peek_search_upper_bound(int latency, int order,
                                              int delta) {
  check_args(latency, order, delta);
  const int d = effective(order, delta);
  if (latency < d) return std::nullopt;
  const double L = latency;
  return (L + 1) / (L - d + 1) * std::pow((L + 1) / d, d / (L - d + 1));
}

std::optional<double> randomized_upper_bound(int latency, int order,
                                             int delta) {
  check_args(latency, order, delta);
  const int d = effective(order, delta);
  if (latency + 1 <= d) return std::nullopt;
  return 1.0 + static_cast<double>(d) / (latency + 1 - d);
}

std::optional<double> peek_reset_upper_bound(int latency, int order,
                                             int delta) {
  check_args(latency, order, delta);
  const int d = effective(order, delta);
  const int denom = latency - 8 * d + 1;
  if (denom <= 0) return std::nullopt;
  return 1.0 + 2.0 * (delta + order) * d / denom;
}

double deterministic_lower_bound(int latency, int order, int delta) {
  check_args(latency, order, delta);
  const double d = effective(order, delta);
  const double L = latency;
  return 1.0 + d / L * (1.0 + (d + L - 1) / ((d + L - 1) * (d + L - 1) + d));
}

double deterministic_lower_bound_table_form(int latency, int order,
                                            int delta) {
  check_args(latency, order, delta);
  const double d = effective(order, delta);
  const double L = latency;
  // Same quantity with the fraction brought over the common denominator
  // (L-d-1)^2 + 4dL - 3d == (d+L-1)^2 + d.
  const double numer = d * ((d + L - 1) * (d + L - 1) + d + (d + L - 1));
  const double denom = L * ((L - d - 1) * (L - d - 1) + 4 * d * L - 3 * d);
  return 1.0 + numer / denom;
}

double randomized_lower_bound(int latency, int order, int delta, double eps) {
  check_args(latency, order, delta);
  if (!(eps > 0.0) || eps > 1.0) {
    throw std::invalid_argument("eps must lie in (0, 1]");
  }
  const double L = latency;
  const double n = order;
  // ceil(1/eps) with a guard against 1/eps landing a hair above an integer.
  const double m = std::ceil(1.0 / eps - 1e-9);
  const double u = std::ldexp(m, delta - 1);  // 2^(delta-1) * ceil(1/eps)
  const double general = 1.0 + (u - 1.0) * n / (u * L + n);
  if (delta > 1) return general;
  // delta = 1: the two published spellings must agree.
  const double ratio_form = (L + n) / (L + n / u);
  if (std::fabs(general - ratio_form) >
      1e-12 * std::max(1.0, std::fabs(general))) {
    throw std::logic_error("randomized bound forms disagree");
  }
  return 1.0 + (1.0 - eps) * n / (L + eps * n);
}

}  // namespace peekdec
