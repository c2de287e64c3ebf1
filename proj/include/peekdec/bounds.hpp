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

#ifndef PEEKDEC_BOUNDS_HPP_
#define PEEKDEC_BOUNDS_HPP_

#include <optional>

namespace peekdec {

// Closed-form competitive-ratio bounds for the lookahead decoders on ergodic
// instances with non-negative rewards.  Arguments everywhere: latency budget
// L >= 1, model order n >= 1, graph diameter delta >= 1; the effective
// diameter is delta + n - 1.  Functions return std::nullopt when their
// precondition fails (budget too small for the guarantee), and throw
// std::invalid_argument on nonsensical arguments (L, n or delta < 1).
// All returned ratios are >= 1 and decrease toward 1 as L grows.

// Discount the Peek Search guarantee is optimized at:
//   ((delta+n-1)/(L+1))^(1/(L-delta-n+2)),  defined for L >= delta+n-1.
std::optional<double> optimal_gamma(int latency, int order, int delta);

// Peek Search with the optimal discount:
//   (L+1)/(L-delta-n+2) * ((L+1)/(delta+n-1))^((n+delta-1)/(L-delta-n+2)),
// defined for L >= delta+n-1.
std::optional<double> peek_search_upper_bound(int latency, int order,
                                              int delta);

// Randomized Peek Search, in expectation over the reset draw:
//   1 + (delta+n-1)/(L+1-(delta+n-1)),  defined for L+1 > delta+n-1.
std::optional<double> randomized_upper_bound(int latency, int order,
                                             int delta);

// Peek Reset (deterministic, undiscounted):
//   1 + 2(delta+n)(delta+n-1)/(L - 8(delta+n-1) + 1),
// defined when the denominator is positive.
std::optional<double> peek_reset_upper_bound(int latency, int order,
                                             int delta);

// Floor for every deterministic decoder.  Writing D = delta+n-1:
//   1 + (D/L) * (1 + (D+L-1)/((D+L-1)^2 + D)).
// Always defined for valid arguments.  The algebraically equal published
// table form (see deterministic_lower_bound_table_form) is evaluated
// alongside and the two are required to agree to 1e-12 relative.
double deterministic_lower_bound(int latency, int order, int delta);

// Same quantity written 1 + D(D+L-1+...)/(L((L-D-1)^2 + 4DL - 3D)) --- the
// form the summary table uses.  Exposed so both spellings stay covered.
double deterministic_lower_bound_table_form(int latency, int order, int delta);

// Floor for randomized decoders against an oblivious adversary, parametrized
// by eps in (0, 1].  For delta = 1 this is 1 + (1-eps)n/(L+eps*n); for
// delta > 1 the general u-state form 1 + (u-1)n/(uL+n) with
// u = 2^(delta-1) * ceil(1/eps).  At delta = 1 the general form collapses to
// (L+n)/(L+n/u); both are evaluated and cross-checked there.
double randomized_lower_bound(int latency, int order, int delta, double eps);

}  // namespace peekdec

#endif  // PEEKDEC_BOUNDS_HPP_
