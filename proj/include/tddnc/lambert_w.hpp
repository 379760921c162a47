// Copyright 2026 The tddnc Authors
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

#pragma once

namespace tddnc {

// Lower real branch W_{-1}(x) for x in [-1/e, 0): the solution w <= -1 of
// w * exp(w) = x. Throws std::invalid_argument outside that interval.
double lambert_w_minus1(double x);

// W_{-1} parameterised by L = ln(-x), so arguments far below the smallest
// double (x = -exp(-1000)) stay representable. Requires L <= -1.
double lambert_w_minus1_from_log(double log_neg_x);

}  // namespace tddnc
