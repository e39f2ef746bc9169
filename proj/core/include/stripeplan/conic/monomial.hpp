// SPDX-License-Identifier: Apache-2.0
//
// stripeplan: radio stripe deployment planning for near-field wireless power transfer
// Copyright (C) 2026 The stripeplan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "stripeplan/conic/gp.hpp"

#include <functional>
#include <span>
#include <vector>

namespace stripeplan::conic
{

// f(v0) * prod_l (v_l / v0_l)^beta_l
struct MonomialApprox
{
    double value = 0.0;
    std::vector<double> exponents;
    std::vector<double> point;

    double operator()(std::span<const double> v) const;

    // Same monomial as a GP term over the given variable indices
    Monomial as_monomial(std::span<const int> variables) const;
};

using ScalarFunction = std::function<double(std::span<const double>)>;
using GradientFunction = std::function<std::vector<double>(std::span<const double>)>;

// Best local monomial approximation at a positive point: beta_l = v_l (df/dv_l) / f.
// Without an analytic gradient the log-log slope is taken by central differences.
MonomialApprox monomial_approx(const ScalarFunction &f, std::span<const double> point,
                               const GradientFunction &gradient = nullptr);

} // namespace stripeplan::conic
