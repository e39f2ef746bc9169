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

#include "stripeplan/conic/monomial.hpp"

#include <cmath>
#include <stdexcept>

namespace stripeplan::conic
{

double MonomialApprox::operator()(std::span<const double> v) const
{
    if (v.size() != point.size())
        throw std::invalid_argument("MonomialApprox: dimension mismatch");
    double log_r = std::log(value);
    for (std::size_t l = 0; l < v.size(); ++l)
        log_r += exponents[l] * (std::log(v[l]) - std::log(point[l]));
    return std::exp(log_r);
}

Monomial MonomialApprox::as_monomial(std::span<const int> variables) const
{
    if (variables.size() != point.size())
        throw std::invalid_argument("MonomialApprox: variable list has wrong length");
    Monomial m;
    double log_c = std::log(value);
    for (std::size_t l = 0; l < point.size(); ++l)
    {
        if (exponents[l] == 0.0)
            continue;
        log_c -= exponents[l] * std::log(point[l]);
        m.exponents.emplace_back(variables[l], exponents[l]);
    }
    m.coefficient = std::exp(log_c);
    return m;
}

MonomialApprox monomial_approx(const ScalarFunction &f, std::span<const double> point,
                               const GradientFunction &gradient)
{
    for (double v : point)
        if (!(v > 0.0))
            throw std::domain_error("monomial_approx: expansion point must be strictly positive");
    MonomialApprox m;
    m.point.assign(point.begin(), point.end());
    m.value = f(point);
    if (!(m.value > 0.0) || !std::isfinite(m.value))
        throw std::domain_error("monomial_approx: function must be positive at the expansion point");
    m.exponents.resize(point.size());
    if (gradient)
    {
        const auto g = gradient(point);
        if (g.size() != point.size())
            throw std::invalid_argument("monomial_approx: gradient has wrong length");
        for (std::size_t l = 0; l < point.size(); ++l)
            m.exponents[l] = point[l] * g[l] / m.value;
        return m;
    }
    // d log f / d log v_l by central differences in log coordinates
    const double h = 1e-5;
    std::vector<double> v(point.begin(), point.end());
    for (std::size_t l = 0; l < point.size(); ++l)
    {
        v[l] = point[l] * std::exp(h);
        const double fp = f(v);
        v[l] = point[l] * std::exp(-h);
        const double fm = f(v);
        v[l] = point[l];
        if (!(fp > 0.0) || !(fm > 0.0))
            throw std::domain_error("monomial_approx: function not positive near the expansion point");
        m.exponents[l] = (std::log(fp) - std::log(fm)) / (2.0 * h);
    }
    return m;
}

} // namespace stripeplan::conic
