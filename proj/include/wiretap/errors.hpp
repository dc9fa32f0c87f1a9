// Copyright (C) 2026 The wiretap authors
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

#include <stdexcept>
#include <string>

namespace wiretap {

/// Argument outside the mathematical or modelled domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A truncated series hit its term cap before meeting the tolerance.
/// The partial sum reached so far travels with the exception.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, double partial, int terms)
        : std::runtime_error(what), partial_(partial), terms_(terms) {}

    double partial() const noexcept { return partial_; }
    int terms() const noexcept { return terms_; }

private:
    double partial_;
    int terms_;
};

/// A result fell outside the range its definition allows by more than rounding slack.
class NumericalInconsistency : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of subdivisions before reaching tolerance.
class QuadratureNonconvergence : public std::runtime_error {
public:
    QuadratureNonconvergence(const std::string& what, double estimate, double error)
        : std::runtime_error(what), estimate_(estimate), error_(error) {}

    double estimate() const noexcept { return estimate_; }
    double error() const noexcept { return error_; }

private:
    double estimate_;
    double error_;
};

}  // namespace wiretap
