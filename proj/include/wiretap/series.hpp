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

namespace wiretap {

/// Stopping rule for the k-series. A term "passes" when
/// |term| / |partial sum| < rel_tol; the series stops after
/// consecutive_passes passes in a row, or fails at k_max terms.
/// While term magnitudes are shrinking by a factor r per step, |term| is
/// replaced by the geometric tail estimate |term| / (1 - r), so slowly
/// decaying series (rho near 1) are not cut off early.
struct SeriesControl {
    double rel_tol = 1e-12;
    int consecutive_passes = 3;
    int k_max = 5000;

    /// Throws DomainError unless rel_tol in (0, 1e-3], passes >= 1, k_max >= 10.
    void validate() const;
};

/// Compensated running sum of a series plus the stopping rule above.
class TruncatedSeries {
public:
    explicit TruncatedSeries(const SeriesControl& ctrl);

    /// Adds the next term; true once the series has converged.
    bool add(double term);

    bool converged() const noexcept { return passes_ >= ctrl_.consecutive_passes; }
    bool exhausted() const noexcept { return terms_ >= ctrl_.k_max; }
    double value() const noexcept { return sum_ + comp_; }
    int terms() const noexcept { return terms_; }
    double last_term_ratio() const noexcept { return last_ratio_; }

private:
    SeriesControl ctrl_;
    double sum_ = 0.0;
    double comp_ = 0.0;
    int terms_ = 0;
    int passes_ = 0;
    double last_ratio_ = 1.0;
    double prev_abs_ = 0.0;
};

}  // namespace wiretap
