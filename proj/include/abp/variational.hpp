// Copyright 2026 The abp Authors
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

// Minimal total growth cost over admissible rectangle sequences, in the
// normalized coordinates width = p^{-X}, height = (Y/p) log(1/p).

#ifndef ABP_VARIATIONAL_HPP_
#define ABP_VARIATIONAL_HPP_

#include <ostream>
#include <stdexcept>
#include <vector>

namespace abp::variational {

struct NormalizedRect {
  double X = 0;
  double Y = 0;

  friend bool operator==(const NormalizedRect&, const NormalizedRect&) = default;
};

struct PathConstraints {
  double p = 1e-6;
  /// Cap on the first height and on every height increment.
  double T = 0.02;
  double grid_dX = 0.005;
  double grid_dY = 0.005;
  double X_max = 2.5;

  /// Defaults the grid to T/4 in both directions.
  static PathConstraints with_default_grid(double p, double T);
  void validate() const;
};

/// Raised when no grid path satisfies the constraints.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (p^{1-X'+3Y'} - p^{1-X+3Y'}) / log(1/p)^2 + (Y'-Y) min(2-X', 1).
/// Powers below 1e-300 are taken as 0.
double w_normalized(double p, NormalizedRect from, NormalizedRect to);

struct LambdaResult {
  double value = 0;
  std::vector<NormalizedRect> path;
  /// terms[i] is the cost of the move path[i] -> path[i+1].
  std::vector<double> terms;
};

/// Exact minimum of the summed cost over monotone grid paths that start with
/// Y0 <= T and X0 <= 1 + 2T, move by at most T in Y per step and end at
/// Y >= 1/3. Ties resolve to the smallest predecessor (Y index, then X index).
/// Throws InfeasibleError when the grid admits no path.
LambdaResult lambda_T(const PathConstraints& pc);

/// Integral of max{1 - (k+1) y, 0} over [T, infinity), in closed form.
double limit_integral(double T, int k = 2);

/// Rows "n,X,Y,W" (W is the cost of reaching row n; 0 for the first row).
void write_path_csv(std::ostream& out, const LambdaResult& result);

}  // namespace abp::variational

#endif  // ABP_VARIATIONAL_HPP_
