// Copyright 2026 The dtl Authors.
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

// Small numeric fixtures shared by the learner tests and the acceptance run.

#ifndef DTL_TESTS_FIXTURES_H_
#define DTL_TESTS_FIXTURES_H_

#include <random>

#include "dtl/learners.h"

namespace fixture {

// Two Gaussian blobs in 2-D with centres at +-shift on the x axis. With
// separable = true, points are rejected until they fall on the correct side
// of x = 0 with a margin.
inline dtl::LabeledMatrix blobs(std::uint32_t seed, std::size_t n, double shift, double noise,
                                bool separable = false) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> g(0.0, noise);
  dtl::LabeledMatrix out{dtl::FeatureMatrix(n, 2), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    const double cx = y ? shift : -shift;
    double x0, x1;
    do {
      x0 = cx + g(gen);
      x1 = g(gen);
    } while (separable && (y ? x0 < 0.2 : x0 > -0.2));
    out.x.at(i, 0) = x0;
    out.x.at(i, 1) = x1;
    out.y[i] = y;
  }
  return out;
}

// Same task with a rotated decision boundary, standing in for a related source domain.
inline dtl::LabeledMatrix shifted_blobs(std::uint32_t seed, std::size_t n) {
  auto d = blobs(seed, n, 1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d.x.at(i, 0), b = d.x.at(i, 1);
    d.x.at(i, 0) = 0.8 * a - 0.6 * b;
    d.x.at(i, 1) = 0.6 * a + 0.8 * b;
  }
  return d;
}

}  // namespace fixture

#endif  // DTL_TESTS_FIXTURES_H_
