/*
 * Copyright 2026 The BiasAudit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef BIASAUDIT_BIAS_STATS_H_
#define BIASAUDIT_BIAS_STATS_H_

#include <span>

namespace biasaudit {

// I_x(a, b) by the Lentz continued fraction, with the symmetry
// I_x(a, b) = 1 - I_{1-x}(b, a) applied for fast convergence.
double RegularizedIncompleteBeta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double StudentTwoSidedP(double t, double df);

double Mean(std::span<const double> x);
// Sample variance (n - 1 denominator); 0 for fewer than two values.
double SampleVariance(std::span<const double> x);

struct PearsonResult {
  double r = 0.0;
  double p = 1.0;
  std::size_t n = 0;
};

// Sample correlation with a two-sided p from t = r sqrt((n-2)/(1-r^2)) on
// n-2 degrees of freedom. Throws LengthMismatch, TooFewSamples (n < 3),
// ZeroVariance.
PearsonResult Pearson(std::span<const double> x, std::span<const double> y);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  std::size_t n = 0;
  // The sample had no spread and the null held exactly: t = 0, p = 1.
  bool zero_variance = false;
};

// Two-sided tests. With zero spread, a zero mean difference yields t = 0,
// p = 1 and the zero_variance flag; a nonzero one throws ZeroVariance.
// Throws TooFewSamples for fewer than two values (per sample).
TTestResult OneSampleTTest(std::span<const double> x, double mu);
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);
// Unequal-variance test with Welch-Satterthwaite degrees of freedom.
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b);

}  // namespace biasaudit

#endif  // BIASAUDIT_BIAS_STATS_H_
