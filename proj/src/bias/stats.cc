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


#include "biasaudit/bias/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "biasaudit/common/error.h"

namespace biasaudit {
namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 1000;

// Continued fraction for I_x(a, b) (modified Lentz).
double BetaContinuedFraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return h;
}

double Clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

TTestResult FromStatistic(double diff, double standard_error, double df,
                          std::size_t n) {
  TTestResult r;
  r.df = df;
  r.n = n;
  if (standard_error == 0.0) {
    if (diff != 0.0) {
      throw Error(ErrorCode::kZeroVariance,
                  "t statistic undefined: no spread but nonzero difference");
    }
    r.zero_variance = true;
    return r;
  }
  r.t = diff / standard_error;
  r.p = StudentTwoSidedP(r.t, df);
  return r;
}

void RequireAtLeast(std::size_t n, std::size_t minimum, const char* what) {
  if (n < minimum) {
    throw Error(ErrorCode::kTooFewSamples,
                std::string(what) + " needs at least " +
                    std::to_string(minimum) + " values, got " +
                    std::to_string(n));
  }
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0) || x < 0.0 || x > 1.0 || std::isnan(x)) {
    throw Error(ErrorCode::kInvalidArgument, "incomplete beta out of domain");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * BetaContinuedFraction(a, b, x) / a;
  }
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTwoSidedP(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::kInvalidArgument, "df must be positive");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  return Clamp01(RegularizedIncompleteBeta(0.5 * df, 0.5, df / (df + t * t)));
}

double Mean(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kEmptyInput, "mean of nothing");
  double sum = 0.0;
  for (double v : x) sum += v;
  return sum / static_cast<double>(x.size());
}

double SampleVariance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = Mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return ss / static_cast<double>(x.size() - 1);
}

PearsonResult Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "pearson inputs differ in length");
  }
  RequireAtLeast(x.size(), 3, "pearson");
  const double mx = Mean(x);
  const double my = Mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance, "pearson with a constant input");
  }
  PearsonResult res;
  res.n = x.size();
  res.r = std::max(-1.0, std::min(1.0, sxy / std::sqrt(sxx * syy)));
  const double df = static_cast<double>(res.n - 2);
  const double one_minus = 1.0 - res.r * res.r;
  if (one_minus <= 0.0) {
    res.p = 0.0;
  } else {
    res.p = StudentTwoSidedP(res.r * std::sqrt(df / one_minus), df);
  }
  return res;
}

TTestResult OneSampleTTest(std::span<const double> x, double mu) {
  RequireAtLeast(x.size(), 2, "one-sample t-test");
  const double n = static_cast<double>(x.size());
  const double se = std::sqrt(SampleVariance(x) / n);
  return FromStatistic(Mean(x) - mu, se, n - 1.0, x.size());
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "paired samples differ in length");
  }
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return OneSampleTTest(diff, 0.0);
}

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  RequireAtLeast(a.size(), 2, "welch t-test");
  RequireAtLeast(b.size(), 2, "welch t-test");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = SampleVariance(a) / na;
  const double vb = SampleVariance(b) / nb;
  const double se2 = va + vb;
  double df = na + nb - 2.0;
  if (se2 > 0.0) {
    df = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  }
  return FromStatistic(Mean(a) - Mean(b), std::sqrt(se2), df,
                       a.size() + b.size());
}

}  // namespace biasaudit
