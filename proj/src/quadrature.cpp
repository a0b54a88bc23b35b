// Copyright 2026 The lersim Authors
//
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

#include "ler/quadrature.hpp"

#include <cmath>

namespace ler {

namespace {

struct Panel {
  double a, b;
  cplx fa, fm, fb, whole;
};

cplx refine(const ComplexIntegrand& f, const Panel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const cplx flm = f(lm);
  const cplx frm = f(rm);
  const cplx left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const cplx right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const cplx delta = left + right - p.whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

cplx adaptive_simpson(const ComplexIntegrand& f, double a, double b, double tol, int max_depth) {
  if (b == a) return {0.0, 0.0};
  // Pre-split into 8 panels so narrow features near one end are not missed by the first test.
  constexpr int kPanels = 8;
  const double w = (b - a) / kPanels;
  cplx acc{0.0, 0.0};
  cplx fa = f(a);
  for (int k = 0; k < kPanels; ++k) {
    const double pa = a + k * w;
    const double pb = k + 1 == kPanels ? b : a + (k + 1) * w;
    const cplx fm = f(0.5 * (pa + pb));
    const cplx fb = f(pb);
    const cplx whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    acc += refine(f, {pa, pb, fa, fm, fb, whole}, tol / kPanels, max_depth);
    fa = fb;
  }
  return acc;
}

cplx simpson_uniform(const std::vector<cplx>& s, double h) {
  const std::size_t n = s.size();
  if (n < 2) return {0.0, 0.0};
  const std::size_t m = (n % 2 == 1) ? n : n - 1;
  cplx acc{0.0, 0.0};
  if (m >= 3) {
    acc = s[0] + s[m - 1];
    for (std::size_t k = 1; k + 1 < m; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * s[k];
    acc *= h / 3.0;
  }
  if (m != n) acc += 0.5 * h * (s[n - 2] + s[n - 1]);
  return acc;
}

}  // namespace ler
