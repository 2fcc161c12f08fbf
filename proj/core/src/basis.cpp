#include "isospec/basis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace isospec::spectral {

namespace {

std::vector<int> flattened(const BasisEntry& e) {
  std::vector<int> key;
  key.reserve(e.alpha.size() + e.beta.size() + 2);
  key.insert(key.end(), e.alpha.begin(), e.alpha.end());
  key.insert(key.end(), e.beta.begin(), e.beta.end());
  key.push_back(e.gamma);
  key.push_back(e.delta);
  return key;
}

// Enumerates exponent vectors of total degree <= N over `vars` slots.
void enumerate(int vars, int N, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == vars) {
    out.push_back(current);
    return;
  }
  const int used = std::accumulate(current.begin(), current.end(), 0);
  for (int e = 0; e <= N - used; ++e) {
    current.push_back(e);
    enumerate(vars, N, current, out);
    current.pop_back();
  }
}

}  // namespace

int BasisEntry::degree() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0) +
         std::accumulate(beta.begin(), beta.end(), 0) + gamma + delta;
}

algebra::TorusWeight BasisEntry::weight() const {
  const int a = std::accumulate(alpha.begin(), alpha.end(), 0);
  const int b = std::accumulate(beta.begin(), beta.end(), 0);
  return algebra::TorusWeight{a - b, gamma - delta};
}

MonomialBasis MonomialBasis::build(int m, int N) {
  if (N < 1) throw Error("MonomialBasis: N must be >= 1");
  MonomialBasis basis;
  basis.m = m;
  basis.N = N;
  const int vars = 2 * m + 2;
  std::vector<std::vector<int>> exps;
  std::vector<int> current;
  enumerate(vars, N, current, exps);
  basis.entries.reserve(exps.size());
  for (const std::vector<int>& e : exps) {
    BasisEntry entry;
    entry.alpha.assign(e.begin(), e.begin() + m);
    entry.beta.assign(e.begin() + m, e.begin() + 2 * m);
    entry.gamma = e[2 * m];
    entry.delta = e[2 * m + 1];
    basis.entries.push_back(std::move(entry));
  }
  std::sort(basis.entries.begin(), basis.entries.end(),
            [](const BasisEntry& a, const BasisEntry& b) { return flattened(a) < flattened(b); });
  return basis;
}

std::vector<std::pair<algebra::TorusWeight, std::vector<int>>> MonomialBasis::weight_slices()
    const {
  std::map<algebra::TorusWeight, std::vector<int>> slices;
  for (std::size_t i = 0; i < entries.size(); ++i)
    slices[entries[i].weight()].push_back(static_cast<int>(i));
  return {slices.begin(), slices.end()};
}

BasisEvaluation evaluate_basis(const MonomialBasis& basis, const geometry::AmbientPoint& pt) {
  const int m = basis.m;
  const int vars = 2 * m + 2;  // z_0, zbar_0, ..., z_m, zbar_m
  const int N = basis.N;

  // Power tables per variable.
  std::vector<std::vector<Complex>> pw(vars);
  for (int j = 0; j <= m; ++j) {
    const Complex z = pt.z(j);
    const Complex zb = std::conj(z);
    pw[2 * j].resize(N + 1);
    pw[2 * j + 1].resize(N + 1);
    pw[2 * j][0] = pw[2 * j + 1][0] = 1.0;
    for (int k = 1; k <= N; ++k) {
      pw[2 * j][k] = pw[2 * j][k - 1] * z;
      pw[2 * j + 1][k] = pw[2 * j + 1][k - 1] * zb;
    }
  }

  BasisEvaluation ev;
  ev.vars = vars;
  ev.value.resize(basis.entries.size());
  ev.grad.assign(basis.entries.size() * vars, Complex(0.0, 0.0));

  std::vector<int> exps(vars);
  std::vector<Complex> factors(vars), prefix(vars + 1), suffix(vars + 1);
  for (std::size_t e = 0; e < basis.entries.size(); ++e) {
    const BasisEntry& entry = basis.entries[e];
    for (int j = 0; j < m; ++j) {
      exps[2 * j] = entry.alpha[j];
      exps[2 * j + 1] = entry.beta[j];
    }
    exps[2 * m] = entry.gamma;
    exps[2 * m + 1] = entry.delta;

    for (int v = 0; v < vars; ++v) factors[v] = pw[v][exps[v]];
    prefix[0] = 1.0;
    for (int v = 0; v < vars; ++v) prefix[v + 1] = prefix[v] * factors[v];
    suffix[vars] = 1.0;
    for (int v = vars - 1; v >= 0; --v) suffix[v] = suffix[v + 1] * factors[v];

    ev.value[e] = prefix[vars];
    for (int v = 0; v < vars; ++v) {
      if (exps[v] == 0) continue;
      ev.grad[e * vars + v] =
          static_cast<double>(exps[v]) * prefix[v] * pw[v][exps[v] - 1] * suffix[v + 1];
    }
  }
  return ev;
}

Complex directional_from_wirtinger(const std::vector<Complex>& grad, const VectorXd& dir,
                                   int m) {
  Complex acc(0.0, 0.0);
  for (int j = 0; j <= m; ++j) {
    const Complex d(dir[2 * j], dir[2 * j + 1]);
    acc += grad[2 * j] * d + grad[2 * j + 1] * std::conj(d);
  }
  return acc;
}

Complex BasisEvaluation::directional(int entry, const VectorXd& dir, int m) const {
  Complex acc(0.0, 0.0);
  const Complex* g = grad.data() + static_cast<std::size_t>(entry) * vars;
  for (int j = 0; j <= m; ++j) {
    const Complex d(dir[2 * j], dir[2 * j + 1]);
    acc += g[2 * j] * d + g[2 * j + 1] * std::conj(d);
  }
  return acc;
}

Complex WeightPolynomial::value_at(const geometry::AmbientPoint& pt) const {
  Complex acc(0.0, 0.0);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const BasisEntry& e = terms[t];
    Complex v = coeffs[t];
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < e.alpha[j]; ++k) v *= pt.z(j);
      for (int k = 0; k < e.beta[j]; ++k) v *= std::conj(pt.z(j));
    }
    for (int k = 0; k < e.gamma; ++k) v *= pt.q();
    for (int k = 0; k < e.delta; ++k) v *= std::conj(pt.q());
    acc += v;
  }
  return acc;
}

std::vector<Complex> WeightPolynomial::gradient_at(const geometry::AmbientPoint& pt) const {
  const int vars = 2 * m + 2;
  std::vector<Complex> grad(vars, Complex(0.0, 0.0));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const BasisEntry& e = terms[t];
    std::vector<int> exps(vars);
    for (int j = 0; j < m; ++j) {
      exps[2 * j] = e.alpha[j];
      exps[2 * j + 1] = e.beta[j];
    }
    exps[2 * m] = e.gamma;
    exps[2 * m + 1] = e.delta;
    for (int v = 0; v < vars; ++v) {
      if (exps[v] == 0) continue;
      Complex d = coeffs[t] * static_cast<double>(exps[v]);
      for (int w = 0; w < vars; ++w) {
        const Complex z = (w % 2 == 0) ? pt.z(w / 2) : std::conj(pt.z(w / 2));
        const int p = (w == v) ? exps[w] - 1 : exps[w];
        for (int k = 0; k < p; ++k) d *= z;
      }
      grad[v] += d;
    }
  }
  return grad;
}

}  // namespace isospec::spectral
