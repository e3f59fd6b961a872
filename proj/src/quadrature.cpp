#include "calibra/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "calibra/error.hpp"

namespace calibra {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Calls fn for every composition of `total` into `parts` non-negative parts.
template <class Fn>
void compositions(int total, int parts, std::vector<int>& buf, int slot, Fn&& fn) {
  if (slot == parts - 1) {
    buf[slot] = total;
    fn(buf);
    return;
  }
  for (int v = total; v >= 0; --v) {
    buf[slot] = v;
    compositions(total - v, parts, buf, slot + 1, fn);
  }
}

SimplexRule build(int n, int s) {
  const int d = 2 * s + 1;
  SimplexRule rule;
  rule.degree = d;
  std::vector<int> beta(n + 1);
  for (int i = 0; i <= s; ++i) {
    const double denom = d + n - 2 * i;
    const double w = ((i % 2) ? -1.0 : 1.0) * std::pow(2.0, -2 * s) * std::pow(denom, d) /
                     (factorial(i) * factorial(d + n - i)) * factorial(n);
    compositions(s - i, n + 1, beta, 0, [&](const std::vector<int>& b) {
      Vec bary(n + 1);
      for (int j = 0; j <= n; ++j) bary[j] = (2.0 * b[j] + 1.0) / denom;
      rule.barycentric.push_back(std::move(bary));
      rule.weights.push_back(w);
    });
  }
  return rule;
}

}  // namespace

const SimplexRule& grundmann_moeller(int dim, int order) {
  require(dim >= 0 && dim <= 16, ErrorCode::invalid_argument, "quadrature: simplex dimension out of range");
  require(order >= 0 && order <= 21, ErrorCode::invalid_argument, "quadrature: order out of range");
  const int s = order <= 1 ? 0 : (order - 1 + 1) / 2;
  static std::mutex mutex;
  static std::map<std::pair<int, int>, SimplexRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({dim, s});
  if (it == cache.end()) it = cache.emplace(std::make_pair(dim, s), build(dim, s)).first;
  return it->second;
}

}  // namespace calibra
