#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "hardyz/error.hpp"
#include "hardyz/specfun.hpp"

namespace hardyz {

namespace mp = boost::multiprecision;

BernoulliTable bernoulli_even(int n_max) {
  if (n_max < 1 || n_max > kBernoulliMax) {
    raise(ErrorKind::parameter, "bernoulli_even: n_max must lie in [1, 30], got " + std::to_string(n_max));
  }
  const int m_max = 2 * n_max;
  std::vector<mp::cpp_rational> b(static_cast<std::size_t>(m_max) + 1);
  b[0] = 1;
  // Pascal row C(m+1, k), updated in place as m grows.
  std::vector<mp::cpp_int> binom{1, 1};
  for (int m = 1; m <= m_max; ++m) {
    std::vector<mp::cpp_int> next(static_cast<std::size_t>(m) + 2);
    next.front() = next.back() = 1;
    for (int k = 1; k <= m; ++k) next[k] = binom[k - 1] + binom[k];
    binom = std::move(next);
    mp::cpp_rational acc = 0;
    for (int k = 0; k < m; ++k) acc += mp::cpp_rational(binom[k]) * b[k];
    b[m] = -acc / mp::cpp_rational(binom[m]);
  }

  BernoulliTable table;
  table.values.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) table.values.push_back(static_cast<double>(b[2 * n]));
  return table;
}

const BernoulliTable& bernoulli_table() {
  static const BernoulliTable table = bernoulli_even(kBernoulliMax);
  return table;
}

}  // namespace hardyz
