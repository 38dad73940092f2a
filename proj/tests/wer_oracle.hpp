// Copyright 2026 The dnadapt Authors.
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

// Independent WER reference: top-down memoized recursion over (i, j) that
// minimizes (cost, -substitutions) lexicographically.

#ifndef DNADAPT_TESTS_WER_ORACLE_HPP_
#define DNADAPT_TESTS_WER_ORACLE_HPP_

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dnadapt::testing {

struct OracleCounts {
  int s = 0, d = 0, i = 0;
};

inline OracleCounts OracleAlign(const std::vector<std::string>& r,
                                const std::vector<std::string>& h) {
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, int>> memo;  // (cost, -subs)
  std::function<std::pair<int, int>(std::size_t, std::size_t)> best =
      [&](std::size_t i, std::size_t j) -> std::pair<int, int> {
    if (i == r.size()) return {static_cast<int>(h.size() - j), 0};
    if (j == h.size()) return {static_cast<int>(r.size() - i), 0};
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto diag = best(i + 1, j + 1);
    if (r[i] != h[j]) {
      diag.first += 1;
      diag.second -= 1;
    }
    auto del = best(i + 1, j);
    del.first += 1;
    auto ins = best(i, j + 1);
    ins.first += 1;
    return memo[key] = std::min({diag, del, ins});
  };
  const auto [cost, neg_subs] = best(0, 0);
  OracleCounts c;
  c.s = -neg_subs;
  const int n = static_cast<int>(r.size()), m = static_cast<int>(h.size());
  c.d = (cost - c.s + n - m) / 2;
  c.i = cost - c.s - c.d;
  return c;
}

}  // namespace dnadapt::testing

#endif  // DNADAPT_TESTS_WER_ORACLE_HPP_
