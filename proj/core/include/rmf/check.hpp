#ifndef RMF_CHECK_HPP
#define RMF_CHECK_HPP

#include <string>
#include <vector>

namespace rmf {

/// One named pass/fail line of a verification report.
struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace rmf

#endif  // RMF_CHECK_HPP
