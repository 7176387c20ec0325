#pragma once

#include <string>

#include "hefk/core.hpp"
#include "hefk/io.hpp"

namespace testing {

inline std::string fixture(const std::string& name) {
  return std::string(HEFK_FIXTURE_DIR) + "/" + name;
}

inline hefk::Instance instance(const std::string& name) {
  return hefk::io::read_instance(fixture(name));
}

inline hefk::Allocation allocation(const std::string& name, const hefk::Instance& inst) {
  return hefk::io::read_allocation(fixture(name), inst);
}

inline hefk::Allocation from_owners(const std::vector<int>& owner, int n) {
  return hefk::Allocation::from_owners(owner, n);
}

}  // namespace testing
