#pragma once

#include <doctest.h>

#include <string>

#include "repfield/error.hpp"
#include "repfield/io.hpp"

namespace support {

inline repfield::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const repfield::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return repfield::ErrorCode::InternalInconsistency;
}

inline std::string data(const std::string& name) { return std::string(REPFIELD_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) { return repfield::read_file(data(name)); }

}  // namespace support
